//! Max-min composition of fuzzy sets of the unit square and its action on
//! step graphons.
//!
//! Fuzzy sets are represented exactly as block-constant functions
//! ([`StepFuzzy2D`]). Under the composition `(f o g)(s, t) = sup_{x, y}
//! min(f(x, y), g(s, t))` they form a right regular band whose classes of
//! equal supremum are right-zero semigroups, and symmetric ones
//! ([`Graphon`]) form a left ideal. The crate provides the algebra, its
//! finite-semigroup oracle, homomorphism densities, cut-style norms and the
//! bound on `|t(F, W) - t(F, f o W)|`, plus the experiment drivers used by
//! the `graphon-band` binary.
//!
//! ```
//! use graphon_band::{left_act, parse_pattern, t_step_exact, verify_main_bound, Graphon, StepFuzzy2D};
//!
//! let w = Graphon::new(StepFuzzy2D::uniform(vec![vec![0.9, 0.3], vec![0.3, 0.9]])?)?;
//! let f = StepFuzzy2D::constant(0.5)?;
//! let k2 = parse_pattern("k2")?;
//!
//! assert_eq!(left_act(&f, &w)?.sup_value(), 0.5);
//! assert!((t_step_exact(&k2, &w)?.value - 0.6).abs() < 1e-12);
//!
//! let r = verify_main_bound(&w, &f, &k2)?;
//! assert!(r.holds && r.chain_holds);
//! assert!(r.slack.abs() < 1e-12);
//! # Ok::<(), graphon_band::Error>(())
//! ```

pub mod band;
pub mod density;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod graphon;
pub mod norms;
pub mod numeric;
pub mod rng;
pub mod step;

pub use band::{
    check_band_laws, check_eta_axioms, compose, convolve, eta_related, FiniteSemigroup, FuzzyVec, LawReport,
};
pub use density::{hom_count, t_graph, t_monte_carlo, t_monte_carlo_graph, t_step_exact, DensityEstimate, Method};
pub use error::{Error, Result};
pub use graph::{make_graph, parse_pattern, GraphKind, PatternSpec, SimpleGraph};
pub use graphon::{
    congruence_check, graph_to_graphon, left_act, sample_w_random_graph, sigma_eta_related, validate_graphon,
    Graphon,
};
pub use norms::{counting_lemma_check, cut0_norm, l1_norm, main_bound_rhs, verify_main_bound, BoundReport};
pub use step::{ae_equal, random_step, refine, BlockMask, Partition, StepField2D, StepFuzzy2D};
