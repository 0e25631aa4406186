//! C ABI over `graphon-band`.
//!
//! Objects cross the boundary as opaque handles created by `gb_*_from_*` or
//! by an operation, and released with the matching `gb_*_free`. Every
//! fallible call returns a [`GbStatus`] and writes its result through an out
//! pointer; on failure the out pointer is left untouched and
//! [`gb_last_error_message`] describes the error on the calling thread.
//!
//! Strings returned by the library are owned by the caller and released with
//! [`gb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphon_band::experiments::cutnorm::norms_of;
use graphon_band::{
    compose, left_act, parse_pattern, t_monte_carlo, t_step_exact, verify_main_bound, Error, Graphon,
    Method, Partition, SimpleGraph, StepFuzzy2D,
};
use graphon_band::step::StepJson;

/// Fuzzy set on the unit square, constant on the blocks of a partition.
pub struct GbStep(StepFuzzy2D);

/// Symmetric step fuzzy set.
pub struct GbGraphon(Graphon);

/// Finite simple graph used as a pattern.
pub struct GbGraph(SimpleGraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    OutOfRange = 4,
    PartitionMismatch = 5,
    NotSymmetric = 6,
    GuardExceeded = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbMethod {
    ExactBlocks = 0,
    ExactHom = 1,
    MonteCarlo = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GbEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub method: GbMethod,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GbNorms {
    pub l1: f64,
    pub cut0: f64,
    pub blocks: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GbBoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub cut0: f64,
    pub l1: f64,
    pub edge_count: usize,
    pub sup_w: f64,
    pub sup_f: f64,
    pub delta_area: f64,
    pub slack: f64,
    pub holds: bool,
    pub chain_holds: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> GbStatus {
    match err {
        Error::InvalidPartition(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidSemigroup(_)
        | Error::InvalidGraph(_)
        | Error::InvalidPattern { .. }
        | Error::InvalidArgument(_)
        | Error::InvalidConfig(_)
        | Error::Json(_)
        | Error::Io { .. } => GbStatus::InvalidInput,
        Error::ValueOutOfRange { .. } | Error::NonFinite { .. } | Error::LevelOutOfRange(_) => GbStatus::OutOfRange,
        Error::PartitionMismatch => GbStatus::PartitionMismatch,
        Error::Asymmetric { .. } => GbStatus::NotSymmetric,
        Error::GuardExceeded { .. } => GbStatus::GuardExceeded,
        Error::Precondition(_) | Error::InvariantViolation(_) => GbStatus::Internal,
    }
}

struct Fail(GbStatus, String);

impl From<Error> for Fail {
    fn from(err: Error) -> Self {
        Fail(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GbStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status and the
/// thread-local message.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GbStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("panic: {message}"));
            GbStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(GbStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|e| Fail(GbStatus::Internal, e.to_string()))?;
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Shape errors report `InvalidInput`; value errors keep their own status.
fn parse_step(text: &str) -> Result<StepFuzzy2D, Fail> {
    let raw: StepJson = serde_json::from_str(text).map_err(Error::from)?;
    Ok(StepFuzzy2D::try_from(raw)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Fail> {
    serde_json::to_string(value).map_err(|e| Fail(GbStatus::Internal, e.to_string()))
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn gb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"breakpoints": [...], "values": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_from_json(json: *const c_char, out: *mut *mut GbStep) -> GbStatus {
    guard(|| {
        let f = parse_step(read_str(json, "json")?)?;
        write_handle(out, GbStep(f))
    })
}

/// Builds a step fuzzy set from `blocks + 1` breakpoints and `blocks * blocks`
/// row-major block values.
///
/// # Safety
/// `breakpoints` and `values` must point to arrays of the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn gb_step_from_values(
    blocks: usize,
    breakpoints: *const f64,
    values: *const f64,
    out: *mut *mut GbStep,
) -> GbStatus {
    guard(|| {
        if breakpoints.is_null() {
            return Err(null("breakpoints"));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let cells = blocks
            .checked_mul(blocks)
            .ok_or_else(|| Fail(GbStatus::InvalidInput, "block count overflows".into()))?;
        let bp = std::slice::from_raw_parts(breakpoints, blocks + 1).to_vec();
        let vals = std::slice::from_raw_parts(values, cells).to_vec();
        let f = StepFuzzy2D::from_flat(Partition::new(bp)?, vals)?;
        write_handle(out, GbStep(f))
    })
}

/// # Safety
/// `step` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_to_json(step: *const GbStep, out: *mut *mut c_char) -> GbStatus {
    guard(|| {
        let s = deref(step, "step")?;
        write_string(out, to_json(&s.0)?)
    })
}

/// # Safety
/// `step` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gb_step_free(step: *mut GbStep) {
    if !step.is_null() {
        drop(Box::from_raw(step));
    }
}

/// Number of blocks of the partition, or 0 for a null handle.
///
/// # Safety
/// `step` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gb_step_blocks(step: *const GbStep) -> usize {
    step.as_ref().map_or(0, |s| s.0.blocks())
}

/// # Safety
/// `step` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_sup(step: *const GbStep, out: *mut f64) -> GbStatus {
    guard(|| {
        let s = deref(step, "step")?;
        write_out(out, s.0.sup_value())
    })
}

/// Value at the point `(x, y)` of the unit square.
///
/// # Safety
/// `step` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_evaluate(step: *const GbStep, x: f64, y: f64, out: *mut f64) -> GbStatus {
    guard(|| {
        let s = deref(step, "step")?;
        if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
            return Err(Fail(GbStatus::OutOfRange, format!("point ({x}, {y}) is outside the unit square")));
        }
        write_out(out, s.0.evaluate(x, y))
    })
}

/// `min(step, level)` pointwise.
///
/// # Safety
/// `step` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_cap(step: *const GbStep, level: f64, out: *mut *mut GbStep) -> GbStatus {
    guard(|| {
        let s = deref(step, "step")?;
        write_handle(out, GbStep(s.0.cap(level)?))
    })
}

/// Max-min composition `f o g`.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_step_compose(f: *const GbStep, g: *const GbStep, out: *mut *mut GbStep) -> GbStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let g = deref(g, "g")?;
        write_handle(out, GbStep(compose(&f.0, &g.0)))
    })
}

/// Fails with `NotSymmetric` unless the step function is symmetric.
///
/// # Safety
/// `step` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_graphon_from_step(step: *const GbStep, out: *mut *mut GbGraphon) -> GbStatus {
    guard(|| {
        let s = deref(step, "step")?;
        write_handle(out, GbGraphon(Graphon::new(s.0.clone())?))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_graphon_from_json(json: *const c_char, out: *mut *mut GbGraphon) -> GbStatus {
    guard(|| {
        let f = parse_step(read_str(json, "json")?)?;
        write_handle(out, GbGraphon(Graphon::new(f)?))
    })
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_graphon_to_json(w: *const GbGraphon, out: *mut *mut c_char) -> GbStatus {
    guard(|| {
        let w = deref(w, "graphon")?;
        write_string(out, to_json(&w.0)?)
    })
}

/// # Safety
/// `w` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_graphon_sup(w: *const GbGraphon, out: *mut f64) -> GbStatus {
    guard(|| {
        let w = deref(w, "graphon")?;
        write_out(out, w.0.sup_value())
    })
}

/// # Safety
/// `w` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gb_graphon_free(w: *mut GbGraphon) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// `f o W`, again a graphon.
///
/// # Safety
/// `f` and `w` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_left_act(f: *const GbStep, w: *const GbGraphon, out: *mut *mut GbGraphon) -> GbStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let w = deref(w, "graphon")?;
        write_handle(out, GbGraphon(left_act(&f.0, &w.0)?))
    })
}

/// Parses a pattern such as `k3`, `c5`, `p4`, `star6`, `e2` or the edge list
/// `1-2,2-3`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_graph_parse(spec: *const c_char, out: *mut *mut GbGraph) -> GbStatus {
    guard(|| {
        let text = read_str(spec, "spec")?;
        write_handle(out, GbGraph(parse_pattern(text)?))
    })
}

/// # Safety
/// `g` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn gb_graph_free(g: *mut GbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gb_graph_vertex_count(g: *const GbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gb_graph_edge_count(g: *const GbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

fn estimate(e: graphon_band::DensityEstimate) -> GbEstimate {
    let method = match e.method {
        Method::ExactBlocks => GbMethod::ExactBlocks,
        Method::ExactHom => GbMethod::ExactHom,
        Method::MonteCarlo => GbMethod::MonteCarlo,
    };
    GbEstimate {
        value: e.value,
        std_error: e.std_error,
        samples: e.samples,
        method,
    }
}

/// Exact homomorphism density by enumeration of block maps. Fails with
/// `GuardExceeded` when the enumeration is too large.
///
/// # Safety
/// `pattern` and `w` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_t_step_exact(pattern: *const GbGraph, w: *const GbGraphon, out: *mut GbEstimate) -> GbStatus {
    guard(|| {
        let f = deref(pattern, "pattern")?;
        let w = deref(w, "graphon")?;
        write_out(out, estimate(t_step_exact(&f.0, &w.0)?))
    })
}

/// Monte-Carlo homomorphism density; deterministic for a given seed.
///
/// # Safety
/// `pattern` and `w` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_t_monte_carlo(
    pattern: *const GbGraph,
    w: *const GbGraphon,
    samples: u64,
    seed: u64,
    out: *mut GbEstimate,
) -> GbStatus {
    guard(|| {
        let f = deref(pattern, "pattern")?;
        let w = deref(w, "graphon")?;
        write_out(out, estimate(t_monte_carlo(&f.0, &w.0, samples, seed)?))
    })
}

/// L1 and cut-style norms of `a`, or of `a - b` when `b` is not null.
///
/// # Safety
/// `a` must be a live handle, `b` null or a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_norms(a: *const GbStep, b: *const GbStep, out: *mut GbNorms) -> GbStatus {
    guard(|| {
        let a = deref(a, "a")?;
        let b = b.as_ref().map(|b| b.0.as_field());
        let s = norms_of(a.0.as_field(), b)?;
        write_out(
            out,
            GbNorms {
                l1: s.l1,
                cut0: s.cut0.value,
                blocks: s.blocks,
            },
        )
    })
}

/// Evaluates both sides of the density-gap bound for `(W, f, F)`.
///
/// # Safety
/// All handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gb_verify_main_bound(
    w: *const GbGraphon,
    f: *const GbStep,
    pattern: *const GbGraph,
    out: *mut GbBoundReport,
) -> GbStatus {
    guard(|| {
        let w = deref(w, "graphon")?;
        let f = deref(f, "f")?;
        let p = deref(pattern, "pattern")?;
        let r = verify_main_bound(&w.0, &f.0, &p.0)?;
        write_out(
            out,
            GbBoundReport {
                lhs: r.lhs,
                rhs: r.rhs,
                cut0: r.cut0,
                l1: r.l1,
                edge_count: r.edge_count,
                sup_w: r.sup_w,
                sup_f: r.sup_f,
                delta_area: r.delta_area,
                slack: r.slack,
                holds: r.holds,
                chain_holds: r.chain_holds,
            },
        )
    })
}
