use std::ffi::{c_char, CStr, CString};
use std::ptr;

use graphon_band_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = gb_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn step(json: &str) -> *mut GbStep {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gb_step_from_json(cstr(json).as_ptr(), &mut out) }, GbStatus::Ok);
    out
}

fn graphon(json: &str) -> *mut GbGraphon {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gb_graphon_from_json(cstr(json).as_ptr(), &mut out) }, GbStatus::Ok);
    out
}

fn pattern(spec: &str) -> *mut GbGraph {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gb_graph_parse(cstr(spec).as_ptr(), &mut out) }, GbStatus::Ok);
    out
}

const HALF: &str = r#"{"breakpoints":[0,0.5,1],"values":[[0.9,0.2],[0.2,0.6]]}"#;

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(gb_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn json_round_trip_and_sup() {
    unsafe {
        let s = step(HALF);
        assert_eq!(gb_step_blocks(s), 2);
        let mut sup = 0.0;
        assert_eq!(gb_step_sup(s, &mut sup), GbStatus::Ok);
        assert_eq!(sup, 0.9);

        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(gb_step_to_json(s, &mut text), GbStatus::Ok);
        let back = CStr::from_ptr(text).to_str().unwrap().to_owned();
        gb_string_free(text);
        let again = step(&back);
        let mut v = 0.0;
        assert_eq!(gb_step_evaluate(again, 0.75, 0.1, &mut v), GbStatus::Ok);
        assert_eq!(v, 0.2);
        gb_step_free(again);
        gb_step_free(s);
    }
}

#[test]
fn from_values_matches_json() {
    unsafe {
        let bp = [0.0, 0.5, 1.0];
        let vals = [0.9, 0.2, 0.2, 0.6];
        let mut s = ptr::null_mut();
        assert_eq!(gb_step_from_values(2, bp.as_ptr(), vals.as_ptr(), &mut s), GbStatus::Ok);
        let mut v = 0.0;
        assert_eq!(gb_step_evaluate(s, 0.9, 0.9, &mut v), GbStatus::Ok);
        assert_eq!(v, 0.6);
        gb_step_free(s);
    }
}

#[test]
fn compose_caps_at_the_left_sup() {
    unsafe {
        let g = step(HALF);
        let f = step(r#"{"breakpoints":[0,1],"values":[[0.5]]}"#);
        let mut fg = ptr::null_mut();
        assert_eq!(gb_step_compose(f, g, &mut fg), GbStatus::Ok);
        let mut capped = ptr::null_mut();
        assert_eq!(gb_step_cap(g, 0.5, &mut capped), GbStatus::Ok);
        for (x, y) in [(0.1, 0.1), (0.1, 0.9), (0.9, 0.9)] {
            let (mut a, mut b) = (0.0, 0.0);
            gb_step_evaluate(fg, x, y, &mut a);
            gb_step_evaluate(capped, x, y, &mut b);
            assert_eq!(a, b);
        }
        let mut sup = 0.0;
        gb_step_sup(fg, &mut sup);
        assert_eq!(sup, 0.5);
        for h in [fg, capped, f, g] {
            gb_step_free(h);
        }
    }
}

#[test]
fn densities_and_bound() {
    unsafe {
        let w = graphon(HALF);
        let k3 = pattern("k3");
        assert_eq!(gb_graph_vertex_count(k3), 3);
        assert_eq!(gb_graph_edge_count(k3), 3);

        let mut exact = GbEstimate { value: -1.0, std_error: -1.0, samples: 9, method: GbMethod::MonteCarlo };
        assert_eq!(gb_t_step_exact(k3, w, &mut exact), GbStatus::Ok);
        assert_eq!(exact.method, GbMethod::ExactBlocks);
        assert_eq!(exact.samples, 0);
        // blocks (a,a,a), (b,b,b) and the six mixed maps with two equal labels
        let expected = (0.9f64.powi(3) + 0.6f64.powi(3) + 3.0 * 0.9 * 0.04 + 3.0 * 0.6 * 0.04) / 8.0;
        assert!((exact.value - expected).abs() < 1e-12);

        let mut mc1 = exact;
        let mut mc2 = exact;
        assert_eq!(gb_t_monte_carlo(k3, w, 20_000, 7, &mut mc1), GbStatus::Ok);
        assert_eq!(gb_t_monte_carlo(k3, w, 20_000, 7, &mut mc2), GbStatus::Ok);
        assert_eq!(mc1, mc2);
        assert_eq!(mc1.method, GbMethod::MonteCarlo);
        assert!((mc1.value - expected).abs() < 5.0 * mc1.std_error + 1e-3);

        let f = step(r#"{"breakpoints":[0,1],"values":[[0.5]]}"#);
        let mut acted = ptr::null_mut();
        assert_eq!(gb_left_act(f, w, &mut acted), GbStatus::Ok);
        let mut sup = 0.0;
        gb_graphon_sup(acted, &mut sup);
        assert_eq!(sup, 0.5);

        let mut report = GbBoundReport::default();
        assert_eq!(gb_verify_main_bound(w, f, k3, &mut report), GbStatus::Ok);
        assert!(report.holds && report.chain_holds);
        assert_eq!(report.edge_count, 3);
        assert!((report.delta_area - 0.5).abs() < 1e-12);
        assert!((report.rhs - 3.0 * 0.4 * 0.5).abs() < 1e-12);

        gb_graphon_free(acted);
        gb_step_free(f);
        gb_graph_free(k3);
        gb_graphon_free(w);
    }
}

#[test]
fn norms_of_a_difference() {
    unsafe {
        let a = step(HALF);
        let b = step(r#"{"breakpoints":[0,0.25,1],"values":[[0.9,0.2],[0.2,0.6]]}"#);
        let mut n = GbNorms::default();
        assert_eq!(gb_norms(a, ptr::null(), &mut n), GbStatus::Ok);
        assert!((n.l1 - 0.475).abs() < 1e-12);
        assert!((n.cut0 - n.l1).abs() < 1e-12);
        assert_eq!(gb_norms(a, b, &mut n), GbStatus::Ok);
        assert_eq!(n.blocks, 3);
        assert!(n.cut0 <= n.l1 + 1e-12);
        assert!(n.l1 > 0.0);
        gb_step_free(a);
        gb_step_free(b);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        let bad = cstr(r#"{"breakpoints":[0,1],"values":[[1.5]]}"#);
        assert_eq!(gb_step_from_json(bad.as_ptr(), &mut s), GbStatus::OutOfRange);
        assert!(s.is_null());
        assert!(last_error().unwrap().contains("outside [0, 1]"));

        assert_eq!(gb_step_from_json(cstr("{").as_ptr(), &mut s), GbStatus::InvalidInput);
        assert_eq!(gb_step_from_json(ptr::null(), &mut s), GbStatus::NullPointer);

        let asym = step(r#"{"breakpoints":[0,0.5,1],"values":[[0.1,0.2],[0.3,0.4]]}"#);
        assert!(last_error().is_none());
        let mut w = ptr::null_mut();
        assert_eq!(gb_graphon_from_step(asym, &mut w), GbStatus::NotSymmetric);
        assert!(w.is_null());

        let mut capped = ptr::null_mut();
        assert_eq!(gb_step_cap(asym, 1.5, &mut capped), GbStatus::OutOfRange);
        let mut v = 0.0;
        assert_eq!(gb_step_evaluate(asym, 2.0, 0.0, &mut v), GbStatus::OutOfRange);
        assert_eq!(gb_step_sup(asym, ptr::null_mut()), GbStatus::NullPointer);
        gb_step_free(asym);

        let mut g = ptr::null_mut();
        assert_eq!(gb_graph_parse(cstr("q9").as_ptr(), &mut g), GbStatus::InvalidInput);
        let invalid_utf8 = [0xffu8, 0];
        assert_eq!(gb_graph_parse(invalid_utf8.as_ptr().cast(), &mut g), GbStatus::InvalidUtf8);
    }
}

#[test]
fn guard_is_reported() {
    unsafe {
        let k = 30;
        let bp: Vec<f64> = (0..=k).map(|i| i as f64 / k as f64).collect();
        let vals = vec![0.5; k * k];
        let mut s = ptr::null_mut();
        assert_eq!(gb_step_from_values(k, bp.as_ptr(), vals.as_ptr(), &mut s), GbStatus::Ok);
        let mut w = ptr::null_mut();
        assert_eq!(gb_graphon_from_step(s, &mut w), GbStatus::Ok);
        let mut n = GbNorms::default();
        assert_eq!(gb_norms(s, ptr::null(), &mut n), GbStatus::GuardExceeded);
        let k8 = pattern("k8");
        let mut e = GbEstimate { value: 0.0, std_error: 0.0, samples: 0, method: GbMethod::ExactBlocks };
        assert_eq!(gb_t_step_exact(k8, w, &mut e), GbStatus::GuardExceeded);
        assert!(last_error().unwrap().contains("budget"));
        gb_graph_free(k8);
        gb_graphon_free(w);
        gb_step_free(s);
    }
}

#[test]
fn free_accepts_null() {
    unsafe {
        gb_step_free(ptr::null_mut());
        gb_graphon_free(ptr::null_mut());
        gb_graph_free(ptr::null_mut());
        gb_string_free(ptr::null_mut());
        assert_eq!(gb_step_blocks(ptr::null()), 0);
    }
}
