use std::ffi::{CStr, CString};
use std::ptr;

use isodeform_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { isodeform_string_free(p) };
    s
}

fn run(cfg: &str) -> (IsodeformStatus, *mut IsodeformReport) {
    let c = CString::new(cfg).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { isodeform_run_suite(c.as_ptr(), &mut out) };
    (st, out)
}

#[test]
fn passing_suite_round_trip() {
    let (st, rep) = run(r#"{"suite": "cocycle", "theta": "1/3", "samples": 50, "seed": 7}"#);
    assert_eq!(st, IsodeformStatus::Ok);
    unsafe {
        assert_eq!(isodeform_report_passed(rep), 1);
        assert!(isodeform_report_num_checks(rep) > 0);
        let mut json = ptr::null_mut();
        assert_eq!(isodeform_report_json(rep, 1, &mut json), IsodeformStatus::Ok);
        let text = take_string(json);
        assert!(text.contains("\"cocycle-rho\""));
        assert!(!text.contains("wall_time_ms"));
        isodeform_report_free(rep);
    }
}

#[test]
fn canonical_json_is_deterministic() {
    let cfg = r#"{"suite": "torus", "theta": [["0", "1/5"], ["-1/5", "0"]], "samples": 40, "seed": 3}"#;
    let texts: Vec<String> = (0..2)
        .map(|_| {
            let (st, rep) = run(cfg);
            assert_eq!(st, IsodeformStatus::Ok);
            let mut json = ptr::null_mut();
            unsafe {
                isodeform_report_json(rep, 1, &mut json);
                isodeform_report_free(rep);
            }
            take_string(json)
        })
        .collect();
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn failing_checks_and_config_errors() {
    let (st, rep) = run(r#"{"suite": "chern", "theta": "1/3", "negative_control": true}"#);
    assert_eq!(st, IsodeformStatus::CheckFailed);
    unsafe {
        assert_eq!(isodeform_report_passed(rep), 0);
        isodeform_report_free(rep);
    }
    let (st, rep) = run(r#"{"suite": "spin", "l": 5}"#);
    assert_eq!(st, IsodeformStatus::ConfigError);
    assert!(rep.is_null());
    assert!(take_string(isodeform_last_error()).contains("l"));
    let (st, _) = run("not json");
    assert_eq!(st, IsodeformStatus::ConfigError);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { isodeform_run_suite(ptr::null(), &mut out) }, IsodeformStatus::NullPointer);
}

#[test]
fn scalars_are_exact() {
    unsafe {
        let (mut w, mut w2, mut w3, mut one) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(isodeform_scalar_phase(1, 3, &mut w), IsodeformStatus::Ok);
        isodeform_scalar_mul(w, w, &mut w2);
        isodeform_scalar_mul(w2, w, &mut w3);
        isodeform_scalar_rational(1, 1, &mut one);
        assert_eq!(isodeform_scalar_equal(w3, one), 1);
        // 1 + ω + ω² = 0
        let (mut s1, mut s2, mut zero) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        isodeform_scalar_add(one, w, &mut s1);
        isodeform_scalar_add(s1, w2, &mut s2);
        isodeform_scalar_rational(0, 1, &mut zero);
        assert_eq!(isodeform_scalar_equal(s2, zero), 1);
        let mut c = ptr::null_mut();
        isodeform_scalar_conj(w, &mut c);
        assert_eq!(isodeform_scalar_equal(c, w2), 1);
        let (mut re, mut im) = (0.0, 0.0);
        isodeform_scalar_to_complex(w, &mut re, &mut im);
        assert!((re + 0.5).abs() < 1e-15 && (im - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(!take_string(isodeform_scalar_to_string(w)).is_empty());
        assert_eq!(isodeform_scalar_rational(1, 0, &mut c), IsodeformStatus::ConfigError);
        for p in [w, w2, w3, one, s1, s2, zero, c] {
            isodeform_scalar_free(p);
        }
    }
}

#[test]
fn torus_phases() {
    unsafe {
        let th = CString::new("1/4").unwrap();
        let mut t = ptr::null_mut();
        assert_eq!(isodeform_torus_new(th.as_ptr(), 2, &mut t), IsodeformStatus::Ok);
        let (mut c, mut want) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(isodeform_torus_commutation(t, 0, 1, &mut c), IsodeformStatus::Ok);
        isodeform_scalar_phase(1, 4, &mut want);
        assert_eq!(isodeform_scalar_equal(c, want), 1);
        let (r, s) = ([1i64, 0], [0i64, 1]);
        let mut sg = ptr::null_mut();
        assert_eq!(isodeform_torus_sigma(t, r.as_ptr(), s.as_ptr(), &mut sg), IsodeformStatus::Ok);
        let mut want2 = ptr::null_mut();
        isodeform_scalar_phase(1, 8, &mut want2);
        assert_eq!(isodeform_scalar_equal(sg, want2), 1);
        assert_eq!(isodeform_torus_commutation(t, 0, 2, &mut c), IsodeformStatus::ConfigError);
        for p in [c, want, sg, want2] {
            isodeform_scalar_free(p);
        }
        isodeform_torus_free(t);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/isodeform.h")).unwrap();
    for name in [
        "isodeform_run_suite",
        "isodeform_report_json",
        "isodeform_report_free",
        "isodeform_scalar_phase",
        "isodeform_torus_new",
        "isodeform_last_error",
        "ISODEFORM_STATUS_CHECK_FAILED",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
