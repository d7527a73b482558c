use std::ffi::{CStr, CString};
use std::ptr;

use piso_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(piso_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn parse(src: &str, sss: *const PisoSss) -> *mut PisoArrow {
    let mut out = ptr::null_mut();
    let status = unsafe { piso_arrow_parse(c(src).as_ptr(), sss, &mut out) };
    assert_eq!(status, PisoStatus::Ok, "{src}: {}", last_error());
    out
}

fn equals(f: *const PisoArrow, g: *const PisoArrow) -> bool {
    let mut eq = false;
    assert_eq!(unsafe { piso_arrow_equals(f, g, &mut eq) }, PisoStatus::Ok);
    eq
}

const TAU: &str = r#"(arrow :dom S :cod S :terms ((("" "00") ("" "0")) (("" "01") ("" "10")) (("" "1") ("" "11"))))"#;
const FLIP: &str = r#"(arrow :dom S :cod S :terms ((("" "1") ("" "0")) (("" "0") ("" "1"))))"#;

#[test]
fn arrows_through_the_abi() {
    unsafe {
        let tau = parse(TAU, ptr::null());
        let mut unitary = false;
        assert_eq!(piso_arrow_is_unitary(tau, &mut unitary), PisoStatus::Ok);
        assert!(unitary);

        let mut inv = ptr::null_mut();
        assert_eq!(piso_arrow_dagger(tau, &mut inv), PisoStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(piso_arrow_compose(inv, tau, &mut id), PisoStatus::Ok);
        let one = parse("(id S)", ptr::null());
        assert!(equals(id, one));
        assert!(!equals(tau, one));

        let mut text = ptr::null_mut();
        assert_eq!(piso_arrow_to_string(tau, &mut text), PisoStatus::Ok);
        let printed = CStr::from_ptr(text).to_str().unwrap().to_owned();
        piso_string_free(text);
        let back = parse(&printed, ptr::null());
        assert!(equals(back, tau));

        let mut pair = ptr::null_mut();
        assert_eq!(piso_arrow_tensor(tau, one, &mut pair), PisoStatus::Ok);
        let mut bad = ptr::null_mut();
        assert_eq!(piso_arrow_compose(pair, tau, &mut bad), PisoStatus::Typing);
        assert!(bad.is_null());
        assert!(last_error().contains("typing"), "{}", last_error());

        let mut joined = ptr::null_mut();
        assert_eq!(
            piso_arrow_join(tau, one, &mut joined),
            PisoStatus::NotOrthogonal
        );

        for f in [tau, inv, id, one, back, pair] {
            piso_arrow_free(f);
        }
    }
}

#[test]
fn structures_and_matrices() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(piso_sss_standard(&mut s), PisoStatus::Ok);
        let mut tau = ptr::null_mut();
        assert_eq!(piso_sss_tau(s, &mut tau), PisoStatus::Ok);
        let expected = parse(TAU, ptr::null());
        assert!(equals(tau, expected));

        let mut sigma = ptr::null_mut();
        assert_eq!(piso_sss_sigma(s, &mut sigma), PisoStatus::Ok);
        let flip = parse(FLIP, ptr::null());
        assert!(equals(sigma, flip));

        // Internal terms resolve against the given structure.
        let p = parse("(comp p (dag p))", s);
        let one = parse("(id S)", ptr::null());
        assert!(equals(p, one));
        let mut none = ptr::null_mut();
        let status = piso_arrow_parse(c("p").as_ptr(), ptr::null(), &mut none);
        assert_ne!(status, PisoStatus::Ok);

        let mut m = ptr::null_mut();
        assert_eq!(piso_matrix_rep(sigma, s, &mut m), PisoStatus::Ok);
        let mut e01 = ptr::null_mut();
        assert_eq!(piso_matrix_entry(m, 0, 1, &mut e01), PisoStatus::Ok);
        assert!(equals(e01, one));
        let mut oob = ptr::null_mut();
        assert_eq!(piso_matrix_entry(m, 2, 0, &mut oob), PisoStatus::Invalid);

        let mut mm = ptr::null_mut();
        assert_eq!(piso_matrix_mul(m, m, &mut mm), PisoStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(piso_matrix_reconstruct(mm, s, &mut back), PisoStatus::Ok);
        assert!(equals(back, one), "σ_int² = 1");

        let code = parse(
            r#"(arrow :dom (S S) :cod S :terms ((("" "00") ("L" "0")) (("" "10") ("L" "1")) (("" "01") ("R" "0")) (("" "11") ("R" "1"))))"#,
            ptr::null(),
        );
        let mut d = ptr::null_mut();
        assert_eq!(piso_sss_from_code(code, &mut d), PisoStatus::Ok);
        let mut diag = ptr::null_mut();
        assert_eq!(piso_matrix_rep(sigma, d, &mut diag), PisoStatus::Ok);
        let mut off = ptr::null_mut();
        assert_eq!(piso_matrix_entry(diag, 1, 0, &mut off), PisoStatus::Ok);
        let zero = parse(r#"(arrow :dom S :cod S :terms ())"#, ptr::null());
        assert!(equals(off, zero));

        let mut internal = ptr::null_mut();
        assert_eq!(
            piso_sss_internalize(d, flip, flip, &mut internal),
            PisoStatus::Ok
        );
        assert!(equals(internal, sigma));

        let mut not_sss = ptr::null_mut();
        assert_eq!(piso_sss_from_code(flip, &mut not_sss), PisoStatus::Typing);

        for f in [
            tau, expected, sigma, flip, p, one, e01, back, code, off, zero, internal,
        ] {
            piso_arrow_free(f);
        }
        for x in [m, mm, diag] {
            piso_matrix_free(x);
        }
        piso_sss_free(s);
        piso_sss_free(d);
    }
}

#[test]
fn coherence_through_the_abi() {
    let data = |name: &str| {
        std::fs::read_to_string(format!(
            "{}/../core/data/{name}",
            env!("CARGO_MANIFEST_DIR")
        ))
        .unwrap()
    };
    let check = |name: &str, mode: PisoMode, bound: usize| {
        let mut v = PisoVerdict::Undecided;
        let status = unsafe {
            piso_coherence_check(c(&data(name)).as_ptr(), mode, ptr::null(), bound, &mut v)
        };
        assert_eq!(status, PisoStatus::Ok, "{name}: {}", last_error());
        v
    };
    assert_eq!(
        check("pentagon.json", PisoMode::Free, 3),
        PisoVerdict::Commutes
    );
    assert_eq!(
        check("hexagon.json", PisoMode::Model, 3),
        PisoVerdict::Commutes
    );
    assert_eq!(
        check("sym_is_id.json", PisoMode::Free, 3),
        PisoVerdict::Rejected
    );
    assert_eq!(
        check("sym_is_id.json", PisoMode::Model, 3),
        PisoVerdict::Rejected
    );
    assert_eq!(
        check("lax_assoc.json", PisoMode::Lift, 3),
        PisoVerdict::Commutes
    );
    assert_eq!(
        check("lax_assoc.json", PisoMode::Lift, 2),
        PisoVerdict::Undecided
    );

    let mut v = PisoVerdict::Undecided;
    let status =
        unsafe { piso_coherence_check(c("{").as_ptr(), PisoMode::Free, ptr::null(), 3, &mut v) };
    assert_eq!(status, PisoStatus::InvalidDiagram);
}

#[test]
fn null_and_malformed_arguments() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            piso_arrow_parse(ptr::null(), ptr::null(), &mut out),
            PisoStatus::NullArgument
        );
        assert_eq!(
            piso_arrow_parse(c("(id S)").as_ptr(), ptr::null(), ptr::null_mut()),
            PisoStatus::NullArgument
        );
        assert_eq!(
            piso_arrow_parse(c("(comp").as_ptr(), ptr::null(), &mut out),
            PisoStatus::Syntax
        );
        assert!(last_error().contains("1:"), "{}", last_error());
        let bytes = [0xffu8, 0];
        assert_eq!(
            piso_arrow_parse(bytes.as_ptr().cast(), ptr::null(), &mut out),
            PisoStatus::InvalidUtf8
        );
        assert_eq!(
            piso_arrow_dagger(ptr::null(), &mut out),
            PisoStatus::NullArgument
        );
        assert!(out.is_null());
        piso_arrow_free(ptr::null_mut());
        piso_sss_free(ptr::null_mut());
        piso_matrix_free(ptr::null_mut());
        piso_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(piso_version()).to_bytes().is_empty());
    }
}
