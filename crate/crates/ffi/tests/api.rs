use std::ffi::{CStr, CString};
use std::ptr;

use diffalg_ffi::*;
use libc::c_char;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    diffalg_string_free(p);
    s
}

unsafe fn term(src: &str) -> *mut DiffalgTerm {
    let mut t = ptr::null_mut();
    assert_eq!(diffalg_term_parse(c(src).as_ptr(), &mut t), DiffalgStatus::Ok);
    t
}

unsafe fn relation(src: &str) -> *mut DiffalgRelation {
    let mut r = ptr::null_mut();
    assert_eq!(diffalg_relation_parse(c(src).as_ptr(), &mut r), DiffalgStatus::Ok);
    r
}

#[test]
fn term_round_trip_and_desugar() {
    unsafe {
        let t = term("a * b'");
        let mut s = ptr::null_mut();
        assert_eq!(diffalg_term_render(t, &mut s), DiffalgStatus::Ok);
        assert_eq!(take(s), "a*b'");
        let mut core = ptr::null_mut();
        assert_eq!(diffalg_term_desugar(t, &mut core), DiffalgStatus::Ok);
        assert_eq!(diffalg_term_render(core, &mut s), DiffalgStatus::Ok);
        assert_eq!(take(s), "a-(1-(1-b))");
        let mut n = 0;
        assert_eq!(diffalg_term_size(core, &mut n), DiffalgStatus::Ok);
        assert_eq!(n, 7);
        diffalg_term_free(core);
        diffalg_term_free(t);
    }
}

#[test]
fn truth_table_and_identity() {
    unsafe {
        let t = term("a-b");
        let (mut bits, mut vars) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(diffalg_term_truth_table(t, &mut bits, &mut vars), DiffalgStatus::Ok);
        assert_eq!((take(bits), take(vars)), ("0100".into(), "a,b".into()));
        let (l, r) = (term("a-b"), term("b'-a'"));
        let mut ok = false;
        assert_eq!(diffalg_identity_valid(l, r, &mut ok), DiffalgStatus::Ok);
        assert!(ok);
        assert_eq!(diffalg_identity_valid(t, r, &mut ok), DiffalgStatus::Ok);
        assert!(ok);
        let z = term("0");
        assert_eq!(diffalg_identity_valid(t, z, &mut ok), DiffalgStatus::Ok);
        assert!(!ok);
        for p in [t, l, r, z] {
            diffalg_term_free(p);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(diffalg_term_parse(c("(a-").as_ptr(), &mut t), DiffalgStatus::ParseError);
        assert!(t.is_null());
        let msg = CStr::from_ptr(diffalg_last_error()).to_str().unwrap();
        assert!(msg.starts_with("1:"), "{msg}");
        assert_eq!(diffalg_term_parse(ptr::null(), &mut t), DiffalgStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(diffalg_term_parse(bad.as_ptr().cast(), &mut t), DiffalgStatus::InvalidUtf8);
        let ok = term("a");
        assert!(diffalg_last_error().is_null());
        assert_eq!(diffalg_term_render(ok, ptr::null_mut()), DiffalgStatus::NullArgument);
        diffalg_term_free(ok);
        let (mut h, mut f) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(diffalg_numeric_matrix(c("abs").as_ptr(), 10, 0, &mut h, &mut f), DiffalgStatus::InvalidArgument);
        diffalg_term_free(ptr::null_mut());
        diffalg_string_free(ptr::null_mut());
    }
}

#[test]
fn relations_derive_and_compare() {
    unsafe {
        let r = relation("a*c <= b*d /\\ a <= b+c /\\ c <= a+d");
        let mut d = ptr::null_mut();
        assert_eq!(diffalg_relation_derive(r, &mut d), DiffalgStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(diffalg_relation_render(d, &mut s), DiffalgStatus::Ok);
        assert_eq!(take(s), "a <= b /\\ c <= d");
        let mut same = false;
        assert_eq!(diffalg_relation_equivalent(r, d, &mut same), DiffalgStatus::Ok);
        assert!(same);
        let mut eq = ptr::null_mut();
        assert_eq!(diffalg_relation_equation(d, &mut eq), DiffalgStatus::Ok);
        assert_eq!(diffalg_term_render(eq, &mut s), DiffalgStatus::Ok);
        assert_eq!(take(s), "a-b+c-d");
        diffalg_term_free(eq);
        diffalg_relation_free(d);
        diffalg_relation_free(r);
    }
}

#[test]
fn corpus_and_numeric_matrix() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/corpus.dproof")).unwrap();
    unsafe {
        let (mut total, mut proved, mut all_ok) = (0, 0, false);
        assert_eq!(diffalg_corpus_verify(c(&src).as_ptr(), &mut total, &mut proved, &mut all_ok), DiffalgStatus::Ok);
        assert_eq!(total, proved);
        assert!(all_ok && total >= 25);
        let (mut h, mut f) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(diffalg_numeric_matrix(c("sum").as_ptr(), 1000, 0, &mut h, &mut f), DiffalgStatus::Ok);
        assert_eq!(take(h), "iii,iv,v,vi,vii,viii");
        assert_eq!(take(f), "i,ii,ix");
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(diffalg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
