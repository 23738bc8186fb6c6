//! C ABI over the `diffalg` library.
//!
//! Every fallible function returns a [`DiffalgStatus`] and writes results
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`diffalg_last_error`]. Strings returned through `char **` are
//! owned by the caller and must be released with [`diffalg_string_free`];
//! handles must be released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diffalg::equivalence::{derive, equation_of};
use diffalg::parser::{parse_corpus, parse_relation, parse_term, render_relation, render_term, Relation};
use diffalg::semantics::{numeric_matrix, truth_table, valid_identity, NumericMode};
use diffalg::term::{desugar, free_vars, SurfaceTerm};
use libc::{c_char, size_t};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffalgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ComputationError = 5,
    Panic = 6,
}

/// A parsed term. Opaque to C.
pub struct DiffalgTerm {
    inner: SurfaceTerm,
}

/// A parsed relation. Opaque to C.
pub struct DiffalgRelation {
    inner: Relation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(DiffalgStatus, String);

impl Failure {
    fn new(status: DiffalgStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DiffalgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DiffalgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DiffalgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(DiffalgStatus::NullArgument, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(DiffalgStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(DiffalgStatus::NullArgument, format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(DiffalgStatus::NullArgument, "output pointer is NULL"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(DiffalgStatus::ComputationError, e))?;
    write_out(out, c.into_raw())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn diffalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn diffalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn diffalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_parse(src: *const c_char, out: *mut *mut DiffalgTerm) -> DiffalgStatus {
    guard(|| {
        let text = read_str(src, "src")?;
        let t = parse_term(text).map_err(|e| Failure::new(DiffalgStatus::ParseError, e))?;
        write_out(out, Box::into_raw(Box::new(DiffalgTerm { inner: t })))
    })
}

/// Releases a term. NULL is ignored.
///
/// # Safety
/// `t` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_free(t: *mut DiffalgTerm) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Canonical concrete syntax of a term.
///
/// # Safety
/// `t` must be a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_render(t: *const DiffalgTerm, out: *mut *mut c_char) -> DiffalgStatus {
    guard(|| write_string(out, render_term(&deref(t, "term")?.inner)))
}

/// Number of nodes in the term.
///
/// # Safety
/// `t` must be a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_size(t: *const DiffalgTerm, out: *mut size_t) -> DiffalgStatus {
    guard(|| write_out(out, deref(t, "term")?.inner.size()))
}

/// New term using only `0`, `1`, variables and `-`.
///
/// # Safety
/// `t` must be a live term; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_desugar(t: *const DiffalgTerm, out: *mut *mut DiffalgTerm) -> DiffalgStatus {
    guard(|| {
        let core = desugar(&deref(t, "term")?.inner).to_surface();
        write_out(out, Box::into_raw(Box::new(DiffalgTerm { inner: core })))
    })
}

/// Truth table as a string of `0`/`1`, row `r` setting variable `i` (sorted by
/// name) to bit `i` of `r`. The sorted variable names go to `vars_out`,
/// comma-separated.
///
/// # Safety
/// `t` must be a live term; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_term_truth_table(
    t: *const DiffalgTerm,
    bits_out: *mut *mut c_char,
    vars_out: *mut *mut c_char,
) -> DiffalgStatus {
    guard(|| {
        let term = &deref(t, "term")?.inner;
        if free_vars(term).len() > diffalg::semantics::MAX_TABLE_VARS {
            return Err(Failure::new(DiffalgStatus::InvalidArgument, "too many variables for a truth table"));
        }
        let table = truth_table(term);
        if bits_out.is_null() || vars_out.is_null() {
            return Err(Failure::new(DiffalgStatus::NullArgument, "output pointer is NULL"));
        }
        let vars: Vec<&str> = table.vars.iter().map(|v| v.as_str()).collect();
        write_string(bits_out, table.bit_string())?;
        write_string(vars_out, vars.join(","))
    })
}

/// Whether `lhs = rhs` holds in every Boolean assignment.
///
/// # Safety
/// Both terms must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_identity_valid(
    lhs: *const DiffalgTerm,
    rhs: *const DiffalgTerm,
    out: *mut bool,
) -> DiffalgStatus {
    guard(|| {
        let (l, r) = (&deref(lhs, "lhs")?.inner, &deref(rhs, "rhs")?.inner);
        write_out(out, valid_identity(l, r))
    })
}

/// Parses a relation (`=`, `<=`, `/\`, `\/`).
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_parse(src: *const c_char, out: *mut *mut DiffalgRelation) -> DiffalgStatus {
    guard(|| {
        let text = read_str(src, "src")?;
        let r = parse_relation(text).map_err(|e| Failure::new(DiffalgStatus::ParseError, e))?;
        write_out(out, Box::into_raw(Box::new(DiffalgRelation { inner: r })))
    })
}

/// Releases a relation. NULL is ignored.
///
/// # Safety
/// `r` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_free(r: *mut DiffalgRelation) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Canonical concrete syntax of a relation.
///
/// # Safety
/// `r` must be a live relation; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_render(r: *const DiffalgRelation, out: *mut *mut c_char) -> DiffalgStatus {
    guard(|| write_string(out, render_relation(&deref(r, "relation")?.inner)))
}

/// The term `t` such that the relation is equivalent to `t = 0`.
///
/// # Safety
/// `r` must be a live relation; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_equation(r: *const DiffalgRelation, out: *mut *mut DiffalgTerm) -> DiffalgStatus {
    guard(|| {
        let body = equation_of(&deref(r, "relation")?.inner).body;
        write_out(out, Box::into_raw(Box::new(DiffalgTerm { inner: body })))
    })
}

/// Whether two relations hold under exactly the same assignments.
///
/// # Safety
/// Both relations must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_equivalent(
    a: *const DiffalgRelation,
    b: *const DiffalgRelation,
    out: *mut bool,
) -> DiffalgStatus {
    guard(|| {
        let v = diffalg::equivalence::equivalent(&deref(a, "a")?.inner, &deref(b, "b")?.inner);
        write_out(out, v.is_equivalent())
    })
}

/// Simplest equivalent conjunction of inclusions, via a minimal sum of products.
///
/// # Safety
/// `r` must be a live relation; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_relation_derive(r: *const DiffalgRelation, out: *mut *mut DiffalgRelation) -> DiffalgStatus {
    guard(|| {
        let d = derive(&deref(r, "relation")?.inner).map_err(|e| Failure::new(DiffalgStatus::ComputationError, e))?;
        write_out(out, Box::into_raw(Box::new(DiffalgRelation { inner: d.relation })))
    })
}

/// Replays every lemma in a proof corpus given as source text.
///
/// # Safety
/// `src` must be a NUL-terminated string; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_corpus_verify(
    src: *const c_char,
    total_out: *mut size_t,
    proved_out: *mut size_t,
    all_ok_out: *mut bool,
) -> DiffalgStatus {
    guard(|| {
        let text = read_str(src, "src")?;
        let scripts = parse_corpus(text).map_err(|e| Failure::new(DiffalgStatus::ParseError, e))?;
        let report = diffalg::kernel::verify_corpus(&scripts);
        if total_out.is_null() || proved_out.is_null() || all_ok_out.is_null() {
            return Err(Failure::new(DiffalgStatus::NullArgument, "output pointer is NULL"));
        }
        write_out(total_out, report.entries.len())?;
        write_out(proved_out, report.proved())?;
        write_out(all_ok_out, report.all_ok())
    })
}

/// Numeric law matrix. `mode` is `"mod"` or `"sum"`. Law ids that hold and
/// that fail are written comma-separated.
///
/// # Safety
/// `mode` must be a NUL-terminated string; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_numeric_matrix(
    mode: *const c_char,
    samples: size_t,
    seed: u64,
    holding_out: *mut *mut c_char,
    failing_out: *mut *mut c_char,
) -> DiffalgStatus {
    guard(|| {
        let mode: NumericMode = read_str(mode, "mode")?
            .parse()
            .map_err(|e| Failure::new(DiffalgStatus::InvalidArgument, e))?;
        if holding_out.is_null() || failing_out.is_null() {
            return Err(Failure::new(DiffalgStatus::NullArgument, "output pointer is NULL"));
        }
        let m = numeric_matrix(mode, samples, seed);
        write_string(holding_out, m.holding().join(","))?;
        write_string(failing_out, m.failing().join(","))
    })
}
