//! C ABI for the sp4 toolkit.
//!
//! Conventions:
//! - Every fallible function returns an [`Sp4Status`].  On failure a message is
//!   available from [`sp4_last_error`] until the next call on the same thread.
//! - Strings crossing the boundary are NUL-terminated UTF-8.  Strings returned
//!   through `out` parameters are owned by the caller and must be released with
//!   [`sp4_string_free`].
//! - Catalogs and subalgebras are opaque handles created by `*_load`,
//!   `*_from_json` or [`sp4_subalgebra_conjugate`] and released with the
//!   matching `*_free` function.
//! - Structured data is exchanged as JSON in the same schemas the `sp4`
//!   command line uses.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sp4::catalog::{load_catalog, verify_catalog, Catalog};
use sp4::classify::signature;
use sp4::cli::{exit_code, identify_subalgebra, PROBE_DRAWS};
use sp4::jordan::classify_element;
use sp4::lie::Subalgebra;
use sp4::linalg::{parse_rational_list, Mat4};
use sp4::sp4::{conjugate_subalgebra, in_sp4_group, param_samples, Recipe};
use sp4::Error;

/// Result codes of the C interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sp4Status {
    /// Success.
    Sp4Ok = 0,
    /// A verification ran and found a failing check.
    Sp4VerificationFailed = 1,
    /// Malformed input (JSON, rationals, recipes, non-closed subspaces, …).
    Sp4ParseError = 2,
    /// Irrational spectrum or a structure outside the supported families.
    Sp4OutOfScope = 3,
    /// A required pointer argument was null.
    Sp4NullPointer = 4,
    /// A string argument was not valid UTF-8.
    Sp4InvalidUtf8 = 5,
    /// Unexpected internal failure.
    Sp4Internal = 6,
}

/// Opaque catalog handle.
pub struct Sp4Catalog {
    inner: Catalog,
}

/// Opaque subalgebra handle.
pub struct Sp4Subalgebra {
    inner: Subalgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> Sp4Status {
    match exit_code(e) {
        2 => Sp4Status::Sp4ParseError,
        3 => Sp4Status::Sp4OutOfScope,
        _ => Sp4Status::Sp4Internal,
    }
}

struct Failure(Sp4Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<Sp4Status, Failure>) -> Sp4Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == Sp4Status::Sp4Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            Sp4Status::Sp4Internal
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(Sp4Status::Sp4NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(Sp4Status::Sp4InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(Sp4Status::Sp4NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(Sp4Status::Sp4Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_handle<T>(out: *mut *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(Sp4Status::Sp4NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

/// # Safety
/// `h` must be null or a live handle.
unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Failure> {
    h.as_ref()
        .ok_or_else(|| Failure(Sp4Status::Sp4NullPointer, format!("{what} handle is null")))
}

/// The message of the last failure on this thread (empty after a success).
/// The pointer stays valid until the next call into this library on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn sp4_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn sp4_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library.  Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The built-in catalog.  Never null; release with [`sp4_catalog_free`].
#[no_mangle]
pub extern "C" fn sp4_catalog_load() -> *mut Sp4Catalog {
    Box::into_raw(Box::new(Sp4Catalog { inner: load_catalog() }))
}

/// Parse and validate catalog JSON into a new handle.
///
/// # Safety
/// `json` must be a valid string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_catalog_from_json(json: *const c_char, out: *mut *mut Sp4Catalog) -> Sp4Status {
    guard(|| {
        let c = Catalog::from_json(read_str(json, "json")?)?;
        write_handle(out, Sp4Catalog { inner: c })?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Release a catalog handle.  Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sp4_catalog_free(h: *mut Sp4Catalog) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of rows (0 for a null handle).
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp4_catalog_len(h: *const Sp4Catalog) -> usize {
    h.as_ref().map_or(0, |c| c.inner.rows.len())
}

/// The catalog as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_catalog_to_json(h: *const Sp4Catalog, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let c = handle(h, "catalog")?;
        write_string(out, c.inner.to_json())?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Certify the catalog and write the JSON report to `out`.  `params` is a
/// comma-separated list of rational samples, or null for the default set
/// (honouring `SP4_PARAM_SAMPLES`).  Returns `Sp4Ok` when every check passes
/// and `Sp4VerificationFailed` otherwise; the report is written in both cases.
///
/// # Safety
/// `h` must be a live handle; `params` null or a valid string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_catalog_verify(
    h: *const Sp4Catalog,
    params: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> Sp4Status {
    guard(|| {
        let c = handle(h, "catalog")?;
        let samples = if params.is_null() {
            param_samples()?
        } else {
            parse_rational_list(read_str(params, "params")?)?
        };
        let report = verify_catalog(&c.inner, &samples, Some((seed, PROBE_DRAWS)));
        write_string(out, report.to_json())?;
        Ok(if report.pass {
            Sp4Status::Sp4Ok
        } else {
            Sp4Status::Sp4VerificationFailed
        })
    })
}

/// Parse subalgebra JSON (`{"basis": [[["1","0",…],…],…]]}`) into a new handle.
///
/// # Safety
/// `json` must be a valid string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_from_json(json: *const c_char, out: *mut *mut Sp4Subalgebra) -> Sp4Status {
    guard(|| {
        let s = Subalgebra::from_json(read_str(json, "json")?)?;
        write_handle(out, Sp4Subalgebra { inner: s })?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Release a subalgebra handle.  Null is ignored.
///
/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_free(h: *mut Sp4Subalgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension (0 for a null handle).
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_dim(h: *const Sp4Subalgebra) -> usize {
    h.as_ref().map_or(0, |s| s.inner.dim())
}

/// The subalgebra as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_to_json(h: *const Sp4Subalgebra, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        write_string(out, handle(h, "subalgebra")?.inner.to_json())?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Conjugation invariants as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_invariants(h: *const Sp4Subalgebra, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let sig = signature(&handle(h, "subalgebra")?.inner)?;
        write_string(out, serde_json::to_string(&sig)?)?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Isomorphism classes and matching catalog rows as JSON
/// (`{"dim", "degraaf", "sw", "catalog_matches"}`).
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_identify(h: *const Sp4Subalgebra, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let (v, _) = identify_subalgebra(&handle(h, "subalgebra")?.inner)?;
        write_string(out, v.to_string())?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// Image `g·s·g⁻¹` under a conjugator recipe such as `W*shear:alpha:1/2`,
/// as a new handle.
///
/// # Safety
/// `h` must be a live handle; `recipe` a valid string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_subalgebra_conjugate(
    h: *const Sp4Subalgebra,
    recipe: *const c_char,
    out: *mut *mut Sp4Subalgebra,
) -> Sp4Status {
    guard(|| {
        let s = handle(h, "subalgebra")?;
        let r = Recipe::parse(read_str(recipe, "recipe")?)?;
        let g = r.matrix();
        if !in_sp4_group(&g) {
            return Err(Error::Conjugator(format!("{r} is not in Sp(4)")).into());
        }
        let image = Subalgebra::new(conjugate_subalgebra(&g, s.inner.space())?)?;
        write_handle(out, Sp4Subalgebra { inner: image })?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// JSON-in/JSON-out identification of a subalgebra document.
///
/// # Safety
/// `json` must be a valid string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_identify_json(json: *const c_char, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let s = Subalgebra::from_json(read_str(json, "json")?)?;
        let (v, _) = identify_subalgebra(&s)?;
        write_string(out, v.to_string())?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// JSON-in/JSON-out conjugation invariants of a subalgebra document.
///
/// # Safety
/// `json` must be a valid string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_invariants_json(json: *const c_char, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let s = Subalgebra::from_json(read_str(json, "json")?)?;
        write_string(out, serde_json::to_string(&signature(&s)?)?)?;
        Ok(Sp4Status::Sp4Ok)
    })
}

/// JSON-in/JSON-out conjugacy class of one element (a 4×4 matrix of
/// rational strings).
///
/// # Safety
/// `json` must be a valid string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp4_classify_element_json(json: *const c_char, out: *mut *mut c_char) -> Sp4Status {
    guard(|| {
        let m: Mat4 = serde_json::from_str(read_str(json, "json")?)?;
        write_string(out, serde_json::to_string(&classify_element(&m)?)?)?;
        Ok(Sp4Status::Sp4Ok)
    })
}
