//! C interface to the all2sat enumerator.
//!
//! Every handle is opaque and owned by the caller until passed to its
//! `_free` function. Fallible calls return an [`All2satStatus`]; on failure
//! a message is available from [`all2sat_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use all2sat::compressed::CubeEnumerator;
use all2sat::enumerator::Instance;
use all2sat::{count_models, enumerate_cubes, enumerate_models, parse_dimacs, Clause2, Cnf2, Literal, ModelEnumerator};

/// Result of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum All2satStatus {
    Ok = 0,
    /// The stream is exhausted; nothing was written.
    End = 1,
    NullPointer = -1,
    ParseError = -2,
    InvalidArgument = -3,
    /// The output buffer holds fewer entries than the formula has
    /// variables.
    BufferTooSmall = -4,
    /// An internal error was caught at the boundary.
    Panic = -5,
}

/// A parsed 2-CNF formula.
pub struct All2satFormula {
    inner: Cnf2,
}

/// Lazy stream of models.
pub struct All2satModelStream {
    inner: ModelEnumerator,
    num_vars: usize,
}

/// Lazy stream of disjoint model cubes.
pub struct All2satCubeStream {
    inner: CubeEnumerator,
    instance: Option<Arc<Instance>>,
    num_vars: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(All2satStatus, String);

impl From<all2sat::Error> for Failure {
    fn from(e: all2sat::Error) -> Failure {
        let code = if e.is_parse_error() {
            All2satStatus::ParseError
        } else {
            All2satStatus::InvalidArgument
        };
        Failure(code, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(All2satStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<All2satStatus, Failure>) -> All2satStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            All2satStatus::Panic
        }
    }
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<All2satStatus, Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(All2satStatus::Ok)
}

unsafe fn formula<'a>(f: *const All2satFormula) -> Result<&'a Cnf2, Failure> {
    f.as_ref().map(|f| &f.inner).ok_or_else(|| null("formula"))
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn all2sat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on this thread.
#[no_mangle]
pub extern "C" fn all2sat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses DIMACS text holding clauses of width one or two.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_parse(text: *const c_char, out: *mut *mut All2satFormula) -> All2satStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null(if text.is_null() { "text" } else { "output pointer" }));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(All2satStatus::ParseError, "input is not UTF-8".into()))?;
        put(out, All2satFormula {
            inner: parse_dimacs(text)?,
        })
    })
}

/// Builds a formula from `len` DIMACS literals where each clause of width
/// one or two is terminated by `0`.
///
/// # Safety
/// `literals` must point to `len` readable values (or be null when `len`
/// is zero) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_from_literals(
    num_vars: usize,
    literals: *const i64,
    len: usize,
    out: *mut *mut All2satFormula,
) -> All2satStatus {
    guard(|| {
        let lits: &[i64] = match (literals.is_null(), len) {
            (_, 0) => &[],
            (true, _) => return Err(null("literals")),
            (false, _) => std::slice::from_raw_parts(literals, len),
        };
        if lits.last().is_some_and(|&l| l != 0) {
            return Err(Failure(All2satStatus::InvalidArgument, "last clause is not terminated by 0".into()));
        }
        let invalid = |msg: String| Failure(All2satStatus::InvalidArgument, msg);
        let (mut clauses, mut units) = (Vec::new(), Vec::new());
        let groups = match lits.split_last() {
            Some((_, body)) => body.split(|&l| l == 0).collect(),
            None => Vec::new(),
        };
        for group in groups {
            let parsed: Vec<Literal> = group
                .iter()
                .map(|&l| Literal::from_dimacs(l).ok_or_else(|| invalid(format!("invalid literal {l}"))))
                .collect::<Result<_, _>>()?;
            match parsed[..] {
                [u] => units.push(u),
                [a, b] => clauses.push(Clause2::new(a, b)),
                _ => return Err(invalid(format!("clause of width {}", parsed.len()))),
            }
        }
        put(out, All2satFormula {
            inner: Cnf2::new(num_vars, clauses, units).map_err(|e| invalid(e.to_string()))?,
        })
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_num_vars(f: *const All2satFormula) -> usize {
    f.as_ref().map_or(0, |f| f.inner.num_vars())
}

/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_free(f: *mut All2satFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live formula handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_is_satisfiable(f: *const All2satFormula, out: *mut bool) -> All2satStatus {
    guard(|| {
        let f = formula(f)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = enumerate_models(f).is_satisfiable();
        Ok(All2satStatus::Ok)
    })
}

/// Writes the exact model count as a decimal string, to be released with
/// [`all2sat_string_free`].
///
/// # Safety
/// `f` must be a live formula handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_formula_count(f: *const All2satFormula, out: *mut *mut c_char) -> All2satStatus {
    guard(|| {
        let f = formula(f)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let digits = count_models(f).count.to_string();
        *out = CString::new(digits).expect("digits only").into_raw();
        Ok(All2satStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn all2sat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Starts a model stream. The stream does not borrow `f`.
///
/// # Safety
/// `f` must be a live formula handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_models_new(f: *const All2satFormula, out: *mut *mut All2satModelStream) -> All2satStatus {
    guard(|| {
        let f = formula(f)?;
        put(out, All2satModelStream {
            inner: enumerate_models(f),
            num_vars: f.num_vars(),
        })
    })
}

/// Writes the next model as `num_vars` bytes, `values[i]` being the value
/// of variable `i + 1`, or returns [`All2satStatus::End`].
///
/// # Safety
/// `s` must be a live stream and `values` must hold `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn all2sat_models_next(s: *mut All2satModelStream, values: *mut u8, len: usize) -> All2satStatus {
    guard(|| {
        let s = s.as_mut().ok_or_else(|| null("stream"))?;
        let buf = output(values, len, s.num_vars)?;
        let Some(m) = s.inner.next() else {
            return Ok(All2satStatus::End);
        };
        for (slot, &v) in buf.iter_mut().zip(m.values()) {
            *slot = u8::from(v);
        }
        Ok(All2satStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a stream not yet freed.
#[no_mangle]
pub unsafe extern "C" fn all2sat_models_free(s: *mut All2satModelStream) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Starts a cube stream. The stream does not borrow `f`.
///
/// # Safety
/// `f` must be a live formula handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_cubes_new(f: *const All2satFormula, out: *mut *mut All2satCubeStream) -> All2satStatus {
    guard(|| {
        let f = formula(f)?;
        let inner = enumerate_cubes(f);
        put(out, All2satCubeStream {
            instance: inner.instance().cloned(),
            inner,
            num_vars: f.num_vars(),
        })
    })
}

/// Writes the next cube as one byte per variable (0, 1, or 2 for
/// don't-care) and its weight exponent: the cube holds `2^num_twos`
/// models. Variables in one strong component share their 2, so
/// `num_twos` can be smaller than the number of 2 bytes.
///
/// # Safety
/// `s` must be a live stream, `trits` must hold `len` writable bytes and
/// `num_twos` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn all2sat_cubes_next(
    s: *mut All2satCubeStream,
    trits: *mut u8,
    len: usize,
    num_twos: *mut u32,
) -> All2satStatus {
    guard(|| {
        let s = s.as_mut().ok_or_else(|| null("stream"))?;
        let buf = output(trits, len, s.num_vars)?;
        let Some(cube) = s.inner.next() else {
            return Ok(All2satStatus::End);
        };
        let inst = s.instance.as_ref().expect("cubes imply an instance");
        for (slot, ch) in buf.iter_mut().zip(cube.to_variable_string(inst).bytes()) {
            *slot = ch - b'0';
        }
        if let Some(n) = num_twos.as_mut() {
            *n = cube.num_twos() as u32;
        }
        Ok(All2satStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a stream not yet freed.
#[no_mangle]
pub unsafe extern "C" fn all2sat_cubes_free(s: *mut All2satCubeStream) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn output<'a>(buf: *mut u8, len: usize, need: usize) -> Result<&'a mut [u8], Failure> {
    if len < need {
        return Err(Failure(
            All2satStatus::BufferTooSmall,
            format!("buffer holds {len} bytes, need {need}"),
        ));
    }
    if buf.is_null() {
        return if need == 0 { Ok(&mut []) } else { Err(null("buffer")) };
    }
    Ok(std::slice::from_raw_parts_mut(buf, need))
}
