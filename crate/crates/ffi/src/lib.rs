//! C interface to `bitoeplitz`.
//!
//! Every function returns a [`BtStatus`]; on failure the message is available
//! from [`bt_last_error_message`] on the same thread. Handles are opaque and
//! must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use bitoeplitz::io;
use bitoeplitz::linalg::{CVector, C64};
use bitoeplitz::models::{builtin, Model};
use bitoeplitz::{CrossSection, Error, OperatorMatrix};

/// Status codes. `BT_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    UnknownModel = 5,
    AxiomViolation = 6,
    Structural = 7,
    InvalidModule = 8,
    OutOfRange = 9,
    OutsideWindow = 10,
    NotAdjointable = 11,
    NotCreationOperator = 12,
    NotFull = 13,
    NotToeplitz = 14,
    Panic = 15,
}

/// A validated model with its tensor-power ladder.
pub struct BtModel {
    inner: Model,
}

/// A block matrix on the window `[-N, N]`.
pub struct BtOperator {
    inner: OperatorMatrix,
}

/// A finitely supported cross-section.
pub struct BtSection {
    inner: CrossSection,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BtStatus {
    match e {
        Error::Structural(_) => BtStatus::Structural,
        Error::AxiomViolation { .. } => BtStatus::AxiomViolation,
        Error::InvalidModule(_) => BtStatus::InvalidModule,
        Error::OutOfRange { .. } => BtStatus::OutOfRange,
        Error::OutsideWindow { .. } => BtStatus::OutsideWindow,
        Error::NotAdjointable(_) => BtStatus::NotAdjointable,
        Error::NotCreationOperator(_) => BtStatus::NotCreationOperator,
        Error::NotFull { .. } => BtStatus::NotFull,
        Error::NotToeplitz { .. } => BtStatus::NotToeplitz,
        Error::UnknownModel(_) => BtStatus::UnknownModel,
        Error::Parse(_) => BtStatus::Parse,
        Error::Io(_) => BtStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard<F>(f: F) -> BtStatus
where
    F: FnOnce() -> Result<(), BtStatus>,
{
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BtStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            BtStatus::Panic
        }
    }
}

fn lib<T>(r: bitoeplitz::Result<T>) -> Result<T, BtStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> BtStatus {
    set_error(format!("null pointer: {what}"));
    BtStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, BtStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        BtStatus::InvalidUtf8
    })
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, BtStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, BtStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a builtin model (`scalar`, `flip`, `perm3`, `m2-inner`) with window `radius`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_model_builtin(name: *const c_char, radius: usize, out: *mut *mut BtModel) -> BtStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let out = out_arg(out, "out")?;
        *out = boxed(BtModel {
            inner: lib(builtin(name, radius))?,
        });
        Ok(())
    })
}

/// Loads a model file, or a builtin if `source` names one.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_model_load(source: *const c_char, out: *mut *mut BtModel) -> BtStatus {
    guard(|| {
        let source = str_arg(source, "source")?;
        let out = out_arg(out, "out")?;
        *out = boxed(BtModel {
            inner: lib(io::load_model(source))?,
        });
        Ok(())
    })
}

/// # Safety
/// `model` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bt_model_free(model: *mut BtModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Window radius the model was built with.
///
/// # Safety
/// `model` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bt_model_window(model: *const BtModel, out: *mut usize) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        *out_arg(out, "out")? = m.inner.window();
        Ok(())
    })
}

/// Dimension of the tensor power of degree `n`.
///
/// # Safety
/// `model` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bt_model_level_dim(model: *const BtModel, n: i32, out: *mut usize) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        *out_arg(out, "out")? = lib(m.inner.ladder.dim(n))?;
        Ok(())
    })
}

/// An empty section.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bt_section_new(out: *mut *mut BtSection) -> BtStatus {
    guard(|| {
        *out_arg(out, "out")? = boxed(BtSection {
            inner: CrossSection::new(),
        });
        Ok(())
    })
}

/// Sets `f(k)` from `len` complex coefficients stored as interleaved `re, im` pairs.
///
/// # Safety
/// `coeffs` must point to `2 * len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn bt_section_set(
    model: *const BtModel,
    section: *mut BtSection,
    k: i32,
    coeffs: *const f64,
    len: usize,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let s = out_arg(section, "section")?;
        if coeffs.is_null() && len > 0 {
            return Err(null("coeffs"));
        }
        let raw = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, 2 * len) };
        let v = CVector::from_iterator(len, raw.chunks_exact(2).map(|p| C64::new(p[0], p[1])));
        lib(s.inner.insert(&m.inner.ladder, k, v))
    })
}

/// Copies `f(k)` into `out` as interleaved pairs; `len` must equal the level dimension.
/// Writes zeros when `k` is off the support.
///
/// # Safety
/// `out` must point to `2 * len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bt_section_get(
    model: *const BtModel,
    section: *const BtSection,
    k: i32,
    out: *mut f64,
    len: usize,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let s = ref_arg(section, "section")?;
        let v = lib(s.inner.value(&m.inner.ladder, k))?;
        if v.len() != len {
            set_error(format!("level {k} has dimension {}, buffer holds {len}", v.len()));
            return Err(BtStatus::Structural);
        }
        if out.is_null() && len > 0 {
            return Err(null("out"));
        }
        for (i, z) in v.iter().enumerate() {
            *out.add(2 * i) = z.re;
            *out.add(2 * i + 1) = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bt_section_load(
    model: *const BtModel,
    path: *const c_char,
    out: *mut *mut BtSection,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let path = str_arg(path, "path")?;
        let out = out_arg(out, "out")?;
        *out = boxed(BtSection {
            inner: lib(io::load_section(Path::new(path), &m.inner.ladder))?,
        });
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bt_section_save(section: *const BtSection, path: *const c_char) -> BtStatus {
    guard(|| {
        let s = ref_arg(section, "section")?;
        let path = str_arg(path, "path")?;
        lib(io::save_section(Path::new(path), &s.inner))
    })
}

/// # Safety
/// `section` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bt_section_free(section: *mut BtSection) {
    if !section.is_null() {
        drop(Box::from_raw(section));
    }
}

/// Left regular representation of `section` on the window `[-radius, radius]`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_lambda(
    model: *const BtModel,
    section: *const BtSection,
    radius: i32,
    out: *mut *mut BtOperator,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let s = ref_arg(section, "section")?;
        let out = out_arg(out, "out")?;
        *out = boxed(BtOperator {
            inner: lib(m.inner.ladder.lambda_rep(&s.inner, radius))?,
        });
        Ok(())
    })
}

/// Toeplitz predicate: `is_toeplitz` and the largest interior residual.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_operator_is_toeplitz(
    model: *const BtModel,
    op: *const BtOperator,
    tol: f64,
    is_toeplitz: *mut bool,
    max_residual: *mut f64,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let o = ref_arg(op, "op")?;
        let check = lib(o.inner.toeplitz_check(&m.inner.ladder, tol))?;
        *out_arg(is_toeplitz, "is_toeplitz")? = check.is_toeplitz;
        *out_arg(max_residual, "max_residual")? = check.max_residual;
        Ok(())
    })
}

/// Recovers a section from a Toeplitz operator. Fails with
/// `BT_STATUS_NOT_TOEPLITZ` when the predicate rejects `op` at `tol`.
///
/// # Safety
/// All pointers must be valid. `max_spread` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn bt_synthesize(
    model: *const BtModel,
    op: *const BtOperator,
    radius: i32,
    tol: f64,
    out: *mut *mut BtSection,
    max_spread: *mut f64,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let o = ref_arg(op, "op")?;
        let out = out_arg(out, "out")?;
        let syn = lib(m.inner.ladder.synthesize_section(&o.inner, radius, tol))?;
        if let Some(s) = max_spread.as_mut() {
            *s = syn.consistency.max_spread;
        }
        *out = boxed(BtSection { inner: syn.section });
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bt_operator_load(
    model: *const BtModel,
    path: *const c_char,
    out: *mut *mut BtOperator,
) -> BtStatus {
    guard(|| {
        let m = ref_arg(model, "model")?;
        let path = str_arg(path, "path")?;
        let out = out_arg(out, "out")?;
        *out = boxed(BtOperator {
            inner: lib(io::load_operator(Path::new(path), &m.inner.ladder))?,
        });
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn bt_operator_save(op: *const BtOperator, path: *const c_char) -> BtStatus {
    guard(|| {
        let o = ref_arg(op, "op")?;
        let path = str_arg(path, "path")?;
        lib(io::save_operator(Path::new(path), &o.inner))
    })
}

/// Window radius of the operator.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bt_operator_radius(op: *const BtOperator, out: *mut i32) -> BtStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(op, "op")?.inner.radius();
        Ok(())
    })
}

/// # Safety
/// `op` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bt_operator_free(op: *mut BtOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}
