//! C interface to the braidwork core.
//!
//! Geometries and logical maps cross the boundary as opaque handles that
//! the caller frees with the matching `*_free` function. Every fallible
//! call returns a [`BwStatus`]; on failure the message is kept per thread
//! and read back with [`bw_last_error`]. Strings handed out are
//! NUL-terminated UTF-8 owned by the caller, released with
//! [`bw_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use braidwork::calc::{distill_volume, output_error, DistillationSpec, Protocol};
use braidwork::canonicalize::lower;
use braidwork::geometry::{self, Geometry};
use braidwork::tableau::CliffordCircuit;
use braidwork::verify::{equivalent, verify_with, BuildOptions, LogicalMap};
use braidwork::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwStatus {
    Ok = 0,
    NullArgument = 1,
    BadString = 2,
    Io = 3,
    Parse = 4,
    Invalid = 5,
    ResourceCap = 6,
    Unsupported = 7,
    Precondition = 8,
    Underdetermined = 9,
    Other = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwProtocol {
    Y = 0,
    A = 1,
}

/// Opaque geometry handle.
pub struct BwGeometry(Geometry);

/// Opaque logical-map handle.
pub struct BwLogicalMap(LogicalMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> BwStatus {
    match e {
        Error::Io { .. } => BwStatus::Io,
        Error::Parse { .. } | Error::Version { .. } | Error::Circuit(_) => BwStatus::Parse,
        Error::Invalid(_) | Error::InvalidDistance(_) => BwStatus::Invalid,
        Error::ResourceCap { .. } => BwStatus::ResourceCap,
        Error::Unsupported(_) => BwStatus::Unsupported,
        Error::Precondition(_) | Error::TheoremPrecondition(_) | Error::MoveRejected { .. } => {
            BwStatus::Precondition
        }
        Error::UnderdeterminedStructure { .. } => BwStatus::Underdetermined,
        _ => BwStatus::Other,
    }
}

/// Run `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), BwStatus>) -> BwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BwStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            BwStatus::Panic
        }
    }
}

fn fail(e: Error) -> BwStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, BwStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(BwStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        BwStatus::BadString
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, BwStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        BwStatus::NullArgument
    })
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), BwStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(BwStatus::NullArgument);
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior NULs removed").into_raw()
}

fn options(max_cells: u64) -> BuildOptions {
    let mut o = BuildOptions::default();
    if max_cells > 0 {
        o.max_cells = usize::try_from(max_cells).unwrap_or(usize::MAX);
    }
    o
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn bw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bw_geometry_load(path: *const c_char, out: *mut *mut BwGeometry) -> BwStatus {
    guard(|| {
        let g = geometry::load(text(path)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BwGeometry(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bw_geometry_parse(document: *const c_char, out: *mut *mut BwGeometry) -> BwStatus {
    guard(|| {
        let g = geometry::from_str(text(document)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BwGeometry(g))))
    })
}

/// Lower the circuit file at `path` to its canonical geometry.
#[no_mangle]
pub unsafe extern "C" fn bw_lower_circuit(path: *const c_char, out: *mut *mut BwGeometry) -> BwStatus {
    guard(|| {
        let c = CliffordCircuit::load(text(path)?).map_err(fail)?;
        let g = lower(&c).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BwGeometry(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bw_geometry_free(g: *mut BwGeometry) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Serialized geometry document.
#[no_mangle]
pub unsafe extern "C" fn bw_geometry_to_string(g: *const BwGeometry, out: *mut *mut c_char) -> BwStatus {
    guard(|| put(out, owned(geometry::to_string(&handle(g)?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn bw_geometry_volume(g: *const BwGeometry, out: *mut u64) -> BwStatus {
    guard(|| put(out, geometry::volume(&handle(g)?.0).map_err(fail)?))
}

/// `BW_STATUS_OK` when the geometry is well formed, else
/// `BW_STATUS_INVALID` with the violations as the error message.
#[no_mangle]
pub unsafe extern "C" fn bw_geometry_validate(g: *const BwGeometry) -> BwStatus {
    guard(|| {
        let report = geometry::validate(&handle(g)?.0);
        if report.is_empty() {
            Ok(())
        } else {
            Err(fail(Error::Invalid(report)))
        }
    })
}

/// Compute the logical map; `max_cells` of 0 keeps the default cap.
#[no_mangle]
pub unsafe extern "C" fn bw_verify(g: *const BwGeometry, max_cells: u64, out: *mut *mut BwLogicalMap) -> BwStatus {
    guard(|| {
        let map = verify_with(&handle(g)?.0, options(max_cells)).map_err(fail)?;
        put(out, Box::into_raw(Box::new(BwLogicalMap(map))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bw_logical_map_free(m: *mut BwLogicalMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// The map as a structured document.
#[no_mangle]
pub unsafe extern "C" fn bw_logical_map_to_string(m: *const BwLogicalMap, out: *mut *mut c_char) -> BwStatus {
    guard(|| {
        let doc = serde_json::to_string_pretty(&handle(m)?.0.to_doc()).map_err(|e| {
            set_error(e.to_string());
            BwStatus::Other
        })?;
        put(out, owned(doc))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bw_logical_map_equal(a: *const BwLogicalMap, b: *const BwLogicalMap, out: *mut bool) -> BwStatus {
    guard(|| put(out, handle(a)?.0 == handle(b)?.0))
}

#[no_mangle]
pub unsafe extern "C" fn bw_equivalent(
    a: *const BwGeometry,
    b: *const BwGeometry,
    max_cells: u64,
    out: *mut bool,
) -> BwStatus {
    guard(|| {
        let same = equivalent(&handle(a)?.0, &handle(b)?.0, options(max_cells)).map_err(fail)?;
        put(out, same)
    })
}

/// Output error and volume (in logical cells) of `levels` rounds of
/// distillation at input error `p`.
#[no_mangle]
pub unsafe extern "C" fn bw_distill(
    protocol: BwProtocol,
    levels: u32,
    p: f64,
    error_out: *mut f64,
    volume_out: *mut f64,
) -> BwStatus {
    guard(|| {
        let protocol = match protocol {
            BwProtocol::Y => Protocol::Y,
            BwProtocol::A => Protocol::A,
        };
        let spec = DistillationSpec::new(protocol, levels, p);
        let e = output_error(&spec).map_err(fail)?;
        let v = distill_volume(&spec).map_err(fail)?;
        put(error_out, e.probability)?;
        put(volume_out, v.cells())
    })
}
