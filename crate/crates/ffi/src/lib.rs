//! C ABI over `cellkernel`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Strings returned through `out`
//! parameters are heap allocated and must be released with
//! [`ck_string_free`]. Every function returns a [`CkStatus`]; on failure
//! [`ck_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cellkernel::diagram::{multiply_diagrams, Diagram};
use cellkernel::guard::SizeGuard;
use cellkernel::ring::RingSpec;
use cellkernel::tensor::{Eps, Instance};
use cellkernel::theorems::{basis_elements, kernel, run_task, Task, CHECK_NAMES};
use cellkernel::{with_ring, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    InvalidArgument = 1,
    SizeGuard = 2,
    Parse = 3,
    Mismatch = 4,
    Ring = 5,
    Assertion = 6,
    NullPointer = 7,
    Panic = 8,
    /// The check ran and its report says it failed.
    CheckFailed = 9,
}

/// A tensor-space instance `(n, r, ε, ring)`.
pub struct CkInstance {
    inner: Instance,
}

/// A partition diagram.
pub struct CkDiagram {
    inner: Diagram,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(CkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidArgument(_) => CkStatus::InvalidArgument,
            Error::SizeGuard(_) => CkStatus::SizeGuard,
            Error::Parse(_) => CkStatus::Parse,
            Error::Mismatch(_) => CkStatus::Mismatch,
            Error::Ring(_) => CkStatus::Ring,
            Error::Assertion(_) => CkStatus::Assertion,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn ffi_call(f: impl FnOnce() -> Result<CkStatus, Failure>) -> CkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            CkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CkStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(CkStatus::Assertion, "output contains a nul byte".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn guard() -> Result<SizeGuard, Failure> {
    Ok(SizeGuard::from_env()?)
}

/// Creates an instance. `ring` is `"Z"`, `"Q"` or `"Fp:P"`; `eps_half`
/// selects `ε = ½`.
///
/// # Safety
/// `ring` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_instance_new(
    n: u32,
    r: u32,
    eps_half: bool,
    ring: *const c_char,
    out: *mut *mut CkInstance,
) -> CkStatus {
    ffi_call(|| {
        let ring: RingSpec = str_arg(ring, "ring")?.parse()?;
        let eps = if eps_half { Eps::Half } else { Eps::Zero };
        let inner = Instance::new(n as usize, r as usize, eps, ring)?;
        write_out(out, Box::into_raw(Box::new(CkInstance { inner })), "out")?;
        Ok(CkStatus::Ok)
    })
}

/// # Safety
/// `inst` must come from [`ck_instance_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_instance_free(inst: *mut CkInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

unsafe fn instance_ref<'a>(inst: *const CkInstance) -> Result<&'a Instance, Failure> {
    inst.as_ref().map(|i| &i.inner).ok_or_else(|| null("instance"))
}

/// Rank of the kernel of the group action over the instance's ring.
///
/// # Safety
/// `inst` must be a live handle and `out_rank` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_kernel_rank(inst: *const CkInstance, out_rank: *mut u64) -> CkStatus {
    ffi_call(|| {
        let inst = instance_ref(inst)?;
        let g = guard()?;
        let rank = with_ring!(inst.ring, |ring| kernel(&ring, inst, &g).map(|k| k.rank()))?;
        write_out(out_rank, rank as u64, "out_rank")?;
        Ok(CkStatus::Ok)
    })
}

/// Kernel rank and basis as a JSON object `{"rank", "basis"}`.
///
/// # Safety
/// `inst` must be a live handle and `out_json` a valid pointer; release the
/// string with [`ck_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ck_kernel_json(inst: *const CkInstance, out_json: *mut *mut c_char) -> CkStatus {
    ffi_call(|| {
        let inst = instance_ref(inst)?;
        let g = guard()?;
        let basis: Vec<serde_json::Value> = with_ring!(inst.ring, |ring| {
            kernel(&ring, inst, &g)
                .and_then(|k| basis_elements(&ring, inst.d(), &k))
                .map(|b| b.iter().map(|e| e.to_json()).collect())
        })?;
        let v = serde_json::json!({ "instance": inst, "rank": basis.len(), "basis": basis });
        write_string(out_json, v.to_string())?;
        Ok(CkStatus::Ok)
    })
}

/// Runs a named check that takes a tensor-space instance and writes its
/// JSON report. Returns `CK_STATUS_CHECK_FAILED` (with the report still
/// written) when the check fails.
///
/// # Safety
/// `name` must be a nul-terminated string, `inst` a live handle and
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_run_check(
    name: *const c_char,
    inst: *const CkInstance,
    out_json: *mut *mut c_char,
) -> CkStatus {
    ffi_call(|| {
        let name = str_arg(name, "name")?;
        let check = CHECK_NAMES
            .iter()
            .copied()
            .find(|&c| c == name)
            .ok_or_else(|| Failure(CkStatus::InvalidArgument, format!("unknown check {name:?}")))?;
        let inst = *instance_ref(inst)?;
        let report = run_task(&Task::Instance { check, inst }, &guard()?)?;
        write_string(out_json, report.to_json_line())?;
        if report.pass {
            Ok(CkStatus::Ok)
        } else {
            set_last_error(&format!("{check} failed on {inst}"));
            Ok(CkStatus::CheckFailed)
        }
    })
}

/// Parses a diagram such as `"1,2'|2,1'"`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_diagram_parse(text: *const c_char, out: *mut *mut CkDiagram) -> CkStatus {
    ffi_call(|| {
        let inner: Diagram = str_arg(text, "text")?.parse()?;
        write_out(out, Box::into_raw(Box::new(CkDiagram { inner })), "out")?;
        Ok(CkStatus::Ok)
    })
}

/// Concatenates `left` on top of `right`. The product is
/// `δ^out_middle · out`; the scalar is left to the caller.
///
/// # Safety
/// `left` and `right` must be live handles; `out_middle` and `out` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ck_diagram_mul(
    left: *const CkDiagram,
    right: *const CkDiagram,
    out_middle: *mut u32,
    out: *mut *mut CkDiagram,
) -> CkStatus {
    ffi_call(|| {
        let x = &left.as_ref().ok_or_else(|| null("left"))?.inner;
        let y = &right.as_ref().ok_or_else(|| null("right"))?.inner;
        let (m, z) = multiply_diagrams(x, y)?;
        write_out(out_middle, m as u32, "out_middle")?;
        write_out(out, Box::into_raw(Box::new(CkDiagram { inner: z })), "out")?;
        Ok(CkStatus::Ok)
    })
}

/// Canonical text of a diagram.
///
/// # Safety
/// `diagram` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_diagram_to_string(diagram: *const CkDiagram, out: *mut *mut c_char) -> CkStatus {
    ffi_call(|| {
        let d = &diagram.as_ref().ok_or_else(|| null("diagram"))?.inner;
        write_string(out, d.to_string())?;
        Ok(CkStatus::Ok)
    })
}

/// # Safety
/// `diagram` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_diagram_free(diagram: *mut CkDiagram) {
    if !diagram.is_null() {
        drop(Box::from_raw(diagram));
    }
}

/// # Safety
/// `s` must be a string returned by this library, released once. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
