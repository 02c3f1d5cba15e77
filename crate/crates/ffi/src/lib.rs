//! C ABI over `crcode`.
//!
//! Objects are opaque handles created by `*_new` and released by the matching
//! `*_free`. Every fallible call returns a [`CrcodeStatus`]; on failure a
//! description is available from [`crcode_last_error_message`] on the same
//! thread until the next failing call.

// Entry points are called from C, where `unsafe` carries no meaning; every
// pointer is null-checked before use.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use crcode::bits::BitVec;
use crcode::codes::{build_level, extend_code, LinearCode, SubspaceChoice};
use crcode::field::{FieldConfig, FieldContext, GFuElem, QuadPair};
use crcode::graphs::{build_coset_graph, to_graph6};
use crcode::regularity::{enumerate_cosets, verify_completely_regular};
use crcode::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrcodeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TooLarge = 3,
    BufferTooSmall = 4,
    Internal = 5,
    Panic = 6,
}

/// GF(2^m) with its quadratic decomposition over GF(2^u).
pub struct CrcodeField {
    ctx: Arc<FieldContext>,
}

/// One code of the chain, optionally extended.
pub struct CrcodeCode {
    code: LinearCode,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CrcodeStatus {
    match e {
        Error::TooLarge { .. } => CrcodeStatus::TooLarge,
        Error::Internal(_) | Error::Io(_) | Error::Json(_) => CrcodeStatus::Internal,
        _ => CrcodeStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CrcodeStatus, String)>) -> CrcodeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CrcodeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside crcode");
            CrcodeStatus::Panic
        }
    }
}

fn lib<T>(r: crcode::Result<T>) -> Result<T, (CrcodeStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<'a, T>(p: *const T, what: &str) -> Result<&'a T, (CrcodeStatus, String)> {
    // SAFETY: callers pass handles obtained from this library or valid out pointers.
    unsafe { p.as_ref() }.ok_or((CrcodeStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (CrcodeStatus, String)> {
    // SAFETY: as above; the caller owns the pointee for the duration of the call.
    unsafe { p.as_mut() }.ok_or((CrcodeStatus::NullPointer, format!("{what} is null")))
}

/// Message for the last failing call on this thread; never null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn crcode_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn crcode_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates the field for even `m` in 4..=12 with default primitive
/// polynomials, or with the given ones when nonzero.
#[no_mangle]
pub extern "C" fn crcode_field_new(
    m: u32,
    prim_poly_m: u32,
    prim_poly_u: u32,
    out: *mut *mut CrcodeField,
) -> CrcodeStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let cfg = FieldConfig {
            prim_poly_m: (prim_poly_m != 0).then_some(prim_poly_m),
            prim_poly_u: (prim_poly_u != 0).then_some(prim_poly_u),
        };
        let ctx = lib(FieldContext::with_config(m as usize, &cfg))?;
        *out = Box::into_raw(Box::new(CrcodeField { ctx: Arc::new(ctx) }));
        Ok(())
    })
}

/// Releases a field; null is ignored. Codes created from it stay valid.
#[no_mangle]
pub extern "C" fn crcode_field_free(field: *mut CrcodeField) {
    if !field.is_null() {
        // SAFETY: the pointer came from crcode_field_new and is freed once.
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Det_u((a1, a2), (b1, b2)) = a1 b2 + b1 a2 in GF(2^u).
#[no_mangle]
pub extern "C" fn crcode_field_det_u(
    field: *const CrcodeField,
    a1: u16,
    a2: u16,
    b1: u16,
    b2: u16,
    out: *mut u16,
) -> CrcodeStatus {
    guard(|| {
        let f = non_null(field, "field")?;
        let out = out_ptr(out, "out")?;
        let q = f.ctx.q();
        if [a1, a2, b1, b2].iter().any(|&x| x as usize >= q) {
            return Err((
                CrcodeStatus::InvalidArgument,
                format!("operands must be below {q}"),
            ));
        }
        let p = |x, y| QuadPair::new(GFuElem(x), GFuElem(y));
        *out = f.ctx.det_u(p(a1, a2), p(b1, b2)).0;
        Ok(())
    })
}

/// Builds C^(level) for the chain on the standard basis of GF(2^u), or the
/// chain whose leading basis vectors are given as comma-separated 0/1 strings
/// in `subspace_basis` (may be null).
#[no_mangle]
pub extern "C" fn crcode_code_new(
    field: *const CrcodeField,
    level: u32,
    extended: bool,
    subspace_basis: *const c_char,
    out: *mut *mut CrcodeCode,
) -> CrcodeStatus {
    guard(|| {
        let f = non_null(field, "field")?;
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let u = f.ctx.u();
        let choice = if subspace_basis.is_null() {
            SubspaceChoice::standard(u)
        } else {
            // SAFETY: non-null and NUL-terminated per the contract above.
            let s = unsafe { CStr::from_ptr(subspace_basis) }.to_str().map_err(|_| {
                (
                    CrcodeStatus::InvalidArgument,
                    "subspace_basis is not UTF-8".to_string(),
                )
            })?;
            lib(SubspaceChoice::parse(u, s))?
        };
        let mut code = lib(build_level(f.ctx.clone(), &choice, level as usize))?;
        if extended {
            code = lib(extend_code(&code))?;
        }
        *out = Box::into_raw(Box::new(CrcodeCode { code }));
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn crcode_code_free(code: *mut CrcodeCode) {
    if !code.is_null() {
        // SAFETY: the pointer came from crcode_code_new and is freed once.
        drop(unsafe { Box::from_raw(code) });
    }
}

#[no_mangle]
pub extern "C" fn crcode_code_length(code: *const CrcodeCode, out: *mut usize) -> CrcodeStatus {
    guard(|| {
        *out_ptr(out, "out")? = non_null(code, "code")?.code.length();
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn crcode_code_dimension(code: *const CrcodeCode, out: *mut usize) -> CrcodeStatus {
    guard(|| {
        *out_ptr(out, "out")? = non_null(code, "code")?.code.dimension();
        Ok(())
    })
}

/// Membership of a vector given as `len` bytes, one per coordinate (0 or 1).
#[no_mangle]
pub extern "C" fn crcode_code_is_member(
    code: *const CrcodeCode,
    bits: *const u8,
    len: usize,
    out: *mut bool,
) -> CrcodeStatus {
    guard(|| {
        let c = non_null(code, "code")?;
        let out = out_ptr(out, "out")?;
        non_null(bits, "bits")?;
        // SAFETY: `bits` is non-null and points to `len` readable bytes.
        let slice = unsafe { std::slice::from_raw_parts(bits, len) };
        if slice.iter().any(|&b| b > 1) {
            return Err((CrcodeStatus::InvalidArgument, "bits must be 0 or 1".into()));
        }
        let support: Vec<usize> = (0..len).filter(|&j| slice[j] == 1).collect();
        let v = BitVec::from_support(len, &support);
        *out = lib(c.code.is_member(&v))?;
        Ok(())
    })
}

/// Computes the intersection array (b_0..b_{D-1}; c_1..c_D) from the cosets.
/// `b` and `c` must hold `capacity` entries; the diameter D is always written
/// to `diameter`, and `BUFFER_TOO_SMALL` is returned when D > capacity.
#[no_mangle]
pub extern "C" fn crcode_code_intersection_array(
    code: *const CrcodeCode,
    b: *mut u64,
    c: *mut u64,
    capacity: usize,
    diameter: *mut usize,
    completely_regular: *mut bool,
) -> CrcodeStatus {
    guard(|| {
        let code = non_null(code, "code")?;
        let d_out = out_ptr(diameter, "diameter")?;
        let cr_out = out_ptr(completely_regular, "completely_regular")?;
        let table = lib(enumerate_cosets(&code.code))?;
        let rep = verify_completely_regular(&code.code, &table);
        let d = rep.array.diameter();
        *d_out = d;
        *cr_out = rep.completely_regular;
        if d > capacity {
            return Err((
                CrcodeStatus::BufferTooSmall,
                format!("diameter {d} exceeds capacity {capacity}"),
            ));
        }
        non_null(b, "b")?;
        non_null(c, "c")?;
        // SAFETY: both buffers are non-null with at least `capacity` >= d slots.
        unsafe {
            ptr::copy_nonoverlapping(rep.array.b.as_ptr(), b, d);
            ptr::copy_nonoverlapping(rep.array.c.as_ptr(), c, d);
        }
        Ok(())
    })
}

/// The coset graph in graph6 form as a new string; release it with
/// [`crcode_string_free`].
#[no_mangle]
pub extern "C" fn crcode_code_graph6(code: *const CrcodeCode, out: *mut *mut c_char) -> CrcodeStatus {
    guard(|| {
        let code = non_null(code, "code")?;
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let g = lib(build_coset_graph(&code.code))?;
        let s = lib(to_graph6(&g.graph))?;
        *out = CString::new(s).expect("graph6 has no NUL").into_raw();
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn crcode_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the pointer came from CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
