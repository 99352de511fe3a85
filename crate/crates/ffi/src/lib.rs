//! C ABI over `quipu-core`: opaque graph handles, status codes and a
//! per-thread last-error message. The header is generated into
//! `include/quipu.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use quipu_core::graph::{diameter, Graph, GraphSpec};
use quipu_core::spectral::{
    char_poly, in_hoffman_window, is_below_threshold, rho_mk, spectral_radius, THRESHOLD_F64,
};
use quipu_core::Error;

/// Status returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuipuStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidInput = 3,
    Disconnected = 4,
    Numeric = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque graph handle; release with `quipu_graph_free`.
pub struct QuipuGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> QuipuStatus {
    match e {
        Error::Parse { .. } | Error::Graph6 { .. } => QuipuStatus::Parse,
        Error::Disconnected => QuipuStatus::Disconnected,
        Error::RootNotLocated(_) | Error::ZeroPolynomial | Error::LambdaOutOfRange(_) => {
            QuipuStatus::Numeric
        }
        _ => QuipuStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and turning panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), QuipuStatus>) -> QuipuStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QuipuStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            QuipuStatus::Panic
        }
    }
}

fn fail(e: Error) -> QuipuStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn graph_ref<'a>(g: *const QuipuGraph) -> Result<&'a Graph, QuipuStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(QuipuStatus::NullPointer);
    }
    Ok(&(*g).graph)
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, QuipuStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(QuipuStatus::NullPointer);
    }
    Ok(&mut *p)
}

/// Copies `text` plus a NUL into `buf` when it fits; `needed` receives the
/// full size including the NUL either way. Leaves the last error alone.
unsafe fn write_str(
    text: &str,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> Result<(), QuipuStatus> {
    if !needed.is_null() {
        *needed = text.len() + 1;
    }
    if buf.is_null() || len < text.len() + 1 {
        return Err(QuipuStatus::BufferTooSmall);
    }
    std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
    *buf.add(text.len()) = 0;
    Ok(())
}

/// Parses a graph spec such as `closed 7,7 / 1,0`, `dagger 3` or `g6:Fs`?G`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn quipu_graph_parse(
    spec: *const c_char,
    out: *mut *mut QuipuGraph,
) -> QuipuStatus {
    guard(|| {
        if spec.is_null() {
            set_error("null spec");
            return Err(QuipuStatus::NullPointer);
        }
        let out = out_ref(out)?;
        let text = CStr::from_ptr(spec).to_str().map_err(|_| {
            set_error("spec is not valid UTF-8");
            QuipuStatus::Parse
        })?;
        let graph = text
            .parse::<GraphSpec>()
            .and_then(|s| s.build())
            .map_err(fail)?;
        *out = Box::into_raw(Box::new(QuipuGraph { graph }));
        Ok(())
    })
}

/// Releases a handle from `quipu_graph_parse`; null is ignored.
///
/// # Safety
/// `g` must come from `quipu_graph_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn quipu_graph_free(g: *mut QuipuGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn quipu_graph_order(g: *const QuipuGraph, out: *mut usize) -> QuipuStatus {
    guard(|| {
        *out_ref(out)? = graph_ref(g)?.n();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn quipu_graph_diameter(
    g: *const QuipuGraph,
    out: *mut usize,
) -> QuipuStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(out)? = diameter(g).map_err(fail)?;
        Ok(())
    })
}

/// Certified bracket `[lo, hi]` of width at most `tol` around `ρ(G)`.
///
/// # Safety
/// `g` must be a live handle; `lo` and `hi` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn quipu_spectral_radius(
    g: *const QuipuGraph,
    tol: f64,
    lo: *mut f64,
    hi: *mut f64,
) -> QuipuStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let (lo, hi) = (out_ref(lo)?, out_ref(hi)?);
        let b = spectral_radius(g, tol).map_err(fail)?;
        *lo = b.lo;
        *hi = b.hi;
        Ok(())
    })
}

/// Exact verdict `ρ(G) < (3/2)√2`; `below` receives 1 or 0.
///
/// # Safety
/// `g` must be a live handle and `below` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn quipu_below_threshold(
    g: *const QuipuGraph,
    below: *mut c_int,
) -> QuipuStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(below)? = c_int::from(is_below_threshold(g).below);
        Ok(())
    })
}

/// Exact verdict `√(2+√5) < ρ(G) < (3/2)√2`; `inside` receives 1 or 0.
///
/// # Safety
/// `g` must be a live handle and `inside` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn quipu_in_hoffman_window(
    g: *const QuipuGraph,
    inside: *mut c_int,
) -> QuipuStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(inside)? = c_int::from(in_hoffman_window(g));
        Ok(())
    })
}

/// Characteristic polynomial as comma-separated integer coefficients,
/// constant term first.
///
/// # Safety
/// `g` must be a live handle, `buf` writable for `len` bytes (or null to
/// query the size) and `needed` null or valid.
#[no_mangle]
pub unsafe extern "C" fn quipu_charpoly(
    g: *const QuipuGraph,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QuipuStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let p = char_poly(g);
        let text: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
        let text = text.join(",");
        write_str(&text, buf, len, needed)
            .inspect_err(|_| set_error(format!("buffer needs {} bytes", text.len() + 1)))
    })
}

/// Bracket around `ρ_{m,k}` from the transfer-matrix root function.
///
/// # Safety
/// `lo` and `hi` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn quipu_rho_mk(
    m: usize,
    k: usize,
    tol: f64,
    lo: *mut f64,
    hi: *mut f64,
) -> QuipuStatus {
    guard(|| {
        let (lo, hi) = (out_ref(lo)?, out_ref(hi)?);
        let b = rho_mk(m, k, tol).map_err(fail)?;
        *lo = b.lo;
        *hi = b.hi;
        Ok(())
    })
}

/// Float value of the threshold `(3/2)√2`.
#[no_mangle]
pub extern "C" fn quipu_threshold() -> f64 {
    THRESHOLD_F64
}

/// Copies the calling thread's last error message into `buf`.
///
/// # Safety
/// `buf` must be writable for `len` bytes (or null to query the size) and
/// `needed` null or valid.
#[no_mangle]
pub unsafe extern "C" fn quipu_last_error(
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QuipuStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_str(&msg, buf, len, needed) {
        Ok(()) => QuipuStatus::Ok,
        Err(s) => s,
    }
}

/// Static name of a status code; unknown codes get a fixed placeholder.
#[no_mangle]
pub extern "C" fn quipu_status_name(status: c_int) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"parse error",
        3 => c"invalid input",
        4 => c"disconnected graph",
        5 => c"numeric failure",
        6 => c"buffer too small",
        7 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}
