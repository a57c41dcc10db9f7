//! C ABI over the divided-Frobenius engine.
//!
//! The surface is a single opaque handle created by [`df_matrix_compute`]
//! and released by [`df_matrix_free`]; everything else reads through it.
//! All functions are null-safe and report through [`DfStatus`] codes
//! rather than unwinding; panics cannot cross the boundary.

use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use divfrob::blocks::{assemble, MatrixOrder};
use divfrob::curve::{validate, CurveParams};
use divfrob::froblift;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DfStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The curve failed a validity hypothesis.
    InvalidCurve = 2,
    /// An internal identity failed; not caused by input.
    Internal = 3,
    /// An index was outside the matrix dimensions.
    OutOfRange = 4,
}

/// Opaque handle to a computed matrix. Create with [`df_matrix_compute`],
/// release with [`df_matrix_free`].
pub struct DfMatrix {
    entries: Vec<Vec<u64>>,
    labels: Vec<CString>,
    genus: u64,
}

/// Computes the full `2g × 2g` divided-Frobenius matrix for the curve
/// `y^n = f(t)` over `F_p` and stores a handle in `out`.
///
/// `f` points to `f_len` signed coefficients, ascending degree. A nonzero
/// `isotypic` groups rows and columns by isotypic class; zero keeps the
/// filtration order.
///
/// # Safety
///
/// `f` must be readable for `f_len` elements, and `out` must be a valid
/// pointer to a pointer. On [`DfStatus::Ok`] the caller owns the handle
/// and must release it with [`df_matrix_free`] exactly once.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_compute(
    p: u64,
    n: u64,
    f: *const i64,
    f_len: usize,
    isotypic: c_int,
    out: *mut *mut DfMatrix,
) -> DfStatus {
    if out.is_null() || (f.is_null() && f_len > 0) {
        return DfStatus::NullArgument;
    }
    *out = std::ptr::null_mut();
    let coeffs = slice::from_raw_parts(f, f_len).to_vec();
    let order = if isotypic != 0 {
        MatrixOrder::Isotypic
    } else {
        MatrixOrder::Filtration
    };
    let result = catch_unwind(AssertUnwindSafe(move || {
        let curve = match validate(&CurveParams::new(p, n, coeffs)) {
            Ok(curve) => curve,
            Err(_) => return Err(DfStatus::InvalidCurve),
        };
        let lift = froblift::compute(&curve).map_err(|_| DfStatus::Internal)?;
        let matrix = assemble(&curve, &lift, order).map_err(|_| DfStatus::Internal)?;
        let labels = matrix
            .labels()
            .iter()
            .map(|elem| CString::new(elem.label()).expect("labels contain no NUL"))
            .collect();
        Ok(DfMatrix {
            entries: matrix.entries().to_vec(),
            labels,
            genus: curve.g(),
        })
    }));
    match result {
        Ok(Ok(matrix)) => {
            *out = Box::into_raw(Box::new(matrix));
            DfStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => DfStatus::Internal,
    }
}

/// Releases a handle. A null pointer is a no-op.
///
/// # Safety
///
/// `matrix` must be null or a handle from [`df_matrix_compute`] not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_free(matrix: *mut DfMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// The dimension `2g` of the matrix, or 0 for a null handle.
///
/// # Safety
///
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_dim(matrix: *const DfMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.entries.len())
}

/// The genus `g` of the curve, or 0 for a null handle.
///
/// # Safety
///
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_genus(matrix: *const DfMatrix) -> u64 {
    matrix.as_ref().map_or(0, |m| m.genus)
}

/// Reads the entry at `(row, col)`, reduced mod `p`, into `value`.
///
/// # Safety
///
/// `matrix` must be null or a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_entry(
    matrix: *const DfMatrix,
    row: usize,
    col: usize,
    value: *mut u64,
) -> DfStatus {
    let Some(m) = matrix.as_ref() else {
        return DfStatus::NullArgument;
    };
    if value.is_null() {
        return DfStatus::NullArgument;
    }
    if row >= m.entries.len() || col >= m.entries.len() {
        return DfStatus::OutOfRange;
    }
    *value = m.entries[row][col];
    DfStatus::Ok
}

/// The NUL-terminated label of basis element `index` (for example
/// `"t^2*y^-2*dt"` or `"t^-3*y^2"`), or null when out of range. The
/// pointer stays valid until the handle is freed.
///
/// # Safety
///
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn df_matrix_label(
    matrix: *const DfMatrix,
    index: usize,
) -> *const c_char {
    match matrix.as_ref().and_then(|m| m.labels.get(index)) {
        Some(label) => label.as_ptr(),
        None => std::ptr::null(),
    }
}

/// A static description of a status code.
#[no_mangle]
pub extern "C" fn df_status_message(status: DfStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        DfStatus::Ok => b"ok\0",
        DfStatus::NullArgument => b"null argument\0",
        DfStatus::InvalidCurve => b"curve fails a validity hypothesis\0",
        DfStatus::Internal => b"internal identity failure\0",
        DfStatus::OutOfRange => b"index out of range\0",
    };
    text.as_ptr().cast()
}

/// The crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn df_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    const QUINTIC: [i64; 6] = [-120, 274, -225, 85, -15, 1];

    unsafe fn compute(p: u64, n: u64, f: &[i64], isotypic: c_int) -> (DfStatus, *mut DfMatrix) {
        let mut handle = std::ptr::null_mut();
        let status = df_matrix_compute(p, n, f.as_ptr(), f.len(), isotypic, &mut handle);
        (status, handle)
    }

    #[test]
    fn computes_and_reads_back() {
        unsafe {
            let (status, handle) = compute(17, 3, &QUINTIC, 0);
            assert_eq!(status, DfStatus::Ok);
            assert_eq!(df_matrix_dim(handle), 8);
            assert_eq!(df_matrix_genus(handle), 4);

            let mut value = 0u64;
            assert_eq!(df_matrix_entry(handle, 0, 1, &mut value), DfStatus::Ok);
            assert_eq!(value, 12);

            let label = df_matrix_label(handle, 0);
            assert!(!label.is_null());
            assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "y^-1*dt");

            assert_eq!(
                df_matrix_entry(handle, 8, 0, &mut value),
                DfStatus::OutOfRange
            );
            assert!(df_matrix_label(handle, 99).is_null());
            df_matrix_free(handle);
        }
    }

    #[test]
    fn isotypic_flag_reorders() {
        unsafe {
            let (status, plain) = compute(17, 3, &QUINTIC, 0);
            assert_eq!(status, DfStatus::Ok);
            let (status, grouped) = compute(17, 3, &QUINTIC, 1);
            assert_eq!(status, DfStatus::Ok);
            let plain_label = CStr::from_ptr(df_matrix_label(plain, 1));
            let grouped_label = CStr::from_ptr(df_matrix_label(grouped, 1));
            assert_ne!(plain_label, grouped_label);
            df_matrix_free(plain);
            df_matrix_free(grouped);
        }
    }

    #[test]
    fn rejects_bad_curves_and_null_arguments() {
        unsafe {
            let (status, handle) = compute(15, 3, &QUINTIC, 0);
            assert_eq!(status, DfStatus::InvalidCurve);
            assert!(handle.is_null());

            let mut out = std::ptr::null_mut();
            assert_eq!(
                df_matrix_compute(17, 3, std::ptr::null(), 6, 0, &mut out),
                DfStatus::NullArgument
            );
            assert_eq!(
                df_matrix_compute(17, 3, QUINTIC.as_ptr(), 6, 0, std::ptr::null_mut()),
                DfStatus::NullArgument
            );

            let mut value = 0u64;
            assert_eq!(
                df_matrix_entry(std::ptr::null(), 0, 0, &mut value),
                DfStatus::NullArgument
            );
            df_matrix_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn status_messages_are_static_strings() {
        for status in [
            DfStatus::Ok,
            DfStatus::NullArgument,
            DfStatus::InvalidCurve,
            DfStatus::Internal,
            DfStatus::OutOfRange,
        ] {
            let text = unsafe { CStr::from_ptr(df_status_message(status)) };
            assert!(!text.to_str().unwrap().is_empty());
        }
        let version = unsafe { CStr::from_ptr(df_version()) };
        assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
