//! C ABI over the abshell sideband laboratory.
//!
//! Conventions:
//! - Handles (`AbshellDrive`, `AbshellScheme`, `AbshellSidebands`) are opaque;
//!   create them with the `_new`/`_compute` constructors and release them with
//!   the matching `_free`. Passing a handle to any other `_free` is undefined
//!   behavior, passing NULL to `_free` is a no-op.
//! - Every fallible call returns an [`AbshellStatus`]; outputs are written
//!   through `out` pointers only on `ABSHELL_STATUS_OK`.
//! - On failure a thread-local message is set; fetch it with
//!   [`abshell_last_error_message`].
//!
//! The generated header lands in `include/abshell.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use abshell::acstark::{self, ACStarkParams};
use abshell::eit::{self, LambdaSystem};
use abshell::floquet::{
    self, ab_phase, auto_truncation, make_drive, n_max, DriveParams, Level, LevelScheme,
    SidebandSpectrum, UnitSystem,
};
use abshell::specfun;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbshellStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument violated its contract; see `abshell_last_error_message`.
    InvalidInput = 2,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 3,
    /// An index was out of range.
    OutOfRange = 4,
}

/// Unit conventions for drive parameters.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbshellUnits {
    /// hbar = 1, e = 1.
    Natural = 0,
    /// Volts, rad/s, Joules.
    Si = 1,
}

/// One sideband of one level: index, energy, amplitude (-1)^n J_n(alpha_i),
/// and weight J_n(alpha_i)^2.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbshellSidebandEntry {
    pub level_index: usize,
    pub n: i32,
    pub energy: f64,
    pub amplitude: f64,
    pub weight: f64,
}

/// Opaque drive handle.
pub struct AbshellDrive {
    inner: DriveParams,
}

/// Opaque level-scheme builder handle.
pub struct AbshellScheme {
    levels: Vec<Level>,
}

/// Opaque sideband-spectrum handle.
pub struct AbshellSidebands {
    inner: SidebandSpectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl std::fmt::Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(text).unwrap_or_default();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

/// Copy the last error message (with trailing NUL) into `buffer`; returns the
/// full length in bytes including the NUL, or 0 when no error is recorded.
/// When `capacity` is too small the message is truncated but still
/// NUL-terminated.
///
/// # Safety
/// `buffer` must point to at least `capacity` writable bytes, or be NULL
/// (then only the required length is returned).
#[no_mangle]
pub unsafe extern "C" fn abshell_last_error_message(
    buffer: *mut c_char,
    capacity: usize,
) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes_with_nul();
        if bytes.len() <= 1 {
            return 0;
        }
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast(), n);
            *buffer.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn abshell_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn write_out<T>(out: *mut T, value: T) -> AbshellStatus {
    if out.is_null() {
        set_error("output pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    out.write(value);
    clear_error();
    AbshellStatus::Ok
}

// ---- drive -----------------------------------------------------------------

/// Build a drive from amplitude, angular frequency, and unit system.
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released with
/// [`abshell_drive_free`].
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_new(
    v0: f64,
    omega: f64,
    units: AbshellUnits,
    out: *mut *mut AbshellDrive,
) -> AbshellStatus {
    if out.is_null() {
        set_error("output pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    let unit_system = match units {
        AbshellUnits::Natural => UnitSystem::Natural,
        AbshellUnits::Si => UnitSystem::Si,
    };
    match make_drive(v0, omega, unit_system) {
        Ok(inner) => write_out(out, Box::into_raw(Box::new(AbshellDrive { inner }))),
        Err(e) => {
            set_error(e);
            AbshellStatus::InvalidInput
        }
    }
}

/// Release a drive handle. NULL is a no-op.
///
/// # Safety
/// `drive` must have come from [`abshell_drive_new`] and not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_free(drive: *mut AbshellDrive) {
    if !drive.is_null() {
        drop(Box::from_raw(drive));
    }
}

unsafe fn drive_ref<'a>(drive: *const AbshellDrive) -> Option<&'a DriveParams> {
    if drive.is_null() {
        set_error("drive handle is NULL");
        None
    } else {
        Some(&(*drive).inner)
    }
}

/// Modulation depth alpha = e v0 / (hbar omega).
///
/// # Safety
/// `drive` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_alpha(
    drive: *const AbshellDrive,
    out: *mut f64,
) -> AbshellStatus {
    match drive_ref(drive) {
        Some(d) => write_out(out, d.alpha),
        None => AbshellStatus::NullPointer,
    }
}

/// Index of the last non-suppressed sideband, round(alpha).
///
/// # Safety
/// `drive` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_n_max(
    drive: *const AbshellDrive,
    out: *mut i64,
) -> AbshellStatus {
    match drive_ref(drive) {
        Some(d) => write_out(out, n_max(d)),
        None => AbshellStatus::NullPointer,
    }
}

/// Automatic truncation order keeping discarded weight below 1e-12.
///
/// # Safety
/// `drive` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_auto_truncation(
    drive: *const AbshellDrive,
    out: *mut u64,
) -> AbshellStatus {
    match drive_ref(drive) {
        Some(d) => write_out(out, auto_truncation(d)),
        None => AbshellStatus::NullPointer,
    }
}

/// Scalar AB phase alpha sin(omega t) at time `t` (0 before turn-on).
///
/// # Safety
/// `drive` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_drive_ab_phase(
    drive: *const AbshellDrive,
    t: f64,
    out: *mut f64,
) -> AbshellStatus {
    match drive_ref(drive) {
        Some(d) => write_out(out, ab_phase(d, t)),
        None => AbshellStatus::NullPointer,
    }
}

// ---- level scheme ------------------------------------------------------------

/// Create an empty level-scheme builder.
///
/// # Safety
/// `out` must be valid; release the handle with [`abshell_scheme_free`].
#[no_mangle]
pub unsafe extern "C" fn abshell_scheme_new(out: *mut *mut AbshellScheme) -> AbshellStatus {
    if out.is_null() {
        set_error("output pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    write_out(
        out,
        Box::into_raw(Box::new(AbshellScheme { levels: Vec::new() })),
    )
}

/// Append one level (label, energy, dimensionless coupling).
///
/// # Safety
/// `scheme` must be a live handle; `label` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn abshell_scheme_add_level(
    scheme: *mut AbshellScheme,
    label: *const c_char,
    energy: f64,
    coupling: f64,
) -> AbshellStatus {
    if scheme.is_null() || label.is_null() {
        set_error("scheme or label pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    let label = match CStr::from_ptr(label).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_error("label is not valid UTF-8");
            return AbshellStatus::InvalidUtf8;
        }
    };
    (*scheme)
        .levels
        .push(Level::with_coupling(label, energy, coupling));
    clear_error();
    AbshellStatus::Ok
}

/// Release a scheme handle. NULL is a no-op.
///
/// # Safety
/// `scheme` must have come from [`abshell_scheme_new`] and not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn abshell_scheme_free(scheme: *mut AbshellScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

// ---- sidebands ----------------------------------------------------------------

/// Expand every level into its sideband multiplet. `n_hi = 0` picks the
/// automatic truncation.
///
/// # Safety
/// `scheme` and `drive` must be live handles; `out` must be valid; release
/// the result with [`abshell_sidebands_free`].
#[no_mangle]
pub unsafe extern "C" fn abshell_sidebands_compute(
    scheme: *const AbshellScheme,
    drive: *const AbshellDrive,
    n_hi: u32,
    out: *mut *mut AbshellSidebands,
) -> AbshellStatus {
    if scheme.is_null() || drive.is_null() || out.is_null() {
        set_error("scheme, drive, or output pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    let levels = (*scheme).levels.clone();
    let scheme = match LevelScheme::new(levels) {
        Ok(s) => s,
        Err(e) => {
            set_error(e);
            return AbshellStatus::InvalidInput;
        }
    };
    let truncation = if n_hi == 0 { None } else { Some(n_hi) };
    match floquet::sideband_spectrum(&scheme, &(*drive).inner, truncation) {
        Ok(inner) => write_out(out, Box::into_raw(Box::new(AbshellSidebands { inner }))),
        Err(e) => {
            set_error(e);
            AbshellStatus::InvalidInput
        }
    }
}

/// Number of entries in a computed spectrum.
///
/// # Safety
/// `sidebands` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_sidebands_len(
    sidebands: *const AbshellSidebands,
    out: *mut usize,
) -> AbshellStatus {
    if sidebands.is_null() {
        set_error("sidebands handle is NULL");
        return AbshellStatus::NullPointer;
    }
    write_out(out, (*sidebands).inner.entries().len())
}

/// Fetch one entry by flat index (levels concatenated, n ascending).
///
/// # Safety
/// `sidebands` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_sidebands_entry(
    sidebands: *const AbshellSidebands,
    index: usize,
    out: *mut AbshellSidebandEntry,
) -> AbshellStatus {
    if sidebands.is_null() {
        set_error("sidebands handle is NULL");
        return AbshellStatus::NullPointer;
    }
    let entries = (*sidebands).inner.entries();
    match entries.get(index) {
        Some(e) => write_out(
            out,
            AbshellSidebandEntry {
                level_index: e.level_index,
                n: e.n,
                energy: e.energy,
                amplitude: e.amplitude,
                weight: e.weight,
            },
        ),
        None => {
            set_error(format!(
                "entry index {index} out of range ({} entries)",
                entries.len()
            ));
            AbshellStatus::OutOfRange
        }
    }
}

/// Release a sidebands handle. NULL is a no-op.
///
/// # Safety
/// `sidebands` must have come from [`abshell_sidebands_compute`] and not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn abshell_sidebands_free(sidebands: *mut AbshellSidebands) {
    if !sidebands.is_null() {
        drop(Box::from_raw(sidebands));
    }
}

// ---- scalar kernels -------------------------------------------------------------

/// Bessel function of the first kind J_n(x), x >= 0.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_bessel_j(n: i32, x: f64, out: *mut f64) -> AbshellStatus {
    match specfun::bessel_j(n, x) {
        Ok(v) => write_out(out, v),
        Err(e) => {
            set_error(e);
            AbshellStatus::InvalidInput
        }
    }
}

/// AC-Stark weighting coefficient C_n; `s_hi = 0` picks the automatic S-sum
/// truncation. Natural units (hbar = 1).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_acstark_cn(
    e0: f64,
    d: f64,
    beta: f64,
    omega: f64,
    n: i32,
    s_hi: u32,
    out: *mut f64,
) -> AbshellStatus {
    let params = match ACStarkParams::new(e0, d, beta, omega) {
        Ok(p) => p,
        Err(e) => {
            set_error(e);
            return AbshellStatus::InvalidInput;
        }
    };
    let s_hi = if s_hi == 0 {
        acstark::default_s_truncation(&params)
    } else {
        s_hi
    };
    match acstark::c_n(&params, n, s_hi) {
        Ok(v) => write_out(out, v),
        Err(e) => {
            set_error(e);
            AbshellStatus::InvalidInput
        }
    }
}

/// Steady-state Lambda-system probe coherence; absorption is the imaginary
/// part.
///
/// # Safety
/// `out_re` and `out_im` must be valid.
#[no_mangle]
pub unsafe extern "C" fn abshell_eit_probe_response(
    delta_p: f64,
    delta_c: f64,
    rabi_p: f64,
    rabi_c: f64,
    gamma_3: f64,
    gamma_2: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AbshellStatus {
    if out_re.is_null() || out_im.is_null() {
        set_error("output pointer is NULL");
        return AbshellStatus::NullPointer;
    }
    let sys = LambdaSystem {
        delta_p,
        delta_c,
        rabi_p,
        rabi_c,
        gamma_3,
        gamma_2,
        sideband_offset: 0.0,
    };
    match eit::probe_response(&sys) {
        Ok(v) => {
            out_re.write(v.re);
            out_im.write(v.im);
            clear_error();
            AbshellStatus::Ok
        }
        Err(e) => {
            set_error(e);
            AbshellStatus::InvalidInput
        }
    }
}
