//! C ABI for `thetazeta`.
//!
//! Every call takes a [`TzContext`], which carries the truncation settings and
//! the message of the last failure on that context. Functions return a
//! [`TzStatus`]; results go through out-pointers and are only written on
//! success. A context must not be used from two threads at once.
//!
//! Strings returned by the library stay valid until the next call on the same
//! context (or handle) or until it is freed. Enum arguments must hold one of
//! the declared enumerators.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use thetazeta::certify::{certify_claim, ClaimId, GridSpec, SignCertificate, Target};
use thetazeta::lattice::{
    minimize, theta_derivative, zeta_derivative, zeta_direct, Derivative, Functional,
};
use thetazeta::modular::reduce;
use thetazeta::theta1d::{evaluate, Theta1dKind, Theta1dPoint};
use thetazeta::{Error, Truncation, UpperHalfPoint, ValueWithError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TzStatus {
    Ok = 0,
    InvalidDomain = 1,
    ToleranceNotMet = 2,
    DegenerateDenominator = 3,
    QuadratureNotConverged = 4,
    NotConverged = 5,
    NonTermination = 6,
    Violation = 7,
    NullPointer = 8,
    InvalidArgument = 9,
    Panic = 10,
}

impl From<&Error> for TzStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidDomain(_) => TzStatus::InvalidDomain,
            Error::ToleranceNotMet { .. } => TzStatus::ToleranceNotMet,
            Error::DegenerateDenominator { .. } => TzStatus::DegenerateDenominator,
            Error::QuadratureNotConverged { .. } => TzStatus::QuadratureNotConverged,
            Error::NotConverged { .. } => TzStatus::NotConverged,
            Error::NonTermination { .. } => TzStatus::NonTermination,
            Error::Violation { .. } => TzStatus::Violation,
        }
    }
}

/// Partial derivative in the lattice parameter.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TzDerivative {
    Value = 0,
    X = 1,
    Y = 2,
    Xy = 3,
    Xyy = 4,
}

impl From<TzDerivative> for Derivative {
    fn from(d: TzDerivative) -> Self {
        match d {
            TzDerivative::Value => Derivative::Value,
            TzDerivative::X => Derivative::X,
            TzDerivative::Y => Derivative::Y,
            TzDerivative::Xy => Derivative::XY,
            TzDerivative::Xyy => Derivative::XYY,
        }
    }
}

/// Partial derivative of the 1-d theta function in (width, phase).
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TzTheta1dKind {
    Value = 0,
    Dx = 1,
    Dy = 2,
    Dxy = 3,
    Dxxy = 4,
}

impl From<TzTheta1dKind> for Theta1dKind {
    fn from(k: TzTheta1dKind) -> Self {
        match k {
            TzTheta1dKind::Value => Theta1dKind::Value,
            TzTheta1dKind::Dx => Theta1dKind::DX,
            TzTheta1dKind::Dy => Theta1dKind::DY,
            TzTheta1dKind::Dxy => Theta1dKind::DXY,
            TzTheta1dKind::Dxxy => Theta1dKind::DXXY,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TzFunctional {
    Theta = 0,
    Zeta = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TzTarget {
    ThetaX = 0,
    ThetaY = 1,
    ThetaXy = 2,
    ThetaXyy = 3,
    ZetaX = 4,
    ZetaY = 5,
    ZetaXy = 6,
    ZetaXyy = 7,
}

impl From<Target> for TzTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::ThetaX => TzTarget::ThetaX,
            Target::ThetaY => TzTarget::ThetaY,
            Target::ThetaXY => TzTarget::ThetaXy,
            Target::ThetaXYY => TzTarget::ThetaXyy,
            Target::ZetaX => TzTarget::ZetaX,
            Target::ZetaY => TzTarget::ZetaY,
            Target::ZetaXY => TzTarget::ZetaXy,
            Target::ZetaXYY => TzTarget::ZetaXyy,
        }
    }
}

/// A value with a bound on its absolute error.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TzValue {
    pub value: f64,
    pub err: f64,
}

impl From<ValueWithError> for TzValue {
    fn from(v: ValueWithError) -> Self {
        TzValue {
            value: v.value,
            err: v.err,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TzReduction {
    pub x: f64,
    pub y: f64,
    /// Number of generators applied, translations counted one by one.
    pub word_length: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TzMinimum {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Summary of one sign certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TzCertificate {
    pub target: TzTarget,
    /// `alpha` for theta targets, `s` for zeta targets.
    pub param: f64,
    /// +1 or -1.
    pub claimed_sign: i32,
    pub passed: bool,
    pub worst_margin: f64,
    pub err_at_worst: f64,
    pub worst_x: f64,
    pub worst_y: f64,
    pub samples: usize,
    pub skipped: usize,
}

impl From<&SignCertificate> for TzCertificate {
    fn from(c: &SignCertificate) -> Self {
        TzCertificate {
            target: c.target.into(),
            param: c.param,
            claimed_sign: c.claimed_sign.factor() as i32,
            passed: c.passed,
            worst_margin: c.worst_margin,
            err_at_worst: c.err_at_worst,
            worst_x: c.worst_at.0,
            worst_y: c.worst_at.1,
            samples: c.samples,
            skipped: c.skipped.len(),
        }
    }
}

/// Truncation settings plus the last error message.
pub struct TzContext {
    truncation: Truncation,
    last_error: CString,
}

/// Certificates produced by [`tz_certify`].
pub struct TzCertificates {
    items: Vec<TzCertificate>,
}

impl TzContext {
    fn fail(&mut self, status: TzStatus, msg: impl Into<String>) -> TzStatus {
        let mut msg = msg.into();
        msg.retain(|c| c != '\0');
        self.last_error = CString::new(msg).unwrap_or_default();
        status
    }

    /// Runs `f`, turning errors and panics into a status and a message.
    fn run(&mut self, f: impl FnOnce(Truncation) -> Result<(), Error>) -> TzStatus {
        let t = self.truncation;
        match catch_unwind(AssertUnwindSafe(|| f(t))) {
            Ok(Ok(())) => {
                self.last_error = CString::default();
                TzStatus::Ok
            }
            Ok(Err(e)) => self.fail((&e).into(), e.to_string()),
            Err(p) => {
                let msg = p
                    .downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| p.downcast_ref::<String>().cloned())
                    .unwrap_or_else(|| "panic".into());
                self.fail(TzStatus::Panic, msg)
            }
        }
    }
}

fn point(x: f64, y: f64) -> Result<UpperHalfPoint, Error> {
    UpperHalfPoint::new(x, y)
}

macro_rules! context {
    ($ctx:expr) => {
        match unsafe { $ctx.as_mut() } {
            Some(c) => c,
            None => return TzStatus::NullPointer,
        }
    };
}

macro_rules! require {
    ($ctx:expr, $($p:expr),+) => {
        $(if $p.is_null() {
            return $ctx.fail(TzStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a context with absolute tolerance `abs_tol` and term cap
/// `max_terms`. Pass 0 for either to take the library default.
///
/// # Safety
/// `out` must be a valid pointer. The context is released with
/// [`tz_context_free`].
#[no_mangle]
pub unsafe extern "C" fn tz_context_new(
    abs_tol: f64,
    max_terms: usize,
    out: *mut *mut TzContext,
) -> TzStatus {
    if out.is_null() {
        return TzStatus::NullPointer;
    }
    let d = Truncation::default();
    let tol = if abs_tol == 0.0 { d.abs_tol } else { abs_tol };
    let terms = if max_terms == 0 {
        d.max_terms
    } else {
        max_terms
    };
    match Truncation::new(tol, terms) {
        Ok(truncation) if tol > 0.0 => {
            let ctx = TzContext {
                truncation,
                last_error: CString::default(),
            };
            *out = Box::into_raw(Box::new(ctx));
            TzStatus::Ok
        }
        _ => TzStatus::InvalidDomain,
    }
}

/// # Safety
/// `ctx` must come from [`tz_context_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tz_context_free(ctx: *mut TzContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Message of the last failed call on `ctx`, or an empty string.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn tz_last_error(ctx: *const TzContext) -> *const c_char {
    match ctx.as_ref() {
        Some(c) => c.last_error.as_ptr(),
        None => c"null context".as_ptr(),
    }
}

/// Lattice theta function `θ(α; z)` or one of its partials, `z = x + iy`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_theta(
    ctx: *mut TzContext,
    alpha: f64,
    x: f64,
    y: f64,
    d: TzDerivative,
    out: *mut TzValue,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    c.run(|t| {
        *out = theta_derivative(alpha, point(x, y)?, d.into(), t)?.into();
        Ok(())
    })
}

/// Epstein zeta function `ζ(s; z)` or one of its partials, `s > 1`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_zeta(
    ctx: *mut TzContext,
    s: f64,
    x: f64,
    y: f64,
    d: TzDerivative,
    out: *mut TzValue,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    c.run(|t| {
        *out = zeta_derivative(s, point(x, y)?, d.into(), t)?.into();
        Ok(())
    })
}

/// `ζ(s; z)` by direct lattice summation. Slow; meant for cross-checks.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_zeta_direct(
    ctx: *mut TzContext,
    s: f64,
    x: f64,
    y: f64,
    out: *mut TzValue,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    c.run(|t| {
        *out = zeta_direct(s, point(x, y)?, t)?.into();
        Ok(())
    })
}

/// 1-d Jacobi theta function at width `width > 0` and phase `phase`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_theta1d(
    ctx: *mut TzContext,
    width: f64,
    phase: f64,
    kind: TzTheta1dKind,
    out: *mut TzValue,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    c.run(|t| {
        *out = evaluate(Theta1dPoint::new(width, phase)?, kind.into(), t)?.into();
        Ok(())
    })
}

/// Maps `x + iy` into the closed fundamental domain.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_reduce(
    ctx: *mut TzContext,
    x: f64,
    y: f64,
    out: *mut TzReduction,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    c.run(|_| {
        let r = reduce(point(x, y)?)?;
        *out = TzReduction {
            x: r.point.x,
            y: r.point.y,
            word_length: r.word.ops.len(),
        };
        Ok(())
    })
}

/// Minimizes `θ(param; ·)` or `ζ(param; ·)` over the fundamental domain,
/// starting from the reduction of `x0 + i y0`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_minimize(
    ctx: *mut TzContext,
    functional: TzFunctional,
    param: f64,
    x0: f64,
    y0: f64,
    out: *mut TzMinimum,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, out);
    let f = match functional {
        TzFunctional::Theta => Functional::Theta { alpha: param },
        TzFunctional::Zeta => Functional::Zeta { s: param },
    };
    c.run(|_| {
        let m = minimize(f, point(x0, y0)?)?;
        *out = TzMinimum {
            x: m.point.x,
            y: m.point.y,
            value: m.value,
            evaluations: m.evaluations,
        };
        Ok(())
    })
}

/// Certifies a sign claim on an `n x n` grid: `claim` is one of `prop1`,
/// `prop2`, `prop3`, `prop4`, `thm1-1`, `thm1-2`. Theta cases run over
/// `alphas`, zeta cases over `ss`; either list may be empty.
///
/// A claim that fails on the grid still returns `TZ_STATUS_OK`; inspect the
/// certificates.
///
/// # Safety
/// `ctx` must be a live context, `claim` a NUL-terminated string, the arrays
/// valid for their lengths (or null with length 0) and `out` a valid pointer.
/// The handle is released with [`tz_certificates_free`].
#[no_mangle]
pub unsafe extern "C" fn tz_certify(
    ctx: *mut TzContext,
    claim: *const c_char,
    alphas: *const f64,
    n_alphas: usize,
    ss: *const f64,
    n_ss: usize,
    grid: usize,
    y_cap: f64,
    out: *mut *mut TzCertificates,
) -> TzStatus {
    let c = context!(ctx);
    require!(c, claim, out);
    let Ok(name) = CStr::from_ptr(claim).to_str() else {
        return c.fail(TzStatus::InvalidArgument, "claim is not UTF-8");
    };
    let Some(id) = ClaimId::ALL.into_iter().find(|id| id.name() == name) else {
        return c.fail(TzStatus::InvalidArgument, format!("unknown claim {name:?}"));
    };
    let slice = |p: *const f64, n: usize| {
        if n == 0 {
            Some(&[][..])
        } else if p.is_null() {
            None
        } else {
            Some(std::slice::from_raw_parts(p, n))
        }
    };
    let (Some(alphas), Some(ss)) = (slice(alphas, n_alphas), slice(ss, n_ss)) else {
        return c.fail(TzStatus::NullPointer, "parameter array is null");
    };
    let spec = GridSpec {
        y_cap,
        ..GridSpec::square(grid)
    };
    c.run(|t| {
        let sweeps = certify_claim(id, alphas, ss, &spec, t)?;
        let items = sweeps.iter().map(|s| (&s.certificate).into()).collect();
        *out = Box::into_raw(Box::new(TzCertificates { items }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`tz_certify`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tz_certificates_free(h: *mut TzCertificates) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tz_certificates_len(h: *const TzCertificates) -> usize {
    h.as_ref().map_or(0, |h| h.items.len())
}

/// True when every certificate passed. False for null or empty handles.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tz_certificates_passed(h: *const TzCertificates) -> bool {
    h.as_ref()
        .is_some_and(|h| !h.items.is_empty() && h.items.iter().all(|c| c.passed))
}

/// Copies certificate `i` into `out`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tz_certificates_get(
    h: *const TzCertificates,
    i: usize,
    out: *mut TzCertificate,
) -> TzStatus {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return TzStatus::NullPointer;
    };
    match h.items.get(i) {
        Some(c) => {
            *out = *c;
            TzStatus::Ok
        }
        None => TzStatus::InvalidArgument,
    }
}
