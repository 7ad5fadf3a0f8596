//! The exported functions called through their C signatures.

use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use thetazeta_ffi::*;

struct Ctx(*mut TzContext);

impl Ctx {
    fn new(tol: f64, terms: usize) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { tz_context_new(tol, terms, &mut p) }, TzStatus::Ok);
        Ctx(p)
    }

    fn error(&self) -> String {
        unsafe { CStr::from_ptr(tz_last_error(self.0)) }
            .to_str()
            .unwrap()
            .to_owned()
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { tz_context_free(self.0) }
    }
}

fn theta(c: &Ctx, alpha: f64, x: f64, y: f64, d: TzDerivative) -> (TzStatus, TzValue) {
    let mut v = TzValue::default();
    let s = unsafe { tz_theta(c.0, alpha, x, y, d, &mut v) };
    (s, v)
}

#[test]
fn evaluation_matches_the_library() {
    use thetazeta::lattice::{theta_derivative, zeta_derivative, Derivative};
    use thetazeta::{Truncation, UpperHalfPoint};
    let c = Ctx::new(0.0, 0);
    let z = UpperHalfPoint::new(0.21, 1.07).unwrap();
    let pairs = [
        (TzDerivative::Value, Derivative::Value),
        (TzDerivative::X, Derivative::X),
        (TzDerivative::Y, Derivative::Y),
        (TzDerivative::Xy, Derivative::XY),
        (TzDerivative::Xyy, Derivative::XYY),
    ];
    for (fd, d) in pairs {
        let (s, v) = theta(&c, 1.7, z.x, z.y, fd);
        assert_eq!(s, TzStatus::Ok);
        let want = theta_derivative(1.7, z, d, Truncation::default()).unwrap();
        assert_eq!((v.value, v.err), (want.value, want.err));

        let mut v = TzValue::default();
        assert_eq!(
            unsafe { tz_zeta(c.0, 2.5, z.x, z.y, fd, &mut v) },
            TzStatus::Ok
        );
        let want = zeta_derivative(2.5, z, d, Truncation::default()).unwrap();
        assert_eq!((v.value, v.err), (want.value, want.err));
    }
    assert_eq!(c.error(), "");
}

#[test]
fn errors_carry_codes_and_messages() {
    let c = Ctx::new(0.0, 0);
    let (s, _) = theta(&c, -1.0, 0.0, 1.0, TzDerivative::Value);
    assert_eq!(s, TzStatus::InvalidDomain);
    assert!(c.error().contains("alpha"), "{}", c.error());
    // a success clears the message
    assert_eq!(
        theta(&c, 1.0, 0.0, 1.0, TzDerivative::Value).0,
        TzStatus::Ok
    );
    assert_eq!(c.error(), "");

    let mut v = TzValue::default();
    assert_eq!(
        unsafe { tz_zeta(c.0, 0.5, 0.0, 1.0, TzDerivative::Value, &mut v) },
        TzStatus::InvalidDomain
    );
    assert_eq!(
        unsafe { tz_zeta(c.0, 2.0, 0.0, 1.0, TzDerivative::Value, ptr::null_mut()) },
        TzStatus::NullPointer
    );
    assert_eq!(
        unsafe { tz_theta(ptr::null_mut(), 1.0, 0.0, 1.0, TzDerivative::Value, &mut v) },
        TzStatus::NullPointer
    );
    assert!(!unsafe { tz_last_error(ptr::null()) }.is_null());

    // the direct sum cannot reach this tolerance within its cap
    let tight = Ctx::new(1e-300, 4);
    let s = unsafe { tz_zeta_direct(tight.0, 2.0, 0.0, 1.0, &mut v) };
    assert_eq!(s, TzStatus::ToleranceNotMet, "{}", tight.error());

    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { tz_context_new(-1.0, 0, &mut p) },
        TzStatus::InvalidDomain
    );
    assert!(p.is_null());
    assert_eq!(
        unsafe { tz_context_new(1e-10, 0, ptr::null_mut()) },
        TzStatus::NullPointer
    );
}

#[test]
fn theta1d_reduce_minimize() {
    let c = Ctx::new(0.0, 0);
    let mut v = TzValue::default();
    assert_eq!(
        unsafe { tz_theta1d(c.0, 1.0, 0.0, TzTheta1dKind::Value, &mut v) },
        TzStatus::Ok
    );
    // θ(1; 0) = π^{1/4} / Γ(3/4)
    assert!((v.value - 1.086_434_811_213_308).abs() < 1e-13);
    assert_eq!(
        unsafe { tz_theta1d(c.0, 1.0, 0.5, TzTheta1dKind::Dxy, &mut v) },
        TzStatus::Ok
    );
    assert!(v.value.abs() <= v.err + 1e-15);
    assert_eq!(
        unsafe { tz_theta1d(c.0, 0.0, 0.0, TzTheta1dKind::Value, &mut v) },
        TzStatus::InvalidDomain
    );

    let mut r = TzReduction::default();
    assert_eq!(unsafe { tz_reduce(c.0, 0.1, 0.5, &mut r) }, TzStatus::Ok);
    assert!(r.x * r.x + r.y * r.y >= 1.0 - 1e-12 && r.x.abs() <= 0.5);
    assert!(r.word_length >= 1);

    let mut m = TzMinimum::default();
    assert_eq!(
        unsafe { tz_minimize(c.0, TzFunctional::Zeta, 3.0, 0.2, 1.4, &mut m) },
        TzStatus::Ok
    );
    assert!((m.x - 0.5).abs() < 1e-6 && (m.y - 3f64.sqrt() / 2.0).abs() < 1e-6);
    assert!(m.evaluations > 0);
    assert_eq!(
        unsafe { tz_minimize(c.0, TzFunctional::Zeta, 1.0, 0.2, 1.4, &mut m) },
        TzStatus::InvalidDomain
    );
}

#[test]
fn certification_handles() {
    let c = Ctx::new(0.0, 0);
    let claim = CString::new("thm1-1").unwrap();
    let alphas = [1.0];
    let ss = [2.0];
    let mut h = ptr::null_mut();
    let s = unsafe {
        tz_certify(
            c.0,
            claim.as_ptr(),
            alphas.as_ptr(),
            1,
            ss.as_ptr(),
            1,
            6,
            4.0,
            &mut h,
        )
    };
    assert_eq!(s, TzStatus::Ok, "{}", c.error());
    assert_eq!(unsafe { tz_certificates_len(h) }, 2);
    assert!(unsafe { tz_certificates_passed(h) });
    let mut cert = std::mem::MaybeUninit::<TzCertificate>::uninit();
    assert_eq!(
        unsafe { tz_certificates_get(h, 1, cert.as_mut_ptr()) },
        TzStatus::Ok
    );
    let cert = unsafe { cert.assume_init() };
    assert_eq!(cert.target, TzTarget::ZetaXy);
    assert_eq!(
        (cert.param, cert.claimed_sign, cert.samples, cert.skipped),
        (2.0, 1, 36, 0)
    );
    assert!(cert.passed && cert.worst_margin > cert.err_at_worst);
    let mut spare = cert;
    assert_eq!(
        unsafe { tz_certificates_get(h, 2, &mut spare) },
        TzStatus::InvalidArgument
    );
    unsafe { tz_certificates_free(h) };

    let bad = CString::new("prop9").unwrap();
    let s = unsafe {
        tz_certify(
            c.0,
            bad.as_ptr(),
            ptr::null(),
            0,
            ptr::null(),
            0,
            6,
            4.0,
            &mut h,
        )
    };
    assert_eq!(s, TzStatus::InvalidArgument);
    assert!(c.error().contains("prop9"));
    let s = unsafe {
        tz_certify(
            c.0,
            claim.as_ptr(),
            ptr::null(),
            1,
            ptr::null(),
            0,
            6,
            4.0,
            &mut h,
        )
    };
    assert_eq!(s, TzStatus::NullPointer);
    let s = unsafe {
        tz_certify(
            c.0,
            claim.as_ptr(),
            alphas.as_ptr(),
            1,
            ptr::null(),
            0,
            1,
            4.0,
            &mut h,
        )
    };
    assert_eq!(s, TzStatus::InvalidDomain);
    assert!(!unsafe { tz_certificates_passed(ptr::null()) });
    assert_eq!(unsafe { tz_certificates_len(ptr::null()) }, 0);
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_current_and_links_from_c() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(manifest.join("include/thetazeta.h")).unwrap();
    for name in [
        "tz_context_new",
        "tz_theta",
        "tz_zeta",
        "tz_theta1d",
        "tz_reduce",
        "tz_minimize",
        "tz_certify",
        "TZ_STATUS_TOLERANCE_NOT_MET",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }

    let lib = target_dir().join("libthetazeta_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("tz_smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Wextra", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok 0.1.0"));
}
