//! Explicit lower bounds for `θ_xy` and `-θ_xyy` at `α >= 1`, and the
//! bracket constants their derivation relies on.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{theta_xy, theta_xyy};
use crate::modular::{contains, UpperHalfPoint};
use crate::numeric::{gaussian_tail_scaled, Accumulator};
use crate::series_bounds::{aux_series, composite_constants, AuxKind, CheckItem, SuiteReport};
use crate::theta1d::{theta1d_dy, Theta1dPoint};
use crate::{Truncation, ValueWithError};

use super::{GridSpec, Region};

const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Slack for hypotheses stated with `>=` at irrational end points.
const EDGE: f64 = 1e-12;

/// Which half of the width range `y/α` a point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundCase {
    /// `y/α >= 1/2`
    Wide,
    /// `y/α <= 1/2`
    Narrow,
}

impl BoundCase {
    pub fn of(alpha: f64, y: f64) -> Self {
        if y / alpha >= 0.5 {
            BoundCase::Wide
        } else {
            BoundCase::Narrow
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub bound: ValueWithError,
    pub actual: ValueWithError,
    pub case: BoundCase,
}

impl LowerBound {
    /// `actual - bound`.
    pub fn margin(&self) -> f64 {
        self.actual.value - self.bound.value
    }

    pub fn combined_err(&self) -> f64 {
        self.actual.err + self.bound.err
    }

    pub fn holds(&self) -> bool {
        self.margin() >= -self.combined_err()
    }
}

fn aux(kind: AuxKind, x: f64, t: Truncation) -> Result<ValueWithError> {
    aux_series(kind, x, t)
}

/// `ε₁(α, y)`, built from the auxiliary series at `y/α` and `αy`.
pub fn epsilon1(alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    if !(alpha > 0.0 && y > 0.0) || y / alpha < 0.5 - EDGE {
        return domain(format!(
            "epsilon1 needs y/alpha >= 1/2 (got alpha={alpha}, y={y})"
        ));
    }
    let (x, w) = (y / alpha, alpha * y);
    let one = ValueWithError::exact(1.0);
    let (mu_x, nu_x, om_x) = (
        aux(AuxKind::Mu, x, t)?,
        aux(AuxKind::Nu, x, t)?,
        aux(AuxKind::Omega, x, t)?,
    );
    let (mu_w, nu_w, om_w) = (
        aux(AuxKind::Mu, w, t)?,
        aux(AuxKind::Nu, w, t)?,
        aux(AuxKind::Omega, w, t)?,
    );
    let denom = one.sub(mu_x);
    let first = one.add(mu_x).div(denom).mul(
        om_w.add(mu_w.scale(1.0 / (4.0 * PI * PI * w * w)))
            .add(nu_w.scale(1.0 / (PI * w))),
    );
    let second = one.add(nu_x).div(denom).mul(
        mu_w.scale(1.0 / (PI * alpha.powi(3) * y))
            .add(nu_w.scale(2.0 / (alpha * alpha))),
    );
    let third = mu_w.scale(alpha.powi(-4)).mul(one.add(om_x).div(denom));
    Ok(first.add(second).add(third))
}

/// `sum_{n>=2} n^k exp(-πα (y(n²-1) - 1/(4y)))`.
fn shifted_sum(k: i32, alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    let beta = PI * alpha * y;
    let shift = PI * alpha * (y + 0.25 / y);
    let mut acc = Accumulator::new();
    let mut tail = f64::INFINITY;
    for n in 2..=t.max_terms.max(2) {
        let nf = n as f64;
        acc.push(nf.powi(k) * (shift - beta * nf * nf).exp());
        tail = gaussian_tail_scaled(k as f64, beta, nf + 1.0, shift);
        if tail <= t.abs_tol {
            return Ok(ValueWithError::new(acc.value(), tail + acc.rounding()));
        }
    }
    Err(Error::ToleranceNotMet {
        achieved: tail,
        requested: t.abs_tol,
        terms: t.max_terms,
    })
}

/// Remainder of the `θ_xy` bracket for `y/α <= 1/2`:
/// `(1/π) Σ n⁴ E + (2/(π²αy) + 1/(4πy²)) Σ n² E`.
pub fn xy_remainder(alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    if !(alpha > 0.0 && y > 0.0) {
        return domain(format!(
            "xy_remainder needs alpha, y > 0 (got {alpha}, {y})"
        ));
    }
    let s4 = shifted_sum(4, alpha, y, t)?;
    let s2 = shifted_sum(2, alpha, y, t)?;
    Ok(s4
        .scale(1.0 / PI)
        .add(s2.scale(2.0 / (PI * PI * alpha * y) + 1.0 / (4.0 * PI * y * y))))
}

/// `ε₂(α, y)`, the three-sum remainder of the `θ_xyy` bracket for `y/α <= 1/2`.
pub fn epsilon2(alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    if alpha < SQRT3 - EDGE || y < SQRT3 / 2.0 - EDGE {
        return domain(format!(
            "epsilon2 needs alpha >= sqrt(3), y >= sqrt(3)/2 (got {alpha}, {y})"
        ));
    }
    let s6 = shifted_sum(6, alpha, y, t)?;
    let s4 = shifted_sum(4, alpha, y, t)?;
    let s2 = shifted_sum(2, alpha, y, t)?;
    let (a, pi2, pi3) = (alpha, PI * PI, PI.powi(3));
    Ok(s6
        .scale(1.0 / PI)
        .add(s4.scale(4.0 / (pi2 * a * y) + 1.0 / (2.0 * PI * y * y)))
        .add(s2.scale(
            11.0 / (2.0 * pi3 * a * a * y * y)
                + 1.0 / (4.0 * pi2 * a * y.powi(3))
                + 1.0 / (4.0 * pi2 * y.powi(4)),
        )))
}

/// `7/2 - (3/2 + 16π e^{-2π}) / (1 - 8π e^{-2π})`.
pub fn narrow_xyy_coefficient() -> f64 {
    let e = (-2.0 * PI).exp();
    3.5 - (1.5 + 16.0 * PI * e) / (1.0 - 8.0 * PI * e)
}

/// `1 - (1 + c2)/(2παy) - c3` with the computed constants; the wide-case
/// `θ_xy` estimate needs it to be at least `2/3`.
pub fn wide_xy_bracket(alpha: f64, y: f64) -> f64 {
    let c = composite_constants();
    1.0 - (1.0 + c[1].computed.value) / (2.0 * PI * alpha * y) - c[2].computed.value
}

/// `1 - 1/(2παy) - 1/(4y²) - 0.039`.
pub fn narrow_xy_bracket(alpha: f64, y: f64) -> f64 {
    1.0 - 1.0 / (2.0 * PI * alpha * y) - 1.0 / (4.0 * y * y) - 0.039
}

/// `1 - 1/(παy) - ε₁`.
pub fn wide_xyy_bracket(alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    Ok(ValueWithError::exact(1.0 - 1.0 / (PI * alpha * y)).sub(epsilon1(alpha, y, t)?))
}

/// `1 + c/(π²α²y²) - 1/(παy) - 1/(2y²) - 1/(4πy⁴) - ε₂`.
pub fn narrow_xyy_bracket(alpha: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    let w = alpha * y;
    let head = 1.0 + narrow_xyy_coefficient() / (PI * PI * w * w)
        - 1.0 / (PI * w)
        - 1.0 / (2.0 * y * y)
        - 1.0 / (4.0 * PI * y.powi(4));
    Ok(ValueWithError::exact(head).sub(epsilon2(alpha, y, t)?))
}

/// `-ϑ_Y(y/α; x)`.
fn neg_dy(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    Ok(theta1d_dy(Theta1dPoint::new(z.y / alpha, z.x)?, t)?.scale(-1.0))
}

/// `θ_xy(α; z)` against `(π/10) sqrt(αy) (-ϑ_Y(y/α; x)) e^{-παy}`.
pub fn lower_bound_theta_xy(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<LowerBound> {
    if alpha < 1.0 || !(z.x > 0.0 && z.x < 0.5) || z.y < 0.6 {
        return domain(format!(
            "lower_bound_theta_xy needs alpha >= 1, 0 < x < 1/2, y >= 3/5 (got alpha={alpha}, z=({}, {}))",
            z.x, z.y
        ));
    }
    let factor = PI / 10.0 * (alpha * z.y).sqrt() * (-PI * alpha * z.y).exp();
    Ok(LowerBound {
        bound: neg_dy(alpha, z, t)?.scale(factor),
        actual: theta_xy(alpha, z, t)?,
        case: BoundCase::of(alpha, z.y),
    })
}

/// `-θ_xyy(α; z)` against `(π²/50) α^{3/2} y^{1/2} (-ϑ_Y(y/α; x)) e^{-παy}`.
pub fn lower_bound_neg_theta_xyy(
    alpha: f64,
    z: UpperHalfPoint,
    t: Truncation,
) -> Result<LowerBound> {
    if alpha < 1.0 || !contains(z, false) {
        return domain(format!(
            "lower_bound_neg_theta_xyy needs alpha >= 1 and z in the open fundamental domain (got alpha={alpha}, z=({}, {}))",
            z.x, z.y
        ));
    }
    let factor = PI * PI / 50.0 * alpha.powf(1.5) * z.y.sqrt() * (-PI * alpha * z.y).exp();
    Ok(LowerBound {
        bound: neg_dy(alpha, z, t)?.scale(factor),
        actual: theta_xyy(alpha, z, t)?.scale(-1.0),
        case: BoundCase::of(alpha, z.y),
    })
}

/// `count` evenly spaced points from `lo` to `hi`.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

type Sample = Option<(f64, f64, (f64, f64))>;

/// `n × n` samples `(α, y)` with `y` in `[y_lo, y_hi]` and `α` spanning the
/// range allowed by `ratio` and the bounds `[α_lo, α_hi]`.
fn pairs(
    y_lo: f64,
    y_hi: f64,
    alpha_lo: f64,
    alpha_hi: f64,
    ratio: Ratio,
    n: usize,
) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n * n);
    for y in linspace(y_lo, y_hi, n) {
        let (lo, hi) = match ratio {
            Ratio::AlphaAtLeast(r) => (alpha_lo.max(r * y), alpha_hi.max(r * y)),
            Ratio::AlphaAtMost(r) => (alpha_lo, (y / r).max(alpha_lo)),
        };
        for alpha in linspace(lo, hi, n) {
            out.push((alpha, y));
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Ratio {
    /// `α >= r y`
    AlphaAtLeast(f64),
    /// `y/α >= r`
    AlphaAtMost(f64),
}

fn check<F>(name: &str, points: &[(f64, f64)], f: F) -> Result<CheckItem>
where
    F: Fn(f64, f64) -> Result<(f64, f64)> + Sync,
{
    let samples: Vec<Result<Sample>> = points
        .par_iter()
        .map(|&(a, y)| f(a, y).map(|(m, e)| Some((m, e, (a, y)))))
        .collect();
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CheckItem::from_samples(name, &samples))
}

/// Verifies the bracket constants on their hypothesis ranges. Sample points
/// report `(α, y)` as their location.
///
/// * `xy_remainder`: remainder `<= 0.039` for `y >= 3/5`, `α >= 2y`;
/// * `wide_xy_bracket`: `>= 2/3` for `y/α >= 1/2`, `α >= 1`, `y >= 3/5`;
/// * `narrow_xy_bracket`: `>= 1/200` for `y >= 3/5`, `α >= 2y`;
/// * `epsilon1`: `<= 2/50` for `y/α >= 1/2`, `α >= 1`, `y >= sqrt(3)/2`;
/// * `wide_xyy_bracket`: `>= 1/2` on the same range;
/// * `epsilon2`: `<= 1e-4` for `y >= sqrt(3)/2`, `α >= 2y`;
/// * `narrow_xyy_bracket`: `>= 1/100` on the same range.
pub fn bracket_suite(n: usize, y_cap: f64, alpha_cap: f64, t: Truncation) -> Result<SuiteReport> {
    let n = n.max(2);
    let y_d = SQRT3 / 2.0;
    let narrow_xy = pairs(0.6, y_cap, 1.2, alpha_cap, Ratio::AlphaAtLeast(2.0), n);
    let wide_xy = pairs(0.6, y_cap, 1.0, alpha_cap, Ratio::AlphaAtMost(0.5), n);
    let wide_xyy = pairs(y_d, y_cap, 1.0, alpha_cap, Ratio::AlphaAtMost(0.5), n);
    let narrow_xyy = pairs(y_d, y_cap, SQRT3, alpha_cap, Ratio::AlphaAtLeast(2.0), n);
    let items = vec![
        check("xy_remainder", &narrow_xy, |a, y| {
            let r = xy_remainder(a, y, t)?;
            Ok((0.039 - r.value, r.err))
        })?,
        check("wide_xy_bracket", &wide_xy, |a, y| {
            Ok((wide_xy_bracket(a, y) - 2.0 / 3.0, 1e-12))
        })?,
        check("narrow_xy_bracket", &narrow_xy, |a, y| {
            Ok((narrow_xy_bracket(a, y) - 1.0 / 200.0, 1e-12))
        })?,
        check("epsilon1", &wide_xyy, |a, y| {
            let e = epsilon1(a, y, t)?;
            Ok((2.0 / 50.0 - e.value, e.err))
        })?,
        check("wide_xyy_bracket", &wide_xyy, |a, y| {
            let b = wide_xyy_bracket(a, y, t)?;
            Ok((b.value - 0.5, b.err))
        })?,
        check("epsilon2", &narrow_xyy, |a, y| {
            let e = epsilon2(a, y, t)?;
            Ok((1e-4 - e.value, e.err))
        })?,
        check("narrow_xyy_bracket", &narrow_xyy, |a, y| {
            let b = narrow_xyy_bracket(a, y, t)?;
            Ok((b.value - 0.01, b.err))
        })?,
    ];
    Ok(SuiteReport {
        name: "brackets".into(),
        items,
    })
}

/// Checks both lower bounds at every grid point: `θ_xy` on the strip
/// `y >= 3/5`, `-θ_xyy` on the open fundamental domain, for each `α >= 1`.
pub fn lower_bound_suite(alphas: &[f64], grid: &GridSpec, t: Truncation) -> Result<SuiteReport> {
    grid.validate()?;
    for &a in alphas {
        if !(a >= 1.0) || !a.is_finite() {
            return domain(format!("lower bounds need finite alpha >= 1 (got {a})"));
        }
    }
    let strip = grid.points(&Region::strip(0.6));
    let open = grid.points(&Region::fundamental(true));
    let run = |points: &[UpperHalfPoint],
               f: fn(f64, UpperHalfPoint, Truncation) -> Result<LowerBound>| {
        let cases: Vec<(f64, UpperHalfPoint)> = alphas
            .iter()
            .flat_map(|&a| points.iter().map(move |&z| (a, z)))
            .collect();
        let samples: Vec<Result<Sample>> = cases
            .par_iter()
            .map(|&(a, z)| match f(a, z, t) {
                Ok(b) => Ok(Some((b.margin(), b.combined_err(), (z.x, z.y)))),
                Err(Error::ToleranceNotMet { .. }) => Ok(None),
                Err(e) => Err(e),
            })
            .collect();
        samples.into_iter().collect::<Result<Vec<_>>>()
    };
    let xy = run(&strip, lower_bound_theta_xy)?;
    let xyy = run(&open, lower_bound_neg_theta_xyy)?;
    Ok(SuiteReport {
        name: "lower_bounds".into(),
        items: vec![
            CheckItem::from_samples("theta_xy_bound", &xy),
            CheckItem::from_samples("neg_theta_xyy_bound", &xyy),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::with_tol(1e-16)
    }

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    /// Twenty explicit terms of each sum.
    fn brute_epsilon2(a: f64, y: f64) -> f64 {
        let e = |k: i32| -> f64 {
            (2..22)
                .map(|n| {
                    let nf = n as f64;
                    nf.powi(k) * (-PI * a * (y * (nf * nf - 1.0) - 0.25 / y)).exp()
                })
                .sum()
        };
        e(6) / PI
            + (4.0 / (PI * PI * a * y) + 1.0 / (2.0 * PI * y * y)) * e(4)
            + (11.0 / (2.0 * PI.powi(3) * a * a * y * y)
                + 1.0 / (4.0 * PI * PI * a * y.powi(3))
                + 1.0 / (4.0 * PI * PI * y.powi(4)))
                * e(2)
    }

    #[test]
    fn epsilon1_examples() {
        let e = epsilon1(1.0, SQRT3 / 2.0, t()).unwrap();
        assert!(e.value <= 2.0 / 50.0);
        assert!((e.value - 0.030_784_535_675).abs() < 1e-10);
        assert!(epsilon1(1.0, 5.0, t()).unwrap().value < 1e-12);
        let mut last = f64::INFINITY;
        for i in 0..20 {
            let v = epsilon1(1.0, 0.9 + 0.2 * i as f64, t()).unwrap().value;
            assert!(v <= last);
            last = v;
        }
        assert!(matches!(
            epsilon1(2.0, 0.9, t()),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn epsilon2_at_corner_exceeds_printed_bound() {
        let e = epsilon2(SQRT3, SQRT3 / 2.0, t()).unwrap();
        assert!((e.value - brute_epsilon2(SQRT3, SQRT3 / 2.0)).abs() < 1e-12);
        // the bound 1e-4 is missed by about 2e-9
        assert!((e.value - 1.000_020_303e-4).abs() < 1e-12);
        assert!(e.value - e.err > 1e-4);
        let later = epsilon2(3.0, 1.0, t()).unwrap();
        assert!(later.value < e.value);
        assert!(matches!(
            epsilon2(1.0, 1.0, t()),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn xy_remainder_at_range_corner() {
        let r = xy_remainder(1.2, 0.6, t()).unwrap();
        assert!((r.value - 0.038_600_799_567).abs() < 1e-10);
        assert!(r.value <= 0.039);
    }

    #[test]
    fn narrow_coefficient_value() {
        assert!((narrow_xyy_coefficient() - 1.827_641_701_09).abs() < 1e-10);
    }

    #[test]
    fn theta_xy_bound_examples() {
        let b = lower_bound_theta_xy(1.0, p(0.25, 1.0), t()).unwrap();
        assert_eq!(b.case, BoundCase::Wide);
        assert!(b.holds() && b.bound.value > 0.0);
        // the wide case gives the sharper factor 4π/3
        assert!(b.actual.value >= b.bound.value * (4.0 * PI / 3.0) / (PI / 10.0));

        let b = lower_bound_theta_xy(2.0, p(0.1, 0.7), t()).unwrap();
        assert_eq!(b.case, BoundCase::Narrow);
        assert!(b.holds());
        assert!(narrow_xy_bracket(2.0, 0.7) > 0.0);
        assert!(matches!(
            lower_bound_theta_xy(0.5, p(0.25, 1.0), t()),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn theta_xyy_bound_examples() {
        let b = lower_bound_neg_theta_xyy(1.0, p(0.25, 1.1), t()).unwrap();
        assert!(b.holds() && b.bound.value > 0.0);
        assert!(wide_xyy_bracket(1.0, 1.1, t()).unwrap().value >= 0.5);
        assert!(b.actual.value >= b.bound.value * 50.0);

        // (0.2, 0.95) lies inside the unit circle; (0.4, 0.95) is a narrow-case point of the domain
        assert!(lower_bound_neg_theta_xyy(2.0, p(0.2, 0.95), t()).is_err());
        let b = lower_bound_neg_theta_xyy(2.0, p(0.4, 0.95), t()).unwrap();
        assert_eq!(b.case, BoundCase::Narrow);
        assert!(b.holds());
        assert!(narrow_xyy_bracket(2.0, 0.95, t()).unwrap().value >= 0.01);
        assert!(lower_bound_neg_theta_xyy(1.0, p(0.25, 0.9), t()).is_err());
    }

    #[test]
    fn lower_bounds_hold_on_small_grid() {
        let g = GridSpec {
            nx: 8,
            ny: 8,
            inset: 1e-3,
            y_cap: 5.0,
        };
        let r = lower_bound_suite(&[1.0, 2.0], &g, Truncation::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.items[0].samples + r.items[0].skipped, 128);
        assert!(lower_bound_suite(&[0.5], &g, Truncation::default()).is_err());
    }

    #[test]
    fn bracket_suite_flags_only_epsilon2() {
        let r = bracket_suite(12, 10.0, 40.0, Truncation::default()).unwrap();
        for item in &r.items {
            assert_eq!(item.passed, item.name != "epsilon2", "{item:?}");
        }
    }
}
