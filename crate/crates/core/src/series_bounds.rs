//! Auxiliary weighted tail series, quotient bounds for derivatives of the
//! 1-d theta function, and the odd-moment functions `Q`, `F`, `H`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{gaussian_tail, Accumulator};
use crate::theta1d::{evaluate, Theta1dKind, Theta1dPoint};
use crate::{Truncation, ValueWithError};

/// The six tail series `sum_{n>=2} sigma_n n^w exp(-π (n² - 1) X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxKind {
    Mu,
    Nu,
    Omega,
    MuHat,
    NuHat,
    OmegaHat,
}

impl AuxKind {
    pub const ALL: [AuxKind; 6] = [
        AuxKind::Mu,
        AuxKind::Nu,
        AuxKind::Omega,
        AuxKind::MuHat,
        AuxKind::NuHat,
        AuxKind::OmegaHat,
    ];

    pub fn weight(self) -> i32 {
        match self {
            AuxKind::Mu | AuxKind::MuHat => 2,
            AuxKind::Nu | AuxKind::NuHat => 4,
            AuxKind::Omega | AuxKind::OmegaHat => 6,
        }
    }

    /// Hatted kinds carry the sign `(-1)^{n+1}`.
    pub fn alternating(self) -> bool {
        matches!(self, AuxKind::MuHat | AuxKind::NuHat | AuxKind::OmegaHat)
    }
}

pub fn aux_series(kind: AuxKind, x: f64, t: Truncation) -> Result<ValueWithError> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("auxiliary series need X > 0 (got {x})"));
    }
    let w = kind.weight();
    let beta = PI * x;
    let mut acc = Accumulator::new();
    let mut tail = f64::INFINITY;
    let last = t.max_terms.max(2);
    for n in 2..=last {
        let nf = n as f64;
        let sign = if kind.alternating() && n % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        acc.push(sign * nf.powi(w) * (-beta * (nf * nf - 1.0)).exp());
        tail = beta.exp() * gaussian_tail(w as f64, beta, nf + 1.0);
        if tail <= t.abs_tol {
            return Ok(ValueWithError::new(acc.value(), tail + acc.rounding()));
        }
    }
    Err(Error::ToleranceNotMet {
        achieved: tail,
        requested: t.abs_tol,
        terms: last,
    })
}

/// Auxiliary series to near machine precision; for use inside bound formulas.
pub(crate) fn aux(kind: AuxKind, x: f64) -> f64 {
    aux_series(
        kind,
        x,
        Truncation::new(1e-18, 4096).expect("valid truncation"),
    )
    .map(|v| v.value)
    .unwrap_or(f64::NAN)
}

/// One composite constant, computed and as printed (4 digits, truncated).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrintedConstant {
    pub name: &'static str,
    pub formula: &'static str,
    pub computed: ValueWithError,
    pub printed: f64,
}

impl PrintedConstant {
    pub fn diff(&self) -> f64 {
        (self.computed.value - self.printed).abs()
    }
}

/// Printed values are truncated to four digits, so agreement is judged to this tolerance.
pub const CONSTANT_TOLERANCE: f64 = 2e-3;

pub fn composite_constants() -> Vec<PrintedConstant> {
    let t = Truncation::new(1e-16, 256).expect("valid truncation");
    let a = |k: AuxKind, x: f64| aux_series(k, x, t).expect("aux series converge for X >= 1/2");
    let one = ValueWithError::exact(1.0);
    let mu_h = a(AuxKind::Mu, 0.5);
    let nu_h = a(AuxKind::Nu, 0.5);
    let muhat_h = a(AuxKind::MuHat, 0.5);
    let nuhat_h = a(AuxKind::NuHat, 0.5);
    let omegahat_h = a(AuxKind::OmegaHat, 0.5);
    let mu_35 = a(AuxKind::Mu, 0.6);
    let nu_35 = a(AuxKind::Nu, 0.6);

    let spread = one.add(mu_h).div(one.sub(mu_h));
    let hat_nu_ratio = one.add(nuhat_h).div(one.add(muhat_h));
    let c2 = spread.mul(mu_35);
    let c1 = hat_nu_ratio.sub(one.add(nu_h).div(one.sub(mu_h)).mul(mu_35));
    let c3 = spread.mul(nu_35);
    let c4 = one.add(nu_h).div(one.add(mu_h));
    let c6 = one.add(omegahat_h).div(one.add(muhat_h));

    vec![
        PrintedConstant {
            name: "c1",
            formula: "(1+nu^(1/2))/(1+mu^(1/2)) - (1+nu(1/2))/(1-mu(1/2)) * mu(3/5)",
            computed: c1,
            printed: 0.8729,
        },
        PrintedConstant {
            name: "c2",
            formula: "(1+mu(1/2))/(1-mu(1/2)) * mu(3/5)",
            computed: c2,
            printed: 0.0150,
        },
        PrintedConstant {
            name: "c3",
            formula: "(1+mu(1/2))/(1-mu(1/2)) * nu(3/5)",
            computed: c3,
            printed: 0.0602,
        },
        PrintedConstant {
            name: "c4",
            formula: "(1+nu(1/2))/(1+mu(1/2))",
            computed: c4,
            printed: 1.1042,
        },
        PrintedConstant {
            name: "c5",
            formula: "(1+nu^(1/2))/(1+mu^(1/2))",
            computed: hat_nu_ratio,
            printed: 0.8884,
        },
        PrintedConstant {
            name: "c6",
            formula: "(1+omega^(1/2))/(1+mu^(1/2))",
            computed: c6,
            printed: 0.4435,
        },
    ]
}

/// Which quotient inequality to test. `Multiple` items compare a derivative at
/// `k Y` against `θ_Y` at `Y`; `Ratio` items compare at the same phase.
/// `Wide` items hold for widths bounded below, `Narrow` ones for `X <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientItem {
    DyMultipleWide,
    DyMultipleNarrow,
    DxyRatioWide,
    DxyRatioNarrow,
    DxyMultipleWide,
    DxyMultipleNarrow,
    DxxyRatioWide,
    DxxyRatioNarrow,
    DxxyMultipleNarrow,
}

impl QuotientItem {
    pub const ALL: [QuotientItem; 9] = [
        QuotientItem::DyMultipleWide,
        QuotientItem::DyMultipleNarrow,
        QuotientItem::DxyRatioWide,
        QuotientItem::DxyRatioNarrow,
        QuotientItem::DxyMultipleWide,
        QuotientItem::DxyMultipleNarrow,
        QuotientItem::DxxyRatioWide,
        QuotientItem::DxxyRatioNarrow,
        QuotientItem::DxxyMultipleNarrow,
    ];

    /// Admissible width range `(lo, hi, lo_inclusive, hi_inclusive)`.
    pub fn width_range(self) -> (f64, f64, bool, bool) {
        match self {
            QuotientItem::DyMultipleWide => (0.2, f64::INFINITY, false, false),
            QuotientItem::DyMultipleNarrow => (0.0, PI / (PI + 2.0), false, false),
            QuotientItem::DxyRatioWide | QuotientItem::DxyMultipleWide => {
                (0.2, f64::INFINITY, true, false)
            }
            QuotientItem::DxxyRatioWide => (59.0 / 250.0, f64::INFINITY, true, false),
            QuotientItem::DxyRatioNarrow
            | QuotientItem::DxyMultipleNarrow
            | QuotientItem::DxxyRatioNarrow
            | QuotientItem::DxxyMultipleNarrow => (0.0, 0.5, false, true),
        }
    }

    pub fn admits(self, x: f64) -> bool {
        let (lo, hi, lo_in, hi_in) = self.width_range();
        let above = if lo_in { x >= lo } else { x > lo };
        let below = if hi_in { x <= hi } else { x < hi };
        above && below
    }

    fn uses_multiple(self) -> bool {
        matches!(
            self,
            QuotientItem::DyMultipleWide
                | QuotientItem::DyMultipleNarrow
                | QuotientItem::DxyMultipleWide
                | QuotientItem::DxyMultipleNarrow
                | QuotientItem::DxxyMultipleNarrow
        )
    }

    fn numerator(self) -> Theta1dKind {
        match self {
            QuotientItem::DyMultipleWide | QuotientItem::DyMultipleNarrow => Theta1dKind::DY,
            QuotientItem::DxyRatioWide
            | QuotientItem::DxyRatioNarrow
            | QuotientItem::DxyMultipleWide
            | QuotientItem::DxyMultipleNarrow => Theta1dKind::DXY,
            QuotientItem::DxxyRatioWide
            | QuotientItem::DxxyRatioNarrow
            | QuotientItem::DxxyMultipleNarrow => Theta1dKind::DXXY,
        }
    }

    /// `(lower, upper)` for the quotient; absolute-value items are symmetric.
    pub fn bounds(self, x: f64, k: u32) -> (f64, f64) {
        let k = k as f64;
        let mu = || aux(AuxKind::Mu, x);
        let sym = |b: f64| (-b, b);
        match self {
            QuotientItem::DyMultipleWide => sym(k * (1.0 + mu()) / (1.0 - mu())),
            QuotientItem::DyMultipleNarrow => sym(k / PI * (PI / (4.0 * x)).exp()),
            QuotientItem::DxyRatioWide => (
                -PI * (1.0 + aux(AuxKind::Nu, x)) / (1.0 + mu()),
                -PI * (1.0 + aux(AuxKind::NuHat, x)) / (1.0 + aux(AuxKind::MuHat, x)),
            ),
            QuotientItem::DxyRatioNarrow => {
                let e = (-PI / x).exp();
                (
                    (0.75 * x * x + 2.0 * PI * PI * e) / (-0.5 * x.powi(3) + 2.0 * PI * x * x * e),
                    PI / (4.0 * x * x),
                )
            }
            QuotientItem::DxyMultipleWide => {
                sym(k * PI * (1.0 + aux(AuxKind::Nu, x)) / (1.0 - mu()))
            }
            QuotientItem::DxyMultipleNarrow => {
                sym(1.5 * k / PI / x * (1.0 + PI / (6.0 * x)) * (PI / (4.0 * x)).exp())
            }
            QuotientItem::DxxyRatioWide => (
                PI * PI * (1.0 + aux(AuxKind::OmegaHat, x)) / (1.0 + aux(AuxKind::MuHat, x)),
                PI * PI * (1.0 + aux(AuxKind::Omega, x)) / (1.0 + mu()),
            ),
            QuotientItem::DxxyRatioNarrow => {
                let centre = 15.0 / (4.0 * x * x);
                let half = PI / (4.0 * x.powi(4));
                (centre - half, centre + half)
            }
            QuotientItem::DxxyMultipleNarrow => {
                sym(k / (4.0 * x * x) * (15.0 / PI + 1.0 / (x * x)) * (PI / (4.0 * x)).exp())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientBoundCase {
    pub item: QuotientItem,
    /// Multiplier of the phase in the numerator; ignored by `Ratio` items.
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientCheck {
    pub quotient: ValueWithError,
    pub lower: f64,
    pub upper: f64,
    /// Signed slack `min(q - lower, upper - q)`.
    pub margin: f64,
}

impl QuotientCheck {
    pub fn holds(&self) -> bool {
        self.margin >= -self.quotient.err
    }
}

pub fn quotient_bound_check(
    case: QuotientBoundCase,
    x: f64,
    y: f64,
    t: Truncation,
) -> Result<QuotientCheck> {
    if !case.item.admits(x) {
        return domain(format!("{:?} does not admit X = {x}", case.item));
    }
    if !(y > 0.0) || case.k == 0 {
        return domain(format!(
            "quotient bounds need Y > 0 and k >= 1 (got Y={y}, k={})",
            case.k
        ));
    }
    let den = evaluate(Theta1dPoint::new(x, y)?, Theta1dKind::DY, t)?;
    if den.is_degenerate() {
        return Err(Error::DegenerateDenominator {
            value: den.value,
            err: den.err,
        });
    }
    let phase = if case.item.uses_multiple() {
        case.k as f64 * y
    } else {
        y
    };
    let num = evaluate(Theta1dPoint::new(x, phase)?, case.item.numerator(), t)?;
    let quotient = num.div(den);
    let (lower, upper) = case.item.bounds(x, case.k);
    Ok(QuotientCheck {
        quotient,
        lower,
        upper,
        margin: (quotient.value - lower).min(upper - quotient.value),
    })
}

/// Summation window `|n| <= max(8, ceil(sqrt(40/(aπ))) + 2)` around the reduced phase.
fn window(a: f64) -> i64 {
    8.max((40.0 / (a * PI)).sqrt().ceil() as i64 + 2)
}

/// `sum_n P(n - Y) exp(-aπ (n - Y)²)` for an odd or even polynomial `P`
/// given as `(coefficient, power)` monomials, with the window tail bound.
fn moment_sum(a: f64, y: f64, poly: &[(f64, i32)]) -> ValueWithError {
    let y = y.rem_euclid(1.0);
    let n_max = window(a);
    let mut acc = Accumulator::new();
    for n in -n_max..=n_max + 1 {
        let u = n as f64 - y;
        let p: f64 = poly.iter().map(|&(c, k)| c * u.powi(k)).sum();
        acc.push(p * (-a * PI * u * u).exp());
    }
    let t0 = n_max as f64 + 1.0;
    let tail: f64 = 2.0
        * poly
            .iter()
            .map(|&(c, k)| c.abs() * gaussian_tail(k as f64, a * PI, t0))
            .sum::<f64>();
    ValueWithError::new(acc.value(), tail + acc.rounding())
}

fn check_width(a: f64, min: f64) -> Result<()> {
    if !(a >= min) || !a.is_finite() {
        return domain(format!("need a >= {min} (got {a})"));
    }
    Ok(())
}

/// Odd Gaussian moment `S_j(a; Y) = sum_n (n - Y)^j exp(-aπ (n - Y)²)`.
pub fn odd_moment(j: i32, a: f64, y: f64) -> Result<ValueWithError> {
    check_width(a, f64::MIN_POSITIVE)?;
    Ok(moment_sum(a, y, &[(1.0, j)]))
}

pub fn q_ratio(a: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    check_width(a, 2.0)?;
    let s1 = odd_moment(1, a, y)?;
    if s1.is_degenerate() {
        return Err(Error::DegenerateDenominator {
            value: s1.value,
            err: s1.err,
        });
    }
    let s3 = odd_moment(3, a, y)?;
    let s5 = odd_moment(5, a, y)?;
    let q = s5.scale(PI).sub(s3.scale(5.0 / a)).div(s1);
    check_tol(q, t)
}

fn check_tol(v: ValueWithError, t: Truncation) -> Result<ValueWithError> {
    // Only the truncation part is held to the tolerance; rounding noise in
    // a quotient can exceed tiny tolerances without signalling a problem.
    if v.err > t.abs_tol.max(1e3 * f64::EPSILON * v.value.abs().max(1.0)) {
        return Err(Error::ToleranceNotMet {
            achieved: v.err,
            requested: t.abs_tol,
            terms: 0,
        });
    }
    Ok(v)
}

fn f_poly(a: f64, sign: f64) -> [(f64, i32); 3] {
    [(PI, 5), (-5.0 / a, 3), (sign * 0.25, 1)]
}

/// `F(a; Y)`: the combination `π S_5 - (5/a) S_3 - S_1 / 4`.
pub fn f_sum(a: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    check_width(a, f64::MIN_POSITIVE)?;
    check_tol(moment_sum(a, y, &f_poly(a, -1.0)), t)
}

/// `H(a; Y)`: as [`f_sum`] with `+S_1 / 4`.
pub fn h_sum(a: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    check_width(a, f64::MIN_POSITIVE)?;
    check_tol(moment_sum(a, y, &f_poly(a, 1.0)), t)
}

/// Single term of `F` at integer `n`.
pub fn f_term(a: f64, y: f64, n: i64) -> f64 {
    let u = n as f64 - y;
    (PI * u.powi(5) - 5.0 / a * u.powi(3) - 0.25 * u) * (-a * PI * u * u).exp()
}

/// `∂/∂Y` of [`f_term`].
pub fn f_term_dy(a: f64, y: f64, n: i64) -> f64 {
    let u = n as f64 - y;
    let u2 = u * u;
    (2.0 * a * PI * PI * u2 * u2 * u2 - 15.0 * PI * u2 * u2 + (15.0 / a - a * PI / 2.0) * u2 + 0.25)
        * (-a * PI * u2).exp()
}

fn f_dy_poly(a: f64) -> [(f64, i32); 4] {
    [
        (2.0 * a * PI * PI, 6),
        (-15.0 * PI, 4),
        (15.0 / a - a * PI / 2.0, 2),
        (0.25, 0),
    ]
}

/// `∂F/∂Y`, summed termwise.
pub fn f_sum_dy(a: f64, y: f64, t: Truncation) -> Result<ValueWithError> {
    check_width(a, f64::MIN_POSITIVE)?;
    check_tol(moment_sum(a, y, &f_dy_poly(a)), t)
}

/// Outcome of one sampled inequality. Passes when every sample has
/// `margin >= -err`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub worst_margin: f64,
    pub err_at_worst: f64,
    pub worst_at: (f64, f64),
    pub samples: usize,
    pub skipped: usize,
    /// Intermediate estimates are reported but do not decide the suite.
    #[serde(default)]
    pub advisory: bool,
}

impl CheckItem {
    pub(crate) fn from_samples(name: &str, samples: &[Option<(f64, f64, (f64, f64))>]) -> Self {
        let mut item = CheckItem {
            name: name.to_string(),
            passed: true,
            worst_margin: f64::INFINITY,
            err_at_worst: 0.0,
            worst_at: (f64::NAN, f64::NAN),
            samples: 0,
            skipped: 0,
            advisory: false,
        };
        for s in samples {
            match *s {
                None => item.skipped += 1,
                Some((margin, err, at)) => {
                    item.samples += 1;
                    if !(margin >= -err) {
                        item.passed = false;
                    }
                    if margin < item.worst_margin || margin.is_nan() {
                        item.worst_margin = margin;
                        item.err_at_worst = err;
                        item.worst_at = at;
                    }
                }
            }
        }
        item
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub items: Vec<CheckItem>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed || i.advisory)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

/// Inclusive uniform grid from `lo` to `hi` with the given step.
pub fn step_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

fn in_range(y: f64, lo: f64, hi: f64) -> bool {
    y >= lo - 1e-12 && y <= hi + 1e-12
}

/// Samples the positivity of `F` on `[0, 1/2]` through its four pieces, the
/// truncated-sum lower bounds they rest on, and the two tail ratios.
pub fn f_items_suite(a_grid: &[f64], y_grid: &[f64], t: Truncation) -> Result<SuiteReport> {
    for &a in a_grid {
        if !(2.0..=24.0).contains(&a) {
            return domain(format!("positivity suite needs a in [2, 24] (got {a})"));
        }
    }
    for &y in y_grid {
        if !(0.0..=0.5).contains(&y) {
            return domain(format!("positivity suite needs Y in [0, 1/2] (got {y})"));
        }
    }
    let points: Vec<(f64, f64)> = a_grid
        .iter()
        .flat_map(|&a| y_grid.iter().map(move |&y| (a, y)))
        .collect();

    type Sample = Option<(f64, f64, (f64, f64))>;
    let rows: Vec<Result<[Sample; 9]>> = points
        .par_iter()
        .map(|&(a, y)| {
            let g = (-a * PI * y * y).exp();
            let at = (a, y);
            let mut row: [Sample; 9] = [None; 9];
            if y == 0.0 || y == 0.5 {
                let f = f_sum(a, y, t)?;
                row[0] = Some((-f.value.abs(), f.err, at));
            }
            if in_range(y, 0.0, 0.05) {
                let d = f_sum_dy(a, y, t)?;
                row[1] = Some((d.value - 0.1 * g, d.err, at));
                let head: f64 = (-1..=1).map(|n| f_term_dy(a, y, n)).sum();
                row[5] = Some((head - 0.1 * g, 0.0, at));
            }
            if in_range(y, 0.4, 0.5) {
                let d = f_sum_dy(a, y, t)?;
                row[2] = Some((-d.value - 0.6 * g, d.err, at));
                let head: f64 = -(-2..=2).map(|n| f_term_dy(a, y, n)).sum::<f64>();
                row[6] = Some((head - 0.7 * g, 0.0, at));
                let far: f64 = (3..=40)
                    .map(|n| f_term_dy(a, y, n).abs() + f_term_dy(a, y, -n).abs())
                    .sum();
                row[7] = Some((1e-10 - far / head, 0.0, at));
            }
            if in_range(y, 0.05, 0.4) {
                let f = f_sum(a, y, t)?;
                row[3] = Some((f.value - 0.01 * g, f.err, at));
                let head: f64 = (-1..=1).map(|n| f_term(a, y, n)).sum();
                row[4] = Some((head - g / 80.0, 0.0, at));
                let far: f64 = (2..=40).map(|n| f_term(a, y, -n).abs()).sum();
                row[8] = Some((1e-7 - far / head, 0.0, at));
            }
            Ok(row)
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let names = [
        "boundary_zeros",
        "slope_near_zero",
        "slope_near_half",
        "value_middle",
        "value_middle_head",
        "slope_near_zero_head",
        "slope_near_half_head",
        "slope_tail_ratio",
        "value_tail_ratio",
    ];
    let items = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let col: Vec<Sample> = rows.iter().filter_map(|r| r[i].map(Some)).collect();
            let mut item = CheckItem::from_samples(name, &col);
            item.advisory = name.ends_with("_head");
            item
        })
        .collect();
    Ok(SuiteReport {
        name: "lemma25".into(),
        items,
    })
}

/// Samples `|Q(a; Y)| <= 1/4` together with the equivalent sign conditions
/// `F >= 0` and `H <= 0`.
pub fn q_ratio_suite(a_grid: &[f64], y_grid: &[f64], t: Truncation) -> Result<SuiteReport> {
    for &a in a_grid {
        check_width(a, 2.0)?;
    }
    let points: Vec<(f64, f64)> = a_grid
        .iter()
        .flat_map(|&a| y_grid.iter().map(move |&y| (a, y)))
        .collect();
    type Sample = Option<(f64, f64, (f64, f64))>;
    let rows: Vec<Result<[Sample; 3]>> = points
        .par_iter()
        .map(|&(a, y)| {
            let at = (a, y);
            let q = match q_ratio(a, y, t) {
                Ok(q) => Some((0.25 - q.value.abs(), q.err, at)),
                Err(Error::DegenerateDenominator { .. }) => None,
                Err(e) => return Err(e),
            };
            let f = f_sum(a, y, t)?;
            let h = h_sum(a, y, t)?;
            Ok([q, Some((f.value, f.err, at)), Some((-h.value, h.err, at))])
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let names = ["q_abs_bound", "f_nonnegative", "h_nonpositive"];
    let items = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let col: Vec<Sample> = rows.iter().map(|r| r[i]).collect();
            CheckItem::from_samples(name, &col)
        })
        .collect();
    Ok(SuiteReport {
        name: "lemma24".into(),
        items,
    })
}

/// Sweeps every quotient item over admissible `(X, Y, k)` samples.
/// Points where `θ_Y(X; Y)` is indistinguishable from zero are skipped.
pub fn quotient_suite(
    x_grid: &[f64],
    y_grid: &[f64],
    ks: &[u32],
    t: Truncation,
) -> Result<SuiteReport> {
    let mut items = Vec::new();
    for item in QuotientItem::ALL {
        let cases: Vec<(f64, f64, u32)> = x_grid
            .iter()
            .filter(|&&x| item.admits(x))
            .flat_map(|&x| {
                let ks: Vec<u32> = if item.uses_multiple() {
                    ks.to_vec()
                } else {
                    vec![1]
                };
                y_grid
                    .iter()
                    .flat_map(move |&y| ks.clone().into_iter().map(move |k| (x, y, k)))
            })
            .collect();
        let samples: Vec<Result<Option<(f64, f64, (f64, f64))>>> = cases
            .par_iter()
            .map(
                |&(x, y, k)| match quotient_bound_check(QuotientBoundCase { item, k }, x, y, t) {
                    Ok(c) => Ok(Some((c.margin, c.quotient.err, (x, y)))),
                    Err(Error::DegenerateDenominator { .. }) => Ok(None),
                    Err(e) => Err(e),
                },
            )
            .collect();
        let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
        items.push(CheckItem::from_samples(&format!("{item:?}"), &samples));
    }
    Ok(SuiteReport {
        name: "quotients".into(),
        items,
    })
}
