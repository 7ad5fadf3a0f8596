//! Grid sign certification for derivatives of `θ(α; z)` and `ζ(s; z)`.
//!
//! A certificate samples a region on a fixed grid and passes when every
//! sample has the claimed sign beyond its error bound (`sign·value > err`
//! for strict claims, `sign·value >= -err` otherwise). Samples are capped at
//! `y_cap`; every certified quantity decays exponentially in `y`, which is
//! recorded in the certificate but not proved.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{theta_derivative, zeta_mellin_many, Derivative};
use crate::modular::UpperHalfPoint;
use crate::{Truncation, ValueWithError};

pub mod arc;
pub mod bounds;

pub use arc::{arc_restriction_check, arc_sweep, ArcReport};
pub use bounds::{
    bracket_suite, epsilon1, epsilon2, lower_bound_neg_theta_xyy, lower_bound_suite,
    lower_bound_theta_xy, xy_remainder, BoundCase, LowerBound,
};

/// Seed of the randomized invariant checks.
pub const DEFAULT_SEED: u64 = 0x5EED;

const Y_CAP_NOTE: &str =
    "samples stop at y_cap; the certified derivatives decay like exp(-c y) above it (not proved)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// `0 < x < 1/2`, `y >= y0`.
    Strip,
    /// `|z| > 1`, `0 < x < 1/2`.
    FundamentalOpen,
    /// `|z| >= 1`, `0 <= x <= 1/2`.
    FundamentalClosed,
    /// `z = e^{it}`, `t ∈ [π/3, π/2]`.
    Arc,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub y0: f64,
}

impl Region {
    pub fn strip(y0: f64) -> Self {
        Region {
            kind: RegionKind::Strip,
            y0,
        }
    }

    pub fn fundamental(open: bool) -> Self {
        Region {
            kind: if open {
                RegionKind::FundamentalOpen
            } else {
                RegionKind::FundamentalClosed
            },
            y0: 3f64.sqrt() / 2.0,
        }
    }

    pub fn arc() -> Self {
        Region {
            kind: RegionKind::Arc,
            y0: 3f64.sqrt() / 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    /// Distance kept from open boundaries.
    pub inset: f64,
    pub y_cap: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            nx: 60,
            ny: 60,
            inset: 1e-3,
            y_cap: 10.0,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

impl GridSpec {
    pub fn square(n: usize) -> Self {
        GridSpec {
            nx: n,
            ny: n,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2
            || self.ny < 2
            || !(self.inset >= 0.0 && self.inset < 0.25)
            || !(self.y_cap > 1.0)
        {
            return domain(format!(
                "grid needs nx, ny >= 2, 0 <= inset < 1/4 and y_cap > 1 (got {self:?})"
            ));
        }
        Ok(())
    }

    /// Sample points, column by column in `x`.
    pub fn points(&self, region: &Region) -> Vec<UpperHalfPoint> {
        let (lo, hi) = match region.kind {
            RegionKind::FundamentalClosed => (0.0, 0.5),
            _ => (self.inset, 0.5 - self.inset),
        };
        if region.kind == RegionKind::Arc {
            let t = linspace(
                std::f64::consts::FRAC_PI_3,
                std::f64::consts::FRAC_PI_2,
                self.nx,
            );
            return t.into_iter().map(UpperHalfPoint::on_circle).collect();
        }
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for x in linspace(lo, hi, self.nx) {
            let bottom = match region.kind {
                RegionKind::Strip => region.y0,
                RegionKind::FundamentalOpen => (1.0 - x * x).sqrt() + self.inset,
                _ => (1.0 - x * x).sqrt(),
            };
            for y in linspace(bottom, self.y_cap, self.ny) {
                out.push(UpperHalfPoint { x, y });
            }
        }
        out
    }
}

/// Derivative of one of the two lattice functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    ThetaX,
    ThetaY,
    ThetaXY,
    ThetaXYY,
    ZetaX,
    ZetaY,
    ZetaXY,
    ZetaXYY,
}

impl Target {
    pub fn derivative(self) -> Derivative {
        match self {
            Target::ThetaX | Target::ZetaX => Derivative::X,
            Target::ThetaY | Target::ZetaY => Derivative::Y,
            Target::ThetaXY | Target::ZetaXY => Derivative::XY,
            Target::ThetaXYY | Target::ZetaXYY => Derivative::XYY,
        }
    }

    pub fn is_zeta(self) -> bool {
        matches!(
            self,
            Target::ZetaX | Target::ZetaY | Target::ZetaXY | Target::ZetaXYY
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::ThetaX => "theta_x",
            Target::ThetaY => "theta_y",
            Target::ThetaXY => "theta_xy",
            Target::ThetaXYY => "theta_xyy",
            Target::ZetaX => "zeta_x",
            Target::ZetaY => "zeta_y",
            Target::ZetaXY => "zeta_xy",
            Target::ZetaXYY => "zeta_xyy",
        }
    }

    /// Checks the parameter: `α > 0` for theta, `s > 1` for zeta.
    pub fn check_param(self, p: f64) -> Result<()> {
        if self.is_zeta() {
            if p > 1.0 && p.is_finite() {
                return Ok(());
            }
            return domain(format!("{} needs s > 1 (got {p})", self.name()));
        }
        if p > 0.0 && p.is_finite() {
            return Ok(());
        }
        domain(format!("{} needs alpha > 0 (got {p})", self.name()))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// The sign claims covered by the certification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    /// `ζ_y > 0` for `y >= 3/2`.
    #[serde(rename = "prop1")]
    Prop1,
    /// `ζ_x < 0` for `0 < x < 1/2`, `y >= 3/5`.
    #[serde(rename = "prop2")]
    Prop2,
    /// `θ_y >= 0` on the closed fundamental domain.
    #[serde(rename = "prop3")]
    Prop3,
    /// `θ_x <= 0` for `0 < x < 1/2`, `y >= 1/2`.
    #[serde(rename = "prop4")]
    Prop4,
    /// `θ_xy > 0` and `ζ_xy > 0` for `0 < x < 1/2`, `y >= 3/5`.
    #[serde(rename = "thm1-1")]
    MixedPositive,
    /// `θ_xyy < 0` and `ζ_xyy < 0` on the open fundamental domain.
    #[serde(rename = "thm1-2")]
    ThirdNegative,
}

impl ClaimId {
    pub const ALL: [ClaimId; 6] = [
        ClaimId::Prop1,
        ClaimId::Prop2,
        ClaimId::Prop3,
        ClaimId::Prop4,
        ClaimId::MixedPositive,
        ClaimId::ThirdNegative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Prop1 => "prop1",
            ClaimId::Prop2 => "prop2",
            ClaimId::Prop3 => "prop3",
            ClaimId::Prop4 => "prop4",
            ClaimId::MixedPositive => "thm1-1",
            ClaimId::ThirdNegative => "thm1-2",
        }
    }

    /// `(target, sign, strict, region)` for each function in the claim.
    pub fn cases(self) -> Vec<ClaimCase> {
        let case = |target, sign, strict, region| ClaimCase {
            target,
            sign,
            strict,
            region,
        };
        use Sign::*;
        use Target::*;
        match self {
            ClaimId::Prop1 => vec![case(ZetaY, Positive, true, Region::strip(1.5))],
            ClaimId::Prop2 => vec![case(ZetaX, Negative, true, Region::strip(0.6))],
            ClaimId::Prop3 => vec![case(ThetaY, Positive, false, Region::fundamental(false))],
            ClaimId::Prop4 => vec![case(ThetaX, Negative, false, Region::strip(0.5))],
            ClaimId::MixedPositive => vec![
                case(ThetaXY, Positive, true, Region::strip(0.6)),
                case(ZetaXY, Positive, true, Region::strip(0.6)),
            ],
            ClaimId::ThirdNegative => vec![
                case(ThetaXYY, Negative, true, Region::fundamental(true)),
                case(ZetaXYY, Negative, true, Region::fundamental(true)),
            ],
        }
    }

    /// Default `α` values for the theta part of the claim.
    pub fn default_alphas(self) -> Vec<f64> {
        match self {
            ClaimId::ThirdNegative => vec![1.0, 2.0],
            _ => vec![0.5, 1.0, 2.0, 4.0],
        }
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidDomain(format!("unknown claim {s:?}")))
    }
}

/// Default `s` values for the zeta part of a claim.
pub const DEFAULT_S: [f64; 3] = [1.5, 2.0, 4.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimCase {
    pub target: Target,
    pub sign: Sign,
    pub strict: bool,
    pub region: Region,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub claim: String,
    pub region: Region,
    pub target: Target,
    /// `α` for theta targets, `s` for zeta targets.
    pub param: f64,
    pub claimed_sign: Sign,
    pub strict: bool,
    pub passed: bool,
    /// Smallest `sign·value` over the samples.
    pub worst_margin: f64,
    pub err_at_worst: f64,
    pub worst_at: (f64, f64),
    pub samples: usize,
    /// Points that could not be evaluated to a usable error bound.
    pub skipped: Vec<(f64, f64)>,
    pub grid: GridSpec,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub certificate: SignCertificate,
    pub samples: Vec<Sample>,
}

/// True when the error bound is too large to decide the sign comfortably.
fn unsettled(v: &ValueWithError) -> bool {
    4.0 * v.err > v.value.abs() && v.value != 0.0
}

/// Evaluates `θ` or `ζ` derivatives at one point for all parameters. Values
/// whose error bound is comparable to their size are recomputed with a
/// tolerance relative to the value, at most twice.
fn evaluate_point(
    target: Target,
    params: &[f64],
    z: UpperHalfPoint,
    t: Truncation,
) -> Result<Vec<ValueWithError>> {
    let d = target.derivative();
    let run = |t: Truncation| -> Result<Vec<ValueWithError>> {
        if target.is_zeta() {
            zeta_mellin_many(params, z, d, t)
        } else {
            params
                .iter()
                .map(|&a| theta_derivative(a, z, d, t))
                .collect()
        }
    };
    let mut values = run(t)?;
    let mut tol = t.abs_tol;
    for _ in 0..2 {
        let wanted = values
            .iter()
            .filter(|v| unsettled(v))
            .map(|v| 1e-3 * v.value.abs())
            .fold(f64::INFINITY, f64::min);
        if !wanted.is_finite() || wanted >= tol {
            break;
        }
        tol = wanted.max(1e-300);
        match run(Truncation { abs_tol: tol, ..t }) {
            Ok(better) => values = better,
            Err(_) => break,
        }
    }
    Ok(values)
}

/// Samples one claim case for every parameter and issues the certificates.
/// The certificates may fail; see [`certify_sign`] for the checked form.
pub fn sweep(
    claim: &str,
    case: ClaimCase,
    params: &[f64],
    grid: &GridSpec,
    t: Truncation,
) -> Result<Vec<Sweep>> {
    grid.validate()?;
    if params.is_empty() {
        return domain(format!("no parameters given for {}", case.target));
    }
    for &p in params {
        case.target.check_param(p)?;
    }
    let points = grid.points(&case.region);
    let evaluated: Vec<Result<Vec<ValueWithError>>> = points
        .par_iter()
        .map(|&z| evaluate_point(case.target, params, z, t))
        .collect();

    let mut per_param: Vec<Vec<Sample>> = vec![Vec::with_capacity(points.len()); params.len()];
    let mut skipped = Vec::new();
    for (z, r) in points.iter().zip(evaluated) {
        match r {
            Ok(values) => {
                for (slot, v) in per_param.iter_mut().zip(values) {
                    slot.push(Sample {
                        x: z.x,
                        y: z.y,
                        value: v.value,
                        err: v.err,
                    });
                }
            }
            Err(Error::ToleranceNotMet { .. }) | Err(Error::QuadratureNotConverged { .. }) => {
                skipped.push((z.x, z.y))
            }
            Err(e) => return Err(e),
        }
    }

    Ok(params
        .iter()
        .zip(per_param)
        .map(|(&param, samples)| {
            let s = case.sign.factor();
            let mut cert = SignCertificate {
                claim: claim.to_string(),
                region: case.region,
                target: case.target,
                param,
                claimed_sign: case.sign,
                strict: case.strict,
                passed: skipped.is_empty(),
                worst_margin: f64::INFINITY,
                err_at_worst: 0.0,
                worst_at: (f64::NAN, f64::NAN),
                samples: samples.len(),
                skipped: skipped.clone(),
                grid: *grid,
                note: Y_CAP_NOTE.to_string(),
            };
            for p in &samples {
                let margin = s * p.value;
                let ok = if case.strict {
                    margin > p.err
                } else {
                    margin >= -p.err
                };
                cert.passed &= ok;
                if margin < cert.worst_margin || margin.is_nan() {
                    cert.worst_margin = margin;
                    cert.err_at_worst = p.err;
                    cert.worst_at = (p.x, p.y);
                }
            }
            Sweep {
                certificate: cert,
                samples,
            }
        })
        .collect())
}

/// Like [`sweep`], but fails with the worst offending sample when a
/// certificate does not pass.
pub fn certify_sign(
    claim: &str,
    case: ClaimCase,
    params: &[f64],
    grid: &GridSpec,
    t: Truncation,
) -> Result<Vec<SignCertificate>> {
    let mut out = Vec::new();
    for s in sweep(claim, case, params, grid, t)? {
        let c = s.certificate;
        if !c.passed {
            return Err(Error::Violation {
                claim: format!("{} {} param={}", c.claim, c.target, c.param),
                x: c.worst_at.0,
                y: c.worst_at.1,
                value: c.claimed_sign.factor() * c.worst_margin,
                err: c.err_at_worst,
            });
        }
        out.push(c);
    }
    Ok(out)
}

/// Runs every case of a claim: theta cases over `alphas`, zeta cases over `ss`.
pub fn certify_claim(
    claim: ClaimId,
    alphas: &[f64],
    ss: &[f64],
    grid: &GridSpec,
    t: Truncation,
) -> Result<Vec<Sweep>> {
    let mut out = Vec::new();
    for case in claim.cases() {
        let params = if case.target.is_zeta() { ss } else { alphas };
        out.extend(sweep(claim.name(), case, params, grid, t)?);
    }
    Ok(out)
}
