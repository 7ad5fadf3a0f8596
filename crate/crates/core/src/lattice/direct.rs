//! Direct lattice sums over `(m, n)` for the Gaussian and the Riesz potential.
//!
//! With `u = n + m x`, the squared length of the lattice point indexed by
//! `(m, n)` is `Q = u²/y + m² y`. Every derivative is obtained termwise by the
//! chain rule from the partials of `Q`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::modular::{reduce, UpperHalfPoint};
use crate::numeric::{gaussian_tail, shifted_moment_sup, Accumulator};
use crate::{Truncation, ValueWithError};

use super::{check_alpha, check_s, Derivative};

/// Polynomial in `(|u|, |m|)` with nonnegative coefficients, as
/// `(coefficient, power of |u|, power of |m|)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Poly(pub Vec<(f64, i32, i32)>);

impl Poly {
    fn mono(c: f64, pu: i32, pm: i32) -> Self {
        Poly(vec![(c, pu, pm)])
    }

    fn scale(mut self, c: f64) -> Self {
        for t in &mut self.0 {
            t.0 *= c;
        }
        self
    }

    fn add(mut self, other: Poly) -> Self {
        self.0.extend(other.0);
        self
    }

    fn mul(&self, other: &Poly) -> Self {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for &(a, pa, ma) in &self.0 {
            for &(b, pb, mb) in &other.0 {
                out.push((a * b, pa + pb, ma + mb));
            }
        }
        Poly(out)
    }

    pub(crate) fn eval(&self, u: f64, m: f64) -> f64 {
        self.0
            .iter()
            .map(|&(c, pu, pm)| c * u.powi(pu) * m.powi(pm))
            .sum()
    }
}

/// Majorants for the partials of `Q`: `|Q_x| <= 2|m||u|/y`, `|Q_y| <= m² + u²/y²`, ...
struct QBounds {
    qx: Poly,
    qy: Poly,
    qxy: Poly,
    qyy: Poly,
    qxyy: Poly,
}

impl QBounds {
    fn new(y: f64) -> Self {
        QBounds {
            qx: Poly::mono(2.0 / y, 1, 1),
            qy: Poly(vec![(1.0, 0, 2), (1.0 / (y * y), 2, 0)]),
            qxy: Poly::mono(2.0 / (y * y), 1, 1),
            qyy: Poly::mono(2.0 / y.powi(3), 2, 0),
            qxyy: Poly::mono(4.0 / y.powi(3), 1, 1),
        }
    }
}

/// Majorant of `|∂ exp(-a Q)| / exp(-a Q)` for the requested derivative.
pub(crate) fn gaussian_weight(d: Derivative, a: f64, y: f64) -> Poly {
    let q = QBounds::new(y);
    match d {
        Derivative::Value => Poly::mono(1.0, 0, 0),
        Derivative::X => q.qx.scale(a),
        Derivative::Y => q.qy.scale(a),
        Derivative::XY => q.qx.mul(&q.qy).scale(a * a).add(q.qxy.scale(a)),
        Derivative::XYY => {
            q.qx.mul(&q.qy)
                .mul(&q.qy)
                .scale(a.powi(3))
                .add(q.qxy.mul(&q.qy).scale(2.0 * a * a))
                .add(q.qx.mul(&q.qyy).scale(a * a))
                .add(q.qxyy.scale(a))
        }
    }
}

/// Exact partials of `Q` at `(m, u)`.
#[derive(Clone, Copy)]
struct QPartials {
    qx: f64,
    qy: f64,
    qxy: f64,
    qyy: f64,
    qxyy: f64,
}

impl QPartials {
    fn at(m: f64, u: f64, y: f64) -> Self {
        let y2 = y * y;
        QPartials {
            qx: 2.0 * m * u / y,
            qy: m * m - u * u / y2,
            qxy: -2.0 * m * u / y2,
            qyy: 2.0 * u * u / (y2 * y),
            qxyy: 4.0 * m * u / (y2 * y),
        }
    }

    /// Chain rule for `g(Q)` given `[g, g', g'', g''']` at `Q`.
    fn chain(&self, d: Derivative, g: [f64; 4]) -> f64 {
        match d {
            Derivative::Value => g[0],
            Derivative::X => g[1] * self.qx,
            Derivative::Y => g[1] * self.qy,
            Derivative::XY => g[2] * self.qx * self.qy + g[1] * self.qxy,
            Derivative::XYY => {
                g[3] * self.qx * self.qy * self.qy
                    + g[2] * (2.0 * self.qxy * self.qy + self.qx * self.qyy)
                    + g[1] * self.qxyy
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum SumMode {
    /// Signed sum, optionally including the origin.
    Signed { origin: bool },
    /// Sum of the majorant polynomial times the Gaussian, origin excluded.
    Majorant,
}

/// Gaussian lattice sum `sum exp(-πα Q)` or one of its derivatives.
///
/// Rows `|m| <= M` are summed, each over a window of `2K+1` values of `n`
/// centred at `-m x`, so every omitted `|u|` is at least `K + 1/2`. The
/// omitted rows are bounded through [`shifted_moment_sup`], the omitted
/// parts of each row through [`gaussian_tail`].
pub(crate) fn gaussian_sum(
    alpha: f64,
    z: UpperHalfPoint,
    d: Derivative,
    mode: SumMode,
    t: Truncation,
) -> Result<ValueWithError> {
    let a = PI * alpha;
    let (x, y) = (z.x, z.y);
    let beta_u = a / y;
    let beta_m = a * y;
    let weight = gaussian_weight(d, a, y);
    let cap = t.max_terms;

    let outer = |m_max: usize| -> f64 {
        weight
            .0
            .iter()
            .map(|&(c, pu, pm)| {
                c * shifted_moment_sup(pu as f64, beta_u)
                    * 2.0
                    * gaussian_tail(pm as f64, beta_m, m_max as f64 + 1.0)
            })
            .sum()
    };
    let m_max = (0..=cap)
        .find(|&m| outer(m) <= t.abs_tol / 2.0)
        .ok_or(Error::ToleranceNotMet {
            achieved: outer(cap),
            requested: t.abs_tol,
            terms: cap,
        })?;
    let row_tol = t.abs_tol / (2.0 * (2 * m_max + 1) as f64);

    let mut acc = Accumulator::new();
    let mut err = outer(m_max);
    for m in -(m_max as i64)..=(m_max as i64) {
        let mf = m as f64;
        let row_scale = (-beta_m * mf * mf).exp();
        let inner = |k: usize| -> f64 {
            weight
                .0
                .iter()
                .map(|&(c, pu, pm)| {
                    c * mf.abs().powi(pm)
                        * row_scale
                        * 2.0
                        * gaussian_tail(pu as f64, beta_u, k as f64 + 0.5)
                })
                .sum()
        };
        let k_max = (0..=cap)
            .find(|&k| inner(k) <= row_tol)
            .ok_or(Error::ToleranceNotMet {
                achieved: inner(cap),
                requested: t.abs_tol,
                terms: cap,
            })?;
        err += inner(k_max);
        let centre = (-mf * x).round() as i64;
        for n in centre - k_max as i64..=centre + k_max as i64 {
            if m == 0 && n == 0 && mode != (SumMode::Signed { origin: true }) {
                continue;
            }
            let u = n as f64 + mf * x;
            let q = u * u / y + mf * mf * y;
            let e = (-a * q).exp();
            let term = match mode {
                SumMode::Majorant => weight.eval(u.abs(), mf.abs()) * e,
                SumMode::Signed { .. } => {
                    QPartials::at(mf, u, y).chain(d, [e, -a * e, a * a * e, -a * a * a * e])
                }
            };
            acc.push(term);
        }
    }
    Ok(ValueWithError::new(acc.value(), err + acc.rounding()))
}

/// `θ(α; z) = sum_{(m,n)} exp(-πα |mz+n|²/y)`, summed directly.
pub fn theta_direct(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    theta_direct_derivative(alpha, z, Derivative::Value, t)
}

/// Termwise derivative of the direct Gaussian sum.
pub fn theta_direct_derivative(
    alpha: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    check_alpha(alpha)?;
    let z = UpperHalfPoint::new(z.x, z.y)?;
    gaussian_sum(alpha, z, d, SumMode::Signed { origin: true }, t)
}

/// `θ(α; z) - 1`, without cancellation against the origin term.
pub fn theta_minus_one(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    check_alpha(alpha)?;
    let z = UpperHalfPoint::new(z.x, z.y)?;
    gaussian_sum(
        alpha,
        z,
        Derivative::Value,
        SumMode::Signed { origin: false },
        t,
    )
}

/// Half the longer diagonal of the reduced cell: every point of the plane is
/// within this distance of a lattice point, and every lattice point's centred
/// cell lies within it.
pub(crate) fn covering_radius(z: UpperHalfPoint) -> Result<f64> {
    let r = reduce(z)?.point;
    let s = r.y.sqrt();
    let d1 = ((1.0 + r.x).powi(2) + r.y * r.y).sqrt() / s;
    let d2 = ((1.0 - r.x).powi(2) + r.y * r.y).sqrt() / s;
    Ok(d1.max(d2) / 2.0)
}

/// `|sum_{|p|>R} |p|^{-2s} - π R^{2-2s}/(s-1)|` from the counting bound
/// `|N(r) - π r²| <= 2πρ r + πρ²`.
fn discrepancy(s: f64, rho: f64, r: f64) -> f64 {
    2.0 * PI * rho * r.powf(1.0 - 2.0 * s) * (1.0 + 2.0 * s / (2.0 * s - 1.0))
        + 2.0 * PI * rho * rho * r.powf(-2.0 * s)
}

/// Bound on `sum_{|p|>R} |p|^{-2s}`.
fn riesz_tail(s: f64, rho: f64, r: f64) -> f64 {
    PI * r.powf(2.0 - 2.0 * s) / (s - 1.0) + discrepancy(s, rho, r)
}

/// `|∂ Q^{-s}| <= K Q^{-s}`, from `|Q_x|, |Q_y| <= Q/y`, `|Q_xy| <= Q/y²`,
/// `|Q_yy| <= 2Q/y²`, `|Q_xyy| <= 2Q/y³`.
fn riesz_weight(d: Derivative, s: f64, y: f64) -> f64 {
    let (s1, s2, s3) = (s, s * (s + 1.0), s * (s + 1.0) * (s + 2.0));
    match d {
        Derivative::Value => 1.0,
        Derivative::X | Derivative::Y => s1 / y,
        Derivative::XY => (s2 + s1) / (y * y),
        Derivative::XYY => (s3 + 4.0 * s2 + 2.0 * s1) / y.powi(3),
    }
}

/// Largest cut-off radius tried by the direct Riesz sum.
fn radius_cap(t: Truncation) -> f64 {
    64.0 * t.max_terms as f64
}

fn riesz_sum(s: f64, z: UpperHalfPoint, d: Derivative, t: Truncation) -> Result<ValueWithError> {
    let rho = covering_radius(z)?;
    let k = riesz_weight(d, s, z.y);
    let bound = |r: f64| {
        if d == Derivative::Value {
            discrepancy(s, rho, r)
        } else {
            k * riesz_tail(s, rho, r)
        }
    };
    let cap = radius_cap(t);
    let mut r = 4.0 * rho.max(1.0);
    while bound(r) > t.abs_tol && r < cap {
        r = (r * 1.25).min(cap);
    }
    let tail = bound(r);
    if tail > t.abs_tol {
        return Err(Error::ToleranceNotMet {
            achieved: tail,
            requested: t.abs_tol,
            terms: r as usize,
        });
    }
    let (x, y) = (z.x, z.y);
    let r2 = r * r;
    let m_max = (r / y.sqrt()).floor() as i64;
    let mut acc = Accumulator::new();
    for m in -m_max..=m_max {
        let mf = m as f64;
        let rest = r2 - mf * mf * y;
        if rest < 0.0 {
            continue;
        }
        let w = (y * rest).sqrt();
        let lo = (-mf * x - w).ceil() as i64;
        let hi = (-mf * x + w).floor() as i64;
        for n in lo..=hi {
            if m == 0 && n == 0 {
                continue;
            }
            let u = n as f64 + mf * x;
            let q = u * u / y + mf * mf * y;
            if q > r2 {
                continue;
            }
            let g0 = (-s * q.ln()).exp();
            let term = if d == Derivative::Value {
                g0
            } else {
                let g1 = -s * g0 / q;
                let g2 = -(s + 1.0) * g1 / q;
                let g3 = -(s + 2.0) * g2 / q;
                QPartials::at(mf, u, y).chain(d, [g0, g1, g2, g3])
            };
            acc.push(term);
        }
    }
    if d == Derivative::Value {
        acc.push(PI * r.powf(2.0 - 2.0 * s) / (s - 1.0));
    }
    Ok(ValueWithError::new(acc.value(), tail + acc.rounding()))
}

/// `ζ(s; z) = sum_{(m,n) != 0} y^s / |mz+n|^{2s}`, summed over the disc
/// `|p| <= R` with the continuum remainder `π R^{2-2s}/(s-1)` added back.
/// For `s < 1.25` the Mellin representation is used instead.
pub fn zeta_direct(s: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    check_s(s)?;
    let z = UpperHalfPoint::new(z.x, z.y)?;
    if s < 1.25 {
        return super::mellin::zeta_mellin(s, z, t);
    }
    riesz_sum(s, z, Derivative::Value, t)
}

/// Termwise derivative of the direct Riesz sum. The error bound is the
/// majorant of the omitted terms, which decays only like `R^{2-2s}`.
pub fn zeta_termwise(
    s: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    check_s(s)?;
    let z = UpperHalfPoint::new(z.x, z.y)?;
    riesz_sum(s, z, d, t)
}
