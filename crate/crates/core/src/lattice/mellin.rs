//! `ζ(s; z)` and its derivatives as Mellin transforms of `θ(α; z)`.
//!
//! Splitting at `α = 1` and folding `(0, 1]` onto `[1, ∞)` with
//! `θ(1/α; z) = α θ(α; z)` gives
//!
//! ```text
//! ζ(s; z)  = π^s/Γ(s) [ ∫_1^∞ (θ(α; z) - 1)(α^{s-1} + α^{-s}) dα + 1/(s-1) - 1/s ]
//! ∂ζ(s; z) = π^s/Γ(s)   ∫_1^∞ ∂θ(α; z)      (α^{s-1} + α^{-s}) dα
//! ```
//!
//! The second line uses `∂θ(1/α; z) = α ∂θ(α; z)`, which follows by
//! differentiating the functional equation in `z` at fixed `α`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::modular::{reduce, UpperHalfPoint};
use crate::special::{gamma, gl16};
use crate::{Truncation, ValueWithError};

use super::direct::{gaussian_sum, theta_minus_one, SumMode};
use super::expansion::theta_expansion_derivative;
use super::{check_s, Derivative};

const MAX_PANELS: usize = 4096;
const MAX_UPPER: f64 = 1e4;

pub fn zeta_mellin(s: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    zeta_mellin_derivative(s, z, Derivative::Value, t)
}

pub fn zeta_mellin_derivative(
    s: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    Ok(zeta_mellin_many(&[s], z, d, t)?.remove(0))
}

/// Exponential decay rate of the integrand: `π` times the smallest `Q` over
/// the lattice points that contribute (all nonzero points, or the rows
/// `m != 0` for `x`-derivatives).
fn decay_rate(z: UpperHalfPoint, d: Derivative) -> Result<f64> {
    if !d.has_x() {
        return Ok(PI / reduce(z)?.point.y);
    }
    let mut best = f64::INFINITY;
    let mut m = 1.0f64;
    while m * m * z.y < best {
        let u = (m * z.x - (m * z.x).round()).abs();
        best = best.min(u * u / z.y + m * m * z.y);
        m += 1.0;
    }
    Ok(PI * best)
}

/// Bound on `∫_U^∞ |∂θ(α)| (α^{s-1} + α^{-s}) dα`.
///
/// For `α >= U` every Gaussian satisfies `exp(-παQ) <= exp(-πUQ) exp(-c(α-U))`
/// and the derivative weights grow at most like `(α/U)^k`, so the integrand
/// is below `2 B(U) (α/U)^k α^{s-1} exp(-c(α-U))`, whose log-derivative stays
/// below `-(c - (k+s-1)/U)`.
fn tail_bound(
    z: UpperHalfPoint,
    d: Derivative,
    s: f64,
    c: f64,
    upper: f64,
    tol: f64,
) -> Result<f64> {
    let kappa = c - (d.order() as f64 + s - 1.0) / upper;
    if kappa <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let factor = 2.0 * upper.powf(s - 1.0) / kappa;
    let t = Truncation {
        abs_tol: tol / factor,
        max_terms: 4096,
    };
    let b = gaussian_sum(upper, z, d, SumMode::Majorant, t)?;
    Ok(factor * (b.value + b.err))
}

/// Composite 16-point Gauss-Legendre nodes and weights on `[1, upper]`.
fn panels(upper: f64, count: usize) -> Vec<(f64, f64)> {
    let (x, w) = gl16();
    let h = (upper - 1.0) / count as f64;
    let mut out = Vec::with_capacity(16 * count);
    for p in 0..count {
        let mid = 1.0 + h * (p as f64 + 0.5);
        for (xi, wi) in x.iter().zip(w) {
            out.push((mid + 0.5 * h * xi, 0.5 * h * wi));
        }
    }
    out
}

struct Estimate {
    value: f64,
    node_err: f64,
    abs: f64,
}

/// `∂ζ(s; z)` for several `s` at once; the theta values at the quadrature
/// nodes are shared.
pub fn zeta_mellin_many(
    ss: &[f64],
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<Vec<ValueWithError>> {
    for &s in ss {
        check_s(s)?;
    }
    let z = UpperHalfPoint::new(z.x, z.y)?;
    if ss.is_empty() {
        return Ok(Vec::new());
    }
    // the value is modular invariant, so integrate at the reduced point
    let z = if d == Derivative::Value {
        reduce(z)?.point
    } else {
        z
    };
    let s_max = ss.iter().cloned().fold(f64::MIN, f64::max);
    let prefactors: Vec<f64> = ss.iter().map(|&s| PI.powf(s) / gamma(s)).collect();
    let tol = t.abs_tol / prefactors.iter().cloned().fold(1.0, f64::max);

    let c = decay_rate(z, d)?;
    let mut upper = 1.0 + (41.4 + (s_max + 2.0) * 2f64.ln()) / c;
    let mut tail = tail_bound(z, d, s_max, c, upper, tol)?;
    while tail > tol / 4.0 {
        if upper > MAX_UPPER {
            return Err(Error::ToleranceNotMet {
                achieved: tail,
                requested: t.abs_tol,
                terms: upper as usize,
            });
        }
        upper *= 1.25;
        tail = tail_bound(z, d, s_max, c, upper, tol)?;
    }

    let inner = Truncation {
        abs_tol: 1e-2 * tol / ((upper - 1.0) * 2.0 * upper.powf(s_max - 1.0)),
        max_terms: t.max_terms.max(256),
    };
    let integrand = |alpha: f64| -> Result<ValueWithError> {
        if d == Derivative::Value {
            theta_minus_one(alpha, z, inner)
        } else {
            theta_expansion_derivative(alpha, z, d, inner)
        }
    };
    let estimate = |count: usize| -> Result<Vec<Estimate>> {
        let nodes = panels(upper, count);
        let values = nodes
            .iter()
            .map(|&(a, _)| integrand(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(ss
            .iter()
            .map(|&s| {
                let mut e = Estimate {
                    value: 0.0,
                    node_err: 0.0,
                    abs: 0.0,
                };
                for (&(a, w), v) in nodes.iter().zip(&values) {
                    let k = w * (a.powf(s - 1.0) + a.powf(-s));
                    e.value += k * v.value;
                    e.node_err += k * v.err;
                    e.abs += (k * v.value).abs();
                }
                e
            })
            .collect())
    };

    let mut count = ((c * (upper - 1.0) / 8.0).ceil() as usize).max(2);
    let mut coarse = estimate(count)?;
    loop {
        let fine = estimate(2 * count)?;
        let deltas: Vec<f64> = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a.value - b.value).abs())
            .collect();
        // both estimates carry node errors, so their difference may too
        let settled = deltas
            .iter()
            .zip(coarse.iter().zip(&fine))
            .all(|(delta, (c, f))| {
                *delta <= (tol / 2.0).max(32.0 * f64::EPSILON * f.abs) + c.node_err + f.node_err
            });
        if settled {
            return Ok(ss
                .iter()
                .zip(&fine)
                .zip(deltas.iter().zip(&prefactors))
                .map(|((&s, f), (delta, pre))| {
                    let constant = if d == Derivative::Value {
                        1.0 / (s - 1.0) - 1.0 / s
                    } else {
                        0.0
                    };
                    let err =
                        delta + tail + f.node_err + 8.0 * f64::EPSILON * (f.abs + constant.abs());
                    ValueWithError::new(pre * (f.value + constant), pre * err)
                })
                .collect());
        }
        count *= 2;
        if 2 * count > MAX_PANELS {
            return Err(Error::QuadratureNotConverged {
                delta: deltas.iter().cloned().fold(0.0, f64::max),
                panels: 2 * count,
            });
        }
        coarse = fine;
    }
}
