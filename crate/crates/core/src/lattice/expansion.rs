//! Expansion of the lattice theta function in the 1-d theta function:
//! `θ(α; z) = sqrt(y/α) sum_n exp(-παy n²) ϑ(y/α; n x)`, and its termwise
//! derivatives in `x` and `y`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::modular::UpperHalfPoint;
use crate::numeric::{gaussian_tail, positive_moment, Accumulator};
use crate::theta1d::{self, sup_abs, Theta1dKind, Theta1dPoint};
use crate::{Truncation, ValueWithError};

use super::{check_alpha, Derivative};

/// One series `c sum_{n>=1} n^p exp(-παy n²) ∂ϑ(y/α; n x)`; power-zero
/// series also carry the `n = 0` term with weight `1/2`.
#[derive(Clone, Copy, Debug)]
struct Piece {
    coef: f64,
    power: i32,
    kind: Theta1dKind,
}

fn pieces(alpha: f64, y: f64, d: Derivative) -> Vec<Piece> {
    use Theta1dKind::*;
    let p = |coef: f64, power: i32, kind: Theta1dKind| Piece { coef, power, kind };
    let sx = (y / alpha).sqrt();
    match d {
        Derivative::Value => vec![p(2.0 * sx, 0, Value)],
        Derivative::X => vec![p(2.0 * sx, 1, DY)],
        Derivative::Y => vec![
            p(1.0 / (alpha * y).sqrt(), 0, Value),
            p(-2.0 * sx * alpha * PI, 2, Value),
            p(2.0 * sx / alpha, 0, DX),
        ],
        Derivative::XY => vec![
            p(1.0 / (alpha * y).sqrt(), 1, DY),
            p(-2.0 * PI * (alpha * y).sqrt(), 3, DY),
            p(2.0 * alpha.powf(-1.5) * y.sqrt(), 1, DXY),
        ],
        Derivative::XYY => vec![
            p(-0.5 * alpha.powf(-0.5) * y.powf(-1.5), 1, DY),
            p(-2.0 * PI * (alpha / y).sqrt(), 3, DY),
            p(2.0 * PI * PI * alpha.powf(1.5) * y.sqrt(), 5, DY),
            p(2.0 * alpha.powf(-1.5) / y.sqrt(), 1, DXY),
            p(-4.0 * PI * (y / alpha).sqrt(), 3, DXY),
            p(2.0 * alpha.powf(-2.5) * y.sqrt(), 1, DXXY),
        ],
    }
}

/// `θ(α; z)` through the 1-d expansion.
pub fn theta_expansion(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    theta_expansion_derivative(alpha, z, Derivative::Value, t)
}

/// `∂²θ/∂x∂y`.
pub fn theta_xy(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    theta_expansion_derivative(alpha, z, Derivative::XY, t)
}

/// `∂³θ/∂x∂y²`.
pub fn theta_xyy(alpha: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    theta_expansion_derivative(alpha, z, Derivative::XYY, t)
}

pub fn theta_expansion_derivative(
    alpha: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    check_alpha(alpha)?;
    let z = UpperHalfPoint::new(z.x, z.y)?;
    let width = z.y / alpha;
    let beta = PI * alpha * z.y;
    let pieces = pieces(alpha, z.y, d);

    // Weight of the 1-d errors in the total; the inner tolerance is never
    // looser than the outer one.
    let weight: f64 = pieces
        .iter()
        .map(|p| {
            p.coef.abs()
                * (if p.power == 0 { 0.5 } else { 0.0 } + positive_moment(p.power as f64, beta))
        })
        .sum();
    let inner = Truncation {
        abs_tol: t.abs_tol.min(t.abs_tol / (2.0 * weight)),
        max_terms: t.max_terms.max(64),
    };
    let sups: Vec<f64> = pieces.iter().map(|p| sup_abs(width, p.kind)).collect();
    let theta = |kind: Theta1dKind, phase: f64| -> Result<ValueWithError> {
        theta1d::evaluate(Theta1dPoint::new(width, phase)?, kind, inner)
    };

    let mut acc = Accumulator::new();
    let mut err = 0.0;
    for p in pieces.iter().filter(|p| p.power == 0) {
        let v = theta(p.kind, 0.0)?;
        acc.push(0.5 * p.coef * v.value);
        err += 0.5 * p.coef.abs() * v.err;
    }
    let mut tail = f64::INFINITY;
    for n in 1..=t.max_terms {
        let nf = n as f64;
        let e = (-beta * nf * nf).exp();
        for p in &pieces {
            let v = theta(p.kind, nf * z.x)?;
            let w = p.coef * nf.powi(p.power) * e;
            acc.push(w * v.value);
            err += w.abs() * v.err;
        }
        tail = pieces
            .iter()
            .zip(&sups)
            .map(|(p, s)| p.coef.abs() * s * gaussian_tail(p.power as f64, beta, nf + 1.0))
            .sum();
        if tail <= t.abs_tol / 2.0 {
            return Ok(ValueWithError::new(
                acc.value(),
                err + tail + acc.rounding(),
            ));
        }
    }
    Err(Error::ToleranceNotMet {
        achieved: tail,
        requested: t.abs_tol,
        terms: t.max_terms,
    })
}
