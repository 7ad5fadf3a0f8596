//! The one-dimensional theta function
//! `θ(X; Y) = sum_n exp(-π n² X) exp(2π i n Y)` and its derivatives.
//!
//! Two representations are available: the q-series in `exp(-π X)` and the
//! Poisson-transformed sum `X^{-1/2} sum_n exp(-π (n - Y)² / X)`. The
//! q-series is used for `X >= 1`, the Poisson form below.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{gaussian_tail, positive_moment, shifted_moment_sup, Accumulator};
use crate::{Truncation, ValueWithError};

/// Argument of the 1-d theta function: Gaussian width `X > 0` and phase `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theta1dPoint {
    pub width: f64,
    pub phase: f64,
}

impl Theta1dPoint {
    pub fn new(width: f64, phase: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() || !phase.is_finite() {
            return domain(format!(
                "theta1d needs X > 0 and finite Y (got X={width}, Y={phase})"
            ));
        }
        Ok(Theta1dPoint { width, phase })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    QSeries,
    Poisson,
}

impl Representation {
    pub fn for_width(width: f64) -> Self {
        if width >= 1.0 {
            Representation::QSeries
        } else {
            Representation::Poisson
        }
    }
}

/// Which partial derivative to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theta1dKind {
    Value,
    DX,
    DY,
    DXY,
    DXXY,
}

impl Theta1dKind {
    pub const ALL: [Theta1dKind; 5] = [
        Theta1dKind::Value,
        Theta1dKind::DX,
        Theta1dKind::DY,
        Theta1dKind::DXY,
        Theta1dKind::DXXY,
    ];

    /// Odd in `Y`: vanishes at `Y ∈ (1/2) Z`.
    pub fn is_odd(self) -> bool {
        matches!(self, Theta1dKind::DY | Theta1dKind::DXY | Theta1dKind::DXXY)
    }

    /// q-series `c0 + coef * sum_{n>=1} n^p exp(-π n² X) trig(2π n Y)`;
    /// returns `(c0, coef, p)`; `trig` is `sin` for odd kinds, else `cos`.
    fn q_shape(self) -> (f64, f64, i32) {
        match self {
            Theta1dKind::Value => (1.0, 2.0, 0),
            Theta1dKind::DX => (0.0, -2.0 * PI, 2),
            Theta1dKind::DY => (0.0, -4.0 * PI, 1),
            Theta1dKind::DXY => (0.0, 4.0 * PI * PI, 3),
            Theta1dKind::DXXY => (0.0, -4.0 * PI.powi(3), 5),
        }
    }

    /// Poisson form `sum_n P(u) exp(-π u² / X)`, `u = n - Y`, as monomials
    /// `(coefficient, power of u)` of `P`.
    fn poisson_shape(self, x: f64) -> Vec<(f64, i32)> {
        match self {
            Theta1dKind::Value => vec![(x.powf(-0.5), 0)],
            Theta1dKind::DX => vec![(-0.5 * x.powf(-1.5), 0), (PI * x.powf(-2.5), 2)],
            Theta1dKind::DY => vec![(2.0 * PI * x.powf(-1.5), 1)],
            Theta1dKind::DXY => vec![
                (-3.0 * PI * x.powf(-2.5), 1),
                (2.0 * PI * PI * x.powf(-3.5), 3),
            ],
            Theta1dKind::DXXY => vec![
                (7.5 * PI * x.powf(-3.5), 1),
                (-10.0 * PI * PI * x.powf(-4.5), 3),
                (2.0 * PI.powi(3) * x.powf(-5.5), 5),
            ],
        }
    }
}

pub fn theta1d(p: Theta1dPoint, t: Truncation) -> Result<ValueWithError> {
    evaluate(p, Theta1dKind::Value, t)
}

pub fn theta1d_dx(p: Theta1dPoint, t: Truncation) -> Result<ValueWithError> {
    evaluate(p, Theta1dKind::DX, t)
}

pub fn theta1d_dy(p: Theta1dPoint, t: Truncation) -> Result<ValueWithError> {
    evaluate(p, Theta1dKind::DY, t)
}

pub fn theta1d_dxy(p: Theta1dPoint, t: Truncation) -> Result<ValueWithError> {
    evaluate(p, Theta1dKind::DXY, t)
}

pub fn theta1d_dxxy(p: Theta1dPoint, t: Truncation) -> Result<ValueWithError> {
    evaluate(p, Theta1dKind::DXXY, t)
}

/// Evaluates with the representation chosen by [`Representation::for_width`].
pub fn evaluate(p: Theta1dPoint, kind: Theta1dKind, t: Truncation) -> Result<ValueWithError> {
    evaluate_with(p, kind, Representation::for_width(p.width), t)
}

pub fn evaluate_with(
    p: Theta1dPoint,
    kind: Theta1dKind,
    rep: Representation,
    t: Truncation,
) -> Result<ValueWithError> {
    let p = Theta1dPoint::new(p.width, p.phase)?;
    let phase = p.phase.rem_euclid(1.0);
    match rep {
        Representation::QSeries => q_series(p.width, phase, kind, t),
        Representation::Poisson => poisson(p.width, phase, kind, t),
    }
}

fn q_series(x: f64, y: f64, kind: Theta1dKind, t: Truncation) -> Result<ValueWithError> {
    let (c0, coef, pow) = kind.q_shape();
    let beta = PI * x;
    let mut acc = Accumulator::new();
    let mut slack = 0.0;
    if c0 != 0.0 {
        acc.push(c0);
    }
    let mut tail = f64::INFINITY;
    for n in 1..=t.max_terms {
        let nf = n as f64;
        let arg = 2.0 * PI * nf * y;
        let trig = if kind.is_odd() { arg.sin() } else { arg.cos() };
        let w = coef * nf.powi(pow) * (-beta * nf * nf).exp();
        acc.push(w * trig);
        // the rounded argument shifts the trig factor by up to |arg| ulps
        slack += w.abs() * arg * f64::EPSILON;
        tail = coef.abs() * gaussian_tail(pow as f64, beta, nf + 1.0);
        if tail <= t.abs_tol {
            return Ok(ValueWithError::new(
                acc.value(),
                tail + acc.rounding() + slack,
            ));
        }
    }
    Err(Error::ToleranceNotMet {
        achieved: tail,
        requested: t.abs_tol,
        terms: t.max_terms,
    })
}

fn poisson(x: f64, y: f64, kind: Theta1dKind, t: Truncation) -> Result<ValueWithError> {
    let shape = kind.poisson_shape(x);
    let beta = PI / x;
    // term and the rounding of its exponent, relative error about beta u² ulps
    let term = |n: i64| -> (f64, f64) {
        let u = n as f64 - y;
        let poly: f64 = shape.iter().map(|&(c, k)| c * u.powi(k)).sum();
        let v = poly * (-beta * u * u).exp();
        (v, v.abs() * 2.0 * beta * u * u * f64::EPSILON)
    };
    let mut acc = Accumulator::new();
    let mut slack = 0.0;

    let mut tail = f64::INFINITY;
    // After step N the window is n ∈ [-N, N+1]; every omitted |n - Y| is at least N+1.
    for step in 0..=t.max_terms {
        let n = step as i64;
        for m in [-n, n + 1] {
            let (v, e) = term(m);
            acc.push(v);
            slack += e;
        }
        let t0 = step as f64 + 1.0;
        tail = 2.0
            * shape
                .iter()
                .map(|&(c, k)| c.abs() * gaussian_tail(k as f64, beta, t0))
                .sum::<f64>();
        if tail <= t.abs_tol {
            return Ok(ValueWithError::new(
                acc.value(),
                tail + acc.rounding() + slack,
            ));
        }
    }
    Err(Error::ToleranceNotMet {
        achieved: tail,
        requested: t.abs_tol,
        terms: t.max_terms,
    })
}

/// Uniform bound `sup_Y |∂θ(X; Y)|` for the given derivative, the smaller of
/// the q-series and Poisson majorants.
pub fn sup_abs(width: f64, kind: Theta1dKind) -> f64 {
    let (c0, coef, pow) = kind.q_shape();
    let q_bound = c0.abs() + coef.abs() * positive_moment(pow as f64, PI * width);
    let p_bound: f64 = kind
        .poisson_shape(width)
        .iter()
        .map(|&(c, k)| c.abs() * shifted_moment_sup(k as f64, PI / width))
        .sum();
    // both majorants are attained at Y = 0 for the value; allow for rounding
    q_bound.min(p_bound) * (1.0 + 1e-12)
}
