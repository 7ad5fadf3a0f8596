//! Truncation policy, values with error bounds, and the tail majorants used by
//! every series in the crate.

use serde::{Deserialize, Serialize};

use crate::special::gamma;

/// Stopping rule for series evaluation.
///
/// A series is summed until its a-posteriori truncation bound drops below
/// `abs_tol`, but never past index `max_terms`. For the two-dimensional
/// lattice sums `max_terms` caps the row index and the cut-off radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            abs_tol: 1e-13,
            max_terms: 64,
        }
    }
}

impl Truncation {
    pub fn new(abs_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(abs_tol >= 0.0) || max_terms == 0 {
            return crate::error::domain(format!(
                "truncation needs abs_tol >= 0 and max_terms > 0 (got {abs_tol}, {max_terms})"
            ));
        }
        Ok(Truncation { abs_tol, max_terms })
    }

    pub fn with_tol(abs_tol: f64) -> Self {
        Truncation {
            abs_tol,
            ..Default::default()
        }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Truncation { max_terms, ..self }
    }
}

/// A computed value with a nonnegative bound on its absolute error.
///
/// `err` covers the series truncation and an estimate of the floating-point
/// rounding accumulated while summing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValueWithError {
    pub value: f64,
    pub err: f64,
}

impl ValueWithError {
    pub const ZERO: ValueWithError = ValueWithError {
        value: 0.0,
        err: 0.0,
    };

    pub fn new(value: f64, err: f64) -> Self {
        ValueWithError {
            value,
            err: err.abs(),
        }
    }

    pub fn exact(value: f64) -> Self {
        ValueWithError { value, err: 0.0 }
    }

    pub fn scale(self, c: f64) -> Self {
        ValueWithError {
            value: self.value * c,
            err: self.err * c.abs(),
        }
    }

    pub fn add(self, other: Self) -> Self {
        ValueWithError {
            value: self.value + other.value,
            err: self.err + other.err,
        }
    }

    pub fn sub(self, other: Self) -> Self {
        ValueWithError {
            value: self.value - other.value,
            err: self.err + other.err,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        ValueWithError {
            value: self.value * other.value,
            err: self.err * other.value.abs() + other.err * self.value.abs() + self.err * other.err,
        }
    }

    /// First-order propagation for `self / other`.
    pub fn div(self, other: Self) -> Self {
        let q = self.value / other.value;
        ValueWithError {
            value: q,
            err: (self.err + q.abs() * other.err) / other.value.abs(),
        }
    }

    /// True when the value is indistinguishable from zero at its own error.
    pub fn is_degenerate(&self) -> bool {
        self.value.abs() <= 10.0 * self.err
    }
}

/// Neumaier-compensated accumulator that also tracks `sum |term|` for the
/// rounding estimate.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    count: usize,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += term.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Each term carries a few ulps from `exp`, `sin` and the polynomial
    /// weight; compensated summation adds at most a couple more.
    pub fn rounding(&self) -> f64 {
        8.0 * f64::EPSILON * self.abs_sum
    }
}

/// Upper bound for `sum_{k>=0} g(t0 + k)` with `g(t) = t^p exp(-beta t^2)`.
///
/// The bound is `g(t0) / (1 - r)` where `r = ((t0+1)/t0)^p exp(-beta (2 t0 + 1))`
/// is the largest ratio of consecutive terms from `t0` on. It is valid once
/// `g` is decreasing on `[t0, inf)`, i.e. `t0^2 >= p / (2 beta)`, and `r < 1`;
/// otherwise `+inf` is returned so callers keep adding terms.
pub fn gaussian_tail(p: f64, beta: f64, t0: f64) -> f64 {
    gaussian_tail_scaled(p, beta, t0, 0.0)
}

/// `exp(shift) * gaussian_tail(p, beta, t0)`, without overflow in the factor.
pub fn gaussian_tail_scaled(p: f64, beta: f64, t0: f64, shift: f64) -> f64 {
    if t0 <= 0.0 || beta <= 0.0 || t0 * t0 < p / (2.0 * beta) {
        return f64::INFINITY;
    }
    let r = ((t0 + 1.0) / t0).powf(p) * (-beta * (2.0 * t0 + 1.0)).exp();
    if r >= 1.0 {
        return f64::INFINITY;
    }
    (p * t0.ln() - beta * t0 * t0 + shift).exp() / (1.0 - r)
}

/// `sup_Y sum_{n in Z} |n - Y|^p exp(-beta (n - Y)^2)`, bounded by
/// twice the maximum of the profile plus its integral over the line.
pub fn shifted_moment_sup(p: f64, beta: f64) -> f64 {
    let peak = if p == 0.0 {
        1.0
    } else {
        (p / (2.0 * beta * std::f64::consts::E)).powf(p / 2.0)
    };
    2.0 * peak + gamma((p + 1.0) / 2.0) / beta.powf((p + 1.0) / 2.0)
}

/// `sum_{n>=1} n^p exp(-beta n^2)`, summed until the tail bound is below
/// `1e-16` of the partial sum.
pub fn positive_moment(p: f64, beta: f64) -> f64 {
    let mut acc = 0.0;
    for n in 1..10_000 {
        let t = n as f64;
        acc += t.powf(p) * (-beta * t * t).exp();
        let tail = gaussian_tail(p, beta, t + 1.0);
        if tail <= 1e-16 * acc || tail == 0.0 {
            return acc + tail;
        }
    }
    acc
}
