//! The lattice theta function `θ(α; z)` and Epstein zeta function `ζ(s; z)`
//! of the unit-area lattice `y^{-1/2}(Z ⊕ zZ)`, with their `x`/`y` partials.
//!
//! Three evaluation routes are provided: direct lattice sums
//! ([`theta_direct`], [`zeta_direct`]), the expansion in the 1-d theta function
//! ([`theta_expansion`], [`theta_xy`], [`theta_xyy`]) and the Mellin transform
//! relating the two functions ([`zeta_mellin`], [`zeta_xy`], [`zeta_xyy`]).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::modular::UpperHalfPoint;
use crate::{Truncation, ValueWithError};

pub(crate) mod direct;
mod expansion;
mod mellin;
mod minimize;

pub use direct::{
    theta_direct, theta_direct_derivative, theta_minus_one, zeta_direct, zeta_termwise,
};
pub use expansion::{theta_expansion, theta_expansion_derivative, theta_xy, theta_xyy};
pub use mellin::{zeta_mellin, zeta_mellin_derivative, zeta_mellin_many};
pub use minimize::{minimize, Functional, Minimum};

/// Partial derivative with respect to the lattice parameter `z = x + iy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Derivative {
    Value,
    X,
    Y,
    XY,
    XYY,
}

impl Derivative {
    pub const ALL: [Derivative; 5] = [
        Derivative::Value,
        Derivative::X,
        Derivative::Y,
        Derivative::XY,
        Derivative::XYY,
    ];

    /// Total order of differentiation.
    pub fn order(self) -> u32 {
        match self {
            Derivative::Value => 0,
            Derivative::X | Derivative::Y => 1,
            Derivative::XY => 2,
            Derivative::XYY => 3,
        }
    }

    /// True when the derivative involves `x`; such derivatives vanish on the
    /// row `m = 0` of the lattice.
    pub fn has_x(self) -> bool {
        matches!(self, Derivative::X | Derivative::XY | Derivative::XYY)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        domain(format!("alpha must be positive (got {alpha})"))
    }
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if s > 1.0 && s.is_finite() {
        Ok(())
    } else {
        domain(format!("s must exceed 1 (got {s})"))
    }
}

/// `∂θ(α; z)` through the expansion. For `α < 1` the value is obtained from
/// `∂θ(α; z) = ∂θ(1/α; z) / α`, where the expansion converges faster.
pub fn theta_derivative(
    alpha: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    check_alpha(alpha)?;
    if alpha < 1.0 {
        Ok(theta_expansion_derivative(1.0 / alpha, z, d, t)?.scale(1.0 / alpha))
    } else {
        theta_expansion_derivative(alpha, z, d, t)
    }
}

/// `∂ζ(s; z)` through the Mellin transform.
pub fn zeta_derivative(
    s: f64,
    z: UpperHalfPoint,
    d: Derivative,
    t: Truncation,
) -> Result<ValueWithError> {
    zeta_mellin_derivative(s, z, d, t)
}

pub fn zeta_xy(s: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    zeta_mellin_derivative(s, z, Derivative::XY, t)
}

pub fn zeta_xyy(s: f64, z: UpperHalfPoint, t: Truncation) -> Result<ValueWithError> {
    zeta_mellin_derivative(s, z, Derivative::XYY, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        let t = Truncation::default();
        assert!(theta_direct(0.0, p(0.0, 1.0), t).is_err());
        assert!(theta_xy(-1.0, p(0.0, 1.0), t).is_err());
        assert!(zeta_direct(1.0, p(0.0, 1.0), t).is_err());
        assert!(zeta_mellin(0.5, p(0.0, 1.0), t).is_err());
    }

    #[test]
    fn derivative_functional_equation() {
        // ∂θ(1/α) = α ∂θ(α), checked on both routes
        let t = Truncation::with_tol(1e-13);
        let z = p(0.21, 0.93);
        for d in Derivative::ALL {
            for alpha in [0.4, 1.7, 3.0] {
                let a = theta_direct_derivative(1.0 / alpha, z, d, t).unwrap();
                let b = theta_direct_derivative(alpha, z, d, t)
                    .unwrap()
                    .scale(alpha);
                assert!(
                    (a.value - b.value).abs() <= a.err + b.err + 1e-13,
                    "{d:?} α={alpha}"
                );
                let c = theta_derivative(1.0 / alpha, z, d, t).unwrap();
                assert!(
                    (c.value - a.value).abs() <= c.err + a.err + 1e-13,
                    "{d:?} α={alpha}"
                );
            }
        }
    }

    #[test]
    fn zeta_xy_routes_agree() {
        let z = p(0.25, 1.0);
        let m = zeta_xy(3.0, z, Truncation::with_tol(1e-12)).unwrap();
        let w = zeta_termwise(3.0, z, Derivative::XY, Truncation::with_tol(1e-6)).unwrap();
        assert!((m.value - w.value).abs() <= m.err + w.err, "{m:?} vs {w:?}");
        assert!(m.value > 0.0);
        let v = zeta_xyy(2.0, p(0.25, 1.2), Truncation::default()).unwrap();
        assert!(v.value < -v.err);
    }

    #[test]
    fn zeta_xy_matches_differences() {
        let t = Truncation::with_tol(1e-13);
        let f = |x: f64, y: f64| zeta_mellin(3.0, p(x, y), t).unwrap().value;
        let (x, y, h) = (0.2, 1.1, 1e-3);
        let fd =
            (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h);
        let v = zeta_xy(3.0, p(x, y), t).unwrap().value;
        assert!(((v - fd) / v).abs() < 1e-5, "{v} vs {fd}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn modular_invariance(x in -0.5f64..0.5, y in 0.5f64..2.0, alpha in 0.5f64..2.0) {
            let t = Truncation::default();
            let z = p(x, y);
            let v = theta_direct(alpha, z, t).unwrap();
            let r = z.norm_sqr();
            for w in [p(x + 1.0, y), p(-x / r, y / r), p(-x, y)] {
                let u = theta_direct(alpha, w, t).unwrap();
                prop_assert!((u.value - v.value).abs() <= u.err + v.err + 1e-13);
            }
        }

        #[test]
        fn expansion_matches_direct(x in 0.0f64..0.5, y in 0.6f64..3.0, alpha in 0.5f64..3.0) {
            let t = Truncation::with_tol(1e-11);
            let a = theta_expansion(alpha, p(x, y), t).unwrap();
            let b = theta_direct(alpha, p(x, y), t).unwrap();
            prop_assert!((a.value - b.value).abs() <= a.err + b.err);
        }
    }
}
