//! Local minimization of `θ(α; ·)` or `ζ(s; ·)` over the closed fundamental
//! domain.
//!
//! Nelder-Mead on `(x, y)`, with every trial point projected onto the closed
//! domain: `x` is clamped to `[0, 1/2]` and points inside the unit circle are
//! moved vertically onto it. After the first convergence the search restarts
//! from the best point with a small simplex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{reduce, UpperHalfPoint};
use crate::Truncation;

use super::direct::theta_direct;
use super::mellin::zeta_mellin;
use super::{check_alpha, check_s};

const MAX_EVALUATIONS: usize = 100_000;
const DIAMETER_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fn", rename_all = "lowercase")]
pub enum Functional {
    Theta { alpha: f64 },
    Zeta { s: f64 },
}

impl Functional {
    fn check(&self) -> Result<()> {
        match *self {
            Functional::Theta { alpha } => check_alpha(alpha),
            Functional::Zeta { s } => check_s(s),
        }
    }

    pub fn evaluate(&self, z: UpperHalfPoint) -> Result<f64> {
        match *self {
            Functional::Theta { alpha } => {
                Ok(theta_direct(alpha, z, Truncation::with_tol(1e-15))?.value)
            }
            Functional::Zeta { s } => Ok(zeta_mellin(s, z, Truncation::with_tol(1e-14))?.value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub point: UpperHalfPoint,
    pub value: f64,
    pub evaluations: usize,
}

fn project(x: f64, y: f64) -> (f64, f64) {
    let x = x.clamp(0.0, 0.5);
    let y = if x * x + y * y < 1.0 {
        (1.0 - x * x).sqrt()
    } else {
        y
    };
    (x, y)
}

struct Search<'a> {
    f: &'a Functional,
    evaluations: usize,
}

impl Search<'_> {
    fn eval(&mut self, p: [f64; 2]) -> Result<([f64; 2], f64)> {
        if self.evaluations >= MAX_EVALUATIONS {
            return Err(Error::NotConverged {
                evaluations: self.evaluations,
            });
        }
        self.evaluations += 1;
        let (x, y) = project(p[0], p[1]);
        Ok(([x, y], self.f.evaluate(UpperHalfPoint { x, y })?))
    }

    fn nelder_mead(&mut self, start: [f64; 2], step: f64) -> Result<([f64; 2], f64)> {
        let dx = if start[0] > 0.25 { -step } else { step };
        let mut simplex = vec![
            self.eval(start)?,
            self.eval([start[0] + dx, start[1]])?,
            self.eval([start[0], start[1] + step])?,
        ];
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].0;
            let diameter = simplex
                .iter()
                .map(|(p, _)| (p[0] - best[0]).hypot(p[1] - best[1]))
                .fold(0.0, f64::max);
            if diameter < DIAMETER_TOL {
                return Ok(simplex[0]);
            }
            let centroid = [
                (simplex[0].0[0] + simplex[1].0[0]) / 2.0,
                (simplex[0].0[1] + simplex[1].0[1]) / 2.0,
            ];
            let worst = simplex[2];
            let along = |t: f64| {
                [
                    centroid[0] + t * (worst.0[0] - centroid[0]),
                    centroid[1] + t * (worst.0[1] - centroid[1]),
                ]
            };
            let reflected = self.eval(along(-1.0))?;
            if reflected.1 < simplex[0].1 {
                let expanded = self.eval(along(-2.0))?;
                simplex[2] = if expanded.1 < reflected.1 {
                    expanded
                } else {
                    reflected
                };
                continue;
            }
            if reflected.1 < simplex[1].1 {
                simplex[2] = reflected;
                continue;
            }
            let contracted = if reflected.1 < worst.1 {
                self.eval(along(-0.5))?
            } else {
                self.eval(along(0.5))?
            };
            if contracted.1 < worst.1.min(reflected.1) {
                simplex[2] = contracted;
                continue;
            }
            for i in 1..3 {
                let p = simplex[i].0;
                simplex[i] = self.eval([(p[0] + best[0]) / 2.0, (p[1] + best[1]) / 2.0])?;
            }
        }
    }
}

/// Minimizes the functional starting from the reduction of `start`.
pub fn minimize(f: Functional, start: UpperHalfPoint) -> Result<Minimum> {
    f.check()?;
    let z = reduce(start)?.point;
    let mut search = Search {
        f: &f,
        evaluations: 0,
    };
    let (p, _) = search.nelder_mead([z.x, z.y], 0.05)?;
    let (p, value) = search.nelder_mead(p, 1e-3)?;
    Ok(Minimum {
        point: UpperHalfPoint { x: p[0], y: p[1] },
        value,
        evaluations: search.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_to_hexagonal(z: UpperHalfPoint) -> bool {
        let h = UpperHalfPoint::hexagonal();
        (z.x - h.x).abs() <= 1e-6 && (z.y - h.y).abs() <= 1e-6
    }

    #[test]
    fn projection_lands_in_closed_domain() {
        for &(x, y) in &[(-0.3, 0.2), (0.7, 3.0), (0.2, 0.5), (0.4, 2.0)] {
            let (px, py) = project(x, y);
            assert!(crate::modular::contains(
                UpperHalfPoint { x: px, y: py },
                true
            ));
        }
    }

    #[test]
    fn theta_reaches_hexagonal_point() {
        let m = minimize(
            Functional::Theta { alpha: 1.0 },
            UpperHalfPoint { x: 0.3, y: 1.1 },
        )
        .unwrap();
        assert!(close_to_hexagonal(m.point), "{m:?}");
    }

    #[test]
    fn zeta_reaches_hexagonal_point() {
        let m = minimize(
            Functional::Zeta { s: 2.0 },
            UpperHalfPoint { x: 0.1, y: 2.0 },
        )
        .unwrap();
        assert!(close_to_hexagonal(m.point), "{m:?}");
    }

    #[test]
    fn hexagonal_start_is_fixed() {
        let f = Functional::Theta { alpha: 2.0 };
        let h = UpperHalfPoint::hexagonal();
        let m = minimize(f, h).unwrap();
        assert!(close_to_hexagonal(m.point));
        assert!((m.value - f.evaluate(h).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameter() {
        assert!(matches!(
            minimize(
                Functional::Zeta { s: 0.5 },
                UpperHalfPoint { x: 0.0, y: 1.0 }
            ),
            Err(Error::InvalidDomain(_))
        ));
    }
}
