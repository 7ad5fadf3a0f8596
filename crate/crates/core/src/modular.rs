//! Action of the extended modular group on the upper half-plane and
//! reduction to the fundamental domain `{|z| >= 1, 0 <= x <= 1/2}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Boundary tolerance for `|z| = 1`, `x = 0` and `x = 1/2`.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Reduction gives up after this many generator applications.
pub const MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return domain(format!(
                "point must lie in the upper half-plane (got x={x}, y={y})"
            ));
        }
        Ok(UpperHalfPoint { x, y })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// The hexagonal point `exp(iπ/3)`.
    pub fn hexagonal() -> Self {
        UpperHalfPoint {
            x: 0.5,
            y: 3f64.sqrt() / 2.0,
        }
    }

    /// `exp(i t)`.
    pub fn on_circle(t: f64) -> Self {
        UpperHalfPoint {
            x: t.cos(),
            y: t.sin(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `z -> z + 1`
    #[serde(rename = "T+")]
    TPlus,
    /// `z -> z - 1`
    #[serde(rename = "T-")]
    TMinus,
    /// `z -> -1/z`
    S,
    /// `z -> -conj(z)`
    R,
}

impl Generator {
    pub fn apply(self, z: UpperHalfPoint) -> UpperHalfPoint {
        match self {
            Generator::TPlus => UpperHalfPoint {
                x: z.x + 1.0,
                y: z.y,
            },
            Generator::TMinus => UpperHalfPoint {
                x: z.x - 1.0,
                y: z.y,
            },
            Generator::S => {
                let r = z.norm_sqr();
                UpperHalfPoint {
                    x: -z.x / r,
                    y: z.y / r,
                }
            }
            Generator::R => UpperHalfPoint { x: -z.x, y: z.y },
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Generator::TPlus => "T+",
            Generator::TMinus => "T-",
            Generator::S => "S",
            Generator::R => "R",
        }
    }
}

/// Sequence of generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord {
    pub ops: Vec<Generator>,
}

impl GroupWord {
    pub fn is_identity(&self) -> bool {
        self.ops.is_empty()
    }

    /// Replays the word. Runs of translations are applied as one shift, as
    /// [`reduce`] does, so the arithmetic is reproduced exactly.
    pub fn apply(&self, z: UpperHalfPoint) -> UpperHalfPoint {
        let mut z = z;
        let mut shift = 0i64;
        for &g in &self.ops {
            match g {
                Generator::TPlus => shift += 1,
                Generator::TMinus => shift -= 1,
                _ => {
                    z.x += shift as f64;
                    shift = 0;
                    z = g.apply(z);
                }
            }
        }
        z.x += shift as f64;
        z
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<&str> = self.ops.iter().map(|g| g.symbol()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub point: UpperHalfPoint,
    pub word: GroupWord,
}

pub fn reduce(z: UpperHalfPoint) -> Result<Reduction> {
    let mut z = UpperHalfPoint::new(z.x, z.y)?;
    let mut ops = Vec::new();
    loop {
        // translate x into (-1/2, 1/2]
        let shift = (0.5 - z.x).floor() as i64;
        let shift = if z.x + (shift as f64) <= -0.5 {
            shift + 1
        } else {
            shift
        };
        if shift != 0 {
            let g = if shift > 0 {
                Generator::TPlus
            } else {
                Generator::TMinus
            };
            if ops.len() + shift.unsigned_abs() as usize > MAX_STEPS {
                return Err(Error::NonTermination { steps: MAX_STEPS });
            }
            ops.extend(std::iter::repeat(g).take(shift.unsigned_abs() as usize));
            z.x += shift as f64;
        }
        if z.norm_sqr() < 1.0 - BOUNDARY_TOL {
            ops.push(Generator::S);
            z = Generator::S.apply(z);
            if ops.len() > MAX_STEPS {
                return Err(Error::NonTermination { steps: MAX_STEPS });
            }
            continue;
        }
        break;
    }
    if z.x < 0.0 {
        ops.push(Generator::R);
        z = Generator::R.apply(z);
    }
    Ok(Reduction {
        point: z,
        word: GroupWord { ops },
    })
}

/// The fundamental domain `{|z| > 1, 0 < x < 1/2}` and its closure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FundamentalDomain;

impl FundamentalDomain {
    pub fn contains(&self, z: UpperHalfPoint, closed: bool) -> bool {
        contains(z, closed)
    }
}

pub fn contains(z: UpperHalfPoint, closed: bool) -> bool {
    let r = z.norm_sqr();
    if closed {
        r >= 1.0 - BOUNDARY_TOL && z.x >= -BOUNDARY_TOL && z.x <= 0.5 + BOUNDARY_TOL
    } else {
        r > 1.0 + BOUNDARY_TOL && z.x > BOUNDARY_TOL && z.x < 0.5 - BOUNDARY_TOL
    }
}
