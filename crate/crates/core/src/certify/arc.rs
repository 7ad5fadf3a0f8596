//! Checks that the minimum of `θ_x`, `θ_xy`, `ζ_x` or `ζ_xy` over the closed
//! fundamental domain is attained on the arc `{e^{it}: π/3 <= t <= π/2}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::modular::UpperHalfPoint;
use crate::Truncation;

use super::{evaluate_point, Sample, Target};

/// Above this height the grid steps by `COARSE_STEP` instead of `h`.
const FINE_TOP: f64 = 2.0;
const COARSE_STEP: f64 = 0.1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcReport {
    pub target: Target,
    pub param: f64,
    pub step: f64,
    pub y_cap: f64,
    pub samples: usize,
    pub domain_min: f64,
    pub domain_err: f64,
    pub domain_at: (f64, f64),
    pub arc_min: f64,
    pub arc_err: f64,
    pub arc_at: (f64, f64),
    /// Distance from the domain minimizer to the arc.
    pub distance_to_arc: f64,
    pub passed: bool,
}

/// Columns `x = 0, h, ..., 1/2`; in each column the first row lies on the
/// arc, then rows step by `h` up to `y = 2` and by `0.1` up to `y_cap`.
pub fn arc_grid(h: f64, y_cap: f64) -> Vec<Vec<UpperHalfPoint>> {
    let columns = (0.5 / h).round() as usize;
    (0..=columns)
        .map(|i| {
            let x = (i as f64 * h).min(0.5);
            let bottom = (1.0 - x * x).sqrt();
            let mut col = vec![UpperHalfPoint { x, y: bottom }];
            let mut k = 1;
            loop {
                let y = bottom + k as f64 * h;
                if y >= FINE_TOP.min(y_cap) {
                    break;
                }
                col.push(UpperHalfPoint { x, y });
                k += 1;
            }
            let mut y = FINE_TOP.max(bottom + h);
            while y <= y_cap + 1e-12 {
                col.push(UpperHalfPoint { x, y });
                y += COARSE_STEP;
            }
            col
        })
        .collect()
}

/// Index of the minimizer; values within the combined error of the minimum
/// count as ties, which go to the point nearest the arc.
fn argmin(points: &[(UpperHalfPoint, f64, f64)]) -> usize {
    let best = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .expect("nonempty grid");
    let (_, v0, e0) = points[best];
    points
        .iter()
        .enumerate()
        .filter(|(_, (_, v, e))| *v <= v0 + e0 + e)
        .min_by(|a, b| {
            let da = a.1 .0.norm_sqr().sqrt() - 1.0;
            let db = b.1 .0.norm_sqr().sqrt() - 1.0;
            da.total_cmp(&db).then(a.1 .1.total_cmp(&b.1 .1))
        })
        .map(|(i, _)| i)
        .unwrap_or(best)
}

/// Grid minimum over the closed domain (below `y_cap`) against the minimum
/// over the arc. Passes when both agree within their combined error and the
/// domain minimizer lies within one grid step of the arc.
pub fn arc_restriction_check(
    target: Target,
    param: f64,
    h: f64,
    y_cap: f64,
    t: Truncation,
) -> Result<ArcReport> {
    Ok(arc_sweep(target, param, h, y_cap, t)?.0)
}

/// [`arc_restriction_check`] together with every grid sample.
pub fn arc_sweep(
    target: Target,
    param: f64,
    h: f64,
    y_cap: f64,
    t: Truncation,
) -> Result<(ArcReport, Vec<Sample>)> {
    if !matches!(
        target,
        Target::ThetaX | Target::ThetaXY | Target::ZetaX | Target::ZetaXY
    ) {
        return domain(format!(
            "arc check covers theta_x, theta_xy, zeta_x, zeta_xy (got {target})"
        ));
    }
    target.check_param(param)?;
    if !(h > 0.0 && h <= 0.1) || !(y_cap >= FINE_TOP) {
        return domain(format!(
            "arc check needs 0 < h <= 0.1 and y_cap >= 2 (got h={h}, y_cap={y_cap})"
        ));
    }
    let grid = arc_grid(h, y_cap);
    let points: Vec<UpperHalfPoint> = grid.iter().flatten().copied().collect();
    let values: Vec<Result<(UpperHalfPoint, f64, f64)>> = points
        .par_iter()
        .map(|&z| {
            let v = evaluate_point(target, &[param], z, t)?[0];
            Ok((z, v.value, v.err))
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;

    let mut arc = Vec::with_capacity(grid.len());
    let mut offset = 0;
    for col in &grid {
        arc.push(values[offset]);
        offset += col.len();
    }
    let d = values[argmin(&values)];
    let a = arc[argmin(&arc)];
    let distance = d.0.norm_sqr().sqrt() - 1.0;
    let passed = (d.1 - a.1).abs() <= d.2 + a.2 && distance <= h;
    let report = ArcReport {
        target,
        param,
        step: h,
        y_cap,
        samples: values.len(),
        domain_min: d.1,
        domain_err: d.2,
        domain_at: (d.0.x, d.0.y),
        arc_min: a.1,
        arc_err: a.2,
        arc_at: (a.0.x, a.0.y),
        distance_to_arc: distance,
        passed,
    };
    let samples = values
        .iter()
        .map(|&(z, value, err)| Sample {
            x: z.x,
            y: z.y,
            value,
            err,
        })
        .collect();
    Ok((report, samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = arc_grid(1e-2, 10.0);
        assert_eq!(g.len(), 51);
        for col in &g {
            assert!((col[0].norm_sqr() - 1.0).abs() < 1e-14);
            assert!(col.windows(2).all(|w| w[1].y > w[0].y));
            assert!(col.last().unwrap().y <= 10.0 + 1e-9);
        }
        assert_eq!(g[50][0].x, 0.5);
    }

    #[test]
    fn ties_go_to_the_arc() {
        let p = |y: f64| UpperHalfPoint { x: 0.0, y };
        let pts = vec![
            (p(3.0), 0.0, 1e-15),
            (p(1.0), 1e-16, 1e-15),
            (p(2.0), 5.0, 0.0),
        ];
        assert_eq!(argmin(&pts), 1);
    }

    #[test]
    fn theta_x_coarse() {
        let r =
            arc_restriction_check(Target::ThetaX, 1.0, 0.05, 4.0, Truncation::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.domain_min < 0.0);
    }

    #[test]
    fn rejects_other_targets() {
        assert!(
            arc_restriction_check(Target::ThetaY, 1.0, 0.05, 4.0, Truncation::default()).is_err()
        );
        assert!(
            arc_restriction_check(Target::ZetaX, 0.5, 0.05, 4.0, Truncation::default()).is_err()
        );
    }
}
