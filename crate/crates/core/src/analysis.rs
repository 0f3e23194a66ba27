//! Experiment harness: the built-in test function, Lebesgue constant
//! estimation and convergence studies over a sequence of node sets.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::FrequencyPair;
use crate::error::Result;
use crate::interpolation::{sample_function_real, Interpolant};
use crate::nodes::NodalIndexSet;
use crate::quadrature::{clenshaw_curtis_from_real_coeffs, reference_integral};
use crate::spectral::{SpectralIndexSet, SpectralKind};
use crate::transform::{forward_coeffs_real, inverse_on_nodes};

/// The built-in smooth but oscillatory test function on the disk:
/// a shifted anisotropic Gaussian modulated by a quadratic-phase cosine.
pub fn test_function(x: f64, y: f64) -> f64 {
    let g1 = 1.6 * x - 0.1;
    let g2 = 2.4 * y - 0.2;
    let p1 = 4.0 * x - 0.25;
    let p2 = 6.0 * y - 0.5;
    (-2.0 * (g1 * g1 + g2 * g2)).exp() * (p1 * p1 + p2 * p2).cos()
}

/// The test function in polar coordinates.
pub fn test_function_polar(r: f64, theta: f64) -> f64 {
    test_function(r * theta.cos(), r * theta.sin())
}

/// Radial evaluation grid: n Chebyshev-spaced radii in [0, 1], densest at
/// the boundary.
pub fn chebyshev_radial_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|j| (j as f64 * PI / (2.0 * (n - 1) as f64)).cos())
        .collect()
}

/// Angular evaluation grid: n equispaced angles in (-π, π].
pub fn theta_grid(n: usize) -> Vec<f64> {
    assert!(n >= 1);
    (0..n)
        .map(|k| -PI + 2.0 * PI * (k as f64 + 1.0) / n as f64)
        .collect()
}

/// Lower-bound estimate of the Lebesgue constant: the maximum over an
/// N_r × N_θ evaluation grid of Σ_i |L_i(r, θ)|, with the center indices
/// aggregated into a single node term.
///
/// For each grid point the Lagrange values of all nodes come from one
/// inverse transform of the vector conj(X_γ(r, θ))/||χ_γ||².
pub fn lebesgue_estimate(
    freq: FrequencyPair,
    spectral: &SpectralIndexSet,
    grid: (usize, usize),
) -> f64 {
    let nodes = NodalIndexSet::new(freq);
    let rs = chebyshev_radial_grid(grid.0.max(2));
    let ts = theta_grid(grid.1.max(2));
    let m1 = freq.m1_i();
    let points: Vec<(f64, f64)> = rs
        .iter()
        .flat_map(|&r| ts.iter().map(move |&t| (r, t)))
        .collect();
    points
        .par_iter()
        .map(|&(r, theta)| {
            let s = r.clamp(0.0, 1.0).acos();
            let coeffs: Vec<Complex64> = spectral
                .indices()
                .iter()
                .enumerate()
                .map(|(k, &g)| {
                    let t = (g.g1 as f64 * s).cos();
                    let a = g.g2 as f64 * theta;
                    // conj(X_γ(r, θ)) / ||χ_γ||², conjugated once more so a
                    // single inverse transform produces conj(L_i / w_i).
                    (t * Complex64::new(a.cos(), a.sin()) / spectral.norm(k).value()).conj()
                })
                .collect();
            let lag = inverse_on_nodes(spectral, &coeffs, &nodes);
            let mut sum = 0.0;
            let mut center = Complex64::new(0.0, 0.0);
            for (k, &i) in nodes.indices().iter().enumerate() {
                let l = nodes.weight(k) * lag[k].conj();
                if i.i1 == m1 {
                    center += l;
                } else {
                    sum += l.norm();
                }
            }
            sum + center.norm()
        })
        .reduce(|| 0.0, f64::max)
}

/// One row of a convergence study.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub m1: usize,
    pub m2: usize,
    pub sup_error: f64,
    pub q: f64,
    pub rel_quad_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lebesgue_estimate: Option<f64>,
}

/// Results of a convergence study over a list of frequency pairs.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub spectral_kind: SpectralKind,
    pub grid_r: usize,
    pub grid_theta: usize,
    pub reference_integral: f64,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// CSV export with one row per frequency pair.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "m1,m2,sup_error,Q,rel_quad_error,lebesgue_estimate")?;
        for row in &self.rows {
            let leb = row
                .lebesgue_estimate
                .map(|v| v.to_string())
                .unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                row.m1, row.m2, row.sup_error, row.q, row.rel_quad_error, leb
            )?;
        }
        Ok(())
    }
}

/// Interpolate `func` (polar coordinates) on each frequency pair with the
/// real basis, measure the sup error on the evaluation grid, and compare
/// the quadrature value against an adaptive reference integral.
pub fn convergence_study(
    func: impl Fn(f64, f64) -> f64 + Sync,
    m_list: &[FrequencyPair],
    kind: SpectralKind,
    grid: (usize, usize),
    with_lebesgue: bool,
) -> Result<ExperimentReport> {
    let rs = chebyshev_radial_grid(grid.0);
    let ts = theta_grid(grid.1);
    // Raw disk integral ∬ f dA; the quadrature values are reported in the
    // same normalization.
    let i_ref = PI * reference_integral(&func, 1e-13);
    let mut rows = Vec::with_capacity(m_list.len());
    for &freq in m_list {
        let spectral = match kind {
            SpectralKind::Rectangular => SpectralIndexSet::rectangular(freq),
            SpectralKind::Triangular => SpectralIndexSet::triangular(freq),
            SpectralKind::Omega => SpectralIndexSet::rectangular(freq),
        };
        let data = sample_function_real(freq, &func);
        let coeffs = forward_coeffs_real(&data, &spectral)?;
        let q = clenshaw_curtis_from_real_coeffs(&coeffs).disk_integral().re;
        let interp = Interpolant::Real(coeffs);
        let values = interp.evaluate_grid(&rs, &ts)?;
        // Sup error against the function on the same grid.
        let sup_error = rs
            .par_iter()
            .enumerate()
            .map(|(j, &r)| {
                let mut worst = 0.0f64;
                for (k, &t) in ts.iter().enumerate() {
                    let err = (values[j * ts.len() + k].re - func(r, t)).abs();
                    worst = worst.max(err);
                }
                worst
            })
            .reduce(|| 0.0, f64::max);
        let lebesgue = with_lebesgue.then(|| lebesgue_estimate(freq, &spectral, (40, 80)));
        rows.push(ReportRow {
            m1: freq.m1(),
            m2: freq.m2(),
            sup_error,
            q,
            rel_quad_error: (q - i_ref).abs() / i_ref.abs(),
            lebesgue_estimate: lebesgue,
        });
    }
    Ok(ExperimentReport {
        spectral_kind: kind,
        grid_r: grid.0,
        grid_theta: grid.1,
        reference_integral: i_ref,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn test_function_center_value() {
        // f(0, 0) = e^{-0.1} · cos(0.0625 + 0.25).
        assert_abs_diff_eq!(
            test_function(0.0, 0.0),
            (-0.1f64).exp() * 0.3125f64.cos(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn test_function_bounded() {
        for j in 0..100 {
            for k in 0..100 {
                let x = -1.0 + 2.0 * j as f64 / 99.0;
                let y = -1.0 + 2.0 * k as f64 / 99.0;
                assert!(test_function(x, y).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn reference_integral_of_test_function() {
        // The known disk integral ∬ f dA, divided by π for the
        // mean-normalized value that reference_integral returns.
        let i = reference_integral(test_function_polar, 1e-13);
        assert_abs_diff_eq!(i, 0.03811377782454 / PI, epsilon = 1e-11);
    }

    #[test]
    fn lebesgue_estimate_basics() {
        let freq = FrequencyPair::new(4, 4).unwrap();
        let spectral = SpectralIndexSet::rectangular(freq);
        let small = lebesgue_estimate(freq, &spectral, (10, 20));
        // Operator norm at least 1 (constants are reproduced).
        assert!(small >= 1.0 - 1e-12);
        // Monotone under grid refinement (nested grids: 10 -> 19 radial
        // Chebyshev points, 20 -> 40 angles).
        let large = lebesgue_estimate(freq, &spectral, (19, 40));
        assert!(large + 1e-12 >= small);
    }

    #[test]
    fn convergence_study_runs() {
        let ms = [
            FrequencyPair::new(4, 5).unwrap(),
            FrequencyPair::new(8, 9).unwrap(),
        ];
        let report = convergence_study(
            test_function_polar,
            &ms,
            SpectralKind::Rectangular,
            (60, 60),
            false,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 2);
        // Error decreases with refinement.
        assert!(report.rows[1].sup_error < report.rows[0].sup_error);
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 3);
    }
}
