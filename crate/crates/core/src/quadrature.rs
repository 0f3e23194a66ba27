//! Clenshaw-Curtis-type quadrature on the rhodonea nodes.
//!
//! Integrating the interpolant over the unit disk kills every basis
//! function except the radially even, angularly constant ones:
//!
//! ```text
//! (1/π) ∬_D T_{g1}(r) e^{𝗂 g2 θ} r dr dθ = 1/(1 - g1²/4)   if g2 = 0, 4 | g1,
//!                                           0               otherwise,
//! ```
//!
//! so the quadrature value is Q(f) = Σ_{k=0}^{⌊m1/2⌋} c_{(4k,0)}(f) / (1 - 4k²),
//! the mean value (1/π)∬ of the interpolant; multiply by π for the raw
//! integral over the disk.

use num_complex::Complex64;

use crate::curve::FrequencyPair;
use crate::error::Result;
use crate::nodes::NodalIndexSet;
use crate::spectral::{SpectralIndex, SpectralIndexSet};
use crate::transform::{forward_coeffs, CoefficientSet, DataGrid, RealCoefficientSet};

/// Result of the quadrature rule.
#[derive(Debug, Clone)]
pub struct QuadratureResult {
    /// Mean-normalized integral (1/π)∬ P r dr dθ.
    pub value: Complex64,
    /// The coefficient indices (4k, 0) that contributed.
    pub coeffs_used: Vec<SpectralIndex>,
}

impl QuadratureResult {
    /// The raw disk integral ∬ P r dr dθ = π * value.
    pub fn disk_integral(&self) -> Complex64 {
        self.value * std::f64::consts::PI
    }
}

/// Mean-normalized integral of a single basis function X_γ over the disk.
pub fn analytic_basis_integral(gamma: SpectralIndex) -> f64 {
    if gamma.g2 == 0 && gamma.g1.rem_euclid(4) == 0 {
        let g1 = gamma.g1 as f64;
        1.0 / (1.0 - g1 * g1 / 4.0)
    } else {
        0.0
    }
}

/// The axis indices (4k, 0), k = 0..⌊m1/2⌋, feeding the quadrature sum.
fn axis_indices(freq: FrequencyPair) -> Vec<SpectralIndex> {
    (0..=freq.m1() / 2)
        .map(|k| SpectralIndex::new(4 * k as i64, 0))
        .collect()
}

/// Quadrature from an existing coefficient set (rectangular or triangular;
/// both contain all axis indices (4k, 0)).
pub fn clenshaw_curtis_from_coeffs(c: &CoefficientSet) -> QuadratureResult {
    let used = axis_indices(c.freq());
    let value = used
        .iter()
        .map(|&g| {
            let k = (g.g1 / 4) as f64;
            c.value(g).expect("axis index present") / (1.0 - 4.0 * k * k)
        })
        .sum();
    QuadratureResult {
        value,
        coeffs_used: used,
    }
}

/// Quadrature from real coefficients (c_{R,(4k,0)} = c_{(4k,0)}).
pub fn clenshaw_curtis_from_real_coeffs(c: &RealCoefficientSet) -> QuadratureResult {
    let used = axis_indices(c.freq());
    let value = used
        .iter()
        .map(|&g| {
            let k = (g.g1 / 4) as f64;
            c.value(g).expect("axis index present") / (1.0 - 4.0 * k * k)
        })
        .sum::<f64>();
    QuadratureResult {
        value: Complex64::new(value, 0.0),
        coeffs_used: used,
    }
}

/// Quadrature of node data: forward transform on the rectangular set, then
/// the weighted coefficient sum.
pub fn clenshaw_curtis(f: &DataGrid) -> Result<QuadratureResult> {
    let spectral = SpectralIndexSet::rectangular(f.freq());
    let c = forward_coeffs(f, &spectral)?;
    Ok(clenshaw_curtis_from_coeffs(&c))
}

/// Node weights q_i with Q(f) = Σ_i q_i f(i) for every data grid.
///
/// Assembled by pushing the Dirac data through the linear coefficient map:
/// c_{(4k,0)}(δ_j) = w_j cos(4k·j1·π/(2m1)) / ||χ_{(4k,0)}||², so
///
/// ```text
/// q_j = w_j Σ_k cos(4k·j1·π/(2m1)) / (||χ_{(4k,0)}||² (1 - 4k²)).
/// ```
///
/// Returned in the canonical node order.
pub fn quadrature_weights(freq: FrequencyPair) -> Vec<f64> {
    let nodes = NodalIndexSet::new(freq);
    let m1 = freq.m1() as f64;
    (0..nodes.len())
        .map(|j| {
            let i1 = nodes.indices()[j].i1 as f64;
            let mut sum = 0.0;
            for k in 0..=freq.m1() / 2 {
                let g1 = 4 * k;
                let norm = if g1 == 0 || g1 == 2 * freq.m1() { 1.0 } else { 0.5 };
                let kk = k as f64;
                sum += (g1 as f64 * i1 * std::f64::consts::PI / (2.0 * m1)).cos()
                    / (norm * (1.0 - 4.0 * kk * kk));
            }
            nodes.weight(j) * sum
        })
        .collect()
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        // Initial guess (Chebyshev-like) followed by Newton iterations on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (xs, ws)
}

/// Mean-normalized disk integral (1/π)∬ f r dr dθ of a function given in
/// polar coordinates, via a self-refining Gauss-Legendre × trapezoid
/// tensor rule. Doubles the resolution until two consecutive levels agree
/// to `tol` (absolute).
pub fn reference_integral(f: impl Fn(f64, f64) -> f64, tol: f64) -> f64 {
    let mut prev = f64::NAN;
    let mut nr = 32;
    loop {
        let ntheta = 2 * nr;
        let (xs, ws) = gauss_legendre(nr);
        let mut total = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            let r = 0.5 * (x + 1.0);
            let mut ring = 0.0;
            for k in 0..ntheta {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / ntheta as f64;
                ring += f(r, theta);
            }
            // dr = dx/2; angular trapezoid weight 2π/nθ; measure r dr dθ.
            total += w * 0.5 * r * ring * 2.0 * std::f64::consts::PI / ntheta as f64;
        }
        let value = total / std::f64::consts::PI;
        if (value - prev).abs() <= tol || nr >= 1024 {
            return value;
        }
        prev = value;
        nr *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolation::sample_function;
    use crate::transform::sample_basis;
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn freq(m1: usize, m2: usize) -> FrequencyPair {
        FrequencyPair::new(m1, m2).unwrap()
    }

    #[test]
    fn constant_integrates_to_one() {
        let f = freq(5, 3);
        let data = sample_function(f, |_, _| Complex64::new(1.0, 0.0));
        let q = clenshaw_curtis(&data).unwrap();
        assert_abs_diff_eq!(q.value.re, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(q.value.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn chebyshev_t4_integrates_to_minus_third() {
        let f = freq(6, 5);
        let data = sample_basis(f, SpectralIndex::new(4, 0));
        let q = clenshaw_curtis(&data).unwrap();
        assert_abs_diff_eq!(q.value.re, -1.0 / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn exactness_on_rectangular_span() {
        for f in [freq(6, 5), freq(7, 7)] {
            let spectral = SpectralIndexSet::rectangular(f);
            for &g in spectral.indices() {
                let data = sample_basis(f, g);
                let q = clenshaw_curtis(&data).unwrap();
                let want = analytic_basis_integral(g);
                assert_abs_diff_eq!(q.value.re, want, epsilon = 1e-12);
                assert_abs_diff_eq!(q.value.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rectangular_and_triangular_coeffs_give_same_q() {
        let f = freq(6, 5);
        let mut rng = StdRng::seed_from_u64(2);
        let data = DataGrid::from_fn(NodalIndexSet::new(f), |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
        });
        let q_rect = clenshaw_curtis_from_coeffs(
            &forward_coeffs(&data, &SpectralIndexSet::rectangular(f)).unwrap(),
        );
        let q_tri = clenshaw_curtis_from_coeffs(
            &forward_coeffs(&data, &SpectralIndexSet::triangular(f)).unwrap(),
        );
        assert!((q_rect.value - q_tri.value).norm() <= 1e-13);
    }

    #[test]
    fn weights_reproduce_coefficient_path() {
        let f = freq(6, 5);
        let weights = quadrature_weights(f);
        assert_abs_diff_eq!(weights.iter().sum::<f64>(), 1.0, epsilon = 1e-14);

        let mut rng = StdRng::seed_from_u64(6);
        let data = DataGrid::from_fn(NodalIndexSet::new(f), |_| {
            Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
        });
        let via_weights: f64 = weights
            .iter()
            .zip(data.values())
            .map(|(&q, v)| q * v.re)
            .sum();
        let via_coeffs = clenshaw_curtis(&data).unwrap().value.re;
        assert_abs_diff_eq!(via_weights, via_coeffs, epsilon = 1e-13);
    }

    #[test]
    fn weights_match_dirac_construction() {
        let f = freq(3, 2);
        let nodes = NodalIndexSet::new(f);
        let assembled = quadrature_weights(f);
        for j in 0..nodes.len() {
            let dirac = DataGrid::from_fn(nodes.clone(), |i| {
                Complex64::new(if i == nodes.indices()[j] { 1.0 } else { 0.0 }, 0.0)
            });
            let q = clenshaw_curtis(&dirac).unwrap();
            assert_abs_diff_eq!(q.value.re, assembled[j], epsilon = 1e-14);
        }
    }

    #[test]
    fn smallest_case_weights_by_hand() {
        // m = (1, 1): only k = 0 contributes, so q_j = w_j for all three
        // indices: 1/4, 1/4, 1/2.
        let w = quadrature_weights(freq(1, 1));
        assert_eq!(w.len(), 3);
        assert_abs_diff_eq!(w[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(w[2], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn gauss_legendre_low_orders() {
        let (xs, ws) = gauss_legendre(2);
        assert_abs_diff_eq!(xs[1], 1.0 / 3.0f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(ws[0], 1.0, epsilon = 1e-14);
        // Degree-5 polynomial integrated exactly by 3 points.
        let (xs, ws) = gauss_legendre(3);
        let integral: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(&x, &w)| w * (x.powi(5) + x.powi(4) - 2.0 * x + 1.0))
            .sum();
        assert_abs_diff_eq!(integral, 2.0 / 5.0 + 2.0, epsilon = 1e-13);
    }

    #[test]
    fn reference_integral_of_constant_and_radius() {
        assert_abs_diff_eq!(reference_integral(|_, _| 1.0, 1e-13), 1.0, epsilon = 1e-12);
        // (1/π)∬ r² r dr dθ = 2π/(4π) = 1/2.
        assert_abs_diff_eq!(
            reference_integral(|r, _| r * r, 1e-13),
            0.5,
            epsilon = 1e-12
        );
    }
}
