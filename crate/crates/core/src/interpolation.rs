//! Evaluation of the spectral interpolant on the disk.
//!
//! A coefficient set over a spectral index set Γ defines the interpolant
//!
//! ```text
//! P(r, θ) = Σ_{γ ∈ Γ} c_γ · T_{g1}(r) · exp(𝗂 g2 θ)
//! ```
//!
//! (or the analogous sum over the real basis functions). On the nodes P
//! reproduces the data the coefficients were computed from; between the
//! nodes it is the unique interpolant from the span of the basis.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::curve::FrequencyPair;
use crate::error::{Error, Result};
use crate::nodes::{self, NodalIndexSet, NodeIndex};
use crate::spectral::{chi, RealForm, SpectralIndex, SpectralIndexSet};
use crate::transform::{CoefficientSet, DataGrid, RealCoefficientSet};

/// Normalize an angle into (-π, π].
fn normalize_theta(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..=1.0 + 1e-12).contains(&r) {
        return Err(Error::RadiusOutOfRange { r });
    }
    Ok(())
}

/// Sample a function given in polar coordinates onto the nodes.
pub fn sample_function(
    freq: FrequencyPair,
    func: impl Fn(f64, f64) -> Complex64,
) -> DataGrid {
    let nodes = NodalIndexSet::new(freq);
    DataGrid::from_fn(nodes, |i| {
        let p = nodes::node_coords(freq, i).expect("valid index");
        func(p.r, normalize_theta(p.theta))
    })
}

/// Sample a real-valued function given in polar coordinates onto the nodes.
pub fn sample_function_real(freq: FrequencyPair, func: impl Fn(f64, f64) -> f64) -> DataGrid {
    sample_function(freq, |r, t| Complex64::new(func(r, t), 0.0))
}

/// A spectral interpolant in either the complex or the real basis.
#[derive(Debug, Clone)]
pub enum Interpolant {
    Complex(CoefficientSet),
    Real(RealCoefficientSet),
}

impl Interpolant {
    pub fn spectral(&self) -> &SpectralIndexSet {
        match self {
            Interpolant::Complex(c) => c.spectral(),
            Interpolant::Real(c) => c.spectral(),
        }
    }

    pub fn freq(&self) -> FrequencyPair {
        self.spectral().freq()
    }

    /// Evaluate the interpolant at a single point.
    pub fn evaluate(&self, r: f64, theta: f64) -> Result<Complex64> {
        check_radius(r)?;
        let theta = normalize_theta(theta);
        let s = r.clamp(0.0, 1.0).acos();
        let mut sum = Complex64::new(0.0, 0.0);
        match self {
            Interpolant::Complex(c) => {
                for (&g, &v) in c.spectral().indices().iter().zip(c.values()) {
                    let t = (g.g1 as f64 * s).cos();
                    let a = g.g2 as f64 * theta;
                    sum += v * t * Complex64::new(a.cos(), a.sin());
                }
            }
            Interpolant::Real(c) => {
                for (k, (&g, &v)) in c.spectral().indices().iter().zip(c.values()).enumerate() {
                    let t = (g.g1 as f64 * s).cos();
                    let a = g.g2 as f64 * theta;
                    let ang = match c.spectral().real_form(k) {
                        RealForm::Cosine => a.cos(),
                        RealForm::Sine => a.sin(),
                    };
                    sum += Complex64::new(v * t * ang, 0.0);
                }
            }
        }
        Ok(sum)
    }

    /// Evaluate on a tensor product grid, row-major over (r, θ).
    ///
    /// The sum is factorized into a radial pass (Chebyshev part, per
    /// distinct angular frequency) and an angular pass, so the cost is
    /// O(N_r·#Γ + N_r·N_θ·m2) instead of O(N_r·N_θ·#Γ).
    pub fn evaluate_grid(&self, rs: &[f64], thetas: &[f64]) -> Result<Vec<Complex64>> {
        for &r in rs {
            check_radius(r)?;
        }
        // Angular terms: distinct (g2, form) pairs; complex basis uses the
        // exponential form only.
        #[derive(PartialEq, Eq, Hash, Clone, Copy)]
        struct AngularKey {
            g2: i64,
            form: u8, // 0 = exp, 1 = cos, 2 = sin
        }
        let mut keys: Vec<AngularKey> = Vec::new();
        let mut terms: Vec<(usize, i64, Complex64)> = Vec::new(); // (key idx, g1, coeff)
        let mut key_index = std::collections::HashMap::new();
        let mut push_term = |g: SpectralIndex, form: u8, v: Complex64| {
            let key = AngularKey { g2: g.g2, form };
            let idx = *key_index.entry(key).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            terms.push((idx, g.g1, v));
        };
        match self {
            Interpolant::Complex(c) => {
                for (&g, &v) in c.spectral().indices().iter().zip(c.values()) {
                    push_term(g, 0, v);
                }
            }
            Interpolant::Real(c) => {
                for (k, (&g, &v)) in c.spectral().indices().iter().zip(c.values()).enumerate() {
                    let form = match c.spectral().real_form(k) {
                        RealForm::Cosine => 1,
                        RealForm::Sine => 2,
                    };
                    push_term(g, form, Complex64::new(v, 0.0));
                }
            }
        }
        // Radial pass: A[j][q] = Σ_{terms with key q} c · T_{g1}(r_j).
        let nq = keys.len();
        let radial: Vec<Vec<Complex64>> = rs
            .par_iter()
            .map(|&r| {
                let s = r.clamp(0.0, 1.0).acos();
                let mut row = vec![Complex64::new(0.0, 0.0); nq];
                for &(q, g1, v) in &terms {
                    row[q] += v * (g1 as f64 * s).cos();
                }
                row
            })
            .collect();
        // Angular tables per θ.
        let angular: Vec<Vec<Complex64>> = thetas
            .iter()
            .map(|&theta| {
                let theta = normalize_theta(theta);
                keys.iter()
                    .map(|k| {
                        let a = k.g2 as f64 * theta;
                        match k.form {
                            0 => Complex64::new(a.cos(), a.sin()),
                            1 => Complex64::new(a.cos(), 0.0),
                            _ => Complex64::new(a.sin(), 0.0),
                        }
                    })
                    .collect()
            })
            .collect();
        // Angular pass.
        let nt = thetas.len();
        let mut out = vec![Complex64::new(0.0, 0.0); rs.len() * nt];
        out.par_chunks_mut(nt)
            .zip(radial.par_iter())
            .for_each(|(row, a)| {
                for (k, cell) in row.iter_mut().enumerate() {
                    let mut sum = Complex64::new(0.0, 0.0);
                    for q in 0..nq {
                        sum += a[q] * angular[k][q];
                    }
                    *cell = sum;
                }
            });
        Ok(out)
    }

    /// Evaluate at the disk center for `n_angles` equispaced angles.
    pub fn center_profile(&self, n_angles: usize) -> Vec<Complex64> {
        (0..n_angles)
            .map(|k| {
                let theta = -PI + 2.0 * PI * (k as f64 + 1.0) / n_angles as f64;
                self.evaluate(0.0, theta).expect("r = 0 is valid")
            })
            .collect()
    }

    /// Largest deviation of the interpolant from the data on the nodes.
    pub fn node_residual(&self, data: &DataGrid) -> Result<f64> {
        if data.freq() != self.freq() {
            return Err(Error::FrequencyMismatch {
                lhs: (data.freq().m1(), data.freq().m2()),
                rhs: (self.freq().m1(), self.freq().m2()),
            });
        }
        let mut worst = 0.0f64;
        for (k, &i) in data.nodes().indices().iter().enumerate() {
            let p = nodes::node_coords(data.freq(), i)?;
            let v = self.evaluate(p.r, p.theta)?;
            worst = worst.max((v - data.values()[k]).norm());
        }
        Ok(worst)
    }
}

/// The Lagrange basis function of node j:
/// L_j(r, θ) = w_j · Σ_γ conj(χ_γ(j)) / ||χ_γ||² · X_γ(r, θ).
pub fn lagrange(
    spectral: &SpectralIndexSet,
    j: NodeIndex,
    r: f64,
    theta: f64,
) -> Result<Complex64> {
    check_radius(r)?;
    let freq = spectral.freq();
    if !nodes::contains(freq, j) {
        return Err(Error::IndexOutOfRange { index: j });
    }
    let theta = normalize_theta(theta);
    let w = if j.i1 == 0 { 1.0 } else { 2.0 } / (4.0 * freq.m1() as f64 * freq.m2() as f64);
    let s = r.clamp(0.0, 1.0).acos();
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, &g) in spectral.indices().iter().enumerate() {
        let x = (g.g1 as f64 * s).cos()
            * Complex64::new((g.g2 as f64 * theta).cos(), (g.g2 as f64 * theta).sin());
        sum += chi(freq, g, j).conj() / spectral.norm(k).value() * x;
    }
    Ok(w * sum)
}

/// Write a grid evaluation as CSV rows r,theta,re,im (row-major).
pub fn write_grid_csv<W: std::io::Write>(
    rs: &[f64],
    thetas: &[f64],
    values: &[Complex64],
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(out, "r,theta,re,im")?;
    for (j, &r) in rs.iter().enumerate() {
        for (k, &theta) in thetas.iter().enumerate() {
            let v = values[j * thetas.len() + k];
            writeln!(out, "{},{},{},{}", r, theta, v.re, v.im)?;
        }
    }
    Ok(())
}
