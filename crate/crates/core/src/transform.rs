//! Forward and inverse spectral transforms on the nodes.
//!
//! The forward transform extends data f on the nodal index set I^(m)
//! symmetrically to the full index grid J^(m) = (-2*m1, 2*m1] x
//! (-2*m2, 2*m2], applies one 4*m1 x 4*m2 discrete Fourier transform and
//! reads the expansion coefficients
//!
//! ```text
//! c_γ(f) = <f, χ_γ>_w / ||χ_γ||²_w
//! ```
//!
//! off the result. The inverse transform distributes the coefficients back
//! onto the Fourier grid and applies the adjoint transform.
//!
//! Kernel convention: the transform is the standard DFT of the abelian
//! group Z_{4m1} x Z_{4m2}, i.e. kernel exp(-𝗂 g1 i1 π/(2m1)) *
//! exp(-𝗂 g2 i2 π/(2m2)), matching the definition of χ. Every FFT-path
//! operation here has a direct-summation sibling (`*_direct`) used as the
//! ground-truth oracle in the test suite.


use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::curve::FrequencyPair;
use crate::error::{Error, Result};
use crate::nodes::{self, wrap_into, NodalIndexSet, NodeIndex};
use crate::spectral::{chi, NormConst, RealForm, SpectralIndex, SpectralIndexSet};

/// Data on the nodal index set, in the set's canonical order.
#[derive(Debug, Clone)]
pub struct DataGrid {
    nodes: NodalIndexSet,
    values: Vec<Complex64>,
}

impl DataGrid {
    pub fn new(nodes: NodalIndexSet, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::LengthMismatch {
                expected: nodes.len(),
                got: values.len(),
            });
        }
        Ok(Self { nodes, values })
    }

    pub fn from_real(nodes: NodalIndexSet, values: &[f64]) -> Result<Self> {
        let complex = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::new(nodes, complex)
    }

    /// Build a grid by evaluating a function of the node index.
    pub fn from_fn(nodes: NodalIndexSet, mut f: impl FnMut(NodeIndex) -> Complex64) -> Self {
        let values = nodes.indices().iter().map(|&i| f(i)).collect();
        Self { nodes, values }
    }

    pub fn nodes(&self) -> &NodalIndexSet {
        &self.nodes
    }

    pub fn freq(&self) -> FrequencyPair {
        self.nodes.freq()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, i: NodeIndex) -> Option<Complex64> {
        self.nodes.position(i).map(|k| self.values[k])
    }

    /// Largest absolute imaginary part, used to gate real-only operations.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Whether all center indices (i1 = m1) carry one shared value, i.e.
    /// the data stems from a point-valued function on the disk.
    pub fn is_center_consistent(&self, tol: f64) -> bool {
        let m1 = self.nodes.freq().m1_i();
        let mut center: Option<Complex64> = None;
        for (k, &i) in self.nodes.indices().iter().enumerate() {
            if i.i1 == m1 {
                match center {
                    None => center = Some(self.values[k]),
                    Some(c) => {
                        if (self.values[k] - c).norm() > tol {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The symmetric extension of a data grid to the dense 4*m1 x 4*m2 Fourier
/// grid, scaled by 1/(8*m1*m2). Row-major, index (i1 mod 4m1, i2 mod 4m2).
#[derive(Debug, Clone)]
pub struct ExtendedGrid {
    freq: FrequencyPair,
    values: Vec<Complex64>,
}

impl ExtendedGrid {
    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at a signed grid index (any representative modulo 4m).
    pub fn at(&self, i1: i64, i2: i64) -> Complex64 {
        let (m1, m2) = (self.freq.m1_i(), self.freq.m2_i());
        let a1 = i1.rem_euclid(4 * m1) as usize;
        let a2 = i2.rem_euclid(4 * m2) as usize;
        self.values[a1 * (4 * m2) as usize + a2]
    }
}

/// The source index on I^(m) feeding grid position (j1, j2) of the
/// extension, if any: identity on I, the glide image on the rest of
/// K^(m) = [0, 2m1] x (-2m2, 2m2], and the i1-reflection into K for the
/// remaining half of the grid.
fn extension_source(freq: FrequencyPair, j1: i64, j2: i64) -> Option<NodeIndex> {
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    let glide = |i1: i64, i2: i64| (2 * m1 - i1, wrap_into(i2 + 2 * m2, 4 * m2, 2 * m2));
    let (k1, k2) = if j1 >= 0 { (j1, j2) } else { (-j1, j2) };
    debug_assert!((0..=2 * m1).contains(&k1));
    let direct = NodeIndex::new(k1, k2);
    if nodes::contains(freq, direct) {
        return Some(direct);
    }
    let (f1, f2) = glide(k1, k2);
    let flipped = NodeIndex::new(f1, f2);
    if nodes::contains(freq, flipped) {
        return Some(flipped);
    }
    None
}

/// Extend node data symmetrically onto the Fourier grid (with the
/// 1/(8*m1*m2) normalization folded in).
pub fn extend_data(f: &DataGrid) -> ExtendedGrid {
    let freq = f.freq();
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    let scale = 1.0 / (8.0 * freq.m1() as f64 * freq.m2() as f64);
    let mut values = vec![Complex64::new(0.0, 0.0); (16 * m1 * m2) as usize];
    for a1 in 0..4 * m1 {
        // Canonical representative in (-2m1, 2m1].
        let j1 = if a1 <= 2 * m1 { a1 } else { a1 - 4 * m1 };
        for a2 in 0..4 * m2 {
            let j2 = if a2 <= 2 * m2 { a2 } else { a2 - 4 * m2 };
            if let Some(src) = extension_source(freq, j1, j2) {
                let k = f.nodes().position(src).expect("source is in I");
                values[(a1 * 4 * m2 + a2) as usize] = f.values()[k] * scale;
            }
        }
    }
    ExtendedGrid { freq, values }
}

/// Cache-blocked out-of-place transpose of a row-major n1 x n2 array.
fn transpose(src: &[Complex64], dst: &mut [Complex64], n1: usize, n2: usize) {
    const BLOCK: usize = 64;
    for rb in (0..n1).step_by(BLOCK) {
        for cb in (0..n2).step_by(BLOCK) {
            for r in rb..(rb + BLOCK).min(n1) {
                for c in cb..(cb + BLOCK).min(n2) {
                    dst[c * n1 + r] = src[r * n2 + c];
                }
            }
        }
    }
}

/// In-place 2D FFT over a row-major n1 x n2 array. The column pass runs on
/// a transposed copy so both passes work on contiguous rows.
fn fft2(values: &mut [Complex64], n1: usize, n2: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = |planner: &mut FftPlanner<f64>, n| {
        if inverse {
            planner.plan_fft_inverse(n)
        } else {
            planner.plan_fft_forward(n)
        }
    };
    let fft_rows = plan(&mut planner, n2);
    for row in values.chunks_exact_mut(n2) {
        fft_rows.process(row);
    }
    let mut t = vec![Complex64::new(0.0, 0.0); n1 * n2];
    transpose(values, &mut t, n1, n2);
    let fft_cols = plan(&mut planner, n1);
    for row in t.chunks_exact_mut(n1) {
        fft_cols.process(row);
    }
    transpose(&t, values, n2, n1);
}

/// The DFT ĝ of the symmetric extension of `f`, on the full Fourier grid.
pub fn g_hat(f: &DataGrid) -> ExtendedGrid {
    let mut ext = extend_data(f);
    let (m1, m2) = (f.freq().m1(), f.freq().m2());
    fft2(&mut ext.values, 4 * m1, 4 * m2, false);
    ext
}

/// Expansion coefficients over a spectral index set.
#[derive(Debug, Clone)]
pub struct CoefficientSet {
    spectral: SpectralIndexSet,
    values: Vec<Complex64>,
}

/// One coefficient entry of the JSON export.
#[derive(Debug, Serialize)]
struct CoeffEntry {
    g1: i64,
    g2: i64,
    re: f64,
    im: f64,
}

impl CoefficientSet {
    pub fn new(spectral: SpectralIndexSet, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spectral.len() {
            return Err(Error::LengthMismatch {
                expected: spectral.len(),
                got: values.len(),
            });
        }
        Ok(Self { spectral, values })
    }

    pub fn spectral(&self) -> &SpectralIndexSet {
        &self.spectral
    }

    pub fn freq(&self) -> FrequencyPair {
        self.spectral.freq()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, gamma: SpectralIndex) -> Option<Complex64> {
        self.spectral.position(gamma).map(|k| self.values[k])
    }

    /// JSON export: {m1, m2, spectral_kind, entries: [{g1, g2, re, im}]}.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<CoeffEntry> = self
            .spectral
            .indices()
            .iter()
            .zip(&self.values)
            .map(|(g, c)| CoeffEntry {
                g1: g.g1,
                g2: g.g2,
                re: c.re,
                im: c.im,
            })
            .collect();
        serde_json::json!({
            "m1": self.freq().m1(),
            "m2": self.freq().m2(),
            "spectral_kind": self.spectral.kind(),
            "entries": entries,
        })
    }
}

/// Real expansion coefficients over a spectral index set.
#[derive(Debug, Clone)]
pub struct RealCoefficientSet {
    spectral: SpectralIndexSet,
    values: Vec<f64>,
}

impl RealCoefficientSet {
    pub fn new(spectral: SpectralIndexSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != spectral.len() {
            return Err(Error::LengthMismatch {
                expected: spectral.len(),
                got: values.len(),
            });
        }
        Ok(Self { spectral, values })
    }

    pub fn spectral(&self) -> &SpectralIndexSet {
        &self.spectral
    }

    pub fn freq(&self) -> FrequencyPair {
        self.spectral.freq()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, gamma: SpectralIndex) -> Option<f64> {
        self.spectral.position(gamma).map(|k| self.values[k])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<CoeffEntry> = self
            .spectral
            .indices()
            .iter()
            .zip(&self.values)
            .map(|(g, &c)| CoeffEntry {
                g1: g.g1,
                g2: g.g2,
                re: c,
                im: 0.0,
            })
            .collect();
        serde_json::json!({
            "m1": self.freq().m1(),
            "m2": self.freq().m2(),
            "spectral_kind": self.spectral.kind(),
            "entries": entries,
        })
    }
}

fn check_freq(f: &DataGrid, spectral: &SpectralIndexSet) -> Result<()> {
    if f.freq() != spectral.freq() {
        return Err(Error::FrequencyMismatch {
            lhs: (f.freq().m1(), f.freq().m2()),
            rhs: (spectral.freq().m1(), spectral.freq().m2()),
        });
    }
    Ok(())
}

/// Forward transform: coefficients of f over the given spectral set,
/// computed with one FFT of the symmetric extension.
pub fn forward_coeffs(f: &DataGrid, spectral: &SpectralIndexSet) -> Result<CoefficientSet> {
    check_freq(f, spectral)?;
    let hat = g_hat(f);
    let values = spectral
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &g)| hat.at(g.g1, g.g2) / spectral.norm(k).value())
        .collect();
    CoefficientSet::new(spectral.clone(), values)
}

/// Forward transform onto the real basis; input must be real-valued.
pub fn forward_coeffs_real(f: &DataGrid, spectral: &SpectralIndexSet) -> Result<RealCoefficientSet> {
    check_freq(f, spectral)?;
    let scale = f
        .values()
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    if f.max_imag() > 1e-12 * scale {
        return Err(Error::ComplexInput {
            max_imag: f.max_imag(),
        });
    }
    let hat = g_hat(f);
    let values = spectral
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let v = hat.at(g.g1, g.g2);
            // <f, Re χ> = Re ĝ and <f, Im χ> = -Im ĝ for real f.
            let num = match spectral.real_form(k) {
                RealForm::Cosine => v.re,
                RealForm::Sine => -v.im,
            };
            num / spectral.real_norm(k).value()
        })
        .collect();
    RealCoefficientSet::new(spectral.clone(), values)
}

/// Inverse transform: reconstruct the data grid from its coefficients.
///
/// Each coefficient is split between its own Fourier slot and the
/// i1-mirrored slot (half and half) unless g1 lies on one of the
/// self-mirrored lines {0, 2*m1}; the adjoint (sign-flipped, unnormalized)
/// Fourier transform then reproduces Σ_γ c_γ χ_γ on the grid.
pub fn inverse_transform(c: &CoefficientSet) -> DataGrid {
    let nodes = NodalIndexSet::new(c.freq());
    let values = inverse_on_nodes(c.spectral(), c.values(), &nodes);
    DataGrid::new(nodes, values).expect("lengths match by construction")
}

/// Low-level inverse path: node values of Σ_γ c_γ χ_γ without wrapping
/// the result in a `DataGrid` (used by batch evaluations).
pub fn inverse_on_nodes(
    spectral: &SpectralIndexSet,
    coeffs: &[Complex64],
    nodes: &NodalIndexSet,
) -> Vec<Complex64> {
    let freq = spectral.freq();
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    let mut h = vec![Complex64::new(0.0, 0.0); (16 * m1 * m2) as usize];
    let slot = |i1: i64, i2: i64| {
        (i1.rem_euclid(4 * m1) * 4 * m2 + i2.rem_euclid(4 * m2)) as usize
    };
    for (k, &g) in spectral.indices().iter().enumerate() {
        let v = coeffs[k];
        match spectral.norm(k) {
            NormConst::One => h[slot(g.g1, g.g2)] += v,
            _ => {
                h[slot(g.g1, g.g2)] += 0.5 * v;
                h[slot(-g.g1, g.g2)] += 0.5 * v;
            }
        }
    }
    fft2(&mut h, (4 * m1) as usize, (4 * m2) as usize, true);
    nodes
        .indices()
        .iter()
        .map(|&i| h[slot(i.i1, i.i2)])
        .collect()
}

/// Coefficients on the symmetric closure of the rectangular set
/// (-m2 <= g2 <= m2), with the duplicated edge rows |g2| = m2 blended by
/// the averaging parameter λ.
#[derive(Debug, Clone)]
pub struct AveragedCoefficients {
    freq: FrequencyPair,
    lambda: f64,
    indices: Vec<SpectralIndex>,
    values: Vec<Complex64>,
}

impl AveragedCoefficients {
    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn indices(&self) -> &[SpectralIndex] {
        &self.indices
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, gamma: SpectralIndex) -> Option<Complex64> {
        self.indices
            .iter()
            .position(|&g| g == gamma)
            .map(|k| self.values[k])
    }

    /// Node values of the expansion Σ c_A,γ χ_γ, for verification.
    pub fn node_values(&self) -> DataGrid {
        let nodes = NodalIndexSet::new(self.freq);
        let values = nodes
            .indices()
            .iter()
            .map(|&i| {
                self.indices
                    .iter()
                    .zip(&self.values)
                    .map(|(&g, &c)| c * chi(self.freq, g, i))
                    .sum()
            })
            .collect();
        DataGrid::new(nodes, values).expect("lengths match")
    }
}

/// Averaged coefficients on the closed rectangle; λ weights the upper edge
/// g2 = m2, 1-λ the lower edge g2 = -m2.
pub fn averaged_coeffs(f: &DataGrid, lambda: f64) -> Result<AveragedCoefficients> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::ParameterOutOfRange {
            name: "lambda",
            value: lambda,
            range: "[0, 1]",
        });
    }
    let freq = f.freq();
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    let hat = g_hat(f);
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for g1 in 0..=2 * m1 {
        for g2 in -m2..=m2 {
            if (g1 + g2).rem_euclid(2) != 0 {
                continue;
            }
            let norm = if g1 == 0 || g1 == 2 * m1 { 1.0 } else { 0.5 };
            let c = hat.at(g1, g2) / norm;
            let weight = if g2 == m2 {
                lambda
            } else if g2 == -m2 {
                1.0 - lambda
            } else {
                1.0
            };
            indices.push(SpectralIndex::new(g1, g2));
            values.push(weight * c);
        }
    }
    Ok(AveragedCoefficients {
        freq,
        lambda,
        indices,
        values,
    })
}

// --- Direct-summation reference implementations (O(N²) oracles) ---------

/// Direct evaluation of c_γ = <f, χ_γ>_w / ||χ_γ||²_w by weighted sums.
pub fn forward_coeffs_direct(f: &DataGrid, spectral: &SpectralIndexSet) -> Result<CoefficientSet> {
    check_freq(f, spectral)?;
    let nodes = f.nodes();
    let values = spectral
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &i) in nodes.indices().iter().enumerate() {
                sum += nodes.weight(j) * f.values()[j] * chi(f.freq(), g, i).conj();
            }
            sum / spectral.norm(k).value()
        })
        .collect();
    CoefficientSet::new(spectral.clone(), values)
}

/// Direct evaluation of the real coefficients by weighted sums.
pub fn forward_coeffs_real_direct(
    f: &DataGrid,
    spectral: &SpectralIndexSet,
) -> Result<RealCoefficientSet> {
    check_freq(f, spectral)?;
    let nodes = f.nodes();
    let values = spectral
        .indices()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let mut sum = 0.0;
            for (j, &i) in nodes.indices().iter().enumerate() {
                sum += nodes.weight(j) * f.values()[j].re * spectral.chi_real(g, i).unwrap();
            }
            sum / spectral.real_norm(k).value()
        })
        .collect();
    RealCoefficientSet::new(spectral.clone(), values)
}

/// Direct evaluation of the expansion Σ_γ c_γ χ_γ(i) on the nodes.
pub fn inverse_transform_direct(c: &CoefficientSet) -> DataGrid {
    let freq = c.freq();
    let nodes = NodalIndexSet::new(freq);
    let values = nodes
        .indices()
        .iter()
        .map(|&i| {
            c.spectral()
                .indices()
                .iter()
                .zip(c.values())
                .map(|(&g, &v)| v * chi(freq, g, i))
                .sum()
        })
        .collect();
    DataGrid::new(nodes, values).expect("lengths match")
}

/// Node values of the real expansion Σ_γ c_R,γ χ_R,γ(i).
pub fn real_node_values(c: &RealCoefficientSet) -> Vec<f64> {
    let freq = c.freq();
    let nodes = NodalIndexSet::new(freq);
    nodes
        .indices()
        .iter()
        .map(|&i| {
            c.spectral()
                .indices()
                .iter()
                .zip(c.values())
                .map(|(&g, &v)| v * c.spectral().chi_real(g, i).unwrap())
                .sum()
        })
        .collect()
}

/// Chebyshev-Fourier basis function X_γ(r, θ) = T_{g1}(r) exp(𝗂 g2 θ).
pub fn basis_fn(gamma: SpectralIndex, r: f64, theta: f64) -> Complex64 {
    let t = crate::variety::chebyshev_t(gamma.g1.unsigned_abs() as usize, r);
    let a = gamma.g2 as f64 * theta;
    t * Complex64::new(a.cos(), a.sin())
}

/// Sample the basis function X_γ on the nodes.
pub fn sample_basis(freq: FrequencyPair, gamma: SpectralIndex) -> DataGrid {
    let nodes = NodalIndexSet::new(freq);
    DataGrid::from_fn(nodes, |i| {
        let p = nodes::node_coords(freq, i).expect("valid index");
        basis_fn(gamma, p.r, p.theta)
    })
}
