//! Spectral index sets and the discrete orthogonal bases on the nodes.
//!
//! A spectral index γ = (g1, g2) lives in
//!
//! ```text
//! K^(m) = { 0 <= g1 <= 2*m1, -2*m2 < g2 <= 2*m2, g1 + g2 even }.
//! ```
//!
//! The rectangular set restricts g2 to (-m2, m2]; the triangular set keeps
//! the indices below the diagonal g1/(2*m1) + |g2|/(2*m2) <= 1; a general
//! set replaces an arbitrary subset Ω of the rectangular set by its image
//! under the glide-reflection flip γ* = (2*m1 - g1, g2 + 2*m2 mod 4*m2).
//! Each such set indexes an orthogonal basis of discrete functions
//!
//! ```text
//! χ_γ(i) = cos(g1*i1*π/(2*m1)) * exp(𝗂 * g2*i2*π/(2*m2))
//! ```
//!
//! on the nodal index set, together with a real sibling basis χ_R.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::curve::FrequencyPair;
use crate::error::{Error, Result};
use crate::nodes::{wrap_into, NodeIndex};
use crate::transform::DataGrid;

/// A spectral (frequency) index γ = (g1, g2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpectralIndex {
    pub g1: i64,
    pub g2: i64,
}

impl SpectralIndex {
    pub fn new(g1: i64, g2: i64) -> Self {
        Self { g1, g2 }
    }
}

/// The three supported set shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    Rectangular,
    Triangular,
    Omega,
}

/// Exact norm constants appearing in the discrete Gram matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormConst {
    One,
    Half,
    Quarter,
}

impl NormConst {
    pub fn value(self) -> f64 {
        match self {
            NormConst::One => 1.0,
            NormConst::Half => 0.5,
            NormConst::Quarter => 0.25,
        }
    }
}

/// Whether the real basis function for a given γ uses a cosine or a sine
/// in the angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealForm {
    Cosine,
    Sine,
}

/// Membership test for K^(m).
pub fn in_k(freq: FrequencyPair, gamma: SpectralIndex) -> bool {
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    gamma.g1 >= 0
        && gamma.g1 <= 2 * m1
        && gamma.g2 > -2 * m2
        && gamma.g2 <= 2 * m2
        && (gamma.g1 + gamma.g2).rem_euclid(2) == 0
}

/// Membership test for the rectangular set.
pub fn in_rect(freq: FrequencyPair, gamma: SpectralIndex) -> bool {
    let m2 = freq.m2_i();
    in_k(freq, gamma) && gamma.g2 > -m2 && gamma.g2 <= m2
}

/// The glide-reflection flip γ* = (2*m1 - g1, g2 + 2*m2) with the second
/// component wrapped back into (-2*m2, 2*m2]. An involution on K^(m); for
/// even-parity γ the discrete basis function is invariant: χ_{γ*} = χ_γ.
pub fn flip(freq: FrequencyPair, gamma: SpectralIndex) -> SpectralIndex {
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    SpectralIndex::new(
        2 * m1 - gamma.g1,
        wrap_into(gamma.g2 + 2 * m2, 4 * m2, 2 * m2),
    )
}

/// The discrete basis function χ_γ evaluated at node index i.
pub fn chi(freq: FrequencyPair, gamma: SpectralIndex, i: NodeIndex) -> Complex64 {
    let radial = (gamma.g1 as f64 * i.i1 as f64 * PI / (2.0 * freq.m1() as f64)).cos();
    let angle = gamma.g2 as f64 * i.i2 as f64 * PI / (2.0 * freq.m2() as f64);
    radial * Complex64::new(angle.cos(), angle.sin())
}

/// A spectral index set with its norms and real-basis bookkeeping.
#[derive(Debug, Clone)]
pub struct SpectralIndexSet {
    freq: FrequencyPair,
    kind: SpectralKind,
    indices: Vec<SpectralIndex>,
    pos: HashMap<SpectralIndex, usize>,
    norms: Vec<NormConst>,
    real_norms: Vec<NormConst>,
    in_upsilon: Vec<bool>,
}

impl SpectralIndexSet {
    fn build(freq: FrequencyPair, kind: SpectralKind, mut indices: Vec<SpectralIndex>) -> Self {
        indices.sort();
        let pos: HashMap<SpectralIndex, usize> =
            indices.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let (m1, m2) = (freq.m1_i(), freq.m2_i());
        let norms = indices
            .iter()
            .map(|g| {
                if g.g1 == 0 || g.g1 == 2 * m1 {
                    NormConst::One
                } else {
                    NormConst::Half
                }
            })
            .collect();
        // Υ: indices whose angular mirror (g1, -g2) is not in the set.
        let in_upsilon: Vec<bool> = indices
            .iter()
            .map(|g| !pos.contains_key(&SpectralIndex::new(g.g1, -g.g2)))
            .collect();
        let real_norms = indices
            .iter()
            .map(|&g| {
                let corner = g == SpectralIndex::new(0, 0)
                    || g == SpectralIndex::new(2 * m1, 0)
                    || g == SpectralIndex::new(0, 2 * m2);
                if corner {
                    NormConst::One
                } else if g.g1 == 0
                    || g.g1 == 2 * m1
                    || g.g2 == 0
                    || g.g2 == 2 * m2
                    || g == SpectralIndex::new(m1, m2)
                    || g == SpectralIndex::new(m1, -m2)
                {
                    NormConst::Half
                } else {
                    NormConst::Quarter
                }
            })
            .collect();
        Self {
            freq,
            kind,
            indices,
            pos,
            norms,
            real_norms,
            in_upsilon,
        }
    }

    /// The rectangular spectral index set Γ□.
    pub fn rectangular(freq: FrequencyPair) -> Self {
        let (m1, m2) = (freq.m1_i(), freq.m2_i());
        let mut indices = Vec::with_capacity(((2 * m1 + 1) * m2) as usize);
        for g1 in 0..=2 * m1 {
            for g2 in (-m2 + 1)..=m2 {
                if (g1 + g2).rem_euclid(2) == 0 {
                    indices.push(SpectralIndex::new(g1, g2));
                }
            }
        }
        Self::build(freq, SpectralKind::Rectangular, indices)
    }

    /// The triangular spectral index set Γ△: indices of K^(m) strictly
    /// below the diagonal g1/(2*m1) + |g2|/(2*m2) = 1, plus the indices of
    /// Γ□ sitting exactly on it.
    pub fn triangular(freq: FrequencyPair) -> Self {
        let (m1, m2) = (freq.m1_i(), freq.m2_i());
        let mut indices = Vec::new();
        for g1 in 0..=2 * m1 {
            for g2 in (-2 * m2 + 1)..=2 * m2 {
                let g = SpectralIndex::new(g1, g2);
                if !in_k(freq, g) {
                    continue;
                }
                // Exact integer form of g1/(2*m1) + |g2|/(2*m2) vs 1.
                let lhs = g1 * m2 + g2.abs() * m1;
                let rhs = 2 * m1 * m2;
                if lhs < rhs || (lhs == rhs && in_rect(freq, g)) {
                    indices.push(g);
                }
            }
        }
        Self::build(freq, SpectralKind::Triangular, indices)
    }

    /// The set obtained from Γ□ by replacing the subset Ω with its image
    /// under the flip operator.
    pub fn from_omega(freq: FrequencyPair, omega: &[SpectralIndex]) -> Result<Self> {
        for &g in omega {
            if !in_rect(freq, g) {
                return Err(Error::NotInRectangularSet { index: g });
            }
        }
        let rect = Self::rectangular(freq);
        let mut indices: Vec<SpectralIndex> = rect
            .indices
            .iter()
            .copied()
            .filter(|g| !omega.contains(g))
            .collect();
        indices.extend(omega.iter().map(|&g| flip(freq, g)));
        Ok(Self::build(freq, SpectralKind::Omega, indices))
    }

    /// The Ω subset whose flip turns the rectangle into the triangle:
    /// the rectangular indices beyond the diagonal.
    pub fn triangle_omega(freq: FrequencyPair) -> Vec<SpectralIndex> {
        let rect = Self::rectangular(freq);
        let (m1, m2) = (freq.m1_i(), freq.m2_i());
        rect.indices
            .iter()
            .copied()
            .filter(|g| g.g1 * m2 + g.g2.abs() * m1 > 2 * m1 * m2)
            .collect()
    }

    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    pub fn kind(&self) -> SpectralKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[SpectralIndex] {
        &self.indices
    }

    pub fn position(&self, gamma: SpectralIndex) -> Option<usize> {
        self.pos.get(&gamma).copied()
    }

    pub fn contains(&self, gamma: SpectralIndex) -> bool {
        self.pos.contains_key(&gamma)
    }

    /// Squared norm of χ_γ (k-th index) in the weighted inner product.
    pub fn norm(&self, k: usize) -> NormConst {
        self.norms[k]
    }

    /// Squared norm of the real basis function for the k-th index.
    pub fn real_norm(&self, k: usize) -> NormConst {
        self.real_norms[k]
    }

    /// Whether the k-th index belongs to Υ (its angular mirror is missing).
    pub fn is_upsilon(&self, k: usize) -> bool {
        self.in_upsilon[k]
    }

    /// The subset Υ = {γ ∈ Γ : (g1, -g2) ∉ Γ}.
    pub fn upsilon(&self) -> Vec<SpectralIndex> {
        self.indices
            .iter()
            .zip(&self.in_upsilon)
            .filter(|(_, &u)| u)
            .map(|(&g, _)| g)
            .collect()
    }

    /// The trigonometric form of the real basis function for the k-th
    /// index: cosine for γ ∉ Υ with g2 >= 0 and for γ ∈ Υ with g1 <= m1,
    /// sine otherwise.
    pub fn real_form(&self, k: usize) -> RealForm {
        let g = self.indices[k];
        let cosine = if self.in_upsilon[k] {
            g.g1 <= self.freq.m1_i()
        } else {
            g.g2 >= 0
        };
        if cosine {
            RealForm::Cosine
        } else {
            RealForm::Sine
        }
    }

    /// The real basis function χ_{R,γ} at node index i.
    pub fn chi_real(&self, gamma: SpectralIndex, i: NodeIndex) -> Result<f64> {
        let k = self
            .position(gamma)
            .ok_or(Error::SpectralIndexOutOfRange { index: gamma })?;
        let radial = (gamma.g1 as f64 * i.i1 as f64 * PI / (2.0 * self.freq.m1() as f64)).cos();
        let angle = gamma.g2 as f64 * i.i2 as f64 * PI / (2.0 * self.freq.m2() as f64);
        Ok(match self.real_form(k) {
            RealForm::Cosine => radial * angle.cos(),
            RealForm::Sine => radial * angle.sin(),
        })
    }

    /// JSON export: {kind, m1, m2, indices, upsilon}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "m1": self.freq.m1(),
            "m2": self.freq.m2(),
            "indices": self.indices.iter().map(|g| [g.g1, g.g2]).collect::<Vec<_>>(),
            "upsilon": self.upsilon().iter().map(|g| [g.g1, g.g2]).collect::<Vec<_>>(),
        })
    }
}

/// Weighted discrete inner product Σ_i w_i f(i) conj(g(i)).
pub fn inner_product(f: &DataGrid, g: &DataGrid) -> Result<Complex64> {
    if f.nodes().freq() != g.nodes().freq() {
        return Err(Error::FrequencyMismatch {
            lhs: (f.nodes().freq().m1(), f.nodes().freq().m2()),
            rhs: (g.nodes().freq().m1(), g.nodes().freq().m2()),
        });
    }
    let nodes = f.nodes();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..nodes.len() {
        sum += nodes.weight(k) * f.values()[k] * g.values()[k].conj();
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::NodalIndexSet;
    use approx::assert_abs_diff_eq;

    fn freq(m1: usize, m2: usize) -> FrequencyPair {
        FrequencyPair::new(m1, m2).unwrap()
    }

    #[test]
    fn rect_cardinality_and_smallest_case() {
        let s = SpectralIndexSet::rectangular(freq(5, 3));
        assert_eq!(s.len(), 33);

        let s = SpectralIndexSet::rectangular(freq(1, 1));
        assert_eq!(
            s.indices(),
            &[
                SpectralIndex::new(0, 0),
                SpectralIndex::new(1, 1),
                SpectralIndex::new(2, 0)
            ]
        );
    }

    #[test]
    fn rect_upsilon_is_upper_edge() {
        let s = SpectralIndexSet::rectangular(freq(5, 3));
        let ups = s.upsilon();
        assert_eq!(ups.len(), 5);
        assert!(ups.iter().all(|g| g.g2 == 3));
    }

    #[test]
    fn triangle_cardinality_and_upsilon() {
        let s = SpectralIndexSet::triangular(freq(5, 3));
        assert_eq!(s.len(), 33);
        // m1 + m2 even: Υ△ = {(m1, m2)}.
        assert_eq!(s.upsilon(), vec![SpectralIndex::new(5, 3)]);

        // m1 + m2 odd: Υ△ empty.
        let s = SpectralIndexSet::triangular(freq(2, 3));
        assert_eq!(s.len(), 15);
        assert!(s.upsilon().is_empty());
    }

    #[test]
    fn omega_constructions() {
        let f = freq(5, 3);
        // Empty Ω reproduces the rectangle.
        let s = SpectralIndexSet::from_omega(f, &[]).unwrap();
        assert_eq!(s.indices(), SpectralIndexSet::rectangular(f).indices());

        // The triangle's Ω reproduces the triangle.
        let omega = SpectralIndexSet::triangle_omega(f);
        let s = SpectralIndexSet::from_omega(f, &omega).unwrap();
        assert_eq!(s.indices(), SpectralIndexSet::triangular(f).indices());

        // Ω = {(0,0)} for m = (1,1).
        let f11 = freq(1, 1);
        let s = SpectralIndexSet::from_omega(f11, &[SpectralIndex::new(0, 0)]).unwrap();
        assert_eq!(
            s.indices(),
            &[
                SpectralIndex::new(1, 1),
                SpectralIndex::new(2, 0),
                SpectralIndex::new(2, 2)
            ]
        );

        // Ω outside the rectangle is rejected.
        assert!(SpectralIndexSet::from_omega(f, &[SpectralIndex::new(0, 4)]).is_err());
    }

    #[test]
    fn flip_examples_and_involution() {
        let f = freq(5, 3);
        assert_eq!(
            flip(f, SpectralIndex::new(0, 0)),
            SpectralIndex::new(10, 6)
        );
        assert_eq!(
            flip(f, SpectralIndex::new(10, 6)),
            SpectralIndex::new(0, 0)
        );
        for g1 in 0..=10 {
            for g2 in -5..=6 {
                let g = SpectralIndex::new(g1, g2);
                if in_k(f, g) {
                    assert_eq!(flip(f, flip(f, g)), g);
                }
            }
        }
    }

    #[test]
    fn glide_invariance_of_chi() {
        for (m1, m2) in [(2usize, 3usize), (5, 3), (4, 4)] {
            let f = freq(m1, m2);
            let nodes = NodalIndexSet::new(f);
            for g1 in 0..=(2 * m1 as i64) {
                for g2 in (-2 * m2 as i64 + 1)..=(2 * m2 as i64) {
                    let g = SpectralIndex::new(g1, g2);
                    if !in_k(f, g) {
                        continue;
                    }
                    let gf = flip(f, g);
                    for &i in nodes.indices() {
                        let a = chi(f, g, i);
                        let b = chi(f, gf, i);
                        assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
                        assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn chi_examples() {
        let f = freq(2, 3);
        let v = chi(f, SpectralIndex::new(0, 0), NodeIndex::new(1, 1));
        assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-15);
        let v = chi(f, SpectralIndex::new(2, 0), NodeIndex::new(1, 1));
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn gram_matrix_rectangular() {
        gram_check(&SpectralIndexSet::rectangular(freq(5, 3)));
        gram_check(&SpectralIndexSet::triangular(freq(5, 3)));
        gram_check(&SpectralIndexSet::triangular(freq(4, 4)));
    }

    fn gram_check(s: &SpectralIndexSet) {
        let nodes = NodalIndexSet::new(s.freq());
        for (a, &ga) in s.indices().iter().enumerate() {
            for (b, &gb) in s.indices().iter().enumerate() {
                let mut sum = Complex64::new(0.0, 0.0);
                for (k, &i) in nodes.indices().iter().enumerate() {
                    sum += nodes.weight(k) * chi(s.freq(), ga, i) * chi(s.freq(), gb, i).conj();
                }
                let expected = if a == b { s.norm(a).value() } else { 0.0 };
                assert_abs_diff_eq!(sum.re, expected, epsilon = 1e-12);
                assert_abs_diff_eq!(sum.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn real_gram_matrix() {
        for s in [
            SpectralIndexSet::rectangular(freq(5, 3)),
            SpectralIndexSet::rectangular(freq(4, 4)),
            SpectralIndexSet::triangular(freq(5, 3)),
            SpectralIndexSet::triangular(freq(2, 3)),
        ] {
            let nodes = NodalIndexSet::new(s.freq());
            for (a, &ga) in s.indices().iter().enumerate() {
                for (b, &gb) in s.indices().iter().enumerate() {
                    let mut sum = 0.0;
                    for (k, &i) in nodes.indices().iter().enumerate() {
                        sum += nodes.weight(k)
                            * s.chi_real(ga, i).unwrap()
                            * s.chi_real(gb, i).unwrap();
                    }
                    let expected = if a == b { s.real_norm(a).value() } else { 0.0 };
                    assert_abs_diff_eq!(sum, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn json_export_shape() {
        let s = SpectralIndexSet::rectangular(freq(2, 3));
        let v = s.to_json();
        assert_eq!(v["kind"], "rectangular");
        assert_eq!(v["indices"].as_array().unwrap().len(), 15);
    }
}
