//! The nodal index set I^(m), node coordinates, weights and the
//! correspondence between curve samples and nodes.
//!
//! An index i = (i1, i2) belongs to I^(m) iff
//!
//! ```text
//! 0 <= i1 <= m1,   -2*m2 < i2 <= 2*m2,   i2 <= 0 if i1 = m1,   i1 + i2 even,
//! ```
//!
//! and the associated node is (r, theta) = (cos(i1*pi/(2*m1)), i2*pi/(2*m2))
//! in polar coordinates. All indices with i1 = m1 share the center of the
//! disk; they are kept as distinct indices but collapse to a single point.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::curve::{FrequencyPair, SampleClock};
use crate::error::{Error, Result};

/// An index of the nodal index set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeIndex {
    pub i1: i64,
    pub i2: i64,
}

impl NodeIndex {
    pub fn new(i1: i64, i2: i64) -> Self {
        Self { i1, i2 }
    }
}

/// Wrap `x` into the half-open interval (upper - modulus, upper].
pub(crate) fn wrap_into(x: i64, modulus: i64, upper: i64) -> i64 {
    let r = x.rem_euclid(modulus);
    if r > upper {
        r - modulus
    } else {
        r
    }
}

/// Membership test for I^(m).
pub fn contains(freq: FrequencyPair, i: NodeIndex) -> bool {
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    i.i1 >= 0
        && i.i1 <= m1
        && i.i2 > -2 * m2
        && i.i2 <= 2 * m2
        && (i.i1 < m1 || i.i2 <= 0)
        && (i.i1 + i.i2).rem_euclid(2) == 0
}

/// A node position on the unit disk, in polar and Cartesian coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint {
    pub r: f64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self {
            r,
            theta,
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }
}

/// Polar coordinates of the node with index `i`.
pub fn node_coords(freq: FrequencyPair, i: NodeIndex) -> Result<DiskPoint> {
    if !contains(freq, i) {
        return Err(Error::IndexOutOfRange { index: i });
    }
    let r = (i.i1 as f64 * PI / (2.0 * freq.m1() as f64)).cos();
    let theta = i.i2 as f64 * PI / (2.0 * freq.m2() as f64);
    Ok(DiskPoint::from_polar(r, theta))
}

/// The nodal index set in its canonical (lexicographic) order, together
/// with the quadrature-type weights w_i.
///
/// The weights are integer multiples of 1/(4*m1*m2): numerator 1 on the
/// boundary column i1 = 0 and 2 otherwise; they sum to one exactly.
#[derive(Debug, Clone)]
pub struct NodalIndexSet {
    freq: FrequencyPair,
    indices: Vec<NodeIndex>,
}

impl NodalIndexSet {
    pub fn new(freq: FrequencyPair) -> Self {
        let (m1, m2) = (freq.m1_i(), freq.m2_i());
        let mut indices = Vec::with_capacity(((2 * m1 + 1) * m2) as usize);
        for i1 in 0..=m1 {
            for i2 in (-2 * m2 + 1)..=(2 * m2) {
                let i = NodeIndex::new(i1, i2);
                if contains(freq, i) {
                    indices.push(i);
                }
            }
        }
        Self { freq, indices }
    }

    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[NodeIndex] {
        &self.indices
    }

    /// Position of `i` in the canonical order, computed arithmetically:
    /// each column i1 < m1 holds 2*m2 indices in ascending i2 order, and
    /// the admissible i2 of a column start at -2*m2 + 1 or -2*m2 + 2
    /// depending on the parity of i1.
    pub fn position(&self, i: NodeIndex) -> Option<usize> {
        if !contains(self.freq, i) {
            return None;
        }
        let m2 = self.freq.m2_i();
        let first = -2 * m2 + 2 - i.i1.rem_euclid(2);
        Some((i.i1 * 2 * m2 + (i.i2 - first) / 2) as usize)
    }

    pub fn contains(&self, i: NodeIndex) -> bool {
        contains(self.freq, i)
    }

    /// Numerator of the weight of the k-th index, over denominator 4*m1*m2.
    pub fn weight_numer(&self, k: usize) -> u64 {
        if self.indices[k].i1 == 0 {
            1
        } else {
            2
        }
    }

    /// Weight w_i of the k-th index.
    pub fn weight(&self, k: usize) -> f64 {
        self.weight_numer(k) as f64 / (4.0 * self.freq.m1() as f64 * self.freq.m2() as f64)
    }

    /// Indices with both components even (extremal points of the variety).
    pub fn even_part(&self) -> Vec<NodeIndex> {
        self.indices
            .iter()
            .copied()
            .filter(|i| i.i1.rem_euclid(2) == 0)
            .collect()
    }

    /// Indices with both components odd (zeros of the variety).
    pub fn odd_part(&self) -> Vec<NodeIndex> {
        self.indices
            .iter()
            .copied()
            .filter(|i| i.i1.rem_euclid(2) != 0)
            .collect()
    }

    /// Coordinates of the k-th node.
    pub fn coords(&self, k: usize) -> DiskPoint {
        node_coords(self.freq, self.indices[k]).expect("stored index is valid")
    }

    /// Number of boundary nodes (i1 = 0).
    pub fn boundary_count(&self) -> usize {
        self.indices.iter().filter(|i| i.i1 == 0).count()
    }

    /// Number of indices sharing the disk center (i1 = m1).
    pub fn center_multiplicity(&self) -> usize {
        self.indices
            .iter()
            .filter(|i| i.i1 == self.freq.m1_i())
            .count()
    }
}

/// The node index hit by curve sample (l, rho): sample number l of the
/// rotated curve with alpha = rho/m2 lands on the node with this index.
///
/// The index is determined by the congruences
///
/// ```text
/// i1 = u*(v*l + (1 - v)*m1)   (mod 4*m1)
/// i2 = l - 2*rho - (1 - v)*m2 (mod 4*m2)
/// ```
///
/// for signs u, v in {-1, 1}; exactly one admissible index solves them.
pub fn index_from_sample(freq: FrequencyPair, l: usize, rho: usize) -> Result<NodeIndex> {
    let clock = SampleClock::new(freq);
    if l >= clock.count() {
        return Err(Error::SampleOutOfRange {
            l,
            count: clock.count(),
        });
    }
    let (m1, m2) = (freq.m1_i(), freq.m2_i());
    let l = l as i64;
    let rho = rho as i64;
    let mut found: Option<NodeIndex> = None;
    for v in [1i64, -1] {
        for u in [1i64, -1] {
            let i1 = (u * (v * l + (1 - v) * m1)).rem_euclid(4 * m1);
            if i1 > m1 {
                continue;
            }
            let i2 = wrap_into(l - 2 * rho - (1 - v) * m2, 4 * m2, 2 * m2);
            let i = NodeIndex::new(i1, i2);
            if contains(freq, i) {
                match found {
                    None => found = Some(i),
                    Some(prev) => debug_assert_eq!(prev, i, "ambiguous sample ({l}, {rho})"),
                }
            }
        }
    }
    found.ok_or(Error::SampleOutOfRange {
        l: l as usize,
        count: clock.count(),
    })
}

/// Distinct node points of the disk: one point per index, with the center
/// indices collapsed to a single point at the origin.
pub fn node_set(freq: FrequencyPair) -> Vec<DiskPoint> {
    let set = NodalIndexSet::new(freq);
    let mut points = Vec::with_capacity(set.len());
    let mut center_seen = false;
    for &i in set.indices() {
        if i.i1 == freq.m1_i() {
            if !center_seen {
                points.push(DiskPoint::from_polar(0.0, 0.0));
                center_seen = true;
            }
        } else {
            points.push(node_coords(freq, i).expect("valid index"));
        }
    }
    points
}

/// Write the node table as CSV with columns i1,i2,r,theta,x,y,weight.
pub fn write_nodes_csv<W: Write>(set: &NodalIndexSet, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "i1,i2,r,theta,x,y,weight")?;
    for (k, &i) in set.indices().iter().enumerate() {
        let p = set.coords(k);
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i.i1,
            i.i2,
            p.r,
            p.theta,
            p.x,
            p.y,
            set.weight(k)
        )?;
    }
    Ok(())
}
