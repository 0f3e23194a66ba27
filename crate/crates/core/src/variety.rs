//! The rhodonea variety: the algebraic curve containing all rotated
//! rhodonea curves, and the extremality structure of the nodes on it.
//!
//! In polar coordinates the variety is described by
//!
//! ```text
//! T_m1(r)^2 = cos(m2 * theta)^2,
//! ```
//!
//! and in Cartesian coordinates by
//!
//! ```text
//! (x^2 + y^2)^m2 * T_m1(sqrt(x^2 + y^2))^2 = H_m2(x, y)^2,
//! ```
//!
//! where H_m2 is the harmonic polynomial with r^m2 * cos(m2*theta) =
//! H_m2(x, y). Nodes are exactly the points where both sides attain 0
//! (odd part of the index set) or 1 (even part).

use crate::curve::FrequencyPair;
use crate::error::{Error, Result};
use crate::nodes::{self, NodeIndex};

/// Chebyshev polynomial of the first kind, T_n(r) = cos(n * arccos(r)).
pub fn chebyshev_t(n: usize, r: f64) -> f64 {
    if (-1.0..=1.0).contains(&r) {
        (n as f64 * r.acos()).cos()
    } else {
        // Fall back to the recurrence outside [-1, 1].
        let (mut a, mut b) = (1.0, r);
        match n {
            0 => a,
            1 => b,
            _ => {
                for _ in 2..=n {
                    let c = 2.0 * r * b - a;
                    a = b;
                    b = c;
                }
                b
            }
        }
    }
}

/// The harmonic polynomial H_n with H_n(r*cos(t), r*sin(t)) = r^n * cos(n*t):
/// H_n(x, y) = sum_k (-1)^k * C(n, 2k) * x^(n-2k) * y^(2k).
pub fn h_poly(n: usize, x: f64, y: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0; // C(n, 0)
    let mut k2 = 0usize; // 2k
    let mut sign = 1.0;
    while k2 <= n {
        sum += sign * binom * x.powi((n - k2) as i32) * y.powi(k2 as i32);
        // C(n, 2k+2) = C(n, 2k) * (n-2k)(n-2k-1) / ((2k+1)(2k+2))
        if k2 + 2 <= n {
            binom *= ((n - k2) * (n - k2 - 1)) as f64 / ((k2 + 1) * (k2 + 2)) as f64;
        }
        sign = -sign;
        k2 += 2;
    }
    sum
}

/// Which side of the variety's extremal structure a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremality {
    /// Both defining terms attain their maximum 1 (even index part).
    MaxCase,
    /// Both defining terms vanish (odd index part).
    ZeroCase,
}

/// The rhodonea variety for a frequency pair.
#[derive(Debug, Clone, Copy)]
pub struct VarietySpec {
    freq: FrequencyPair,
}

impl VarietySpec {
    pub fn new(freq: FrequencyPair) -> Self {
        Self { freq }
    }

    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    /// Defect of the Cartesian equation at (x, y); zero on the variety.
    pub fn residual(&self, x: f64, y: f64) -> Result<f64> {
        let rr = x * x + y * y;
        if rr > 1.0 + 1e-12 {
            return Err(Error::RadiusOutOfRange { r: rr.sqrt() });
        }
        let (m1, m2) = (self.freq.m1(), self.freq.m2());
        let t = chebyshev_t(m1, rr.sqrt());
        let h = h_poly(m2, x, y);
        Ok(rr.powi(m2 as i32) * t * t - h * h)
    }

    /// Defect of the polar equation T_m1(r)^2 - cos(m2*theta)^2.
    pub fn residual_polar(&self, r: f64, theta: f64) -> f64 {
        let t = chebyshev_t(self.freq.m1(), r);
        let c = (self.freq.m2() as f64 * theta).cos();
        t * t - c * c
    }

    /// Classify a node as an extremal point or a zero of the variety's
    /// defining terms; verified numerically to 1e-12.
    pub fn node_extremality(&self, i: NodeIndex) -> Result<Extremality> {
        let p = nodes::node_coords(self.freq, i)?;
        let t = chebyshev_t(self.freq.m1(), p.r);
        let c = (self.freq.m2() as f64 * p.theta).cos();
        let (t2, c2) = (t * t, c * c);
        if (t2 - 1.0).abs() <= 1e-12 && (c2 - 1.0).abs() <= 1e-12 {
            Ok(Extremality::MaxCase)
        } else if t2.abs() <= 1e-12 && c2.abs() <= 1e-12 {
            Ok(Extremality::ZeroCase)
        } else {
            // Cannot happen for an admissible index.
            Err(Error::IndexOutOfRange { index: i })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{RhodoneaCurve, SampleClock};
    use crate::nodes::NodalIndexSet;
    use approx::assert_abs_diff_eq;

    #[test]
    fn h_poly_low_orders() {
        // H_1 = x, H_2 = x^2 - y^2.
        assert_abs_diff_eq!(h_poly(1, 0.3, -0.7), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(h_poly(2, 0.3, -0.7), 0.09 - 0.49, epsilon = 1e-15);
    }

    #[test]
    fn h_poly_trig_identity() {
        for n in 0..=8usize {
            for k in 0..40 {
                let theta = k as f64 * 0.157 - 3.0;
                let r: f64 = 0.85;
                let lhs = h_poly(n, r * theta.cos(), r * theta.sin());
                let rhs = r.powi(n as i32) * (n as f64 * theta).cos();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn chebyshev_endpoints() {
        for n in 0..=10usize {
            assert_abs_diff_eq!(chebyshev_t(n, 1.0), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(
                chebyshev_t(n, -1.0),
                if n % 2 == 0 { 1.0 } else { -1.0 },
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn residual_examples() {
        // m = (1, 1): the variety contains the boundary point (1, 0).
        let v = VarietySpec::new(FrequencyPair::new(1, 1).unwrap());
        assert_abs_diff_eq!(v.residual(1.0, 0.0).unwrap(), 0.0, epsilon = 1e-14);
        // m = (1, 2) at (1/2, 1/2): (x^2+y^2)^3 - (x^2-y^2)^2 = 1/8.
        let v12 = VarietySpec::new(FrequencyPair::new(1, 2).unwrap());
        assert_abs_diff_eq!(v12.residual(0.5, 0.5).unwrap(), 0.125, epsilon = 1e-14);
        // Outside the disk: error.
        assert!(v.residual(1.2, 0.0).is_err());
    }

    #[test]
    fn curve_lies_on_variety() {
        for (m1, m2) in [(1usize, 1usize), (2, 3), (5, 3), (4, 4)] {
            let freq = FrequencyPair::new(m1, m2).unwrap();
            let v = VarietySpec::new(freq);
            let g = freq.gcd();
            for rho in 0..2 * g {
                let curve = RhodoneaCurve::new(freq, rho as f64 / m2 as f64);
                for k in 0..200 {
                    let t = k as f64 * 0.031;
                    let [x, y] = curve.eval(t);
                    assert_abs_diff_eq!(v.residual(x, y).unwrap(), 0.0, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn nodes_split_into_extremal_and_zero_part() {
        for (m1, m2) in [(2usize, 3usize), (5, 3), (4, 4)] {
            let freq = FrequencyPair::new(m1, m2).unwrap();
            let v = VarietySpec::new(freq);
            let set = NodalIndexSet::new(freq);
            for &i in set.indices() {
                let ex = v.node_extremality(i).unwrap();
                let expected = if i.i1.rem_euclid(2) == 0 {
                    Extremality::MaxCase
                } else {
                    Extremality::ZeroCase
                };
                assert_eq!(ex, expected, "index ({}, {})", i.i1, i.i2);
            }
        }
    }

    #[test]
    fn polar_and_cartesian_residuals_agree_on_samples() {
        let freq = FrequencyPair::new(5, 3).unwrap();
        let v = VarietySpec::new(freq);
        let clock = SampleClock::new(freq);
        let curve = RhodoneaCurve::new(freq, 0.0);
        for l in 0..clock.count() {
            let [x, y] = curve.eval(clock.time(l).unwrap());
            let r = (x * x + y * y).sqrt();
            let theta = y.atan2(x);
            // Both residuals vanish on the curve.
            assert_abs_diff_eq!(v.residual(x, y).unwrap(), 0.0, epsilon = 1e-10);
            assert_abs_diff_eq!(v.residual_polar(r, theta), 0.0, epsilon = 1e-10);
        }
    }
}
