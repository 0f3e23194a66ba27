//! Rhodonea (rose) curves and their equidistant parameter samples.
//!
//! The curve with frequency pair m = (m1, m2) and rotation alpha (in units
//! of pi) is
//!
//! ```text
//! rho(t) = cos(m2*t) * (cos(m1*t - alpha*pi), sin(m1*t - alpha*pi))
//! ```
//!
//! Sampling it at t_l = l*pi/(2*m1*m2) produces the node points used for
//! interpolation and quadrature on the unit disk.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Parity of an integer quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A pair of positive angular frequencies (m1, m2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrequencyPair {
    m1: usize,
    m2: usize,
    g: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FrequencyPair {
    /// Create a frequency pair; both components must be positive.
    pub fn new(m1: usize, m2: usize) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::InvalidFrequency { m1, m2 });
        }
        Ok(Self {
            m1,
            m2,
            g: gcd(m1, m2),
        })
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    /// Greatest common divisor of the two components.
    pub fn gcd(&self) -> usize {
        self.g
    }

    pub fn is_coprime(&self) -> bool {
        self.g == 1
    }

    /// The coprime pair (m1/g, m2/g).
    pub fn reduced(&self) -> FrequencyPair {
        FrequencyPair {
            m1: self.m1 / self.g,
            m2: self.m2 / self.g,
            g: 1,
        }
    }

    /// Parity of m1/g + m2/g, which controls the minimal period and the
    /// traversal structure of the curve.
    pub fn coprime_sum_parity(&self) -> Parity {
        if (self.m1 / self.g + self.m2 / self.g) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Signed components as i64, convenient for index arithmetic.
    pub(crate) fn m1_i(&self) -> i64 {
        self.m1 as i64
    }

    pub(crate) fn m2_i(&self) -> i64 {
        self.m2 as i64
    }
}

/// A rhodonea curve with a rotation offset `alpha` given in units of pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhodoneaCurve {
    freq: FrequencyPair,
    alpha: f64,
}

impl RhodoneaCurve {
    pub fn new(freq: FrequencyPair, alpha: f64) -> Self {
        Self { freq, alpha }
    }

    pub fn freq(&self) -> FrequencyPair {
        self.freq
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Evaluate the curve at parameter `t`.
    pub fn eval(&self, t: f64) -> [f64; 2] {
        let radial = (self.freq.m2 as f64 * t).cos();
        let phase = self.freq.m1 as f64 * t - self.alpha * PI;
        [radial * phase.cos(), radial * phase.sin()]
    }
}

/// The equidistant sample times t_l = l*pi/(2*m1*m2) for l = 0, ...,
/// 4*m1*m2/g - 1, covering one minimal period of the curve.
#[derive(Debug, Clone, Copy)]
pub struct SampleClock {
    freq: FrequencyPair,
}

impl SampleClock {
    pub fn new(freq: FrequencyPair) -> Self {
        Self { freq }
    }

    /// Number of samples in one minimal period.
    pub fn count(&self) -> usize {
        4 * self.freq.m1 * self.freq.m2 / self.freq.g
    }

    /// The sample time t_l.
    pub fn time(&self, l: usize) -> Result<f64> {
        if l >= self.count() {
            return Err(Error::SampleOutOfRange {
                l,
                count: self.count(),
            });
        }
        Ok(l as f64 * PI / (2.0 * self.freq.m1 as f64 * self.freq.m2 as f64))
    }
}

/// Minimal period of the curve: 2*pi/g if m1/g + m2/g is odd, pi/g if even.
pub fn minimal_period(freq: FrequencyPair) -> f64 {
    match freq.coprime_sum_parity() {
        Parity::Odd => 2.0 * PI / freq.g as f64,
        Parity::Even => PI / freq.g as f64,
    }
}

/// Number of parameters s in one minimal period with rho(s) = rho(t_l),
/// counting t_l itself (the self-intersection multiplicity of the sample).
///
/// Only defined for coprime frequency pairs. The classification is:
/// the 2*m2 center visits l = m1 (mod 2*m1) all map to the origin; away
/// from the center a sample is a double point unless it sits on a petal
/// apex, with the doubling pattern depending on the parity of m1 + m2.
pub fn classify_sample(freq: FrequencyPair, l: usize) -> Result<usize> {
    if !freq.is_coprime() {
        return Err(Error::NotCoprime {
            m1: freq.m1,
            m2: freq.m2,
            g: freq.g,
        });
    }
    let clock = SampleClock::new(freq);
    if l >= clock.count() {
        return Err(Error::SampleOutOfRange {
            l,
            count: clock.count(),
        });
    }
    let (m1, m2) = (freq.m1, freq.m2);
    if l % (2 * m1) == m1 {
        // Center visit: all 2*m2 center samples coincide at the origin.
        return Ok(2 * m2);
    }
    match freq.coprime_sum_parity() {
        Parity::Odd => {
            if l % m1 != 0 {
                Ok(2)
            } else {
                Ok(1)
            }
        }
        Parity::Even => {
            // The curve is traversed twice per 2*pi, so every point appears
            // at least twice; genuine crossings appear four times.
            if l % 2 == 0 && (l / 2) % m1 != 0 {
                Ok(4)
            } else {
                Ok(2)
            }
        }
    }
}

/// Distinct points traced by the curve at the sample times, deduplicated
/// with an absolute tolerance of 1e-9.
pub fn curve_nodes(curve: &RhodoneaCurve) -> Vec<[f64; 2]> {
    let clock = SampleClock::new(curve.freq());
    let mut points: Vec<[f64; 2]> = Vec::new();
    for l in 0..clock.count() {
        let p = curve.eval(clock.time(l).expect("l < count"));
        let dup = points
            .iter()
            .any(|q| (q[0] - p[0]).abs() <= 1e-9 && (q[1] - p[1]).abs() <= 1e-9);
        if !dup {
            points.push(p);
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_zero_frequency() {
        assert!(FrequencyPair::new(0, 3).is_err());
        assert!(FrequencyPair::new(2, 0).is_err());
    }

    #[test]
    fn gcd_and_parity() {
        let f = FrequencyPair::new(4, 4).unwrap();
        assert_eq!(f.gcd(), 4);
        assert_eq!(f.reduced().m1(), 1);
        assert_eq!(f.coprime_sum_parity(), Parity::Even);

        let f = FrequencyPair::new(2, 3).unwrap();
        assert!(f.is_coprime());
        assert_eq!(f.coprime_sum_parity(), Parity::Odd);
    }

    #[test]
    fn eval_at_zero() {
        // rho(0) = (cos(alpha*pi), -sin(alpha*pi)).
        let f = FrequencyPair::new(2, 3).unwrap();
        let c = RhodoneaCurve::new(f, 0.0);
        let p = c.eval(0.0);
        assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-15);

        let c = RhodoneaCurve::new(f, 0.5);
        let p = c.eval(0.0);
        assert_abs_diff_eq!(p[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], -1.0, epsilon = 1e-15);
    }

    #[test]
    fn curve_stays_in_unit_disk() {
        let c = RhodoneaCurve::new(FrequencyPair::new(5, 3).unwrap(), 0.25);
        for k in 0..5000 {
            let t = k as f64 * 2.0 * PI / 5000.0;
            let [x, y] = c.eval(t);
            assert!(x * x + y * y <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn periodicity() {
        for (m1, m2) in [(2, 3), (5, 3), (4, 4), (2, 6), (3, 3)] {
            let f = FrequencyPair::new(m1, m2).unwrap();
            let c = RhodoneaCurve::new(f, 0.3);
            let p = minimal_period(f);
            for k in 0..200 {
                let t = k as f64 * 0.037;
                let a = c.eval(t);
                let b = c.eval(t + p);
                assert_abs_diff_eq!(a[0], b[0], epsilon = 1e-10);
                assert_abs_diff_eq!(a[1], b[1], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn minimal_period_examples() {
        // (2, 3): sum odd, coprime -> 2*pi.
        let f = FrequencyPair::new(2, 3).unwrap();
        assert_abs_diff_eq!(minimal_period(f), 2.0 * PI, epsilon = 1e-15);
        // (4, 4): reduces to (1, 1), sum even, g = 4 -> pi/4.
        let f = FrequencyPair::new(4, 4).unwrap();
        assert_abs_diff_eq!(minimal_period(f), PI / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn point_symmetry_odd_sum() {
        // For m1 + m2 odd the curve is point symmetric: rho(t - pi) = -rho(t).
        let c = RhodoneaCurve::new(FrequencyPair::new(2, 3).unwrap(), 0.1);
        for k in 0..100 {
            let t = k as f64 * 0.063;
            let a = c.eval(t);
            let b = c.eval(t - PI);
            assert_abs_diff_eq!(a[0], -b[0], epsilon = 1e-12);
            assert_abs_diff_eq!(a[1], -b[1], epsilon = 1e-12);
        }
    }

    #[test]
    fn classify_sample_examples() {
        let f = FrequencyPair::new(2, 3).unwrap();
        // Center visit: l = m1 = 2 -> 2*m2 = 6.
        assert_eq!(classify_sample(f, 2).unwrap(), 6);
        // Double point at l = 1.
        assert_eq!(classify_sample(f, 1).unwrap(), 2);
        // Petal apex at l = 0.
        assert_eq!(classify_sample(f, 0).unwrap(), 1);

        let f = FrequencyPair::new(5, 3).unwrap();
        assert_eq!(classify_sample(f, 5).unwrap(), 6);
        assert_eq!(classify_sample(f, 2).unwrap(), 4);

        let f = FrequencyPair::new(4, 4).unwrap();
        assert!(classify_sample(f, 0).is_err());
    }

    #[test]
    fn classify_sample_matches_brute_force() {
        // Count coinciding sample points directly and compare with the
        // closed-form classification, for all coprime pairs up to (6, 5).
        for m1 in 1..=6usize {
            for m2 in 1..=5usize {
                if gcd(m1, m2) != 1 {
                    continue;
                }
                let f = FrequencyPair::new(m1, m2).unwrap();
                let c = RhodoneaCurve::new(f, 0.0);
                let clock = SampleClock::new(f);
                let pts: Vec<[f64; 2]> = (0..clock.count())
                    .map(|l| c.eval(clock.time(l).unwrap()))
                    .collect();
                for l in 0..clock.count() {
                    let hits = (0..clock.count())
                        .filter(|&k| {
                            (pts[k][0] - pts[l][0]).abs() < 1e-10
                                && (pts[k][1] - pts[l][1]).abs() < 1e-10
                        })
                        .count();
                    assert_eq!(
                        classify_sample(f, l).unwrap(),
                        hits,
                        "multiplicity mismatch at m = ({m1}, {m2}), l = {l}"
                    );
                }
            }
        }
    }

    #[test]
    fn curve_nodes_count_odd_sum() {
        // Coprime with m1 + m2 odd: 2*m1*m2 + 1 distinct points.
        for (m1, m2) in [(1, 2), (2, 3), (4, 3), (2, 5), (5, 2)] {
            let f = FrequencyPair::new(m1, m2).unwrap();
            let nodes = curve_nodes(&RhodoneaCurve::new(f, 0.0));
            assert_eq!(nodes.len(), 2 * m1 * m2 + 1);
        }
    }
}
