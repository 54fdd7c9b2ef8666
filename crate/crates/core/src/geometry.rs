//! Gauss–Bonnet on rotationally symmetric football metrics, Poincaré–Hopf
//! index sums, and areas of constant-curvature metrics.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::euler::euler_closed_form;
use crate::fundamental::is_good;
use crate::rational::Rational;
use crate::signature::Signature;

/// Default number of Simpson subintervals.
pub const DEFAULT_INTERVALS: usize = 4096;

/// Default relative tolerance for the Gauss–Bonnet comparison.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("interval count must be even and at least 4, got {0}")]
    BadIntervals(usize),
    #[error("zero of local order {0} does not match a cone point")]
    OrderMismatch(u32),
    #[error("{0} has mirrors")]
    NotClosed(String),
    #[error("{0} is bad and carries no constant-curvature metric")]
    BadOrbifold(String),
    #[error("curvature {curvature} has the wrong sign for euler characteristic {euler}")]
    SignMismatch { curvature: Rational, euler: Rational },
    #[error("flat metric: the area is not determined")]
    FlatIndeterminate,
}

/// Profile family for `f(r) = sin(r)·g(r)`, where `g` runs from `1/p` at
/// `r = 0` to `1/q` at `r = π`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// `g` interpolates by `3t² − 2t³`.
    #[default]
    Smoothstep,
    /// `g` interpolates linearly.
    Linear,
    /// Smoothstep plus `amplitude · sin² r`.
    Bulged { amplitude: f64 },
}

/// The metric `dr² + f(r)² dθ²` on `[0, π] × [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpindleMetric {
    pub p: u32,
    pub q: u32,
    pub profile: Profile,
}

impl SpindleMetric {
    pub fn new(p: u32, q: u32, profile: Profile) -> Result<Self, GeometryError> {
        if p == 0 || q == 0 {
            return Err(GeometryError::InvalidProfile("cone orders must be positive".into()));
        }
        if let Profile::Bulged { amplitude } = profile {
            if !amplitude.is_finite() {
                return Err(GeometryError::InvalidProfile("amplitude must be finite".into()));
            }
        }
        Ok(SpindleMetric { p, q, profile })
    }

    /// `(g, g′, g″)` at `r`.
    fn g(&self, r: f64) -> (f64, f64, f64) {
        let (a, b) = (1.0 / f64::from(self.p), 1.0 / f64::from(self.q));
        let d = b - a;
        let t = r / PI;
        let (s, s1, s2) = match self.profile {
            Profile::Linear => (t, 1.0, 0.0),
            _ => (3.0 * t * t - 2.0 * t * t * t, 6.0 * t - 6.0 * t * t, 6.0 - 12.0 * t),
        };
        let (mut g, mut g1, mut g2) = (a + d * s, d * s1 / PI, d * s2 / (PI * PI));
        if let Profile::Bulged { amplitude } = self.profile {
            let (sn, cs) = r.sin_cos();
            g += amplitude * sn * sn;
            g1 += amplitude * 2.0 * sn * cs;
            g2 += amplitude * 2.0 * (cs * cs - sn * sn);
        }
        (g, g1, g2)
    }

    pub fn f(&self, r: f64) -> f64 {
        r.sin() * self.g(r).0
    }

    pub fn f_second(&self, r: f64) -> f64 {
        let (g, g1, g2) = self.g(r);
        let (sn, cs) = r.sin_cos();
        -sn * g + 2.0 * cs * g1 + sn * g2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussBonnetReport {
    pub total_curvature: f64,
    pub area: f64,
    pub target: f64,
    pub rel_error: f64,
}

/// Composite Simpson rule on `[a, b]`, summed left to right.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let h = (b - a) / intervals as f64;
    let mut sum = f(a);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum += f(b);
    sum * h / 3.0
}

/// Integrates the curvature form `K dA = −f″ dr dθ` and the area form
/// `f dr dθ` of the spindle metric, against the target `2π(1/p + 1/q)`.
pub fn spindle_gauss_bonnet(
    p: u32,
    q: u32,
    intervals: usize,
    profile: Profile,
) -> Result<GaussBonnetReport, GeometryError> {
    if intervals < 4 || intervals % 2 != 0 {
        return Err(GeometryError::BadIntervals(intervals));
    }
    let m = SpindleMetric::new(p, q, profile)?;
    let h = PI / intervals as f64;
    if let Some(i) = (1..intervals).find(|&i| m.f(i as f64 * h) <= 0.0) {
        return Err(GeometryError::InvalidProfile(format!(
            "f is not positive at r = {}",
            i as f64 * h
        )));
    }
    let total_curvature = 2.0 * PI * simpson(|r| -m.f_second(r), 0.0, PI, intervals);
    let area = 2.0 * PI * simpson(|r| m.f(r), 0.0, PI, intervals);
    let target = 2.0 * PI * (1.0 / f64::from(p) + 1.0 / f64::from(q));
    Ok(GaussBonnetReport {
        total_curvature,
        area,
        target,
        rel_error: (total_curvature - target).abs() / target.abs(),
    })
}

/// A zero of a vector field: the local group order at the point and the
/// index of the lifted field in a chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFieldZero {
    pub local_order: u32,
    pub lift_index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareHopfReport {
    pub pass: bool,
    pub index_sum: Rational,
    pub euler: Rational,
}

/// Compares `Σ lift_index / local_order` with `χ^orb` exactly. Zeros of
/// order greater than 1 must sit at distinct cone points of matching order.
pub fn poincare_hopf_check(
    sig: &Signature,
    zeros: &[VectorFieldZero],
) -> Result<PoincareHopfReport, GeometryError> {
    if !sig.is_closed() {
        return Err(GeometryError::NotClosed(sig.to_string()));
    }
    let mut available: Vec<u32> = sig.cone_points().to_vec();
    for z in zeros {
        match z.local_order {
            0 => return Err(GeometryError::OrderMismatch(0)),
            1 => {}
            n => match available.iter().position(|&p| p == n) {
                Some(i) => {
                    available.swap_remove(i);
                }
                None => return Err(GeometryError::OrderMismatch(n)),
            },
        }
    }
    let index_sum: Rational = zeros
        .iter()
        .map(|z| Rational::new(z.lift_index, i64::from(z.local_order)))
        .sum();
    let euler = euler_closed_form(sig);
    Ok(PoincareHopfReport {
        pass: index_sum == euler,
        index_sum,
        euler,
    })
}

/// Area of a metric of constant curvature `K`, as a rational multiple of
/// `π`: `area = 2π χ^orb / K`.
pub fn constant_curvature_area(sig: &Signature, curvature: Rational) -> Result<Rational, GeometryError> {
    // bad 2-orbifolds all have orientable underlying surfaces
    let good = !sig.orientable() || is_good(sig).unwrap_or(true);
    if !good {
        return Err(GeometryError::BadOrbifold(sig.to_string()));
    }
    let euler = euler_closed_form(sig);
    if euler.is_zero() && curvature.is_zero() {
        return Err(GeometryError::FlatIndeterminate);
    }
    if euler.signum() != curvature.signum() {
        return Err(GeometryError::SignMismatch { curvature, euler });
    }
    Ok(euler * 2 / curvature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;
    use proptest::prelude::*;

    fn sig(s: &str) -> Signature {
        parse_signature(s).unwrap()
    }

    fn zero(local_order: u32, lift_index: i64) -> VectorFieldZero {
        VectorFieldZero {
            local_order,
            lift_index,
        }
    }

    #[test]
    fn round_sphere() {
        let r = spindle_gauss_bonnet(1, 1, DEFAULT_INTERVALS, Profile::default()).unwrap();
        assert!((r.target - 4.0 * PI).abs() < 1e-12);
        assert!(r.rel_error < 1e-6);
        assert!((r.area - 4.0 * PI).abs() < 1e-6 * 4.0 * PI);
    }

    #[test]
    fn footballs_converge() {
        for (p, q) in [(1, 1), (2, 3), (3, 4), (5, 5)] {
            let r = spindle_gauss_bonnet(p, q, DEFAULT_INTERVALS, Profile::default()).unwrap();
            assert!(r.rel_error <= DEFAULT_TOLERANCE, "({p},{q}): {}", r.rel_error);
        }
        let r = spindle_gauss_bonnet(2, 3, DEFAULT_INTERVALS, Profile::default()).unwrap();
        assert!((r.target - 5.235987755982988).abs() < 1e-12);
        let r = spindle_gauss_bonnet(5, 5, DEFAULT_INTERVALS, Profile::default()).unwrap();
        let chi = euler_closed_form(&sig("O0(5,5)")).to_f64();
        assert!((r.target - 2.0 * PI * chi).abs() < 1e-12);
    }

    #[test]
    fn endpoint_derivatives() {
        for profile in [Profile::Smoothstep, Profile::Linear, Profile::Bulged { amplitude: 0.3 }] {
            let m = SpindleMetric::new(3, 7, profile).unwrap();
            let h = 1e-6;
            assert!(((m.f(h) - m.f(0.0)) / h - 1.0 / 3.0).abs() < 1e-5);
            assert!(((m.f(PI) - m.f(PI - h)) / h + 1.0 / 7.0).abs() < 1e-5);
        }
    }

    #[test]
    fn profile_independence() {
        for (p, q) in [(2, 3), (4, 1), (6, 6)] {
            let values: Vec<f64> = [Profile::Smoothstep, Profile::Linear, Profile::Bulged { amplitude: 0.5 }]
                .iter()
                .map(|&pr| spindle_gauss_bonnet(p, q, DEFAULT_INTERVALS, pr).unwrap().total_curvature)
                .collect();
            for v in &values {
                assert!((v - values[0]).abs() < 1e-6 * values[0]);
            }
        }
    }

    #[test]
    fn simpson_is_fourth_order() {
        for (p, q) in [(1, 1), (2, 3), (3, 4), (5, 5)] {
            let err = |n| spindle_gauss_bonnet(p, q, n, Profile::default()).unwrap();
            let (coarse, fine) = (err(16), err(32));
            let ratio = (coarse.total_curvature - coarse.target).abs() / (fine.total_curvature - fine.target).abs();
            assert!((8.0..=32.0).contains(&ratio), "({p},{q}): {ratio}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            spindle_gauss_bonnet(2, 3, 7, Profile::default()),
            Err(GeometryError::BadIntervals(7))
        );
        assert_eq!(
            spindle_gauss_bonnet(2, 3, 2, Profile::default()),
            Err(GeometryError::BadIntervals(2))
        );
        assert!(matches!(
            spindle_gauss_bonnet(2, 3, 64, Profile::Bulged { amplitude: -5.0 }),
            Err(GeometryError::InvalidProfile(_))
        ));
        assert!(matches!(
            spindle_gauss_bonnet(0, 3, 64, Profile::default()),
            Err(GeometryError::InvalidProfile(_))
        ));
    }

    #[test]
    fn poincare_hopf_examples() {
        let ph = |s: &str, z: &[VectorFieldZero]| poincare_hopf_check(&sig(s), z).unwrap().pass;
        assert!(ph("O0(5,5)", &[zero(5, 1), zero(5, 1)]));
        assert!(ph("O1()", &[]));
        assert!(ph("O0(2,3)", &[zero(2, 1), zero(3, 1)]));
        assert!(!ph("O0(2,3)", &[zero(2, 1)]));
        assert!(ph("O0()", &[zero(1, 1), zero(1, 1)]));
        assert!(ph("O0(2,3,7)", &[zero(2, 1), zero(3, 1), zero(7, 1), zero(1, -1)]));
        for p in 2..=10 {
            assert!(ph(&format!("O0({p},{p})"), &[zero(p, 1), zero(p, 1)]));
        }
        assert_eq!(
            poincare_hopf_check(&sig("O0(2,3)"), &[zero(5, 1)]),
            Err(GeometryError::OrderMismatch(5))
        );
        assert_eq!(
            poincare_hopf_check(&sig("O0(2,3)"), &[zero(2, 1), zero(2, 1)]),
            Err(GeometryError::OrderMismatch(2))
        );
        assert!(matches!(
            poincare_hopf_check(&sig("O0()*()"), &[]),
            Err(GeometryError::NotClosed(_))
        ));
    }

    #[test]
    fn constant_curvature_areas() {
        assert_eq!(constant_curvature_area(&sig("O0()"), Rational::ONE).unwrap(), 4);
        assert_eq!(
            constant_curvature_area(&sig("O0(2,3,7)"), Rational::integer(-1)).unwrap(),
            Rational::new(1, 21)
        );
        assert!(matches!(
            constant_curvature_area(&sig("O0(2,2,2,2)"), Rational::integer(-1)),
            Err(GeometryError::SignMismatch { .. })
        ));
        assert_eq!(
            constant_curvature_area(&sig("O0(2,2,2,2)"), Rational::ZERO),
            Err(GeometryError::FlatIndeterminate)
        );
        assert!(matches!(
            constant_curvature_area(&sig("O0(5)"), Rational::ONE),
            Err(GeometryError::BadOrbifold(_))
        ));
        assert_eq!(constant_curvature_area(&sig("N1()"), Rational::ONE).unwrap(), 2);
        assert_eq!(
            constant_curvature_area(&sig("O0(2,3,5)"), Rational::new(1, 4)).unwrap(),
            Rational::new(4, 15)
        );
    }

    proptest! {
        #[test]
        fn rotational_fields_sum_to_euler(cones in prop::collection::vec(2u32..=9, 0..=5), genus in 0u32..=2) {
            // a field with a source and a sink away from the cones, plus
            // rotation at each cone point, has index 2 - 2g + Σ(1/p_i − 1)
            let s = Signature::new(true, genus, cones.clone(), vec![]).unwrap();
            let mut zeros: Vec<VectorFieldZero> = cones.iter().map(|&p| zero(p, 1)).collect();
            zeros.push(zero(1, 2 - 2 * i64::from(genus) - cones.len() as i64));
            prop_assert!(poincare_hopf_check(&s, &zeros).unwrap().pass);
        }

        #[test]
        fn area_times_curvature_is_two_pi_chi(num in 1i64..=12, den in 1i64..=12) {
            let s = sig("O0(2,3,7)");
            let k = Rational::new(-num, den);
            let area = constant_curvature_area(&s, k).unwrap();
            prop_assert_eq!(area * k, euler_closed_form(&s) * 2);
        }
    }
}
