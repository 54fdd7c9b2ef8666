//! Orbifold fundamental groups of closed orientable 2-orbifolds, the good/bad
//! dichotomy, and the curvature-sign classification.
//!
//! The bad list is hard-coded: among closed orientable signatures the bad
//! ones are exactly the teardrops `O0(p)` and the unequal footballs
//! `O0(p,q)`, `p ≠ q`. That this list is complete is a classical result
//! about 2-orbifolds (Thurston), not something derived here. Mirrored
//! signatures are reduced to their orientation double.

mod coset;
mod presentation;

pub use coset::{group_order, GroupOrder};
pub use presentation::{
    commutator, cyclic_reduce, free_reduce, power, GroupPresentation, Letter, PresentationError,
    Word,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::euler::euler_closed_form;
use crate::signature::{double_mirrors, Signature};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FundamentalError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0} is not a good spherical orbifold")]
    NotSpherical(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometryClass {
    Bad,
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::Bad => "Bad",
            GeometryClass::Spherical => "Spherical",
            GeometryClass::Euclidean => "Euclidean",
            GeometryClass::Hyperbolic => "Hyperbolic",
        })
    }
}

/// Standard presentation
/// `⟨a1, b1, …, ag, bg, x1, …, xk | xj^pj, x1⋯xk·[a1,b1]⋯[ag,bg]⟩`
/// of a closed orientable signature.
pub fn presentation(sig: &Signature) -> Result<GroupPresentation, FundamentalError> {
    if !sig.is_closed() {
        return Err(FundamentalError::Unsupported(
            "presentations of mirrored orbifolds".into(),
        ));
    }
    if !sig.orientable() {
        return Err(FundamentalError::Unsupported(
            "presentations over non-orientable bases".into(),
        ));
    }
    let g = sig.genus() as usize;
    let k = sig.cone_points().len();
    let mut names = Vec::with_capacity(2 * g + k);
    for i in 1..=g {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    if k == 1 {
        names.push("x".to_string());
    } else {
        names.extend((1..=k).map(|j| format!("x{j}")));
    }
    let cone = |j: usize| 2 * g + j;
    let mut relators: Vec<Word> = sig
        .cone_points()
        .iter()
        .enumerate()
        .map(|(j, &p)| power(Letter::gen(cone(j)), p))
        .collect();
    let mut long: Word = (0..k).map(|j| Letter::gen(cone(j))).collect();
    for i in 0..g {
        long.extend(commutator(2 * i, 2 * i + 1));
    }
    if !long.is_empty() {
        relators.push(long);
    }
    Ok(GroupPresentation::new(names, relators))
}

fn closed_orientable_model(sig: &Signature) -> Result<Signature, FundamentalError> {
    if !sig.orientable() {
        return Err(FundamentalError::Unsupported(
            "good/bad decision over non-orientable bases".into(),
        ));
    }
    if sig.is_closed() {
        Ok(sig.clone())
    } else {
        double_mirrors(sig).map_err(|e| FundamentalError::Unsupported(e.to_string()))
    }
}

/// False exactly for teardrops and unequal footballs (after doubling mirrors).
pub fn is_good(sig: &Signature) -> Result<bool, FundamentalError> {
    let t = closed_orientable_model(sig)?;
    if t.genus() != 0 {
        return Ok(true);
    }
    Ok(match t.cone_points() {
        [_] => false,
        [p, q] => p == q,
        _ => true,
    })
}

/// `Bad` for bad orbifolds, otherwise the sign of χ^orb: a metric of
/// constant curvature K satisfies `K · area = 2π χ^orb`.
pub fn classify(sig: &Signature) -> Result<GeometryClass, FundamentalError> {
    if !is_good(sig)? {
        return Ok(GeometryClass::Bad);
    }
    Ok(match euler_closed_form(sig).signum() {
        1 => GeometryClass::Spherical,
        0 => GeometryClass::Euclidean,
        _ => GeometryClass::Hyperbolic,
    })
}

/// Order of the deck group of the universal covering `S² → sig`, i.e.
/// `2 / χ^orb`.
pub fn spherical_group_order(sig: &Signature) -> Result<u64, FundamentalError> {
    if classify(sig)? != GeometryClass::Spherical {
        return Err(FundamentalError::NotSpherical(sig.to_string()));
    }
    let order = euler_closed_form(sig).recip() * 2;
    let n = order
        .to_integer()
        .expect("2/χ of a good spherical orbifold is an integer");
    Ok(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::parse_signature;
    use num_integer::Integer;

    fn sig(s: &str) -> Signature {
        parse_signature(s).unwrap()
    }

    #[test]
    fn teardrop_presentation_is_trivial() {
        let p = presentation(&sig("O0(3)")).unwrap();
        assert_eq!(p.to_string(), "< x | x^3, x >");
        assert_eq!(group_order(&p, 100), GroupOrder::Finite(1));
    }

    #[test]
    fn torus_presentation() {
        let p = presentation(&sig("O1()")).unwrap();
        assert_eq!(p.to_string(), "< a1, b1 | a1 b1 a1^-1 b1^-1 >");
    }

    #[test]
    fn sphere_presentation_is_empty() {
        let p = presentation(&sig("O0()")).unwrap();
        assert!(p.generators().is_empty() && p.relators().is_empty());
        assert_eq!(group_order(&p, 1), GroupOrder::Finite(1));
    }

    #[test]
    fn football_order_is_gcd() {
        let p = presentation(&sig("O0(4,6)")).unwrap();
        assert_eq!(p.to_string(), "< x1, x2 | x1^6, x2^4, x1 x2 >");
        assert_eq!(group_order(&p, 1000), GroupOrder::Finite(2));
        for a in 2..=8u32 {
            for b in 2..=8u32 {
                let p = presentation(&Signature::sphere(&[a, b]).unwrap()).unwrap();
                assert_eq!(
                    group_order(&p, 1000),
                    GroupOrder::Finite(u64::from(a.gcd(&b))),
                    "({a},{b})"
                );
            }
        }
    }

    #[test]
    fn spherical_orders() {
        for (s, n) in [("O0(5,5)", 5), ("O0(2,3,5)", 60), ("O0(2,3,4)", 24), ("O0(2,3,3)", 12), ("O0(2,2,7)", 14)] {
            assert_eq!(spherical_group_order(&sig(s)).unwrap(), n, "{s}");
            let p = presentation(&sig(s)).unwrap();
            assert_eq!(group_order(&p, 1_000_000), GroupOrder::Finite(n), "{s}");
        }
        assert!(matches!(
            spherical_group_order(&sig("O0(2,3,7)")),
            Err(FundamentalError::NotSpherical(_))
        ));
        assert!(matches!(
            spherical_group_order(&sig("O0(5)")),
            Err(FundamentalError::NotSpherical(_))
        ));
    }

    #[test]
    fn goodness() {
        assert!(!is_good(&sig("O0(5)")).unwrap());
        assert!(is_good(&sig("O0(3,3)")).unwrap());
        assert!(!is_good(&sig("O0()*(2,3)")).unwrap());
        assert!(!is_good(&sig("O0()*(4)")).unwrap());
        assert!(is_good(&sig("O0()*(3,3)")).unwrap());
        assert!(is_good(&sig("O0(3)*()")).unwrap());
        assert!(is_good(&sig("O1(5)")).unwrap());
        assert!(matches!(is_good(&sig("N1(5)")), Err(FundamentalError::Unsupported(_))));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&sig("O0(2,3,5)")).unwrap(), GeometryClass::Spherical);
        assert_eq!(classify(&sig("O0(2,2,2,2)")).unwrap(), GeometryClass::Euclidean);
        assert_eq!(classify(&sig("O0(2,3,7)")).unwrap(), GeometryClass::Hyperbolic);
        assert_eq!(classify(&sig("O0(5)")).unwrap(), GeometryClass::Bad);
        assert_eq!(classify(&sig("O0()*(4,4,2)")).unwrap(), GeometryClass::Euclidean);
        assert_eq!(classify(&sig("O2()")).unwrap(), GeometryClass::Hyperbolic);
    }

    #[test]
    fn mirrored_and_nonorientable_presentations_rejected() {
        assert!(matches!(presentation(&sig("O0()*()")), Err(FundamentalError::Unsupported(_))));
        assert!(matches!(presentation(&sig("N2()")), Err(FundamentalError::Unsupported(_))));
    }

    /// 3x3 integer affine maps of the plane.
    type Affine = [[i64; 3]; 3];

    fn mul(a: &Affine, b: &Affine) -> Affine {
        let mut c = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }

    const ID: Affine = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

    fn half_turn(cx: i64, cy: i64) -> Affine {
        // v -> -v + 2c
        [[-1, 0, 2 * cx], [0, -1, 2 * cy], [0, 0, 1]]
    }

    /// Infinite-order certificate for the pillowcase group: the half-turns
    /// about (0,0), (1,0), (1,1), (0,1) satisfy every relator, and the
    /// product of the first two is a nonzero translation.
    #[test]
    fn pillowcase_group_is_infinite() {
        let p = presentation(&sig("O0(2,2,2,2)")).unwrap();
        let images = [half_turn(0, 0), half_turn(1, 0), half_turn(1, 1), half_turn(0, 1)];
        let eval = |w: &Word| {
            w.iter().fold(ID, |acc, l| {
                // every image is an involution
                mul(&acc, &images[l.generator])
            })
        };
        for r in p.relators() {
            assert_eq!(eval(r), ID);
        }
        let t = mul(&images[0], &images[1]);
        assert_eq!((t[0][0], t[1][1], t[0][2], t[1][2]), (1, 1, -2, 0));
        assert_eq!(group_order(&p, 10_000), GroupOrder::InfiniteOrExceeded);
    }
}
