//! Claimed orbifold coverings and their necessary conditions.
//!
//! A certificate records the degree `r` of a covering and, over each
//! isolated singular point of the base with local group `Γ`, the orders of
//! the local groups `Λ_i` of its preimages. Verification checks the fiber
//! formula `r = Σ |Γ| / |Λ_i|`, consistency of the cone points upstairs, and
//! multiplicativity of the Euler characteristic. Passing these checks does
//! not prove that a covering exists.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::euler::euler_closed_form;
use crate::quotient::{CayleyTable, Perm, QuotientError, RegularQuotients, SimplicialAction};
use crate::signature::{parse_signature, Signature};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoveringError {
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("subgroup generator {0} is not an element of the group")]
    NotASubgroup(usize),
    #[error("quotient {0} has no extracted signature")]
    SignatureUnavailable(&'static str),
    #[error(transparent)]
    Quotient(QuotientError),
}

impl From<QuotientError> for CoveringError {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::NotASubgroup(i) => CoveringError::NotASubgroup(i),
            other => CoveringError::Quotient(other),
        }
    }
}

/// Serializes a signature as text; reads either text or the object form.
mod sig_text {
    use super::*;

    pub fn serialize<S: Serializer>(sig: &Signature, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&sig.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Signature, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Object(Signature),
        }
        match Repr::deserialize(d)? {
            Repr::Text(t) => parse_signature(&t).map_err(serde::de::Error::custom),
            Repr::Object(s) => Ok(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Closed(#[serde(with = "sig_text")] Signature),
    LocalCone(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cover {
    Closed(#[serde(with = "sig_text")] Signature),
    LocalCone(u32),
    LocalRegular,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    #[default]
    Cone,
    Corner,
}

/// The fiber over one singular base point: its local group order `|Γ|`
/// (`2q` for a corner of order `q`) and the local group orders of its
/// preimages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    #[serde(default)]
    pub kind: PointKind,
    pub order: u32,
    pub preimages: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub base: Base,
    pub cover: Cover,
    pub degree: u32,
    pub fibers: Vec<Fiber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(checks: Vec<Check>) -> Self {
        Report {
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, CoveringError> {
    Err(CoveringError::MalformedCertificate(msg.into()))
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// The isolated singular points of a closed signature as `(kind, |Γ|)`.
fn singular_points(sig: &Signature) -> Vec<(PointKind, u32)> {
    let mut out: Vec<(PointKind, u32)> = sig.cone_points().iter().map(|&p| (PointKind::Cone, p)).collect();
    out.extend(sig.corners().map(|q| (PointKind::Corner, 2 * q)));
    out.sort_unstable();
    out
}

fn check_structure(cert: &CoveringCertificate) -> Result<(), CoveringError> {
    if cert.degree == 0 {
        return malformed("degree must be positive");
    }
    for (i, f) in cert.fibers.iter().enumerate() {
        if f.order < 2 {
            return malformed(format!("fiber {i}: base point order {} is not singular", f.order));
        }
        if f.kind == PointKind::Corner && f.order % 2 != 0 {
            return malformed(format!("fiber {i}: corner group order {} is odd", f.order));
        }
        if f.preimages.is_empty() {
            return malformed(format!("fiber {i} is empty"));
        }
        if let Some(&d) = f.preimages.iter().find(|&&d| d == 0 || f.order % d != 0) {
            return malformed(format!("fiber {i}: {d} does not divide {}", f.order));
        }
    }
    match (&cert.base, &cert.cover) {
        (Base::Closed(base), Cover::Closed(_)) => {
            let claimed = sorted_points(cert);
            if claimed != singular_points(base) {
                return malformed(format!("fibers do not match the singular points of {base}"));
            }
        }
        (Base::LocalCone(n), Cover::LocalCone(_) | Cover::LocalRegular) => {
            if *n < 2 {
                return malformed("local cone order must be at least 2");
            }
            if let Cover::LocalCone(m) = cert.cover {
                if m < 2 {
                    return malformed("local cone order must be at least 2");
                }
            }
            if cert.fibers.len() != 1 || cert.fibers[0].order != *n || cert.fibers[0].kind != PointKind::Cone {
                return malformed(format!("a local cone certificate has one fiber of order {n}"));
            }
        }
        _ => return malformed("base and cover kinds do not match"),
    }
    Ok(())
}

fn sorted_points(cert: &CoveringCertificate) -> Vec<(PointKind, u32)> {
    let mut v: Vec<(PointKind, u32)> = cert.fibers.iter().map(|f| (f.kind, f.order)).collect();
    v.sort_unstable();
    v
}

fn join(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Checks the necessary conditions for a claimed covering.
///
/// Checks: `fiber-sum[i]` per fiber; for closed base and cover, `euler`
/// always and `cone-multiset` when the base has no mirrors (over mirrored
/// bases the fiber orders alone do not say which preimages are cones); for
/// local certificates, `local-cover`.
pub fn verify_certificate(cert: &CoveringCertificate) -> Result<Report, CoveringError> {
    check_structure(cert)?;
    let r = u64::from(cert.degree);
    let mut checks = Vec::new();
    for (i, f) in cert.fibers.iter().enumerate() {
        let sum: u64 = f.preimages.iter().map(|&d| u64::from(f.order / d)).sum();
        checks.push(Check {
            name: format!("fiber-sum[{i}]"),
            pass: sum == r,
            detail: format!("sum of {}/d over {} is {sum}, degree {r}", f.order, join(&f.preimages)),
        });
    }
    match (&cert.base, &cert.cover) {
        (Base::Closed(base), Cover::Closed(cover)) => {
            if base.is_closed() {
                let implied = sorted(
                    cert.fibers
                        .iter()
                        .flat_map(|f| f.preimages.iter().copied())
                        .filter(|&d| d > 1)
                        .collect(),
                );
                let actual = sorted(cover.cone_points().to_vec());
                checks.push(Check {
                    name: "cone-multiset".into(),
                    pass: implied == actual,
                    detail: format!("fibers imply cones {}, {cover} has {}", join(&implied), join(&actual)),
                });
            }
            let (up, down) = (euler_closed_form(cover), euler_closed_form(base));
            let want = down * cert.degree as i64;
            checks.push(Check {
                name: "euler".into(),
                pass: up == want,
                detail: format!("chi({cover}) = {up}, {r} * chi({base}) = {want}"),
            });
        }
        (Base::LocalCone(n), cover) => {
            let (want, label) = match cover {
                Cover::LocalCone(m) => (*m, format!("cone of order {m}")),
                _ => (1, "regular chart".to_string()),
            };
            let f = &cert.fibers[0];
            checks.push(Check {
                name: "local-cover".into(),
                pass: f.preimages == [want],
                detail: format!("a {label} over a cone of order {n} has fiber {{{want}}}, got {}", join(&f.preimages)),
            });
        }
        _ => unreachable!("checked by check_structure"),
    }
    Ok(Report::new(checks))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All multisets `{d_1, …, d_ℓ}` of divisors of `n` with `Σ n / d_i = r`,
/// each sorted ascending, the list sorted lexicographically.
pub fn enumerate_fiber_data(n: u32, r: u32) -> Vec<Vec<u32>> {
    if n == 0 || r == 0 {
        return Vec::new();
    }
    let divs = divisors(n);
    let mut out = Vec::new();
    // nondecreasing sequences over the divisor list, cut off once the
    // running sum passes r
    fn extend(divs: &[u32], n: u32, r: u32, from: usize, sum: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if sum == r {
            out.push(cur.clone());
            return;
        }
        for (k, &d) in divs.iter().enumerate().skip(from) {
            let s = sum + n / d;
            if s <= r {
                cur.push(d);
                extend(divs, n, r, k, s, cur, out);
                cur.pop();
            }
        }
    }
    extend(&divs, n, r, 0, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The certificate of the covering `M//H → M//G` for the subgroup `H`
/// generated by `subgroup_generators`.
pub fn certificate_from_quotients(
    action: &SimplicialAction,
    subgroup_generators: &[Perm],
) -> Result<CoveringCertificate, CoveringError> {
    let rq = RegularQuotients::new(action);
    let h = rq.subgroup_positions(action, subgroup_generators)?;
    let g: Vec<usize> = (0..action.order()).collect();
    certificate_at(&rq, &g, &h)
}

/// Certificates for `M//H → M//G` over every subgroup `H` of the group,
/// in the order of [`CayleyTable::subgroups`].
pub fn certificates_for_all_subgroups(
    action: &SimplicialAction,
) -> Vec<Result<CoveringCertificate, CoveringError>> {
    let rq = RegularQuotients::new(action);
    let g: Vec<usize> = (0..action.order()).collect();
    CayleyTable::new(action.elements())
        .subgroups()
        .iter()
        .map(|h| certificate_at(&rq, &g, h))
        .collect()
}

fn certificate_at(rq: &RegularQuotients, g: &[usize], h: &[usize]) -> Result<CoveringCertificate, CoveringError> {
    let base = rq
        .by_subgroup(g)?
        .signature
        .ok_or(CoveringError::SignatureUnavailable("M//G"))?;
    let cover = rq
        .by_subgroup(h)?
        .signature
        .ok_or(CoveringError::SignatureUnavailable("M//H"))?;
    let fibers = rq
        .singular_fibers(g, h)
        .into_iter()
        .filter(|&(gamma, mirror, _)| !mirror || gamma > 2)
        .map(|(order, mirror, preimages)| Fiber {
            kind: if mirror { PointKind::Corner } else { PointKind::Cone },
            order,
            preimages,
        })
        .collect();
    Ok(CoveringCertificate {
        base: Base::Closed(base),
        cover: Cover::Closed(cover),
        degree: (g.len() / h.len()) as u32,
        fibers,
    })
}
