//! Symbolic signatures of closed 2-orbifolds.
//!
//! A signature records the base surface (orientable genus or crosscap
//! number), the cone points, and the silvered boundary circles together with
//! their corner reflectors. Text form:
//!
//! ```text
//! signature := ("O" | "N") genus "(" orders? ")" mirror*
//! mirror    := "*(" orders? ")"
//! orders    := integer ("," integer)*
//! ```
//!
//! so `O0(2,3,7)` is the (2,3,7) triangle orbifold and `O0()*(2,2,2,2)` is
//! the square billiard table. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid order {0}: cone and corner orders must be at least 2")]
    InvalidOrder(u32),
    #[error("a non-orientable base needs at least one crosscap")]
    InvalidGenus,
    #[error("signature has no mirrors to double")]
    NoMirrors,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A silvered boundary circle. `corners` holds the corner-reflector orders in
/// cyclic order; an empty list is a plain mirror circle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MirrorComponent {
    corners: Vec<u32>,
}

impl MirrorComponent {
    pub fn new(corners: Vec<u32>) -> Result<Self, SignatureError> {
        if let Some(&bad) = corners.iter().find(|&&q| q < 2) {
            return Err(SignatureError::InvalidOrder(bad));
        }
        Ok(MirrorComponent {
            corners: minimal_dihedral_rotation(&corners),
        })
    }

    pub fn corners(&self) -> &[u32] {
        &self.corners
    }
}

/// Lexicographically smallest sequence among all rotations of `seq` and of
/// its reversal.
fn minimal_dihedral_rotation(seq: &[u32]) -> Vec<u32> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let reversed: Vec<u32> = seq.iter().rev().copied().collect();
    let mut best: Option<Vec<u32>> = None;
    for base in [seq, reversed.as_slice()] {
        for shift in 0..n {
            let cand: Vec<u32> = (0..n).map(|i| base[(i + shift) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// A closed 2-orbifold in canonical form. Construct through
/// [`Signature::new`] or by parsing; both canonicalize, so derived equality
/// is equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature {
    orientable: bool,
    genus: u32,
    cone_points: Vec<u32>,
    boundary: Vec<MirrorComponent>,
}

impl Signature {
    pub fn new(
        orientable: bool,
        genus: u32,
        mut cone_points: Vec<u32>,
        boundary: Vec<Vec<u32>>,
    ) -> Result<Self, SignatureError> {
        if !orientable && genus == 0 {
            return Err(SignatureError::InvalidGenus);
        }
        if let Some(&bad) = cone_points.iter().find(|&&p| p < 2) {
            return Err(SignatureError::InvalidOrder(bad));
        }
        cone_points.sort_unstable_by(|a, b| b.cmp(a));
        let mut boundary = boundary
            .into_iter()
            .map(MirrorComponent::new)
            .collect::<Result<Vec<_>, _>>()?;
        boundary.sort();
        Ok(Signature {
            orientable,
            genus,
            cone_points,
            boundary,
        })
    }

    /// Sphere with the given cone points.
    pub fn sphere(cones: &[u32]) -> Result<Self, SignatureError> {
        Signature::new(true, 0, cones.to_vec(), Vec::new())
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Cone orders, sorted descending.
    pub fn cone_points(&self) -> &[u32] {
        &self.cone_points
    }

    pub fn boundary(&self) -> &[MirrorComponent] {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// All corner orders in canonical boundary order.
    pub fn corners(&self) -> impl Iterator<Item = u32> + '_ {
        self.boundary.iter().flat_map(|m| m.corners.iter().copied())
    }

    /// Ordinary Euler characteristic of the underlying surface.
    pub fn surface_euler(&self) -> i64 {
        let b = self.boundary.len() as i64;
        let g = i64::from(self.genus);
        if self.orientable {
            2 - 2 * g - b
        } else {
            2 - g - b
        }
    }

    /// True when there are no cone points and no mirrors.
    pub fn is_manifold(&self) -> bool {
        self.cone_points.is_empty() && self.boundary.is_empty()
    }
}

/// Parses and canonicalizes the text form.
pub fn parse_signature(text: &str) -> Result<Signature, SignatureError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: compact.as_bytes(),
        pos: 0,
    };
    let orientable = match p.next() {
        Some(b'O') => true,
        Some(b'N') => false,
        _ => return Err(p.error("expected `O` or `N`")),
    };
    let genus = p.integer()?;
    let cones = p.order_list()?;
    let mut boundary = Vec::new();
    while !p.at_end() {
        p.expect(b'*')?;
        boundary.push(p.order_list()?);
    }
    Signature::new(orientable, genus, cones, boundary)
}

/// Canonical text form; inverse of [`parse_signature`].
pub fn format_signature(sig: &Signature) -> String {
    sig.to_string()
}

/// The orientation double of a mirrored orientable signature: two copies
/// glued along the mirror locus. Interior cone points appear twice, each
/// corner of order q becomes one cone point of order q, and the genus
/// becomes `2g + b - 1`.
pub fn double_mirrors(sig: &Signature) -> Result<Signature, SignatureError> {
    if sig.boundary.is_empty() {
        return Err(SignatureError::NoMirrors);
    }
    if !sig.orientable {
        return Err(SignatureError::Unsupported(
            "doubling a non-orientable base".into(),
        ));
    }
    let b = sig.boundary.len() as u32;
    let genus = 2 * sig.genus + b - 1;
    let mut cones: Vec<u32> = sig
        .cone_points
        .iter()
        .flat_map(|&p| [p, p])
        .collect();
    cones.extend(sig.corners());
    Signature::new(true, genus, cones, Vec::new())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn error(&self, what: &str) -> SignatureError {
        SignatureError::Syntax(format!("{what} at offset {}", self.pos))
    }

    fn expect(&mut self, c: u8) -> Result<(), SignatureError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<u32, SignatureError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn order_list(&mut self) -> Result<Vec<u32>, SignatureError> {
        self.expect(b'(')?;
        let mut out = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.next() {
                Some(b',') => continue,
                Some(b')') => return Ok(out),
                _ => {
                    self.pos = self.pos.saturating_sub(1);
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
    }
}

fn write_orders(f: &mut fmt::Formatter<'_>, orders: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, o) in orders.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{o}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.orientable { 'O' } else { 'N' }, self.genus)?;
        write_orders(f, &self.cone_points)?;
        for m in &self.boundary {
            f.write_str("*")?;
            write_orders(f, &m.corners)?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_signature(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    orientable: bool,
    genus: u32,
    cones: Vec<u32>,
    boundary: Vec<Vec<u32>>,
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = SignatureError;

    fn try_from(r: SignatureRepr) -> Result<Self, Self::Error> {
        Signature::new(r.orientable, r.genus, r.cones, r.boundary)
    }
}

impl From<Signature> for SignatureRepr {
    fn from(s: Signature) -> Self {
        SignatureRepr {
            orientable: s.orientable,
            genus: s.genus,
            cones: s.cone_points,
            boundary: s.boundary.into_iter().map(|m| m.corners).collect(),
        }
    }
}
