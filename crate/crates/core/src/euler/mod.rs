//! Orbifold Euler characteristic, computed three independent ways: from the
//! signature, as a cell sum over a compatible complex, and as a sum over the
//! strata of that complex.

mod build;
mod complex;

pub use build::build_stratified_complex;
pub use complex::{barycentric_subdivide, Cell, ComplexError, StratifiedComplex};

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::signature::Signature;

/// `χ(X) − Σ(1 − 1/p_i) − ½ Σ(1 − 1/q_j)` over cone orders `p_i` and corner
/// orders `q_j`.
pub fn euler_closed_form(sig: &Signature) -> Rational {
    let mut chi = Rational::integer(sig.surface_euler());
    for &p in sig.cone_points() {
        chi -= Rational::ONE - Rational::recip_of(p);
    }
    for q in sig.corners() {
        chi -= (Rational::ONE - Rational::recip_of(q)) / 2;
    }
    chi
}

/// `Σ_τ (−1)^dim τ / N_τ` over all cells.
pub fn euler_from_complex(c: &StratifiedComplex) -> Result<Rational, ComplexError> {
    c.check_compatible()?;
    Ok(c.cells()
        .iter()
        .map(|cell| {
            let term = Rational::recip_of(cell.local_order);
            if cell.dim % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum())
}

/// A connected component of the union of open cells sharing one local order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub local_order: u32,
    /// Dimension of the top cells of the stratum.
    pub dim: u8,
    /// Compactly supported Euler characteristic: alternating open-cell count.
    pub euler_c: i64,
    pub cells: usize,
}

/// Splits `c` into strata. Two open cells are in the same stratum when a
/// chain of face incidences through cells of the same local order joins
/// them.
pub fn strata(c: &StratifiedComplex) -> Result<Vec<Stratum>, ComplexError> {
    c.check_compatible()?;
    let n = c.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, cell) in c.cells().iter().enumerate() {
        for &f in &cell.faces {
            if c.cell(f).local_order == cell.local_order {
                adj[i].push(f);
                adj[f].push(i);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        let mut s = Stratum {
            local_order: c.cell(root).local_order,
            dim: 0,
            euler_c: 0,
            cells: 0,
        };
        while let Some(i) = stack.pop() {
            let cell = c.cell(i);
            s.dim = s.dim.max(cell.dim);
            s.euler_c += if cell.dim % 2 == 0 { 1 } else { -1 };
            s.cells += 1;
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// `Σ_Σ χ_c(Σ) / |Γ_Σ|` over the strata of `c`.
pub fn euler_from_strata(c: &StratifiedComplex) -> Result<Rational, ComplexError> {
    Ok(strata(c)?
        .iter()
        .map(|s| Rational::integer(s.euler_c) / i64::from(s.local_order))
        .sum())
}
