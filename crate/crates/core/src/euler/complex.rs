//! Finite regular cell complexes whose cells carry local group orders.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("incompatible complex: {0}")]
    Incompatible(String),
}

/// One open cell. `faces` indexes into the owning complex: the two end
/// vertices of an edge, or the boundary edges of a 2-cell in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: u8,
    pub faces: Vec<usize>,
    /// Order of the local group at interior points of the cell.
    pub local_order: u32,
}

/// A 2-dimensional regular cell complex with a local group order on every
/// cell.
///
/// Structural invariants, checked by [`StratifiedComplex::new`]: edges join
/// two distinct vertices; 2-cells are bounded by a simple cycle of distinct
/// edges listed in cyclic order; every edge of order 1 lies on exactly two
/// 2-cells and every edge of order 2 (a mirror edge) on exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct StratifiedComplex {
    cells: Vec<Cell>,
}

impl StratifiedComplex {
    pub fn new(cells: Vec<Cell>) -> Result<Self, ComplexError> {
        let c = StratifiedComplex { cells };
        c.check_structure()?;
        Ok(c)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, index: usize) -> &Cell {
        &self.cells[index]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of cells in each dimension.
    pub fn counts(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for c in &self.cells {
            out[c.dim as usize] += 1;
        }
        out
    }

    /// Ordinary Euler characteristic of the underlying space.
    pub fn topological_euler(&self) -> i64 {
        let [v, e, f] = self.counts();
        v as i64 - e as i64 + f as i64
    }

    pub fn indices_of_dim(&self, dim: u8) -> impl Iterator<Item = usize> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.dim == dim)
            .map(|(i, _)| i)
    }

    /// Vertices of a cell (the cell itself for a vertex).
    pub fn vertices_of(&self, index: usize) -> Vec<usize> {
        let cell = &self.cells[index];
        match cell.dim {
            0 => vec![index],
            1 => cell.faces.clone(),
            _ => {
                let mut vs: Vec<usize> = cell
                    .faces
                    .iter()
                    .flat_map(|&e| self.cells[e].faces.iter().copied())
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        }
    }

    /// Mirror edges: edges whose local order is 2.
    pub fn mirror_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices_of_dim(1)
            .filter(move |&e| self.cells[e].local_order == 2)
    }

    fn check_structure(&self) -> Result<(), ComplexError> {
        let bad = |msg: String| Err(ComplexError::Malformed(msg));
        let n = self.cells.len();
        let mut cofaces = vec![0usize; n];
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.local_order == 0 {
                return bad(format!("cell `{}` has local order 0", cell.id));
            }
            if let Some(&f) = cell.faces.iter().find(|&&f| f >= n) {
                return bad(format!("cell `{}` references missing face {f}", cell.id));
            }
            match cell.dim {
                0 => {
                    if !cell.faces.is_empty() {
                        return bad(format!("vertex `{}` has faces", cell.id));
                    }
                }
                1 => {
                    if cell.faces.len() != 2 || cell.faces.iter().any(|&f| self.cells[f].dim != 0) {
                        return bad(format!("edge `{}` must have two vertex faces", cell.id));
                    }
                    if cell.faces[0] == cell.faces[1] {
                        return bad(format!("edge `{}` is a loop", cell.id));
                    }
                }
                2 => {
                    if cell.faces.iter().any(|&f| self.cells[f].dim != 1) {
                        return bad(format!("2-cell `{}` has a non-edge face", cell.id));
                    }
                    if self.boundary_cycle(i).is_none() {
                        return bad(format!(
                            "2-cell `{}` is not bounded by a simple edge cycle",
                            cell.id
                        ));
                    }
                    for &e in &cell.faces {
                        cofaces[e] += 1;
                    }
                }
                d => return bad(format!("cell `{}` has dimension {d}", cell.id)),
            }
        }
        for e in self.indices_of_dim(1) {
            let want = if self.cells[e].local_order == 2 { 1 } else { 2 };
            if cofaces[e] != want {
                return bad(format!(
                    "edge `{}` (order {}) lies on {} 2-cells, expected {want}",
                    self.cells[e].id, self.cells[e].local_order, cofaces[e]
                ));
            }
        }
        Ok(())
    }

    /// The vertex cycle around a 2-cell, or `None` if its edges do not form
    /// a simple closed walk in the listed order.
    pub fn boundary_cycle(&self, face: usize) -> Option<Vec<usize>> {
        let edges = &self.cells[face].faces;
        if edges.len() < 2 {
            return None;
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            return None;
        }
        let ends = |e: usize| (self.cells[e].faces[0], self.cells[e].faces[1]);
        let (a, b) = ends(edges[0]);
        'start: for (first, mut cur) in [(a, b), (b, a)] {
            let mut walk = vec![first];
            for &e in &edges[1..] {
                walk.push(cur);
                let (u, v) = ends(e);
                cur = if u == cur {
                    v
                } else if v == cur {
                    u
                } else {
                    continue 'start;
                };
            }
            if cur != first {
                continue;
            }
            let mut check = walk.clone();
            check.sort_unstable();
            check.dedup();
            if check.len() == walk.len() {
                return Some(walk);
            }
        }
        None
    }

    /// Checks the local-order compatibility conditions: 2-cells have order
    /// 1, edges order 1 or 2, every vertex has order at least that of each
    /// incident edge, and mirror edges form disjoint circles.
    pub fn check_compatible(&self) -> Result<(), ComplexError> {
        let bad = |msg: String| Err(ComplexError::Incompatible(msg));
        let mut mirror_degree = vec![0u32; self.cells.len()];
        for cell in &self.cells {
            match cell.dim {
                2 if cell.local_order != 1 => {
                    return bad(format!("2-cell `{}` has local order {}", cell.id, cell.local_order))
                }
                1 => {
                    if cell.local_order > 2 {
                        return bad(format!("edge `{}` has local order {}", cell.id, cell.local_order));
                    }
                    for &v in &cell.faces {
                        let vo = self.cells[v].local_order;
                        if vo < cell.local_order {
                            return bad(format!(
                                "vertex `{}` (order {vo}) is below incident edge `{}` (order {})",
                                self.cells[v].id, cell.id, cell.local_order
                            ));
                        }
                        if cell.local_order == 2 {
                            mirror_degree[v] += 1;
                        }
                    }
                }
                _ => {}
            }
        }
        for (v, &deg) in mirror_degree.iter().enumerate() {
            if deg != 0 && deg != 2 {
                return bad(format!(
                    "vertex `{}` meets {deg} mirror edges; mirrors must form circles",
                    self.cells[v].id
                ));
            }
        }
        Ok(())
    }
}

/// Barycentric subdivision: the order complex of the face poset. Each chain
/// of cells becomes a simplex whose local order is that of its top cell.
pub fn barycentric_subdivide(c: &StratifiedComplex) -> StratifiedComplex {
    let cells = c.cells();
    let mut out: Vec<Cell> = Vec::new();
    let mut vertex_of = vec![0usize; cells.len()];
    for (i, cell) in cells.iter().enumerate() {
        vertex_of[i] = out.len();
        out.push(Cell {
            id: format!("v{}", out.len()),
            dim: 0,
            faces: Vec::new(),
            local_order: cell.local_order,
        });
    }

    let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next_edge = 0usize;
    let mut add_edge = |out: &mut Vec<Cell>, lo: usize, hi: usize| {
        let idx = out.len();
        out.push(Cell {
            id: format!("e{next_edge}"),
            dim: 1,
            faces: vec![vertex_of[lo], vertex_of[hi]],
            local_order: cells[hi].local_order,
        });
        next_edge += 1;
        edge_of.insert((lo, hi), idx);
    };
    for (i, cell) in cells.iter().enumerate() {
        match cell.dim {
            1 => {
                for &v in &cell.faces {
                    add_edge(&mut out, v, i);
                }
            }
            2 => {
                for &e in &cell.faces {
                    add_edge(&mut out, e, i);
                }
                for v in c.vertices_of(i) {
                    add_edge(&mut out, v, i);
                }
            }
            _ => {}
        }
    }

    let mut next_face = 0usize;
    for (f, cell) in cells.iter().enumerate() {
        if cell.dim != 2 {
            continue;
        }
        for &e in &cell.faces {
            for &v in &cells[e].faces {
                out.push(Cell {
                    id: format!("f{next_face}"),
                    dim: 2,
                    faces: vec![edge_of[&(v, e)], edge_of[&(e, f)], edge_of[&(v, f)]],
                    local_order: cell.local_order,
                });
                next_face += 1;
            }
        }
    }
    StratifiedComplex::new(out).expect("subdivision of a valid complex is valid")
}

#[derive(Serialize, Deserialize)]
struct CellRepr {
    id: String,
    dim: u8,
    faces: Vec<String>,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    cells: Vec<CellRepr>,
}

impl TryFrom<ComplexRepr> for StratifiedComplex {
    type Error = ComplexError;

    fn try_from(r: ComplexRepr) -> Result<Self, Self::Error> {
        let mut index = HashMap::new();
        for (i, c) in r.cells.iter().enumerate() {
            if index.insert(c.id.clone(), i).is_some() {
                return Err(ComplexError::Malformed(format!("duplicate cell id `{}`", c.id)));
            }
        }
        let cells = r
            .cells
            .into_iter()
            .map(|c| {
                let faces = c
                    .faces
                    .iter()
                    .map(|f| {
                        index.get(f).copied().ok_or_else(|| {
                            ComplexError::Malformed(format!("cell `{}` has unknown face `{f}`", c.id))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Cell {
                    id: c.id,
                    dim: c.dim,
                    faces,
                    local_order: c.n,
                })
            })
            .collect::<Result<Vec<_>, ComplexError>>()?;
        StratifiedComplex::new(cells)
    }
}

impl From<StratifiedComplex> for ComplexRepr {
    fn from(c: StratifiedComplex) -> Self {
        let ids: Vec<String> = c.cells.iter().map(|x| x.id.clone()).collect();
        ComplexRepr {
            cells: c
                .cells
                .into_iter()
                .map(|x| CellRepr {
                    faces: x.faces.iter().map(|&f| ids[f].clone()).collect(),
                    id: x.id,
                    dim: x.dim,
                    n: x.local_order,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(id: &str, dim: u8, faces: &[usize], n: u32) -> Cell {
        Cell {
            id: id.into(),
            dim,
            faces: faces.to_vec(),
            local_order: n,
        }
    }

    /// Two vertices, two edges, two 2-gons: the smallest regular sphere.
    pub(crate) fn lens_sphere() -> StratifiedComplex {
        StratifiedComplex::new(vec![
            cell("u", 0, &[], 1),
            cell("v", 0, &[], 1),
            cell("a", 1, &[0, 1], 1),
            cell("b", 1, &[0, 1], 1),
            cell("N", 2, &[2, 3], 1),
            cell("S", 2, &[2, 3], 1),
        ])
        .unwrap()
    }

    #[test]
    fn lens_sphere_counts() {
        let s = lens_sphere();
        assert_eq!(s.counts(), [2, 2, 2]);
        assert_eq!(s.topological_euler(), 2);
    }

    #[test]
    fn rejects_loops_and_open_cycles() {
        let loop_edge = StratifiedComplex::new(vec![cell("u", 0, &[], 1), cell("a", 1, &[0, 0], 1)]);
        assert!(matches!(loop_edge, Err(ComplexError::Malformed(_))));

        // triangle boundary listed with a missing edge
        let open = StratifiedComplex::new(vec![
            cell("a", 0, &[], 1),
            cell("b", 0, &[], 1),
            cell("c", 0, &[], 1),
            cell("ab", 1, &[0, 1], 1),
            cell("bc", 1, &[1, 2], 1),
            cell("f", 2, &[3, 4], 1),
        ]);
        assert!(matches!(open, Err(ComplexError::Malformed(_))));
    }

    #[test]
    fn rejects_edges_not_on_two_faces() {
        let disk = StratifiedComplex::new(vec![
            cell("u", 0, &[], 1),
            cell("v", 0, &[], 1),
            cell("a", 1, &[0, 1], 1),
            cell("b", 1, &[0, 1], 1),
            cell("N", 2, &[2, 3], 1),
        ]);
        assert!(matches!(disk, Err(ComplexError::Malformed(_))));
        // the same disk with a silvered boundary is fine
        let silvered = StratifiedComplex::new(vec![
            cell("u", 0, &[], 2),
            cell("v", 0, &[], 2),
            cell("a", 1, &[0, 1], 2),
            cell("b", 1, &[0, 1], 2),
            cell("N", 2, &[2, 3], 1),
        ])
        .unwrap();
        silvered.check_compatible().unwrap();
    }

    #[test]
    fn compatibility_violations() {
        let low_vertex = StratifiedComplex::new(vec![
            cell("u", 0, &[], 1),
            cell("v", 0, &[], 2),
            cell("a", 1, &[0, 1], 2),
            cell("b", 1, &[0, 1], 2),
            cell("N", 2, &[2, 3], 1),
        ])
        .unwrap();
        assert!(matches!(low_vertex.check_compatible(), Err(ComplexError::Incompatible(_))));

        let mut s = lens_sphere();
        s.cells[4].local_order = 3;
        assert!(matches!(s.check_compatible(), Err(ComplexError::Incompatible(_))));
    }

    #[test]
    fn subdivision_of_lens() {
        let s = barycentric_subdivide(&lens_sphere());
        // 6 barycenters, 4 + 2*(2+2) edges, 2*4 triangles
        assert_eq!(s.counts(), [6, 12, 8]);
        assert_eq!(s.topological_euler(), 2);
        for f in s.indices_of_dim(2) {
            assert_eq!(s.vertices_of(f).len(), 3);
        }
    }

    #[test]
    fn json_round_trip_and_unknown_faces() {
        let s = lens_sphere();
        let json = serde_json::to_string(&s).unwrap();
        let back: StratifiedComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"cells":[{"id":"a","dim":1,"faces":["x","y"],"n":1}]}"#;
        assert!(serde_json::from_str::<StratifiedComplex>(bad).is_err());
        let dup = r#"{"cells":[{"id":"a","dim":0,"faces":[],"n":1},{"id":"a","dim":0,"faces":[],"n":1}]}"#;
        assert!(serde_json::from_str::<StratifiedComplex>(dup).is_err());
    }
}
