//! Quotients of triangulated closed surfaces by finite simplicial group
//! actions.
//!
//! The action is regularized by two equivariant barycentric subdivisions, so
//! that any element stabilizing a simplex fixes it pointwise. Cells of the
//! quotient are then orbits of simplices, named after their smallest
//! representative, and the local order of an orbit is its stabilizer order.

pub mod group;
mod surface;

pub use group::{closure, compose, identity, inverse, is_permutation, CayleyTable, Perm};
pub use surface::{Edge, NotASurface, SimplicialSurface, Subdivision};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::euler::{euler_closed_form, euler_from_complex, Cell, StratifiedComplex};
use crate::rational::Rational;
use crate::signature::Signature;

/// Largest group that [`validate_action`] will materialize.
pub const CLOSURE_BOUND: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error(transparent)]
    NotASurface(#[from] NotASurface),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group element {0} maps a triangle to a non-triangle")]
    NotSimplicial(usize),
    #[error("group has more than {CLOSURE_BOUND} elements")]
    ClosureBoundExceeded,
    #[error("generator {0} is not an element of the group")]
    NotASubgroup(usize),
    #[error("euler characteristic mismatch: {0}")]
    ChiMismatch(String),
    #[error("inconsistent quotient: {0}")]
    Inconsistent(String),
}

/// A finite group acting simplicially on a surface, with every element
/// listed. The identity comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialAction {
    surface: SimplicialSurface,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl SimplicialAction {
    pub fn surface(&self) -> &SimplicialSurface {
        &self.surface
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// The action of the subgroup generated by `generators`.
    pub fn subaction(&self, generators: &[Perm]) -> Result<SimplicialAction, QuotientError> {
        let members: HashSet<&Perm> = self.elements.iter().collect();
        if let Some(i) = generators.iter().position(|g| !members.contains(g)) {
            return Err(QuotientError::NotASubgroup(i));
        }
        let elements = closure(self.surface.vertex_count(), generators, CLOSURE_BOUND)
            .ok_or(QuotientError::ClosureBoundExceeded)?;
        Ok(SimplicialAction {
            surface: self.surface.clone(),
            generators: generators.to_vec(),
            elements,
        })
    }

    /// Positions in `self.elements()` of every element of `sub`.
    fn positions_of(&self, sub: &SimplicialAction) -> Vec<usize> {
        let index: HashMap<&Perm, usize> =
            self.elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        sub.elements.iter().map(|p| index[p]).collect()
    }
}

/// Closes `generators` into a group and checks that it acts simplicially.
pub fn validate_action(
    surface: SimplicialSurface,
    generators: Vec<Perm>,
) -> Result<SimplicialAction, QuotientError> {
    let n = surface.vertex_count();
    for (i, g) in generators.iter().enumerate() {
        if g.len() != n || !is_permutation(g) {
            return Err(QuotientError::InvalidPermutation(format!(
                "generator {i} is not a permutation of the {n} vertices"
            )));
        }
    }
    let elements = closure(n, &generators, CLOSURE_BOUND).ok_or(QuotientError::ClosureBoundExceeded)?;
    if let Some(i) = elements.iter().position(|g| !surface.preserves_triangles(g)) {
        return Err(QuotientError::NotSimplicial(i));
    }
    Ok(SimplicialAction {
        surface,
        generators,
        elements,
    })
}

/// The induced action on the second barycentric subdivision. Elements keep
/// their positions.
pub fn regularize(action: &SimplicialAction) -> SimplicialAction {
    let mut surface = action.surface.clone();
    let mut generators = action.generators.clone();
    let mut elements = action.elements.clone();
    for _ in 0..2 {
        let sub = surface.subdivide();
        generators = sub.induce_all(&generators);
        elements = sub.induce_all(&elements);
        surface = sub.surface;
    }
    let out = SimplicialAction {
        surface,
        generators,
        elements,
    };
    assert!(
        fixes_stabilized_simplices(&out),
        "regularized action has a simplex stabilized but not fixed"
    );
    out
}

/// Whether every element that maps a simplex to itself fixes its vertices.
pub fn fixes_stabilized_simplices(action: &SimplicialAction) -> bool {
    let s = &action.surface;
    let edges = s.edges();
    action.elements.iter().all(|g| {
        let edges_ok = edges.iter().all(|&[a, b]| {
            let (ga, gb) = (g[a as usize], g[b as usize]);
            !(ga == b && gb == a)
        });
        let tris_ok = s.triangles().iter().all(|t| {
            let img: Vec<u32> = t.iter().map(|&v| g[v as usize]).collect();
            let mut sorted = img.clone();
            sorted.sort_unstable();
            sorted != t.to_vec() || img == t.to_vec()
        });
        edges_ok && tris_ok
    })
}

/// Orbits of a regularized action on vertices, edges and triangles. Each
/// orbit is represented by its smallest member.
struct Orbits {
    vertex: Vec<usize>,
    edge: Vec<usize>,
    vertex_reps: Vec<u32>,
    edge_reps: Vec<Edge>,
    triangle_reps: Vec<[u32; 3]>,
    vertex_sizes: Vec<usize>,
    edge_sizes: Vec<usize>,
}

fn orbits(surface: &SimplicialSurface, elements: &[&Perm]) -> Orbits {
    const NONE: usize = usize::MAX;
    let nv = surface.vertex_count();
    let edges = surface.edges();
    let edge_index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let tri_index: HashMap<[u32; 3], usize> = surface
        .triangles()
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();

    let mut vertex = vec![NONE; nv];
    let mut vertex_reps = Vec::new();
    let mut vertex_sizes = Vec::new();
    for v in 0..nv {
        if vertex[v] != NONE {
            continue;
        }
        let id = vertex_reps.len();
        vertex_reps.push(v as u32);
        let mut size = 0;
        for g in elements {
            let w = g[v] as usize;
            if vertex[w] == NONE {
                vertex[w] = id;
                size += 1;
            }
        }
        vertex_sizes.push(size);
    }

    let mut edge = vec![NONE; edges.len()];
    let mut edge_reps = Vec::new();
    let mut edge_sizes = Vec::new();
    for (i, &[a, b]) in edges.iter().enumerate() {
        if edge[i] != NONE {
            continue;
        }
        let id = edge_reps.len();
        edge_reps.push([a, b]);
        let mut size = 0;
        for g in elements {
            let (x, y) = (g[a as usize], g[b as usize]);
            let j = edge_index[&[x.min(y), x.max(y)]];
            if edge[j] == NONE {
                edge[j] = id;
                size += 1;
            }
        }
        edge_sizes.push(size);
    }

    let mut triangle = vec![NONE; surface.triangles().len()];
    let mut triangle_reps = Vec::new();
    for (i, t) in surface.triangles().iter().enumerate() {
        if triangle[i] != NONE {
            continue;
        }
        let id = triangle_reps.len();
        triangle_reps.push(*t);
        for g in elements {
            let mut img = [g[t[0] as usize], g[t[1] as usize], g[t[2] as usize]];
            img.sort_unstable();
            triangle[tri_index[&img]] = id;
        }
    }

    Orbits {
        vertex,
        edge,
        vertex_reps,
        edge_reps,
        triangle_reps,
        vertex_sizes,
        edge_sizes,
    }
}

impl Orbits {
    fn complex(&self, surface: &SimplicialSurface, order: usize) -> Result<StratifiedComplex, QuotientError> {
        let edges = surface.edges();
        let edge_index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let nv = self.vertex_reps.len();
        let ne = self.edge_reps.len();
        let mut cells = Vec::with_capacity(nv + ne + self.triangle_reps.len());
        for (i, &v) in self.vertex_reps.iter().enumerate() {
            cells.push(Cell {
                id: format!("v{v}"),
                dim: 0,
                faces: Vec::new(),
                local_order: (order / self.vertex_sizes[i]) as u32,
            });
        }
        for (i, &[a, b]) in self.edge_reps.iter().enumerate() {
            cells.push(Cell {
                id: format!("e{a}.{b}"),
                dim: 1,
                faces: vec![self.vertex[a as usize], self.vertex[b as usize]],
                local_order: (order / self.edge_sizes[i]) as u32,
            });
        }
        for &[a, b, c] in &self.triangle_reps {
            let faces = [[a, b], [b, c], [a, c]]
                .iter()
                .map(|e| nv + self.edge[edge_index[e]])
                .collect();
            cells.push(Cell {
                id: format!("f{a}.{b}.{c}"),
                dim: 2,
                faces,
                local_order: 1,
            });
        }
        StratifiedComplex::new(cells).map_err(|e| QuotientError::Inconsistent(e.to_string()))
    }
}

/// Whether the 2-cells of a triangulated complex can be oriented coherently
/// across every edge of order 1.
fn quotient_orientable(c: &StratifiedComplex) -> bool {
    let faces: Vec<usize> = c.indices_of_dim(2).collect();
    let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &f) in faces.iter().enumerate() {
        for &e in &c.cell(f).faces {
            by_edge.entry(e).or_default().push(i);
        }
    }
    // +1 if the face's cyclic vertex order traverses e from faces[0] to faces[1]
    let direction = |f: usize, e: usize| -> i8 {
        let cycle = c.boundary_cycle(f).expect("checked by construction");
        let (u, v) = (c.cell(e).faces[0], c.cell(e).faces[1]);
        let k = cycle.len();
        let forward = (0..k).any(|i| cycle[i] == u && cycle[(i + 1) % k] == v);
        if forward {
            1
        } else {
            -1
        }
    };
    let mut sign = vec![0i8; faces.len()];
    for start in 0..faces.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &e in &c.cell(faces[i]).faces {
                if c.cell(e).local_order != 1 {
                    continue;
                }
                let here = sign[i] * direction(faces[i], e);
                for &j in &by_edge[&e] {
                    if j == i {
                        continue;
                    }
                    let want = -here * direction(faces[j], e);
                    if sign[j] == 0 {
                        sign[j] = want;
                        queue.push_back(j);
                    } else if sign[j] != want {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// How the stabilizer of a vertex acts on its link cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LinkAction {
    Rotations,
    WithReflections,
}

fn link_action(surface: &SimplicialSurface, v: u32, stabilizer: &[&Perm]) -> LinkAction {
    let link = surface.link_cycle(v).expect("surface invariant");
    let k = link.len();
    let pos: HashMap<u32, usize> = link.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    for g in stabilizer {
        let j = pos[&g[link[0] as usize]];
        let next = g[link[1] as usize];
        if next != link[(j + 1) % k] {
            return LinkAction::WithReflections;
        }
    }
    LinkAction::Rotations
}

/// Result of [`quotient`]. `signature` is `None` when the quotient surface
/// is non-orientable and has mirrors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientResult {
    pub complex: StratifiedComplex,
    pub signature: Option<Signature>,
    pub group_order: u64,
    pub chi_cover: Rational,
    pub chi_quotient: Rational,
}

/// The quotient orbifold `M // G`.
pub fn quotient(action: &SimplicialAction) -> Result<QuotientResult, QuotientError> {
    let reg = regularize(action);
    let all: Vec<usize> = (0..reg.order()).collect();
    quotient_regular(&reg, &all)
}

/// Quotient of a regularized action by the subgroup whose elements sit at
/// `members` in `reg.elements()`.
fn quotient_regular(reg: &SimplicialAction, members: &[usize]) -> Result<QuotientResult, QuotientError> {
    let elements: Vec<&Perm> = members.iter().map(|&i| &reg.elements[i]).collect();
    let order = elements.len();
    let surface = &reg.surface;
    let orb = orbits(surface, &elements);
    let complex = orb.complex(surface, order)?;
    complex
        .check_compatible()
        .map_err(|e| QuotientError::Inconsistent(e.to_string()))?;

    let chi_cover = Rational::integer(surface.euler_characteristic());
    let chi_quotient = euler_from_complex(&complex).map_err(|e| QuotientError::Inconsistent(e.to_string()))?;
    if chi_quotient * order as i64 != chi_cover {
        return Err(QuotientError::ChiMismatch(format!(
            "cover {chi_cover} vs {order} * {chi_quotient}"
        )));
    }

    // vertex classification, cross-checked against the link action
    let nv = orb.vertex_reps.len();
    let mut mirror_nbrs: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in complex.mirror_edges() {
        let [a, b] = [complex.cell(e).faces[0], complex.cell(e).faces[1]];
        mirror_nbrs[a].push(b);
        mirror_nbrs[b].push(a);
    }
    let mut cones = Vec::new();
    for q in 0..nv {
        let n = complex.cell(q).local_order;
        if n == 1 {
            continue;
        }
        let rep = orb.vertex_reps[q];
        let stab: Vec<&Perm> = elements.iter().copied().filter(|g| g[rep as usize] == rep).collect();
        let on_mirror = !mirror_nbrs[q].is_empty();
        let action = link_action(surface, rep, &stab);
        match (on_mirror, action) {
            (false, LinkAction::Rotations) => cones.push(n),
            (true, LinkAction::WithReflections) if n % 2 == 0 => {}
            _ => {
                return Err(QuotientError::Inconsistent(format!(
                    "vertex orbit v{rep} of order {n} has link action {action:?} (mirror: {on_mirror})"
                )))
            }
        }
    }

    // mirror circles, corners listed in cyclic order
    let mut boundary: Vec<Vec<u32>> = Vec::new();
    let mut seen = vec![false; nv];
    for start in 0..nv {
        if seen[start] || mirror_nbrs[start].is_empty() {
            continue;
        }
        let mut corners = Vec::new();
        let (mut prev, mut cur) = (usize::MAX, start);
        loop {
            seen[cur] = true;
            let n = complex.cell(cur).local_order;
            if n > 2 {
                corners.push(n / 2);
            }
            let next = if mirror_nbrs[cur][0] != prev {
                mirror_nbrs[cur][0]
            } else {
                mirror_nbrs[cur][1]
            };
            prev = cur;
            cur = next;
            if cur == start {
                break;
            }
        }
        boundary.push(corners);
    }

    let orientable = quotient_orientable(&complex);
    let b = boundary.len() as i64;
    let chi_top = complex.topological_euler();
    let signature = if !orientable && b > 0 {
        None
    } else {
        let deficit = 2 - b - chi_top;
        let genus = if orientable {
            if deficit < 0 || deficit % 2 != 0 {
                return Err(QuotientError::Inconsistent(format!(
                    "orientable quotient with euler characteristic {chi_top} and {b} boundary circles"
                )));
            }
            deficit / 2
        } else {
            deficit
        };
        let sig = Signature::new(orientable, genus as u32, cones, boundary)
            .map_err(|e| QuotientError::Inconsistent(e.to_string()))?;
        let closed_form = euler_closed_form(&sig);
        if closed_form != chi_quotient {
            return Err(QuotientError::ChiMismatch(format!(
                "signature {sig} has euler characteristic {closed_form}, complex gives {chi_quotient}"
            )));
        }
        Some(sig)
    };

    Ok(QuotientResult {
        complex,
        signature,
        group_order: order as u64,
        chi_cover,
        chi_quotient,
    })
}

/// A quotient of a regularized action together with the data needed to
/// compare subgroup quotients on the same subdivision.
pub struct RegularQuotients {
    reg: SimplicialAction,
    source_len: usize,
}

impl RegularQuotients {
    pub fn new(action: &SimplicialAction) -> Self {
        RegularQuotients {
            reg: regularize(action),
            source_len: action.surface.vertex_count(),
        }
    }

    pub fn regularized(&self) -> &SimplicialAction {
        &self.reg
    }

    /// Quotient by the whole group.
    pub fn full(&self) -> Result<QuotientResult, QuotientError> {
        let all: Vec<usize> = (0..self.reg.order()).collect();
        quotient_regular(&self.reg, &all)
    }

    /// Positions in the group of the subgroup generated by `generators`,
    /// given as permutations of the original vertices.
    pub fn subgroup_positions(&self, original: &SimplicialAction, generators: &[Perm]) -> Result<Vec<usize>, QuotientError> {
        debug_assert_eq!(original.surface.vertex_count(), self.source_len);
        let sub = original.subaction(generators)?;
        Ok(original.positions_of(&sub))
    }

    /// Quotient by the subgroup at `positions`.
    pub fn by_subgroup(&self, positions: &[usize]) -> Result<QuotientResult, QuotientError> {
        quotient_regular(&self.reg, positions)
    }

    /// For each vertex orbit of the subgroup at `outer` that has nontrivial
    /// stabilizer, the stabilizer orders in the subgroup at `inner` of the
    /// `inner`-orbits it splits into. Entries are
    /// `(stabilizer order in outer, on a mirror, inner stabilizer orders)`.
    pub fn singular_fibers(&self, outer: &[usize], inner: &[usize]) -> Vec<(u32, bool, Vec<u32>)> {
        let s = &self.reg.surface;
        let outer_elems: Vec<&Perm> = outer.iter().map(|&i| &self.reg.elements[i]).collect();
        let inner_elems: Vec<&Perm> = inner.iter().map(|&i| &self.reg.elements[i]).collect();
        let big = orbits(s, &outer_elems);
        let small = orbits(s, &inner_elems);
        let mut out = Vec::new();
        for (q, &rep) in big.vertex_reps.iter().enumerate() {
            let gamma = outer.len() / big.vertex_sizes[q];
            if gamma == 1 {
                continue;
            }
            let stab: Vec<&Perm> = outer_elems
                .iter()
                .copied()
                .filter(|g| g[rep as usize] == rep)
                .collect();
            let mirror = link_action(s, rep, &stab) == LinkAction::WithReflections;
            let mut inner_orbits: BTreeMap<usize, u32> = BTreeMap::new();
            for (v, &o) in big.vertex.iter().enumerate() {
                if o == q {
                    let small_orbit = small.vertex[v];
                    inner_orbits
                        .entry(small_orbit)
                        .or_insert((inner.len() / small.vertex_sizes[small_orbit]) as u32);
                }
            }
            let mut orders: Vec<u32> = inner_orbits.into_values().collect();
            orders.sort_unstable();
            out.push((gamma as u32, mirror, orders));
        }
        out
    }
}

/// One generator in an action file: a map from vertex ids to their images.
/// Vertices left out are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub perm: BTreeMap<String, String>,
}

/// Action file contents. The surface may be given inline or separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SimplicialSurface>,
    pub generators: Vec<GeneratorSpec>,
}

impl GeneratorSpec {
    pub fn from_perm(surface: &SimplicialSurface, perm: &[u32]) -> Self {
        let v = surface.vertices();
        GeneratorSpec {
            perm: perm
                .iter()
                .enumerate()
                .filter(|&(i, &j)| i as u32 != j)
                .map(|(i, &j)| (v[i].clone(), v[j as usize].clone()))
                .collect(),
        }
    }

    pub fn to_perm(&self, surface: &SimplicialSurface) -> Result<Perm, QuotientError> {
        let mut p = identity(surface.vertex_count());
        for (from, to) in &self.perm {
            let find = |id: &str| {
                surface
                    .vertex_index(id)
                    .ok_or_else(|| QuotientError::InvalidPermutation(format!("unknown vertex `{id}`")))
            };
            p[find(from)? as usize] = find(to)?;
        }
        if !is_permutation(&p) {
            return Err(QuotientError::InvalidPermutation(
                "vertex map is not a bijection".into(),
            ));
        }
        Ok(p)
    }
}

/// Reads generators against a surface and validates the action.
pub fn action_from_spec(
    surface: SimplicialSurface,
    generators: &[GeneratorSpec],
) -> Result<SimplicialAction, QuotientError> {
    let perms = generators
        .iter()
        .map(|g| g.to_perm(&surface))
        .collect::<Result<Vec<_>, _>>()?;
    validate_action(surface, perms)
}
