//! Compatible cell complexes for signatures, built from a polygon schema.
//!
//! The underlying surface is one polygon with boundary word
//!
//! ```text
//! [a1 b1 a1' b1' ... | a1 a1 a2 a2 ...]  s1 s1' ... sk sk'  c1 d1.1 .. d1.m c1' ...
//! ```
//!
//! (`'` = inverse): the handle or crosscap part, one folded spike `s s'` per
//! cone point (its tip becomes the cone vertex), and for each mirror circle a
//! tunnel `c` to a free chain `d` whose interior vertices are the corners. The
//! free edges stay unglued and become the mirror locus. A word that would be
//! empty is replaced by `a a'`, the 2-gon sphere.
//!
//! Gluing the polygon directly produces loops and repeated edges, so the
//! complex returned is the first derived subdivision of the gluing: polygon
//! center, edge midpoints and polygon corners as vertices, all 2-cells
//! triangles.

use crate::euler::complex::{Cell, StratifiedComplex};
use crate::signature::Signature;

#[derive(Clone, Copy)]
struct Occurrence {
    edge: usize,
    forward: bool,
}

struct RawEdge {
    label: String,
    free: bool,
}

#[derive(Default)]
struct Schema {
    edges: Vec<RawEdge>,
    word: Vec<Occurrence>,
}

impl Schema {
    fn edge(&mut self, label: String, free: bool) -> usize {
        self.edges.push(RawEdge { label, free });
        self.edges.len() - 1
    }

    fn push(&mut self, edge: usize, forward: bool) {
        self.word.push(Occurrence { edge, forward });
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertex marks: what a raw vertex class should become.
#[derive(Clone)]
enum Mark {
    Cone(u32, usize),
    MirrorBase(usize),
    Corner(u32, usize, usize),
}

/// Builds a compatible stratified complex realizing `sig`.
pub fn build_stratified_complex(sig: &Signature) -> StratifiedComplex {
    let mut schema = Schema::default();
    // endpoint slots: 2*edge = start, 2*edge+1 = end
    let mut marks: Vec<(usize, Mark)> = Vec::new();

    for i in 1..=sig.genus() as usize {
        if sig.orientable() {
            let a = schema.edge(format!("a{i}"), false);
            let b = schema.edge(format!("b{i}"), false);
            schema.push(a, true);
            schema.push(b, true);
            schema.push(a, false);
            schema.push(b, false);
        } else {
            let a = schema.edge(format!("a{i}"), false);
            schema.push(a, true);
            schema.push(a, true);
        }
    }
    for (i, &p) in sig.cone_points().iter().enumerate() {
        let s = schema.edge(format!("s{}", i + 1), false);
        schema.push(s, true);
        schema.push(s, false);
        marks.push((2 * s + 1, Mark::Cone(p, i)));
    }
    for (j, mirror) in sig.boundary().iter().enumerate() {
        let c = schema.edge(format!("c{}", j + 1), false);
        schema.push(c, true);
        marks.push((2 * c + 1, Mark::MirrorBase(j)));
        let corners = mirror.corners();
        for k in 0..=corners.len() {
            let d = schema.edge(format!("d{}.{}", j + 1, k + 1), true);
            schema.push(d, true);
            if k < corners.len() {
                marks.push((2 * d + 1, Mark::Corner(corners[k], j, k)));
            }
        }
        schema.push(c, false);
    }
    if schema.word.is_empty() {
        let a = schema.edge("a".into(), false);
        schema.push(a, true);
        schema.push(a, false);
    }

    let word = schema.word.clone();
    let m = word.len();
    let start_slot = |o: Occurrence| 2 * o.edge + usize::from(!o.forward);
    let end_slot = |o: Occurrence| 2 * o.edge + usize::from(o.forward);

    let mut uf = UnionFind((0..2 * schema.edges.len()).collect());
    for i in 0..m {
        let prev = word[(i + m - 1) % m];
        uf.union(end_slot(prev), start_slot(word[i]));
    }
    // raw vertex classes in order of first appearance around the polygon
    let mut class_index: Vec<Option<usize>> = vec![None; 2 * schema.edges.len()];
    let mut classes: Vec<usize> = Vec::new();
    let mut corner_vertex = Vec::with_capacity(m);
    for &o in &word {
        let root = uf.find(start_slot(o));
        let idx = *class_index[root].get_or_insert_with(|| {
            classes.push(root);
            classes.len() - 1
        });
        corner_vertex.push(idx);
    }
    let slot_vertex = |uf: &mut UnionFind, slot: usize| class_index[uf.find(slot)].unwrap();

    let mut vertex_mark: Vec<Option<Mark>> = vec![None; classes.len()];
    for (slot, mark) in &marks {
        let v = slot_vertex(&mut uf, *slot);
        vertex_mark[v] = Some(mark.clone());
    }

    let mut cells: Vec<Cell> = Vec::new();
    let mut base_count = 0;
    for mark in &vertex_mark {
        let (id, n) = match mark {
            None => {
                base_count += 1;
                (if base_count == 1 { "P".to_string() } else { format!("P{base_count}") }, 1)
            }
            Some(Mark::Cone(p, i)) => (format!("x{}", i + 1), *p),
            Some(Mark::MirrorBase(j)) => (format!("w{}", j + 1), 2),
            Some(Mark::Corner(q, j, k)) => (format!("q{}.{}", j + 1, k + 1), 2 * q),
        };
        cells.push(Cell {
            id,
            dim: 0,
            faces: Vec::new(),
            local_order: n,
        });
    }

    let edge_order = |e: usize| if schema.edges[e].free { 2 } else { 1 };
    let midpoint: Vec<usize> = (0..schema.edges.len())
        .map(|e| {
            cells.push(Cell {
                id: format!("m:{}", schema.edges[e].label),
                dim: 0,
                faces: Vec::new(),
                local_order: edge_order(e),
            });
            cells.len() - 1
        })
        .collect();
    let center = cells.len();
    cells.push(Cell {
        id: "c".into(),
        dim: 0,
        faces: Vec::new(),
        local_order: 1,
    });

    // half edges: [start half, end half] per raw edge
    let mut half = Vec::with_capacity(schema.edges.len());
    for e in 0..schema.edges.len() {
        let s = slot_vertex(&mut uf, 2 * e);
        let t = slot_vertex(&mut uf, 2 * e + 1);
        let label = &schema.edges[e].label;
        cells.push(Cell {
            id: format!("{label}-"),
            dim: 1,
            faces: vec![s, midpoint[e]],
            local_order: edge_order(e),
        });
        cells.push(Cell {
            id: format!("{label}+"),
            dim: 1,
            faces: vec![midpoint[e], t],
            local_order: edge_order(e),
        });
        half.push([cells.len() - 2, cells.len() - 1]);
    }
    let mut spoke_mid = Vec::with_capacity(m);
    let mut spoke_corner = Vec::with_capacity(m);
    for (i, &o) in word.iter().enumerate() {
        cells.push(Cell {
            id: format!("c-m{i}"),
            dim: 1,
            faces: vec![center, midpoint[o.edge]],
            local_order: 1,
        });
        spoke_mid.push(cells.len() - 1);
        cells.push(Cell {
            id: format!("c-k{i}"),
            dim: 1,
            faces: vec![center, corner_vertex[i]],
            local_order: 1,
        });
        spoke_corner.push(cells.len() - 1);
    }
    for (i, &o) in word.iter().enumerate() {
        let [h0, h1] = half[o.edge];
        let (lead, trail) = if o.forward { (h0, h1) } else { (h1, h0) };
        let next = (i + 1) % m;
        cells.push(Cell {
            id: format!("t{i}a"),
            dim: 2,
            faces: vec![spoke_corner[i], lead, spoke_mid[i]],
            local_order: 1,
        });
        cells.push(Cell {
            id: format!("t{i}b"),
            dim: 2,
            faces: vec![spoke_mid[i], trail, spoke_corner[next]],
            local_order: 1,
        });
    }
    StratifiedComplex::new(cells).expect("schema subdivision is a valid complex")
}
