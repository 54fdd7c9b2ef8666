//! Triangulated closed surfaces.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::group::Perm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a closed surface: {0}")]
pub struct NotASurface(pub String);

/// A closed connected surface given by vertex ids and triangles. Triangles
/// are stored with sorted vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceRepr", into = "SurfaceRepr")]
pub struct SimplicialSurface {
    vertices: Vec<String>,
    triangles: Vec<[u32; 3]>,
}

pub type Edge = [u32; 2];

fn sorted3(mut t: [u32; 3]) -> [u32; 3] {
    t.sort_unstable();
    t
}

impl SimplicialSurface {
    pub fn new(vertices: Vec<String>, triangles: Vec<[u32; 3]>) -> Result<Self, NotASurface> {
        let s = SimplicialSurface {
            vertices,
            triangles: triangles.into_iter().map(sorted3).collect(),
        };
        s.check()?;
        Ok(s)
    }

    /// Like [`SimplicialSurface::new`] with vertex ids taken from triangle
    /// labels in order of first appearance.
    pub fn from_labeled<S: AsRef<str>>(triangles: &[[S; 3]]) -> Result<Self, NotASurface> {
        let mut ids: Vec<String> = Vec::new();
        let mut index: HashMap<String, u32> = HashMap::new();
        let mut tris = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut out = [0u32; 3];
            for (k, v) in t.iter().enumerate() {
                let v = v.as_ref();
                out[k] = *index.entry(v.to_string()).or_insert_with(|| {
                    ids.push(v.to_string());
                    ids.len() as u32 - 1
                });
            }
            tris.push(out);
        }
        SimplicialSurface::new(ids, tris)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == id).map(|i| i as u32)
    }

    /// Sorted list of edges.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self
            .triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [b, c], [a, c]])
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges().len() as i64 + self.triangles.len() as i64
    }

    fn check(&self) -> Result<(), NotASurface> {
        let n = self.vertices.len() as u32;
        if self.triangles.is_empty() {
            return Err(NotASurface("no triangles".into()));
        }
        let mut ids = HashSet::new();
        for v in &self.vertices {
            if !ids.insert(v) {
                return Err(NotASurface(format!("duplicate vertex `{v}`")));
            }
        }
        let mut tri_set = HashSet::new();
        for t in &self.triangles {
            if t.iter().any(|&v| v >= n) {
                return Err(NotASurface("triangle references a missing vertex".into()));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(NotASurface("degenerate triangle".into()));
            }
            if !tri_set.insert(*t) {
                return Err(NotASurface("repeated triangle".into()));
            }
        }
        let mut edge_count: HashMap<Edge, usize> = HashMap::new();
        for &[a, b, c] in &self.triangles {
            for e in [[a, b], [b, c], [a, c]] {
                *edge_count.entry(e).or_default() += 1;
            }
        }
        if let Some((e, k)) = edge_count.iter().find(|(_, &k)| k != 2) {
            return Err(NotASurface(format!(
                "edge {}-{} lies on {k} triangles",
                self.vertices[e[0] as usize], self.vertices[e[1] as usize]
            )));
        }
        for v in 0..n {
            if self.link_cycle(v).is_none() {
                return Err(NotASurface(format!(
                    "link of `{}` is not a single cycle",
                    self.vertices[v as usize]
                )));
            }
        }
        // connectivity through triangles
        let mut seen = vec![false; n as usize];
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n as usize];
        for &[a, b, c] in &self.triangles {
            adj[a as usize].extend([b, c]);
            adj[b as usize].extend([a, c]);
            adj[c as usize].extend([a, b]);
        }
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if !std::mem::replace(&mut seen[w as usize], true) {
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(NotASurface("not connected".into()));
        }
        Ok(())
    }

    /// Link of `v` as a cyclic vertex sequence, if it is a single cycle.
    pub fn link_cycle(&self, v: u32) -> Option<Vec<u32>> {
        let mut nbrs: HashMap<u32, Vec<u32>> = HashMap::new();
        for t in &self.triangles {
            if !t.contains(&v) {
                continue;
            }
            let others: Vec<u32> = t.iter().copied().filter(|&w| w != v).collect();
            nbrs.entry(others[0]).or_default().push(others[1]);
            nbrs.entry(others[1]).or_default().push(others[0]);
        }
        if nbrs.len() < 3 || nbrs.values().any(|x| x.len() != 2) {
            return None;
        }
        let start = *nbrs.keys().min().unwrap();
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = nbrs[&start][0];
        while cur != start {
            cycle.push(cur);
            let next = if nbrs[&cur][0] != prev { nbrs[&cur][0] } else { nbrs[&cur][1] };
            prev = cur;
            cur = next;
            if cycle.len() > nbrs.len() {
                return None;
            }
        }
        (cycle.len() == nbrs.len()).then_some(cycle)
    }

    /// Whether the triangles admit a coherent orientation.
    pub fn is_orientable(&self) -> bool {
        self.orientation().is_some()
    }

    /// A coherent orientation, if one exists: for each triangle, `1` if the
    /// sorted vertex order is positive and `-1` otherwise.
    pub fn orientation(&self) -> Option<Vec<i8>> {
        let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
        for (i, &[a, b, c]) in self.triangles.iter().enumerate() {
            for e in [[a, b], [b, c], [a, c]] {
                by_edge.entry(e).or_default().push(i);
            }
        }
        let direction = |t: &[u32; 3], e: Edge| -> i8 {
            let forward = (t[0] == e[0] && t[1] == e[1])
                || (t[1] == e[0] && t[2] == e[1])
                || (t[2] == e[0] && t[0] == e[1]);
            if forward {
                1
            } else {
                -1
            }
        };
        let mut sign = vec![0i8; self.triangles.len()];
        sign[0] = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let t = self.triangles[i];
            for e in [[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]] {
                let here = sign[i] * direction(&t, e);
                for &j in &by_edge[&e] {
                    if j == i {
                        continue;
                    }
                    let want = -here * direction(&self.triangles[j], e);
                    if sign[j] == 0 {
                        sign[j] = want;
                        queue.push_back(j);
                    } else if sign[j] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    /// Whether a simplicial automorphism preserves orientation; `None` on a
    /// non-orientable surface.
    pub fn preserves_orientation(&self, perm: &[u32]) -> Option<bool> {
        let sign = self.orientation()?;
        let index: HashMap<[u32; 3], usize> =
            self.triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let t = self.triangles[0];
        let img = [perm[t[0] as usize], perm[t[1] as usize], perm[t[2] as usize]];
        // parity of the sorting permutation of img
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| img[i] > img[j])
            .count();
        let parity: i8 = if inversions % 2 == 0 { 1 } else { -1 };
        Some(sign[index[&sorted3(img)]] * parity == sign[0])
    }

    /// Does `perm` map every triangle to a triangle?
    pub fn preserves_triangles(&self, perm: &[u32]) -> bool {
        let set: HashSet<[u32; 3]> = self.triangles.iter().copied().collect();
        self.triangles.iter().all(|t| {
            set.contains(&sorted3([
                perm[t[0] as usize],
                perm[t[1] as usize],
                perm[t[2] as usize],
            ]))
        })
    }

    /// Barycentric subdivision. The new vertex `i` is the barycenter of the
    /// old simplex `simplices[i]` (sorted vertex list).
    pub fn subdivide(&self) -> Subdivision {
        let edges = self.edges();
        let nv = self.vertices.len();
        let mut simplices: Vec<Vec<u32>> = (0..nv as u32).map(|v| vec![v]).collect();
        let mut ids: Vec<String> = self.vertices.clone();
        let name = |s: &[u32]| {
            let parts: Vec<&str> = s.iter().map(|&v| self.vertices[v as usize].as_str()).collect();
            format!("[{}]", parts.join(","))
        };
        let mut edge_index: HashMap<Edge, u32> = HashMap::new();
        for e in &edges {
            edge_index.insert(*e, simplices.len() as u32);
            ids.push(name(e));
            simplices.push(e.to_vec());
        }
        let mut triangles = Vec::with_capacity(6 * self.triangles.len());
        for t in &self.triangles {
            let center = simplices.len() as u32;
            ids.push(name(t));
            simplices.push(t.to_vec());
            for e in [[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]] {
                let m = edge_index[&e];
                for v in e {
                    triangles.push(sorted3([v, m, center]));
                }
            }
        }
        let surface = SimplicialSurface {
            vertices: ids,
            triangles,
        };
        debug_assert!(surface.check().is_ok());
        Subdivision { surface, simplices }
    }

    /// Full automorphism group: every vertex permutation mapping triangles
    /// to triangles, found by propagating from one oriented flag to all
    /// others. Sorted, identity first.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let mut by_edge: HashMap<Edge, [u32; 2]> = HashMap::new();
        for &[a, b, c] in &self.triangles {
            for (e, w) in [([a, b], c), ([b, c], a), ([a, c], b)] {
                let slot = by_edge.entry(e).or_insert([u32::MAX; 2]);
                if slot[0] == u32::MAX {
                    slot[0] = w;
                } else {
                    slot[1] = w;
                }
            }
        }
        let key = |u: u32, v: u32| if u < v { [u, v] } else { [v, u] };
        let other_apex = |u: u32, v: u32, w: u32| {
            let s = by_edge[&key(u, v)];
            if s[0] == w {
                s[1]
            } else {
                s[0]
            }
        };
        let n = self.vertices.len();
        let base = self.triangles[0];
        let mut out = Vec::new();
        for t in &self.triangles {
            for img in [
                [t[0], t[1], t[2]],
                [t[1], t[2], t[0]],
                [t[2], t[0], t[1]],
                [t[0], t[2], t[1]],
                [t[2], t[1], t[0]],
                [t[1], t[0], t[2]],
            ] {
                let mut map = vec![u32::MAX; n];
                for k in 0..3 {
                    map[base[k] as usize] = img[k];
                }
                // propagate across edges: (u, v, w) is a triangle with apex w
                let mut queue = VecDeque::from([(base[0], base[1], base[2])]);
                let mut visited: HashSet<[u32; 3]> = HashSet::new();
                let mut ok = true;
                while let Some((u, v, w)) = queue.pop_front() {
                    if !visited.insert(sorted3([u, v, w])) {
                        continue;
                    }
                    for (a, b, c) in [(u, v, w), (v, w, u), (w, u, v)] {
                        let d = other_apex(a, b, c);
                        let d_img = other_apex(map[a as usize], map[b as usize], map[c as usize]);
                        match map[d as usize] {
                            x if x == u32::MAX => map[d as usize] = d_img,
                            x if x != d_img => {
                                ok = false;
                                break;
                            }
                            _ => {}
                        }
                        queue.push_back((a, b, d));
                    }
                    if !ok {
                        break;
                    }
                }
                if ok && super::group::is_permutation(&map) && self.preserves_triangles(&map) {
                    out.push(map);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// A barycentric subdivision together with the old simplex behind each new
/// vertex.
pub struct Subdivision {
    pub surface: SimplicialSurface,
    pub simplices: Vec<Vec<u32>>,
}

impl Subdivision {
    /// The permutation of new vertices induced by a permutation of old ones.
    pub fn induce(&self, perm: &[u32]) -> Perm {
        let index: HashMap<&[u32], u32> = self
            .simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        self.induce_with(&index, perm)
    }

    pub(crate) fn induce_all(&self, perms: &[Perm]) -> Vec<Perm> {
        let index: HashMap<&[u32], u32> = self
            .simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        perms.iter().map(|p| self.induce_with(&index, p)).collect()
    }

    fn induce_with(&self, index: &HashMap<&[u32], u32>, perm: &[u32]) -> Perm {
        self.simplices
            .iter()
            .map(|s| {
                let mut img: Vec<u32> = s.iter().map(|&v| perm[v as usize]).collect();
                img.sort_unstable();
                index[img.as_slice()]
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    vertices: Vec<String>,
    triangles: Vec<[String; 3]>,
}

impl TryFrom<SurfaceRepr> for SimplicialSurface {
    type Error = NotASurface;

    fn try_from(r: SurfaceRepr) -> Result<Self, Self::Error> {
        let index: HashMap<&str, u32> = r
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();
        let mut tris = Vec::with_capacity(r.triangles.len());
        for t in &r.triangles {
            let mut out = [0u32; 3];
            for k in 0..3 {
                out[k] = *index
                    .get(t[k].as_str())
                    .ok_or_else(|| NotASurface(format!("unknown vertex `{}`", t[k])))?;
            }
            tris.push(out);
        }
        SimplicialSurface::new(r.vertices, tris)
    }
}

impl From<SimplicialSurface> for SurfaceRepr {
    fn from(s: SimplicialSurface) -> Self {
        let name = |v: u32| s.vertices[v as usize].clone();
        SurfaceRepr {
            triangles: s
                .triangles
                .iter()
                .map(|t| [name(t[0]), name(t[1]), name(t[2])])
                .collect(),
            vertices: s.vertices.clone(),
        }
    }
}
