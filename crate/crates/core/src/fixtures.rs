//! Triangulated surfaces and group actions used as examples and test
//! fixtures.

use crate::euler::{barycentric_subdivide, build_stratified_complex};
use crate::quotient::{closure, validate_action, Perm, SimplicialAction, SimplicialSurface};
use crate::signature::parse_signature;

fn action(surface: SimplicialSurface, generators: Vec<Perm>) -> SimplicialAction {
    validate_action(surface, generators).expect("fixture action is valid")
}

const AXES: [char; 3] = ['x', 'y', 'z'];

fn octahedron_vertex(axis: usize, positive: bool) -> String {
    format!("{}{}", AXES[axis], if positive { '+' } else { '-' })
}

/// The octahedron with vertices `x+`, `x-`, `y+`, `y-`, `z+`, `z-`.
pub fn octahedron() -> SimplicialSurface {
    let mut tris = Vec::new();
    for sx in [true, false] {
        for sy in [true, false] {
            for sz in [true, false] {
                tris.push([
                    octahedron_vertex(0, sx),
                    octahedron_vertex(1, sy),
                    octahedron_vertex(2, sz),
                ]);
            }
        }
    }
    SimplicialSurface::from_labeled(&tris).expect("octahedron")
}

/// Vertex permutation of the octahedron induced by a signed permutation
/// matrix, given as `m[axis] = (image axis, sign)`.
fn octahedron_map(s: &SimplicialSurface, m: [(usize, bool); 3]) -> Perm {
    (0..s.vertex_count())
        .map(|i| {
            let id = &s.vertices()[i];
            let axis = AXES.iter().position(|&c| id.starts_with(c)).unwrap();
            let positive = id.ends_with('+');
            let (to, keep) = m[axis];
            s.vertex_index(&octahedron_vertex(to, positive == keep)).unwrap()
        })
        .collect()
}

fn quarter_turn_z(s: &SimplicialSurface) -> Perm {
    octahedron_map(s, [(1, true), (0, false), (2, true)])
}

fn quarter_turn_x(s: &SimplicialSurface) -> Perm {
    octahedron_map(s, [(0, true), (2, true), (1, false)])
}

fn reflect_z(s: &SimplicialSurface) -> Perm {
    octahedron_map(s, [(0, true), (1, true), (2, false)])
}

/// ℤ₄ generated by the quarter turn about the z axis.
pub fn octahedron_rotation() -> SimplicialAction {
    let s = octahedron();
    let g = quarter_turn_z(&s);
    action(s, vec![g])
}

/// ℤ₂ generated by the reflection in the xy-plane.
pub fn octahedron_reflection() -> SimplicialAction {
    let s = octahedron();
    let g = reflect_z(&s);
    action(s, vec![g])
}

/// The rotation group of order 24.
pub fn octahedron_rotations() -> SimplicialAction {
    let s = octahedron();
    let g = vec![quarter_turn_z(&s), quarter_turn_x(&s)];
    action(s, g)
}

/// The full symmetry group of order 48.
pub fn octahedron_full() -> SimplicialAction {
    let s = octahedron();
    let g = vec![quarter_turn_z(&s), quarter_turn_x(&s), reflect_z(&s)];
    action(s, g)
}

/// Swaps `x+` and `y+` only. Not simplicial.
pub fn octahedron_bad_transposition() -> Perm {
    let s = octahedron();
    let (a, b) = (s.vertex_index("x+").unwrap(), s.vertex_index("y+").unwrap());
    (0..s.vertex_count() as u32)
        .map(|v| if v == a { b } else if v == b { a } else { v })
        .collect()
}

/// The icosahedron with poles `T`, `B` and pentagons `u0..u4`, `l0..l4`.
pub fn icosahedron() -> SimplicialSurface {
    let u = |i: usize| format!("u{}", i % 5);
    let l = |i: usize| format!("l{}", i % 5);
    let mut tris = Vec::new();
    for i in 0..5 {
        tris.push(["T".to_string(), u(i), u(i + 1)]);
        tris.push([u(i), u(i + 1), l(i)]);
        tris.push([l(i), l(i + 1), u(i + 1)]);
        tris.push(["B".to_string(), l(i), l(i + 1)]);
    }
    SimplicialSurface::from_labeled(&tris).expect("icosahedron")
}

/// ℤ₅ generated by the fifth turn about the `T`–`B` axis.
pub fn icosahedron_rotation() -> SimplicialAction {
    let s = icosahedron();
    let g: Perm = (0..s.vertex_count())
        .map(|i| {
            let id = &s.vertices()[i];
            let image = match id.split_at(1) {
                (p @ ("u" | "l"), k) => format!("{p}{}", (k.parse::<usize>().unwrap() + 1) % 5),
                _ => id.clone(),
            };
            s.vertex_index(&image).unwrap()
        })
        .collect();
    action(s, vec![g])
}

/// Vertex id of a point of the centered grid in doubled coordinates: even
/// pairs are grid points `p{i}.{j}`, odd pairs are square centers `c{i}.{j}`.
fn torus_vertex(n: i64, a: i64, b: i64) -> String {
    let (a, b) = (a.rem_euclid(2 * n), b.rem_euclid(2 * n));
    if a % 2 == 0 {
        format!("p{}.{}", a / 2, b / 2)
    } else {
        format!("c{}.{}", a / 2, b / 2)
    }
}

/// Flat torus `ℝ² / nℤ²` triangulated by the unit grid with every square
/// coned off at its center. Requires `n ≥ 3`.
pub fn flat_torus(n: u32) -> SimplicialSurface {
    assert!(n >= 3, "grid torus needs n >= 3");
    let n = i64::from(n);
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (2 * i, 2 * j);
            let c = torus_vertex(n, a + 1, b + 1);
            let corners = [(a, b), (a + 2, b), (a + 2, b + 2), (a, b + 2)];
            for k in 0..4 {
                let (p, q) = (corners[k], corners[(k + 1) % 4]);
                tris.push([torus_vertex(n, p.0, p.1), torus_vertex(n, q.0, q.1), c.clone()]);
            }
        }
    }
    SimplicialSurface::from_labeled(&tris).expect("grid torus")
}

/// Vertex permutation induced by the integer matrix `m` on the grid torus.
fn torus_map(s: &SimplicialSurface, n: u32, m: [[i64; 2]; 2]) -> Perm {
    let n = i64::from(n);
    (0..s.vertex_count())
        .map(|i| {
            let id = &s.vertices()[i];
            let (kind, rest) = id.split_at(1);
            let (i, j) = rest.split_once('.').unwrap();
            let (i, j): (i64, i64) = (i.parse().unwrap(), j.parse().unwrap());
            let off = i64::from(kind == "c");
            let (a, b) = (2 * i + off, 2 * j + off);
            let img = torus_vertex(n, m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b);
            s.vertex_index(&img).unwrap()
        })
        .collect()
}

const HALF_TURN: [[i64; 2]; 2] = [[-1, 0], [0, -1]];
const QUARTER_TURN: [[i64; 2]; 2] = [[0, -1], [1, 0]];
const SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];
const FLIP_X: [[i64; 2]; 2] = [[-1, 0], [0, 1]];

fn torus_action(n: u32, ms: &[[[i64; 2]; 2]]) -> SimplicialAction {
    let s = flat_torus(n);
    let g = ms.iter().map(|&m| torus_map(&s, n, m)).collect();
    action(s, g)
}

/// The half turn `v ↦ -v`, with four fixed points.
pub fn torus_half_turn(n: u32) -> SimplicialAction {
    torus_action(n, &[HALF_TURN])
}

/// The quarter turn `(x, y) ↦ (-y, x)`.
pub fn torus_quarter_turn(n: u32) -> SimplicialAction {
    torus_action(n, &[QUARTER_TURN])
}

/// The dihedral point group of order 8.
pub fn torus_point_group(n: u32) -> SimplicialAction {
    torus_action(n, &[QUARTER_TURN, SWAP])
}

/// The reflection `(x, y) ↦ (-x, y)`, fixing two circles.
pub fn torus_reflection(n: u32) -> SimplicialAction {
    torus_action(n, &[FLIP_X])
}

/// The reflection `(x, y) ↦ (y, x)`, whose quotient is a Möbius band with
/// mirrored boundary.
pub fn torus_diagonal_reflection(n: u32) -> SimplicialAction {
    torus_action(n, &[SWAP])
}

/// A genus-2 surface: the barycentric subdivision of the octagon schema.
pub fn genus_two() -> SimplicialSurface {
    let c = barycentric_subdivide(&build_stratified_complex(&parse_signature("O2()").unwrap()));
    let vertices: Vec<String> = c.indices_of_dim(0).map(|v| c.cell(v).id.clone()).collect();
    let slot = |v: usize| vertices.iter().position(|id| *id == c.cell(v).id).unwrap() as u32;
    let triangles = c
        .indices_of_dim(2)
        .map(|f| {
            let vs = c.vertices_of(f);
            [slot(vs[0]), slot(vs[1]), slot(vs[2])]
        })
        .collect();
    SimplicialSurface::new(vertices, triangles).expect("genus-2 surface")
}

/// A small generating set of a permutation group, chosen greedily in order.
pub fn generating_set(n: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = closure(n, &gens, usize::MAX).unwrap();
    for g in elements {
        if !span.contains(g) {
            gens.push(g.clone());
            span = closure(n, &gens, usize::MAX).unwrap();
        }
    }
    gens
}

/// The full simplicial automorphism group of [`genus_two`].
pub fn genus_two_automorphisms() -> SimplicialAction {
    let s = genus_two();
    let aut = s.automorphisms();
    let gens = generating_set(s.vertex_count(), &aut);
    action(s, gens)
}

/// Whether `perm` preserves the orientation of an orientable surface.
pub fn preserves_orientation(surface: &SimplicialSurface, perm: &[u32]) -> bool {
    surface.preserves_orientation(perm).unwrap_or(false)
}

/// Every fixture surface by name.
pub fn all_surfaces() -> Vec<(&'static str, SimplicialSurface)> {
    vec![
        ("octahedron", octahedron()),
        ("icosahedron", icosahedron()),
        ("torus4", flat_torus(4)),
        ("genus2", genus_two()),
    ]
}

/// Every fixture action by name, each on one of [`all_surfaces`].
pub fn all_actions() -> Vec<(&'static str, SimplicialAction)> {
    vec![
        ("octahedron-rotation", octahedron_rotation()),
        ("octahedron-reflection", octahedron_reflection()),
        ("octahedron-rotations", octahedron_rotations()),
        ("octahedron-full", octahedron_full()),
        ("icosahedron-rotation", icosahedron_rotation()),
        ("torus4-half-turn", torus_half_turn(4)),
        ("torus4-quarter-turn", torus_quarter_turn(4)),
        ("torus4-point-group", torus_point_group(4)),
        ("torus4-reflection", torus_reflection(4)),
        ("torus4-diagonal-reflection", torus_diagonal_reflection(4)),
        ("genus2-automorphisms", genus_two_automorphisms()),
    ]
}

/// The surface file name for an action fixture.
pub fn surface_of(action_name: &str) -> &'static str {
    match action_name.split('-').next().unwrap() {
        "octahedron" => "octahedron",
        "icosahedron" => "icosahedron",
        "torus4" => "torus4",
        _ => "genus2",
    }
}
