//! Generic parallel projection of polygonal links and diagram extraction.
//!
//! A direction `d` projects space onto the plane orthogonal to `d`; the viewer
//! sits at `+∞·d`, so of two strands over one crossing point the one with the
//! larger `p·d` is the over strand. Every test is an exact integer sign.
//!
//! Crossing sign convention (the D₊ of the skein relation), seen by the
//! viewer with both strands heading up the page:
//!
//! ```text
//!     ↖     ↗
//!       \  /       over:  bottom-left to top-right, drawn unbroken
//!        /
//!       /  \       under: bottom-right to top-left, broken
//! ```
//!
//! Equivalently, a crossing is positive when `(over × under) · d > 0`.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{cross, det3, dot, sign_of, sub, ExactInt, Lattice, Vec3, MAX_DIRECTION};
use crate::geometry::Sign;

/// Projection direction, an integer lattice vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction(pub [i64; 3]);

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Why a direction fails to give a regular projection. Indices refer to the
/// flattened vertex and edge numbering of the link (component by component).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    ZeroDirection,
    /// Two vertices project to one point.
    VertexCollision { a: usize, b: usize },
    /// A vertex projects onto the interior of a non-incident edge.
    VertexOnEdge { vertex: usize, edge: usize },
    /// Two crossings coincide on one edge: three edges through one point.
    TripleCrossing { edge: usize },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::ZeroDirection => write!(f, "zero projection direction"),
            Degeneracy::VertexCollision { a, b } => {
                write!(f, "vertices {a} and {b} project to the same point")
            }
            Degeneracy::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} projects onto edge {edge}")
            }
            Degeneracy::TripleCrossing { edge } => {
                write!(f, "two crossings coincide on edge {edge}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
    pub over_edge: usize,
    pub under_edge: usize,
}

/// An oriented link diagram: arcs run from one undercrossing to the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    /// Component of each arc.
    pub arcs: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub components: usize,
}

impl Diagram {
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Deterministic text dump used by golden tests.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "components {}", self.components).unwrap();
        writeln!(out, "arcs {}", self.arcs.len()).unwrap();
        for (i, c) in self.arcs.iter().enumerate() {
            writeln!(out, "arc {i} component {c}").unwrap();
        }
        writeln!(out, "crossings {}", self.crossings.len()).unwrap();
        for (i, c) in self.crossings.iter().enumerate() {
            writeln!(
                out,
                "crossing {i} over {} under_in {} under_out {} sign {:+}",
                c.over, c.under_in, c.under_out, c.sign
            )
            .unwrap();
        }
        out
    }
}

struct Edge {
    comp: usize,
    a: usize,
    b: usize,
}

/// Parameter `num / den` along an edge, `den > 0`.
#[derive(Clone, Debug)]
struct Param<T> {
    num: T,
    den: T,
}

impl<T: ExactInt> Param<T> {
    fn new(num: T, den: T) -> Self {
        if den.is_negative() {
            Param { num: -num, den: -den }
        } else {
            Param { num, den }
        }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone()))
    }
}

struct RawCrossing<T> {
    over_edge: usize,
    under_edge: usize,
    over_param: Param<T>,
    under_param: Param<T>,
    sign: i8,
}

fn components_of(sizes: &[usize]) -> (Vec<Edge>, usize) {
    let mut edges = Vec::new();
    let mut offset = 0;
    for (comp, &n) in sizes.iter().enumerate() {
        for i in 0..n {
            edges.push(Edge {
                comp,
                a: offset + i,
                b: offset + (i + 1) % n,
            });
        }
        offset += n;
    }
    (edges, offset)
}

/// Builds the diagram of the link whose components are consecutive runs of
/// `verts` with the given `sizes`, or reports the first degeneracy found.
pub(crate) fn build_diagram<T: ExactInt>(
    verts: &[Vec3<T>],
    sizes: &[usize],
    dir: [i64; 3],
) -> Result<Diagram, Degeneracy> {
    if dir == [0, 0, 0] {
        return Err(Degeneracy::ZeroDirection);
    }
    let d: Vec3<T> = dir.map(T::from_i64);
    let (edges, nv) = components_of(sizes);
    debug_assert_eq!(nv, verts.len());

    for a in 0..nv {
        for b in a + 1..nv {
            if cross(&sub(&verts[b], &verts[a]), &d).iter().all(|c| c.is_zero()) {
                return Err(Degeneracy::VertexCollision { a, b });
            }
        }
    }

    // orient[e][v]: orientation of projected vertex v against projected edge e.
    let dd = dot(&d, &d);
    let proj_dot = |x: &Vec3<T>, y: &Vec3<T>| dot(x, y) * dd.clone() - dot(x, &d) * dot(y, &d);
    let mut orient: Vec<Vec<T>> = Vec::with_capacity(edges.len());
    for (ei, e) in edges.iter().enumerate() {
        let (a, b) = (&verts[e.a], &verts[e.b]);
        let ab = sub(b, a);
        let mut row = Vec::with_capacity(nv);
        for (v, p) in verts.iter().enumerate() {
            let o = det3(&ab, &sub(p, a), &d);
            if o.is_zero() && v != e.a && v != e.b {
                let inside = proj_dot(&sub(p, a), &ab).is_positive()
                    && proj_dot(&sub(p, b), &sub(a, b)).is_positive();
                if inside {
                    return Err(Degeneracy::VertexOnEdge { vertex: v, edge: ei });
                }
            }
            row.push(o);
        }
        orient.push(row);
    }
    // Collinear projected edges that overlap always put some endpoint inside
    // the other edge (or on top of another endpoint), so the two checks above
    // also exclude parallel overlaps.

    let adjacent = |e: &Edge, f: &Edge| e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
    let mut raw: Vec<RawCrossing<T>> = Vec::new();
    for (ei, e) in edges.iter().enumerate() {
        for (fi, f) in edges.iter().enumerate().skip(ei + 1) {
            if adjacent(e, f) {
                continue;
            }
            let (o1, o2) = (&orient[ei][f.a], &orient[ei][f.b]);
            let (o3, o4) = (&orient[fi][e.a], &orient[fi][e.b]);
            if sign_of(o1) * sign_of(o2) != Sign::Negative || sign_of(o3) * sign_of(o4) != Sign::Negative {
                continue;
            }
            let t_e = Param::new(o3.clone(), o3.clone() - o4.clone());
            let t_f = Param::new(o1.clone(), o1.clone() - o2.clone());
            let u = sub(&verts[e.b], &verts[e.a]);
            let w = sub(&verts[f.b], &verts[f.a]);
            // f's point minus e's point is λ·d with λ = det[u,w,C-A] / det[u,w,d].
            let lambda = sign_of(&det3(&u, &w, &sub(&verts[f.a], &verts[e.a])))
                * sign_of(&det3(&u, &w, &d));
            let f_over = match lambda {
                Sign::Positive => true,
                Sign::Negative => false,
                // Only reachable for coplanar input; callers validate general position.
                Sign::Zero => return Err(Degeneracy::TripleCrossing { edge: ei }),
            };
            let (over_edge, under_edge, over_param, under_param, over_dir, under_dir) = if f_over {
                (fi, ei, t_f, t_e, w, u)
            } else {
                (ei, fi, t_e, t_f, u, w)
            };
            let sign = sign_of(&det3(&over_dir, &under_dir, &d)).as_i8();
            raw.push(RawCrossing {
                over_edge,
                under_edge,
                over_param,
                under_param,
                sign,
            });
        }
    }

    // Events along each edge, ordered by parameter: (param, crossing, is_under).
    let mut on_edge: Vec<Vec<(usize, bool)>> = vec![Vec::new(); edges.len()];
    for (ci, c) in raw.iter().enumerate() {
        on_edge[c.over_edge].push((ci, false));
        on_edge[c.under_edge].push((ci, true));
    }
    let param = |ci: usize, under: bool| {
        if under {
            &raw[ci].under_param
        } else {
            &raw[ci].over_param
        }
    };
    for (ei, list) in on_edge.iter_mut().enumerate() {
        list.sort_by(|x, y| param(x.0, x.1).cmp(param(y.0, y.1)));
        for w in list.windows(2) {
            if param(w[0].0, w[0].1).cmp(param(w[1].0, w[1].1)) == Ordering::Equal {
                return Err(Degeneracy::TripleCrossing { edge: ei });
            }
        }
    }

    let mut crossings: Vec<Crossing> = raw
        .iter()
        .map(|c| Crossing {
            over: usize::MAX,
            under_in: usize::MAX,
            under_out: usize::MAX,
            sign: c.sign,
            over_edge: c.over_edge,
            under_edge: c.under_edge,
        })
        .collect();
    let mut arcs = Vec::new();
    for comp in 0..sizes.len() {
        let events: Vec<(usize, bool)> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.comp == comp)
            .flat_map(|(ei, _)| on_edge[ei].iter().copied())
            .collect();
        let unders = events.iter().filter(|e| e.1).count().max(1);
        let base = arcs.len();
        arcs.extend(std::iter::repeat_n(comp, unders));
        let mut current = base;
        let mut seen = 0;
        for (ci, is_under) in events {
            if is_under {
                crossings[ci].under_in = current;
                seen += 1;
                current = base + seen % unders;
                crossings[ci].under_out = current;
            } else {
                crossings[ci].over = current;
            }
        }
    }

    Ok(Diagram {
        arcs,
        crossings,
        components: sizes.len(),
    })
}

pub(crate) fn build_from_lattice(
    lattice: &Lattice,
    sizes: &[usize],
    dir: Direction,
) -> Result<Diagram, Degeneracy> {
    let small_dir = dir.0.iter().all(|c| c.abs() <= MAX_DIRECTION);
    match lattice {
        Lattice::Small(v) if small_dir => build_diagram(v, sizes, dir.0),
        Lattice::Small(v) => {
            let big: Vec<Vec3<BigInt>> = v.iter().map(|p| p.map(BigInt::from)).collect();
            build_diagram(&big, sizes, dir.0)
        }
        Lattice::Big(v) => build_diagram(v, sizes, dir.0),
    }
}

pub const MAX_CANDIDATES: usize = 1000;

/// The `k`-th candidate direction of the seeded sequence.
pub fn candidate_directions(seed: u64) -> impl Iterator<Item = Direction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        Direction([
            rng.gen_range(-MAX_DIRECTION..=MAX_DIRECTION),
            rng.gen_range(-MAX_DIRECTION..=MAX_DIRECTION),
            rng.gen_range(-MAX_DIRECTION..=MAX_DIRECTION),
        ])
    })
    .take(MAX_CANDIDATES)
}

/// First direction of the seeded sequence that projects the link regularly,
/// together with the resulting diagram.
pub(crate) fn first_generic(
    lattice: &Lattice,
    sizes: &[usize],
    seed: u64,
) -> Option<(Direction, Diagram)> {
    candidate_directions(seed)
        .find_map(|dir| build_from_lattice(lattice, sizes, dir).ok().map(|d| (dir, d)))
}
