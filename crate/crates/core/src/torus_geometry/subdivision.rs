//! Half-edge subdivision of the torus induced by an arrangement.
//!
//! Every line is a circle; its vertices, ordered by the exact parameter
//! along the primitive direction `(−b, a)`, cut it into edges. The rotation
//! system at a vertex orders outgoing half-edges counterclockwise by their
//! integer direction vectors, and faces are the orbits of `next`.

use std::cmp::Ordering;

use num_traits::Zero;

use super::{TorusPoint, Vertex};
use crate::arrangement::{frac, integer, Arrangement, Rational};
use crate::lattice::extended_gcd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdge {
    pub origin: usize,
    pub line: usize,
    /// `true` when running along `(−b, a)`, `false` for the reverse.
    pub forward: bool,
    pub twin: usize,
    pub next: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Boundary cycle, in `next` order.
    pub half_edges: Vec<usize>,
}

impl Face {
    /// Number of boundary half-edges; an edge with this face on both sides
    /// counts twice.
    pub fn side_count(&self) -> usize {
        self.half_edges.len()
    }
}

#[derive(Debug, Clone)]
pub struct TorusSubdivision {
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    faces: Vec<Face>,
}

/// Parameter of `p` along `line` in `[0, 1)`: with `a·u + b·v = 1`,
/// `s(p) = frac(u·y − v·x)` advances by exactly 1 per period of `(−b, a)`.
fn line_parameter(p: &TorusPoint, bezout: (i64, i64)) -> Rational {
    let (u, v) = bezout;
    frac(&(p.y() * integer(u) - p.x() * integer(v)))
}

/// Counterclockwise angular comparison of nonzero integer vectors, starting
/// from the positive x-axis.
fn angular_cmp(p: (i64, i64), q: (i64, i64)) -> Ordering {
    let upper = |(x, y): (i64, i64)| y > 0 || (y == 0 && x > 0);
    match (upper(p), upper(q)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cross = p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128;
            0.cmp(&cross)
        }
    }
}

impl TorusSubdivision {
    pub fn build(arr: &Arrangement, vertices: Vec<Vertex>) -> Self {
        let lines = arr.lines();
        let mut on_line: Vec<Vec<(Rational, usize)>> = vec![Vec::new(); lines.len()];
        for (vi, vertex) in vertices.iter().enumerate() {
            for &li in &vertex.lines {
                let line = &lines[li];
                let (_, u, v) = extended_gcd(line.a(), line.b());
                on_line[li].push((line_parameter(&vertex.point, (u, v)), vi));
            }
        }

        let mut half_edges: Vec<HalfEdge> = Vec::new();
        for (li, stops) in on_line.iter_mut().enumerate() {
            stops.sort();
            debug_assert!(
                stops.windows(2).all(|w| w[0].0 != w[1].0),
                "two vertices share a parameter on line {li}"
            );
            let m = stops.len();
            for j in 0..m {
                let from = stops[j].1;
                let to = stops[(j + 1) % m].1;
                let h = half_edges.len();
                half_edges.push(HalfEdge {
                    origin: from,
                    line: li,
                    forward: true,
                    twin: h + 1,
                    next: usize::MAX,
                    face: usize::MAX,
                });
                half_edges.push(HalfEdge {
                    origin: to,
                    line: li,
                    forward: false,
                    twin: h,
                    next: usize::MAX,
                    face: usize::MAX,
                });
            }
        }

        let direction = |h: &HalfEdge| {
            let (dx, dy) = lines[h.line].direction();
            if h.forward {
                (dx, dy)
            } else {
                (-dx, -dy)
            }
        };

        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (h, he) in half_edges.iter().enumerate() {
            rotation[he.origin].push(h);
        }
        // position of each half-edge within its origin's rotation
        let mut slot = vec![0usize; half_edges.len()];
        for rot in rotation.iter_mut() {
            rot.sort_by(|&g, &h| angular_cmp(direction(&half_edges[g]), direction(&half_edges[h])));
            debug_assert!(
                rot.windows(2)
                    .all(|w| angular_cmp(direction(&half_edges[w[0]]), direction(&half_edges[w[1]]))
                        == Ordering::Less),
                "parallel half-edges at a vertex"
            );
            for (i, &h) in rot.iter().enumerate() {
                slot[h] = i;
            }
        }

        // Face on the left: at the head of h, turn to the clockwise neighbour
        // of twin(h).
        for h in 0..half_edges.len() {
            let twin = half_edges[h].twin;
            let rot = &rotation[half_edges[twin].origin];
            let i = slot[twin];
            half_edges[h].next = rot[(i + rot.len() - 1) % rot.len()];
        }

        let mut faces = Vec::new();
        for start in 0..half_edges.len() {
            if half_edges[start].face != usize::MAX {
                continue;
            }
            let fi = faces.len();
            let mut cycle = Vec::new();
            let mut h = start;
            while half_edges[h].face == usize::MAX {
                half_edges[h].face = fi;
                cycle.push(h);
                h = half_edges[h].next;
            }
            debug_assert_eq!(h, start, "next does not close into a cycle");
            faces.push(Face { half_edges: cycle });
        }

        Self {
            vertices,
            half_edges,
            faces,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn target(&self, h: usize) -> usize {
        self.half_edges[self.half_edges[h].twin].origin
    }

    /// Structural problems with the half-edge records, empty when sound.
    pub fn structural_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (h, he) in self.half_edges.iter().enumerate() {
            let tw = &self.half_edges[he.twin];
            if he.twin == h || tw.twin != h || tw.line != he.line || tw.forward == he.forward {
                out.push(format!("half-edge {h}: bad twin {}", he.twin));
            }
            if self.half_edges[he.next].origin != self.target(h) {
                out.push(format!("half-edge {h}: next does not start at its head"));
            }
        }
        let mut seen = vec![0usize; self.half_edges.len()];
        for f in &self.faces {
            for &h in &f.half_edges {
                seen[h] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            out.push("faces do not partition the half-edges".to_string());
        }
        if !self.euler_characteristic().is_zero() {
            out.push(format!("V - E + F = {}", self.euler_characteristic()));
        }
        out
    }
}
