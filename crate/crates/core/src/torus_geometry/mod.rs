//! Exact geometry of a toric line arrangement: intersection points, vertices
//! and their degrees, the half-edge subdivision of the torus and the
//! resulting face profile.

mod subdivision;
pub mod svg;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arrangement::{format_rational, frac, Arrangement, Rational, ToricLine};
use crate::lattice::{det2, smith_normal_form, IntMatrix};

pub use subdivision::{Face, HalfEdge, TorusSubdivision};
pub use svg::{render_svg, RenderOptions};

/// A point of `T²` with both coordinates reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint {
    x: Rational,
    y: Rational,
}

impl TorusPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self {
            x: frac(&x),
            y: frac(&y),
        }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn lies_on(&self, line: &ToricLine) -> bool {
        line.contains(&self.x, &self.y)
    }

    /// `["p/q", "p/q"]`, the report encoding.
    pub fn to_strings(&self) -> [String; 2] {
        [format_rational(&self.x), format_rational(&self.y)]
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// An intersection point with every line of the arrangement through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: TorusPoint,
    pub lines: Vec<usize>,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.lines.len()
    }
}

/// `|a1·b2 − b1·a2|`; zero for parallel lines.
pub fn intersection_count(l1: &ToricLine, l2: &ToricLine) -> u64 {
    det2(l1.a(), l1.b(), l2.a(), l2.b()).unsigned_abs() as u64
}

/// All points of `l1 ∩ l2`.
///
/// With `U·M·V = diag(d1, d2)` for the normal matrix `M`, substituting
/// `p = V·q` turns `M·p ≡ c` into `d_i·q_i ≡ (U·c)_i`, which has the
/// `d1·d2 = |det M|` solutions `q_i = ((U·c)_i + k_i) / d_i`.
pub fn intersection_points(l1: &ToricLine, l2: &ToricLine) -> Vec<TorusPoint> {
    if intersection_count(l1, l2) == 0 {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(&[[l1.a(), l1.b()], [l2.a(), l2.b()]])
        .expect("2x2 shape is valid");
    let snf = smith_normal_form(&m);
    let (u, v) = (&snf.left, &snf.right);
    let c = [l1.intercept().clone(), l2.intercept().clone()];
    let rhs: Vec<Rational> = (0..2)
        .map(|i| &c[0] * Rational::from(u.get(i, 0).clone()) + &c[1] * Rational::from(u.get(i, 1).clone()))
        .collect();

    let d1 = snf.diagonal[0].clone();
    let d2 = snf.diagonal[1].clone();
    debug_assert!(!d1.is_zero() && !d2.is_zero());

    let solutions = |r: &Rational, d: &BigInt| -> Vec<Rational> {
        let mut out = Vec::new();
        let mut k = BigInt::zero();
        while &k < d {
            out.push((r + Rational::from(k.clone())) / Rational::from(d.clone()));
            k += 1;
        }
        out
    };
    let q1s = solutions(&rhs[0], &d1);
    let q2s = solutions(&rhs[1], &d2);

    let v00 = Rational::from(v.get(0, 0).clone());
    let v01 = Rational::from(v.get(0, 1).clone());
    let v10 = Rational::from(v.get(1, 0).clone());
    let v11 = Rational::from(v.get(1, 1).clone());
    let mut points = Vec::with_capacity(q1s.len() * q2s.len());
    for q1 in &q1s {
        for q2 in &q2s {
            let x = &v00 * q1 + &v01 * q2;
            let y = &v10 * q1 + &v11 * q2;
            points.push(TorusPoint::new(x, y));
        }
    }
    points.sort();
    points
}

/// Vertices of the arrangement sorted by `(x, y)`, with concurrent lines
/// merged into a single vertex.
pub fn vertex_set(arr: &Arrangement) -> Vec<Vertex> {
    let mut incidence: BTreeMap<TorusPoint, BTreeSet<usize>> = BTreeMap::new();
    let lines = arr.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            for p in intersection_points(&lines[i], &lines[j]) {
                let entry = incidence.entry(p).or_default();
                entry.insert(i);
                entry.insert(j);
            }
        }
    }
    incidence
        .into_iter()
        .map(|(point, lines)| Vertex {
            point,
            lines: lines.into_iter().collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceVector {
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
}

impl FaceVector {
    pub fn new(f0: u64, f1: u64, f2: u64) -> Self {
        Self { f0, f1, f2 }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.f0, self.f1, self.f2]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f0 as i64 - self.f1 as i64 + self.f2 as i64
    }
}

impl fmt::Display for FaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.f0, self.f1, self.f2)
    }
}

/// Face vector from vertex degrees: `f1 = Σ deg(v)`, `f2 = f1 − f0`.
pub fn face_vector_from_vertices(vertices: &[Vertex]) -> FaceVector {
    let f0 = vertices.len() as u64;
    let f1: u64 = vertices.iter().map(|v| v.degree() as u64).sum();
    FaceVector::new(f0, f1, f1 - f0)
}

pub fn face_vector_by_degrees(arr: &Arrangement) -> FaceVector {
    face_vector_from_vertices(&vertex_set(arr))
}

pub fn build_subdivision(arr: &Arrangement) -> TorusSubdivision {
    TorusSubdivision::build(arr, vertex_set(arr))
}

/// f-vector with the degree distribution `t` and the polygon distribution `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceProfile {
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
    /// degree j → number of vertices of degree j
    pub t: BTreeMap<usize, u64>,
    /// side count k → number of chambers with k boundary half-edges
    pub p: BTreeMap<usize, u64>,
}

impl FaceProfile {
    pub fn from_subdivision(sub: &TorusSubdivision) -> Self {
        let mut t = BTreeMap::new();
        for v in sub.vertices() {
            *t.entry(v.degree()).or_insert(0) += 1;
        }
        let mut p = BTreeMap::new();
        for face in sub.faces() {
            *p.entry(face.side_count()).or_insert(0) += 1;
        }
        let f0 = t.values().sum();
        let f1 = t.iter().map(|(j, n)| *j as u64 * n).sum();
        let f2 = p.values().sum();
        Self { f0, f1, f2, t, p }
    }

    pub fn face_vector(&self) -> FaceVector {
        FaceVector::new(self.f0, self.f1, self.f2)
    }

    pub fn t(&self, degree: usize) -> u64 {
        self.t.get(&degree).copied().unwrap_or(0)
    }

    pub fn p(&self, sides: usize) -> u64 {
        self.p.get(&sides).copied().unwrap_or(0)
    }

    /// No vertex of degree ≥ 3.
    pub fn is_simple(&self) -> bool {
        self.t.range(3..).all(|(_, n)| *n == 0)
    }

    /// No chamber with ≥ 4 sides.
    pub fn is_simplicial(&self) -> bool {
        self.p.range(4..).all(|(_, n)| *n == 0)
    }

    /// Chambers with fewer than three boundary half-edges, if any.
    pub fn small_faces(&self) -> u64 {
        self.p.range(..3).map(|(_, n)| n).sum()
    }

    /// Names of the counting identities the profile violates; empty when all
    /// hold. Covers the Euler relation, the four degree/polygon sums,
    /// `2·f1 = Σ k·p_k`, and the two t₂ / p₃ identities.
    pub fn identity_violations(&self) -> Vec<&'static str> {
        let t = |j: usize| self.t(j) as i64;
        let sum_t = |w: &dyn Fn(i64) -> i64, from: usize| -> i64 {
            self.t.range(from..).map(|(j, n)| w(*j as i64) * *n as i64).sum()
        };
        let sum_p = |w: &dyn Fn(i64) -> i64, from: usize| -> i64 {
            self.p.range(from..).map(|(k, n)| w(*k as i64) * *n as i64).sum()
        };
        let (f0, f1, f2) = (self.f0 as i64, self.f1 as i64, self.f2 as i64);

        let checks: [(&'static str, bool); 8] = [
            ("euler: f0 - f1 + f2 = 0", f0 - f1 + f2 == 0),
            ("f0 = sum t_j", f0 == sum_t(&|_| 1, 0)),
            ("f1 = sum j t_j", f1 == sum_t(&|j| j, 0)),
            ("f2 = sum p_k", f2 == sum_p(&|_| 1, 0)),
            ("f2 = sum (j-1) t_j", f2 == sum_t(&|j| j - 1, 0)),
            ("2 f1 = sum k p_k", 2 * f1 == sum_p(&|k| k, 0)),
            (
                "t_2 = sum_{j>=3} (j-3) t_j + sum_{k>=3} (k-3) p_k",
                t(2) == sum_t(&|j| j - 3, 3) + sum_p(&|k| k - 3, 3),
            ),
            (
                "p_3 = sum_{j>=2} 2(j-2) t_j + sum_{k>=4} (k-4) p_k",
                self.p(3) as i64 == sum_t(&|j| 2 * (j - 2), 2) + sum_p(&|k| k - 4, 4),
            ),
        ];
        checks
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name)
            .collect()
    }
}

pub fn face_profile(arr: &Arrangement) -> FaceProfile {
    FaceProfile::from_subdivision(&build_subdivision(arr))
}

pub fn is_simple(arr: &Arrangement) -> bool {
    vertex_set(arr).iter().all(|v| v.degree() == 2)
}

pub fn is_simplicial(arr: &Arrangement) -> bool {
    face_profile(arr).is_simplicial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{integer, parse_arrangement, rational};

    fn line(a: i64, b: i64, c: Rational) -> ToricLine {
        ToricLine::new(a, b, c).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> TorusPoint {
        TorusPoint::new(rational(x.0, x.1), rational(y.0, y.1))
    }

    pub(crate) fn example1() -> Arrangement {
        parse_arrangement("1 2 0\n2 1 0\n").unwrap()
    }

    pub(crate) fn example2() -> Arrangement {
        parse_arrangement("1 2 0\n2 1 0\n1 -1 0\n").unwrap()
    }

    #[test]
    fn intersection_count_examples() {
        assert_eq!(intersection_count(&line(1, 2, integer(0)), &line(2, 1, integer(0))), 3);
        assert_eq!(intersection_count(&line(1, 0, integer(0)), &line(0, 1, integer(0))), 1);
        assert_eq!(
            intersection_count(&line(1, 0, integer(0)), &line(1, 0, rational(1, 2))),
            0
        );
    }

    #[test]
    fn intersection_points_examples() {
        assert_eq!(
            intersection_points(&line(1, 2, integer(0)), &line(2, 1, integer(0))),
            vec![pt((0, 1), (0, 1)), pt((1, 3), (1, 3)), pt((2, 3), (2, 3))]
        );
        assert_eq!(
            intersection_points(&line(1, 0, integer(0)), &line(0, 1, integer(0))),
            vec![pt((0, 1), (0, 1))]
        );
        assert_eq!(
            intersection_points(&line(2, -1, integer(0)), &line(1, -2, integer(0))),
            vec![pt((0, 1), (0, 1)), pt((1, 3), (2, 3)), pt((2, 3), (1, 3))]
        );
        assert!(intersection_points(&line(1, 0, integer(0)), &line(1, 0, rational(1, 2))).is_empty());
    }

    #[test]
    fn intersection_points_with_offsets_satisfy_both_lines() {
        let l1 = line(3, 1, rational(1, 4));
        let l2 = line(1, -2, rational(2, 3));
        let points = intersection_points(&l1, &l2);
        assert_eq!(points.len(), 7);
        for p in &points {
            assert!(p.lies_on(&l1) && p.lies_on(&l2), "{p} off the lines");
        }
    }

    #[test]
    fn vertex_set_examples() {
        let v = vertex_set(&example1());
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|v| v.degree() == 2));

        let v = vertex_set(&example2());
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|v| v.degree() == 3));

        let arr = parse_arrangement("1 0 0\n0 1 0\n1 1 1/2\n").unwrap();
        let v = vertex_set(&arr);
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|v| v.degree() == 2));
    }

    #[test]
    fn face_vector_by_degree_examples() {
        assert_eq!(face_vector_by_degrees(&example1()), FaceVector::new(3, 6, 3));
        assert_eq!(face_vector_by_degrees(&example2()), FaceVector::new(3, 9, 6));
        let arr = parse_arrangement("0 1 0\n5 -1 0\n").unwrap();
        assert_eq!(face_vector_by_degrees(&arr), FaceVector::new(5, 10, 5));
    }

    #[test]
    fn profile_examples() {
        let p = face_profile(&example1());
        assert_eq!(p.t, BTreeMap::from([(2, 3)]));
        assert_eq!(p.p, BTreeMap::from([(4, 3)]));
        assert!(p.is_simple() && !p.is_simplicial());

        let p = face_profile(&example2());
        assert_eq!(p.t, BTreeMap::from([(3, 3)]));
        assert_eq!(p.p, BTreeMap::from([(3, 6)]));
        assert!(!p.is_simple() && p.is_simplicial());

        let p = face_profile(&parse_arrangement("0 1 0\n4 -1 0\n").unwrap());
        assert_eq!(p.face_vector(), FaceVector::new(4, 8, 4));
        assert_eq!(p.t, BTreeMap::from([(2, 4)]));
        assert_eq!(p.p, BTreeMap::from([(4, 4)]));
        assert!(p.identity_violations().is_empty());
    }

    #[test]
    fn figure_six_right_is_simplicial() {
        let arr = parse_arrangement("0 1 0\n4 -1 0\n1 0 0\n1 0 1/4\n1 0 1/2\n1 0 3/4\n").unwrap();
        let p = face_profile(&arr);
        assert_eq!(p.face_vector(), FaceVector::new(4, 12, 8));
        assert!(is_simplicial(&arr));
        assert!(!is_simple(&arr));
    }

    #[test]
    fn broken_profile_reports_violations() {
        let mut p = face_profile(&example2());
        p.p = BTreeMap::from([(3, 5), (4, 1)]);
        let v = p.identity_violations();
        assert!(v.contains(&"2 f1 = sum k p_k"), "{v:?}");
    }
}
