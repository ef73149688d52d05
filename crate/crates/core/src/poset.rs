//! Intersection poset of an arrangement, its Möbius function, and the face
//! count obtained from Möbius values alone.
//!
//! Elements are connected components of intersections ordered by reverse
//! inclusion: the whole torus at the bottom, then the lines, then the
//! vertices. Concurrent lines meet in one vertex element, not one per pair.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::torus_geometry::{vertex_set, FaceVector, TorusPoint, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Torus,
    Line(usize),
    Point(TorusPoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetElement {
    pub id: usize,
    pub dimension: u8,
    pub support: Support,
}

#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    elements: Vec<PosetElement>,
    covers: Vec<(usize, usize)>,
    /// leq[i * n + j] ⇔ element i ≤ element j
    leq: Vec<bool>,
    /// strictly smaller elements of each element
    below: Vec<Vec<usize>>,
}

impl IntersectionPoset {
    pub fn from_vertices(line_count: usize, vertices: &[Vertex]) -> Self {
        let mut elements = vec![PosetElement {
            id: 0,
            dimension: 2,
            support: Support::Torus,
        }];
        for i in 0..line_count {
            elements.push(PosetElement {
                id: 1 + i,
                dimension: 1,
                support: Support::Line(i),
            });
        }
        for (k, v) in vertices.iter().enumerate() {
            elements.push(PosetElement {
                id: 1 + line_count + k,
                dimension: 0,
                support: Support::Point(v.point.clone()),
            });
        }

        let mut covers = Vec::new();
        for i in 0..line_count {
            covers.push((0, 1 + i));
        }
        for (k, v) in vertices.iter().enumerate() {
            for &li in &v.lines {
                covers.push((1 + li, 1 + line_count + k));
            }
        }
        Self::from_covers(elements, covers)
    }

    /// Builds the order as the reflexive-transitive closure of `covers`.
    /// Elements must be listed in a linear extension (every cover goes from
    /// an earlier to a later id).
    fn from_covers(elements: Vec<PosetElement>, covers: Vec<(usize, usize)>) -> Self {
        let n = elements.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            debug_assert!(lo < hi, "covers must follow the element order");
            up[lo].push(hi);
        }
        let mut leq = vec![false; n * n];
        for i in (0..n).rev() {
            leq[i * n + i] = true;
            for &j in &up[i] {
                for k in 0..n {
                    if leq[j * n + k] {
                        leq[i * n + k] = true;
                    }
                }
            }
        }
        let below = (0..n)
            .map(|y| (0..y).filter(|&z| leq[z * n + y]).collect())
            .collect();
        Self {
            elements,
            covers,
            leq,
            below,
        }
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn of_dimension(&self, dimension: u8) -> impl Iterator<Item = &PosetElement> + '_ {
        self.elements.iter().filter(move |e| e.dimension == dimension)
    }

    pub fn count_by_dimension(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for e in &self.elements {
            out[e.dimension as usize] += 1;
        }
        out
    }
}

pub fn build_poset(arr: &Arrangement) -> IntersectionPoset {
    IntersectionPoset::from_vertices(arr.len(), &vertex_set(arr))
}

/// Möbius values on every comparable pair `(x, y)`, `x ≤ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: BTreeMap<(usize, usize), i64>,
}

impl MobiusTable {
    /// `μ(x, y)`; zero for incomparable pairs and for `y < x`.
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.values.get(&(x, y)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `μ(x, x) = 1`, `μ(x, y) = −Σ_{x ≤ z < y} μ(x, z)` for `x < y`.
pub fn mobius(poset: &IntersectionPoset) -> MobiusTable {
    let n = poset.len();
    let mut values = BTreeMap::new();
    let mut row = vec![0i64; n];
    for x in 0..n {
        row.iter_mut().for_each(|v| *v = 0);
        row[x] = 1;
        values.insert((x, x), 1);
        for y in x + 1..n {
            if !poset.leq(x, y) {
                continue;
            }
            let sum: i64 = poset.below[y]
                .iter()
                .filter(|&&z| poset.leq(x, z))
                .map(|&z| row[z])
                .sum();
            row[y] = -sum;
            values.insert((x, y), -sum);
        }
    }
    MobiusTable { values }
}

/// `f_k = Σ |μ(Y, Z)|` over `dim Y = k`, `dim Z = 0`, `Y ≤ Z`.
pub fn face_vector_from_poset(poset: &IntersectionPoset, table: &MobiusTable) -> FaceVector {
    let mut f = [0u64; 3];
    for z in poset.of_dimension(0) {
        for y in &poset.elements {
            if poset.leq(y.id, z.id) {
                f[y.dimension as usize] += table.get(y.id, z.id).unsigned_abs();
            }
        }
    }
    FaceVector::new(f[0], f[1], f[2])
}

pub fn face_vector_by_mobius(arr: &Arrangement) -> FaceVector {
    let poset = build_poset(arr);
    let table = mobius(&poset);
    face_vector_from_poset(&poset, &table)
}

/// `f2 + f1·x + f0·x²`, coefficients stored by ascending power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FPolynomial {
    pub coefficients: Vec<u64>,
}

impl FPolynomial {
    pub fn from_face_vector(f: &FaceVector) -> Self {
        Self {
            coefficients: vec![f.f2, f.f1, f.f0],
        }
    }

    /// `f0·(x + 1)²`.
    pub fn simple(f0: u64) -> Self {
        Self {
            coefficients: vec![f0, 2 * f0, f0],
        }
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn f_polynomial(arr: &Arrangement) -> FPolynomial {
    FPolynomial::from_face_vector(&face_vector_by_mobius(arr))
}

#[derive(Debug, Serialize)]
struct ElementJson {
    id: usize,
    dimension: u8,
    geometry: serde_json::Value,
}

/// `{elements, covers, mobius}` export for documentation and plotting.
pub fn poset_json(poset: &IntersectionPoset, table: &MobiusTable) -> serde_json::Value {
    let elements: Vec<ElementJson> = poset
        .elements
        .iter()
        .map(|e| ElementJson {
            id: e.id,
            dimension: e.dimension,
            geometry: match &e.support {
                Support::Torus => serde_json::json!("torus"),
                Support::Line(i) => serde_json::json!({ "line": i }),
                Support::Point(p) => serde_json::json!({ "point": p.to_strings() }),
            },
        })
        .collect();
    let mobius: Vec<[i64; 3]> = table
        .iter()
        .map(|((x, y), v)| [x as i64, y as i64, v])
        .collect();
    serde_json::json!({
        "elements": elements,
        "covers": poset.covers,
        "mobius": mobius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_arrangement;

    fn arr(text: &str) -> Arrangement {
        parse_arrangement(text).unwrap()
    }

    const EX1: &str = "1 2 0\n2 1 0\n";
    const EX2: &str = "1 2 0\n2 1 0\n1 -1 0\n";
    const SQUARE: &str = "1 0 0\n0 1 0\n";

    #[test]
    fn poset_sizes() {
        let p = build_poset(&arr(EX1));
        assert_eq!(p.len(), 6);
        assert_eq!(p.count_by_dimension(), [3, 2, 1]);
        for v in p.of_dimension(0) {
            assert!(p.leq(1, v.id) && p.leq(2, v.id));
        }

        let p = build_poset(&arr(EX2));
        assert_eq!(p.len(), 7);
        for v in p.of_dimension(0) {
            assert!((1..=3).all(|l| p.leq(l, v.id)));
        }

        let p = build_poset(&arr(SQUARE));
        assert_eq!(p.len(), 4);
        assert_eq!(p.count_by_dimension(), [1, 2, 1]);
    }

    #[test]
    fn order_is_reverse_inclusion() {
        let p = build_poset(&arr("1 0 0\n0 1 0\n1 1 1/2\n"));
        // vertex (0,0) lies on lines 0 and 1 only
        let v = p
            .of_dimension(0)
            .find(|e| matches!(&e.support, Support::Point(pt) if pt.x() == &crate::arrangement::integer(0) && pt.y() == &crate::arrangement::integer(0)))
            .unwrap();
        assert!(p.leq(1, v.id) && p.leq(2, v.id) && !p.leq(3, v.id));
        assert!(p.leq(0, v.id));
        assert!(!p.leq(v.id, 0));
        assert!(!p.leq(1, 2));
    }

    #[test]
    fn mobius_examples() {
        for text in [EX1, EX2, SQUARE] {
            let p = build_poset(&arr(text));
            let m = mobius(&p);
            for l in p.of_dimension(1) {
                assert_eq!(m.get(0, l.id), -1);
            }
        }
        let p = build_poset(&arr(EX1));
        let m = mobius(&p);
        for v in p.of_dimension(0) {
            assert_eq!(m.get(0, v.id), 1);
        }
        let p = build_poset(&arr(EX2));
        let m = mobius(&p);
        for v in p.of_dimension(0) {
            assert_eq!(m.get(0, v.id), 2);
            assert_eq!(m.get(v.id, 0), 0);
        }
    }

    #[test]
    fn interval_sums_vanish() {
        let p = build_poset(&arr(EX2));
        let m = mobius(&p);
        for x in 0..p.len() {
            for y in 0..p.len() {
                if x != y && p.leq(x, y) {
                    let s: i64 = (0..p.len())
                        .filter(|&z| p.leq(x, z) && p.leq(z, y))
                        .map(|z| m.get(x, z))
                        .sum();
                    assert_eq!(s, 0, "interval [{x}, {y}]");
                }
            }
        }
    }

    #[test]
    fn mobius_face_vectors() {
        assert_eq!(face_vector_by_mobius(&arr(EX1)), FaceVector::new(3, 6, 3));
        assert_eq!(face_vector_by_mobius(&arr(EX2)), FaceVector::new(3, 9, 6));
        assert_eq!(face_vector_by_mobius(&arr(SQUARE)), FaceVector::new(1, 2, 1));
    }

    #[test]
    fn f_polynomial_examples() {
        assert_eq!(f_polynomial(&arr(EX1)), FPolynomial::simple(3));
        assert_eq!(f_polynomial(&arr(EX2)).coefficients, vec![6, 9, 3]);
        assert_eq!(f_polynomial(&arr(SQUARE)).to_string(), "1 + 2x + 1x^2");
    }

    #[test]
    fn json_export_shape() {
        let p = build_poset(&arr(EX1));
        let m = mobius(&p);
        let j = poset_json(&p, &m);
        assert_eq!(j["elements"].as_array().unwrap().len(), 6);
        assert_eq!(j["covers"].as_array().unwrap().len(), 2 + 6);
        assert_eq!(j["elements"][0]["geometry"], "torus");
    }
}
