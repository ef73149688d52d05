//! Full analysis of one arrangement: both face-count routes, the chamber
//! subdivision, profiles, poset data, and the invariant checks behind
//! `toric verify`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::genus::{genus_report, SurfaceProfile};
use crate::poset::{face_vector_from_poset, mobius, poset_json, FPolynomial, IntersectionPoset, MobiusTable};
use crate::torus_geometry::{
    face_vector_from_vertices, intersection_count, intersection_points, vertex_set, FaceProfile, FaceVector,
    TorusSubdivision, Vertex,
};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub arrangement: Arrangement,
    pub vertices: Vec<Vertex>,
    pub subdivision: TorusSubdivision,
    pub profile: FaceProfile,
    pub poset: IntersectionPoset,
    pub mobius: MobiusTable,
    pub by_degrees: FaceVector,
    pub by_mobius: FaceVector,
    pub by_subdivision: FaceVector,
}

impl Analysis {
    pub fn new(arr: &Arrangement) -> Self {
        let vertices = vertex_set(arr);
        let by_degrees = face_vector_from_vertices(&vertices);
        let poset = IntersectionPoset::from_vertices(arr.len(), &vertices);
        let mobius = mobius(&poset);
        let by_mobius = face_vector_from_poset(&poset, &mobius);
        let subdivision = TorusSubdivision::build(arr, vertices.clone());
        let by_subdivision = FaceVector::new(
            subdivision.vertex_count() as u64,
            subdivision.edge_count() as u64,
            subdivision.face_count() as u64,
        );
        let profile = FaceProfile::from_subdivision(&subdivision);
        Self {
            arrangement: arr.clone(),
            vertices,
            subdivision,
            profile,
            poset,
            mobius,
            by_degrees,
            by_mobius,
            by_subdivision,
        }
    }

    pub fn face_vector(&self) -> FaceVector {
        self.by_degrees
    }

    pub fn routes_agree(&self) -> bool {
        self.by_degrees == self.by_mobius && self.by_mobius == self.by_subdivision
    }

    pub fn f_polynomial(&self) -> FPolynomial {
        FPolynomial::from_face_vector(&self.by_mobius)
    }

    /// Every invariant that fails, in a fixed order; empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let lines = self.arrangement.lines();

        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let pts = intersection_points(&lines[i], &lines[j]);
                if pts.len() as u64 != intersection_count(&lines[i], &lines[j]) {
                    out.push(format!("intersection count: lines {i} and {j}"));
                }
                if pts.iter().any(|p| !p.lies_on(&lines[i]) || !p.lies_on(&lines[j])) {
                    out.push(format!("intersection points: lines {i} and {j}"));
                }
            }
        }

        out.extend(self.subdivision.structural_violations().into_iter().map(|v| format!("subdivision: {v}")));

        if self.by_degrees != self.by_mobius {
            out.push(format!("route agreement: degrees {} vs mobius {}", self.by_degrees, self.by_mobius));
        }
        if self.by_degrees != self.by_subdivision {
            out.push(format!(
                "route agreement: degrees {} vs subdivision {}",
                self.by_degrees, self.by_subdivision
            ));
        }

        out.extend(self.profile.identity_violations().into_iter().map(|v| format!("identity: {v}")));

        let FaceVector { f0, f2, .. } = self.by_degrees;
        if !(f0 <= f2 && f2 <= 2 * f0) {
            out.push(format!("bounds: f0 <= f2 <= 2 f0 fails for ({f0}, {f2})"));
        }
        if (f2 == f0) != self.profile.is_simple() {
            out.push("bounds: f2 = f0 iff simple".into());
        }
        if (f2 == 2 * f0) != self.profile.is_simplicial() {
            out.push("bounds: f2 = 2 f0 iff simplicial".into());
        }
        if self.profile.t.len() == 1 && !(self.profile.is_simple() || self.profile.is_simplicial()) {
            out.push("constant degree: arrangement is neither simple nor simplicial".into());
        }

        let bottom = self.poset.bottom();
        for e in self.poset.elements() {
            if e.id == bottom {
                continue;
            }
            let sum: i64 = self
                .poset
                .elements()
                .iter()
                .filter(|z| self.poset.leq(z.id, e.id))
                .map(|z| self.mobius.get(bottom, z.id))
                .sum();
            if sum != 0 {
                out.push(format!("mobius: interval sum to element {} is {sum}", e.id));
            }
        }

        if self.profile.is_simple() && self.f_polynomial() != FPolynomial::simple(f0) {
            out.push("f-polynomial: simple arrangement but not f0 (x+1)^2".into());
        }

        let torus = genus_report(&SurfaceProfile::from_torus(&self.profile));
        if !torus.passes() {
            out.push("genus: torus profile fails the surface checks".into());
        }
        out
    }

    pub fn report(&self) -> AnalysisReport {
        let p = &self.profile;
        let dims = self.poset.count_by_dimension();
        AnalysisReport {
            n: self.arrangement.len(),
            f: self.by_degrees.as_array(),
            f0: self.by_degrees.f0,
            f1: self.by_degrees.f1,
            f2: self.by_degrees.f2,
            routes: Routes {
                degrees: self.by_degrees.as_array(),
                mobius: self.by_mobius.as_array(),
                subdivision: self.by_subdivision.as_array(),
                agree: self.routes_agree(),
            },
            t: p.t.clone(),
            p: p.p.clone(),
            simple: p.is_simple(),
            simplicial: p.is_simplicial(),
            small_faces: p.small_faces(),
            vertices: self.vertices.iter().map(|v| v.point.to_strings()).collect(),
            poset: PosetSummary {
                elements: self.poset.len(),
                by_dimension: dims,
                covers: self.poset.covers().len(),
                mobius_entries: self.mobius.len(),
            },
            f_polynomial: self.f_polynomial().coefficients,
            poset_export: None,
        }
    }

    pub fn report_with_poset(&self) -> AnalysisReport {
        AnalysisReport {
            poset_export: Some(poset_json(&self.poset, &self.mobius)),
            ..self.report()
        }
    }

    pub fn text(&self) -> String {
        let r = self.report();
        let mut out = String::new();
        let _ = writeln!(out, "arrangement  {}", self.arrangement.compact());
        let _ = writeln!(out, "lines        {}", r.n);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<12} {:>6} {:>6} {:>6}", "route", "f0", "f1", "f2");
        for (name, f) in [
            ("degrees", r.routes.degrees),
            ("mobius", r.routes.mobius),
            ("subdivision", r.routes.subdivision),
        ] {
            let _ = writeln!(out, "{:<12} {:>6} {:>6} {:>6}", name, f[0], f[1], f[2]);
        }
        let _ = writeln!(out, "agreement    {}", if r.routes.agree { "yes" } else { "NO" });
        let _ = writeln!(out);
        table(&mut out, "degree j", "t_j", &r.t);
        table(&mut out, "sides k", "p_k", &r.p);
        let _ = writeln!(out, "simple       {}", r.simple);
        let _ = writeln!(out, "simplicial   {}", r.simplicial);
        if r.small_faces > 0 {
            let _ = writeln!(out, "small faces  {} chamber(s) with fewer than 3 sides", r.small_faces);
        }
        let _ = writeln!(
            out,
            "poset        {} elements ({} / {} / {} by dimension 2 / 1 / 0), {} covers",
            r.poset.elements, r.poset.by_dimension[2], r.poset.by_dimension[1], r.poset.by_dimension[0], r.poset.covers
        );
        let _ = writeln!(out, "f-polynomial {}", self.f_polynomial());
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>4}  {:<12} {:<12} {:>6}", "#", "x", "y", "degree");
        for (i, v) in self.vertices.iter().enumerate() {
            let [x, y] = v.point.to_strings();
            let _ = writeln!(out, "{:>4}  {:<12} {:<12} {:>6}", i + 1, x, y, v.degree());
        }
        out
    }
}

fn table(out: &mut String, key: &str, value: &str, rows: &BTreeMap<usize, u64>) {
    let _ = writeln!(out, "{key:<12} {value:>6}");
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<12} {v:>6}");
    }
    let _ = writeln!(out);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Routes {
    pub degrees: [u64; 3],
    pub mobius: [u64; 3],
    pub subdivision: [u64; 3],
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetSummary {
    pub elements: usize,
    /// counts for dimensions 0, 1, 2
    pub by_dimension: [usize; 3],
    pub covers: usize,
    pub mobius_entries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub f: [u64; 3],
    pub f0: u64,
    pub f1: u64,
    pub f2: u64,
    pub routes: Routes,
    pub t: BTreeMap<usize, u64>,
    pub p: BTreeMap<usize, u64>,
    pub simple: bool,
    pub simplicial: bool,
    pub small_faces: u64,
    pub vertices: Vec<[String; 2]>,
    pub poset: PosetSummary,
    /// ascending powers of x
    pub f_polynomial: Vec<u64>,
    #[serde(rename = "poset_export", skip_serializing_if = "Option::is_none")]
    pub poset_export: Option<serde_json::Value>,
}

pub fn analyze(arr: &Arrangement) -> Analysis {
    Analysis::new(arr)
}

/// First violated invariant, if any.
pub fn verify_invariants(arr: &Arrangement) -> Result<(), String> {
    match Analysis::new(arr).invariant_violations().into_iter().next() {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::parse_arrangement;

    #[test]
    fn example_reports() {
        let a = analyze(&parse_arrangement("1 2 0\n2 1 0\n").unwrap());
        let r = a.report();
        assert_eq!(r.f, [3, 6, 3]);
        assert!(r.routes.agree && r.simple && !r.simplicial);
        assert_eq!(r.vertices[1], ["1/3".to_string(), "1/3".to_string()]);
        assert_eq!(r.f_polynomial, vec![3, 6, 3]);
        assert!(a.invariant_violations().is_empty());

        let b = analyze(&parse_arrangement("1 2 0\n2 1 0\n1 -1 0\n").unwrap());
        assert_eq!(b.report().f, [3, 9, 6]);
        assert!(b.report().simplicial);
        assert!(verify_invariants(&b.arrangement).is_ok());
    }

    #[test]
    fn json_field_names() {
        let a = analyze(&parse_arrangement("1 0 0\n0 1 0\n").unwrap());
        let v = serde_json::to_value(a.report()).unwrap();
        for key in ["n", "f", "f0", "f1", "f2", "t", "p", "simple", "simplicial", "vertices"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["t"]["2"], 1);
        assert_eq!(v["p"]["4"], 1);
        assert!(v.get("poset_export").is_none());
        assert!(serde_json::to_value(a.report_with_poset()).unwrap()["poset_export"]["elements"].is_array());
    }

    #[test]
    fn text_mentions_routes() {
        let t = analyze(&parse_arrangement("1 2 0\n2 1 0\n").unwrap()).text();
        assert!(t.contains("mobius") && t.contains("subdivision") && t.contains("agreement    yes"));
    }
}
