//! Consistency checks for abstract vertex-degree / polygon profiles of
//! geodesic arrangements on a closed orientable surface of genus `g`.
//!
//! Nothing here builds geometry: a profile is `(g, t, p)` and every check is
//! integer arithmetic in `t_j`, `p_k` and `χ = 2 − 2g`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::torus_geometry::FaceProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("inconsistent profile: {identity} ({lhs} != {rhs})")]
    Inconsistent {
        identity: &'static str,
        lhs: i64,
        rhs: i64,
    },
    #[error("invalid profile: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceProfile {
    pub genus: u32,
    /// degree j (≥ 2) → vertex count
    #[serde(default)]
    pub t: BTreeMap<u32, u64>,
    /// side count k (≥ 1) → chamber count
    #[serde(default)]
    pub p: BTreeMap<u32, u64>,
}

impl SurfaceProfile {
    pub fn new(genus: u32, t: BTreeMap<u32, u64>, p: BTreeMap<u32, u64>) -> Result<Self, ProfileError> {
        let sp = Self { genus, t, p };
        sp.validate_domain()?;
        Ok(sp)
    }

    pub fn from_torus(profile: &FaceProfile) -> Self {
        Self {
            genus: 1,
            t: profile.t.iter().map(|(j, n)| (*j as u32, *n)).collect(),
            p: profile.p.iter().map(|(k, n)| (*k as u32, *n)).collect(),
        }
    }

    pub fn validate_domain(&self) -> Result<(), ProfileError> {
        if let Some(j) = self.t.keys().find(|&&j| j < 2) {
            return Err(ProfileError::Invalid(format!("vertex degree {j} < 2")));
        }
        if self.p.contains_key(&0) {
            return Err(ProfileError::Invalid("polygon with 0 sides".into()));
        }
        Ok(())
    }

    pub fn chi(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    fn t_at(&self, j: u32) -> i64 {
        self.t.get(&j).copied().unwrap_or(0) as i64
    }

    fn p_at(&self, k: u32) -> i64 {
        self.p.get(&k).copied().unwrap_or(0) as i64
    }

    fn sum_t(&self, from: u32, weight: impl Fn(i64) -> i64) -> i64 {
        self.t.range(from..).map(|(j, n)| weight(*j as i64) * *n as i64).sum()
    }

    fn sum_p(&self, from: u32, weight: impl Fn(i64) -> i64) -> i64 {
        self.p.range(from..).map(|(k, n)| weight(*k as i64) * *n as i64).sum()
    }

    /// `(Σ t_j, Σ j·t_j, Σ p_k)` without any consistency requirement.
    pub fn raw_face_numbers(&self) -> (i64, i64, i64) {
        (self.sum_t(0, |_| 1), self.sum_t(0, |j| j), self.sum_p(0, |_| 1))
    }
}

/// `f0 = Σ t_j`, `f1 = Σ j·t_j`, `f2 = Σ p_k`, after checking
/// `2·f1 = Σ k·p_k` and `f0 − f1 + f2 = χ`.
pub fn derive_face_numbers(sp: &SurfaceProfile) -> Result<(i64, i64, i64), ProfileError> {
    sp.validate_domain()?;
    let (f0, f1, f2) = sp.raw_face_numbers();
    let kp = sp.sum_p(0, |k| k);
    if 2 * f1 != kp {
        return Err(ProfileError::Inconsistent {
            identity: "2 f1 = sum k p_k",
            lhs: 2 * f1,
            rhs: kp,
        });
    }
    if f0 - f1 + f2 != sp.chi() {
        return Err(ProfileError::Inconsistent {
            identity: "f0 - f1 + f2 = chi",
            lhs: f0 - f1 + f2,
            rhs: sp.chi(),
        });
    }
    Ok((f0, f1, f2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(identity: &'static str, lhs: i64, rhs: i64) -> Self {
        Self {
            identity,
            lhs,
            rhs,
            holds: lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

pub fn check_identities(sp: &SurfaceProfile) -> IdentityReport {
    let chi = sp.chi();
    let (f0, _, f2) = sp.raw_face_numbers();
    let checks = vec![
        IdentityCheck::new(
            "t_2 - 3 chi = sum_{j>=3} (j-3) t_j + sum_{k>=3} (k-3) p_k",
            sp.t_at(2) - 3 * chi,
            sp.sum_t(3, |j| j - 3) + sp.sum_p(3, |k| k - 3),
        ),
        IdentityCheck::new(
            "p_3 - 4 chi = sum_{j>=2} 2(j-2) t_j + sum_{k>=4} (k-4) p_k",
            sp.p_at(3) - 4 * chi,
            sp.sum_t(2, |j| 2 * (j - 2)) + sp.sum_p(4, |k| k - 4),
        ),
        IdentityCheck::new("f2 - chi = sum (j-1) t_j", f2 - chi, sp.sum_t(0, |j| j - 1)),
        IdentityCheck::new(
            "2 (f0 - chi) = sum (k-2) p_k",
            2 * (f0 - chi),
            sp.sum_p(0, |k| k - 2),
        ),
    ];
    IdentityReport { checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub f0: i64,
    pub f2: i64,
    pub chi: i64,
    /// `f0 + χ ≤ f2`
    pub lower_holds: bool,
    /// `f2 ≤ 2(f0 − χ)`
    pub upper_holds: bool,
    pub lower_equality: bool,
    pub upper_equality: bool,
    pub simple: bool,
    pub simplicial: bool,
    /// Equality cases that disagree with simplicity / simpliciality.
    pub mismatches: Vec<String>,
}

impl BoundsReport {
    pub fn passes(&self) -> bool {
        self.lower_holds && self.upper_holds && self.mismatches.is_empty()
    }
}

/// Checks `f0 + χ ≤ f2 ≤ 2(f0 − χ)` and that the left (right) equality occurs
/// exactly for simple (simplicial) profiles. Uses the raw sums, so it also
/// reports on profiles that fail [`derive_face_numbers`].
pub fn check_bounds(sp: &SurfaceProfile) -> BoundsReport {
    let chi = sp.chi();
    let (f0, _, f2) = sp.raw_face_numbers();
    let lower = f0 + chi;
    let upper = 2 * (f0 - chi);
    let simple = sp.t.range(3..).all(|(_, n)| *n == 0);
    let simplicial = sp.p.range(4..).all(|(_, n)| *n == 0);
    let lower_equality = f2 == lower;
    let upper_equality = f2 == upper;
    let mut mismatches = Vec::new();
    if lower_equality != simple {
        mismatches.push(format!(
            "f2 = f0 + chi is {lower_equality} but simple is {simple}"
        ));
    }
    if upper_equality != simplicial {
        mismatches.push(format!(
            "f2 = 2(f0 - chi) is {upper_equality} but simplicial is {simplicial}"
        ));
    }
    BoundsReport {
        f0,
        f2,
        chi,
        lower_holds: lower <= f2,
        upper_holds: f2 <= upper,
        lower_equality,
        upper_equality,
        simple,
        simplicial,
        mismatches,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub genus: u32,
    pub chi: i64,
    pub face_numbers: Option<[i64; 3]>,
    pub consistency_error: Option<String>,
    pub identities: IdentityReport,
    pub bounds: BoundsReport,
}

impl GenusReport {
    pub fn passes(&self) -> bool {
        self.consistency_error.is_none() && self.identities.all_hold() && self.bounds.passes()
    }
}

pub fn genus_report(sp: &SurfaceProfile) -> GenusReport {
    let derived = derive_face_numbers(sp);
    GenusReport {
        genus: sp.genus,
        chi: sp.chi(),
        face_numbers: derived.as_ref().ok().map(|&(a, b, c)| [a, b, c]),
        consistency_error: derived.err().map(|e| e.to_string()),
        identities: check_identities(sp),
        bounds: check_bounds(sp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(genus: u32, t: &[(u32, u64)], p: &[(u32, u64)]) -> SurfaceProfile {
        SurfaceProfile::new(genus, t.iter().copied().collect(), p.iter().copied().collect()).unwrap()
    }

    fn example1() -> SurfaceProfile {
        profile(1, &[(2, 3)], &[(4, 3)])
    }

    fn example2() -> SurfaceProfile {
        profile(1, &[(3, 3)], &[(3, 6)])
    }

    #[test]
    fn derive_examples() {
        assert_eq!(derive_face_numbers(&example1()), Ok((3, 6, 3)));
        assert_eq!(
            derive_face_numbers(&profile(2, &[(3, 4)], &[(3, 4), (4, 1)])),
            Err(ProfileError::Inconsistent {
                identity: "2 f1 = sum k p_k",
                lhs: 24,
                rhs: 16
            })
        );
        let g2 = profile(2, &[(3, 4)], &[(3, 4), (6, 2)]);
        assert_eq!(derive_face_numbers(&g2), Ok((4, 12, 6)));
        assert!(check_identities(&g2).all_hold());
    }

    #[test]
    fn euler_mismatch_detected() {
        // consistent edge count but wrong genus
        let err = derive_face_numbers(&profile(0, &[(2, 3)], &[(4, 3)])).unwrap_err();
        assert!(matches!(err, ProfileError::Inconsistent { identity: "f0 - f1 + f2 = chi", .. }));
    }

    #[test]
    fn identity_examples() {
        assert!(check_identities(&example1()).all_hold());
        assert!(check_identities(&example2()).all_hold());
        let mut broken = example2();
        broken.p = BTreeMap::from([(3, 5), (4, 1)]);
        let report = check_identities(&broken);
        assert!(report.first_failure().is_some());
    }

    #[test]
    fn bounds_examples() {
        let b = check_bounds(&example1());
        assert!(b.passes() && b.lower_equality && b.simple && !b.upper_equality);
        let b = check_bounds(&example2());
        assert!(b.passes() && b.upper_equality && b.simplicial);

        let sphere = profile(0, &[(2, 2)], &[(2, 2)]);
        let b = check_bounds(&sphere);
        assert!(!b.lower_holds);
        assert!(!b.passes());
        assert!(!genus_report(&sphere).passes());
    }

    #[test]
    fn domain_validation() {
        assert!(SurfaceProfile::new(1, BTreeMap::from([(1, 1)]), BTreeMap::new()).is_err());
        assert!(SurfaceProfile::new(1, BTreeMap::new(), BTreeMap::from([(0, 1)])).is_err());
    }

    #[test]
    fn scaling_preserves_torus_profiles_only() {
        let scale = |sp: &SurfaceProfile, s: u64| SurfaceProfile {
            genus: sp.genus,
            t: sp.t.iter().map(|(k, v)| (*k, v * s)).collect(),
            p: sp.p.iter().map(|(k, v)| (*k, v * s)).collect(),
        };
        for s in 2..5 {
            assert!(genus_report(&scale(&example1(), s)).passes());
            assert!(genus_report(&scale(&example2(), s)).passes());
        }
        let g2 = profile(2, &[(3, 4)], &[(3, 4), (6, 2)]);
        assert!(genus_report(&g2).passes());
        for s in 2..5 {
            let r = genus_report(&scale(&g2, s));
            assert!(!r.passes(), "scaled by {s}");
            assert!(!r.identities.all_hold());
        }
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"genus": 1, "t": {"2": 3}, "p": {"4": 3}}"#;
        let sp: SurfaceProfile = serde_json::from_str(json).unwrap();
        assert_eq!(sp, example1());
        let back: SurfaceProfile = serde_json::from_str(&serde_json::to_string(&sp).unwrap()).unwrap();
        assert_eq!(back, sp);
    }
}
