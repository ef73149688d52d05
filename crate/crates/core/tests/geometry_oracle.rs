//! Intersection points and vertex counts against a grid search: every
//! intersection point of two lines has coordinates in (1/N)Z with
//! N = |det| · lcm of the intercept denominators.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::ToPrimitive;

use toric_core::arrangement::{integer, rational, Rational, ToricLine};
use toric_core::torus_geometry::{intersection_count, intersection_points, TorusPoint};

fn on_line(line: &ToricLine, x: &Rational, y: &Rational) -> bool {
    let v = x * integer(line.a()) + y * integer(line.b()) - line.intercept();
    v.is_integer()
}

fn brute_force(l1: &ToricLine, l2: &ToricLine) -> BTreeSet<TorusPoint> {
    let det = (l1.a() * l2.b() - l1.b() * l2.a()).abs();
    let q1 = l1.intercept().denom().to_i64().unwrap();
    let q2 = l2.intercept().denom().to_i64().unwrap();
    let n = det * q1.lcm(&q2);
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (rational(i, n), rational(j, n));
            if on_line(l1, &x, &y) && on_line(l2, &x, &y) {
                out.insert(TorusPoint::new(x, y));
            }
        }
    }
    out
}

#[test]
fn intersection_points_match_grid_search() {
    let intercepts = [integer(0), rational(1, 2), rational(1, 3), rational(2, 5)];
    let mut normals = Vec::new();
    for a in 0..=3i64 {
        for b in -3..=3i64 {
            if (a > 0 || b > 0) && a.gcd(&b) == 1 {
                normals.push((a, b));
            }
        }
    }
    let mut pairs = 0;
    for (i, &(a1, b1)) in normals.iter().enumerate() {
        for &(a2, b2) in &normals[i + 1..] {
            for c1 in &intercepts {
                for c2 in &intercepts {
                    let l1 = ToricLine::new(a1, b1, c1.clone()).unwrap();
                    let l2 = ToricLine::new(a2, b2, c2.clone()).unwrap();
                    let fast: BTreeSet<TorusPoint> = intersection_points(&l1, &l2).into_iter().collect();
                    let slow = brute_force(&l1, &l2);
                    assert_eq!(fast, slow, "{l1} / {l2}");
                    assert_eq!(slow.len() as u64, intersection_count(&l1, &l2), "{l1} / {l2}");
                    pairs += 1;
                }
            }
        }
    }
    assert!(pairs > 1000);
}

#[test]
fn parallel_lines_do_not_meet() {
    let l1 = ToricLine::new(1, 2, integer(0)).unwrap();
    let l2 = ToricLine::new(1, 2, rational(1, 2)).unwrap();
    assert_eq!(intersection_count(&l1, &l2), 0);
    assert!(intersection_points(&l1, &l2).is_empty());
}
