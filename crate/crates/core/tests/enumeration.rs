use std::collections::BTreeSet;

use toric_core::arrangement::{rational, ToricLine};
use toric_core::census::{enumerate_arrangements, quick_counts, realizable_region, SearchBounds};

/// Valid 2-line arrangements with |a|, |b| <= 1 and intercepts {0, 1/2},
/// counted from raw (a, b, c) triples without the enumerator.
fn independent_pair_count() -> usize {
    let mut lines = BTreeSet::new();
    for a in -1..=1i64 {
        for b in -1..=1i64 {
            if a == 0 && b == 0 {
                continue;
            }
            for (p, q) in [(0, 1), (1, 2)] {
                lines.insert(ToricLine::new(a, b, rational(p, q)).unwrap());
            }
        }
    }
    let lines: Vec<ToricLine> = lines.into_iter().collect();
    let mut count = 0;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (l, m) = (&lines[i], &lines[j]);
            if l.a() * m.b() != l.b() * m.a() {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn two_line_count_is_pinned() {
    let bounds = SearchBounds::new(2, 1, 2).unwrap();
    let n = enumerate_arrangements(&bounds).count();
    assert_eq!(n, independent_pair_count());
    assert_eq!(n, 24);
}

#[test]
fn stream_is_strictly_increasing() {
    let bounds = SearchBounds::new(3, 2, 2).unwrap();
    let keys: Vec<Vec<ToricLine>> = enumerate_arrangements(&bounds).map(|a| a.lines().to_vec()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    for k in &keys {
        assert!(k.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn every_enumerated_arrangement_lies_in_the_cone() {
    for n in 2..=3 {
        let bounds = SearchBounds::new(n, 2, 3).unwrap();
        for arr in enumerate_arrangements(&bounds) {
            let (f0, f2) = quick_counts(&arr);
            assert!(f0 <= f2 && f2 <= 2 * f0, "{}", arr.compact());
        }
    }
}

#[test]
fn witnesses_reanalyze() {
    let r = realizable_region(&SearchBounds::new(3, 2, 2).unwrap(), 2);
    for ((f0, f2), w) in &r.realized_pairs {
        assert_eq!(quick_counts(w), (*f0, *f2));
    }
    for (f2, w) in &r.realized_f2 {
        assert_eq!(quick_counts(w).1, *f2);
    }
}
