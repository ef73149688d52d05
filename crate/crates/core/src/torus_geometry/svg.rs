//! SVG drawing of an arrangement in the unit-square fundamental domain.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::vertex_set;
use crate::arrangement::{integer, Arrangement, Rational, ToricLine};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Side of the fundamental domain in pixels.
    pub size: f64,
    pub margin: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            size: 400.0,
            margin: 24.0,
            labels: false,
        }
    }
}

type Segment = ((Rational, Rational), (Rational, Rational));

/// Pieces of `a·x + b·y ≡ c` inside `[0, 1]²`: one for each integer `k`
/// with `a·x + b·y = c + k` meeting the square in a nondegenerate segment.
pub fn line_segments(line: &ToricLine) -> Vec<Segment> {
    let (a, b) = (line.a(), line.b());
    let lo = a.min(0) + b.min(0);
    let hi = a.max(0) + b.max(0);
    let c = line.intercept();
    let mut out = Vec::new();
    let first = (integer(lo) - c).ceil().to_integer().to_i64().unwrap_or(lo);
    let last = (integer(hi) - c).floor().to_integer().to_i64().unwrap_or(hi);
    for k in first..=last {
        let value = c + integer(k);
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        let unit = |r: &Rational| r >= &integer(0) && r <= &integer(1);
        if b != 0 {
            for x in [integer(0), integer(1)] {
                let y = (&value - &x * integer(a)) / integer(b);
                if unit(&y) {
                    pts.push((x, y));
                }
            }
        }
        if a != 0 {
            for y in [integer(0), integer(1)] {
                let x = (&value - &y * integer(b)) / integer(a);
                if unit(&x) {
                    pts.push((x, y));
                }
            }
        }
        pts.sort();
        pts.dedup();
        if pts.len() >= 2 {
            let end = pts.pop().expect("nonempty");
            let start = pts.swap_remove(0);
            out.push((start, end));
        }
    }
    out
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn render_svg(arr: &Arrangement, opts: &RenderOptions) -> String {
    let (s, m) = (opts.size, opts.margin);
    let total = s + 2.0 * m;
    let px = |x: &Rational| m + to_f64(x) * s;
    let py = |y: &Rational| m + (1.0 - to_f64(y)) * s;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total:.0}\" height=\"{total:.0}\" viewBox=\"0 0 {total:.0} {total:.0}\">"
    );
    if let Some(label) = arr.label() {
        let _ = writeln!(out, "  <title>{}</title>", escape(label));
    }
    let _ = writeln!(
        out,
        "  <rect class=\"domain\" x=\"{m:.2}\" y=\"{m:.2}\" width=\"{s:.2}\" height=\"{s:.2}\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>"
    );

    for (i, line) in arr.lines().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(
            out,
            "  <g class=\"line-family\" data-line=\"{i}\" data-normal=\"{},{}\" stroke=\"{color}\" stroke-width=\"2\" fill=\"none\">",
            line.a(),
            line.b()
        );
        let segments = line_segments(line);
        for ((x1, y1), (x2, y2)) in &segments {
            let _ = writeln!(
                out,
                "    <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
                px(x1),
                py(y1),
                px(x2),
                py(y2)
            );
        }
        if opts.labels {
            if let Some(((x1, y1), (x2, y2))) = segments.first() {
                let _ = writeln!(
                    out,
                    "    <text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\" stroke=\"none\" font-size=\"12\">H{}</text>",
                    (px(x1) + px(x2)) / 2.0 + 4.0,
                    (py(y1) + py(y2)) / 2.0 - 4.0,
                    i + 1
                );
            }
        }
        out.push_str("  </g>\n");
    }

    out.push_str("  <g class=\"vertices\" fill=\"#000000\">\n");
    for (i, v) in vertex_set(arr).iter().enumerate() {
        let (cx, cy) = (px(v.point.x()), py(v.point.y()));
        let _ = writeln!(
            out,
            "    <circle class=\"vertex\" cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" data-degree=\"{}\"/>",
            v.degree()
        );
        if opts.labels {
            let _ = writeln!(
                out,
                "    <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">p{}</text>",
                cx + 5.0,
                cy + 12.0,
                i + 1
            );
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{parse_arrangement, rational};

    #[test]
    fn segment_counts_are_bounded() {
        for (a, b) in [(1, 0), (0, 1), (1, 2), (3, -2), (5, 1), (1, -1)] {
            for c in [integer(0), rational(1, 3)] {
                let l = ToricLine::new(a, b, c).unwrap();
                let segs = line_segments(&l);
                assert!(!segs.is_empty());
                assert!(segs.len() as i64 <= a.abs() + b.abs() + 1, "{l}: {}", segs.len());
            }
        }
    }

    #[test]
    fn example_one_structure() {
        let svg = render_svg(&parse_arrangement("1 2 0\n2 1 0\n").unwrap(), &RenderOptions::default());
        assert_eq!(svg.matches("class=\"line-family\"").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn deterministic() {
        let arr = parse_arrangement("0 1 0\n3 -1 1/2\n").unwrap();
        let opts = RenderOptions {
            labels: true,
            ..RenderOptions::default()
        };
        assert_eq!(render_svg(&arr, &opts), render_svg(&arr, &opts));
    }
}
