//! Helpers shared by the integration suites.

#![allow(dead_code)]

use psfig::AbsPoint;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const SEED_DOC: &str = include_str!("../fixtures/paper.tex");

pub fn fixture_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/paper.tex")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs the CLI binary with the given arguments.
pub fn run_cli<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_psfig"))
        .args(args)
        .output()
        .expect("failed to spawn psfig binary")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

/// One drawing command from an SVG path `d` attribute.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathCmd {
    Move(f64, f64),
    Line(f64, f64),
    Curve([f64; 6]),
    Close,
}

/// Extracts every path's `d` attribute, in document order.
pub fn extract_path_data(svg: &str) -> Vec<String> {
    svg.match_indices("d=\"")
        .map(|(at, _)| {
            let start = at + 3;
            let end = svg[start..].find('"').expect("unterminated d attribute") + start;
            svg[start..end].to_string()
        })
        .collect()
}

/// Parses the subset of path data this project emits: absolute M/L/C/Z
/// with space-separated coordinates.
pub fn parse_path(d: &str) -> Vec<PathCmd> {
    let mut tokens = d.split_whitespace().peekable();
    let mut commands = Vec::new();
    let number = |tokens: &mut std::iter::Peekable<std::str::SplitWhitespace>| -> f64 {
        tokens.next().expect("missing coordinate").parse().expect("bad coordinate")
    };
    while let Some(verb) = tokens.next() {
        match verb {
            "M" => {
                let x = number(&mut tokens);
                let y = number(&mut tokens);
                commands.push(PathCmd::Move(x, y));
            }
            "L" => {
                let x = number(&mut tokens);
                let y = number(&mut tokens);
                commands.push(PathCmd::Line(x, y));
            }
            "C" => {
                let mut c = [0.0; 6];
                for slot in &mut c {
                    *slot = number(&mut tokens);
                }
                commands.push(PathCmd::Curve(c));
            }
            "Z" => commands.push(PathCmd::Close),
            other => panic!("unexpected path verb '{}'", other),
        }
    }
    commands
}

/// Convex hull of a small point set (monotone chain, collinear points
/// dropped). Returns the hull in counterclockwise order; may have fewer
/// than 3 vertices for degenerate input.
pub fn convex_hull(points: &[AbsPoint]) -> Vec<AbsPoint> {
    let mut sorted: Vec<AbsPoint> = points.to_vec();
    sorted.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    sorted.dedup();
    if sorted.len() < 3 {
        return sorted;
    }
    let cross = |o: AbsPoint, a: AbsPoint, b: AbsPoint| -> f64 {
        (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    };
    let chain = |points: &mut dyn Iterator<Item = AbsPoint>| -> Vec<AbsPoint> {
        let mut half: Vec<AbsPoint> = Vec::new();
        for p in points {
            while half.len() >= 2 && cross(half[half.len() - 2], half[half.len() - 1], p) <= 0.0 {
                half.pop();
            }
            half.push(p);
        }
        half
    };
    let mut lower = chain(&mut sorted.iter().copied());
    let mut upper = chain(&mut sorted.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    if lower.len() < 3 {
        // all points collinear; keep the extremes
        return vec![sorted[0], sorted[sorted.len() - 1]];
    }
    lower
}

fn point_segment_distance(p: AbsPoint, a: AbsPoint, b: AbsPoint) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return (p.x - a.x).hypot(p.y - a.y);
    }
    let t = (((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2).clamp(0.0, 1.0);
    let q = AbsPoint::new(a.x + t * ab.x, a.y + t * ab.y);
    (p.x - q.x).hypot(p.y - q.y)
}

/// Whether `p` lies inside the convex hull of `hull_of`, allowing `slack`
/// distance outside it.
pub fn in_convex_hull(hull_of: &[AbsPoint], p: AbsPoint, slack: f64) -> bool {
    let hull = convex_hull(hull_of);
    match hull.len() {
        0 => false,
        1 => (p.x - hull[0].x).hypot(p.y - hull[0].y) <= slack,
        2 => point_segment_distance(p, hull[0], hull[1]) <= slack,
        n => {
            // hull is counterclockwise: p must not be more than `slack`
            // outside any edge
            (0..n).all(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                let edge = b - a;
                let len = edge.x.hypot(edge.y);
                let cross = edge.x * (p.y - a.y) - edge.y * (p.x - a.x);
                cross >= -slack * len
            })
        }
    }
}
