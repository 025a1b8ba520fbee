#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use kerf::geometry::{Block, Motion, ToolPath};
use kerf::{MachineConfig, MachineLimits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

pub fn machine() -> MachineLimits {
    MachineConfig::from_json(&data("machine.json")).unwrap().limits()
}

/// Regular `n`-gon with side `side` mm, entered mid-side so that all `n`
/// corners are interior junctions.
pub fn polygon(n: usize, side: f64, feed_mm_min: f64) -> String {
    let circumradius = side / (2.0 * (std::f64::consts::PI / n as f64).sin());
    let vertex = |k: usize| {
        let a = -std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / n as f64
            + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        (circumradius * a.cos(), circumradius * a.sin())
    };
    let (x0, y0) = vertex(0);
    let (x1, y1) = vertex(1);
    let mid = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let mut s = format!("G0 X{:.15} Y{:.15}\n", mid.0, mid.1);
    for k in 1..=n {
        let (x, y) = vertex(k % n);
        let _ = writeln!(s, "G1 X{x:.15} Y{y:.15} F{feed_mm_min}");
    }
    let _ = writeln!(s, "G1 X{:.15} Y{:.15}", mid.0, mid.1);
    s
}

/// In-plane offsets of length 5 with integer components.
const PYTHAGOREAN: [(i32, i32); 8] = [(3, 4), (4, 3), (-3, 4), (-4, 3), (3, -4), (4, -3), (-3, -4), (-4, -3)];

/// Random programs whose coordinates, centres and feeds are exact in
/// decimal and binary, in mixed surface syntax.
pub fn corpus(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| program(&mut rng)).collect()
}

fn program(rng: &mut ChaCha8Rng) -> String {
    let mut pos = [0i32; 3]; // half-millimetres
    let mut out = String::from("G21 G90\n");
    let feeds = [600, 1200, 3000, 6000, 10000];
    let mut feed_set = false;
    let fmt = |v: i32| format!("{}", v as f64 / 2.0);
    let moves = rng.random_range(5..40);
    for line in 0..moves {
        let mut words = String::new();
        if rng.random_bool(0.2) {
            let _ = write!(words, "N{} ", (line + 1) * 10);
        }
        let kind = rng.random_range(0..10);
        if kind == 0 {
            let axis = rng.random_range(0..3);
            pos[axis] += rng.random_range(1..20) * if rng.random_bool(0.5) { 1 } else { -1 };
            let _ = write!(words, "G0 X{} Y{} Z{}", fmt(pos[0]), fmt(pos[1]), fmt(pos[2]));
        } else if kind < 6 {
            let mut d = [0i32; 3];
            while d == [0, 0, 0] {
                for (i, v) in d.iter_mut().enumerate() {
                    *v = if i == 2 && rng.random_bool(0.7) { 0 } else { rng.random_range(-40..=40) };
                }
            }
            for i in 0..3 {
                pos[i] += d[i];
            }
            let _ = write!(words, "G1 X{} Y{} Z{}", fmt(pos[0]), fmt(pos[1]), fmt(pos[2]));
        } else {
            let (plane, u, v, iu, iv) = match rng.random_range(0..3) {
                0 => ("G17", 0, 1, 'I', 'J'),
                1 => ("G18", 0, 2, 'I', 'K'),
                _ => ("G19", 1, 2, 'J', 'K'),
            };
            let scale = rng.random_range(1..=4) * 2; // radius 5..20 mm
            let r0 = PYTHAGOREAN[rng.random_range(0..8)];
            let r1 = PYTHAGOREAN[rng.random_range(0..8)];
            let centre = (pos[u] - r0.0 * scale, pos[v] - r0.1 * scale);
            pos[u] = centre.0 + r1.0 * scale;
            pos[v] = centre.1 + r1.1 * scale;
            let dir = if rng.random_bool(0.5) { "G2" } else { "G3" };
            let (an, bn) = (["X", "Y", "Z"][u], ["X", "Y", "Z"][v]);
            let _ = write!(
                words,
                "{plane} {dir} {an}{} {bn}{} {iu}{} {iv}{}",
                fmt(pos[u]),
                fmt(pos[v]),
                fmt(-r0.0 * scale),
                fmt(-r0.1 * scale)
            );
        }
        if kind != 0 && (!feed_set || rng.random_bool(0.2)) {
            let _ = write!(words, " F{}", feeds[rng.random_range(0..feeds.len())]);
            feed_set = true;
        }
        match rng.random_range(0..6) {
            0 => words = words.to_lowercase(),
            1 => words = words.replace(' ', ""),
            2 => words.push_str(" ; pass"),
            3 => words.push_str(" (finish)"),
            _ => {}
        }
        out.push_str(&words);
        out.push('\n');
    }
    out
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Geometry, feed and mode of every block agree within `tol` mm.
pub fn same_path(a: &ToolPath, b: &ToolPath, tol: f64) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("{} blocks vs {}", a.len(), b.len()));
    }
    for (i, (x, y)) in a.blocks().iter().zip(b.blocks()).enumerate() {
        let pts = |blk: &Block| match blk.motion {
            Motion::Linear { start, end } => (start, end, None),
            Motion::Arc { start, end, center, plane, clockwise } => (start, end, Some((center, plane, clockwise))),
        };
        let (s1, e1, a1) = pts(x);
        let (s2, e2, a2) = pts(y);
        let near = |p: kerf::geometry::Point3, q: kerf::geometry::Point3| p.distance(q) <= tol;
        let arcs_match = match (a1, a2) {
            (None, None) => true,
            (Some((c1, p1, d1)), Some((c2, p2, d2))) => near(c1, c2) && p1 == p2 && d1 == d2,
            _ => false,
        };
        if !(near(s1, s2) && near(e1, e2) && arcs_match && x.rapid == y.rapid && close(x.feed, y.feed, tol)) {
            return Err(format!("block {i} differs: {x:?} vs {y:?}"));
        }
    }
    Ok(())
}
