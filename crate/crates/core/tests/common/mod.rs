#![allow(dead_code)]

use std::path::PathBuf;

use heptaknot::cli_io::read_point_file;
use heptaknot::{PenetrationTable, Point3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_points(name: &str) -> Vec<Point3> {
    read_point_file(&fixture(name)).unwrap()
}

pub fn moment_curve(n: i64) -> Vec<Point3> {
    (1..=n).map(|t| Point3::from_ints(t, t * t, t * t * t)).collect()
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, side: i64) -> Vec<Point3> {
    (0..n)
        .map(|_| Point3::from_ints(rng.gen_range(0..side), rng.gen_range(0..side), rng.gen_range(0..side)))
        .collect()
}

/// `base` scaled by `scale`, each coordinate moved by up to `jitter`.
pub fn jittered(rng: &mut ChaCha8Rng, base: &[[i64; 3]], scale: i64, jitter: i64) -> Vec<Point3> {
    base.iter()
        .map(|p| {
            let mut c = [0i64; 3];
            for (k, v) in p.iter().enumerate() {
                c[k] = v * scale + rng.gen_range(-jitter..=jitter);
            }
            Point3::from_ints(c[0], c[1], c[2])
        })
        .collect()
}

/// Known figure-8 heptagons used as centres of the jittered sample.
pub const FIGURE8_SEEDS: [[[i64; 3]; 7]; 3] = [
    [[178, 398, 550], [724, 117, 267], [270, 674, 761], [994, 438, 294], [539, 267, 617], [176, 651, 585], [961, 886, 811]],
    [[579, 48, 227], [598, 965, 394], [121, 888, 397], [967, 278, 192], [223, 249, 572], [518, 858, 125], [475, 282, 772]],
    [[71, 785, 704], [767, 9, 333], [628, 947, 288], [384, 204, 385], [961, 181, 322], [606, 186, 420], [509, 275, 117]],
];

/// Violations of the structural constraints every figure-8 table satisfies:
/// I(i) in {1, 2}, never two consecutive rows with I >= 2, and I(i) = 2
/// forces a nonzero middle entry.
pub fn lemma_violations(t: &PenetrationTable) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..7 {
        let here = t.penetration_count(i);
        let next = t.penetration_count((i + 1) % 7);
        if !(1..=2).contains(&here) {
            out.push(format!("row {}: I = {here}", i + 1));
        }
        if here >= 2 && next >= 2 {
            out.push(format!("rows {} and {}: I = {here}, {next}", i + 1, (i + 1) % 7 + 1));
        }
        if here == 2 && t.entries[i][1].is_zero() {
            out.push(format!("row {}: I = 2 with empty middle column", i + 1));
        }
    }
    out
}

/// Two triangles whose boundaries form a Hopf link: the edge from `b[0]` to
/// `b[1]` pierces the triangle `a`, the other two edges of `b` miss it.
pub fn hopf_triangles() -> (Vec<Point3>, Vec<Point3>) {
    let a = vec![
        Point3::from_ints(0, 0, 0),
        Point3::from_ints(12, 1, 0),
        Point3::from_ints(1, 11, 0),
    ];
    let b = vec![
        Point3::from_ints(3, 3, -5),
        Point3::from_ints(4, 2, 6),
        Point3::from_ints(-9, -7, 1),
    ];
    (a, b)
}
