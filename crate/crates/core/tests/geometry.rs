mod common;

use heptaknot::geometry::{epsilon, general_position_check, orient3d, GeneralPosition, GeometryError};
use heptaknot::{Point3, Rational, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt(c: (i64, i64, i64)) -> Point3 {
    Point3::from_ints(c.0, c.1, c.2)
}

fn coord() -> impl Strategy<Value = (i64, i64, i64)> {
    (-50i64..50, -50i64..50, -50i64..50)
}

type V = [Rational; 3];

fn v(p: &Point3) -> V {
    [p.x.clone(), p.y.clone(), p.z.clone()]
}

fn minus(a: &V, b: &V) -> V {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross(a: &V, b: &V) -> V {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &V, b: &V) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn sign(r: &Rational) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// ε computed the long way: intersect the line jk with the triangle's plane,
/// then test the intersection point with barycentric coordinates.
/// `None` when the configuration touches a boundary.
fn epsilon_parametric(t: [&Point3; 3], j: &Point3, k: &Point3) -> Option<Sign> {
    let (a, b, c) = (v(t[0]), v(t[1]), v(t[2]));
    let (pj, pk) = (v(j), v(k));
    let n = cross(&minus(&b, &a), &minus(&c, &a));
    let dir = minus(&pk, &pj);
    let denom = dot(&n, &dir);
    if denom.is_zero() {
        return if dot(&n, &minus(&pj, &a)).is_zero() { None } else { Some(Sign::Zero) };
    }
    let s = -dot(&n, &minus(&pj, &a)) / &denom;
    let zero = Rational::zero();
    let one = Rational::from_integer(BigInt::from(1));
    if s == zero || s == one {
        return None;
    }
    if s < zero || s > one {
        return Some(Sign::Zero);
    }
    let x = [&pj[0] + &dir[0] * &s, &pj[1] + &dir[1] * &s, &pj[2] + &dir[2] * &s];
    // Barycentric weights via sub-triangle normals.
    let nn = dot(&n, &n);
    let w = [
        dot(&n, &cross(&minus(&b, &x), &minus(&c, &x))) / &nn,
        dot(&n, &cross(&minus(&c, &x), &minus(&a, &x))) / &nn,
        dot(&n, &cross(&minus(&a, &x), &minus(&b, &x))) / &nn,
    ];
    if w.iter().any(|wi| wi.is_zero()) {
        return None;
    }
    if w.iter().any(|wi| wi.is_negative()) {
        return Some(Sign::Zero);
    }
    let normal = cross(&minus(&b, &a), &minus(&c, &b));
    Some(sign(&dot(&normal, &dir)))
}

#[test]
fn epsilon_matches_parametric_oracle_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    let mut nonzero = 0;
    while checked < 100_000 {
        let p: Vec<Point3> = (0..5)
            .map(|_| Point3::from_ints(rng.gen_range(-40..40), rng.gen_range(-40..40), rng.gen_range(-40..40)))
            .collect();
        let fast = epsilon(&p[0], &p[1], &p[2], &p[3], &p[4]);
        match epsilon_parametric([&p[0], &p[1], &p[2]], &p[3], &p[4]) {
            Some(expected) => {
                assert_eq!(fast, Ok(expected), "points {p:?}");
                nonzero += usize::from(!expected.is_zero());
                checked += 1;
            }
            None => assert!(fast.is_err() || fast == Ok(Sign::Zero), "points {p:?}: {fast:?}"),
        }
    }
    assert!(nonzero > 1000, "only {nonzero} piercings sampled");
}

#[test]
fn coplanar_segment_is_degenerate() {
    let p = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (1, 1, 0), (1, 1, 5)].map(pt);
    assert!(matches!(
        epsilon(&p[0], &p[1], &p[2], &p[3], &p[4]),
        Err(GeometryError::DegenerateInput(_))
    ));
}

#[test]
fn general_position_reports_a_coplanar_quadruple() {
    let mut pts = common::moment_curve(6);
    pts.push(Point3::from_ints(2, 2, 0));
    pts.push(Point3::from_ints(0, 0, 0));
    pts[0] = Point3::from_ints(1, 1, 0);
    match general_position_check(&pts).unwrap() {
        GeneralPosition::Violation(q) => {
            assert_eq!(orient3d(&pts[q[0]], &pts[q[1]], &pts[q[2]], &pts[q[3]]), Sign::Zero)
        }
        GeneralPosition::Ok => panic!("expected a violation"),
    }
}

proptest! {
    #[test]
    fn orientation_is_alternating(a in coord(), b in coord(), c in coord(), d in coord()) {
        let (a, b, c, d) = (pt(a), pt(b), pt(c), pt(d));
        let s = orient3d(&a, &b, &c, &d);
        prop_assert_eq!(orient3d(&b, &a, &c, &d), -s);
        prop_assert_eq!(orient3d(&a, &c, &b, &d), -s);
        prop_assert_eq!(orient3d(&a, &b, &d, &c), -s);
        prop_assert_eq!(orient3d(&b, &c, &d, &a), -s);
    }

    #[test]
    fn orientation_survives_translation(a in coord(), b in coord(), c in coord(), d in coord(), t in coord()) {
        let shift = |p: (i64, i64, i64)| pt((p.0 + t.0, p.1 + t.1, p.2 + t.2));
        prop_assert_eq!(
            orient3d(&pt(a), &pt(b), &pt(c), &pt(d)),
            orient3d(&shift(a), &shift(b), &shift(c), &shift(d))
        );
    }

    #[test]
    fn epsilon_symmetries(t1 in coord(), t2 in coord(), t3 in coord(), j in coord(), k in coord()) {
        let (t1, t2, t3, j, k) = (pt(t1), pt(t2), pt(t3), pt(j), pt(k));
        let Ok(e) = epsilon(&t1, &t2, &t3, &j, &k) else { return Ok(()) };
        // Reversing the segment or the triangle flips the sign; rotating the
        // triangle keeps it.
        prop_assert_eq!(epsilon(&t1, &t2, &t3, &k, &j), Ok(-e));
        prop_assert_eq!(epsilon(&t2, &t3, &t1, &j, &k), Ok(e));
        prop_assert_eq!(epsilon(&t3, &t1, &t2, &j, &k), Ok(e));
        prop_assert_eq!(epsilon(&t2, &t1, &t3, &j, &k), Ok(-e));
        prop_assert_eq!(epsilon(&t1, &t3, &t2, &j, &k), Ok(-e));
    }

    #[test]
    fn mirroring_flips_epsilon(t1 in coord(), t2 in coord(), t3 in coord(), j in coord(), k in coord()) {
        let p = [pt(t1), pt(t2), pt(t3), pt(j), pt(k)];
        let m: Vec<Point3> = p.iter().map(Point3::mirrored).collect();
        if let Ok(e) = epsilon(&p[0], &p[1], &p[2], &p[3], &p[4]) {
            prop_assert_eq!(epsilon(&m[0], &m[1], &m[2], &m[3], &m[4]), Ok(-e));
        }
    }

    #[test]
    fn rational_scaling_preserves_orientation(
        a in coord(), b in coord(), c in coord(), d in coord(), den in 1i64..1000
    ) {
        let scale = |p: (i64, i64, i64)| {
            let r = |x: i64| Rational::new(BigInt::from(x), BigInt::from(den));
            Point3::new(r(p.0), r(p.1), r(p.2))
        };
        prop_assert_eq!(
            orient3d(&pt(a), &pt(b), &pt(c), &pt(d)),
            orient3d(&scale(a), &scale(b), &scale(c), &scale(d))
        );
    }
}
