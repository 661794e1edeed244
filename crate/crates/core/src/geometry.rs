//! Exact geometric predicates over rational points.
//!
//! Every decision here is a sign of an exactly evaluated polynomial in the
//! input coordinates. There is no tolerance anywhere in this module.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::Lattice;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        let r = |v: i64| Rational::from_integer(BigInt::from(v));
        Point3::new(r(x), r(y), r(z))
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Reflection through the plane z = 0.
    pub fn mirrored(&self) -> Point3 {
        Point3::new(self.x.clone(), self.y.clone(), -self.z.clone())
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("triangle vertices are collinear")]
    CollinearTriangle,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("at least 4 points are required, got {0}")]
    TooFewPoints(usize),
    #[error("points {0:?} are coplanar")]
    NotInGeneralPosition([usize; 4]),
}

/// Outcome of [`general_position_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralPosition {
    Ok,
    /// Lexicographically first 4-subset whose orientation vanishes.
    Violation([usize; 4]),
}

fn small_int(r: &Rational) -> Option<i128> {
    const LIMIT: i64 = 1 << 31;
    if !r.denom().is_one() {
        return None;
    }
    let v = r.numer().to_i64()?;
    (v.abs() < LIMIT).then_some(v as i128)
}

fn small_point(p: &Point3) -> Option<[i128; 3]> {
    Some([small_int(&p.x)?, small_int(&p.y)?, small_int(&p.z)?])
}

/// Sign of `det[b - a, c - a, d - a]`.
pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    if let (Some(a), Some(b), Some(c), Some(d)) =
        (small_point(a), small_point(b), small_point(c), small_point(d))
    {
        use crate::exact::{det3, sign_of, sub};
        return sign_of(&det3(&sub(&b, &a), &sub(&c, &a), &sub(&d, &a)));
    }
    let diff = |p: &Point3| [&p.x - &a.x, &p.y - &a.y, &p.z - &a.z];
    let (u, v, w) = (diff(b), diff(c), diff(d));
    let det = &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0]);
    if det.is_positive() {
        Sign::Positive
    } else if det.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

pub(crate) fn collinear(a: &Point3, b: &Point3, c: &Point3) -> bool {
    let u = [&b.x - &a.x, &b.y - &a.y, &b.z - &a.z];
    let v = [&c.x - &a.x, &c.y - &a.y, &c.z - &a.z];
    (&u[1] * &v[2] - &u[2] * &v[1]).is_zero()
        && (&u[2] * &v[0] - &u[0] * &v[2]).is_zero()
        && (&u[0] * &v[1] - &u[1] * &v[0]).is_zero()
}

/// Which side of the oriented plane through `a, b, c` the point `p` lies on.
/// The positive side is the one the normal `(b - a) × (c - a)` points into.
pub fn side_of_plane(a: &Point3, b: &Point3, c: &Point3, p: &Point3) -> Result<Sign, GeometryError> {
    if collinear(a, b, c) {
        return Err(GeometryError::CollinearTriangle);
    }
    Ok(orient3d(a, b, c, p))
}

/// Signed penetration of segment `j → k` through the closed triangle
/// `t1 t2 t3`, computed from orientation signs alone.
///
/// `orient` evaluates the orientation of four labels where 0, 1, 2 are the
/// triangle corners and 3, 4 the segment endpoints (or any other indexing the
/// caller chooses; only the label values passed below matter).
pub(crate) fn epsilon_by<F>(orient: F, t: [usize; 3], j: usize, k: usize) -> Result<Sign, GeometryError>
where
    F: Fn(usize, usize, usize, usize) -> Sign,
{
    let [t1, t2, t3] = t;
    let sj = orient(t1, t2, t3, j);
    let sk = orient(t1, t2, t3, k);
    if sj.is_zero() || sk.is_zero() {
        return Err(GeometryError::DegenerateInput(
            "segment endpoint lies in the triangle plane".into(),
        ));
    }
    if sj == sk {
        return Ok(Sign::Zero);
    }
    let around = [orient(t1, t2, j, k), orient(t2, t3, j, k), orient(t3, t1, j, k)];
    if around.iter().any(|s| s.is_zero()) {
        return Err(GeometryError::DegenerateInput(
            "segment line meets a triangle edge line".into(),
        ));
    }
    if around[0] == around[1] && around[1] == around[2] {
        // n = (t2 - t1) x (t3 - t2); n.(k - j) has the sign of n.(k - t1)
        // because j and k sit on opposite sides of the plane.
        Ok(sk)
    } else {
        Ok(Sign::Zero)
    }
}

/// ε(t1 t2 t3, jk): zero when the segment misses the triangle, otherwise the
/// sign of `((t2 - t1) × (t3 - t2)) · (k - j)`.
pub fn epsilon(
    t1: &Point3,
    t2: &Point3,
    t3: &Point3,
    j: &Point3,
    k: &Point3,
) -> Result<Sign, GeometryError> {
    let pts = [t1, t2, t3, j, k];
    epsilon_by(|a, b, c, d| orient3d(pts[a], pts[b], pts[c], pts[d]), [0, 1, 2], 3, 4)
}

/// Checks that no four of `points` are coplanar.
pub fn general_position_check(points: &[Point3]) -> Result<GeneralPosition, GeometryError> {
    if points.len() < 4 {
        return Err(GeometryError::TooFewPoints(points.len()));
    }
    let chi = Chirotope::from_points(points);
    Ok(match chi.first_zero() {
        None => GeneralPosition::Ok,
        Some(q) => GeneralPosition::Violation(q),
    })
}

/// Orientation signs of every 4-subset of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    n: usize,
    // Dense n^4 table; only strictly increasing index quadruples are filled.
    signs: Vec<Sign>,
}

impl Chirotope {
    pub fn from_points(points: &[Point3]) -> Chirotope {
        Chirotope::from_lattice(&Lattice::from_points(points))
    }

    pub(crate) fn from_lattice(lattice: &Lattice) -> Chirotope {
        Chirotope::build(lattice.len(), |a, b, c, d| lattice.orient(a, b, c, d))
    }

    fn build<F: Fn(usize, usize, usize, usize) -> Sign>(n: usize, f: F) -> Chirotope {
        let mut signs = vec![Sign::Zero; n.pow(4)];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        signs[((a * n + b) * n + c) * n + d] = f(a, b, c, d);
                    }
                }
            }
        }
        Chirotope { n, signs }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Orientation of points `a, b, c, d` in that order.
    pub fn orient(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        let mut q = [a, b, c, d];
        let mut odd = false;
        for i in 1..4 {
            let mut j = i;
            while j > 0 && q[j - 1] > q[j] {
                q.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if q[0] == q[1] || q[1] == q[2] || q[2] == q[3] {
            return Sign::Zero;
        }
        let n = self.n;
        let s = self.signs[((q[0] * n + q[1]) * n + q[2]) * n + q[3]];
        if odd {
            -s
        } else {
            s
        }
    }

    pub fn first_zero(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if self.orient(a, b, c, d).is_zero() {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Chirotope of the points `order[0], order[1], ...` renumbered from zero.
    pub fn select(&self, order: &[usize]) -> Chirotope {
        Chirotope::build(order.len(), |a, b, c, d| {
            self.orient(order[a], order[b], order[c], order[d])
        })
    }
}
