//! Integer-lattice arithmetic shared by the predicates and the projection code.
//!
//! Sign decisions are invariant under translation and under uniform positive
//! scaling, so any finite set of rational points can be mapped onto an integer
//! lattice once and all later work done over integers. When the lattice is
//! small enough the work runs on `i128`; otherwise it falls back to `BigInt`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::{Point3, Sign};

/// Exact integer scalar used by the lattice routines.
pub trait ExactInt:
    Clone
    + Ord
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + std::fmt::Debug
{
    fn from_i64(v: i64) -> Self;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

pub type Vec3<T> = [T; 3];

pub fn sub<T: ExactInt>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

pub fn cross<T: ExactInt>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<T: ExactInt>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

/// `det[a, b, c]` with the vectors as rows.
pub fn det3<T: ExactInt>(a: &Vec3<T>, b: &Vec3<T>, c: &Vec3<T>) -> T {
    dot(&cross(a, b), c)
}

pub fn sign_of<T: Signed>(v: &T) -> Sign {
    if v.is_positive() {
        Sign::Positive
    } else if v.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Points mapped onto an integer lattice by a common positive scale and a
/// translation that puts the first point at the origin.
#[derive(Clone, Debug)]
pub enum Lattice {
    Small(Vec<Vec3<i128>>),
    Big(Vec<Vec3<BigInt>>),
}

/// Coordinates up to this magnitude keep every degree-4 expression used by the
/// projection code (with direction components up to `MAX_DIRECTION`) inside i128.
const SMALL_BOUND: i64 = 1 << 25;
pub const MAX_DIRECTION: i64 = 64;

impl Lattice {
    pub fn from_points(points: &[Point3]) -> Lattice {
        let mut denom = BigInt::one();
        for p in points {
            for c in p.coords() {
                denom = denom.lcm(c.denom());
            }
        }
        let scaled: Vec<Vec3<BigInt>> = points
            .iter()
            .map(|p| {
                let [x, y, z] = p.coords();
                [
                    x.numer() * (&denom / x.denom()),
                    y.numer() * (&denom / y.denom()),
                    z.numer() * (&denom / z.denom()),
                ]
            })
            .collect();
        let origin = match scaled.first() {
            Some(o) => o.clone(),
            None => return Lattice::Small(Vec::new()),
        };
        let shifted: Vec<Vec3<BigInt>> = scaled.iter().map(|p| sub(p, &origin)).collect();
        let small: Option<Vec<Vec3<i128>>> = shifted
            .iter()
            .map(|p| {
                let mut out = [0i128; 3];
                for (o, c) in out.iter_mut().zip(p) {
                    let v = c.to_i64()?;
                    if v.abs() > SMALL_BOUND {
                        return None;
                    }
                    *o = v as i128;
                }
                Some(out)
            })
            .collect();
        match small {
            Some(s) => Lattice::Small(s),
            None => Lattice::Big(shifted),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Lattice::Small(v) => v.len(),
            Lattice::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The points at `order`, in that order.
    pub fn select(&self, order: &[usize]) -> Lattice {
        match self {
            Lattice::Small(v) => Lattice::Small(order.iter().map(|&i| v[i]).collect()),
            Lattice::Big(v) => Lattice::Big(order.iter().map(|&i| v[i].clone()).collect()),
        }
    }

    pub fn orient(&self, a: usize, b: usize, c: usize, d: usize) -> Sign {
        fn go<T: ExactInt>(v: &[Vec3<T>], a: usize, b: usize, c: usize, d: usize) -> Sign {
            let o = &v[a];
            sign_of(&det3(&sub(&v[b], o), &sub(&v[c], o), &sub(&v[d], o)))
        }
        match self {
            Lattice::Small(v) => go(v, a, b, c, d),
            Lattice::Big(v) => go(v, a, b, c, d),
        }
    }
}
