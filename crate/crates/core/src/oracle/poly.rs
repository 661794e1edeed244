use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable `t` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `a + b t`
    pub fn linear(a: i128, b: i128) -> Self {
        IntPolynomial::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// Divides out the largest power of `t` and fixes the sign so the constant
    /// term is positive. Two Alexander polynomials that differ by a unit ±tᵏ
    /// normalize to the same value.
    pub fn normalized(&self) -> Self {
        let shift = self.coeffs.iter().take_while(|&&c| c == 0).count();
        let mut coeffs = self.coeffs[shift..].to_vec();
        if coeffs.first().is_some_and(|&c| c < 0) {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        IntPolynomial::new(coeffs)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder or the divisor is zero.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = divisor.degree()?;
        let lead = *divisor.coeffs.last()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(IntPolynomial::zero()) } else { None };
        }
        let mut quot = vec![0i128; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd];
            if top % lead != 0 {
                return None;
            }
            let q = top / lead;
            quot[k] = q;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * c;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| IntPolynomial::new(quot))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[i128], i: usize| v.get(i).copied().unwrap_or(0);
        IntPolynomial::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (deg, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, m) => write!(f, "{m}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square matrix over Z[t] by fraction-free elimination.
pub fn determinant(mut m: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::constant(1);
    }
    let mut negate = false;
    let mut prev = IntPolynomial::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return IntPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Integer determinant by the same elimination; used for Δ(−1).
pub fn int_determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if negate {
        -m[n - 1][n - 1]
    } else {
        m[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i128]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -3, 1]).to_string(), "1 - 3t + t^2");
        assert_eq!(p(&[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(p(&[0, -2]).to_string(), "-2t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn normalization_strips_units() {
        assert_eq!(p(&[0, 0, -1, 1, -1]).normalized(), p(&[1, -1, 1]));
        assert_eq!(p(&[0, 1, -3, 1]).normalized(), p(&[1, -3, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, -1, 1]);
        let b = p(&[2, 0, 5, 1]);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[4, 6]).div_exact(&p(&[2])), Some(p(&[2, 3])));
    }

    #[test]
    fn polynomial_determinant_small() {
        // [[t, 1-t], [-1, t]] -> t^2 + 1 - t
        let m = vec![
            vec![p(&[0, 1]), p(&[1, -1])],
            vec![p(&[-1]), p(&[0, 1])],
        ];
        assert_eq!(determinant(m), p(&[1, -1, 1]));
        // a zero pivot forces a row swap
        let m = vec![
            vec![p(&[0]), p(&[1])],
            vec![p(&[1]), p(&[0])],
        ];
        assert_eq!(determinant(m), p(&[-1]));
    }

    // Leibniz expansion as an independent reference.
    fn leibniz(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i128;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i128>], sign: i128, total: &mut i128) {
            let n = perm.len();
            if k == n {
                *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i128>();
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, m, if i == k { sign } else { -sign }, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, 1, &mut total);
        total
    }

    proptest! {
        #[test]
        fn int_determinant_matches_leibniz(
            n in 1usize..6,
            entries in proptest::collection::vec(-3i128..=3, 36),
        ) {
            let m: Vec<Vec<i128>> = (0..n).map(|i| entries[i * 6..i * 6 + n].to_vec()).collect();
            prop_assert_eq!(int_determinant(m.clone()), leibniz(&m));
        }

        #[test]
        fn poly_determinant_evaluates_consistently(
            n in 1usize..5,
            entries in proptest::collection::vec((-2i128..=2, -2i128..=2), 25),
            t in -3i128..=3,
        ) {
            let pm: Vec<Vec<IntPolynomial>> = (0..n)
                .map(|i| (0..n).map(|j| { let (a, b) = entries[i * 5 + j]; IntPolynomial::linear(a, b) }).collect())
                .collect();
            let im: Vec<Vec<i128>> = pm.iter().map(|r| r.iter().map(|e| e.eval(t)).collect()).collect();
            prop_assert_eq!(determinant(pm).eval(t), leibniz(&im));
        }
    }
}
