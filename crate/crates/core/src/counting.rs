//! Exact counting formulas.
//!
//! Everything here is computed with arbitrary-precision integers or
//! rationals; no floating point is involved.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact nonnegative count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Divides by `divisor`, returning `None` unless the division is exact.
    pub fn exact_div(&self, divisor: &BigCount) -> Option<BigCount> {
        if divisor.0.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        r.is_zero().then_some(BigCount(q))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `a choose b`; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigCount {
    if b > a {
        return BigCount::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    // acc stays integral: after step i it equals binomial(a - b + i, i).
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    BigCount(acc)
}

/// The (n,k)-th Catalan number `binomial(kn, n-1) / n`.
pub fn catalan_nk(n: u64, k: u64) -> Result<BigCount> {
    if n < 1 || k < 2 {
        return Err(Error::Domain(format!(
            "catalan_nk needs n >= 1 and k >= 2, got n={n}, k={k}"
        )));
    }
    let kn = k
        .checked_mul(n)
        .ok_or_else(|| Error::Domain(format!("k*n overflows for n={n}, k={k}")))?;
    let top = binomial(kn, n - 1);
    top.exact_div(&BigCount::from(n))
        .ok_or_else(|| Error::InternalInvariantBroken(format!("{n} does not divide binomial({kn}, {})", n - 1)))
}

/// `binomial(m, n)` for any integer `m`, via the falling factorial.
fn general_binomial(m: &BigInt, n: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Gould's generalization `a / (a + b n) * binomial(a + b n, n)` as an exact
/// reduced rational.
pub fn gould_a(n: u64, a: i64, b: i64) -> Result<BigRational> {
    let m = BigInt::from(a) + BigInt::from(b) * BigInt::from(n);
    if m.is_zero() {
        return Err(Error::Domain(format!(
            "gould_a undefined: a + b*n = 0 for n={n}, a={a}, b={b}"
        )));
    }
    let binom = general_binomial(&m, n);
    Ok(BigRational::new(BigInt::from(a) * binom, m))
}

/// Both sides of the convolution identity
/// `sum_{j=0..n} A_j(a,b) A_{n-j}(c,b) = A_n(a+c, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub equal: bool,
}

pub fn check_convolution(n: u64, a: i64, b: i64, c: i64) -> Result<ConvolutionReport> {
    let mut lhs = BigRational::zero();
    for j in 0..=n {
        lhs += gould_a(j, a, b)? * gould_a(n - j, c, b)?;
    }
    let ac = a
        .checked_add(c)
        .ok_or_else(|| Error::Domain("a + c overflows".into()))?;
    let rhs = gould_a(n, ac, b)?;
    let equal = lhs == rhs;
    Ok(ConvolutionReport { lhs, rhs, equal })
}

/// Renders a rational as `p` when integral and `p/q` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for a in 1..=rows {
            let prev = &t[a - 1];
            let mut row = vec![BigUint::one(); a + 1];
            for b in 1..a {
                row[b] = &prev[b - 1] + &prev[b];
            }
            t.push(row);
        }
        t
    }

    fn int(r: &BigRational) -> i64 {
        assert!(r.is_integer(), "{r} is not integral");
        r.to_integer().to_i64().unwrap()
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(18, 5), 8568);
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let t = pascal(40);
        for a in 0..=40u64 {
            for b in 0..=a {
                assert_eq!(binomial(a, b).value(), &t[a as usize][b as usize]);
            }
        }
    }

    #[test]
    fn binomial_two_subsets_of_four() {
        let subsets = itertools::Itertools::combinations(1..=4, 2).count() as u64;
        assert_eq!(binomial(4, 2), subsets);
    }

    #[test]
    fn catalan_values() {
        for k in 2..10 {
            assert_eq!(catalan_nk(1, k).unwrap(), 1);
        }
        assert_eq!(catalan_nk(4, 2).unwrap(), 14);
        assert_eq!(catalan_nk(5, 3).unwrap(), 273);
        assert_eq!(catalan_nk(6, 3).unwrap(), 1428);
        assert_eq!(catalan_nk(2, 3).unwrap(), 3);
    }

    #[test]
    fn catalan_domain_errors() {
        assert!(matches!(catalan_nk(0, 3), Err(Error::Domain(_))));
        assert!(matches!(catalan_nk(3, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn catalan_large_is_exact() {
        // binomial(2000, 999) / 1000 must divide exactly.
        let c = catalan_nk(1000, 2).unwrap();
        let classic = binomial(2000, 1000).exact_div(&BigCount::from(1001)).unwrap();
        assert_eq!(c, classic);
    }

    #[test]
    fn gould_examples() {
        for (a, b) in [(1, 2), (3, -1), (5, 7)] {
            assert_eq!(int(&gould_a(0, a, b).unwrap()), 1);
        }
        assert_eq!(int(&gould_a(4, 1, 2).unwrap()), 14);
        assert_eq!(int(&gould_a(2, 1, 3).unwrap()), 3);
    }

    #[test]
    fn gould_rejects_zero_denominator() {
        assert!(matches!(gould_a(2, -4, 2), Err(Error::Domain(_))));
        assert!(check_convolution(2, -4, 2, 1).is_err());
    }

    #[test]
    fn gould_matches_binomial_difference_for_signed_parameters() {
        // a/(a+bn) * C(a+bn, n) = C(a+bn, n) - b * C(a+bn-1, n-1)
        for n in 1..6u64 {
            for a in -5..6i64 {
                for b in -4..5i64 {
                    let m = BigInt::from(a + b * n as i64);
                    if m.is_zero() {
                        continue;
                    }
                    let expected = general_binomial(&m, n) - BigInt::from(b) * general_binomial(&(&m - 1), n - 1);
                    let got = gould_a(n, a, b).unwrap();
                    assert!(got.is_integer());
                    assert_eq!(got.to_integer(), expected, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn general_binomial_negative_top() {
        // C(-5, 3) = (-5)(-6)(-7)/6
        assert_eq!(general_binomial(&BigInt::from(-5), 3), BigInt::from(-35));
        assert_eq!(general_binomial(&BigInt::from(2), 3), BigInt::zero());
    }

    #[test]
    fn convolution_examples() {
        let r = check_convolution(1, 1, 2, 1).unwrap();
        assert_eq!((int(&r.lhs), int(&r.rhs), r.equal), (2, 2, true));
        let r = check_convolution(0, 3, 5, 2).unwrap();
        assert_eq!((int(&r.lhs), int(&r.rhs), r.equal), (1, 1, true));
        let r = check_convolution(3, 1, 3, 2).unwrap();
        // rhs = 3/12 * binomial(12, 3) = 55; lhs expands to the same.
        assert_eq!(int(&r.rhs), 55);
        assert!(r.equal);
    }

    #[test]
    fn convolution_by_hand_n3() {
        // A_j(1,3): 1, 1, 3, 12; A_j(2,3): 1, 2, 7, 30.
        let a1 = [1, 1, 3, 12];
        let a2 = [1, 2, 7, 30];
        for j in 0..4 {
            assert_eq!(int(&gould_a(j, 1, 3).unwrap()), a1[j as usize]);
            assert_eq!(int(&gould_a(j, 2, 3).unwrap()), a2[j as usize]);
        }
        let lhs: i64 = (0..4).map(|j| a1[j] * a2[3 - j]).sum();
        assert_eq!(lhs, 55);
    }

    #[test]
    fn format_rational_forms() {
        assert_eq!(format_rational(&gould_a(4, 1, 2).unwrap()), "14");
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(format_rational(&half), "1/2");
    }
}
