//! Exact scalar arithmetic: p-orders, digit sums, divisor sums, Bernoulli
//! numbers and the Eisenstein normalizing constants.
//!
//! Everything here is a pure function on immutable values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `a mod b` as the least non-negative residue, for positive `b`.
pub fn modulo(a: i64, b: i64) -> i64 {
    a.rem_euclid(b)
}

/// p-adic order of a rational number. `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum POrder {
    Finite(i64),
    Infinite,
}

impl POrder {
    pub fn finite(self) -> Option<i64> {
        match self {
            POrder::Finite(a) => Some(a),
            POrder::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == POrder::Infinite
    }

    /// `self >= bound`, with `Infinite` above every integer.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            POrder::Finite(a) => a >= bound,
            POrder::Infinite => true,
        }
    }
}

impl fmt::Display for POrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            POrder::Finite(a) => write!(f, "{a}"),
            POrder::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for POrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            POrder::Finite(a) => s.serialize_i64(*a),
            POrder::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn ord_p_int(n: &Integer, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut a = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return a;
        }
        n = q;
        a += 1;
    }
}

pub fn ord_p(x: &Rational, p: u64) -> Result<POrder> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(POrder::Infinite);
    }
    let num = ord_p_int(x.numer(), p) as i64;
    let den = ord_p_int(x.denom(), p) as i64;
    Ok(POrder::Finite(num - den))
}

/// `ord_p` of a machine integer; `Infinite` for zero.
pub fn ord_p_u64(n: u64, p: u64) -> POrder {
    if n == 0 {
        return POrder::Infinite;
    }
    let (mut n, mut a) = (n, 0);
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    POrder::Finite(a)
}

fn digits(n: u64, b: u64) -> impl Iterator<Item = u64> {
    let mut n = n;
    std::iter::from_fn(move || {
        if n == 0 {
            None
        } else {
            let d = n % b;
            n /= b;
            Some(d)
        }
    })
}

fn check_digit_args(n: u64, b: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n", value: 0 });
    }
    if b < 2 {
        return Err(Error::Precondition(format!("base must be at least 2, got {b}")));
    }
    Ok(())
}

/// Sum of the base-`b` digits of `n`.
pub fn digit_sum(n: u64, b: u64) -> Result<u64> {
    check_digit_args(n, b)?;
    Ok(digits(n, b).sum())
}

/// Largest base-`b` digit of `n`.
pub fn largest_digit(n: u64, b: u64) -> Result<u64> {
    check_digit_args(n, b)?;
    Ok(digits(n, b).max().unwrap_or(0))
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositive { what: "n", value: 0 })
    } else {
        Ok(())
    }
}

/// Positive divisors of `n` in increasing order, by trial division up to sqrt(n).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn dpow(d: u64, k: u32) -> Integer {
    Pow::pow(BigInt::from(d), k)
}

/// `sigma_alpha(n)`: sum of `d^alpha` over positive divisors.
pub fn sigma(n: u64, alpha: u32) -> Result<Integer> {
    check_positive(n)?;
    Ok(divisors(n).into_iter().map(|d| dpow(d, alpha)).sum())
}

/// Sum of the odd divisors of `n`.
pub fn sigma_odd(n: u64) -> Result<Integer> {
    check_positive(n)?;
    Ok(divisors(n).into_iter().filter(|d| d % 2 == 1).map(BigInt::from).sum())
}

/// `sum (-1)^d d^k` over positive divisors `d` of `n`.
pub fn sigma_alt(n: u64, k: u32) -> Result<Integer> {
    check_positive(n)?;
    Ok(divisors(n)
        .into_iter()
        .map(|d| if d % 2 == 0 { dpow(d, k) } else { -dpow(d, k) })
        .sum())
}

/// `sum d^k` over divisors `d` of `n` with `level` not dividing `n/d`.
pub fn sigma_star(n: u64, level: u64, k: u32) -> Result<Integer> {
    check_positive(n)?;
    if level != 2 && level != 3 {
        return Err(Error::Precondition(format!("sigma_star level must be 2 or 3, got {level}")));
    }
    Ok(divisors(n)
        .into_iter()
        .filter(|d| (n / d) % level != 0)
        .map(|d| dpow(d, k))
        .sum())
}

/// Bernoulli numbers `B_1 .. B_kmax` in the all-positive convention
/// `x/(e^x - 1) = 1 - x/2 + sum (-1)^(k+1) B_k x^(2k)/(2k)!`.
///
/// Computed by exact power-series division of `x` by `e^x - 1`.
pub fn bernoulli_table(kmax: usize) -> Vec<Rational> {
    let deg = 2 * kmax + 1;
    // (e^x - 1)/x = sum x^i/(i+1)!
    let mut fact = Vec::with_capacity(deg + 2);
    fact.push(BigInt::one());
    for i in 1..=deg + 1 {
        let next = &fact[i - 1] * BigInt::from(i);
        fact.push(next);
    }
    let denom: Vec<Rational> = (0..=deg)
        .map(|i| BigRational::new(BigInt::one(), fact[i + 1].clone()))
        .collect();
    // inverse series; leading coefficient is 1
    let mut inv: Vec<Rational> = Vec::with_capacity(deg + 1);
    inv.push(BigRational::one());
    for n in 1..=deg {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += &denom[k] * &inv[n - k];
        }
        inv.push(-acc);
    }
    (1..=kmax)
        .map(|k| {
            let c = &inv[2 * k] * BigRational::from_integer(fact[2 * k].clone());
            if k % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .collect()
}

pub fn bernoulli(k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::NonPositive { what: "k", value: 0 });
    }
    Ok(bernoulli_table(k as usize).pop().expect("k >= 1"))
}

/// Normalizing constant of the level-one Eisenstein series of weight `h`:
/// `alpha_h = (-1)^k 4k / B_k` with `k = h/2`, and `alpha_0 = 0`.
pub fn alpha_coeff(h: i64) -> Result<Rational> {
    if h < 0 {
        return Err(Error::Precondition(format!("weight must be non-negative, got {h}")));
    }
    if h % 2 != 0 {
        return Err(Error::OddWeight(h));
    }
    if h == 0 {
        return Ok(BigRational::zero());
    }
    let k = h / 2;
    let b = bernoulli(k as u64)?;
    let gamma = rat(4 * k) / b;
    Ok(if k % 2 == 0 { gamma } else { -gamma })
}

pub fn moebius(n: u64) -> Result<i8> {
    check_positive(n)?;
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Residue of `x` modulo `m` in `[0, m)`, defined when the denominator of `x`
/// is a unit mod `m`.
pub fn residue(x: &Rational, m: &Integer) -> Option<Integer> {
    let den = x.denom().mod_floor(m);
    let g = den.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    let inv = g.x.mod_floor(m);
    Some((x.numer().mod_floor(m) * inv).mod_floor(m))
}

/// `x ≡ target (mod m)` for a rational `x` whose denominator is prime to `m`.
/// Returns `None` when the congruence is not defined.
pub fn congruent(x: &Rational, target: &Integer, m: &Integer) -> Option<bool> {
    residue(x, m).map(|r| r == target.mod_floor(m))
}

/// Integer power of a small base as a big integer.
pub fn ipow(base: u64, e: u32) -> Integer {
    Pow::pow(BigInt::from(base), e)
}

pub fn to_i64(x: &Integer) -> Option<i64> {
    x.to_i64()
}

/// `x / p^a` for nonzero rational `x` and `a = ord_p(x)`: the p-adic unit part.
pub fn unit_part(x: &Rational, p: u64, a: i64) -> Rational {
    let pa = BigRational::from_integer(ipow(p, a.unsigned_abs() as u32));
    if a >= 0 {
        x / pa
    } else {
        x * pa
    }
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ord_examples() {
        assert_eq!(ord_p(&rat(48), 2).unwrap(), POrder::Finite(4));
        assert_eq!(ord_p(&rat(0), 3).unwrap(), POrder::Infinite);
        assert_eq!(ord_p(&frac(5, 8), 2).unwrap(), POrder::Finite(-3));
        assert_eq!(ord_p(&rat(12), 4), Err(Error::NotPrime(4)));
        assert_eq!(ord_p(&rat(12), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digit_sum(1, 2).unwrap(), 1);
        assert_eq!(digit_sum(5, 3).unwrap(), 3);
        assert_eq!(largest_digit(5, 3).unwrap(), 2);
        assert_eq!(largest_digit(4, 3).unwrap(), 1);
        assert!(digit_sum(0, 2).is_err());
        assert!(digit_sum(7, 1).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(1, 3).unwrap(), int(1));
        assert_eq!(sigma(6, 1).unwrap(), int(12));
        assert_eq!(sigma(4, 0).unwrap(), int(3));
        assert_eq!(sigma_odd(3).unwrap(), int(4));
        assert_eq!(sigma_alt(2, 3).unwrap(), int(7));
        assert_eq!(sigma_star(4, 2, 3).unwrap(), int(64));
        assert_eq!(sigma_star(1, 2, 3).unwrap(), int(1));
        assert!(sigma(0, 1).is_err());
        assert!(sigma_odd(0).is_err());
        assert!(sigma_alt(0, 1).is_err());
        assert!(sigma_star(0, 2, 1).is_err());
        assert!(sigma_star(3, 5, 1).is_err());
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(1).unwrap(), frac(1, 6));
        assert_eq!(bernoulli(2).unwrap(), frac(1, 30));
        assert_eq!(bernoulli(3).unwrap(), frac(1, 42));
        assert_eq!(bernoulli(6).unwrap(), frac(691, 2730));
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn alpha_table() {
        let table = [
            (0, rat(0)),
            (2, rat(-24)),
            (4, rat(240)),
            (6, rat(-504)),
            (8, rat(480)),
            (10, rat(-264)),
            (12, frac(65520, 691)),
        ];
        for (h, want) in table {
            assert_eq!(alpha_coeff(h).unwrap(), want, "alpha_{h}");
        }
        assert_eq!(alpha_coeff(3), Err(Error::OddWeight(3)));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn residues() {
        assert_eq!(residue(&frac(1, 2), &int(3)), Some(int(2)));
        assert_eq!(residue(&frac(1, 3), &int(3)), None);
        assert_eq!(congruent(&rat(24), &int(-3), &int(9)), Some(true));
    }

    fn brute_sigma(n: u64, k: u32) -> Integer {
        (1..=n).filter(|d| n % d == 0).map(|d| ipow(d, k)).sum()
    }

    #[test]
    fn sigma_star_matches_brute_force() {
        for n in 1..=2000u64 {
            for level in [2u64, 3] {
                for k in [1u32, 3, 5] {
                    let brute: Integer = (1..=n)
                        .filter(|d| n % d == 0 && (n / d) % level != 0)
                        .map(|d| ipow(d, k))
                        .sum();
                    let star = sigma_star(n, level, k).unwrap();
                    assert_eq!(star, brute);
                    let via_sigma = if n % level == 0 {
                        brute_sigma(n, k) - brute_sigma(n / level, k)
                    } else {
                        brute_sigma(n, k)
                    };
                    assert_eq!(star, via_sigma, "n={n} N={level} k={k}");
                }
            }
        }
        // spot checks further out
        for n in [9973u64, 10000, 9216, 6561] {
            assert_eq!(sigma(n, 2).unwrap(), brute_sigma(n, 2));
        }
    }

    proptest! {
        #[test]
        fn ord_is_additive(a in 1i64..100000, b in 1i64..100000, c in 1i64..1000, d in 1i64..1000) {
            let x = frac(a, c);
            let y = frac(-b, d);
            for p in [2u64, 3, 5, 7] {
                let lhs = ord_p(&(&x * &y), p).unwrap().finite().unwrap();
                let rhs = ord_p(&x, p).unwrap().finite().unwrap() + ord_p(&y, p).unwrap().finite().unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn binary_digit_sum_bounds(n in 1u64..1_000_000_000, x in 0u32..60) {
            let bound = 1 + (63 - n.leading_zeros()) as u64;
            prop_assert!(digit_sum(n, 2).unwrap() <= bound);
            prop_assert_eq!(digit_sum(1u64 << x, 2).unwrap(), 1);
        }

        #[test]
        fn ord2_congruence_equivalence(n in 1i64..1_000_000) {
            let a = ord_p(&rat(n), 2).unwrap().finite().unwrap() as u32;
            let m = ipow(2, a + 1);
            prop_assert!(congruent(&rat(n), &ipow(2, a), &m).unwrap());
        }
    }
}
