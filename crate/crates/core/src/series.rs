//! Truncated Laurent series in `q` with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^valuation .. q^(reach-1)`.
//! Every exponent at or beyond `reach` is unknown, and asking for it is an
//! error. Arithmetic propagates reach pessimistically: a result never claims
//! a coefficient its operands do not determine.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{sigma_alt, Integer, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Series with coefficients of `q^start ..` given by `coeffs`; reach is
    /// `start + coeffs.len()`. Leading zeros are absorbed into the valuation.
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = QSeries { valuation: start, coeffs };
        s.normalize();
        s
    }

    pub fn from_ints(start: i64, coeffs: &[i64]) -> Self {
        Self::new(start, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_integers(start: i64, coeffs: Vec<Integer>) -> Self {
        Self::new(start, coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// The zero series, known below `reach`.
    pub fn zero(reach: i64) -> Self {
        QSeries { valuation: reach, coeffs: Vec::new() }
    }

    /// `1 + O(q^len)`.
    pub fn one(len: usize) -> Self {
        Self::monomial(0, BigRational::one(), len)
    }

    /// `c q^exp + O(q^(exp+len))`.
    pub fn monomial(exp: i64, c: Rational, len: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); len];
        if len > 0 {
            coeffs[0] = c;
        }
        Self::new(exp, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.valuation += self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
    }

    /// Exponent of the first nonzero coefficient; equals `reach` for a series
    /// that is zero as far as it is known.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// First exponent whose coefficient is not determined.
    pub fn reach(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    /// Number of stored coefficients, counted from the valuation.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order of the pole at infinity (0 if holomorphic there).
    pub fn pole_order(&self) -> i64 {
        (-self.valuation).max(0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        if n >= self.reach() {
            return Err(Error::BeyondReach { exponent: n, reach: self.reach() });
        }
        if n < self.valuation {
            return Ok(BigRational::zero());
        }
        Ok(self.coeffs[(n - self.valuation) as usize].clone())
    }

    pub fn constant_term(&self) -> Result<Rational> {
        self.coeff(0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Forget everything at or beyond `reach`.
    pub fn truncate(&self, reach: i64) -> Self {
        if reach >= self.reach() {
            return self.clone();
        }
        if reach <= self.valuation {
            return Self::zero(reach);
        }
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs[..(reach - self.valuation) as usize].to_vec(),
        }
    }

    /// Keep only the first `len` coefficients from the valuation.
    pub fn truncate_len(&self, len: usize) -> Self {
        self.truncate(self.valuation + len as i64)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.reach());
        }
        QSeries { valuation: self.valuation, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let reach = self.reach().min(other.reach());
        let val = self.valuation.min(other.valuation);
        if reach <= val {
            return Self::zero(reach);
        }
        let coeffs = (val..reach)
            .map(|n| {
                let a = self.get(n);
                let b = other.get(n);
                match (a, b) {
                    (Some(a), Some(b)) if negate_other => a - b,
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) if negate_other => -b,
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigRational::zero(),
                }
            })
            .collect();
        Self::new(val, coeffs)
    }

    fn get(&self, n: i64) -> Option<&Rational> {
        if n < self.valuation {
            None
        } else {
            self.coeffs.get((n - self.valuation) as usize)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Cauchy product. The result knows `min(len(a), len(b))` coefficients
    /// past its valuation.
    pub fn mul(&self, other: &Self) -> Self {
        let val = self.valuation + other.valuation;
        let reach = (self.reach() + other.valuation).min(other.reach() + self.valuation);
        let len = (reach - val).max(0) as usize;
        if len == 0 {
            return Self::zero(reach);
        }
        let (da, a) = scaled_integers(&self.coeffs[..len]);
        let (db, b) = scaled_integers(&other.coeffs[..len]);
        let c = convolve(&a, &b, len);
        let d = da * db;
        Self::new(val, c.into_iter().map(|x| BigRational::new(x, d.clone())).collect())
    }

    /// Multiplicative inverse. Fails for a series that is zero up to its reach.
    pub fn invert(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroSeries)?;
        let n = self.coeffs.len();
        let coeffs = if self.is_integral() && lead.abs().is_one() {
            let a: Vec<Integer> = self.coeffs.iter().map(|c| c.to_integer()).collect();
            let u = a[0].clone();
            let mut b: Vec<Integer> = Vec::with_capacity(n);
            b.push(u.clone());
            for k in 1..n {
                let mut acc = BigInt::zero();
                for i in 1..=k {
                    if !a[i].is_zero() {
                        acc += &a[i] * &b[k - i];
                    }
                }
                b.push(-(acc * &u));
            }
            b.into_iter().map(BigRational::from_integer).collect()
        } else {
            let inv_lead = lead.recip();
            let mut b: Vec<Rational> = Vec::with_capacity(n);
            b.push(inv_lead.clone());
            for k in 1..n {
                let mut acc = BigRational::zero();
                for i in 1..=k {
                    if !self.coeffs[i].is_zero() {
                        acc += &self.coeffs[i] * &b[k - i];
                    }
                }
                b.push(-(acc * &inv_lead));
            }
            b
        };
        Ok(QSeries { valuation: -self.valuation, coeffs })
    }

    /// Integer power by square-and-multiply. Negative exponents invert first.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.len()));
        }
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result: Option<QSeries> = None;
        let mut power = base;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => power.clone(),
                    Some(r) => r.mul(&power),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            power = power.mul(&power);
        }
        Ok(result.expect("exponent is nonzero"))
    }

    /// The monic `m`-th root. Requires `m | valuation` and a leading
    /// coefficient of 1.
    pub fn root(&self, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::NonPositive { what: "root index", value: 0 });
        }
        let lead = self.leading().ok_or(Error::ZeroSeries)?;
        if self.valuation % m as i64 != 0 {
            return Err(Error::Root(format!(
                "valuation {} is not divisible by {m}",
                self.valuation
            )));
        }
        if !lead.is_one() {
            return Err(Error::Root(format!("leading coefficient {lead} is not 1")));
        }
        // g = f^alpha satisfies f g' = alpha f' g; with f_0 = 1 this gives
        // n g_n = sum_{k=1}^n ((alpha+1) k - n) f_k g_{n-k}.
        let alpha_plus_one = BigRational::new(BigInt::from(m as i64 + 1), BigInt::from(m));
        let f = &self.coeffs;
        let mut g: Vec<Rational> = Vec::with_capacity(f.len());
        g.push(BigRational::one());
        for n in 1..f.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if f[k].is_zero() {
                    continue;
                }
                let w = &alpha_plus_one * BigRational::from_integer(BigInt::from(k))
                    - BigRational::from_integer(BigInt::from(n));
                acc += w * &f[k] * &g[n - k];
            }
            g.push(acc / BigRational::from_integer(BigInt::from(n)));
        }
        Ok(QSeries { valuation: self.valuation / m as i64, coeffs: g })
    }

    /// `D = q d/dq`: the coefficient of `q^n` is multiplied by `n`.
    pub fn derivative_d(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(self.valuation + i as i64)))
            .collect();
        Self::new(self.valuation, coeffs)
    }

    /// Substitute `q -> q^n`.
    pub fn rescale(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive { what: "rescale factor", value: 0 });
        }
        let n = n as usize;
        if self.is_zero() {
            return Ok(Self::zero(self.reach() * n as i64));
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() * n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        Ok(QSeries { valuation: self.valuation * n as i64, coeffs })
    }

    /// Coefficients from the valuation as integers, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.is_integral().then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

/// Clears denominators: returns `(D, [D*c_i])` with `D` the lcm of the
/// denominators.
fn scaled_integers(c: &[Rational]) -> (Integer, Vec<Integer>) {
    let d = c.iter().fold(BigInt::one(), |acc, x| {
        if x.denom().is_one() {
            acc
        } else {
            acc.lcm(x.denom())
        }
    });
    let ints = if d.is_one() {
        c.iter().map(|x| x.numer().clone()).collect()
    } else {
        c.iter().map(|x| x.numer() * (&d / x.denom())).collect()
    };
    (d, ints)
}

/// Schoolbook truncated convolution of integer sequences.
fn convolve(a: &[Integer], b: &[Integer], len: usize) -> Vec<Integer> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// `prod_{n>=1} (1 - q^n)^{e_n}` to `prec` coefficients, by the recursion
/// `n p(n) = sum_{k=1}^n f_A(k) p(n-k)` with `f_A(k) = -sum_{d|k} d e_d`.
pub fn product_expand<F: Fn(u64) -> i64>(exponents: F, prec: usize) -> Result<QSeries> {
    if prec == 0 {
        return Err(Error::NonPositive { what: "prec", value: 0 });
    }
    let mut fa = vec![BigInt::zero(); prec];
    for d in 1..prec {
        let e = exponents(d as u64);
        if e == 0 {
            continue;
        }
        let fd = BigInt::from(-(d as i64)) * BigInt::from(e);
        let mut k = d;
        while k < prec {
            fa[k] += &fd;
            k += d;
        }
    }
    Ok(QSeries::from_integers(0, apostol_recursion(&fa, prec)))
}

fn apostol_recursion(fa: &[Integer], prec: usize) -> Vec<Integer> {
    let mut p: Vec<Integer> = Vec::with_capacity(prec);
    p.push(BigInt::one());
    for n in 1..prec {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if !fa[k].is_zero() {
                acc += &fa[k] * &p[n - k];
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        debug_assert!(r.is_zero(), "product expansion must be integral");
        p.push(q);
    }
    p
}

/// The coefficients `R(0..prec)` of `E_{inf,4}^{-s} = q^{-s} sum R(n) q^n`,
/// from `R(n) = (8s/n) sum_{a=1}^n sigma_1^alt(a) R(n-a)`.
pub fn neg_power_einf4_coeffs(s: u64, prec: usize) -> Vec<Integer> {
    if prec == 0 {
        return Vec::new();
    }
    let eight_s = BigInt::from(8u64 * s);
    let fa: Vec<Integer> = (0..prec)
        .map(|a| {
            if a == 0 {
                BigInt::zero()
            } else {
                &eight_s * sigma_alt(a as u64, 1).expect("a >= 1")
            }
        })
        .collect();
    apostol_recursion(&fa, prec)
}

/// `E_{inf,4}^{-s}` with `prec` coefficients from its valuation `-s`.
pub fn neg_power_einf4(s: u64, prec: usize) -> Result<QSeries> {
    if s == 0 {
        return Err(Error::NonPositive { what: "s", value: 0 });
    }
    if prec == 0 {
        return Err(Error::NonPositive { what: "prec", value: 0 });
    }
    Ok(QSeries::from_integers(-(s as i64), neg_power_einf4_coeffs(s, prec)))
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries(val={}, reach={}, [", self.valuation, self.reach())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one() && e != 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => f.write_str(if unit { "q" } else { "*q" })?,
                _ => write!(f, "{}q^{e}", if unit { "" } else { "*" })?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.reach())
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { valuation: self.valuation, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
