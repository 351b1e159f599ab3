//! Fourier expansions at infinity of the named forms.
//!
//! `prec` counts coefficients from each form's own valuation, so every
//! result has exactly `prec` justified coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{alpha_coeff, frac, sigma, sigma_alt, sigma_odd, sigma_star, Rational};
use crate::error::{Error, Result};
use crate::series::{product_expand, QSeries};

fn check_prec(prec: usize) -> Result<()> {
    if prec == 0 {
        Err(Error::NonPositive { what: "prec", value: 0 })
    } else {
        Ok(())
    }
}

/// `1 + c * sum_{n>=1} a(n) q^n`.
fn eisenstein_from<F: Fn(u64) -> Result<BigInt>>(c: &Rational, a: F, prec: usize) -> Result<QSeries> {
    let mut coeffs = Vec::with_capacity(prec);
    coeffs.push(BigRational::one());
    for n in 1..prec as u64 {
        coeffs.push(c * BigRational::from_integer(a(n)?));
    }
    Ok(QSeries::new(0, coeffs))
}

/// Level-one Eisenstein series `G_h = 1 + alpha_h sum sigma_{h-1}(n) q^n`.
/// `h = 2` gives the quasi-modular `G_2`; `h = 0` gives the constant 1.
pub fn eisenstein_g(h: i64, prec: usize) -> Result<QSeries> {
    check_prec(prec)?;
    let alpha = alpha_coeff(h)?;
    if h == 0 {
        return Ok(QSeries::one(prec));
    }
    eisenstein_from(&alpha, |n| sigma(n, (h - 1) as u32), prec)
}

/// `Delta = q prod (1 - q^n)^24`.
pub fn delta(prec: usize) -> Result<QSeries> {
    Ok(product_expand(|_| 24, prec)?.shift(1))
}

/// `j = G_4^3 / Delta`.
pub fn j_invariant(prec: usize) -> Result<QSeries> {
    let g4 = eisenstein_g(4, prec)?;
    Ok(g4.pow_int(3)?.mul(&delta(prec)?.invert()?))
}

/// `E_{gamma,2} = 1 + 24 sum sigma^odd(n) q^n`.
pub fn e_gamma2(prec: usize) -> Result<QSeries> {
    check_prec(prec)?;
    eisenstein_from(&frac(24, 1), sigma_odd, prec)
}

/// `E_{0,4} = 1 + 16 sum sigma_3^alt(n) q^n`.
pub fn e04(prec: usize) -> Result<QSeries> {
    check_prec(prec)?;
    eisenstein_from(&frac(16, 1), |n| sigma_alt(n, 3), prec)
}

/// `E_{N,inf,k} = sum sigma*_{N,k-1}(n) q^n`.
pub fn eisenstein_en_inf(level: u32, k: u32, prec: usize) -> Result<QSeries> {
    check_prec(prec)?;
    if level != 2 && level != 3 {
        return Err(Error::InvalidGenerator(format!("E(N,inf,k) needs N in {{2,3}}, got {level}")));
    }
    if k % 2 != 0 || k <= 2 {
        return Err(Error::InvalidGenerator(format!("E(N,inf,k) needs even k > 2, got {k}")));
    }
    let coeffs = (1..=prec as u64)
        .map(|n| sigma_star(n, level as u64, k - 1).map(BigRational::from_integer))
        .collect::<Result<Vec<_>>>()?;
    Ok(QSeries::new(1, coeffs))
}

/// `E_{inf,4} = E_{2,inf,4}`.
pub fn e_inf4(prec: usize) -> Result<QSeries> {
    eisenstein_en_inf(2, 4, prec)
}

/// The three level-two Eisenstein series `(E_{gamma,2}, E_{0,4}, E_{inf,4})`.
pub fn level2_eisenstein(prec: usize) -> Result<(QSeries, QSeries, QSeries)> {
    Ok((e_gamma2(prec)?, e04(prec)?, e_inf4(prec)?))
}

/// `Delta_2 = E_{0,4} E_{inf,4}`.
pub fn delta2(prec: usize) -> Result<QSeries> {
    Ok(e04(prec)?.mul(&e_inf4(prec)?))
}

/// `j_2 = E_{gamma,2}^2 / E_{inf,4}`.
pub fn j2(prec: usize) -> Result<QSeries> {
    Ok(e_gamma2(prec)?.pow_int(2)?.mul(&e_inf4(prec)?.invert()?))
}

/// `m_2 = j_2 - 64`.
pub fn m2(prec: usize) -> Result<QSeries> {
    let j = j2(prec)?;
    let c = QSeries::monomial(0, frac(64, 1), (j.reach()) as usize);
    Ok(j.sub(&c))
}

fn check_small_level(level: u32) -> Result<()> {
    if level == 2 || level == 3 {
        Ok(())
    } else {
        Err(Error::InvalidGenerator(format!("phi(N) and Phi(N) need N in {{2,3}}, got {level}")))
    }
}

/// `phi_N(z) = Delta(Nz) / Delta(z)`, valuation `N - 1`.
pub fn phi(level: u32, prec: usize) -> Result<QSeries> {
    check_small_level(level)?;
    let d = delta(prec)?;
    Ok(d.rescale(level)?.mul(&d.invert()?))
}

/// `Phi_N = phi_N^{1/(N-1)}`.
pub fn phi_root(level: u32, prec: usize) -> Result<QSeries> {
    let p = phi(level, prec)?;
    if level == 2 {
        Ok(p)
    } else {
        p.root(level - 1)
    }
}

/// `S_{n,d} = Delta (n/d G_4^3 + (1 - n/d) G_6^2)`.
pub fn s_form(n: u32, d: u32, prec: usize) -> Result<QSeries> {
    if !(1..=4).contains(&d) || n < 1 || n > d {
        return Err(Error::InvalidGenerator(format!("S(n,d) needs 1 <= n <= d <= 4, got S({n},{d})")));
    }
    let t = frac(n as i64, d as i64);
    let g4c = eisenstein_g(4, prec)?.pow_int(3)?;
    let g6s = eisenstein_g(6, prec)?.pow_int(2)?;
    let mix = g4c.scale(&t).add(&g6s.scale(&(BigRational::one() - &t)));
    Ok(delta(prec)?.mul(&mix))
}

/// Dimension of `M(N, h)` for `N` in {1, 2}.
pub fn dim_m(level: u32, h: i64) -> Result<i64> {
    if h < 0 {
        return Err(Error::Precondition(format!("weight must be non-negative, got {h}")));
    }
    if h % 2 != 0 {
        return Err(Error::OddWeight(h));
    }
    match level {
        1 if h % 12 == 2 => Ok(h / 12),
        1 => Ok(h / 12 + 1),
        2 => Ok(h / 4 + 1),
        _ => Err(Error::Precondition(format!("dimension formula only for levels 1 and 2, got {level}"))),
    }
}

/// Weight of the Eisenstein factor in `T_h = G_{12r-h+2} Delta^{-r}`.
pub fn t_eisenstein_weight(h: i64) -> Result<i64> {
    let r = dim_m(1, h)?;
    Ok(12 * r - h + 2)
}

fn check_t_domain(level: u32, h: i64) -> Result<()> {
    let ok = h % 2 == 0
        && match level {
            1 => h > 2,
            2 => h >= 2,
            _ => false,
        };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGenerator(format!("T series of level {level} undefined for weight {h}")))
    }
}

/// Siegel's `T_h` (level 1) or its level-two analogue `T_{2,h}`.
pub fn t_series(level: u32, h: i64, prec: usize) -> Result<QSeries> {
    check_t_domain(level, h)?;
    match level {
        1 => {
            let r = dim_m(1, h)?;
            let g = eisenstein_g(12 * r - h + 2, prec)?;
            Ok(g.mul(&delta(prec)?.pow_int(-r)?))
        }
        _ => {
            let r = dim_m(2, h)?;
            let (eg, e0, ei) = level2_eisenstein(prec)?;
            if h % 4 == 0 {
                Ok(eg.mul(&e0).mul(&ei.pow_int(-r)?))
            } else {
                Ok(eg.pow_int(2)?.mul(&e0).mul(&ei.pow_int(-1 - r)?))
            }
        }
    }
}

/// Basis of `M(2,h)`: `j_2^d E_{inf,4}^{r-1}` (h ≡ 0 mod 4) or
/// `j_2^d E_{gamma,2} E_{inf,4}^{r-1}` (h ≡ 2 mod 4), `d = 0..r-1`.
/// Every element is returned with coefficients known below `q^reach`.
pub fn basis_m2(h: i64, reach: usize) -> Result<Vec<QSeries>> {
    if h <= 0 {
        return Err(Error::Precondition(format!("basis_M2 needs positive weight, got {h}")));
    }
    let r = dim_m(2, h)?;
    let len = reach.max(1);
    let (eg, _, ei) = level2_eisenstein(len)?;
    let j = j2(len)?;
    let mut base = ei.pow_int(r - 1)?;
    if h % 4 == 2 {
        base = base.mul(&eg);
    }
    (0..r)
        .map(|d| Ok(j.pow_int(d)?.mul(&base).truncate(reach as i64)))
        .collect()
}

/// Monomial basis `G_4^a G_6^b` (`4a + 6b = h`) of `M(1,h)`.
pub fn basis_m1(h: i64, reach: usize) -> Result<Vec<QSeries>> {
    if h < 0 || h % 2 != 0 {
        return Err(Error::OddWeight(h));
    }
    let len = reach.max(1);
    let g4 = eisenstein_g(4, len)?;
    let g6 = eisenstein_g(6, len)?;
    let mut out = Vec::new();
    for b in 0..=h / 6 {
        let rest = h - 6 * b;
        if rest % 4 == 0 {
            let f = g4.pow_int(rest / 4)?.mul(&g6.pow_int(b)?);
            out.push(f.truncate(reach as i64));
        }
    }
    Ok(out)
}

/// Echelon form over the rationals (first-nonzero pivot); used to confirm a
/// family of holomorphic series is linearly independent.
pub fn echelon_rank(rows: &[QSeries], reach: i64) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|s| (0..reach).map(|n| s.coeff(n).unwrap_or_else(|_| BigRational::zero())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..reach as usize {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &pivot;
                for c in col..reach as usize {
                    let t = &factor * &m[rank][c];
                    m[i][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
