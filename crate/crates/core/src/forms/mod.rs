//! The generator catalog, monomial form expressions, and their evaluation.

pub mod expansions;
pub mod identities;
pub mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_integer::Integer as _;

use crate::error::{Error, Result};
use crate::series::QSeries;

pub use expansions::{
    basis_m1, basis_m2, delta, delta2, dim_m, e04, e_gamma2, e_inf4, eisenstein_en_inf,
    eisenstein_g, j2, j_invariant, level2_eisenstein, m2, phi, phi_root, s_form, t_series,
};
pub use parse::{parse_expr, ParseError};

/// A named generator. All generators are normalized: the leading Fourier
/// coefficient at infinity is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Level-one Eisenstein series `G_h`; `G(2)` is the quasi-modular `G_2`
    /// and `G(0)` the constant 1.
    G(u32),
    Delta,
    J,
    Egamma2,
    E04,
    Einf4,
    /// `E_{N,inf,k}`.
    EInf { level: u32, k: u32 },
    Delta2,
    J2,
    /// `phi_N = Delta(Nz)/Delta(z)`.
    Phi(u32),
    /// `Phi_N = phi_N^{1/(N-1)}`.
    PhiRoot(u32),
    S { n: u32, d: u32 },
    /// Siegel's `T_h`.
    T(u32),
    /// `T_{2,h}`.
    T2(u32),
}

impl Generator {
    /// Checks parameter ranges.
    pub fn validate(self) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        match self {
            Generator::G(h) if h % 2 != 0 => bad(format!("G({h}): weight must be even")),
            Generator::EInf { level, k } if !(level == 2 || level == 3) => {
                bad(format!("E({level},inf,{k}): level must be 2 or 3"))
            }
            Generator::EInf { level, k } if k % 2 != 0 || k <= 2 => {
                bad(format!("E({level},inf,{k}): weight must be even and > 2"))
            }
            Generator::Phi(n) | Generator::PhiRoot(n) if !(n == 2 || n == 3) => {
                bad(format!("phi/Phi({n}): level must be 2 or 3"))
            }
            Generator::S { n, d } if !(1..=4).contains(&d) || n < 1 || n > d => {
                bad(format!("S({n},{d}): need 1 <= n <= d <= 4"))
            }
            Generator::T(h) if h % 2 != 0 || h <= 2 => bad(format!("T({h}): need even h > 2")),
            Generator::T2(h) if h % 2 != 0 || h < 2 => bad(format!("T2({h}): need even h >= 2")),
            g => Ok(g),
        }
    }

    pub fn weight(self) -> i64 {
        match self {
            Generator::G(h) => h as i64,
            Generator::Delta => 12,
            Generator::J | Generator::J2 | Generator::Phi(_) | Generator::PhiRoot(_) => 0,
            Generator::Egamma2 => 2,
            Generator::E04 | Generator::Einf4 => 4,
            Generator::EInf { k, .. } => k as i64,
            Generator::Delta2 => 8,
            Generator::S { .. } => 24,
            Generator::T(h) | Generator::T2(h) => 2 - h as i64,
        }
    }

    /// Level of the smallest `Gamma_0(N)` the generator belongs to.
    pub fn conductor(self) -> u32 {
        match self {
            Generator::G(_) | Generator::Delta | Generator::J | Generator::S { .. } | Generator::T(_) => 1,
            Generator::Egamma2
            | Generator::E04
            | Generator::Einf4
            | Generator::Delta2
            | Generator::J2
            | Generator::T2(_) => 2,
            Generator::EInf { level, .. } | Generator::Phi(level) | Generator::PhiRoot(level) => level,
        }
    }

    /// Exponent of the leading term of the expansion at infinity.
    pub fn valuation(self) -> i64 {
        match self {
            Generator::G(_) | Generator::Egamma2 | Generator::E04 => 0,
            Generator::Delta
            | Generator::Einf4
            | Generator::EInf { .. }
            | Generator::Delta2
            | Generator::PhiRoot(_)
            | Generator::S { .. } => 1,
            Generator::J | Generator::J2 => -1,
            Generator::Phi(n) => n as i64 - 1,
            Generator::T(h) => -dim_m(1, h as i64).expect("validated"),
            Generator::T2(h) => {
                let r = dim_m(2, h as i64).expect("validated");
                if h % 4 == 0 {
                    -r
                } else {
                    -1 - r
                }
            }
        }
    }

    /// Expansion with `len` coefficients from the valuation, computed from
    /// scratch.
    pub fn expand(self, len: usize) -> Result<QSeries> {
        self.validate()?;
        match self {
            Generator::G(h) => eisenstein_g(h as i64, len),
            Generator::Delta => delta(len),
            Generator::J => j_invariant(len),
            Generator::Egamma2 => e_gamma2(len),
            Generator::E04 => e04(len),
            Generator::Einf4 => e_inf4(len),
            Generator::EInf { level, k } => eisenstein_en_inf(level, k, len),
            Generator::Delta2 => delta2(len),
            Generator::J2 => j2(len),
            Generator::Phi(n) => phi(n, len),
            Generator::PhiRoot(n) => phi_root(n, len),
            Generator::S { n, d } => s_form(n, d, len),
            Generator::T(h) => t_series(1, h as i64, len),
            Generator::T2(h) => t_series(2, h as i64, len),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::G(h) => write!(f, "G({h})"),
            Generator::Delta => f.write_str("Delta"),
            Generator::J => f.write_str("j"),
            Generator::Egamma2 => f.write_str("Egamma2"),
            Generator::E04 => f.write_str("E04"),
            Generator::Einf4 => f.write_str("Einf4"),
            Generator::EInf { level, k } => write!(f, "E({level},inf,{k})"),
            Generator::Delta2 => f.write_str("Delta2"),
            Generator::J2 => f.write_str("j2"),
            Generator::Phi(n) => write!(f, "phi({n})"),
            Generator::PhiRoot(n) => write!(f, "Phi({n})"),
            Generator::S { n, d } => write!(f, "S({n},{d})"),
            Generator::T(h) => write!(f, "T({h})"),
            Generator::T2(h) => write!(f, "T2({h})"),
        }
    }
}

/// A monomial in the generators with nonzero integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormExpr {
    pub factors: Vec<(Generator, i64)>,
}

impl FormExpr {
    pub fn new(factors: Vec<(Generator, i64)>) -> Result<Self> {
        for &(g, e) in &factors {
            g.validate()?;
            if e == 0 {
                return Err(Error::Precondition(format!("zero exponent on {g}")));
            }
        }
        Ok(FormExpr { factors })
    }

    pub fn single(g: Generator, e: i64) -> Result<Self> {
        Self::new(vec![(g, e)])
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|&(g, e)| g.weight() * e).sum()
    }

    /// Valuation of the product, read off the generators.
    pub fn valuation(&self) -> i64 {
        self.factors.iter().map(|&(g, e)| g.valuation() * e).sum()
    }

    pub fn pole_order(&self) -> i64 {
        (-self.valuation()).max(0)
    }

    /// lcm of the generator conductors: the level the product is
    /// constructed at.
    pub fn conductor(&self) -> u32 {
        self.factors.iter().fold(1u32, |acc, &(g, _)| acc.lcm(&g.conductor()))
    }

    /// `Some((N, k, a))` when the expression is exactly `E_{N,inf,k}^{-a}`
    /// (including `Einf4 = E_{2,inf,4}`).
    pub fn as_en_inf_negative_power(&self) -> Option<(u32, u32, u64)> {
        match self.factors.as_slice() {
            [(Generator::EInf { level, k }, e)] if *e < 0 => Some((*level, *k, e.unsigned_abs())),
            [(Generator::Einf4, e)] if *e < 0 => Some((2, 4, e.unsigned_abs())),
            _ => None,
        }
    }
}

impl fmt::Display for FormExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for FormExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

/// Memoized generator expansions. Keeps the longest expansion computed per
/// generator and truncates on request; safe to share across threads.
#[derive(Default)]
pub struct Catalog {
    memo: RwLock<HashMap<Generator, QSeries>>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expansion of `g` with `len` coefficients from its valuation.
    pub fn series(&self, g: Generator, len: usize) -> Result<QSeries> {
        if let Some(s) = self.memo.read().expect("memo lock").get(&g) {
            if s.len() >= len {
                return Ok(s.truncate_len(len));
            }
        }
        let s = self.build(g, len)?;
        let mut memo = self.memo.write().expect("memo lock");
        let keep = memo.get(&g).is_none_or(|old| old.len() < s.len());
        if keep {
            memo.insert(g, s.clone());
        }
        Ok(s)
    }

    // Composite generators reuse memoized building blocks.
    fn build(&self, g: Generator, len: usize) -> Result<QSeries> {
        g.validate()?;
        match g {
            Generator::J => {
                let g4 = self.series(Generator::G(4), len)?;
                Ok(g4.pow_int(3)?.mul(&self.series(Generator::Delta, len)?.invert()?))
            }
            Generator::J2 => {
                let eg = self.series(Generator::Egamma2, len)?;
                Ok(eg.pow_int(2)?.mul(&self.series(Generator::Einf4, len)?.invert()?))
            }
            Generator::Delta2 => {
                Ok(self.series(Generator::E04, len)?.mul(&self.series(Generator::Einf4, len)?))
            }
            Generator::Phi(n) => {
                let d = self.series(Generator::Delta, len)?;
                Ok(d.rescale(n)?.mul(&d.invert()?))
            }
            Generator::PhiRoot(2) => self.series(Generator::Phi(2), len),
            Generator::PhiRoot(n) => self.series(Generator::Phi(n), len)?.root(n - 1),
            Generator::T(h) => {
                let r = dim_m(1, h as i64)?;
                let gw = 12 * r - h as i64 + 2;
                let e = self.series(Generator::G(gw as u32), len)?;
                Ok(e.mul(&self.series(Generator::Delta, len)?.pow_int(-r)?))
            }
            Generator::T2(h) => {
                let r = dim_m(2, h as i64)?;
                let eg = self.series(Generator::Egamma2, len)?;
                let e0 = self.series(Generator::E04, len)?;
                let ei = self.series(Generator::Einf4, len)?;
                if h % 4 == 0 {
                    Ok(eg.mul(&e0).mul(&ei.pow_int(-r)?))
                } else {
                    Ok(eg.pow_int(2)?.mul(&e0).mul(&ei.pow_int(-1 - r)?))
                }
            }
            other => other.expand(len),
        }
    }

    /// Evaluates a monomial with `prec` justified coefficients from its
    /// valuation. Each factor is expanded to `prec` coefficients from its own
    /// valuation; products, powers and inverses preserve that length.
    pub fn eval(&self, expr: &FormExpr, prec: usize) -> Result<QSeries> {
        if prec == 0 {
            return Err(Error::NonPositive { what: "prec", value: 0 });
        }
        let mut acc = QSeries::one(prec);
        for &(g, e) in &expr.factors {
            let s = self.series(g, prec)?.pow_int(e)?;
            acc = acc.mul(&s);
        }
        debug_assert_eq!(acc.len(), prec);
        debug_assert_eq!(acc.valuation(), expr.valuation());
        Ok(acc)
    }

    /// Constant term of the expansion at infinity.
    pub fn constant_term(&self, expr: &FormExpr) -> Result<crate::arith::Rational> {
        let v = expr.valuation();
        let prec = if v > 0 { 1 } else { (1 - v) as usize };
        self.eval(expr, prec)?.constant_term()
    }

    pub fn clear(&self) {
        self.memo.write().expect("memo lock").clear();
    }
}

/// Evaluates a parsed expression with a fresh catalog.
pub fn eval_expr(expr: &FormExpr, prec: usize) -> Result<QSeries> {
    Catalog::new().eval(expr, prec)
}
