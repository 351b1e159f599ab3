//! Constant-term rules for forms with a pole at infinity.
//!
//! With `s` the pole order, `beta = d_2(s)`, `gamma = d_3(s)` and `L` the
//! largest base-3 digit of `s`:
//!
//! * `a`: `w = 0 mod 4` gives `ord_2(c0) = 3 beta`
//! * `b`: `w = 2 mod 4` gives `2^{4 beta} | c0`
//! * `c`: `w = 0 mod 3` gives `c0 = (-1)^s 3^gamma mod 3^{gamma+1}`
//! * `d`: `w = 1 mod 3`, `L = 1` gives `c0 = 3^gamma mod 3^{gamma+1}`
//! * `e`: `w = 1 mod 3`, `L = 2` gives `3^{gamma+1} | c0`
//! * `f`: `w = 2 mod 3` gives `3^{gamma+1} | c0`
//!
//! Conductor one forms obey all clauses, conductor two `a`-`b`, conductor
//! three `c`-`f`. Single-factor forms `E_{N,inf,k}^{-a}` in certain windows
//! follow the deviation rules instead.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{congruent, digit_sum, ipow, largest_digit, modulo, ord_p, ord_p_u64, residue, unit_part, POrder, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    /// `c0 = 0` under an exact-order or congruence clause, flagged separately.
    ZeroConstantTerm,
    /// Measured but not asserted.
    Experimental,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::ZeroConstantTerm)
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT_APPLICABLE",
            Verdict::ZeroConstantTerm => "ZERO_CONSTANT_TERM",
            Verdict::Experimental => "EXPERIMENTAL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseVerdict {
    pub rule_id: String,
    pub predicted: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClauseVerdict {
    fn new(rule_id: impl Into<String>, predicted: String, verdict: Verdict) -> Self {
        ClauseVerdict { rule_id: rule_id.into(), predicted, verdict, note: None }
    }
}

/// `beta`, `gamma`, `L` of a pole order.
pub fn pole_digits(s: u64) -> (u64, u64, u64) {
    assert!(s >= 1, "pole order must be positive");
    (
        digit_sum(s, 2).expect("s >= 1"),
        digit_sum(s, 3).expect("s >= 1"),
        largest_digit(s, 3).expect("s >= 1"),
    )
}

fn ord(c0: &Rational, p: u64) -> POrder {
    ord_p(c0, p).expect("p is prime")
}

fn exact_order(id: &str, c0: &Rational, p: u64, want: i64) -> ClauseVerdict {
    let predicted = format!("ord{p}={want}");
    let verdict = match ord(c0, p) {
        POrder::Infinite => Verdict::ZeroConstantTerm,
        POrder::Finite(o) => Verdict::from_bool(o == want),
    };
    ClauseVerdict::new(id, predicted, verdict)
}

// Zero is divisible by everything, so only the exact-order clauses flag it.
fn divisible(id: &str, c0: &Rational, p: u64, want: i64) -> ClauseVerdict {
    let predicted = format!("ord{p}>={want}");
    let mut v = ClauseVerdict::new(id, predicted, Verdict::from_bool(ord(c0, p).at_least(want)));
    if c0.is_zero() {
        v.note = Some("c0=0".to_string());
    }
    v
}

/// `c0 = sign * 3^g mod 3^{g+1}`.
fn signed_power(id: &str, c0: &Rational, g: u64, sign: i64) -> ClauseVerdict {
    let m = ipow(3, g as u32 + 1);
    let target = ipow(3, g as u32) * sign;
    let predicted = format!("c0={} mod {}", target, m);
    let verdict = if c0.is_zero() {
        Verdict::ZeroConstantTerm
    } else {
        // undefined when 3 divides the denominator; that already breaks ord3 = g
        Verdict::from_bool(congruent(c0, &target, &m) == Some(true))
    };
    ClauseVerdict::new(id, predicted, verdict)
}

/// Clause `a` or `b`; `None` for odd weight.
pub fn two_adic_clause(prefix: char, w: i64, s: u64, c0: &Rational) -> Option<ClauseVerdict> {
    let (beta, _, _) = pole_digits(s);
    match modulo(w, 4) {
        0 => Some(exact_order(&format!("{prefix}a"), c0, 2, 3 * beta as i64)),
        2 => Some(divisible(&format!("{prefix}b"), c0, 2, 4 * beta as i64)),
        _ => None,
    }
}

/// Clauses `c` through `f`.
pub fn three_adic_clause(prefix: char, w: i64, s: u64, c0: &Rational) -> ClauseVerdict {
    let (_, gamma, l) = pole_digits(s);
    match (modulo(w, 3), l) {
        (0, _) => {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            signed_power(&format!("{prefix}c"), c0, gamma, sign)
        }
        (1, 1) => signed_power(&format!("{prefix}d"), c0, gamma, 1),
        (1, _) => divisible(&format!("{prefix}e"), c0, 3, gamma as i64 + 1),
        _ => divisible(&format!("{prefix}f"), c0, 3, gamma as i64 + 1),
    }
}

pub fn classify_conductor1(w: i64, s: u64, c0: &Rational) -> Vec<ClauseVerdict> {
    two_adic_clause('1', w, s, c0).into_iter().chain([three_adic_clause('1', w, s, c0)]).collect()
}

pub fn classify_conductor2(w: i64, s: u64, c0: &Rational) -> Vec<ClauseVerdict> {
    two_adic_clause('2', w, s, c0).into_iter().collect()
}

pub fn classify_conductor3(w: i64, s: u64, c0: &Rational) -> Vec<ClauseVerdict> {
    vec![three_adic_clause('3', w, s, c0)]
}

/// The deviation rule for `E_{N,inf,k}^{-a}`, or `None` outside every window.
pub fn deviation_rules(level: u32, k: u32, a: u64, c0: &Rational) -> Option<ClauseVerdict> {
    if a == 0 {
        return None;
    }
    let d2 = digit_sum(a, 2).expect("a >= 1");
    let d3 = digit_sum(a, 3).expect("a >= 1");
    let ord_next = |p: u64| ord_p_u64(a + 1, p).finite().expect("a + 1 > 0");
    match level {
        2 if k % 4 == 0 && (8..=24).contains(&k) && a % 2 == 1 => {
            let want = 3 * d2 as i64 + ord_next(2) + k as i64 - 5;
            Some(exact_order("dev1", c0, 2, want))
        }
        3 if k % 6 == 0 && (12..=24).contains(&k) && a % 3 == 1 => {
            let sign = if a % 2 == 1 { 1 } else { -1 };
            Some(signed_power("dev2", c0, d3, sign))
        }
        3 if k % 6 == 0 && (12..=24).contains(&k) && a % 3 == 2 => {
            let want = d3 as i64 + ord_next(3);
            let mut v = exact_order("dev3", c0, 3, want);
            if let POrder::Finite(o) = ord(c0, 3) {
                let u = unit_part(c0, 3, o);
                let r = residue(&u, &3.into());
                v.note = Some(match r {
                    Some(r) if r.is_one() => "sign=+".to_string(),
                    Some(_) => "sign=-".to_string(),
                    None => "sign=?".to_string(),
                });
            }
            Some(v)
        }
        3 if k % 6 == 2
            && (8..=20).contains(&k)
            && a % 3 == 1
            && largest_digit(a, 3).expect("a >= 1") == 1 =>
        {
            Some(signed_power("dev4", c0, d3, -1))
        }
        _ => None,
    }
}
