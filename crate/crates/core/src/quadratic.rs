//! Even positive-definite quadratic forms `Q_A(x) = x^T A x`: validation,
//! level, theta series by exact enumeration, and the minimum represented.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{int, Integer, Rational};
use crate::congruence::Verdict;
use crate::error::{Error, Result};
use crate::forms::e_gamma2;
use crate::series::QSeries;

/// Largest rank accepted without raising the cap.
pub const DEFAULT_MAX_RANK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GramMatrix {
    v: usize,
    a: Vec<Vec<i64>>,
}

/// Leading principal minors by fraction-free elimination.
pub fn leading_minors(a: &[Vec<i64>]) -> Vec<Integer> {
    let n = a.len();
    let mut m: Vec<Vec<Integer>> = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = Integer::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            // later minors are not produced by elimination without pivoting
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &pivot - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = pivot;
    }
    minors
}

impl GramMatrix {
    /// Checks symmetry, even diagonal and positive definiteness.
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let v = a.len();
        if v == 0 {
            return Err(Error::Gram("empty matrix".into()));
        }
        if let Some(i) = a.iter().position(|r| r.len() != v) {
            return Err(Error::Gram(format!("row {} has {} entries, expected {v}", i + 1, a[i].len())));
        }
        for i in 0..v {
            for j in 0..i {
                if a[i][j] != a[j][i] {
                    return Err(Error::Gram(format!("not symmetric: A[{i}][{j}] = {} but A[{j}][{i}] = {}", a[i][j], a[j][i])));
                }
            }
        }
        if let Some(i) = (0..v).find(|&i| a[i][i] % 2 != 0) {
            return Err(Error::Gram(format!("odd diagonal entry A[{i}][{i}] = {}", a[i][i])));
        }
        let minors = leading_minors(&a);
        if let Some(k) = minors.iter().position(|m| !m.is_positive()) {
            return Err(Error::Gram(format!(
                "not positive definite: leading minor of order {} is {}",
                k + 1,
                minors[k]
            )));
        }
        Ok(GramMatrix { v, a })
    }

    pub fn rank(&self) -> usize {
        self.v
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn determinant(&self) -> Integer {
        leading_minors(&self.a).pop().expect("nonempty")
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.v {
            if x[i] == 0 {
                continue;
            }
            let row: i64 = (0..self.v).map(|j| self.a[i][j] * x[j]).sum();
            s += x[i] * row;
        }
        s
    }

    /// `A^{-1}` over the rationals.
    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        let n = self.v;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self.a[i].iter().map(|&x| BigRational::from_integer(int(x))).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            // positive definite, so diagonal pivots never vanish
            let p = m[c][c].clone();
            for x in m[c].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in 0..2 * n {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        m.into_iter().map(|r| r[n..].to_vec()).collect()
    }

    /// Least `N > 0` with `N A^{-1}` integral with even diagonal.
    pub fn level(&self) -> u64 {
        let inv = self.inverse();
        let mut n = BigInt::one();
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let d = x.denom();
                let need = if i == j {
                    // N x even
                    BigInt::from(2) * d / x.numer().gcd(&BigInt::from(2))
                } else {
                    d.clone()
                };
                n = n.lcm(&need);
            }
        }
        n.to_u64().expect("level fits in u64")
    }

    /// `Q_A` on `Z^v x Z^w` as a block-diagonal matrix.
    pub fn direct_sum(&self, other: &GramMatrix) -> GramMatrix {
        let v = self.v + other.v;
        let mut a = vec![vec![0; v]; v];
        for i in 0..self.v {
            a[i][..self.v].copy_from_slice(&self.a[i]);
        }
        for i in 0..other.v {
            a[self.v + i][self.v..].copy_from_slice(&other.a[i]);
        }
        GramMatrix { v, a }
    }

    pub fn power(&self, k: usize) -> Result<GramMatrix> {
        if k == 0 {
            return Err(Error::NonPositive { what: "direct sum count", value: 0 });
        }
        Ok((1..k).fold(self.clone(), |acc, _| acc.direct_sum(self)))
    }

    pub fn scaled(&self, c: i64) -> Result<GramMatrix> {
        GramMatrix::new(self.a.iter().map(|r| r.iter().map(|&x| c * x).collect()).collect())
    }

    /// Text format: the rank, then one row per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<GramMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or_else(|| Error::Gram("empty file".into()))?;
        let v: usize = first
            .parse()
            .map_err(|_| Error::Gram(format!("line {ln}: expected the rank, got {first:?}")))?;
        if v == 0 {
            return Err(Error::Gram(format!("line {ln}: rank must be positive")));
        }
        let mut rows = Vec::with_capacity(v);
        for (ln, line) in lines {
            if rows.len() == v {
                return Err(Error::Gram(format!("line {ln}: more than {v} rows")));
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Gram(format!("line {ln}: not an integer: {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != v {
                return Err(Error::Gram(format!("line {ln}: expected {v} entries, got {}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() < v {
            return Err(Error::Gram(format!("expected {v} rows, got {}", rows.len())));
        }
        GramMatrix::new(rows)
    }

    pub fn load(path: &Path) -> Result<GramMatrix> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Gram(format!("{}: {e}", path.display())))?;
        GramMatrix::parse(&text).map_err(|e| match e {
            Error::Gram(m) => Error::Gram(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.v)?;
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The root lattice `D_4`, level 2.
pub fn d4() -> GramMatrix {
    GramMatrix::new(vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]]).expect("valid")
}

/// The root lattice `E_8`, even unimodular.
pub fn e8() -> GramMatrix {
    let mut a = vec![vec![0; 8]; 8];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // chain 0-1-2-3-4-5-6, node 7 attached to node 2
    for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    GramMatrix::new(a).expect("valid")
}

/// `Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`, in floating point. The
/// search only prunes with slack; callers filter leaves with the exact value.
struct Completion {
    q: Vec<Vec<f64>>,
    slack: f64,
}

impl Completion {
    fn new(g: &GramMatrix, bound: i64) -> Self {
        let v = g.v;
        let mut q: Vec<Vec<f64>> = g.a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..v {
            for j in i + 1..v {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..v {
                for l in k..v {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        Completion { q, slack: 1e-6 * (1.0 + bound as f64) }
    }

    fn center(&self, i: usize, x: &[i64]) -> f64 {
        (i + 1..self.q.len()).map(|j| self.q[i][j] * x[j] as f64).sum()
    }

    /// Integers `t` with `q_ii (t + c)^2 <= rem` up to the slack, with the used amount.
    fn candidates(&self, i: usize, c: f64, rem: f64) -> impl Iterator<Item = (i64, f64)> + '_ {
        let qii = self.q[i][i];
        let s = (rem.max(0.0) / qii).sqrt();
        let lo = (-c - s).floor() as i64 - 1;
        let hi = (-c + s).ceil() as i64 + 1;
        let limit = rem + self.slack;
        (lo..=hi).filter_map(move |t| {
            let y = t as f64 + c;
            let used = qii * y * y;
            (used <= limit).then_some((t, used))
        })
    }

    /// Calls `visit` on every `x` with `Q(x) <= bound`, with `x[top]` fixed,
    /// plus possibly a few just above it.
    fn walk<F: FnMut(&[i64])>(&self, i: usize, x: &mut Vec<i64>, rem: f64, visit: &mut F) {
        let c = self.center(i, x);
        for (t, used) in self.candidates(i, c, rem) {
            x[i] = t;
            if i == 0 {
                visit(x);
            } else {
                self.walk(i - 1, x, rem - used, visit);
            }
        }
        x[i] = 0;
    }
}

/// Calls `visit` on every `x` with `Q_A(x) <= bound`, in parallel over the
/// last coordinate. Each worker gets its own state from `init`.
fn enumerate<S: Send, I, F>(g: &GramMatrix, bound: i64, init: I, visit: F) -> Vec<S>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &[i64], i64) + Sync,
{
    let comp = Completion::new(g, bound);
    let v = g.v;
    let top = v - 1;
    let total = bound as f64;
    let outer: Vec<(i64, f64)> = comp.candidates(top, 0.0, total).collect();
    outer
        .into_par_iter()
        .map(|(t, used)| {
            let mut state = init();
            let mut x = vec![0; v];
            x[top] = t;
            let mut at_leaf = |y: &[i64]| {
                let q = g.value(y);
                if q <= bound {
                    visit(&mut state, y, q);
                }
            };
            if top == 0 {
                at_leaf(&x);
            } else {
                comp.walk(top - 1, &mut x, total - used, &mut at_leaf);
            }
            state
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaSeries {
    /// Entry `n` counts `x` with `Q_A(x) = 2n`.
    pub coefficients: Vec<u64>,
}

impl ThetaSeries {
    pub fn to_series(&self) -> QSeries {
        QSeries::from_integers(0, self.coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Number of lattice points with `Q_A(x) <= 2 n_max`.
    pub fn ball_count(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

/// `#Q_A^{-1}(2n)` for `0 <= n <= n_max`.
pub fn theta(g: &GramMatrix, n_max: usize) -> ThetaSeries {
    let len = n_max + 1;
    let parts = enumerate(
        g,
        2 * n_max as i64,
        || vec![0u64; len],
        |counts, _, q| counts[(q / 2) as usize] += 1,
    );
    let mut coefficients = vec![0u64; len];
    for p in parts {
        for (c, x) in coefficients.iter_mut().zip(p) {
            *c += x;
        }
    }
    ThetaSeries { coefficients }
}

/// Least positive value of `Q_A`.
pub fn min_represented(g: &GramMatrix) -> i64 {
    // every diagonal entry is a value of Q_A
    let bound = (0..g.v).map(|i| g.a[i][i]).min().expect("nonempty");
    enumerate(g, bound, || i64::MAX, |m, _, q| {
        if q > 0 && q < *m {
            *m = q;
        }
    })
    .into_iter()
    .min()
    .expect("at least one worker")
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimumCheck {
    pub rank: usize,
    pub level: u64,
    pub min: i64,
    /// `2 + v/4` when `8 | v`, `2 + v/2` when `v = 4 mod 8`.
    pub bound: i64,
    pub verdict: Verdict,
}

pub fn minimum_bound(v: usize) -> Result<i64> {
    match v % 8 {
        0 => Ok(2 + v as i64 / 4),
        4 => Ok(2 + v as i64 / 2),
        _ => Err(Error::Precondition(format!("rank must be divisible by 4, got {v}"))),
    }
}

/// Why the minimum bound does not apply to `g`, or `None` if it does.
pub fn level_note(g: &GramMatrix) -> Option<String> {
    let level = g.level();
    if g.v % 4 != 0 {
        Some(format!("bound needs 4 | v, got v={}", g.v))
    } else if level > 2 {
        Some(format!("bound needs level 1 or 2, got level {level}"))
    } else {
        None
    }
}

/// The minimum of a level one or two form against its bound.
pub fn verify_theorem51(g: &GramMatrix) -> Result<MinimumCheck> {
    let bound = minimum_bound(g.v)?;
    let level = g.level();
    if level > 2 {
        return Err(Error::Precondition(format!("level must be 1 or 2, got {level}")));
    }
    let min = min_represented(g);
    let verdict = if min <= bound { Verdict::Pass } else { Verdict::Fail };
    Ok(MinimumCheck { rank: g.v, level, min, bound, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Theta of `D_4` against `E_{gamma,2}`, the direct-sum convolution, the
/// minimum bound on `D_4^k` and `E_8`-based forms, and `level(D_4) = 2`.
pub fn quadratic_suite(theta_terms: usize) -> Result<Vec<QuadraticCheck>> {
    let mut out = Vec::new();
    let d = d4();
    let th = theta(&d, theta_terms.saturating_sub(1));
    let eg = e_gamma2(theta_terms)?;
    out.push(QuadraticCheck {
        name: "theta(D4) = Egamma2".into(),
        pass: th.to_series() == eg,
        detail: format!("{theta_terms} terms"),
    });
    let conv_terms = 12;
    let dd = d.direct_sum(&d);
    let lhs = theta(&dd, conv_terms - 1).to_series();
    let single = theta(&d, conv_terms - 1).to_series();
    out.push(QuadraticCheck {
        name: "theta(D4+D4) = theta(D4)^2".into(),
        pass: lhs == single.mul(&single),
        detail: format!("{conv_terms} terms"),
    });
    let level = d.level();
    out.push(QuadraticCheck { name: "level(D4) = 2".into(), pass: level == 2, detail: format!("level {level}") });
    let e = e8();
    let mut forms: Vec<(String, GramMatrix)> = (1..=4).map(|k| (format!("D4^{k}"), d.power(k).expect("k >= 1"))).collect();
    forms.push(("E8".into(), e.clone()));
    forms.push(("E8+D4".into(), e.direct_sum(&d)));
    for (name, g) in forms {
        let c = verify_theorem51(&g)?;
        out.push(QuadraticCheck {
            name: format!("minimum bound {name}"),
            pass: c.verdict == Verdict::Pass,
            detail: format!("v={} level={} min={} bound={}", c.rank, c.level, c.min, c.bound),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, sigma_odd};
    use proptest::prelude::*;

    /// Counts by scanning a box, with coordinate bounds from a float inverse.
    fn naive_theta(a: &[Vec<i64>], n_max: usize) -> Vec<u64> {
        let v = a.len();
        let mut m: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let mut inv = vec![vec![0.0; v]; v];
        for (i, row) in inv.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for c in 0..v {
            let p = m[c][c];
            for k in 0..v {
                m[c][k] /= p;
                inv[c][k] /= p;
            }
            for r in 0..v {
                if r != c {
                    let f = m[r][c];
                    for k in 0..v {
                        m[r][k] -= f * m[c][k];
                        inv[r][k] -= f * inv[c][k];
                    }
                }
            }
        }
        let b = 2.0 * n_max as f64;
        let half: Vec<i64> = (0..v).map(|i| (b * inv[i][i]).sqrt().ceil() as i64 + 1).collect();
        let mut counts = vec![0u64; n_max + 1];
        let mut x: Vec<i64> = half.iter().map(|h| -h).collect();
        loop {
            let q: i64 = (0..v).map(|i| (0..v).map(|j| x[i] * a[i][j] * x[j]).sum::<i64>()).sum();
            if q <= 2 * n_max as i64 {
                counts[(q / 2) as usize] += 1;
            }
            let mut i = 0;
            loop {
                if i == v {
                    return counts;
                }
                x[i] += 1;
                if x[i] > half[i] {
                    x[i] = -half[i];
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn validation() {
        assert_eq!(leading_minors(d4().entries()), [int(2), int(3), int(4), int(4)]);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(GramMatrix::new(id), Err(Error::Gram(m)) if m.contains("odd diagonal")));
        let indefinite = vec![vec![2, 3], vec![3, 2]];
        assert!(matches!(GramMatrix::new(indefinite), Err(Error::Gram(m)) if m.contains("-5")));
        assert!(GramMatrix::new(vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(GramMatrix::new(vec![vec![-2]]).is_err());
        assert!(GramMatrix::new(vec![]).is_err());
        assert_eq!(e8().determinant(), int(1));
    }

    #[test]
    fn levels() {
        assert_eq!(d4().level(), 2);
        assert_eq!(e8().level(), 1);
        assert_eq!(e8().direct_sum(&d4()).level(), 2);
        // A2 has det 3 and level 3
        assert_eq!(GramMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap().level(), 3);
        assert_eq!(GramMatrix::new(vec![vec![2]]).unwrap().level(), 4);
        assert_eq!(d4().scaled(2).unwrap().level(), 4);
    }

    #[test]
    fn inverse_is_exact() {
        let g = d4();
        let inv = g.inverse();
        for i in 0..4 {
            for j in 0..4 {
                let s: Rational = (0..4).map(|k| rat(g.entries()[i][k]) * &inv[k][j]).sum();
                assert_eq!(s, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn theta_d4_is_egamma2() {
        let th = theta(&d4(), 50);
        assert_eq!(th.coefficients[..4], [1, 24, 24, 96]);
        for n in 1..=50u64 {
            assert_eq!(BigInt::from(th.coefficients[n as usize]), sigma_odd(n).unwrap() * 24, "n={n}");
        }
        assert_eq!(th.to_series(), e_gamma2(51).unwrap());
    }

    #[test]
    fn theta_of_direct_sum_is_a_product() {
        let d = d4();
        let a2 = GramMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        for (x, y) in [(&d, &d), (&d, &a2), (&a2, &a2)] {
            let s = theta(&x.direct_sum(y), 8).to_series();
            assert_eq!(s, theta(x, 8).to_series().mul(&theta(y, 8).to_series()));
        }
    }

    #[test]
    fn e8_has_240_roots() {
        assert_eq!(theta(&e8(), 2).coefficients, [1, 240, 2160]);
    }

    #[test]
    fn minima() {
        assert_eq!(min_represented(&d4()), 2);
        assert_eq!(min_represented(&e8()), 2);
        assert_eq!(min_represented(&d4().scaled(2).unwrap()), 4);
        // x^2 + xy + y^2 scaled: values 2(x^2 + xy + y^2) and 6 ...
        let g = GramMatrix::new(vec![vec![6, 3], vec![3, 6]]).unwrap();
        assert_eq!(min_represented(&g), 6);
    }

    #[test]
    fn minimum_bound_examples() {
        let c = verify_theorem51(&d4()).unwrap();
        assert_eq!((c.min, c.bound, c.verdict), (2, 4, Verdict::Pass));
        let c = verify_theorem51(&d4().power(2).unwrap()).unwrap();
        assert_eq!((c.min, c.bound, c.verdict), (2, 4, Verdict::Pass));
        let six = GramMatrix::new((0..6).map(|i| (0..6).map(|j| if i == j { 2 } else { 0 }).collect()).collect()).unwrap();
        assert!(verify_theorem51(&six).is_err());
        assert!(verify_theorem51(&d4().scaled(2).unwrap()).is_err());
    }

    #[test]
    fn suite_passes() {
        for c in quadratic_suite(50).unwrap() {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn gram_text_format() {
        let text = "# D4\n4\n2 -1 0 0\n-1 2 -1 -1  # middle node\n\n0 -1 2 0\n0 -1 0 2\n";
        assert_eq!(GramMatrix::parse(text).unwrap(), d4());
        assert_eq!(GramMatrix::parse(&d4().to_string()).unwrap(), d4());
        let err = |t: &str| match GramMatrix::parse(t) {
            Err(Error::Gram(m)) => m,
            other => panic!("{other:?}"),
        };
        assert!(err("").contains("empty"));
        assert!(err("x\n").starts_with("line 1"));
        assert!(err("2\n2 0\n0 2 1\n").starts_with("line 3"));
        assert!(err("2\n2 a\n").starts_with("line 2"));
        assert!(err("2\n2 0\n").contains("expected 2 rows"));
        assert!(err("1\n2\n2\n").starts_with("line 3"));
        assert!(err("2\n1 0\n0 2\n").contains("odd diagonal"));
    }

    fn small_gram() -> impl Strategy<Value = GramMatrix> {
        (1usize..=3, proptest::collection::vec(-1i64..=1, 9), proptest::collection::vec(1i64..=3, 3)).prop_filter_map(
            "positive definite",
            |(v, off, diag)| {
                let mut a = vec![vec![0; v]; v];
                for i in 0..v {
                    a[i][i] = 2 * diag[i];
                    for j in 0..i {
                        a[i][j] = off[3 * i + j];
                        a[j][i] = a[i][j];
                    }
                }
                GramMatrix::new(a).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig {
            cases: 64,
            rng_seed: proptest::test_runner::RngSeed::Fixed(0x7e7a),
            ..ProptestConfig::default()
        })]

        #[test]
        fn enumeration_matches_box_scan(g in small_gram(), n_max in 0usize..=5) {
            let th = theta(&g, n_max);
            prop_assert_eq!(th.coefficients[0], 1);
            prop_assert!(th.coefficients[1..].iter().all(|c| c % 2 == 0));
            prop_assert_eq!(th.coefficients.clone(), naive_theta(g.entries(), n_max));
        }

        #[test]
        fn minimum_matches_theta(g in small_gram()) {
            let m = min_represented(&g);
            let th = theta(&g, (m / 2) as usize);
            prop_assert!(th.coefficients[1..(m / 2) as usize].iter().all(|&c| c == 0));
            prop_assert!(th.coefficients[(m / 2) as usize] > 0);
        }

        #[test]
        fn level_of_direct_sum_is_lcm(g in small_gram(), h in small_gram()) {
            prop_assert_eq!(g.direct_sum(&h).level(), g.level().lcm(&h.level()));
        }
    }
}
