//! Batch surveys of constant terms over templated families of forms.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rules::{classify_conductor1, classify_conductor2, classify_conductor3, deviation_rules, pole_digits, ClauseVerdict, Verdict};
use crate::arith::{largest_digit, modulo, ord_p, POrder};
use crate::error::{Error, Result};
use crate::forms::{parse_expr, Catalog, FormExpr};

/// Inclusive range `[lo, hi]` or `[lo, hi, step]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ParamRange {
    pub lo: i64,
    pub hi: i64,
    pub step: i64,
}

impl TryFrom<Vec<i64>> for ParamRange {
    type Error = String;

    fn try_from(v: Vec<i64>) -> std::result::Result<Self, String> {
        let (lo, hi, step) = match v.as_slice() {
            [lo, hi] => (*lo, *hi, 1),
            [lo, hi, step] => (*lo, *hi, *step),
            _ => return Err(format!("range must be [lo, hi] or [lo, hi, step], got {v:?}")),
        };
        if step <= 0 {
            return Err(format!("range step must be positive, got {step}"));
        }
        Ok(ParamRange { lo, hi, step })
    }
}

impl From<ParamRange> for Vec<i64> {
    fn from(r: ParamRange) -> Self {
        if r.step == 1 {
            vec![r.lo, r.hi]
        } else {
            vec![r.lo, r.hi, r.step]
        }
    }
}

impl ParamRange {
    fn values(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..=self.hi).step_by(self.step as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub name: String,
    /// Form expression with placeholders such as `{a}`, `{2a}`, `{a+1}`.
    pub template: String,
    pub ranges: BTreeMap<String, ParamRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_ranges: Option<BTreeMap<String, ParamRange>>,
    /// Conditions such as `a odd`, `a mod 3 = 1`, `a mod 3 in 0,2`, `L(a) = 1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filters: Vec<String>,
    /// Records are measured and reported but never fail the survey.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub experimental: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default)]
    pub families: Vec<Family>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("rules1", include_str!("../../configs/rules1.json")),
    ("rules2", include_str!("../../configs/rules2.json")),
    ("rules3", include_str!("../../configs/rules3.json")),
    ("deviations", include_str!("../../configs/deviations.json")),
];

impl SurveyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SurveyConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("line {} column {}: {e}", e.line(), e.column())))?;
        for fam in &cfg.families {
            fam.compile()?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// One of the bundled configs: `rules1`, `rules2`, `rules3`, `deviations`.
    pub fn builtin(name: &str) -> Option<Self> {
        let name = name.strip_suffix(".json").unwrap_or(name);
        BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| Self::from_json(text).expect("bundled config is valid"))
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTIN.iter().map(|(n, _)| *n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Filter {
    Odd(String),
    Even(String),
    ModIn(String, i64, Vec<i64>),
    LargestDigit3(String, u64),
    AtMost(String, String),
}

impl Filter {
    fn parse(text: &str) -> std::result::Result<Self, String> {
        let t: Vec<&str> = text.split_whitespace().collect();
        let num = |s: &str| s.parse::<i64>().map_err(|_| format!("filter '{text}': bad integer '{s}'"));
        match t.as_slice() {
            [v, "odd"] => Ok(Filter::Odd(v.to_string())),
            [v, "even"] => Ok(Filter::Even(v.to_string())),
            [v, "mod", m, "=", r] => Ok(Filter::ModIn(v.to_string(), num(m)?, vec![num(r)?])),
            [v, "mod", m, "in", rest @ ..] if !rest.is_empty() => {
                let rs = rest.join("").split(',').map(num).collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Filter::ModIn(v.to_string(), num(m)?, rs))
            }
            [x, "<=", y] if y.chars().all(|c| c.is_ascii_alphabetic()) => Ok(Filter::AtMost(x.to_string(), y.to_string())),
            [l, "=", x] if l.starts_with("L(") && l.ends_with(')') => {
                let x = num(x)?;
                Ok(Filter::LargestDigit3(l[2..l.len() - 1].to_string(), x as u64))
            }
            _ => Err(format!(
                "unrecognized filter '{text}' (expected 'a odd', 'a even', 'a mod m = r', 'a mod m in r1,r2', 'L(a) = x' or 'a <= b')"
            )),
        }
        .and_then(|f| match &f {
            Filter::ModIn(_, m, _) if *m <= 0 => Err(format!("filter '{text}': modulus must be positive")),
            _ => Ok(f),
        })
    }

    fn vars(&self) -> Vec<&str> {
        match self {
            Filter::Odd(v) | Filter::Even(v) | Filter::ModIn(v, _, _) | Filter::LargestDigit3(v, _) => vec![v],
            Filter::AtMost(a, b) => vec![a, b],
        }
    }

    fn accepts(&self, params: &BTreeMap<String, i64>) -> bool {
        let x = params[self.vars()[0]];
        match self {
            Filter::AtMost(_, b) => x <= params[b],
            Filter::Odd(_) => modulo(x, 2) == 1,
            Filter::Even(_) => modulo(x, 2) == 0,
            Filter::ModIn(_, m, rs) => rs.iter().any(|r| modulo(x, *m) == modulo(*r, *m)),
            Filter::LargestDigit3(_, d) => x >= 1 && largest_digit(x as u64, 3).ok() == Some(*d),
        }
    }
}

/// A placeholder body: a sum of terms `c`, `v`, `c v` or `c*v`.
fn eval_placeholder(body: &str, params: &BTreeMap<String, i64>) -> std::result::Result<i64, String> {
    let s: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty placeholder".into());
    }
    let mut total = 0i64;
    let mut rest = s.as_str();
    let mut sign = 1;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        let (coef, var) = term.split_at(digits);
        let var = var.strip_prefix('*').unwrap_or(var);
        let coef = if coef.is_empty() { 1 } else { coef.parse::<i64>().map_err(|e| e.to_string())? };
        let value = if var.is_empty() {
            if digits == 0 {
                return Err(format!("bad placeholder term in '{{{body}}}'"));
            }
            coef
        } else {
            let v = params.get(var).ok_or_else(|| format!("unknown parameter '{var}' in '{{{body}}}'"))?;
            coef * v
        };
        total += sign * value;
        if end == rest.len() {
            break;
        }
        sign = if &rest[end..=end] == "-" { -1 } else { 1 };
        rest = &rest[end + 1..];
    }
    Ok(total)
}

fn substitute(template: &str, params: &BTreeMap<String, i64>) -> std::result::Result<String, String> {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..].find('}').ok_or("unclosed '{' in template")? + open;
        out.push_str(&eval_placeholder(&rest[open + 1..close], params)?.to_string());
        rest = &rest[close + 1..];
    }
    if rest.contains('}') {
        return Err("unmatched '}' in template".into());
    }
    out.push_str(rest);
    Ok(out)
}

struct CompiledFamily<'a> {
    family: &'a Family,
    filters: Vec<Filter>,
}

impl Family {
    fn compile(&self) -> Result<CompiledFamily<'_>> {
        let err = |m: String| Error::Config(format!("family '{}': {m}", self.name));
        let filters = self.filters.iter().map(|f| Filter::parse(f).map_err(err)).collect::<Result<Vec<_>>>()?;
        for v in filters.iter().flat_map(Filter::vars) {
            if !self.ranges.contains_key(v) {
                return Err(err(format!("filter on unknown parameter '{v}'")));
            }
        }
        if let Some(full) = &self.full_ranges {
            if full.keys().ne(self.ranges.keys()) {
                return Err(err("full_ranges must name the same parameters as ranges".into()));
            }
        }
        // Check the template once with every parameter at its lower bound.
        let probe: BTreeMap<String, i64> = self.ranges.iter().map(|(k, r)| (k.clone(), r.lo)).collect();
        substitute(&self.template, &probe).map_err(err)?;
        Ok(CompiledFamily { family: self, filters })
    }
}

impl CompiledFamily<'_> {
    fn instances(&self, full: bool) -> Result<Vec<Instance>> {
        let fam = self.family;
        let ranges = match (&fam.full_ranges, full) {
            (Some(f), true) => f,
            _ => &fam.ranges,
        };
        let mut assignments: Vec<BTreeMap<String, i64>> = vec![BTreeMap::new()];
        for (var, range) in ranges {
            assignments = assignments
                .into_iter()
                .flat_map(|a| {
                    range.values().map(move |x| {
                        let mut b = a.clone();
                        b.insert(var.clone(), x);
                        b
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for params in assignments {
            if !self.filters.iter().all(|f| f.accepts(&params)) {
                continue;
            }
            let text = substitute(&fam.template, &params)
                .map_err(|m| Error::Config(format!("family '{}': {m}", fam.name)))?;
            let expr = parse_expr(&text)
                .map_err(|e| Error::Config(format!("family '{}' (template '{}'): {e}", fam.name, fam.template)))?;
            out.push(Instance { family: fam.name.clone(), template: fam.template.clone(), experimental: fam.experimental, params, expr });
        }
        Ok(out)
    }
}

struct Instance {
    family: String,
    template: String,
    experimental: bool,
    params: BTreeMap<String, i64>,
    expr: FormExpr,
}

/// One classified form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub family: String,
    pub template: String,
    pub params: BTreeMap<String, i64>,
    pub expr: String,
    pub conductor: u32,
    pub weight: i64,
    pub pole_order: i64,
    #[serde(serialize_with = "ser_rational")]
    pub c0: crate::arith::Rational,
    pub beta: Option<u64>,
    pub gamma: Option<u64>,
    #[serde(rename = "L")]
    pub largest_digit: Option<u64>,
    pub observed_ord2: POrder,
    pub observed_ord3: POrder,
    pub verdicts: Vec<ClauseVerdict>,
    pub verdict: Verdict,
}

fn ser_rational<S: serde::Serializer>(x: &crate::arith::Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Classifies one form: the deviation rule when the form sits in one of its
/// windows, otherwise the rule of its conductor.
pub fn classify(expr: &FormExpr, c0: &crate::arith::Rational) -> (Vec<ClauseVerdict>, Verdict) {
    let s = expr.pole_order();
    if s < 1 {
        return (Vec::new(), Verdict::NotApplicable);
    }
    let s = s as u64;
    let w = expr.weight();
    let deviation = expr.as_en_inf_negative_power().and_then(|(n, k, a)| deviation_rules(n, k, a, c0));
    let verdicts = match (deviation, expr.conductor()) {
        (Some(d), _) => vec![d],
        (None, 1) => classify_conductor1(w, s, c0),
        (None, 2) => classify_conductor2(w, s, c0),
        (None, 3) => classify_conductor3(w, s, c0),
        _ => Vec::new(),
    };
    let overall = if let Some(f) = verdicts.iter().find(|v| v.verdict.is_failure()) {
        f.verdict
    } else if verdicts.iter().any(|v| v.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::NotApplicable
    };
    (verdicts, overall)
}

/// Computes and classifies the constant term of one expression.
pub fn survey_record(catalog: &Catalog, expr: &FormExpr) -> Result<SurveyRecord> {
    let c0 = catalog.constant_term(expr)?;
    let s = expr.pole_order();
    let (beta, gamma, l) = if s >= 1 {
        let (b, g, l) = pole_digits(s as u64);
        (Some(b), Some(g), Some(l))
    } else {
        (None, None, None)
    };
    let (verdicts, verdict) = classify(expr, &c0);
    Ok(SurveyRecord {
        family: String::new(),
        template: expr.to_string(),
        params: BTreeMap::new(),
        expr: expr.to_string(),
        conductor: expr.conductor(),
        weight: expr.weight(),
        pole_order: s,
        observed_ord2: ord_p(&c0, 2)?,
        observed_ord3: ord_p(&c0, 3)?,
        c0,
        beta,
        gamma,
        largest_digit: l,
        verdicts,
        verdict,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub zero_constant_term: usize,
    pub not_applicable: usize,
    pub experimental: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::ZeroConstantTerm => self.zero_constant_term += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
            Verdict::Experimental => self.experimental += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub overall: Counts,
    pub per_rule: BTreeMap<String, Counts>,
}

impl Summary {
    pub fn from_records(records: &[SurveyRecord]) -> Self {
        let mut s = Summary { total: records.len(), ..Default::default() };
        for r in records {
            s.overall.add(r.verdict);
            for v in &r.verdicts {
                s.per_rule.entry(v.rule_id.clone()).or_default().add(v.verdict);
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub config: SurveyConfig,
    pub full: bool,
    pub records: Vec<SurveyRecord>,
    pub summary: Summary,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl SurveyReport {
    pub fn failures(&self) -> impl Iterator<Item = &SurveyRecord> {
        self.records.iter().filter(|r| r.verdict.is_failure())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// One JSON object per record, then a summary object carrying the counts,
    /// the config echo and the timestamp.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        let tail = serde_json::json!({
            "summary": self.summary,
            "config": self.config,
            "full": self.full,
            "timestamp": self.timestamp,
        });
        out.push_str(&tail.to_string());
        out.push('\n');
        out
    }

    pub fn render_table(&self) -> String {
        let abbreviate = |s: String| {
            if s.len() > 24 {
                format!("{}..{} ({} digits)", &s[..8], &s[s.len() - 4..], s.trim_start_matches('-').len())
            } else {
                s
            }
        };
        let rows: Vec<[String; 8]> = self
            .records
            .iter()
            .map(|r| {
                let clauses = r
                    .verdicts
                    .iter()
                    .map(|v| match &v.note {
                        Some(n) => format!("{}:{} [{}] {n}", v.rule_id, v.verdict, v.predicted),
                        None => format!("{}:{} [{}]", v.rule_id, v.verdict, v.predicted),
                    })
                    .collect::<Vec<_>>()
                    .join("  ");
                [
                    r.expr.clone(),
                    r.conductor.to_string(),
                    r.weight.to_string(),
                    r.pole_order.to_string(),
                    abbreviate(r.c0.to_string()),
                    r.observed_ord2.to_string(),
                    r.observed_ord3.to_string(),
                    format!("{}  {clauses}", r.verdict),
                ]
            })
            .collect();
        let header = ["expr", "N", "w", "s", "c0", "ord2", "ord3", "verdict"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let mut line = String::new();
            for (i, (cell, w)) in row.iter().zip(widths).enumerate() {
                if i + 1 == row.len() {
                    line.push_str(cell);
                } else if (1..=6).contains(&i) {
                    let _ = write!(line, "{cell:>w$}  ");
                } else {
                    let _ = write!(line, "{cell:<w$}  ");
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let o = &self.summary.overall;
        let _ = writeln!(
            out,
            "{} records: {} pass, {} fail, {} zero constant term, {} not applicable, {} experimental",
            self.summary.total, o.pass, o.fail, o.zero_constant_term, o.not_applicable, o.experimental
        );
        out
    }
}

/// Instantiates every family, classifies each form in parallel and sorts the
/// records by template, then parameters.
pub fn run_survey(config: &SurveyConfig, full: bool) -> Result<SurveyReport> {
    run_survey_with(config, full, &Catalog::new())
}

pub fn run_survey_with(config: &SurveyConfig, full: bool, catalog: &Catalog) -> Result<SurveyReport> {
    let mut instances = Vec::new();
    for fam in &config.families {
        instances.extend(fam.compile()?.instances(full)?);
    }
    let mut records = instances
        .into_par_iter()
        .map(|inst| {
            let mut rec = survey_record(catalog, &inst.expr)?;
            rec.family = inst.family;
            rec.template = inst.template;
            rec.params = inst.params;
            if inst.experimental && !rec.verdicts.is_empty() {
                rec.verdict = Verdict::Experimental;
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| (&a.template, &a.params, &a.family).cmp(&(&b.template, &b.params, &b.family)));
    let summary = Summary::from_records(&records);
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(SurveyReport { config: config.clone(), full, records, summary, timestamp })
}
