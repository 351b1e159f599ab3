mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qgap::congruence::survey::survey_record;
use qgap::defaults::{scale, Scale};
use qgap::quadratic::{level_note, min_represented, theta, verify_theorem51, DEFAULT_MAX_RANK};
use qgap::siegel::gap_suite_at;
use qgap::{parse_expr, Catalog, Error, GramMatrix, SurveyConfig, Verdict};
use serde_json::json;

/// Exact q-expansions, constant-term congruences, gap bounds and lattice
/// minima for modular forms of level 1 to 3.
#[derive(Parser, Debug)]
#[command(name = "qgap", version)]
struct Cli {
    /// Emit JSON lines instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, env = "QGAP_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Use the full ranges of the original computations instead of desk scale.
    #[arg(long, global = true)]
    full: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the q-expansion of a form expression.
    Expand {
        expr: String,
        /// Number of coefficients from the valuation.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
    },
    /// Constant terms and rule verdicts of form expressions.
    C0 {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Run a survey config (a path, or one of the built-in names).
    Survey { config: String },
    /// Gap bounds over bases and random combinations of M(level, h).
    Gap {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=2))]
        level: u32,
        /// Largest weight; defaults to the scale's value for the level.
        #[arg(long)]
        hmax: Option<i64>,
        /// Random combinations per weight.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Theta series coefficients of a Gram matrix file.
    Theta {
        gram: PathBuf,
        /// Number of coefficients, starting at q^0.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 50)]
        max_terms: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    /// Least positive value of a Gram matrix file against the minimum bound.
    Minima {
        gram: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
        max_rank: usize,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Satz,
    Gap,
    #[value(alias = "theorems4")]
    Theorems,
    Rules,
    #[value(alias = "sec33")]
    Coefficients,
    Quadratic,
    All,
}

/// What a command found.
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Invalid input, reported with exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Outcome, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("warning: could not set worker count: {e}");
        }
    }
    let sc = scale(cli.full);
    match run(&cli, &sc) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, sc: &Scale) -> CmdResult {
    match &cli.command {
        Command::Expand { expr, prec } => expand(expr, *prec as usize, cli.json),
        Command::C0 { exprs } => constant_terms(exprs, cli.json),
        Command::Survey { config } => survey(config, cli.full, cli.json),
        Command::Gap { level, hmax, random, seed } => {
            let mut sc = *sc;
            if let Some(r) = random {
                sc.gap_random = *r;
            }
            if let Some(s) = seed {
                sc.gap_seed = *s;
            }
            let h_max = hmax.unwrap_or(if *level == 1 { sc.h_max_level1 } else { sc.h_max_level2 });
            gap(*level, h_max, &sc, cli.json)
        }
        Command::Theta { gram, terms, max_terms, max_rank } => {
            let terms = terms.unwrap_or(sc.theta_terms);
            theta_cmd(gram, terms, *max_terms, *max_rank, cli.json)
        }
        Command::Minima { gram, max_rank } => minima(gram, *max_rank, cli.json),
        Command::Verify { suite } => {
            if cli.full && matches!(suite, Suite::Coefficients | Suite::All) {
                eprintln!(
                    "warning: --full runs the coefficient comparisons to n = {} and {}; this takes a long time",
                    sc.coefficient_n_max, sc.reciprocal_n_max
                );
            }
            suites::verify(*suite, sc, cli.json)
        }
    }
}

fn parse(src: &str) -> Result<qgap::FormExpr, InputError> {
    parse_expr(src).map_err(|e| match e {
        Error::Parse(p) => {
            let caret = " ".repeat(src[..p.position.min(src.len())].chars().count());
            InputError(format!("{p}\n  {src}\n  {caret}^"))
        }
        other => other.into(),
    })
}

fn expand(src: &str, prec: usize, as_json: bool) -> CmdResult {
    let expr = parse(src)?;
    let s = Catalog::new().eval(&expr, prec)?.truncate_len(prec);
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    if as_json {
        println!("{}", json!({"expr": expr.to_string(), "valuation": s.valuation(), "coefficients": coeffs}));
    } else {
        println!("val {}: [{}]", s.valuation(), coeffs.join(", "));
    }
    Ok(Outcome::Pass)
}

fn constant_terms(srcs: &[String], as_json: bool) -> CmdResult {
    let exprs = srcs.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
    let catalog = Catalog::new();
    let mut ok = true;
    for expr in &exprs {
        let rec = survey_record(&catalog, expr)?;
        ok &= !rec.verdict.is_failure();
        if as_json {
            println!("{}", serde_json::to_string(&rec).expect("record serializes"));
        } else {
            let clauses: Vec<String> =
                rec.verdicts.iter().map(|v| format!("{}:{} [{}]", v.rule_id, v.verdict, v.predicted)).collect();
            println!(
                "{}  c0={}  N={} w={} s={}  ord2={} ord3={}  {}  {}",
                rec.expr,
                rec.c0,
                rec.conductor,
                rec.weight,
                rec.pole_order,
                rec.observed_ord2,
                rec.observed_ord3,
                rec.verdict,
                clauses.join("  ")
            );
        }
    }
    Ok(Outcome::from_pass(ok))
}

fn load_config(name: &str) -> Result<SurveyConfig, InputError> {
    let path = PathBuf::from(name);
    if path.exists() {
        return Ok(SurveyConfig::load(&path)?);
    }
    let stem = name.strip_suffix(".json").unwrap_or(name);
    if !stem.contains('/') {
        if let Some(c) = SurveyConfig::builtin(stem) {
            return Ok(c);
        }
    }
    let names: Vec<&str> = SurveyConfig::builtin_names().collect();
    Err(InputError(format!("{name}: no such file, and not a built-in config ({})", names.join(", "))))
}

fn survey(name: &str, full: bool, as_json: bool) -> CmdResult {
    let config = load_config(name)?;
    let report = qgap::congruence::run_survey(&config, full)?;
    if as_json {
        print!("{}", report.to_json_lines());
    } else {
        print!("{}", report.render_table());
    }
    let all_experimental = report.records.iter().all(|r| r.verdict == Verdict::Experimental);
    Ok(Outcome::from_pass(report.passed() || (all_experimental && !report.records.is_empty())))
}

fn gap(level: u32, h_max: i64, sc: &Scale, as_json: bool) -> CmdResult {
    if h_max < 2 || (level == 1 && h_max < 4) {
        return Err(InputError(format!("--hmax {h_max} leaves no weights at level {level}")));
    }
    let report = gap_suite_at(level, h_max, sc)?;
    if as_json {
        for r in &report.results {
            println!("{}", serde_json::to_string(r).expect("record serializes"));
        }
        println!(
            "{}",
            json!({"summary": {"level": level, "seed": report.seed, "random_per_weight": report.random_per_weight,
                "results": report.results.len(), "passed": report.passed()}})
        );
    } else {
        print!("{}", suites::gap_table(&report));
    }
    Ok(Outcome::from_pass(report.passed()))
}

fn load_gram(path: &Path, max_rank: usize) -> Result<GramMatrix, InputError> {
    let g = GramMatrix::load(path)?;
    if g.rank() > max_rank {
        return Err(InputError(format!("rank {} exceeds --max-rank {max_rank}", g.rank())));
    }
    Ok(g)
}

fn theta_cmd(path: &Path, terms: usize, max_terms: usize, max_rank: usize, as_json: bool) -> CmdResult {
    if terms == 0 {
        return Err(InputError("--terms must be positive".into()));
    }
    if terms > max_terms {
        return Err(InputError(format!("--terms {terms} exceeds --max-terms {max_terms}")));
    }
    let g = load_gram(path, max_rank)?;
    let th = theta(&g, terms - 1);
    if as_json {
        println!("{}", json!({"rank": g.rank(), "level": g.level(), "coefficients": th.coefficients}));
    } else {
        let width = th.coefficients.iter().map(|c| c.to_string().len()).max().unwrap_or(1);
        println!("rank {} level {}", g.rank(), g.level());
        for (n, c) in th.coefficients.iter().enumerate() {
            println!("{n:>4}  {c:>width$}");
        }
    }
    Ok(Outcome::Pass)
}

fn minima(path: &Path, max_rank: usize, as_json: bool) -> CmdResult {
    let g = load_gram(path, max_rank)?;
    match verify_theorem51(&g) {
        Ok(c) => {
            if as_json {
                println!("{}", serde_json::to_string(&c).expect("record serializes"));
            } else {
                println!("min={} bound={} {}", c.min, c.bound, c.verdict);
            }
            Ok(Outcome::from_pass(c.verdict == Verdict::Pass))
        }
        Err(Error::Precondition(_)) => {
            let (min, level) = (min_represented(&g), g.level());
            let note = level_note(&g).unwrap_or_default();
            if as_json {
                println!("{}", json!({"rank": g.rank(), "level": level, "min": min, "bound": null, "verdict": Verdict::NotApplicable, "note": note}));
            } else {
                println!("min={min} bound=none {} ({note})", Verdict::NotApplicable);
            }
            Ok(Outcome::Pass)
        }
        Err(e) => Err(e.into()),
    }
}
