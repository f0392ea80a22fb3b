//! Command-line front end: exact confined-walk counts, asymptotic
//! estimates, convergence studies, determinant-expansion checks, and
//! squared-Vandermonde integral evaluations.

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use chamber_walks::asympt::{
    convergence_report, fixed_endpoint_asymptotic, free_endpoint_asymptotic, ln_biguint, Endpoint,
    Order,
};
use chamber_walks::count::{confined_count_dp, confined_total_dp, reflection_count};
use chamber_walks::model::reachable;
use chamber_walks::qrat::{qr_ratio, QRat};
use chamber_walks::schur::{det_direct, det_schur_series};
use chamber_walks::selberg::{
    hermite_moment, laguerre_moment, quadrature_oracle, recommended_nodes, selberg_one,
    HermiteMoment, LaguerreMoment, MomentPoly, Weight, WeightKind,
};
use chamber_walks::series::{MultiSeries, SeriesCoeffs};
use chamber_walks::{ChamberPoint, Error, Model, ModelKind};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "chamber-walks", version, about = "Counts and asymptotics for ordered lattice walkers", disable_help_subcommand = true)]
struct Cli {
    /// Emit JSON instead of human-readable output
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    json: bool,
    /// Emit CSV instead of human-readable output
    #[arg(long, global = true, action = ArgAction::SetTrue, conflicts_with = "json")]
    csv: bool,
    /// Seed for any randomized harness (echoed; current commands are deterministic)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Working precision in bits (at least 53; estimates are log-space)
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(53..=4096))]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Lockstep,
    Randomturns,
}

impl ModelArg {
    fn kind(self) -> ModelKind {
        match self {
            ModelArg::Lockstep => ModelKind::LockStep,
            ModelArg::Randomturns => ModelKind::RandomTurns,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dp,
    Reflection,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Exact confined count from --from to --to in n steps
    Count(CountArgs),
    /// Asymptotic estimate of the confined count at a single n
    Asympt(AsymptArgs),
    /// Exact-vs-estimate table over an n ladder with a fitted error slope
    Convergence(ConvergenceArgs),
    /// Determinant series expansion identity check
    Expand(ExpandArgs),
    /// Squared-Vandermonde integral closed forms vs quadrature
    Selberg(SelbergArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Start point, comma-separated strictly increasing integers
    #[arg(long)]
    from: String,
    /// End point, comma-separated strictly increasing integers
    #[arg(long)]
    to: String,
    #[arg(short)]
    n: u64,
    #[arg(long, value_enum, default_value = "reflection")]
    method: MethodArg,
}

#[derive(Args)]
struct AsymptArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    from: String,
    #[arg(long, required_unless_present = "free")]
    to: Option<String>,
    #[arg(short)]
    n: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    order: u8,
    /// Estimate the total over all endpoints instead of a fixed one
    #[arg(long, action = ArgAction::SetTrue)]
    free: bool,
    /// Also compute the exact count and report the relative error
    #[arg(long, action = ArgAction::SetTrue)]
    with_exact: bool,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    from: String,
    #[arg(long, required_unless_present = "free")]
    to: Option<String>,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    order: u8,
    #[arg(long, action = ArgAction::SetTrue)]
    free: bool,
    /// Comma-separated strictly increasing step counts
    #[arg(long, conflicts_with = "n_ladder", required_unless_present = "n_ladder")]
    n_list: Option<String>,
    /// Geometric ladder start:factor:count
    #[arg(long)]
    n_ladder: Option<String>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Series: exp_i, geometric, or poly:<comma-separated rationals>
    #[arg(long)]
    f: String,
    /// Evaluation points, comma-separated rationals
    #[arg(long)]
    u: String,
    #[arg(long)]
    degree: usize,
}

#[derive(Args)]
struct SelbergArgs {
    /// hermite or laguerre:<alpha> with alpha a positive half-integer
    #[arg(long)]
    weight: String,
    #[arg(short)]
    k: usize,
    /// Moment ratio to evaluate instead of the bare normalization
    #[arg(long)]
    moment: Option<String>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let out = OutputMode {
        json: cli.json,
        csv: cli.csv,
        seed: cli.seed,
        precision: cli.precision,
    };
    let result = match &cli.command {
        Command::Count(a) => cmd_count(a, &out),
        Command::Asympt(a) => cmd_asympt(a, &out),
        Command::Convergence(a) => cmd_convergence(a, &out),
        Command::Expand(a) => cmd_expand(a, &out),
        Command::Selberg(a) => cmd_selberg(a, &out),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

struct OutputMode {
    json: bool,
    csv: bool,
    seed: Option<u64>,
    precision: u32,
}

impl OutputMode {
    fn record(&self, command: &str, params: Value, results: Value) -> Value {
        let mut params = params;
        if let Some(seed) = self.seed {
            params["seed"] = json!(seed);
        }
        params["precision"] = json!(self.precision);
        json!({
            "schema": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "results": results,
        })
    }
}

// exit-code-1 parse failures, raised before any domain logic runs
fn usage_exit(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(1);
}

fn parse_int_vec(s: &str, what: &str) -> Vec<i64> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .unwrap_or_else(|_| usage_exit(&format!("{what}: `{p}` is not an integer")))
        })
        .collect()
}

fn parse_rational(s: &str, what: &str) -> Rational64 {
    let s = s.trim();
    let bad = || usage_exit(&format!("{what}: `{s}` is not a rational"));
    if let Some((num, den)) = s.split_once('/') {
        let n = num.trim().parse::<i64>().unwrap_or_else(|_| bad());
        let d = den.trim().parse::<i64>().unwrap_or_else(|_| bad());
        if d == 0 {
            bad();
        }
        Rational64::new(n, d)
    } else if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let whole = int.trim().parse::<i64>().unwrap_or_else(|_| bad());
        let den = 10i64.checked_pow(frac.len() as u32).unwrap_or_else(|| bad());
        let part = frac.parse::<i64>().unwrap_or_else(|_| bad());
        Rational64::new(whole * den + sign * part, den)
    } else {
        Rational64::from_integer(s.parse::<i64>().unwrap_or_else(|_| bad()))
    }
}

fn parse_chamber(s: &str, what: &str) -> Result<ChamberPoint, Error> {
    ChamberPoint::new(parse_int_vec(s, what))
}

fn parse_order(order: u8) -> Order {
    if order == 1 {
        Order::First
    } else {
        Order::Second
    }
}

fn model_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::LockStep => "lockstep",
        ModelKind::RandomTurns => "randomturns",
    }
}

fn cmd_count(a: &CountArgs, out: &OutputMode) -> Result<(), Error> {
    let u = parse_chamber(&a.from, "--from")?;
    let v = parse_chamber(&a.to, "--to")?;
    let model = Model::new(a.model.kind(), u.k())?;
    if v.k() != u.k() {
        return Err(Error::DimensionMismatch {
            expected: u.k(),
            got: v.k(),
        });
    }
    let can_reach = reachable(model, &u, &v, a.n);
    let (refl, dp) = match (a.method, can_reach) {
        (_, false) => (Some(BigUint::zero()), Some(BigUint::zero())),
        (MethodArg::Reflection, true) => (Some(reflection_count(model, &u, &v, a.n)?), None),
        (MethodArg::Dp, true) => (None, Some(confined_count_dp(model, &u, &v, a.n))),
        (MethodArg::Both, true) => (
            Some(reflection_count(model, &u, &v, a.n)?),
            Some(confined_count_dp(model, &u, &v, a.n)),
        ),
    };
    let count = refl.clone().or(dp.clone()).unwrap();
    let params = json!({
        "model": model_name(model.kind),
        "from": u.coords(),
        "to": v.coords(),
        "n": a.n,
        "method": match a.method { MethodArg::Dp => "dp", MethodArg::Reflection => "reflection", MethodArg::Both => "both" },
    });
    let mut results = json!({
        "reachable": can_reach,
        "count": count.to_string(),
    });
    if a.method == MethodArg::Both {
        let agree = refl == dp;
        results["count_reflection"] = json!(refl.unwrap().to_string());
        results["count_dp"] = json!(dp.unwrap().to_string());
        results["agree"] = json!(agree);
    }
    if out.json {
        println!("{}", out.record("count", params, results));
    } else if out.csv {
        println!("count");
        println!("{count}");
    } else {
        println!("count = {count}");
        if a.method == MethodArg::Both {
            println!("agree = {}", results["agree"]);
        }
        if !can_reach {
            println!("unreachable endpoint; count is zero");
        }
    }
    Ok(())
}

fn cmd_asympt(a: &AsymptArgs, out: &OutputMode) -> Result<(), Error> {
    let u = parse_chamber(&a.from, "--from")?;
    let model = Model::new(a.model.kind(), u.k())?;
    let order = parse_order(a.order);
    let (log_estimate, exact, to) = if a.free {
        let log = free_endpoint_asymptotic(model, &u, a.n, order)?;
        let exact = a.with_exact.then(|| confined_total_dp(model, &u, a.n));
        (log, exact, None)
    } else {
        let v = parse_chamber(a.to.as_deref().unwrap(), "--to")?;
        let log = fixed_endpoint_asymptotic(model, &u, &v, a.n, order)?;
        let exact = if a.with_exact {
            Some(reflection_count(model, &u, &v, a.n)?)
        } else {
            None
        };
        (log, exact, Some(v))
    };
    let rel_error = exact.as_ref().map(|e| {
        if e.is_zero() {
            f64::INFINITY
        } else {
            ((ln_biguint(e) - log_estimate).exp() - 1.0).abs()
        }
    });
    let mut params = json!({
        "model": model_name(model.kind),
        "from": u.coords(),
        "n": a.n,
        "order": a.order,
        "free": a.free,
    });
    if let Some(v) = &to {
        params["to"] = json!(v.coords());
    }
    let mut results = json!({ "log_estimate": log_estimate });
    if let Some(e) = &exact {
        results["exact"] = json!(e.to_string());
        results["ln_exact"] = json!(ln_biguint(e));
        results["rel_error"] = json!(rel_error.unwrap());
    }
    if out.json {
        println!("{}", out.record("asympt", params, results));
    } else if out.csv {
        match (&exact, rel_error) {
            (Some(e), Some(r)) => {
                println!("n,exact,log_estimate,rel_error");
                println!("{},{},{},{}", a.n, e, log_estimate, r);
            }
            _ => {
                println!("n,log_estimate");
                println!("{},{}", a.n, log_estimate);
            }
        }
    } else {
        println!("log_estimate = {log_estimate}");
        if let Some(e) = &exact {
            println!("exact = {e}");
            println!("rel_error = {}", rel_error.unwrap());
        }
    }
    Ok(())
}

fn parse_n_list(a: &ConvergenceArgs) -> Vec<u64> {
    if let Some(list) = &a.n_list {
        if list.trim().is_empty() {
            usage_exit("--n-list must be non-empty");
        }
        return list
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .unwrap_or_else(|_| usage_exit(&format!("--n-list: `{p}` is not an integer")))
            })
            .collect();
    }
    let ladder = a.n_ladder.as_deref().unwrap();
    let parts: Vec<&str> = ladder.split(':').collect();
    if parts.len() != 3 {
        usage_exit("--n-ladder must be start:factor:count");
    }
    let read = |s: &str| {
        s.trim()
            .parse::<u64>()
            .unwrap_or_else(|_| usage_exit(&format!("--n-ladder: `{s}` is not an integer")))
    };
    let (start, factor, count) = (read(parts[0]), read(parts[1]), read(parts[2]));
    if start == 0 || factor < 2 || count == 0 {
        usage_exit("--n-ladder needs start ≥ 1, factor ≥ 2, count ≥ 1");
    }
    let mut n = start;
    (0..count)
        .map(|_| {
            let cur = n;
            n *= factor;
            cur
        })
        .collect()
}

fn cmd_convergence(a: &ConvergenceArgs, out: &OutputMode) -> Result<(), Error> {
    let u = parse_chamber(&a.from, "--from")?;
    let model = Model::new(a.model.kind(), u.k())?;
    let order = parse_order(a.order);
    let endpoint = if a.free {
        Endpoint::Free
    } else {
        Endpoint::Fixed(parse_chamber(a.to.as_deref().unwrap(), "--to")?)
    };
    let n_list = parse_n_list(a);
    let report = convergence_report(model, &u, &endpoint, &n_list, order)?;
    if out.json {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "exact": r.exact.to_string(),
                    "log_estimate": r.log_estimate,
                    "rel_error": r.rel_error,
                })
            })
            .collect();
        let mut params = json!({
            "model": model_name(model.kind),
            "from": u.coords(),
            "order": a.order,
            "free": a.free,
            "n_list": n_list,
        });
        if let Endpoint::Fixed(v) = &endpoint {
            params["to"] = json!(v.coords());
        }
        let mut results = json!({ "rows": rows });
        if let Some(s) = report.slope {
            results["slope"] = json!(s);
        }
        println!("{}", out.record("convergence", params, results));
    } else {
        println!("n,exact,log_estimate,rel_error");
        for r in &report.rows {
            println!("{},{},{},{}", r.n, r.exact, r.log_estimate, r.rel_error);
        }
        if let Some(s) = report.slope {
            println!("# slope,{s}");
        }
    }
    Ok(())
}

fn parse_series(spec: &str, degree: usize) -> SeriesCoeffs {
    match spec {
        "exp_i" => SeriesCoeffs::exp_i(degree),
        "geometric" => SeriesCoeffs::geometric(degree),
        _ => {
            let coeffs = spec
                .strip_prefix("poly:")
                .unwrap_or_else(|| usage_exit("--f must be exp_i, geometric, or poly:<coeffs>"));
            let a: Vec<QRat> = coeffs
                .split(',')
                .map(|p| {
                    let r = parse_rational(p, "--f poly coefficient");
                    qr_ratio(*r.numer(), *r.denom())
                })
                .collect();
            SeriesCoeffs::new(a)
        }
    }
}

fn series_terms_json(s: &MultiSeries) -> Vec<Value> {
    s.terms()
        .map(|(expo, c)| {
            json!({
                "expo": expo,
                "re": c.re.to_string(),
                "im": c.im.to_string(),
            })
        })
        .collect()
}

fn format_qrat(c: &QRat) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        format!("{}·i", c.im)
    } else if c.im.is_negative() {
        format!("{} - {}·i", c.re, -c.im.clone())
    } else {
        format!("{} + {}·i", c.re, c.im)
    }
}

fn cmd_expand(a: &ExpandArgs, out: &OutputMode) -> Result<(), Error> {
    let coeffs = parse_series(&a.f, a.degree);
    let u: Vec<QRat> = a
        .u
        .split(',')
        .map(|p| {
            let r = parse_rational(p, "--u");
            qr_ratio(*r.numer(), *r.denom())
        })
        .collect();
    if u.is_empty() {
        usage_exit("--u must be non-empty");
    }
    let lhs = det_direct(&coeffs, &u, a.degree);
    let rhs = det_schur_series(&coeffs, &u, a.degree);
    let identical = lhs == rhs;
    let params = json!({
        "f": a.f,
        "u": a.u.split(',').map(|p| p.trim().to_string()).collect::<Vec<_>>(),
        "degree": a.degree,
    });
    let results = json!({
        "identical": identical,
        "lhs_terms": series_terms_json(&lhs),
        "rhs_terms": series_terms_json(&rhs),
    });
    if out.json {
        println!("{}", out.record("expand", params, results));
    } else if out.csv {
        println!("side,expo,re,im");
        for (expo, c) in lhs.terms() {
            let e: Vec<String> = expo.iter().map(|x| x.to_string()).collect();
            println!("lhs,{},{},{}", e.join(" "), c.re, c.im);
        }
        for (expo, c) in rhs.terms() {
            let e: Vec<String> = expo.iter().map(|x| x.to_string()).collect();
            println!("rhs,{},{},{}", e.join(" "), c.re, c.im);
        }
        println!("# identical,{identical}");
    } else {
        println!("direct expansion: {} terms", lhs.terms().count());
        for (expo, c) in lhs.terms() {
            println!("  z^{expo:?}  {}", format_qrat(c));
        }
        println!("Schur-sum expansion: {} terms", rhs.terms().count());
        for (expo, c) in rhs.terms() {
            println!("  z^{expo:?}  {}", format_qrat(c));
        }
        println!("identical = {identical}");
    }
    Ok(())
}

fn parse_weight(spec: &str, k: usize) -> Result<Weight, Error> {
    if spec == "hermite" {
        Weight::hermite(k)
    } else if let Some(alpha) = spec.strip_prefix("laguerre:") {
        Weight::laguerre(k, parse_rational(alpha, "--weight laguerre alpha"))
    } else {
        usage_exit("--weight must be hermite or laguerre:<alpha>");
    }
}

fn moment_of(w: &Weight, name: &str) -> Result<(MomentPoly, Rational64), Error> {
    let pair = match (w.kind, name) {
        (WeightKind::Hermite, "sum_sq") => (MomentPoly::SumSq, hermite_moment(w.k, HermiteMoment::SumSq)),
        (WeightKind::Hermite, "sq_of_sum") => (MomentPoly::SqOfSum, hermite_moment(w.k, HermiteMoment::SqOfSum)),
        (WeightKind::Hermite, "sum_4th") => (MomentPoly::Sum4th, hermite_moment(w.k, HermiteMoment::Sum4th)),
        (WeightKind::Hermite, "sq_of_sum_sq") => (MomentPoly::SqOfSumSq, hermite_moment(w.k, HermiteMoment::SqOfSumSq)),
        (WeightKind::Hermite, "schur11") => (MomentPoly::Schur11, hermite_moment(w.k, HermiteMoment::Schur11)),
        (WeightKind::Hermite, "schur2") => (MomentPoly::Schur2, hermite_moment(w.k, HermiteMoment::Schur2)),
        (WeightKind::Laguerre, "sum") => (MomentPoly::Sum, laguerre_moment(w.k, w.alpha, LaguerreMoment::Sum)),
        (WeightKind::Laguerre, "sum_sq") => (MomentPoly::SumSq, laguerre_moment(w.k, w.alpha, LaguerreMoment::SumSq)),
        (WeightKind::Laguerre, "sq_of_sum") => (MomentPoly::SqOfSum, laguerre_moment(w.k, w.alpha, LaguerreMoment::SqOfSum)),
        _ => {
            return Err(Error::domain(format!(
                "moment `{name}` is not available for this weight"
            )))
        }
    };
    Ok(pair)
}

fn cmd_selberg(a: &SelbergArgs, out: &OutputMode) -> Result<(), Error> {
    let w = parse_weight(&a.weight, a.k)?;
    let one = selberg_one(&w);
    let (closed_value, oracle, label) = match &a.moment {
        None => {
            let nodes = recommended_nodes(&w, MomentPoly::One);
            (one.to_f64(), quadrature_oracle(&w, MomentPoly::One, nodes)?, None)
        }
        Some(name) => {
            let (poly, ratio) = moment_of(&w, name)?;
            let nodes = recommended_nodes(&w, poly);
            let raw = quadrature_oracle(&w, poly, nodes)?;
            let base = quadrature_oracle(&w, MomentPoly::One, recommended_nodes(&w, MomentPoly::One))?;
            (ratio.to_f64().unwrap(), raw / base, Some(ratio))
        }
    };
    let deviation = (oracle - closed_value).abs() / closed_value.abs().max(1.0);
    let mut params = json!({ "weight": a.weight, "k": a.k });
    if let Some(m) = &a.moment {
        params["moment"] = json!(m);
    }
    let mut results = json!({
        "closed_form_value": closed_value,
        "oracle_value": oracle,
        "deviation": deviation,
    });
    match &label {
        Some(ratio) => {
            results["ratio"] = json!(ratio.to_string());
        }
        None => {
            results["normalization"] = json!(one.to_string());
        }
    }
    if out.json {
        println!("{}", out.record("selberg", params, results));
    } else if out.csv {
        println!("closed_form,oracle,deviation");
        println!("{closed_value},{oracle},{deviation}");
    } else {
        match &label {
            Some(ratio) => println!("moment ratio = {ratio} = {closed_value}"),
            None => println!("normalization = {one} = {closed_value}"),
        }
        println!("quadrature oracle = {oracle}");
        println!("deviation = {deviation}");
    }
    Ok(())
}
