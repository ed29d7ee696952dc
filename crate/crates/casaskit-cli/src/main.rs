//! Command-line front end: analysis, construction, verification, and search
//! as batch commands with machine-readable reports.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use casaskit::casearch::{
    certify_ca, search, shared_root_counts, CaVerdict, FilterToggles, SearchConfig,
};
use casaskit::goncharov::{
    build_genetic_with_cap, build_interpolation, build_recursion, goncharov_bound,
    sharp_bound, NodeSequence, DEFAULT_ENUMERATION_CAP,
};
use casaskit::localize::{
    ca_mth_bound, common_root_interval, derivative_root_interval, extremal_stats, gap_bounds,
    laguerre_interval, lemma2_residual, lemma7_bounds, lemma9_bounds, span_lower_bound,
    sz_nagy_residuals, Backend, BoundReport, NumericConfig,
};
use casaskit::polycore::{
    centroid_data, format_polynomial, is_real_rooted, parse_nodes, parse_polynomial,
    parse_scalar, root_multiset, GaussianRational, Polynomial, RootFindConfig,
};

#[derive(Parser)]
#[command(
    name = "casaskit",
    about = "Exact polynomial analysis: root identities, Goncharov interpolants, localization bounds, Casas-Alvero search",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Inline input ('-' reads stdin).
    value: Option<String>,
    /// Read input from a file.
    #[arg(short, long)]
    input: Option<String>,
    /// Emit machine-readable JSON.
    #[arg(long)]
    json: bool,
}

impl InputArgs {
    fn resolve(&self) -> Result<String, String> {
        match (&self.value, &self.input) {
            (Some(v), None) if v == "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| format!("stdin: {}", e))?;
                Ok(buf.trim().to_string())
            }
            (Some(v), None) => Ok(v.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| format!("{}: {}", path, e)),
            (None, None) => Err("missing input: pass a value, '-', or --input FILE".into()),
            (Some(_), Some(_)) => Err("pass either an inline value or --input, not both".into()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Degree, roots, centroid data, triviality, extremal statistics.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Numeric root-finder convergence factor.
        #[arg(long, default_value_t = 1e-14)]
        precision: f64,
    },
    /// Build the interpolation polynomial for a node sequence.
    Goncharov {
        #[command(flatten)]
        input: InputArgs,
        /// Build by all three algorithms and verify exact agreement.
        #[arg(long)]
        cross_check: bool,
        /// Evaluate the magnitude bounds at this point (repeatable).
        #[arg(long)]
        bound_at: Vec<String>,
        /// Degree cap for the nested-sum enumeration.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        budget: usize,
    },
    /// Root-identity residuals at chosen points and derivative orders.
    Identities {
        #[command(flatten)]
        input: InputArgs,
        /// Evaluation point (repeatable; default 0).
        #[arg(long)]
        at: Vec<String>,
        /// Derivative order (default: all admissible).
        #[arg(long)]
        m: Option<usize>,
        /// Use the certified-numeric backend instead of exact arithmetic.
        #[arg(long)]
        numeric: bool,
    },
    /// Localization inequality verdicts for a real-rooted polynomial.
    Bounds {
        #[command(flatten)]
        input: InputArgs,
        /// Derivative order (default: all admissible).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Casas-Alvero certification and shared-root counts.
    CaCheck {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Search for counterexample candidates at a fixed degree.
    CaSearch {
        /// Polynomial degree to search.
        #[arg(long)]
        degree: usize,
        /// Candidate threshold on the squared-residual objective.
        #[arg(long, default_value_t = 1e-16)]
        theta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enable or disable the non-existence filters.
        #[arg(long, default_value = "on")]
        filters: String,
        /// Unconstrained complex-root search.
        #[arg(long)]
        complex: bool,
        /// Assignment budget per pattern.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Write the JSON report to a file instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Analyze { input, precision } => {
            let poly = parse_poly_input(&input)?;
            let cfg = RootFindConfig { epsilon: precision, ..RootFindConfig::default() };
            analyze(&poly, &cfg, input.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Goncharov { input, cross_check, bound_at, budget } => {
            let text = input.resolve()?;
            goncharov_cmd(&text, cross_check, &bound_at, budget, input.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Identities { input, at, m, numeric } => {
            let poly = parse_poly_input(&input)?;
            identities_cmd(&poly, &at, m, numeric, input.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { input, m } => {
            let poly = parse_poly_input(&input)?;
            bounds_cmd(&poly, m, input.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CaCheck { input } => {
            let poly = parse_poly_input(&input)?;
            ca_check_cmd(&poly, input.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CaSearch { degree, theta, seed, filters, complex, budget, output } => {
            if degree < 2 {
                if degree == 1 {
                    // degree 1 is the trivial class by definition
                    let note = json!({
                        "degree": 1,
                        "verdict": "no_candidate",
                        "note": "degree 1 is the trivial class",
                    });
                    println!("{}", note);
                    return Ok(ExitCode::SUCCESS);
                }
                return Err("searchable degrees start at 2".into());
            }
            let mut config = SearchConfig::new(degree);
            config.theta = theta;
            config.seed = seed;
            config.complex_mode = complex;
            config.assignment_budget = budget;
            config.filters = match filters.as_str() {
                "on" => FilterToggles::default(),
                "off" => FilterToggles::none(),
                other => return Err(format!("--filters expects on|off, got {:?}", other)),
            };
            let report = search(&config);
            let body = serde_json::to_string_pretty(&report)
                .map_err(|e| format!("serialize: {}", e))?;
            match output {
                Some(path) => std::fs::write(&path, body.as_bytes())
                    .map_err(|e| format!("{}: {}", path, e))?,
                None => println!("{}", body),
            }
            if report.incomplete {
                Ok(ExitCode::from(1))
            } else if report.found_candidates() {
                Ok(ExitCode::from(2))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn parse_poly_input(input: &InputArgs) -> Result<Polynomial, String> {
    let text = input.resolve()?;
    let poly = parse_polynomial(&text).map_err(|e| e.to_string())?;
    if poly.is_zero() || poly.degree() == 0 {
        return Err("degree must be at least 1".into());
    }
    Ok(poly)
}

/// 12 significant digits for human-mode floats.
fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

fn root_value_json(value: &casaskit::RootValue, multiplicity: usize) -> serde_json::Value {
    let z = value.to_complex();
    json!({
        "value": match value.as_exact() {
            Some(e) => serde_json::Value::String(e.to_text()),
            None => serde_json::Value::Null,
        },
        "re": z.re,
        "im": z.im,
        "error_radius": value.error_radius(),
        "multiplicity": multiplicity,
        "exact": value.as_exact().is_some(),
    })
}

fn analyze(poly: &Polynomial, cfg: &RootFindConfig, as_json: bool) -> Result<(), String> {
    let monic = poly.monic();
    let n = monic.degree();
    let roots = root_multiset(&monic, cfg).map_err(|e| e.to_string())?;
    let trivial = monic.is_trivial();
    let cd = if n >= 2 { Some(centroid_data(&monic).map_err(|e| e.to_string())?) } else { None };
    let real_rooted = is_real_rooted(&monic);
    let extremal = if real_rooted && n >= 2 {
        Some(extremal_stats(&monic, 1, cfg).map_err(|e| e.to_string())?)
    } else {
        None
    };
    if as_json {
        let out = json!({
            "degree": n,
            "monic": format_polynomial(&monic),
            "trivial": trivial,
            "real_rooted": real_rooted,
            "roots": roots
                .entries()
                .iter()
                .map(|e| root_value_json(&e.value, e.multiplicity))
                .collect::<Vec<_>>(),
            "centroid": cd.as_ref().map(|c| json!({
                "centroid": c.centroid.to_text(),
                "gap_squared": c.gap_squared.to_text(),
            })),
            "extremal": extremal,
        });
        println!("{}", serde_json::to_string(&out).unwrap());
    } else {
        println!("degree:      {}", n);
        println!("monic form:  {}", format_polynomial(&monic));
        println!("trivial:     {}", trivial);
        println!("real-rooted: {}", real_rooted);
        println!("roots (value ^ multiplicity):");
        for e in roots.entries() {
            match e.value.as_exact() {
                Some(z) => println!("  {} ^ {}", z.to_text(), e.multiplicity),
                None => {
                    let z = e.value.to_complex();
                    println!(
                        "  ({} + {}i) ^ {}  [radius {}]",
                        sig12(z.re),
                        sig12(z.im),
                        e.multiplicity,
                        sig12(e.value.error_radius())
                    );
                }
            }
        }
        if let Some(c) = &cd {
            println!("centroid:    {}", c.centroid.to_text());
            println!("gap^2:       {}", c.gap_squared.to_text());
        }
        if let Some(st) = &extremal {
            println!(
                "span:        {}  (roots in [{}, {}])",
                sig12(st.span),
                sig12(st.lambda_min),
                sig12(st.lambda_max)
            );
        }
    }
    Ok(())
}

fn goncharov_cmd(
    text: &str,
    cross_check: bool,
    bound_at: &[String],
    budget: usize,
    as_json: bool,
) -> Result<(), String> {
    let nodes = parse_nodes(text).map_err(|e| e.to_string())?;
    let seq = NodeSequence::exact(nodes);
    let built = build_interpolation(&seq).map_err(|e| e.to_string())?;
    let mut agreement: Option<bool> = None;
    if cross_check {
        let rec = build_recursion(&seq).map_err(|e| e.to_string())?;
        let gen = build_genetic_with_cap(&seq, budget).map_err(|e| e.to_string())?;
        agreement =
            Some(built.polynomial == rec.polynomial && built.polynomial == gen.polynomial);
    }
    let mut bounds: Vec<(String, f64, f64, f64)> = Vec::new();
    for z_text in bound_at {
        let z = parse_scalar(z_text).map_err(|e| e.to_string())?;
        let value = built.polynomial.eval(&z);
        let magnitude = value.abs_upper();
        let sharp = sharp_bound(&seq, &z, budget).map_err(|e| e.to_string())?;
        let telescoping = goncharov_bound(&seq, &z);
        bounds.push((z.to_text(), magnitude, sharp, telescoping));
    }
    if as_json {
        let out = json!({
            "polynomial": format_polynomial(&built.polynomial),
            "degree": built.polynomial.degree(),
            "cross_check": agreement,
            "bounds": bounds.iter().map(|(z, v, s, t)| json!({
                "z": z, "magnitude": v, "sharp": s, "telescoping": t,
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string(&out).unwrap());
    } else {
        println!("polynomial:  {}", format_polynomial(&built.polynomial));
        if let Some(ok) = agreement {
            println!(
                "cross-check: {}",
                if ok { "all three constructions agree" } else { "DISAGREEMENT" }
            );
        }
        for (z, v, s, t) in &bounds {
            println!(
                "at z = {}: |G| = {}  sharp = {}  telescoping = {}",
                z,
                sig12(*v),
                sig12(*s),
                sig12(*t)
            );
        }
    }
    if agreement == Some(false) {
        return Err("construction cross-check failed".into());
    }
    Ok(())
}

fn print_report<T: Serialize>(report: &T, as_json: bool, human: String) {
    if as_json {
        println!("{}", serde_json::to_string(report).unwrap());
    } else {
        println!("{}", human);
    }
}

fn identities_cmd(
    poly: &Polynomial,
    at: &[String],
    m: Option<usize>,
    numeric: bool,
    as_json: bool,
) -> Result<(), String> {
    let monic = poly.monic();
    let n = monic.degree();
    if n < 2 {
        return Err("identities need degree >= 2".into());
    }
    let cfg = RootFindConfig::default();
    let backend = if numeric { Backend::Numeric } else { Backend::Exact };
    let points: Vec<GaussianRational> = if at.is_empty() {
        vec![GaussianRational::zero()]
    } else {
        at.iter()
            .map(|s| parse_scalar(s).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?
    };
    let orders: Vec<usize> = match m {
        Some(v) if v <= n - 2 => vec![v],
        Some(v) => return Err(format!("m = {} out of range [0, {}]", v, n - 2)),
        None => (0..=n - 2).collect(),
    };
    for z in &points {
        for &order in &orders {
            let reports =
                sz_nagy_residuals(&monic, z, order, backend, &cfg).map_err(|e| e.to_string())?;
            for rep in &reports {
                let human = format!(
                    "{} m={} z={}: residual {}  [{}]",
                    rep.id.wire_id(),
                    order,
                    z.to_text(),
                    rep.residual
                        .as_ref()
                        .map(|r| sig12(r.magnitude()))
                        .unwrap_or_else(|| "-".into()),
                    if rep.passes(1e-9) { "pass" } else { "FAIL" },
                );
                print_report(rep, as_json, human);
            }
        }
    }
    // shared-root identity, every admissible order (auto-detected data)
    for order in 1..=(n - 2) {
        if m.map(|v| v != order).unwrap_or(false) {
            continue;
        }
        let rep = lemma2_residual(&monic, order, None, backend, &cfg)
            .map_err(|e| e.to_string())?;
        let human = format!(
            "{} m={}: {}",
            rep.id.wire_id(),
            order,
            if !rep.hypothesis_ok {
                "gated (hypotheses not met)".to_string()
            } else {
                format!(
                    "residual {}  [{}]",
                    rep.residual
                        .as_ref()
                        .map(|r| sig12(r.magnitude()))
                        .unwrap_or_else(|| "-".into()),
                    if rep.passes(1e-9) { "pass" } else { "FAIL" },
                )
            }
        );
        print_report(&rep, as_json, human);
    }
    Ok(())
}

fn describe_bound(rep: &BoundReport) -> String {
    if !rep.hypothesis_ok {
        return format!(
            "{}: gated ({})",
            rep.id.wire_id(),
            rep.note.as_deref().unwrap_or("hypotheses not met")
        );
    }
    let middle = rep.mid.map(|m| format!(" <= {}", sig12(m))).unwrap_or_default();
    format!(
        "{}: {}{} <= {}  [{}]",
        rep.id.wire_id(),
        sig12(rep.lhs),
        middle,
        sig12(rep.rhs),
        if rep.holds { "holds" } else { "VIOLATED" },
    )
}

fn bounds_cmd(poly: &Polynomial, m: Option<usize>, as_json: bool) -> Result<(), String> {
    let monic = poly.monic();
    let n = monic.degree();
    if n < 2 {
        return Err("bounds need degree >= 2".into());
    }
    if !is_real_rooted(&monic) {
        return Err("complex roots detected; localization bounds need a real-rooted polynomial"
            .into());
    }
    let cfg = RootFindConfig::default();
    let num = NumericConfig::default();
    let mut reports: Vec<BoundReport> = Vec::new();

    let gap_orders: Vec<usize> = match m {
        Some(v) => vec![v],
        None => (1..=n.saturating_sub(2)).collect(),
    };
    for &order in &gap_orders {
        if n > 2 && order >= 1 && order <= n - 2 {
            reports.extend(gap_bounds(&monic, order, &cfg, &num).map_err(|e| e.to_string())?);
        }
    }
    // root intervals at order zero, one per distinct root
    let roots = root_multiset(&monic, &cfg).map_err(|e| e.to_string())?;
    for idx in 0..roots.k() {
        reports.push(
            laguerre_interval(&monic, idx, 0, &cfg, &num).map_err(|e| e.to_string())?,
        );
    }
    for &order in &gap_orders {
        if order <= n - 2 {
            reports.push(
                derivative_root_interval(&monic, order, &cfg, &num)
                    .map_err(|e| e.to_string())?,
            );
        }
    }
    // centroid-root dependent bounds
    let centroid_root_count = {
        let cd = centroid_data(&monic).map_err(|e| e.to_string())?;
        if monic.eval(&cd.centroid).is_zero() {
            roots.k().saturating_sub(1)
        } else {
            0
        }
    };
    for s in 0..centroid_root_count {
        reports.push(
            common_root_interval(&monic, s, &cfg, &num).map_err(|e| e.to_string())?,
        );
    }
    for &order in &gap_orders {
        if order <= n - 2 {
            reports.push(ca_mth_bound(&monic, order, &cfg, &num).map_err(|e| e.to_string())?);
        }
    }
    reports.extend(lemma7_bounds(&monic, &cfg, &num).map_err(|e| e.to_string())?);
    reports.push(span_lower_bound(&monic, &cfg, &num).map_err(|e| e.to_string())?);
    for &order in &gap_orders {
        if order <= n - 2 {
            reports
                .extend(lemma9_bounds(&monic, order, &cfg, &num).map_err(|e| e.to_string())?);
        }
    }

    for rep in &reports {
        print_report(rep, as_json, describe_bound(rep));
    }
    Ok(())
}

fn ca_check_cmd(poly: &Polynomial, as_json: bool) -> Result<(), String> {
    let monic = poly.monic();
    let cert = certify_ca(&monic).map_err(|e| e.to_string())?;
    let counts = if monic.degree() >= 2 {
        Some(shared_root_counts(&monic).map_err(|e| e.to_string())?)
    } else {
        None
    };
    if as_json {
        let out = json!({
            "polynomial": format_polynomial(&monic),
            "verdict": cert.verdict.name(),
            "per_order": cert.per_order.iter().map(|(m, e)| json!({
                "m": m,
                "shared": e.is_shared(),
            })).collect::<Vec<_>>(),
            "shared_root_counts": counts.as_ref().map(|c| json!({
                "centroid_is_root": c.centroid_is_root,
                "l": c.counts.iter().map(|(m, l)| json!([m, l])).collect::<Vec<_>>(),
                "consecutive_zero_pairs": c.consecutive_zero_pairs(),
            })),
        });
        println!("{}", serde_json::to_string(&out).unwrap());
    } else {
        println!("polynomial: {}", format_polynomial(&monic));
        println!("verdict:    {}", cert.verdict.name());
        for (order, evidence) in &cert.per_order {
            println!(
                "  m = {}: {}",
                order,
                if evidence.is_shared() { "shared" } else { "not shared" }
            );
        }
        if let Some(c) = &counts {
            println!(
                "centroid is a root: {}; shared-root counts l(m): {:?}",
                c.centroid_is_root,
                c.counts.values().collect::<Vec<_>>()
            );
        }
    }
    if cert.verdict == CaVerdict::CaNontrivialCandidate {
        eprintln!("warning: nontrivial polynomial shares a root with every derivative");
    }
    Ok(())
}
