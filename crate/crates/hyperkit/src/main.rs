//! Command-line surface: build catalog objects, validate, dualize, twist,
//! check admissibility and regularity, reproduce the worked example tables,
//! and emit markdown/LaTeX/JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 mathematical failure (with a JSON
//! report on standard output).

use std::collections::BTreeSet;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hyperkit::algebra::{isomorphic, FiniteHypergroup};
use hyperkit::characters::dual_hypergroup;
use hyperkit::emit::{emit_graded_table, emit_table, Format};
use hyperkit::error::HyperError;
use hyperkit::examples::{audit_against_published, build_example, example_info, published_table, EXAMPLE_IDS};
use hyperkit::groups::{group, CATALOG};
use hyperkit::json;
use hyperkit::mackey::{cycle_action_klein, inversion_action_order4, swap_action_order3, GroupAction, MackeyMachine};
use hyperkit::pairs::{pair_commutative, pair_group, HypergroupPair};
use hyperkit::scalar::{one, parse_rational, Scalar, SnapConfig};

#[derive(Parser)]
#[command(name = "hyperkit", about = "exact-arithmetic workbench for finite hypergroups")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct Params {
    /// Deformation parameter p as "num/den" (default 1).
    #[arg(long)]
    p: Option<String>,
    /// Mixing parameter q as "num/den" (default 1).
    #[arg(long)]
    q: Option<String>,
    /// Deformation parameter r as "num/den" (default 1).
    #[arg(long)]
    r: Option<String>,
}

#[derive(Args, Clone)]
struct Output {
    /// Output format: md, latex or json.
    #[arg(long = "emit", default_value = "md")]
    format: Format,
    /// Write output to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// List builders, catalog groups, actions and worked examples.
    Catalog,
    /// Build a named hypergroup (zq2, zp3, zpr4, or a catalog group).
    Build {
        name: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Check the hypergroup axioms on a JSON document (path or stdin).
    Validate { path: Option<PathBuf> },
    /// Dual of a commutative hypergroup (builder name or JSON path).
    Dual {
        source: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Twisted extension of a builder and one of its subhypergroups.
    Twist {
        big: String,
        /// Subhypergroup as comma-separated element indices.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Admissibility report for a builder/subhypergroup pair.
    Admissible {
        big: String,
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        #[command(flatten)]
        params: Params,
    },
    /// Regularity report for a named action (sp3, dpr4, a4).
    Regular {
        action: String,
        #[command(flatten)]
        params: Params,
    },
    /// Semidirect product of a named action (sp3, dpr4, a4).
    Semidirect {
        action: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
    },
    /// Reproduce a worked example table (5.1 .. 5.10).
    Example {
        id: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: Output,
        /// Compare the computed table against the published coefficients.
        #[arg(long)]
        audit: bool,
        /// Parameter grid like "q=1/4,1/2,1;p=1/3,2/3"; builds run on worker
        /// threads and outputs merge in grid order.
        #[arg(long)]
        sweep: Option<String>,
    },
    /// Re-emit a hypergroup JSON document (path or stdin) in another format.
    Emit {
        path: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Structural isomorphism between two hypergroups (names or JSON paths).
    Isocheck {
        a: String,
        b: String,
        #[command(flatten)]
        params: Params,
    },
}

/// Failure that carries a machine-readable report and exit code 2.
struct MathFailure(serde_json::Value);

enum CliError {
    Usage(String),
    Math(MathFailure),
}

impl From<HyperError> for CliError {
    fn from(e: HyperError) -> Self {
        match &e {
            HyperError::AxiomError(_)
            | HyperError::NegativeStructureConstant { .. }
            | HyperError::NotInSpan { .. }
            | HyperError::NegativeCoefficient { .. }
            | HyperError::NonIntegerMultiplicity { .. }
            | HyperError::SnapFailure(_)
            | HyperError::RegularityFailed(_)
            | HyperError::NotClosed { .. }
            | HyperError::QuotientIllDefined(_)
            | HyperError::Decomposition(_) => CliError::Math(MathFailure(serde_json::json!({
                "failure": e.to_string(),
            }))),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn math(report: impl Serialize) -> CliError {
    CliError::Math(MathFailure(
        serde_json::to_value(report).expect("serializable report"),
    ))
}

struct Parsed {
    p: Scalar,
    q: Scalar,
    r: Scalar,
}

fn parse_params(params: &Params) -> CliResult<Parsed> {
    let get = |v: &Option<String>, name: &str| -> CliResult<Scalar> {
        match v {
            None => Ok(one()),
            Some(text) => parse_rational(text)
                .map_err(|e| usage(format!("--{name}: {e}"))),
        }
    };
    Ok(Parsed {
        p: get(&params.p, "p")?,
        q: get(&params.q, "q")?,
        r: get(&params.r, "r")?,
    })
}

fn snap_config() -> CliResult<SnapConfig> {
    let mut cfg = SnapConfig::default();
    if let Ok(text) = std::env::var("HYP_SNAP_TOL") {
        cfg.tol = text
            .parse()
            .map_err(|_| usage(format!("HYP_SNAP_TOL={text:?} is not a float")))?;
    }
    Ok(cfg)
}

fn write_output(output: &Output, text: &str) -> CliResult {
    match &output.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("writing {}: {e}", path.display()))),
    }
}

fn read_source(path: &Option<PathBuf>) -> CliResult<String> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| usage(format!("reading {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| usage(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn build_named(name: &str, params: &Parsed) -> CliResult<FiniteHypergroup> {
    use hyperkit::constructions::{build_zp3, build_zpr4, build_zq2};
    Ok(match name {
        "zq2" => build_zq2(&params.q)?,
        "zp3" => build_zp3(&params.p)?,
        "zpr4" => build_zpr4(&params.p, &params.r)?,
        other if CATALOG.contains(&other) => group(other)?.hypergroup,
        other => {
            return Err(usage(format!(
                "unknown builder {other:?}; builders: zq2, zp3, zpr4, {}",
                CATALOG.join(", ")
            )))
        }
    })
}

/// A builder name, catalog group, or path to a hypergroup JSON file.
fn resolve_hypergroup(source: &str, params: &Parsed) -> CliResult<FiniteHypergroup> {
    if Path::new(source).exists() || source.ends_with(".json") {
        let text = read_source(&Some(PathBuf::from(source)))?;
        Ok(json::hypergroup_from_str(&text)?)
    } else {
        build_named(source, params)
    }
}

fn named_action(name: &str, params: &Parsed) -> CliResult<GroupAction> {
    Ok(match name {
        "sp3" => swap_action_order3(&params.p)?,
        "dpr4" => inversion_action_order4(&params.p, &params.r)?,
        "a4" => cycle_action_klein()?,
        other => {
            return Err(usage(format!(
                "unknown action {other:?}; actions: sp3, dpr4, a4"
            )))
        }
    })
}

/// Commutative bases pair through the character solver; catalog group names
/// pair through the group catalog with the subgroup matched by isomorphism.
fn make_pair(source: &str, subset: &[usize], params: &Parsed, cfg: &SnapConfig) -> CliResult<HypergroupPair> {
    let subset: BTreeSet<usize> = subset.iter().copied().collect();
    if CATALOG.contains(&source) {
        let big = group(source)?;
        let sub = big.hypergroup.subhypergroup(&subset)?;
        let order = sub.hyper.order();
        for name in CATALOG {
            let candidate = group(name)?;
            if candidate.hypergroup.order() == order {
                if let Ok(pair) = pair_group(&big, &subset, &candidate, cfg) {
                    return Ok(pair);
                }
            }
        }
        return Err(usage(format!(
            "subgroup of {source} matches no catalog group"
        )));
    }
    let h = resolve_hypergroup(source, params)?;
    Ok(pair_commutative(&h, &subset, cfg)?)
}

fn validated(h: &FiniteHypergroup) -> CliResult {
    let report = h.validate_axioms();
    if report.is_valid() {
        Ok(())
    } else {
        Err(math(&report))
    }
}

fn example_output(
    id: &str,
    params: &Parsed,
    format: Format,
    audit: bool,
    cfg: &SnapConfig,
) -> CliResult<String> {
    let built = build_example(id, &params.p, &params.r, cfg)?;
    let twisted = built.twisted(&params.q)?;
    if audit {
        let published = published_table(id, &params.p, &params.q, &params.r)?;
        let discrepancies = audit_against_published(&published, &twisted)?;
        let report = serde_json::json!({
            "example": id,
            "notes": published.notes,
            "discrepancies": discrepancies,
        });
        if discrepancies.is_empty() {
            return Ok(format!("{}\n", serde_json::to_string_pretty(&report).unwrap()));
        }
        return Err(CliError::Math(MathFailure(report)));
    }
    let n_big = Some(built.pair.dual_big.len());
    Ok(if built.info.graded {
        emit_graded_table(&built.graded_twisted(&params.q)?, format, n_big)
    } else {
        emit_table(&twisted, format, n_big)
    })
}

/// "q=1/4,1/2;p=1/3" -> ordered list of (parameter, values).
fn parse_sweep(spec: &str) -> CliResult<Vec<(char, Vec<Scalar>)>> {
    let mut grid = Vec::new();
    for part in spec.split(';') {
        let (name, values) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("--sweep segment {part:?} lacks '='")))?;
        let name = match name.trim() {
            "p" => 'p',
            "q" => 'q',
            "r" => 'r',
            other => return Err(usage(format!("--sweep parameter {other:?}"))),
        };
        let values = values
            .split(',')
            .map(|v| parse_rational(v).map_err(|e| usage(format!("--sweep: {e}"))))
            .collect::<CliResult<Vec<_>>>()?;
        if values.is_empty() {
            return Err(usage(format!("--sweep parameter {name} has no values")));
        }
        grid.push((name, values));
    }
    Ok(grid)
}

fn sweep_points(grid: &[(char, Vec<Scalar>)]) -> Vec<Vec<(char, Scalar)>> {
    let mut points: Vec<Vec<(char, Scalar)>> = vec![vec![]];
    for (name, values) in grid {
        points = points
            .into_iter()
            .flat_map(|point| {
                values.iter().map(move |v| {
                    let mut next = point.clone();
                    next.push((*name, v.clone()));
                    next
                })
            })
            .collect();
    }
    points
}

fn run_sweep(
    id: &str,
    base: &Parsed,
    format: Format,
    audit: bool,
    cfg: &SnapConfig,
    spec: &str,
) -> CliResult<String> {
    let grid = parse_sweep(spec)?;
    let points = sweep_points(&grid);
    let results: Vec<CliResult<String>> = std::thread::scope(|scope| {
        let handles: Vec<_> = points
            .iter()
            .map(|point| {
                scope.spawn(move || {
                    let mut params = Parsed {
                        p: base.p.clone(),
                        q: base.q.clone(),
                        r: base.r.clone(),
                    };
                    for (name, value) in point {
                        match name {
                            'p' => params.p = value.clone(),
                            'q' => params.q = value.clone(),
                            _ => params.r = value.clone(),
                        }
                    }
                    example_output(id, &params, format, audit, cfg)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    let mut merged = String::new();
    for (point, result) in points.iter().zip(results) {
        let header: Vec<String> = point
            .iter()
            .map(|(name, v)| format!("{name} = {}/{}", v.numer(), v.denom()))
            .collect();
        merged.push_str(&format!("# {} at {}\n", id, header.join(", ")));
        merged.push_str(&result?);
    }
    Ok(merged)
}

fn dispatch(cli: Cli) -> CliResult {
    let cfg = snap_config()?;
    match cli.verb {
        Verb::Catalog => {
            println!("builders: zq2 (--q), zp3 (--p), zpr4 (--p --r)");
            println!("groups: {}", CATALOG.join(", "));
            println!("actions: sp3 (--p), dpr4 (--p --r), a4");
            println!("examples: {}", EXAMPLE_IDS.join(", "));
            Ok(())
        }
        Verb::Build { name, params, output } => {
            let params = parse_params(&params)?;
            let h = build_named(&name, &params)?;
            write_output(&output, &emit_table(&h, output.format, None))
        }
        Verb::Validate { path } => {
            let text = read_source(&path)?;
            let h = json::hypergroup_from_str(&text)?;
            validated(&h)
        }
        Verb::Dual { source, params, output } => {
            let params = parse_params(&params)?;
            let h = resolve_hypergroup(&source, &params)?;
            let dual = dual_hypergroup(&h, &cfg)?;
            write_output(&output, &emit_table(&dual, output.format, None))
        }
        Verb::Twist { big, subset, params, output } => {
            let params = parse_params(&params)?;
            let pair = make_pair(&big, &subset, &params, &cfg)?;
            let twisted = pair.twisted_hypergroup(&params.q)?;
            validated(&twisted)?;
            let n_big = Some(pair.dual_big.len());
            write_output(&output, &emit_table(&twisted, output.format, n_big))
        }
        Verb::Admissible { big, subset, params } => {
            let params = parse_params(&params)?;
            let pair = make_pair(&big, &subset, &params, &cfg)?;
            let report = pair.admissible()?;
            if report.is_admissible() {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
                Ok(())
            } else {
                Err(math(&report))
            }
        }
        Verb::Regular { action, params } => {
            let params = parse_params(&params)?;
            let machine = MackeyMachine::new(named_action(&action, &params)?, &cfg)?;
            let report = machine.regularity()?;
            if report.is_regular() {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
                Ok(())
            } else {
                Err(math(&report))
            }
        }
        Verb::Semidirect { action, params, output } => {
            let params = parse_params(&params)?;
            let h = named_action(&action, &params)?.semidirect_product()?;
            write_output(&output, &emit_table(&h, output.format, None))
        }
        Verb::Example { id, params, output, audit, sweep } => {
            example_info(&id)?;
            let params = parse_params(&params)?;
            let text = match sweep {
                Some(spec) => run_sweep(&id, &params, output.format, audit, &cfg, &spec)?,
                None => example_output(&id, &params, output.format, audit, &cfg)?,
            };
            write_output(&output, &text)
        }
        Verb::Emit { path, output } => {
            let text = read_source(&path)?;
            let h = json::hypergroup_from_str(&text)?;
            write_output(&output, &emit_table(&h, output.format, None))
        }
        Verb::Isocheck { a, b, params } => {
            let params = parse_params(&params)?;
            let left = resolve_hypergroup(&a, &params)?;
            let right = resolve_hypergroup(&b, &params)?;
            match isomorphic(&left, &right) {
                Some(map) => {
                    println!("{}", serde_json::json!({ "isomorphic": true, "map": map }));
                    Ok(())
                }
                None => Err(math(serde_json::json!({
                    "isomorphic": false,
                    "left": left.name(),
                    "right": right.name(),
                }))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Math(MathFailure(report))) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            ExitCode::from(2)
        }
    }
}
