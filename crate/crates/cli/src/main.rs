//! `gbtool`: construction, distance and girth analysis, and simulation of
//! generalized bicycle codes.

mod error;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gbcode::additive::{duality_check, to_gb, AdditiveCyclicCode};
use gbcode::alist::export_alist;
use gbcode::code::regularity;
use gbcode::distance::{
    effective_distance, gb_distance_bounds, min_distance_bruteforce, min_distance_z, refine_case_a, Engine,
    ExtractionPattern,
};
use gbcode::families::{self, cnot_matrix, cnot_permutation, logical_action, logical_reps_odd, preserves_row_space};
use gbcode::graph::{girth, girth4_predicate, girth6_predicate, tanner};
use gbcode::{build_gb, CodeDescriptor, CyclicPoly, GBCode};
use gbdecode::DecoderChoice;
use gbsim::{
    estimate_threshold, linear_grid, log_grid, ordered_below, read_results, sweep, write_results, RunManifest,
    SimCode, SimError, ThresholdEstimate,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use error::{invalid, CliError};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "gbtool", version, about = "Generalized bicycle code toolkit")]
struct Cli {
    /// Report errors on stderr as JSON objects.
    #[arg(long, global = true)]
    json_errors: bool,
    /// Worker threads for simulation (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the GB code of (a, b) over x^n - 1.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Write H_x and H_z as PREFIX.hx.alist and PREFIX.hz.alist.
        #[arg(long, value_name = "PREFIX")]
        alist: Option<PathBuf>,
        /// Write a JSON code descriptor.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// The odd and even distance families and the CNOT permutation.
    Families {
        kind: FamilyKind,
        #[arg(long)]
        d: usize,
        /// Certify the distance by exhaustive search.
        #[arg(long)]
        verify_distance: bool,
        /// Print logical representatives (odd family).
        #[arg(long)]
        logicals: bool,
        /// Print the CNOT permutation (odd family).
        #[arg(long)]
        cnot: bool,
        /// Check that the CNOT permutation preserves the stabilizers and acts as CNOT.
        #[arg(long)]
        verify: bool,
    },
    /// Exact distance and algebraic bounds.
    Distance {
        /// Family name (odd-d5, even-d4) or JSON descriptor file.
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        wmax: Option<usize>,
        /// Bounds for the code (f, p·f).
        #[arg(long, requires_all = ["f", "p"])]
        bounds: bool,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        p: Option<String>,
        /// Ring length when no code is given.
        #[arg(long)]
        n: Option<usize>,
        /// Refine the lower bound by enumerating light case-(a) vectors.
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
    /// Distance under hook errors of a syndrome extraction pattern.
    EffectiveDistance {
        #[arg(long)]
        code: String,
        /// rl, lr or bad.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        wmax: usize,
    },
    /// Girth of the Tanner graph of H_x.
    Girth {
        #[arg(long)]
        code: String,
        /// Also evaluate the algebraic girth-4 and girth-6 predicates.
        #[arg(long)]
        predicates: bool,
    },
    /// GB code of a one-generator additive cyclic code over F4.
    ConvertAdditive {
        #[arg(long)]
        n: usize,
        /// Generator such as "w + x + x^3 + w*x^4".
        #[arg(long)]
        gen: String,
        #[arg(long)]
        check_duality: bool,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Code-capacity Monte Carlo under depolarizing noise.
    Simulate(SimulateParams),
    /// Threshold estimate from simulation results.
    Threshold(ThresholdParams),
    /// Repeat the run recorded in a manifest.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        /// Write to this file instead of the recorded output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyKind {
    Odd,
    Even,
    Cnot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct SimulateParams {
    /// Family names or JSON descriptor files.
    #[arg(long, num_args = 1.., required = true)]
    codes: Vec<String>,
    /// bp-osd:<order> or mwpm.
    #[arg(long, default_value = "bp-osd:0")]
    decoder: String,
    #[arg(long, default_value_t = 0.01)]
    pmin: f64,
    #[arg(long, default_value_t = 0.3)]
    pmax: f64,
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    spacing: Spacing,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
struct ThresholdParams {
    #[arg(long)]
    results: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    bootstrap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also test strict curve ordering below this physical error rate.
    #[arg(long)]
    ordered_below: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            if std::env::args().any(|a| a == "--json-errors") {
                let msg = e.to_string();
                eprintln!("{}", json!({"error": "invalid-input", "code": 2, "message": msg.trim()}));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.json_errors {
                eprintln!("{}", json!({"error": e.kind(), "code": e.exit_code(), "message": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(invalid("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Invariant(e.to_string()))?;
    }
    match &cli.command {
        Command::Construct { n, a, b, alist, json } => construct(*n, a, b, alist.as_deref(), json.as_deref()),
        Command::Families {
            kind,
            d,
            verify_distance,
            logicals,
            cnot,
            verify,
        } => families_cmd(*kind, *d, *verify_distance, *logicals, *cnot, *verify),
        Command::Distance {
            code,
            wmax,
            bounds,
            f,
            p,
            n,
            refine,
            budget,
        } => distance(code.as_deref(), *wmax, *bounds, f.as_deref(), p.as_deref(), *n, *refine, *budget),
        Command::EffectiveDistance { code, pattern, wmax } => {
            let c = load_code(code)?;
            let pat = ExtractionPattern::by_name(&c.code, pattern)?;
            let value = effective_distance(&c.code, &pat, *wmax)?;
            print_json(&json!({"code": c.id, "pattern": pat.to_string(), "value": value}))
        }
        Command::Girth { code, predicates } => {
            let c = load_code(code)?;
            match girth(&tanner(c.code.hx())) {
                Some(g) => println!("{g}"),
                None => println!("acyclic"),
            }
            if *predicates {
                println!("has-4-cycle: {}", girth4_predicate(c.code.a(), c.code.b()));
                println!("girth-6: {}", girth6_predicate(c.code.a(), c.code.b()));
            }
            Ok(())
        }
        Command::ConvertAdditive {
            n,
            gen,
            check_duality,
            json,
        } => convert_additive(*n, gen, *check_duality, json.as_deref()),
        Command::Simulate(params) => simulate(params, None),
        Command::Threshold(params) => threshold(params, None),
        Command::Rerun { manifest, out } => rerun(manifest, out.clone()),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn params_label(code: &GBCode, d: Option<usize>) -> String {
    match d {
        Some(d) => format!("[[{},{},{d}]]", code.len(), code.logical_qubits()),
        None => format!("[[{},{}]]", code.len(), code.logical_qubits()),
    }
}

/// Family name (`odd-d5`) or path to a JSON [`CodeDescriptor`].
fn load_code(arg: &str) -> Result<SimCode, CliError> {
    if let Some((code, d)) = families::by_name(arg) {
        return Ok(SimCode {
            id: arg.to_string(),
            code,
            d: Some(d),
        });
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(invalid(format!("{arg:?} is neither a family name nor a descriptor file")));
    }
    let desc: CodeDescriptor = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let code = desc.build()?;
    let id = desc.family.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned())
    });
    let d = desc.family.as_deref().and_then(families::by_name).map(|(_, d)| d);
    Ok(SimCode { id, code, d })
}

fn construct(n: usize, a: &str, b: &str, alist: Option<&Path>, json_out: Option<&Path>) -> Result<(), CliError> {
    let code = build_gb(&CyclicPoly::parse(n, a)?, &CyclicPoly::parse(n, b)?)?;
    println!("{}", params_label(&code, None));
    let (cols, rows) = regularity(&code);
    let join = |s: &std::collections::BTreeSet<usize>| s.iter().map(usize::to_string).collect::<Vec<_>>().join("/");
    println!("column weights {}, row weights {}", join(&cols), join(&rows));
    if let Some(prefix) = alist {
        for (tag, h) in [("hx", code.hx()), ("hz", code.hz())] {
            let mut path = prefix.as_os_str().to_owned();
            path.push(format!(".{tag}.alist"));
            std::fs::write(PathBuf::from(path), export_alist(h))?;
        }
    }
    if let Some(path) = json_out {
        write_json_file(path, &code.descriptor(None))?;
    }
    Ok(())
}

fn families_cmd(
    kind: FamilyKind,
    d: usize,
    verify_distance: bool,
    logicals: bool,
    cnot: bool,
    verify: bool,
) -> Result<(), CliError> {
    let code = match kind {
        FamilyKind::Odd | FamilyKind::Cnot => families::make_odd(d)?,
        FamilyKind::Even => families::make_even(d)?,
    };
    if !matches!(kind, FamilyKind::Cnot) {
        if verify_distance {
            let dx = min_distance_bruteforce(&code, d)?.weight;
            let dz = min_distance_z(&code, d, Engine::Auto)?;
            if dx != d || dz != d {
                return Err(CliError::Invariant(format!(
                    "exhaustive search found distance {} instead of {d}",
                    dx.min(dz)
                )));
            }
        }
        println!("{}", params_label(&code, Some(d)));
    }
    if logicals {
        let reps = logical_reps_odd(d)?;
        let ops: Vec<_> = reps
            .x_ops()
            .into_iter()
            .chain(reps.z_ops())
            .map(|(name, v)| json!({"name": name, "weight": v.weight(), "support": v.ones_vec()}))
            .collect();
        print_json(&ops)?;
    }
    if cnot || matches!(kind, FamilyKind::Cnot) {
        let perm = cnot_permutation(d)?;
        if verify {
            if !preserves_row_space(code.hx(), &perm) || !preserves_row_space(code.hz(), &perm) {
                return Err(CliError::Invariant("permutation does not preserve the stabilizers".into()));
            }
            if logical_action(&code, &perm, &logical_reps_odd(d)?)? != cnot_matrix() {
                return Err(CliError::Invariant("permutation does not act as CNOT".into()));
            }
        }
        println!("{}", serde_json::to_string(perm.map())?);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn distance(
    code: Option<&str>,
    wmax: Option<usize>,
    bounds: bool,
    f: Option<&str>,
    p: Option<&str>,
    n: Option<usize>,
    refine: bool,
    budget: usize,
) -> Result<(), CliError> {
    if wmax.is_none() && !bounds {
        return Err(invalid("nothing to do: give --wmax, --bounds, or both"));
    }
    let given = code.map(load_code).transpose()?;
    let mut report = serde_json::Map::new();
    let target = match (&given, bounds) {
        (Some(c), _) => c.code.clone(),
        (None, true) => {
            let n = n.ok_or_else(|| invalid("--bounds without --code needs --n"))?;
            let f = CyclicPoly::parse(n, f.expect("required by clap"))?;
            build_gb(&f, &(&f * &CyclicPoly::parse(n, p.expect("required by clap"))?))?
        }
        (None, false) => return Err(invalid("--wmax needs --code")),
    };
    report.insert("n".into(), json!(target.n()));
    report.insert("a".into(), json!(target.a().to_string()));
    report.insert("b".into(), json!(target.b().to_string()));
    report.insert("k".into(), json!(target.logical_qubits()));
    if bounds {
        let n = target.n();
        let f = CyclicPoly::parse(n, f.expect("required by clap"))?;
        let p = CyclicPoly::parse(n, p.expect("required by clap"))?;
        if target.a() != &f || target.b() != &(&f * &p) {
            return Err(invalid("the code is not (f, p·f) for the given f and p"));
        }
        let rep = gb_distance_bounds(&f, &p, None, budget)?;
        report.insert("lower".into(), json!(rep.lower));
        report.insert("upper".into(), json!(rep.upper));
        report.insert("classical_d".into(), json!(rep.classical_d));
        report.insert("m".into(), json!(rep.m));
        report.insert("m_prime".into(), json!(rep.m_prime));
        report.insert(
            "witnesses".into(),
            json!(rep.witnesses.iter().map(|w| w.to_bitstring()).collect::<Vec<_>>()),
        );
        if refine {
            let r = refine_case_a(&f, &p, &rep, budget + 1);
            report.insert("refined_lower".into(), json!(r.lower));
        }
    }
    if let Some(w) = wmax {
        let wit = min_distance_bruteforce(&target, w)?;
        report.insert("distance_exact".into(), json!(wit.weight));
        report.insert("witness".into(), json!(wit.vector.to_bitstring()));
    }
    print_json(&report)
}

fn convert_additive(n: usize, gen: &str, check: bool, json_out: Option<&Path>) -> Result<(), CliError> {
    let c = AdditiveCyclicCode::parse(n, gen)?;
    let code = to_gb(&c)?;
    println!("{}", params_label(&code, None));
    println!("a = {}", code.a());
    println!("b = {}", code.b());
    if check {
        println!("duality: {}", u8::from(duality_check(&c)));
    }
    if let Some(path) = json_out {
        write_json_file(path, &code.descriptor(None))?;
    }
    Ok(())
}

fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn simulate(params: &SimulateParams, out: Option<PathBuf>) -> Result<(), CliError> {
    let out = out.unwrap_or_else(|| params.out.clone());
    let choice: DecoderChoice = params.decoder.parse()?;
    if !(0.0..=1.0).contains(&params.pmin) || !(params.pmin..=1.0).contains(&params.pmax) {
        return Err(invalid("need 0 <= pmin <= pmax <= 1"));
    }
    if params.points == 0 || params.trials == 0 {
        return Err(invalid("--points and --trials must be positive"));
    }
    let codes = params.codes.iter().map(|s| load_code(s)).collect::<Result<Vec<_>, _>>()?;
    let grid = match params.spacing {
        Spacing::Log if params.pmin <= 0.0 => return Err(invalid("log spacing needs pmin > 0")),
        Spacing::Log => log_grid(params.pmin, params.pmax, params.points),
        Spacing::Linear => linear_grid(params.pmin, params.pmax, params.points),
    };
    let mut manifest = RunManifest::new("simulate", serde_json::to_value(params)?, VERSION, Some(params.seed));
    let results = sweep(&codes, choice, &grid, params.trials, params.seed)?;
    let mut w = BufWriter::new(File::create(&out)?);
    write_results(&mut w, &results)?;
    w.flush()?;
    manifest.finish();
    manifest.save(&RunManifest::path_for(&out))?;
    eprintln!("wrote {} points to {}", results.len(), out.display());
    Ok(())
}

#[derive(Debug, Serialize)]
struct ThresholdReport {
    threshold: Option<ThresholdEstimate>,
    ordering: Option<Ordering>,
}

#[derive(Debug, Serialize)]
struct Ordering {
    p_max: f64,
    holds: bool,
}

fn threshold(params: &ThresholdParams, out: Option<PathBuf>) -> Result<(), CliError> {
    let out = out.unwrap_or_else(|| params.out.clone());
    let results = read_results(File::open(&params.results)?)?;
    let mut manifest = RunManifest::new("threshold", serde_json::to_value(params)?, VERSION, Some(params.seed));
    let estimate = match estimate_threshold(&results, params.bootstrap, params.seed) {
        Ok(e) => Some(e),
        Err(SimError::InsufficientData) => None,
        Err(e) => return Err(e.into()),
    };
    let ordering = params
        .ordered_below
        .map(|p_max| ordered_below(&results, p_max).map(|holds| Ordering { p_max, holds }))
        .transpose()?;
    let missing = estimate.is_none();
    write_json_file(
        &out,
        &ThresholdReport {
            threshold: estimate,
            ordering,
        },
    )?;
    manifest.finish();
    manifest.save(&RunManifest::path_for(&out))?;
    if missing {
        return Err(SimError::InsufficientData.into());
    }
    Ok(())
}

fn rerun(path: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let manifest = RunManifest::load(path)?;
    if manifest.version != VERSION {
        eprintln!(
            "warning: manifest written by version {}, running {VERSION}",
            manifest.version
        );
    }
    match manifest.subcommand.as_str() {
        "simulate" => simulate(&serde_json::from_value(manifest.params)?, out),
        "threshold" => threshold(&serde_json::from_value(manifest.params)?, out),
        other => Err(invalid(format!("manifest records unknown subcommand {other:?}"))),
    }
}
