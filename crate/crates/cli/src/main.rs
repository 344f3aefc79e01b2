use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};
use stabdisj_core::bounds::{self, CertifiedInputs, LevelBound, DEFAULT_LEVEL_CAP};
use stabdisj_core::codefile::{self, CodeFile};
use stabdisj_core::families::{self, ArrayPartition, FamilyInstance};
use stabdisj_core::oracle::{self, sampling, CodeOracle, LogicalAction};
use stabdisj_core::{
    compute_metrics, CircuitShape, DeclaredMetrics, DisjointWitness, Exactness, MetricsConfig, MetricsError,
    MetricsReport, Partition, StabilizerCode,
};

mod report;

/// Distance, disjointness and Clifford-hierarchy level bounds for stabilizer codes.
#[derive(Parser)]
#[command(name = "stabdisj", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a code file.
    Analyze(AnalyzeArgs),
    /// Emit (and optionally analyze) a built-in code family instance.
    Family(FamilyArgs),
    /// Check a circuit against a code with the dense oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct MetricArgs {
    /// Largest coset enumerated explicitly.
    #[arg(long, default_value_t = 65536)]
    budget: u64,
    /// Largest c in the disjointness sweep.
    #[arg(long, default_value_t = 64)]
    c_max: u64,
    /// Also bound transversal gates across this many blocks.
    #[arg(long)]
    multiblock: Option<u64>,
    /// Also bound q-local depth-h circuits.
    #[arg(long, num_args = 2, value_names = ["Q", "H"])]
    shallow: Option<Vec<u32>>,
    /// Also bound transversal gates composed with part permutations.
    #[arg(long)]
    permuting: bool,
    /// Sample transversal circuits and compare their levels with the bound.
    #[arg(long)]
    verify_oracle: bool,
    /// Seed for oracle sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include disjoint-set witnesses in the JSON report.
    #[arg(long)]
    witnesses: bool,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Add wall-clock timings to the report (makes it run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    code: PathBuf,
    /// Partition file; overrides the one in the code file.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// File of declared c-disjoint sets.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[command(flatten)]
    metrics: MetricArgs,
}

#[derive(Args)]
struct FamilyArgs {
    /// c422, five-qubit, reed-muller, surface, bacon-shor or c105.
    name: String,
    /// Reed-Muller dimension D.
    #[arg(long = "D")]
    d: Option<u32>,
    /// Linear size of surface and Bacon-Shor codes.
    #[arg(long)]
    l: Option<u64>,
    /// Bacon-Shor aspect exponent, e.g. `3/2`.
    #[arg(long)]
    a: Option<String>,
    /// Partition of the [[105,1]] array: columns or rows.
    #[arg(long)]
    partition: Option<String>,
    /// Analyze the instance instead of only emitting it.
    #[arg(long)]
    analyze: bool,
    /// Re-derive declared distances instead of trusting them.
    #[arg(long)]
    verify_declared: bool,
    /// Write the code file here.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    metrics: MetricArgs,
}

#[derive(Args)]
struct VerifyArgs {
    code: PathBuf,
    circuit: PathBuf,
    /// Partition file; overrides the one in the code file.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Highest hierarchy level tested.
    #[arg(long, default_value_t = 6)]
    max_level: u32,
    /// Largest coset enumerated explicitly.
    #[arg(long, default_value_t = 65536)]
    budget: u64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn parse_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    }
}

fn failure(code: u8, e: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| failure(1, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| failure(1, format!("{}: {e}", path.display())))
}

fn metrics_error(e: MetricsError) -> Failure {
    match e {
        MetricsError::InvalidWitness { .. } | MetricsError::DeclaredRefuted { .. } => failure(2, e),
        other => failure(1, other),
    }
}

struct Timer {
    enabled: bool,
    marks: serde_json::Map<String, Value>,
    last: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Timer {
            enabled,
            marks: serde_json::Map::new(),
            last: Instant::now(),
        }
    }

    fn mark(&mut self, name: &str) {
        let now = Instant::now();
        if self.enabled {
            let ms = (now - self.last).as_secs_f64() * 1e3;
            self.marks.insert(name.into(), json!((ms * 1e3).round() / 1e3));
        }
        self.last = now;
    }
}

/// Everything a report is built from.
struct Analysis<'a> {
    code: &'a StabilizerCode,
    partition: &'a Partition,
    report: MetricsReport,
    bounds: Vec<LevelBound>,
    oracle: Option<Value>,
    inconsistent: bool,
}

fn run_analysis<'a>(
    code: &'a StabilizerCode,
    partition: &'a Partition,
    declared: Option<&DeclaredMetrics>,
    args: &MetricArgs,
    trust_declared: bool,
    family: Option<&FamilyInstance>,
    timer: &mut Timer,
) -> Result<Analysis<'a>, Failure> {
    let cfg = MetricsConfig {
        budget: args.budget,
        c_max: args.c_max,
        trust_declared,
        ..MetricsConfig::default()
    };
    let report = compute_metrics(code, partition, &cfg, declared).map_err(metrics_error)?;
    timer.mark("metrics");

    let inputs = CertifiedInputs::from_report(&report);
    let bound_err = |e: bounds::BoundError| failure(1, e);
    let mut out = vec![
        bounds::transversal_level_bound(&inputs.d_min, &inputs.d_max, &inputs.delta).map_err(bound_err)?,
        bounds::cleaning_level_bound(&inputs.d_min, &inputs.d_max).map_err(bound_err)?,
    ];
    if let Some(r) = args.multiblock {
        out.push(
            bounds::multiblock_level_bound(
                &inputs.d_min,
                &inputs.d_max,
                &inputs.delta,
                r,
                inputs.num_parts,
                inputs.coset_size,
            )
            .map_err(bound_err)?,
        );
    }
    if args.permuting {
        out.push(
            bounds::permuting_level_bound(
                &inputs.d_min,
                &inputs.d_max,
                &inputs.delta,
                args.multiblock.unwrap_or(1),
                inputs.num_parts,
                inputs.coset_size,
            )
            .map_err(bound_err)?,
        );
    }
    if let Some(qh) = &args.shallow {
        let shape = CircuitShape::new(qh[0], qh[1]).ok_or_else(|| failure(2, "--shallow needs q, h >= 1"))?;
        out.push(
            bounds::shallow_level_bound(&inputs.d_min, &inputs.d_max, &inputs.delta, shape, DEFAULT_LEVEL_CAP)
                .map_err(bound_err)?,
        );
    }
    if let Some(exps) = family.and_then(|f| f.exponents.as_ref()) {
        out.push(bounds::asymptotic_level_bound(exps));
    }
    timer.mark("bounds");

    let mut oracle_json = None;
    let mut inconsistent = false;
    if args.verify_oracle {
        let transversal = out[0].level;
        oracle_json = Some(match (transversal, CodeOracle::new(code)) {
            (Some(bound), Ok(_)) => {
                let r = sampling::transversal_consistency(code, partition, bound, 100, 20_000, args.seed)
                    .map_err(|e| failure(1, e))?;
                inconsistent = r.violations > 0;
                report::consistency_json(&r, bound, args.seed)
            }
            (None, _) => json!({ "skipped": "the transversal bound is not finite" }),
            (_, Err(e)) => json!({ "skipped": e.to_string() }),
        });
        timer.mark("oracle");
    }
    Ok(Analysis {
        code,
        partition,
        report,
        bounds: out,
        oracle: oracle_json,
        inconsistent,
    })
}

fn analysis_json(a: &Analysis, args: &MetricArgs, timer: &Timer, family: Option<&FamilyInstance>) -> Value {
    let mut non_exact = Vec::new();
    if !a.report.d_min.is_exact() {
        non_exact.push("d_min");
    }
    if !a.report.d_max.is_exact() {
        non_exact.push("d_max");
    }
    if !a.report.delta.is_exact() {
        non_exact.push("delta");
    }
    if a.bounds.iter().any(|b| b.cap.is_some()) {
        non_exact.push("bounds");
    }
    let mut v = json!({
        "schema": report::SCHEMA,
        "tool": { "name": "stabdisj", "version": env!("CARGO_PKG_VERSION") },
        "code": report::code_json(a.code),
        "partition": report::partition_json(a.partition),
        "metrics": report::metrics_json(a.code, &a.report, args.witnesses),
        "bounds": a.bounds.iter().map(report::bound_json).collect::<Vec<_>>(),
        "toffoli": report::toffoli_json(&bounds::toffoli_excluded(a.report.d_min.lo)),
        "exact": a.report.exactness == Exactness::Exhaustive && non_exact.is_empty(),
        "non_exact": non_exact,
    });
    if let Some(o) = &a.oracle {
        v["oracle"] = o.clone();
    }
    if let Some(f) = family {
        v["family"] = json!({
            "name": f.name,
            "description": f.description,
            "declared_delta": f.declared_delta.as_ref().map(report::rational),
        });
    }
    if timer.enabled {
        v["timings_ms"] = Value::Object(timer.marks.clone());
    }
    v
}

fn finish_analysis(a: &Analysis, args: &MetricArgs, timer: &Timer, family: Option<&FamilyInstance>) -> Result<u8, Failure> {
    print!("{}", report::summary(a.code, a.partition, &a.report, &a.bounds));
    if let Some(o) = &a.oracle {
        println!("oracle: {o}");
    }
    if let Some(path) = &args.json {
        let v = analysis_json(a, args, timer, family);
        let text = serde_json::to_string_pretty(&v).expect("values serialize") + "\n";
        write(path, &text)?;
    }
    if a.inconsistent {
        eprintln!("error: a sampled circuit exceeded the level bound");
        return Ok(4);
    }
    let degraded = a.report.exactness != Exactness::Exhaustive || a.bounds.iter().any(|b| b.cap.is_some());
    Ok(if degraded { 3 } else { 0 })
}

fn load_code(path: &Path, partition: Option<&PathBuf>) -> Result<CodeFile, Failure> {
    let mut file = codefile::parse_code_file(&read(path)?).map_err(|e| parse_failure(path, e))?;
    if let Some(p) = partition {
        file.partition = codefile::parse_partition_file(&read(p)?, file.code.num_qudits())
            .map_err(|e| parse_failure(p, e))?;
    }
    Ok(file)
}

fn analyze(args: &AnalyzeArgs) -> Result<u8, Failure> {
    let mut timer = Timer::new(args.metrics.timings);
    let file = load_code(&args.code, args.partition.as_ref())?;
    let declared = match &args.witness {
        None => None,
        Some(path) => {
            let sets = codefile::parse_witness_file(&read(path)?, file.code.dim().get() as u32)
                .map_err(|e| parse_failure(path, e))?;
            let witnesses = sets
                .into_iter()
                .map(|s| {
                    Ok(DisjointWitness {
                        class: file.code.class(s.label).map_err(|e| parse_failure(path, e))?,
                        c: s.c,
                        members: s.members,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Some(DeclaredMetrics {
                distances: Vec::new(),
                witnesses,
            })
        }
    };
    timer.mark("parse");
    let a = run_analysis(&file.code, &file.partition, declared.as_ref(), &args.metrics, false, None, &mut timer)?;
    finish_analysis(&a, &args.metrics, &timer, None)
}

fn build_family(args: &FamilyArgs) -> Result<FamilyInstance, Failure> {
    let need = |what: &str| failure(2, format!("family {} needs --{what}", args.name));
    let fam_err = |e: families::FamilyError| failure(2, e);
    match args.name.as_str() {
        "c422" => Ok(families::four_two_two()),
        "five-qubit" => Ok(families::five_qubit()),
        "reed-muller" => families::reed_muller(args.d.ok_or_else(|| need("D"))?).map_err(fam_err),
        "surface" => families::surface_code(args.l.ok_or_else(|| need("l"))? as usize).map_err(fam_err),
        "bacon-shor" => {
            let l = args.l.ok_or_else(|| need("l"))?;
            let a_text = args.a.as_deref().ok_or_else(|| need("a"))?;
            let a: BigRational = a_text
                .parse()
                .map_err(|_| failure(2, format!("invalid exponent {a_text:?}")))?;
            families::bacon_shor_z(l, &a).map_err(fam_err)
        }
        "c105" => {
            let choice: ArrayPartition = args
                .partition
                .as_deref()
                .ok_or_else(|| need("partition"))?
                .parse()
                .map_err(fam_err)?;
            Ok(families::concatenated_105(choice))
        }
        other => Err(failure(
            2,
            format!("unknown family {other:?}; expected c422, five-qubit, reed-muller, surface, bacon-shor or c105"),
        )),
    }
}

fn family(args: &FamilyArgs) -> Result<u8, Failure> {
    let mut timer = Timer::new(args.metrics.timings);
    let f = build_family(args)?;
    timer.mark("build");
    let text = codefile::write_code_file(&f.code, &f.partition, &f.description);
    if let Some(path) = &args.output {
        write(path, &text)?;
    }
    if !args.analyze {
        if args.output.is_none() {
            print!("{text}");
        }
        return Ok(0);
    }
    let a = run_analysis(
        &f.code,
        &f.partition,
        f.declared.as_ref(),
        &args.metrics,
        !args.verify_declared,
        Some(&f),
        &mut timer,
    )?;
    finish_analysis(&a, &args.metrics, &timer, Some(&f))
}

fn matrix_json(m: &oracle::dense::Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.dim())
        .map(|i| {
            (0..m.dim())
                .map(|j| {
                    let v = m.get(i, j);
                    format!("{:.6}{:+.6}i", v.re, v.im).replace("-0.000000", "0.000000")
                })
                .collect()
        })
        .collect();
    json!(rows)
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let file = load_code(&args.code, args.partition.as_ref())?;
    let (code, partition) = (&file.code, &file.partition);
    let m = code.dim().get() as u32;
    let circuit = oracle::parse_circuit(&read(&args.circuit)?, partition, m)
        .map_err(|e| parse_failure(&args.circuit, e))?;
    let oracle = CodeOracle::new(code).map_err(|e| failure(1, e))?;
    let action = oracle.logical_action(&circuit).map_err(|e| failure(1, e))?;
    let mut v = json!({
        "schema": report::SCHEMA,
        "tool": { "name": "stabdisj", "version": env!("CARGO_PKG_VERSION") },
        "code": report::code_json(code),
        "partition": report::partition_json(partition),
        "circuit": { "q": circuit.shape().q(), "h": circuit.shape().h(), "layers": circuit.layers().len() },
    });
    let matrix = match action {
        LogicalAction::NotLogical { residual } => {
            v["logical"] = json!(false);
            v["diagnostics"] = json!({ "residual": residual });
            println!("not-logical: the circuit leaks out of the codespace (residual {residual:.3e})");
            if let Some(path) = &args.json {
                write(path, &(serde_json::to_string_pretty(&v).expect("serializes") + "\n"))?;
            }
            return Ok(1);
        }
        LogicalAction::Logical { matrix, residual } => {
            v["logical"] = json!(true);
            v["diagnostics"] = json!({ "residual": residual });
            matrix
        }
    };
    let stripped = oracle::hierarchy::strip_phase(&matrix);
    v["logical_action"] = matrix_json(&stripped);
    let mut cls = oracle.classifier();
    let level = cls.level(&matrix, args.max_level).map_err(|e| failure(1, e))?;
    v["hierarchy_level"] = json!(level);
    v["max_level"] = json!(args.max_level);

    let cfg = MetricsConfig {
        budget: args.budget,
        ..MetricsConfig::default()
    };
    let report = compute_metrics(code, partition, &cfg, None).map_err(metrics_error)?;
    let inputs = CertifiedInputs::from_report(&report);
    let shape = circuit.shape();
    let bound = if shape.is_transversal() {
        bounds::transversal_level_bound(&inputs.d_min, &inputs.d_max, &inputs.delta)
    } else {
        bounds::shallow_level_bound(&inputs.d_min, &inputs.d_max, &inputs.delta, shape, DEFAULT_LEVEL_CAP)
    }
    .map_err(|e| failure(1, e))?;
    v["bound"] = report::bound_json(&bound);
    let verdict = match (level, bound.level) {
        (_, None) => "no-finite-bound",
        (Some(l), Some(b)) if l <= b => "consistent",
        (None, Some(b)) if b > args.max_level => "undetermined",
        _ => "violated",
    };
    v["verdict"] = json!(verdict);

    let level_text = level.map_or_else(|| format!("> {}", args.max_level), |l| l.to_string());
    println!("logical action (phase stripped):");
    for i in 0..stripped.dim() {
        let row: Vec<String> = (0..stripped.dim())
            .map(|j| {
                let e = stripped.get(i, j);
                format!("{:>7.4}{:+.4}i", e.re, e.im)
            })
            .collect();
        println!("  {}", row.join("  "));
    }
    println!("hierarchy level: {level_text}");
    println!("{bound}");
    println!("verdict: {verdict}");
    if let Some(path) = &args.json {
        write(path, &(serde_json::to_string_pretty(&v).expect("serializes") + "\n"))?;
    }
    Ok(match verdict {
        "violated" => 4,
        _ if report.exactness != Exactness::Exhaustive => 3,
        _ => 0,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Family(f) => family(f),
        Command::Verify(v) => verify(v),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
