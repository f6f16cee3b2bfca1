use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use addrep::audit::{
    audit_theorem1, audit_theorem2_bound, audit_theorem3, audit_theorem4_bound, exponent_scan,
    AuditReport,
};
use addrep::construct::{
    lemma1_sample, theorem2_construct, theorem4_construct, ConstructionReport, ParamValue,
    Recipe, Relation, VerifiedBound,
};
use addrep::seqcore::{
    block_count, delta, rep_series, weighted_block_counts, weighted_rep_series,
};
use addrep::sidon::{algebraic_sidon, greedy_sidon, is_sidon, GREEDY_START};
use addrep::{IntegerSet, WeightVector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::format::{parse_series, parse_set, write_series, write_set};
use crate::manifest::{manifest_path, sha256_hex, FileRecord, RunManifest};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_SAMPLING: i32 = 3;

#[derive(Parser, Debug, Serialize)]
#[command(name = "addrep", version, about = "Additive representation functions: generate, analyze, audit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a Sidon set or one of the constructions.
    Generate(GenerateArgs),
    /// Compute a per-n series from a set (or series) file.
    Analyze(AnalyzeArgs),
    /// Evaluate a finite-window inequality proxy.
    Audit(AuditArgs),
    /// Re-run the command recorded in a manifest and compare output hashes.
    Replay(ReplayArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum GenerateKind {
    GreedySidon,
    AlgebraicSidon,
    Theorem2,
    Lemma1,
    Theorem4,
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    pub kind: GenerateKind,
    /// Set file to write; the report and manifest go next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long = "N")]
    pub copies: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long = "M")]
    pub m: Option<u64>,
    /// Comma-separated weights, λ_0 first.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub max_trials: u64,
    /// Sidon substrate read from a set file.
    #[arg(long)]
    pub sidon: Option<PathBuf>,
    /// Sidon substrate: the first COUNT greedy Sidon terms.
    #[arg(long)]
    pub sidon_count: Option<usize>,
    /// Sidon substrate: the algebraic family for a prime.
    #[arg(long)]
    pub sidon_prime: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum AnalyzeKind {
    Rep,
    Delta,
    Blocks,
    WeightedBlocks,
    WeightedRep,
}

#[derive(Args, Debug, Serialize)]
pub struct AnalyzeArgs {
    pub what: AnalyzeKind,
    /// Set file, or a series file for `delta`.
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Last n of the series (alias --n).
    #[arg(long, visible_alias = "n")]
    pub horizon: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum AuditKind {
    T1,
    T2,
    T3,
    T4,
    #[value(name = "p1-scan")]
    #[serde(rename = "p1-scan")]
    P1Scan,
}

#[derive(Args, Debug, Serialize)]
pub struct AuditArgs {
    pub theorem: AuditKind,
    pub set: PathBuf,
    /// Output stem: writes STEM.json and STEM.tsv.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Window end (default: the set's horizon).
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long = "N")]
    pub copies: Option<u64>,
    #[arg(long = "M")]
    pub m: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Comma-separated exponents for p1-scan.
    #[arg(long, default_value = "0.5,1,1.5,2")]
    pub theta: String,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Write the replayed outputs under a new stem instead of only hashing them.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Sampling(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_BAD_INPUT,
            Failure::Sampling(_) => EXIT_SAMPLING,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Sampling(m) => f.write_str(m),
        }
    }
}

impl From<addrep::Error> for Failure {
    fn from(e: addrep::Error) -> Self {
        match e {
            addrep::Error::Sampling(_) => Failure::Sampling(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// The result of a command before anything touches the filesystem.
pub struct Execution {
    pub command: String,
    pub seed: Option<u64>,
    /// `(suffix, bytes)`; each file lands at `stem + suffix`.
    pub outputs: Vec<(&'static str, Vec<u8>)>,
    pub inputs: Vec<PathBuf>,
    pub exit_code: i32,
    pub summary: String,
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))
}

fn read_set(path: &Path) -> Result<IntegerSet, Failure> {
    parse_set(&read_text(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn parse_lambda(text: &str) -> Result<WeightVector, Failure> {
    let weights = text
        .split(',')
        .map(|w| {
            w.trim()
                .parse::<i64>()
                .map_err(|_| input(format!("bad weight {w:?} in --lambda")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(weights)?)
}

fn parse_thetas(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| input(format!("bad exponent {t:?} in --theta")))
        })
        .collect()
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| input(format!("missing required flag {flag}")))
}

pub fn execute(command: &Command) -> Result<Execution, Failure> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Analyze(a) => analyze(a),
        Command::Audit(a) => audit(a),
        Command::Replay(_) => Err(input("replay cannot be nested")),
    }
}

fn substrate(args: &GenerateArgs, inputs: &mut Vec<PathBuf>) -> Result<(IntegerSet, String), Failure> {
    match (&args.sidon, args.sidon_count, args.sidon_prime) {
        (Some(path), None, None) => {
            inputs.push(path.clone());
            Ok((read_set(path)?, format!("file:{}", path.display())))
        }
        (None, Some(c), None) => Ok((greedy_sidon(c)?, format!("greedy:{c}"))),
        (None, None, Some(p)) => Ok((algebraic_sidon(p)?, format!("algebraic:{p}"))),
        (None, None, None) => Err(input(
            "a Sidon substrate is required: --sidon FILE, --sidon-count C or --sidon-prime P",
        )),
        _ => Err(input("give exactly one of --sidon, --sidon-count, --sidon-prime")),
    }
}

fn sidon_report(recipe: Recipe, set: &IntegerSet, params: &[(&str, ParamValue)]) -> Result<ConstructionReport, Failure> {
    let mut r = ConstructionReport::new(recipe);
    for (k, v) in params {
        r.param(k, v.clone());
    }
    let cert = is_sidon(set)?;
    r.verified_bounds
        .push(VerifiedBound::exact("max_rep", Relation::AtMost, 2, cert.max_rep));
    Ok(r)
}

fn generate(args: &GenerateArgs) -> Result<Execution, Failure> {
    let mut inputs = Vec::new();
    let (set, report) = match args.kind {
        GenerateKind::GreedySidon => {
            let count = need(args.count, "--count")?;
            let set = greedy_sidon(count)?;
            let r = sidon_report(
                Recipe::GreedySidon,
                &set,
                &[
                    ("count", ParamValue::Int(count as i128)),
                    ("start", ParamValue::Int(GREEDY_START.into())),
                ],
            )?;
            (set, r)
        }
        GenerateKind::AlgebraicSidon => {
            let p = need(args.p, "--p")?;
            let set = algebraic_sidon(p)?;
            let r = sidon_report(Recipe::AlgebraicSidon, &set, &[("p", ParamValue::Int(p.into()))])?;
            (set, r)
        }
        GenerateKind::Theorem2 => {
            let copies = need(args.copies, "--N")?;
            let d = need(args.d, "--d")?;
            let (s, source) = substrate(args, &mut inputs)?;
            let (set, mut r) = theorem2_construct(&s, copies, d)?;
            r.param("substrate", ParamValue::Text(source));
            (set, r)
        }
        GenerateKind::Lemma1 | GenerateKind::Theorem4 => {
            let lam = parse_lambda(args.lambda.as_deref().ok_or_else(|| input("missing required flag --lambda"))?)?;
            let m = need(args.m, "--M")?;
            let d = args.d.unwrap_or(lam.degree() as u64);
            let seed = args
                .seed
                .ok_or_else(|| input("sampling commands require an explicit --seed"))?;
            if args.kind == GenerateKind::Lemma1 {
                lemma1_sample(m, d, &lam, seed, args.max_trials)?
            } else {
                let (s, source) = substrate(args, &mut inputs)?;
                let (set, mut r) = theorem4_construct(&s, m, d, &lam, seed, args.max_trials)?;
                r.param("substrate", ParamValue::Text(source));
                (set, r)
            }
        }
    };
    let json = report::construction_json(&report, set.len());
    let summary = format!(
        "{}: {} elements, horizon {}, bounds {}",
        report.recipe.name(),
        set.len(),
        set.bound(),
        if report.all_hold() { "hold" } else { "VIOLATED" }
    );
    Ok(Execution {
        command: format!("generate {}", report.recipe.name()),
        seed: report.seed,
        outputs: vec![
            ("", write_set(&set).into_bytes()),
            (".report.json", report::render(&json).into_bytes()),
        ],
        inputs,
        exit_code: EXIT_OK,
        summary,
    })
}

fn analyze(args: &AnalyzeArgs) -> Result<Execution, Failure> {
    let name = args.what.to_possible_value().expect("no skipped variants").get_name().to_string();
    let (tsv, summary) = if args.what == AnalyzeKind::Delta {
        let order = need(args.l, "--l")?;
        let text = read_text(&args.input)?;
        let series = parse_series(&text).map_err(|e| input(format!("{}: {e}", args.input.display())))?;
        let d = delta(&series, order)?;
        let summary = format!("delta order {order}: {} entries", d.len());
        (write_series(d), summary)
    } else {
        let set = read_set(&args.input)?;
        match args.what {
            AnalyzeKind::Rep => {
                let k = args.k.unwrap_or(2);
                let h = args.horizon.unwrap_or(set.bound().saturating_mul(u64::from(k)));
                let rep = rep_series(&set, k, h)?;
                let summary = format!("R_{{A,{k}}} on 0..={h}: max {}", rep.max());
                (write_series(rep.values().iter()), summary)
            }
            AnalyzeKind::Blocks => {
                let h = args.horizon.unwrap_or(set.bound());
                let values = (0..=h)
                    .map(|n| block_count(&set, n))
                    .collect::<Result<Vec<_>, _>>()?;
                let summary = format!("B(A, {h}) = {}", values.last().unwrap());
                (write_series(values), summary)
            }
            AnalyzeKind::WeightedBlocks => {
                let lam = parse_lambda(args.lambda.as_deref().ok_or_else(|| input("missing required flag --lambda"))?)?;
                let h = args.horizon.unwrap_or(set.bound());
                let values = weighted_block_counts(&set, &lam, h)?;
                let summary = format!("B(A, λ, {h}) = {}", values.last().unwrap());
                (write_series(values), summary)
            }
            AnalyzeKind::WeightedRep => {
                let lam = parse_lambda(args.lambda.as_deref().ok_or_else(|| input("missing required flag --lambda"))?)?;
                let h = args.horizon.unwrap_or(set.bound().saturating_mul(2));
                let rep = rep_series(&set, 2, h)?;
                let values = weighted_rep_series(&lam, &rep)?;
                let max = values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
                (write_series(values), format!("max |L(n)| on 0..={h}: {max}"))
            }
            AnalyzeKind::Delta => unreachable!(),
        }
    };
    Ok(Execution {
        command: format!("analyze {name}"),
        seed: None,
        outputs: vec![("", tsv.into_bytes())],
        inputs: vec![args.input.clone()],
        exit_code: EXIT_OK,
        summary,
    })
}

fn audit(args: &AuditArgs) -> Result<Execution, Failure> {
    let set = read_set(&args.set)?;
    let lam = parse_lambda(&args.lambda)?;
    let horizon = args.horizon.unwrap_or(set.bound());
    let name = args.theorem.to_possible_value().expect("no skipped variants").get_name().to_string();
    let (json, tsv, exit_code, summary) = if args.theorem == AuditKind::P1Scan {
        let thetas = parse_thetas(&args.theta)?;
        let scan = exponent_scan(&set, &lam, horizon, &thetas)?;
        let summary = scan
            .rows
            .iter()
            .map(|r| format!("theta {} ratio {}", r.theta, r.ratio))
            .collect::<Vec<_>>()
            .join("; ");
        (report::scan_json(&scan), report::scan_tsv(&scan), EXIT_OK, summary)
    } else {
        let r: AuditReport = match args.theorem {
            AuditKind::T1 => audit_theorem1(&set, &lam, horizon)?,
            AuditKind::T2 => audit_theorem2_bound(&set, &lam, need(args.copies, "--N")?, horizon)?,
            AuditKind::T3 => audit_theorem3(&set, &lam, horizon)?,
            AuditKind::T4 => {
                let d = args.d.unwrap_or(lam.degree() as u64);
                audit_theorem4_bound(&set, &lam, need(args.m, "--M")?, d, horizon)?
            }
            AuditKind::P1Scan => unreachable!(),
        };
        let code = if r.holds { EXIT_OK } else { EXIT_VIOLATED };
        let summary = format!(
            "{} proxy on 1..={}: lhs_sup {} vs rhs_sup {} -> {}",
            r.theorem.name(),
            r.horizon,
            r.lhs_sup,
            r.rhs_sup,
            if r.holds { "holds" } else { "violated" }
        );
        (report::audit_json(&r), report::audit_tsv(&r), code, summary)
    };
    Ok(Execution {
        command: format!("audit {name}"),
        seed: None,
        outputs: vec![
            (".json", report::render(&json).into_bytes()),
            (".tsv", tsv.into_bytes()),
        ],
        inputs: vec![args.set.clone()],
        exit_code,
        summary,
    })
}

fn out_stem(command: &Command) -> Option<&Path> {
    match command {
        Command::Generate(a) => Some(&a.out),
        Command::Analyze(a) => Some(&a.out),
        Command::Audit(a) => Some(&a.out),
        Command::Replay(a) => a.out.as_deref(),
    }
}

fn set_out_stem(command: &mut Command, stem: PathBuf) {
    match command {
        Command::Generate(a) => a.out = stem,
        Command::Analyze(a) => a.out = stem,
        Command::Audit(a) => a.out = stem,
        Command::Replay(a) => a.out = Some(stem),
    }
}

fn output_path(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| input(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

fn input_records(paths: &[PathBuf]) -> Result<Vec<FileRecord>, Failure> {
    paths
        .iter()
        .map(|p| {
            let bytes = fs::read(p).map_err(|e| input(format!("cannot read {}: {e}", p.display())))?;
            Ok(FileRecord {
                path: p.display().to_string(),
                sha256: sha256_hex(&bytes),
            })
        })
        .collect()
}

/// Writes the outputs of `exec` and its manifest under `stem`.
fn persist(exec: &Execution, command: &Command, args: &[String], stem: &Path) -> Result<(), Failure> {
    let mut output_files = Vec::new();
    for (suffix, bytes) in &exec.outputs {
        let path = output_path(stem, suffix);
        write_file(&path, bytes)?;
        output_files.push(FileRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(bytes),
        });
    }
    let params = match serde_json::to_value(command) {
        Ok(serde_json::Value::Object(mut m)) => m.values_mut().next().map(|v| v.take()).unwrap_or_default(),
        Ok(v) => v,
        Err(e) => return Err(input(format!("cannot record parameters: {e}"))),
    };
    let manifest = RunManifest {
        schema: report::SCHEMA.to_string(),
        command: exec.command.clone(),
        args: args.to_vec(),
        params,
        seed: exec.seed.map(|s| s.to_string()),
        input_files: input_records(&exec.inputs)?,
        output_files,
        exit_code: exec.exit_code,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_file(&manifest_path(stem), text.as_bytes())
}

fn retarget_out(args: &[String], stem: &Path) -> Vec<String> {
    let stem = stem.display().to_string();
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        if a == "--out" {
            out.push(a.clone());
            out.push(stem.clone());
            iter.next();
        } else if a.starts_with("--out=") {
            out.push(format!("--out={stem}"));
        } else {
            out.push(a.clone());
        }
    }
    out
}

fn replay(args: &ReplayArgs) -> Result<i32, Failure> {
    let text = read_text(&args.manifest)?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| input(format!("{}: not a run manifest: {e}", args.manifest.display())))?;
    let argv = std::iter::once("addrep".to_string()).chain(manifest.args.iter().cloned());
    let mut cli = Cli::try_parse_from(argv)
        .map_err(|e| input(format!("manifest arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(input("manifest records a replay"));
    }
    let recorded_stem = out_stem(&cli.command).expect("non-replay commands have --out").to_path_buf();

    for rec in &manifest.input_files {
        let bytes = fs::read(&rec.path).map_err(|e| input(format!("cannot read input {}: {e}", rec.path)))?;
        if sha256_hex(&bytes) != rec.sha256 {
            return Err(input(format!("input {} changed since the recorded run", rec.path)));
        }
    }

    if let Some(stem) = &args.out {
        set_out_stem(&mut cli.command, stem.clone());
    }
    let exec = execute(&cli.command)?;
    let stem = args.out.clone().unwrap_or(recorded_stem.clone());
    if args.out.is_some() {
        let new_args = retarget_out(&manifest.args, &stem);
        persist(&exec, &cli.command, &new_args, &stem)?;
    }

    let mut identical = exec.exit_code == manifest.exit_code;
    if !identical {
        println!("exit code differs: recorded {}, replayed {}", manifest.exit_code, exec.exit_code);
    }
    if exec.outputs.len() != manifest.output_files.len() {
        println!("number of outputs differs");
        identical = false;
    }
    for ((suffix, bytes), rec) in exec.outputs.iter().zip(&manifest.output_files) {
        let same = sha256_hex(bytes) == rec.sha256;
        println!(
            "{} {}",
            if same { "identical" } else { "DIFFERS  " },
            output_path(&stem, suffix).display()
        );
        identical &= same;
    }
    Ok(if identical { EXIT_OK } else { EXIT_VIOLATED })
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    let rest = &args[1.min(args.len())..];
    let result = match &cli.command {
        Command::Replay(r) => replay(r),
        command => execute(command).and_then(|exec| {
            let stem = out_stem(command).expect("non-replay commands have --out");
            persist(&exec, command, rest, stem)?;
            println!("{}", exec.summary);
            Ok(exec.exit_code)
        }),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
