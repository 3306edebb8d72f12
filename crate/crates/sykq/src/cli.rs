//! Experiment runner: every verification and estimation workflow behind a
//! deterministic, machine-readable command line.
//!
//! Exit codes follow a CI-friendly contract: 0 when every tolerance in the
//! run passed, 1 for usage or configuration errors, 2 when the run
//! completed but a tolerance failed. Machine output (JSON or CSV) goes to
//! stdout or `--out`; a short human summary always goes to stderr. With
//! `--no-timestamp`, identical config and seed produce byte-identical
//! machine output.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::builder::PossibleValue;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Result, SykError};
use crate::evolution::{
    bessel_j_array, bessel_j_series, cutoff_bruteforce, cutoff_formula, make_plan,
    synthesize_evolution, CutoffStrategy, SynthesisPath,
};
use crate::oracles::{amplitude_readback, build_a_random, build_b, BlockEncoding};
use crate::simkernel::{exact_expm, StateOp, StateVector};
use crate::stats::{ks_distance, mean, mean_abs, mean_square, normal_cdf};
use crate::sykmodel::{hermiticity_defect, sample_couplings, IndexMode, RegisterLayout};
use crate::walk::{chebyshev_t_matrices, verify_oaa_identities, walk_eigenphase_check, OaaWalk,
    WalkOperator};
use crate::resources;

/// Which preparation oracle a run builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PrepKind {
    Exact,
    Random,
}

/// Machine output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl ValueEnum for IndexMode {
    fn value_variants<'a>() -> &'a [Self] {
        &[IndexMode::AllTuples, IndexMode::DistinctSorted]
    }

    fn to_possible_value(&self) -> Option<PossibleValue> {
        Some(match self {
            IndexMode::AllTuples => PossibleValue::new("all-tuples"),
            IndexMode::DistinctSorted => PossibleValue::new("distinct-sorted"),
        })
    }
}

/// Resolved run parameters: the config file contents with flag overrides
/// applied. Embedded verbatim in every report for provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: u32,
    pub j: f64,
    pub t: f64,
    pub epsilon: f64,
    pub mode: IndexMode,
    pub prep: PrepKind,
    pub depth: Option<u32>,
    pub seed: u64,
    pub grid: Option<Vec<f64>>,
    pub out: Option<String>,
    pub format: OutputFormat,
    pub no_timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 4,
            j: 1.0,
            t: 1.0,
            epsilon: 1e-6,
            mode: IndexMode::DistinctSorted,
            prep: PrepKind::Exact,
            depth: None,
            seed: 7,
            grid: None,
            out: None,
            format: OutputFormat::Json,
            no_timestamp: false,
        }
    }
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// JSON config file mirroring these flags; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Majorana mode count N.
    #[arg(long)]
    n: Option<u32>,
    /// Coupling scale J.
    #[arg(long)]
    j: Option<f64>,
    /// Evolution time t.
    #[arg(long)]
    t: Option<f64>,
    /// Target error tolerance.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Index tuple domain.
    #[arg(long, value_enum)]
    mode: Option<IndexMode>,
    /// Preparation oracle kind.
    #[arg(long, value_enum)]
    prep: Option<PrepKind>,
    /// Brickwork depth for the random preparation oracle.
    #[arg(long)]
    depth: Option<u32>,
    /// Base RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated sweep values; meaning depends on the subcommand
    /// (walk orders, circuit depths, mode counts, or Bessel arguments).
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Write machine output to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Machine output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Omit the timestamp so identical runs are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "sykq",
    version,
    about = "Simulation laboratory and resource estimator for SYK qubitization",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the block encoding against the assembled Hamiltonian.
    EncodeCheck(CommonArgs),
    /// Chebyshev, eigenphase, and amplification identities of the walk.
    WalkCheck(CommonArgs),
    /// Synthesize time evolution and compare with the exact exponential.
    Evolve(CommonArgs),
    /// Amplitude statistics of the random preparation oracle.
    Amplitudes(CommonArgs),
    /// Closed-form fault-tolerant resource estimates.
    Resources(CommonArgs),
    /// Bessel recurrence vs independent series cross-check table.
    BesselTable(CommonArgs),
}

/// Parse argv and execute. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let code = match e.kind() {
                DisplayHelp | DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

struct Outcome {
    pass: bool,
    results: Value,
    csv: String,
    human: String,
}

fn dispatch(cli: Cli) -> Result<bool> {
    let (name, args) = match &cli.command {
        Command::EncodeCheck(a) => ("encode-check", a),
        Command::WalkCheck(a) => ("walk-check", a),
        Command::Evolve(a) => ("evolve", a),
        Command::Amplitudes(a) => ("amplitudes", a),
        Command::Resources(a) => ("resources", a),
        Command::BesselTable(a) => ("bessel-table", a),
    };
    let cfg = resolve_config(args)?;
    let outcome = match name {
        "encode-check" => run_encode_check(&cfg)?,
        "walk-check" => run_walk_check(&cfg)?,
        "evolve" => run_evolve(&cfg)?,
        "amplitudes" => run_amplitudes(&cfg)?,
        "resources" => run_resources(&cfg)?,
        _ => run_bessel_table(&cfg)?,
    };
    emit(name, &cfg, &outcome)?;
    Ok(outcome.pass)
}

fn resolve_config(args: &CommonArgs) -> Result<RunConfig> {
    let mut cfg: RunConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(j) = args.j {
        cfg.j = j;
    }
    if let Some(t) = args.t {
        cfg.t = t;
    }
    if let Some(e) = args.epsilon {
        cfg.epsilon = e;
    }
    if let Some(m) = args.mode {
        cfg.mode = m;
    }
    if let Some(p) = args.prep {
        cfg.prep = p;
    }
    if let Some(d) = args.depth {
        cfg.depth = Some(d);
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(g) = &args.grid {
        cfg.grid = Some(g.clone());
    }
    if let Some(o) = &args.out {
        cfg.out = Some(o.display().to_string());
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    if args.no_timestamp {
        cfg.no_timestamp = true;
    }

    if !cfg.j.is_finite() || !cfg.t.is_finite() {
        return Err(SykError::InvalidArgument("j and t must be finite".into()));
    }
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(SykError::InvalidArgument(format!(
            "epsilon must lie in (0, 1), got {}",
            cfg.epsilon
        )));
    }
    Ok(cfg)
}

/// Serialized report wrapper shared by all subcommands.
#[derive(Serialize)]
struct Report<'a> {
    command: &'a str,
    version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
    config: &'a RunConfig,
    pass: bool,
    results: &'a Value,
}

fn emit(command: &str, cfg: &RunConfig, outcome: &Outcome) -> Result<()> {
    eprint!("{}", outcome.human);
    let payload = match cfg.format {
        OutputFormat::Json => {
            let report = Report {
                command,
                version: env!("CARGO_PKG_VERSION"),
                timestamp: if cfg.no_timestamp { None } else { Some(utc_now()) },
                config: cfg,
                pass: outcome.pass,
                results: &outcome.results,
            };
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => outcome.csv.clone(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, payload)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(payload.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn build_encoding(cfg: &RunConfig) -> Result<BlockEncoding> {
    match cfg.prep {
        PrepKind::Exact => {
            let inst = sample_couplings(cfg.n, cfg.j, cfg.mode, cfg.seed)?;
            BlockEncoding::with_exact_prep(inst)
        }
        PrepKind::Random => match cfg.depth {
            Some(d) => BlockEncoding::with_random_prep(cfg.n, cfg.j, cfg.mode, d, cfg.seed),
            None => BlockEncoding::with_random_prep_default_depth(cfg.n, cfg.j, cfg.mode, cfg.seed),
        },
    }
}

fn require_dense_scale(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.n > 6 {
        return Err(SykError::InvalidArgument(format!(
            "{what} holds the full walk register (2^(n+4k+1) amplitudes); n must be <= 6, got {}",
            cfg.n
        )));
    }
    Ok(())
}

/// Sweep values as exact nonnegative integers.
fn grid_as_u32(grid: &[f64]) -> Result<Vec<u32>> {
    grid.iter()
        .map(|&v| {
            if v.fract().abs() > 1e-9 || !(0.0..=u32::MAX as f64).contains(&v) {
                Err(SykError::InvalidArgument(format!(
                    "grid entry {v} is not a nonnegative integer"
                )))
            } else {
                Ok(v.round() as u32)
            }
        })
        .collect()
}

fn pass_line(pass: bool) -> &'static str {
    if pass {
        "PASS\n"
    } else {
        "FAIL\n"
    }
}

fn run_encode_check(cfg: &RunConfig) -> Result<Outcome> {
    require_dense_scale(cfg, "encode-check")?;
    let enc = build_encoding(cfg)?;
    let target = enc.target_hamiltonian()?;
    let encoded = enc.encoded_hamiltonian()?;
    let encode_err = encoded.max_abs_diff(&target);

    let block = enc.normalized_block()?;
    let block_defect = block.hermiticity_defect_max();
    let max_sv = block.singular_values().into_iter().fold(0.0f64, f64::max);
    let instance_defect = hermiticity_defect(enc.instance())?;

    let u = enc.unitary()?;
    let mut self_inverse = 0.0f64;
    for probe in 0..3u64 {
        let orig =
            StateVector::random_state(enc.layout().encoding_width(), cfg.seed.wrapping_add(probe));
        let mut state = orig.clone();
        u.apply(&mut state)?;
        u.apply(&mut state)?;
        self_inverse = self_inverse.max(state.max_abs_diff(&orig));
    }

    let tol = 1e-10;
    let pass =
        encode_err <= tol && block_defect <= tol && max_sv <= 1.0 + tol && self_inverse <= tol;

    let results = json!({
        "encode_max_abs_error": encode_err,
        "block_hermiticity_defect": block_defect,
        "instance_hermiticity_defect": instance_defect,
        "max_singular_value": max_sv,
        "self_inverse_residual": self_inverse,
        "lambda": enc.lambda(),
        "identity_offset": enc.identity_offset(),
        "tolerance": tol,
    });
    let csv = format!(
        "metric,value\nencode_max_abs_error,{encode_err:.16e}\n\
         block_hermiticity_defect,{block_defect:.16e}\n\
         instance_hermiticity_defect,{instance_defect:.16e}\n\
         max_singular_value,{max_sv:.16e}\nself_inverse_residual,{self_inverse:.16e}\n\
         lambda,{:.16e}\n",
        enc.lambda()
    );
    let human = format!(
        "encode-check: n={} mode={} prep={:?}\n  encode error {:.4e}  block defect {:.4e}\n  \
         max singular value {:.4}  self-inverse residual {:.4e}\n{}",
        cfg.n,
        enc.instance().mode,
        cfg.prep,
        encode_err,
        block_defect,
        max_sv,
        self_inverse,
        pass_line(pass)
    );
    Ok(Outcome { pass, results, csv, human })
}

fn run_walk_check(cfg: &RunConfig) -> Result<Outcome> {
    require_dense_scale(cfg, "walk-check")?;
    let enc = build_encoding(cfg)?;
    let orders: Vec<usize> = match &cfg.grid {
        Some(g) => grid_as_u32(g)?.into_iter().map(|v| v as usize).collect(),
        None => vec![0, 1, 2, 4, 8, 16],
    };
    let n_max = orders.iter().copied().max().unwrap_or(0);

    let w = WalkOperator::new(&enc)?;
    let mats = w.chebyshev_projections(n_max)?;
    let refs = chebyshev_t_matrices(&enc.normalized_block()?, n_max);
    let rows: Vec<(usize, f64)> = orders
        .iter()
        .map(|&n| {
            let mut diff = mats[n].clone();
            diff.add_scaled(&refs[n], Complex64::new(-1.0, 0.0));
            (n, diff.spectral_norm())
        })
        .collect();
    let cheb_max = rows.iter().map(|r| r.1).fold(0.0f64, f64::max);

    let phases = walk_eigenphase_check(&w)?;

    // The flagless amplification register is system + index wide; the
    // m <= 6 sweep is kept to widths where it finishes in seconds.
    let layout = enc.layout();
    let oaa_report = if layout.n_system() + layout.n_index() <= 12 {
        let oaa = OaaWalk::new(&enc)?;
        Some(verify_oaa_identities(&oaa, 6)?)
    } else {
        None
    };

    let tol = 1e-8;
    let oaa_pass = oaa_report.as_ref().is_none_or(|r| {
        r.max_even_projected <= tol
            && r.max_odd_projected <= tol
            && r.max_even_operator <= tol
            && r.max_odd_operator <= tol
    });
    let pass = cheb_max <= tol
        && phases.max_phase_error <= tol
        && phases.max_invariance_residual <= tol
        && phases.paired
        && oaa_pass;

    let results = json!({
        "chebyshev": rows.iter().map(|&(n, e)| json!({"n": n, "error": e})).collect::<Vec<_>>(),
        "chebyshev_max_error": cheb_max,
        "eigenphase": {
            "max_invariance_residual": phases.max_invariance_residual,
            "max_phase_error": phases.max_phase_error,
            "paired": phases.paired,
        },
        "oaa": oaa_report.as_ref().map(|r| json!({
            "m_max": 6,
            "max_even_projected": r.max_even_projected,
            "max_odd_projected": r.max_odd_projected,
            "max_even_operator": r.max_even_operator,
            "max_odd_operator": r.max_odd_operator,
        })),
        "tolerance": tol,
    });
    let mut csv = String::from("n,chebyshev_error\n");
    for &(n, e) in &rows {
        csv.push_str(&format!("{n},{e:.16e}\n"));
    }
    let human = format!(
        "walk-check: n={} orders up to {}\n  chebyshev max {:.4e}  eigenphase max {:.4e}  \
         paired {}\n  oaa {}\n{}",
        cfg.n,
        n_max,
        cheb_max,
        phases.max_phase_error,
        phases.paired,
        oaa_report.as_ref().map_or("skipped (register too wide)".to_string(), |r| format!(
            "even {:.4e} odd {:.4e}",
            r.max_even_projected.max(r.max_even_operator),
            r.max_odd_projected.max(r.max_odd_operator)
        )),
        pass_line(pass)
    );
    Ok(Outcome { pass, results, csv, human })
}

fn run_evolve(cfg: &RunConfig) -> Result<Outcome> {
    require_dense_scale(cfg, "evolve")?;
    let enc = build_encoding(cfg)?;
    let lambda = enc.lambda();
    let tau = lambda * cfg.t;
    let plan = make_plan(tau, cfg.epsilon, CutoffStrategy::Bruteforce)?;
    let formula_k =
        if tau.abs() > 0.0 { cutoff_formula(tau.abs(), cfg.epsilon)? } else { plan.k };

    let exact = exact_expm(&enc.encoded_hamiltonian()?, cfg.t)?;
    let classical = synthesize_evolution(&enc, cfg.t, cfg.epsilon, SynthesisPath::Classical)?;
    let walk = synthesize_evolution(&enc, cfg.t, cfg.epsilon, SynthesisPath::Walk)?;
    let mut diff = classical.clone();
    diff.add_scaled(&exact, Complex64::new(-1.0, 0.0));
    let realized = diff.spectral_norm();
    let mut agree = classical;
    agree.add_scaled(&walk, Complex64::new(-1.0, 0.0));
    let agreement = agree.spectral_norm();

    // Cutoff-formula sanity over the standard grid, independent of config.
    let mut grid_rows = Vec::new();
    let mut max_delta = 0i64;
    for &gt in &[5.0f64, 10.0, 20.0, 50.0] {
        for &ge in &[1e-4f64, 1e-8, 1e-12] {
            let kf = cutoff_formula(gt, ge)? as i64;
            let kb = cutoff_bruteforce(gt, ge)? as i64;
            max_delta = max_delta.max((kf - kb).abs());
            grid_rows.push(json!({
                "tau": gt, "epsilon": ge, "k_formula": kf, "k_bruteforce": kb,
            }));
        }
    }

    let pass = realized <= cfg.epsilon && agreement <= 1e-8 && max_delta <= 3;

    let results = json!({
        "lambda": lambda,
        "tau": tau,
        "plan_k": plan.k,
        "formula_k": formula_k,
        "tail_bound": plan.tail_bound(),
        "realized_error": realized,
        "path_agreement": agreement,
        "cutoff_grid": grid_rows,
        "cutoff_max_delta": max_delta,
        "agreement_tolerance": 1e-8,
    });
    let mut csv = String::from("n,re_c_n,im_c_n\n");
    for (n, c) in plan.coeffs.iter().enumerate() {
        csv.push_str(&format!("{n},{:.16e},{:.16e}\n", c.re, c.im));
    }
    let human = format!(
        "evolve: n={} tau={:.4} K={} (formula {})\n  error vs exact {:.4e} (target {:.1e})  \
         path agreement {:.4e}\n  cutoff grid max |delta K| = {}\n{}",
        cfg.n,
        tau,
        plan.k,
        formula_k,
        realized,
        cfg.epsilon,
        agreement,
        max_delta,
        pass_line(pass)
    );
    Ok(Outcome { pass, results, csv, human })
}

fn run_amplitudes(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.n > 8 {
        return Err(SykError::InvalidArgument(format!(
            "amplitude readback grows as 2^(4 ceil(log2 n)); n must be <= 8, got {}",
            cfg.n
        )));
    }
    let layout = RegisterLayout::for_modes(cfg.n)?;
    let l = layout.index_dim();
    let sigma = (1.0 / l as f64).sqrt();

    let depths: Vec<u32> = if let Some(d) = cfg.depth {
        vec![d]
    } else if let Some(g) = &cfg.grid {
        grid_as_u32(g)?
    } else {
        vec![1, 2, 4, 8, 16, 32, 64]
    };
    let n_seeds = 20u64;

    let mut rows = Vec::new();
    for &depth in &depths {
        let mut pooled = Vec::with_capacity(l * n_seeds as usize);
        let mut ratios = Vec::with_capacity(n_seeds as usize);
        for s in 0..n_seeds {
            let circ = build_a_random(&layout, depth, cfg.seed.wrapping_add(s))?;
            let alpha = amplitude_readback(&circ)?;
            ratios.push(mean_square(&alpha).sqrt() / mean_abs(&alpha));
            pooled.extend_from_slice(&alpha);
        }
        let ks = ks_distance(&pooled, |x| normal_cdf(x, 0.0, sigma));
        rows.push((depth, ks, mean(&ratios)));
    }

    let uniform = amplitude_readback(&build_b(layout.n_index()))?;
    let uniform_ratio = mean_square(&uniform).sqrt() / mean_abs(&uniform);

    let target = (std::f64::consts::PI / 2.0).sqrt();
    let (final_depth, final_ks, final_ratio) = *rows.last().expect("at least one depth");
    let pass = final_ks <= 0.05 && (final_ratio - target).abs() <= 0.05 * target;

    let results = json!({
        "index_qubits": layout.n_index(),
        "index_dim": l,
        "seeds": n_seeds,
        "rows": rows
            .iter()
            .map(|&(d, ks, r)| json!({"depth": d, "ks_distance": ks, "ratio_mean": r}))
            .collect::<Vec<_>>(),
        "uniform_ratio": uniform_ratio,
        "ratio_target": target,
        "final_depth": final_depth,
        "ks_tolerance": 0.05,
        "ratio_tolerance_rel": 0.05,
    });
    let mut csv = String::from("depth,ks_distance,ratio_mean\n");
    for &(d, ks, r) in &rows {
        csv.push_str(&format!("{d},{ks:.16e},{r:.16e}\n"));
    }
    let human = format!(
        "amplitudes: {} index qubits, {} seeds pooled\n  final depth {}: KS {:.4} \
         (<= 0.05), ratio {:.4} (target {:.4})\n{}",
        layout.n_index(),
        n_seeds,
        final_depth,
        final_ks,
        final_ratio,
        target,
        pass_line(pass)
    );
    Ok(Outcome { pass, results, csv, human })
}

fn run_resources(cfg: &RunConfig) -> Result<Outcome> {
    let ns: Vec<u32> = match &cfg.grid {
        Some(g) => grid_as_u32(g)?,
        None => vec![2, 4, 8, 16, 32, 64, 100, 200],
    };
    let rows = resources::resource_sweep(&ns, cfg.j, cfg.t, cfg.epsilon)?;
    let csv = resources::sweep_csv(&rows, cfg.epsilon);
    let results = json!({
        "epsilon": cfg.epsilon,
        "rows": rows,
    });
    let mut human = format!("resources: J={} t={} epsilon={:.1e}\n", cfg.j, cfg.t, cfg.epsilon);
    for r in &rows {
        human.push_str(&format!(
            "  N={:<4} select T {:<6} queries {:<8} leading T {:.4e}  ancillas {}\n",
            r.n, r.t_count_select, r.query_count, r.t_count_total_leading, r.ancilla_count
        ));
    }
    human.push_str(pass_line(true));
    Ok(Outcome { pass: true, results, csv, human })
}

fn run_bessel_table(cfg: &RunConfig) -> Result<Outcome> {
    let xs: Vec<f64> = cfg.grid.clone().unwrap_or_else(|| vec![0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0]);
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(SykError::InvalidArgument("bessel grid entries must be finite".into()));
    }
    let n_max = 60u32;
    let mut rows = Vec::new();
    let mut max_diff = 0.0f64;
    for &x in &xs {
        let col = bessel_j_array(n_max, x);
        for n in 0..=n_max {
            let series = bessel_j_series(n, x);
            let diff = (col[n as usize] - series).abs();
            max_diff = max_diff.max(diff);
            rows.push((n, x, col[n as usize], series, diff));
        }
    }
    let pass = max_diff <= 1e-12;

    let results = json!({
        "n_max": n_max,
        "x_grid": xs,
        "max_abs_diff": max_diff,
        "tolerance": 1e-12,
        "rows": rows
            .iter()
            .map(|&(n, x, a, b, d)| json!({
                "n": n, "x": x, "j_recurrence": a, "j_series": b, "abs_diff": d,
            }))
            .collect::<Vec<_>>(),
    });
    let mut csv = String::from("n,x,j_recurrence,j_series,abs_diff\n");
    for &(n, x, a, b, d) in &rows {
        csv.push_str(&format!("{n},{x},{a:.16e},{b:.16e},{d:.16e}\n"));
    }
    let human = format!(
        "bessel-table: orders 0..={} over {} arguments\n  max |recurrence - series| = {:.4e}\n{}",
        n_max,
        xs.len(),
        max_diff,
        pass_line(pass)
    );
    Ok(Outcome { pass, results, csv, human })
}

/// Date of a Unix day number in the proleptic Gregorian calendar.
fn civil_from_days(z: i64) -> (i64, u32, u32) {
    let z = z + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    (yoe + era * 400 + i64::from(m <= 2), m, d)
}

fn utc_now() -> String {
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format_utc(secs)
}

fn format_utc(secs: u64) -> String {
    let (y, m, d) = civil_from_days((secs / 86_400) as i64);
    let rem = secs % 86_400;
    format!(
        "{y:04}-{m:02}-{d:02}T{:02}:{:02}:{:02}Z",
        rem / 3600,
        (rem % 3600) / 60,
        rem % 60
    )
}
