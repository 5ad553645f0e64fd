mod output;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qloq::circuit::json::{circuit_to_json, parse_circuit, parse_matrix, physical_to_json};
use qloq::circuit::{builtin_fixture, fixture_names, LogicalCircuit, PhysicalCircuit, QloqMap};
use qloq::compress::{
    compressible_fraction, expected_ratio_closed, expected_ratio_exact, expected_ratio_mc, grid_csv, threshold_scan,
    RatioQuery,
};
use qloq::cost::{circuit_cost, greedy_partition, qloq_unitary_lower_bound, qsd_cost, CostOptions, QsdVariant};
use qloq::loqc::{self, GateModel, LayerKind, Scenario};
use qloq::metrics::{
    benchmark_csv, entangling_capability, expressibility, expressibility_mean, BenchmarkRow, DEFAULT_BINS,
    DEFAULT_ENT_SAMPLES, DEFAULT_PAIRS,
};
use qloq::sim::{compile, random_unitary, CompileOptions, EntanglerStyle};
use qloq::synth::{qsd, QsdMode};
use qloq::vqe::{layered_ansatz, vqe_run, Method, OptimizerConfig, PauliHamiltonian, VqeConfig};
use qloq::QloqError;

use output::Artifacts;

/// Seed used by randomized subcommands when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

/// Reconstruction fidelity required by `qsd --verify`.
const VERIFY_FIDELITY: f64 = 1.0 - 1e-9;

#[derive(Parser)]
#[command(name = "qloq", version, about = "Qubit logic on qudits: costing, synthesis and analysis")]
struct Cli {
    /// Directory for output files and manifest.json. Without it the main
    /// output goes to stdout and no manifest is written.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for Monte Carlo work; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gate-by-gate entangler cost of a circuit under a map.
    Cost(CostArgs),
    /// Lower bounds on entanglers for an arbitrary n-qubit unitary.
    Bounds(BoundsArgs),
    /// Shannon decomposition of a unitary in qubit or carrier mode.
    Qsd(QsdArgs),
    /// Compressibility fractions and expected cost ratios.
    Compress(CompressArgs),
    /// Expressibility and entangling capability of ansatz templates.
    Metrics(MetricsArgs),
    /// Variational eigensolver on a Pauli Hamiltonian.
    Vqe(VqeArgs),
    /// Linear-optical success probabilities, resources and speedups.
    Loqc(LoqcArgs),
    /// List built-in circuits or print one.
    Fixtures(FixturesArgs),
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("source").required(true).args(["circuit", "fixture"])))]
struct CostArgs {
    /// Circuit JSON file.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Built-in fixture name.
    #[arg(long)]
    fixture: Option<String>,
    /// Partition as JSON, e.g. [[0,1],[2,3]]; overrides any map in the input.
    #[arg(long)]
    map: Option<String>,
    /// External qubits carry an auxiliary level.
    #[arg(long)]
    aux_levels: bool,
    /// Fail on gates without an exact rule.
    #[arg(long)]
    strict: bool,
    /// Price gates without an exact rule with an upper bound.
    #[arg(long)]
    heuristic: bool,
}

#[derive(clap::Args)]
struct BoundsArgs {
    /// Number of qubits (the largest row with --table).
    #[arg(long)]
    n: u32,
    /// Maximum qubits per carrier (the largest column with --table).
    #[arg(long = "G", default_value_t = 1)]
    g: u32,
    /// Explicit carrier sizes, e.g. 2,2,1; default is the greedy partition.
    #[arg(long, value_delimiter = ',', conflicts_with = "table")]
    partition: Option<Vec<u32>>,
    /// Emit the grid n = 2..=n by G = 1..=G.
    #[arg(long)]
    table: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Qubit,
    Qloq,
    QloqRemap,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("input").required(true).args(["unitary", "random"])))]
struct QsdArgs {
    /// Unitary JSON: a grid of [re, im] pairs.
    #[arg(long)]
    unitary: Option<PathBuf>,
    /// Decompose a seeded Haar-random unitary on this many qubits.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, value_enum, default_value = "qubit")]
    mode: ModeArg,
    /// Qubits per carrier for the carrier modes.
    #[arg(long, default_value_t = 2)]
    g: usize,
    /// Fail unless the physical circuit reproduces the input.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("what").required(true).args(["fig4", "ratio", "thresholds", "asymptotic"])))]
struct CompressArgs {
    /// Compressible fraction of random two-qubit-gate circuits.
    #[arg(long)]
    fig4: bool,
    /// Expected cost ratio at one (g, n, N).
    #[arg(long)]
    ratio: bool,
    /// Smallest N with ratio above 1 over a (g, n) grid.
    #[arg(long)]
    thresholds: bool,
    /// Ratio at large N over a (g, n) grid.
    #[arg(long)]
    asymptotic: bool,
    /// Circuit widths for --fig4, or the width for --ratio / --asymptotic.
    #[arg(long = "N", value_delimiter = ',')]
    big_n: Vec<u64>,
    #[arg(long, default_value_t = 60)]
    max_gates: usize,
    /// Monte Carlo trials; 0 skips sampling for --ratio.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_delimiter = ',')]
    g: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Scan limit for --thresholds.
    #[arg(long, default_value_t = 1000)]
    n_max: u64,
}

#[derive(clap::Args)]
struct MetricsArgs {
    /// Fixture names; defaults to the benchmark subset.
    #[arg(long, value_delimiter = ',', conflicts_with = "circuit")]
    fixture: Vec<String>,
    /// Parameterized circuit JSON instead of fixtures.
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_PAIRS)]
    pairs: usize,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = DEFAULT_ENT_SAMPLES)]
    samples: usize,
    /// Average expressibility over this many consecutive seeds.
    #[arg(long, default_value_t = 1)]
    repeats: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(clap::Args)]
struct VqeArgs {
    /// Hamiltonian as JSON lines of {"coeff": f, "pauli": "XZ.."}.
    #[arg(long)]
    hamiltonian: PathBuf,
    /// Parameterized ansatz JSON; default is a layered Ry/Rz + CNOT ansatz.
    #[arg(long)]
    ansatz: Option<PathBuf>,
    /// Entangling layers of the default ansatz.
    #[arg(long, default_value_t = 2)]
    layers: usize,
    /// Input basis state, qubit 0 first, e.g. 0011.
    #[arg(long)]
    input: Option<String>,
    /// Shots per measurement group; exact expectation when absent.
    #[arg(long)]
    shots: Option<u64>,
    #[arg(long, default_value = "nelder-mead")]
    optimizer: Method,
    #[arg(long, default_value_t = 5000)]
    budget: usize,
    #[arg(long, default_value_t = 0.5)]
    step: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 25)]
    patience: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("what").required(true).args(["curve", "layer", "resources", "speedup"])))]
struct LoqcArgs {
    /// N,G,success rows of the heralded single-layer curve.
    #[arg(long)]
    curve: bool,
    /// Success of global entangling layers of this kind.
    #[arg(long)]
    layer: Option<LayerKind>,
    /// Photons, modes and success of a compiled circuit.
    #[arg(long)]
    resources: bool,
    /// Speedup table for built-in or supplied scenarios.
    #[arg(long)]
    speedup: bool,
    #[arg(long = "N", default_value_t = 6)]
    big_n: usize,
    #[arg(long = "G", value_delimiter = ',', default_values_t = [1, 2, 3])]
    g: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    /// Built-in fixture for --resources.
    #[arg(long)]
    fixture: Option<String>,
    /// Circuit JSON with a map for --resources.
    #[arg(long, conflicts_with = "fixture")]
    circuit: Option<PathBuf>,
    #[arg(long, default_value = "ralph-cz")]
    model: GateModel,
    /// Per-entangler success, as index=probability (e.g. 0=0.448).
    #[arg(long = "override")]
    overrides: Vec<String>,
    #[arg(long, default_value_t = 0)]
    dump_ports: usize,
    /// Scenario JSON array for --speedup.
    #[arg(long)]
    scenarios: Option<PathBuf>,
}

#[derive(clap::Args)]
struct FixturesArgs {
    /// Print this fixture's circuit JSON with its map.
    #[arg(long)]
    show: Option<String>,
    /// With --show, print the compiled physical circuit instead.
    #[arg(long, requires = "show")]
    physical: bool,
}

enum Failure {
    Domain(QloqError),
    Usage(String),
    Io(String),
}

impl From<QloqError> for Failure {
    fn from(e: QloqError) -> Self {
        Failure::Domain(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Inputs read during a run, recorded in the manifest.
#[derive(Default)]
struct Run {
    inputs: Vec<String>,
    seed: Option<u64>,
}

impl Run {
    fn read(&mut self, path: &Path) -> Outcome<String> {
        self.inputs.push(path.display().to_string());
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn parse_partition(text: &str) -> Outcome<QloqMap> {
    let p: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("--map is not a JSON partition: {e}")))?;
    Ok(QloqMap::new(p)?)
}

/// Circuit, map and entangler style from a file or a fixture name.
fn load_circuit(
    run: &mut Run,
    file: Option<&Path>,
    fixture: Option<&str>,
) -> Outcome<(LogicalCircuit, QloqMap, EntanglerStyle)> {
    if let Some(path) = file {
        let (c, map) = parse_circuit(&run.read(path)?)?;
        let map = map.unwrap_or_else(|| QloqMap::qubits(c.num_qubits));
        return Ok((c, map, EntanglerStyle::default()));
    }
    let name = fixture.ok_or_else(|| Failure::Usage("need --circuit or --fixture".into()))?;
    let f = builtin_fixture(name)?;
    Ok((f.circuit, f.map, f.style))
}

fn cmd_cost(a: &CostArgs, run: &mut Run) -> Outcome<Artifacts> {
    let (c, map, _) = load_circuit(run, a.circuit.as_deref(), a.fixture.as_deref())?;
    let map = match &a.map {
        Some(m) => parse_partition(m)?,
        None => map,
    };
    let options = CostOptions { aux_levels: a.aux_levels, strict: a.strict, heuristic: a.heuristic };
    let report = circuit_cost(&c, &map, options)?;
    let unsupported = report.unsupported().count();
    let mut art = Artifacts::default()
        .file("cost.csv", report.to_csv())
        .file("cost.json", report.to_json())
        .line(format!("map {}: total {} entanglers", map.label(), report.total));
    if unsupported > 0 {
        art = art.line(format!("{unsupported} gates have no exact rule and are excluded from the total"));
    }
    Ok(art)
}

fn cmd_bounds(a: &BoundsArgs) -> Outcome<Artifacts> {
    if a.table {
        let mut csv = String::from("n");
        for g in 1..=a.g {
            csv.push_str(&format!(",G={g}"));
        }
        csv.push('\n');
        for n in 2..=a.n {
            csv.push_str(&n.to_string());
            for g in 1..=a.g {
                let lb = qloq_unitary_lower_bound(&greedy_partition(n, g))?;
                csv.push_str(&format!(",{}{}", lb.k, if lb.estimate { "*" } else { "" }));
            }
            csv.push('\n');
        }
        return Ok(Artifacts::default()
            .file("bounds.csv", csv)
            .line("* estimate: carriers outside the two largest are not counted"));
    }
    if a.g == 0 {
        return Err(Failure::Usage("--G must be at least 1".into()));
    }
    let partition = a.partition.clone().unwrap_or_else(|| greedy_partition(a.n, a.g));
    if partition.iter().sum::<u32>() != a.n {
        return Err(Failure::Usage(format!("partition {partition:?} does not sum to n = {}", a.n)));
    }
    let lb = qloq_unitary_lower_bound(&partition)?;
    let sizes: Vec<String> = partition.iter().map(|g| g.to_string()).collect();
    let csv = format!("n,partition,k,estimate\n{},{},{},{}\n", a.n, sizes.join(" "), lb.k, lb.estimate);
    let mut art = Artifacts::default().file("bounds.csv", csv);
    art = if lb.estimate {
        art.line(format!("{}* (estimate: carriers outside the two largest are not counted)", lb.k))
    } else {
        art.line(lb.k.to_string())
    };
    Ok(art)
}

fn cmd_qsd(a: &QsdArgs, run: &mut Run) -> Outcome<Artifacts> {
    let u = match (&a.unitary, a.random) {
        (Some(path), _) => parse_matrix(&run.read(path)?)?,
        (None, Some(n)) => {
            if n == 0 || n > qloq::synth::qsd::MAX_QUBITS {
                return Err(Failure::Usage(format!("--random needs 1..={} qubits", qloq::synth::qsd::MAX_QUBITS)));
            }
            run.seed = Some(a.seed);
            random_unitary(1 << n, &mut ChaCha8Rng::seed_from_u64(a.seed))
        }
        (None, None) => return Err(Failure::Usage("need --unitary or --random".into())),
    };
    let (mode, variant) = match a.mode {
        ModeArg::Qubit => (QsdMode::Qubit, None),
        ModeArg::Qloq => (QsdMode::Qloq { g: a.g }, Some(QsdVariant::Qloq { g: a.g as u32 })),
        ModeArg::QloqRemap => (QsdMode::QloqWithRemap { g: a.g }, Some(QsdVariant::QloqWithRemap { g: a.g as u32 })),
    };
    let r = qsd(&u, mode)?;
    let n = r.logical.num_qubits;
    let formula = match variant {
        Some(v) => qsd_cost(n as u32, v).ok(),
        None => qsd_cost(n as u32, QsdVariant::QubitBase { l: 2, c_l: 3 }).ok(),
    };
    let formula_text = formula.map_or_else(|| "-".to_string(), |k| k.to_string());
    let summary = format!(
        "n,mode,entanglers,formula,fidelity\n{n},{},{},{formula_text},{}\n",
        serde_json::to_value(mode)?["mode"].as_str().unwrap_or("?"),
        r.entanglers,
        r.fidelity
    );
    let mut art = Artifacts::default()
        .file("physical.json", physical_to_json(&r.physical))
        .file("logical.json", circuit_to_json(&r.logical, None))
        .file("qsd.csv", summary)
        .line(format!("{} entanglers on map {}", r.entanglers, r.physical.map().label()));
    if a.verify {
        if r.fidelity < VERIFY_FIDELITY {
            return Err(Failure::Domain(QloqError::Numerical(format!(
                "verification failed: fidelity {} below 1-1e-9",
                r.fidelity
            ))));
        }
        art = art.line(format!("verified, fidelity >= 1-1e-9 (fidelity {:.15})", r.fidelity));
    }
    Ok(art)
}

fn cmd_compress(a: &CompressArgs, run: &mut Run) -> Outcome<Artifacts> {
    let or = |v: &[u32], d: std::ops::RangeInclusive<u32>| if v.is_empty() { d.collect() } else { v.to_vec() };
    if a.fig4 {
        run.seed = Some(a.seed);
        let widths: Vec<u64> = if a.big_n.is_empty() { vec![4] } else { a.big_n.clone() };
        let mut csv = String::from("N,m,fraction,stderr\n");
        for &w in &widths {
            for m in 1..=a.max_gates {
                let e = compressible_fraction(w as usize, m, a.trials, a.seed)?;
                csv.push_str(&format!("{w},{m},{},{}\n", e.value, e.stderr));
            }
        }
        return Ok(Artifacts::default().file("fraction.csv", csv));
    }
    if a.ratio {
        let one = |v: &[u32], what: &str| -> Outcome<u32> {
            match v {
                [x] => Ok(*x),
                _ => Err(Failure::Usage(format!("--ratio needs exactly one --{what}"))),
            }
        };
        let (g, n) = (one(&a.g, "g")?, one(&a.n, "n")?);
        let big_n = match a.big_n.as_slice() {
            [x] => *x,
            _ => return Err(Failure::Usage("--ratio needs exactly one --N".into())),
        };
        let q = RatioQuery::new(g, n, big_n)?;
        let mut csv = String::from("g,n,N,exact,closed,mc,mc_stderr,trials\n");
        let closed = expected_ratio_closed(q)?;
        let exact = if big_n <= 1 << 20 { expected_ratio_exact(q)?.to_string() } else { "-".into() };
        if a.trials > 0 {
            run.seed = Some(a.seed);
            let mc = expected_ratio_mc(q, a.trials, a.seed)?;
            csv.push_str(&format!("{g},{n},{big_n},{exact},{closed},{},{},{}\n", mc.value, mc.stderr, mc.trials));
        } else {
            csv.push_str(&format!("{g},{n},{big_n},{exact},{closed},-,-,0\n"));
        }
        return Ok(Artifacts::default().file("ratio.csv", csv));
    }
    let ns = or(&a.n, 2..=9);
    if a.thresholds {
        let gs = or(&a.g, 2..=7);
        let csv = grid_csv(&gs, &ns, |g, n| Ok(threshold_scan(g, n, a.n_max)?.map_or("-".into(), |v| v.to_string())))?;
        return Ok(Artifacts::default().file("thresholds.csv", csv));
    }
    let gs = or(&a.g, 1..=7);
    let big_n = match a.big_n.as_slice() {
        [] => 1_000_000_000_000,
        [x] => *x,
        _ => return Err(Failure::Usage("--asymptotic takes one --N".into())),
    };
    let csv = grid_csv(&gs, &ns, |g, n| Ok(format!("{:.3}", expected_ratio_closed(RatioQuery::new(g, n, big_n)?)?)))?;
    Ok(Artifacts::default().file("asymptotic.csv", csv))
}

const BENCHMARK: &[&str] = &[
    "sim-circuit-1",
    "sim-circuit-2",
    "sim-circuit-9",
    "qloq-circuit-A",
    "qloq-circuit-I",
    "qloq-circuit-J",
    "qloq-circuit-K",
    "qloq-circuit-L",
    "qloq-circuit-M",
    "qloq-circuit-N",
    "qloq-circuit-O",
];

fn cmd_metrics(a: &MetricsArgs, run: &mut Run) -> Outcome<Artifacts> {
    run.seed = Some(a.seed);
    let mut templates: Vec<(String, LogicalCircuit, QloqMap, EntanglerStyle)> = Vec::new();
    if let Some(path) = &a.circuit {
        let (c, map, style) = load_circuit(run, Some(path), None)?;
        templates.push((path.display().to_string(), c, map, style));
    } else {
        let names: Vec<String> =
            if a.fixture.is_empty() { BENCHMARK.iter().map(|s| s.to_string()).collect() } else { a.fixture.clone() };
        for name in names {
            let f = builtin_fixture(&name)?;
            templates.push((name, f.circuit, f.map, f.style));
        }
    }
    let mut rows = Vec::new();
    for (id, c, map, style) in &templates {
        let expr = if a.repeats > 1 {
            expressibility_mean(c, a.pairs, a.bins, a.seed, a.repeats)?
        } else {
            expressibility(c, a.pairs, a.bins, a.seed)?
        };
        let ent = entangling_capability(c, a.samples, a.seed)?;
        rows.push(BenchmarkRow {
            id: id.clone(),
            entanglers: compile(c, map, CompileOptions { style: *style })?.entangler_count(),
            params: c.rotation_count(),
            expr: expr.value,
            expr_stderr: expr.stderr,
            ent: ent.value,
            ent_stderr: ent.stderr,
        });
    }
    Ok(Artifacts::default().file("metrics.csv", benchmark_csv(&rows)))
}

fn cmd_vqe(a: &VqeArgs, run: &mut Run) -> Outcome<Artifacts> {
    let h = PauliHamiltonian::parse(&run.read(&a.hamiltonian)?)?;
    let ansatz = match &a.ansatz {
        Some(path) => parse_circuit(&run.read(path)?)?.0,
        None => layered_ansatz(h.num_qubits(), a.layers),
    };
    if a.shots.is_some() {
        run.seed = Some(a.seed);
    }
    let config = VqeConfig {
        optimizer: OptimizerConfig {
            method: a.optimizer,
            budget: a.budget,
            step: a.step,
            tol: a.tol,
            patience: a.patience,
        },
        input: a.input.clone(),
        shots: a.shots,
        seed: a.seed,
        initial: None,
    };
    let trace = vqe_run(&ansatz, &h, &config)?;
    let exact = h.ground_energy().ok();
    let result = serde_json::json!({
        "best_energy": trace.best_energy,
        "best_params": trace.best_params,
        "converged": trace.converged,
        "evaluations": trace.iterations.len(),
        "exact_ground_energy": exact,
    });
    let mut art = Artifacts::default()
        .file("trace.csv", trace.to_csv())
        .file("result.json", serde_json::to_string_pretty(&result)? + "\n")
        .line(format!("best energy {} after {} evaluations", trace.best_energy, trace.iterations.len()));
    if let Some(e) = exact {
        art = art.line(format!("exact ground energy {e}"));
    }
    Ok(art)
}

fn cmd_loqc(a: &LoqcArgs, run: &mut Run) -> Outcome<Artifacts> {
    if a.curve {
        return Ok(Artifacts::default().file("curve.csv", loqc::heralded_curve_csv(a.big_n, &a.g)?));
    }
    if let Some(kind) = a.layer {
        let mut csv = String::from("N,G,layers,success,exact,interpolated\n");
        for &g in &a.g {
            let s = loqc::layer_success(kind, a.big_n, g, a.layers)?;
            csv.push_str(&format!(
                "{},{g},{},{},{},{}\n",
                a.big_n,
                a.layers,
                loqc::to_f64(&s.probability),
                s.probability,
                s.interpolated
            ));
        }
        return Ok(Artifacts::default().file("layer.csv", csv));
    }
    if a.resources {
        let (c, map, style) = load_circuit(run, a.circuit.as_deref(), a.fixture.as_deref())?;
        let pc: PhysicalCircuit = compile(&c, &map, CompileOptions { style })?;
        let mut overrides = BTreeMap::new();
        for o in &a.overrides {
            let (i, p) =
                o.split_once('=').ok_or_else(|| Failure::Usage(format!("--override `{o}` is not index=probability")))?;
            let i: usize = i.trim().parse().map_err(|_| Failure::Usage(format!("bad entangler index in `{o}`")))?;
            overrides.insert(i, loqc::parse_probability(p)?);
        }
        let r = loqc::resources(&map, &pc, a.model, &overrides, a.dump_ports)?;
        let csv = format!("photons,modes,entanglers,success\n{},{},{},{}\n", r.photons, r.modes, pc.entangler_count(), r.success);
        let mut art = Artifacts::default().file("resources.csv", csv);
        for note in &r.notes {
            art = art.line(note);
        }
        return Ok(art);
    }
    let scenarios: Vec<Scenario> = match &a.scenarios {
        Some(path) => serde_json::from_str(&run.read(path)?)
            .map_err(|e| Failure::Usage(format!("{}: not a scenario array: {e}", path.display())))?,
        None => vec![loqc::lih_scenario(), loqc::six_qubit_scenario()],
    };
    Ok(Artifacts::default().file("speedup.csv", loqc::speedup_table(&scenarios)?))
}

fn cmd_fixtures(a: &FixturesArgs) -> Outcome<Artifacts> {
    if let Some(name) = &a.show {
        let f = builtin_fixture(name)?;
        if a.physical {
            let pc = compile(&f.circuit, &f.map, CompileOptions { style: f.style })?;
            return Ok(Artifacts::default().file(&format!("{name}.physical.json"), physical_to_json(&pc)));
        }
        return Ok(Artifacts::default().file(&format!("{name}.json"), circuit_to_json(&f.circuit, Some(&f.map))));
    }
    let mut csv = String::from("name,qubits,map,entanglers,description\n");
    for name in fixture_names() {
        let f = builtin_fixture(name)?;
        let e = f.entanglers.map_or_else(|| "-".to_string(), |k| k.to_string());
        csv.push_str(&format!("{name},{},{},{e},\"{}\"\n", f.circuit.num_qubits, f.map.label(), f.description));
    }
    Ok(Artifacts::default().file("fixtures.csv", csv))
}

fn dispatch(cli: &Cli) -> Outcome<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;
    }
    let mut run = Run::default();
    let (name, art) = match &cli.command {
        Command::Cost(a) => ("cost", cmd_cost(a, &mut run)?),
        Command::Bounds(a) => ("bounds", cmd_bounds(a)?),
        Command::Qsd(a) => ("qsd", cmd_qsd(a, &mut run)?),
        Command::Compress(a) => ("compress", cmd_compress(a, &mut run)?),
        Command::Metrics(a) => ("metrics", cmd_metrics(a, &mut run)?),
        Command::Vqe(a) => ("vqe", cmd_vqe(a, &mut run)?),
        Command::Loqc(a) => ("loqc", cmd_loqc(a, &mut run)?),
        Command::Fixtures(a) => ("fixtures", cmd_fixtures(a)?),
    };
    match &cli.out {
        Some(dir) => {
            let manifest = output::write_all(dir, &art, name, run.inputs, run.seed)
                .map_err(|e| Failure::Io(format!("cannot write to {}: {e}", dir.display())))?;
            for (file, _) in &art.files {
                println!("wrote {}", dir.join(file).display());
            }
            println!("wrote {}", manifest.display());
        }
        None => {
            if let Some((_, content)) = art.files.first() {
                let mut out = std::io::stdout().lock();
                let newline = if content.ends_with('\n') { "" } else { "\n" };
                // a closed pipe downstream is not an error for us
                let _ = write!(out, "{content}{newline}").and_then(|_| out.flush());
            }
        }
    }
    eprint!("{}", art.summary);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
