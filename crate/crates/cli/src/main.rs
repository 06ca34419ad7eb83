//! `symcoh` — generate, analyze and certify N-qubit pure states.
//!
//! Exit codes: 0 success (including a delivered NotCoherent verdict),
//! 1 usage or input error, 2 verification or precondition failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use symcoh::coherent::{coherent_from_tau, fit_coherent, CoherentFit, CoherentParam};
use symcoh::harness::{verify_ortho_entangled, verify_sym_coherent, TheoremReport};
use symcoh::separability::{is_product, meyer_wallach_q};
use symcoh::state::{product_state, random_state, PureState, QubitFactor, MAX_QUBITS};
use symcoh::symmetric::{
    binomial, dicke_state, project_symmetric, random_orthogonal, random_symmetric, to_sym_coeffs,
    DickeIndex,
};

#[derive(Parser)]
#[command(
    name = "symcoh",
    version,
    about = "N-qubit product-state detection, symmetric subspace and coherent-state toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a state and write it to a JSON state file.
    Gen(GenArgs),
    /// Separability and symmetric-subspace report for a state file.
    Analyze(AnalyzeArgs),
    /// Fit a coherent-state parameter to a symmetric state file.
    Fit(AnalyzeArgs),
    /// Split a state file into its symmetric and orthogonal components.
    Project(ProjectArgs),
    /// Run the randomized certification suites.
    Verify(VerifyArgs),
    /// Describe the Dicke basis for a given qubit count.
    Basis(BasisArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Coherent,
    Dicke,
    Random,
    RandomSym,
    RandomOrtho,
    Product,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Qubit count (1..=20); inferred from --factor for product states.
    #[arg(short, long)]
    n_qubits: Option<usize>,
    /// Real part of the stereographic parameter τ (coherent).
    #[arg(long, allow_negative_numbers = true)]
    tau_re: Option<f64>,
    /// Imaginary part of τ (coherent).
    #[arg(long, allow_negative_numbers = true)]
    tau_im: Option<f64>,
    /// Polar angle θ ∈ [0, π] from the negative z axis (coherent).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Azimuth φ ∈ [0, 2π) (coherent; default 0).
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Occupation number k (dicke).
    #[arg(long)]
    k: Option<usize>,
    /// RNG seed (random, random-sym, random-ortho).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One factor per qubit as A_RE,A_IM,B_RE,B_IM for a|1⟩ + b|0⟩
    /// (product); normalized on input.
    #[arg(long = "factor", value_name = "A_RE,A_IM,B_RE,B_IM")]
    factors: Vec<String>,
    /// Output state file.
    #[arg(short, long)]
    out: PathBuf,
    /// Machine-readable metadata on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input state file.
    input: PathBuf,
    /// Detector tolerance.
    #[arg(long, default_value_t = symcoh::separability::DEFAULT_TOL)]
    tol: f64,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProjectArgs {
    /// Input state file.
    input: PathBuf,
    /// Write the normalized symmetric component here.
    #[arg(long)]
    out_sym: Option<PathBuf>,
    /// Write the normalized orthogonal component here.
    #[arg(long)]
    out_ortho: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    SymCoherent,
    OrthoEntangled,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    /// Qubit count (2..=20).
    #[arg(short, long)]
    n_qubits: usize,
    /// Trials per sub-suite.
    #[arg(long, default_value_t = symcoh::harness::DEFAULT_TRIALS)]
    trials: usize,
    /// Master seed.
    #[arg(long, default_value_t = symcoh::harness::DEFAULT_SEED)]
    seed: u64,
    /// Detector tolerance.
    #[arg(long, default_value_t = symcoh::separability::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct BasisArgs {
    /// Qubit count (1..=20).
    #[arg(short, long)]
    n_qubits: usize,
    /// Restrict the table to one occupation number.
    #[arg(long)]
    k: Option<usize>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<symcoh::Error> for Failure {
    fn from(e: symcoh::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// 12 significant digits, the contract for human-readable numbers.
fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Project(args) => cmd_project(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Basis(args) => cmd_basis(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn require_n(n: Option<usize>) -> Result<usize, Failure> {
    let n = n.ok_or_else(|| Failure::usage("missing --n-qubits"))?;
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Failure::usage(format!(
            "n_qubits {n} outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(n)
}

fn parse_factor(text: &str) -> Result<QubitFactor, Failure> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("factor '{text}': {e}")))?;
    if parts.len() != 4 {
        return Err(Failure::usage(format!(
            "factor '{text}': expected A_RE,A_IM,B_RE,B_IM"
        )));
    }
    QubitFactor::normalized(
        Complex64::new(parts[0], parts[1]),
        Complex64::new(parts[2], parts[3]),
    )
    .map_err(|e| Failure::usage(format!("factor '{text}': {e}")))
}

fn coherent_param(args: &GenArgs) -> Result<CoherentParam, Failure> {
    let angles_given = args.theta.is_some() || args.phi.is_some();
    let tau_given = args.tau_re.is_some() || args.tau_im.is_some();
    if angles_given && tau_given {
        return Err(Failure::usage(
            "give either --tau-re/--tau-im or --theta/--phi, not both",
        ));
    }
    if angles_given {
        let theta = args
            .theta
            .ok_or_else(|| Failure::usage("--phi given without --theta"))?;
        CoherentParam::from_angles(theta, args.phi.unwrap_or(0.0)).map_err(Failure::from)
    } else {
        Ok(CoherentParam::from_tau(Complex64::new(
            args.tau_re.unwrap_or(0.0),
            args.tau_im.unwrap_or(0.0),
        )))
    }
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let (psi, description) = match args.kind {
        GenKind::Coherent => {
            let n = require_n(args.n_qubits)?;
            let p = coherent_param(&args)?;
            let label = match p {
                CoherentParam::Finite(t) => {
                    format!("coherent tau=({}, {})", sig12(t.re), sig12(t.im))
                }
                CoherentParam::Infinity => "coherent tau=INFINITY".to_string(),
            };
            (coherent_from_tau(n, p)?, label)
        }
        GenKind::Dicke => {
            let n = require_n(args.n_qubits)?;
            let k = args.k.ok_or_else(|| Failure::usage("dicke requires --k"))?;
            let idx = DickeIndex::new(n, k)?;
            (dicke_state(idx), format!("dicke k={k} (m={})", idx.m()))
        }
        GenKind::Random => {
            let n = require_n(args.n_qubits)?;
            (
                random_state(n, args.seed)?,
                format!("random seed={}", args.seed),
            )
        }
        GenKind::RandomSym => {
            let n = require_n(args.n_qubits)?;
            (
                random_symmetric(n, args.seed)?,
                format!("random-sym seed={}", args.seed),
            )
        }
        GenKind::RandomOrtho => {
            let n = require_n(args.n_qubits)?;
            (
                random_orthogonal(n, args.seed)?,
                format!("random-ortho seed={}", args.seed),
            )
        }
        GenKind::Product => {
            if args.factors.is_empty() {
                return Err(Failure::usage("product requires at least one --factor"));
            }
            let factors: Vec<QubitFactor> = args
                .factors
                .iter()
                .map(|t| parse_factor(t))
                .collect::<Result<_, _>>()?;
            if let Some(n) = args.n_qubits {
                if n != factors.len() {
                    return Err(Failure::usage(format!(
                        "--n-qubits {n} disagrees with {} factors",
                        factors.len()
                    )));
                }
            }
            (
                product_state(&factors)?,
                format!("product of {} factors", factors.len()),
            )
        }
    };
    symcoh::io::write_state_file(&args.out, &psi)?;
    if args.json {
        println!(
            "{}",
            json!({
                "kind": description,
                "n_qubits": psi.n_qubits(),
                "norm": psi.norm(),
                "out": args.out.display().to_string(),
            })
        );
    } else {
        println!("wrote {}", args.out.display());
        println!("kind: {description}");
        println!("n_qubits: {}", psi.n_qubits());
        println!("norm: {}", sig12(psi.norm()));
    }
    Ok(())
}

fn load_state(path: &PathBuf) -> Result<PureState, Failure> {
    symcoh::io::read_state_file(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let psi = load_state(&args.input)?;
    let verdict = is_product(&psi, args.tol);
    let q = meyer_wallach_q(&psi);
    let proj = project_symmetric(&psi);
    let factors_json: Option<Vec<serde_json::Value>> = verdict.factors.as_ref().map(|fs| {
        fs.iter()
            .map(|f| json!({ "a": [f.a.re, f.a.im], "b": [f.b.re, f.b.im] }))
            .collect()
    });
    if args.json {
        println!(
            "{}",
            json!({
                "n_qubits": psi.n_qubits(),
                "is_product": verdict.is_product,
                "residual": verdict.residual,
                "meyer_wallach_q": q,
                "sym_projection_norm": proj.norm_in_s,
                "ortho_norm": proj.ortho_norm,
                "factors": factors_json,
            })
        );
    } else {
        println!("n_qubits: {}", psi.n_qubits());
        println!("is_product: {}", verdict.is_product);
        println!("residual: {}", sig12(verdict.residual));
        println!("meyer_wallach_q: {}", sig12(q));
        println!("sym_projection_norm: {}", sig12(proj.norm_in_s));
        println!("ortho_norm: {}", sig12(proj.ortho_norm));
        if let Some(factors) = &verdict.factors {
            for (i, f) in factors.iter().enumerate() {
                println!(
                    "factor {}: a = ({}, {}), b = ({}, {})",
                    i + 1,
                    sig12(f.a.re),
                    sig12(f.a.im),
                    sig12(f.b.re),
                    sig12(f.b.im)
                );
            }
        }
    }
    Ok(())
}

fn cmd_fit(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let psi = load_state(&args.input)?;
    let coeffs = to_sym_coeffs(&psi, args.tol).map_err(|e| Failure::precondition(e.to_string()))?;
    let fit = fit_coherent(&coeffs, args.tol);
    match fit {
        CoherentFit::Coherent { param, residual } => {
            let u = param.bloch();
            if args.json {
                let tau = param
                    .tau()
                    .map(|t| json!([t.re, t.im]))
                    .unwrap_or_else(|| json!("INFINITY"));
                println!(
                    "{}",
                    json!({
                        "coherent": true,
                        "tau": tau,
                        "theta": param.theta(),
                        "phi": param.phi(),
                        "bloch": [u.x, u.y, u.z],
                        "residual": residual,
                    })
                );
            } else {
                println!("coherent: true");
                match param.tau() {
                    Some(t) => println!("tau: ({}, {})", sig12(t.re), sig12(t.im)),
                    None => println!("tau: INFINITY"),
                }
                println!("theta: {}", sig12(param.theta()));
                println!("phi: {}", sig12(param.phi()));
                println!("bloch: ({}, {}, {})", sig12(u.x), sig12(u.y), sig12(u.z));
                println!("residual: {}", sig12(residual));
            }
        }
        CoherentFit::NotCoherent { residual } => {
            if args.json {
                println!("{}", json!({ "coherent": false, "residual": residual }));
            } else {
                println!("coherent: false (NotCoherent)");
                println!("residual: {}", sig12(residual));
            }
        }
    }
    Ok(())
}

fn cmd_project(args: ProjectArgs) -> Result<(), Failure> {
    let psi = load_state(&args.input)?;
    let proj = project_symmetric(&psi);
    if let Some(path) = &args.out_sym {
        if proj.norm_in_s < 1e-12 {
            return Err(Failure::usage(
                "symmetric component is numerically zero; nothing to write",
            ));
        }
        let sym = PureState::from_amplitudes(psi.n_qubits(), proj.sym_part.clone())?;
        symcoh::io::write_state_file(path, &sym)?;
    }
    if let Some(path) = &args.out_ortho {
        if proj.ortho_norm < 1e-12 {
            return Err(Failure::usage(
                "orthogonal component is numerically zero; nothing to write",
            ));
        }
        let ortho: Vec<Complex64> = psi
            .amps()
            .iter()
            .zip(&proj.sym_part)
            .map(|(a, s)| a - s)
            .collect();
        let ortho = PureState::from_amplitudes(psi.n_qubits(), ortho)?;
        symcoh::io::write_state_file(path, &ortho)?;
    }
    if args.json {
        let overlaps: Vec<serde_json::Value> = proj
            .dicke_overlaps
            .iter()
            .map(|o| json!([o.re, o.im]))
            .collect();
        println!(
            "{}",
            json!({
                "n_qubits": psi.n_qubits(),
                "sym_projection_norm": proj.norm_in_s,
                "ortho_norm": proj.ortho_norm,
                "dicke_overlaps": overlaps,
            })
        );
    } else {
        println!("n_qubits: {}", psi.n_qubits());
        println!("sym_projection_norm: {}", sig12(proj.norm_in_s));
        println!("ortho_norm: {}", sig12(proj.ortho_norm));
        for (k, o) in proj.dicke_overlaps.iter().enumerate() {
            println!("overlap k={k}: ({}, {})", sig12(o.re), sig12(o.im));
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if !(2..=MAX_QUBITS).contains(&args.n_qubits) {
        return Err(Failure::usage(format!(
            "verify requires 2 <= n_qubits <= {MAX_QUBITS} (the orthogonal complement is trivial for one qubit)"
        )));
    }
    if args.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let mut reports: Vec<TheoremReport> = Vec::new();
    match args.theorem {
        Theorem::SymCoherent => reports.push(
            verify_sym_coherent(args.n_qubits, args.trials, args.seed, args.tol)
                .map_err(|e| Failure::usage(e.to_string()))?,
        ),
        Theorem::OrthoEntangled => reports.push(
            verify_ortho_entangled(args.n_qubits, args.trials, args.seed, args.tol)
                .map_err(|e| Failure::usage(e.to_string()))?,
        ),
        Theorem::All => {
            reports.push(
                verify_sym_coherent(args.n_qubits, args.trials, args.seed, args.tol)
                    .map_err(|e| Failure::usage(e.to_string()))?,
            );
            reports.push(
                verify_ortho_entangled(args.n_qubits, args.trials, args.seed, args.tol)
                    .map_err(|e| Failure::usage(e.to_string()))?,
            );
        }
    }
    let mut total_failures = 0usize;
    for report in &reports {
        println!(
            "{}",
            serde_json::to_string(report).expect("report serializes")
        );
        total_failures += report.failures;
    }
    if total_failures > 0 {
        return Err(Failure::precondition(format!(
            "{total_failures} trial failure(s); see reports above"
        )));
    }
    Ok(())
}

fn cmd_basis(args: BasisArgs) -> Result<(), Failure> {
    let n = args.n_qubits;
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Failure::usage(format!(
            "n_qubits {n} outside supported range 1..={MAX_QUBITS}"
        )));
    }
    let ks: Vec<usize> = match args.k {
        Some(k) => {
            DickeIndex::new(n, k).map_err(|e| Failure::usage(e.to_string()))?;
            vec![k]
        }
        None => (0..=n).collect(),
    };
    if args.json {
        let rows: Vec<serde_json::Value> = ks
            .iter()
            .map(|&k| {
                let idx = DickeIndex::new(n, k).expect("validated above");
                json!({
                    "k": k,
                    "m": idx.m(),
                    "degeneracy": binomial(n, k) as u64,
                    "dicke_amplitude": 1.0 / binomial(n, k).sqrt(),
                })
            })
            .collect();
        println!(
            "{}",
            json!({ "n_qubits": n, "dim_symmetric": n + 1, "levels": rows })
        );
    } else {
        println!("n_qubits: {n}");
        println!("symmetric subspace dimension: {}", n + 1);
        println!(
            "{:>4} {:>8} {:>12} {:>20}",
            "k", "m", "degeneracy", "dicke amplitude"
        );
        for &k in &ks {
            let idx = DickeIndex::new(n, k).expect("validated above");
            println!(
                "{:>4} {:>8} {:>12} {:>20}",
                k,
                idx.m(),
                binomial(n, k) as u64,
                sig12(1.0 / binomial(n, k).sqrt())
            );
        }
    }
    Ok(())
}
