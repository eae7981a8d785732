//! Command-line front end: every verb maps to one library operation and
//! answers with a single JSON document.
//!
//! Exit codes: `0` success, `1` an invariant check failed (`verify`), `2`
//! usage errors (bad case, unreadable input), `3` numeric failures (poles,
//! ill-conditioned fits, vectors outside the invariant Cartan subalgebra).
//! Errors are reported as `{"error": {"code", "kind", "message"}}`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::case::{lax_cases, Case, CaseId};
use crate::elliptic::Context;
use crate::gsbasis::{gs_basis, gs_structure_check, GsBasis};
use crate::lax::{self, DynamicalState, LaxError, Pair};
use crate::moduli::{equivalent_moduli, moduli_menu, reduce_mod_lattice, select_spec, ModuliError, ModuliSpec};
use crate::rootsys::{RootDatum, RootType};
use crate::tolerances;

/// Top-level command line.
#[derive(Debug, Parser)]
#[command(name = "liecm", version, about = "Root data, graded bases, elliptic Lax operators and Hamiltonians")]
pub struct Cli {
    /// Numeric tolerance for verification verbs.
    #[arg(long, global = true, env = tolerances::TOLERANCE_ENV, default_value_t = tolerances::DEFAULT_CLI)]
    pub tol: f64,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Verb.
    #[command(subcommand)]
    pub command: Command,
}

/// Case selector shared by most verbs.
#[derive(Debug, Clone, Args)]
pub struct CaseArgs {
    /// Root type: A, B, C, D, E6, E7.
    #[arg(long = "type")]
    pub kind: String,
    /// Rank (implied for E6, E7).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Class selector: trivial, wn, w<j>, p<p> (A: class of order N/p).
    #[arg(long, default_value = "trivial")]
    pub class: String,
}

/// State source: a JSON file (`-` for stdin) or a seeded random state.
#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Dynamical state JSON.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Seed for a random state when no file is given.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Modulus `τ` (`re,im`) for random states.
    #[arg(long, default_value = "0.1,1.1")]
    pub tau: String,
}

/// Verbs.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data summary.
    Info(CaseArgs),
    /// Named lattices with bases and indices over the root lattice.
    Lattices(CaseArgs),
    /// Center `P∨/Q∨` with generating coweights.
    Center(CaseArgs),
    /// Extended-diagram automorphism of the class.
    Lambda(CaseArgs),
    /// Grading dimensions and orbit structure.
    Grading(CaseArgs),
    /// Invariant subalgebra and invariant Cartan subalgebra.
    Invariant(CaseArgs),
    /// Graded orbit-sum basis.
    GsBasis {
        #[command(flatten)]
        case: CaseArgs,
        /// Include defining-representation matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Pairing table of the graded basis.
    Pairing(CaseArgs),
    /// θ, E₁, E₂ and φ at given points.
    Elliptic {
        /// Modulus `re,im`.
        #[arg(long)]
        tau: String,
        /// Spectral parameter `re,im`.
        #[arg(long)]
        z: String,
        /// Kronecker argument `re,im`.
        #[arg(long)]
        u: Option<String>,
    },
    /// Lax operator at a point.
    Lax {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Spectral parameter `re,im`.
        #[arg(long, default_value = "0.137,0.23")]
        z: String,
        /// Include the defining-representation matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Reduced Hamiltonian read off the pairing table (and the printed formula).
    Hamiltonian {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        state: StateArgs,
        /// Also evaluate the printed formula.
        #[arg(long)]
        printed: bool,
    },
    /// Fit `½(L,L) = c E₂(z) + H`.
    Oracle {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Per-case invariant suite with a pass/fail report.
    Verify {
        /// Case (omit with `--all`).
        #[arg(long = "type")]
        kind: Option<String>,
        /// Rank.
        #[arg(long)]
        rank: Option<usize>,
        /// Class selector.
        #[arg(long, default_value = "trivial")]
        class: String,
        /// Every case of the Lax/Hamiltonian suite.
        #[arg(long)]
        all: bool,
        /// Random states per case.
        #[arg(long, default_value_t = 20)]
        states: usize,
        /// Seed.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Write the printed-vs-oracle deviations as Markdown.
        #[arg(long)]
        deviations: Option<PathBuf>,
    },
    /// Reduce a moduli vector modulo `τΓ + Γ`.
    Reduce {
        #[command(flatten)]
        case: CaseArgs,
        /// Input JSON `{u, tau, lattice}` (`-` for stdin).
        #[arg(long)]
        input: PathBuf,
    },
    /// Test `W̃ ⋉ (τΓ + Γ)` equivalence of two moduli vectors.
    Equiv {
        #[command(flatten)]
        case: CaseArgs,
        /// Input JSON `{u, u_prime, tau, lattice}` (`-` for stdin).
        #[arg(long)]
        input: PathBuf,
    },
}

/// Failure of a verb.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    /// Exit code (2 usage, 3 numeric).
    pub code: i32,
    /// Short kind.
    pub kind: &'static str,
    /// Message.
    pub message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: 2,
            kind: "usage",
            message: message.to_string(),
        }
    }

    fn numeric(message: impl ToString) -> Self {
        Self {
            code: 3,
            kind: "numeric",
            message: message.to_string(),
        }
    }

    /// JSON error object.
    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "kind": self.kind, "message": self.message } })
    }
}

impl From<LaxError> for CliError {
    fn from(e: LaxError) -> Self {
        match e {
            LaxError::State(_) | LaxError::Unsupported(_) => Self::usage(e),
            LaxError::Elliptic(_) | LaxError::IllConditioned => Self::numeric(e),
        }
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::Dimension { .. } => Self::usage(e),
            _ => Self::numeric(e),
        }
    }
}

/// Outcome of a verb: document and exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// JSON document.
    pub document: Value,
    /// Exit code.
    pub code: i32,
}

fn ok(document: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { document, code: 0 })
}

/// Parse `re,im` or `re`.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| CliError::usage(format!("bad complex number `{s}`")));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::usage(format!("bad complex number `{s}`"))),
    }
}

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn case_id(kind: &str, rank: Option<usize>, class: &str) -> Result<CaseId, CliError> {
    let t: RootType = kind.parse().map_err(CliError::usage)?;
    let rank = match (t, rank) {
        (RootType::E6, _) => 6,
        (RootType::E7, _) => 7,
        (_, Some(r)) => r,
        (_, None) => return Err(CliError::usage(format!("--rank is required for type {kind}"))),
    };
    Ok(CaseId::new(&t.to_string(), rank, class))
}

fn build(args: &CaseArgs) -> Result<Case, CliError> {
    let id = case_id(&args.kind, args.rank, &args.class)?;
    Case::new(&id).map_err(CliError::usage)
}

fn datum(args: &CaseArgs) -> Result<RootDatum, CliError> {
    let id = case_id(&args.kind, args.rank, "trivial")?;
    let t: RootType = id.kind.parse().map_err(CliError::usage)?;
    RootDatum::new(t, id.rank).map_err(CliError::usage)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(CliError::usage)?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_state(case: &Case, basis: &GsBasis, args: &StateArgs) -> Result<(DynamicalState, bool), CliError> {
    match &args.state {
        Some(p) => {
            let st: DynamicalState = read_json(p)?;
            st.validate(case)?;
            Ok((st, false))
        }
        None => {
            let tau = parse_complex(&args.tau)?;
            Context::with_tau(tau).map_err(CliError::usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Ok((DynamicalState::random(case, basis, tau, &mut rng), true))
        }
    }
}

/// Moduli input document of `reduce` / `equiv` (and output of `reduce`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuliDocument {
    /// Lattice name or `Q` / `P`.
    pub lattice: String,
    /// Modulus.
    pub tau: Pair,
    /// Moduli vector (ambient coordinates).
    pub u: Vec<Pair>,
    /// Second vector (`equiv`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_prime: Option<Vec<Pair>>,
}

fn complex_vec(v: &[Pair]) -> Vec<Complex64> {
    v.iter().map(|p| Complex64::new(p[0], p[1])).collect()
}

fn spec_for(case: &Case, key: &str) -> Result<ModuliSpec, CliError> {
    let menu = moduli_menu(case);
    select_spec(&menu, key).ok_or_else(|| {
        let names: Vec<String> = menu.iter().map(|s| s.name.clone()).collect();
        CliError::usage(format!("lattice `{key}` not in the menu {names:?}"))
    })
}

/// One check of the invariant suite.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Name.
    pub name: String,
    /// Measured value (residual, or 0/1 for exact checks).
    pub value: f64,
    /// Threshold.
    pub tolerance: f64,
    /// Verdict.
    pub pass: bool,
}

impl Check {
    fn residual(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            pass: value < tolerance,
        }
    }

    fn exact(name: &str, holds: bool) -> Self {
        Self {
            name: name.to_string(),
            value: if holds { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: holds,
        }
    }
}

/// Invariant suite of one case, plus the printed-vs-oracle summary.
#[derive(Debug, Clone, Serialize)]
pub struct CaseVerification {
    /// Case.
    pub case: CaseId,
    /// Checks.
    pub checks: Vec<Check>,
    /// Whether every check passed.
    pub pass: bool,
    /// Printed-vs-oracle comparison (informational).
    pub printed: Option<Value>,
}

/// Run the invariant suite on a case: automorphism, basis, matrix identities
/// (classical types), oracle fit and reduced Hamiltonian over random states,
/// moduli lattices; then the printed-formula comparison.
pub fn verify_case(id: &CaseId, states: usize, seed: u64, tol: f64) -> Result<(CaseVerification, Option<lax::PrintedReport>), CliError> {
    let case = Case::new(id).map_err(CliError::usage)?;
    let basis = gs_basis(&case);
    let mut checks = vec![
        Check::exact("lambda preserves the extended Cartan matrix", case.lambda.preserves_extended_cartan(&case.algebra.datum)),
        Check::residual(
            "sigma is a homomorphism",
            case.sigma.homomorphism_residual(&case.algebra),
            tolerances::MATRIX_RESIDUAL.max(tol * 1e-3),
        ),
        Check::exact("basis pairing is nondegenerate", basis.nondegenerate()),
        Check::exact("basis size equals dim g", basis.len() == case.algebra.dim()),
    ];
    if case.algebra.matrices.is_some() {
        let r = gs_structure_check(&case, &basis).map_err(CliError::usage)?;
        for (name, v) in [
            ("Ad(M) eigenvalues", r.eigen_residual),
            ("grading closure", r.closure_residual),
            ("pairing vs trace form", r.trace_residual),
            ("abstract vs matrix brackets", r.bracket_residual),
        ] {
            checks.push(Check::residual(name, v, tolerances::MATRIX_RESIDUAL));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut fit_max, mut agree_max) = (0.0f64, 0.0f64);
    for _ in 0..states {
        let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
        let st = DynamicalState::random(&case, &basis, tau, &mut rng);
        let fit = lax::hamiltonian_oracle(&case, &basis, &st, None)?;
        let red = lax::hamiltonian_reduced(&case, &basis, &st)?;
        fit_max = fit_max.max(fit.residual);
        agree_max = agree_max.max(tolerances::relative(red, fit.h));
    }
    checks.push(Check::residual("oracle fit residual", fit_max, tolerances::FIT_RESIDUAL.max(tol * 0.1)));
    checks.push(Check::residual("reduced Hamiltonian vs oracle", agree_max, tol.max(tolerances::FIT_RESIDUAL)));
    let menu = moduli_menu(&case);
    checks.push(Check::exact("moduli lattices are W̃-stable", menu.iter().all(ModuliSpec::is_weyl_stable)));
    let mut idem = 0.0f64;
    for spec in &menu {
        for _ in 0..states.min(10) {
            let tau = Complex64::new(0.1, 1.2);
            let a: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let b: Vec<f64> = (0..spec.dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let u = spec.from_lattice_coordinates(&a, &b, tau);
            let r1 = reduce_mod_lattice(&u, spec, tau)?;
            let r2 = reduce_mod_lattice(&r1, spec, tau)?;
            idem = idem.max(r1.iter().zip(&r2).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max));
        }
    }
    checks.push(Check::residual("moduli reduction is idempotent", idem, tol.max(1e-12)));
    let report = match lax::verify_printed(&case, &basis, states, seed) {
        Ok(r) => Some(r),
        Err(LaxError::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let printed = report.as_ref().map(|r| {
        json!({
            "confirmed": r.confirmed,
            "total": r.total,
            "agrees": r.agrees(),
            "max_relative": if r.max_relative.is_finite() { json!(r.max_relative) } else { json!("inf") },
            "missing_pairs": r.missing.len(),
        })
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok((
        CaseVerification {
            case: id.clone(),
            checks,
            pass,
            printed,
        },
        report,
    ))
}

/// Execute a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = cli.tol;
    if !(tol > 0.0) {
        return Err(CliError::usage("tolerance must be positive"));
    }
    match &cli.command {
        Command::Info(a) => ok(datum(a)?.summary()),
        Command::Lattices(a) => {
            let d = datum(a)?;
            let q = d.lattice("Q").ok_or_else(|| CliError::usage("no root lattice"))?;
            let lattices: Vec<Value> = d
                .lattices()
                .into_iter()
                .map(|l| json!({ "name": l.name, "basis": l.basis, "index_over_Q": l.index_of(&q) }))
                .collect();
            ok(json!({ "algebra": d.name(), "lattices": lattices }))
        }
        Command::Center(a) => {
            let d = datum(a)?;
            ok(json!({ "algebra": d.name(), "center": d.center_structure() }))
        }
        Command::Lambda(a) => {
            let c = build(a)?;
            let mut j = c.lambda.to_json();
            j["preserves_extended_cartan"] = json!(c.lambda.preserves_extended_cartan(&c.algebra.datum));
            ok(j)
        }
        Command::Grading(a) => {
            let c = build(a)?;
            let g = &c.grading;
            ok(json!({
                "case": c.id,
                "order": g.order,
                "dims": g.dims,
                "g0_tilde_dim": g.g0_tilde_dim,
                "v_dim": g.v_dim,
                "orbits": g.orbits.len(),
                "cartan_dims": g.cartan.iter().map(Vec::len).collect::<Vec<_>>(),
            }))
        }
        Command::Invariant(a) => {
            let c = build(a)?;
            ok(json!({
                "case": c.id,
                "type": c.invariant.type_name(),
                "cartan_matrix": c.invariant.cartan_matrix,
                "simple_roots": c.invariant.simple_roots,
                "num_roots": c.invariant.num_roots,
                "cartan_basis": c.cartan.basis,
                "constraints": c.cartan.constraints,
                "moduli": moduli_menu(&c),
            }))
        }
        Command::GsBasis { case, matrices } => {
            let c = build(case)?;
            ok(gs_basis(&c).to_json(&c, *matrices))
        }
        Command::Pairing(a) => {
            let c = build(a)?;
            let b = gs_basis(&c);
            let table: Vec<Value> = b
                .pairing_table()
                .into_iter()
                .map(|(x, y, v)| json!([x, y, pair(v)]))
                .collect();
            ok(json!({ "case": c.id, "nondegenerate": b.nondegenerate(), "pairing": table }))
        }
        Command::Elliptic { tau, z, u } => {
            let ctx = Context::with_tau(parse_complex(tau)?).map_err(CliError::usage)?;
            let z = parse_complex(z)?;
            let e1 = ctx.eisenstein1(z).map_err(CliError::numeric)?;
            let e2 = ctx.eisenstein2(z).map_err(CliError::numeric)?;
            let mut j = json!({
                "tau": pair(ctx.tau),
                "z": pair(z),
                "theta": pair(ctx.theta(z)),
                "E1": pair(e1),
                "E2": pair(e2),
                "truncation": ctx.truncation,
            });
            if let Some(u) = u {
                let u = parse_complex(u)?;
                j["u"] = json!(pair(u));
                j["phi"] = json!(pair(ctx.phi(u, z).map_err(CliError::numeric)?));
            }
            ok(j)
        }
        Command::Lax { case, state, z, matrix } => {
            let c = build(case)?;
            let b = gs_basis(&c);
            let (st, random) = load_state(&c, &b, state)?;
            let z = parse_complex(z)?;
            let l = lax::lax(&c, &b, &st, z, *matrix)?;
            let mut j = json!({ "case": c.id, "z": pair(z), "lax": l.to_json(&b) });
            if random {
                j["state"] = json!(st);
            }
            ok(j)
        }
        Command::Hamiltonian { case, state, printed } => {
            let c = build(case)?;
            let b = gs_basis(&c);
            let (st, random) = load_state(&c, &b, state)?;
            let h = lax::hamiltonian_reduced(&c, &b, &st)?;
            let mut j = json!({ "case": c.id, "h": pair(h), "kinetic": pair(lax::kinetic(&st)) });
            if *printed {
                j["printed"] = match lax::hamiltonian_printed(&c, &b, &st) {
                    Ok(v) => json!(pair(v)),
                    Err(e) => json!({ "error": e.to_string() }),
                };
            }
            if random {
                j["state"] = json!(st);
            }
            ok(j)
        }
        Command::Oracle { case, state } => {
            let c = build(case)?;
            let b = gs_basis(&c);
            let (st, random) = load_state(&c, &b, state)?;
            let fit = lax::hamiltonian_oracle(&c, &b, &st, None)?;
            let mut j = json!({ "case": c.id, "h": pair(fit.h), "casimir": pair(fit.casimir), "residual": fit.residual });
            if random {
                j["state"] = json!(st);
            }
            ok(j)
        }
        Command::Verify {
            kind,
            rank,
            class,
            all,
            states,
            seed,
            deviations,
        } => {
            let ids: Vec<CaseId> = if *all {
                lax_cases()
            } else {
                let k = kind.as_deref().ok_or_else(|| CliError::usage("verify needs --type or --all"))?;
                vec![case_id(k, *rank, class)?]
            };
            let results: Vec<Result<(CaseVerification, Option<lax::PrintedReport>), CliError>> = std::thread::scope(|s| {
                let handles: Vec<_> = ids
                    .iter()
                    .map(|id| s.spawn(move || verify_case(id, *states, *seed, tol)))
                    .collect();
                handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
            });
            let mut cases = Vec::new();
            let mut reports = Vec::new();
            for r in results {
                let (v, rep) = r?;
                cases.push(v);
                reports.extend(rep);
            }
            if let Some(path) = deviations {
                std::fs::write(path, lax::deviations_markdown(&reports))
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            }
            let pass = cases.iter().all(|c| c.pass);
            let (confirmed, total) = reports.iter().fold((0, 0), |(a, b), r| (a + r.confirmed, b + r.total));
            Ok(Outcome {
                document: json!({
                    "pass": pass,
                    "tolerance": tol,
                    "cases": cases,
                    "printed_terms_confirmed": confirmed,
                    "printed_terms_total": total,
                }),
                code: if pass { 0 } else { 1 },
            })
        }
        Command::Reduce { case, input } => {
            let c = build(case)?;
            let doc: ModuliDocument = read_json(input)?;
            let spec = spec_for(&c, &doc.lattice)?;
            let tau = Complex64::new(doc.tau[0], doc.tau[1]);
            let r = reduce_mod_lattice(&complex_vec(&doc.u), &spec, tau)?;
            ok(json!(ModuliDocument {
                lattice: spec.name,
                tau: doc.tau,
                u: r.into_iter().map(pair).collect(),
                u_prime: None,
            }))
        }
        Command::Equiv { case, input } => {
            let c = build(case)?;
            let doc: ModuliDocument = read_json(input)?;
            let spec = spec_for(&c, &doc.lattice)?;
            let tau = Complex64::new(doc.tau[0], doc.tau[1]);
            let up = doc.u_prime.as_ref().ok_or_else(|| CliError::usage("equiv needs u_prime"))?;
            let res = equivalent_moduli(&complex_vec(&doc.u), &complex_vec(up), &spec, tau)?;
            ok(json!({ "lattice": spec.name, "result": res }))
        }
    }
}

/// Parse arguments, run, print; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            emit(&CliError::usage(e.to_string().trim()).to_json().to_string());
            return 2;
        }
    };
    let render = |v: &Value| {
        if cli.pretty {
            serde_json::to_string_pretty(v).expect("serializable")
        } else {
            serde_json::to_string(v).expect("serializable")
        }
    };
    match run(&cli) {
        Ok(o) => {
            emit(&render(&o.document));
            o.code
        }
        Err(e) => {
            emit(&render(&e.to_json()));
            e.code
        }
    }
}

/// Write one document to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}
