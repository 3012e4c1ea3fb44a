//! Command-line front end: every pipeline stage as a subcommand, a persistent
//! table cache, and the reproduction checks behind `verify`.

pub mod cache;
pub mod reference;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use fti_core::{Coefficient, Engine, RootSystem, Weight};

use cache::CacheStore;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fti_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache: {0}")]
    Cache(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                fti_core::Error::UnknownSystem(_) | fti_core::Error::RankOutOfRange { .. } => "system",
                fti_core::Error::DimensionMismatch { .. }
                | fti_core::Error::IndexOutOfRange { .. }
                | fti_core::Error::NotDominant(_)
                | fti_core::Error::Parse(_) => "input",
                fti_core::Error::MemoryCap { .. } => "memory-cap",
                fti_core::Error::Resonance { .. } => "resonance",
                fti_core::Error::MissingEntry(_) => "operator",
                fti_core::Error::NonIntegral(_) => "arithmetic",
            },
            CliError::Io(_) => "io",
            CliError::Cache(_) => "cache",
            CliError::Usage(_) => "usage",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fti", version, about = "Exact algebraic Hamiltonians in orbit variables")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Table cache directory (default: $FTI_CACHE_DIR; none if unset).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest orbit the engine may materialize.
    #[arg(long, global = true)]
    pub mem_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Only {
    #[value(name = "A")]
    A,
    #[value(name = "b")]
    B,
    #[value(name = "c")]
    C,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    Stat,
    Clear,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root-system data.
    Roots { system: String },
    /// Size (and optionally elements) of a Weyl orbit.
    Orbit {
        system: String,
        /// `w3`, `[0,1,0]` or `0,1,0`.
        weight: String,
        #[arg(long)]
        list: bool,
    },
    /// `M_j · M_{w_a}` as a sum of orbit functions.
    Decompose {
        system: String,
        j: String,
        /// 1-based index or `wA`.
        a: String,
    },
    /// `M_n` as a polynomial in `τ`.
    M2tau { system: String, n: String },
    /// Coefficients `A_ab`, `b_a`, `c_a` of the algebraic operator.
    Coeffs {
        system: String,
        #[arg(long, value_enum)]
        only: Option<Only>,
        /// Accepted for compatibility; every entry is computed in the default tier.
        #[arg(long)]
        slow: bool,
    },
    /// Eigenvalues of all states up to a Weyl height.
    Spectrum {
        system: String,
        #[arg(long)]
        ht_bound: i64,
        /// Evaluate at `ν = p/q`.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// One eigenfunction.
    Eigen {
        system: String,
        n: String,
        #[arg(long, conflicts_with = "symbolic", allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        symbolic: bool,
        /// Also verify `hφ = εφ` exactly.
        #[arg(long)]
        check: bool,
    },
    /// Reproduction and consistency checks.
    Verify {
        system: String,
        /// Published tables (E8, E6) and normalization identities.
        #[arg(long)]
        paper_tables: bool,
        /// Floating-point cross-check of the operator coefficients.
        #[arg(long)]
        numeric: bool,
        /// Sample points for `--numeric`.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Largest relative error accepted by `--numeric`.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Seed of the sample points.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Flag preservation for the characteristic vectors.
        #[arg(long)]
        flags: bool,
    },
    /// Inspect or empty the table cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

/// Result of a command: JSON document, text rendering, success flag.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

pub fn parse_nu(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("bad value for ν: `{s}` (expected p/q)"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == num_bigint::BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p.trim().parse().map_err(|_| bad())?, q))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// `wK` (1-based fundamental weight), `0`, or explicit coordinates.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, CliError> {
    let n = rs.rank();
    let t = s.trim();
    if t == "0" {
        return Ok(Weight::zero(n));
    }
    if let Some(k) = t.strip_prefix('w') {
        let a = parse_index(rs, k)?;
        return Ok(Weight::fundamental(n, a));
    }
    let w: Weight = t.parse()?;
    if w.rank() != n {
        return Err(fti_core::Error::DimensionMismatch {
            expected: n,
            got: w.rank(),
        }
        .into());
    }
    Ok(w)
}

/// 1-based index, optionally written `wK`; returns 0-based.
pub fn parse_index(rs: &RootSystem, s: &str) -> Result<usize, CliError> {
    let t = s.trim().trim_start_matches('w');
    let k: usize = t
        .parse()
        .map_err(|_| CliError::Usage(format!("bad index `{s}` (expected 1..={})", rs.rank())))?;
    if k == 0 || k > rs.rank() {
        return Err(fti_core::Error::IndexOutOfRange {
            index: k,
            rank: rs.rank(),
        }
        .into());
    }
    Ok(k - 1)
}

fn make_engine(cli: &Cli, system: &str) -> Result<Engine, CliError> {
    let rs = RootSystem::from_name(system)?;
    Ok(match cli.mem_cap {
        Some(cap) => Engine::with_cap(rs, cap),
        None => Engine::new(rs),
    })
}

fn weight_json(w: &Weight) -> Value {
    json!(w.coords())
}

fn poly_json<C: Coefficient>(p: &fti_core::TauPolynomial<C>) -> Value {
    json!({"text": p.to_string(), "terms": p.to_json()})
}

fn roots(engine: &Engine) -> Output {
    let rs = engine.root_system();
    let rep = rs.report();
    let mut t = String::new();
    t += &format!("{} rank {}  |W| = {}  h = {}\n", rep.name, rep.rank, rep.weyl_group_order, rep.coxeter_number);
    t += &format!("positive roots: {}\n", rep.positive_roots.len());
    t += "Cartan matrix:\n";
    for row in &rep.cartan {
        t += &format!("  {}\n", row.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" "));
    }
    let norms = rs.fundamental_norms();
    for a in 0..rs.rank() {
        let w = Weight::fundamental(rs.rank(), a);
        t += &format!(
            "  w{} (Bourbaki {}): w² = {}, |Ω| = {}\n",
            a + 1,
            rep.fundamental_weight_order[a],
            norms[a],
            fti_core::orbit_size(rs, &w)
        );
    }
    t += &format!("highest root (simple-root coordinates): {:?}\n", rep.highest_root_coords);
    t += &format!("Weyl vector (simple-root coordinates): [{}]\n", rep.weyl_vector_root_coords.join(", "));
    Output::ok(serde_json::to_value(&rep).expect("report serializes"), t)
}

fn orbit(engine: &Engine, w: &Weight, list: bool) -> Result<Output, CliError> {
    let rs = engine.root_system();
    let d = fti_core::dominant_conjugate(rs, w);
    let size = fti_core::orbit_size(rs, &d);
    let mut j = json!({"system": rs.name(), "weight": weight_json(w), "dominant": weight_json(&d), "size": size.to_string()});
    let mut t = format!("orbit of {} (dominant {}): {} elements\n", w, d, size);
    if list {
        let o = fti_core::weylorbit::enumerate_orbit_capped(rs, &d, engine.orbit_cap())?;
        t += &o.dump();
        j["elements"] = json!(o.elements().iter().map(weight_json).collect::<Vec<_>>());
    }
    Ok(Output::ok(j, t))
}

fn coeffs(engine: &Engine, only: Option<Only>) -> Result<Output, CliError> {
    let n = engine.rank();
    let mut j = json!({"system": engine.root_system().name()});
    let mut t = String::new();
    if only.is_none() || only == Some(Only::A) {
        let mut v = Vec::new();
        for a in 0..n {
            for b in a..n {
                let p = engine.coeff_a(a, b)?;
                t += &format!("A{}{} = {}\n", a + 1, b + 1, p);
                v.push(json!({"a": a + 1, "b": b + 1, "poly": poly_json(&p)}));
            }
        }
        j["A"] = Value::Array(v);
    }
    if only.is_none() || only == Some(Only::B) {
        let mut v = Vec::new();
        for a in 0..n {
            let p = engine.coeff_b(a)?;
            t += &format!("b{} = {}\n", a + 1, p);
            v.push(json!({"a": a + 1, "poly": poly_json(&p)}));
        }
        j["b"] = Value::Array(v);
    }
    if only.is_none() || only == Some(Only::C) {
        let mut v = Vec::new();
        for a in 0..n {
            let p = engine.coeff_c(a)?;
            t += &format!("c{} = {}\n", a + 1, p);
            v.push(json!({"a": a + 1, "poly": poly_json(&p)}));
        }
        j["c"] = Value::Array(v);
    }
    Ok(Output::ok(j, t))
}

fn spectrum(engine: &Engine, bound: i64, nu: Option<&BigRational>) -> Output {
    let rows = engine.enumerate_spectrum(bound, nu);
    let mut t = format!("{:<28} {:>18} {:>10} {:>6} {:>6}\n", "n", "ε", "n(f_min)", "n·n", "ht");
    let mut v = Vec::new();
    for r in &rows {
        let eps = match &r.value {
            Some(x) => x.to_string(),
            None => format!("{} {} {}ν", r.eps0, if r.eps1 < BigRational::from_integer(0.into()) { "-" } else { "+" }, num_traits::Signed::abs(&r.eps1)),
        };
        t += &format!("{:<28} {:>18} {:>10} {:>6} {:>6}\n", r.n.to_string(), eps, r.f_min_grading, r.norm, r.height);
        let mut row = json!({
            "n": weight_json(&r.n),
            "eps": [r.eps0.to_string(), r.eps1.to_string()],
            "f_min_grading": r.f_min_grading,
            "norm": r.norm.to_string(),
            "height": r.height.to_string(),
        });
        if let Some(x) = &r.value {
            row["value"] = json!(x.to_string());
        }
        v.push(row);
    }
    let degeneracies: Vec<Value> = engine
        .find_degeneracies(bound)
        .iter()
        .map(|d| json!({"eps": [d.eps0.to_string(), d.eps1.to_string()], "states": d.states.iter().map(weight_json).collect::<Vec<_>>()}))
        .collect();
    Output::ok(
        json!({
            "system": engine.root_system().name(),
            "ht_bound": bound,
            "nu": nu.map(|x| x.to_string()),
            "rows": v,
            "degeneracies": degeneracies,
        }),
        t,
    )
}

fn eigen(engine: &Engine, n: &Weight, nu: Option<&BigRational>, check: bool) -> Result<Output, CliError> {
    let s = engine.eigenfunction(n, nu)?;
    let rs = engine.root_system();
    let mut t = format!("ε = {}\nφ = {}\n", s.eigenvalue, s.expansion_tau);
    t += &format!("in orbit functions: {}\n", s.expansion_m.display(rs));
    let mut j = json!({
        "system": rs.name(),
        "label": weight_json(n),
        "nu": nu.map(|x| x.to_string()),
        "eigenvalue": {"text": s.eigenvalue.to_string(), "value": s.eigenvalue.to_json()},
        "expansion_m": s.expansion_m.to_json(),
        "expansion_tau": poly_json(&s.expansion_tau),
    });
    let mut ok = true;
    if check {
        let zero = engine.eigen_residual(&s)?.is_zero();
        t += &format!("exact residual hφ − εφ = 0: {zero}\n");
        j["residual_zero"] = json!(zero);
        ok = zero;
    }
    Ok(Output { json: j, text: t, ok })
}

fn cache_cmd(store: Option<&CacheStore>, action: CacheAction) -> Result<Output, CliError> {
    let store = store.ok_or_else(|| {
        CliError::Usage(format!("no cache directory: pass --cache-dir or set {}", cache::ENV_VAR))
    })?;
    match action {
        CacheAction::Stat => {
            let stats = store.stat()?;
            let mut t = format!("cache at {}\n", store.root().display());
            for s in &stats {
                let parts: Vec<String> = s.records.iter().map(|(k, n)| format!("{k} {n}")).collect();
                t += &format!("  {}: {} bytes; {}\n", s.system, s.bytes, parts.join(", "));
            }
            Ok(Output::ok(json!({"root": store.root().display().to_string(), "files": stats}), t))
        }
        CacheAction::Clear => {
            let n = store.clear()?;
            Ok(Output::ok(json!({"removed": n}), format!("removed {n} file(s)\n")))
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    if let Some(n) = cli.threads {
        // Ignore the error when a pool already exists (repeated in-process runs).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let store = CacheStore::resolve(cli.cache_dir.as_deref());
    let system = match &cli.command {
        Command::Roots { system }
        | Command::Orbit { system, .. }
        | Command::Decompose { system, .. }
        | Command::M2tau { system, .. }
        | Command::Coeffs { system, .. }
        | Command::Spectrum { system, .. }
        | Command::Eigen { system, .. }
        | Command::Verify { system, .. } => system,
        Command::Cache { action } => return cache_cmd(store.as_ref(), *action),
    };
    let engine = make_engine(cli, system)?;
    if let Some(s) = &store {
        s.load(&engine)?;
    }
    let rs = engine.root_system();
    let out = match &cli.command {
        Command::Roots { .. } => roots(&engine),
        Command::Orbit { weight, list, .. } => orbit(&engine, &parse_weight(rs, weight)?, *list)?,
        Command::Decompose { j, a, .. } => {
            let jw = parse_weight(rs, j)?;
            let a = parse_index(rs, a)?;
            let e = engine.decompose_product(&jw, a)?;
            Output::ok(
                json!({"system": rs.name(), "j": weight_json(&jw), "a": a + 1, "terms": e.to_json()}),
                format!("M{} · M{} = {}\n", jw, Weight::fundamental(rs.rank(), a), e.display(rs)),
            )
        }
        Command::M2tau { n, .. } => {
            let w = parse_weight(rs, n)?;
            let p = engine.m_to_tau(&w)?;
            Output::ok(
                json!({"system": rs.name(), "n": weight_json(&w), "poly": poly_json(&p)}),
                format!("M{} = {}\n", w, p),
            )
        }
        Command::Coeffs { only, .. } => coeffs(&engine, *only)?,
        Command::Spectrum { ht_bound, nu, .. } => {
            let nu = nu.as_deref().map(parse_nu).transpose()?;
            spectrum(&engine, *ht_bound, nu.as_ref())
        }
        Command::Eigen { n, nu, check, .. } => {
            let nu = nu.as_deref().map(parse_nu).transpose()?;
            eigen(&engine, &parse_weight(rs, n)?, nu.as_ref(), *check)?
        }
        Command::Verify {
            paper_tables,
            numeric,
            samples,
            tol,
            seed,
            flags,
            ..
        } => {
            let none = !paper_tables && !numeric && !flags;
            let opts = verify::VerifyOptions {
                paper_tables: *paper_tables || none,
                numeric: *numeric || none,
                flags: *flags || none,
                samples: *samples,
                tol: *tol,
                seed: *seed,
            };
            verify::run(&engine, &opts)?
        }
        Command::Cache { .. } => unreachable!("handled above"),
    };
    if let Some(s) = &store {
        s.save(&engine)?;
    }
    Ok(out)
}

/// Run with explicit arguments and sinks; returns the exit status
/// (0 success, 1 failed check, 2 error).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let j = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&j).expect("json"));
            } else {
                let _ = writeln!(stderr, "error: {e}");
            }
            2
        }
    }
}
