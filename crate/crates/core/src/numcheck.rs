//! Floating-point cross-checks of the exact coefficients.
//!
//! Everything here is evaluated directly from orbit and root sums in
//! orthonormal coordinates, independently of the polynomial algebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::orbitalgebra::Engine;
use crate::spectral::Eigenstate;
use crate::weight::Weight;

/// One coefficient selected for validation (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Entry {
    A(usize, usize),
    B(usize),
    C(usize),
}

impl Entry {
    pub fn name(&self) -> String {
        match *self {
            Entry::A(a, b) => format!("A{}{}", a + 1, b + 1),
            Entry::B(a) => format!("b{}", a + 1),
            Entry::C(a) => format!("c{}", a + 1),
        }
    }
}

/// Sampling parameters.
#[derive(Clone, Debug, Serialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// Box for each orthonormal coordinate.
    pub lo: f64,
    pub hi: f64,
    /// Minimal `|sin((α·x)/2)|` accepted at a sample.
    pub margin: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: 10,
            seed: 1,
            tol: 1e-8,
            lo: 0.05,
            hi: 0.45,
            margin: 1e-3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    /// Sample with the largest error.
    pub witness: Vec<f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub system: String,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub entries: Vec<EntryReport>,
    /// Largest `|Σ_ω sin(ω·x)|` over tested orbits closed under `ω → −ω`.
    pub reality_max: f64,
    pub passed: bool,
}

/// Values of every `τ_a = Σ_ω exp(i ω·x)` at a point, with gradients and
/// Laplacians. Entries for orbits that were not embedded are NaN.
#[derive(Clone, Debug)]
pub struct TauJet {
    pub value: Vec<Complex64>,
    pub grad: Vec<Vec<Complex64>>,
    pub laplacian: Vec<Complex64>,
}

impl TauJet {
    fn point(&self) -> Vec<Complex64> {
        self.value
            .iter()
            .map(|v| if v.is_nan() { Complex64::new(0.0, 0.0) } else { *v })
            .collect()
    }
}

/// Sum with bounded error growth.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        return v.iter().sum();
    }
    let (l, r) = v.split_at(v.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// Orthonormal embedding of the weight lattice and cached orbit data.
pub struct Evaluator<'a> {
    engine: &'a Engine,
    /// `cart(n) = Lᵀ n` with `G = L Lᵀ`.
    lt: DMatrix<f64>,
    orbits: Vec<Vec<Vec<f64>>>,
    self_dual: Vec<bool>,
    roots: Vec<Vec<f64>>,
}

impl<'a> Evaluator<'a> {
    /// Embeds the fundamental orbits needed for `vars` (all if `None`).
    pub fn new(engine: &'a Engine, vars: Option<&[usize]>) -> Result<Self> {
        let rs = engine.root_system();
        let n = rs.rank();
        let g = DMatrix::from_fn(n, n, |i, j| rs.gram()[i][j].to_f64().unwrap());
        let l = g.cholesky().expect("Gram matrix is positive definite").l();
        let lt = l.transpose();
        let mut ev = Evaluator {
            engine,
            lt,
            orbits: vec![Vec::new(); n],
            self_dual: vec![false; n],
            roots: Vec::new(),
        };
        ev.roots = rs
            .positive_roots()
            .iter()
            .map(|r| ev.cartesian(r.omega.coords()))
            .collect();
        let all: Vec<usize> = (0..n).collect();
        for &a in vars.unwrap_or(&all) {
            engine.check_index(a)?;
            if ev.orbits[a].is_empty() {
                let data = engine.orbit_data(&Weight::fundamental(n, a))?;
                ev.orbits[a] = data.iter().map(|w| ev.cartesian(w)).collect();
                let w = Weight::fundamental(n, a);
                ev.self_dual[a] = crate::dominant_conjugate(rs, &-&w) == w;
            }
        }
        Ok(ev)
    }

    pub fn rank(&self) -> usize {
        self.engine.rank()
    }

    pub fn cartesian(&self, w: &[i64]) -> Vec<f64> {
        let v = nalgebra::DVector::from_iterator(w.len(), w.iter().map(|&c| c as f64));
        (&self.lt * v).iter().copied().collect()
    }

    /// `τ_a(x)` and derivatives for the embedded orbits.
    pub fn jet(&self, x: &[f64]) -> TauJet {
        let n = self.rank();
        let nan = Complex64::new(f64::NAN, f64::NAN);
        let mut jet = TauJet {
            value: vec![nan; n],
            grad: vec![vec![nan; n]; n],
            laplacian: vec![nan; n],
        };
        for (a, orbit) in self.orbits.iter().enumerate() {
            if orbit.is_empty() {
                continue;
            }
            let phase: Vec<f64> = orbit.iter().map(|w| dot(w, x)).collect();
            let cos: Vec<f64> = phase.iter().map(|p| p.cos()).collect();
            let sin: Vec<f64> = phase.iter().map(|p| p.sin()).collect();
            jet.value[a] = Complex64::new(pairwise_sum(&cos), pairwise_sum(&sin));
            for k in 0..n {
                let re: Vec<f64> = orbit.iter().zip(&sin).map(|(w, s)| -w[k] * s).collect();
                let im: Vec<f64> = orbit.iter().zip(&cos).map(|(w, c)| w[k] * c).collect();
                jet.grad[a][k] = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
            }
            let re: Vec<f64> = orbit.iter().zip(&cos).map(|(w, c)| -dot(w, w) * c).collect();
            let im: Vec<f64> = orbit.iter().zip(&sin).map(|(w, s)| -dot(w, w) * s).collect();
            jet.laplacian[a] = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
        }
        jet
    }

    /// Largest `|Im τ_a(x)|` over embedded orbits closed under negation.
    pub fn reality_defect(&self, jet: &TauJet) -> f64 {
        (0..self.rank())
            .filter(|&a| self.self_dual[a] && !self.orbits[a].is_empty())
            .map(|a| jet.value[a].im.abs())
            .fold(0.0, f64::max)
    }

    /// `∇Φ0 / ν = −½ Σ_{α>0} α cot((α·x)/2)`.
    pub fn phi0_gradient(&self, x: &[f64]) -> Vec<f64> {
        let n = self.rank();
        let cots: Vec<f64> = self.roots.iter().map(|r| 1.0 / (dot(r, x) / 2.0).tan()).collect();
        (0..n)
            .map(|k| {
                let t: Vec<f64> = self.roots.iter().zip(&cots).map(|(r, c)| -0.5 * r[k] * c).collect();
                pairwise_sum(&t)
            })
            .collect()
    }

    /// Smallest `|sin((α·x)/2)|` over positive roots.
    pub fn pole_distance(&self, x: &[f64]) -> f64 {
        self.roots
            .iter()
            .map(|r| (dot(r, x) / 2.0).sin().abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// The `index`-th sample point; a pure function of `(seed, index)`.
    pub fn sample(&self, cfg: &SampleConfig, index: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index as u64);
        loop {
            let x: Vec<f64> = (0..self.rank()).map(|_| rng.gen_range(cfg.lo..cfg.hi)).collect();
            if self.pole_distance(&x) >= cfg.margin {
                return x;
            }
        }
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn cdot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn rdot(u: &[f64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| b * *a).sum()
}

fn rel_error(exact: Complex64, direct: Complex64) -> f64 {
    (exact - direct).norm() / exact.norm().max(direct.norm()).max(1.0)
}

fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

fn to_c64(c: &BigRational) -> Complex64 {
    Complex64::new(to_f64(c), 0.0)
}

fn variables(entries: &[Entry], engine: &Engine) -> Result<Vec<usize>> {
    let mut vars: Vec<usize> = Vec::new();
    for e in entries {
        match *e {
            Entry::A(a, b) => vars.extend([a, b]),
            Entry::B(a) | Entry::C(a) => vars.push(a),
        }
    }
    for e in entries {
        // The polynomial side may involve any variable below the entry.
        let p = match *e {
            Entry::A(a, b) => engine.coeff_a(a, b)?.as_ref().clone(),
            Entry::B(a) => engine.coeff_b(a)?,
            Entry::C(a) => engine.coeff_c(a)?.as_ref().clone(),
        };
        for (exp, _) in p.terms() {
            vars.extend(exp.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i));
        }
    }
    vars.sort_unstable();
    vars.dedup();
    Ok(vars)
}

fn summarize(name: String, errs: Vec<(f64, Vec<f64>)>, tol: f64) -> EntryReport {
    let mean = errs.iter().map(|e| e.0).sum::<f64>() / errs.len().max(1) as f64;
    let (max, witness) = errs
        .into_iter()
        .fold((0.0, Vec::new()), |acc, e| if e.0 > acc.0 || acc.1.is_empty() { e } else { acc });
    EntryReport {
        entry: name,
        max_rel_error: max,
        mean_rel_error: mean,
        witness,
        passed: max <= tol,
    }
}

/// Compare `A_ab`, `b_a`, `c_a` with `∇τ_a·∇τ_b`, `Δτ_a`, `∇Φ0·∇τ_a / ν`.
pub fn validate_coefficients(engine: &Engine, entries: &[Entry], cfg: &SampleConfig) -> Result<ValidationReport> {
    let vars = variables(entries, engine)?;
    let ev = Evaluator::new(engine, Some(&vars))?;
    let polys: Vec<_> = entries
        .iter()
        .map(|e| {
            Ok(match *e {
                Entry::A(a, b) => engine.coeff_a(a, b)?.as_ref().clone(),
                Entry::B(a) => engine.coeff_b(a)?,
                Entry::C(a) => engine.coeff_c(a)?.as_ref().clone(),
            })
        })
        .collect::<Result<_>>()?;
    let per_sample: Vec<(Vec<f64>, Vec<f64>, f64)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let x = ev.sample(cfg, i);
            let jet = ev.jet(&x);
            let grad_phi = ev.phi0_gradient(&x);
            let tau = jet.point();
            let errs = entries
                .iter()
                .zip(&polys)
                .map(|(e, p)| {
                    let exact = p.eval_with(&tau, to_c64);
                    let direct = match *e {
                        Entry::A(a, b) => cdot(&jet.grad[a], &jet.grad[b]),
                        Entry::B(a) => jet.laplacian[a],
                        Entry::C(a) => rdot(&grad_phi, &jet.grad[a]),
                    };
                    rel_error(exact, direct)
                })
                .collect();
            let reality = ev.reality_defect(&jet);
            (x, errs, reality)
        })
        .collect();
    let reality_max = per_sample.iter().map(|s| s.2).fold(0.0, f64::max);
    let reports: Vec<EntryReport> = entries
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let errs = per_sample.iter().map(|s| (s.1[j], s.0.clone())).collect();
            summarize(e.name(), errs, cfg.tol)
        })
        .collect();
    let passed = reports.iter().all(|r| r.passed);
    Ok(ValidationReport {
        system: engine.root_system().name(),
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        entries: reports,
        reality_max,
        passed,
    })
}

/// Every `A_ab`, `b_a` and `c_a` of the system.
pub fn all_entries(rank: usize) -> Vec<Entry> {
    let mut v = Vec::new();
    for a in 0..rank {
        for b in a..rank {
            v.push(Entry::A(a, b));
        }
    }
    v.extend((0..rank).map(Entry::B));
    v.extend((0..rank).map(Entry::C));
    v
}

/// `hφ − εφ` at sample points, with `h = Δ − 2∇Φ0·∇` evaluated through the
/// chain rule on the directly computed `τ(x)`.
pub fn validate_eigenfunction(engine: &Engine, state: &Eigenstate, cfg: &SampleConfig) -> Result<ValidationReport> {
    let nu = state.nu.as_ref().map(to_f64).unwrap_or(1.0);
    let rank = engine.rank();
    let phi = &state.expansion_tau;
    let vars: Vec<usize> = (0..rank)
        .filter(|&a| phi.terms().any(|(e, _)| e[a] > 0))
        .collect();
    let ev = Evaluator::new(engine, Some(&vars))?;
    let coef = |c: &crate::NuCoefficient| Complex64::new(c.eval_f64(nu), 0.0);
    let d1: Vec<_> = (0..rank).map(|a| phi.derivative(a)).collect();
    let d2: Vec<Vec<_>> = d1
        .iter()
        .map(|p| (0..rank).map(|b| p.derivative(b)).collect())
        .collect();
    let eps = state.eigenvalue.eval_f64(nu);
    let errs: Vec<(f64, Vec<f64>)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let x = ev.sample(cfg, i);
            let jet = ev.jet(&x);
            let gphi = ev.phi0_gradient(&x);
            let tau = jet.point();
            let phi_x = phi.eval_with(&tau, coef);
            let mut lap = Complex64::new(0.0, 0.0);
            let mut drift = Complex64::new(0.0, 0.0);
            for &a in &vars {
                let pa = d1[a].eval_with(&tau, coef);
                lap += pa * jet.laplacian[a];
                drift += pa * rdot(&gphi, &jet.grad[a]);
                for &b in &vars {
                    let pab = d2[a][b].eval_with(&tau, coef);
                    lap += pab * cdot(&jet.grad[a], &jet.grad[b]);
                }
            }
            let h_phi = lap - drift * (2.0 * nu);
            let scale = (phi_x * eps).norm().max(1.0);
            ((h_phi - phi_x * eps).norm() / scale, x)
        })
        .collect();
    let report = summarize(format!("phi{}", state.label), errs, cfg.tol);
    Ok(ValidationReport {
        system: engine.root_system().name(),
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        passed: report.passed,
        entries: vec![report],
        reality_max: 0.0,
    })
}
