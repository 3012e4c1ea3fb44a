//! The gauge-rotated Hamiltonian in orbit variables,
//!
//! `h = Σ_{a,b} A_ab ∂_a ∂_b + Σ_a B_a ∂_a`,  `B_a = b_a − 2ν c_a`,
//!
//! with `A_ab = ∇τ_a·∇τ_b`, `b_a = Δτ_a` and `ν c_a = ∇Φ_0·∇τ_a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::nucoef::NuCoefficient;
use crate::orbitalgebra::{grading, Engine, MExpansion};
use crate::poly::{Exponent, NuTauPoly, RatTauPoly};
use crate::weight::{Coords, Weight};

/// One line of the reflection-pair bookkeeping behind `c_a`: `μ` ordered
/// pairs `(α, ω)` with `|α^∨·ω| = l` put the dominant point `ω − kσα` at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionRow {
    pub l: i64,
    pub k: i64,
    pub n: Weight,
    pub mu: u64,
    /// `(α·α)/2` of the roots involved, as `(num, den)`.
    pub half_norm: (i64, i64),
}

/// `h(τ)`, possibly assembled only on a subset of the variables.
#[derive(Clone, Debug)]
pub struct AlgebraicOperator {
    rank: usize,
    a: Vec<Option<NuTauPoly>>,
    b: Vec<Option<NuTauPoly>>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn to_nu(p: &RatTauPoly) -> NuTauPoly {
    p.map(NuCoefficient::from_rational)
}

impl AlgebraicOperator {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a(&self, a: usize, b: usize) -> Option<&NuTauPoly> {
        self.a[a * self.rank + b].as_ref()
    }

    pub fn b(&self, a: usize) -> Option<&NuTauPoly> {
        self.b[a].as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.a.iter().all(Option::is_some) && self.b.iter().all(Option::is_some)
    }

    /// The operator with `ν` replaced by a number.
    pub fn at_nu(&self, nu: &BigRational) -> AlgebraicOperator {
        let ev = |p: &NuTauPoly| {
            p.map(|c| {
                NuCoefficient::from_rational(&c.eval(nu).expect("operator coefficients are polynomial in ν"))
            })
        };
        AlgebraicOperator {
            rank: self.rank,
            a: self.a.iter().map(|x| x.as_ref().map(ev)).collect(),
            b: self.b.iter().map(|x| x.as_ref().map(ev)).collect(),
        }
    }

    /// `Σ A_ab ∂_a∂_b φ + Σ B_a ∂_a φ`.
    pub fn apply(&self, phi: &NuTauPoly) -> Result<NuTauPoly> {
        let n = self.rank;
        let mut out = NuTauPoly::zero(n);
        for a in 0..n {
            let da = phi.derivative(a);
            if da.is_zero() {
                continue;
            }
            let ba = self.b[a]
                .as_ref()
                .ok_or_else(|| Error::MissingEntry(format!("B_{}", a + 1)))?;
            out = &out + &(ba * &da);
            for b in a..n {
                let dab = da.derivative(b);
                if dab.is_zero() {
                    continue;
                }
                let aab = self.a[a * n + b]
                    .as_ref()
                    .ok_or_else(|| Error::MissingEntry(format!("A_{}{}", a + 1, b + 1)))?;
                let mut term = aab * &dab;
                if a != b {
                    term = term.scale(&NuCoefficient::from_rational(&rat(2)));
                }
                out = &out + &term;
            }
        }
        Ok(out)
    }
}

/// Options for [`Engine::verify_flag`].
#[derive(Clone, Debug, Default)]
pub struct FlagOptions {
    /// Require every output monomial other than the input to lie strictly below.
    pub strict_off_diagonal: bool,
    /// Only test monomials of at most this total degree.
    pub max_degree: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagWitness {
    pub input: Vec<u32>,
    pub output: Vec<u32>,
    pub input_grading: i64,
    pub output_grading: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagReport {
    pub f: Vec<i64>,
    pub bound: i64,
    pub strict_off_diagonal: bool,
    pub max_degree: Option<u32>,
    pub monomials_checked: usize,
    pub passed: bool,
    pub witness: Option<FlagWitness>,
}

/// All exponent vectors with `f·p ≤ bound` (and degree cap), by grading then
/// the display order of [`crate::TauPolynomial`].
pub fn monomials_below(f: &[i64], bound: i64, max_degree: Option<u32>) -> Vec<Exponent> {
    assert!(f.iter().all(|&x| x > 0), "characteristic vector must be positive");
    let n = f.len();
    let mut out = Vec::new();
    let mut cur: Exponent = SmallVec::from_elem(0, n);
    fn rec(
        i: usize,
        f: &[i64],
        left: i64,
        deg_left: u32,
        cur: &mut Exponent,
        out: &mut Vec<Exponent>,
    ) {
        if i == f.len() {
            out.push(cur.clone());
            return;
        }
        let mut k = 0u32;
        while k as i64 * f[i] <= left && k <= deg_left {
            cur[i] = k;
            rec(i + 1, f, left - k as i64 * f[i], deg_left - k, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    rec(0, f, bound, max_degree.unwrap_or(u32::MAX), &mut cur, &mut out);
    out.sort_by(|a, b| {
        grading(a, f)
            .cmp(&grading(b, f))
            .then_with(|| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()))
            .then_with(|| b.cmp(a))
    });
    out
}

impl Engine {
    /// `b_a = Δτ_a = −(w_a·w_a) τ_a`.
    pub fn coeff_b(&self, a: usize) -> Result<RatTauPoly> {
        self.check_index(a)?;
        let n = self.rank();
        let norm = self.root_system().gram()[a][a].clone();
        Ok(RatTauPoly::var(n, a).scale(&-norm))
    }

    /// `A_ab = −P τ_aτ_b + Σ_n (P − p_n) μ_n M_n` where `M_a M_b = Σ μ_n M_n`,
    /// `P = w_a·w_b` and `p_n = (n² − w_a² − w_b²)/2`.
    pub fn coeff_a(&self, a: usize, b: usize) -> Result<Arc<RatTauPoly>> {
        self.check_index(a)?;
        self.check_index(b)?;
        let key = (a.min(b), a.max(b));
        if let Some(p) = self.memo.read().unwrap().coeff_a.get(&key) {
            return Ok(p.clone());
        }
        let (a, b) = key;
        let rs = self.root_system();
        let n = self.rank();
        let wa = Weight::fundamental(n, a);
        let dec = self.decompose_product(&wa, b)?;
        let big_p = rs.gram()[a][b].clone();
        let (na, nb) = (rs.gram()[a][a].clone(), rs.gram()[b][b].clone());
        let mut sum: MExpansion<BigRational> = MExpansion::new();
        for (k, mu) in dec.terms() {
            let pk = (rs.norm(k) - &na - &nb) / rat(2);
            sum.add_term(k.clone(), (&big_p - pk) * BigRational::from(mu.clone()));
        }
        let tatb = &RatTauPoly::var(n, a) * &RatTauPoly::var(n, b);
        let value = &tatb.scale(&-big_p) + &self.expansion_to_tau(&sum)?;
        let value = Arc::new(value);
        let mut w = self.memo.write().unwrap();
        Ok(w.coeff_a.entry(key).or_insert(value).clone())
    }

    /// Reflection-pair rows for `c_a`: every ordered `(α, ω)`, `α > 0`,
    /// `ω ∈ Ω_a`, `l = |α^∨·ω| ≥ 2`, contributes the points `ω − kσα`
    /// (`σ = sign(α^∨·ω)`, `1 ≤ k < l`); only dominant points are kept.
    pub fn reflection_rows(&self, a: usize) -> Result<Vec<ReflectionRow>> {
        self.check_index(a)?;
        let rs = self.root_system();
        let n = self.rank();
        let orbit = self.orbit_data(&Weight::fundamental(n, a))?;
        type Key = (usize, i64, i64, Coords);
        let counts: FxHashMap<Key, u64> = orbit
            .flat
            .par_chunks(n * 512)
            .fold(FxHashMap::default, |mut acc: FxHashMap<Key, u64>, chunk| {
                let mut p = [0i64; 32];
                for omega in chunk.chunks_exact(n) {
                    for (ri, root) in rs.positive_roots().iter().enumerate() {
                        let big_l = root.coroot_pairing(omega);
                        let l = big_l.abs();
                        if l < 2 {
                            continue;
                        }
                        let sigma = big_l.signum();
                        let alpha = root.omega.coords();
                        for k in 1..l {
                            let point = &mut p[..n];
                            let mut dominant = true;
                            for i in 0..n {
                                point[i] = omega[i] - k * sigma * alpha[i];
                                dominant &= point[i] >= 0;
                            }
                            if dominant {
                                *acc.entry((ri, l, k, Coords::from_slice(point))).or_insert(0) += 1;
                            }
                        }
                    }
                }
                acc
            })
            .reduce(FxHashMap::default, |mut x, y| {
                for (k, v) in y {
                    *x.entry(k).or_insert(0) += v;
                }
                x
            });
        let mut merged: BTreeMap<(i64, i64, Coords, (i64, i64)), u64> = BTreeMap::new();
        for ((ri, l, k, point), c) in counts {
            let hn = rs.positive_roots()[ri].half_norm;
            *merged.entry((l, k, point, hn)).or_insert(0) += c;
        }
        Ok(merged
            .into_iter()
            .map(|((l, k, point, half_norm), mu)| ReflectionRow {
                l,
                k,
                n: Weight(point),
                mu,
                half_norm,
            })
            .collect())
    }

    /// `c_a` in the basis of orbit functions.
    pub fn coeff_c_expansion(&self, a: usize) -> Result<MExpansion<BigRational>> {
        let rs = self.root_system();
        let n = self.rank();
        let wa = Weight::fundamental(n, a);
        let mut e = MExpansion::singleton(wa.clone(), rs.rho_dot(&wa));
        for row in self.reflection_rows(a)? {
            let weight = BigRational::new(
                BigInt::from(row.half_norm.0 * row.l * row.mu as i64),
                BigInt::from(2 * row.half_norm.1),
            );
            e.add_term(row.n, weight);
        }
        Ok(e)
    }

    /// `c_a` with `ν c_a = ∇Φ_0·∇τ_a`.
    pub fn coeff_c(&self, a: usize) -> Result<Arc<RatTauPoly>> {
        self.check_index(a)?;
        if let Some(p) = self.memo.read().unwrap().coeff_c.get(&a) {
            return Ok(p.clone());
        }
        let value = Arc::new(self.expansion_to_tau(&self.coeff_c_expansion(a)?)?);
        let mut w = self.memo.write().unwrap();
        Ok(w.coeff_c.entry(a).or_insert(value).clone())
    }

    /// `B_a = b_a − 2ν c_a`.
    pub fn coeff_big_b(&self, a: usize) -> Result<NuTauPoly> {
        let b = to_nu(&self.coeff_b(a)?);
        let c = to_nu(&*self.coeff_c(a)?);
        let two_nu = NuCoefficient::linear(BigInt::zero(), BigInt::from(2));
        Ok(&b - &c.scale(&two_nu))
    }

    /// Every `A_ab` and `B_a`.
    pub fn assemble_operator(&self) -> Result<AlgebraicOperator> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.assemble_operator_for(&all)
    }

    /// The entries `A_ab` and `B_a` with `a, b` drawn from `vars`.
    pub fn assemble_operator_for(&self, vars: &[usize]) -> Result<AlgebraicOperator> {
        let mut pairs = Vec::new();
        for (i, &a) in vars.iter().enumerate() {
            for &b in &vars[i..] {
                pairs.push((a.min(b), a.max(b)));
            }
        }
        self.assemble_entries(vars, &pairs)
    }

    /// An operator holding exactly the listed `B_a` and `A_ab`.
    pub fn assemble_entries(&self, b_vars: &[usize], pairs: &[(usize, usize)]) -> Result<AlgebraicOperator> {
        let n = self.rank();
        let mut op = AlgebraicOperator {
            rank: n,
            a: vec![None; n * n],
            b: vec![None; n],
        };
        for &a in b_vars {
            self.check_index(a)?;
            op.b[a] = Some(self.coeff_big_b(a)?);
        }
        for &(a, b) in pairs {
            let p = to_nu(&*self.coeff_a(a, b)?);
            op.a[a * n + b] = Some(p.clone());
            op.a[b * n + a] = Some(p);
        }
        Ok(op)
    }

    /// The smallest operator able to act on every monomial in `monos`.
    pub fn operator_for_monomials(&self, monos: &[Exponent]) -> Result<AlgebraicOperator> {
        let n = self.rank();
        let mut vars = vec![false; n];
        let mut pairs = std::collections::BTreeSet::new();
        for p in monos {
            for a in 0..n {
                if p[a] == 0 {
                    continue;
                }
                vars[a] = true;
                if p[a] >= 2 {
                    pairs.insert((a, a));
                }
                for b in a + 1..n {
                    if p[b] > 0 {
                        pairs.insert((a, b));
                    }
                }
            }
        }
        let vars: Vec<usize> = (0..n).filter(|&a| vars[a]).collect();
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        self.assemble_entries(&vars, &pairs)
    }

    /// Check that `h` maps every monomial of grading at most `bound` into
    /// monomials of no larger grading (strictly lower off the diagonal when
    /// requested).
    pub fn verify_flag(&self, f: &[i64], bound: i64, opts: &FlagOptions) -> Result<FlagReport> {
        if f.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: f.len(),
            });
        }
        let monos = monomials_below(f, bound, opts.max_degree);
        let op = self.operator_for_monomials(&monos)?;
        let results: Vec<Option<FlagWitness>> = monos
            .par_iter()
            .map(|p| -> Result<Option<FlagWitness>> {
                let img = op.apply(&NuTauPoly::monomial(p.clone(), NuCoefficient::one()))?;
                let gp = grading(p, f);
                for (q, _) in img.display_order() {
                    let gq = grading(q, f);
                    let bad = gq > gp || (opts.strict_off_diagonal && q != p && gq >= gp);
                    if bad {
                        return Ok(Some(FlagWitness {
                            input: p.to_vec(),
                            output: q.to_vec(),
                            input_grading: gp,
                            output_grading: gq,
                        }));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        let witness = results.into_iter().flatten().next();
        Ok(FlagReport {
            f: f.to_vec(),
            bound,
            strict_off_diagonal: opts.strict_off_diagonal,
            max_degree: opts.max_degree,
            monomials_checked: monos.len(),
            passed: witness.is_none(),
            witness,
        })
    }
}

/// Rewrite a polynomial in relabelled variables: variable `i` becomes `perm[i]`.
pub fn relabel<C: crate::poly::Coefficient>(p: &crate::TauPolynomial<C>, perm: &[usize]) -> crate::TauPolynomial<C> {
    let n = p.nvars();
    let mut out = crate::TauPolynomial::zero(n);
    for (e, c) in p.terms() {
        let mut f: Exponent = SmallVec::from_elem(0, n);
        for i in 0..n {
            f[perm[i]] = e[i];
        }
        out.add_term(f, c.clone());
    }
    out
}

/// Result of matching a reference coefficient list against computed ones.
#[derive(Clone, Debug, Serialize)]
pub struct PermutationSearch {
    /// Permutations `perm` (reference index `i` ↦ computed index `perm[i]`)
    /// under which every entry matches.
    pub full_matches: Vec<Vec<usize>>,
    /// For a detailed attempt: per-entry agreement under `attempted`.
    pub attempted: Vec<usize>,
    pub per_entry: Vec<bool>,
}

/// Search every relabelling under which `reference[i]`, rewritten in computed
/// variables, equals `computed[perm[i]]`; `attempted` is also scored entrywise.
pub fn search_permutations<C: crate::poly::Coefficient>(
    reference: &[crate::TauPolynomial<C>],
    computed: &[crate::TauPolynomial<C>],
    attempted: &[usize],
) -> PermutationSearch {
    let n = reference.len();
    let check = |perm: &[usize], i: usize| relabel(&reference[i], perm) == computed[perm[i]];
    let mut full = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if (0..n).all(|i| check(p, i)) {
            full.push(p.to_vec());
        }
    });
    PermutationSearch {
        full_matches: full,
        attempted: attempted.to_vec(),
        per_entry: (0..n).map(|i| check(attempted, i)).collect(),
    }
}

fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// `(d_a/2) Σ_{α>0} (α·w_a)²`, the value of `c_a` at `x = 0`.
pub fn c_norm_value(engine: &Engine, a: usize) -> BigRational {
    let rs = engine.root_system();
    let n = rs.rank();
    let wa = Weight::fundamental(n, a);
    let d = crate::weylorbit::orbit_size(rs, &wa);
    let sum: BigRational = rs
        .positive_roots()
        .iter()
        .map(|r| {
            let s = rs.inner_product(&r.omega, &wa).expect("rank checked");
            &s * &s
        })
        .fold(BigRational::zero(), |x, y| x + y);
    sum * BigRational::from_integer(BigInt::from(d)) / rat(2)
}

/// Value of a rational polynomial at `τ = d` (all orbit sizes).
pub fn eval_at_orbit_sizes(engine: &Engine, p: &RatTauPoly) -> BigRational {
    let rs = engine.root_system();
    let n = rs.rank();
    let d: Vec<BigRational> = (0..n)
        .map(|a| {
            BigRational::from_integer(BigInt::from(crate::weylorbit::orbit_size(
                rs,
                &Weight::fundamental(n, a),
            )))
        })
        .collect();
    p.eval(&d)
}

/// True when every coefficient is an integer.
pub fn is_integral(p: &RatTauPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}
