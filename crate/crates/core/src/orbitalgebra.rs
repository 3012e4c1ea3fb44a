//! The algebra of orbit functions `M_n = Σ_{ω∈Ω_n} e^{i(ω·x)}`.
//!
//! [`Engine`] owns a root system together with memo tables for every
//! expensive intermediate (product decompositions, `M → τ` conversions and
//! the operator data built on top of them). All tables are append-only and
//! values are deterministic, so concurrent insertion of the same key is
//! harmless.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Coefficient, Exponent, IntTauPoly, RatTauPoly};
use crate::rootdata::RootSystem;
use crate::weight::{Coords, Weight};
use crate::weylorbit::{enumerate_orbit_capped, make_dominant, orbit_size, DEFAULT_ORBIT_CAP};

/// A finite combination `Σ c_n M_n` over dominant weights.
#[derive(Clone, PartialEq, Debug)]
pub struct MExpansion<C = BigInt> {
    terms: BTreeMap<Weight, C>,
}

impl<C: Coefficient> Default for MExpansion<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> MExpansion<C> {
    pub fn new() -> Self {
        MExpansion {
            terms: BTreeMap::new(),
        }
    }

    pub fn singleton(n: Weight, c: C) -> Self {
        let mut e = Self::new();
        e.add_term(n, c);
        e
    }

    pub fn add_term(&mut self, n: Weight, c: C) {
        debug_assert!(n.is_dominant());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(n) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &C) {
        for (n, c) in &other.terms {
            self.add_term(n.clone(), c.mul_ref(k));
        }
    }

    pub fn get(&self, n: &Weight) -> C {
        self.terms.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MExpansion<D> {
        let mut e = MExpansion::new();
        for (n, c) in &self.terms {
            e.add_term(n.clone(), f(c));
        }
        e
    }

    /// Terms by decreasing Weyl height, ties in decreasing lexicographic order.
    pub fn by_height(&self, rs: &RootSystem) -> Vec<(&Weight, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| rs.height_key(b).cmp(&rs.height_key(a)));
        v
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(n, c)| json!({"weight": n.coords(), "coeff": c.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(rank: usize, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected term list, found {v}")))?;
        let mut e = Self::new();
        for t in arr {
            let n: Weight = serde_json::from_value(t["weight"].clone())
                .map_err(|err| Error::Parse(err.to_string()))?;
            if n.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: n.rank(),
                });
            }
            if !n.is_dominant() {
                return Err(Error::NotDominant(n));
            }
            e.add_term(n, C::from_json(&t["coeff"])?);
        }
        Ok(e)
    }

    /// Human-readable form such as `M[1,1,0] + 126 M[1,0,0]`.
    pub fn display(&self, rs: &RootSystem) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (n, c)) in self.by_height(rs).into_iter().enumerate() {
            let (neg, mag) = if c.is_negative_unit_form() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mag.is_compound() {
                out.push_str(&format!("({mag}) "));
            } else if !mag.is_one() {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&format!("M{n}"));
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for MExpansion<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(n, c)| format!("{c}*M{n}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `f · p`, the grading of the monomial `τ^p` by a characteristic vector.
pub fn grading(p: &[u32], f: &[i64]) -> i64 {
    assert_eq!(p.len(), f.len(), "grading: length mismatch");
    p.iter().zip(f).map(|(&x, &y)| x as i64 * y).sum()
}

/// A materialized orbit together with data used by the inner loops.
pub(crate) struct OrbitData {
    pub(crate) rank: usize,
    pub(crate) flat: Vec<i64>,
    /// `(ω·ω) * gram_den`, the same for every element.
    pub(crate) norm_scaled: i64,
}

impl OrbitData {
    pub(crate) fn iter(&self) -> std::slice::ChunksExact<'_, i64> {
        self.flat.chunks_exact(self.rank)
    }
}

#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) decomp: FxHashMap<(Weight, usize), Arc<MExpansion>>,
    pub(crate) m2tau: FxHashMap<Weight, Arc<IntTauPoly>>,
    pub(crate) coeff_a: FxHashMap<(usize, usize), Arc<RatTauPoly>>,
    pub(crate) coeff_c: FxHashMap<usize, Arc<RatTauPoly>>,
    pub(crate) hint: FxHashMap<Weight, Arc<MExpansion<BigRational>>>,
}

/// Root system plus memoized orbit algebra.
pub struct Engine {
    rs: Arc<RootSystem>,
    orbit_cap: usize,
    orbits: RwLock<FxHashMap<Weight, Arc<OrbitData>>>,
    pub(crate) memo: RwLock<Memo>,
}

impl Engine {
    pub fn new(rs: RootSystem) -> Self {
        Self::with_cap(rs, DEFAULT_ORBIT_CAP)
    }

    /// `cap` bounds the size of any orbit the engine materializes.
    pub fn with_cap(rs: RootSystem, cap: usize) -> Self {
        Engine {
            rs: Arc::new(rs),
            orbit_cap: cap,
            orbits: RwLock::new(FxHashMap::default()),
            memo: RwLock::new(Memo::default()),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::from_name(name)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn orbit_cap(&self) -> usize {
        self.orbit_cap
    }

    pub(crate) fn check_weight(&self, n: &Weight) -> Result<()> {
        if n.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: n.rank(),
            });
        }
        if !n.is_dominant() {
            return Err(Error::NotDominant(n.clone()));
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, a: usize) -> Result<()> {
        if a >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: a,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub(crate) fn orbit_data(&self, d: &Weight) -> Result<Arc<OrbitData>> {
        if let Some(o) = self.orbits.read().unwrap().get(d) {
            return Ok(o.clone());
        }
        let orbit = enumerate_orbit_capped(&self.rs, d, self.orbit_cap)?;
        let data = Arc::new(OrbitData {
            rank: self.rank(),
            flat: orbit.iter().flatten().copied().collect(),
            norm_scaled: self.rs.inner_scaled(d.coords(), d.coords()),
        });
        let mut w = self.orbits.write().unwrap();
        Ok(w.entry(d.clone()).or_insert(data).clone())
    }

    /// `M_j · M_a = Σ_k μ_k M_k` for a dominant `j` and a fundamental index `a`.
    ///
    /// The smaller of the two orbits is iterated. With `S` that orbit and `D`
    /// the other dominant weight, candidates are the dominant conjugates of
    /// `D + s` and `μ_k = #{s ∈ S : k − s ∈ Ω_D}`; the membership test is
    /// prefiltered by the length condition `2 k·s = k² + s² − D²`.
    pub fn decompose_product(&self, j: &Weight, a: usize) -> Result<Arc<MExpansion>> {
        self.check_weight(j)?;
        self.check_index(a)?;
        let key = (j.clone(), a);
        if let Some(e) = self.memo.read().unwrap().decomp.get(&key) {
            return Ok(e.clone());
        }
        let n = self.rank();
        let wa = Weight::fundamental(n, a);
        let result = if j.is_zero() {
            MExpansion::singleton(wa, BigInt::one())
        } else {
            let (small, big) = if orbit_size(&self.rs, j) < orbit_size(&self.rs, &wa) {
                (j.clone(), wa)
            } else {
                (wa, j.clone())
            };
            self.decompose_inner(&small, &big)?
        };
        let result = Arc::new(result);
        let mut w = self.memo.write().unwrap();
        Ok(w.decomp.entry(key).or_insert(result).clone())
    }

    fn decompose_inner(&self, small: &Weight, big: &Weight) -> Result<MExpansion> {
        let rs = &*self.rs;
        let n = rs.rank();
        let s = self.orbit_data(small)?;
        let dc = big.coords();
        let mut cands: Vec<Coords> = s
            .flat
            .par_chunks(n * 256)
            .fold(FxHashSet::default, |mut set, chunk| {
                for x in chunk.chunks_exact(n) {
                    let mut k: Coords = x.iter().zip(dc).map(|(a, b)| a + b).collect();
                    make_dominant(rs, &mut k);
                    set.insert(k);
                }
                set
            })
            .reduce(FxHashSet::default, |mut a, b| {
                a.extend(b);
                a
            })
            .into_iter()
            .collect();
        cands.sort_unstable();
        let d_norm = rs.inner_scaled(dc, dc);
        let counts: Vec<u64> = cands
            .par_iter()
            .map(|k| {
                let gk = rs.gram_times(k);
                let target = rs.inner_scaled(k, k) + s.norm_scaled - d_norm;
                let mut buf = [0i64; 32];
                let mut count = 0u64;
                for x in s.iter() {
                    let dot: i64 = x.iter().zip(&gk).map(|(a, b)| a * b).sum();
                    if 2 * dot != target {
                        continue;
                    }
                    let y = &mut buf[..n];
                    for i in 0..n {
                        y[i] = k[i] - x[i];
                    }
                    make_dominant(rs, y);
                    if y == dc {
                        count += 1;
                    }
                }
                count
            })
            .collect();
        let mut out = MExpansion::new();
        for (k, c) in cands.into_iter().zip(counts) {
            out.add_term(Weight(k), BigInt::from(c));
        }
        Ok(out)
    }

    /// `τ^p` in the basis of orbit functions.
    pub fn tau_power_to_m(&self, p: &[u32]) -> Result<MExpansion> {
        if p.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: p.len(),
            });
        }
        let mut acc = MExpansion::singleton(Weight::zero(self.rank()), BigInt::one());
        for (a, &k) in p.iter().enumerate() {
            for _ in 0..k {
                let mut next = MExpansion::new();
                for (j, c) in acc.terms() {
                    next.add_scaled(&*self.decompose_product(j, a)?, c);
                }
                acc = next;
            }
        }
        Ok(acc)
    }

    /// `M_n` as a polynomial in `τ`.
    ///
    /// With `a` the first index where `n_a > 0` and `j = n − w_a`,
    /// `M_n = M_j τ_a − Σ_{k≠n} μ_k M_k` where `M_j M_a = Σ μ_k M_k`.
    /// Dependencies are resolved with an explicit stack.
    pub fn m_to_tau(&self, n: &Weight) -> Result<Arc<IntTauPoly>> {
        self.check_weight(n)?;
        if let Some(p) = self.memo.read().unwrap().m2tau.get(n) {
            return Ok(p.clone());
        }
        let rank = self.rank();
        let mut stack = vec![n.clone()];
        while let Some(top) = stack.last().cloned() {
            if self.memo.read().unwrap().m2tau.contains_key(&top) {
                stack.pop();
                continue;
            }
            let value = match top.coords().iter().position(|&c| c > 0) {
                None => IntTauPoly::one(rank),
                Some(a) => {
                    let j = &top - &Weight::fundamental(rank, a);
                    let dec = self.decompose_product(&j, a)?;
                    let missing: Vec<Weight> = {
                        let memo = self.memo.read().unwrap();
                        std::iter::once(&j)
                            .chain(dec.keys().filter(|k| **k != top))
                            .filter(|k| !memo.m2tau.contains_key(*k))
                            .cloned()
                            .collect()
                    };
                    if !missing.is_empty() {
                        stack.extend(missing);
                        continue;
                    }
                    let memo = self.memo.read().unwrap();
                    let mut p = memo.m2tau[&j].mul_var(a);
                    for (k, mu) in dec.terms() {
                        if *k != top {
                            p.add_scaled(&memo.m2tau[k], &-mu.clone());
                        }
                    }
                    p
                }
            };
            self.memo
                .write()
                .unwrap()
                .m2tau
                .entry(top)
                .or_insert_with(|| Arc::new(value));
            stack.pop();
        }
        Ok(self.memo.read().unwrap().m2tau[n].clone())
    }

    /// Convert a combination of orbit functions into a `τ`-polynomial.
    pub fn expansion_to_tau<C: Coefficient>(
        &self,
        e: &MExpansion<C>,
    ) -> Result<crate::poly::TauPolynomial<C>> {
        let mut p = crate::poly::TauPolynomial::zero(self.rank());
        for (n, c) in e.terms() {
            let m = self.m_to_tau(n)?;
            for (exp, k) in m.terms() {
                p.add_term(exp.clone(), C::from_bigint(k.clone()).mul_ref(c));
            }
        }
        Ok(p)
    }

    /// Convert a `τ`-polynomial into the basis of orbit functions.
    pub fn tau_to_expansion<C: Coefficient>(
        &self,
        p: &crate::poly::TauPolynomial<C>,
    ) -> Result<MExpansion<C>> {
        let mut e = MExpansion::new();
        for (exp, c) in p.terms() {
            for (n, k) in self.tau_power_to_m(exp)?.terms() {
                e.add_term(n.clone(), C::from_bigint(k.clone()).mul_ref(c));
            }
        }
        Ok(e)
    }

    /// All dominant `m ≤ n` (that is, `n − m` a nonnegative combination of
    /// positive roots), by decreasing height. Every such `m` is reached from
    /// `n` by subtracting single positive roots without leaving the dominant cone.
    pub fn dominant_weights_below(&self, n: &Weight) -> Result<Vec<Weight>> {
        self.check_weight(n)?;
        let rs = &*self.rs;
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(n.clone());
        let mut frontier = vec![n.clone()];
        while let Some(m) = frontier.pop() {
            for r in rs.positive_roots() {
                let next = &m - &r.omega;
                if next.is_dominant() && !seen.contains(&next) {
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort_by(|a, b| rs.height_key(b).cmp(&rs.height_key(a)));
        Ok(out)
    }

    /// Number of memoized product decompositions.
    pub fn decomposition_count(&self) -> usize {
        self.memo.read().unwrap().decomp.len()
    }

    /// Weight with the coordinates of an exponent vector.
    pub fn weight_of(&self, p: &Exponent) -> Weight {
        Weight::from_exponent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn a2_square_of_fundamental() {
        let e = Engine::from_name("A2").unwrap();
        let d = e.decompose_product(&w(&[1, 0]), 0).unwrap();
        let terms: Vec<_> = d.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
        assert_eq!(terms, vec![(w(&[0, 1]), big(2)), (w(&[2, 0]), big(1))]);
    }

    #[test]
    fn product_with_trivial_orbit() {
        let e = Engine::from_name("B3").unwrap();
        for a in 0..3 {
            let d = e.decompose_product(&Weight::zero(3), a).unwrap();
            assert_eq!(*d, MExpansion::singleton(Weight::fundamental(3, a), big(1)));
        }
    }

    #[test]
    fn m_to_tau_in_a2() {
        let e = Engine::from_name("A2").unwrap();
        // M_{[2,0]} = τ1² − 2 τ2
        let p = e.m_to_tau(&w(&[2, 0])).unwrap();
        assert_eq!(p.to_string(), "-2 τ2 + τ1^2");
        // M_{[1,1]} = τ1 τ2 − 3
        assert_eq!(e.m_to_tau(&w(&[1, 1])).unwrap().to_string(), "-3 + τ1 τ2");
        assert_eq!(e.m_to_tau(&w(&[0, 1])).unwrap().to_string(), "τ2");
        assert_eq!(e.m_to_tau(&w(&[0, 0])).unwrap().to_string(), "1");
    }

    #[test]
    fn dominant_weights_below_in_a2() {
        let e = Engine::from_name("A2").unwrap();
        let below = e.dominant_weights_below(&w(&[2, 2])).unwrap();
        assert_eq!(below, vec![w(&[2, 2]), w(&[3, 0]), w(&[0, 3]), w(&[1, 1]), w(&[0, 0])]);
    }

    #[test]
    fn rejects_bad_input() {
        let e = Engine::from_name("A2").unwrap();
        assert!(matches!(
            e.decompose_product(&w(&[-1, 0]), 0),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            e.decompose_product(&w(&[1, 0]), 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(e.m_to_tau(&w(&[1, 0, 0])).is_err());
    }

    #[test]
    fn grading_examples() {
        let f = [29, 46, 57, 68, 84, 91, 110, 135];
        assert_eq!(grading(&[1, 1, 0, 0, 0, 0, 0, 0], &f), 75);
        assert_eq!(grading(&[0, 0, 0, 0, 0, 0, 0, 1], &[2, 2, 3, 3, 4, 4, 5, 6]), 6);
        assert_eq!(grading(&[0; 8], &f), 0);
    }
}
