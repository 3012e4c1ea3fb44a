//! Weyl orbits of dominant weights.
//!
//! All work happens in fundamental-weight coordinates, where the simple
//! reflection `s_i` acts by `λ ↦ λ − λ_i α_i` with `α_i` the `i`-th Cartan row.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootSystem;
use crate::weight::Weight;

/// Default cap on the number of materialized orbit elements.
pub const DEFAULT_ORBIT_CAP: usize = 20_000_000;

#[inline]
pub(crate) fn reflect_in_place(rs: &RootSystem, i: usize, lambda: &mut [i64]) {
    let li = lambda[i];
    if li == 0 {
        return;
    }
    lambda[i] = -li;
    for &(j, c) in &rs.cartan_sparse[i] {
        lambda[j] -= li * c;
    }
}

pub(crate) fn reflect(rs: &RootSystem, i: usize, lambda: &Weight) -> Weight {
    let mut out = lambda.clone();
    reflect_in_place(rs, i, out.coords_mut());
    out
}

/// `s_i λ` for a 0-based simple index `i`.
pub fn simple_reflection(rs: &RootSystem, i: usize, lambda: &Weight) -> Result<Weight> {
    if i >= rs.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: rs.rank(),
        });
    }
    if lambda.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda.rank(),
        });
    }
    Ok(reflect(rs, i, lambda))
}

/// Reflect at the lowest-index negative coordinate until dominant.
#[inline]
pub(crate) fn make_dominant(rs: &RootSystem, lambda: &mut [i64]) {
    while let Some(i) = lambda.iter().position(|&c| c < 0) {
        reflect_in_place(rs, i, lambda);
    }
}

/// The unique dominant weight in the Weyl orbit of `λ`.
pub fn dominant_conjugate(rs: &RootSystem, lambda: &Weight) -> Weight {
    let mut out = lambda.clone();
    make_dominant(rs, out.coords_mut());
    out
}

/// `μ ∈ Ω_d`, decided through the dominant conjugate of `μ`.
pub fn orbit_contains(rs: &RootSystem, d: &Weight, mu: &Weight) -> bool {
    if d.rank() != mu.rank() {
        return false;
    }
    let mut scratch = [0i64; 32];
    let n = mu.rank();
    if n <= scratch.len() {
        scratch[..n].copy_from_slice(mu.coords());
        make_dominant(rs, &mut scratch[..n]);
        &scratch[..n] == d.coords()
    } else {
        &dominant_conjugate(rs, mu) == d
    }
}

/// `|Ω_d| = |W| / |W_d|` with `W_d` the parabolic stabilizer of the dominant `d`.
pub fn orbit_size(rs: &RootSystem, d: &Weight) -> u128 {
    let stab: Vec<bool> = d.coords().iter().map(|&c| c == 0).collect();
    rs.weyl_group_order() / rs.parabolic_order(&stab)
}

fn check_dominant(rs: &RootSystem, d: &Weight) -> Result<()> {
    if d.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: d.rank(),
        });
    }
    if !d.is_dominant() {
        return Err(Error::NotDominant(d.clone()));
    }
    Ok(())
}

/// One step of the layered walk: every element of the next layer is `s_i μ`
/// with `μ_i > 0`, so deduplication is only needed within a layer.
fn next_layer(rs: &RootSystem, layer: &[i64]) -> Vec<i64> {
    let n = rs.rank();
    let mut seen: FxHashSet<&[i64]> = FxHashSet::default();
    let mut raw: Vec<i64> = Vec::new();
    for mu in layer.chunks_exact(n) {
        for i in 0..n {
            if mu[i] > 0 {
                let start = raw.len();
                raw.extend_from_slice(mu);
                reflect_in_place(rs, i, &mut raw[start..]);
            }
        }
    }
    let mut out = Vec::with_capacity(raw.len());
    for mu in raw.chunks_exact(n) {
        if seen.insert(mu) {
            out.extend_from_slice(mu);
        }
    }
    out
}

/// Visit every element of `Ω_d` without materializing the orbit.
///
/// Elements arrive layer by layer (by number of inversions); the order is
/// deterministic but not lexicographic.
pub fn for_each_element<F: FnMut(&[i64])>(rs: &RootSystem, d: &Weight, mut visit: F) -> Result<()> {
    check_dominant(rs, d)?;
    let mut layer: Vec<i64> = d.coords().to_vec();
    while !layer.is_empty() {
        for mu in layer.chunks_exact(rs.rank()) {
            visit(mu);
        }
        layer = next_layer(rs, &layer);
    }
    Ok(())
}

/// A fully materialized Weyl orbit, elements sorted lexicographically.
#[derive(Clone, Debug)]
pub struct WeylOrbit {
    dominant: Weight,
    rank: usize,
    data: Vec<i64>,
}

impl WeylOrbit {
    pub fn dominant(&self) -> &Weight {
        &self.dominant
    }

    pub fn size(&self) -> usize {
        self.data.len() / self.rank
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, i64> {
        self.data.chunks_exact(self.rank)
    }

    pub fn elements(&self) -> Vec<Weight> {
        self.iter().map(Weight::new).collect()
    }

    /// One coordinate vector per line, space separated.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.data.len() * 3);
        for mu in self.iter() {
            let line: Vec<String> = mu.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> OrbitSummary {
        OrbitSummary {
            dominant: self.dominant.coords().to_vec(),
            size: self.size(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OrbitSummary {
    pub dominant: Vec<i64>,
    pub size: usize,
}

/// Enumerate `Ω_d`, failing once more than `cap` elements accumulate.
pub fn enumerate_orbit_capped(rs: &RootSystem, d: &Weight, cap: usize) -> Result<WeylOrbit> {
    check_dominant(rs, d)?;
    let n = rs.rank();
    let mut data: Vec<i64> = Vec::new();
    let mut layer: Vec<i64> = d.coords().to_vec();
    while !layer.is_empty() {
        data.extend_from_slice(&layer);
        if data.len() / n > cap {
            return Err(Error::MemoryCap {
                weight: d.clone(),
                cap,
            });
        }
        layer = next_layer(rs, &layer);
    }
    let mut rows: Vec<&[i64]> = data.chunks_exact(n).collect();
    rows.sort_unstable();
    let sorted: Vec<i64> = rows.into_iter().flatten().copied().collect();
    Ok(WeylOrbit {
        dominant: d.clone(),
        rank: n,
        data: sorted,
    })
}

pub fn enumerate_orbit(rs: &RootSystem, d: &Weight) -> Result<WeylOrbit> {
    enumerate_orbit_capped(rs, d, DEFAULT_ORBIT_CAP)
}
