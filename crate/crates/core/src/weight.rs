//! Lattice points written in the fundamental-weight basis.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;

pub(crate) type Coords = SmallVec<[i64; 8]>;

/// A weight `n = Σ n_a w_a`, stored as its integer coordinates `n_a`.
///
/// Ordering is lexicographic on the coordinates; height orderings are provided
/// by [`crate::RootSystem::height_key`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub(crate) Coords);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(Coords::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        Weight(smallvec::smallvec![0; rank])
    }

    /// The fundamental weight `w_a` (0-based index).
    pub fn fundamental(rank: usize, a: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[a] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Exponent vector of the monomial `τ^n`; `None` unless dominant.
    pub fn as_exponent(&self) -> Option<crate::poly::Exponent> {
        if !self.is_dominant() {
            return None;
        }
        Some(self.0.iter().map(|&c| c as u32).collect())
    }

    pub fn from_exponent(p: &[u32]) -> Self {
        Weight(p.iter().map(|&c| c as i64).collect())
    }

    pub(crate) fn add_scaled(&self, other: &[i64], k: i64) -> Self {
        Weight(self.0.iter().zip(other).map(|(&x, &y)| x + k * y).collect())
    }
}

impl Index<usize> for Weight {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(&rhs.0, 1)
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(&rhs.0, -1)
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&x| -x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `[1,0,2]`, `1,0,2` or `1 0 2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad coordinate `{t}`: {e}")))
            })
            .collect::<Result<Coords, _>>()?;
        if coords.is_empty() {
            return Err(Error::Parse(format!("empty weight `{s}`")));
        }
        Ok(Weight(coords))
    }
}
