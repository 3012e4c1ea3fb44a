//! Exact data of crystallographic root systems.
//!
//! Everything is expressed in the fundamental-weight basis, with the weights
//! ordered by increasing squared length (ties broken by Bourbaki index). Long
//! roots are normalized to squared length 2.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weight::Weight;

const MAX_CLASSICAL_RANK: usize = 24;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A positive root together with the pairings needed by the orbit loops.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    /// Coordinates in the fundamental-weight basis.
    pub omega: Weight,
    /// Coordinates in the basis of simple roots.
    pub root_coords: Vec<i64>,
    pub height: i64,
    /// Squared length `(α·α)`.
    pub norm: BigRational,
    /// `(α^∨ · w_b)` for every `b`; integers.
    pub(crate) coroot_pairing: Vec<i64>,
    /// `(α·α)/2 = num/den` with small integers, so that `(α·λ) = (α·α)/2 (α^∨·λ)`.
    pub(crate) half_norm: (i64, i64),
}

impl PositiveRoot {
    /// `(α^∨ · λ)` for `λ` in fundamental-weight coordinates.
    #[inline]
    pub fn coroot_pairing(&self, lambda: &[i64]) -> i64 {
        self.coroot_pairing
            .iter()
            .zip(lambda)
            .map(|(&p, &l)| p * l)
            .sum()
    }
}

/// Immutable data of a root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// `C_ij = <α_i, α_j^∨>`; row `i` is `α_i` in fundamental-weight coordinates.
    cartan: Vec<Vec<i64>>,
    /// Nonzero off-diagonal entries of each Cartan row.
    pub(crate) cartan_sparse: Vec<Vec<(usize, i64)>>,
    simple_norms: Vec<BigRational>,
    gram: Vec<Vec<BigRational>>,
    /// Gram matrix scaled to integers: `gram[a][b] = gram_int[a*N+b] / gram_den`.
    pub(crate) gram_int: Vec<i64>,
    pub(crate) gram_den: i64,
    /// Weyl heights of the fundamental weights scaled by `height_den`.
    pub(crate) height_int: Vec<i64>,
    pub(crate) height_den: i64,
    positive_roots: Vec<PositiveRoot>,
    weyl_vector_root_coords: Vec<BigRational>,
    highest_root_coords: Vec<i64>,
    /// `bourbaki[internal] = Bourbaki index` (both 0-based).
    bourbaki: Vec<usize>,
    weyl_group_order: u128,
}

impl RootSystem {
    /// Parse a name such as `E8`, `A2`, `b3`, `G_2`.
    pub fn from_name(name: &str) -> Result<Self> {
        let cleaned: String = name.trim().chars().filter(|c| *c != '_').collect();
        let mut chars = cleaned.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::UnknownSystem(name.to_string()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownSystem(name.to_string()))?;
        let family = match letter {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::UnknownSystem(name.to_string())),
        };
        Self::new(family, rank)
    }

    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let (min, max) = match family {
            Family::A => (1, MAX_CLASSICAL_RANK),
            Family::B | Family::C => (2, MAX_CLASSICAL_RANK),
            Family::D => (4, MAX_CLASSICAL_RANK),
            Family::E => (6, 8),
            Family::F => (4, 4),
            Family::G => (2, 2),
        };
        if rank < min || rank > max {
            return Err(match family {
                Family::E | Family::F | Family::G => {
                    Error::UnknownSystem(format!("{}{}", family.letter(), rank))
                }
                _ => Error::RankOutOfRange {
                    family: family.letter(),
                    rank,
                    min,
                    max,
                },
            });
        }
        let simple_gram = bourbaki_simple_gram(family, rank);
        Ok(Self::from_simple_gram(family, simple_gram))
    }

    fn from_simple_gram(family: Family, b: Vec<Vec<BigRational>>) -> Self {
        let n = b.len();
        let two = rat(2, 1);
        let four = rat(4, 1);
        // Weight Gram matrix = inverse of the coroot Gram matrix.
        let coroot_gram: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &four * &b[i][j] / (&b[i][i] * &b[j][j]))
                    .collect()
            })
            .collect();
        let gram_b = invert(&coroot_gram);

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| gram_b[i][i].cmp(&gram_b[j][j]).then(i.cmp(&j)));

        let bp: Vec<Vec<BigRational>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| b[i][j].clone()).collect())
            .collect();
        let gram: Vec<Vec<BigRational>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| gram_b[i][j].clone()).collect())
            .collect();
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| to_i64(&(&two * &bp[i][j] / &bp[j][j])))
                    .collect()
            })
            .collect();
        let cartan_sparse = cartan
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, &c)| j != i && c != 0)
                    .map(|(j, &c)| (j, c))
                    .collect()
            })
            .collect();
        let simple_norms: Vec<BigRational> = (0..n).map(|i| bp[i][i].clone()).collect();

        let gram_den = gram
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, g| acc.lcm(g.denom()));
        let gram_den_i = gram_den.to_i64().expect("gram denominator fits i64");
        let gram_int = gram
            .iter()
            .flatten()
            .map(|g| to_i64(&(g * BigRational::from(gram_den.clone()))))
            .collect();

        // Root coordinates of w_a are the rows of C^{-1}.
        let cartan_rat: Vec<Vec<BigRational>> = cartan
            .iter()
            .map(|row| row.iter().map(|&c| rat(c, 1)).collect())
            .collect();
        let cinv = invert(&cartan_rat);
        let fund_heights: Vec<BigRational> = cinv
            .iter()
            .map(|row| row.iter().fold(BigRational::zero(), |s, x| s + x))
            .collect();
        let height_den = fund_heights
            .iter()
            .fold(BigInt::one(), |acc, h| acc.lcm(h.denom()));
        let height_int = fund_heights
            .iter()
            .map(|h| to_i64(&(h * BigRational::from(height_den.clone()))))
            .collect();
        let height_den = height_den.to_i64().expect("height denominator fits i64");
        let weyl_vector_root_coords: Vec<BigRational> = (0..n)
            .map(|i| (0..n).fold(BigRational::zero(), |s, a| s + &cinv[a][i]))
            .collect();

        let mut rs = RootSystem {
            family,
            rank: n,
            cartan,
            cartan_sparse,
            simple_norms,
            gram,
            gram_int,
            gram_den: gram_den_i,
            height_int,
            height_den,
            positive_roots: Vec::new(),
            weyl_vector_root_coords,
            highest_root_coords: Vec::new(),
            bourbaki: order,
            weyl_group_order: 0,
        };
        rs.positive_roots = rs.generate_positive_roots(&cinv);
        rs.highest_root_coords = rs
            .positive_roots
            .iter()
            .max_by_key(|r| r.height)
            .map(|r| r.root_coords.clone())
            .unwrap_or_default();
        rs.weyl_group_order = rs.parabolic_order(&vec![true; n]);
        rs
    }

    fn generate_positive_roots(&self, cinv: &[Vec<BigRational>]) -> Vec<PositiveRoot> {
        let n = self.rank;
        let mut seen = std::collections::HashSet::new();
        let mut frontier: Vec<Weight> = (0..n).map(|i| Weight::new(&self.cartan[i])).collect();
        for w in &frontier {
            seen.insert(w.clone());
        }
        while let Some(w) = frontier.pop() {
            for i in 0..n {
                let r = crate::weylorbit::reflect(self, i, &w);
                if seen.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        let mut roots: Vec<PositiveRoot> = seen
            .into_iter()
            .filter_map(|omega| {
                let coords: Vec<BigRational> = (0..n)
                    .map(|i| {
                        (0..n).fold(BigRational::zero(), |s, a| {
                            s + &cinv[a][i] * BigRational::from(BigInt::from(omega[a]))
                        })
                    })
                    .collect();
                let coords: Vec<i64> = coords.iter().map(to_i64).collect();
                if coords.iter().any(|&c| c < 0) {
                    return None;
                }
                let norm = self.inner_product_unchecked(omega.coords(), omega.coords());
                let half = &norm / rat(2, 1);
                let coroot_pairing = (0..n)
                    .map(|b| {
                        let e = Weight::fundamental(n, b);
                        to_i64(&(self.inner_product_unchecked(omega.coords(), e.coords()) / &half))
                    })
                    .collect();
                let height = coords.iter().sum();
                Some(PositiveRoot {
                    half_norm: (
                        half.numer().to_i64().unwrap(),
                        half.denom().to_i64().unwrap(),
                    ),
                    omega,
                    root_coords: coords,
                    height,
                    norm,
                    coroot_pairing,
                })
            })
            .collect();
        roots.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then(a.root_coords.cmp(&b.root_coords))
        });
        roots
    }

    /// Order of the parabolic subgroup generated by the simple reflections
    /// whose index is flagged.
    pub fn parabolic_order(&self, generators: &[bool]) -> u128 {
        let n = self.rank;
        let mut visited = vec![false; n];
        let mut order: u128 = 1;
        for start in 0..n {
            if !generators[start] || visited[start] {
                continue;
            }
            let mut comp = vec![start];
            visited[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for &(j, _) in &self.cartan_sparse[i] {
                    if generators[j] && !visited[j] {
                        visited[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            order *= self.component_order(&comp);
        }
        order
    }

    fn component_order(&self, comp: &[usize]) -> u128 {
        let r = comp.len() as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        let mut max_bond = 1;
        let mut degree = vec![0usize; comp.len()];
        for (p, &i) in comp.iter().enumerate() {
            for &j in comp {
                if i != j && self.cartan[i][j] != 0 {
                    degree[p] += 1;
                    max_bond = max_bond.max(self.cartan[i][j] * self.cartan[j][i]);
                }
            }
        }
        match max_bond {
            3 => 12,
            2 if r == 4 && degree_of_double_bond_ends_are_interior(self, comp) => 1152,
            2 => (1u128 << r) * fact(r),
            _ => {
                let branch = degree.iter().position(|&d| d == 3);
                match branch {
                    None => fact(r + 1),
                    Some(p) => {
                        let mut arms: Vec<usize> = Vec::new();
                        let center = comp[p];
                        for &(j, _) in &self.cartan_sparse[center] {
                            if !comp.contains(&j) {
                                continue;
                            }
                            // walk the arm
                            let mut len = 1;
                            let mut prev = center;
                            let mut cur = j;
                            loop {
                                let next = self.cartan_sparse[cur]
                                    .iter()
                                    .map(|&(k, _)| k)
                                    .find(|&k| k != prev && comp.contains(&k));
                                match next {
                                    Some(k) => {
                                        prev = cur;
                                        cur = k;
                                        len += 1;
                                    }
                                    None => break,
                                }
                            }
                            arms.push(len);
                        }
                        arms.sort_unstable();
                        match arms.as_slice() {
                            [1, 2, 2] => 51_840,
                            [1, 2, 3] => 2_903_040,
                            [1, 2, 4] => 696_729_600,
                            _ => (1u128 << (r - 1)) * fact(r),
                        }
                    }
                }
            }
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simple_norms.iter().all(|x| x == &self.simple_norms[0])
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::new(&self.cartan[i])
    }

    pub fn simple_root_norms(&self) -> &[BigRational] {
        &self.simple_norms
    }

    /// `G_ab = (w_a · w_b)`.
    pub fn gram(&self) -> &[Vec<BigRational>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// The Weyl vector `ρ = Σ w_a` in fundamental-weight coordinates.
    pub fn weyl_vector(&self) -> Weight {
        Weight::new(&vec![1; self.rank])
    }

    pub fn weyl_vector_root_coords(&self) -> &[BigRational] {
        &self.weyl_vector_root_coords
    }

    pub fn highest_root_coords(&self) -> &[i64] {
        &self.highest_root_coords
    }

    /// The highest root in simple coroots: the minimal characteristic vector.
    pub fn minimal_flag_vector(&self) -> Vec<i64> {
        self.highest_root_coords
            .iter()
            .zip(&self.simple_norms)
            .map(|(&c, l)| {
                let x = BigRational::from_integer(BigInt::from(c)) * l / BigRational::from_integer(BigInt::from(2));
                x.to_integer().try_into().expect("small coordinate")
            })
            .collect()
    }

    /// Internal (length-ordered) index → Bourbaki index, both 0-based.
    pub fn bourbaki_order(&self) -> &[usize] {
        &self.bourbaki
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.weyl_group_order
    }

    /// Coxeter number `h = 2|R+|/N`.
    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank
    }

    fn check_len(&self, v: &Weight) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// `uᵀ G v`, exact.
    pub fn inner_product(&self, u: &Weight, v: &Weight) -> Result<BigRational> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.inner_product_unchecked(u.coords(), v.coords()))
    }

    fn inner_product_unchecked(&self, u: &[i64], v: &[i64]) -> BigRational {
        let mut s = BigRational::zero();
        for (a, &ua) in u.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if vb != 0 {
                    s += &self.gram[a][b] * BigRational::from(BigInt::from(ua * vb));
                }
            }
        }
        s
    }

    /// `(u·v) * gram_den`, an integer.
    #[inline]
    pub(crate) fn inner_scaled(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for a in 0..n {
            if u[a] == 0 {
                continue;
            }
            let row = &self.gram_int[a * n..(a + 1) * n];
            let mut t = 0;
            for b in 0..n {
                t += row[b] * v[b];
            }
            s += u[a] * t;
        }
        s
    }

    /// Row vector `G u`, scaled by `gram_den`.
    pub(crate) fn gram_times(&self, u: &[i64]) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|b| (0..n).map(|a| u[a] * self.gram_int[a * n + b]).sum())
            .collect()
    }

    pub fn norm(&self, v: &Weight) -> BigRational {
        rat(self.inner_scaled(v.coords(), v.coords()), self.gram_den)
    }

    /// Weyl height `(ρ^∨ · v)`: the sum of the root coordinates of `v`.
    pub fn weyl_height(&self, v: &Weight) -> Result<BigRational> {
        self.check_len(v)?;
        Ok(rat(self.height_scaled(v.coords()), self.height_den))
    }

    #[inline]
    pub(crate) fn height_scaled(&self, v: &[i64]) -> i64 {
        self.height_int.iter().zip(v).map(|(&h, &x)| h * x).sum()
    }

    /// Sort key realizing the Weyl-height order with lexicographic tie-break.
    pub fn height_key(&self, v: &Weight) -> (i64, Weight) {
        (self.height_scaled(v.coords()), v.clone())
    }

    /// `(ρ · v)` with `ρ = Σ w_a`.
    pub fn rho_dot(&self, v: &Weight) -> BigRational {
        rat(
            self.inner_scaled(self.weyl_vector().coords(), v.coords()),
            self.gram_den,
        )
    }

    /// Squared lengths of the fundamental weights (`d`-independent part of `b_a`).
    pub fn fundamental_norms(&self) -> Vec<BigRational> {
        (0..self.rank).map(|a| self.gram[a][a].clone()).collect()
    }

    pub fn report(&self) -> RootSystemReport {
        let s = |x: &BigRational| x.to_string();
        RootSystemReport {
            name: self.name(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            simple_roots_omega: self.cartan.clone(),
            simple_root_norms: self.simple_norms.iter().map(s).collect(),
            gram: self
                .gram
                .iter()
                .map(|row| row.iter().map(s).collect())
                .collect(),
            positive_roots: self
                .positive_roots
                .iter()
                .map(|r| RootEntry {
                    omega: r.omega.coords().to_vec(),
                    root_coords: r.root_coords.clone(),
                    height: r.height,
                    norm: r.norm.to_string(),
                })
                .collect(),
            weyl_vector_omega: vec![1; self.rank],
            weyl_vector_root_coords: self.weyl_vector_root_coords.iter().map(s).collect(),
            highest_root_coords: self.highest_root_coords.clone(),
            fundamental_weight_order: self.bourbaki.iter().map(|&i| i + 1).collect(),
            weyl_group_order: self.weyl_group_order.to_string(),
            coxeter_number: self.coxeter_number(),
        }
    }
}

fn degree_of_double_bond_ends_are_interior(rs: &RootSystem, comp: &[usize]) -> bool {
    // F4: the double bond joins two vertices that both have degree 2.
    for &i in comp {
        for &j in comp {
            if i < j && rs.cartan[i][j] * rs.cartan[j][i] == 2 {
                let deg = |v: usize| {
                    comp.iter()
                        .filter(|&&k| k != v && rs.cartan[v][k] != 0)
                        .count()
                };
                return deg(i) == 2 && deg(j) == 2;
            }
        }
    }
    false
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// JSON view of a root system; rationals as decimal strings.
#[derive(Debug, Serialize)]
pub struct RootSystemReport {
    pub name: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots_omega: Vec<Vec<i64>>,
    pub simple_root_norms: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub positive_roots: Vec<RootEntry>,
    pub weyl_vector_omega: Vec<i64>,
    pub weyl_vector_root_coords: Vec<String>,
    pub highest_root_coords: Vec<i64>,
    /// Bourbaki index (1-based) of each internal fundamental weight.
    pub fundamental_weight_order: Vec<usize>,
    pub weyl_group_order: String,
    pub coxeter_number: usize,
}

#[derive(Debug, Serialize)]
pub struct RootEntry {
    pub omega: Vec<i64>,
    pub root_coords: Vec<i64>,
    pub height: i64,
    pub norm: String,
}

fn to_i64(x: &BigRational) -> i64 {
    assert!(x.is_integer(), "expected integer, got {x}");
    x.to_integer().to_i64().expect("fits i64")
}

/// Gauss–Jordan inverse over the rationals. Panics on singular input.
pub(crate) fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("singular matrix");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Leading principal minors, used to certify positive definiteness.
pub fn leading_minors(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut a: Vec<Vec<BigRational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let mut det = BigRational::one();
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| !a[r][col].is_zero()) else {
                det = BigRational::zero();
                break;
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..k {
                let f = &a[r][col] / &a[col][col];
                for c in col..k {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
        out.push(det);
    }
    out
}

/// Simple-root Gram matrix in Bourbaki numbering, long roots of squared length 2.
fn bourbaki_simple_gram(family: Family, n: usize) -> Vec<Vec<BigRational>> {
    let mut b = vec![vec![BigRational::zero(); n]; n];
    let link = |b: &mut Vec<Vec<BigRational>>, i: usize, j: usize, v: BigRational| {
        b[i][j] = v.clone();
        b[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                b[i][i] = rat(2, 1);
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut b, i, i + 1, rat(-1, 1));
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                b[i][i] = rat(2, 1);
            }
            b[n - 1][n - 1] = rat(1, 1);
            for i in 0..n - 1 {
                link(&mut b, i, i + 1, rat(-1, 1));
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                b[i][i] = rat(1, 1);
            }
            b[n - 1][n - 1] = rat(2, 1);
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, rat(-1, 2));
            }
            link(&mut b, n - 2, n - 1, rat(-1, 1));
        }
        Family::D => {
            for i in 0..n {
                b[i][i] = rat(2, 1);
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, rat(-1, 1));
            }
            link(&mut b, n - 3, n - 1, rat(-1, 1));
        }
        Family::E => {
            for i in 0..n {
                b[i][i] = rat(2, 1);
            }
            link(&mut b, 0, 2, rat(-1, 1));
            link(&mut b, 1, 3, rat(-1, 1));
            for i in 2..n - 1 {
                link(&mut b, i, i + 1, rat(-1, 1));
            }
        }
        Family::F => {
            b[0][0] = rat(2, 1);
            b[1][1] = rat(2, 1);
            b[2][2] = rat(1, 1);
            b[3][3] = rat(1, 1);
            link(&mut b, 0, 1, rat(-1, 1));
            link(&mut b, 1, 2, rat(-1, 1));
            link(&mut b, 2, 3, rat(-1, 2));
        }
        Family::G => {
            b[0][0] = rat(2, 3);
            b[1][1] = rat(2, 1);
            link(&mut b, 0, 1, rat(-1, 1));
        }
    }
    b
}
