//! Spectrum and eigenfunctions.
//!
//! In the basis of orbit functions the Laplacian is diagonal,
//! `Δ M_n = −(n·n) M_n`, and the interaction part is lower triangular:
//! `h_int M_n = −2ν G_n`, `G_n = (ρ·n) M_n + Σ_{m<n} g_m M_m`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nucoef::NuCoefficient;
use crate::orbitalgebra::{grading, Engine, MExpansion};
use crate::poly::NuTauPoly;
use crate::weight::Weight;
use crate::weylorbit::make_dominant;

/// An eigenfunction `φ_n = M_n + Σ_{m<n} c_m M_m` with `h φ_n = ε_n φ_n`.
#[derive(Clone, Debug)]
pub struct Eigenstate {
    pub label: Weight,
    pub eigenvalue: NuCoefficient,
    pub expansion_m: MExpansion<NuCoefficient>,
    pub expansion_tau: NuTauPoly,
    /// `None` for symbolic `ν`.
    pub nu: Option<BigRational>,
}

/// One line of a spectrum table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub n: Weight,
    /// `ε_n = eps0 + eps1 ν`.
    pub eps0: BigRational,
    pub eps1: BigRational,
    /// Value at the requested numeric `ν`, if any.
    pub value: Option<BigRational>,
    /// Grading by the minimal characteristic vector.
    pub f_min_grading: i64,
    pub norm: BigRational,
    pub height: BigRational,
}

/// States sharing one eigenvalue polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Degeneracy {
    pub eps0: BigRational,
    pub eps1: BigRational,
    pub states: Vec<Weight>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn nu_linear(c0: &BigRational, c1: &BigRational) -> NuCoefficient {
    &NuCoefficient::from_rational(c0) + &(&NuCoefficient::from_rational(c1) * &NuCoefficient::nu())
}

impl Engine {
    /// `ε_n = −(n·n) − 2ν(ρ·n)`.
    pub fn eigenvalue(&self, n: &Weight) -> Result<NuCoefficient> {
        self.check_weight(n)?;
        let rs = self.root_system();
        Ok(nu_linear(&-rs.norm(n), &(-rs.rho_dot(n) * rat(2))))
    }

    /// `G_n` with `h_int M_n = −2ν G_n`.
    ///
    /// The off-diagonal part collects, for every ordered `(α, ω)` with
    /// `ω ∈ Ω_n`, `l = |α^∨·ω|`, `σ = sign(α^∨·ω)`, the weight `|α·ω|/2` at
    /// each point `ω − kσα`, `1 ≤ k < l`. It is evaluated from the target
    /// side: for a dominant `m < n` the contributing `ω` are `m + kσα`.
    pub fn h_int_row(&self, n: &Weight) -> Result<Arc<MExpansion<BigRational>>> {
        self.check_weight(n)?;
        if let Some(r) = self.memo.read().unwrap().hint.get(n) {
            return Ok(r.clone());
        }
        let rs = self.root_system();
        let rank = self.rank();
        let below = self.dominant_weights_below(n)?;
        let n_norm = rs.inner_scaled(n.coords(), n.coords());
        let max_l = rs
            .positive_roots()
            .iter()
            .map(|r| r.coroot_pairing(n.coords()))
            .max()
            .unwrap_or(0);
        let gram_den = rs.gram_den;
        let entries: Vec<(Weight, BigRational)> = below
            .par_iter()
            .filter(|m| *m != n)
            .map(|m| {
                // Accumulate 2·den·g_m as an integer over the common denominator.
                let mut acc: BigRational = BigRational::zero();
                let mut omega = [0i64; 32];
                let m_norm = rs.inner_scaled(m.coords(), m.coords());
                for root in rs.positive_roots() {
                    let alpha = root.omega.coords();
                    let m_alpha = rs.inner_scaled(m.coords(), alpha);
                    let a_norm = rs.inner_scaled(alpha, alpha);
                    for sigma in [1i64, -1] {
                        for k in 1..max_l {
                            // |m + kσα|² = |n|² prefilter, scaled by gram_den.
                            if m_norm + 2 * k * sigma * m_alpha + k * k * a_norm != n_norm {
                                continue;
                            }
                            let w = &mut omega[..rank];
                            for i in 0..rank {
                                w[i] = m[i] + k * sigma * alpha[i];
                            }
                            let big_l = root.coroot_pairing(w);
                            if sigma * big_l < k + 1 {
                                continue;
                            }
                            let mut d = [0i64; 32];
                            d[..rank].copy_from_slice(w);
                            make_dominant(rs, &mut d[..rank]);
                            if &d[..rank] != n.coords() {
                                continue;
                            }
                            let s = rs.inner_scaled(w, alpha).abs();
                            acc += BigRational::new(BigInt::from(s), BigInt::from(2 * gram_den));
                        }
                    }
                }
                (m.clone(), acc)
            })
            .filter(|(_, g)| !g.is_zero())
            .collect();
        let mut row = MExpansion::singleton(n.clone(), rs.rho_dot(n));
        for (m, g) in entries {
            row.add_term(m, g);
        }
        let row = Arc::new(row);
        let mut w = self.memo.write().unwrap();
        Ok(w.hint.entry(n.clone()).or_insert(row).clone())
    }

    /// `h_int M_n` as a combination of orbit functions with `ν`-linear coefficients.
    pub fn h_int_on_m(&self, n: &Weight) -> Result<MExpansion<NuCoefficient>> {
        let row = self.h_int_row(n)?;
        let m2nu = NuCoefficient::linear(BigInt::zero(), BigInt::from(-2));
        Ok(row.map(|g| &NuCoefficient::from_rational(g) * &m2nu))
    }

    /// `h M_n = −(n·n) M_n + h_int M_n`.
    pub fn h_on_m(&self, n: &Weight) -> Result<MExpansion<NuCoefficient>> {
        let mut e = self.h_int_on_m(n)?;
        let lap = NuCoefficient::from_rational(&-self.root_system().norm(n));
        e.add_term(n.clone(), lap);
        Ok(e)
    }

    /// Solve `h φ_n = ε_n φ_n` by back-substitution down the height order.
    /// With `nu = None` the coefficients are rational functions of `ν`.
    pub fn eigenfunction(&self, n: &Weight, nu: Option<&BigRational>) -> Result<Eigenstate> {
        self.check_weight(n)?;
        let below = self.dominant_weights_below(n)?;
        let special = |c: NuCoefficient| match nu {
            Some(v) => NuCoefficient::from_rational(&c.eval(v).expect("polynomial in ν")),
            None => c,
        };
        let eps_n = special(self.eigenvalue(n)?);
        let m2nu = special(NuCoefficient::linear(BigInt::zero(), BigInt::from(-2)));
        let mut acc: BTreeMap<Weight, NuCoefficient> = BTreeMap::new();
        let mut coeffs = MExpansion::new();
        for k in &below {
            let ck = if k == n {
                NuCoefficient::one()
            } else {
                let Some(src) = acc.remove(k) else { continue };
                if src.is_zero() {
                    continue;
                }
                let gap = &eps_n - &special(self.eigenvalue(k)?);
                if gap.is_zero() {
                    return Err(Error::Resonance {
                        nu: nu.map(|v| v.to_string()).unwrap_or_else(|| "ν".into()),
                        label: Box::new(n.clone()),
                        lower: Box::new(k.clone()),
                    });
                }
                &src / &gap
            };
            let row = self.h_int_row(k)?;
            let factor = &ck * &m2nu;
            for (m, g) in row.terms() {
                if m == k {
                    continue;
                }
                let add = &factor * &NuCoefficient::from_rational(g);
                let slot = acc.entry(m.clone()).or_insert_with(NuCoefficient::zero);
                *slot = &*slot + &add;
            }
            coeffs.add_term(k.clone(), ck);
        }
        let expansion_tau = self.expansion_to_tau(&coeffs)?;
        Ok(Eigenstate {
            label: n.clone(),
            eigenvalue: eps_n,
            expansion_m: coeffs,
            expansion_tau,
            nu: nu.cloned(),
        })
    }

    /// `h φ − ε φ`, computed with the assembled operator in `τ` variables.
    pub fn eigen_residual(&self, state: &Eigenstate) -> Result<NuTauPoly> {
        let monos: Vec<_> = state.expansion_tau.terms().map(|(e, _)| e.clone()).collect();
        let mut op = self.operator_for_monomials(&monos)?;
        if let Some(v) = &state.nu {
            op = op.at_nu(v);
        }
        let h_phi = op.apply(&state.expansion_tau)?;
        Ok(&h_phi - &state.expansion_tau.scale(&state.eigenvalue))
    }

    /// All dominant `n` with `ht(n) ≤ bound`.
    pub fn dominant_weights_up_to_height(&self, bound: i64) -> Vec<Weight> {
        let rs = self.root_system();
        let h = &rs.height_int;
        let scaled = bound * rs.height_den;
        let rank = self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0i64; rank];
        fn rec(i: usize, left: i64, h: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
            if i == h.len() {
                out.push(Weight::new(cur));
                return;
            }
            let mut k = 0;
            while k * h[i] <= left {
                cur[i] = k;
                rec(i + 1, left - k * h[i], h, cur, out);
                k += 1;
            }
            cur[i] = 0;
        }
        rec(0, scaled, h, &mut cur, &mut out);
        out
    }

    /// Spectrum table of all states with `ht(n) ≤ bound`, ordered by
    /// `|n·n|`, then height, then coordinates.
    pub fn enumerate_spectrum(&self, bound: i64, nu: Option<&BigRational>) -> Vec<SpectrumRow> {
        let rs = self.root_system();
        let f_min = rs.minimal_flag_vector();
        let mut rows: Vec<SpectrumRow> = self
            .dominant_weights_up_to_height(bound)
            .into_iter()
            .map(|n| {
                let eps0 = -rs.norm(&n);
                let eps1 = -rs.rho_dot(&n) * rat(2);
                let value = nu.map(|v| &eps0 + &eps1 * v);
                let p: Vec<u32> = n.coords().iter().map(|&c| c as u32).collect();
                SpectrumRow {
                    f_min_grading: grading(&p, &f_min),
                    norm: rs.norm(&n),
                    height: rs.weyl_height(&n).expect("rank matches"),
                    n,
                    eps0,
                    eps1,
                    value,
                }
            })
            .collect();
        rows.sort_by(|a, b| {
            a.norm
                .cmp(&b.norm)
                .then_with(|| a.height.cmp(&b.height))
                .then_with(|| a.n.cmp(&b.n))
        });
        rows
    }

    /// Groups of distinct states with identical `ε_n` as polynomials in `ν`.
    pub fn find_degeneracies(&self, bound: i64) -> Vec<Degeneracy> {
        let mut groups: BTreeMap<(BigRational, BigRational), Vec<Weight>> = BTreeMap::new();
        for row in self.enumerate_spectrum(bound, None) {
            groups
                .entry((row.norm.clone(), row.eps1.clone()))
                .or_default()
                .push(row.n);
        }
        groups
            .into_iter()
            .filter(|(_, v)| v.len() > 1)
            .map(|((norm, eps1), states)| Degeneracy {
                eps0: -norm,
                eps1,
                states,
            })
            .collect()
    }

    /// Coefficient of `τ^n` in `h τ^n`: the diagonal of the triangular
    /// operator in the monomial basis.
    pub fn monomial_diagonal(&self, op: &crate::AlgebraicOperator, n: &Weight) -> Result<NuCoefficient> {
        let exp = n.as_exponent().ok_or_else(|| Error::NotDominant(n.clone()))?;
        let img = op.apply(&NuTauPoly::monomial(exp.clone(), NuCoefficient::one()))?;
        Ok(img.coeff(&exp))
    }
}

/// `cos² θ` between two characteristic vectors, exact.
pub fn flag_angle_cos_squared(f: &[i64], g: &[i64]) -> BigRational {
    let dot: i64 = f.iter().zip(g).map(|(a, b)| a * b).sum();
    let ff: i64 = f.iter().map(|a| a * a).sum();
    let gg: i64 = g.iter().map(|a| a * a).sum();
    BigRational::new(BigInt::from(dot * dot), BigInt::from(ff * gg))
}

/// `cos θ` between two characteristic vectors.
pub fn flag_angle_cos(f: &[i64], g: &[i64]) -> f64 {
    let c2 = flag_angle_cos_squared(f, g);
    let dot: i64 = f.iter().zip(g).map(|(a, b)| a * b).sum();
    c2.to_f64().unwrap_or(f64::NAN).sqrt() * (dot.signum() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_in_e8() {
        let e = Engine::from_name("E8").unwrap();
        assert_eq!(
            e.eigenvalue(&Weight::fundamental(8, 0)).unwrap().to_string(),
            "-2 - 58ν"
        );
        assert_eq!(
            e.eigenvalue(&Weight::fundamental(8, 7)).unwrap().to_string(),
            "-30 - 270ν"
        );
        assert!(e.eigenvalue(&Weight::zero(8)).unwrap().is_zero());
    }

    #[test]
    fn h_int_on_first_fundamental() {
        let e = Engine::from_name("E8").unwrap();
        let r = e.h_int_on_m(&Weight::fundamental(8, 0)).unwrap();
        assert_eq!(r.display(e.root_system()), "-58ν M[1,0,0,0,0,0,0,0] - 480ν M[0,0,0,0,0,0,0,0]");
        assert!(e.h_int_on_m(&Weight::zero(8)).unwrap().is_empty());
    }

    #[test]
    fn first_eigenfunction_symbolic() {
        let e = Engine::from_name("E8").unwrap();
        let s = e.eigenfunction(&Weight::fundamental(8, 0), None).unwrap();
        assert_eq!(s.expansion_tau.to_string(), "(240ν/(1 + 29ν)) + τ1");
        assert!(e.eigen_residual(&s).unwrap().is_zero());
        let g = e.eigenfunction(&Weight::zero(8), None).unwrap();
        assert_eq!(g.expansion_tau.to_string(), "1");
    }

    #[test]
    fn numeric_resonance_is_reported() {
        let e = Engine::from_name("A2").unwrap();
        // ε_[1,1] − ε_0 = −2 − 4ν vanishes at ν = −1/2.
        let nu = BigRational::new((-1).into(), 2.into());
        let r = e.eigenfunction(&Weight::new(&[1, 1]), Some(&nu));
        assert!(matches!(r, Err(Error::Resonance { .. })), "{r:?}");
    }

    #[test]
    fn flag_angles() {
        let orbit = [29, 46, 57, 68, 84, 91, 110, 135];
        let min = [2, 2, 3, 3, 4, 4, 5, 6];
        let basic = [1; 8];
        assert_eq!(
            flag_angle_cos_squared(&orbit, &basic),
            BigRational::new((155 * 155).into(), 28246.into())
        );
        assert_eq!(
            flag_angle_cos_squared(&min, &basic),
            BigRational::new((29 * 29).into(), (4 * 238).into())
        );
    }
}
