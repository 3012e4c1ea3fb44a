//! Independent oracles: brute-force orbit sums, Weyl characters, dense spectra.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use fti_core::numcheck::{Evaluator, SampleConfig};
use fti_core::weylorbit::{enumerate_orbit, simple_reflection};
use fti_core::{Engine, MExpansion, RatTauPoly, RootSystem, Weight};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Gram matrix scaled to integers, with the scale.
fn integer_gram(rs: &RootSystem) -> (Vec<Vec<i64>>, i64) {
    let g = rs.gram();
    let d = g
        .iter()
        .flatten()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()))
        .to_i64()
        .unwrap();
    let gi = g
        .iter()
        .map(|row| row.iter().map(|x| (x * rat(d)).to_integer().to_i64().unwrap()).collect())
        .collect();
    (gi, d)
}

fn idot(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..u.len() {
        if u[i] == 0 {
            continue;
        }
        for j in 0..v.len() {
            s += u[i] * g[i][j] * v[j];
        }
    }
    s
}

fn orbit(rs: &RootSystem, d: &Weight) -> Vec<Vec<i64>> {
    enumerate_orbit(rs, d)
        .unwrap()
        .elements()
        .into_iter()
        .map(|w| w.coords().to_vec())
        .collect()
}

/// Pairs `(ω, ω')` from two orbits grouped by dominant sum.
fn pair_sums<F: FnMut(&[i64], &[i64]) -> BigRational>(
    rs: &RootSystem,
    j: &Weight,
    a: &Weight,
    mut weight: F,
) -> MExpansion<BigRational> {
    let (oj, oa) = (orbit(rs, j), orbit(rs, a));
    let mut acc: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
    for u in &oj {
        for v in &oa {
            let s: Vec<i64> = u.iter().zip(v).map(|(x, y)| x + y).collect();
            if s.iter().all(|&c| c >= 0) {
                *acc.entry(s).or_insert_with(BigRational::zero) += weight(u, v);
            }
        }
    }
    let mut e = MExpansion::new();
    for (k, c) in acc {
        e.add_term(Weight::new(&k), c);
    }
    e
}

#[test]
fn product_decomposition_matches_pair_counting() {
    for sys in ["A2", "G2", "B3", "C3", "F4"] {
        let e = Engine::from_name(sys).unwrap();
        let rs = e.root_system();
        let n = rs.rank();
        for a in 0..n {
            for j in [Weight::fundamental(n, 0), Weight::fundamental(n, n - 1), {
                let mut c = vec![0; n];
                c[0] = 1;
                c[n - 1] += 1;
                Weight::new(&c)
            }] {
                let brute = pair_sums(rs, &j, &Weight::fundamental(n, a), |_, _| BigRational::one());
                let exact = e.decompose_product(&j, a).unwrap().map(|c| BigRational::from(c.clone()));
                assert_eq!(exact, brute, "{sys}: M_{j} M_w{}", a + 1);
            }
        }
    }
}

#[test]
fn e8_adjoint_square_by_pair_counting() {
    let e = Engine::from_name("E8").unwrap();
    let w1 = Weight::fundamental(8, 0);
    let brute = pair_sums(e.root_system(), &w1, &w1, |_, _| BigRational::one());
    let exact = e.decompose_product(&w1, 0).unwrap().map(|c| BigRational::from(c.clone()));
    assert_eq!(exact, brute);
    assert_eq!(exact.get(&Weight::zero(8)), rat(240));
}

/// `∇τ_a·∇τ_b = −Σ (ω·ω') e^{i(ω+ω')·x}` summed over the two orbits.
fn gradient_product(e: &Engine, a: usize, b: usize) -> RatTauPoly {
    let rs = e.root_system();
    let n = rs.rank();
    let (g, d) = integer_gram(rs);
    let m = pair_sums(rs, &Weight::fundamental(n, a), &Weight::fundamental(n, b), |u, v| {
        BigRational::new(BigInt::from(-idot(&g, u, v)), BigInt::from(d))
    });
    e.expansion_to_tau(&m).unwrap()
}

#[test]
fn a_matches_direct_double_sum() {
    for sys in ["A2", "G2", "B3", "C3", "F4"] {
        let e = Engine::from_name(sys).unwrap();
        for a in 0..e.rank() {
            for b in a..e.rank() {
                assert_eq!(*e.coeff_a(a, b).unwrap(), gradient_product(&e, a, b), "{sys} A_{}{}", a + 1, b + 1);
            }
        }
    }
    let e8 = Engine::from_name("E8").unwrap();
    assert_eq!(*e8.coeff_a(0, 0).unwrap(), gradient_product(&e8, 0, 0));
    assert_eq!(*e8.coeff_a(0, 1).unwrap(), gradient_product(&e8, 0, 1));
}

#[test]
fn b_matches_orbit_laplacian() {
    // Δτ_a = −Σ_ω (ω·ω) e^{iω·x} = −w_a² τ_a.
    for sys in ["A2", "G2", "B3", "E6", "E8"] {
        let e = Engine::from_name(sys).unwrap();
        let rs = e.root_system();
        for a in 0..e.rank() {
            let w = Weight::fundamental(e.rank(), a);
            let expected = RatTauPoly::var(e.rank(), a).scale(&-rs.inner_product(&w, &w).unwrap());
            assert_eq!(e.coeff_b(a).unwrap(), expected, "{sys} b_{}", a + 1);
        }
    }
}

/// Weyl orbit of a regular weight with the sign of each element.
fn signed_orbit(rs: &RootSystem, lambda: &Weight) -> Vec<(Vec<i64>, f64)> {
    let mut seen: HashMap<Weight, bool> = HashMap::new();
    seen.insert(lambda.clone(), false);
    let mut stack = vec![lambda.clone()];
    while let Some(w) = stack.pop() {
        let odd = seen[&w];
        for i in 0..rs.rank() {
            let r = simple_reflection(rs, i, &w).unwrap();
            if let Some(&p) = seen.get(&r) {
                assert_eq!(p, !odd, "regular orbit has consistent signs");
            } else {
                seen.insert(r.clone(), !odd);
                stack.push(r);
            }
        }
    }
    seen.into_iter()
        .map(|(w, odd)| (w.coords().to_vec(), if odd { -1.0 } else { 1.0 }))
        .collect()
}

fn alternant(ev: &Evaluator, orbit: &[(Vec<i64>, f64)], x: &[f64]) -> Complex64 {
    orbit
        .iter()
        .map(|(w, s)| {
            let c = ev.cartesian(w);
            let phase: f64 = c.iter().zip(x).map(|(p, q)| p * q).sum();
            Complex64::from_polar(*s, phase)
        })
        .sum()
}

#[test]
fn free_fermion_point_gives_weyl_characters() {
    let one = BigRational::one();
    for sys in ["A2", "G2", "B3", "C3"] {
        let e = Engine::from_name(sys).unwrap();
        let rs = e.root_system();
        let n = rs.rank();
        let ev = Evaluator::new(&e, None).unwrap();
        let rho = Weight::new(&vec![1; n]);
        let denominator = signed_orbit(rs, &rho);
        assert_eq!(denominator.len() as u128, rs.weyl_group_order());
        for state in e.dominant_weights_up_to_height(4) {
            let phi = e.eigenfunction(&state, Some(&one)).unwrap();
            let numerator = signed_orbit(rs, &(&state + &rho));
            for i in 0..5 {
                let x = ev.sample(&SampleConfig::default(), i);
                let tau = ev.jet(&x).value;
                let value = phi
                    .expansion_tau
                    .eval_with(&tau, |c| Complex64::new(c.eval_f64(1.0), 0.0));
                let den = alternant(&ev, &denominator, &x);
                let chi = alternant(&ev, &numerator, &x) / den;
                let err = (value - chi).norm() / chi.norm().max(1.0);
                // The quotient loses precision where the denominator is small.
                let tol = 1e-12 * (rs.weyl_group_order() as f64 / den.norm()).max(1.0) * numerator.len() as f64;
                assert!(err < tol, "{sys} {state}: φ = {value}, χ = {chi}, tol {tol:.1e}");
            }
        }
    }
}

#[test]
fn e8_adjoint_character_has_dimension_248() {
    let e = Engine::from_name("E8").unwrap();
    let phi = e.eigenfunction(&Weight::fundamental(8, 0), Some(&BigRational::one())).unwrap();
    assert_eq!(phi.expansion_m.get(&Weight::zero(8)).eval(&BigRational::zero()), Some(rat(8)));
    let dim = fti_core::hamiltonian::eval_at_orbit_sizes(&e, &phi.expansion_tau.map(|c| c.eval(&rat(0)).unwrap()));
    assert_eq!(dim, rat(248));
}

#[test]
fn dense_spectrum_matches_closed_form() {
    for (sys, bound) in [("A2", 6), ("G2", 12)] {
        let e = Engine::from_name(sys).unwrap();
        let nu = BigRational::new(1.into(), 3.into());
        let states = e.dominant_weights_up_to_height(bound);
        let index: HashMap<&Weight, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let op = e.assemble_operator().unwrap().at_nu(&nu);
        let dim = states.len();
        let mut h = DMatrix::<f64>::zeros(dim, dim);
        for (j, n) in states.iter().enumerate() {
            let img = op.apply(&e.expansion_to_tau(&MExpansion::singleton(n.clone(), fti_core::NuCoefficient::one())).unwrap()).unwrap();
            for (m, c) in e.tau_to_expansion(&img).unwrap().terms() {
                let i = index[m];
                h[(i, j)] = c.eval_f64(0.0);
            }
        }
        let mut computed: Vec<f64> = h.complex_eigenvalues().iter().map(|z| z.re).collect();
        let mut expected: Vec<f64> = states
            .iter()
            .map(|n| e.eigenvalue(n).unwrap().eval(&nu).unwrap().to_f64().unwrap())
            .collect();
        computed.sort_by(f64::total_cmp);
        expected.sort_by(f64::total_cmp);
        for (c, x) in computed.iter().zip(&expected) {
            assert!((c - x).abs() < 1e-8 * x.abs().max(1.0), "{sys}: {computed:?} vs {expected:?}");
        }
    }
}
