//! Structural invariants as property tests.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use fti_core::hamiltonian::eval_at_orbit_sizes;
use fti_core::weylorbit::simple_reflection;
use fti_core::{
    dominant_conjugate, flag_angle_cos_squared, orbit_size, Engine, Error, NuCoefficient, RatTauPoly, TauPolynomial,
    Weight,
};

const SYSTEMS: [&str; 6] = ["A2", "A3", "B3", "C3", "G2", "D4"];

fn engines() -> &'static [Engine] {
    static E: OnceLock<Vec<Engine>> = OnceLock::new();
    E.get_or_init(|| SYSTEMS.iter().map(|s| Engine::from_name(s).unwrap()).collect())
}

/// A system index and a dominant weight of small level.
fn system_and_weight(level: i64) -> impl Strategy<Value = (usize, Weight)> {
    (0..SYSTEMS.len()).prop_flat_map(move |s| {
        let n = engines()[s].rank();
        proptest::collection::vec(0..=level, n)
            .prop_filter("total level", move |c| c.iter().sum::<i64>() <= level)
            .prop_map(move |c| (s, Weight::new(&c)))
    })
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn m_tau_round_trip((s, n) in system_and_weight(3)) {
        let e = &engines()[s];
        let p = e.m_to_tau(&n).unwrap();
        let back = e.tau_to_expansion(&*p).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(back.get(&n), BigInt::one());
    }

    #[test]
    fn orbit_function_at_origin_is_orbit_size((s, n) in system_and_weight(3)) {
        let e = &engines()[s];
        let p = e.m_to_tau(&n).unwrap().map(|c| BigRational::from(c.clone()));
        let size = orbit_size(e.root_system(), &n);
        prop_assert_eq!(eval_at_orbit_sizes(e, &p), BigRational::from(BigInt::from(size)));
    }

    #[test]
    fn product_mass_is_conserved((s, j) in system_and_weight(2), a in 0usize..4) {
        let e = &engines()[s];
        let rs = e.root_system();
        let a = a % e.rank();
        let prod = e.decompose_product(&j, a).unwrap();
        let mass: BigInt = prod.terms().map(|(k, mu)| mu * BigInt::from(orbit_size(rs, k))).sum();
        let expected = BigInt::from(orbit_size(rs, &j)) * BigInt::from(orbit_size(rs, &Weight::fundamental(e.rank(), a)));
        prop_assert_eq!(mass, expected);
    }

    #[test]
    fn tau_monomial_round_trip((s, n) in system_and_weight(3)) {
        let e = &engines()[s];
        let exp = n.as_exponent().unwrap();
        let m = e.tau_power_to_m(&exp).unwrap();
        let p = e.expansion_to_tau(&m).unwrap();
        prop_assert_eq!(p, TauPolynomial::monomial(exp, BigInt::one()));
    }

    #[test]
    fn dominant_conjugate_is_weyl_invariant((s, n) in system_and_weight(3), path in proptest::collection::vec(0usize..4, 0..12)) {
        let rs = engines()[s].root_system();
        let mut w = n.clone();
        for i in path {
            w = simple_reflection(rs, i % rs.rank(), &w).unwrap();
        }
        prop_assert_eq!(rs.norm(&w), rs.norm(&n));
        prop_assert_eq!(dominant_conjugate(rs, &w), n);
    }

    #[test]
    fn interaction_is_strictly_lower_triangular((s, n) in system_and_weight(3)) {
        let e = &engines()[s];
        let rs = e.root_system();
        let below = e.dominant_weights_below(&n).unwrap();
        let h = e.h_on_m(&n).unwrap();
        prop_assert_eq!(h.get(&n), e.eigenvalue(&n).unwrap());
        for (m, _) in h.terms() {
            prop_assert!(below.contains(m));
            if m != &n {
                prop_assert!(rs.weyl_height(m).unwrap() < rs.weyl_height(&n).unwrap());
            }
        }
    }

    #[test]
    fn weight_and_polynomial_operators_agree((s, n) in system_and_weight(2)) {
        let e = &engines()[s];
        let exp = n.as_exponent().unwrap();
        let phi = e.m_to_tau(&n).unwrap().map(|c| NuCoefficient::from_rational(&BigRational::from(c.clone())));
        let monos: Vec<_> = phi.terms().map(|(p, _)| p.clone()).collect();
        prop_assert!(monos.contains(&exp));
        let op = e.operator_for_monomials(&monos).unwrap();
        let via_tau = op.apply(&phi).unwrap();
        let via_m = e.expansion_to_tau(&e.h_on_m(&n).unwrap()).unwrap();
        prop_assert_eq!(via_tau, via_m);
    }

    #[test]
    fn eigenfunctions_are_exact_at_rational_coupling((s, n) in system_and_weight(2), p in -6i64..12, q in 1i64..7) {
        let e = &engines()[s];
        let nu = BigRational::new(p.into(), q.into());
        match e.eigenfunction(&n, Some(&nu)) {
            Ok(state) => {
                prop_assert!(e.eigen_residual(&state).unwrap().is_zero());
                prop_assert_eq!(state.expansion_m.get(&n), NuCoefficient::one());
            }
            Err(Error::Resonance { .. }) => {
                // A level crossing needs a negative coupling.
                prop_assert!(nu < BigRational::zero());
            }
            Err(other) => prop_assert!(false, "{}", other),
        }
    }

    #[test]
    fn symbolic_eigenfunction_specializes((s, n) in system_and_weight(2), p in 0i64..9, q in 1i64..5) {
        let e = &engines()[s];
        let nu = BigRational::new(p.into(), q.into());
        let sym = e.eigenfunction(&n, None).unwrap();
        let num = e.eigenfunction(&n, Some(&nu)).unwrap();
        let specialized = sym.expansion_tau.map(|c| NuCoefficient::from_rational(&c.eval(&nu).unwrap()));
        prop_assert_eq!(specialized, num.expansion_tau);
    }

    #[test]
    fn polynomial_json_round_trip(terms in proptest::collection::vec((proptest::collection::vec(0u32..4, 3), -50i64..50, 1i64..9), 0..8)) {
        let mut p = RatTauPoly::zero(3);
        for (e, a, b) in terms {
            p.add_term(e.into_iter().collect(), BigRational::new(a.into(), b.into()));
        }
        let back = RatTauPoly::from_json(3, &p.to_json()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn flag_angle_is_a_cosine(f in proptest::collection::vec(1i64..200, 8), g in proptest::collection::vec(1i64..200, 8)) {
        let c = flag_angle_cos_squared(&f, &g);
        prop_assert!(c > BigRational::zero() && c <= rat(1));
        prop_assert_eq!(flag_angle_cos_squared(&f, &f), rat(1));
    }
}
