//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use fti_cli::reference as r;
use fti_cli::verify::e6_footnote;
use fti_core::hamiltonian::{c_norm_value, eval_at_orbit_sizes};
use fti_core::numcheck::{all_entries, validate_coefficients, Entry, Evaluator, SampleConfig};
use fti_core::{
    flag_angle_cos, flag_angle_cos_squared, orbit_size, Engine, Exponent, FlagOptions, NuCoefficient, RatTauPoly,
    TauPolynomial, Weight,
};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn fixture(s: &str) -> RatTauPoly {
    r::parse_poly(8, s).expect("fixture parses")
}

fn linear(e0: i64, e1: i64) -> NuCoefficient {
    NuCoefficient::linear(BigInt::from(e0), BigInt::from(e1))
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn c1_orbit_sizes(_: &Engine) -> Outcome {
    let start = Instant::now();
    let rs = fti_core::RootSystem::from_name("E8").unwrap();
    let sizes: Vec<u64> = (0..8)
        .map(|a| {
            let orbit = fti_core::weylorbit::enumerate_orbit(&rs, &Weight::fundamental(8, a)).unwrap();
            orbit.size() as u64
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let stabilizer: Vec<u64> = (0..8)
        .map(|a| orbit_size(&rs, &Weight::fundamental(8, a)) as u64)
        .collect();
    outcome(
        sizes == r::E8_ORBIT_SIZES && stabilizer == r::E8_ORBIT_SIZES && secs < 120.0,
        format!("{sizes:?} enumerated in {secs:.1}s"),
    )
}

fn c2_decomposition(e: &Engine) -> Outcome {
    let prod = e.decompose_product(&Weight::fundamental(8, 0), 1).unwrap();
    let ok = prod.len() == r::E8_M1_M2.len()
        && r::E8_M1_M2.iter().all(|(w, m)| prod.get(&Weight::new(w)) == BigInt::from(*m));
    outcome(ok, format!("M_1 M_2 = {}", prod.display(e.root_system())))
}

fn c3_a12(e: &Engine) -> Outcome {
    let a = e.coeff_a(0, 1).unwrap();
    outcome(*a == fixture(r::E8_A12), format!("A_12 = {a}"))
}

fn c4_b(e: &Engine) -> Outcome {
    let norms = e.root_system().fundamental_norms();
    let ok = (0..8).all(|a| {
        let expected = TauPolynomial::var(8, a).scale(&-&norms[a]);
        norms[a] == int(r::E8_NORMS[a]) && e.coeff_b(a).unwrap() == expected
    });
    outcome(ok, format!("w_a² = {:?}", norms.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

fn c5_c(e: &Engine) -> Outcome {
    let mut bad = Vec::new();
    let mut secs = Vec::new();
    for a in 0..8 {
        let t = Instant::now();
        let c = e.coeff_c(a).unwrap();
        secs.push(format!("{:.1}", t.elapsed().as_secs_f64()));
        if *c != fixture(r::E8_C[a]) {
            bad.push(a + 1);
        }
    }
    let c8_constant = e.coeff_c(7).unwrap().coeff(&[0; 8]);
    let ok = bad.is_empty() && c8_constant == int(1_221_350_400);
    outcome(
        ok,
        format!("mismatches {bad:?}; c_8(0) = {c8_constant}; seconds per entry {secs:?}"),
    )
}

fn c6_reflections(e: &Engine) -> Outcome {
    let rs = e.root_system();
    let mut bad = Vec::new();
    for row in r::E8_REFLECTIONS {
        let rows = e.reflection_rows(row.a - 1).unwrap();
        let n = Weight::new(&row.n);
        let m = e.m_to_tau(&n).unwrap();
        let m_ok = *m == fixture(row.m_tau).map(|c| c.to_integer()) && rs.norm(&n) == int(row.norm);
        for &k in row.ks {
            let hit = rows.iter().find(|x| x.l == row.l && x.k == k && x.n == n);
            if !(m_ok && hit.is_some_and(|h| h.mu == row.mu)) {
                bad.push(format!("a={} l={} k={} n={}", row.a, row.l, k, n));
            }
        }
    }
    let a1_origin = e
        .reflection_rows(0)
        .unwrap()
        .iter()
        .any(|x| x.n.is_zero() && x.mu == 240);
    let m7 = e.m_to_tau(&Weight::new(&[0, 1, 1, 0, 0, 0, 0, 0])).unwrap().coeff(&[0; 8]);
    let m8 = e.m_to_tau(&Weight::new(&[0, 1, 0, 0, 1, 0, 0, 0])).unwrap().coeff(&[0; 8]);
    let ok = bad.is_empty() && a1_origin && m7 == BigInt::from(-362_880) && m8 == BigInt::from(38_707_200);
    outcome(
        ok,
        format!(
            "{} rows; mismatches {bad:?}; constants M[0,1,1,0..] {m7}, M[0,1,0,0,1,0..] {m8}",
            r::E8_REFLECTIONS.len()
        ),
    )
}

fn c7_normalization(e: &Engine) -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for a in 0..8 {
        for b in a..8 {
            pairs += 1;
            if !eval_at_orbit_sizes(e, &e.coeff_a(a, b).unwrap()).is_zero() {
                bad.push(format!("A{}{}", a + 1, b + 1));
            }
        }
        if eval_at_orbit_sizes(e, &e.coeff_c(a).unwrap()) != c_norm_value(e, a) {
            bad.push(format!("c{}", a + 1));
        }
    }
    outcome(bad.is_empty() && pairs == 36, format!("{pairs} pairs, 8 c_a; failures {bad:?}"))
}

fn c8_spectrum(e: &Engine) -> Outcome {
    let rows = e.enumerate_spectrum(135, None);
    let closed = rows.len() == 29
        && r::E8_SPECTRUM.iter().all(|f| {
            rows.iter().any(|x| {
                x.n == Weight::new(&f.n)
                    && x.eps0 == int(f.eps0)
                    && x.eps1 == int(f.eps1)
                    && x.norm == int(f.norm)
                    && x.height == int(f.height)
                    && x.f_min_grading == f.grading
            })
        });
    let monos: Vec<Exponent> = r::E8_SPECTRUM
        .iter()
        .map(|f| Weight::new(&f.n).as_exponent().unwrap())
        .collect();
    let op = e.operator_for_monomials(&monos).unwrap();
    let mut bad = Vec::new();
    for f in &r::E8_SPECTRUM {
        let n = Weight::new(&f.n);
        let d = e.monomial_diagonal(&op, &n).unwrap();
        if d != linear(f.eps0, f.eps1) || e.eigenvalue(&n).unwrap() != d {
            bad.push(n.to_string());
        }
    }
    outcome(
        closed && bad.is_empty(),
        format!("closed form {}; operator diagonal mismatches {bad:?}", if closed { "matches" } else { "differs" }),
    )
}

fn c9_degeneracy(e: &Engine) -> Outcome {
    let (pair, e0, e1) = r::E8_DEGENERATE;
    let found = e.find_degeneracies(150);
    let in_table = e.find_degeneracies(135);
    let ok = found.len() == 1
        && found[0].states == pair.iter().map(|p| Weight::new(p)).collect::<Vec<_>>()
        && found[0].eps0 == int(e0)
        && found[0].eps1 == int(e1)
        && in_table.is_empty();
    let shown: Vec<String> = found
        .iter()
        .map(|d| {
            let s: Vec<String> = d.states.iter().map(|w| w.to_string()).collect();
            format!("{{{}}} at {} + {}ν", s.join(", "), d.eps0, d.eps1)
        })
        .collect();
    outcome(ok, format!("ht ≤ 150: {shown:?}; ht ≤ 135: {} groups", in_table.len()))
}

fn c10_residuals(e: &Engine) -> Outcome {
    let half = BigRational::new(1.into(), 2.into());
    let states = e.dominant_weights_up_to_height(97);
    let mut bad = Vec::new();
    for n in &states {
        if n.is_zero() {
            continue;
        }
        for nu in [None, Some(&half)] {
            let s = e.eigenfunction(n, nu).unwrap();
            if !e.eigen_residual(&s).unwrap().is_zero() {
                bad.push(format!("{n} at ν = {}", nu.map(|v| v.to_string()).unwrap_or("ν".into())));
            }
        }
    }
    let zero = BigRational::zero();
    let free = (0..8).all(|a| {
        let s = e.eigenfunction(&Weight::fundamental(8, a), Some(&zero)).unwrap();
        s.expansion_tau == TauPolynomial::var(8, a)
    });
    outcome(
        bad.is_empty() && free,
        format!(
            "{} states, symbolic ν and ν = 1/2; nonzero residuals {bad:?}; ν = 0 gives τ_a: {free}",
            states.len() - 1
        ),
    )
}

fn c11_flags(e: &Engine) -> Outcome {
    let min = e.verify_flag(&r::E8_F_MIN, 6, &FlagOptions::default()).unwrap();
    let strict = FlagOptions {
        strict_off_diagonal: true,
        max_degree: Some(2),
    };
    let bound = 2 * r::E8_F_ORBIT.iter().max().unwrap();
    let weyl = e.verify_flag(&r::E8_F_ORBIT, bound, &strict).unwrap();
    let rat = e.verify_flag(&r::E8_F_RATIONAL, 11, &FlagOptions::default()).unwrap();
    let witness = rat
        .witness
        .as_ref()
        .map(|w| format!("τ^{:?} → τ^{:?} ({} → {})", w.input, w.output, w.input_grading, w.output_grading));
    outcome(
        min.passed && weyl.passed && !rat.passed && witness.is_some(),
        format!(
            "minimal: {} monomials; Weyl: {} monomials; rational-model witness {}",
            min.monomials_checked,
            weyl.monomials_checked,
            witness.unwrap_or_else(|| "none".into())
        ),
    )
}

fn at_origin(e: &Engine, entries: &[(usize, usize)]) -> bool {
    let ev = Evaluator::new(e, None).unwrap();
    let jet = ev.jet(&vec![0.0; e.rank()]);
    let rs = e.root_system();
    let sizes_ok = (0..e.rank()).all(|a| {
        let d = orbit_size(rs, &Weight::fundamental(e.rank(), a)) as f64;
        (jet.value[a].re - d).abs() <= 1e-9 * d && jet.value[a].im.abs() <= 1e-9 * d
    });
    let point: Vec<f64> = jet.value.iter().map(|z| z.re).collect();
    let vanish = entries.iter().all(|&(a, b)| {
        let p = e.coeff_a(a, b).unwrap();
        let value = p.eval_with(&point, |c| c.to_f64().unwrap());
        let scale = p.eval_with(&point, |c| c.to_f64().unwrap().abs());
        value.abs() <= 1e-12 * scale.max(1.0)
    });
    sizes_ok && vanish
}

fn c12_numeric(_: &Engine) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for sys in ["A2", "G2"] {
        let e = Engine::from_name(sys).unwrap();
        let cfg = SampleConfig {
            samples: 100,
            tol: 1e-9,
            ..Default::default()
        };
        let rep = validate_coefficients(&e, &all_entries(e.rank()), &cfg).unwrap();
        let worst = rep.entries.iter().map(|x| x.max_rel_error).fold(0.0, f64::max);
        let pairs: Vec<(usize, usize)> = (0..e.rank()).flat_map(|a| (a..e.rank()).map(move |b| (a, b))).collect();
        let origin = at_origin(&e, &pairs);
        ok &= rep.passed && origin;
        details.push(format!("{sys} {:.1e}, x = 0 {origin}", worst));
    }
    let e8 = Engine::from_name("E8").unwrap();
    let mut entries = vec![Entry::A(0, 0), Entry::A(0, 1), Entry::C(0), Entry::C(1)];
    entries.extend((0..8).map(Entry::B));
    let rep = validate_coefficients(&e8, &entries, &SampleConfig::default()).unwrap();
    let worst = rep.entries.iter().map(|x| x.max_rel_error).fold(0.0, f64::max);
    let origin = at_origin(&e8, &[(0, 0), (0, 1)]);
    ok &= rep.passed && origin && rep.tol == 1e-8 && rep.samples == 10;
    details.push(format!("E8 subset {:.1e}, x = 0 {origin}", worst));
    outcome(ok, details.join("; "))
}

fn c13_angles(_: &Engine) -> Outcome {
    let basic = [1i64; 8];
    let c_orbit = flag_angle_cos(&r::E8_F_ORBIT, &basic);
    let c_min = flag_angle_cos(&r::E8_F_MIN, &basic);
    let expect_orbit = 155.0 / 28246f64.sqrt();
    let expect_min = 29.0 / (2.0 * 238f64.sqrt());
    let exact = flag_angle_cos_squared(&r::E8_F_ORBIT, &basic) == BigRational::new((155 * 155).into(), 28246.into())
        && flag_angle_cos_squared(&r::E8_F_MIN, &basic) == BigRational::new((29 * 29).into(), (4 * 238).into());
    let ok = exact && (c_orbit - expect_orbit).abs() < 1e-12 && (c_min - expect_min).abs() < 1e-12;
    outcome(ok, format!("cos θ_orbit = {c_orbit:.12}, cos θ_min = {c_min:.12}"))
}

fn c14_e6(_: &Engine) -> Outcome {
    let e6 = Engine::from_name("E6").unwrap();
    let (check, _) = e6_footnote(&e6).unwrap();
    outcome(check.passed, check.detail)
}

fn main() {
    let e8 = Engine::from_name("E8").unwrap();
    let criteria: [(&str, fn(&Engine) -> Outcome); 14] = [
        ("orbit sizes", c1_orbit_sizes),
        ("M_1 M_2 decomposition", c2_decomposition),
        ("A_12", c3_a12),
        ("b_a", c4_b),
        ("c_a", c5_c),
        ("reflection-pair fixtures", c6_reflections),
        ("normalization identities", c7_normalization),
        ("spectrum, closed form and operator diagonal", c8_spectrum),
        ("degeneracy", c9_degeneracy),
        ("eigenfunction residuals", c10_residuals),
        ("flag preservation", c11_flags),
        ("numeric cross-validation", c12_numeric),
        ("flag angles", c13_angles),
        ("E6 corrected B list", c14_e6),
    ];
    let mut results = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run(&e8);
        println!(
            "{} {:>2} {name} ({:.1}s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64(),
            o.detail
        );
        results.push(o);
    }
    let failed: Vec<usize> = (0..14).filter(|&i| !results[i].passed).map(|i| i + 1).collect();
    println!("failed criteria: {failed:?}");
    // A footnote mismatch is acceptable only when reported with the attempted mapping.
    let e6 = &results[13];
    let reported = e6.passed || e6.detail.contains("attempted printed→computed");
    if !reported || failed.iter().any(|&i| i != 14) {
        std::process::exit(1);
    }
}
