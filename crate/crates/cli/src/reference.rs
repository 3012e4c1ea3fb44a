//! Published E8 tables, transcribed verbatim, and a parser for the compact
//! polynomial notation used here (`"240 + 29*t1 - t1*t2^2"`, 1-based).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use smallvec::smallvec;

use fti_core::{Error, Exponent, NuCoefficient, NuTauPoly, RatTauPoly, Result};

/// `w_a²` and `d_a = |Ω_a|` in length order.
pub const E8_NORMS: [i64; 8] = [2, 4, 6, 8, 12, 14, 20, 30];
pub const E8_ORBIT_SIZES: [u64; 8] = [240, 2160, 6720, 17280, 60480, 69120, 241920, 483840];

/// `M_1·M_2` as (weight, multiplicity).
pub const E8_M1_M2: [([i64; 8], i64); 5] = [
    ([1, 1, 0, 0, 0, 0, 0, 0], 1),
    ([1, 0, 0, 0, 0, 0, 0, 0], 126),
    ([0, 1, 0, 0, 0, 0, 0, 0], 64),
    ([0, 0, 1, 0, 0, 0, 0, 0], 27),
    ([0, 0, 0, 1, 0, 0, 0, 0], 8),
];

pub const E8_A12: &str = "-2*t1*t2 + 504*t1 + 192*t2 + 54*t3 + 8*t4";

pub const E8_C: [&str; 8] = [
    "240 + 29*t1",
    "126*t1 + 46*t2",
    "168*t1 + 84*t2 + 57*t3",
    "192*t2 + 72*t3 + 68*t4",
    "-7560*t1 - 3672*t2 - 1512*t3 - 312*t4 + 84*t5 + 60*t1*t2",
    "-12096*t1 - 6144*t2 - 2448*t3 - 656*t4 + 40*t5 + 91*t6 + 96*t1*t2",
    "-14515200 - 5231520*t1 - 1715040*t2 - 462600*t3 - 85440*t4 + 4280*t5 + 525*t6 \
     + 110*t7 + 60480*t1^2 + 14880*t1*t2 - 1080*t1*t3 - 175*t1*t4 + 40*t2*t3",
    "1221350400 + 440847360*t1 + 147717360*t2 + 40671720*t3 + 7663040*t4 - 387480*t5 \
     - 52435*t6 - 1985*t7 + 135*t8 - 7644672*t1^2 - 2343552*t1*t2 - 95256*t1*t3 \
     - 8583*t1*t4 + 1952*t1*t5 + 204*t1*t6 - 66144*t2^2 - 17664*t2*t3 - 399*t2*t4 \
     + 24*t2*t5 - 648*t3^2 - 84*t3*t4 + 36288*t1^3 + 9024*t1^2*t2",
];

/// One row of the spectrum table: `ε = eps0 + eps1 ν`, f_min grading, `n·n`, height.
#[derive(Clone, Copy, Debug)]
pub struct SpectrumFixture {
    pub n: [i64; 8],
    pub eps0: i64,
    pub eps1: i64,
    pub grading: i64,
    pub norm: i64,
    pub height: i64,
}

const fn row(n: [i64; 8], eps0: i64, eps1: i64, grading: i64, norm: i64, height: i64) -> SpectrumFixture {
    SpectrumFixture {
        n,
        eps0,
        eps1,
        grading,
        norm,
        height,
    }
}

/// The first 29 eigenvalues, in the published order.
pub const E8_SPECTRUM: [SpectrumFixture; 29] = [
    row([0, 0, 0, 0, 0, 0, 0, 0], 0, 0, 0, 0, 0),
    row([1, 0, 0, 0, 0, 0, 0, 0], -2, -58, 2, 2, 29),
    row([0, 1, 0, 0, 0, 0, 0, 0], -4, -92, 2, 4, 46),
    row([0, 0, 1, 0, 0, 0, 0, 0], -6, -114, 3, 6, 57),
    row([2, 0, 0, 0, 0, 0, 0, 0], -8, -116, 4, 8, 58),
    row([0, 0, 0, 1, 0, 0, 0, 0], -8, -136, 3, 8, 68),
    row([1, 1, 0, 0, 0, 0, 0, 0], -10, -150, 4, 10, 75),
    row([0, 0, 0, 0, 1, 0, 0, 0], -12, -168, 4, 12, 84),
    row([1, 0, 1, 0, 0, 0, 0, 0], -14, -172, 5, 14, 86),
    row([0, 0, 0, 0, 0, 1, 0, 0], -14, -182, 4, 14, 91),
    row([0, 2, 0, 0, 0, 0, 0, 0], -16, -184, 4, 16, 92),
    row([1, 0, 0, 1, 0, 0, 0, 0], -16, -194, 5, 16, 97),
    row([0, 1, 1, 0, 0, 0, 0, 0], -18, -206, 5, 18, 103),
    row([3, 0, 0, 0, 0, 0, 0, 0], -18, -174, 6, 18, 87),
    row([2, 1, 0, 0, 0, 0, 0, 0], -20, -208, 6, 20, 104),
    row([0, 0, 0, 0, 0, 0, 1, 0], -20, -220, 5, 20, 110),
    row([1, 0, 0, 0, 1, 0, 0, 0], -22, -226, 6, 22, 113),
    row([0, 1, 0, 1, 0, 0, 0, 0], -22, -228, 5, 22, 114),
    row([0, 0, 2, 0, 0, 0, 0, 0], -24, -228, 6, 24, 114),
    row([1, 0, 0, 0, 0, 1, 0, 0], -24, -240, 6, 24, 120),
    row([2, 0, 1, 0, 0, 0, 0, 0], -26, -230, 7, 26, 115),
    row([1, 2, 0, 0, 0, 0, 0, 0], -26, -242, 6, 26, 121),
    row([0, 0, 1, 1, 0, 0, 0, 0], -26, -250, 6, 26, 125),
    row([2, 0, 0, 1, 0, 0, 0, 0], -28, -252, 7, 28, 126),
    row([0, 1, 0, 0, 1, 0, 0, 0], -28, -260, 6, 28, 130),
    row([1, 1, 1, 0, 0, 0, 0, 0], -30, -264, 7, 30, 132),
    row([0, 0, 0, 0, 0, 0, 0, 1], -30, -270, 6, 30, 135),
    row([4, 0, 0, 0, 0, 0, 0, 0], -32, -232, 8, 32, 116),
    row([3, 1, 0, 0, 0, 0, 0, 0], -34, -266, 8, 34, 133),
];

/// The degenerate pair and its common eigenvalue.
pub const E8_DEGENERATE: ([[i64; 8]; 2], i64, i64) =
    ([[0, 2, 1, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 1, 0, 0]], -38, -298);

pub const E8_F_MIN: [i64; 8] = [2, 2, 3, 3, 4, 4, 5, 6];
pub const E8_F_ORBIT: [i64; 8] = [29, 46, 57, 68, 84, 91, 110, 135];
pub const E8_F_RATIONAL: [i64; 8] = [1, 3, 5, 5, 7, 7, 9, 11];

/// Characteristic vectors per system: minimal, integer Weyl, integer co-Weyl.
pub const TRIG_VECTORS: [(&str, &[i64], &[i64], &[i64]); 5] = [
    ("G2", &[1, 2], &[3, 5], &[5, 9]),
    ("F4", &[1, 2, 2, 3], &[8, 11, 15, 21], &[11, 16, 21, 30]),
    ("E6", &[1, 1, 2, 2, 2, 3], &[8, 8, 11, 15, 15, 21], &[8, 8, 11, 15, 15, 21]),
    ("E7", &[1, 2, 2, 2, 3, 3, 4], &[27, 34, 49, 52, 66, 75, 96], &[27, 34, 49, 52, 66, 75, 96]),
    (
        "E8",
        &[2, 2, 3, 3, 4, 4, 5, 6],
        &[29, 46, 57, 68, 84, 91, 110, 135],
        &[29, 46, 57, 68, 84, 91, 110, 135],
    ),
];

/// `cos² θ` of both flags against `(1,…,1)`: `155²/28246` and `29²/(4·238)`.
pub const E8_COS2_ORBIT: (i64, i64) = (155 * 155, 28246);
pub const E8_COS2_MIN: (i64, i64) = (29 * 29, 4 * 238);

/// One row of the reflection-pair table: `a`, `l`, the `k` values, `n`,
/// `n·n`, `M_n(τ)` and `μ` per `k`.
#[derive(Clone, Copy, Debug)]
pub struct ReflectionFixture {
    pub a: usize,
    pub l: i64,
    pub ks: &'static [i64],
    pub n: [i64; 8],
    pub norm: i64,
    pub m_tau: &'static str,
    pub mu: u64,
}

const M_11: &str = "-126*t1 - 64*t2 - 27*t3 - 8*t4 + t1*t2";
const M_011: &str = "-362880 - 141372*t1 - 48084*t2 - 13644*t3 - 2668*t4 + 145*t5 + 28*t6 \
    + 1512*t1^2 + 456*t1*t2 - 27*t1*t3 - 7*t1*t4 + t2*t3";

const fn rf(
    a: usize,
    l: i64,
    ks: &'static [i64],
    n: [i64; 8],
    norm: i64,
    m_tau: &'static str,
    mu: u64,
) -> ReflectionFixture {
    ReflectionFixture {
        a,
        l,
        ks,
        n,
        norm,
        m_tau,
        mu,
    }
}

/// As printed, except the `a = 5, l = 4, k = 1,3` label, printed as
/// `[0,0,0,0,0,0,1,0]` next to `n·n = 6` and `M_n = τ3`; the label
/// consistent with both is `[0,0,1,0,0,0,0,0]`.
pub const E8_REFLECTIONS: [ReflectionFixture; 29] = [
    rf(1, 2, &[1], [0, 0, 0, 0, 0, 0, 0, 0], 0, "1", 240),
    rf(2, 2, &[1], [1, 0, 0, 0, 0, 0, 0, 0], 2, "t1", 126),
    rf(3, 2, &[1], [0, 1, 0, 0, 0, 0, 0, 0], 4, "t2", 84),
    rf(3, 3, &[1, 2], [1, 0, 0, 0, 0, 0, 0, 0], 2, "t1", 56),
    rf(4, 2, &[1], [0, 0, 1, 0, 0, 0, 0, 0], 6, "t3", 72),
    rf(4, 3, &[1, 2], [0, 1, 0, 0, 0, 0, 0, 0], 4, "t2", 64),
    rf(5, 2, &[1], [1, 1, 0, 0, 0, 0, 0, 0], 10, M_11, 60),
    rf(5, 3, &[1, 2], [0, 0, 0, 1, 0, 0, 0, 0], 8, "t4", 56),
    rf(5, 4, &[1, 3], [0, 0, 1, 0, 0, 0, 0, 0], 6, "t3", 27),
    rf(5, 4, &[2], [0, 1, 0, 0, 0, 0, 0, 0], 4, "t2", 84),
    rf(6, 2, &[1], [0, 0, 0, 0, 1, 0, 0, 0], 12, "t5", 40),
    rf(6, 3, &[1, 2], [1, 1, 0, 0, 0, 0, 0, 0], 10, M_11, 32),
    rf(6, 4, &[1, 3], [0, 0, 0, 1, 0, 0, 0, 0], 8, "t4", 28),
    rf(6, 4, &[2], [0, 0, 1, 0, 0, 0, 0, 0], 6, "t3", 72),
    rf(7, 2, &[1], [0, 1, 1, 0, 0, 0, 0, 0], 18, M_011, 40),
    rf(
        7,
        3,
        &[1, 2],
        [1, 0, 0, 1, 0, 0, 0, 0],
        16,
        "4032*t1 + 1984*t2 + 792*t3 + 200*t4 - 16*t5 - 7*t6 + t1*t4 - 32*t1*t2",
        35,
    ),
    rf(7, 4, &[1, 3], [0, 0, 0, 0, 0, 1, 0, 0], 14, "t6", 35),
    rf(7, 4, &[2], [0, 0, 0, 0, 1, 0, 0, 0], 12, "t5", 40),
    rf(7, 5, &[1, 4], [0, 0, 0, 0, 1, 0, 0, 0], 12, "t5", 16),
    rf(7, 5, &[2, 3], [0, 0, 0, 1, 0, 0, 0, 0], 8, "t4", 56),
    rf(
        8,
        2,
        &[1],
        [0, 1, 0, 0, 1, 0, 0, 0],
        28,
        "38707200 + 13809600*t1 + 4643920*t2 + 1272600*t3 + 238400*t4 - 12050*t5 - 1575*t6 \
         - 60*t7 - 283248*t1^2 - 88888*t1*t2 - 8064*t1*t3 - 1457*t1*t4 + 118*t1*t5 + 21*t1*t6 \
         - 2156*t2^2 - 656*t2*t3 - 56*t2*t4 + t2*t5 + 1512*t1^3 + 456*t1^2*t2 - 27*t3^2 - 6*t3*t4",
        24,
    ),
    rf(
        8,
        3,
        &[1, 2],
        [0, 0, 1, 1, 0, 0, 0, 0],
        26,
        "13685760 + 5046624*t1 + 1663728*t2 + 459144*t3 + 86768*t4 - 4384*t5 - 607*t6 - 21*t7 \
         - 48384*t1^2 - 12816*t1*t2 + 2808*t1*t3 + 697*t1*t4 - 16*t1*t5 - 6*t1*t6 - 512*t2^2 \
         - 88*t2*t3 + 21*t2*t4 + t3*t4 - 32*t1^2*t2",
        20,
    ),
    rf(
        8,
        4,
        &[1, 3],
        [1, 0, 0, 0, 0, 1, 0, 0],
        24,
        "-18247680 - 6704640*t1 - 2211984*t2 - 607104*t3 - 114196*t4 + 5784*t5 + 800*t6 + 25*t7 \
         + 72576*t1^2 + 19584*t1*t2 - 2088*t1*t3 - 448*t1*t4 + t1*t6 + 384*t2^2 + 96*t2*t3 \
         - 7*t2*t4",
        15,
    ),
    rf(
        8,
        4,
        &[2],
        [1, 0, 0, 0, 1, 0, 0, 0],
        22,
        "3265920 + 1212624*t1 + 403380*t2 + 111087*t3 + 21068*t4 - 1081*t5 - 168*t6 - 4*t7 \
         - 13608*t1^2 - 3624*t1*t2 + 243*t1*t3 + 49*t1*t4 + t1*t5 - 10*t2*t3",
        40,
    ),
    rf(
        8,
        5,
        &[1, 4],
        [0, 1, 0, 1, 0, 0, 0, 0],
        22,
        "3179520 + 1173312*t1 + 387952*t2 + 106776*t3 + 20144*t4 - 1024*t5 - 145*t6 - 5*t7 \
         - 12672*t1^2 - 3456*t1*t2 + 360*t1*t3 + 77*t1*t4 - 64*t2^2 - 16*t2*t3 + t2*t4",
        21,
    ),
    rf(8, 5, &[2, 3], [0, 1, 1, 0, 0, 0, 0, 0], 18, M_011, 16),
    rf(8, 6, &[1, 5], [0, 0, 0, 0, 0, 0, 1, 0], 20, "t7", 10),
    rf(8, 6, &[2, 4], [0, 0, 0, 0, 0, 1, 0, 0], 14, "t6", 35),
    rf(8, 6, &[3], [0, 0, 0, 0, 1, 0, 0, 0], 12, "t5", 40),
];

/// Corrected E6 `B_a = b + ν·(nu part)`, as printed (variables `τ1..τ6`).
pub const E6_B: [(&str, &str); 6] = [
    ("-4/3*t1", "-16*t1"),
    ("-4/3*t2", "-22*t2 - 144"),
    ("-10/3*t3", "-30*t3 - 80*t6"),
    ("-10/3*t4", "-42*t4 - 48*t1*t6 + 168*t2 + 1296"),
    ("-2*t5", "-30*t5 - 80*t1"),
    ("-6*t6", "-16*t6"),
];

/// The E6 reference list as `ν`-polynomials.
pub fn e6_b_reference() -> Result<Vec<NuTauPoly>> {
    E6_B.iter()
        .map(|(b, c)| {
            let b = parse_poly(6, b)?.map(NuCoefficient::from_rational);
            let c = parse_poly(6, c)?.map(|x| &NuCoefficient::from_rational(x) * &NuCoefficient::nu());
            Ok(&b + &c)
        })
        .collect()
}

fn perr(s: &str, what: &str) -> Error {
    Error::Parse(format!("{what} in polynomial `{s}`"))
}

/// Parse `"240 + 29*t1 - 4/3*t1*t2^2"` into a rational polynomial in `nvars` variables.
pub fn parse_poly(nvars: usize, s: &str) -> Result<RatTauPoly> {
    let mut p = RatTauPoly::zero(nvars);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(s, "empty input"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for t in terms {
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        let mut coeff = BigRational::from_integer(BigInt::from(sign));
        let mut exp: Exponent = smallvec![0; nvars];
        for f in body.split('*') {
            if let Some(var) = f.strip_prefix('t') {
                let (idx, pow) = match var.split_once('^') {
                    Some((i, k)) => (i, k.parse::<u32>().map_err(|_| perr(s, "bad power"))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| perr(s, "bad variable"))?;
                if idx == 0 || idx > nvars {
                    return Err(perr(s, "variable out of range"));
                }
                exp[idx - 1] += pow;
            } else {
                let c = match f.split_once('/') {
                    Some((n, d)) => BigRational::new(
                        n.parse().map_err(|_| perr(s, "bad number"))?,
                        d.parse().map_err(|_| perr(s, "bad number"))?,
                    ),
                    None => BigRational::from_integer(f.parse().map_err(|_| perr(s, "bad number"))?),
                };
                coeff *= c;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        p.add_term(exp, coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_compact_notation() {
        let p = parse_poly(2, "240 + 29*t1 - t1*t2^2 + 4/3*t2").unwrap();
        assert_eq!(p.to_string(), "240 + 29 τ1 + 4/3 τ2 - τ1 τ2^2");
        assert!(parse_poly(2, "t3").is_err());
        assert!(parse_poly(2, "").is_err());
    }

    #[test]
    fn every_fixture_parses() {
        parse_poly(8, E8_A12).unwrap();
        for c in E8_C {
            parse_poly(8, c).unwrap();
        }
        for r in E8_REFLECTIONS {
            parse_poly(8, r.m_tau).unwrap();
        }
        assert_eq!(e6_b_reference().unwrap().len(), 6);
    }

    #[test]
    fn spectrum_fixture_is_self_consistent() {
        let f = E8_F_MIN;
        for r in E8_SPECTRUM {
            let g: i64 = r.n.iter().zip(f).map(|(a, b)| a * b).sum();
            assert_eq!(g, r.grading);
            assert_eq!(r.eps0, -r.norm);
        }
    }
}
