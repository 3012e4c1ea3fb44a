//! Exact rational functions of the coupling `ν`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial in `ν` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly(Vec<BigInt>);

impl UniPoly {
    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `ν`.
    pub fn nu() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.0.iter().map(|c| c * k).collect())
    }

    fn div_scalar(&self, k: &BigInt) -> Self {
        Self::from_coeffs(
            self.0
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn shift_scale(&self, k: usize, s: &BigInt) -> Self {
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().map(|x| x * s));
        Self::from_coeffs(c)
    }

    fn pseudo_rem(&self, b: &UniPoly) -> UniPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead();
            r = &r.scale(&lb) - &b.shift_scale(dr - db, &lr);
        }
        r
    }

    /// Greatest common divisor, normalized to positive leading coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.scale(&cont)
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let ld = d.lead();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return UniPoly::default();
        };
        if dr < dd {
            panic!("inexact polynomial division");
        }
        let mut q = vec![BigInt::zero(); dr - dd + 1];
        while let Some(deg) = r.degree() {
            if deg < dd {
                panic!("inexact polynomial division");
            }
            let (qc, rem) = r.lead().div_rem(&ld);
            assert!(rem.is_zero(), "inexact polynomial division");
            q[deg - dd] = qc.clone();
            r = &r - &d.shift_scale(deg - dd, &qc);
        }
        UniPoly::from_coeffs(q)
    }

    pub fn eval(&self, nu: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * nu + BigRational::from(c.clone())
        })
    }

    pub fn eval_f64(&self, nu: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * nu + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::default();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in rhs.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        UniPoly::from_coeffs(c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("ν")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A reduced fraction `num(ν)/den(ν)`. The representation is canonical: the
/// two polynomials are coprime and `den` has a positive leading coefficient,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NuCoefficient {
    num: UniPoly,
    den: UniPoly,
}

impl NuCoefficient {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) && g.lead().is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.lead().is_negative() {
            num = &UniPoly::default() - &num;
            den = &UniPoly::default() - &den;
        }
        NuCoefficient { num, den }
    }

    /// `c0 + c1 ν`.
    pub fn linear(c0: BigInt, c1: BigInt) -> Self {
        Self::from_poly(UniPoly::from_coeffs(vec![c0, c1]))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        NuCoefficient {
            num: p,
            den: UniPoly::constant(BigInt::one()),
        }
    }

    pub fn from_rational(x: &BigRational) -> Self {
        Self::new(
            UniPoly::constant(x.numer().clone()),
            UniPoly::constant(x.denom().clone()),
        )
    }

    pub fn nu() -> Self {
        Self::from_poly(UniPoly::nu())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Value at a rational `ν`; `None` where the denominator vanishes.
    pub fn eval(&self, nu: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(nu);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(nu) / d)
        }
    }

    pub fn eval_f64(&self, nu: f64) -> f64 {
        self.num.eval_f64(nu) / self.den.eval_f64(nu)
    }

    /// Coefficients `(c0, c1)` when this is a polynomial of degree at most one.
    pub fn as_linear(&self) -> Option<(BigRational, BigRational)> {
        if self.num.degree().unwrap_or(0) > 1 || self.den.degree() != Some(0) {
            return None;
        }
        let d = BigRational::from(self.den.lead());
        Some((
            BigRational::from(self.num.coeff(0)) / &d,
            BigRational::from(self.num.coeff(1)) / &d,
        ))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl Zero for NuCoefficient {
    fn zero() -> Self {
        NuCoefficient {
            num: UniPoly::default(),
            den: UniPoly::constant(BigInt::one()),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for NuCoefficient {
    fn one() -> Self {
        Self::from_poly(UniPoly::constant(BigInt::one()))
    }
}

impl Add for NuCoefficient {
    type Output = NuCoefficient;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Add for &NuCoefficient {
    type Output = NuCoefficient;

    fn add(self, rhs: &NuCoefficient) -> NuCoefficient {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return NuCoefficient::new(&self.num + &rhs.num, self.den.clone());
        }
        NuCoefficient::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for NuCoefficient {
    type Output = NuCoefficient;

    fn neg(self) -> Self {
        NuCoefficient {
            num: &UniPoly::default() - &self.num,
            den: self.den,
        }
    }
}

impl Sub for NuCoefficient {
    type Output = NuCoefficient;

    fn sub(self, rhs: Self) -> Self {
        &self + &(-rhs)
    }
}

impl Sub for &NuCoefficient {
    type Output = NuCoefficient;

    fn sub(self, rhs: &NuCoefficient) -> NuCoefficient {
        self + &(-rhs.clone())
    }
}

impl Mul for NuCoefficient {
    type Output = NuCoefficient;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &NuCoefficient {
    type Output = NuCoefficient;

    fn mul(self, rhs: &NuCoefficient) -> NuCoefficient {
        if self.is_zero() || rhs.is_zero() {
            return NuCoefficient::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            let d = &self.den * &rhs.den;
            return NuCoefficient::new(&self.num * &rhs.num, d);
        }
        NuCoefficient::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &NuCoefficient {
    type Output = NuCoefficient;

    fn div(self, rhs: &NuCoefficient) -> NuCoefficient {
        assert!(!rhs.is_zero(), "division by zero");
        NuCoefficient::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl PartialOrd for NuCoefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self == other).then_some(Ordering::Equal)
    }
}

impl fmt::Display for NuCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_one = self.den.degree() == Some(0) && self.den.lead().is_one();
        if den_one {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &UniPoly| {
            if p.0.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn q(num: &[i64], den: &[i64]) -> NuCoefficient {
        NuCoefficient::new(p(num), p(den))
    }

    #[test]
    fn gcd_of_products() {
        // (1+29ν)(2-ν) and (1+29ν)(3+ν)
        let a = &p(&[1, 29]) * &p(&[2, -1]);
        let b = &p(&[1, 29]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 29]));
        assert_eq!(p(&[4, 8]).gcd(&p(&[6])), p(&[2]));
    }

    #[test]
    fn canonical_form() {
        let x = q(&[480, 0], &[2, 58]);
        assert_eq!(x, q(&[240], &[1, 29]));
        assert_eq!(q(&[2, 4], &[-4, -8]), q(&[-1], &[2]));
        assert_eq!(q(&[1, 29], &[1, 29]), NuCoefficient::one());
        assert!(q(&[0], &[5, 1]).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(
            NuCoefficient::linear((-2).into(), (-58).into()).to_string(),
            "-2 - 58ν"
        );
        assert_eq!(q(&[0, 240], &[1, 29]).to_string(), "240ν/(1 + 29ν)");
        assert_eq!(q(&[4], &[3]).to_string(), "4/3");
        assert_eq!(NuCoefficient::zero().to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let x = q(&[0, 240], &[1, 29]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            x.eval(&half).unwrap(),
            BigRational::new(240.into(), 31.into())
        );
        let pole = BigRational::new((-1).into(), 29.into());
        assert!(x.eval(&pole).is_none());
        assert_eq!(
            NuCoefficient::linear(1.into(), 2.into()).as_linear(),
            Some((
                BigRational::from_integer(1.into()),
                BigRational::from_integer(2.into())
            ))
        );
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-6i64..7, 1..4).prop_map(|c| UniPoly::from_i64(&c))
    }

    fn small_frac() -> impl Strategy<Value = NuCoefficient> {
        (
            small_poly(),
            small_poly().prop_filter("nonzero", |d| !d.is_zero()),
        )
            .prop_map(|(n, d)| NuCoefficient::new(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small_frac(), b in small_frac(), c in small_frac()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_frac(), b in small_frac(), k in 1i64..20) {
            let nu = BigRational::new(k.into(), 7.into());
            if let (Some(x), Some(y)) = (a.eval(&nu), b.eval(&nu)) {
                prop_assert_eq!((&a * &b).eval(&nu), Some(&x * &y));
                prop_assert_eq!((&a + &b).eval(&nu), Some(x + y));
            }
        }
    }
}
