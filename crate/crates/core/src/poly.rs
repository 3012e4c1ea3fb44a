//! Sparse polynomials in the orbit variables `τ_1..τ_N`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::nucoef::{NuCoefficient, UniPoly};

/// Exponent vector of a monomial `τ_1^{e_1} ... τ_N^{e_N}`.
pub type Exponent = SmallVec<[u32; 8]>;

/// Coefficient ring of a [`TauPolynomial`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Send + Sync
{
    fn add_ref(&self, rhs: &Self) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self;

    fn from_bigint(x: BigInt) -> Self;

    /// True if printing this coefficient as a factor needs parentheses.
    fn is_compound(&self) -> bool {
        false
    }

    fn is_negative_unit_form(&self) -> bool {
        false
    }

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;
}

fn json_str(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("expected string, found {v}")))
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

impl Coefficient for BigInt {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_bigint(x: BigInt) -> Self {
        x
    }

    fn is_negative_unit_form(&self) -> bool {
        self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        parse_bigint(json_str(v)?)
    }
}

impl Coefficient for BigRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_bigint(x: BigInt) -> Self {
        BigRational::from_integer(x)
    }

    fn is_negative_unit_form(&self) -> bool {
        self.is_negative()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let s = json_str(v)?;
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_bigint(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(parse_bigint(n)?, d))
            }
            None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        }
    }
}

fn unipoly_json(p: &UniPoly) -> Value {
    Value::Array(
        p.coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected array, found {v}")))?;
    Ok(UniPoly::from_coeffs(
        arr.iter()
            .map(|c| parse_bigint(json_str(c)?))
            .collect::<Result<_>>()?,
    ))
}

impl Coefficient for NuCoefficient {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_bigint(x: BigInt) -> Self {
        NuCoefficient::from_poly(UniPoly::constant(x))
    }

    fn is_compound(&self) -> bool {
        !self.is_polynomial()
            || self
                .numer()
                .coeffs()
                .iter()
                .filter(|c| !c.is_zero())
                .count()
                > 1
    }

    fn is_negative_unit_form(&self) -> bool {
        !self.is_compound() && self.numer().lead().is_negative()
    }

    fn to_json(&self) -> Value {
        json!({"num": unipoly_json(self.numer()), "den": unipoly_json(self.denom())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let num = unipoly_from_json(&v["num"])?;
        let den = unipoly_from_json(&v["den"])?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(NuCoefficient::new(num, den))
    }
}

/// A polynomial `Σ c_p τ^p`, stored sparsely with no zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TauPolynomial<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

pub type IntTauPoly = TauPolynomial<BigInt>;
pub type RatTauPoly = TauPolynomial<BigRational>;
pub type NuTauPoly = TauPolynomial<NuCoefficient>;

impl<C: Coefficient> TauPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        TauPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable `τ_a` (0-based).
    pub fn var(nvars: usize, a: usize) -> Self {
        let mut e: Exponent = SmallVec::from_elem(0, nvars);
        e[a] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exp: Exponent, c: C) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: C) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
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

    /// `self += k · other`.
    pub fn add_scaled(&mut self, other: &Self, k: &C) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.mul_ref(k));
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut p = Self::zero(self.nvars);
        if k.is_zero() {
            return p;
        }
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.mul_ref(k));
        }
        p
    }

    pub fn mul_var(&self, a: usize) -> Self {
        TauPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[a] += 1;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// `∂/∂τ_a`.
    pub fn derivative(&self, a: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[a] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[a] -= 1;
            p.add_term(f, c.mul_ref(&C::from_bigint(BigInt::from(e[a]))));
        }
        p
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TauPolynomial<D> {
        let mut p = TauPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Evaluate with a caller-supplied coefficient embedding into a ring `T`.
    pub fn eval_with<T>(&self, point: &[T], coef: impl Fn(&C) -> T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T>,
    {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut m = coef(c);
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    m = m * x.clone();
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Evaluate at a point in the coefficient ring.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    m = m.mul_ref(x);
                }
            }
            acc = acc.add_ref(&m);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.display_order()
                .into_iter()
                .map(|(e, c)| json!({"exp": e.to_vec(), "coeff": c.to_json()}))
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected term list, found {v}")))?;
        let mut p = Self::zero(nvars);
        for t in arr {
            let exp: Exponent = t["exp"]
                .as_array()
                .ok_or_else(|| Error::Parse("term without exponent".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|k| k as u32)
                        .ok_or_else(|| Error::Parse(format!("bad exponent {x}")))
                })
                .collect::<Result<_>>()?;
            if exp.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            p.add_term(exp, C::from_json(&t["coeff"])?);
        }
        Ok(p)
    }

    /// Terms by increasing total degree, then `τ_1` before `τ_2` and so on.
    pub fn display_order(&self) -> Vec<(&Exponent, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }
}

impl<C: Coefficient> Add for &TauPolynomial<C> {
    type Output = TauPolynomial<C>;

    fn add(self, rhs: &TauPolynomial<C>) -> TauPolynomial<C> {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<C: Coefficient> Sub for &TauPolynomial<C> {
    type Output = TauPolynomial<C>;

    fn sub(self, rhs: &TauPolynomial<C>) -> TauPolynomial<C> {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl<C: Coefficient> Neg for &TauPolynomial<C> {
    type Output = TauPolynomial<C>;

    fn neg(self) -> TauPolynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> Mul for &TauPolynomial<C> {
    type Output = TauPolynomial<C>;

    fn mul(self, rhs: &TauPolynomial<C>) -> TauPolynomial<C> {
        let mut p = TauPolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                p.add_term(e, ca.mul_ref(cb));
            }
        }
        p
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        write!(f, "τ{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for TauPolynomial<C> {
    /// Layout by ascending degree, e.g. `240 + 29 τ1` or `-(2 + 58ν) τ1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.display_order().into_iter().enumerate() {
            let constant = e.iter().all(|&k| k == 0);
            let (neg, mag) = if c.is_negative_unit_form() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if constant {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
                continue;
            }
            if mag.is_compound() {
                write!(f, "({mag}) ")?;
            } else if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write_monomial(f, e)?;
        }
        Ok(())
    }
}
