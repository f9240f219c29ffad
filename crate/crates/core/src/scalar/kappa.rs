use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::cyclotomic::{fmt_rational, Cyclotomic, CyclotomicField};
use super::Rational;
use crate::error::{Error, Result};

/// A polynomial in the central formal parameter kappa with coefficients in Q(zeta_L).
///
/// Canonical: no stored term is zero.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<u32, Cyclotomic>,
}

impl Scalar {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Scalar {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_cyclotomic(Cyclotomic::one(field))
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_int(field, v))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_rational(field, r))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Scalar { field, terms }
    }

    /// kappa^d.
    pub fn kappa_pow(field: &Arc<CyclotomicField>, d: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(d, Cyclotomic::one(field));
        Scalar {
            field: field.clone(),
            terms,
        }
    }

    pub fn kappa(field: &Arc<CyclotomicField>) -> Self {
        Self::kappa_pow(field, 1)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn terms(&self) -> &BTreeMap<u32, Cyclotomic> {
        &self.terms
    }

    pub fn coeff(&self, degree: u32) -> Cyclotomic {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Cyclotomic::is_one)
    }

    /// The kappa-degree, or None for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The constant value when no kappa appears.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero(&self.field)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Substitute kappa := value.
    pub fn eval_kappa(&self, value: &Rational) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(&self.field);
        for (d, c) in self.terms.iter().rev() {
            // Horner would need the gaps filled; direct powers are fine at these degrees
            let mut p = Rational::one();
            for _ in 0..*d {
                p *= value;
            }
            acc = acc + c.scale(&p);
        }
        acc
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// In-place accumulation, panicking on order mismatch like the operators.
    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.order(), other.order(), "scalar order mismatch");
        for (d, c) in &other.terms {
            match self.terms.get_mut(d) {
                Some(x) => {
                    *x = &*x + c;
                    if x.is_zero() {
                        self.terms.remove(d);
                    }
                }
                None => {
                    self.terms.insert(*d, c.clone());
                }
            }
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Scalar::zero(&self.field);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let prod = c1 * c2;
                let d = d1 + d2;
                match out.terms.get_mut(&d) {
                    Some(x) => {
                        *x = &*x + &prod;
                        if x.is_zero() {
                            out.terms.remove(&d);
                        }
                    }
                    None => {
                        if !prod.is_zero() {
                            out.terms.insert(d, prod);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero(&self.field);
        }
        Scalar {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (*d, c.scale(r)))
                .collect(),
        }
    }

    pub fn scale_cyc(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Scalar::zero(&self.field);
        }
        Scalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(d, x)| (*d, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one(&self.field);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Complex conjugation applied coefficientwise (kappa is treated as real).
    pub fn conj(&self) -> Self {
        Scalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(d, c)| (*d, c.conj())).collect(),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.terms == other.terms
    }
}

impl Eq for Scalar {}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                assert_eq!(self.order(), rhs.order(), "scalar order mismatch");
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| a.add_unchecked(b));
scalar_binop!(Sub, sub, |a, b| a.add_unchecked(&-b));
scalar_binop!(Mul, mul, |a, b| a.mul_unchecked(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_coeff_factor(c: &Cyclotomic) -> (bool, String) {
    // returns (negative, text) for a coefficient that multiplies k^d
    let nonzero: Vec<_> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect();
    if nonzero.len() == 1 && nonzero[0].0 == 0 {
        let v = nonzero[0].1;
        return (v.is_negative(), fmt_rational(&v.abs()));
    }
    (false, format!("({})", c))
}

impl fmt::Display for Scalar {
    /// Parseable literal, highest kappa power first, e.g. `2*k^2 + k - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms.iter().rev() {
            let (neg, body) = if *d == 0 {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) if c.as_rational().is_some() => (true, rest.to_string()),
                    _ if c.as_rational().is_some() => (false, s),
                    _ => (false, format!("({})", s)),
                }
            } else {
                let (neg, coef) = fmt_coeff_factor(c);
                let kp = if *d == 1 {
                    "k".to_string()
                } else {
                    format!("k^{}", d)
                };
                if coef == "1" {
                    (neg, kp)
                } else {
                    (neg, format!("{}*{}", coef, kp))
                }
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            write!(f, "{}", body)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
