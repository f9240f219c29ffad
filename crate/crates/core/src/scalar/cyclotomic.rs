use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{qpoly, Rational};
use crate::error::{Error, Result};

/// The cyclotomic field Q(zeta_L) with its reduction data.
///
/// Elements are stored in the power basis 1, zeta, ..., zeta^{phi(L)-1},
/// reduced modulo the L-th cyclotomic polynomial, so the zero element has
/// exactly one representation.
pub struct CyclotomicField {
    order: usize,
    degree: usize,
    modulus: Vec<BigInt>,
    // canonical residue of zeta^k for k in 0..order
    powers: Vec<Vec<BigInt>>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

/// Integer coefficients of the cyclotomic polynomial of order `order`, low degree first.
///
/// Obtained by exact division of x^L - 1 by Phi_d for every proper divisor d of L.
pub fn cyclotomic_polynomial(order: usize) -> Vec<BigInt> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut num = vec![BigInt::zero(); order + 1];
    num[0] = -BigInt::one();
    num[order] = BigInt::one();
    for d in 1..order {
        if order.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = int_exact_div(&num, &phi_d);
        }
    }
    num
}

// Division by a monic integer polynomial that is known to be exact.
fn int_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() < den.len() {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

impl CyclotomicField {
    pub fn new(order: usize) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce
            let mut next = vec![BigInt::zero(); degree + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let top = next[degree].clone();
            if !top.is_zero() {
                for (i, mc) in modulus.iter().enumerate() {
                    next[i] -= &top * mc;
                }
            }
            next.truncate(degree);
            cur = next;
        }
        Arc::new(CyclotomicField {
            order,
            degree,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// phi(L), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn modulus_rational(&self) -> Vec<Rational> {
        self.modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect()
    }
}

/// An element of Q(zeta_L) in canonical form.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

/// Reduce sum_j c_j zeta_L^j to its canonical residue.
pub fn cyc_reduce(poly_coeffs: &[Rational], field: &Arc<CyclotomicField>) -> Cyclotomic {
    let l = field.order;
    let mut acc = vec![Rational::zero(); l];
    for (j, c) in poly_coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc[j % l] += c;
        }
    }
    Cyclotomic::from_exponent_sums(field, acc)
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(v)))
    }

    /// zeta_L^k for any integer k.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let l = field.order as i64;
        let e = k.rem_euclid(l) as usize;
        Cyclotomic {
            field: field.clone(),
            coeffs: field.powers[e]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    /// A primitive m-th root of unity raised to k, as an element of this field (m must divide L).
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64, m: usize) -> Self {
        assert!(
            field.order.is_multiple_of(m),
            "order {} is not a multiple of {}",
            field.order,
            m
        );
        Self::zeta_pow(field, k * (field.order / m) as i64)
    }

    /// Canonical form from the coefficient vector on the powers zeta^0..zeta^{L-1}.
    fn from_exponent_sums(field: &Arc<CyclotomicField>, acc: Vec<Rational>) -> Self {
        let mut out = vec![Rational::zero(); field.degree];
        for (e, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < field.degree {
                out[e] += c;
                continue;
            }
            for (k, p) in field.powers[e].iter().enumerate() {
                if !p.is_zero() {
                    out[k] += &c * Rational::from_integer(p.clone());
                }
            }
        }
        Cyclotomic {
            field: field.clone(),
            coeffs: out,
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::OrderMismatch(self.field.order, other.field.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree;
        if d == 1 {
            return Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let l = self.field.order;
        let mut acc = vec![Rational::zero(); l];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % l] += a * b;
            }
        }
        Self::from_exponent_sums(&self.field, acc)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_L.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree == 1 {
            return Some(Self::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let s = qpoly::inverse_mod(&self.coeffs, &self.field.modulus_rational())?;
        Some(cyc_reduce(&s, &self.field))
    }

    /// The image under zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        let l = self.field.order;
        let mut acc = vec![Rational::zero(); l];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(l - j) % l] += c;
            }
        }
        Self::from_exponent_sums(&self.field, acc)
    }

    /// The image under zeta -> zeta^k for k coprime to L.
    pub fn galois(&self, k: usize) -> Self {
        let l = self.field.order;
        let mut acc = vec![Rational::zero(); l];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc[(j * k) % l] += c;
            }
        }
        Self::from_exponent_sums(&self.field, acc)
    }

    /// Re-express in Q(zeta_{L'}) where L divides L'.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        if !target.order.is_multiple_of(self.field.order) {
            return Err(Error::OrderMismatch(self.field.order, target.order));
        }
        let step = target.order / self.field.order;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = c.clone();
        }
        Ok(cyc_reduce(&poly, target))
    }

    /// Floating value at zeta = exp(2 pi i / L); for numerics only.
    pub fn to_complex(&self) -> (f64, f64) {
        self.to_complex_at(1)
    }

    /// Floating value at zeta = exp(2 pi i k / L).
    pub fn to_complex_at(&self, k: usize) -> (f64, f64) {
        let l = self.field.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rational_to_f64(c);
            let t = 2.0 * std::f64::consts::PI * ((j * k) as f64) / l;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// Sum of |numerator| + denominator bit sizes; a rough size measure.
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    if nb < 1000 && db < 1000 {
        let nf = bigint_to_f64(n);
        let df = bigint_to_f64(d);
        if nf.is_finite() && df.is_finite() && df != 0.0 {
            return nf / df;
        }
    }
    // scale both down to keep within range
    let shift = (nb.max(db) - 60).max(0) as usize;
    let nf = bigint_to_f64(&(n >> shift));
    let df = bigint_to_f64(&(d >> shift));
    if df == 0.0 {
        return if n.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    nf / df
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .order
            .cmp(&other.field.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                assert_eq!(
                    self.field.order, rhs.field.order,
                    "cyclotomic field order mismatch"
                );
                self.$inner(rhs)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Literal form, e.g. `-1 - z` or `3/2*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match j {
                0 => write!(f, "{}", fmt_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", fmt_rational(&a))?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", j)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [L={}]", self, self.field.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            use num_traits::ToPrimitive;
            v.iter().map(|c| c.to_i64().unwrap()).collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        for l in 1..=30 {
            assert_eq!(cyclotomic_polynomial(l).len() - 1, totient(l));
        }
    }

    #[test]
    fn reduce_examples() {
        let f2 = CyclotomicField::new(2);
        assert!(cyc_reduce(&[q(1), q(1)], &f2).is_zero());

        let f3 = CyclotomicField::new(3);
        let r = cyc_reduce(&[q(0), q(0), q(1)], &f3);
        assert_eq!(r.coeffs(), &[q(-1), q(-1)]);

        let f12 = CyclotomicField::new(12);
        let r = cyc_reduce(&[q(5)], &f12);
        assert_eq!(r.coeffs(), &[q(5), q(0), q(0), q(0)]);
    }

    #[test]
    fn inverse_and_conj() {
        let f5 = CyclotomicField::new(5);
        let x = cyc_reduce(&[q(2), q(-1), q(0), q(3)], &f5);
        let xi = x.inv().unwrap();
        assert!((&x * &xi).is_one());
        let z = Cyclotomic::zeta_pow(&f5, 1);
        assert_eq!(&z * &z.conj(), Cyclotomic::one(&f5));
    }

    #[test]
    fn embedding_preserves_products() {
        let f3 = CyclotomicField::new(3);
        let f6 = CyclotomicField::new(6);
        let a = cyc_reduce(&[q(1), q(2)], &f3);
        let b = cyc_reduce(&[q(-3), q(1)], &f3);
        let ab = (&a * &b).embed(&f6).unwrap();
        let ab2 = &a.embed(&f6).unwrap() * &b.embed(&f6).unwrap();
        assert_eq!(ab, ab2);
    }

    #[test]
    fn display_literal() {
        let f3 = CyclotomicField::new(3);
        let r = cyc_reduce(&[q(0), q(0), q(1)], &f3);
        assert_eq!(r.to_string(), "-1 - z");
    }
}
