//! The Clifford algebra C(V) of V = Q^n with orthonormal basis e_1..e_n and
//! e_i e_j + e_j e_i = -2 delta_ij.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CyclotomicField, Scalar};

/// Subset of {1..n} as a bitmask, bit i-1 for e_i.
pub type Mask = u32;

/// Sign of e_S e_T = sign * e_{S xor T}.
pub fn mask_product_sign(s: Mask, t: Mask) -> i32 {
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // elements of S above j must pass e_j
        swaps += (s >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps += (s & t).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Factor with e_S^t = factor * e_S.
pub fn transpose_sign(s: Mask) -> i32 {
    let k = s.count_ones();
    let e = k + k * k.saturating_sub(1) / 2;
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Epsilon,
    Transpose,
}

#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Mask, Scalar>,
}

impl CliffordElement {
    pub fn zero(n: usize, field: &Arc<CyclotomicField>) -> Self {
        assert!(n <= 31, "Clifford rank too large");
        CliffordElement {
            n,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, field: &Arc<CyclotomicField>) -> Self {
        Self::monomial(n, 0, Scalar::one(field))
    }

    pub fn monomial(n: usize, mask: Mask, c: Scalar) -> Self {
        let mut e = Self::zero(n, c.field());
        e.add_term(mask, &c);
        e
    }

    /// e_i, 1-based.
    pub fn e(n: usize, i: usize, field: &Arc<CyclotomicField>) -> Self {
        assert!(i >= 1 && i <= n, "e_{i} out of range");
        Self::monomial(n, 1 << (i - 1), Scalar::one(field))
    }

    /// sum_i c_i e_i.
    pub fn vector(n: usize, coeffs: &[Scalar], field: &Arc<CyclotomicField>) -> Self {
        let mut e = Self::zero(n, field);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(1 << i, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Mask, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> Scalar {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    pub fn add_term(&mut self, mask: Mask, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, &self.field);
        for (s, x) in &self.terms {
            out.add_term(*s, &(x * c));
        }
        out
    }

    pub fn cl_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "Clifford ranks {} and {} differ",
                self.n, other.n
            )));
        }
        let mut out = Self::zero(self.n, &self.field);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let c = a * b;
                let c = if mask_product_sign(*s, *t) < 0 { -c } else { c };
                out.add_term(s ^ t, &c);
            }
        }
        Ok(out)
    }

    pub fn cl_grading(&self, which: Grading) -> Self {
        let mut out = Self::zero(self.n, &self.field);
        for (s, c) in &self.terms {
            let sign = match which {
                Grading::Epsilon => {
                    if s.count_ones() % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
                Grading::Transpose => transpose_sign(*s),
            };
            out.add_term(*s, &if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|s| s.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|s| s.count_ones() % 2 == 1)
    }

    /// True when every term has exactly `k` factors.
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|s| s.count_ones() == k)
    }
}

/// kappa_g = sum_{i,j} b[i][j] e_i e_j for an antisymmetric b.
pub fn kappa_of(b: &[Vec<Scalar>], field: &Arc<CyclotomicField>) -> Result<CliffordElement> {
    let n = b.len();
    for i in 0..n {
        if b[i].len() != n {
            return Err(Error::Dimension("bilinear form must be square".into()));
        }
        for j in 0..n {
            if b[i][j] != -&b[j][i] {
                return Err(Error::NotAntisymmetric(i + 1, j + 1));
            }
        }
    }
    let mut out = CliffordElement::zero(n, field);
    for i in 0..n {
        for j in 0..n {
            if b[i][j].is_zero() {
                continue;
            }
            let ei = CliffordElement::e(n, i + 1, field);
            let ej = CliffordElement::e(n, j + 1, field);
            out = &out + &ei.cl_mul(&ej)?.scale(&b[i][j]);
        }
    }
    Ok(out)
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        assert_eq!(self.n, rhs.n, "Clifford rank mismatch");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c);
        }
        out
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self + &(-rhs)
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Mul for &CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.cl_mul(rhs).expect("Clifford rank mismatch")
    }
}

pub fn fmt_mask(s: Mask) -> String {
    if s == 0 {
        return "1".into();
    }
    (0..32)
        .filter(|i| s >> i & 1 == 1)
        .map(|i| format!("e{}", i + 1))
        .collect()
}

impl fmt::Display for CliffordElement {
    /// `scalar * e{i}e{j}...` terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("({}) * {}", c, fmt_mask(*s)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q() -> Arc<CyclotomicField> {
        CyclotomicField::new(1)
    }

    #[test]
    fn worked_products() {
        let f = q();
        let e1 = CliffordElement::e(2, 1, &f);
        let e2 = CliffordElement::e(2, 2, &f);
        let minus_one = CliffordElement::one(2, &f).scale(&Scalar::from_int(&f, -1));
        assert_eq!(&e1 * &e1, minus_one);
        assert!((&(&e1 * &e2) + &(&e2 * &e1)).is_zero());
        let e12 = &e1 * &e2;
        assert_eq!(&e12 * &e12, minus_one);
    }

    #[test]
    fn gradings() {
        let f = q();
        let e1 = CliffordElement::e(2, 1, &f);
        let e2 = CliffordElement::e(2, 2, &f);
        assert_eq!(e1.cl_grading(Grading::Epsilon), -&e1);
        let e12 = &e1 * &e2;
        assert_eq!(e12.cl_grading(Grading::Transpose), -&e12);
        let x = &CliffordElement::one(2, &f) + &e12;
        assert_eq!(x.cl_grading(Grading::Epsilon), x);
    }

    #[test]
    fn kappa_of_examples() {
        let f = q();
        let z = Scalar::zero(&f);
        let one = Scalar::one(&f);
        assert!(kappa_of(&[vec![z.clone(), z.clone()], vec![z.clone(), z.clone()]], &f)
            .unwrap()
            .is_zero());
        let b = vec![vec![z.clone(), one.clone()], vec![-&one, z.clone()]];
        let k = kappa_of(&b, &f).unwrap();
        assert_eq!(k, CliffordElement::monomial(2, 0b11, Scalar::from_int(&f, 2)));
        let bad = vec![vec![z.clone(), one.clone()], vec![one.clone(), z]];
        assert!(matches!(kappa_of(&bad, &f), Err(Error::NotAntisymmetric(_, _))));
        let _ = rat(0);
    }
}
