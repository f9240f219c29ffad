use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::element::GmnElement;
use crate::scalar::{CyclotomicField, Scalar};

/// A finite Scalar-linear combination of elements of G(m,1,n).
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    m: usize,
    n: usize,
    field: Arc<CyclotomicField>,
    terms: BTreeMap<GmnElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(m: usize, n: usize, field: &Arc<CyclotomicField>) -> Self {
        GroupAlgebraElement {
            m,
            n,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, n: usize, field: &Arc<CyclotomicField>) -> Self {
        Self::basis(GmnElement::identity(m, n), field)
    }

    pub fn basis(g: GmnElement, field: &Arc<CyclotomicField>) -> Self {
        Self::term(g, Scalar::one(field))
    }

    pub fn term(g: GmnElement, c: Scalar) -> Self {
        let mut e = Self::zero(g.m(), g.n(), c.field());
        e.add_term(g, &c);
        e
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<GmnElement, Scalar> {
        &self.terms
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

    pub fn coeff(&self, g: &GmnElement) -> Scalar {
        self.terms
            .get(g)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.field))
    }

    pub fn add_term(&mut self, g: GmnElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.m, self.n, &self.field);
        for (g, x) in &self.terms {
            out.add_term(*g, &(x * c));
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Image under g_i -> 1, keeping only permutation parts.
    pub fn torus_augmentation(&self) -> Self {
        let mut out = Self::zero(self.m, self.n, &self.field);
        for (g, c) in &self.terms {
            out.add_term(g.perm_part(), c);
        }
        out
    }

    /// Image under a map on group elements, extended linearly.
    pub fn map_elements(&self, f: impl Fn(&GmnElement) -> GmnElement) -> Self {
        let mut out = Self::zero(self.m, self.n, &self.field);
        for (g, c) in &self.terms {
            out.add_term(f(g), c);
        }
        out
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(*g, c);
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert!(self.m == rhs.m && self.n == rhs.n, "group algebra shape mismatch");
        let mut out = GroupAlgebraElement::zero(self.m, self.n, &self.field);
        for (g, a) in &self.terms {
            for (h, b) in &rhs.terms {
                out.add_term(g.mul(h), &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({}) * {}", c, g))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
