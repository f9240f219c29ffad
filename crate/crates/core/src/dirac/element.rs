use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::{Descriptor, DOElement};
use crate::clifford::{fmt_mask, mask_product_sign, CliffordElement, Mask};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of H (x) C(V), stored as Clifford monomial -> H-coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct HCElement {
    desc: Arc<Descriptor>,
    terms: BTreeMap<Mask, DOElement>,
}

impl HCElement {
    pub fn zero(desc: &Arc<Descriptor>) -> Self {
        HCElement {
            desc: desc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(desc: &Arc<Descriptor>) -> Self {
        Self::tensor(&DOElement::one(desc), &CliffordElement::one(desc.n(), desc.field()))
    }

    /// a (x) c.
    pub fn tensor(a: &DOElement, c: &CliffordElement) -> Self {
        let mut out = Self::zero(a.descriptor());
        for (s, x) in c.terms() {
            out.add_part(*s, &a.scale(x));
        }
        out
    }

    pub fn descriptor(&self) -> &Arc<Descriptor> {
        &self.desc
    }

    /// Nonzero H-coefficients by Clifford monomial.
    pub fn components(&self) -> &BTreeMap<Mask, DOElement> {
        &self.terms
    }

    /// The (group element, z-multidegree, Clifford subset) -> scalar view.
    pub fn terms(&self) -> impl Iterator<Item = (crate::group::GmnElement, crate::algebra::ZMono, Mask, &Scalar)> {
        self.terms
            .iter()
            .flat_map(|(s, x)| x.terms().iter().map(move |((g, a), c)| (*g, *a, *s, c)))
    }

    pub fn component(&self, s: Mask) -> DOElement {
        self.terms.get(&s).cloned().unwrap_or_else(|| DOElement::zero(&self.desc))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_part(&mut self, s: Mask, x: &DOElement) {
        if x.is_zero() {
            return;
        }
        let cur = self.component(s);
        let sum = &cur + x;
        if sum.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, sum);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.desc);
        for (s, x) in &self.terms {
            out.add_part(*s, &x.scale(c));
        }
        out
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if *self.desc != *other.desc {
            return Err(Error::DescriptorMismatch(format!("{:?} vs {:?}", self.desc, other.desc)));
        }
        let mut out = Self::zero(&self.desc);
        for (s, x) in &self.terms {
            for (t, y) in &other.terms {
                let p = x.nf_mul(y)?;
                let p = if mask_product_sign(*s, *t) < 0 { -p } else { p };
                out.add_part(s ^ t, &p);
            }
        }
        Ok(out)
    }

    /// 1 (x) epsilon.
    pub fn grading(&self) -> Self {
        let mut out = Self::zero(&self.desc);
        for (s, x) in &self.terms {
            if s.count_ones() % 2 == 1 {
                out.add_part(*s, &-x);
            } else {
                out.add_part(*s, x);
            }
        }
        out
    }

    /// Maximal z-degree over all components.
    pub fn z_degree(&self) -> usize {
        self.terms.values().map(|x| x.z_degree()).max().unwrap_or(0)
    }
}

impl Add for &HCElement {
    type Output = HCElement;
    fn add(self, rhs: &HCElement) -> HCElement {
        assert_eq!(*self.desc, *rhs.desc, "descriptor mismatch");
        let mut out = self.clone();
        for (s, x) in &rhs.terms {
            out.add_part(*s, x);
        }
        out
    }
}

impl Neg for &HCElement {
    type Output = HCElement;
    fn neg(self) -> HCElement {
        let mut out = self.clone();
        for x in out.terms.values_mut() {
            *x = -&*x;
        }
        out
    }
}

impl Sub for &HCElement {
    type Output = HCElement;
    fn sub(self, rhs: &HCElement) -> HCElement {
        self + &(-rhs)
    }
}

impl Mul for &HCElement {
    type Output = HCElement;
    fn mul(self, rhs: &HCElement) -> HCElement {
        self.checked_mul(rhs).expect("descriptor mismatch")
    }
}

impl fmt::Display for HCElement {
    /// `h-element (x) e{i}...` per Clifford monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, x)| format!("({}) (x) {}", x, fmt_mask(*s)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
