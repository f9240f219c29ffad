use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::descriptor::{Descriptor, ZMono};
use crate::error::{Error, Result};
use crate::group::{GmnElement, GroupAlgebraElement, MAX_N};
use crate::scalar::{Rational, Scalar};

/// An element of the algebra in PBW normal form: sum of c * g * z^alpha.
#[derive(Clone)]
pub struct DOElement {
    desc: Arc<Descriptor>,
    terms: BTreeMap<(GmnElement, ZMono), Scalar>,
}

pub fn zero_mono() -> ZMono {
    [0u8; MAX_N]
}

/// e_i as a monomial (0-based).
pub fn unit_mono(i: usize) -> ZMono {
    let mut a = zero_mono();
    a[i] = 1;
    a
}

pub fn mono_degree(a: &ZMono) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

pub fn mono_add(a: &ZMono, b: &ZMono) -> ZMono {
    let mut c = *a;
    for (x, y) in c.iter_mut().zip(b) {
        *x = x.checked_add(*y).expect("z-degree overflow");
    }
    c
}

impl DOElement {
    pub fn zero(desc: &Arc<Descriptor>) -> Self {
        DOElement {
            desc: desc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(desc: &Arc<Descriptor>) -> Self {
        Self::group(desc, desc.identity())
    }

    pub fn group(desc: &Arc<Descriptor>, g: GmnElement) -> Self {
        Self::monomial(desc, g, zero_mono(), Scalar::one(desc.field()))
    }

    pub fn scalar(desc: &Arc<Descriptor>, c: Scalar) -> Self {
        Self::monomial(desc, desc.identity(), zero_mono(), c)
    }

    pub fn monomial(desc: &Arc<Descriptor>, g: GmnElement, alpha: ZMono, c: Scalar) -> Self {
        let mut e = Self::zero(desc);
        e.add_term(g, alpha, &c);
        e
    }

    /// z_i, 1-based.
    pub fn z(desc: &Arc<Descriptor>, i: usize) -> Result<Self> {
        if i == 0 || i > desc.n() {
            return Err(Error::IndexOutOfRange { index: i, n: desc.n() });
        }
        Ok(Self::monomial(desc, desc.identity(), unit_mono(i - 1), Scalar::one(desc.field())))
    }

    /// s_j, 1-based.
    pub fn s(desc: &Arc<Descriptor>, j: usize) -> Result<Self> {
        if j == 0 || j >= desc.n() {
            return Err(Error::IndexOutOfRange { index: j, n: desc.n() - 1 });
        }
        Ok(Self::group(desc, GmnElement::s(desc.m(), desc.n(), j)))
    }

    /// g_k^e, 1-based.
    pub fn g(desc: &Arc<Descriptor>, k: usize, e: i64) -> Result<Self> {
        if k == 0 || k > desc.n() {
            return Err(Error::IndexOutOfRange { index: k, n: desc.n() });
        }
        Ok(Self::group(desc, GmnElement::g(desc.m(), desc.n(), k, e)))
    }

    pub fn from_group_algebra(desc: &Arc<Descriptor>, x: &GroupAlgebraElement) -> Self {
        let mut e = Self::zero(desc);
        for (g, c) in x.terms() {
            e.add_term(*g, zero_mono(), c);
        }
        e
    }

    pub fn descriptor(&self) -> &Arc<Descriptor> {
        &self.desc
    }

    pub fn terms(&self) -> &BTreeMap<(GmnElement, ZMono), Scalar> {
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

    pub fn coeff(&self, g: &GmnElement, alpha: &ZMono) -> Scalar {
        self.terms
            .get(&(*g, *alpha))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.desc.field()))
    }

    pub fn add_term(&mut self, g: GmnElement, alpha: ZMono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (g, alpha);
        match self.terms.get_mut(&key) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// Maximal total z-degree, 0 for the zero element.
    pub fn z_degree(&self) -> usize {
        self.terms.keys().map(|(_, a)| mono_degree(a)).max().unwrap_or(0)
    }

    /// The terms of top z-degree.
    pub fn top_part(&self) -> Self {
        let d = self.z_degree();
        let mut out = Self::zero(&self.desc);
        for ((g, a), c) in &self.terms {
            if mono_degree(a) == d {
                out.add_term(*g, *a, c);
            }
        }
        out
    }

    /// The group-algebra element when the z-degree is 0.
    pub fn as_group_algebra(&self) -> Option<GroupAlgebraElement> {
        let mut out = GroupAlgebraElement::zero(self.desc.m(), self.desc.n(), self.desc.field());
        for ((g, a), c) in &self.terms {
            if mono_degree(a) != 0 {
                return None;
            }
            out.add_term(*g, c);
        }
        Some(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(&self.desc);
        for ((g, a), x) in &self.terms {
            out.add_term(*g, *a, &(x * c));
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&Scalar::from_rational(self.desc.field(), r.clone()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.desc, &other.desc) && *self.desc != *other.desc {
            return Err(Error::DescriptorMismatch(format!(
                "{:?} vs {:?}",
                self.desc, other.desc
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((g, a), c) in &other.terms {
            out.add_term(*g, *a, c);
        }
        Ok(out)
    }

    /// The PBW normal form of the product.
    pub fn nf_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.desc);
        // group other's terms by permutation part so each push is computed once per alpha
        for ((g1, alpha), c1) in &self.terms {
            for ((g2, beta), c2) in &other.terms {
                let w2 = g2.perm_part();
                let t2 = g2.torus_part();
                let c12 = c1 * c2;
                let pushed = self.desc.push_through(alpha, &w2);
                for (h, gamma, c) in pushed.iter() {
                    let g = g1.mul(h).mul(&t2);
                    out.add_term(g, mono_add(gamma, beta), &(&c12 * c));
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.nf_mul(other)? - &other.nf_mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.desc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Conjugation g x g^{-1} by a group element.
    pub fn conjugate_by(&self, g: &GmnElement) -> Self {
        let gx = Self::group(&self.desc, *g);
        let gi = Self::group(&self.desc, g.inverse());
        &(&gx * self) * &gi
    }

    /// Apply a map to the coefficients' group parts (g -> f(g)) keeping monomials.
    pub fn map_group(&self, target: &Arc<Descriptor>, f: impl Fn(&GmnElement) -> GmnElement) -> Self {
        let mut out = Self::zero(target);
        for ((g, a), c) in &self.terms {
            out.add_term(f(g), *a, c);
        }
        out
    }

    /// Image in a type-A descriptor under g_i -> 1, with kappa kept formal.
    pub fn torus_augmentation(&self, target: &Arc<Descriptor>) -> Self {
        let m = target.m();
        self.map_group(target, |g| {
            let p: Vec<usize> = g.perm().iter().map(|&x| x as usize).collect();
            GmnElement::from_perm(m, &p).expect("permutation")
        })
    }

    /// The automorphism Phi: w g^a -> r w r g^{rev a}, z^alpha -> (-1)^|alpha| z^{rev alpha}.
    pub fn phi(&self) -> Result<Self> {
        if !self.desc.is_dunkl_opdam() {
            return Err(Error::Mode("phi is defined for the Dunkl-Opdam descriptor".into()));
        }
        let n = self.desc.n();
        let m = self.desc.m();
        let rev: Vec<usize> = (0..n).rev().collect();
        let r = GmnElement::from_perm(m, &rev)?;
        let mut out = Self::zero(&self.desc);
        for ((g, a), c) in &self.terms {
            let h = r.mul(g).mul(&r);
            let mut b = zero_mono();
            for i in 0..n {
                b[i] = a[n - 1 - i];
            }
            let c = if mono_degree(a) % 2 == 1 { -c } else { c.clone() };
            out.add_term(h, b, &c);
        }
        Ok(out)
    }
}

impl PartialEq for DOElement {
    fn eq(&self, other: &Self) -> bool {
        *self.desc == *other.desc && self.terms == other.terms
    }
}

impl Eq for DOElement {}

impl Add for &DOElement {
    type Output = DOElement;
    fn add(self, rhs: &DOElement) -> DOElement {
        self.checked_add(rhs).expect("descriptor mismatch")
    }
}

impl Sub for &DOElement {
    type Output = DOElement;
    fn sub(self, rhs: &DOElement) -> DOElement {
        self.checked_add(&-rhs).expect("descriptor mismatch")
    }
}

impl Neg for &DOElement {
    type Output = DOElement;
    fn neg(self) -> DOElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Mul for &DOElement {
    type Output = DOElement;
    fn mul(self, rhs: &DOElement) -> DOElement {
        self.nf_mul(rhs).expect("descriptor mismatch")
    }
}

impl Add for DOElement {
    type Output = DOElement;
    fn add(self, rhs: DOElement) -> DOElement {
        &self + &rhs
    }
}

impl Sub for DOElement {
    type Output = DOElement;
    fn sub(self, rhs: DOElement) -> DOElement {
        &self - &rhs
    }
}

impl Mul for DOElement {
    type Output = DOElement;
    fn mul(self, rhs: DOElement) -> DOElement {
        &self * &rhs
    }
}

impl Neg for DOElement {
    type Output = DOElement;
    fn neg(self) -> DOElement {
        -&self
    }
}

pub(crate) fn fmt_mono(a: &ZMono, n: usize) -> String {
    let parts: Vec<String> = (0..n)
        .filter(|&i| a[i] > 0)
        .map(|i| {
            if a[i] == 1 {
                format!("z{}", i + 1)
            } else {
                format!("z{}^{}", i + 1, a[i])
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for DOElement {
    /// `scalar * [perm];[torus] * z1^a1*...` terms in (group, multidegree) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.desc.n();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((g, a), c)| {
                let mono = fmt_mono(a, n);
                if mono.is_empty() {
                    format!("({}) * {}", c, g)
                } else {
                    format!("({}) * {} * {}", c, g, mono)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DOElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
