use std::sync::Arc;

use super::element::HCElement;
use crate::algebra::{casimirs, extract_bforms_raw, family, Descriptor, DOElement, Family};
use crate::clifford::{kappa_of, CliffordElement};
use crate::error::Result;
use crate::group::GmnElement;
use crate::scalar::{ratio, Scalar};

/// D = sum_i zt_i (x) e_i.
pub fn dirac_element(desc: &Arc<Descriptor>) -> HCElement {
    let n = desc.n();
    let mut d = HCElement::zero(desc);
    for (i, v) in family(desc, Family::ZTilde).iter().enumerate() {
        d = &d + &HCElement::tensor(v, &CliffordElement::e(n, i + 1, desc.field()));
    }
    d
}

/// d(a) = D a - epsilon(a) D.
pub fn dirac_derivation(a: &HCElement) -> HCElement {
    let d = dirac_element(a.descriptor());
    &(&d * a) - &(&a.grading() * &d)
}

#[derive(Clone, Debug)]
pub struct DiracReport {
    pub d_squared: HCElement,
    /// D^2 + h (x) 1 - 1/2 sum_g g (x) kappa_g
    pub residual1: HCElement,
    /// D^2 + Omega_H (x) 1 - sum c_g (g (x) alpha beta) - 1/2 sum_{Ker rho} g (x) kappa_g,
    /// when every support element outside Ker rho has a codimension-2 fixed space
    pub residual2: Option<HCElement>,
    /// Elements of G(b) \ Ker rho without a reflection-pair decomposition, with the
    /// dimension of their fixed space.
    pub ineligible: Vec<(GmnElement, usize)>,
    pub support_size: usize,
}

impl DiracReport {
    pub fn lemma_pass(&self) -> bool {
        self.residual1.is_zero()
    }

    pub fn casimir_pass(&self) -> Option<bool> {
        self.residual2.as_ref().map(|r| r.is_zero())
    }
}

/// Compute D^2 and compare it against both decompositions.
pub fn dirac_square_check(desc: &Arc<Descriptor>) -> Result<DiracReport> {
    let n = desc.n();
    let field = desc.field();
    let b = extract_bforms_raw(desc)?;
    let d = dirac_element(desc);
    let d2 = d.checked_mul(&d)?;
    let one_c = CliffordElement::one(n, field);
    let half = Scalar::from_rational(field, ratio(1, 2));

    let cd = casimirs(desc, &b)?;
    let mut kappa_sum = HCElement::zero(desc);
    let mut kernel_sum = HCElement::zero(desc);
    for (g, bg) in b.forms() {
        let term = HCElement::tensor(&DOElement::group(desc, *g), &kappa_of(bg, field)?).scale(&half);
        kappa_sum = &kappa_sum + &term;
        if g.in_kernel_of_rho() {
            kernel_sum = &kernel_sum + &term;
        }
    }
    let residual1 = &(&d2 + &HCElement::tensor(&cd.h, &one_c)) - &kappa_sum;

    let residual2 = cd.covers_support().then(|| {
        let mut r = &(&d2 + &HCElement::tensor(&cd.omega_h, &one_c)) - &kernel_sum;
        for t in &cd.cover_terms {
            let term = HCElement::tensor(&DOElement::group(desc, t.g), &t.clifford_word).scale(&t.c);
            r = &r - &term;
        }
        r
    });

    Ok(DiracReport {
        d_squared: d2,
        residual1,
        residual2,
        ineligible: cd.ineligible,
        support_size: b.support().len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DOElement;

    #[test]
    fn dirac_element_examples() {
        let d = Descriptor::dunkl_opdam(1, 1).unwrap();
        let expect = HCElement::tensor(&DOElement::z(&d, 1).unwrap(), &CliffordElement::e(1, 1, d.field()));
        assert_eq!(dirac_element(&d), expect);

        let d = Descriptor::dunkl_opdam(1, 2).unwrap();
        let f = d.field();
        let half_k = Scalar::kappa(f).scale(&ratio(1, 2));
        let s = DOElement::s(&d, 1).unwrap().scale(&half_k);
        let zt1 = &DOElement::z(&d, 1).unwrap() + &s;
        let zt2 = &DOElement::z(&d, 2).unwrap() - &s;
        let expect = &HCElement::tensor(&zt1, &CliffordElement::e(2, 1, f))
            + &HCElement::tensor(&zt2, &CliffordElement::e(2, 2, f));
        assert_eq!(dirac_element(&d), expect);
    }

    #[test]
    fn n2_square_is_minus_h() {
        for m in 1..=3 {
            let d = Descriptor::dunkl_opdam(m, 2).unwrap();
            let rep = dirac_square_check(&d).unwrap();
            assert!(rep.lemma_pass());
            assert_eq!(rep.casimir_pass(), Some(true));
            let zt = family(&d, Family::ZTilde);
            let h = &(&zt[0] * &zt[0]) + &(&zt[1] * &zt[1]);
            let one = CliffordElement::one(2, d.field());
            assert_eq!(rep.d_squared, -&HCElement::tensor(&h, &one));
        }
    }

    #[test]
    fn n3_lemma_identity() {
        for m in 1..=2 {
            let d = Descriptor::dunkl_opdam(m, 3).unwrap();
            let rep = dirac_square_check(&d).unwrap();
            assert!(rep.lemma_pass(), "m = {m}: {}", rep.residual1);
        }
        let d = Descriptor::dunkl_opdam(1, 3).unwrap();
        assert_eq!(dirac_square_check(&d).unwrap().casimir_pass(), Some(true));
    }

    #[test]
    fn derivation_examples() {
        let d = Descriptor::dunkl_opdam(2, 2).unwrap();
        assert!(dirac_derivation(&HCElement::one(&d)).is_zero());
        let dd = dirac_element(&d);
        let two = Scalar::from_int(d.field(), 2);
        assert_eq!(dirac_derivation(&dd), (&dd * &dd).scale(&two));
    }
}
