use std::sync::Arc;

use super::bforms::BForms;
use super::descriptor::Descriptor;
use super::element::DOElement;
use super::families::{family, Family};
use crate::clifford::CliffordElement;
use crate::error::Result;
use crate::group::GmnElement;
use crate::scalar::{rat, ratio, Rational, Scalar};

/// Decomposition data for one g in G(b) \ Ker rho.
///
/// The unit vectors are alpha = r1/sqrt(2) and beta = r2/sqrt(2) for the integer
/// roots stored here, with rho(g) = s_alpha s_beta.
#[derive(Clone, Debug)]
pub struct CoverTerm {
    pub g: GmnElement,
    pub r1: Vec<i64>,
    pub r2: Vec<i64>,
    /// <alpha, beta>
    pub inner: Rational,
    /// b_g(alpha, beta)
    pub b_ab: Scalar,
    pub c: Scalar,
    pub e: Scalar,
    /// alpha * beta in C(V)
    pub clifford_word: CliffordElement,
}

#[derive(Clone, Debug)]
pub struct CasimirData {
    /// h = sum_i zt_i^2
    pub h: DOElement,
    /// Omega_H = h - sum_g e_g g
    pub omega_h: DOElement,
    pub cover_terms: Vec<CoverTerm>,
    /// Support elements outside Ker rho whose fixed space is not of codimension 2,
    /// with the fixed-space dimension.
    pub ineligible: Vec<(GmnElement, usize)>,
}

impl CasimirData {
    pub fn covers_support(&self) -> bool {
        self.ineligible.is_empty()
    }
}

fn root(n: usize, a: usize, b: usize) -> Vec<i64> {
    let mut r = vec![0; n];
    r[a] = 1;
    r[b] = -1;
    r
}

/// Roots (r1, r2) with rho(g) = s_{r1} s_{r2} when the permutation part of g is a
/// 3-cycle or a product of two disjoint transpositions.
fn reflection_pair(g: &GmnElement) -> Option<(Vec<i64>, Vec<i64>)> {
    let n = g.n();
    let moved: Vec<usize> = (0..n).filter(|&i| g.w(i) != i).collect();
    match moved.len() {
        3 => {
            let a = moved[0];
            let b = g.w(a);
            let c = g.w(b);
            // (a b)(b c) sends a -> b -> c -> a
            Some((root(n, a, b), root(n, b, c)))
        }
        4 => {
            let a = moved[0];
            let b = g.w(a);
            if g.w(b) != a {
                return None;
            }
            let c = *moved.iter().find(|&&x| x != a && x != b)?;
            let d = g.w(c);
            Some((root(n, a, b), root(n, c, d)))
        }
        _ => None,
    }
}

fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// h, Omega_H and the per-element decomposition data for the support of b.
pub fn casimirs(desc: &Arc<Descriptor>, b: &BForms) -> Result<CasimirData> {
    let n = desc.n();
    let field = desc.field();
    let zt = family(desc, Family::ZTilde);
    let mut h = DOElement::zero(desc);
    for v in &zt {
        h = &h + &v.nf_mul(v)?;
    }
    let mut omega_h = h.clone();
    let mut cover_terms = Vec::new();
    let mut ineligible = Vec::new();
    for g in b.support() {
        if g.in_kernel_of_rho() {
            continue;
        }
        let Some((r1, r2)) = reflection_pair(&g) else {
            ineligible.push((g, g.fixed_dim()));
            continue;
        };
        let inner = ratio(dot(&r1, &r2), 2);
        let to_s = |r: &[i64]| -> Vec<Scalar> { r.iter().map(|&x| Scalar::from_int(field, x)).collect() };
        let b_ab = b.eval(&g, &to_s(&r1), &to_s(&r2)).scale(&ratio(1, 2));
        let denom = &rat(1) - &(&inner * &inner);
        let c = b_ab.scale(&(rat(1) / &denom));
        let e = b_ab.scale(&(&inner / &denom));
        let w1 = CliffordElement::vector(n, &to_s(&r1), field);
        let w2 = CliffordElement::vector(n, &to_s(&r2), field);
        let clifford_word = w1.cl_mul(&w2)?.scale(&Scalar::from_rational(field, ratio(1, 2)));
        omega_h = &omega_h - &DOElement::group(desc, g).scale(&e);
        cover_terms.push(CoverTerm {
            g,
            r1,
            r2,
            inner,
            b_ab,
            c,
            e,
            clifford_word,
        });
    }
    Ok(CasimirData {
        h,
        omega_h,
        cover_terms,
        ineligible,
    })
}
