//! Slow normal-form product that applies only the single-generator rule
//! z_i s_j = s_j z_{s_j(i)} + (delta_{i,j+1} - delta_{i,j}) c~_j, one variable and
//! one simple reflection at a time. Used as an oracle for the closed-form push.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::descriptor::{Descriptor, ZMono};
use super::element::{mono_add, unit_mono, zero_mono, DOElement};
use crate::error::Result;
use crate::group::{reduced_word, GmnElement};
use crate::scalar::Scalar;

type Terms = BTreeMap<(GmnElement, ZMono), Scalar>;

fn add(t: &mut Terms, k: (GmnElement, ZMono), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&k) {
        Some(x) => {
            x.add_assign_ref(&c);
            if x.is_zero() {
                t.remove(&k);
            }
        }
        None => {
            t.insert(k, c);
        }
    }
}

// z_i * s_{w_0} s_{w_1} ... as terms h * z^delta, delta of degree <= 1
fn push_var(desc: &Descriptor, i: usize, word: &[usize]) -> Terms {
    let mut out = Terms::new();
    let one = Scalar::one(desc.field());
    let Some((&j, rest)) = word.split_first() else {
        out.insert((desc.identity(), unit_mono(i)), one);
        return out;
    };
    let (m, n) = (desc.m(), desc.n());
    let s = GmnElement::s(m, n, j);
    // s_j * (z_{s_j(i)} * rest)
    let si = if i == j - 1 {
        j
    } else if i == j {
        j - 1
    } else {
        i
    };
    for ((h, d), c) in push_var(desc, si, rest) {
        add(&mut out, (s.mul(&h), d), c);
    }
    // the cross term times the rest of the word, which is a pure group element
    let sign = if i == j {
        1
    } else if i == j - 1 {
        -1
    } else {
        0
    };
    if sign != 0 {
        let tail = rest
            .iter()
            .fold(desc.identity(), |acc, &k| acc.mul(&GmnElement::s(m, n, k)));
        for (t, ct) in desc.cross_term(j) {
            let c = if sign > 0 { ct } else { -ct };
            add(&mut out, (t.mul(&tail), zero_mono()), c);
        }
    }
    out
}

/// Normal form of z^alpha * g computed variable by variable.
fn push_mono(desc: &Descriptor, alpha: &ZMono, g: &GmnElement) -> Terms {
    let mut cur = Terms::new();
    cur.insert((*g, zero_mono()), Scalar::one(desc.field()));
    // z^alpha = z_{i_1} ... z_{i_k}; multiply from the right end inwards
    let mut vars = Vec::new();
    for (i, &e) in alpha.iter().enumerate().take(desc.n()) {
        for _ in 0..e {
            vars.push(i);
        }
    }
    for &i in vars.iter().rev() {
        let mut next = Terms::new();
        for ((h, gamma), c) in &cur {
            let w = h.perm_part();
            let t = h.torus_part();
            for ((h2, d), c2) in push_var(desc, i, &reduced_word(&w)) {
                add(&mut next, (h2.mul(&t), mono_add(&d, gamma)), c * &c2);
            }
        }
        cur = next;
    }
    cur
}

/// Product in normal form using only the single-generator rewriting rule.
pub fn nf_mul_reference(x: &DOElement, y: &DOElement) -> Result<DOElement> {
    let desc: &Arc<Descriptor> = x.descriptor();
    // descriptor agreement is checked by the fast path
    x.nf_mul(&DOElement::zero(y.descriptor()))?;
    let mut out = DOElement::zero(desc);
    for ((g1, alpha), c1) in x.terms() {
        for ((g2, beta), c2) in y.terms() {
            for ((h, gamma), c) in push_mono(desc, alpha, g2) {
                out.add_term(g1.mul(&h), mono_add(&gamma, beta), &(&(c1 * c2) * &c));
            }
        }
    }
    Ok(out)
}
