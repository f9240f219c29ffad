//! The group G(m,1,n) = S_n x| (Z/m)^n and its group algebra.

mod algebra;
mod coset;
mod element;

use std::sync::Arc;

pub use algebra::GroupAlgebraElement;
pub use coset::{
    block_of_positions, block_ranges, blocks_of_simple_roots, compositions, in_parabolic,
    min_coset_reps, simple_roots_of, split_coset, Composition, CosetReps,
};
pub use element::{enumerate_group, parse_element, permutations, reduced_word, GmnElement, MAX_N};

use crate::scalar::{CyclotomicField, Scalar};

/// (i,k) g_i^{-s} g_k^{s} for 1-based i, k.
fn dressed_transposition(m: usize, n: usize, i: usize, k: usize, s: usize) -> GmnElement {
    let mut a = vec![0i64; n];
    a[i - 1] = -(s as i64);
    a[k - 1] = s as i64;
    GmnElement::transposition(m, n, i, k).mul(&GmnElement::torus_element(m, &a))
}

/// eps_{ij} = sum_{l=0}^{m-1} g_i^l g_j^{-l} (1-based).
pub fn eps(m: usize, n: usize, i: usize, j: usize, field: &Arc<CyclotomicField>) -> GroupAlgebraElement {
    eps_range(m, n, i, j, 0, field)
}

/// The same sum starting at l = `from`.
pub fn eps_range(
    m: usize,
    n: usize,
    i: usize,
    j: usize,
    from: usize,
    field: &Arc<CyclotomicField>,
) -> GroupAlgebraElement {
    let mut e = GroupAlgebraElement::zero(m, n, field);
    let one = Scalar::one(field);
    for l in from..m {
        let mut a = vec![0i64; n];
        a[i - 1] = l as i64;
        a[j - 1] = -(l as i64);
        e.add_term(GmnElement::torus_element(m, &a), &one);
    }
    e
}

/// sum_s (i,j) g_i^{-s} g_j^{s}, the torus-dressed transposition sum (1-based, i != j).
pub fn dressed_sum(m: usize, n: usize, i: usize, j: usize, field: &Arc<CyclotomicField>) -> GroupAlgebraElement {
    let mut e = GroupAlgebraElement::zero(m, n, field);
    let one = Scalar::one(field);
    for s in 0..m {
        e.add_term(dressed_transposition(m, n, i, j, s), &one);
    }
    e
}

/// The Jucys-Murphy families (M_1..M_n, Mbar_1..Mbar_n), 0-based vectors.
///
/// M_i = sum_{k<i} sum_s (k,i) g_k^{-s} g_i^s and Mbar_i = sum_{k>i} sum_s (i,k) g_i^{-s} g_k^s.
pub fn jm_elements(
    m: usize,
    n: usize,
    field: &Arc<CyclotomicField>,
) -> (Vec<GroupAlgebraElement>, Vec<GroupAlgebraElement>) {
    let mut big = Vec::with_capacity(n);
    let mut bar = Vec::with_capacity(n);
    for i in 1..=n {
        let mut mi = GroupAlgebraElement::zero(m, n, field);
        for k in 1..i {
            mi = &mi + &dressed_sum(m, n, k, i, field);
        }
        big.push(mi);
        let mut bi = GroupAlgebraElement::zero(m, n, field);
        for k in i + 1..=n {
            bi = &bi + &dressed_sum(m, n, i, k, field);
        }
        bar.push(bi);
    }
    (big, bar)
}
