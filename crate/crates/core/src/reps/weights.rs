use std::sync::Arc;

use super::module::HModule;
use crate::error::{Error, Result};
use crate::group::{block_of_positions, simple_roots_of, Composition, GmnElement};
use crate::linalg::{eigenspaces_from_candidates, restrict, simultaneous_generalized_eigenspaces, Subspace, Vector};
use crate::scalar::{Cyclotomic, CyclotomicField};

/// A torus character, as exponents e_k with g_k acting by eta^{e_k}, eta = exp(2 pi i / m).
pub type TorusCharacter = Vec<usize>;

/// The staircase character mu_a of a composition a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCharacter {
    pub m: usize,
    pub composition: Composition,
    /// mu_a(g_j) = eta^{exponents[j-1]}
    pub exponents: TorusCharacter,
}

impl BlockCharacter {
    /// mu_a(g_k) for 1-based k.
    pub fn value(&self, field: &Arc<CyclotomicField>, k: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(field, self.exponents[k - 1] as i64, self.m)
    }
}

fn check_composition(a: &[usize], m: usize, n: usize) -> Result<()> {
    if a.len() != m || a.iter().sum::<usize>() != n {
        return Err(Error::InvalidComposition { parts: a.to_vec(), n });
    }
    Ok(())
}

/// mu_a(g_j) = eta^i for sum_{k<i} a_k < j <= sum_{k<=i} a_k.
pub fn mu_character(a: &[usize], m: usize, n: usize) -> Result<BlockCharacter> {
    check_composition(a, m, n)?;
    Ok(BlockCharacter {
        m,
        composition: a.to_vec(),
        exponents: block_of_positions(a),
    })
}

/// The composition whose staircase character lies in the S_n-orbit of chi.
pub fn orbit_composition(chi: &[usize], m: usize) -> Composition {
    let mut a = vec![0; m];
    for &e in chi {
        a[e] += 1;
    }
    a
}

/// The character h.chi with (h.chi)(g_k) = chi(h^{-1} g_k h), for a permutation h.
pub fn twist_character(h: &GmnElement, chi: &[usize], m: usize) -> TorusCharacter {
    let n = chi.len();
    let hi = h.inverse();
    (1..=n)
        .map(|k| {
            let t = hi.mul(&GmnElement::g(m, n, k, 1)).mul(h);
            t.torus().iter().zip(chi).map(|(&a, &e)| a as usize * e).sum::<usize>() % m
        })
        .collect()
}

fn map_back(space: &Subspace, local: &Subspace) -> Subspace {
    let vecs: Vec<Vector> = local.basis().iter().map(|c| space.from_coords(c)).collect();
    Subspace::span(space.field(), space.ambient_dim(), &vecs)
}

/// Simultaneous eigenspaces of the g-matrices, sorted by character.
pub fn weight_decomposition(x: &HModule) -> Result<Vec<(TorusCharacter, Subspace)>> {
    let field = x.field();
    let candidates: Vec<Cyclotomic> = (0..x.m())
        .map(|e| Cyclotomic::root_of_unity(field, e as i64, x.m()))
        .collect();
    let mut parts: Vec<(TorusCharacter, Subspace)> = vec![(Vec::new(), Subspace::full(field, x.dim()))];
    for k in 1..=x.n() {
        let mut next = Vec::new();
        for (chi, space) in parts {
            if space.is_zero() {
                continue;
            }
            let local = restrict(x.g(k), &space)?;
            for (value, sub) in eigenspaces_from_candidates(&local, &candidates)? {
                let e = candidates.iter().position(|c| *c == value).expect("candidate");
                let mut c = chi.clone();
                c.push(e);
                next.push((c, map_back(&space, &sub)));
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(parts)
}

/// The chi-weight space (possibly zero).
pub fn weight_space(x: &HModule, chi: &[usize]) -> Result<Subspace> {
    Ok(weight_decomposition(x)?
        .into_iter()
        .find(|(c, _)| c == chi)
        .map(|(_, s)| s)
        .unwrap_or_else(|| Subspace::zero(x.field(), x.dim())))
}

/// A joint generalized weight: torus character and z-eigenvalues, with its space.
#[derive(Clone, Debug)]
pub struct Weight {
    pub torus: TorusCharacter,
    pub z: Vec<Cyclotomic>,
    pub space: Subspace,
}

/// Generalized weight spaces of C[T] (x) S(V); errors when some z does not split.
pub fn generalized_weights(x: &HModule) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for (chi, space) in weight_decomposition(x)? {
        let zs = x
            .z_matrices()
            .iter()
            .map(|a| restrict(a, &space))
            .collect::<Result<Vec<_>>>()?;
        for (lam, local) in simultaneous_generalized_eigenspaces(&zs)? {
            out.push(Weight {
                torus: chi.clone(),
                z: lam,
                space: map_back(&space, &local),
            });
        }
    }
    Ok(out)
}

/// The block parabolic stab(mu_a).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDatum {
    pub n: usize,
    pub composition: Composition,
    /// Pi_a, 1-based indices j of the simple roots e_j - e_{j+1} present
    pub roots: Vec<usize>,
}

impl ParabolicDatum {
    /// Sizes of the type-A tensor factors (zero parts dropped).
    pub fn factor_sizes(&self) -> Vec<usize> {
        self.composition.iter().copied().filter(|&k| k > 0).collect()
    }

    pub fn is_full(&self) -> bool {
        self.roots.len() + 1 == self.n
    }
}

pub fn stab_subalgebra(a: &[usize]) -> Result<ParabolicDatum> {
    let n: usize = a.iter().sum();
    if n == 0 {
        return Err(Error::InvalidComposition { parts: a.to_vec(), n });
    }
    Ok(ParabolicDatum {
        n,
        composition: a.to_vec(),
        roots: simple_roots_of(a),
    })
}

/// The unique a with mu_a a weight of X.
pub fn block_label(x: &HModule) -> Result<Composition> {
    let weights = weight_decomposition(x)?;
    let mut label: Option<Composition> = None;
    for (chi, _) in &weights {
        let a = orbit_composition(chi, x.m());
        match &label {
            None => label = Some(a),
            Some(b) if *b == a => {}
            Some(b) => {
                return Err(Error::NotIrreducible(format!(
                    "torus weights lie in the orbits of {b:?} and {a:?}"
                )))
            }
        }
    }
    label.ok_or_else(|| Error::InvalidModule("zero module has no block".into()))
}
