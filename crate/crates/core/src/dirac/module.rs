use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::clifford::{CliffordElement, Mask};
use crate::error::{Error, Result};
use crate::group::{block_ranges, min_coset_reps, GmnElement};
use crate::linalg::{image, intersect, kernel, restrict_to_basis, Matrix, Subspace, Vector};
use crate::reps::{
    check_module, mu_character, restrict_to_weight, twist_character, weight_decomposition,
    weight_space, HModule, TorusCharacter,
};
use crate::scalar::{rat, Cyclotomic, CyclotomicField, Rational};

/// Left multiplication by e_i on C(V), basis e_S indexed by the mask S.
pub fn clifford_left_matrix(n: usize, i: usize, field: &Arc<CyclotomicField>) -> Matrix {
    let size = 1usize << n;
    let mut out = Matrix::zeros(field, size, size);
    let e = CliffordElement::e(n, i, field);
    for s in 0..size as Mask {
        let prod = e
            .cl_mul(&CliffordElement::monomial(n, s, crate::scalar::Scalar::one(field)))
            .expect("same rank");
        for (t, c) in prod.terms() {
            out[(*t as usize, s as usize)] = c.as_constant().expect("no kappa");
        }
    }
    out
}

fn assemble(zt: &[Matrix], field: &Arc<CyclotomicField>) -> Matrix {
    let n = zt.len();
    let d = zt.first().map_or(0, Matrix::rows);
    let mut out = Matrix::zeros(field, d << n, d << n);
    for (i, a) in zt.iter().enumerate() {
        out = &out + &a.kron(&clifford_left_matrix(n, i + 1, field));
    }
    out
}

/// D = sum_i zt_i (x) e_i on X (x) C(V), basis index x * 2^n + S.
pub fn dirac_matrix(x: &HModule) -> Result<Matrix> {
    if !x.is_full() {
        return Err(Error::Precondition("the Dirac element needs the whole algebra".into()));
    }
    check_module(x)?;
    Ok(assemble(&x.ztilde_matrices()?, x.field()))
}

/// The Dirac operator of the block parabolic S_{a_0} x ... x S_{a_{m-1}} on a module
/// over it: z_i + (c/2)(Mbar^P_i - M^P_i) with undressed transpositions inside blocks
/// and c = m kappa.
pub fn parabolic_dirac_matrix(u: &HModule) -> Result<Matrix> {
    let (m, n) = (u.m(), u.n());
    let field = u.field();
    let blocks = crate::group::blocks_of_simple_roots(n, &u.roots())?;
    let c = u.kappa() * rat(m as i64);
    let half = Cyclotomic::from_rational(field, &c / rat(2));
    let mut zt = Vec::with_capacity(n);
    for (lo, hi) in block_ranges(&blocks) {
        for i in lo..hi {
            let mut corr = Matrix::zeros(field, u.dim(), u.dim());
            for k in lo..hi {
                if k == i {
                    continue;
                }
                let t = u.group_matrix(&GmnElement::transposition(m, n, i + 1, k + 1))?;
                // Mbar_i collects k > i, M_i collects k < i
                corr = if k > i { &corr + &t } else { &corr - &t };
            }
            zt.push(u.z(i + 1) + &corr.scale(&half));
        }
    }
    Ok(assemble(&zt, field))
}

/// dim Ker D - dim (Im D cap Ker D) with the spaces themselves.
fn cohomology_of(d: &Matrix) -> Result<(usize, Subspace, Subspace)> {
    let k = kernel(d);
    let ik = intersect(&image(d), &k)?;
    Ok((k.dim() - ik.dim(), k, ik))
}

/// Dirac cohomology Ker D / (Im D cap Ker D) of a module.
#[derive(Clone, Debug)]
pub struct DiracCohomology {
    pub dimension: usize,
    /// representatives of a basis of the cohomology, inside Ker D
    pub basis: Subspace,
    /// torus characters with multiplicities
    pub torus_characters: BTreeMap<TorusCharacter, usize>,
}

/// The basis vectors w_b (x) e_S of W (x) C(V), ordered b * 2^n + S.
fn tensor_basis(w: &[Vector], n: usize, field: &Arc<CyclotomicField>) -> Vec<Vector> {
    let size = 1usize << n;
    let mut out = Vec::with_capacity(w.len() * size);
    for v in w {
        for s in 0..size {
            let mut t = vec![Cyclotomic::zero(field); v.len() * size];
            for (x, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    t[x * size + s] = c.clone();
                }
            }
            out.push(t);
        }
    }
    out
}

pub fn dirac_cohomology(x: &HModule) -> Result<DiracCohomology> {
    let d = dirac_matrix(x)?;
    let (dimension, k, ik) = cohomology_of(&d)?;
    let mut reps = ik.clone();
    let mut chosen = Vec::new();
    for v in k.basis() {
        if reps.insert(v) {
            chosen.push(v.clone());
        }
    }
    let basis = Subspace::span(x.field(), d.rows(), &chosen);
    // D commutes with the torus, so the cohomology splits over torus weights
    let mut torus_characters = BTreeMap::new();
    let mut total = 0;
    for (chi, w) in weight_decomposition(x)? {
        let local = restrict_to_basis(&d, &tensor_basis(w.basis(), x.n(), x.field()))?;
        let (h, _, _) = cohomology_of(&local)?;
        total += h;
        if h > 0 {
            torus_characters.insert(chi, h);
        }
    }
    if total != dimension {
        return Err(Error::Precondition(format!(
            "weight-space cohomology sums to {total}, whole cohomology has dim {dimension}"
        )));
    }
    Ok(DiracCohomology {
        dimension,
        basis,
        torus_characters,
    })
}

/// Dirac cohomology of a type-A module (m = 1, kappa = c) with its own C(V).
pub fn type_a_dirac_cohomology_dim(f: &HModule) -> Result<usize> {
    if f.m() != 1 {
        return Err(Error::Precondition("expected a type-A module".into()));
    }
    Ok(cohomology_of(&parabolic_dirac_matrix(f)?)?.0)
}

/// Restricted D on the mu_a weight space against the parabolic type-A Dirac matrix of
/// F^{-1}(X). Returns both matrices.
pub fn weight_space_dirac(x: &HModule, a: &[usize]) -> Result<(Matrix, Matrix)> {
    let d = dirac_matrix(x)?;
    let mu = mu_character(a, x.m(), x.n())?;
    let w = weight_space(x, &mu.exponents)?;
    if w.is_zero() {
        return Err(Error::WeightAbsent(format!("mu_{a:?}")));
    }
    let lhs = restrict_to_basis(&d, &tensor_basis(w.basis(), x.n(), x.field()))?;
    let rhs = parabolic_dirac_matrix(&restrict_to_weight(x, a)?)?;
    Ok((lhs, rhs))
}

fn character_list<S: serde::Serializer>(
    m: &BTreeMap<TorusCharacter, usize>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(m.len()))?;
    for (chi, k) in m {
        seq.serialize_element(&(chi, k))?;
    }
    seq.end()
}

/// Both sides of the block comparison of Dirac cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct BlockwiseReport {
    pub block: Vec<usize>,
    pub cosets: usize,
    pub lhs_dimension: usize,
    #[serde(serialize_with = "character_list")]
    pub lhs_characters: BTreeMap<TorusCharacter, usize>,
    /// Dirac cohomology dims of the type-A factors (given factors), or of F^{-1}(X)
    /// under the parabolic Dirac operator as a single entry
    pub factor_dimensions: Vec<usize>,
    pub rhs_dimension: usize,
    #[serde(serialize_with = "character_list")]
    pub rhs_characters: BTreeMap<TorusCharacter, usize>,
    /// restricted D equals the parabolic Dirac matrix on the mu_a weight space
    pub weight_space_lemma: bool,
}

impl BlockwiseReport {
    pub fn dimensions_agree(&self) -> bool {
        self.lhs_dimension == self.rhs_dimension
    }

    pub fn characters_agree(&self) -> bool {
        self.lhs_characters == self.rhs_characters
    }

    pub fn pass(&self) -> bool {
        self.dimensions_agree() && self.characters_agree() && self.weight_space_lemma
    }
}

/// Whole-module Dirac cohomology against the sum over coset twists c of the tensor
/// product of the factor cohomologies; the torus acts on the c-summand by c.mu_a.
pub fn dirac_cohomology_blockwise(
    x: &HModule,
    a: &[usize],
    factors: Option<&[HModule]>,
) -> Result<BlockwiseReport> {
    let (m, n) = (x.m(), x.n());
    let mu = mu_character(a, m, n)?;
    let lhs = dirac_cohomology(x)?;
    for chi in lhs.torus_characters.keys() {
        if crate::reps::orbit_composition(chi, m) != a {
            return Err(Error::Precondition(format!("module has a weight {chi:?} outside block {a:?}")));
        }
    }
    if weight_space(x, &mu.exponents)?.is_zero() {
        return Err(Error::WeightAbsent(format!("mu_{a:?}")));
    }
    let factor_dimensions = match factors {
        Some(fs) => fs.iter().map(type_a_dirac_cohomology_dim).collect::<Result<Vec<_>>>()?,
        None => {
            let u = restrict_to_weight(x, a)?;
            vec![cohomology_of(&parabolic_dirac_matrix(&u)?)?.0]
        }
    };
    let per_coset: usize = factor_dimensions.iter().product();
    let reps = min_coset_reps(m, n, a)?.reps;
    let mut rhs_characters = BTreeMap::new();
    if per_coset > 0 {
        for c in &reps {
            *rhs_characters.entry(twist_character(c, &mu.exponents, m)).or_insert(0) += per_coset;
        }
    }
    let (l, r) = weight_space_dirac(x, a)?;
    Ok(BlockwiseReport {
        block: a.to_vec(),
        cosets: reps.len(),
        lhs_dimension: lhs.dimension,
        lhs_characters: lhs.torus_characters,
        factor_dimensions,
        rhs_dimension: reps.len() * per_coset,
        rhs_characters,
        weight_space_lemma: l == r,
    })
}

/// The `dc.json` record.
#[derive(Clone, Debug, Serialize)]
pub struct DcRecord {
    pub dimension: usize,
    pub torus_characters: Vec<Vec<usize>>,
    pub kappa: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<Vec<usize>>,
}

impl DcRecord {
    pub fn new(dc: &DiracCohomology, kappa: &Rational, block: Option<Vec<usize>>) -> Self {
        let mut chars = Vec::new();
        for (chi, k) in &dc.torus_characters {
            chars.extend(std::iter::repeat_n(chi.clone(), *k));
        }
        DcRecord {
            dimension: dc.dimension,
            torus_characters: chars,
            kappa: kappa.to_string(),
            block,
        }
    }
}
