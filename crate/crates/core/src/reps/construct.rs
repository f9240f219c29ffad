use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;

use super::module::{check_module, HModule};
use super::weights::{mu_character, weight_space};
use crate::algebra::{unit_mono, Descriptor};
use crate::error::{Error, Result};
use crate::group::{blocks_of_simple_roots, min_coset_reps, simple_roots_of, split_coset, GmnElement};
use crate::linalg::{restrict, Matrix};
use crate::scalar::{rat, Cyclotomic, CyclotomicField, Rational};

/// The 1-dim type-A module with s_i -> tau and z_j -> z1 + (j-1) c tau, over Q.
pub fn type_a_one_dim(k: usize, tau: i64, z1: &Rational, c: &Rational) -> Result<HModule> {
    if tau != 1 && tau != -1 {
        return Err(Error::Precondition(format!("tau must be +1 or -1, got {tau}")));
    }
    let f = CyclotomicField::new(1);
    let scalar = |x: Rational| Matrix::scalar(&f, 1, &Cyclotomic::from_rational(&f, x));
    let step = c * rat(tau);
    let s = (1..k).map(|_| Some(Matrix::from_i64(&f, &[&[tau]]))).collect();
    let g = (0..k).map(|_| Matrix::identity(&f, 1)).collect();
    let z = (0..k).map(|j| scalar(z1 + &step * rat(j as i64))).collect();
    HModule::new(1, k, &f, c.clone(), None, s, g, z)
}

/// The 1-dim module over C[T] (x) S(V) with torus character chi and z-character lambda.
pub fn character_module(
    m: usize,
    field: &Arc<CyclotomicField>,
    kappa: &Rational,
    chi: &[usize],
    lambda: &[Cyclotomic],
) -> Result<HModule> {
    let n = chi.len();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("{} z-values for n = {n}", lambda.len())));
    }
    let g = chi
        .iter()
        .map(|&e| Matrix::scalar(field, 1, &Cyclotomic::root_of_unity(field, e as i64, m)))
        .collect();
    let z = lambda
        .iter()
        .map(|x| Ok(Matrix::scalar(field, 1, &x.embed(field)?)))
        .collect::<Result<Vec<_>>>()?;
    HModule::new(m, n, field, kappa.clone(), Some(Vec::new()), vec![None; n - 1], g, z)
}

/// The principal series of the type-A algebra H(S_k) with parameter c at lambda: dimension k!.
pub fn type_a_principal_series(lambda: &[Rational], c: &Rational) -> Result<HModule> {
    let f = CyclotomicField::new(1);
    let lam: Vec<Cyclotomic> = lambda.iter().map(|x| Cyclotomic::from_rational(&f, x.clone())).collect();
    let u = character_module(1, &f, c, &vec![0; lambda.len()], &lam)?;
    parabolic_induce(&u)
}

/// The stab(mu_a)-module obtained from type-A factor modules, one per nonzero part of a,
/// each with Hecke parameter m kappa; g_j acts by mu_a(g_j).
pub fn pullback_from_type_a(factors: &[HModule], a: &[usize], m: usize, kappa: &Rational) -> Result<HModule> {
    let n: usize = a.iter().sum();
    let mu = mu_character(a, m, n)?;
    let sizes: Vec<usize> = a.iter().copied().filter(|&k| k > 0).collect();
    if factors.len() != sizes.len() {
        return Err(Error::Precondition(format!(
            "{} factors for {} nonzero parts",
            factors.len(),
            sizes.len()
        )));
    }
    let c = kappa * rat(m as i64);
    let mut order = m;
    for (f, &k) in factors.iter().zip(&sizes) {
        if f.m() != 1 || f.n() != k || f.roots().len() + 1 != k {
            return Err(Error::Precondition(format!(
                "factor of size {k} must be a type-A module of H(S_{k})"
            )));
        }
        if *f.kappa() != c {
            return Err(Error::Precondition(format!(
                "factor has Hecke parameter {}, expected m kappa = {c}",
                f.kappa()
            )));
        }
        check_module(f)?;
        order = order.lcm(&f.field().order());
    }
    let field = CyclotomicField::new(order);
    let factors: Vec<HModule> = factors.iter().map(|f| f.embed(&field)).collect::<Result<_>>()?;
    let dims: Vec<usize> = factors.iter().map(HModule::dim).collect();
    let total: usize = dims.iter().product();
    // A acting on factor i, identity elsewhere; factor 0 is outermost
    let lift = |i: usize, a: &Matrix| -> Matrix {
        let before: usize = dims[..i].iter().product();
        let after: usize = dims[i + 1..].iter().product();
        Matrix::identity(&field, before)
            .kron(a)
            .kron(&Matrix::identity(&field, after))
    };
    // position j (0-based) -> (factor, 1-based local index)
    let mut local = Vec::with_capacity(n);
    for (i, &k) in sizes.iter().enumerate() {
        local.extend((1..=k).map(|l| (i, l)));
    }
    let roots = simple_roots_of(a);
    let s = (1..n)
        .map(|j| {
            roots.contains(&j).then(|| {
                let (i, l) = local[j - 1];
                lift(i, factors[i].s(l).expect("type-A factor"))
            })
        })
        .collect();
    let g = (1..=n)
        .map(|k| Matrix::scalar(&field, total, &mu.value(&field, k)))
        .collect();
    let z = (0..n)
        .map(|j| {
            let (i, l) = local[j];
            lift(i, factors[i].z(l))
        })
        .collect();
    HModule::new(m, n, &field, kappa.clone(), Some(roots), s, g, z)
}

/// Ind from H_P to H: basis c (x) u over minimal coset representatives c (index
/// c * dim U + u), with h c = c' p split as coset representative times parabolic element.
pub fn parabolic_induce(u: &HModule) -> Result<HModule> {
    check_module(u)?;
    if u.is_full() {
        return Ok(u.clone());
    }
    let (m, n, d) = (u.m(), u.n(), u.dim());
    let field = u.field().clone();
    let comp = blocks_of_simple_roots(n, &u.roots())?;
    let reps = min_coset_reps(m, n, &comp)?.reps;
    let index: HashMap<GmnElement, usize> = reps.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let big = reps.len() * d;
    let split = |h: &GmnElement| -> (usize, GmnElement) {
        let (c, _) = split_coset(&h.perm_part(), &comp);
        (index[&c], c.inverse().mul(h))
    };
    let add_block = |out: &mut Matrix, row: usize, col: usize, a: &Matrix, coef: &Cyclotomic| {
        for i in 0..d {
            for j in 0..d {
                if !a[(i, j)].is_zero() {
                    let cur = &out[(row * d + i, col * d + j)] + &(&a[(i, j)] * coef);
                    out[(row * d + i, col * d + j)] = cur;
                }
            }
        }
    };
    let one = Cyclotomic::one(&field);
    let group_action = |x: &GmnElement| -> Result<Matrix> {
        let mut out = Matrix::zeros(&field, big, big);
        for (ci, c) in reps.iter().enumerate() {
            let (row, p) = split(&x.mul(c));
            add_block(&mut out, row, ci, &u.group_matrix(&p)?, &one);
        }
        Ok(out)
    };
    let s = (1..n)
        .map(|j| group_action(&GmnElement::s(m, n, j)).map(Some))
        .collect::<Result<Vec<_>>>()?;
    let g = (1..=n)
        .map(|k| group_action(&GmnElement::g(m, n, k, 1)))
        .collect::<Result<Vec<_>>>()?;
    let desc = Descriptor::dunkl_opdam_over(m, n, &field)?;
    let mut z = Vec::with_capacity(n);
    for i in 0..n {
        let mut out = Matrix::zeros(&field, big, big);
        for (ci, c) in reps.iter().enumerate() {
            for (h, gamma, coef) in desc.push_through(&unit_mono(i), c).iter() {
                let coef = coef.eval_kappa(u.kappa());
                let (row, p) = split(h);
                let mut a = u.group_matrix(&p)?;
                for (k, &e) in gamma.iter().enumerate().take(n) {
                    if e > 0 {
                        a = &a * &u.z(k + 1).pow(e as u32);
                    }
                }
                add_block(&mut out, row, ci, &a, &coef);
            }
        }
        z.push(out);
    }
    HModule::new(m, n, &field, u.kappa().clone(), None, s, g, z)
}

/// F^{-1}: the mu_a weight space of X as a stab(mu_a)-module, in the echelon basis of
/// the weight space.
pub fn restrict_to_weight(x: &HModule, a: &[usize]) -> Result<HModule> {
    let mu = mu_character(a, x.m(), x.n())?;
    let w = weight_space(x, &mu.exponents)?;
    if w.is_zero() {
        return Err(Error::WeightAbsent(format!("mu_{a:?} is not a weight")));
    }
    let roots = simple_roots_of(a);
    let s = (1..x.n())
        .map(|j| {
            if !roots.contains(&j) {
                return Ok(None);
            }
            let sj = x
                .s(j)
                .ok_or_else(|| Error::Precondition(format!("s{j} does not act on the module")))?;
            restrict(sj, &w).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = x.g_matrices().iter().map(|a| restrict(a, &w)).collect::<Result<Vec<_>>>()?;
    let z = x.z_matrices().iter().map(|a| restrict(a, &w)).collect::<Result<Vec<_>>>()?;
    HModule::new(x.m(), x.n(), x.field(), x.kappa().clone(), Some(roots), s, g, z)
}
