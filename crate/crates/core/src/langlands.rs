//! Langlands data for block parabolics: the S_F decomposition, rho-height,
//! temperedness, the quotient J(P, U) and the tempered census.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{blocks_of_simple_roots, compositions, Composition};
use crate::linalg::{kernel, largest_invariant_subspace, restrict, spin, Matrix, Subspace, Vector};
use crate::reps::{
    character_module, composition_factors, find_isomorphism, generalized_weights, irreducibility,
    mu_character, parabolic_induce, HModule, Weight,
};
use crate::scalar::{rat, real_part, scalar_real_sign, Cyclotomic, CyclotomicField, Rational};

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

/// Simple coroots, their Cartan matrix and the fundamental coweights of S_n acting on Q^n.
///
/// The default convention has coroots e_{i+1} - e_i; `flipped` uses e_i - e_{i+1}.
#[derive(Clone, Debug)]
pub struct RootFrame {
    pub n: usize,
    pub flipped: bool,
    /// coroots[i - 1] is the i-th simple coroot
    pub coroots: Vec<Vec<Rational>>,
    /// coweights[i - 1] = x_i, with (x_i, coroot_j) = delta_ij and x_i orthogonal to (1, ..., 1);
    /// these are also the dual basis beta_i of the coroots inside the root span
    pub coweights: Vec<Vec<Rational>>,
    /// (C^{-1})_{ij} = (x_i, x_j)
    cartan_inverse: Vec<Vec<Rational>>,
}

impl RootFrame {
    pub fn new(n: usize) -> Self {
        Self::with_convention(n, false)
    }

    pub fn flipped(n: usize) -> Self {
        Self::with_convention(n, true)
    }

    pub fn with_convention(n: usize, flipped: bool) -> Self {
        assert!(n >= 1, "rank must be positive");
        let r = n - 1;
        let sign = if flipped { -rat(1) } else { rat(1) };
        let coroots: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i + 1] = sign.clone();
                v[i] = -sign.clone();
                v
            })
            .collect();
        let q = CyclotomicField::new(1);
        let cartan: Vec<Vector> = coroots
            .iter()
            .map(|a| coroots.iter().map(|b| Cyclotomic::from_rational(&q, dot(a, b))).collect())
            .collect();
        let cartan_inverse: Vec<Vec<Rational>> = if r == 0 {
            Vec::new()
        } else {
            let inv = Matrix::from_rows(&q, cartan)
                .expect("square")
                .inverse()
                .expect("the Cartan matrix is invertible");
            (0..r)
                .map(|i| (0..r).map(|j| inv[(i, j)].as_rational().expect("rational").clone()).collect())
                .collect()
        };
        let coweights = (0..r)
            .map(|i| {
                let mut x = vec![Rational::zero(); n];
                for j in 0..r {
                    axpy(&mut x, &cartan_inverse[i][j], &coroots[j]);
                }
                x
            })
            .collect();
        RootFrame {
            n,
            flipped,
            coroots,
            coweights,
            cartan_inverse,
        }
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// The i-th simple coroot (1-based).
    pub fn coroot(&self, i: usize) -> &[Rational] {
        &self.coroots[i - 1]
    }

    /// beta_j = x_j (1-based).
    pub fn beta(&self, j: usize) -> &[Rational] {
        &self.coweights[j - 1]
    }

    /// Coordinates of x in the coroot basis, after dropping the central part.
    pub fn coroot_coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        self.coweights.iter().map(|w| dot(x, w)).collect()
    }

    /// Orthogonal projection onto the root span (sum-zero vectors).
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        let mean: Rational = x.iter().cloned().sum::<Rational>() / rat(self.n as i64);
        x.iter().map(|v| v - &mean).collect()
    }
}

/// rho(x) = the sum of the coroot coordinates of x.
pub fn rho_height(frame: &RootFrame, x: &[Rational]) -> Rational {
    frame.coroot_coordinates(x).into_iter().sum()
}

/// x = sum_{j not in F} c_j beta_j - sum_{i in F} d_i coroot_i with c_j > 0, d_i >= 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFDecomposition {
    /// F, 1-based simple-root indices
    pub f: Vec<usize>,
    /// (j, c_j) for j outside F
    pub c: Vec<(usize, Rational)>,
    /// (i, d_i) for i in F
    pub d: Vec<(usize, Rational)>,
}

impl SFDecomposition {
    /// x_0 = sum_{j not in F} c_j beta_j.
    pub fn beta_part(&self, frame: &RootFrame) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); frame.n];
        for (j, c) in &self.c {
            axpy(&mut x, c, frame.beta(*j));
        }
        x
    }

    pub fn reconstruct(&self, frame: &RootFrame) -> Vec<Rational> {
        let mut x = self.beta_part(frame);
        for (i, d) in &self.d {
            axpy(&mut x, &-d, frame.coroot(*i));
        }
        x
    }
}

/// The solution for a fixed F, if the sign constraints hold.
fn solve_for_subset(frame: &RootFrame, y: &[Rational], f: &[usize]) -> Option<SFDecomposition> {
    let r = frame.rank();
    let q = CyclotomicField::new(1);
    // in coroot coordinates: beta_j is column j of C^{-1}, coroot_i is e_i
    let mut a = Matrix::zeros(&q, r, r);
    for col in 0..r {
        for row in 0..r {
            let v = if f.contains(&(col + 1)) {
                if row == col {
                    -rat(1)
                } else {
                    Rational::zero()
                }
            } else {
                frame.cartan_inverse[row][col].clone()
            };
            a[(row, col)] = Cyclotomic::from_rational(&q, v);
        }
    }
    let inv = a.inverse().expect("principal minors of a positive definite form are nonzero");
    let rhs: Vector = y.iter().map(|v| Cyclotomic::from_rational(&q, v.clone())).collect();
    let t: Vec<Rational> = inv
        .apply(&rhs)
        .iter()
        .map(|v| v.as_rational().expect("rational").clone())
        .collect();
    let mut c = Vec::new();
    let mut d = Vec::new();
    for (k, v) in t.into_iter().enumerate() {
        if f.contains(&(k + 1)) {
            if v.is_negative() {
                return None;
            }
            d.push((k + 1, v));
        } else {
            if !v.is_positive() {
                return None;
            }
            c.push((k + 1, v));
        }
    }
    Some(SFDecomposition { f: f.to_vec(), c, d })
}

/// The unique F with x in S_F, by an exact solve for every subset.
///
/// Panics if the number of admissible subsets is not exactly one.
pub fn sf_decompose(frame: &RootFrame, x: &[Rational]) -> Result<SFDecomposition> {
    if x.len() != frame.n {
        return Err(Error::Dimension(format!("vector of length {} for n = {}", x.len(), frame.n)));
    }
    if !x.iter().cloned().sum::<Rational>().is_zero() {
        return Err(Error::Precondition("x is not in the span of the coroots".into()));
    }
    let r = frame.rank();
    let y = frame.coroot_coordinates(x);
    let hits: Vec<SFDecomposition> = (0u32..1 << r)
        .filter_map(|mask| {
            let f: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            solve_for_subset(frame, &y, &f)
        })
        .collect();
    assert_eq!(hits.len(), 1, "S_F membership of {x:?} is not unique: {hits:?}");
    Ok(hits.into_iter().next().expect("one hit"))
}

/// Permute a weight vector: e_i -> e_{w(i)}, with w given 0-based.
pub fn act_on_weight(perm: &[usize], x: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); x.len()];
    for (i, v) in x.iter().enumerate() {
        out[perm[i]] = v.clone();
    }
    out
}

/// True when w maps every coroot of the parabolic to a positive coroot. Flipping the
/// convention flips both the coroots and the positive system, so this reads the same.
pub fn is_minimal_for(perm: &[usize], roots: &[usize]) -> bool {
    roots.iter().all(|&i| perm[i - 1] < perm[i])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Temperedness {
    Tempered,
    EssentiallyTempered,
    Neither,
}

/// Every weight lambda satisfies Re lambda(x_i) <= 0; tempered also needs Re lambda to
/// vanish on the center line.
pub fn is_tempered(x: &HModule, frame: &RootFrame) -> Result<Temperedness> {
    if frame.n != x.n() {
        return Err(Error::Dimension(format!("frame of rank {} for n = {}", frame.n, x.n())));
    }
    let field = x.field();
    let mut central_zero = true;
    for w in generalized_weights(x)? {
        let re: Vec<Cyclotomic> = w.z.iter().map(real_part).collect();
        for xi in &frame.coweights {
            let mut v = Cyclotomic::zero(field);
            for (a, c) in re.iter().zip(xi) {
                v = &v + &a.scale(c);
            }
            if scalar_real_sign(&v)? > 0 {
                return Ok(Temperedness::Neither);
            }
        }
        let total = re.iter().fold(Cyclotomic::zero(field), |acc, a| &acc + a);
        if !total.is_zero() {
            central_zero = false;
        }
    }
    Ok(if central_zero {
        Temperedness::Tempered
    } else {
        Temperedness::EssentiallyTempered
    })
}

/// Real parts of a weight, which must be rational.
fn real_weight(w: &Weight) -> Result<Vec<Rational>> {
    w.z.iter()
        .map(|v| {
            real_part(v)
                .as_rational()
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("weight {v} has an irrational real part")))
        })
        .collect()
}

/// Average over the blocks of the parabolic: the projection onto a_P.
fn project_a_p<T: Clone>(v: &[T], comp: &[usize], avg: impl Fn(&[T]) -> T) -> Vec<T> {
    let mut out = Vec::with_capacity(v.len());
    let mut start = 0;
    for &k in comp {
        let a = avg(&v[start..start + k]);
        out.extend(std::iter::repeat_n(a, k));
        start += k;
    }
    out
}

fn avg_rational(v: &[Rational]) -> Rational {
    v.iter().cloned().sum::<Rational>() / rat(v.len() as i64)
}

fn avg_cyclotomic(v: &[Cyclotomic]) -> Cyclotomic {
    let f = v[0].field().clone();
    v.iter()
        .fold(Cyclotomic::zero(&f), |acc, a| &acc + a)
        .scale(&(Rational::one() / rat(v.len() as i64)))
}

/// A weight with the data used to rank it.
struct Ranked {
    weight: Weight,
    real: Vec<Rational>,
    sf: SFDecomposition,
}

fn rank_weights(x: &HModule, frame: &RootFrame) -> Result<Vec<Ranked>> {
    generalized_weights(x)?
        .into_iter()
        .map(|w| {
            let real = real_weight(&w)?;
            let sf = sf_decompose(frame, &frame.project(&real))?;
            Ok(Ranked { weight: w, real, sf })
        })
        .collect()
}

fn lex(a: &Weight, b: &Weight) -> Ordering {
    a.torus.cmp(&b.torus).then_with(|| a.z.cmp(&b.z))
}

/// Weights maximising `key`, lexicographically least first.
fn maximisers(mut ranked: Vec<Ranked>, key: impl Fn(&Ranked) -> Rational) -> Vec<Ranked> {
    let best = ranked.iter().map(&key).max().expect("nonzero module");
    ranked.retain(|r| key(r) == best);
    ranked.sort_by(|a, b| lex(&a.weight, &b.weight));
    ranked
}

fn same_weight(a: &Weight, b: &Weight) -> bool {
    a.torus == b.torus && a.z == b.z
}

/// J(P, U) for an H_P-module U = U^ (x) nu, as the quotient of Ind U by the largest
/// submodule avoiding the rho-maximal weight of U.
pub fn langlands_quotient(u: &HModule, frame: &RootFrame) -> Result<HModule> {
    let roots = u.roots();
    let ranked = rank_weights(u, frame)?;
    for r in &ranked {
        if r.sf.f != roots {
            return Err(Error::Precondition(format!(
                "weight {:?} lies in S_F for F = {:?}, not the parabolic {:?}",
                r.real, r.sf.f, roots
            )));
        }
    }
    if u.is_full() {
        return Ok(u.clone());
    }
    let top = maximisers(ranked, |r| rho_height(frame, &r.real))
        .into_iter()
        .next()
        .expect("a maximal weight");
    let v = parabolic_induce(u)?;
    let weights = generalized_weights(&v)?;
    let mut others = Subspace::zero(v.field(), v.dim());
    let mut top_mult = 0;
    for w in &weights {
        if same_weight(w, &top.weight) {
            top_mult = w.space.dim();
        } else {
            others = others.sum(&w.space)?;
        }
    }
    if top_mult != top.weight.space.dim() {
        return Err(Error::Precondition(format!(
            "the top weight has multiplicity {top_mult} in Ind U but {} in U",
            top.weight.space.dim()
        )));
    }
    let imax = largest_invariant_subspace(&v.operators(), &others)?;
    let j = v.quotient(&imax);
    if !irreducibility(&j)?.irreducible {
        return Err(Error::NotIrreducible("the Langlands quotient is reducible".into()));
    }
    Ok(j)
}

/// A Langlands datum: the parabolic, the H_P-module U = U^ (x) nu and nu.
#[derive(Clone, Debug)]
pub struct LanglandsDatum {
    /// Pi_P, 1-based simple roots
    pub parabolic: Vec<usize>,
    /// the real part of the a_P-component of the leading weight
    pub nu: Vec<Rational>,
    /// U over H_P, including the central twist nu
    pub module: HModule,
    /// X was rebuilt as J(P, U), and every rho-maximal choice gave the same datum
    pub verified_unique: bool,
}

impl LanglandsDatum {
    /// U^ = U twisted by -nu.
    pub fn tempered_factor(&self) -> HModule {
        let u = &self.module;
        let field = u.field().clone();
        let z = u
            .z_matrices()
            .iter()
            .zip(&self.nu)
            .map(|(a, v)| a.sub_scalar(&Cyclotomic::from_rational(&field, v.clone())))
            .collect();
        HModule::new(
            u.m(),
            u.n(),
            &field,
            u.kappa().clone(),
            u.parabolic().map(<[usize]>::to_vec),
            u.s_matrices().to_vec(),
            u.g_matrices().to_vec(),
            z,
        )
        .expect("a central twist preserves the relations")
    }
}

/// The H_P-module on an H_P-stable subspace of X.
fn parabolic_restriction(x: &HModule, roots: &[usize], w: &Subspace) -> Result<HModule> {
    let s = (1..x.n())
        .map(|j| {
            if !roots.contains(&j) {
                return Ok(None);
            }
            let sj = x
                .s(j)
                .ok_or_else(|| Error::Precondition(format!("s{j} does not act on the module")))?;
            restrict(sj, w).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = x.g_matrices().iter().map(|a| restrict(a, w)).collect::<Result<Vec<_>>>()?;
    let z = x.z_matrices().iter().map(|a| restrict(a, w)).collect::<Result<Vec<_>>>()?;
    HModule::new(x.m(), x.n(), x.field(), x.kappa().clone(), Some(roots.to_vec()), s, g, z)
}

/// Joint eigenvectors of the torus and the z's for one weight.
fn eigenvectors(x: &HModule, w: &Weight) -> Result<Vec<Vector>> {
    let field = x.field();
    let mut space = w.space.clone();
    for (k, lam) in w.z.iter().enumerate() {
        let local = restrict(&x.z(k + 1).sub_scalar(lam), &space)?;
        let kern = kernel(&local);
        let vecs: Vec<Vector> = kern.basis().iter().map(|c| space.from_coords(c)).collect();
        space = Subspace::span(field, x.dim(), &vecs);
    }
    Ok(space.basis().to_vec())
}

/// The datum built from one leading weight.
fn datum_from(x: &HModule, lead: &Ranked, all: &[Weight]) -> Result<LanglandsDatum> {
    let n = x.n();
    let roots = lead.sf.f.clone();
    let comp = blocks_of_simple_roots(n, &roots)?;
    let nu = project_a_p(&lead.real, &comp, avg_rational);
    if roots.len() + 1 == n {
        return Ok(LanglandsDatum {
            parabolic: roots,
            nu,
            module: x.clone(),
            verified_unique: false,
        });
    }
    let target = project_a_p(&lead.weight.z, &comp, avg_cyclotomic);
    let mut w = Subspace::zero(x.field(), x.dim());
    for other in all {
        if project_a_p(&other.z, &comp, avg_cyclotomic) == target {
            w = w.sum(&other.space)?;
        }
    }
    let restricted = parabolic_restriction(x, &roots, &w)?;
    // weights of the restriction, in its own coordinates
    let local = generalized_weights(&restricted)?
        .into_iter()
        .find(|v| same_weight(v, &lead.weight))
        .ok_or_else(|| Error::WeightAbsent("leading weight".into()))?;
    let seeds = eigenvectors(&restricted, &local)?;
    let mut candidates: Vec<Vector> = seeds.clone();
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            candidates.push(seeds[i].iter().zip(&seeds[j]).map(|(a, b)| a + b).collect());
        }
    }
    let ops = restricted.operators();
    for v in candidates {
        let s = spin(&ops, &[v], restricted.dim(), restricted.field());
        let u = restricted.submodule(&s)?;
        if irreducibility(&u)?.irreducible {
            return Ok(LanglandsDatum {
                parabolic: roots,
                nu,
                module: u,
                verified_unique: false,
            });
        }
    }
    Err(Error::Precondition(
        "no simple H_P-submodule through the leading weight was found".into(),
    ))
}

/// (P, U^, nu) with X = J(P, U^ (x) nu), verified by rebuilding J and solving for an
/// isomorphism. The leading weight maximises rho of its beta-part; ties go to the
/// lexicographically least weight, and every tie is checked to give the same datum.
pub fn langlands_data(x: &HModule, frame: &RootFrame) -> Result<LanglandsDatum> {
    let rep = irreducibility(x)?;
    if !rep.irreducible {
        return Err(Error::NotIrreducible(format!("End has dim {}", rep.end_dim)));
    }
    let ranked = rank_weights(x, frame)?;
    let all: Vec<Weight> = ranked.iter().map(|r| r.weight.clone()).collect();
    let leads = maximisers(ranked, |r| rho_height(frame, &r.sf.beta_part(frame)));
    let mut data = leads
        .iter()
        .map(|lead| datum_from(x, lead, &all))
        .collect::<Result<Vec<_>>>()?;
    let mut first = data.remove(0);
    let j = langlands_quotient(&first.module, frame)?;
    let rebuilt = find_isomorphism(x, &j)?.is_some();
    if !rebuilt {
        return Err(Error::Precondition("X is not isomorphic to the rebuilt J(P, U)".into()));
    }
    let mut unique = true;
    for other in &data {
        unique &= other.parabolic == first.parabolic
            && other.nu == first.nu
            && find_isomorphism(&first.module, &other.module)?.is_some();
    }
    first.verified_unique = unique;
    Ok(first)
}

/// One tempered irreducible with real central character.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub block: Composition,
    /// the principal-series parameter it was found in
    pub lambda: Vec<Rational>,
    pub module: HModule,
}

/// Tempered irreducibles with real central character, block by block: the composition
/// factors of the principal series from mu_a at z-parameters on the lattice
/// (m kappa / 2) {-(n-1), ..., n-1} with zero sum, deduplicated up to isomorphism.
pub fn census(m: usize, n: usize, kappa: &Rational, frame: &RootFrame) -> Result<Vec<CensusEntry>> {
    let field: Arc<CyclotomicField> = CyclotomicField::new(m);
    let half = kappa * rat(m as i64) / rat(2);
    let span = n as i64 - 1;
    let steps: Vec<i64> = (-span..=span).collect();
    let mut lattice: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        lattice = lattice
            .into_iter()
            .flat_map(|p| {
                steps.iter().map(move |&s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    lattice.retain(|p| p.iter().sum::<i64>() == 0);
    let mut out: Vec<CensusEntry> = Vec::new();
    for a in compositions(n, m) {
        let mu = mu_character(&a, m, n)?;
        let start = out.len();
        for p in &lattice {
            let lambda: Vec<Rational> = p.iter().map(|&s| &half * rat(s)).collect();
            let lam: Vec<Cyclotomic> = lambda
                .iter()
                .map(|v| Cyclotomic::from_rational(&field, v.clone()))
                .collect();
            let ps = parabolic_induce(&character_module(m, &field, kappa, &mu.exponents, &lam)?)?;
            for f in composition_factors(&ps)? {
                if is_tempered(&f, frame)? != Temperedness::Tempered {
                    continue;
                }
                let mut seen = false;
                for e in &out[start..] {
                    if e.module.dim() == f.dim() && find_isomorphism(&e.module, &f)?.is_some() {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    out.push(CensusEntry {
                        block: a.clone(),
                        lambda: lambda.clone(),
                        module: f,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::min_coset_reps;
    use crate::reps::{pullback_from_type_a, type_a_one_dim, type_a_principal_series};
    use crate::scalar::ratio;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn frame_invariants() {
        for n in 1..=5 {
            for flipped in [false, true] {
                let fr = RootFrame::with_convention(n, flipped);
                for i in 1..n {
                    for j in 1..n {
                        let ip = dot(fr.coroot(i), fr.coroot(j));
                        if i != j {
                            assert!(ip <= Rational::zero());
                        }
                        let delta = if i == j { rat(1) } else { rat(0) };
                        assert_eq!(dot(fr.beta(i), fr.coroot(j)), delta);
                    }
                    assert!(fr.beta(i).iter().cloned().sum::<Rational>().is_zero());
                }
            }
        }
        // x_1 = (-1/2, 1/2) for n = 2
        assert_eq!(RootFrame::new(2).beta(1), &[ratio(-1, 2), ratio(1, 2)]);
    }

    #[test]
    fn sf_examples() {
        let fr = RootFrame::new(2);
        let d = sf_decompose(&fr, fr.beta(1)).unwrap();
        assert!(d.f.is_empty());
        assert_eq!(d.c, vec![(1, rat(1))]);
        let minus: Vec<Rational> = fr.coroot(1).iter().map(|x| -x).collect();
        let d = sf_decompose(&fr, &minus).unwrap();
        assert_eq!(d.f, vec![1]);
        assert_eq!(d.d, vec![(1, rat(1))]);
        let fr3 = RootFrame::new(3);
        let d = sf_decompose(&fr3, &v(&[0, 0, 0])).unwrap();
        assert_eq!(d.f, vec![1, 2]);
        assert!(d.d.iter().all(|(_, x)| x.is_zero()));
        assert!(sf_decompose(&fr3, &v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn rho_examples() {
        let fr = RootFrame::new(3);
        assert_eq!(rho_height(&fr, fr.coroot(1)), rat(1));
        assert_eq!(rho_height(&fr, fr.coroot(2)), rat(1));
        assert_eq!(rho_height(&fr, &v(&[0, 0, 0])), rat(0));
        let mut x = vec![Rational::zero(); 3];
        axpy(&mut x, &rat(2), fr.coroot(1));
        axpy(&mut x, &rat(3), fr.coroot(2));
        assert_eq!(rho_height(&fr, &x), rat(5));
    }

    fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
        let mut x: Vec<Rational> = (0..n)
            .map(|_| ratio(rng.gen_range(-12..=12), rng.gen_range(1..=4)))
            .collect();
        // occasionally land on a wall
        if rng.gen_bool(0.3) && n > 1 {
            x[1] = x[0].clone();
        }
        RootFrame::new(n).project(&x)
    }

    #[test]
    fn sf_uniqueness_on_seeded_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5f);
        for n in 2..=4 {
            for flipped in [false, true] {
                let fr = RootFrame::with_convention(n, flipped);
                for _ in 0..1000 {
                    let x = random_vector(&mut rng, n);
                    let d = sf_decompose(&fr, &x).unwrap();
                    assert_eq!(d.reconstruct(&fr), x);
                }
            }
        }
    }

    #[test]
    fn monotonicity_of_the_beta_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let fr = RootFrame::new(n);
            for _ in 0..300 {
                let y = random_vector(&mut rng, n);
                let mut x = y.clone();
                for i in 1..n {
                    let c = ratio(rng.gen_range(0..=6), rng.gen_range(1..=3));
                    axpy(&mut x, &c, fr.coroot(i));
                }
                let x0 = sf_decompose(&fr, &x).unwrap().beta_part(&fr);
                let y0 = sf_decompose(&fr, &y).unwrap().beta_part(&fr);
                let diff: Vec<Rational> = x0.iter().zip(&y0).map(|(a, b)| a - b).collect();
                assert!(
                    fr.coroot_coordinates(&diff).iter().all(|c| !c.is_negative()),
                    "x0 - y0 = {diff:?}"
                );
            }
        }
    }

    #[test]
    fn rho_drops_under_minimal_coset_reps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for flipped in [false, true] {
                let fr = RootFrame::with_convention(n, flipped);
                for mask in 0u32..1 << (n - 1) {
                    let roots: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                    let comp = blocks_of_simple_roots(n, &roots).unwrap();
                    let reps = min_coset_reps(1, n, &comp).unwrap().reps;
                    for _ in 0..40 {
                        // a weight in S_P
                        let mut x = vec![Rational::zero(); n];
                        for j in 1..n {
                            let c = ratio(rng.gen_range(0..=8), rng.gen_range(1..=3));
                            if roots.contains(&j) {
                                axpy(&mut x, &-c, fr.coroot(j));
                            } else {
                                axpy(&mut x, &(c + ratio(1, 5)), fr.beta(j));
                            }
                        }
                        assert_eq!(sf_decompose(&fr, &x).unwrap().f, roots);
                        for w in &reps {
                            let perm: Vec<usize> = (0..n).map(|i| w.w(i)).collect();
                            if w.is_identity() {
                                continue;
                            }
                            assert!(is_minimal_for(&perm, &roots));
                            assert!(rho_height(&fr, &act_on_weight(&perm, &x)) < rho_height(&fr, &x));
                        }
                    }
                }
            }
        }
    }

    fn steinberg_s2(c: i64, tau: i64) -> HModule {
        // z1 - z2 = -c tau, centred
        let z1 = ratio(-c * tau, 2);
        type_a_one_dim(2, tau, &z1, &rat(c)).unwrap()
    }

    #[test]
    fn temperedness_examples() {
        let fr = RootFrame::new(2);
        assert_eq!(is_tempered(&steinberg_s2(2, -1), &fr).unwrap(), Temperedness::Tempered);
        assert_eq!(is_tempered(&steinberg_s2(2, 1), &fr).unwrap(), Temperedness::Neither);
        let ps = type_a_principal_series(&v(&[0, 0]), &rat(2)).unwrap();
        assert_eq!(is_tempered(&ps, &fr).unwrap(), Temperedness::Tempered);
        let shifted = type_a_one_dim(2, -1, &rat(2), &rat(2)).unwrap();
        assert_eq!(is_tempered(&shifted, &fr).unwrap(), Temperedness::EssentiallyTempered);
        // the flipped convention swaps the two labels
        let flip = RootFrame::flipped(2);
        assert_eq!(is_tempered(&steinberg_s2(2, -1), &flip).unwrap(), Temperedness::Neither);
        assert_eq!(is_tempered(&steinberg_s2(2, 1), &flip).unwrap(), Temperedness::Tempered);
    }

    #[test]
    fn quotient_of_type_a_principal_series() {
        let fr = RootFrame::new(2);
        let q = CyclotomicField::new(1);
        let c = rat(2);
        let lam = |a: i64, b: i64| vec![Cyclotomic::from_int(&q, a), Cyclotomic::from_int(&q, b)];
        // generic: the whole principal series
        let u = character_module(1, &q, &c, &[0, 0], &lam(0, 3)).unwrap();
        assert_eq!(langlands_quotient(&u, &fr).unwrap().dim(), 2);
        // at the reducibility point the 1-dim trivial-type quotient
        let u = character_module(1, &q, &c, &[0, 0], &lam(-1, 1)).unwrap();
        let j = langlands_quotient(&u, &fr).unwrap();
        assert_eq!(j.dim(), 1);
        assert!(find_isomorphism(&j, &steinberg_s2(2, 1)).unwrap().is_some());
        let ps = parabolic_induce(&u).unwrap();
        let factors = composition_factors(&ps).unwrap();
        assert!(factors.iter().any(|f| find_isomorphism(f, &j).unwrap().is_some()));
        // not dominant
        let u = character_module(1, &q, &c, &[0, 0], &lam(1, -1)).unwrap();
        assert!(langlands_quotient(&u, &fr).is_err());
        // P = everything
        let st = steinberg_s2(2, -1);
        assert_eq!(langlands_quotient(&st, &fr).unwrap(), st);
    }

    #[test]
    fn mixed_block_quotient_is_the_whole_induced_module() {
        let fr = RootFrame::new(2);
        let f = CyclotomicField::new(2);
        let lam = vec![Cyclotomic::from_int(&f, 0), Cyclotomic::from_int(&f, 2)];
        let u = character_module(2, &f, &rat(1), &[0, 1], &lam).unwrap();
        let j = langlands_quotient(&u, &fr).unwrap();
        assert_eq!(j, parabolic_induce(&u).unwrap());
    }

    #[test]
    fn data_examples() {
        let fr = RootFrame::new(2);
        let st = steinberg_s2(2, -1);
        let d = langlands_data(&st, &fr).unwrap();
        assert_eq!(d.parabolic, vec![1]);
        assert_eq!(d.nu, v(&[0, 0]));
        assert!(d.verified_unique);
        let triv = steinberg_s2(2, 1);
        let d = langlands_data(&triv, &fr).unwrap();
        assert!(d.parabolic.is_empty());
        assert_eq!(d.nu, v(&[-1, 1]));
        assert_eq!(d.module.dim(), 1);
        // the same module pulled back to the (2, 0) block of m = 2
        let triv2 = pullback_from_type_a(&[triv], &[2, 0], 2, &rat(1)).unwrap();
        let d = langlands_data(&triv2, &fr).unwrap();
        assert!(d.parabolic.is_empty());
        let sf = sf_decompose(&fr, &d.nu).unwrap();
        assert!(sf.f.is_empty());
    }

    #[test]
    fn round_trip_in_rank_three() {
        let fr = RootFrame::new(3);
        let q = CyclotomicField::new(1);
        let c = rat(1);
        for lam in [[-1i64, 0, 1], [0, 2, 5], [-1, 0, 4]] {
            let l: Vec<Cyclotomic> = lam.iter().map(|&a| Cyclotomic::from_int(&q, a)).collect();
            let u = character_module(1, &q, &c, &[0, 0, 0], &l).unwrap();
            let j = langlands_quotient(&u, &fr).unwrap();
            let d = langlands_data(&j, &fr).unwrap();
            assert!(d.parabolic.is_empty());
            assert!(find_isomorphism(&d.module, &u).unwrap().is_some());
        }
    }

    fn partitions(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
    }

    #[test]
    fn census_for_two_two() {
        let fr = RootFrame::new(2);
        let found = census(2, 2, &rat(1), &fr).unwrap();
        let oracle: usize = compositions(2, 2)
            .iter()
            .map(|a| a.iter().map(|&k| partitions(k, k)).product::<usize>())
            .sum();
        assert_eq!(found.len(), oracle);
        let mut dims: Vec<usize> = found.iter().map(|e| e.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 2, 2, 2]);
        let flipped = census(2, 2, &rat(1), &RootFrame::flipped(2)).unwrap();
        let mut fd: Vec<usize> = flipped.iter().map(|e| e.module.dim()).collect();
        fd.sort();
        assert_eq!(fd, dims);
    }

    proptest! {
        #[test]
        fn sf_reconstructs(xs in proptest::collection::vec(-20i64..20, 3), den in 1i64..5) {
            let fr = RootFrame::new(3);
            let x = fr.project(&xs.iter().map(|&a| ratio(a, den)).collect::<Vec<_>>());
            let d = sf_decompose(&fr, &x).unwrap();
            prop_assert_eq!(d.reconstruct(&fr), x);
        }
    }
}
