use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gghlab::algebra::{random_element, Descriptor};
use gghlab::clifford::{CliffordElement, Grading, Mask};
use gghlab::dirac::{dirac_derivation, dirac_matrix, HCElement};
use gghlab::group::{block_ranges, in_parabolic, min_coset_reps, reduced_word, split_coset, GmnElement};
use gghlab::linalg::{
    kernel, image, largest_invariant_subspace, simultaneous_generalized_eigenspaces, Matrix, Subspace,
};
use gghlab::reps::{
    find_isomorphism, hom_space, parabolic_induce, pullback_from_type_a, restrict_to_weight, type_a_one_dim,
    type_a_principal_series, HModule,
};
use gghlab::scalar::{ratio, scalar_real_sign, Cyclotomic, CyclotomicField, Rational, Scalar};

const ORDERS: [usize; 7] = [1, 2, 3, 4, 5, 6, 12];

fn build_cyc(field: &Arc<CyclotomicField>, terms: &[(i64, i64, i64)]) -> Cyclotomic {
    terms.iter().fold(Cyclotomic::zero(field), |acc, &(p, q, e)| {
        &acc + &Cyclotomic::zeta_pow(field, e).scale(&ratio(p, q))
    })
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 0i64..12), 0..5)
}

fn approx(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

proptest! {
    #[test]
    fn field_axioms(l in prop::sample::select(ORDERS.to_vec()), a in terms(), b in terms(), c in terms()) {
        let f = CyclotomicField::new(l);
        let (x, y, z) = (build_cyc(&f, &a), build_cyc(&f, &b), build_cyc(&f, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &x), &Cyclotomic::zero(&f));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        } else {
            prop_assert!(x.inv().is_none());
        }
        // the principal embedding is a ring map
        let (p, q) = (x.to_complex(), y.to_complex());
        let expect = (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0);
        prop_assert!(approx((&x * &y).to_complex(), expect));
    }

    #[test]
    fn conjugation_is_an_automorphism(l in prop::sample::select(ORDERS.to_vec()), a in terms(), b in terms()) {
        let f = CyclotomicField::new(l);
        let (x, y) = (build_cyc(&f, &a), build_cyc(&f, &b));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        let (re, im) = x.to_complex();
        prop_assert!(approx(x.conj().to_complex(), (re, -im)));
        let norm = &x * &x.conj();
        let sign = scalar_real_sign(&norm).unwrap();
        prop_assert_eq!(sign, if x.is_zero() { 0 } else { 1 });
    }

    #[test]
    fn galois_maps_are_automorphisms(a in terms(), b in terms(), k in prop::sample::select(vec![1usize, 5, 7, 11])) {
        let f = CyclotomicField::new(12);
        let (x, y) = (build_cyc(&f, &a), build_cyc(&f, &b));
        prop_assert_eq!((&x * &y).galois(k), &x.galois(k) * &y.galois(k));
        prop_assert_eq!((&x + &y).galois(k), &x.galois(k) + &y.galois(k));
    }
}

fn small_matrix(field: &Arc<CyclotomicField>, rows: usize, cols: usize, entries: &[(i64, i64)]) -> Matrix {
    let mut out = Matrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let (a, e) = entries[(r * cols + c) % entries.len()];
            out[(r, c)] = Cyclotomic::zeta_pow(field, e).scale(&ratio(a, 1));
        }
    }
    out
}

fn entries() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-2i64..=2, 0i64..3), 1..30)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, e in entries()) {
        let f = CyclotomicField::new(3);
        let a = small_matrix(&f, rows, cols, &e);
        let k = kernel(&a);
        prop_assert_eq!(k.dim() + a.rank(), cols);
        prop_assert_eq!(image(&a).dim(), a.rank());
        for v in k.basis() {
            prop_assert!(a.apply(v).iter().all(Cyclotomic::is_zero));
        }
    }

    #[test]
    fn generalized_eigenspaces_fill_the_space(diag in prop::collection::vec(-2i64..=2, 1..5), e in entries()) {
        // conjugate an upper triangular matrix by a unipotent one, so all eigenvalues are rational
        let f = CyclotomicField::new(1);
        let n = diag.len();
        let mut t = Matrix::zeros(&f, n, n);
        let mut u = Matrix::identity(&f, n);
        for i in 0..n {
            t[(i, i)] = Cyclotomic::from_int(&f, diag[i]);
            for j in i + 1..n {
                t[(i, j)] = Cyclotomic::from_int(&f, e[(i * n + j) % e.len()].0);
                u[(i, j)] = Cyclotomic::from_int(&f, e[(j * n + i) % e.len()].1 - 1);
            }
        }
        let a = &(&u * &t) * &u.inverse().unwrap();
        let spaces = simultaneous_generalized_eigenspaces(std::slice::from_ref(&a)).unwrap();
        prop_assert_eq!(spaces.iter().map(|(_, s)| s.dim()).sum::<usize>(), n);
        for (lam, s) in &spaces {
            let nil = a.sub_scalar(&lam[0]).pow(s.dim() as u32);
            prop_assert!(s.basis().iter().all(|v| nil.apply(v).iter().all(Cyclotomic::is_zero)));
            let mult = diag.iter().filter(|&&d| Cyclotomic::from_int(&f, d) == lam[0]).count();
            prop_assert_eq!(s.dim(), mult);
        }
    }

    #[test]
    fn largest_invariant_subspace_is_invariant(n in 1usize..5, e1 in entries(), e2 in entries(), kdim in 0usize..5) {
        let f = CyclotomicField::new(3);
        let ops = [small_matrix(&f, n, n, &e1), small_matrix(&f, n, n, &e2)];
        let gens: Vec<_> = (0..kdim.min(n)).map(|i| small_matrix(&f, n, 1, &e2[i % e2.len()..]).col(0)).collect();
        let k = Subspace::span(&f, n, &gens);
        let w = largest_invariant_subspace(&ops, &k).unwrap();
        prop_assert!(k.contains_space(&w));
        for op in &ops {
            prop_assert!(w.basis().iter().all(|v| w.contains(&op.apply(v))));
        }
        // a common eigenvector inside K is always caught
        let kernels: Vec<_> = ops.iter().map(kernel).collect();
        let common = gghlab::linalg::intersect(&kernels[0], &kernels[1]).unwrap();
        let inside = gghlab::linalg::intersect(&common, &k).unwrap();
        prop_assert!(w.contains_space(&inside));
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn element(m: usize, n: usize) -> impl Strategy<Value = GmnElement> {
    (perm_strategy(n), prop::collection::vec(0..m as i64, n))
        .prop_map(move |(p, t)| GmnElement::new(m, &p, &t).unwrap())
}

fn group_triple() -> impl Strategy<Value = (GmnElement, GmnElement, GmnElement)> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(m, n)| (element(m, n), element(m, n), element(m, n)))
}

fn composition(n: usize, parts: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..parts, n).prop_map(move |slots| {
        let mut a = vec![0; parts];
        for s in slots {
            a[s] += 1;
        }
        a
    })
}

proptest! {
    #[test]
    fn group_axioms((x, y, z) in group_triple()) {
        let id = GmnElement::identity(x.m(), x.n());
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&id), x);
        prop_assert_eq!(id.mul(&x), x);
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert!(x.inverse().mul(&x).is_identity());
        prop_assert_eq!(reduced_word(&x).len(), x.length());
    }

    #[test]
    fn coset_representatives((n, a, w) in (1usize..=5).prop_flat_map(|n| (Just(n), composition(n, 3), perm_strategy(n)))) {
        let reps = min_coset_reps(2, n, &a).unwrap().reps;
        let multinomial = (1..=n).product::<usize>() / a.iter().map(|&k| (1..=k).product::<usize>()).product::<usize>();
        prop_assert_eq!(reps.len(), multinomial);
        for c in &reps {
            // positive roots of the parabolic stay positive
            for (s, e) in block_ranges(&a) {
                for i in s..e {
                    for j in i + 1..e {
                        prop_assert!(c.w(i) < c.w(j));
                    }
                }
            }
        }
        let w = GmnElement::from_perm(2, &w).unwrap();
        let (c, p) = split_coset(&w, &a);
        prop_assert!(reps.contains(&c));
        prop_assert!(in_parabolic(&p, &a));
        prop_assert_eq!(c.mul(&p), w);
        prop_assert_eq!(c.length() + p.length(), w.length());
    }
}

fn clifford(n: usize, field: &Arc<CyclotomicField>, terms: &[(u32, i64)]) -> CliffordElement {
    let mut out = CliffordElement::zero(n, field);
    for &(mask, c) in terms {
        out.add_term(mask & ((1 << n) - 1), &Scalar::from_int(field, c));
    }
    out
}

fn cl_terms() -> impl Strategy<Value = Vec<(u32, i64)>> {
    prop::collection::vec((0u32..32, -3i64..=3), 0..6)
}

/// e_S^t computed as the reversed product of -e_i.
fn transpose_by_words(x: &CliffordElement) -> CliffordElement {
    let n = x.n();
    let f = x.field().clone();
    let mut out = CliffordElement::zero(n, &f);
    for (s, c) in x.terms() {
        let mut prod = CliffordElement::one(n, &f);
        for i in (1..=n).rev().filter(|i| s & (1 << (i - 1)) != 0) {
            prod = &prod * &(-&CliffordElement::e(n, i, &f));
        }
        out = &out + &prod.scale(c);
    }
    out
}

proptest! {
    #[test]
    fn clifford_structure(n in 1usize..=5, a in cl_terms(), b in cl_terms(), c in cl_terms()) {
        let f = CyclotomicField::new(1);
        let (x, y, z) = (clifford(n, &f, &a), clifford(n, &f, &b), clifford(n, &f, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        let eps = |v: &CliffordElement| v.cl_grading(Grading::Epsilon);
        let tr = |v: &CliffordElement| v.cl_grading(Grading::Transpose);
        prop_assert_eq!(eps(&(&x * &y)), &eps(&x) * &eps(&y));
        prop_assert_eq!(tr(&(&x * &y)), &tr(&y) * &tr(&x));
        prop_assert_eq!(eps(&tr(&x)), tr(&eps(&x)));
        prop_assert_eq!(tr(&x), transpose_by_words(&x));
        for i in 1..=n {
            let e = CliffordElement::e(n, i, &f);
            prop_assert_eq!(&e * &e, CliffordElement::one(n, &f).scale(&Scalar::from_int(&f, -1)));
        }
    }
}

#[test]
fn dirac_derivation_is_a_graded_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e1b);
    for (m, n) in [(1, 2), (2, 2), (1, 3), (3, 2)] {
        let d = Descriptor::dunkl_opdam(m, n).unwrap();
        let f = d.field().clone();
        let random_hc = |rng: &mut ChaCha8Rng| {
            let a = random_element(&d, rng, 2, 1);
            let mask: Mask = rng.gen_range(0..1 << n);
            HCElement::tensor(&a, &CliffordElement::monomial(n, mask, Scalar::one(&f)))
        };
        for _ in 0..8 {
            let a = random_hc(&mut rng);
            let b = random_hc(&mut rng);
            let lhs = dirac_derivation(&(&a * &b));
            let rhs = &(&dirac_derivation(&a) * &b) + &(&a.grading() * &dirac_derivation(&b));
            assert_eq!(lhs, rhs, "m = {m}, n = {n}");
        }
    }
}

/// The automorphism of C(V) sending e_i to e_{w(i)}, on the basis e_S.
fn clifford_permutation(w: &[usize], field: &Arc<CyclotomicField>) -> Matrix {
    let n = w.len();
    let mut out = Matrix::zeros(field, 1 << n, 1 << n);
    for s in 0..1u32 << n {
        let mut prod = CliffordElement::one(n, field);
        for i in (0..n).filter(|i| s & (1 << i) != 0) {
            prod = &prod * &CliffordElement::e(n, w[i] + 1, field);
        }
        for (t, c) in prod.terms() {
            out[(*t as usize, s as usize)] = c.as_constant().unwrap();
        }
    }
    out
}

fn kappa() -> Rational {
    ratio(1, 1)
}

fn sample_modules() -> Vec<HModule> {
    let one = |k, tau, z1: i64, m: usize| type_a_one_dim(k, tau, &ratio(z1, 1), &(kappa() * ratio(m as i64, 1))).unwrap();
    vec![
        parabolic_induce(&pullback_from_type_a(&[one(1, 1, 0, 2), one(1, 1, 3, 2)], &[1, 1], 2, &kappa()).unwrap()).unwrap(),
        parabolic_induce(&pullback_from_type_a(&[one(2, -1, 1, 2), one(1, 1, 0, 2)], &[2, 1], 2, &kappa()).unwrap()).unwrap(),
        parabolic_induce(&pullback_from_type_a(&[one(1, 1, 0, 3), one(1, 1, 1, 3), one(1, 1, 2, 3)], &[1, 1, 1], 3, &kappa()).unwrap()).unwrap(),
    ]
}

#[test]
fn dirac_operator_is_group_equivariant() {
    for x in sample_modules() {
        let n = x.n();
        let f = x.field().clone();
        let dm = dirac_matrix(&x).unwrap();
        for j in 1..n {
            let mut w: Vec<usize> = (0..n).collect();
            w.swap(j - 1, j);
            let g = x.s(j).unwrap().kron(&clifford_permutation(&w, &f));
            assert_eq!(&g * &dm, &dm * &g, "s{j}");
        }
        let ident = Matrix::identity(&f, 1 << n);
        for k in 1..=n {
            let g = x.g(k).kron(&ident);
            assert_eq!(&g * &dm, &dm * &g, "g{k}");
        }
    }
}

fn multinomial(a: &[usize]) -> usize {
    let fact = |k: usize| (1..=k).product::<usize>();
    fact(a.iter().sum()) / a.iter().map(|&k| fact(k)).product::<usize>()
}

#[test]
fn induction_scales_dimension_and_is_fully_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00f);
    let blocks: [&[usize]; 4] = [&[1, 1], &[2, 1], &[1, 2], &[2, 0, 1]];
    for a in blocks {
        let m = a.len();
        let sizes: Vec<usize> = a.iter().copied().filter(|&k| k > 0).collect();
        let c = kappa() * ratio(m as i64, 1);
        let make = |rng: &mut ChaCha8Rng| {
            let factors: Vec<HModule> = sizes
                .iter()
                .map(|&k| {
                    if k > 1 && rng.gen_bool(0.5) {
                        let lam: Vec<Rational> = (0..k).map(|_| ratio(rng.gen_range(-2..=2), 1)).collect();
                        type_a_principal_series(&lam, &c).unwrap()
                    } else {
                        let tau = if rng.gen_bool(0.5) { 1 } else { -1 };
                        type_a_one_dim(k, tau, &ratio(rng.gen_range(-1..=1), 1), &c).unwrap()
                    }
                })
                .collect();
            pullback_from_type_a(&factors, a, m, &kappa()).unwrap()
        };
        for _ in 0..4 {
            let u = make(&mut rng);
            let v = make(&mut rng);
            let (fu, fv) = (parabolic_induce(&u).unwrap(), parabolic_induce(&v).unwrap());
            assert_eq!(fu.dim(), multinomial(a) * u.dim(), "{a:?}");
            assert_eq!(
                hom_space(&fu, &fv).unwrap().len(),
                hom_space(&u, &v).unwrap().len(),
                "{a:?}"
            );
            let back = restrict_to_weight(&fu, a).unwrap();
            assert!(find_isomorphism(&back, &u).unwrap().is_some(), "{a:?}");
        }
    }
}
