//! The acceptance criteria, one line each. Run with
//! `cargo test -p gghlab-core --test acceptance --release`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use gghlab::algebra::{
    casimirs, drinfeld_conditions, extract_bforms, extract_bforms_raw, jacobi_pbw_check, permutation_rho,
    verify_presentations, Descriptor,
};
use gghlab::clifford::CliffordElement;
use gghlab::dirac::{dirac_cohomology_blockwise, dirac_square_check, weight_space_dirac, HCElement};
use gghlab::group::{compositions, min_coset_reps, GmnElement};
use gghlab::langlands::{
    act_on_weight, census, langlands_data, langlands_quotient, rho_height, sf_decompose, RootFrame,
};
use gghlab::linalg::Matrix;
use gghlab::reps::{
    character_module, find_isomorphism, hom_space, irreducibility, mu_character, parabolic_induce,
    pullback_from_type_a, restrict_to_weight, type_a_one_dim, type_a_principal_series, HModule,
};
use gghlab::scalar::{rat, ratio, Cyclotomic, CyclotomicField, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALGEBRA_CASES: [(usize, usize); 7] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4)];
const DIRAC_CASES: [(usize, usize); 5] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)];

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: gghlab::Error) -> String {
    e.to_string()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn partitions(n: usize, max: usize) -> usize {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
}

fn multipartitions(m: usize, n: usize) -> usize {
    compositions(n, m)
        .iter()
        .map(|a| a.iter().map(|&k| partitions(k, k)).product::<usize>())
        .sum()
}

fn presentations() -> Outcome {
    for (m, n) in ALGEBRA_CASES {
        let r = verify_presentations(&Descriptor::dunkl_opdam(m, n).map_err(err)?).map_err(err)?;
        let phi = r.entries.iter().filter(|e| e.check.starts_with("Phi(M")).count();
        ensure(phi == n, || format!("({m},{n}): {phi} Phi(M_i) checks"))?;
        if let Some(f) = r.failures().first() {
            return Err(format!("({m},{n}) {}: {}", f.check, f.witness.clone().unwrap_or_default()));
        }
    }
    Ok(())
}

fn drinfeld() -> Outcome {
    for (m, n) in ALGEBRA_CASES {
        let desc = Descriptor::dunkl_opdam(m, n).map_err(err)?;
        // fails unless every [zt_i, zt_j] has z-degree 0
        let b = extract_bforms(&desc).map_err(err)?;
        ensure(b.kernel_support().is_empty(), || format!("({m},{n}): b_g != 0 on Ker rho"))?;
        let field = b.field().clone();
        let r = drinfeld_conditions(m, n, &|g: &GmnElement| permutation_rho(g, &field), &b);
        let cond1: Vec<_> = r.entries.iter().filter(|e| e.check.starts_with("drinfeld (1)")).collect();
        ensure(!cond1.is_empty(), || format!("({m},{n}): no condition (1) entries"))?;
        if let Some(f) = cond1.iter().find(|e| e.witness.is_some()) {
            return Err(format!("({m},{n}) {}", f.check));
        }
    }
    Ok(())
}

fn jacobi() -> Outcome {
    for (m, n) in ALGEBRA_CASES {
        let r = jacobi_pbw_check(&Descriptor::dunkl_opdam(m, n).map_err(err)?);
        ensure(r.entries.iter().any(|e| e.check.starts_with("associativity on 100")), || {
            format!("({m},{n}): no associativity entry")
        })?;
        if let Some(f) = r.failures().first() {
            return Err(format!("({m},{n}) {}", f.check));
        }
        let bad = jacobi_pbw_check(&Descriptor::negative_control(m, n).map_err(err)?);
        ensure(!bad.all_pass(), || format!("({m},{n}): negative control passed"))?;
    }
    Ok(())
}

fn dirac_square() -> Outcome {
    for (m, n) in DIRAC_CASES {
        let desc = Descriptor::dunkl_opdam(m, n).map_err(err)?;
        let rep = dirac_square_check(&desc).map_err(err)?;
        ensure(rep.residual1.is_zero(), || format!("({m},{n}): residual1 = {}", rep.residual1))?;
        if n == 2 {
            let b = extract_bforms_raw(&desc).map_err(err)?;
            ensure(b.is_empty(), || format!("({m},{n}): G(b) is not empty"))?;
            let h = casimirs(&desc, &b).map_err(err)?.h;
            let minus_h = &HCElement::zero(&desc) - &HCElement::tensor(&h, &CliffordElement::one(n, desc.field()));
            ensure(rep.d_squared == minus_h, || format!("({m},{n}): D^2 != -h (x) 1"))?;
        }
    }
    Ok(())
}

/// The 1-dim stab(mu_a)-module from Steinberg-type factors centred at 0.
fn one_dim_stab(a: &[usize], m: usize) -> HModule {
    let c = rat(m as i64);
    let factors: Vec<HModule> = a
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| {
            // z_j = z1 - (j-1) c, centred
            let z1 = &c * ratio(k as i64 - 1, 2);
            type_a_one_dim(k, -1, &z1, &c).unwrap()
        })
        .collect();
    pullback_from_type_a(&factors, a, m, &rat(1)).unwrap()
}

fn blocks() -> Outcome {
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        let comps = compositions(n, m);
        ensure(comps.len() == binomial(n + m - 1, m - 1), || format!("({m},{n}): {} blocks", comps.len()))?;
        let mut induced = Vec::new();
        for a in &comps {
            let u = one_dim_stab(a, m);
            let x = parabolic_induce(&u).map_err(err)?;
            let rep = irreducibility(&x).map_err(err)?;
            ensure(rep.irreducible && rep.end_dim == 1, || format!("({m},{n}) {a:?}: F(U) not simple"))?;
            let back = restrict_to_weight(&x, a).map_err(err)?;
            ensure(find_isomorphism(&back, &u).map_err(err)?.is_some(), || {
                format!("({m},{n}) {a:?}: F^-1 F(U) is not U")
            })?;
            induced.push(x);
        }
        for i in 0..induced.len() {
            for j in 0..induced.len() {
                if i != j {
                    ensure(hom_space(&induced[i], &induced[j]).map_err(err)?.is_empty(), || {
                        format!("({m},{n}): Hom between blocks {i} and {j}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn eps_dichotomy_on(u: &HModule, a: &[usize]) -> Outcome {
    let mu = mu_character(a, u.m(), u.n()).map_err(err)?;
    let id = Matrix::identity(u.field(), u.dim());
    for i in 1..=u.n() {
        for j in i + 1..=u.n() {
            let e = u.eps_matrix(i, j).map_err(err)?;
            let expect = if mu.exponents[i - 1] == mu.exponents[j - 1] {
                id.scale_rational(&rat(u.m() as i64))
            } else {
                Matrix::zeros(u.field(), u.dim(), u.dim())
            };
            ensure(e == expect, || format!("{a:?}: eps({i},{j})"))?;
        }
    }
    Ok(())
}

fn criterion7_modules() -> Vec<(Vec<usize>, HModule, Option<Vec<HModule>>)> {
    let f = CyclotomicField::new(2);
    let zero = vec![Cyclotomic::zero(&f); 2];
    let ps11 = parabolic_induce(&character_module(2, &f, &rat(1), &[0, 1], &zero).unwrap()).unwrap();
    let st = type_a_one_dim(2, -1, &rat(1), &rat(2)).unwrap();
    let ps = type_a_principal_series(&[rat(0), rat(0)], &rat(2)).unwrap();
    let pull = |x: &HModule| pullback_from_type_a(std::slice::from_ref(x), &[2, 0], 2, &rat(1)).unwrap();
    vec![
        (vec![1, 1], ps11, None),
        (vec![2, 0], pull(&st), Some(vec![st])),
        (vec![2, 0], pull(&ps), Some(vec![ps])),
    ]
}

fn eps_dichotomy() -> Outcome {
    for (m, n) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4)] {
        for a in compositions(n, m) {
            eps_dichotomy_on(&one_dim_stab(&a, m), &a)?;
        }
    }
    for (a, x, _) in criterion7_modules() {
        eps_dichotomy_on(&restrict_to_weight(&x, &a).map_err(err)?, &a)?;
    }
    Ok(())
}

fn dirac_blocks() -> Outcome {
    for (k, (a, x, factors)) in criterion7_modules().into_iter().enumerate() {
        let rep = dirac_cohomology_blockwise(&x, &a, factors.as_deref()).map_err(err)?;
        if k == 0 {
            // two cosets, and the 1-dim parabolic module contributes all of the 2^2-dim spinors
            let cosets = min_coset_reps(2, 2, &a).map_err(err)?.reps.len();
            ensure(cosets == 2 && rep.lhs_dimension == cosets * 2 * 2, || {
                format!("{a:?}: lhs {}", rep.lhs_dimension)
            })?;
            ensure(rep.characters_agree(), || format!("{a:?}: characters differ"))?;
        }
        ensure(rep.lhs_dimension == rep.rhs_dimension, || {
            format!("{a:?} module {k}: lhs {} vs rhs {}", rep.lhs_dimension, rep.rhs_dimension)
        })?;
    }
    Ok(())
}

fn weight_space_lemma() -> Outcome {
    for (k, (a, x, _)) in criterion7_modules().into_iter().enumerate() {
        let (restricted, parabolic) = weight_space_dirac(&x, &a).map_err(err)?;
        ensure(restricted == parabolic, || format!("{a:?} module {k}"))?;
    }
    Ok(())
}

fn langlands() -> Outcome {
    // S_F uniqueness; sf_decompose panics unless exactly one subset fits
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for n in 2..=4 {
        let fr = RootFrame::new(n);
        for _ in 0..1000 {
            let raw: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect();
            let x = fr.project(&raw);
            let d = sf_decompose(&fr, &x).map_err(err)?;
            ensure(d.reconstruct(&fr) == x, || format!("{x:?} is not reconstructed"))?;
        }
    }
    // rho drops under every nontrivial minimal coset representative
    let grid = [ratio(1, 3), rat(1), ratio(7, 2)];
    let dgrid = [rat(0), ratio(1, 2), rat(2)];
    for n in 2..=4 {
        let fr = RootFrame::new(n);
        for mask in 0u32..1 << (n - 1) {
            let roots: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let comp = gghlab::group::blocks_of_simple_roots(n, &roots).map_err(err)?;
            let reps = min_coset_reps(1, n, &comp).map_err(err)?.reps;
            let mut points = vec![vec![Rational::zero(); n]];
            for j in 1..n {
                let choices = if roots.contains(&j) { &dgrid } else { &grid };
                let mut next = Vec::new();
                for p in &points {
                    for c in choices {
                        let mut q = p.clone();
                        let (dir, coef) = if roots.contains(&j) {
                            (fr.coroot(j), -c.clone())
                        } else {
                            (fr.beta(j), c.clone())
                        };
                        for (a, b) in q.iter_mut().zip(dir) {
                            *a += &coef * b;
                        }
                        next.push(q);
                    }
                }
                points = next;
            }
            for x in &points {
                for w in reps.iter().filter(|w| !w.is_identity()) {
                    let perm: Vec<usize> = (0..n).map(|i| w.w(i)).collect();
                    ensure(rho_height(&fr, &act_on_weight(&perm, x)) < rho_height(&fr, x), || {
                        format!("n = {n}, w = {w}, x = {x:?}")
                    })?;
                }
            }
        }
    }
    // every strictly dominant 1-dim datum for (2,2)
    let fr = RootFrame::new(2);
    let f = CyclotomicField::new(2);
    let mut data: Vec<HModule> = Vec::new();
    for chi in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        for a in -2i64..=2 {
            for b in a + 1..=2 {
                let lam = [Cyclotomic::from_int(&f, a), Cyclotomic::from_int(&f, b)];
                data.push(character_module(2, &f, &rat(1), &chi, &lam).map_err(err)?);
            }
        }
    }
    for block in [[2, 0], [0, 2]] {
        for t in -1i64..=1 {
            let st = type_a_one_dim(2, -1, &rat(t + 1), &rat(2)).map_err(err)?;
            data.push(pullback_from_type_a(&[st], &block, 2, &rat(1)).map_err(err)?);
        }
    }
    for u in &data {
        let j = langlands_quotient(u, &fr).map_err(err)?;
        ensure(irreducibility(&j).map_err(err)?.irreducible, || "J(P,U) is reducible".into())?;
        let d = langlands_data(&j, &fr).map_err(err)?;
        ensure(d.parabolic == u.roots(), || format!("P = {:?} for U over {:?}", d.parabolic, u.roots()))?;
        ensure(find_isomorphism(&d.module, u).map_err(err)?.is_some(), || "U is not recovered".into())?;
    }
    ensure(data.len() == 46, || format!("{} data", data.len()))
}

fn tempered_census() -> Outcome {
    let found = census(2, 2, &rat(1), &RootFrame::new(2)).map_err(err)?;
    let mut dims: Vec<usize> = found.iter().map(|e| e.module.dim()).collect();
    dims.sort();
    ensure(found.len() == multipartitions(2, 2) && found.len() == 5, || format!("(2,2): {} modules", found.len()))?;
    ensure(dims == vec![1, 1, 2, 2, 2], || format!("(2,2): dims {dims:?}"))?;
    let found = census(2, 3, &rat(1), &RootFrame::new(3)).map_err(err)?;
    ensure(found.len() == multipartitions(2, 3) && found.len() == 10, || format!("(2,3): {} modules", found.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("presentation suite, exact residuals", presentations),
        ("Drinfeld presentation and b_g on Ker rho", drinfeld),
        ("PBW/Jacobi with the negative control", jacobi),
        ("Dirac square residual1", dirac_square),
        ("block decomposition and F^-1 F = id", blocks),
        ("eps dichotomy on stab-modules", eps_dichotomy),
        ("blockwise Dirac cohomology", dirac_blocks),
        ("weight-space Dirac action", weight_space_lemma),
        ("Langlands: S_F, rho-drop, quotients and data", langlands),
        ("tempered census", tempered_census),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
