use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bforms::{drinfeld_conditions, extract_bforms_raw, permutation_rho};
use super::descriptor::Descriptor;
use super::element::DOElement;
use super::families::{family, jm, Family};
use crate::error::{Error, Result};
use crate::group::{dressed_sum, enumerate_group, eps, GmnElement, MAX_N};
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// Seed of the associativity spot checks.
pub const ASSOC_SEED: u64 = 0x5eed_0001;
pub const ASSOC_TRIPLES: usize = 100;

/// A random element with `terms` terms of z-degree at most `max_deg` and small
/// integer coefficients.
pub fn random_element(desc: &Arc<Descriptor>, rng: &mut ChaCha8Rng, terms: usize, max_deg: usize) -> DOElement {
    let group = enumerate_group(desc.m(), desc.n());
    let mut x = DOElement::zero(desc);
    for _ in 0..terms {
        let g = group[rng.gen_range(0..group.len())];
        let mut a = [0u8; MAX_N];
        for _ in 0..rng.gen_range(0..=max_deg) {
            a[rng.gen_range(0..desc.n())] += 1;
        }
        x.add_term(g, a, &Scalar::from_int(desc.field(), rng.gen_range(-3..=3)));
    }
    x
}

pub(crate) fn witness(x: &DOElement) -> String {
    let s = x.to_string();
    if s.len() > 240 {
        format!("{}... ({} terms)", &s[..240], x.len())
    } else {
        s
    }
}

fn zero_check(report: &mut CheckReport, name: String, residual: Result<DOElement>) {
    match residual {
        Ok(r) => report.record(name, r.is_zero(), || witness(&r)),
        Err(e) => report.fail(name, e.to_string()),
    }
}

fn s_image(j: usize, i: usize) -> usize {
    if i == j {
        j + 1
    } else if i == j + 1 {
        j
    } else {
        i
    }
}

struct Gens {
    z: Vec<DOElement>,
    s: Vec<DOElement>,
    g: Vec<DOElement>,
    kappa: DOElement,
}

impl Gens {
    fn new(desc: &Arc<Descriptor>) -> Self {
        let n = desc.n();
        Gens {
            z: (1..=n).map(|i| DOElement::z(desc, i).unwrap()).collect(),
            s: (1..n).map(|j| DOElement::s(desc, j).unwrap()).collect(),
            g: if desc.m() > 1 {
                (1..=n).map(|k| DOElement::g(desc, k, 1).unwrap()).collect()
            } else {
                Vec::new()
            },
            kappa: DOElement::scalar(desc, desc.jm_scale()),
        }
    }
}

fn ga(desc: &Arc<Descriptor>, x: &crate::group::GroupAlgebraElement) -> DOElement {
    DOElement::from_group_algebra(desc, x)
}

/// Check every displayed relation of the four presentations as exact identities.
pub fn verify_presentations(desc: &Arc<Descriptor>) -> Result<CheckReport> {
    if !desc.is_dunkl_opdam() {
        return Err(Error::Mode("presentations are stated for the Dunkl-Opdam descriptor".into()));
    }
    let (m, n) = (desc.m(), desc.n());
    let field = desc.field().clone();
    let x = Gens::new(desc);
    let y = family(desc, Family::Y);
    let yb = family(desc, Family::YBar);
    let zt = family(desc, Family::ZTilde);
    let (big, bar) = jm(desc);
    let k = &x.kappa;
    let mut r = CheckReport::new();

    // relations of the z-presentation
    for i in 0..n {
        for j in i + 1..n {
            zero_check(&mut r, format!("[z{},z{}] = 0", i + 1, j + 1), x.z[i].commutator(&x.z[j]));
        }
        for (kk, g) in x.g.iter().enumerate() {
            zero_check(&mut r, format!("[z{},g{}] = 0", i + 1, kk + 1), x.z[i].commutator(g));
        }
    }
    for j in 0..n.saturating_sub(1) {
        for i in 0..n {
            if i != j && i != j + 1 {
                zero_check(&mut r, format!("[z{},s{}] = 0", i + 1, j + 1), x.z[i].commutator(&x.s[j]));
            }
        }
        let e = ga(desc, &eps(m, n, j + 1, j + 2, &field));
        let res = &(&(&x.z[j] * &x.s[j]) - &(&x.s[j] * &x.z[j + 1])) + &(k * &e);
        r.record(format!("z{0} s{0} = s{0} z{1} - k eps", j + 1, j + 2), res.is_zero(), || witness(&res));
    }

    // y-presentation
    for j in 0..n.saturating_sub(1) {
        for i in 0..n {
            let res = &(&x.s[j] * &y[i]) - &(&y[s_image(j, i)] * &x.s[j]);
            r.record(format!("s{} y{} = y{} s{}", j + 1, i + 1, s_image(j, i) + 1, j + 1), res.is_zero(), || {
                witness(&res)
            });
        }
    }
    for (kk, g) in x.g.iter().enumerate() {
        for i in 0..n {
            zero_check(&mut r, format!("[g{},y{}] = 0", kk + 1, i + 1), g.commutator(&y[i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = ga(desc, &dressed_sum(m, n, i + 1, j + 1, &field));
            let c = y[i].commutator(&y[j])?;
            let left = &c - &(&(k * &d) * &(&y[i] - &y[j]));
            r.record(format!("[y{0},y{1}] = k D{0}{1} (y{0} - y{1})", i + 1, j + 1), left.is_zero(), || {
                witness(&left)
            });
            let literal = &c - &(&(k * &(&y[i] - &y[j])) * &d);
            r.info(
                format!("[y{0},y{1}] - k (y{0} - y{1}) D{0}{1}", i + 1, j + 1),
                if literal.is_zero() { "zero".to_string() } else { witness(&literal) },
            );
            let jm_form = &c
                - &(k * &(&x.z[j].commutator(&big[i])? - &x.z[i].commutator(&big[j])?));
            r.record(
                format!("[y{0},y{1}] = k([z{1},M{0}] - [z{0},M{1}])", i + 1, j + 1),
                jm_form.is_zero(),
                || witness(&jm_form),
            );
        }
    }

    // ybar-presentation
    for j in 0..n.saturating_sub(1) {
        for i in 0..n {
            let res = &(&x.s[j] * &yb[i]) - &(&yb[s_image(j, i)] * &x.s[j]);
            r.record(
                format!("s{} ybar{} = ybar{} s{}", j + 1, i + 1, s_image(j, i) + 1, j + 1),
                res.is_zero(),
                || witness(&res),
            );
        }
    }
    for (kk, g) in x.g.iter().enumerate() {
        for i in 0..n {
            zero_check(&mut r, format!("[g{},ybar{}] = 0", kk + 1, i + 1), g.commutator(&yb[i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = ga(desc, &dressed_sum(m, n, i + 1, j + 1, &field));
            let c = yb[i].commutator(&yb[j])?;
            let left = &c + &(&(k * &d) * &(&yb[i] - &yb[j]));
            r.record(
                format!("[ybar{0},ybar{1}] = -k D{0}{1} (ybar{0} - ybar{1})", i + 1, j + 1),
                left.is_zero(),
                || witness(&left),
            );
            let literal = &c + &(&(k * &(&yb[i] - &yb[j])) * &d);
            r.info(
                format!("[ybar{0},ybar{1}] + k (ybar{0} - ybar{1}) D{0}{1}", i + 1, j + 1),
                if literal.is_zero() { "zero".to_string() } else { witness(&literal) },
            );
        }
    }

    // Drinfeld generators
    for j in 0..n.saturating_sub(1) {
        for i in 0..n {
            let res = &(&(&x.s[j] * &zt[i]) * &x.s[j]) - &zt[s_image(j, i)];
            r.record(
                format!("s{} zt{} s{}^-1 = zt{}", j + 1, i + 1, j + 1, s_image(j, i) + 1),
                res.is_zero(),
                || witness(&res),
            );
        }
    }
    for (kk, g) in x.g.iter().enumerate() {
        for i in 0..n {
            zero_check(&mut r, format!("[g{},zt{}] = 0", kk + 1, i + 1), g.commutator(&zt[i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let c = zt[i].commutator(&zt[j])?;
            r.record(format!("[zt{},zt{}] in CG", i + 1, j + 1), c.z_degree() == 0, || {
                format!("z-degree {}", c.z_degree())
            });
        }
    }

    // Jucys-Murphy relations
    for i in 0..n {
        for j in 0..n {
            zero_check(&mut r, format!("[M{},M{}] = 0", i + 1, j + 1), big[i].commutator(&big[j]));
            zero_check(&mut r, format!("[Mbar{},Mbar{}] = 0", i + 1, j + 1), bar[i].commutator(&bar[j]));
        }
    }
    for j in 0..n.saturating_sub(1) {
        let e = ga(desc, &eps(m, n, j + 1, j + 2, &field));
        let res = &(&(&x.s[j] * &big[j]) - &(&big[j + 1] * &x.s[j])) + &e;
        r.record(format!("s{0} M{0} = M{1} s{0} - eps", j + 1, j + 2), res.is_zero(), || witness(&res));
        let res = &(&(&x.s[j] * &bar[j]) - &(&bar[j + 1] * &x.s[j])) - &e;
        r.record(format!("s{0} Mbar{0} = Mbar{1} s{0} + eps", j + 1, j + 2), res.is_zero(), || {
            witness(&res)
        });
    }

    // the automorphism Phi
    let mut phi_gens: Vec<(String, DOElement, DOElement)> = Vec::new();
    for i in 0..n {
        phi_gens.push((format!("z{}", i + 1), x.z[i].clone(), -&x.z[n - 1 - i]));
        if let Some(g) = x.g.get(i) {
            phi_gens.push((format!("g{}", i + 1), g.clone(), x.g[n - 1 - i].clone()));
        }
    }
    for j in 0..n.saturating_sub(1) {
        phi_gens.push((format!("s{}", j + 1), x.s[j].clone(), x.s[n - 2 - j].clone()));
    }
    for (name, a, expect) in &phi_gens {
        let pa = a.phi()?;
        let res = &pa - expect;
        r.record(format!("Phi({name})"), res.is_zero(), || witness(&res));
        let back = &pa.phi()? - a;
        r.record(format!("Phi(Phi({name})) = {name}"), back.is_zero(), || witness(&back));
    }
    for (na, a, _) in &phi_gens {
        for (nb, b, _) in &phi_gens {
            let res = &(a * b).phi()? - &(&a.phi()? * &b.phi()?);
            r.record(format!("Phi({na} {nb}) = Phi({na}) Phi({nb})"), res.is_zero(), || witness(&res));
        }
    }
    for i in 0..n {
        let res = &big[i].phi()? - &bar[n - 1 - i];
        r.record(format!("Phi(M{}) = Mbar{}", i + 1, n - i), res.is_zero(), || witness(&res));
        let res = &y[i].phi()? + &yb[n - 1 - i];
        r.record(format!("Phi(y{}) = -ybar{}", i + 1, n - i), res.is_zero(), || witness(&res));
    }

    // torus augmentation onto the type-A algebra with parameter m*kappa
    let c = Scalar::kappa(&field).scale(&crate::scalar::rat(m as i64));
    let target = Descriptor::type_a(n, c)?;
    let mut pool: Vec<(String, DOElement)> = Vec::new();
    for i in 0..n {
        pool.push((format!("z{}", i + 1), x.z[i].clone()));
    }
    for j in 0..n.saturating_sub(1) {
        pool.push((format!("s{}", j + 1), x.s[j].clone()));
    }
    for (kk, g) in x.g.iter().enumerate() {
        pool.push((format!("g{}", kk + 1), g.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED ^ 0xa5);
    for t in 0..8 {
        let a = random_element(desc, &mut rng, 2, 2);
        pool.push((format!("random{t}"), a));
    }
    let mut ok = true;
    let mut wit = String::new();
    'outer: for (na, a) in &pool {
        for (nb, b) in &pool {
            let lhs = (a * b).torus_augmentation(&target);
            let rhs = &a.torus_augmentation(&target) * &b.torus_augmentation(&target);
            if lhs != rhs {
                ok = false;
                wit = format!("{na} * {nb}: {}", witness(&(&lhs - &rhs)));
                break 'outer;
            }
        }
    }
    r.record(format!("torus augmentation onto type A with c = {m}k is multiplicative"), ok, || wit);
    Ok(r)
}

/// Consistency of the rewriting system: Jacobi identities, group equivariance,
/// seeded associativity and the ambiguity overlaps.
pub fn jacobi_pbw_check(desc: &Arc<Descriptor>) -> CheckReport {
    jacobi_pbw_check_seeded(desc, ASSOC_SEED)
}

/// As `jacobi_pbw_check`, with the associativity triples drawn from `seed`.
pub fn jacobi_pbw_check_seeded(desc: &Arc<Descriptor>, seed: u64) -> CheckReport {
    let (m, n) = (desc.m(), desc.n());
    let field = desc.field().clone();
    let x = Gens::new(desc);
    let zt = family(desc, Family::ZTilde);
    let mut r = CheckReport::new();

    // (a) cyclic Jacobi sums
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                triples.push((i, j, k));
            }
        }
    }
    let results: Vec<(String, Result<DOElement>)> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let f = |a: &DOElement, b: &DOElement, c: &DOElement| -> Result<DOElement> {
                a.commutator(b)?.commutator(c)
            };
            let res = (|| {
                Ok(&(&f(&zt[i], &zt[j], &zt[k])? + &f(&zt[j], &zt[k], &zt[i])?) + &f(&zt[k], &zt[i], &zt[j])?)
            })();
            (format!("jacobi zt{},zt{},zt{}", i + 1, j + 1, k + 1), res)
        })
        .collect();
    for (name, res) in results {
        zero_check(&mut r, name, res);
    }

    // (b) conjugation by the group generators
    let mut gens: Vec<GmnElement> = (1..n).map(|j| GmnElement::s(m, n, j)).collect();
    if m > 1 {
        gens.extend((1..=n).map(|k| GmnElement::g(m, n, k, 1)));
    }
    for g in &gens {
        let conj: Vec<DOElement> = zt.iter().map(|v| v.conjugate_by(g)).collect();
        for i in 0..n {
            let res = &conj[i] - &zt[g.w(i)];
            r.record(format!("{g} zt{} {g}^-1 = zt{}", i + 1, g.w(i) + 1), res.is_zero(), || witness(&res));
            for j in i + 1..n {
                let res = (|| {
                    Ok(&zt[i].commutator(&zt[j])?.conjugate_by(g) - &conj[i].commutator(&conj[j])?)
                })();
                zero_check(&mut r, format!("{g} [zt{},zt{}] {g}^-1", i + 1, j + 1), res);
            }
        }
    }

    // (c) seeded associativity triples
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<[DOElement; 3]> = (0..ASSOC_TRIPLES)
        .map(|_| {
            [
                random_element(desc, &mut rng, 2, 2),
                random_element(desc, &mut rng, 2, 2),
                random_element(desc, &mut rng, 2, 2),
            ]
        })
        .collect();
    let bad: Vec<(usize, DOElement)> = samples
        .par_iter()
        .enumerate()
        .filter_map(|(t, [a, b, c])| {
            let res = &(&(a * b) * c) - &(a * &(b * c));
            (!res.is_zero()).then_some((t, res))
        })
        .collect();
    r.record(
        format!("associativity on {ASSOC_TRIPLES} seeded triples"),
        bad.is_empty(),
        || bad.first().map(|(t, res)| format!("triple {t}: {}", witness(res))).unwrap_or_default(),
    );

    // (d) cross-checks against the stated relations
    if desc.is_dunkl_opdam() {
        let k = &x.kappa;
        for j in 0..n.saturating_sub(1) {
            let e = ga(desc, &eps(m, n, j + 1, j + 2, &field));
            let res = &(&(&x.z[j] * &x.s[j]) - &(&x.s[j] * &x.z[j + 1])) + &(k * &e);
            r.record(format!("presentation cross-check z{0} s{0}", j + 1), res.is_zero(), || witness(&res));
        }
        match extract_bforms_raw(desc) {
            Ok(b) => {
                let rep = drinfeld_conditions(m, n, &|g| permutation_rho(g, &field), &b);
                let fails: Vec<_> = rep
                    .entries
                    .iter()
                    .filter(|e| e.check.starts_with("drinfeld (1)") && e.status == crate::report::Status::Fail)
                    .collect();
                r.record("drinfeld condition (1) on extracted b", fails.is_empty(), || {
                    format!("{} ({})", fails[0].check, fails[0].witness.clone().unwrap_or_default())
                });
            }
            Err(e) => r.fail("drinfeld condition (1) on extracted b", e.to_string()),
        }
    }

    // (e) overlap ambiguities of the rewriting rules
    for j in 0..n.saturating_sub(1) {
        for i in 0..n {
            for l in 0..n {
                let res = &(&(&x.z[i] * &x.z[l]) * &x.s[j]) - &(&x.z[i] * &(&x.z[l] * &x.s[j]));
                r.record(format!("overlap z{} z{} s{}", i + 1, l + 1, j + 1), res.is_zero(), || {
                    witness(&res)
                });
            }
            let res = &(&(&x.z[i] * &x.s[j]) * &x.s[j]) - &x.z[i];
            r.record(format!("overlap z{} s{} s{}", i + 1, j + 1, j + 1), res.is_zero(), || witness(&res));
            for (kk, g) in x.g.iter().enumerate() {
                let res = &(&(&x.z[i] * &x.s[j]) * g) - &(&x.z[i] * &(&x.s[j] * g));
                r.record(format!("overlap z{} s{} g{}", i + 1, j + 1, kk + 1), res.is_zero(), || {
                    witness(&res)
                });
            }
        }
        for l in j + 1..n.saturating_sub(1) {
            for i in 0..n {
                let (a, b) = (&x.s[j], &x.s[l]);
                let res = if l == j + 1 {
                    &(&(&(&x.z[i] * a) * b) * a) - &(&(&(&x.z[i] * b) * a) * b)
                } else {
                    &(&(&x.z[i] * a) * b) - &(&(&x.z[i] * b) * a)
                };
                r.record(format!("overlap z{} braid s{} s{}", i + 1, j + 1, l + 1), res.is_zero(), || {
                    witness(&res)
                });
            }
        }
    }
    for i in 0..n {
        for (kk, g) in x.g.iter().enumerate() {
            zero_check(&mut r, format!("overlap z{} g{}", i + 1, kk + 1), x.z[i].commutator(g));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn failures(r: &CheckReport) -> Vec<String> {
        r.failures()
            .iter()
            .map(|e| format!("{}: {}", e.check, e.witness.clone().unwrap_or_default()))
            .collect()
    }

    #[test]
    fn presentations_hold_small() {
        for (m, n) in [(1, 2), (1, 3), (2, 2), (3, 2)] {
            let d = Descriptor::dunkl_opdam(m, n).unwrap();
            let r = verify_presentations(&d).unwrap();
            assert!(r.all_pass(), "({m},{n}): {:?}", failures(&r));
        }
    }

    #[test]
    fn literal_right_sum_form_is_recorded_nonzero() {
        let d = Descriptor::dunkl_opdam(1, 2).unwrap();
        let r = verify_presentations(&d).unwrap();
        let e = r
            .entries
            .iter()
            .find(|e| e.check == "[y1,y2] - k (y1 - y2) D12")
            .unwrap();
        assert_eq!(e.status, Status::Info);
        assert_ne!(e.witness.as_deref(), Some("zero"));
    }

    #[test]
    fn jacobi_small() {
        for (m, n) in [(1, 2), (2, 2), (1, 3)] {
            let d = Descriptor::dunkl_opdam(m, n).unwrap();
            let r = jacobi_pbw_check(&d);
            assert!(r.all_pass(), "({m},{n}): {:?}", failures(&r));
        }
    }

    #[test]
    fn negative_control_fails() {
        let d = Descriptor::negative_control(2, 2).unwrap();
        assert!(!jacobi_pbw_check(&d).all_pass());
        assert!(!verify_presentations(&d).unwrap().all_pass());
    }

    #[test]
    fn type_a_mode_is_consistent() {
        let q = crate::scalar::CyclotomicField::new(1);
        let d = Descriptor::type_a(3, Scalar::kappa(&q)).unwrap();
        assert!(jacobi_pbw_check(&d).all_pass());
        assert!(verify_presentations(&d).is_err());
    }
}
