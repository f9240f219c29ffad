use gghlab::algebra::{
    drinfeld_conditions, extract_bforms, jacobi_pbw_check_seeded, permutation_rho, verify_presentations,
    Descriptor,
};
use gghlab::dirac::dirac_square_check;
use gghlab::group::{enumerate_group, jm_elements, reduced_word, GmnElement};
use gghlab::report::CheckReport;
use gghlab::reps::{character_module, mu_character, parabolic_induce, validate_module, HModule};
use gghlab::scalar::{rat, Cyclotomic, CyclotomicField};
use gghlab::Result;

pub const SUITES: [&str; 7] = ["group", "jm", "phi", "presentations", "drinfeld", "jacobi", "dirac"];

/// Working-set estimate m^n n! 2^n, saturating.
pub fn working_set(m: usize, n: usize) -> u128 {
    let mut w: u128 = 1;
    for k in 1..=n as u128 {
        w = w.saturating_mul(m as u128).saturating_mul(k).saturating_mul(2);
    }
    w
}

pub fn run(suite: &str, m: usize, n: usize, seed: u64) -> Result<CheckReport> {
    match suite {
        "group" => Ok(group_suite(m, n)),
        "jm" => jm_suite(m, n),
        "phi" => {
            let mut r = CheckReport::new();
            for e in verify_presentations(&Descriptor::dunkl_opdam(m, n)?)?.entries {
                if e.check.starts_with("Phi") {
                    r.entries.push(e);
                }
            }
            Ok(r)
        }
        "presentations" => verify_presentations(&Descriptor::dunkl_opdam(m, n)?),
        "drinfeld" => drinfeld_suite(m, n),
        "jacobi" => Ok(jacobi_pbw_check_seeded(&Descriptor::dunkl_opdam(m, n)?, seed)),
        "dirac" => dirac_suite(m, n),
        other => unreachable!("unknown suite {other}"),
    }
}

fn group_suite(m: usize, n: usize) -> CheckReport {
    let mut r = CheckReport::new();
    let group = enumerate_group(m, n);
    let order = m.pow(n as u32) * (1..=n).product::<usize>();
    r.record(format!("|G({m},1,{n})| = {order}"), group.len() == order, || {
        format!("enumerated {}", group.len())
    });
    let id = GmnElement::identity(m, n);
    let bad_inv = group.iter().find(|x| !x.mul(&x.inverse()).is_identity());
    r.record("x x^-1 = 1", bad_inv.is_none(), || format!("x = {}", bad_inv.unwrap()));
    let bad_word = group.iter().find(|x| {
        let word = reduced_word(x);
        let prod = word.iter().fold(id, |acc, &j| acc.mul(&GmnElement::s(m, n, j)));
        prod != x.perm_part() || word.len() != x.length()
    });
    r.record("reduced words multiply back to the permutation part", bad_word.is_none(), || {
        format!("x = {}", bad_word.unwrap())
    });
    for j in 1..n {
        let s = GmnElement::s(m, n, j);
        r.record(format!("s{j}^2 = 1"), s.mul(&s).is_identity(), String::new);
        if j + 1 < n {
            let t = GmnElement::s(m, n, j + 1);
            let lhs = s.mul(&t).mul(&s);
            r.record(format!("s{j} s{} s{j} = s{} s{j} s{}", j + 1, j + 1, j + 1), lhs == t.mul(&s).mul(&t), || {
                format!("{lhs}")
            });
        }
        for k in 1..=n {
            let g = GmnElement::g(m, n, k, 1);
            let t = if k == j { j + 1 } else if k == j + 1 { j } else { k };
            let lhs = s.mul(&g).mul(&s);
            r.record(format!("s{j} g{k} s{j} = g{t}"), lhs == GmnElement::g(m, n, t, 1), || format!("{lhs}"));
        }
    }
    for k in 1..=n {
        let g = GmnElement::g(m, n, k, 1);
        r.record(format!("g{k}^{m} = 1"), g.pow(m).is_identity(), String::new);
    }
    r
}

fn jm_suite(m: usize, n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let field = CyclotomicField::new(m);
    let (big, bar) = jm_elements(m, n, &field);
    for i in 0..n {
        for j in i + 1..n {
            let c = big[i].commutator(&big[j]);
            r.record(format!("[M{},M{}] = 0 in CG", i + 1, j + 1), c.is_zero(), || c.to_string());
            let c = bar[i].commutator(&bar[j]);
            r.record(format!("[Mbar{},Mbar{}] = 0 in CG", i + 1, j + 1), c.is_zero(), || c.to_string());
        }
    }
    for e in verify_presentations(&Descriptor::dunkl_opdam(m, n)?)?.entries {
        if e.check.contains('M') && !e.check.starts_with("Phi") {
            r.entries.push(e);
        }
    }
    Ok(r)
}

fn drinfeld_suite(m: usize, n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let desc = Descriptor::dunkl_opdam(m, n)?;
    let b = match extract_bforms(&desc) {
        Ok(b) => {
            r.pass("[zt_i, zt_j] has z-degree 0 for all i < j");
            b
        }
        Err(e) => {
            r.fail("[zt_i, zt_j] has z-degree 0 for all i < j", e.to_string());
            return Ok(r);
        }
    };
    r.info("support of b", b.support().len().to_string());
    let ker = b.kernel_support();
    r.record("b_g = 0 for g in Ker rho", ker.is_empty(), || format!("g = {}", ker[0]));
    let field = b.field().clone();
    r.extend(drinfeld_conditions(m, n, &|g: &GmnElement| permutation_rho(g, &field), &b));
    Ok(r)
}

fn dirac_suite(m: usize, n: usize) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let rep = dirac_square_check(&Descriptor::dunkl_opdam(m, n)?)?;
    r.record("residual1 = 0: D^2 = -h (x) 1 + 1/2 sum g (x) kappa_g", rep.lemma_pass(), || {
        rep.residual1.to_string()
    });
    r.info("support of b", rep.support_size.to_string());
    match rep.casimir_pass() {
        Some(ok) => r.record("residual2 = 0: Casimir form of D^2", ok, || {
            rep.residual2.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }),
        None => r.info(
            "residual2",
            format!("{} support elements have no reflection-pair decomposition", rep.ineligible.len()),
        ),
    }
    Ok(r)
}

/// Deliberate corruptions that the checks above must catch.
pub fn negative_controls(m: usize, n: usize, seed: u64) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let bad = jacobi_pbw_check_seeded(&Descriptor::negative_control(m, n)?, seed);
    r.record(
        "mismatched eps range fails the PBW/Jacobi check",
        !bad.all_pass(),
        || "every check passed on the corrupted descriptor".into(),
    );
    let field = CyclotomicField::new(m);
    let mut a = vec![0; m];
    a[0] = n;
    let mu = mu_character(&a, m, n)?;
    let zero: Vec<Cyclotomic> = (0..n).map(|_| Cyclotomic::zero(&field)).collect();
    let x = parabolic_induce(&character_module(m, &field, &rat(1), &mu.exponents, &zero)?)?;
    let corrupted = corrupt(&x);
    let rep = validate_module(&corrupted);
    r.record(
        "a corrupted z-matrix fails module validation",
        !rep.all_pass(),
        || "the corrupted module validated".into(),
    );
    Ok(r)
}

fn corrupt(x: &HModule) -> HModule {
    let mut z = x.z_matrices().to_vec();
    let one = Cyclotomic::one(x.field());
    let cur = &z[0][(0, 0)] + &one;
    z[0][(0, 0)] = cur;
    HModule::new(
        x.m(),
        x.n(),
        x.field(),
        x.kappa().clone(),
        x.parabolic().map(<[usize]>::to_vec),
        x.s_matrices().to_vec(),
        x.g_matrices().to_vec(),
        z,
    )
    .expect("shapes are unchanged")
}
