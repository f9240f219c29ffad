use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::descriptor::Descriptor;
use super::families::{family, Family};
use crate::error::{Error, Result};
use crate::group::{enumerate_group, GmnElement};
use crate::linalg::{image, kernel, restrict, Matrix};
use crate::report::CheckReport;
use crate::scalar::{rat, Cyclotomic, CyclotomicField, Scalar};

/// The bilinear forms b_g on V = Q^n, where b_g(v_i, v_j) is the coefficient of g
/// in [zt_i, zt_j].
#[derive(Clone, Debug, PartialEq)]
pub struct BForms {
    n: usize,
    field: Arc<CyclotomicField>,
    forms: BTreeMap<GmnElement, Vec<Vec<Scalar>>>,
}

impl BForms {
    pub fn empty(n: usize, field: &Arc<CyclotomicField>) -> Self {
        BForms {
            n,
            field: field.clone(),
            forms: BTreeMap::new(),
        }
    }

    /// Build from explicit matrices, dropping zero forms.
    pub fn from_forms(
        n: usize,
        field: &Arc<CyclotomicField>,
        forms: BTreeMap<GmnElement, Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let mut out = Self::empty(n, field);
        for (g, b) in forms {
            if b.len() != n || b.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!("b_{g} must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..n {
                    if b[i][j] != -&b[j][i] {
                        return Err(Error::NotAntisymmetric(i + 1, j + 1));
                    }
                }
            }
            if b.iter().flatten().any(|x| !x.is_zero()) {
                out.forms.insert(g, b);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn forms(&self) -> &BTreeMap<GmnElement, Vec<Vec<Scalar>>> {
        &self.forms
    }

    /// G(b), the elements with b_g != 0.
    pub fn support(&self) -> Vec<GmnElement> {
        self.forms.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn get(&self, g: &GmnElement) -> Option<&Vec<Vec<Scalar>>> {
        self.forms.get(g)
    }

    /// The zero form when g is outside the support.
    pub fn form(&self, g: &GmnElement) -> Vec<Vec<Scalar>> {
        self.forms
            .get(g)
            .cloned()
            .unwrap_or_else(|| vec![vec![Scalar::zero(&self.field); self.n]; self.n])
    }

    /// b_g(u, v) for coordinate vectors u, v.
    pub fn eval(&self, g: &GmnElement, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        if let Some(b) = self.forms.get(g) {
            for i in 0..self.n {
                for j in 0..self.n {
                    if !b[i][j].is_zero() {
                        acc.add_assign_ref(&(&(&u[i] * &b[i][j]) * &v[j]));
                    }
                }
            }
        }
        acc
    }

    /// Support elements lying in the torus Ker rho.
    pub fn kernel_support(&self) -> Vec<GmnElement> {
        self.forms.keys().filter(|g| g.in_kernel_of_rho()).copied().collect()
    }
}

/// Read off b from the commutators [zt_i, zt_j], without the torus assertion.
/// Works in either mode.
pub fn extract_bforms_raw(desc: &Arc<Descriptor>) -> Result<BForms> {
    let n = desc.n();
    let field = desc.field();
    let zt = family(desc, Family::ZTilde);
    let mut forms: BTreeMap<GmnElement, Vec<Vec<Scalar>>> = BTreeMap::new();
    let zero = Scalar::zero(field);
    for i in 0..n {
        for j in i + 1..n {
            let c = zt[i].commutator(&zt[j])?;
            let degree = c.z_degree();
            if degree > 0 {
                return Err(Error::NotInGroupAlgebra { i: i + 1, j: j + 1, degree });
            }
            for ((g, _), x) in c.terms() {
                let b = forms
                    .entry(*g)
                    .or_insert_with(|| vec![vec![zero.clone(); n]; n]);
                b[i][j] = x.clone();
                b[j][i] = -x;
            }
        }
    }
    BForms::from_forms(n, field, forms)
}

/// b extracted from the Drinfeld generators; fails if some [zt_i, zt_j] has positive
/// z-degree or if b_g != 0 for a torus element g.
pub fn extract_bforms(desc: &Arc<Descriptor>) -> Result<BForms> {
    if !desc.is_dunkl_opdam() {
        return Err(Error::Mode("b-forms are extracted from the Dunkl-Opdam descriptor".into()));
    }
    let b = extract_bforms_raw(desc)?;
    if let Some(g) = b.kernel_support().first() {
        return Err(Error::Precondition(format!("b_{g} is nonzero on Ker rho")));
    }
    Ok(b)
}

/// rho(g) on the permutation module: v_i -> v_{w(i)}.
pub fn permutation_rho(g: &GmnElement, field: &Arc<CyclotomicField>) -> Matrix {
    let n = g.n();
    let mut r = Matrix::zeros(field, n, n);
    for i in 0..n {
        r[(g.w(i), i)] = Cyclotomic::one(field);
    }
    r
}

// rho(g)^T B rho(g), the form (u, v) -> B(rho(g)u, rho(g)v)
fn pullback(b: &[Vec<Scalar>], r: &Matrix) -> Vec<Vec<Scalar>> {
    let n = b.len();
    let field = r.field();
    let mut out = vec![vec![Scalar::zero(field); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Scalar::zero(field);
            for k in 0..n {
                if r[(k, i)].is_zero() {
                    continue;
                }
                for l in 0..n {
                    if r[(l, j)].is_zero() || b[k][l].is_zero() {
                        continue;
                    }
                    acc.add_assign_ref(&b[k][l].scale_cyc(&(&r[(k, i)] * &r[(l, j)])));
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

fn at_kappa_one(b: &[Vec<Scalar>], field: &Arc<CyclotomicField>) -> Matrix {
    let one = rat(1);
    let rows = b
        .iter()
        .map(|r| r.iter().map(|x| x.eval_kappa(&one)).collect())
        .collect();
    Matrix::from_rows(field, rows).expect("square form")
}

fn generators(m: usize, n: usize) -> Vec<GmnElement> {
    let mut gens: Vec<GmnElement> = (1..n).map(|j| GmnElement::s(m, n, j)).collect();
    if m > 1 {
        gens.extend((1..=n).map(|k| GmnElement::g(m, n, k, 1)));
    }
    gens
}

/// Evaluate the three Drinfeld conditions on b, one report entry per (g, condition).
///
/// Condition (1) is checked exactly with kappa formal, over all of G when |G| <= 500
/// and over the generators otherwise. Conditions (2) and (3) are evaluated at kappa = 1.
pub fn drinfeld_conditions(
    m: usize,
    n: usize,
    rho: &dyn Fn(&GmnElement) -> Matrix,
    b: &BForms,
) -> CheckReport {
    let mut report = CheckReport::new();
    let field = b.field().clone();
    let group = enumerate_group(m, n);
    let conj_set: Vec<GmnElement> = if group.len() <= 500 {
        group.clone()
    } else {
        generators(m, n)
    };

    // (1) b_{g^-1 h g}(u,v) = b_h(rho(g)u, rho(g)v)
    for g in &conj_set {
        let gi = g.inverse();
        let r = rho(g);
        let mut hs: BTreeSet<GmnElement> = b.forms().keys().copied().collect();
        for k in b.forms().keys() {
            hs.insert(g.mul(k).mul(&gi));
        }
        let mut ok = true;
        let mut witness = String::new();
        for h in &hs {
            let lhs = b.form(&gi.mul(h).mul(g));
            let rhs = pullback(&b.form(h), &r);
            if lhs != rhs {
                ok = false;
                witness = format!("h = {h}");
                break;
            }
        }
        report.record(format!("drinfeld (1) g = {g}"), ok, || witness);
    }

    for g in b.support() {
        if g.in_kernel_of_rho() {
            continue;
        }
        let rg = rho(&g);
        let id = Matrix::identity(&field, n);
        let fixed = kernel(&(&rg - &id));
        let bk = kernel(&at_kappa_one(&b.form(&g), &field));
        let same = bk.contains_space(&fixed) && fixed.contains_space(&bk);
        report.record(format!("drinfeld (2) ker b_g = V^g, g = {g}"), same, || {
            format!("dim ker b_g = {}, dim V^g = {}", bk.dim(), fixed.dim())
        });
        let codim_ok = fixed.dim() + 2 == n;
        report.record(format!("drinfeld (2) codim 2, g = {g}"), codim_ok, || {
            format!("dim V^g = {}", fixed.dim())
        });

        // (3) det(h | im(1 - rho(g))) = 1 for h in the centralizer of g
        let perp = image(&(&id - &rg));
        let mut ok = true;
        let mut witness = String::new();
        for h in group.iter().filter(|h| h.mul(&g) == g.mul(h)) {
            let rh = rho(h);
            match restrict(&rh, &perp) {
                Ok(res) => {
                    let d = res.det();
                    if !d.is_one() {
                        ok = false;
                        witness = format!("h = {h}, det = {d}");
                        break;
                    }
                }
                Err(e) => {
                    ok = false;
                    witness = format!("h = {h}: {e}");
                    break;
                }
            }
        }
        report.record(format!("drinfeld (3) g = {g}"), ok, || witness);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_forms_vanish() {
        for m in 1..=3 {
            let d = Descriptor::dunkl_opdam(m, 2).unwrap();
            assert!(extract_bforms(&d).unwrap().is_empty());
        }
    }

    #[test]
    fn type_a_n3_support_is_three_cycles() {
        let d = Descriptor::dunkl_opdam(1, 3).unwrap();
        let b = extract_bforms(&d).unwrap();
        assert!(!b.is_empty());
        for g in b.support() {
            assert_eq!(g.fixed_dim(), 1, "{g} is not a 3-cycle");
        }
        let q = d.field().clone();
        let rep = drinfeld_conditions(1, 3, &|g| permutation_rho(g, &q), &b);
        assert!(rep
            .entries
            .iter()
            .filter(|e| e.check.starts_with("drinfeld (1)"))
            .all(|e| e.status == crate::report::Status::Pass));
    }

    #[test]
    fn zero_forms_pass_vacuously() {
        let q = CyclotomicField::new(2);
        let b = BForms::empty(3, &q);
        let rep = drinfeld_conditions(2, 3, &|g| permutation_rho(g, &q), &b);
        assert!(rep.all_pass());
    }

    #[test]
    fn torus_support_is_empty() {
        for (m, n) in [(2, 3), (3, 3)] {
            let d = Descriptor::dunkl_opdam(m, n).unwrap();
            assert!(extract_bforms_raw(&d).unwrap().kernel_support().is_empty());
        }
    }
}
