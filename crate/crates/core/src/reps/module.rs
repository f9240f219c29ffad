use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{jm_elements, reduced_word, GmnElement, GroupAlgebraElement};
use crate::linalg::{quotient_op, restrict, Matrix, Subspace};
use crate::report::CheckReport;
use crate::scalar::{parse_cyclotomic, parse_rational, rat, Cyclotomic, CyclotomicField, Rational};

/// A finite-dimensional module over H_DO(G(m,1,n)) with kappa specialized, or over one
/// of its parabolic subalgebras C[T x| W_P] (x) S(V).
///
/// Type-A graded Hecke modules with parameter c are stored with m = 1 and kappa = c.
#[derive(Clone, PartialEq, Eq)]
pub struct HModule {
    m: usize,
    n: usize,
    field: Arc<CyclotomicField>,
    kappa: Rational,
    // simple roots present; None for the whole algebra
    parabolic: Option<Vec<usize>>,
    dim: usize,
    s: Vec<Option<Matrix>>,
    g: Vec<Matrix>,
    z: Vec<Matrix>,
}

impl std::fmt::Debug for HModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HModule")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("L", &self.field.order())
            .field("kappa", &self.kappa.to_string())
            .field("parabolic", &self.parabolic)
            .field("dim", &self.dim)
            .finish()
    }
}

fn check_square(mat: &Matrix, dim: usize, what: &str) -> Result<()> {
    if mat.rows() != dim || mat.cols() != dim {
        return Err(Error::InvalidModule(format!(
            "{what} is {}x{}, expected {dim}x{dim}",
            mat.rows(),
            mat.cols()
        )));
    }
    Ok(())
}

impl HModule {
    /// Assemble a module from its generator matrices. Shapes are checked here, the
    /// defining relations by [`validate_module`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m: usize,
        n: usize,
        field: &Arc<CyclotomicField>,
        kappa: Rational,
        parabolic: Option<Vec<usize>>,
        s: Vec<Option<Matrix>>,
        g: Vec<Matrix>,
        z: Vec<Matrix>,
    ) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidModule("m and n must be positive".into()));
        }
        if !field.order().is_multiple_of(m) {
            return Err(Error::InvalidModule(format!(
                "field order {} is not a multiple of m = {m}",
                field.order()
            )));
        }
        if s.len() != n - 1 || g.len() != n || z.len() != n {
            return Err(Error::InvalidModule(format!(
                "expected {} s, {n} g and {n} z matrices",
                n - 1
            )));
        }
        let dim = g[0].rows();
        for (j, sj) in s.iter().enumerate() {
            let wanted = parabolic.as_ref().is_none_or(|p| p.contains(&(j + 1)));
            match (sj, wanted) {
                (Some(mat), true) => check_square(mat, dim, &format!("s{}", j + 1))?,
                (None, false) => {}
                (Some(_), false) => {
                    return Err(Error::InvalidModule(format!("s{} is outside the parabolic", j + 1)))
                }
                (None, true) => return Err(Error::InvalidModule(format!("s{} is missing", j + 1))),
            }
        }
        for (k, mat) in g.iter().enumerate() {
            check_square(mat, dim, &format!("g{}", k + 1))?;
        }
        for (k, mat) in z.iter().enumerate() {
            check_square(mat, dim, &format!("z{}", k + 1))?;
        }
        let parabolic = parabolic.map(|mut p| {
            p.sort_unstable();
            p.dedup();
            p
        });
        if let Some(p) = &parabolic {
            if let Some(&j) = p.iter().find(|&&j| j == 0 || j >= n) {
                return Err(Error::IndexOutOfRange { index: j, n: n - 1 });
            }
        }
        Ok(HModule {
            m,
            n,
            field: field.clone(),
            kappa,
            parabolic,
            dim,
            s,
            g,
            z,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parabolic(&self) -> Option<&[usize]> {
        self.parabolic.as_deref()
    }

    /// True for a module over the whole algebra: every s_j acts.
    pub fn is_full(&self) -> bool {
        self.s.iter().all(Option::is_some)
    }

    /// The simple roots j with s_j acting (1-based).
    pub fn roots(&self) -> Vec<usize> {
        (1..self.n).filter(|&j| self.s[j - 1].is_some()).collect()
    }

    /// s_j for 1-based j, if present.
    pub fn s(&self, j: usize) -> Option<&Matrix> {
        self.s.get(j.wrapping_sub(1)).and_then(|x| x.as_ref())
    }

    pub fn g(&self, k: usize) -> &Matrix {
        &self.g[k - 1]
    }

    pub fn z(&self, i: usize) -> &Matrix {
        &self.z[i - 1]
    }

    pub fn s_matrices(&self) -> &[Option<Matrix>] {
        &self.s
    }

    pub fn g_matrices(&self) -> &[Matrix] {
        &self.g
    }

    pub fn z_matrices(&self) -> &[Matrix] {
        &self.z
    }

    /// Every generator matrix present: s's, then g's, then z's.
    pub fn operators(&self) -> Vec<Matrix> {
        self.s
            .iter()
            .flatten()
            .chain(&self.g)
            .chain(&self.z)
            .cloned()
            .collect()
    }

    /// The same operators with one matrix map applied.
    pub fn map_matrices(&self, f: impl Fn(&Matrix) -> Matrix) -> Self {
        let s: Vec<Option<Matrix>> = self.s.iter().map(|x| x.as_ref().map(&f)).collect();
        let g: Vec<Matrix> = self.g.iter().map(&f).collect();
        let z: Vec<Matrix> = self.z.iter().map(&f).collect();
        let dim = g[0].rows();
        HModule {
            s,
            g,
            z,
            dim,
            ..self.clone()
        }
    }

    /// Module with the same operators over Q(zeta_target), m | target.
    pub fn embed(&self, target: &Arc<CyclotomicField>) -> Result<Self> {
        let conv = |x: &Matrix| x.embed(target);
        let s = self
            .s
            .iter()
            .map(|x| x.as_ref().map(conv).transpose())
            .collect::<Result<Vec<_>>>()?;
        let g = self.g.iter().map(conv).collect::<Result<Vec<_>>>()?;
        let z = self.z.iter().map(conv).collect::<Result<Vec<_>>>()?;
        HModule::new(self.m, self.n, target, self.kappa.clone(), self.parabolic.clone(), s, g, z)
    }

    /// The submodule on an invariant subspace, in its echelon basis.
    pub fn submodule(&self, w: &Subspace) -> Result<Self> {
        let ops: Vec<Result<Matrix>> = self.operators().iter().map(|a| restrict(a, w)).collect();
        if let Some(Err(_)) = ops.iter().find(|r| r.is_err()) {
            return Err(Error::InvalidModule("subspace is not invariant".into()));
        }
        Ok(self.map_matrices(|a| restrict(a, w).expect("checked invariant")))
    }

    /// The quotient by an invariant subspace, in the basis of non-pivot unit vectors.
    pub fn quotient(&self, w: &Subspace) -> Self {
        self.map_matrices(|a| quotient_op(a, w))
    }

    /// P^{-1} X P.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        let pi = p
            .inverse()
            .ok_or_else(|| Error::InvalidModule("conjugating matrix is singular".into()))?;
        Ok(self.map_matrices(|a| &(&pi * a) * p))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.m != other.m
            || self.n != other.n
            || self.field != other.field
            || self.kappa != other.kappa
            || self.roots() != other.roots()
        {
            return Err(Error::InvalidModule("direct sum of modules over different algebras".into()));
        }
        let s = self
            .s
            .iter()
            .zip(&other.s)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.direct_sum(b)),
                _ => None,
            })
            .collect();
        let g = self.g.iter().zip(&other.g).map(|(a, b)| a.direct_sum(b)).collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a.direct_sum(b)).collect();
        HModule::new(self.m, self.n, &self.field, self.kappa.clone(), self.parabolic.clone(), s, g, z)
    }

    /// The matrix of a group element; fails if its permutation part leaves the parabolic.
    pub fn group_matrix(&self, x: &GmnElement) -> Result<Matrix> {
        let mut out = Matrix::identity(&self.field, self.dim);
        for j in reduced_word(x) {
            let sj = self
                .s(j)
                .ok_or_else(|| Error::InvalidModule(format!("{x} needs s{j}, absent from the parabolic")))?;
            out = &out * sj;
        }
        for (k, &e) in x.torus().iter().enumerate() {
            if e > 0 {
                out = &out * &self.g[k].pow(e as u32);
            }
        }
        Ok(out)
    }

    /// The matrix of a group algebra element with kappa specialized.
    pub fn group_algebra_matrix(&self, x: &GroupAlgebraElement) -> Result<Matrix> {
        let mut out = Matrix::zeros(&self.field, self.dim, self.dim);
        for (h, c) in x.terms() {
            let c = c.eval_kappa(&self.kappa).embed(&self.field)?;
            out = &out + &self.group_matrix(h)?.scale(&c);
        }
        Ok(out)
    }

    /// eps_{ij} = sum_l g_i^l g_j^{-l} (1-based).
    pub fn eps_matrix(&self, i: usize, j: usize) -> Result<Matrix> {
        self.group_algebra_matrix(&crate::group::eps(self.m, self.n, i, j, &self.field))
    }

    /// The Jucys-Murphy matrices (M_i, Mbar_i); needs the whole algebra.
    pub fn jm_matrices(&self) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        let (a, b) = jm_elements(self.m, self.n, &self.field);
        let conv = |v: &[GroupAlgebraElement]| -> Result<Vec<Matrix>> {
            v.iter().map(|x| self.group_algebra_matrix(x)).collect()
        };
        Ok((conv(&a)?, conv(&b)?))
    }

    /// zt_i = z_i + (kappa/2)(Mbar_i - M_i).
    pub fn ztilde_matrices(&self) -> Result<Vec<Matrix>> {
        let (big, bar) = self.jm_matrices()?;
        let half = Cyclotomic::from_rational(&self.field, &self.kappa / rat(2));
        Ok((0..self.n)
            .map(|i| &self.z[i] + &(&bar[i] - &big[i]).scale(&half))
            .collect())
    }

    pub fn to_json(&self) -> Value {
        let lit = |x: &Matrix| json!(x.to_literals());
        let mut v = json!({
            "m": self.m,
            "n": self.n,
            "L": self.field.order(),
            "kappa": self.kappa.to_string(),
            "dim": self.dim,
            "s": self.s.iter().map(|x| x.as_ref().map_or(Value::Null, lit)).collect::<Vec<_>>(),
            "g": self.g.iter().map(lit).collect::<Vec<_>>(),
            "z": self.z.iter().map(lit).collect::<Vec<_>>(),
        });
        if let Some(p) = &self.parabolic {
            v["parabolic"] = json!(p);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::ModuleFile(msg.to_string());
        let uint = |key: &str| -> Result<usize> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| bad(&format!("missing or non-integer \"{key}\"")))
        };
        let m = uint("m")?;
        let n = uint("n")?;
        let order = match v.get("L") {
            Some(_) => uint("L")?,
            None => m,
        };
        let dim = uint("dim")?;
        let kappa = match v.get("kappa") {
            None => rat(1),
            Some(Value::String(t)) => parse_rational(t)?,
            Some(Value::Number(x)) => parse_rational(&x.to_string())?,
            Some(_) => return Err(bad("\"kappa\" must be a rational literal")),
        };
        if order == 0 || m == 0 || order % m != 0 {
            return Err(bad("L must be a positive multiple of m"));
        }
        let field = CyclotomicField::new(order);
        let matrix = |x: &Value, name: String| -> Result<Matrix> {
            let rows = x
                .as_array()
                .ok_or_else(|| bad(&format!("{name} must be an array of rows")))?;
            if rows.len() != dim {
                return Err(bad(&format!("{name} has {} rows, expected {dim}", rows.len())));
            }
            let mut out = Matrix::zeros(&field, dim, dim);
            for (i, r) in rows.iter().enumerate() {
                let r = r
                    .as_array()
                    .filter(|r| r.len() == dim)
                    .ok_or_else(|| bad(&format!("{name} row {} must have {dim} entries", i + 1)))?;
                for (j, e) in r.iter().enumerate() {
                    let text = match e {
                        Value::String(t) => t.clone(),
                        Value::Number(x) => x.to_string(),
                        _ => return Err(bad(&format!("{name} entry ({}, {}) is not a literal", i + 1, j + 1))),
                    };
                    out[(i, j)] = parse_cyclotomic(&text, &field, &kappa)?;
                }
            }
            Ok(out)
        };
        let list = |key: &str| -> Result<&Vec<Value>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing array \"{key}\"")))
        };
        let parabolic = match v.get("parabolic") {
            None | Some(Value::Null) => None,
            Some(p) => Some(
                p.as_array()
                    .ok_or_else(|| bad("\"parabolic\" must be a list of simple roots"))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("bad root index")))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let s_list = list("s")?;
        if s_list.len() != n.saturating_sub(1) {
            return Err(bad(&format!("\"s\" must have {} entries", n.saturating_sub(1))));
        }
        let s = s_list
            .iter()
            .enumerate()
            .map(|(j, x)| {
                if x.is_null() {
                    Ok(None)
                } else {
                    matrix(x, format!("s{}", j + 1)).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let g = list("g")?
            .iter()
            .enumerate()
            .map(|(k, x)| matrix(x, format!("g{}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        let z = list("z")?
            .iter()
            .enumerate()
            .map(|(k, x)| matrix(x, format!("z{}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        HModule::new(m, n, &field, kappa, parabolic, s, g, z)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(&self.to_json())? + "\n")?;
        Ok(())
    }
}

fn first_nonzero(a: &Matrix) -> Option<(usize, usize)> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !a[(i, j)].is_zero() {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Every defining relation as an exact matrix identity, one report entry per relation
/// instance; failures carry the first nonzero residual entry (1-based row, col).
pub fn validate_module(x: &HModule) -> CheckReport {
    let mut rep = CheckReport::new();
    let n = x.n;
    let id = Matrix::identity(&x.field, x.dim);
    let mut check = |name: String, residual: Matrix| match first_nonzero(&residual) {
        None => rep.pass(name),
        Some((r, c)) => rep.fail(name, format!("({r}, {c}) = {}", residual[(r - 1, c - 1)])),
    };
    for k in 1..=n {
        check(format!("g{k}^m = 1"), &x.g(k).pow(x.m as u32) - &id);
        for l in k + 1..=n {
            check(format!("[g{k},g{l}] = 0"), x.g(k).commutator(x.g(l)));
        }
    }
    for j in 1..n {
        let Some(sj) = x.s(j) else { continue };
        check(format!("s{j}^2 = 1"), &(sj * sj) - &id);
        for k in j + 1..n {
            let Some(sk) = x.s(k) else { continue };
            if k == j + 1 {
                check(
                    format!("s{j} s{k} s{j} = s{k} s{j} s{k}"),
                    &(&(sj * sk) * sj) - &(&(sk * sj) * sk),
                );
            } else {
                check(format!("[s{j},s{k}] = 0"), sj.commutator(sk));
            }
        }
        for k in 1..=n {
            let target = if k == j {
                j + 1
            } else if k == j + 1 {
                j
            } else {
                k
            };
            check(format!("s{j} g{k} s{j} = g{target}"), &(&(sj * x.g(k)) * sj) - x.g(target));
        }
    }
    for i in 1..=n {
        for k in i + 1..=n {
            check(format!("[z{i},z{k}] = 0"), x.z(i).commutator(x.z(k)));
        }
        for k in 1..=n {
            check(format!("[z{i},g{k}] = 0"), x.z(i).commutator(x.g(k)));
        }
        for j in 1..n {
            if i == j || i == j + 1 {
                continue;
            }
            if let Some(sj) = x.s(j) {
                check(format!("[z{i},s{j}] = 0"), x.z(i).commutator(sj));
            }
        }
    }
    let kappa = Cyclotomic::from_rational(&x.field, x.kappa.clone());
    for j in 1..n {
        let Some(sj) = x.s(j) else { continue };
        let eps = x.eps_matrix(j, j + 1).expect("torus elements always act");
        let residual = &(&(x.z(j) * sj) - &(sj * x.z(j + 1))) + &eps.scale(&kappa);
        check(format!("z{j} s{j} = s{j} z{} - k eps{j}", j + 1), residual);
    }
    rep
}

/// Err with the first failing relation and its (row, col).
pub fn check_module(x: &HModule) -> Result<()> {
    let rep = validate_module(x);
    match rep.failures().first() {
        None => Ok(()),
        Some(f) => {
            let w = f.witness.clone().unwrap_or_default();
            let (row, col) = parse_position(&w).unwrap_or((0, 0));
            Err(Error::Relation {
                relation: f.check.clone(),
                row,
                col,
            })
        }
    }
}

fn parse_position(w: &str) -> Option<(usize, usize)> {
    let inner = w.strip_prefix('(')?;
    let (pos, _) = inner.split_once(')')?;
    let (r, c) = pos.split_once(',')?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}
