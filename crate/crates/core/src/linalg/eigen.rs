use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;

use super::cpoly::{self, Poly};
use super::matrix::{Matrix, Vector};
use super::subspace::{kernel, preimage, restrict, Subspace};
use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, CyclotomicField, Rational};

/// Characteristic polynomial det(x - A), monic, via reduction to Hessenberg form.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let field = a.field().clone();
    let n = a.rows();
    let mut h = a.to_rows();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h[r][c].is_zero()) else {
            continue;
        };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = h[c + 1][c].inv().expect("nonzero pivot");
        for i in c + 2..n {
            if h[i][c].is_zero() {
                continue;
            }
            let f = &h[i][c] * &inv;
            for k in 0..n {
                if !h[c + 1][k].is_zero() {
                    let t = &h[c + 1][k] * &f;
                    h[i][k] = &h[i][k] - &t;
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let t = &row[i] * &f;
                    row[c + 1] = &row[c + 1] + &t;
                }
            }
        }
    }
    // p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_i
    let zero = Cyclotomic::zero(&field);
    let mut ps: Vec<Poly> = vec![vec![Cyclotomic::one(&field)]];
    for k in 0..n {
        let pk = &ps[k];
        let mut next = vec![zero.clone(); pk.len() + 1];
        for (d, c) in pk.iter().enumerate() {
            next[d + 1] = &next[d + 1] + c;
            next[d] = &next[d] - &(c * &h[k][k]);
        }
        let mut prod = Cyclotomic::one(&field);
        for i in (0..k).rev() {
            prod = &prod * &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coef = &h[i][k] * &prod;
            if coef.is_zero() {
                continue;
            }
            for (d, c) in ps[i].iter().enumerate() {
                next[d] = &next[d] - &(c * &coef);
            }
        }
        cpoly::trim(&mut next);
        ps.push(next);
    }
    ps.pop().expect("nonempty")
}

fn embeddings(l: usize) -> Vec<usize> {
    if l <= 2 {
        return vec![1];
    }
    (1..l).filter(|k| k.gcd(&l) == 1 && 2 * k < l).collect()
}

fn complex_coeffs(p: &[Cyclotomic], k: usize) -> Vec<Complex64> {
    p.iter()
        .map(|c| {
            let (re, im) = c.to_complex_at(k);
            Complex64::new(re, im)
        })
        .collect()
}

fn horner(p: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        d = d * x + v;
        v = v * x + c;
    }
    (v, d)
}

/// All complex roots of a polynomial by Aberth iteration with Newton polishing.
fn numeric_roots(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let q: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let radius = 1.0 + q[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (i as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = horner(&q, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..5 {
            let (v, d) = horner(&q, *r);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    z
}

/// Continued-fraction approximation with a bounded denominator.
fn approx_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn solve_real(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-12 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

// Candidate field elements whose embeddings match one numeric root per embedding.
fn reconstruct(
    field: &Arc<CyclotomicField>,
    choice: &[Complex64],
    ks: &[usize],
) -> Vec<Cyclotomic> {
    let l = field.order();
    let phi = field.degree();
    let mut coords = Vec::new();
    if phi == 1 {
        coords.push(vec![choice[0].re]);
    } else {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (&k, r) in ks.iter().zip(choice) {
            let t = |j: usize| 2.0 * std::f64::consts::PI * ((j * k) % l) as f64 / l as f64;
            rows.push((0..phi).map(|j| t(j).cos()).collect());
            rhs.push(r.re);
            rows.push((0..phi).map(|j| t(j).sin()).collect());
            rhs.push(r.im);
        }
        if let Some(x) = solve_real(rows, rhs) {
            coords.push(x);
        }
    }
    let mut out = Vec::new();
    for c in coords {
        for (den, tol) in [(1_000i64, 1e-9), (1_000_000, 1e-11)] {
            let rs: Option<Vec<Rational>> = c.iter().map(|&x| approx_rational(x, den, tol)).collect();
            if let Some(rs) = rs {
                out.push(crate::scalar::cyc_reduce(&rs, field));
            }
        }
    }
    out
}

/// Roots in Q(zeta_L) of a polynomial, each listed once. Err if it does not split.
pub fn field_roots(p: &[Cyclotomic]) -> std::result::Result<Vec<Cyclotomic>, Poly> {
    let field = p[0].field().clone();
    let mut rest = cpoly::squarefree_part(p);
    let mut roots: Vec<Cyclotomic> = Vec::new();
    let ks = embeddings(field.order());
    let mut stalled = false;
    while cpoly::degree(&rest).unwrap_or(0) > 0 && !stalled {
        stalled = true;
        let per_emb: Vec<Vec<Complex64>> = ks
            .iter()
            .map(|&k| numeric_roots(&complex_coeffs(&rest, k)))
            .collect();
        // walk all combinations of one root per embedding, first embedding outermost
        let mut idx = vec![0usize; ks.len()];
        'outer: loop {
            let choice: Vec<Complex64> = idx.iter().zip(&per_emb).map(|(&i, rs)| rs[i]).collect();
            for cand in reconstruct(&field, &choice, &ks) {
                if cpoly::eval(&rest, &cand).is_zero() {
                    let lin = vec![-&cand, Cyclotomic::one(&field)];
                    rest = cpoly::divrem(&rest, &lin).0;
                    roots.push(cand);
                    stalled = false;
                    break 'outer;
                }
            }
            let mut pos = ks.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < per_emb[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    if cpoly::degree(&rest).unwrap_or(0) > 0 {
        return Err(rest);
    }
    roots.sort();
    Ok(roots)
}

/// Generalized eigenspace ker (A - c)^N inside the whole space.
pub fn generalized_eigenspace(a: &Matrix, c: &Cyclotomic) -> Result<Subspace> {
    let b = a.sub_scalar(c);
    let mut cur = kernel(&b);
    loop {
        let next = preimage(&b, &cur)?;
        if next.dim() == cur.dim() {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Joint generalized eigenspaces of pairwise commuting operators.
pub fn simultaneous_generalized_eigenspaces(ops: &[Matrix]) -> Result<Vec<(Vec<Cyclotomic>, Subspace)>> {
    let Some(first) = ops.first() else {
        return Err(Error::Dimension("no operators".into()));
    };
    let n = first.rows();
    let field = first.field().clone();
    for (i, a) in ops.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::Dimension("operators must be square of equal size".into()));
        }
        for (j, b) in ops.iter().enumerate().skip(i + 1) {
            if !a.commutator(b).is_zero() {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let mut parts: Vec<(Vec<Cyclotomic>, Subspace)> = vec![(Vec::new(), Subspace::full(&field, n))];
    for (oi, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for (tuple, space) in parts {
            if space.is_zero() {
                continue;
            }
            let r = restrict(op, &space)?;
            let roots = field_roots(&charpoly(&r)).map_err(|rest| Error::NonSplit {
                op: oi,
                order: field.order(),
                residual_degree: cpoly::degree(&rest).unwrap_or(0),
            })?;
            let mut total = 0;
            for lam in roots {
                let local = generalized_eigenspace(&r, &lam)?;
                total += local.dim();
                let vecs: Vec<Vector> = local.basis().iter().map(|c| space.from_coords(c)).collect();
                let mut t = tuple.clone();
                t.push(lam);
                next.push((t, Subspace::span(&field, n, &vecs)));
            }
            if total != space.dim() {
                return Err(Error::NonSplit {
                    op: oi,
                    order: field.order(),
                    residual_degree: space.dim() - total,
                });
            }
        }
        parts = next;
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(parts)
}

/// Eigenspace decomposition of one diagonalizable operator whose eigenvalues lie in `candidates`.
pub fn eigenspaces_from_candidates(
    a: &Matrix,
    candidates: &[Cyclotomic],
) -> Result<Vec<(Cyclotomic, Subspace)>> {
    let mut out = Vec::new();
    let mut total = 0;
    for c in candidates {
        let k = kernel(&a.sub_scalar(c));
        if !k.is_zero() {
            total += k.dim();
            out.push((c.clone(), k));
        }
    }
    if total != a.rows() {
        return Err(Error::NonSplit {
            op: 0,
            order: a.field().order(),
            residual_degree: a.rows() - total,
        });
    }
    Ok(out)
}
