use super::module::HModule;
use super::weights::weight_decomposition;
use crate::error::{Error, Result};
use crate::linalg::{
    charpoly, field_roots, kernel, restrict, simultaneous_generalized_eigenspaces, spin, Matrix,
    Subspace, Vector,
};
use crate::scalar::Cyclotomic;

/// Largest dimension for which the algebra spanned by the generator images is computed.
pub const BURNSIDE_MAX_DIM: usize = 16;

fn same_algebra(x: &HModule, y: &HModule) -> Result<()> {
    if x.m() != y.m()
        || x.n() != y.n()
        || x.field() != y.field()
        || x.kappa() != y.kappa()
        || x.roots() != y.roots()
    {
        return Err(Error::InvalidModule("modules over different algebras".into()));
    }
    Ok(())
}

/// A basis of Hom(X, Y) as dim Y x dim X matrices A with A x = y A for every generator.
pub fn hom_space(x: &HModule, y: &HModule) -> Result<Vec<Matrix>> {
    same_algebra(x, y)?;
    let field = x.field().clone();
    let (dx, dy) = (x.dim(), y.dim());
    if dx == 0 || dy == 0 {
        return Ok(Vec::new());
    }
    let unknowns = dx * dy;
    let mut rows: Vec<Vector> = Vec::new();
    for (p, q) in y.operators().iter().zip(x.operators().iter()) {
        // (P A - A Q)_{ik}, A_{jk} at j * dx + k
        for i in 0..dy {
            for k in 0..dx {
                let mut row = vec![Cyclotomic::zero(&field); unknowns];
                for j in 0..dy {
                    if !p[(i, j)].is_zero() {
                        row[j * dx + k] = &row[j * dx + k] + &p[(i, j)];
                    }
                }
                for j in 0..dx {
                    if !q[(j, k)].is_zero() {
                        row[i * dx + j] = &row[i * dx + j] - &q[(j, k)];
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        Subspace::full(&field, unknowns)
    } else {
        kernel(&Matrix::from_rows(&field, rows)?)
    };
    Ok(sol
        .basis()
        .iter()
        .map(|v| {
            let r: Vec<Vector> = (0..dy).map(|i| v[i * dx..(i + 1) * dx].to_vec()).collect();
            Matrix::from_rows(&field, r).expect("rectangular")
        })
        .collect())
}

/// An invertible intertwiner X -> Y, if one is found.
///
/// The generic combinations sum_k t^k A_k for t = 1..=12 are tried; for absolutely
/// irreducible modules Hom is at most one-dimensional and the first one decides.
pub fn find_isomorphism(x: &HModule, y: &HModule) -> Result<Option<Matrix>> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let basis = hom_space(x, y)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let field = x.field().clone();
    for t in 1..=12i64 {
        let mut a = Matrix::zeros(&field, y.dim(), x.dim());
        let mut w = 1i64;
        for b in &basis {
            a = &a + &b.scale(&Cyclotomic::from_int(&field, w));
            w *= t;
        }
        if a.inverse().is_some() {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Dimension of the span of all words in the generator matrices.
pub fn algebra_dimension(x: &HModule) -> usize {
    let d = x.dim();
    let field = x.field().clone();
    let flat = |a: &Matrix| -> Vector { (0..d).flat_map(|i| a.row(i).to_vec()).collect() };
    let ops = x.operators();
    let mut span = Subspace::zero(&field, d * d);
    let id = Matrix::identity(&field, d);
    span.insert(&flat(&id));
    let mut queue = vec![id];
    while let Some(w) = queue.pop() {
        if span.is_full() {
            break;
        }
        for a in &ops {
            let aw = a * &w;
            if span.insert(&flat(&aw)) {
                queue.push(aw);
            }
        }
    }
    span.dim()
}

fn height_two_combinations(basis: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            for c in [1i64, -1, 2, -2] {
                out.push(
                    u.iter()
                        .zip(v)
                        .map(|(a, b)| a + &b.scale(&crate::scalar::rat(c)))
                        .collect(),
                );
            }
        }
    }
    out
}

// weight-adapted candidate vectors: joint z-eigenvectors inside torus weight spaces,
// their height-2 combinations, then the weight-space bases
fn candidate_vectors(x: &HModule) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    let mut fallback = Vec::new();
    for (_, space) in weight_decomposition(x)? {
        let zs = x
            .z_matrices()
            .iter()
            .map(|a| restrict(a, &space))
            .collect::<Result<Vec<_>>>()?;
        match simultaneous_generalized_eigenspaces(&zs) {
            Ok(parts) => {
                for (lam, _) in parts {
                    let stacked: Vec<Vector> = zs
                        .iter()
                        .zip(&lam)
                        .flat_map(|(a, l)| a.sub_scalar(l).to_rows())
                        .collect();
                    let eig = kernel(&Matrix::from_rows(x.field(), stacked)?);
                    let vecs: Vec<Vector> = eig.basis().iter().map(|c| space.from_coords(c)).collect();
                    out.extend(height_two_combinations(&vecs));
                    out.splice(0..0, vecs);
                }
            }
            Err(Error::NonSplit { .. }) => {}
            Err(e) => return Err(e),
        }
        fallback.extend(space.basis().iter().cloned());
    }
    out.extend(fallback);
    Ok(out)
}

fn spin_search(x: &HModule) -> Result<Option<Subspace>> {
    let ops = x.operators();
    for v in candidate_vectors(x)? {
        if v.iter().all(Cyclotomic::is_zero) {
            continue;
        }
        let s = spin(&ops, &[v], x.dim(), x.field());
        if s.dim() < x.dim() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Outcome of the simplicity test.
#[derive(Clone, Debug)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub end_dim: usize,
    /// dim of the image of the algebra, when dim X <= BURNSIDE_MAX_DIM
    pub algebra_dim: Option<usize>,
    /// A proper nonzero submodule, when one was exhibited.
    pub submodule: Option<Subspace>,
}

/// Decide simplicity exactly.
///
/// Every submodule contains a joint eigenvector of C[T] (x) S(V), so spinning the joint
/// eigenvectors (and, on the dual, their transposed analogues) finds a submodule whenever
/// the joint eigenspaces are lines. Otherwise End(X) is computed; a non-scalar
/// endomorphism splits off an eigenspace. A module that survives has End(X) = scalars
/// and, up to BURNSIDE_MAX_DIM, is confirmed by dim of the algebra image = dim(X)^2.
pub fn irreducibility(x: &HModule) -> Result<IrreducibilityReport> {
    let d = x.dim();
    if d == 0 {
        return Ok(IrreducibilityReport {
            irreducible: false,
            end_dim: 0,
            algebra_dim: None,
            submodule: None,
        });
    }
    let mut submodule = spin_search(x)?;
    if submodule.is_none() {
        let dual = x.map_matrices(Matrix::transpose);
        if let Some(w) = spin_search(&dual)? {
            // the annihilator of a transposed-invariant subspace is invariant
            submodule = Some(kernel(&w.basis_matrix()));
        }
    }
    let ends = hom_space(x, x)?;
    let end_dim = ends.len();
    if submodule.is_none() && end_dim > 1 {
        let id = Matrix::identity(x.field(), d);
        let phi = ends
            .iter()
            .find(|a| {
                let c = a[(0, 0)].clone();
                *a != &id.scale(&c)
            })
            .expect("End(X) has a non-scalar element");
        let roots = field_roots(&charpoly(phi)).map_err(|_| Error::NonSplit {
            op: 0,
            order: x.field().order(),
            residual_degree: d,
        })?;
        for lam in roots {
            let k = kernel(&phi.sub_scalar(&lam));
            if !k.is_zero() && k.dim() < d {
                submodule = Some(k);
                break;
            }
        }
    }
    let algebra_dim = (submodule.is_none() && d <= BURNSIDE_MAX_DIM).then(|| algebra_dimension(x));
    let irreducible = submodule.is_none() && end_dim == 1 && algebra_dim.is_none_or(|a| a == d * d);
    Ok(IrreducibilityReport {
        irreducible,
        end_dim,
        algebra_dim,
        submodule,
    })
}

pub fn is_irreducible(x: &HModule) -> Result<bool> {
    Ok(irreducibility(x)?.irreducible)
}

/// Composition factors, submodule factors before quotient factors.
pub fn composition_factors(x: &HModule) -> Result<Vec<HModule>> {
    if x.dim() == 0 {
        return Ok(Vec::new());
    }
    let rep = irreducibility(x)?;
    if let Some(w) = rep.submodule {
        let mut out = composition_factors(&x.submodule(&w)?)?;
        out.extend(composition_factors(&x.quotient(&w))?);
        return Ok(out);
    }
    if rep.irreducible {
        return Ok(vec![x.clone()]);
    }
    Err(Error::Precondition(format!(
        "no submodule exhibited, yet End has dim {} and the algebra image dim {:?}",
        rep.end_dim, rep.algebra_dim
    )))
}
