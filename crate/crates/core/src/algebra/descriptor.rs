use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::group::{reduced_word, GmnElement, MAX_N};
use crate::scalar::{rat, CyclotomicField, Scalar};

/// Exponent vector of a commuting z-monomial.
pub type ZMono = [u8; MAX_N];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// H_DO(G(m,1,n)) with cross term kappa * eps_{j,j+1}.
    DunklOpdam,
    /// Type-A graded Hecke algebra of S_n with constant parameter c (m = 1).
    TypeA { c: Scalar },
}

/// A pushed term h * z^gamma with its coefficient.
pub type PushTerm = (GmnElement, ZMono, Scalar);

/// Parameters of a generalised graded Hecke algebra of type A_{n-1}.
pub struct Descriptor {
    m: usize,
    n: usize,
    field: Arc<CyclotomicField>,
    mode: Mode,
    // first l in the cross-term sum sum_l g_j^l g_{j+1}^{-l}; 0 except in the negative control
    eps_from: usize,
    // (z^alpha, permutation w) -> z^alpha * w in normal form
    cache: RwLock<HashMap<(ZMono, GmnElement), Arc<Vec<PushTerm>>>>,
}

impl fmt::Debug for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Descriptor")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("L", &self.field.order())
            .field("mode", &self.mode)
            .field("eps_from", &self.eps_from)
            .finish()
    }
}

impl PartialEq for Descriptor {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.field.order() == other.field.order()
            && self.mode == other.mode
            && self.eps_from == other.eps_from
    }
}

impl Eq for Descriptor {}

impl Descriptor {
    fn build(m: usize, n: usize, field: Arc<CyclotomicField>, mode: Mode, eps_from: usize) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_N {
            return Err(Error::Precondition(format!("n must be in 1..={MAX_N}")));
        }
        if m == 0 || m > 255 {
            return Err(Error::Precondition("m must be in 1..=255".into()));
        }
        if !field.order().is_multiple_of(m) {
            return Err(Error::Precondition(format!(
                "field order {} is not a multiple of m = {}",
                field.order(),
                m
            )));
        }
        Ok(Arc::new(Descriptor {
            m,
            n,
            field,
            mode,
            eps_from,
            cache: RwLock::new(HashMap::new()),
        }))
    }

    /// H_DO(G(m,1,n)) over Q(zeta_m).
    pub fn dunkl_opdam(m: usize, n: usize) -> Result<Arc<Self>> {
        Self::build(m, n, CyclotomicField::new(m), Mode::DunklOpdam, 0)
    }

    /// H_DO over a larger field Q(zeta_L), m | L.
    pub fn dunkl_opdam_over(m: usize, n: usize, field: &Arc<CyclotomicField>) -> Result<Arc<Self>> {
        Self::build(m, n, field.clone(), Mode::DunklOpdam, 0)
    }

    /// Type-A graded Hecke algebra of S_n with parameter c.
    pub fn type_a(n: usize, c: Scalar) -> Result<Arc<Self>> {
        let field = c.field().clone();
        Self::build(1, n, field, Mode::TypeA { c }, 0)
    }

    /// Deliberately corrupted H_DO: cross-term sum over l = 1..m-1 while the
    /// Jucys-Murphy elements keep s = 0..m-1.
    pub fn negative_control(m: usize, n: usize) -> Result<Arc<Self>> {
        Self::build(m, n, CyclotomicField::new(m), Mode::DunklOpdam, 1)
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

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn is_dunkl_opdam(&self) -> bool {
        matches!(self.mode, Mode::DunklOpdam)
    }

    pub fn is_negative_control(&self) -> bool {
        self.eps_from != 0
    }

    pub fn eps_from(&self) -> usize {
        self.eps_from
    }

    /// The scale in front of the Jucys-Murphy corrections: kappa, or c in type A.
    pub fn jm_scale(&self) -> Scalar {
        match &self.mode {
            Mode::DunklOpdam => Scalar::kappa(&self.field),
            Mode::TypeA { c } => c.clone(),
        }
    }

    /// The value of the cross term c~ on the simple root of s_j (1-based) as torus terms.
    pub fn cross_term(&self, j: usize) -> Vec<(GmnElement, Scalar)> {
        match &self.mode {
            Mode::TypeA { c } => vec![(GmnElement::identity(self.m, self.n), c.clone())],
            Mode::DunklOpdam => {
                let k = Scalar::kappa(&self.field);
                (self.eps_from..self.m)
                    .map(|l| {
                        let mut a = vec![0i64; self.n];
                        a[j - 1] = l as i64;
                        a[j] = -(l as i64);
                        (GmnElement::torus_element(self.m, &a), k.clone())
                    })
                    .collect()
            }
        }
    }

    pub fn identity(&self) -> GmnElement {
        GmnElement::identity(self.m, self.n)
    }

    /// z^alpha * w for a permutation w, as group-left normal form terms (memoized).
    pub fn push_through(&self, alpha: &ZMono, w: &GmnElement) -> Arc<Vec<PushTerm>> {
        let key = (*alpha, *w);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.compute_push(alpha, w));
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, v.clone());
        v
    }

    fn compute_push(&self, alpha: &ZMono, w: &GmnElement) -> Vec<PushTerm> {
        let id = self.identity();
        let mut state: HashMap<(GmnElement, ZMono), Scalar> = HashMap::new();
        state.insert((id, *alpha), Scalar::one(&self.field));
        for j in reduced_word(w) {
            let s = GmnElement::s(self.m, self.n, j);
            let cross = self.cross_term(j);
            let mut next: HashMap<(GmnElement, ZMono), Scalar> = HashMap::new();
            let mut add = |k: (GmnElement, ZMono), c: Scalar| {
                if c.is_zero() {
                    return;
                }
                match next.get_mut(&k) {
                    Some(x) => {
                        x.add_assign_ref(&c);
                        if x.is_zero() {
                            next.remove(&k);
                        }
                    }
                    None => {
                        next.insert(k, c);
                    }
                }
            };
            for ((h, gamma), c) in state {
                let mut swapped = gamma;
                swapped.swap(j - 1, j);
                add((h.mul(&s), swapped), c.clone());
                for (delta, e) in divided_difference(&gamma, j) {
                    let ce = c.scale(&rat(e));
                    for (t, ct) in &cross {
                        add((h.mul(t), delta), &ce * ct);
                    }
                }
            }
            state = next;
        }
        let mut out: Vec<PushTerm> = state.into_iter().map(|((h, g), c)| (h, g, c)).collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }
}

/// (f - s_j f) / (z_{j+1} - z_j) for f = z^gamma, as integer-weighted monomials.
pub fn divided_difference(gamma: &ZMono, j: usize) -> Vec<(ZMono, i64)> {
    let p = gamma[j - 1] as usize;
    let q = gamma[j] as usize;
    if p == q {
        return Vec::new();
    }
    let (lo, diff, sign) = if p > q { (q, p - q, -1) } else { (p, q - p, 1) };
    (0..diff)
        .map(|k| {
            let mut d = *gamma;
            d[j - 1] = (lo + k) as u8;
            d[j] = (lo + diff - 1 - k) as u8;
            (d, sign)
        })
        .collect()
}
