//! Dense univariate polynomials over Q(zeta_L), lowest degree first.

use std::sync::Arc;

use crate::scalar::{Cyclotomic, CyclotomicField};

pub type Poly = Vec<Cyclotomic>;

pub fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Cyclotomic::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[Cyclotomic]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Cyclotomic], x: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(x.field());
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn derivative(p: &[Cyclotomic], field: &Arc<CyclotomicField>) -> Poly {
    if p.len() <= 1 {
        return vec![Cyclotomic::zero(field)];
    }
    let mut d: Poly = p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c.scale(&crate::scalar::rat(i as i64 + 1)))
        .collect();
    trim(&mut d);
    d
}

pub fn monic(p: &[Cyclotomic]) -> Poly {
    let d = degree(p).expect("zero polynomial");
    let inv = p[d].inv().expect("nonzero lead");
    p[..=d].iter().map(|c| c * &inv).collect()
}

pub fn divrem(a: &[Cyclotomic], b: &[Cyclotomic]) -> (Poly, Poly) {
    let field = b[0].field().clone();
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero");
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let da = match degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![Cyclotomic::zero(&field)], rem),
    };
    let mut quot = vec![Cyclotomic::zero(&field); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[k + i] = &rem[k + i] - &t;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd.
pub fn gcd(a: &[Cyclotomic], b: &[Cyclotomic]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// p / gcd(p, p'), monic.
pub fn squarefree_part(p: &[Cyclotomic]) -> Poly {
    let field = p[0].field().clone();
    let g = gcd(p, &derivative(p, &field));
    let (q, r) = divrem(p, &g);
    debug_assert!(degree(&r).is_none());
    monic(&q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Arc<CyclotomicField>, xs: &[i64]) -> Poly {
        xs.iter().map(|&x| Cyclotomic::from_int(f, x)).collect()
    }

    #[test]
    fn squarefree() {
        let f = CyclotomicField::new(1);
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = poly(&f, &[2, -3, 0, 1]);
        assert_eq!(squarefree_part(&p), poly(&f, &[-2, 1, 1]));
    }
}
