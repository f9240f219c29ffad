//! Dense univariate polynomials over Q, lowest degree first.

use num_traits::{One, Zero};

use super::Rational;

pub fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
}

pub fn is_zero(p: &[Rational]) -> bool {
    p.iter().all(Zero::is_zero)
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    let da = match degree(&rem) {
        Some(d) if d >= db => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[k + i] -= &c * bc;
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// The inverse of `a` modulo `m`, when gcd(a, m) = 1.
pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // invariant: s_i * a == r_i (mod m)
    let (_, a_red) = divrem(a, m);
    let mut r0 = m.to_vec();
    let mut r1 = a_red;
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    trim(&mut r0);
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let d = degree(&r0)?;
    if d != 0 {
        return None;
    }
    let c = r0[0].recip();
    let mut out: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
    trim(&mut out);
    Some(out)
}
