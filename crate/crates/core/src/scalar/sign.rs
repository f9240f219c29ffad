use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::Cyclotomic;
use super::Rational;
use crate::error::{Error, Result};

/// A closed interval with rational endpoints.
#[derive(Clone, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    Rational::new((x * Rational::from_integer(s.clone())).floor().to_integer(), s)
}

fn round_up(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    Rational::new((x * Rational::from_integer(s.clone())).ceil().to_integer(), s)
}

// arctan(1/q) bracketed by consecutive partial sums of its alternating series.
fn arctan_recip(q: u32, bits: u32) -> Interval {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let eps = Rational::new(BigInt::one(), pow2(bits + 4));
    let mut sum = Rational::zero();
    let mut qpow = q.clone();
    let mut k: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), &qpow * BigInt::from(2 * k + 1));
        let next = if k.is_even() { &sum + &term } else { &sum - &term };
        if term < eps {
            let (lo, hi) = if next < sum { (next, sum) } else { (sum, next) };
            return Interval { lo, hi };
        }
        sum = next;
        qpow *= &q2;
        k += 1;
    }
}

fn pi_enclosure(bits: u32) -> Interval {
    // 16 atan(1/5) - 4 atan(1/239)
    let a = arctan_recip(5, bits);
    let b = arctan_recip(239, bits);
    let s16 = Rational::from_integer(BigInt::from(16));
    let s4 = Rational::from_integer(BigInt::from(4));
    Interval {
        lo: round_down(&(&a.lo * &s16 - &b.hi * &s4), bits + 2),
        hi: round_up(&(&a.hi * &s16 - &b.lo * &s4), bits + 2),
    }
}

// Enclosure of cos(t) for a rational 0 <= t <= 4 via Taylor with the next-term bound.
fn cos_point(t: &Rational, bits: u32) -> Interval {
    let eps = Rational::new(BigInt::one(), pow2(bits + 4));
    let t2 = t * t;
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut k: u64 = 0;
    loop {
        if term.abs() < eps {
            let r = term.abs();
            return Interval {
                lo: round_down(&(&sum - &r), bits + 2),
                hi: round_up(&(&sum + &r), bits + 2),
            };
        }
        sum += &term;
        term = -(&term * &t2) / Rational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        k += 1;
    }
}

// cos(2 pi j / L) for 0 <= j <= L/2, where the angle lies in [0, pi].
fn cos_root(j: usize, l: usize, bits: u32, pi: &Interval) -> Interval {
    if j == 0 {
        return Interval {
            lo: Rational::one(),
            hi: Rational::one(),
        };
    }
    if 2 * j == l {
        return Interval {
            lo: -Rational::one(),
            hi: -Rational::one(),
        };
    }
    let f = Rational::new(BigInt::from(2 * j), BigInt::from(l));
    let a = &pi.lo * &f;
    let b = &pi.hi * &f;
    let upper = cos_point(&a, bits).hi;
    // cos is decreasing on [0, pi]; past pi the bound -1 is still valid
    let lower = if b >= pi.lo {
        -Rational::one()
    } else {
        cos_point(&b, bits).lo
    };
    Interval {
        lo: lower,
        hi: upper.min(Rational::one()),
    }
}

/// Exact sign of a real cyclotomic number.
///
/// Zero is decided exactly; otherwise certified rational enclosures of
/// Re(x) at zeta = exp(2 pi i / L) are refined until they exclude 0.
pub fn scalar_real_sign(x: &Cyclotomic) -> Result<i32> {
    if x.is_zero() {
        return Ok(0);
    }
    if *x != x.conj() {
        return Err(Error::NotReal);
    }
    if let Some(r) = x.as_rational() {
        return Ok(if r.is_positive() { 1 } else { -1 });
    }
    let l = x.order();
    let mut bits = 64u32;
    loop {
        let pi = pi_enclosure(bits);
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (j, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let jj = if 2 * j > l { l - j } else { j };
            let iv = cos_root(jj, l, bits, &pi);
            if c.is_positive() {
                lo += c * &iv.lo;
                hi += c * &iv.hi;
            } else {
                lo += c * &iv.hi;
                hi += c * &iv.lo;
            }
        }
        if lo.is_positive() {
            return Ok(1);
        }
        if hi.is_negative() {
            return Ok(-1);
        }
        bits *= 2;
    }
}

/// Exact comparison of two real cyclotomic numbers.
pub fn real_cmp(a: &Cyclotomic, b: &Cyclotomic) -> Result<Ordering> {
    Ok(match scalar_real_sign(&(a - b))? {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    })
}

/// Real part (x + conj x) / 2.
pub fn real_part(x: &Cyclotomic) -> Cyclotomic {
    (x + &x.conj()).scale(&Rational::new(BigInt::one(), BigInt::from(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, CyclotomicField};

    fn cyc(text: &str, l: usize) -> Cyclotomic {
        let f = CyclotomicField::new(l);
        parse_scalar(text, &f).unwrap().as_constant().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(scalar_real_sign(&cyc("0", 3)).unwrap(), 0);
        assert_eq!(scalar_real_sign(&cyc("z + z^2", 3)).unwrap(), -1);
        assert_eq!(scalar_real_sign(&cyc("z + z^4", 5)).unwrap(), 1);
    }

    #[test]
    fn not_real() {
        assert!(matches!(scalar_real_sign(&cyc("z", 5)), Err(Error::NotReal)));
    }

    #[test]
    fn pi_bracket() {
        let p = pi_enclosure(64);
        let lo = crate::scalar::cyclotomic::rational_to_f64(&p.lo);
        let hi = crate::scalar::cyclotomic::rational_to_f64(&p.hi);
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi);
        assert!(p.lo < p.hi);
    }

    #[test]
    fn close_to_zero_values() {
        // 2cos(2pi/5) = 0.61803398874...
        let a = cyc("z + z^4 - 6180339887/10000000000", 5);
        assert_eq!(scalar_real_sign(&a).unwrap(), 1);
        let b = cyc("z + z^4 - 6180339888/10000000000", 5);
        assert_eq!(scalar_real_sign(&b).unwrap(), -1);
        // sqrt(3) = z + z^11 at L = 12
        let s3 = cyc("z + z^11", 12);
        assert_eq!(scalar_real_sign(&(&s3 - &cyc("17320508/10000000", 12))).unwrap(), 1);
        assert_eq!(scalar_real_sign(&(&s3 - &cyc("17320509/10000000", 12))).unwrap(), -1);
    }
}
