use std::fmt;

use crate::error::{Error, Result};

/// Largest supported rank n.
pub const MAX_N: usize = 10;

/// An element w * g_1^{a_1} ... g_n^{a_n} of G(m,1,n).
///
/// Stored 0-based: `perm[i] = w(i+1) - 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GmnElement {
    n: u8,
    m: u8,
    perm: [u8; MAX_N],
    torus: [u8; MAX_N],
}

impl GmnElement {
    pub fn identity(m: usize, n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "n must be in 1..={MAX_N}");
        assert!((1..=255).contains(&m), "m must be in 1..=255");
        let mut perm = [0u8; MAX_N];
        for (i, p) in perm.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        GmnElement {
            n: n as u8,
            m: m as u8,
            perm,
            torus: [0; MAX_N],
        }
    }

    /// From 0-based permutation images and torus exponents (reduced mod m).
    pub fn new(m: usize, perm: &[usize], torus: &[i64]) -> Result<Self> {
        let n = perm.len();
        if n == 0 || n > MAX_N || torus.len() != n || m == 0 || m > 255 {
            return Err(Error::InvalidGroupElement(format!(
                "bad shape: m={m}, perm {perm:?}, torus {torus:?}"
            )));
        }
        let mut seen = [false; MAX_N];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidGroupElement(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let mut e = Self::identity(m, n);
        for i in 0..n {
            e.perm[i] = perm[i] as u8;
            e.torus[i] = torus[i].rem_euclid(m as i64) as u8;
        }
        Ok(e)
    }

    pub fn from_perm(m: usize, perm: &[usize]) -> Result<Self> {
        Self::new(m, perm, &vec![0; perm.len()])
    }

    /// The simple reflection s_j = (j, j+1), 1-based.
    pub fn s(m: usize, n: usize, j: usize) -> Self {
        assert!(j >= 1 && j < n, "s_{j} out of range for n={n}");
        Self::transposition(m, n, j, j + 1)
    }

    /// The transposition (i, k), 1-based.
    pub fn transposition(m: usize, n: usize, i: usize, k: usize) -> Self {
        let mut e = Self::identity(m, n);
        e.perm.swap(i - 1, k - 1);
        e
    }

    /// g_k^e, 1-based.
    pub fn g(m: usize, n: usize, k: usize, e: i64) -> Self {
        let mut x = Self::identity(m, n);
        x.torus[k - 1] = e.rem_euclid(m as i64) as u8;
        x
    }

    /// A pure torus element g^a.
    pub fn torus_element(m: usize, a: &[i64]) -> Self {
        let n = a.len();
        let mut x = Self::identity(m, n);
        for (t, v) in x.torus.iter_mut().zip(a) {
            *t = v.rem_euclid(m as i64) as u8;
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// 0-based images w(i).
    pub fn perm(&self) -> &[u8] {
        &self.perm[..self.n as usize]
    }

    pub fn torus(&self) -> &[u8] {
        &self.torus[..self.n as usize]
    }

    /// w(i) for a 0-based index.
    pub fn w(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.perm_is_identity() && self.torus().iter().all(|&a| a == 0)
    }

    pub fn perm_is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.perm[i] as usize == i)
    }

    /// True for elements of T = Ker(rho), i.e. trivial permutation part.
    pub fn in_kernel_of_rho(&self) -> bool {
        self.perm_is_identity()
    }

    /// The permutation part (w, 0).
    pub fn perm_part(&self) -> Self {
        let mut x = *self;
        x.torus = [0; MAX_N];
        x
    }

    /// The torus part (id, a).
    pub fn torus_part(&self) -> Self {
        let mut x = Self::identity(self.m as usize, self.n as usize);
        x.torus = self.torus;
        x
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::InvalidGroupElement(format!(
                "shape mismatch: G({},1,{}) vs G({},1,{})",
                self.m, self.n, other.m, other.n
            )));
        }
        Ok(())
    }

    /// (w,a)(u,b) = (wu, u*a + b) with (u*a)_i = a_{u(i)}.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let n = self.n as usize;
        let m = self.m;
        let mut out = *self;
        for i in 0..n {
            let u = other.perm[i] as usize;
            out.perm[i] = self.perm[u];
            out.torus[i] = ((self.torus[u] as u16 + other.torus[i] as u16) % m as u16) as u8;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("group shape mismatch")
    }

    pub fn inverse(&self) -> Self {
        let n = self.n as usize;
        let m = self.m;
        let mut out = *self;
        for i in 0..n {
            out.perm[self.perm[i] as usize] = i as u8;
        }
        // b_i = -a_{w^{-1}(i)}
        for i in 0..n {
            let a = self.torus[out.perm[i] as usize];
            out.torus[i] = (m - a) % m;
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.m as usize, self.n as usize);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of inversions of the permutation part.
    pub fn length(&self) -> usize {
        let p = self.perm();
        let mut c = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// 0-based indices moved by the permutation part.
    pub fn moved(&self) -> Vec<usize> {
        (0..self.n as usize).filter(|&i| self.perm[i] as usize != i).collect()
    }

    /// Dimension of the fixed space of the permutation matrix (number of cycles).
    pub fn fixed_dim(&self) -> usize {
        let n = self.n as usize;
        let mut seen = [false; MAX_N];
        let mut cycles = 0;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.perm[j] as usize;
            }
        }
        cycles
    }
}

impl fmt::Display for GmnElement {
    /// `[w(1),...,w(n)];[a_1,...,a_n]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.perm().iter().map(|&x| (x + 1).to_string()).collect();
        let t: Vec<String> = self.torus().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}];[{}]", p.join(","), t.join(","))
    }
}

impl fmt::Debug for GmnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parse the text form; `m` must be supplied since it is not part of the text.
pub fn parse_element(text: &str, m: usize) -> Result<GmnElement> {
    let bad = || Error::InvalidGroupElement(format!("cannot parse {text:?}"));
    let (p, t) = text.trim().split_once(';').ok_or_else(bad)?;
    let list = |s: &str| -> Result<Vec<i64>> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
            .collect()
    };
    let perm = list(p)?;
    let torus = list(t)?;
    if perm.iter().any(|&x| x < 1) {
        return Err(bad());
    }
    let perm: Vec<usize> = perm.iter().map(|&x| x as usize - 1).collect();
    if torus.iter().any(|&a| a < 0 || a >= m as i64) {
        return Err(Error::InvalidGroupElement(format!("torus entries of {text:?} must lie in [0, {m})")));
    }
    GmnElement::new(m, &perm, &torus)
}

/// A reduced word for a permutation: indices j (1-based) with w = s_{j1} s_{j2} ...
pub fn reduced_word(w: &GmnElement) -> Vec<usize> {
    let mut cur: Vec<u8> = w.perm().to_vec();
    let mut word = Vec::new();
    // peel right descents: w = (w s_i) s_i when w(i) > w(i+1)
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) else {
            break;
        };
        cur.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

/// Every element of G(m,1,n), in sorted order.
pub fn enumerate_group(m: usize, n: usize) -> Vec<GmnElement> {
    let mut out = Vec::new();
    for p in permutations(n) {
        let mut a = vec![0i64; n];
        loop {
            out.push(GmnElement::new(m, &p, &a).expect("valid"));
            let mut k = 0;
            loop {
                if k == n {
                    break;
                }
                a[k] += 1;
                if a[k] < m as i64 {
                    break;
                }
                a[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    out.sort();
    out
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_products() {
        let s1 = GmnElement::s(2, 2, 1);
        assert!(s1.mul(&s1).is_identity());

        let s1 = GmnElement::s(3, 2, 1);
        let g1 = GmnElement::g(3, 2, 1, 1);
        assert_eq!(s1.mul(&g1).mul(&s1), GmnElement::g(3, 2, 2, 1));

        let g1g2 = GmnElement::torus_element(2, &[1, 1]);
        let s = GmnElement::s(2, 2, 1);
        let lhs = g1g2.mul(&s);
        let rhs = s.mul(&g1g2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "[2,1];[1,1]");
    }

    #[test]
    fn conjugation_moves_torus_generators() {
        let m = 3;
        let n = 4;
        for w in permutations(n) {
            let w = GmnElement::from_perm(m, &w).unwrap();
            for i in 1..=n {
                let c = w.mul(&GmnElement::g(m, n, i, 1)).mul(&w.inverse());
                assert_eq!(c, GmnElement::g(m, n, w.w(i - 1) + 1, 1));
            }
        }
    }

    #[test]
    fn reduced_words() {
        let id = GmnElement::identity(1, 3);
        assert!(reduced_word(&id).is_empty());
        assert_eq!(reduced_word(&GmnElement::s(1, 2, 1)), vec![1]);
        // 1 -> 2 -> 3 -> 1
        let c = GmnElement::from_perm(1, &[1, 2, 0]).unwrap();
        let word = reduced_word(&c);
        assert_eq!(word.len(), 2);
        let prod = word
            .iter()
            .fold(GmnElement::identity(1, 3), |acc, &j| acc.mul(&GmnElement::s(1, 3, j)));
        assert_eq!(prod, c);
        for p in permutations(5) {
            let w = GmnElement::from_perm(1, &p).unwrap();
            let word = reduced_word(&w);
            assert_eq!(word.len(), w.length());
            let prod = word
                .iter()
                .fold(GmnElement::identity(1, 5), |acc, &j| acc.mul(&GmnElement::s(1, 5, j)));
            assert_eq!(prod, w);
        }
    }

    #[test]
    fn group_order() {
        for (m, n) in [(1, 1), (2, 1), (1, 4), (2, 3), (3, 2), (2, 4), (4, 2)] {
            let all = enumerate_group(m, n);
            let fact: usize = (1..=n).product();
            assert_eq!(all.len(), m.pow(n as u32) * fact);
        }
    }

    #[test]
    fn text_round_trip() {
        let x = GmnElement::new(3, &[2, 0, 1], &[0, 2, 1]).unwrap();
        assert_eq!(parse_element(&x.to_string(), 3).unwrap(), x);
        assert!(parse_element("[1,1];[0,0]", 2).is_err());
        assert!(parse_element("[1,2];[0,2]", 2).is_err());
        assert!(parse_element("junk", 2).is_err());
    }
}
