use super::element::GmnElement;
use crate::error::{Error, Result};

/// A composition a = (a_0, ..., a_{m-1}) of n; zero parts allowed.
pub type Composition = Vec<usize>;

/// Minimal-length representatives of the left cosets w S_P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    pub composition: Composition,
    pub reps: Vec<GmnElement>,
}

/// All compositions of n into exactly `parts` non-negative parts, lexicographically decreasing.
pub fn compositions(n: usize, parts: usize) -> Vec<Composition> {
    fn go(n: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if parts == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=n).rev() {
            prefix.push(first);
            go(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

/// 0-based half-open position ranges of the blocks of a composition.
pub fn block_ranges(a: &[usize]) -> Vec<(usize, usize)> {
    let mut start = 0;
    a.iter()
        .map(|&k| {
            let r = (start, start + k);
            start += k;
            r
        })
        .collect()
}

/// Block index (into `a`) of each 0-based position.
pub fn block_of_positions(a: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (b, &k) in a.iter().enumerate() {
        out.extend(std::iter::repeat_n(b, k));
    }
    out
}

/// Simple roots j (1-based, s_j = (j, j+1)) inside the parabolic of a composition.
pub fn simple_roots_of(a: &[usize]) -> Vec<usize> {
    let blocks = block_of_positions(a);
    (1..blocks.len())
        .filter(|&j| blocks[j - 1] == blocks[j])
        .collect()
}

/// Block sizes (no zero parts) of the parabolic generated by the given simple roots.
pub fn blocks_of_simple_roots(n: usize, roots: &[usize]) -> Result<Composition> {
    let mut sizes = Vec::new();
    let mut cur = 1;
    for j in 1..n {
        if roots.contains(&j) {
            cur += 1;
        } else {
            sizes.push(cur);
            cur = 1;
        }
    }
    sizes.push(cur);
    if let Some(&bad) = roots.iter().find(|&&j| j == 0 || j >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n: n - 1 });
    }
    Ok(sizes)
}

fn check_composition(n: usize, a: &[usize]) -> Result<()> {
    if a.iter().sum::<usize>() != n {
        return Err(Error::InvalidComposition {
            parts: a.to_vec(),
            n,
        });
    }
    Ok(())
}

/// The minimal-length coset representatives for S_{a_0} x ... x S_{a_{m-1}}: permutations
/// increasing on every block, sorted lexicographically (identity first).
pub fn min_coset_reps(m: usize, n: usize, a: &[usize]) -> Result<CosetReps> {
    check_composition(n, a)?;
    let ranges = block_ranges(a);
    let mut reps = Vec::new();
    // assign each value 0..n to a block; block contents sorted give w on that block
    let mut assign = vec![0usize; n];
    fn go(
        v: usize,
        n: usize,
        counts: &mut Vec<usize>,
        a: &[usize],
        assign: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(assign.clone());
            return;
        }
        for b in 0..a.len() {
            if counts[b] < a[b] {
                counts[b] += 1;
                assign[v] = b;
                go(v + 1, n, counts, a, assign, out);
                counts[b] -= 1;
            }
        }
    }
    let mut assignments = Vec::new();
    go(0, n, &mut vec![0; a.len()], a, &mut assign, &mut assignments);
    for asg in assignments {
        let mut perm = vec![0usize; n];
        let mut fill: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        for (v, &b) in asg.iter().enumerate() {
            perm[fill[b]] = v;
            fill[b] += 1;
        }
        reps.push(GmnElement::from_perm(m, &perm)?);
    }
    reps.sort();
    Ok(CosetReps {
        composition: a.to_vec(),
        reps,
    })
}

/// Split a permutation-part w as c * p with c a minimal coset representative and p in S_P.
pub fn split_coset(w: &GmnElement, a: &[usize]) -> (GmnElement, GmnElement) {
    let n = w.n();
    let ranges = block_ranges(a);
    let mut cperm = vec![0usize; n];
    for &(s, e) in &ranges {
        let mut vals: Vec<usize> = (s..e).map(|i| w.w(i)).collect();
        vals.sort_unstable();
        for (k, v) in vals.into_iter().enumerate() {
            cperm[s + k] = v;
        }
    }
    let c = GmnElement::from_perm(w.m(), &cperm).expect("permutation");
    let p = c.inverse().mul(&w.perm_part());
    (c, p)
}

/// True when a permutation preserves every block setwise.
pub fn in_parabolic(w: &GmnElement, a: &[usize]) -> bool {
    let blocks = block_of_positions(a);
    (0..w.n()).all(|i| blocks[w.w(i)] == blocks[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let r = min_coset_reps(1, 3, &[3]).unwrap();
        assert_eq!(r.reps.len(), 1);
        assert!(r.reps[0].is_identity());

        let r = min_coset_reps(1, 2, &[1, 1]).unwrap();
        assert_eq!(r.reps.len(), 2);
        assert!(r.reps[0].is_identity());
        assert_eq!(r.reps[1], GmnElement::s(1, 2, 1));

        let r = min_coset_reps(1, 3, &[1, 2]).unwrap();
        assert_eq!(r.reps.len(), 3);

        assert!(min_coset_reps(1, 3, &[1, 1]).is_err());
    }

    #[test]
    fn reps_are_minimal_and_cover() {
        let a = [2, 0, 1, 2];
        let n = 5;
        let reps = min_coset_reps(1, n, &a).unwrap().reps;
        assert_eq!(reps.len(), 120 / 4);
        for w in super::super::element::permutations(n) {
            let w = GmnElement::from_perm(1, &w).unwrap();
            let (c, p) = split_coset(&w, &a);
            assert!(reps.contains(&c));
            assert!(in_parabolic(&p, &a));
            assert_eq!(c.mul(&p), w);
            assert!(c.length() <= w.length());
        }
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(5, 3).len(), 21);
    }

    #[test]
    fn simple_roots_and_blocks() {
        assert_eq!(simple_roots_of(&[2, 1]), vec![1]);
        assert_eq!(simple_roots_of(&[1, 1, 1]), Vec::<usize>::new());
        assert_eq!(blocks_of_simple_roots(4, &[1, 3]).unwrap(), vec![2, 2]);
        assert_eq!(blocks_of_simple_roots(3, &[]).unwrap(), vec![1, 1, 1]);
    }
}
