//! Permutation tables for the standard basis `T_w` of `H_n`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest strand count for which tables are built.
pub const MAX_STRANDS: usize = 9;

/// All permutations of `0..n` in lexicographic order, with the action of
/// simple transpositions on both sides.
pub struct PermTable {
    pub n: usize,
    perms: Vec<u8>,
    /// `right[i][v]`: index of `v·s_{i+1}`.
    right: Vec<Vec<u32>>,
    /// Whether right multiplication by `s_{i+1}` increases length.
    right_up: Vec<Vec<bool>>,
    left: Vec<Vec<u32>>,
    left_up: Vec<Vec<bool>>,
    /// For the trace: position `k` (1-based) of the largest value and the
    /// index in `S_{n-1}` of the permutation with it deleted.
    split: Vec<(u8, u32)>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

fn unrank(mut r: usize, n: usize) -> Vec<u8> {
    let mut digits = vec![0usize; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

impl PermTable {
    fn build(n: usize) -> Self {
        let count = factorial(n);
        let mut perms = Vec::with_capacity(count * n);
        for r in 0..count {
            perms.extend(unrank(r, n));
        }
        let gens = n.saturating_sub(1);
        let mut right = vec![vec![0u32; count]; gens];
        let mut right_up = vec![vec![false; count]; gens];
        let mut left = vec![vec![0u32; count]; gens];
        let mut left_up = vec![vec![false; count]; gens];
        let mut split = vec![(0u8, 0u32); count];
        let mut buf = vec![0u8; n];
        let mut inv = vec![0usize; n];
        for v in 0..count {
            let p = &perms[v * n..(v + 1) * n];
            for (pos, &x) in p.iter().enumerate() {
                inv[x as usize] = pos;
            }
            for i in 0..gens {
                buf.copy_from_slice(p);
                buf.swap(i, i + 1);
                right[i][v] = rank(&buf) as u32;
                right_up[i][v] = p[i] < p[i + 1];
                buf.copy_from_slice(p);
                buf.swap(inv[i], inv[i + 1]);
                left[i][v] = rank(&buf) as u32;
                left_up[i][v] = inv[i] < inv[i + 1];
            }
            if n > 0 {
                let k = inv[n - 1];
                let rest: Vec<u8> = p.iter().copied().filter(|&x| x as usize != n - 1).collect();
                split[v] = ((k + 1) as u8, rank(&rest) as u32);
            }
        }
        PermTable { n, perms, right, right_up, left, left_up, split }
    }

    pub fn len(&self) -> usize {
        self.perms.len().checked_div(self.n).unwrap_or(1)
    }

    pub fn perm(&self, v: usize) -> &[u8] {
        &self.perms[v * self.n..(v + 1) * self.n]
    }

    /// `(index of v·s_i, length goes up)` for generator `i` in `1..n`.
    #[inline]
    pub fn right(&self, i: usize, v: usize) -> (usize, bool) {
        (self.right[i - 1][v] as usize, self.right_up[i - 1][v])
    }

    #[inline]
    pub fn left(&self, i: usize, v: usize) -> (usize, bool) {
        (self.left[i - 1][v] as usize, self.left_up[i - 1][v])
    }

    #[inline]
    pub fn split(&self, v: usize) -> (usize, usize) {
        let (k, r) = self.split[v];
        (k as usize, r as usize)
    }
}

/// Shared table for `S_n`.
pub fn table(n: usize) -> Result<Arc<PermTable>> {
    static TABLES: [OnceLock<Arc<PermTable>>; MAX_STRANDS + 1] = [const { OnceLock::new() }; MAX_STRANDS + 1];
    if n > MAX_STRANDS {
        return Err(Error::CapExceeded(format!("{n} strands exceeds the maximum of {MAX_STRANDS}")));
    }
    Ok(TABLES[n].get_or_init(|| Arc::new(PermTable::build(n))).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank() {
        for n in 0..=5 {
            for r in 0..factorial(n) {
                assert_eq!(rank(&unrank(r, n)), r);
            }
        }
        let t = table(3).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.perm(0), &[0, 1, 2]);
        assert_eq!(t.perm(5), &[2, 1, 0]);
    }

    #[test]
    fn split_structure() {
        let t = table(3).unwrap();
        // [2,0,1]: largest value at position 1, rest [0,1]
        let v = rank(&[2, 0, 1]);
        assert_eq!(t.split(v), (1, 0));
        assert!(table(MAX_STRANDS + 1).is_err());
    }
}
