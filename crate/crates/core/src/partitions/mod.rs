//! Partition combinatorics: partitions, vector partitions, multisets of
//! vector partitions, symmetric group characters and the associated
//! numerical invariants.

mod character;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub use character::{character, character_vec};

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `κ_λ = Σ λ_i(λ_i - 2i + 1)`, twice the content sum.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &l)| l as i64 * (l as i64 - 2 * (i as i64 + 1) + 1))
            .sum()
    }

    /// `𝔷_λ = Π_j j^{m_j} m_j!`.
    pub fn z(&self) -> u64 {
        let mut out = 1u64;
        let mut i = 0;
        while i < self.0.len() {
            let j = self.0[i];
            let m = self.0[i..].iter().take_while(|&&p| p == j).count();
            for k in 1..=m {
                out *= (j * k) as u64;
            }
            i += m;
        }
        out
    }

    /// Cells as `(row, column)`, zero based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &l)| (0..l).map(move |j| (i, j)))
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let conj = self.conjugate();
        self.0[i] - j + conj.0[j] - i - 1
    }

    pub fn divides(&self, d: usize) -> bool {
        self.0.iter().all(|p| p % d == 0)
    }

    pub fn scaled(&self, k: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * k).collect())
    }

    pub fn divided(&self, d: usize) -> Result<Partition> {
        if let Some(&p) = self.0.iter().find(|&&p| p % d != 0) {
            return Err(Error::NonDivisible { part: p, divisor: d });
        }
        Ok(Partition(self.0.iter().map(|p| p / d).collect()))
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::new(v)
    }

    /// Multiplicities `m_j` for `j = 1..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().copied().unwrap_or(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    pub fn from_multiplicities(m: &[usize]) -> Partition {
        let mut v = Vec::new();
        for (j, &c) in m.iter().enumerate().rev() {
            v.extend(std::iter::repeat_n(j, c));
        }
        Partition::new(v)
    }
}

/// By size, then parts in decreasing lexicographic order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(['+', ','])
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition part {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in {s:?}")));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// An `L`-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VectorPartition(Vec<Partition>);

impl VectorPartition {
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a vector partition has at least one component");
        VectorPartition(components)
    }

    pub fn single(p: Partition) -> Self {
        VectorPartition(vec![p])
    }

    pub fn zero(l: usize) -> Self {
        VectorPartition(vec![Partition::empty(); l])
    }

    /// `((d_1), ..., (d_L))`.
    pub fn rows(d: &[usize]) -> Self {
        VectorPartition(d.iter().map(|&n| Partition::row(n)).collect())
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn component(&self, a: usize) -> &Partition {
        &self.0[a]
    }

    pub fn num_components(&self) -> usize {
        self.0.len()
    }

    /// `|A⃗| = (|A^1|, ..., |A^L|)`.
    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(|p| p.size()).collect()
    }

    /// `‖A⃗‖ = Σ |A^α|`.
    pub fn norm(&self) -> usize {
        self.0.iter().map(|p| p.size()).sum()
    }

    /// `ℓ(μ⃗) = Σ ℓ(μ^α)`.
    pub fn length(&self) -> usize {
        self.0.iter().map(|p| p.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_empty())
    }

    pub fn conjugate(&self) -> Self {
        VectorPartition(self.0.iter().map(|p| p.conjugate()).collect())
    }

    pub fn z(&self) -> u64 {
        self.0.iter().map(|p| p.z()).product()
    }

    pub fn kappa(&self) -> i64 {
        self.0.iter().map(|p| p.kappa()).sum()
    }

    /// Gcd `D_μ⃗` of all parts of all components.
    pub fn gcd_d(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.0.iter().flat_map(|p| p.parts().iter().copied()).fold(0, |g, p| g.gcd(&p)))
    }

    pub fn divide(&self, d: usize) -> Result<Self> {
        Ok(VectorPartition(self.0.iter().map(|p| p.divided(d)).collect::<Result<_>>()?))
    }

    pub fn divides(&self, d: usize) -> bool {
        self.0.iter().all(|p| p.divides(d))
    }

    pub fn scaled(&self, k: usize) -> Self {
        VectorPartition(self.0.iter().map(|p| p.scaled(k)).collect())
    }

    /// Componentwise multiset union (the index of `p_μ⃗ · p_ν⃗`).
    pub fn union(&self, other: &Self) -> Self {
        VectorPartition(self.0.iter().zip(&other.0).map(|(a, b)| a.union(b)).collect())
    }

    pub fn fits(&self, cap: &[usize]) -> bool {
        self.0.iter().zip(cap).all(|(p, &c)| p.size() <= c)
    }

    pub fn with_component(&self, a: usize, p: Partition) -> Self {
        let mut v = self.0.clone();
        v[a] = p;
        VectorPartition(v)
    }
}

impl fmt::Display for VectorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join("|"))
    }
}

impl fmt::Debug for VectorPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for VectorPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(s);
        let comps = inner.split('|').map(|c| c.parse()).collect::<Result<Vec<Partition>>>()?;
        Ok(VectorPartition(comps))
    }
}

impl serde::Serialize for VectorPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for VectorPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All vector partitions with `|A^α| = d_α`, sorted.
pub fn enumerate_vector(d: &[usize]) -> Vec<VectorPartition> {
    let mut out: Vec<Vec<Partition>> = vec![Vec::new()];
    for &n in d {
        let ps = enumerate(n);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                ps.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    let mut out: Vec<VectorPartition> = out.into_iter().map(VectorPartition).collect();
    out.sort();
    out
}

/// All degree vectors `e⃗` with `0 <= e_α <= cap_α`.
pub fn degree_vectors(cap: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &c in cap {
        out = out.into_iter().flat_map(|p| (0..=c).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// All vector partitions with `|A^α| <= cap_α` (including zero), sorted.
pub fn enumerate_vector_upto(cap: &[usize]) -> Vec<VectorPartition> {
    let mut out: Vec<VectorPartition> = degree_vectors(cap).iter().flat_map(|d| enumerate_vector(d)).collect();
    out.sort();
    out
}

/// A finite multiset of nonzero vector partitions, stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiPartition(Vec<VectorPartition>);

impl MultiPartition {
    pub fn new(mut elements: Vec<VectorPartition>) -> Self {
        assert!(elements.iter().all(|e| !e.is_zero()), "multipartition elements must be nonzero");
        elements.sort();
        MultiPartition(elements)
    }

    pub fn elements(&self) -> &[VectorPartition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `‖Λ‖ = Σ_j |Λ_j|` as a degree vector.
    pub fn norm(&self, l: usize) -> Vec<usize> {
        let mut out = vec![0; l];
        for e in &self.0 {
            for (o, s) in out.iter_mut().zip(e.sizes()) {
                *o += s;
            }
        }
        out
    }

    /// `|Aut Λ| = Π (multiplicity)!`.
    pub fn aut(&self) -> u64 {
        let mut out = 1u64;
        let mut i = 0;
        while i < self.0.len() {
            let m = self.0[i..].iter().take_while(|e| **e == self.0[i]).count();
            out *= (1..=m as u64).product::<u64>();
            i += m;
        }
        out
    }

    /// `θ_Λ = (-1)^{ℓ(Λ)-1} (ℓ(Λ)-1)! / |Aut Λ|`.
    pub fn theta(&self) -> Result<BigRational> {
        if self.0.is_empty() {
            return Err(Error::EmptyMultiPartition);
        }
        let l = self.0.len() as u64;
        let fact: u64 = (1..l).product();
        let sign: i64 = if l % 2 == 1 { 1 } else { -1 };
        Ok(BigRational::new(BigInt::from(sign) * BigInt::from(fact), BigInt::from(self.aut())))
    }
}

/// All multisets `𝔄` of nonzero vector partitions with `‖𝔄‖ = d⃗`.
pub fn enumerate_multi(d: &[usize]) -> Vec<MultiPartition> {
    let pieces: Vec<VectorPartition> =
        enumerate_vector_upto(d).into_iter().filter(|v| !v.is_zero()).collect();
    fn go(
        pieces: &[VectorPartition],
        start: usize,
        rest: &mut Vec<usize>,
        cur: &mut Vec<VectorPartition>,
        out: &mut Vec<MultiPartition>,
    ) {
        if rest.iter().all(|&r| r == 0) {
            out.push(MultiPartition(cur.clone()));
            return;
        }
        for i in start..pieces.len() {
            let sz = pieces[i].sizes();
            if sz.iter().zip(rest.iter()).all(|(s, r)| s <= r) {
                for (r, s) in rest.iter_mut().zip(&sz) {
                    *r -= s;
                }
                cur.push(pieces[i].clone());
                go(pieces, i, rest, cur, out);
                cur.pop();
                for (r, s) in rest.iter_mut().zip(&sz) {
                    *r += s;
                }
            }
        }
    }
    let mut out = Vec::new();
    if d.iter().all(|&x| x == 0) {
        return out;
    }
    go(&pieces, 0, &mut d.to_vec(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Möbius function.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Positive divisors of `n`.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Common divisors of all entries of a degree vector (zeros ignored).
pub fn common_divisors(d: &[usize]) -> Vec<usize> {
    let g = d.iter().fold(0usize, |g, &x| g.gcd(&x));
    if g == 0 {
        return Vec::new();
    }
    divisors(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        let e4 = enumerate(4);
        let mut sorted = e4.clone();
        sorted.sort();
        assert_eq!(e4, sorted);
        let v = enumerate_vector(&[1, 1]);
        assert_eq!(v, vec![VectorPartition::new(vec![p(&[1]), p(&[1])])]);
        assert_eq!(enumerate_vector(&[2, 3]).len(), 6);
    }

    #[test]
    fn conjugate_and_kappa() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3]).kappa(), 6);
        assert_eq!(p(&[2, 1, 1]).kappa(), -4);
        assert_eq!(p(&[3, 1]).kappa(), 4);
        assert_eq!(p(&[1]).kappa(), 0);
        for n in 0..=8 {
            for l in enumerate(n) {
                assert_eq!(l.conjugate().kappa(), -l.kappa());
                let contents: i64 = l.cells().map(|(i, j)| j as i64 - i as i64).sum();
                assert_eq!(l.kappa(), 2 * contents);
            }
        }
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), 6);
        assert_eq!(p(&[2, 1]).z(), 2);
        for n in 1..8 {
            assert_eq!(p(&[n]).z(), n as u64);
        }
        // Σ 1/z_μ = 1 over partitions of n
        for n in 1..=7 {
            let s: BigRational =
                enumerate(n).iter().map(|m| BigRational::new(1.into(), BigInt::from(m.z()))).sum();
            assert_eq!(s, BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        for n in 1..=1000 {
            let s: i64 = divisors(n).iter().map(|&d| mobius(d)).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 });
        }
    }

    #[test]
    fn theta_values() {
        let a = VectorPartition::single(p(&[1]));
        let b = VectorPartition::single(p(&[2]));
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(MultiPartition::new(vec![a.clone()]).theta().unwrap(), r(1, 1));
        assert_eq!(MultiPartition::new(vec![a.clone(), a.clone()]).theta().unwrap(), r(-1, 2));
        assert_eq!(MultiPartition::new(vec![a.clone(), b.clone()]).theta().unwrap(), r(-1, 1));
        assert_eq!(MultiPartition::new(vec![a.clone(), a.clone(), a]).aut(), 6);
        assert_eq!(MultiPartition::new(vec![]).theta(), Err(Error::EmptyMultiPartition));
    }

    #[test]
    fn multi_enumeration() {
        // multisets of nonempty partitions with total size 2: {(2)}, {(1,1)}, {(1),(1)}
        assert_eq!(enumerate_multi(&[2]).len(), 3);
        // total size 3: {(3)},{(21)},{(111)},{(2),(1)},{(11),(1)},{(1),(1),(1)}
        assert_eq!(enumerate_multi(&[3]).len(), 6);
        for m in enumerate_multi(&[2, 1]) {
            assert_eq!(m.norm(2), vec![2, 1]);
        }
        assert!(enumerate_multi(&[0]).is_empty());
    }

    #[test]
    fn gcd_and_divide() {
        let v = VectorPartition::new(vec![p(&[2, 2]), p(&[4])]);
        assert_eq!(v.gcd_d().unwrap(), 2);
        assert_eq!(VectorPartition::single(p(&[1])).gcd_d().unwrap(), 1);
        assert_eq!(v.divide(2).unwrap(), VectorPartition::new(vec![p(&[1, 1]), p(&[2])]));
        assert_eq!(v.divide(4), Err(Error::NonDivisible { part: 2, divisor: 4 }));
        assert_eq!(VectorPartition::zero(2).gcd_d(), Err(Error::ZeroInput));
    }

    #[test]
    fn text_forms() {
        let v: VectorPartition = "[3+1|2]".parse().unwrap();
        assert_eq!(v, VectorPartition::new(vec![p(&[3, 1]), p(&[2])]));
        assert_eq!(v.to_string(), "[3+1|2]");
        let e: VectorPartition = "[0|1]".parse().unwrap();
        assert_eq!(e.to_string(), "[0|1]");
        assert_eq!("3+1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("3+x".parse::<Partition>().is_err());
    }
}
