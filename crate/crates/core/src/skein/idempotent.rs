use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::hecke::HeckeElement;
use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::partitions::{enumerate, Partition};

/// Largest level for which central idempotents are produced.
pub const MAX_IDEMPOTENT_LEVEL: usize = 7;

/// Central idempotent `e_A = numerator / denominator` of `H_{|A|}`.
#[derive(Clone, Debug)]
pub struct CentralIdempotent {
    pub partition: Partition,
    pub numerator: HeckeElement,
    pub denominator: QPoly,
    /// Number of standard tableaux of shape `A`; the trace of `e_A` is this
    /// many times the trace of a minimal idempotent.
    pub dimension: u64,
}

/// Which central element separates the blocks at a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separator {
    /// The full twist, eigenvalue `q^{κ_A/2}` on block `A`.
    FullTwist,
    /// The sum of Jucys-Murphy elements, eigenvalue `Σ_{x∈A} q^{c(x)}`.
    JucysMurphy,
}

/// Eigenvalue of the separating central element on block `A`.
pub fn eigenvalue(a: &Partition, sep: Separator) -> QPoly {
    match sep {
        Separator::FullTwist => QPoly::monomial(a.kappa() as i32, 1),
        Separator::JucysMurphy => {
            let mut out = QPoly::zero();
            for (i, j) in a.cells() {
                out += &QPoly::monomial(2 * (j as i32 - i as i32), 1);
            }
            out
        }
    }
}

/// Full twist through level 5. From level 6 on the full twist no longer
/// separates blocks (`κ_{(3,3)} = κ_{(4,1,1)}`), and the Jucys-Murphy sum has
/// much lower degree in `q`, which keeps interpolation cheap at level 7.
pub fn separator(n: usize) -> Separator {
    if n <= 5 {
        Separator::FullTwist
    } else {
        Separator::JucysMurphy
    }
}

/// `x · C` for the separating element `C` at level `x.level()`.
pub fn apply_separator(x: &HeckeElement, sep: Separator) -> Result<HeckeElement> {
    let n = x.level();
    match sep {
        Separator::FullTwist => {
            let word: Vec<i32> = (0..n).flat_map(|_| (1..n as i32).collect::<Vec<_>>()).collect();
            x.right_mul_word(&word)
        }
        Separator::JucysMurphy => {
            // L_1 = 1, L_k = g_{k-1} ⋯ g_1 g_1 ⋯ g_{k-1}
            let mut out = x.clone();
            for k in 2..=n as i32 {
                let word: Vec<i32> = (1..k).rev().chain(1..k).collect();
                out = out.add(&x.right_mul_word(&word)?)?;
            }
            Ok(out)
        }
    }
}

type LevelCache = RwLock<BTreeMap<usize, Arc<Vec<CentralIdempotent>>>>;

fn cache() -> &'static LevelCache {
    static CACHE: OnceLock<LevelCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// All central idempotents of `H_n`, in the order of [`enumerate`].
pub fn idempotents(n: usize) -> Result<Arc<Vec<CentralIdempotent>>> {
    if n > MAX_IDEMPOTENT_LEVEL {
        return Err(Error::IdempotentLevel(n));
    }
    if let Some(v) = cache().read().expect("idempotent cache").get(&n) {
        return Ok(v.clone());
    }
    let built = Arc::new(build_level(n)?);
    let mut w = cache().write().expect("idempotent cache");
    Ok(w.entry(n).or_insert(built).clone())
}

fn build_level(n: usize) -> Result<Vec<CentralIdempotent>> {
    let parts = enumerate(n);
    let sep = separator(n);
    let lambdas: Vec<QPoly> = parts.iter().map(|a| eigenvalue(a, sep)).collect();
    for i in 0..lambdas.len() {
        for j in 0..i {
            if lambdas[i] == lambdas[j] {
                return Err(Error::IdempotentLevel(n));
            }
        }
    }
    // powers C^k for k < number of blocks
    let mut powers = vec![HeckeElement::identity(n)?];
    for _ in 1..parts.len() {
        let next = apply_separator(powers.last().unwrap(), sep)?;
        powers.push(next);
    }
    let mut out = Vec::with_capacity(parts.len());
    for (ai, a) in parts.iter().enumerate() {
        // Lagrange numerator Π_{B≠A} (x - λ_B) as coefficients in x
        let mut poly = vec![QPoly::one()];
        let mut den = QPoly::one();
        for (bi, lb) in lambdas.iter().enumerate() {
            if bi == ai {
                continue;
            }
            let mut next = vec![QPoly::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &c.mul(lb);
            }
            poly = next;
            let mut diff = lambdas[ai].clone();
            diff -= lb;
            den = den.mul(&diff);
        }
        let mut num = HeckeElement::zero(n)?;
        for (k, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                num = num.add(&powers[k].scale(c))?;
            }
        }
        out.push(CentralIdempotent { partition: a.clone(), numerator: num, denominator: den, dimension: dimension(a) });
    }
    Ok(out)
}

fn dimension(a: &Partition) -> u64 {
    let n = a.size() as u64;
    let hooks: u64 = a.cells().map(|(i, j)| a.hook(i, j) as u64).product();
    (1..=n).product::<u64>() / hooks
}

/// The central idempotent of block `A` in `H_{|A|}`.
pub fn central_idempotent(a: &Partition) -> Result<CentralIdempotent> {
    let all = idempotents(a.size())?;
    Ok(all.iter().find(|e| &e.partition == a).expect("every partition has a block").clone())
}
