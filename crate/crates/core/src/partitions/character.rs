use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{Partition, VectorPartition};
use crate::error::{Error, Result};

type Memo = RwLock<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Irreducible character `χ_λ(C_μ)` of the symmetric group.
///
/// Murnaghan-Nakayama, removing rim hooks on the beta-set of `λ`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("χ_{lambda:?} at class {mu:?}")));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

/// `χ_A⃗(C_μ⃗) = Π_α χ_{A^α}(C_{μ^α})`.
pub fn character_vec(a: &VectorPartition, mu: &VectorPartition) -> Result<i64> {
    if a.num_components() != mu.num_components() {
        return Err(Error::SizeMismatch(format!("{a} against {mu}")));
    }
    a.components().iter().zip(mu.components()).map(|(x, y)| character(x, y)).product()
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo().read().expect("memo lock").get(&key) {
        return v;
    }
    let r = mu[0];
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> =
            nb.iter().enumerate().map(|(i, &x)| x - (l - 1 - i)).filter(|&p| p > 0).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, &mu[1..]);
    }
    memo().write().expect("memo lock").insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::super::enumerate;
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn small_tables() {
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(character(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
        assert_eq!(character(&p(&[3, 1]), &p(&[2, 2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 2]), &p(&[3, 1])).unwrap(), -1);
        assert_eq!(character(&Partition::empty(), &Partition::empty()).unwrap(), 1);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn orthogonality_and_dimensions() {
        for n in 1..=7 {
            let ps = enumerate(n);
            let fact: i64 = (1..=n as i64).product();
            for a in &ps {
                // dimension from the hook length formula
                let hooks: i64 = a.cells().map(|(i, j)| a.hook(i, j) as i64).product();
                assert_eq!(character(a, &Partition::new(vec![1; n])).unwrap(), fact / hooks);
                for b in &ps {
                    let s: i64 = ps
                        .iter()
                        .map(|m| {
                            character(a, m).unwrap() * character(b, m).unwrap() * (fact / m.z() as i64)
                        })
                        .sum();
                    assert_eq!(s, if a == b { fact } else { 0 });
                }
                // sign twist by conjugation
                for m in &ps {
                    let sign = if (n - m.len()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(character(&a.conjugate(), m).unwrap(), sign * character(a, m).unwrap());
                }
            }
        }
    }
}
