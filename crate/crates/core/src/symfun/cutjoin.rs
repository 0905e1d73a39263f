use num_bigint::BigInt;
use num_rational::BigRational;

use super::SymSeries;
use crate::partitions::Partition;

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn replace(parts: &[usize], remove: &[usize], add: &[usize]) -> Partition {
    let mut v = parts.to_vec();
    for r in remove {
        let pos = v.iter().position(|p| p == r).expect("part present");
        v.remove(pos);
    }
    v.extend_from_slice(add);
    Partition::new(v)
}

/// Linear cut-and-join operator in alphabet `alpha`:
/// `Σ_{i,j≥1} (ij p_{i+j} ∂_i ∂_j + (i+j) p_i p_j ∂_{i+j})`.
///
/// Schur functions are eigenvectors with eigenvalue `κ`.
pub fn cutjoin_apply(f: &SymSeries, alpha: usize) -> SymSeries {
    let mut out = SymSeries::zero(f.cap());
    for (key, c) in f.terms() {
        let comp = key.component(alpha);
        let m = comp.multiplicities();
        let values: Vec<usize> = (1..m.len()).filter(|&j| m[j] > 0).collect();
        // cut: two parts merge
        for &i in &values {
            for &j in &values {
                let pairs = if i == j { m[i] * (m[i] - 1) } else { m[i] * m[j] };
                if pairs == 0 {
                    continue;
                }
                let new = replace(comp.parts(), &[i, j], &[i + j]);
                out.add_term(&key.with_component(alpha, new), &c.scale(&int(i * j * pairs)));
            }
        }
        // join: one part splits
        for &k in &values {
            for i in 1..k {
                let new = replace(comp.parts(), &[k], &[i, k - i]);
                out.add_term(&key.with_component(alpha, new), &c.scale(&int(k * m[k])));
            }
        }
    }
    out
}

/// Quadratic part `Σ_{i,j≥1} ij p_{i+j} (∂_i F)(∂_j F)` in alphabet `alpha`.
pub fn cutjoin_quadratic(f: &SymSeries, alpha: usize) -> SymSeries {
    let top = f.cap()[alpha];
    let derivs: Vec<SymSeries> = (0..=top).map(|i| if i == 0 { SymSeries::zero(f.cap()) } else { f.derivative(alpha, i) }).collect();
    let mut out = SymSeries::zero(f.cap());
    for i in 1..top {
        for j in 1..=top - i {
            if derivs[i].is_empty() || derivs[j].is_empty() {
                continue;
            }
            let prod = derivs[i].mul(&derivs[j]).times_p(alpha, i + j);
            out = out.add(&prod.scale(&crate::exactring::RationalQT::integer((i * j) as i64)));
        }
    }
    out
}
