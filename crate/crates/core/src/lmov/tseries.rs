use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::pipeline::{phi, PartitionFunctionData};
use super::report::CheckReport;
use crate::error::Result;
use crate::exactring::{LaurentQT, RationalQT};
use crate::partitions::{common_divisors, degree_vectors, enumerate_multi, enumerate_vector, mobius, VectorPartition};
use crate::symfun::{schur_monomial, SchurSeries, SymSeries};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `T_d⃗` built from `P` and from the multi-cover formula, both in the
/// Schur basis of `y`.
#[derive(Clone, Debug)]
pub struct TSeriesData {
    pub degree: Vec<usize>,
    pub definition: SchurSeries,
    pub multicover: SchurSeries,
    /// `Φ_e⃗` in the power sums of `x` for each `e⃗ = d⃗/k`.
    pub phis: BTreeMap<Vec<usize>, SymSeries>,
}

/// `Φ_e⃗ = Σ_{‖𝔄‖=e⃗} θ_𝔄 Π_j W_{𝔄_j} s_{𝔄_j}(x)`, as a series with cap `cap`.
pub fn phi_series(z: &PartitionFunctionData, e: &[usize], cap: &[usize]) -> Result<SymSeries> {
    let mut out = SymSeries::zero(cap);
    let mut schur_cache: BTreeMap<VectorPartition, SymSeries> = BTreeMap::new();
    for m in enumerate_multi(e) {
        let mut term = SymSeries::one(cap);
        for a in m.elements() {
            let s = schur_cache.entry(a.clone()).or_insert_with(|| schur_monomial(cap, a).to_power()).clone();
            term = term.mul(&s.scale(&z.w(a)));
        }
        out = out.add(&term.scale(&RationalQT::constant(m.theta()?)));
    }
    Ok(out)
}

/// `p_μ⃗(x) = p_μ⃗(y)/φ_μ⃗(q)`.
pub fn to_y(s: &SymSeries) -> SymSeries {
    s.map_coeffs(|mu, c| c / &phi(mu))
}

fn homogeneous(s: &SchurSeries, d: &[usize]) -> SchurSeries {
    SchurSeries::from_terms(s.cap(), s.terms().filter(|(k, _)| k.sizes() == d).map(|(k, v)| (k.clone(), v.clone())))
}

pub fn build_t(z: &PartitionFunctionData, p: &BTreeMap<VectorPartition, RationalQT>, d: &[usize]) -> Result<TSeriesData> {
    let definition = SchurSeries::from_terms(
        d,
        enumerate_vector(d).into_iter().filter_map(|b| p.get(&b).map(|v| (b, v.clone()))),
    );
    let mut phis = BTreeMap::new();
    let mut acc = SymSeries::zero(d);
    for k in common_divisors(d) {
        let m = mobius(k);
        if m == 0 {
            continue;
        }
        let e: Vec<usize> = d.iter().map(|x| x / k).collect();
        let phi_e = phi_series(z, &e, d)?;
        acc = acc.add(&phi_e.adams(k).scale(&RationalQT::constant(ratio(m, k as i64))));
        phis.insert(e, phi_e);
    }
    let multicover = homogeneous(&to_y(&acc).to_schur(), d);
    Ok(TSeriesData { degree: d.to_vec(), definition, multicover, phis })
}

/// `Ord_p` of a `y`-Schur series: the least `ord_p` of its coefficients.
pub fn ord_p_series(s: &SchurSeries, p: u64) -> Result<Option<i64>> {
    let mut out: Option<i64> = None;
    for (_, c) in s.terms() {
        if c.is_zero() {
            continue;
        }
        let o = c.ord_p(p)?;
        out = Some(out.map_or(o, |x| x.min(o)));
    }
    Ok(out)
}

/// `Ord_p(Φ_{p e⃗} - Adams_p(Φ_e⃗)/p)` in the `y` variables.
pub fn phi_gap_ord_p(z: &PartitionFunctionData, e: &[usize], p: u64) -> Result<Option<i64>> {
    let big: Vec<usize> = e.iter().map(|x| x * p as usize).collect();
    let top = phi_series(z, &big, &big)?;
    let low = phi_series(z, e, &big)?.adams(p as usize).scale(&RationalQT::constant(ratio(1, p as i64)));
    ord_p_series(&homogeneous(&to_y(&top.sub(&low)).to_schur(), &big), p)
}

/// `b(q) = Π_{n ≤ top} [n]^2`.
fn clearing(top: usize) -> RationalQT {
    let mut b = LaurentQT::one();
    for n in 1..=top.max(1) {
        let q = LaurentQT::quantum_int(n as i32);
        b = &b * &(&q * &q);
    }
    RationalQT::from(b)
}

/// Two-route equality, membership after clearing by `Π[n]^2`, `Ord_p T ≥ 0`,
/// and the sampled `Φ` gap inequality, over every degree within the cap.
pub fn check_t(z: &PartitionFunctionData, p: &BTreeMap<VectorPartition, RationalQT>, primes: &[u64]) -> Result<Vec<CheckReport>> {
    let mut routes = CheckReport::new("t_two_routes");
    let mut member = CheckReport::new("t_membership");
    let mut ord = CheckReport::new("t_ord_p");
    let mut gap = CheckReport::new("phi_ord_p");
    let mut ords: BTreeMap<String, i64> = BTreeMap::new();
    let mut gaps: BTreeMap<String, i64> = BTreeMap::new();
    for d in degree_vectors(&z.cap) {
        let total: usize = d.iter().sum();
        if total == 0 {
            continue;
        }
        let t = build_t(z, p, &d)?;
        for (b, v) in t.definition.sub(&t.multicover).terms() {
            if !v.is_zero() {
                routes.fail(b, v);
            }
        }
        let b = clearing(total);
        for (key, v) in t.definition.terms() {
            let cleared = v * &b;
            member.expect(cleared.in_z2_ring(), key, v);
        }
        for &prime in primes {
            if let Some(o) = ord_p_series(&t.definition, prime)? {
                ords.insert(format!("{d:?} p={prime}"), o);
                ord.expect(o >= 0, format!("{d:?} p={prime}"), format!("Ord_p = {o}"));
            }
            let big: Vec<usize> = d.iter().map(|x| x * prime as usize).collect();
            if big.iter().zip(&z.cap).all(|(b, c)| b <= c) {
                if let Some(o) = phi_gap_ord_p(z, &d, prime)? {
                    gaps.insert(format!("{d:?} p={prime}"), o);
                    gap.expect(o >= 0, format!("{d:?} p={prime}"), format!("Ord_p = {o}"));
                }
            }
        }
    }
    ord.note("ord_p", ords);
    gap.note("ord_p", gaps);
    Ok(vec![routes, member, ord, gap])
}
