use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::pipeline::{
    reconstruct_f, reframe_convolution, resum_f, FPAmplitudes, FreeEnergyData, NTable, PartitionFunctionData,
    StructureViolation,
};
use super::report::CheckReport;
use crate::error::Result;
use crate::exactring::{qint, LaurentQT, RationalQT};
use crate::partitions::{degree_vectors, enumerate_vector_upto, Partition, VectorPartition};
use crate::symfun::{cutjoin_apply, cutjoin_quadratic, unknot_invariant, SchurSeries, SymSeries};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `W_{A⃗^t}(q,t) = (-1)^{‖A⃗‖} W_A⃗(q^{-1},t)` on every pair in the table.
pub fn check_symmetry(z: &PartitionFunctionData) -> CheckReport {
    let mut r = CheckReport::new("conjugation_symmetry");
    let mut checked = 0;
    for (a, w) in &z.table {
        let at = a.conjugate();
        if at < *a {
            continue;
        }
        let sign = if a.norm() % 2 == 0 { 1 } else { -1 };
        let lhs = z.w(&at);
        let rhs = w.invert_q().scale(&int(sign));
        if lhs != rhs {
            r.fail(a, &lhs - &rhs);
        }
        checked += 1;
    }
    r.note("pairs", checked);
    r
}

/// Cyclotomic polynomial `Φ_m(q)` in half-unit exponents.
fn cyclotomic(m: usize) -> LaurentQT {
    let mut p = LaurentQT::from_terms([(2 * m as i32, 0, int(1)), (0, 0, int(-1))]);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic(d)).expect("cyclotomic factor");
        }
    }
    p
}

/// `order_at_q1(F_μ⃗) ≥ ℓ(μ⃗) - 2` and `den(F̃_μ⃗) | Π_{m≤‖μ⃗‖} Φ_m(q)^2`.
pub fn check_degree(f: &FreeEnergyData) -> CheckReport {
    let mut r = CheckReport::new("degree");
    let top: usize = f.cap().iter().sum();
    let mut bound = LaurentQT::one();
    let mut bounds = vec![bound.clone()];
    for m in 1..=top {
        let c = cyclotomic(m);
        bound = &bound * &(&c * &c);
        bounds.push(bound.clone());
    }
    let mut worst: Option<i64> = None;
    for mu in f.keys() {
        let c = f.coeff(&mu);
        if c.is_zero() {
            continue;
        }
        let ord = c.order_at_q1().expect("nonzero");
        let slack = ord - (mu.length() as i64 - 2);
        worst = Some(worst.map_or(slack, |w: i64| w.min(slack)));
        r.expect(slack >= 0, format!("{mu} order"), format!("order {ord} below {}", mu.length() as i64 - 2));
        let t = f.tilde(&mu);
        r.expect(bounds[mu.norm()].exact_div(t.den()).is_ok(), format!("{mu} pole form"), t.den());
    }
    r.note("framing", &f.framing);
    if let Some(w) = worst {
        r.note("min_order_slack", w);
    }
    r
}

/// The colored unknot invariant of a multi-color on an unlink.
fn unlink_invariant(a: &VectorPartition) -> RationalQT {
    a.components().iter().map(unknot_invariant).fold(RationalQT::one(), |x, y| &x * &y)
}

/// Limits of `W_A⃗(ℒ) / W_A⃗(unlink)` at `q = 1` and their factorization.
/// Returns the report and `ξ_α(t)` for each component (when `(1)` is in the cap).
pub fn q1_limit(z: &PartitionFunctionData) -> (CheckReport, Vec<Option<RationalQT>>) {
    let mut r = CheckReport::new("q1_limit");
    let l = z.num_components();
    let mut limits: BTreeMap<VectorPartition, RationalQT> = BTreeMap::new();
    for (a, w) in &z.table {
        if a.is_zero() {
            continue;
        }
        let ratio = w / &unlink_invariant(a);
        if ratio.is_zero() {
            r.fail(a, "ratio vanishes identically");
            continue;
        }
        let (ord, na, db) = ratio.leading_at_q1().expect("nonzero");
        if ord != 0 {
            r.fail(a, format!("ratio has order {ord} at q = 1"));
            continue;
        }
        limits.insert(a.clone(), RationalQT::new(na, db).expect("nonzero"));
    }
    let xi: Vec<Option<RationalQT>> = (0..l)
        .map(|alpha| {
            let key = VectorPartition::zero(l).with_component(alpha, Partition::row(1));
            limits.get(&key).cloned()
        })
        .collect();
    for (a, v) in &limits {
        let mut expected = RationalQT::one();
        let mut known = true;
        for (alpha, p) in a.components().iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            match &xi[alpha] {
                Some(x) => expected = &expected * &x.pow(p.size() as u32),
                None => known = false,
            }
        }
        if known && *v != expected {
            r.fail(a, v - &expected);
        }
    }
    r.note("xi", xi.iter().map(|x| x.as_ref().map(|v| v.to_string())).collect::<Vec<_>>());
    (r, xi)
}

/// Reframing by convolution agrees with reframing `W` directly.
pub fn check_reframing(z: &PartitionFunctionData, framings: &[Vec<i64>]) -> Result<CheckReport> {
    let mut r = CheckReport::new("reframing");
    let base = z.zhat_table()?;
    for omega in framings {
        let conv = reframe_convolution(&base, omega)?;
        let direct = z.framed(omega)?.zhat_table()?;
        for (mu, v) in &direct {
            let c = conv.get(mu).cloned().unwrap_or_else(RationalQT::zero);
            if c != *v {
                r.fail(format!("{mu} at {omega:?}"), &c - v);
            }
        }
    }
    r.note("framings", framings);
    Ok(r)
}

/// For each component `α`: `Z^{-1} Σ_A⃗ κ_{A^α} W_A⃗ s_A⃗` against
/// `CJ_α(F) + Σ ij p_{i+j} ∂_iF ∂_jF`, at the given framing.
pub fn cutjoin_check(z: &PartitionFunctionData, tau: &[i64]) -> Result<CheckReport> {
    let mut r = CheckReport::new("cut_and_join");
    let framed = z.framed(tau)?;
    let f = framed.power().log()?;
    let zinv = f.scale(&RationalQT::integer(-1)).exp()?;
    let mut lhs_min: Option<i64> = None;
    let mut rhs_min: Option<i64> = None;
    let lowest = |s: &SymSeries, acc: &mut Option<i64>| {
        for (_, c) in s.terms() {
            if !c.is_zero() {
                let o = c.order_at_q1().expect("nonzero");
                *acc = Some(acc.map_or(o, |a| a.min(o)));
            }
        }
    };
    for alpha in 0..z.num_components() {
        let weighted = SchurSeries::from_terms(
            &z.cap,
            framed.table.iter().map(|(a, w)| (a.clone(), w.scale(&int(a.component(alpha).kappa())))),
        );
        let lhs = zinv.mul(&weighted.to_power());
        let rhs = cutjoin_apply(&f, alpha).add(&cutjoin_quadratic(&f, alpha));
        lowest(&lhs, &mut lhs_min);
        lowest(&rhs, &mut rhs_min);
        for (mu, v) in lhs.sub(&rhs).terms() {
            if !v.is_zero() {
                r.fail(format!("{mu} component {alpha} framing {tau:?}"), v);
            }
        }
    }
    r.note("framing", tau);
    r.note("lhs_min_q1_order", lhs_min);
    r.note("rhs_min_q1_order", rhs_min);
    Ok(r)
}

/// One-row pole bounds, membership in `Q[[1]^2, t^{±1/2}]` of
/// `Π[d_α] Ẑ_d⃗` and `[d_α]^2 F̃_d⃗` for every `α`.
pub fn check_row_poles(z: &PartitionFunctionData, f: &FreeEnergyData) -> Result<CheckReport> {
    let mut r = CheckReport::new("row_poles");
    let framed = if f.signed { z.framed_signed(&f.framing)? } else { z.framed(&f.framing)? };
    for d in degree_vectors(&z.cap) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let mu = VectorPartition::rows(&d);
        let mut factor = RationalQT::one();
        for &n in d.iter().filter(|&&n| n > 0) {
            factor = &factor * &qint(n as i32);
        }
        let scaled = &factor * &framed.zhat(&mu)?;
        r.expect(scaled.in_z2_ring(), format!("{mu} Zhat framing {:?}", f.framing), &scaled);
        let tilde = f.tilde(&mu);
        for &n in d.iter().filter(|&&n| n > 0) {
            let q = qint(n as i32);
            let v = &(&q * &q) * &tilde;
            r.expect(v.in_z2_ring(), format!("{mu} Ftilde [{n}]^2 framing {:?}", f.framing), &v);
        }
    }
    Ok(r)
}

/// Pole data `G_ν⃗(t)` of `F̃`, fixed by
/// `([1]^2 F̃_ν⃗)|_{q=1} = Σ_{d|D_ν⃗} G_{ν⃗/d}(t^d)/d^3`, so that
/// `F̃_μ⃗ - Σ_{d|D_μ⃗} G_{μ⃗/d}(t^d)/(d [d]^2)` has no pole at roots of unity.
/// `None` marks a pole of order above 2 at `q = 1`.
pub fn residue_table(f: &FreeEnergyData) -> BTreeMap<VectorPartition, Option<RationalQT>> {
    let mut keys = f.keys();
    keys.sort_by_key(|k| k.norm());
    let z2 = RationalQT::from(LaurentQT::z_squared());
    let mut out: BTreeMap<VectorPartition, Option<RationalQT>> = BTreeMap::new();
    for mu in keys {
        let v = &z2 * &f.tilde(&mu);
        let mut g = if v.is_zero() {
            Some(RationalQT::zero())
        } else {
            match v.leading_at_q1().expect("nonzero") {
                (0, na, db) => Some(RationalQT::new(na, db).expect("nonzero")),
                (o, _, _) if o > 0 => Some(RationalQT::zero()),
                _ => None,
            }
        };
        let d_mu = mu.gcd_d().expect("nonzero");
        for d in 2..=d_mu {
            if d_mu % d != 0 {
                continue;
            }
            let lower = out.get(&mu.divide(d).expect("divisible")).cloned().flatten();
            g = match (g, lower) {
                (Some(x), Some(y)) => Some(&x - &y.adams_shift(d as u32).scale(&BigRational::new(1.into(), BigInt::from(d * d * d)))),
                _ => None,
            };
        }
        out.insert(mu, g);
    }
    out
}

/// `H_{μ⃗/D}(t^D)`: the coefficient of `1/(D [D]^2)` in `F̃_μ⃗` at the
/// primitive `D`-th roots of unity, read off the color `μ⃗/D`.
pub fn residue(table: &BTreeMap<VectorPartition, Option<RationalQT>>, mu: &VectorPartition) -> Option<RationalQT> {
    let d = mu.gcd_d().ok()?;
    table.get(&mu.divide(d).ok()?).cloned().flatten().map(|g| g.adams_shift(d as u32))
}

/// `F̃_μ⃗ - Σ_{d|D} H_{μ⃗/d}(t^d)/(d [d]^2) ∈ Q[[1]^2, t^{±1/2}]` with every
/// `H` read off lower colors: the `[D]`-pole of `F̃_μ⃗` depends only on `μ⃗/D`.
pub fn check_residues(f: &FreeEnergyData) -> CheckReport {
    let mut r = CheckReport::new("residues");
    let table = residue_table(f);
    let mut proportional = 0;
    let mut single_pole_exceptions = Vec::new();
    for mu in f.keys() {
        let d_mu = mu.gcd_d().expect("nonzero");
        let mut principal = RationalQT::zero();
        let mut top = RationalQT::zero();
        let mut complete = true;
        for d in 1..=d_mu {
            if d_mu % d != 0 {
                continue;
            }
            let Some(g) = table.get(&mu.divide(d).expect("divisible")).cloned().flatten() else {
                complete = false;
                break;
            };
            let qd = qint(d as i32);
            let term = &g.adams_shift(d as u32) / &(&qd * &qd).scale(&int(d as i64));
            if d == d_mu {
                top = term.clone();
            }
            principal = &principal + &term;
        }
        if !complete {
            r.fail(format!("{mu} framing {:?}", f.framing), "pole of order above 2 at q = 1");
            continue;
        }
        let tilde = f.tilde(&mu);
        let rest = &tilde - &principal;
        r.expect(rest.in_z2_ring(), format!("{mu} remainder framing {:?}", f.framing), &rest);
        if d_mu > 1 {
            proportional += 1;
        }
        if !(&tilde - &top).in_z2_ring() {
            single_pole_exceptions.push(mu.to_string());
        }
    }
    r.note("proportional_colors", proportional);
    r.note("single_pole_exceptions", single_pole_exceptions);
    r
}

/// `exp(Σ_d Adams_d(f)/d) = Z`, `f = M P`, and the character route for `P`.
pub fn check_reconstruction(z: &PartitionFunctionData, amps: &FPAmplitudes) -> Result<CheckReport> {
    let mut r = CheckReport::new("reconstruction");
    let back = resum_f(&amps.f_power).exp()?;
    let zp = z.power();
    for (mu, v) in back.sub(&zp).terms() {
        if !v.is_zero() {
            r.fail(format!("Z {mu}"), v);
        }
    }
    let f2 = reconstruct_f(&amps.p, &z.cap, &amps.blocks);
    for (a, v) in f2.sub(&amps.f).terms() {
        if !v.is_zero() {
            r.fail(format!("f {a}"), v);
        }
    }
    let pc = super::pipeline::p_by_characters(&amps.f_power)?;
    for b in enumerate_vector_upto(&z.cap) {
        let x = amps.p.get(&b).cloned().unwrap_or_else(RationalQT::zero);
        let y = pc.get(&b).cloned().unwrap_or_else(RationalQT::zero);
        if x != y {
            r.fail(format!("P {b}"), &x - &y);
        }
    }
    for (n, blk) in &amps.blocks {
        r.expect(!blk.det.is_zero(), format!("M block {n}"), "singular");
        for i in 0..blk.parts.len() {
            for j in 0..i {
                r.expect(blk.matrix[i][j] == blk.matrix[j][i], format!("M block {n} ({i},{j})"), "asymmetric");
            }
        }
    }
    Ok(r)
}

/// `P_B⃗ [1]^2` is a symmetric Laurent polynomial in `q` for every `B⃗`.
pub fn check_structure(violations: &[StructureViolation]) -> CheckReport {
    let mut r = CheckReport::new("n_structure");
    for v in violations {
        r.fail(&v.key, format!("{}: P = {}", v.reason, v.value));
    }
    r
}

/// Integral `N`, finite support, and exact reconstruction of `P`.
pub fn check_integrality(n: &NTable, p: &BTreeMap<VectorPartition, RationalQT>) -> CheckReport {
    let mut r = CheckReport::new("n_integrality");
    for ((b, g, th), c) in n.non_integral() {
        r.fail(format!("{b} g={g} 2Q={th}"), c);
    }
    let back = n.reconstruct();
    for (b, v) in p {
        let w = back.get(b).cloned().unwrap_or_else(RationalQT::zero);
        if w != *v {
            r.fail(format!("{b} reconstruction"), &w - v);
        }
    }
    r.note("entries", n.len());
    r.note("max_genus", n.max_genus());
    let integral_q = n.entries.keys().all(|k| k.2 % 2 == 0);
    r.note("q_support_integral", integral_q);
    let parity = n.entries.keys().all(|(b, _, th)| (*th as i64 - b.norm() as i64) % 2 == 0);
    r.note("two_q_matches_degree_parity", parity);
    r
}

