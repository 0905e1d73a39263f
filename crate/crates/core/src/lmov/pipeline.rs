use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{qint, LaurentQT, RationalQT};
use crate::partitions::{character, character_vec, degree_vectors, enumerate, enumerate_vector, enumerate_vector_upto, Partition, VectorPartition};
use crate::skein::{closure_analysis, colored_invariant, BraidWord, ColoredLink};
use crate::symfun::{SchurSeries, SymSeries};

/// `φ_μ⃗(q) = Π_α Π_j [μ^α_j]`.
pub fn phi(mu: &VectorPartition) -> RationalQT {
    let mut out = RationalQT::one();
    for p in mu.components() {
        for &m in p.parts() {
            out = &out * &qint(m as i32);
        }
    }
    out
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The colored invariants of one link up to a degree cap.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionFunctionData {
    pub link: String,
    pub cap: Vec<usize>,
    pub table: BTreeMap<VectorPartition, RationalQT>,
}

impl PartitionFunctionData {
    /// Validates a ready-made table: `W_∅ = 1` and every key within the cap.
    pub fn from_table(link: &str, cap: &[usize], table: BTreeMap<VectorPartition, RationalQT>) -> Result<Self> {
        let zero = VectorPartition::zero(cap.len());
        if table.get(&zero).is_some_and(|w| !w.is_one()) {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        if let Some(k) = table.keys().find(|k| k.num_components() != cap.len() || !k.fits(cap)) {
            return Err(Error::CapExceeded(format!("{k} lies outside cap {cap:?}")));
        }
        let mut table = table;
        table.insert(zero, RationalQT::one());
        Ok(PartitionFunctionData { link: link.to_string(), cap: cap.to_vec(), table })
    }

    pub fn num_components(&self) -> usize {
        self.cap.len()
    }

    /// `W_A⃗`; zero outside the table.
    pub fn w(&self, a: &VectorPartition) -> RationalQT {
        self.table.get(a).cloned().unwrap_or_else(RationalQT::zero)
    }

    /// `Z` in the Schur basis.
    pub fn schur(&self) -> SchurSeries {
        SchurSeries::from_terms(&self.cap, self.table.iter().map(|(k, v)| (k.clone(), v.clone())))
    }

    /// `Z` in the power-sum basis.
    pub fn power(&self) -> SymSeries {
        self.schur().to_power()
    }

    /// The table at framing `τ⃗`: `W_A⃗ q^{Σ κ_{A^α} τ_α / 2}`.
    pub fn framed(&self, tau: &[i64]) -> Result<Self> {
        check_framing(tau, self.cap.len())?;
        let table = self.table.iter().map(|(a, w)| (a.clone(), w.shift(framing_shift(a, tau), 0))).collect();
        Ok(PartitionFunctionData { link: self.link.clone(), cap: self.cap.clone(), table })
    }

    /// [`framed`](Self::framed) with the extra sign `(-1)^{Σ |A^α| τ_α}`.
    pub fn framed_signed(&self, tau: &[i64]) -> Result<Self> {
        let mut out = self.framed(tau)?;
        for (a, w) in out.table.iter_mut() {
            let parity: i64 = a.sizes().iter().zip(tau).map(|(&n, &t)| n as i64 * t).sum();
            if parity % 2 != 0 {
                *w = -w.clone();
            }
        }
        Ok(out)
    }

    /// `Ẑ_μ⃗ = Z_μ⃗ 𝔷_μ⃗ = Σ_A⃗ χ_A⃗(C_μ⃗) W_A⃗`.
    pub fn zhat(&self, mu: &VectorPartition) -> Result<RationalQT> {
        let mut out = RationalQT::zero();
        for a in enumerate_vector(&mu.sizes()) {
            let chi = character_vec(&a, mu)?;
            if chi != 0 {
                out = &out + &self.w(&a).scale(&ratio(chi, 1));
            }
        }
        Ok(out)
    }

    /// All `Ẑ_μ⃗` within the cap.
    pub fn zhat_table(&self) -> Result<BTreeMap<VectorPartition, RationalQT>> {
        enumerate_vector_upto(&self.cap).into_iter().map(|mu| Ok((mu.clone(), self.zhat(&mu)?))).collect()
    }
}

fn check_framing(tau: &[i64], l: usize) -> Result<()> {
    if tau.len() != l {
        return Err(Error::SizeMismatch(format!("{} framings for {l} components", tau.len())));
    }
    Ok(())
}

/// Exponent of `q^{1/2}` in the framing factor of `A⃗`.
fn framing_shift(a: &VectorPartition, tau: &[i64]) -> i32 {
    a.components().iter().zip(tau).map(|(p, &t)| p.kappa() * t).sum::<i64>() as i32
}

/// Computes every `W_A⃗` within `cap` with the supplied evaluator, in parallel.
pub fn build_partition_function_with<F>(link: &str, cap: &[usize], eval: F) -> Result<PartitionFunctionData>
where
    F: Fn(&VectorPartition) -> Result<RationalQT> + Sync,
{
    let keys: Vec<VectorPartition> = enumerate_vector_upto(cap).into_iter().filter(|a| !a.is_zero()).collect();
    let values: Vec<RationalQT> = keys.par_iter().map(&eval).collect::<Result<_>>()?;
    PartitionFunctionData::from_table(link, cap, keys.into_iter().zip(values).collect())
}

/// `Z_CS` of the closure of `braid` through the colored invariants.
pub fn build_partition_function(link: &str, braid: &BraidWord, cap: &[usize]) -> Result<PartitionFunctionData> {
    let pres = closure_analysis(braid);
    if cap.len() != pres.num_components() {
        return Err(Error::SizeMismatch(format!("cap {cap:?} for {} components", pres.num_components())));
    }
    build_partition_function_with(link, cap, |a| colored_invariant(&ColoredLink::from_vector(pres.clone(), a)?))
}

/// `F = log Z` in the power-sum basis at a fixed framing.
#[derive(Clone, Debug)]
pub struct FreeEnergyData {
    pub framing: Vec<i64>,
    /// Whether the framing carries the sign `(-1)^{Σ |A^α| τ_α}`.
    pub signed: bool,
    pub series: SymSeries,
}

impl FreeEnergyData {
    pub fn cap(&self) -> &[usize] {
        self.series.cap()
    }

    pub fn coeff(&self, mu: &VectorPartition) -> RationalQT {
        self.series.coeff(mu)
    }

    /// `F̂_μ⃗ = F_μ⃗ 𝔷_μ⃗`.
    pub fn hat(&self, mu: &VectorPartition) -> RationalQT {
        self.coeff(mu).scale(&BigRational::from_integer(BigInt::from(mu.z())))
    }

    /// `F̃_μ⃗ = F_μ⃗ / φ_μ⃗`.
    pub fn tilde(&self, mu: &VectorPartition) -> RationalQT {
        &self.coeff(mu) / &phi(mu)
    }

    /// Nonzero keys of the cap.
    pub fn keys(&self) -> Vec<VectorPartition> {
        enumerate_vector_upto(self.cap()).into_iter().filter(|k| !k.is_zero()).collect()
    }
}

pub fn free_energy(z: &PartitionFunctionData, tau: &[i64]) -> Result<FreeEnergyData> {
    let framed = z.framed(tau)?;
    Ok(FreeEnergyData { framing: tau.to_vec(), signed: false, series: framed.power().log()? })
}

/// [`free_energy`] of [`PartitionFunctionData::framed_signed`].
pub fn free_energy_signed(z: &PartitionFunctionData, tau: &[i64]) -> Result<FreeEnergyData> {
    let framed = z.framed_signed(tau)?;
    Ok(FreeEnergyData { framing: tau.to_vec(), signed: true, series: framed.power().log()? })
}

/// `f^{(p)}_μ⃗ = Σ_{d|μ⃗} μ(d)/d F_{μ⃗/d}(q^d, t^d)` in the power-sum basis.
pub fn extract_f_power(f: &FreeEnergyData) -> SymSeries {
    let total: usize = f.cap().iter().sum();
    let mut out = SymSeries::zero(f.cap());
    for d in 1..=total.max(1) {
        let m = crate::partitions::mobius(d);
        if m != 0 {
            out = out.add(&f.series.adams(d).scale(&RationalQT::constant(ratio(m, d as i64))));
        }
    }
    out
}

/// `Σ_d (1/d) f(q^d, t^d; x^d)`, the inverse of [`extract_f_power`].
pub fn resum_f(fp: &SymSeries) -> SymSeries {
    let total: usize = fp.cap().iter().sum();
    let mut out = SymSeries::zero(fp.cap());
    for d in 1..=total.max(1) {
        out = out.add(&fp.adams(d).scale(&RationalQT::constant(ratio(1, d as i64))));
    }
    out
}

/// Schur-indexed `f_A⃗`.
pub fn extract_f(f: &FreeEnergyData) -> SchurSeries {
    extract_f_power(f).to_schur()
}

/// One square block `M_{AB}(q)` over the partitions of `size`, with its inverse.
#[derive(Clone, Debug)]
pub struct MBlock {
    pub size: usize,
    pub parts: Vec<Partition>,
    pub matrix: Vec<Vec<RationalQT>>,
    pub inverse: Vec<Vec<RationalQT>>,
    pub det: RationalQT,
}

impl MBlock {
    pub fn index(&self, p: &Partition) -> usize {
        self.parts.iter().position(|x| x == p).expect("partition of the block size")
    }
}

/// `M_{AB} = Σ_μ χ_A(C_μ) χ_B(C_μ) φ_μ / 𝔷_μ` for `|A| = |B| = size`.
pub fn build_m(size: usize) -> Result<MBlock> {
    let parts = enumerate(size);
    let n = parts.len();
    let mut matrix = vec![vec![RationalQT::zero(); n]; n];
    for mu in &parts {
        let v = VectorPartition::single(mu.clone());
        let w = phi(&v).scale(&ratio(1, mu.z() as i64));
        let chis: Vec<i64> = parts.iter().map(|a| character(a, mu)).collect::<Result<_>>()?;
        for i in 0..n {
            for j in 0..n {
                let c = chis[i] * chis[j];
                if c != 0 {
                    matrix[i][j] = &matrix[i][j] + &w.scale(&ratio(c, 1));
                }
            }
        }
    }
    let (inverse, det) = invert(&matrix)?;
    Ok(MBlock { size, parts, matrix, inverse, det })
}

/// Gauss-Jordan inversion over `Q(q^{1/2}, t^{1/2})`; returns the inverse and determinant.
pub fn invert(m: &[Vec<RationalQT>]) -> Result<(Vec<Vec<RationalQT>>, RationalQT)> {
    let n = m.len();
    let mut a: Vec<Vec<RationalQT>> = m.to_vec();
    let mut inv: Vec<Vec<RationalQT>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { RationalQT::one() } else { RationalQT::zero() }).collect()).collect();
    let mut det = RationalQT::one();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let pinv = p.inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&factor * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
            }
        }
    }
    Ok((inv, det))
}

/// `f_A⃗`, the M-blocks and `P_B⃗`.
#[derive(Clone, Debug)]
pub struct FPAmplitudes {
    pub f: SchurSeries,
    pub f_power: SymSeries,
    pub blocks: BTreeMap<usize, MBlock>,
    pub p: BTreeMap<VectorPartition, RationalQT>,
}

/// Blocks for every size up to the largest cap entry.
pub fn m_blocks(cap: &[usize]) -> Result<BTreeMap<usize, MBlock>> {
    let top = cap.iter().copied().max().unwrap_or(0);
    (0..=top).map(|d| Ok((d, build_m(d)?))).collect()
}

/// Applies `⊗_α X^{(α)}` to a table over one degree vector, with `X` picked
/// from each block by `pick`.
fn tensor_apply<F>(
    blocks: &BTreeMap<usize, MBlock>,
    d: &[usize],
    input: &dyn Fn(&VectorPartition) -> RationalQT,
    pick: F,
) -> BTreeMap<VectorPartition, RationalQT>
where
    F: Fn(&MBlock, usize, usize) -> RationalQT,
{
    let keys = enumerate_vector(d);
    let mut out = BTreeMap::new();
    for row in &keys {
        let mut acc = RationalQT::zero();
        for col in &keys {
            let x = input(col);
            if x.is_zero() {
                continue;
            }
            let mut w = RationalQT::one();
            for (alpha, &n) in d.iter().enumerate() {
                let b = &blocks[&n];
                w = &w * &pick(b, b.index(row.component(alpha)), b.index(col.component(alpha)));
                if w.is_zero() {
                    break;
                }
            }
            acc = &acc + &(&w * &x);
        }
        if !acc.is_zero() {
            out.insert(row.clone(), acc);
        }
    }
    out
}

/// `P_B⃗ = Σ_A⃗ (⊗ M^{-1})_{B⃗A⃗} f_A⃗`.
pub fn solve_p(f: &SchurSeries, blocks: &BTreeMap<usize, MBlock>) -> BTreeMap<VectorPartition, RationalQT> {
    let mut out = BTreeMap::new();
    for d in degree_vectors(f.cap()) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        out.extend(tensor_apply(blocks, &d, &|a| f.coeff(a), |b, i, j| b.inverse[i][j].clone()));
    }
    out
}

/// `f_A⃗ = Σ_B⃗ P_B⃗ Π_α M_{A^α B^α}`.
pub fn reconstruct_f(
    p: &BTreeMap<VectorPartition, RationalQT>,
    cap: &[usize],
    blocks: &BTreeMap<usize, MBlock>,
) -> SchurSeries {
    let mut out = SchurSeries::zero(cap);
    for d in degree_vectors(cap) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let get = |b: &VectorPartition| p.get(b).cloned().unwrap_or_else(RationalQT::zero);
        for (k, v) in tensor_apply(blocks, &d, &get, |b, i, j| b.matrix[i][j].clone()) {
            out.add_term(&k, &v);
        }
    }
    out
}

/// `P_B⃗ = Σ_μ⃗ χ_B⃗(C_μ⃗) f^{(p)}_μ⃗ / φ_μ⃗`, the character route.
pub fn p_by_characters(fp: &SymSeries) -> Result<BTreeMap<VectorPartition, RationalQT>> {
    let mut out = BTreeMap::new();
    for b in enumerate_vector_upto(fp.cap()) {
        if b.is_zero() {
            continue;
        }
        let mut acc = RationalQT::zero();
        for mu in enumerate_vector(&b.sizes()) {
            let c = fp.coeff(&mu);
            if c.is_zero() {
                continue;
            }
            let chi = character_vec(&b, &mu)?;
            if chi != 0 {
                acc = &acc + &(&c / &phi(&mu)).scale(&ratio(chi, 1));
            }
        }
        if !acc.is_zero() {
            out.insert(b, acc);
        }
    }
    Ok(out)
}

pub fn amplitudes(f: &FreeEnergyData) -> Result<FPAmplitudes> {
    let f_power = extract_f_power(f);
    let schur = f_power.to_schur();
    let blocks = m_blocks(f.cap())?;
    let p = solve_p(&schur, &blocks);
    Ok(FPAmplitudes { f: schur, f_power, blocks, p })
}

/// `N_{B⃗;g,Q}` keyed by `(B⃗, g, 2Q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NTable {
    pub entries: BTreeMap<(VectorPartition, u32, i32), BigRational>,
}

/// A `B⃗` whose `P_B⃗ [1]^2` is not a symmetric Laurent polynomial in `q`.
#[derive(Clone, Debug, Serialize)]
pub struct StructureViolation {
    pub key: VectorPartition,
    pub reason: String,
    pub value: String,
}

impl NTable {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, b: &VectorPartition, g: u32, two_q: i32) -> BigRational {
        self.entries.get(&(b.clone(), g, two_q)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `P_B⃗ = Σ N z^{2g-2} t^Q`.
    pub fn reconstruct(&self) -> BTreeMap<VectorPartition, RationalQT> {
        let mut grouped: BTreeMap<VectorPartition, BTreeMap<(u32, i32), BigRational>> = BTreeMap::new();
        for ((b, g, th), c) in &self.entries {
            grouped.entry(b.clone()).or_default().insert((*g, *th), c.clone());
        }
        grouped
            .into_iter()
            .map(|(b, m)| {
                let num = LaurentQT::from_z2_basis(&m);
                (b, RationalQT::new(num, LaurentQT::z_squared()).expect("nonzero"))
            })
            .collect()
    }

    /// Entries that are not integers.
    pub fn non_integral(&self) -> Vec<(&(VectorPartition, u32, i32), &BigRational)> {
        self.entries.iter().filter(|(_, c)| !c.is_integer()).collect()
    }

    pub fn max_genus(&self) -> Option<u32> {
        self.entries.keys().map(|k| k.1).max()
    }

    /// Sorted CSV with header `B,g,2Q,N`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("B,g,2Q,N\n");
        for ((b, g, th), c) in &self.entries {
            out.push_str(&format!("\"{b}\",{g},{th},{c}\n"));
        }
        out
    }
}

/// Expands each `P_B⃗ [1]^2` in `z^{2g} t^Q`; keys failing the structure are
/// reported instead.
pub fn extract_n(p: &BTreeMap<VectorPartition, RationalQT>) -> (NTable, Vec<StructureViolation>) {
    let z2 = RationalQT::from(LaurentQT::z_squared());
    let mut table = NTable::default();
    let mut bad = Vec::new();
    for (b, v) in p {
        if v.is_zero() {
            continue;
        }
        let scaled = v * &z2;
        let violation = |reason: &str| StructureViolation { key: b.clone(), reason: reason.to_string(), value: v.to_string() };
        let Some(poly) = scaled.as_laurent() else {
            bad.push(violation("not a Laurent polynomial after clearing [1]^2"));
            continue;
        };
        match poly.to_z2_basis() {
            Ok(m) => {
                for ((g, th), c) in m {
                    table.entries.insert((b.clone(), g, th), c);
                }
            }
            Err(Error::HalfIntegralPower) => bad.push(violation("half-integral power of q")),
            Err(_) => bad.push(violation("not symmetric under q -> 1/q")),
        }
    }
    (table, bad)
}

/// `Ẑ` at framing `ω⃗` by convolution:
/// `Σ_ν⃗ Ẑ_ν⃗/𝔷_ν⃗ Σ_A⃗ χ_A⃗(C_μ⃗) χ_A⃗(C_ν⃗) q^{½Σ κ_{A^α} ω_α}`.
pub fn reframe_convolution(
    zhat: &BTreeMap<VectorPartition, RationalQT>,
    omega: &[i64],
) -> Result<BTreeMap<VectorPartition, RationalQT>> {
    let mut out = BTreeMap::new();
    for mu in zhat.keys() {
        check_framing(omega, mu.num_components())?;
        let shape = mu.sizes();
        let colors = enumerate_vector(&shape);
        let mut acc = RationalQT::zero();
        for nu in &colors {
            let Some(z) = zhat.get(nu) else {
                return Err(Error::CapExceeded(format!("Ẑ table lacks {nu}")));
            };
            if z.is_zero() {
                continue;
            }
            let mut kernel = LaurentQT::zero();
            for a in &colors {
                let c = character_vec(a, mu)? * character_vec(a, nu)?;
                if c != 0 {
                    kernel.add_term(framing_shift(a, omega), 0, ratio(c, 1));
                }
            }
            if kernel.is_zero() {
                continue;
            }
            let k = RationalQT::from(kernel).scale(&ratio(1, nu.z() as i64));
            acc = &acc + &(&k * z);
        }
        out.insert(mu.clone(), acc);
    }
    Ok(out)
}

/// True if `den(x)` divides `Π_{n≤top} [n]^2`.
pub fn den_divides_qint_squares(x: &RationalQT, top: usize) -> bool {
    let mut b = LaurentQT::one();
    for n in 1..=top.max(1) {
        let q = LaurentQT::quantum_int(n as i32);
        b = &b * &(&q * &q);
    }
    b.exact_div(x.den()).is_ok()
}
