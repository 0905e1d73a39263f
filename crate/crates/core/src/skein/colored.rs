use super::braid::{cable, closure_analysis, BraidWord, LinkPresentation};
use super::hecke::HeckeElement;
use super::idempotent::{central_idempotent, idempotents, CentralIdempotent};
use super::perm::{rank, table, MAX_STRANDS};
use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::exactring::{LaurentQT, RationalQT};
use crate::partitions::{character, Partition, VectorPartition};

/// A braid closure with one color per component.
#[derive(Clone, Debug)]
pub struct ColoredLink {
    pub link: LinkPresentation,
    pub colors: Vec<Partition>,
}

impl ColoredLink {
    pub fn new(link: LinkPresentation, colors: Vec<Partition>) -> Result<Self> {
        if colors.len() != link.num_components() {
            return Err(Error::SizeMismatch(format!(
                "{} colors for {} components",
                colors.len(),
                link.num_components()
            )));
        }
        Ok(ColoredLink { link, colors })
    }

    pub fn from_vector(link: LinkPresentation, colors: &VectorPartition) -> Result<Self> {
        Self::new(link, colors.components().to_vec())
    }
}

/// Product of idempotent numerators placed on disjoint strand blocks.
fn block_tensor(n: usize, blocks: &[(usize, &HeckeElement)]) -> Result<HeckeElement> {
    let t = table(n)?;
    let mut terms: Vec<(Vec<u8>, QPoly)> = vec![((0..n as u8).collect(), QPoly::one())];
    for &(offset, elem) in blocks {
        let sub = elem.table();
        let m = elem.level();
        let mut next = Vec::new();
        for (perm, c) in &terms {
            for (v, d) in elem.coeffs().iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let local = sub.perm(v);
                let mut p = perm.clone();
                for i in 0..m {
                    p[offset + i] = perm[offset + local[i] as usize];
                }
                next.push((p, c.mul(d)));
            }
        }
        terms = next;
    }
    let mut coeffs = vec![QPoly::zero(); t.len()];
    for (p, c) in terms {
        coeffs[rank(&p)] += &c;
    }
    Ok(HeckeElement::from_coeffs(t, coeffs))
}

/// `Φ((⊗ e) · β) / Π (D·dim)` for idempotents inserted at the given strand offsets
/// of the cabled braid `beta`; no framing correction.
pub fn framed_closure(beta: &BraidWord, inserts: &[(usize, &CentralIdempotent)]) -> Result<RationalQT> {
    let n = beta.strands();
    if n > MAX_STRANDS {
        return Err(Error::CapExceeded(format!("cable needs {n} strands, maximum is {MAX_STRANDS}")));
    }
    if n == 0 {
        return Ok(RationalQT::one());
    }
    let blocks: Vec<(usize, &HeckeElement)> = inserts.iter().map(|(o, e)| (*o, &e.numerator)).collect();
    let start = block_tensor(n, &blocks)?;
    let elem = start.right_mul_word(beta.letters())?;
    let mut den = QPoly::one();
    for (_, e) in inserts {
        den = den.mul(&e.denominator).scale(e.dimension as i128);
    }
    Ok(&elem.closure() / &RationalQT::from(den.to_laurent()))
}

/// Multiplicity per top strand and the strand offset of each component's
/// first block.
fn layout(link: &LinkPresentation, sizes: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = link.braid().strands();
    let mult: Vec<usize> = (0..n).map(|p| sizes[link.component_of(p)]).collect();
    let offsets = link.components().iter().map(|c| mult[..c[0]].iter().sum()).collect();
    (mult, offsets)
}

/// The framing normalization applied to framed closures: each component's
/// self-writhe `w_α` is removed with `q^{-κ_{A^α} w_α/2} t^{-|A^α| w_α/2}`.
/// Crossings between different components are left untouched, so the
/// `q = 1` limit of `W_A⃗(ℒ)/W_A⃗(unlink)` factors over components.
pub fn framing_factor(link: &LinkPresentation, colors: &[Partition]) -> RationalQT {
    let mut qh = 0i64;
    let mut th = 0i64;
    for (a, color) in colors.iter().enumerate().take(link.num_components()) {
        let w = link.writhe(a);
        qh -= color.kappa() * w;
        th -= color.size() as i64 * w;
    }
    RationalQT::from(LaurentQT::q_half(qh as i32).shift(0, th as i32))
}

/// Framed colored closure before the framing correction.
pub fn colored_framed(cl: &ColoredLink) -> Result<RationalQT> {
    let sizes: Vec<usize> = cl.colors.iter().map(|c| c.size()).collect();
    let (mult, offsets) = layout(&cl.link, &sizes);
    let beta = cable(cl.link.braid(), &mult)?;
    let idems: Vec<CentralIdempotent> =
        cl.colors.iter().filter(|c| !c.is_empty()).map(central_idempotent).collect::<Result<_>>()?;
    let mut inserts = Vec::new();
    let mut it = idems.iter();
    for (c, &o) in cl.colors.iter().zip(&offsets) {
        if !c.is_empty() {
            inserts.push((o, it.next().unwrap()));
        }
    }
    framed_closure(&beta, &inserts)
}

/// Colored invariant `W_A⃗(ℒ; q, t)`, independent of the braid presentation.
pub fn colored_invariant(cl: &ColoredLink) -> Result<RationalQT> {
    Ok(&colored_framed(cl)? * &framing_factor(&cl.link, &cl.colors))
}

/// `Σ_A⃗ χ_A⃗(C_μ⃗) Φ_A⃗` computed by splitting each component's cable into
/// blocks of sizes `μ^α_j`, each carrying the one-row power-sum projector
/// `Σ_B χ_B(C_{(d)}) e_B`.
pub fn framed_power_sum(link: &LinkPresentation, mu: &VectorPartition) -> Result<RationalQT> {
    let sizes = mu.sizes();
    let (mult, offsets) = layout(link, &sizes);
    let beta = cable(link.braid(), &mult)?;
    // (offset, block size) for every part
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for (comp, &o) in mu.components().iter().zip(&offsets) {
        let mut off = o;
        for &d in comp.parts() {
            blocks.push((off, d));
            off += d;
        }
    }
    let choices: Vec<Vec<(i64, CentralIdempotent)>> = blocks
        .iter()
        .map(|&(_, d)| {
            let all = idempotents(d)?;
            let row = Partition::row(d);
            Ok(all
                .iter()
                .filter_map(|e| {
                    let chi = character(&e.partition, &row).expect("sizes agree");
                    (chi != 0).then(|| (chi, e.clone()))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut total = RationalQT::zero();
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let mut weight = 1i64;
        let mut inserts = Vec::new();
        for (b, &i) in idx.iter().enumerate() {
            weight *= choices[b][i].0;
            inserts.push((blocks[b].0, &choices[b][i].1));
        }
        total = &total + &framed_closure(&beta, &inserts)?.scale(&crate::exactring::rat(weight));
        // odometer over block choices
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(total);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Convenience: colored invariant of the closure of `b`.
pub fn colored_invariant_of(b: &BraidWord, colors: &VectorPartition) -> Result<RationalQT> {
    colored_invariant(&ColoredLink::from_vector(closure_analysis(b), colors)?)
}
