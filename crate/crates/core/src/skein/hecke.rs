use std::collections::BTreeMap;
use std::sync::Arc;

use super::braid::{BraidWord, LinkPresentation};
use super::perm::{table, PermTable};
use super::qpoly::{Coef, GradedPoly, QPoly};
use crate::error::{Error, Result};
use crate::exactring::{LaurentQT, RationalQT};

/// Element of the Hecke algebra `H_n` with `g_i^2 = z g_i + 1`,
/// `z = q^{1/2} - q^{-1/2}`, stored densely on the basis `T_w`.
///
/// Coefficients are integer Laurent polynomials in `q^{1/2}`.
#[derive(Clone)]
pub struct HeckeElement {
    table: Arc<PermTable>,
    coeffs: Vec<QPoly>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.table.n == other.table.n && self.coeffs == other.coeffs
    }
}

impl std::fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| format!("({}) T{:?}", c.to_laurent(), self.table.perm(v)))
            .collect();
        write!(f, "H{}[{}]", self.table.n, terms.join(" + "))
    }
}

/// `data · g_i` (or `g_i^{-1}`) on the dense basis.
pub(crate) fn right_gen<C: Coef>(t: &PermTable, data: &[C], i: usize, inverse: bool) -> Vec<C> {
    (0..data.len())
        .map(|v| {
            let (w, up) = t.right(i, v);
            let mut c = data[w].clone();
            // T_v g = T_{vs} (+ z T_v when v s < v); g^{-1} = g - z
            if !inverse && !up && !data[v].is_zero() {
                c.add_assign(&data[v].mul_z());
            }
            if inverse && up && !data[v].is_zero() {
                c.sub_assign(&data[v].mul_z());
            }
            c
        })
        .collect()
}

/// `g_i · data` on the dense basis.
pub(crate) fn left_gen<C: Coef>(t: &PermTable, data: &[C], i: usize, inverse: bool) -> Vec<C> {
    (0..data.len())
        .map(|v| {
            let (w, up) = t.left(i, v);
            let mut c = data[w].clone();
            if !inverse && !up && !data[v].is_zero() {
                c.add_assign(&data[v].mul_z());
            }
            if inverse && up && !data[v].is_zero() {
                c.sub_assign(&data[v].mul_z());
            }
            c
        })
        .collect()
}

impl HeckeElement {
    pub fn zero(n: usize) -> Result<Self> {
        let table = table(n)?;
        let len = table.len();
        Ok(HeckeElement { table, coeffs: vec![QPoly::zero(); len] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut e = Self::zero(n)?;
        e.coeffs[0] = QPoly::one();
        Ok(e)
    }

    /// `g_i` for `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidBraid(format!("generator {i} in H_{n}")));
        }
        Self::identity(n)?.right_mul_letter(i as i32)
    }

    pub fn level(&self) -> usize {
        self.table.n
    }

    pub(crate) fn table(&self) -> &Arc<PermTable> {
        &self.table
    }

    pub(crate) fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub(crate) fn from_coeffs(table: Arc<PermTable>, coeffs: Vec<QPoly>) -> Self {
        debug_assert_eq!(table.len(), coeffs.len());
        HeckeElement { table, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms keyed by permutation in one-line notation (0-based).
    pub fn terms(&self) -> BTreeMap<Vec<u8>, LaurentQT> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (self.table.perm(v).to_vec(), c.to_laurent()))
            .collect()
    }

    pub fn coeff(&self, perm: &[u8]) -> LaurentQT {
        self.coeffs[super::perm::rank(perm)].to_laurent()
    }

    /// Right multiplication by `σ_i^{±1}`.
    pub fn right_mul_letter(&self, letter: i32) -> Result<Self> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= self.level() {
            return Err(Error::InvalidBraid(format!("letter {letter} in H_{}", self.level())));
        }
        Ok(HeckeElement { table: self.table.clone(), coeffs: right_gen(&self.table, &self.coeffs, i, letter < 0) })
    }

    pub fn left_mul_letter(&self, letter: i32) -> Result<Self> {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= self.level() {
            return Err(Error::InvalidBraid(format!("letter {letter} in H_{}", self.level())));
        }
        Ok(HeckeElement { table: self.table.clone(), coeffs: left_gen(&self.table, &self.coeffs, i, letter < 0) })
    }

    pub fn right_mul_word(&self, letters: &[i32]) -> Result<Self> {
        letters.iter().try_fold(self.clone(), |acc, &l| acc.right_mul_letter(l))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        HeckeElement { table: self.table.clone(), coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch(self.level(), other.level()));
        }
        Ok(())
    }

    /// Closure value `Φ_n` scaled by `z^n`: entry `j` is the coefficient of
    /// `(t^{1/2} - t^{-1/2})^j t^{(n-j)/2}`.
    pub(crate) fn scaled_closure(&self) -> Vec<QPoly> {
        let mut n = self.level();
        let mut data: Vec<GradedPoly> = self.coeffs.iter().map(|c| GradedPoly(vec![c.clone()])).collect();
        while n > 0 {
            data = reduce_level(n, data);
            n -= 1;
        }
        data.pop().map(|g| g.0).unwrap_or_default()
    }

    /// Framed closure `Φ(x)`: unknot `δ = (t^{1/2}-t^{-1/2})/(q^{1/2}-q^{-1/2})`,
    /// a positive curl contributes `t^{1/2}`.
    pub fn closure(&self) -> RationalQT {
        let n = self.level();
        let scaled = self.scaled_closure();
        let dprime = &LaurentQT::t_half(1) - &LaurentQT::t_half(-1);
        let mut num = LaurentQT::zero();
        let mut dp = LaurentQT::one();
        for (j, a) in scaled.iter().enumerate() {
            if !a.is_zero() {
                num += &(&(&a.to_laurent() * &dp) * &LaurentQT::t_half(n as i32 - j as i32));
            }
            dp = &dp * &dprime;
        }
        let z = &LaurentQT::q_half(1) - &LaurentQT::q_half(-1);
        RationalQT::new(num, z.pow(n as u32)).expect("nonzero")
    }
}

/// One conditional-expectation step `H_n → H_{n-1}` of the closure.
fn reduce_level(n: usize, data: Vec<GradedPoly>) -> Vec<GradedPoly> {
    let top = table(n).expect("level within table range");
    let sub = table(n - 1).expect("level within table range");
    let m = sub.len();
    let mut buckets: Vec<Vec<GradedPoly>> = vec![vec![GradedPoly::default(); m]; n];
    for (v, c) in data.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (k, w) = top.split(v);
        buckets[k - 1][w].add_assign(&c);
    }
    let mut out: Vec<GradedPoly> = std::mem::take(&mut buckets[n - 1]).into_iter().map(|c| c.raise()).collect();
    for k in 1..n {
        let mut acc = std::mem::take(&mut buckets[k - 1]);
        if acc.iter().all(|c| c.is_zero()) {
            continue;
        }
        for g in (k..=n - 2).rev() {
            acc = right_gen(&sub, &acc, g, false);
        }
        for (o, a) in out.iter_mut().zip(&acc) {
            if !a.is_zero() {
                o.add_assign(&a.mul_z());
            }
        }
    }
    out
}

/// Product in `H_n`.
pub fn hecke_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
    a.check_level(b)?;
    let t = a.table.clone();
    let n = a.level();
    let mut out = vec![QPoly::zero(); t.len()];
    // depth-first over the tree where the parent of w is w·s_i for its first
    // right descent i, carrying a·T_w
    let mut stack = vec![(0usize, a.coeffs.clone())];
    while let Some((w, aw)) = stack.pop() {
        let c = &b.coeffs[w];
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(&aw) {
                if !x.is_zero() {
                    *o += &x.mul(c);
                }
            }
        }
        for i in 1..n {
            let (v, up) = t.right(i, w);
            if up && first_descent(&t, v) == Some(i) {
                stack.push((v, right_gen(&t, &aw, i, false)));
            }
        }
    }
    Ok(HeckeElement { table: t, coeffs: out })
}

fn first_descent(t: &PermTable, v: usize) -> Option<usize> {
    (1..t.n).find(|&i| !t.right(i, v).1)
}

/// Image of a braid word in `H_n`.
pub fn represent(b: &BraidWord) -> Result<HeckeElement> {
    HeckeElement::identity(b.strands())?.right_mul_word(b.letters())
}

/// Normalized Markov trace: `tr(1) = 1`, `tr(x g_{n-1} y) = c·tr(xy)` with
/// `c = t^{1/2}/δ`.
pub fn markov_trace(h: &HeckeElement) -> RationalQT {
    let delta = unknot_value();
    let phi = h.closure();
    &phi / &delta.pow(h.level() as u32)
}

/// `(t^{1/2} - t^{-1/2})/(q^{1/2} - q^{-1/2})`.
pub fn unknot_value() -> RationalQT {
    RationalQT::new(&LaurentQT::t_half(1) - &LaurentQT::t_half(-1), &LaurentQT::q_half(1) - &LaurentQT::q_half(-1))
        .expect("nonzero")
}

/// The trace parameter `c = tr(g_1)`.
pub fn trace_parameter() -> RationalQT {
    &RationalQT::from(LaurentQT::t_half(1)) / &unknot_value()
}

/// Framing-corrected HOMFLY polynomial of the closure.
pub fn homfly(lp: &LinkPresentation) -> Result<RationalQT> {
    let phi = represent(lp.braid())?.closure();
    Ok(phi.shift(0, -(lp.total_writhe() as i32)))
}

