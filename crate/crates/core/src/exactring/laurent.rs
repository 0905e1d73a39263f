use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::{BiPoly, UPoly};
use crate::error::{Error, Result};

/// Exact Laurent polynomial in `q^{1/2}` and `t^{1/2}` with rational
/// coefficients.
///
/// A key `(qh, th)` stands for the monomial `q^{qh/2} t^{th/2}`. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQT {
    terms: BTreeMap<(i32, i32), BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentQT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c · q^{qh/2} t^{th/2}`.
    pub fn monomial(qh: i32, th: i32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((qh, th), c);
        }
        Self { terms }
    }

    /// Builds from `(qh, th, coefficient)` triples, merging repeated keys.
    pub fn from_terms<I: IntoIterator<Item = (i32, i32, BigRational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (qh, th, c) in it {
            out.add_term(qh, th, c);
        }
        out
    }

    /// `q^{k/2}`.
    pub fn q_half(k: i32) -> Self {
        Self::monomial(k, 0, BigRational::one())
    }

    /// `t^{k/2}`.
    pub fn t_half(k: i32) -> Self {
        Self::monomial(0, k, BigRational::one())
    }

    /// Quantum integer `[n]_q = q^{-n/2} - q^{n/2}`.
    pub fn quantum_int(n: i32) -> Self {
        Self::from_terms([(-n, 0, rat(1)), (n, 0, rat(-1))])
    }

    /// `z^2 = [1]_q^2 = q - 2 + q^{-1}`.
    pub fn z_squared() -> Self {
        Self::from_terms([(2, 0, rat(1)), (0, 0, rat(-2)), (-2, 0, rat(1))])
    }

    pub fn add_term(&mut self, qh: i32, th: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((qh, th)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by `(qh, th)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &BigRational)> {
        self.terms.iter().map(|(&(q, t), c)| (q, t, c))
    }

    pub fn coeff(&self, qh: i32, th: i32) -> BigRational {
        self.terms.get(&(qh, th)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant rational if this element has no q or t dependence.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|&(_, t)| t == 0)
    }

    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(|&(q, _)| q == 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiplies by `q^{dq/2} t^{dt/2}`.
    pub fn shift(&self, dq: i32, dt: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(q, t), v)| ((q + dq, t + dt), v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitution `q -> q^k`, `t -> t^k`.
    pub fn adams_shift(&self, k: u32) -> Self {
        assert!(k >= 1, "adams_shift requires k >= 1");
        let k = k as i32;
        Self { terms: self.terms.iter().map(|(&(q, t), v)| ((q * k, t * k), v.clone())).collect() }
    }

    /// Substitution `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(q, t), v)| ((-q, t), v.clone())).collect() }
    }

    /// Substitution `t -> t^{-1}`.
    pub fn invert_t(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&(q, t), v)| ((q, -t), v.clone())).collect() }
    }

    pub fn is_q_symmetric(&self) -> bool {
        self.invert_q() == *self
    }

    pub fn has_half_integral_q(&self) -> bool {
        self.terms.keys().any(|&(q, _)| q.rem_euclid(2) != 0)
    }

    pub fn min_qh(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn max_qh(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// The term with the largest `(qh, th)` key.
    pub fn leading(&self) -> Option<((i32, i32), &BigRational)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Exact division; fails if `d` does not divide `self` in
    /// `Q[q^{±1/2}, t^{±1/2}]`.
    pub fn exact_div(&self, d: &LaurentQT) -> Result<LaurentQT> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (nq, nt, nb) = self.to_bipoly();
        let (dq, dt, db) = d.to_bipoly();
        let quot = nb.exact_div(&db).ok_or(Error::NotDivisible)?;
        Ok(Self::from_bipoly(nq - dq, nt - dt, &quot))
    }

    /// Splits into `q^{qh0/2} t^{th0/2} · B(s, u)` with `s = q^{1/2}`,
    /// `u = t^{1/2}` and `B` an ordinary polynomial (main variable `s`).
    pub(crate) fn to_bipoly(&self) -> (i32, i32, BiPoly) {
        let q0 = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let t0 = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let qmax = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); (qmax - q0 + 1).max(0) as usize];
        for (&(q, t), c) in &self.terms {
            let row = &mut rows[(q - q0) as usize];
            let j = (t - t0) as usize;
            if row.len() <= j {
                row.resize(j + 1, BigRational::zero());
            }
            row[j] = c.clone();
        }
        (q0, t0, BiPoly::from_coeffs(rows.into_iter().map(UPoly::from_coeffs).collect()))
    }

    pub(crate) fn from_bipoly(q0: i32, t0: i32, b: &BiPoly) -> Self {
        let mut out = Self::zero();
        for (i, row) in b.0.iter().enumerate() {
            for (j, c) in row.0.iter().enumerate() {
                out.add_term(q0 + i as i32, t0 + j as i32, c.clone());
            }
        }
        out
    }

    /// Groups terms by `th`; each slice is `(q0, polynomial in q^{1/2})`.
    pub(crate) fn t_slices(&self) -> BTreeMap<i32, (i32, UPoly)> {
        let mut grouped: BTreeMap<i32, Vec<(i32, BigRational)>> = BTreeMap::new();
        for (&(q, t), c) in &self.terms {
            grouped.entry(t).or_default().push((q, c.clone()));
        }
        grouped
            .into_iter()
            .map(|(t, v)| {
                let q0 = v.iter().map(|x| x.0).min().unwrap();
                let qmax = v.iter().map(|x| x.0).max().unwrap();
                let mut coeffs = vec![BigRational::zero(); (qmax - q0 + 1) as usize];
                for (q, c) in v {
                    coeffs[(q - q0) as usize] = c;
                }
                (t, (q0, UPoly::from_coeffs(coeffs)))
            })
            .collect()
    }

    /// Multiplicity of the root `q^{1/2} = 1`, viewing `self` as a
    /// polynomial in `q^{1/2}` over `Q[t^{±1/2}]`.
    pub fn order_at_q1(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self
            .t_slices()
            .values()
            .map(|(_, p)| {
                let mut p = p.clone();
                let mut k = 0;
                while p.eval_one().is_zero() {
                    p = p.deflate_at_one();
                    k += 1;
                }
                k
            })
            .min()
            .unwrap())
    }

    /// Lowest nonvanishing Taylor coefficient at `q^{1/2} = 1` in the
    /// variable `q^{1/2} - 1`; the result depends on `t` only.
    pub fn leading_at_q1(&self) -> Result<(u32, LaurentQT)> {
        let ord = self.order_at_q1()?;
        let mut out = LaurentQT::zero();
        for (t, (_, p)) in self.t_slices() {
            let mut p = p;
            for _ in 0..ord {
                p = p.deflate_at_one();
            }
            out.add_term(0, t, p.eval_one());
        }
        Ok((ord, out))
    }

    /// Evaluates at `q = 1`.
    pub fn eval_q1(&self) -> LaurentQT {
        let mut out = LaurentQT::zero();
        for (&(_, t), c) in &self.terms {
            out.add_term(0, t, c.clone());
        }
        out
    }

    /// Rewrites a `q <-> q^{-1}` symmetric element with integral q powers as
    /// `sum c_{g,th} z^{2g} t^{th/2}`, `z^2 = q - 2 + q^{-1}`.
    pub fn to_z2_basis(&self) -> Result<BTreeMap<(u32, i32), BigRational>> {
        if self.has_half_integral_q() {
            return Err(Error::HalfIntegralPower);
        }
        if !self.is_q_symmetric() {
            return Err(Error::Asymmetric);
        }
        let z2 = Self::z_squared();
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.max_qh() {
            let g = (top / 2) as u32;
            let zg = z2.pow(g);
            let slice: Vec<(i32, BigRational)> =
                rest.terms.iter().filter(|(k, _)| k.0 == top).map(|(k, c)| (k.1, c.clone())).collect();
            for (t, c) in slice {
                rest -= &zg.shift(0, t).scale(&c);
                out.insert((g, t), c);
            }
        }
        Ok(out)
    }

    /// Inverse of [`to_z2_basis`](Self::to_z2_basis).
    pub fn from_z2_basis(m: &BTreeMap<(u32, i32), BigRational>) -> LaurentQT {
        let z2 = Self::z_squared();
        let mut out = LaurentQT::zero();
        for (&(g, t), c) in m {
            out += &z2.pow(g).shift(0, t).scale(c);
        }
        out
    }

    /// Minimum p-adic valuation over the coefficients.
    pub fn content_ord_p(&self, p: u64) -> Result<i64> {
        self.terms
            .values()
            .map(|c| super::coeff_ord_p(c, p))
            .try_fold(None::<i64>, |acc, v| {
                let v = v?;
                Ok(Some(acc.map_or(v, |a| a.min(v))))
            })?
            .ok_or(Error::ZeroValuation)
    }
}

impl Add<&LaurentQT> for &LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentQT {
    type Output = LaurentQT;
    fn add(mut self, rhs: LaurentQT) -> LaurentQT {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentQT> for LaurentQT {
    fn add_assign(&mut self, rhs: &LaurentQT) {
        for (&(q, t), c) in &rhs.terms {
            self.add_term(q, t, c.clone());
        }
    }
}

impl SubAssign<&LaurentQT> for LaurentQT {
    fn sub_assign(&mut self, rhs: &LaurentQT) {
        for (&(q, t), c) in &rhs.terms {
            self.add_term(q, t, -c);
        }
    }
}

impl Sub<&LaurentQT> for &LaurentQT {
    type Output = LaurentQT;
    fn sub(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentQT {
    type Output = LaurentQT;
    fn sub(mut self, rhs: LaurentQT) -> LaurentQT {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        LaurentQT { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        -&self
    }
}

impl Mul<&LaurentQT> for &LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: &LaurentQT) -> LaurentQT {
        let mut out = LaurentQT::zero();
        for (&(q1, t1), a) in &self.terms {
            for (&(q2, t2), b) in &rhs.terms {
                out.add_term(q1 + q2, t1 + t2, a * b);
            }
        }
        out
    }
}

impl Mul for LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: LaurentQT) -> LaurentQT {
        &self * &rhs
    }
}

fn fmt_half(f: &mut fmt::Formatter<'_>, var: char, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        _ if e % 2 == 0 && e / 2 == 1 => write!(f, "{var}"),
        _ if e % 2 == 0 => write!(f, "{var}^{}", e / 2),
        _ => write!(f, "{var}^({}/2)", e),
    }
}

impl fmt::Display for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(q, t), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mono = q != 0 || t != 0;
            if !a.is_one() || !mono {
                write!(f, "{a}")?;
                if mono {
                    write!(f, "*")?;
                }
            }
            fmt_half(f, 'q', q)?;
            if q != 0 && t != 0 {
                write!(f, "*")?;
            }
            fmt_half(f, 't', t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentQT({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    qh: i32,
    th: i32,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentQT {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self.terms.iter().map(|(&(qh, th), c)| TermRepr { qh, th, c: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentQT {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut out = LaurentQT::zero();
        for t in repr.terms {
            let c: BigRational = t.c.parse().map_err(serde::de::Error::custom)?;
            out.add_term(t.qh, t.th, c);
        }
        Ok(out)
    }
}
