//! Truncated symmetric-function series in several independent alphabets.
//!
//! Series are stored in coefficient space: a [`SymSeries`] maps a vector
//! partition `μ⃗` to the coefficient of `p_μ⃗ = Π_α p_{μ^α}(x^α)`, a
//! [`SchurSeries`] maps `A⃗` to the coefficient of `Π_α s_{A^α}(x^α)`. Every
//! operation truncates eagerly to the series' degree cap.

mod cutjoin;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactring::{LaurentQT, RationalQT};
use crate::partitions::{mobius, Partition, VectorPartition};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Series in the power-sum basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymSeries {
    cap: Vec<usize>,
    coeffs: BTreeMap<VectorPartition, RationalQT>,
}

/// Series in the Schur basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurSeries {
    cap: Vec<usize>,
    coeffs: BTreeMap<VectorPartition, RationalQT>,
}

#[derive(Serialize)]
struct JsonTerm<'a> {
    mu: String,
    coeff: &'a RationalQT,
}

macro_rules! series_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(cap: &[usize]) -> Self {
                assert!(!cap.is_empty(), "a series needs at least one alphabet");
                Self { cap: cap.to_vec(), coeffs: BTreeMap::new() }
            }

            pub fn one(cap: &[usize]) -> Self {
                let mut out = Self::zero(cap);
                out.coeffs.insert(VectorPartition::zero(cap.len()), RationalQT::one());
                out
            }

            /// Builds a series, dropping keys outside the cap.
            pub fn from_terms<I: IntoIterator<Item = (VectorPartition, RationalQT)>>(cap: &[usize], it: I) -> Self {
                let mut out = Self::zero(cap);
                for (k, v) in it {
                    out.add_term(&k, &v);
                }
                out
            }

            pub fn cap(&self) -> &[usize] {
                &self.cap
            }

            pub fn num_alphabets(&self) -> usize {
                self.cap.len()
            }

            pub fn coeff(&self, key: &VectorPartition) -> RationalQT {
                self.coeffs.get(key).cloned().unwrap_or_else(RationalQT::zero)
            }

            pub fn terms(&self) -> impl Iterator<Item = (&VectorPartition, &RationalQT)> {
                self.coeffs.iter()
            }

            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn constant_term(&self) -> RationalQT {
                self.coeff(&VectorPartition::zero(self.cap.len()))
            }

            /// Adds `c` to the coefficient of `key`; ignored outside the cap.
            pub fn add_term(&mut self, key: &VectorPartition, c: &RationalQT) {
                assert_eq!(key.num_components(), self.cap.len(), "alphabet count mismatch");
                if c.is_zero() || !key.fits(&self.cap) {
                    return;
                }
                let v = self.coeff(key) + c.clone();
                if v.is_zero() {
                    self.coeffs.remove(key);
                } else {
                    self.coeffs.insert(key.clone(), v);
                }
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (k, v) in &other.coeffs {
                    out.add_term(k, v);
                }
                out
            }

            pub fn sub(&self, other: &Self) -> Self {
                self.add(&other.scale(&RationalQT::integer(-1)))
            }

            pub fn scale(&self, c: &RationalQT) -> Self {
                let mut out = Self::zero(&self.cap);
                for (k, v) in &self.coeffs {
                    out.add_term(k, &(v * c));
                }
                out
            }

            /// Applies `f` to every coefficient.
            pub fn map_coeffs<F: Fn(&VectorPartition, &RationalQT) -> RationalQT>(&self, f: F) -> Self {
                Self::from_terms(&self.cap, self.coeffs.iter().map(|(k, v)| (k.clone(), f(k, v))))
            }

            /// Keeps only terms whose degree vector fits `cap`.
            pub fn truncate(&self, cap: &[usize]) -> Self {
                Self::from_terms(cap, self.coeffs.iter().map(|(k, v)| (k.clone(), v.clone())))
            }

            /// Sorted list of `{"mu", "coeff"}` objects.
            pub fn to_json(&self) -> serde_json::Value {
                let v: Vec<JsonTerm> =
                    self.coeffs.iter().map(|(k, c)| JsonTerm { mu: k.to_string(), coeff: c }).collect();
                serde_json::to_value(v).expect("series serialization")
            }
        }
    };
}

series_common!(SymSeries);
series_common!(SchurSeries);

impl SymSeries {
    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cap, other.cap, "cap mismatch");
        let mut acc: BTreeMap<VectorPartition, Vec<RationalQT>> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let k = a.union(b);
                if k.fits(&self.cap) {
                    acc.entry(k).or_default().push(x * y);
                }
            }
        }
        Self::from_terms(&self.cap, acc.into_iter().map(|(k, v)| (k, v.into_iter().sum())))
    }

    fn max_total(&self) -> usize {
        self.cap.iter().sum()
    }

    /// Formal logarithm; the constant term must be 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        let x = self.sub(&Self::one(&self.cap));
        let mut out = Self::zero(&self.cap);
        let mut power = x.clone();
        for k in 1..=self.max_total() {
            if power.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&RationalQT::constant(ratio(sign, k as i64))));
            power = power.mul(&x);
        }
        Ok(out)
    }

    /// Formal exponential; the constant term must be 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let mut out = Self::one(&self.cap);
        let mut term = Self::one(&self.cap);
        for k in 1..=self.max_total() {
            term = term.mul(self).scale(&RationalQT::constant(ratio(1, k as i64)));
            if term.is_empty() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// The substitution `x ↦ x^d`: `p_μ⃗ ↦ p_{dμ⃗}` with coefficients under
    /// `q ↦ q^d, t ↦ t^d`.
    pub fn adams(&self, d: usize) -> Self {
        assert!(d >= 1);
        Self::from_terms(&self.cap, self.coeffs.iter().map(|(k, v)| (k.scaled(d), v.adams_shift(d as u32))))
    }

    /// Plethystic logarithm: the unique `g` with `exp(Σ_d Adams_d(g)/d) = Z`.
    pub fn plethystic_log(&self) -> Result<Self> {
        let f = self.log()?;
        let mut out = Self::zero(&self.cap);
        for d in 1..=self.max_total().max(1) {
            let m = mobius(d);
            if m != 0 {
                out = out.add(&f.adams(d).scale(&RationalQT::constant(ratio(m, d as i64))));
            }
        }
        Ok(out)
    }

    /// Inverse of [`SymSeries::plethystic_log`].
    pub fn plethystic_exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        let mut sum = Self::zero(&self.cap);
        for d in 1..=self.max_total().max(1) {
            sum = sum.add(&self.adams(d).scale(&RationalQT::constant(ratio(1, d as i64))));
        }
        sum.exp()
    }

    pub fn to_schur(&self) -> SchurSeries {
        power_to_schur(self)
    }

    /// `∂/∂p_i` in alphabet `alpha`.
    pub fn derivative(&self, alpha: usize, i: usize) -> Self {
        let mut out = Self::zero(&self.cap);
        for (k, v) in &self.coeffs {
            let comp = k.component(alpha);
            let m = comp.parts().iter().filter(|&&p| p == i).count();
            if m == 0 {
                continue;
            }
            let mut parts = comp.parts().to_vec();
            let pos = parts.iter().position(|&p| p == i).unwrap();
            parts.remove(pos);
            let key = k.with_component(alpha, Partition::new(parts));
            out.add_term(&key, &v.scale(&BigRational::from_integer(BigInt::from(m))));
        }
        out
    }

    /// Multiplies by `p_i` in alphabet `alpha`.
    pub fn times_p(&self, alpha: usize, i: usize) -> Self {
        let mut out = Self::zero(&self.cap);
        for (k, v) in &self.coeffs {
            let mut parts = k.component(alpha).parts().to_vec();
            parts.push(i);
            out.add_term(&k.with_component(alpha, Partition::new(parts)), v);
        }
        out
    }
}

impl SchurSeries {
    pub fn to_power(&self) -> SymSeries {
        schur_to_power(self)
    }
}

/// `s_A = Σ_μ χ_A(C_μ) p_μ / 𝔷_μ`, componentwise.
pub fn schur_to_power(s: &SchurSeries) -> SymSeries {
    let mut out = SymSeries::zero(&s.cap);
    for (a, c) in &s.coeffs {
        for mu in same_shape(a) {
            let chi = crate::partitions::character_vec(a, &mu).expect("sizes agree");
            if chi != 0 {
                out.add_term(&mu, &c.scale(&ratio(chi, mu.z() as i64)));
            }
        }
    }
    out
}

/// `p_μ = Σ_A χ_A(C_μ) s_A`, componentwise.
pub fn power_to_schur(p: &SymSeries) -> SchurSeries {
    let mut out = SchurSeries::zero(&p.cap);
    for (mu, c) in &p.coeffs {
        for a in same_shape(mu) {
            let chi = crate::partitions::character_vec(&a, mu).expect("sizes agree");
            if chi != 0 {
                out.add_term(&a, &c.scale(&ratio(chi, 1)));
            }
        }
    }
    out
}

/// All vector partitions with the same degree vector as `v`.
fn same_shape(v: &VectorPartition) -> Vec<VectorPartition> {
    crate::partitions::enumerate_vector(&v.sizes())
}

/// Colored unknot invariant from the hook-content product
/// `Π_{x∈A} (t^{1/2} q^{c(x)/2} - t^{-1/2} q^{-c(x)/2}) / (q^{h(x)/2} - q^{-h(x)/2})`.
pub fn unknot_invariant(a: &Partition) -> RationalQT {
    let mut num = LaurentQT::one();
    let mut den = LaurentQT::one();
    let one = BigRational::from_integer(1.into());
    for (i, j) in a.cells() {
        let c = j as i32 - i as i32;
        let h = a.hook(i, j) as i32;
        num = &num * &LaurentQT::from_terms([(c, 1, one.clone()), (-c, -1, -one.clone())]);
        den = &den * &LaurentQT::from_terms([(h, 0, one.clone()), (-h, 0, -one.clone())]);
    }
    RationalQT::new(num, den).expect("nonzero hook product")
}

/// The Schur function `s_A⃗` as a one-term Schur series.
pub fn schur_monomial(cap: &[usize], a: &VectorPartition) -> SchurSeries {
    SchurSeries::from_terms(cap, [(a.clone(), RationalQT::one())])
}

pub use cutjoin::{cutjoin_apply, cutjoin_quadratic};
