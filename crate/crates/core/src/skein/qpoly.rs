//! Integer Laurent polynomials in `s = q^{1/2}`, the coefficient ring of
//! Hecke algebra elements before any division.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactring::LaurentQT;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    lo: i32,
    c: Vec<i128>,
}

fn ck(x: Option<i128>) -> i128 {
    x.expect("Hecke coefficient overflow")
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(0, 1)
    }

    /// `c · s^e`.
    pub fn monomial(e: i32, c: i128) -> Self {
        if c == 0 {
            return QPoly::zero();
        }
        QPoly { lo: e, c: vec![c] }
    }

    /// `z = s - s^{-1}`.
    pub fn z() -> Self {
        QPoly { lo: -1, c: vec![-1, 0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn normalize(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|&&x| x == 0).count();
        if lead == self.c.len() {
            self.c.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i32;
        }
    }

    fn hi(&self) -> i32 {
        self.lo + self.c.len() as i32
    }

    fn axpy(&mut self, other: &QPoly, sign: i128) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.lo = other.lo;
            self.c = other.c.iter().map(|&x| ck(x.checked_mul(sign))).collect();
            return;
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        if lo < self.lo || hi > self.hi() {
            let mut c = vec![0i128; (hi - lo) as usize];
            let off = (self.lo - lo) as usize;
            c[off..off + self.c.len()].copy_from_slice(&self.c);
            self.c = c;
            self.lo = lo;
        }
        let off = (other.lo - self.lo) as usize;
        for (i, &x) in other.c.iter().enumerate() {
            let t = ck(x.checked_mul(sign));
            self.c[off + i] = ck(self.c[off + i].checked_add(t));
        }
        self.normalize();
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0i128; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = ck(c[i + j].checked_add(ck(a.checked_mul(b))));
            }
        }
        let mut out = QPoly { lo: self.lo + other.lo, c };
        out.normalize();
        out
    }

    /// Multiplies by `z = s - s^{-1}`.
    pub fn mul_z(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let n = self.c.len();
        let mut c = vec![0i128; n + 2];
        for (i, &a) in self.c.iter().enumerate() {
            c[i + 2] = ck(c[i + 2].checked_add(a));
            c[i] = ck(c[i].checked_sub(a));
        }
        let mut out = QPoly { lo: self.lo - 1, c };
        out.normalize();
        out
    }

    pub fn shift(&self, e: i32) -> QPoly {
        QPoly { lo: self.lo + e, c: self.c.clone() }
    }

    pub fn scale(&self, k: i128) -> QPoly {
        let mut out = QPoly { lo: self.lo, c: self.c.iter().map(|&x| ck(x.checked_mul(k))).collect() };
        out.normalize();
        out
    }

    /// Embeds as a Laurent polynomial with `q^{e/2}` for `s^e`.
    pub fn to_laurent(&self) -> LaurentQT {
        LaurentQT::from_terms(
            self.c
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (self.lo + i as i32, 0, BigRational::from_integer(BigInt::from(x)))),
        )
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        self.axpy(rhs, 1);
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        self.axpy(rhs, -1);
    }
}

/// Coefficient types that Hecke multiplication can act on.
pub trait Coef: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn mul_z(&self) -> Self;
}

impl Coef for QPoly {
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_z(&self) -> Self {
        QPoly::mul_z(self)
    }
}

/// A polynomial in an auxiliary variable with [`QPoly`] coefficients,
/// indexed by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedPoly(pub Vec<QPoly>);

impl GradedPoly {
    /// Multiplies by the auxiliary variable.
    pub fn raise(&self) -> GradedPoly {
        if self.0.is_empty() {
            return GradedPoly::default();
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(QPoly::zero());
        v.extend(self.0.iter().cloned());
        GradedPoly(v)
    }
}

impl Coef for GradedPoly {
    fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }
    fn add_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), QPoly::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
    fn sub_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), QPoly::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
    }
    fn mul_z(&self) -> Self {
        GradedPoly(self.0.iter().map(|p| p.mul_z()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    #[test]
    fn arithmetic() {
        let z = QPoly::z();
        let z2 = z.mul(&z);
        assert_eq!(z2, QPoly { lo: -2, c: vec![1, 0, -2, 0, 1] });
        assert_eq!(z.mul_z(), z2);
        let mut a = QPoly::monomial(3, 2);
        a -= &QPoly::monomial(3, 2);
        assert!(a.is_zero());
        let mut b = QPoly::monomial(-2, 1);
        b += &QPoly::monomial(4, 5);
        assert_eq!(b.to_laurent(), LaurentQT::from_terms([(-2, 0, rat(1)), (4, 0, rat(5))]));
    }
}
