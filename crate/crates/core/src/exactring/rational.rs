use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentQT;
use super::upoly::{BiPoly, UPoly};
use crate::error::{Error, Result};

/// Quotient of two [`LaurentQT`] values in canonical form.
///
/// The canonical form has no common factor between numerator and
/// denominator (gcd taken in `q^{1/2}` over `Q(t^{1/2})`), a denominator with
/// no monomial factor whose lowest `q` and `t` exponents are zero, and a
/// denominator whose largest `(qh, th)` term has coefficient 1. Structural
/// equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalRepr", into = "RationalRepr")]
pub struct RationalQT {
    num: LaurentQT,
    den: LaurentQT,
}

impl RationalQT {
    pub fn new(num: LaurentQT, den: LaurentQT) -> Result<Self> {
        canonicalize(num, den)
    }

    pub fn zero() -> Self {
        Self { num: LaurentQT::zero(), den: LaurentQT::one() }
    }

    pub fn one() -> Self {
        Self { num: LaurentQT::one(), den: LaurentQT::one() }
    }

    pub fn integer(n: i64) -> Self {
        Self::from(LaurentQT::integer(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from(LaurentQT::constant(c))
    }

    pub fn num(&self) -> &LaurentQT {
        &self.num
    }

    pub fn den(&self) -> &LaurentQT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this value equals, if the denominator is a unit.
    pub fn as_laurent(&self) -> Option<LaurentQT> {
        self.den.as_constant().filter(|c| !c.is_zero()).map(|c| self.num.scale(&c.recip()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        canonicalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        canonicalize(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, k: u32) -> Self {
        Self { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow((-k) as u32))
        }
    }

    pub fn adams_shift(&self, k: u32) -> Self {
        canonicalize(self.num.adams_shift(k), self.den.adams_shift(k)).expect("nonzero denominator")
    }

    pub fn invert_q(&self) -> Self {
        canonicalize(self.num.invert_q(), self.den.invert_q()).expect("nonzero denominator")
    }

    pub fn invert_t(&self) -> Self {
        canonicalize(self.num.invert_t(), self.den.invert_t()).expect("nonzero denominator")
    }

    pub fn shift(&self, dq: i32, dt: i32) -> Self {
        Self { num: self.num.shift(dq, dt), den: self.den.clone() }
    }

    /// Vanishing order at `q = 1`; negative for poles.
    pub fn order_at_q1(&self) -> Result<i64> {
        let a = self.num.order_at_q1()? as i64;
        let b = self.den.order_at_q1()? as i64;
        Ok(a - b)
    }

    /// Lowest Taylor coefficient at `q^{1/2} = 1` as a ratio of two
    /// Laurent polynomials in `t`.
    pub fn leading_at_q1(&self) -> Result<(i64, LaurentQT, LaurentQT)> {
        let (a, na) = self.num.leading_at_q1()?;
        let (b, db) = self.den.leading_at_q1()?;
        Ok((a as i64 - b as i64, na, db))
    }

    /// p-adic order of the content, `Ord_p(num) - Ord_p(den)` (Gauss).
    pub fn ord_p(&self, p: u64) -> Result<i64> {
        Ok(self.num.content_ord_p(p)? - self.den.content_ord_p(p)?)
    }

    /// True if the value lies in `Q[[1]^2, t^{±1/2}]`: a Laurent polynomial
    /// with integral, q-symmetric powers of `q`.
    pub fn in_z2_ring(&self) -> bool {
        match self.as_laurent() {
            Some(l) => !l.has_half_integral_q() && l.is_q_symmetric(),
            None => false,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: LaurentQT,
    den: LaurentQT,
}

impl TryFrom<RationalRepr> for RationalQT {
    type Error = Error;
    fn try_from(r: RationalRepr) -> Result<Self> {
        canonicalize(r.num, r.den)
    }
}

impl From<RationalQT> for RationalRepr {
    fn from(r: RationalQT) -> Self {
        RationalRepr { num: r.num, den: r.den }
    }
}

fn canonicalize(num: LaurentQT, den: LaurentQT) -> Result<RationalQT> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RationalQT::zero());
    }
    let (nq, nt, nb) = num.to_bipoly();
    let (dq, dt, db) = den.to_bipoly();
    let g = if db.inner_constant() {
        gcd_with_slices(&db.as_main(), &nb)
    } else if nb.inner_constant() {
        gcd_with_slices(&nb.as_main(), &db)
    } else {
        BiPoly::gcd(&nb, &db)
    };
    let (nb, db) = if g.degree() == 0 && g.inner_constant() {
        (nb, db)
    } else {
        (nb.exact_div(&g).expect("gcd divides numerator"), db.exact_div(&g).expect("gcd divides denominator"))
    };
    let num = LaurentQT::from_bipoly(nq - dq, nt - dt, &nb);
    let den = LaurentQT::from_bipoly(0, 0, &db);
    let lc = den.leading().expect("nonzero").1.clone();
    if lc.is_one() {
        Ok(RationalQT { num, den })
    } else {
        let inv = lc.recip();
        Ok(RationalQT { num: num.scale(&inv), den: den.scale(&inv) })
    }
}

/// Gcd of a polynomial `a` in the main variable only with a bivariate `b`:
/// `a` must divide every slice of `b` in the inner variable.
fn gcd_with_slices(a: &UPoly, b: &BiPoly) -> BiPoly {
    let mut g = a.monic();
    for slice in b.transpose().0.iter() {
        if g.degree() == 0 {
            break;
        }
        g = UPoly::gcd(&g, slice);
    }
    BiPoly::from_main(&g)
}

impl From<LaurentQT> for RationalQT {
    fn from(num: LaurentQT) -> Self {
        RationalQT { num, den: LaurentQT::one() }
    }
}

impl Add<&RationalQT> for &RationalQT {
    type Output = RationalQT;
    fn add(self, rhs: &RationalQT) -> RationalQT {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return canonicalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        canonicalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Sub<&RationalQT> for &RationalQT {
    type Output = RationalQT;
    fn sub(self, rhs: &RationalQT) -> RationalQT {
        self + &(-rhs)
    }
}

impl Neg for &RationalQT {
    type Output = RationalQT;
    fn neg(self) -> RationalQT {
        RationalQT { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalQT {
    type Output = RationalQT;
    fn neg(self) -> RationalQT {
        -&self
    }
}

impl Mul<&RationalQT> for &RationalQT {
    type Output = RationalQT;
    fn mul(self, rhs: &RationalQT) -> RationalQT {
        if self.is_zero() || rhs.is_zero() {
            return RationalQT::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalQT { num: &self.num * &rhs.num, den: LaurentQT::one() };
        }
        canonicalize(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

/// Panics on division by zero; use [`RationalQT::checked_div`] otherwise.
impl Div<&RationalQT> for &RationalQT {
    type Output = RationalQT;
    fn div(self, rhs: &RationalQT) -> RationalQT {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalQT {
            type Output = RationalQT;
            fn $m(self, rhs: RationalQT) -> RationalQT {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl std::iter::Sum for RationalQT {
    fn sum<I: Iterator<Item = RationalQT>>(iter: I) -> Self {
        iter.fold(RationalQT::zero(), |a, b| &a + &b)
    }
}

impl Zero for RationalQT {
    fn zero() -> Self {
        RationalQT::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalQT {
    fn one() -> Self {
        RationalQT::one()
    }
}

impl fmt::Display for RationalQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalQT({self})")
    }
}
