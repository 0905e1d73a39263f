//! Dense polynomials over `BigRational` used internally for gcd and exact
//! division. `UPoly` is univariate; `BiPoly` is a polynomial in a main
//! variable whose coefficients are `UPoly` in a second variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct UPoly(pub(crate) Vec<BigRational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![BigRational::one()])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = UPoly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = BigRational::zero();
            if let Some(a) = self.0.get(i) {
                c += a;
            }
            if let Some(b) = other.0.get(i) {
                c += b;
            }
            out.push(c);
        }
        UPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn shift_scale(&self, k: usize, c: &BigRational) -> UPoly {
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.0.iter().map(|x| x * c));
        UPoly::from_coeffs(out)
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        if rem.0.len() < d.0.len() {
            return (UPoly::zero(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.0.len() - d.0.len() + 1];
        let lead_inv = d.lead().recip();
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let k = rem.0.len() - d.0.len();
            let c = rem.lead() * &lead_inv;
            rem = rem.sub(&d.shift_scale(k, &c));
            quot[k] = c;
        }
        (UPoly::from_coeffs(quot), rem)
    }

    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn int_primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let den = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&den / c.denom()))));
        let f = BigRational::new(den, num);
        UPoly(self.0.iter().map(|c| c * &f).collect())
    }

    /// Monic gcd over the rationals.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == 0 || b.degree() == 0 {
            return UPoly::one();
        }
        if modp::coprime_u(a, b) {
            return UPoly::one();
        }
        let (mut x, mut y) = (a.int_primitive(), b.int_primitive());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.int_primitive();
        }
        x.monic()
    }

    pub fn eval_one(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Divides by `(x - 1)` assuming `eval_one() == 0`.
    pub fn deflate_at_one(&self) -> UPoly {
        // synthetic division from the top
        let n = self.0.len();
        if n <= 1 {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry += &self.0[i];
            out[i - 1] = carry.clone();
        }
        UPoly::from_coeffs(out)
    }
}

/// Polynomial in a main variable with `UPoly` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct BiPoly(pub(crate) Vec<UPoly>);

impl BiPoly {
    pub fn from_coeffs(coeffs: Vec<UPoly>) -> Self {
        let mut p = BiPoly(coeffs);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> UPoly {
        self.0.last().cloned().unwrap_or_default()
    }

    /// True when no coefficient depends on the inner variable.
    pub fn inner_constant(&self) -> bool {
        self.0.iter().all(|c| c.0.len() <= 1)
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> BiPoly {
        let inner = self.0.iter().map(|c| c.0.len()).max().unwrap_or(0);
        let mut out = vec![vec![BigRational::zero(); self.0.len()]; inner];
        for (i, c) in self.0.iter().enumerate() {
            for (j, x) in c.0.iter().enumerate() {
                out[j][i] = x.clone();
            }
        }
        BiPoly::from_coeffs(out.into_iter().map(UPoly::from_coeffs).collect())
    }

    /// Embeds a polynomial in the main variable with constant coefficients.
    pub fn from_main(p: &UPoly) -> BiPoly {
        BiPoly::from_coeffs(p.0.iter().map(|c| UPoly::from_coeffs(vec![c.clone()])).collect())
    }

    pub fn as_main(&self) -> UPoly {
        UPoly::from_coeffs(self.0.iter().map(|c| c.0.first().cloned().unwrap_or_else(BigRational::zero)).collect())
    }

    fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.0.len().max(other.0.len());
        let z = UPoly::zero();
        BiPoly::from_coeffs((0..n).map(|i| self.0.get(i).unwrap_or(&z).sub(other.0.get(i).unwrap_or(&z))).collect())
    }

    fn mul_inner(&self, c: &UPoly) -> BiPoly {
        BiPoly::from_coeffs(self.0.iter().map(|x| x.mul(c)).collect())
    }

    fn shift(&self, k: usize) -> BiPoly {
        let mut out = vec![UPoly::zero(); k];
        out.extend(self.0.iter().cloned());
        BiPoly::from_coeffs(out)
    }

    fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::zero(), |g, c| UPoly::gcd(&g, c))
    }

    fn div_inner_exact(&self, c: &UPoly) -> BiPoly {
        BiPoly::from_coeffs(
            self.0
                .iter()
                .map(|x| x.exact_div(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.div_inner_exact(&self.content());
        // clear the scalar content so coefficients stay small
        let flat = p.0.iter().flat_map(|c| c.0.iter()).filter(|c| !c.is_zero());
        let den = flat.clone().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = flat.fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&den / c.denom()))));
        p.mul_inner(&UPoly(vec![BigRational::new(den, num)]))
    }

    fn prem(&self, d: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        let ld = d.lead();
        while !r.is_zero() && r.degree() >= d.degree() {
            let k = r.degree() - d.degree();
            let lr = r.lead();
            r = r.mul_inner(&ld).sub(&d.mul_inner(&lr).shift(k));
        }
        r
    }

    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero());
        let mut r = self.clone();
        if r.is_zero() {
            return Some(r);
        }
        if r.degree() < d.degree() {
            return None;
        }
        let mut quot = vec![UPoly::zero(); r.degree() - d.degree() + 1];
        let ld = d.lead();
        while !r.is_zero() {
            if r.degree() < d.degree() {
                return None;
            }
            let k = r.degree() - d.degree();
            let c = r.lead().exact_div(&ld)?;
            r = r.sub(&d.mul_inner(&c).shift(k));
            quot[k] = c;
        }
        Some(BiPoly::from_coeffs(quot))
    }

    /// Gcd over `Q[inner][main]` via primitive remainder sequences.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.primitive_normalized();
        }
        if b.is_zero() {
            return a.primitive_normalized();
        }
        if modp::coprime_bi(a, b) {
            return BiPoly(vec![UPoly::one()]);
        }
        let c = UPoly::gcd(&a.content(), &b.content());
        let (mut x, mut y) = (a.primitive(), b.primitive());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        loop {
            if y.degree() == 0 {
                return BiPoly(vec![c]);
            }
            let r = x.prem(&y);
            if r.is_zero() {
                return y.primitive().mul_inner(&c);
            }
            x = y;
            y = r.primitive();
        }
    }

    fn primitive_normalized(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lead();
        self.mul_inner(&UPoly::from_coeffs(vec![lc.lead().recip()]))
    }
}

/// Cheap sufficient tests for coprimality by reduction modulo a prime.
mod modp {
    use super::{BiPoly, UPoly};
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    const P: u64 = 2_305_843_009_213_693_951;

    fn mulm(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn powm(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        powm(a, P - 2)
    }

    fn reduce(c: &num_rational::BigRational) -> Option<u64> {
        let p = BigInt::from(P);
        let n = (c.numer() % &p + &p) % &p;
        let d = (c.denom() % &p + &p) % &p;
        let d = d.to_u64()?;
        if d == 0 {
            return None;
        }
        Some(mulm(n.to_u64()?, inv(d)))
    }

    fn reduce_poly(p: &UPoly) -> Option<Vec<u64>> {
        p.0.iter().map(reduce).collect()
    }

    fn eval(p: &[u64], x: u64) -> u64 {
        p.iter().rev().fold(0, |acc, &c| (mulm(acc, x) + c) % P)
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Degree of the gcd over F_p; `None` if either input vanishes.
    fn gcd_degree(a: Vec<u64>, b: Vec<u64>) -> Option<usize> {
        let (mut x, mut y) = (trim(a), trim(b));
        if x.is_empty() || y.is_empty() {
            return None;
        }
        while !y.is_empty() {
            let li = inv(*y.last().unwrap());
            while x.len() >= y.len() && !x.is_empty() {
                let k = x.len() - y.len();
                let c = mulm(*x.last().unwrap(), li);
                for (i, &yc) in y.iter().enumerate() {
                    x[i + k] = (x[i + k] + P - mulm(c, yc)) % P;
                }
                x = trim(x);
            }
            std::mem::swap(&mut x, &mut y);
        }
        Some(x.len() - 1)
    }

    pub(super) fn coprime_u(a: &UPoly, b: &UPoly) -> bool {
        match (reduce_poly(a), reduce_poly(b)) {
            (Some(x), Some(y)) if x.len() == a.0.len() && y.len() == b.0.len() && *x.last().unwrap() != 0 && *y.last().unwrap() != 0 => {
                gcd_degree(x, y) == Some(0)
            }
            _ => false,
        }
    }

    fn reduce_bi(a: &BiPoly) -> Option<Vec<Vec<u64>>> {
        a.0.iter().map(reduce_poly).collect()
    }

    /// Specializes the inner variable, then the main one; both gcds
    /// trivial with leading coefficients preserved means coprime.
    pub(super) fn coprime_bi(a: &BiPoly, b: &BiPoly) -> bool {
        let (Some(x), Some(y)) = (reduce_bi(a), reduce_bi(b)) else { return false };
        let pt = 1_000_003u64;
        let main = |m: &[Vec<u64>]| m.iter().map(|c| eval(c, pt)).collect::<Vec<u64>>();
        let (xm, ym) = (main(&x), main(&y));
        if xm.last() == Some(&0) || ym.last() == Some(&0) || gcd_degree(xm, ym) != Some(0) {
            return false;
        }
        let inner = |m: &[Vec<u64>]| {
            let len = m.iter().map(|c| c.len()).max().unwrap_or(0);
            let mut out = vec![0u64; len];
            let mut pw = 1u64;
            for c in m {
                for (j, &v) in c.iter().enumerate() {
                    out[j] = (out[j] + mulm(v, pw)) % P;
                }
                pw = mulm(pw, 999_983);
            }
            out
        };
        let inner_len = |m: &BiPoly| m.0.iter().map(|c| c.0.len()).max().unwrap_or(0);
        let (xi, yi) = (inner(&x), inner(&y));
        if xi.len() != inner_len(a) || yi.len() != inner_len(b) {
            return false;
        }
        if xi.last() == Some(&0) || yi.last() == Some(&0) {
            return false;
        }
        gcd_degree(xi, yi) == Some(0)
    }
}
