//! Exact scalars: rationals, Laurent polynomials in `q^{1/2}, t^{1/2}` and
//! their quotients.

mod laurent;
mod rational;
mod upoly;

pub use laurent::LaurentQT;
pub use num_rational::BigRational;
pub use rational::RationalQT;

pub(crate) use laurent::rat;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// p-adic valuation of a nonzero rational.
pub fn coeff_ord_p(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let val = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    Ok(val(x.numer()) - val(x.denom()))
}

/// `[n]_q` as a [`RationalQT`].
pub fn qint(n: i32) -> RationalQT {
    RationalQT::from(LaurentQT::quantum_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_examples() {
        let s = LaurentQT::q_half(1);
        assert_eq!(&s * &s, LaurentQT::q_half(2));
        let one = LaurentQT::quantum_int(1);
        let sq = &one * &one;
        assert_eq!(sq, LaurentQT::from_terms([(-2, 0, rat(1)), (0, 0, rat(-2)), (2, 0, rat(1))]));
        let a = &LaurentQT::t_half(1) - &LaurentQT::t_half(-1);
        let b = &LaurentQT::t_half(-1) - &LaurentQT::t_half(1);
        assert!((a + b).is_zero());
    }

    #[test]
    fn adams_and_inversion() {
        let m = LaurentQT::monomial(1, -3, rat(1));
        assert_eq!(m.adams_shift(2), LaurentQT::monomial(2, -6, rat(1)));
        for d in 1..6 {
            assert_eq!(LaurentQT::quantum_int(1).adams_shift(d), LaurentQT::quantum_int(d as i32));
        }
        assert_eq!(m.adams_shift(1), m);
        let f = &LaurentQT::q_half(1) + &LaurentQT::t_half(2);
        assert_eq!(f.invert_q(), &LaurentQT::q_half(-1) + &LaurentQT::t_half(2));
        for n in 1..5 {
            assert_eq!(LaurentQT::quantum_int(n).invert_q(), -LaurentQT::quantum_int(n));
        }
        let sym = &LaurentQT::q_half(2) + &LaurentQT::q_half(-2);
        assert_eq!(sym.invert_q(), sym);
    }

    #[test]
    fn order_at_q1_examples() {
        for d in 1..5 {
            assert_eq!(qint(d).order_at_q1().unwrap(), 1);
        }
        assert_eq!(qint(1).pow(2).order_at_q1().unwrap(), 2);
        assert_eq!(RationalQT::from(LaurentQT::t_half(1)).order_at_q1().unwrap(), 0);
        assert_eq!(qint(1).inv().unwrap().order_at_q1().unwrap(), -1);
        assert_eq!(RationalQT::zero().order_at_q1(), Err(Error::ZeroInput));
    }

    #[test]
    fn z2_basis_examples() {
        let z2 = LaurentQT::z_squared();
        let m = z2.to_z2_basis().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&(1, 0)], rat(1));
        let f = &LaurentQT::q_half(2) + &LaurentQT::q_half(-2);
        let m = f.to_z2_basis().unwrap();
        assert_eq!(m[&(1, 0)], rat(1));
        assert_eq!(m[&(0, 0)], rat(2));
        assert_eq!(LaurentQT::q_half(2).to_z2_basis(), Err(Error::Asymmetric));
        let half = &LaurentQT::q_half(1) + &LaurentQT::q_half(-1);
        assert_eq!(half.to_z2_basis(), Err(Error::HalfIntegralPower));
    }

    #[test]
    fn ord_p_examples() {
        assert_eq!(coeff_ord_p(&r(3, 4), 2).unwrap(), -2);
        assert_eq!(coeff_ord_p(&r(6, 1), 3).unwrap(), 1);
        for p in [2, 3, 5, 7] {
            assert_eq!(coeff_ord_p(&r(1, 1), p).unwrap(), 0);
        }
        assert_eq!(coeff_ord_p(&r(0, 1), 2), Err(Error::ZeroValuation));
    }

    #[test]
    fn rational_canonical_form() {
        // ([2]/[1]) = -(q^{-1/2} + q^{1/2}) after cancellation
        let x = qint(2).checked_div(&qint(1)).unwrap();
        assert_eq!(x, RationalQT::from(-(&LaurentQT::q_half(1) + &LaurentQT::q_half(-1))).scale(&rat(-1)));
        assert!(x.as_laurent().is_some());
        // t-dependent denominators cancel too
        let tm = RationalQT::from(&LaurentQT::t_half(1) - &LaurentQT::t_half(-1));
        let y = &(&tm * &qint(3)) / &tm;
        assert_eq!(y, qint(3));
        assert_eq!(qint(1).checked_div(&RationalQT::zero()), Err(Error::DivisionByZero));
        assert_eq!(LaurentQT::q_half(1).exact_div(&LaurentQT::z_squared()), Err(Error::NotDivisible));
    }

    #[test]
    fn json_golden() {
        let f = LaurentQT::from_terms([(1, 0, r(1, 2)), (-1, 1, r(-3, 2))]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"terms":[{"qh":-1,"th":1,"c":"-3/2"},{"qh":1,"th":0,"c":"1/2"}]}"#);
        let back: LaurentQT = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let w = qint(1).inv().unwrap();
        let back: RationalQT = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentQT> {
        prop::collection::vec((-3i32..=3, -3i32..=3, -4i64..=4), 0..5)
            .prop_map(|v| LaurentQT::from_terms(v.into_iter().map(|(q, t, c)| (q, t, rat(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a.clone());
            }
        }

        #[test]
        fn adams_composes(a in arb_laurent(), x in 1u32..=5, y in 1u32..=5) {
            prop_assert_eq!(a.adams_shift(x).adams_shift(y), a.adams_shift(x * y));
        }

        #[test]
        fn invert_q_is_involutive_morphism(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!(a.invert_q().invert_q(), a.clone());
            prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
        }

        #[test]
        fn z2_roundtrip(a in arb_laurent()) {
            // symmetrize and keep integral powers
            let a = a.adams_shift(2);
            let s = &a + &a.invert_q();
            let m = s.to_z2_basis().unwrap();
            prop_assert_eq!(LaurentQT::from_z2_basis(&m), s);
        }

        #[test]
        fn order_is_additive(a in arb_laurent(), b in arb_laurent(), k in 0u32..3) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let fa = RationalQT::from(&a * &LaurentQT::quantum_int(1).pow(k));
            let fb = RationalQT::new(LaurentQT::one(), b.clone()).unwrap();
            let prod = &fa * &fb;
            prop_assert_eq!(prod.order_at_q1().unwrap(), fa.order_at_q1().unwrap() + fb.order_at_q1().unwrap());
        }

        #[test]
        fn rational_field_roundtrip(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RationalQT::new(a.clone(), b.clone()).unwrap();
            let y = RationalQT::new(c.clone(), b.clone()).unwrap();
            let back = &(&x * &y) / &y;
            prop_assert_eq!(back, x.clone());
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
