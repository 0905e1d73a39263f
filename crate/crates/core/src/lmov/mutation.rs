use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pipeline::PartitionFunctionData;
use crate::error::{Error, Result};
use crate::exactring::{LaurentQT, RationalQT};
use crate::partitions::VectorPartition;

/// `W_A⃗ ↦ W_A⃗ + δ` for a single `A⃗`, written `"(2):+q"` or `"[1|1]:-t^1/2"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub key: VectorPartition,
    pub delta: LaurentQT,
}

impl Perturbation {
    pub fn apply(&self, z: &PartitionFunctionData) -> Result<PartitionFunctionData> {
        if self.key.num_components() != z.num_components() || !self.key.fits(&z.cap) || self.key.is_zero() {
            return Err(Error::CapExceeded(format!("cannot perturb {} within cap {:?}", self.key, z.cap)));
        }
        let mut table = z.table.clone();
        let w = table.get(&self.key).cloned().unwrap_or_else(RationalQT::zero);
        table.insert(self.key.clone(), &w + &RationalQT::from(self.delta.clone()));
        Ok(PartitionFunctionData { link: format!("{}+perturbed", z.link), cap: z.cap.clone(), table })
    }
}

impl FromStr for Perturbation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (key, delta) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected KEY:DELTA, got {s:?}")))?;
        let key = if key.trim().starts_with('[') {
            key.parse()?
        } else {
            VectorPartition::single(key.parse()?)
        };
        Ok(Perturbation { key, delta: parse_laurent(delta)? })
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number {s:?}"));
    let s = s.trim_start_matches('(').trim_end_matches(')');
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(s: &str) -> Result<LaurentQT> {
    let mut coeff = BigRational::one();
    let (mut qh, mut th) = (0i32, 0i32);
    for factor in s.split('*') {
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => (v, Some(e)),
            None => (factor, None),
        };
        let slot = match var {
            "q" => &mut qh,
            "t" => &mut th,
            _ if exp.is_none() => {
                coeff *= parse_rational(var)?;
                continue;
            }
            _ => return Err(Error::Parse(format!("unknown variable {var:?}"))),
        };
        let e = exp.map_or_else(|| Ok(BigRational::one()), parse_rational)? * BigRational::from_integer(2.into());
        if !e.is_integer() {
            return Err(Error::Parse(format!("exponent of {var} must be a multiple of 1/2 in {s:?}")));
        }
        *slot += i32::try_from(e.to_integer()).map_err(|_| Error::Parse(format!("exponent too large in {s:?}")))?;
    }
    Ok(LaurentQT::monomial(qh, th, coeff))
}

/// Parses sums like `"q"`, `"-t^1/2"`, `"+2*q^-1*t"`, `"q^(1/2) - 1/2*q^(-1/2)"`.
pub fn parse_laurent(s: &str) -> Result<LaurentQT> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let chars: Vec<char> = s.chars().collect();
    let mut out = LaurentQT::zero();
    let mut start = 0;
    for i in 0..=chars.len() {
        let boundary = i == chars.len() || (i > start && matches!(chars[i], '+' | '-') && !matches!(chars[i - 1], '^' | '('));
        if !boundary {
            continue;
        }
        let term: String = chars[start..i].iter().collect();
        let (neg, body) = match term.chars().next() {
            Some('-') => (true, &term[1..]),
            Some('+') => (false, &term[1..]),
            _ => (false, term.as_str()),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        let t = parse_term(body)?;
        out = if neg { &out - &t } else { &out + &t };
        start = i;
    }
    Ok(out)
}

/// Single-coefficient mutations `(link, cap, perturbation)`. Several keep
/// the conjugation symmetry intact, so other checks must catch them.
pub const SCRIPTED_MUTATIONS: &[(&str, &[usize], &str)] = &[
    ("unknot", &[2], "(1):+q"),
    ("unknot", &[2], "(2):+q"),
    ("unknot", &[2], "(1,1):-t"),
    ("unknot", &[2], "(1):+1/2*q^1/2-1/2*q^-1/2"),
    ("unknot", &[2], "(1):+q-q^-1"),
    ("unknot", &[3], "(2,1):+q-q^-1"),
    ("unknot", &[3], "(2,1):+1/3*q^3/2*t-1/3*q^-3/2*t"),
    ("trefoil", &[2], "(2):+q"),
    ("trefoil", &[2], "(1):+t"),
    ("trefoil", &[2], "(1,1):+2*q^-1*t"),
    ("trefoil", &[2], "(1):-t^1/2"),
    ("trefoil", &[2], "(1):+1/2*t^1/2*q^1/2-1/2*t^1/2*q^-1/2"),
    ("trefoil", &[3], "(2,1):+q^1/2-q^-1/2"),
    ("hopf", &[1, 1], "[1|1]:+q"),
    ("hopf", &[1, 1], "[1|0]:+t"),
    ("hopf", &[1, 1], "[1|1]:+1/2*q+1/2*q^-1"),
    ("hopf", &[2, 2], "[2|1]:+t^-1"),
    ("T(2,4)", &[1, 1], "[1|1]:-1/2"),
    ("T(2,5)", &[2], "(2):+q^-1*t"),
    ("T(2,5)", &[2], "(1):+1/2*q^3/2-1/2*q^-3/2"),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_polynomials() {
        assert_eq!(parse_laurent("q").unwrap(), LaurentQT::q_half(2));
        assert_eq!(parse_laurent("+q").unwrap(), LaurentQT::q_half(2));
        assert_eq!(parse_laurent("-t^1/2").unwrap(), -LaurentQT::t_half(1));
        assert_eq!(parse_laurent("+2*q^-1*t").unwrap(), LaurentQT::monomial(-2, 2, r(2, 1)));
        assert_eq!(
            parse_laurent("q^(1/2) - 1/2*q^(-1/2)").unwrap(),
            LaurentQT::from_terms([(1, 0, r(1, 1)), (-1, 0, r(-1, 2))])
        );
        assert_eq!(parse_laurent("3").unwrap(), LaurentQT::integer(3));
        assert!(parse_laurent("x").is_err());
        assert!(parse_laurent("q^1/3").is_err());
        assert!(parse_laurent("").is_err());
        assert!(parse_laurent("q+").is_err());
    }

    #[test]
    fn parses_perturbations() {
        let p: Perturbation = "(2):+q".parse().unwrap();
        assert_eq!(p.key, "[2]".parse().unwrap());
        let p: Perturbation = "[1|1]:-t".parse().unwrap();
        assert_eq!(p.key.num_components(), 2);
        assert!("(2)+q".parse::<Perturbation>().is_err());
        for (_, _, m) in SCRIPTED_MUTATIONS {
            m.parse::<Perturbation>().unwrap();
        }
        assert_eq!(SCRIPTED_MUTATIONS.len(), 20);
    }

    #[test]
    fn apply_respects_cap() {
        let z = PartitionFunctionData::from_table("x", &[1], [("(1)".parse().unwrap(), RationalQT::integer(2))].into())
            .unwrap();
        let p: Perturbation = "(1):+q".parse().unwrap();
        let w = p.apply(&z).unwrap().w(&"(1)".parse().unwrap());
        assert_eq!(w, RationalQT::from(&LaurentQT::integer(2) + &LaurentQT::q_half(2)));
        assert!("(2):+q".parse::<Perturbation>().unwrap().apply(&z).is_err());
    }
}
