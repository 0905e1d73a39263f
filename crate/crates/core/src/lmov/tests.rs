use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::exactring::{qint, LaurentQT, RationalQT};
use crate::partitions::{Partition, VectorPartition};
use crate::skein::{closure_analysis, homfly, BraidWord};
use crate::symfun::unknot_invariant;

fn vp(s: &str) -> VectorPartition {
    s.parse().unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn z_of(name: &str, cap: &[usize]) -> PartitionFunctionData {
    let l = named_link(name).unwrap();
    build_partition_function(name, &l.braid, cap).unwrap()
}

fn delta() -> RationalQT {
    let num = LaurentQT::from_terms([(0, 1, r(1, 1)), (0, -1, r(-1, 1))]);
    let den = LaurentQT::from_terms([(1, 0, r(1, 1)), (-1, 0, r(-1, 1))]);
    RationalQT::new(num, den).unwrap()
}

/// Z of the unknot straight from the hook-content formula.
fn unknot_table(cap: usize) -> PartitionFunctionData {
    let table = crate::partitions::enumerate_vector_upto(&[cap])
        .into_iter()
        .map(|a| {
            let w = unknot_invariant(a.component(0));
            (a, w)
        })
        .collect();
    PartitionFunctionData::from_table("unknot", &[cap], table).unwrap()
}

#[test]
fn unknot_table_matches_hook_content() {
    let z = z_of("unknot", &[2]);
    assert_eq!(z.table.len(), 4);
    assert_eq!(z.w(&vp("(1)")), delta());
    for a in ["(2)", "(1,1)"] {
        assert_eq!(z.w(&vp(a)), unknot_invariant(vp(a).component(0)));
    }
}

#[test]
fn empty_cap_is_one() {
    let z = z_of("unknot", &[0]);
    assert_eq!(z.table.len(), 1);
    assert!(z.w(&VectorPartition::zero(1)).is_one());
}

#[test]
fn unlink_is_multiplicative() {
    let z = z_of("unlink2", &[1, 1]);
    assert_eq!(z.w(&vp("[1|1]")), &delta() * &delta());
    assert_eq!(z.w(&vp("[1|0]")), delta());
}

#[test]
fn from_table_validates() {
    let bad: BTreeMap<_, _> = [(vp("(2)"), RationalQT::one())].into();
    assert!(PartitionFunctionData::from_table("x", &[1], bad).is_err());
    let bad: BTreeMap<_, _> = [(vp("()"), RationalQT::integer(2))].into();
    assert!(PartitionFunctionData::from_table("x", &[1], bad).is_err());
}

#[test]
fn log_terms_match_hand_expansion() {
    // Z = 1 + W1 p1 + W2 (p1^2 + p2)/2 + W11 (p1^2 - p2)/2
    let z = z_of("unknot", &[2]);
    let f = free_energy(&z, &[0]).unwrap();
    let (w1, w2, w11) = (z.w(&vp("(1)")), z.w(&vp("(2)")), z.w(&vp("(1,1)")));
    let half = r(1, 2);
    assert_eq!(f.coeff(&vp("(1)")), w1);
    assert_eq!(f.coeff(&vp("(2)")), (&w2 - &w11).scale(&half));
    assert_eq!(f.coeff(&vp("(1,1)")), (&(&w2 + &w11) - &(&w1 * &w1)).scale(&half));
}

#[test]
fn split_link_has_no_mixed_free_energy() {
    let f = free_energy(&z_of("unlink2", &[2, 1]), &[0, 0]).unwrap();
    let mut pure = 0;
    for mu in f.keys() {
        let mixed = mu.components().iter().all(|p| !p.is_empty());
        if mixed {
            assert!(f.coeff(&mu).is_zero(), "{mu}");
        } else if !f.coeff(&mu).is_zero() {
            pure += 1;
        }
    }
    assert!(pure > 0);
}

#[test]
fn f_in_degree_one() {
    let z = z_of("unknot", &[3]);
    let f = free_energy(&z, &[0]).unwrap();
    let small = extract_f(&f);
    assert_eq!(small.coeff(&vp("(1)")), f.coeff(&vp("(1)")));
    assert_eq!(small.coeff(&vp("(1)")), delta());
    let back = resum_f(&extract_f_power(&f));
    assert!(back.sub(&f.series).terms().all(|(_, v)| v.is_zero()));

    let t = free_energy(&z_of("trefoil", &[2]), &[0]).unwrap();
    assert_eq!(extract_f(&t).coeff(&vp("(1)")), t.coeff(&vp("(1)")));
}

#[test]
fn m_blocks_by_hand() {
    let m1 = build_m(1).unwrap();
    assert_eq!(m1.matrix[0][0], qint(1));
    let m2 = build_m(2).unwrap();
    let one2 = &qint(1) * &qint(1);
    let (i2, i11) = (m2.index(&Partition::row(2)), m2.index(&Partition::new(vec![1, 1])));
    assert_eq!(m2.matrix[i2][i2], (&one2 + &qint(2)).scale(&r(1, 2)));
    assert_eq!(m2.matrix[i2][i11], (&one2 - &qint(2)).scale(&r(1, 2)));
    assert_eq!(m2.matrix[i11][i11], m2.matrix[i2][i2]);
    for n in 0..=5 {
        let b = build_m(n).unwrap();
        assert!(!b.det.is_zero());
        for i in 0..b.parts.len() {
            for j in 0..b.parts.len() {
                assert_eq!(b.matrix[i][j], b.matrix[j][i]);
                let mut acc = RationalQT::zero();
                for k in 0..b.parts.len() {
                    acc = &acc + &(&b.matrix[i][k] * &b.inverse[k][j]);
                }
                assert_eq!(acc.is_one(), i == j);
                assert_eq!(acc.is_zero(), i != j);
            }
        }
    }
}

#[test]
fn invert_rejects_singular() {
    let m = vec![vec![RationalQT::one(), RationalQT::integer(2)], vec![RationalQT::integer(2), RationalQT::integer(4)]];
    assert!(invert(&m).is_err());
}

#[test]
fn unknot_amplitudes_and_n() {
    let amps = amplitudes(&free_energy(&z_of("unknot", &[3]), &[0]).unwrap()).unwrap();
    let one2 = &qint(1) * &qint(1);
    let expected = &RationalQT::from(LaurentQT::from_terms([(0, -1, r(1, 1)), (0, 1, r(-1, 1))])) / &one2;
    assert_eq!(amps.p[&vp("(1)")], expected);
    for (b, v) in &amps.p {
        if b.norm() > 1 {
            assert!(v.is_zero(), "{b}");
        }
    }
    let (n, bad) = extract_n(&amps.p);
    assert!(bad.is_empty());
    assert_eq!(n.len(), 2);
    assert_eq!(n.get(&vp("(1)"), 0, -1), r(1, 1));
    assert_eq!(n.get(&vp("(1)"), 0, 1), r(-1, 1));
    assert_eq!(n.to_csv(), "B,g,2Q,N\n\"[1]\",0,-1,1\n\"[1]\",0,1,-1\n");
    assert_eq!(p_by_characters(&amps.f_power).unwrap().get(&vp("(1)")), Some(&expected));
}

#[test]
fn empty_p_gives_empty_table() {
    let (n, bad) = extract_n(&BTreeMap::new());
    assert!(n.is_empty() && bad.is_empty());
    assert_eq!(n.max_genus(), None);
}

#[test]
fn structure_violations_are_reported() {
    let p: BTreeMap<_, _> = [
        (vp("(1)"), RationalQT::from(LaurentQT::q_half(1))),
        (vp("(2)"), RationalQT::from(LaurentQT::q_half(2))),
        (vp("(1,1)"), &RationalQT::one() / &qint(2)),
    ]
    .into();
    let (_, bad) = extract_n(&p);
    assert_eq!(bad.len(), 3);
    assert!(!check_structure(&bad).passed());
}

#[test]
fn trefoil_degree_one_n() {
    let z = z_of("trefoil", &[1]);
    let amps = amplitudes(&free_energy(&z, &[0]).unwrap()).unwrap();
    let (n, bad) = extract_n(&amps.p);
    assert!(bad.is_empty());
    assert!(n.non_integral().is_empty());
    assert_eq!(n.reconstruct()[&vp("(1)")], amps.p[&vp("(1)")]);
    // P_(1) [1]^2 = W_(1) [1]
    let h = homfly(&closure_analysis(&BraidWord::new(2, vec![1, 1, 1]).unwrap())).unwrap();
    let mut from_homfly = BTreeMap::new();
    for ((_, g, th), c) in &n.entries {
        from_homfly.insert((*g, *th), c.clone());
    }
    let poly = (&h * &qint(1)).as_laurent().unwrap().to_z2_basis().unwrap();
    assert_eq!(poly, from_homfly);
    assert_eq!(n.max_genus(), Some(1));
}

#[test]
fn conjugation_symmetry() {
    for name in ["unknot", "trefoil"] {
        let z = z_of(name, &[2]);
        assert!(check_symmetry(&z).passed(), "{name}");
        let w2 = z.w(&vp("(2)"));
        assert_eq!(z.w(&vp("(1,1)")), w2.invert_q());
    }
    let z = z_of("trefoil", &[4]);
    let w = z.w(&vp("(2,2)"));
    assert_eq!(w, w.invert_q());
    let bent = "(2):+q".parse::<Perturbation>().unwrap().apply(&z_of("trefoil", &[2])).unwrap();
    assert!(!check_symmetry(&bent).passed());
}

#[test]
fn degree_bounds() {
    let f = free_energy(&z_of("unknot", &[2]), &[0]).unwrap();
    assert_eq!(f.coeff(&vp("(1)")).order_at_q1().unwrap(), -1);
    let f11 = f.coeff(&vp("(1,1)"));
    assert!(f11.is_zero() || f11.order_at_q1().unwrap() >= 0);
    assert!(check_degree(&f).passed());
    assert!(check_degree(&free_energy(&z_of("trefoil", &[3]), &[0]).unwrap()).passed());
}

#[test]
fn pole_structure() {
    let z = z_of("unknot", &[2]);
    let scaled = &qint(2) * &z.zhat(&vp("(2)")).unwrap();
    assert!(scaled.in_z2_ring());
    let f = free_energy(&z, &[0]).unwrap();
    assert!(check_row_poles(&z, &f).unwrap().passed());

    let table = residue_table(&f);
    let low = residue(&table, &vp("(1)")).unwrap();
    assert_eq!(residue(&table, &vp("(2)")).unwrap(), low.adams_shift(2));
    assert!(check_residues(&f).passed());

    let t = free_energy(&z_of("trefoil", &[1]), &[0]).unwrap();
    let one2 = &qint(1) * &qint(1);
    assert!((&one2 * &t.tilde(&vp("(1)"))).as_laurent().is_some());
}

#[test]
fn odd_framing_needs_the_sign() {
    let z = z_of("unknot", &[2]);
    assert!(!check_residues(&free_energy(&z, &[1]).unwrap()).passed());
    assert!(check_residues(&free_energy_signed(&z, &[1]).unwrap()).passed());
    assert!(check_residues(&free_energy(&z, &[2]).unwrap()).passed());
}

#[test]
fn q1_limits() {
    let (rep, xi) = q1_limit(&z_of("unknot", &[3]));
    assert!(rep.passed());
    assert_eq!(xi, vec![Some(RationalQT::one())]);

    let (rep, xi) = q1_limit(&z_of("trefoil", &[2]));
    assert!(rep.passed());
    let x = xi[0].clone().unwrap();
    assert!(!x.is_one());
    assert!(x.num().is_q_free() && x.den().is_q_free());

    let (rep, xi) = q1_limit(&z_of("hopf", &[2, 2]));
    assert!(rep.passed());
    assert!(xi.iter().all(Option::is_some));
}

#[test]
fn reframing_by_convolution() {
    let z = z_of("unknot", &[2]);
    let base = z.zhat_table().unwrap();
    assert_eq!(reframe_convolution(&base, &[0]).unwrap(), base);
    let one = reframe_convolution(&base, &[1]).unwrap();
    assert_eq!(one[&vp("(1)")], base[&vp("(1)")]);

    let t = z_of("trefoil", &[2]);
    let conv = reframe_convolution(&t.zhat_table().unwrap(), &[1]).unwrap();
    assert_eq!(conv[&vp("(2)")], t.framed(&[1]).unwrap().zhat(&vp("(2)")).unwrap());
    assert!(check_reframing(&t, &[vec![1], vec![-2]]).unwrap().passed());
}

#[test]
fn cutjoin_holds_and_is_blind_to_single_entries() {
    for name in ["unknot", "trefoil"] {
        let z = z_of(name, &[2]);
        for tau in [0, 1, -1] {
            assert!(cutjoin_check(&z, &[tau]).unwrap().passed(), "{name} {tau}");
        }
    }
    // The identity holds for any table, so a corrupted entry is caught elsewhere.
    let bent = "(2):+q".parse::<Perturbation>().unwrap().apply(&z_of("unknot", &[2])).unwrap();
    assert!(cutjoin_check(&bent, &[0]).unwrap().passed());
}

#[test]
fn t_series_small_degrees() {
    let z = z_of("unknot", &[2]);
    let amps = amplitudes(&free_energy(&z, &[0]).unwrap()).unwrap();
    let t1 = build_t(&z, &amps.p, &[1]).unwrap();
    assert_eq!(t1.definition.coeff(&vp("(1)")), amps.p[&vp("(1)")]);
    assert_eq!(t1.definition.len(), 1);
    assert!(t1.definition.sub(&t1.multicover).terms().all(|(_, v)| v.is_zero()));
    for p in [2, 3] {
        assert!(ord_p_series(&t1.definition, p).unwrap().unwrap() >= 0);
    }
    assert!(phi_gap_ord_p(&z, &[1], 2).unwrap().is_none_or(|o| o >= 0));

    let tz = z_of("trefoil", &[2]);
    let tamps = amplitudes(&free_energy(&tz, &[0]).unwrap()).unwrap();
    let t2 = build_t(&tz, &tamps.p, &[2]).unwrap();
    assert!(t2.definition.sub(&t2.multicover).terms().all(|(_, v)| v.is_zero()));
    assert!(check_t(&tz, &tamps.p, &[2, 3, 5]).unwrap().iter().all(CheckReport::passed));
}

#[test]
fn suite_on_small_links() {
    for (name, cap) in [("unknot", vec![3]), ("hopf", vec![1, 1]), ("figure8", vec![1])] {
        let out = run_suite(&z_of(name, &cap), &SuiteOptions::default()).unwrap();
        assert!(out.report.passed(), "{name}\n{}", out.report.summary());
    }
}

#[test]
fn suite_flags_mutations() {
    for m in ["(1):+q", "(1,1):-t", "(1):+1/2*q^1/2-1/2*q^-1/2"] {
        let bent = m.parse::<Perturbation>().unwrap().apply(&z_of("unknot", &[2])).unwrap();
        let out = run_suite(&bent, &SuiteOptions::default()).unwrap();
        assert!(!out.report.passed(), "{m}");
    }
}

#[test]
fn default_framings_cover_each_component() {
    assert_eq!(default_framings(2), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![-1, -1]]);
}

fn small_laurent() -> impl Strategy<Value = LaurentQT> {
    prop::collection::vec((-4i32..=4, -2i32..=2, -3i64..=3), 0..4)
        .prop_map(|v| LaurentQT::from_terms(v.into_iter().map(|(q, t, c)| (q, t, r(c, 1)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reframings_compose(a in -3i64..=3, b in -3i64..=3) {
        let base = unknot_table(3).zhat_table().unwrap();
        let two_steps = reframe_convolution(&reframe_convolution(&base, &[a]).unwrap(), &[b]).unwrap();
        prop_assert_eq!(two_steps, reframe_convolution(&base, &[a + b]).unwrap());
    }

    #[test]
    fn amplitudes_round_trip_any_table(w1 in small_laurent(), w2 in small_laurent(), w11 in small_laurent()) {
        let table: BTreeMap<_, _> = [(vp("(1)"), w1.into()), (vp("(2)"), w2.into()), (vp("(1,1)"), w11.into())].into();
        let z = PartitionFunctionData::from_table("random", &[2], table).unwrap();
        let amps = amplitudes(&free_energy(&z, &[0]).unwrap()).unwrap();
        prop_assert!(check_reconstruction(&z, &amps).unwrap().passed());
        prop_assert!(cutjoin_check(&z, &[1]).unwrap().passed());
    }

    #[test]
    fn n_tables_round_trip(entries in prop::collection::btree_map((0u32..3, -3i32..=3), -4i64..=4, 0..6)) {
        let mut p = RationalQT::zero();
        for ((g, th), c) in &entries {
            let z2g = RationalQT::from(LaurentQT::z_squared()).powi(*g as i32 - 1).unwrap();
            p = &p + &(&z2g * &RationalQT::from(LaurentQT::t_half(*th))).scale(&r(*c, 1));
        }
        let (n, bad) = extract_n(&[(vp("(2,1)"), p.clone())].into());
        prop_assert!(bad.is_empty());
        let nonzero: BTreeMap<_, _> = entries.into_iter().filter(|(_, c)| *c != 0).collect();
        prop_assert_eq!(n.len(), nonzero.len());
        for ((g, th), c) in nonzero {
            prop_assert_eq!(n.get(&vp("(2,1)"), g, th), r(c, 1));
        }
        prop_assert_eq!(n.reconstruct().get(&vp("(2,1)")).cloned().unwrap_or_else(RationalQT::zero), p);
    }

    #[test]
    fn f_resums_to_free_energy(w1 in small_laurent(), w2 in small_laurent()) {
        let table: BTreeMap<_, _> = [(vp("(1)"), w1.into()), (vp("(2)"), w2.into())].into();
        let z = PartitionFunctionData::from_table("random", &[3], table).unwrap();
        let f = free_energy(&z, &[0]).unwrap();
        let back = resum_f(&extract_f_power(&f));
        prop_assert!(back.sub(&f.series).terms().all(|(_, v)| v.is_zero()));
    }
}
