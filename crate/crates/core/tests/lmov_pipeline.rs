mod common;

use common::{braid, regression_links, skein_oracle};
use lmov_core::exactring::qint;
use lmov_core::lmov::{
    amplitudes, build_partition_function, extract_n, free_energy, reframe_convolution, run_suite, SuiteOptions,
};
use lmov_core::partitions::VectorPartition;
use lmov_core::skein::{closure_analysis, framed_power_sum, BraidWord};

fn n_csv(b: &BraidWord, cap: &[usize]) -> String {
    let z = build_partition_function("golden", b, cap).unwrap();
    let amps = amplitudes(&free_energy(&z, &vec![0; cap.len()]).unwrap()).unwrap();
    let (n, bad) = extract_n(&amps.p);
    assert!(bad.is_empty());
    n.to_csv()
}

#[test]
fn golden_n_tables() {
    assert_eq!(n_csv(&braid("s1 s1 s1", 2), &[2]), include_str!("golden/trefoil_cap2.csv"));
    assert_eq!(n_csv(&braid("s1 s1", 2), &[1, 1]), include_str!("golden/hopf_cap11.csv"));
}

/// In degree one `P_(1) [1]^2 = W_(1) [1]`, so the skein oracle alone fixes
/// `N_{(1);g,Q}`.
#[test]
fn degree_one_n_from_the_oracle() {
    for (name, b) in regression_links() {
        if closure_analysis(&b).num_components() != 1 {
            continue;
        }
        let z = build_partition_function(name, &b, &[1]).unwrap();
        let amps = amplitudes(&free_energy(&z, &[0]).unwrap()).unwrap();
        let (n, _) = extract_n(&amps.p);
        let expected = (&skein_oracle(&b) * &qint(1)).as_laurent().unwrap().to_z2_basis().unwrap();
        let got: std::collections::BTreeMap<_, _> = n.entries.iter().map(|((_, g, th), c)| ((*g, *th), c.clone())).collect();
        assert_eq!(got, expected, "{name}");
    }
}

/// Ẑ at blackboard framing from power-sum closures equals the convolution
/// reframing of the zero-framed Ẑ by the self-writhes.
#[test]
fn power_sum_closures_reframe_by_convolution() {
    for (name, b, cap) in [
        ("trefoil", braid("s1 s1 s1", 2), vec![2]),
        ("torus(2,5)", braid("s1 s1 s1 s1 s1", 2), vec![2]),
        ("figure8", braid("s1 -s2 s1 -s2", 3), vec![2]),
        ("hopf", braid("s1 s1", 2), vec![1, 1]),
        ("whitehead-like", braid("s1 s1 -s2 s1 -s2", 3), vec![1, 1]),
    ] {
        let pres = closure_analysis(&b);
        let z = build_partition_function(name, &b, &cap).unwrap();
        let writhes: Vec<i64> = (0..pres.num_components()).map(|a| pres.writhe(a)).collect();
        let conv = reframe_convolution(&z.zhat_table().unwrap(), &writhes).unwrap();
        for (mu, v) in conv {
            if mu.is_zero() {
                continue;
            }
            let th: i64 = mu.sizes().iter().zip(&writhes).map(|(&n, &w)| n as i64 * w).sum();
            let direct = framed_power_sum(&pres, &mu).unwrap().shift(0, -th as i32);
            assert_eq!(direct, v, "{name} {mu}");
        }
    }
}

#[test]
fn mirror_trefoil_passes() {
    let mirror = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
    let z = build_partition_function("mirror trefoil", &mirror, &[2]).unwrap();
    let out = run_suite(&z, &SuiteOptions::default()).unwrap();
    assert!(out.report.passed(), "{}", out.report.summary());
    let plain = build_partition_function("trefoil", &braid("s1 s1 s1", 2), &[2]).unwrap();
    for a in ["(1)", "(2)", "(1,1)"] {
        let a: VectorPartition = a.parse().unwrap();
        assert_eq!(z.w(&a), plain.w(&a).invert_q().invert_t(), "{a}");
    }
}
