mod common;

use common::{braid, regression_links, skein_oracle};
use lmov_core::skein::{closure_analysis, homfly, BraidWord};
use proptest::prelude::*;

#[test]
fn hecke_trace_matches_crossing_switch_oracle() {
    for (name, b) in regression_links() {
        let h = homfly(&closure_analysis(&b)).unwrap();
        assert_eq!(h, skein_oracle(&b), "{name}");
    }
}

#[test]
fn oracle_sees_markov_moves() {
    let t = skein_oracle(&braid("s1 s1 s1", 2));
    assert_eq!(skein_oracle(&braid("s1 s1 s1 s2", 3)), t);
    assert_eq!(skein_oracle(&braid("s2 s1 s1 s1 -s2", 3)), skein_oracle(&braid("s1 s1 s1", 3)));
    let fig8 = braid("s1 -s2 s1 -s2", 3);
    assert_eq!(homfly(&closure_analysis(&fig8)).unwrap(), skein_oracle(&fig8));
    // the figure-eight knot is amphichiral
    let mirror = BraidWord::new(3, fig8.letters().iter().map(|l| -l).collect()).unwrap();
    assert_eq!(skein_oracle(&mirror), skein_oracle(&fig8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn random_three_and_four_strand_braids(
        n in 2usize..=4,
        raw in prop::collection::vec((1i32..=3, any::<bool>()), 0..7),
    ) {
        let letters: Vec<i32> = raw
            .into_iter()
            .map(|(i, pos)| {
                let i = 1 + (i - 1) % (n as i32 - 1);
                if pos { i } else { -i }
            })
            .collect();
        let b = BraidWord::new(n, letters).unwrap();
        prop_assert_eq!(homfly(&closure_analysis(&b)).unwrap(), skein_oracle(&b));
    }
}
