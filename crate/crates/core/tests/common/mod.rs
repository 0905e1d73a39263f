//! Oracles shared by the integration tests. Nothing here goes through the
//! Hecke algebra.

#![allow(dead_code)]

use std::collections::HashMap;

use lmov_core::exactring::{LaurentQT, RationalQT};
use lmov_core::skein::BraidWord;

pub fn braid(s: &str, n: usize) -> BraidWord {
    BraidWord::parse(s, n).unwrap()
}

/// Small regression links as braid closures.
pub fn regression_links() -> Vec<(&'static str, BraidWord)> {
    vec![
        ("unknot", braid("", 1)),
        ("hopf", braid("s1 s1", 2)),
        ("trefoil", braid("s1 s1 s1", 2)),
        ("torus(2,4)", braid("s1 s1 s1 s1", 2)),
        ("torus(2,5)", braid("s1 s1 s1 s1 s1", 2)),
    ]
}

fn delta() -> RationalQT {
    RationalQT::new(&LaurentQT::t_half(1) - &LaurentQT::t_half(-1), &LaurentQT::q_half(1) - &LaurentQT::q_half(-1))
        .unwrap()
}

fn t_half(th: i32) -> RationalQT {
    RationalQT::from(LaurentQT::t_half(th))
}

/// Components of the closure as cycles of top positions, each starting at
/// its smallest position, ordered by that position.
fn components(b: &BraidWord) -> Vec<usize> {
    let perm = b.permutation();
    let mut seen = vec![false; b.strands()];
    let mut starts = Vec::new();
    for p in 0..b.strands() {
        if !seen[p] {
            starts.push(p);
            let mut x = p;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    starts
}

/// Index of the first crossing met as an under-crossing when walking each
/// component from its base point, components in order.
fn first_bad_crossing(b: &BraidWord) -> Option<usize> {
    let letters = b.letters();
    let perm = b.permutation();
    let mut visited = vec![false; letters.len()];
    for start in components(b) {
        let mut top = start;
        loop {
            let mut pos = top;
            for (k, &l) in letters.iter().enumerate() {
                let i = l.unsigned_abs() as usize;
                if pos + 1 == i || pos == i {
                    let moving_right = pos + 1 == i;
                    // σ_i: the strand moving right is over; σ_i^{-1}: the one moving left
                    let over = (l > 0) == moving_right;
                    if !visited[k] {
                        visited[k] = true;
                        if !over {
                            return Some(k);
                        }
                    }
                    pos = if moving_right { i } else { i - 1 };
                }
            }
            debug_assert_eq!(pos, perm[top]);
            top = pos;
            if top == start {
                break;
            }
        }
    }
    None
}

/// HOMFLY of a braid closure by crossing switches down to descending
/// diagrams. `t^{1/2} H(+) - t^{-1/2} H(-) = (q^{1/2} - q^{-1/2}) H(0)`,
/// unknot `(t^{1/2}-t^{-1/2})/(q^{1/2}-q^{-1/2})`.
pub fn skein_oracle(b: &BraidWord) -> RationalQT {
    let mut memo = HashMap::new();
    oracle_rec(b, &mut memo)
}

fn oracle_rec(b: &BraidWord, memo: &mut HashMap<BraidWord, RationalQT>) -> RationalQT {
    if let Some(v) = memo.get(b) {
        return v.clone();
    }
    let value = match first_bad_crossing(b) {
        None => delta().pow(components(b).len() as u32),
        Some(k) => {
            let letters = b.letters();
            let l = letters[k];
            let mut switched = letters.to_vec();
            switched[k] = -l;
            let mut smoothed = letters.to_vec();
            smoothed.remove(k);
            let sw = oracle_rec(&BraidWord::new(b.strands(), switched).unwrap(), memo);
            let sm = oracle_rec(&BraidWord::new(b.strands(), smoothed).unwrap(), memo);
            let z = RationalQT::from(&LaurentQT::q_half(1) - &LaurentQT::q_half(-1));
            if l > 0 {
                // H(+) = t^{-1} H(-) + t^{-1/2} z H(0)
                &(&t_half(-2) * &sw) + &(&(&t_half(-1) * &z) * &sm)
            } else {
                // H(-) = t H(+) - t^{1/2} z H(0)
                &(&t_half(2) * &sw) - &(&(&t_half(1) * &z) * &sm)
            }
        }
    };
    memo.insert(b.clone(), value.clone());
    value
}
