use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A braid word on `strands` strands; letter `±i` is `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 && !letters.is_empty() {
            return Err(Error::InvalidBraid("letters on zero strands".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidBraid(format!("letter {l} on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `"s1 s2 -s1"` (plain integers are accepted too).
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_letter)
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Permutation of the underlying strands: `perm[top] = bottom`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

fn parse_letter(tok: &str) -> Result<i32> {
    let (neg, rest) = match tok.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let rest = rest.strip_prefix('s').or_else(|| rest.strip_prefix('σ')).unwrap_or(rest);
    let (body, inv) = match rest.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (rest, false),
    };
    let i: i32 = body.parse().map_err(|_| Error::Parse(format!("bad braid letter {tok:?}")))?;
    if i <= 0 {
        return Err(Error::Parse(format!("bad braid letter {tok:?}")));
    }
    Ok(if neg ^ inv { -i } else { i })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.letters.iter().map(|&l| if l < 0 { format!("-s{}", -l) } else { format!("s{l}") }).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    /// `"<strands>:<word>"`, e.g. `"2:s1 s1 s1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, w) = s.split_once(':').ok_or_else(|| Error::Parse("expected <strands>:<word>".into()))?;
        let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad strand count {n:?}")))?;
        BraidWord::parse(w, n)
    }
}

/// Components, writhes and linking numbers of a braid closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPresentation {
    braid: BraidWord,
    /// Top positions of each component, sorted; components ordered by
    /// their smallest position.
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    writhes: Vec<i64>,
    linking: Vec<Vec<i64>>,
}

impl LinkPresentation {
    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, pos: usize) -> usize {
        self.component_of[pos]
    }

    /// Self-writhe of component `a`.
    pub fn writhe(&self, a: usize) -> i64 {
        self.writhes[a]
    }

    pub fn total_writhe(&self) -> i64 {
        self.braid.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    pub fn linking(&self, a: usize, b: usize) -> i64 {
        self.linking[a][b]
    }
}

/// Splits the closure of `b` into components and counts signed crossings.
pub fn closure_analysis(b: &BraidWord) -> LinkPresentation {
    let n = b.strands;
    let perm = b.permutation();
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut cyc = Vec::new();
        let mut x = start;
        while component_of[x] == usize::MAX {
            component_of[x] = id;
            cyc.push(x);
            x = perm[x];
        }
        cyc.sort_unstable();
        components.push(cyc);
    }
    let l = components.len();
    let mut writhes = vec![0i64; l];
    let mut mixed = vec![vec![0i64; l]; l];
    let mut at: Vec<usize> = (0..n).collect();
    for &letter in &b.letters {
        let i = letter.unsigned_abs() as usize;
        let (ca, cb) = (component_of[at[i - 1]], component_of[at[i]]);
        let sign = letter.signum() as i64;
        if ca == cb {
            writhes[ca] += sign;
        } else {
            mixed[ca][cb] += sign;
            mixed[cb][ca] += sign;
        }
        at.swap(i - 1, i);
    }
    let linking = mixed.iter().map(|row| row.iter().map(|x| x / 2).collect()).collect();
    LinkPresentation { braid: b.clone(), components, component_of, writhes, linking }
}

/// Blackboard-parallel cable: the strand starting at top position `p` is
/// replaced by `mult[p]` parallel strands (zero deletes it).
///
/// Multiplicities must be constant on each component of the closure.
pub fn cable(b: &BraidWord, mult: &[usize]) -> Result<BraidWord> {
    if mult.len() != b.strands {
        return Err(Error::SizeMismatch(format!("{} multiplicities for {} strands", mult.len(), b.strands)));
    }
    let perm = b.permutation();
    if (0..b.strands).any(|p| mult[perm[p]] != mult[p]) {
        return Err(Error::InvalidBraid("cable multiplicities differ along a component".into()));
    }
    let mut sizes = mult.to_vec();
    let mut out = Vec::new();
    for &letter in &b.letters {
        let i = letter.unsigned_abs() as usize;
        let offset: usize = sizes[..i - 1].iter().sum();
        let (a, c) = (sizes[i - 1], sizes[i]);
        if letter > 0 {
            out.extend(block_crossing(offset, a, c));
        } else {
            let mut w = block_crossing(offset, c, a);
            w.reverse();
            out.extend(w.into_iter().map(|x| -x));
        }
        sizes.swap(i - 1, i);
    }
    BraidWord::new(mult.iter().sum(), out)
}

/// Positive crossing of a block of `a` strands over a block of `b` strands
/// starting after `offset` strands.
fn block_crossing(offset: usize, a: usize, b: usize) -> Vec<i32> {
    let mut w = Vec::with_capacity(a * b);
    for j in (0..a).rev() {
        for k in 1..=b {
            w.push((offset + j + k) as i32);
        }
    }
    w
}
