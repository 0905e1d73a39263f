use crate::error::{Error, Result};
use crate::skein::{closure_analysis, BraidWord};

/// A named braid closure with its regression cap.
#[derive(Clone, Debug)]
pub struct NamedLink {
    pub name: String,
    pub braid: BraidWord,
    pub default_cap: Vec<usize>,
}

impl NamedLink {
    pub fn num_components(&self) -> usize {
        closure_analysis(&self.braid).num_components()
    }
}

fn torus_two(k: usize) -> Result<NamedLink> {
    if k == 0 {
        return Err(Error::Parse("torus(2,0) is not supported".into()));
    }
    let braid = BraidWord::new(2, vec![1; k])?;
    let comps = if k.is_multiple_of(2) { 2 } else { 1 };
    let default_cap = match (k, comps) {
        (3, _) => vec![3],
        (_, 1) => vec![2],
        _ => vec![2, 2],
    };
    Ok(NamedLink { name: format!("torus(2,{k})"), braid, default_cap })
}

/// Looks up `unknot`, `hopf`, `trefoil`, `figure8`, `unlink2`,
/// `torus(2,k)` or `T(2,k)`.
pub fn named_link(name: &str) -> Result<NamedLink> {
    let key = name.trim().to_ascii_lowercase().replace([' ', '_', '-'], "");
    let simple = |braid: &str, strands: usize, cap: Vec<usize>| -> Result<NamedLink> {
        Ok(NamedLink { name: key.clone(), braid: BraidWord::parse(braid, strands)?, default_cap: cap })
    };
    match key.as_str() {
        "unknot" => simple("", 1, vec![4]),
        "hopf" => simple("s1 s1", 2, vec![2, 2]),
        "trefoil" => simple("s1 s1 s1", 2, vec![3]),
        "figure8" | "figureeight" => simple("s1 -s2 s1 -s2", 3, vec![2]),
        "unlink2" | "unlink" => simple("", 2, vec![2, 2]),
        _ => {
            let inner = key
                .strip_prefix("torus")
                .or_else(|| key.strip_prefix('t'))
                .and_then(|s| s.strip_prefix('('))
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("unknown link {name:?}")))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("unknown link {name:?}")))?;
            let k: usize = b.parse().map_err(|_| Error::Parse(format!("bad torus parameter in {name:?}")))?;
            if a != "2" {
                return Err(Error::Parse(format!("only torus(2,k) links are registered, got {name:?}")));
            }
            torus_two(k)
        }
    }
}

/// Names accepted by [`named_link`].
pub const REGISTERED: &[&str] = &["unknot", "hopf", "trefoil", "figure8", "unlink2", "torus(2,k)", "T(2,k)"];

/// The regression set with its caps.
pub fn regression_set() -> Vec<NamedLink> {
    ["unknot", "hopf", "trefoil", "T(2,4)", "T(2,5)"].iter().map(|n| named_link(n).expect("registered")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(named_link("unknot").unwrap().num_components(), 1);
        assert_eq!(named_link("Hopf").unwrap().num_components(), 2);
        let t = named_link("T(2,5)").unwrap();
        assert_eq!(t.braid.letters(), &[1, 1, 1, 1, 1]);
        assert_eq!(t.default_cap, vec![2]);
        assert_eq!(named_link("torus(2,4)").unwrap().default_cap, vec![2, 2]);
        assert_eq!(named_link("figure8").unwrap().num_components(), 1);
        assert!(named_link("borromean").is_err());
        assert!(named_link("torus(3,4)").is_err());
    }
}
