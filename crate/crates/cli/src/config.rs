use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use lmov_core::lmov::{named_link, Perturbation};
use lmov_core::skein::{closure_analysis, BraidWord, MAX_IDEMPOTENT_LEVEL};

/// Flags shared by every subcommand. Each may also be given as `key=value`
/// in the file passed to `--config`; flags on the command line win.
#[derive(Args, Debug, Clone, Default)]
pub struct JobArgs {
    /// Registered link name: unknot, hopf, trefoil, figure8, unlink2, T(2,k).
    #[arg(long)]
    pub link: Option<String>,
    /// Braid word such as "s1 -s2 s1".
    #[arg(long, conflicts_with = "link")]
    pub braid: Option<String>,
    /// Strand count for --braid.
    #[arg(long)]
    pub strands: Option<usize>,
    /// Degree cap per component, e.g. "3" or "2,2".
    #[arg(long)]
    pub cap: Option<String>,
    /// Framing vector, e.g. "1" or "0,-1". Repeatable.
    #[arg(long)]
    pub framing: Vec<String>,
    /// Primes for the Ord_p checks, e.g. "2,3,5".
    #[arg(long)]
    pub primes: Option<String>,
    /// Directory for output files; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Skip the invariant cache.
    #[arg(long)]
    pub no_cache: bool,
    /// File of key=value lines supplying defaults for the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Perturb one colored invariant before checking, e.g. "(2):+q". Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkSpec {
    Named(String),
    Braid { word: String, strands: usize },
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub link: Option<LinkSpec>,
    pub cap: Option<Vec<usize>>,
    pub framings: Vec<Vec<i64>>,
    pub primes: Vec<u64>,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub cache: bool,
    pub perturb: Vec<Perturbation>,
}

/// A link ready to evaluate.
#[derive(Clone, Debug)]
pub struct ResolvedLink {
    pub name: String,
    pub braid: BraidWord,
    pub cap: Vec<usize>,
}

fn read_config(path: &Path) -> Result<BTreeMap<String, Vec<String>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), i + 1);
        };
        let key = k.trim().replace('_', "-");
        const KNOWN: &[&str] =
            &["link", "braid", "strands", "cap", "framing", "primes", "out", "jobs", "no-cache", "perturb"];
        if !KNOWN.contains(&key.as_str()) {
            bail!("{}:{}: unknown key {key:?}", path.display(), i + 1);
        }
        out.entry(key).or_default().push(v.trim().to_string());
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow::anyhow!("bad {what} {x:?} in {s:?}")))
        .collect()
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl JobArgs {
    /// Fills unset flags from `--config`.
    fn merged(&self) -> Result<JobArgs> {
        let Some(path) = &self.config else {
            return Ok(self.clone());
        };
        let file = read_config(path)?;
        let last = |k: &str| file.get(k).and_then(|v| v.last().cloned());
        let mut out = self.clone();
        if out.link.is_none() && out.braid.is_none() {
            out.link = last("link");
            out.braid = last("braid");
        }
        if out.strands.is_none() {
            out.strands = last("strands").map(|s| s.parse()).transpose().context("strands in config")?;
        }
        out.cap = out.cap.or_else(|| last("cap"));
        out.primes = out.primes.or_else(|| last("primes"));
        out.out = out.out.or_else(|| last("out").map(PathBuf::from));
        if out.jobs.is_none() {
            out.jobs = last("jobs").map(|s| s.parse()).transpose().context("jobs in config")?;
        }
        if !out.no_cache {
            out.no_cache = matches!(last("no-cache").as_deref(), Some("true" | "1" | "yes"));
        }
        if out.framing.is_empty() {
            out.framing = file.get("framing").cloned().unwrap_or_default();
        }
        if out.perturb.is_empty() {
            out.perturb = file.get("perturb").cloned().unwrap_or_default();
        }
        Ok(out)
    }

    pub fn resolve(&self) -> Result<JobConfig> {
        let a = self.merged()?;
        let link = match (&a.link, &a.braid) {
            (Some(_), Some(_)) => bail!("give either a link name or a braid word, not both"),
            (Some(name), None) => Some(LinkSpec::Named(name.clone())),
            (None, Some(word)) => {
                let strands = a.strands.context("--braid needs --strands")?;
                Some(LinkSpec::Braid { word: word.clone(), strands })
            }
            (None, None) => None,
        };
        let cap = a.cap.as_deref().map(|s| parse_list::<usize>(s, "cap entry")).transpose()?;
        if let Some(c) = &cap {
            if let Some(bad) = c.iter().find(|&&n| n > MAX_IDEMPOTENT_LEVEL) {
                bail!("cap entry {bad} exceeds {MAX_IDEMPOTENT_LEVEL}");
            }
        }
        let framings = a.framing.iter().map(|s| parse_list::<i64>(s, "framing")).collect::<Result<Vec<_>>>()?;
        let primes = match &a.primes {
            Some(s) => parse_list::<u64>(s, "prime")?,
            None => vec![2, 3, 5],
        };
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            bail!("{p} is not prime");
        }
        let jobs = a.jobs.unwrap_or(1);
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        let perturb = a
            .perturb
            .iter()
            .map(|s| s.parse::<Perturbation>().with_context(|| format!("perturbation {s:?}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(JobConfig { link, cap, framings, primes, out: a.out.clone(), jobs, cache: !a.no_cache, perturb })
    }
}

impl JobConfig {
    /// The link and cap; a single cap entry is repeated over the components.
    pub fn resolve_link(&self) -> Result<ResolvedLink> {
        let Some(link) = &self.link else {
            bail!("no link given; use --link NAME or --braid WORD --strands N");
        };
        let (name, braid, default_cap) = match link {
            LinkSpec::Named(n) => {
                let l = named_link(n)?;
                (l.name, l.braid, Some(l.default_cap))
            }
            LinkSpec::Braid { word, strands } => {
                (format!("braid({word})"), BraidWord::parse(word, *strands)?, None)
            }
        };
        let l = closure_analysis(&braid).num_components();
        let cap = match (&self.cap, default_cap) {
            (Some(c), _) if c.len() == 1 => vec![c[0]; l],
            (Some(c), _) if c.len() == l => c.clone(),
            (Some(c), _) => bail!("cap {c:?} given for a link with {l} components"),
            (None, Some(d)) => d,
            (None, None) => vec![2; l],
        };
        Ok(ResolvedLink { name, braid, cap })
    }

    /// Framings for the checks, each expanded to `l` components.
    pub fn framings_for(&self, l: usize) -> Result<Option<Vec<Vec<i64>>>> {
        if self.framings.is_empty() {
            return Ok(None);
        }
        let mut out: Vec<Vec<i64>> = vec![vec![0; l]];
        for f in &self.framings {
            let v = match f.len() {
                1 => vec![f[0]; l],
                n if n == l => f.clone(),
                _ => bail!("framing {f:?} given for a link with {l} components"),
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_fills_gaps_and_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("job.conf");
        fs::write(&path, "# regression\nlink = trefoil\ncap=3\nprimes=2,3\nframing=1\nframing=-1\n").unwrap();
        let args = JobArgs { cap: Some("2".into()), config: Some(path), ..Default::default() };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.link, Some(LinkSpec::Named("trefoil".into())));
        assert_eq!(cfg.cap, Some(vec![2]));
        assert_eq!(cfg.primes, vec![2, 3]);
        assert_eq!(cfg.framings, vec![vec![1], vec![-1]]);
        assert_eq!(cfg.framings_for(1).unwrap().unwrap(), vec![vec![0], vec![1], vec![-1]]);
    }

    #[test]
    fn rejects_bad_settings() {
        let bad = |a: JobArgs| a.resolve().is_err();
        assert!(bad(JobArgs { primes: Some("2,4".into()), ..Default::default() }));
        assert!(bad(JobArgs { cap: Some("8".into()), ..Default::default() }));
        assert!(bad(JobArgs { jobs: Some(0), ..Default::default() }));
        assert!(bad(JobArgs { braid: Some("s1".into()), ..Default::default() }));
        assert!(bad(JobArgs { perturb: vec!["(2)+q".into()], ..Default::default() }));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("job.conf");
        fs::write(&path, "colour=red\n").unwrap();
        assert!(bad(JobArgs { config: Some(path), ..Default::default() }));
    }

    #[test]
    fn caps_expand_over_components() {
        let cfg = JobArgs { link: Some("hopf".into()), cap: Some("1".into()), ..Default::default() }.resolve().unwrap();
        assert_eq!(cfg.resolve_link().unwrap().cap, vec![1, 1]);
        let cfg = JobArgs { braid: Some("s1 s1".into()), strands: Some(2), ..Default::default() }.resolve().unwrap();
        let l = cfg.resolve_link().unwrap();
        assert_eq!((l.name.as_str(), l.cap), ("braid(s1 s1)", vec![2, 2]));
        let cfg = JobArgs { link: Some("trefoil".into()), cap: Some("1,1".into()), ..Default::default() }.resolve().unwrap();
        assert!(cfg.resolve_link().is_err());
        assert!(is_prime(2) && is_prime(5) && !is_prime(1) && !is_prime(9));
    }
}
