use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use lmov_core::lmov::{
    build_partition_function_with, free_energy, named_link, regression_set, run_suite, PartitionFunctionData,
    Perturbation, SuiteOptions, SCRIPTED_MUTATIONS,
};
use lmov_core::skein::{closure_analysis, colored_invariant, BraidWord, ColoredLink, CONVENTION_TAG};
use serde_json::json;

use crate::cache::{canonical_braid, Cache};
use crate::config::{JobConfig, ResolvedLink};

/// What a command concluded; the exit code follows from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    ChecksFailed,
}

fn open_cache(cfg: &JobConfig) -> Result<Option<Cache>> {
    if !cfg.cache {
        return Ok(None);
    }
    Cache::from_env().context("opening the invariant cache")
}

/// Every `W_A⃗` within the cap, read from the cache where possible.
pub fn compute_table(name: &str, braid: &BraidWord, cap: &[usize], cache: Option<&Cache>) -> Result<PartitionFunctionData> {
    let pres = closure_analysis(braid);
    if pres.num_components() != cap.len() {
        anyhow::bail!("cap {cap:?} given for a link with {} components", pres.num_components());
    }
    let z = build_partition_function_with(name, cap, |a| {
        if let Some(c) = cache {
            match c.get(braid, a) {
                Ok(Some(v)) => return Ok(v),
                Ok(None) => {}
                Err(e) => {
                    eprintln!("warning: {e}; recomputing");
                    let _ = c.evict(braid, a);
                }
            }
        }
        let v = colored_invariant(&ColoredLink::from_vector(pres.clone(), a)?)?;
        if let Some(c) = cache {
            if let Err(e) = c.put(braid, a, &v) {
                eprintln!("warning: {e}");
            }
        }
        Ok(v)
    })?;
    Ok(z)
}

fn load(cfg: &JobConfig) -> Result<(ResolvedLink, PartitionFunctionData)> {
    let link = cfg.resolve_link()?;
    let cache = open_cache(cfg)?;
    let mut z = compute_table(&link.name, &link.braid, &link.cap, cache.as_ref())?;
    for p in &cfg.perturb {
        z = p.apply(&z)?;
    }
    Ok((link, z))
}

fn emit(cfg: &JobConfig, file: &str, text: &str) -> Result<()> {
    match &cfg.out {
        Some(dir) => write_file(dir, file, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, file: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(file);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn header(link: &ResolvedLink) -> serde_json::Value {
    json!({
        "link": link.name,
        "braid": canonical_braid(&link.braid),
        "cap": link.cap,
        "conventions": CONVENTION_TAG,
    })
}

pub fn invariant(cfg: &JobConfig) -> Result<Verdict> {
    let (link, mut z) = load(cfg)?;
    if let Some(tau) = cfg.framings.last() {
        let tau = if tau.len() == 1 { vec![tau[0]; z.num_components()] } else { tau.clone() };
        z = z.framed(&tau)?;
    }
    let mut out = header(&link);
    out["table"] = serde_json::to_value(&z.table)?;
    let text: BTreeMap<String, String> = z.table.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    out["text"] = serde_json::to_value(text)?;
    emit(cfg, "invariant.json", &pretty(&out))?;
    Ok(Verdict::Pass)
}

pub fn partition_function(cfg: &JobConfig) -> Result<Verdict> {
    let (link, z) = load(cfg)?;
    let f = free_energy(&z, &vec![0; z.num_components()])?;
    let zhat: BTreeMap<String, String> = z.zhat_table()?.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let mut out = header(&link);
    out["schur"] = z.schur().to_json();
    out["power"] = z.power().to_json();
    out["zhat"] = serde_json::to_value(zhat)?;
    out["free_energy"] = f.series.to_json();
    emit(cfg, "partition_function.json", &pretty(&out))?;
    Ok(Verdict::Pass)
}

pub fn lmov(cfg: &JobConfig) -> Result<Verdict> {
    let (link, z) = load(cfg)?;
    let opts = SuiteOptions { primes: cfg.primes.clone(), framings: cfg.framings_for(z.num_components())? };
    let outcome = run_suite(&z, &opts)?;
    let report = &outcome.report;
    let csv = outcome.n_table.to_csv();
    let mut json = report.to_json();
    json["braid"] = canonical_braid(&link.braid).into();
    json["conventions"] = CONVENTION_TAG.into();
    json["perturbed"] = (!cfg.perturb.is_empty()).into();
    let verdict = if report.passed() { Verdict::Pass } else { Verdict::ChecksFailed };
    let summary = format!(
        "{} cap {:?}\n{}{}\n",
        link.name,
        link.cap,
        report.summary(),
        if verdict == Verdict::Pass { "all checks pass" } else { "checks failed" }
    );
    match &cfg.out {
        Some(dir) => {
            write_file(dir, "n_table.csv", &csv)?;
            write_file(dir, "report.json", &pretty(&json))?;
            write_file(dir, "summary.txt", &summary)?;
            print!("{summary}");
        }
        None => print!("{summary}\n{csv}"),
    }
    Ok(verdict)
}

/// The regression set must pass and every scripted mutation must fail.
pub fn selftest(cfg: &JobConfig) -> Result<Verdict> {
    let cache = open_cache(cfg)?;
    let opts = SuiteOptions { primes: cfg.primes.clone(), framings: None };
    let mut ok = true;
    for l in regression_set() {
        let z = compute_table(&l.name, &l.braid, &l.default_cap, cache.as_ref())?;
        let passed = run_suite(&z, &opts)?.report.passed();
        ok &= passed;
        println!("{}  {} cap {:?}", if passed { "pass" } else { "FAIL" }, l.name, l.default_cap);
    }
    let mut caught = 0;
    for (name, cap, m) in SCRIPTED_MUTATIONS {
        let l = named_link(name)?;
        let z = compute_table(&l.name, &l.braid, cap, cache.as_ref())?;
        let bent = m.parse::<Perturbation>()?.apply(&z)?;
        let detected = !run_suite(&bent, &opts)?.report.passed();
        caught += usize::from(detected);
        ok &= detected;
        println!("{}  mutation {} {:?} {m}", if detected { "pass" } else { "FAIL" }, l.name, cap);
    }
    println!("{caught}/{} mutations caught", SCRIPTED_MUTATIONS.len());
    Ok(if ok { Verdict::Pass } else { Verdict::ChecksFailed })
}

/// Wall-clock time for the colored invariants and the check suite.
pub fn bench(cfg: &JobConfig) -> Result<Verdict> {
    let links: Vec<ResolvedLink> = match &cfg.link {
        Some(_) => vec![cfg.resolve_link()?],
        None => regression_set()
            .into_iter()
            .map(|l| ResolvedLink { name: l.name, braid: l.braid, cap: l.default_cap })
            .collect(),
    };
    let opts = SuiteOptions { primes: cfg.primes.clone(), framings: None };
    println!("{:<14} {:>8} {:>10} {:>10} {:>8}", "link", "cap", "table_ms", "suite_ms", "entries");
    for l in links {
        let start = Instant::now();
        let z = compute_table(&l.name, &l.braid, &l.cap, None)?;
        let table_ms = start.elapsed().as_millis();
        let start = Instant::now();
        let outcome = run_suite(&z, &opts)?;
        let suite_ms = start.elapsed().as_millis();
        let cap: Vec<String> = l.cap.iter().map(|c| c.to_string()).collect();
        println!("{:<14} {:>8} {table_ms:>10} {suite_ms:>10} {:>8}", l.name, cap.join(","), outcome.n_table.len());
    }
    Ok(Verdict::Pass)
}
