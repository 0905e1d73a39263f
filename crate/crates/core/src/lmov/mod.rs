//! From colored invariants to LMOV invariants, with every structural check
//! run on exact data.
//!
//! The chain is `W_A⃗ → Z → F = log Z → f → P_B⃗ → N_{B⃗;g,Q}`. Each check
//! produces a [`CheckReport`]; [`run_suite`] collects them into a [`Report`].

mod checks;
mod mutation;
mod pipeline;
mod registry;
mod report;
mod tseries;

pub use checks::{
    check_degree, check_integrality, check_reconstruction, check_reframing, check_residues, check_row_poles,
    check_structure, check_symmetry, cutjoin_check, q1_limit, residue, residue_table,
};
pub use mutation::{parse_laurent, Perturbation, SCRIPTED_MUTATIONS};
pub use pipeline::{
    amplitudes, build_m, build_partition_function, build_partition_function_with, den_divides_qint_squares,
    extract_f, extract_f_power, extract_n, free_energy, free_energy_signed, invert, m_blocks, p_by_characters, phi, reconstruct_f,
    reframe_convolution, resum_f, solve_p, FPAmplitudes, FreeEnergyData, MBlock, NTable, PartitionFunctionData,
    StructureViolation,
};
pub use registry::{named_link, regression_set, NamedLink, REGISTERED};
pub use report::{CheckReport, Report, Status, Witness};
pub use tseries::{build_t, check_t, ord_p_series, phi_gap_ord_p, phi_series, to_y, TSeriesData};

use crate::error::Result;
use crate::exactring::RationalQT;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Primes for the `Ord_p` checks.
    pub primes: Vec<u64>,
    /// Framings for the framing-dependent checks; defaults to [`default_framings`].
    pub framings: Option<Vec<Vec<i64>>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { primes: vec![2, 3, 5], framings: None }
    }
}

/// Zero framing, `τ_α = 1` on one component at a time, and `τ = -1` everywhere.
pub fn default_framings(l: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; l]];
    for a in 0..l {
        let mut v = vec![0; l];
        v[a] = 1;
        out.push(v);
    }
    out.push(vec![-1; l]);
    out
}

/// Everything computed by [`run_suite`].
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub free_energy: FreeEnergyData,
    pub amplitudes: FPAmplitudes,
    pub n_table: NTable,
    pub xi: Vec<Option<RationalQT>>,
}

/// Runs the full pipeline and every check on one table.
pub fn run_suite(z: &PartitionFunctionData, opts: &SuiteOptions) -> Result<Outcome> {
    let l = z.num_components();
    let framings = opts.framings.clone().unwrap_or_else(|| default_framings(l));
    let mut checks = vec![check_symmetry(z)];

    let free = free_energy(z, &vec![0; l])?;
    let framed_free: Vec<FreeEnergyData> = framings.iter().map(|t| free_energy(z, t)).collect::<Result<_>>()?;

    let mut degree = CheckReport::new("degree");
    let mut rows = CheckReport::new("row_poles");
    let mut residues = CheckReport::new("residues");
    let mut cutjoin = CheckReport::new("cut_and_join");
    let mut unsigned_exceptions = Vec::new();
    for (tau, f) in framings.iter().zip(&framed_free) {
        degree.absorb(check_degree(f));
        rows.absorb(check_row_poles(z, f)?);
        let res = check_residues(&free_energy_signed(z, tau)?);
        if tau.iter().all(|&x| x == 0) {
            residues.info = res.info.clone();
        } else if tau.iter().any(|x| x % 2 != 0) {
            let unsigned = check_residues(f);
            unsigned_exceptions.extend(unsigned.witness.iter().map(|w| w.key.clone()));
        }
        residues.absorb(res);
        let cj = cutjoin_check(z, tau)?;
        if tau.iter().all(|&x| x == 0) {
            cutjoin.info = cj.info.clone();
        }
        cutjoin.absorb(cj);
    }
    degree.note("framings", &framings);
    rows.note("framings", &framings);
    residues.note("framings", &framings);
    residues.note("unsigned_framing_exceptions", unsigned_exceptions);
    checks.extend([degree, rows, residues, cutjoin]);

    let (q1, xi) = q1_limit(z);
    checks.push(q1);
    checks.push(check_reframing(z, &framings)?);

    let amps = amplitudes(&free)?;
    checks.push(check_reconstruction(z, &amps)?);
    let (n_table, violations) = extract_n(&amps.p);
    checks.push(check_structure(&violations));
    checks.push(check_integrality(&n_table, &amps.p));
    checks.extend(check_t(z, &amps.p, &opts.primes)?);

    let report = Report { link: z.link.clone(), cap: z.cap.clone(), checks };
    Ok(Outcome { report, free_energy: free, amplitudes: amps, n_table, xi })
}

#[cfg(test)]
mod tests;
