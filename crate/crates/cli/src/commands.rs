//! One function per subcommand. Each returns data; printing is left to `main`.

use binormix::{
    classify, find_modes, grid_oracle_modes, modality_bound, q_numerator, q_roots_in_unit,
    ridge_sample, verify_bounds, Mixture, ModeReport, RidgeSample, ScanConfig, SearchConfig,
    DEFAULT_REL_TOL,
};

use crate::config::PairConfig;
use crate::error::{CliError, CliResult};
use crate::plot::{build_plot_bundle, PlotBundle, PlotOptions};
use crate::report::{ClassifyOut, ModeReportOut, ModesOut, QRootsOut, ScanOut};

/// Mode locations from the two methods must match this closely to agree.
pub const MODE_AGREEMENT_TOL: f64 = 1e-6;

pub fn cmd_classify(cfg: &PairConfig) -> CliResult<ClassifyOut> {
    let pair = cfg.pair()?;
    let r = classify(&pair, DEFAULT_REL_TOL).map_err(CliError::numerical("classify"))?;
    Ok(ClassifyOut::from(&r))
}

pub fn cmd_qroots(cfg: &PairConfig) -> CliResult<QRootsOut> {
    let pair = cfg.pair()?;
    Ok(QRootsOut::new(
        &q_roots_in_unit(&pair),
        &modality_bound(&pair),
        &q_numerator(&pair),
    ))
}

fn agree(a: &ModeReport, b: &ModeReport) -> bool {
    a.count == b.count
        && a.modes.iter().all(|m| {
            b.modes
                .iter()
                .any(|o| o.location.distance(m.location) < MODE_AGREEMENT_TOL)
        })
}

pub fn cmd_modes(cfg: &PairConfig, c: Option<f64>) -> CliResult<ModesOut> {
    let pair = cfg.pair()?;
    let c = c.unwrap_or(cfg.c);
    let mix = Mixture::new(pair, c)
        .map_err(|_| CliError::validation("--c", format!("{c} is outside [0, 1]")))?;
    let search = SearchConfig::default();
    let a = find_modes(&mix, &search).map_err(CliError::numerical("modes"))?;
    let b = grid_oracle_modes(&mix, &search).map_err(CliError::numerical("modes"))?;
    Ok(ModesOut {
        c,
        methods_agree: agree(&a, &b),
        agreement_tol: MODE_AGREEMENT_TOL,
        newton: ModeReportOut::from(&a),
        grid_oracle: ModeReportOut::from(&b),
    })
}

/// `n` samples at `α = i / (n − 1)`, endpoints included.
pub fn cmd_ridgeline(cfg: &PairConfig, n: usize) -> CliResult<Vec<RidgeSample>> {
    if n < 2 {
        return Err(CliError::validation("--samples", "need at least 2 samples"));
    }
    let pair = cfg.pair()?;
    (0..n)
        .map(|i| ridge_sample(&pair, i as f64 / (n - 1) as f64))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::numerical("ridgeline"))
}

pub fn cmd_emit_plot(cfg: &PairConfig, opts: &PlotOptions) -> CliResult<PlotBundle> {
    build_plot_bundle(&cfg.pair()?, cfg.c, opts)
}

/// Runs the scan; a report with violations is returned as `CliError::Bound`
/// alongside the full summary so it can still be printed.
pub fn cmd_scan(seed: u64, trials: usize) -> CliResult<(ScanOut, Option<CliError>)> {
    if trials == 0 {
        return Err(CliError::validation("--trials", "must be at least 1"));
    }
    let cfg = ScanConfig {
        seed,
        trials_per_type: trials,
        ..ScanConfig::default()
    };
    let report = verify_bounds(&cfg).map_err(CliError::numerical("scan"))?;
    let out = ScanOut::new(&cfg, &report);
    let violation = report.check().err().map(|e| {
        CliError::Bound(format!(
            "{} of {} checks: {e}",
            report.violations.len(),
            out.types.iter().map(|t| t.trials).sum::<usize>() * cfg.mixing.len()
        ))
    });
    Ok((out, violation))
}
