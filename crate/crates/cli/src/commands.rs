use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;

use canonphase::asymptotics::{compare_approximations, scaling_constants};
use canonphase::{
    distribution, holevo_variance, holevo_variance_mod_pi, make_state, min_eigenstates, report_distribution, sample,
    Basis, Distribution, Period, Report, StateKind,
};

use crate::table::{Cell, Table};
use crate::{Command, Failure, RunConfig};

const REPORT_COLUMNS: [&str; 13] = [
    "photons",
    "kind",
    "period",
    "mean_phase",
    "standard_variance",
    "delta_phi",
    "holevo_variance",
    "delta_phi_h",
    "l_rp",
    "l_s",
    "l_h",
    "l_c",
    "l_f",
];

pub fn execute(config: &RunConfig) -> Result<Table, Failure> {
    let kind = config.kind;
    match &config.command {
        Command::State { photons } => state_table(*photons, kind, config.basis),
        Command::Variance { photons } => {
            let dist = phase_distribution(*photons, kind, config.period)?;
            let v = match dist.period() {
                Period::TwoPi => holevo_variance(&dist).map_err(Failure::numeric("phase_dist", "holevo_variance"))?,
                Period::Pi => holevo_variance_mod_pi(&dist),
            };
            let mut table = Table::new(&["photons", "kind", "period", "holevo_variance", "delta_phi_h"]);
            table.push(vec![
                (*photons).into(),
                kind.name().into(),
                dist.period().to_string().into(),
                Cell::spread(v),
                Cell::spread(v.map(f64::sqrt)),
            ]);
            Ok(table)
        }
        Command::Measures { photons } => {
            let mut table = Table::new(&REPORT_COLUMNS);
            table.push(report_row(&measure(*photons, kind, config.period)?));
            Ok(table)
        }
        Command::Table { photons_list, threads } => {
            let mut table = Table::new(&REPORT_COLUMNS);
            for r in sweep(photons_list, kind, config.period, *threads)? {
                table.push(report_row(&r));
            }
            Ok(table)
        }
        Command::ApproxCount { photons, factor } => {
            let count =
                min_eigenstates::<f64>(*photons, *factor).map_err(Failure::numeric("states", "min_eigenstates"))?;
            let mut table = Table::new(&["photons", "factor", "eigenstates"]);
            table.push(vec![(*photons).into(), (*factor).into(), count.into()]);
            Ok(table)
        }
        Command::CompareApproximations { photons, grid } => {
            let phis: Vec<f64> = (1..=*grid).map(|i| FRAC_PI_2 * i as f64 / *grid as f64).collect();
            let rows = compare_approximations(*photons, &phis)
                .map_err(Failure::numeric("asymptotics", "compare_approximations"))?;
            let mut table = Table::new(&["phi", "exact", "intermediate", "bessel"]);
            for r in rows {
                table.push(vec![
                    r.phi.into(),
                    r.exact.into(),
                    r.intermediate.into(),
                    r.bessel.into(),
                ]);
            }
            Ok(table)
        }
        Command::AsymptoticConstants => {
            let constants = scaling_constants(kind).map_err(Failure::numeric("asymptotics", "scaling_constants"))?;
            let mut table = Table::new(&["kind", "measure", "scaling", "value", "route"]);
            for c in constants {
                let route = serde_json::to_value(c.route)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from));
                table.push(vec![
                    kind.name().into(),
                    c.measure.into(),
                    c.scaling.into(),
                    c.value.into(),
                    route.unwrap_or_default().into(),
                ]);
            }
            Ok(table)
        }
        Command::Sample { photons, count, seed } => {
            let dist = phase_distribution(*photons, kind, config.period)?;
            let draws = sample(&dist, *count, *seed).map_err(Failure::numeric("phase_dist", "sample"))?;
            let mut table = Table::new(&["index", "phi"]);
            for (i, phi) in draws.into_iter().enumerate() {
                table.push(vec![i.into(), phi.into()]);
            }
            Ok(table)
        }
    }
}

fn state_table(photons: u32, kind: StateKind, basis: Basis) -> Result<Table, Failure> {
    let state = make_state::<f64>(photons, kind, basis).map_err(Failure::numeric("states", "make_state"))?;
    let mut table = Table::new(&["mu", "re", "im"]);
    for (mu, c) in state.iter() {
        table.push(vec![mu.value().into(), c.re.into(), c.im.into()]);
    }
    Ok(table)
}

fn phase_distribution(photons: u32, kind: StateKind, period: Option<Period>) -> Result<Distribution, Failure> {
    let state = make_state::<f64>(photons, kind, Basis::Y).map_err(Failure::numeric("states", "make_state"))?;
    let dist = distribution(&state).map_err(Failure::numeric("phase_dist", "distribution"))?;
    match period {
        Some(p) => dist.with_period(p).map_err(|e| Failure::flag("period", e)),
        None => Ok(dist),
    }
}

fn measure(photons: u32, kind: StateKind, period: Option<Period>) -> Result<Report, Failure> {
    let dist = phase_distribution(photons, kind, period)?;
    let mut report = report_distribution(&dist).map_err(Failure::numeric("measures", "report"))?;
    report.kind = Some(kind);
    Ok(report)
}

/// Reports for every distinct photon number, sorted, computed on up to `threads` workers.
fn sweep(
    photons: &[u32],
    kind: StateKind,
    period: Option<Period>,
    threads: Option<NonZeroUsize>,
) -> Result<Vec<Report>, Failure> {
    let mut ns = photons.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let available = std::thread::available_parallelism().map_or(1, NonZeroUsize::get);
    let workers = threads.map_or(available, NonZeroUsize::get).min(ns.len()).max(1);
    let mut results: Vec<Option<Result<Report, Failure>>> = (0..ns.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let ns = &ns;
                s.spawn(move || {
                    // largest N first on each worker, interleaved across workers
                    (w..ns.len())
                        .step_by(workers)
                        .rev()
                        .map(|i| (i, measure(ns[i], kind, period)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (i, r) in handle.join().expect("worker thread panicked") {
                results[i] = Some(r);
            }
        }
    });
    results.into_iter().map(|r| r.expect("every index assigned")).collect()
}

fn report_row(r: &Report) -> Vec<Cell> {
    vec![
        r.photons.into(),
        r.kind.map_or("", StateKind::name).into(),
        r.period.to_string().into(),
        r.mean_phase.into(),
        r.standard_variance.into(),
        r.delta_phi.into(),
        Cell::spread(r.holevo_variance),
        Cell::spread(r.delta_phi_h),
        r.l_rp.into(),
        r.l_s.into(),
        r.l_h.into(),
        r.l_c.into(),
        Cell::spread(r.l_f),
    ]
}
