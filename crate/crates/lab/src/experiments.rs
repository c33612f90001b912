//! Dispatch from a config to the owning module, and the result tables.

use std::time::Instant;

use ogp_core::branching::{neighborhood_stats, tail_check};
use ogp_core::concentration::{
    biased_mcdiarmid_bound, empirical_tail, fan_bound, standard_mcdiarmid_bound, BiasedBoundParams,
    FiniteDist, MAIN_LANE, PILOT_LANE,
};
use ogp_core::instances::{depth_budget, sample_hypergraph, sample_signs, SignedInstance};
use ogp_core::localalg::{overlap_curve, smoothness_screen};
use ogp_core::qaoa::{
    bell_experiment, build_cost_diagonal_with_cap, edge_lightcone, evolve,
    lightcone_edge_expectation, z_product_expectation, InitialState, QaoaParams, DEFAULT_DENSE_CAP,
};
use ogp_core::rng::Seed;
use ogp_core::runner::TrialRunner;

use crate::config::{bell_angles, AlgorithmConfig, Experiment, ExperimentConfig};
use crate::error::{LabError, Result};
use crate::probe::ogp_probe;
use crate::record::{schema_name, ResultRecord, StreamSpan};
use crate::suite::{concentration_suite, SuiteParams};
use crate::table::{Cell, Table};

/// Environment variable overriding the dense simulation qubit cap.
pub const DENSE_CAP_ENV: &str = "OGP_LAB_DENSE_CAP";

/// Sign convention of the simulated circuit, recorded with every QAOA
/// result.
pub const GATE_CONVENTION: &str =
    "gates: U(gamma) = exp(-i gamma H_c), U(beta) = exp(-i beta sum_j X_j), H_c = -sum_e prod_{v in e} Z_v";

pub fn dense_cap() -> Result<usize> {
    match std::env::var(DENSE_CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            LabError::Config(format!(
                "{DENSE_CAP_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_DENSE_CAP),
    }
}

struct Output {
    table: Table,
    streams: Vec<Vec<StreamSpan>>,
    notes: Vec<String>,
}

fn span(seed: Seed, lane: u64, first: u64, count: usize) -> StreamSpan {
    StreamSpan {
        seed: [seed.hi, seed.lo],
        lane,
        first,
        count: count as u64,
    }
}

/// Runs the experiment and, when the config names an output path, writes
/// it there.
pub fn run_experiment<TR: TrialRunner>(
    config: &ExperimentConfig,
    runner: &TR,
) -> Result<ResultRecord> {
    config.validate()?;
    let start = Instant::now();
    let out = dispatch(config, runner)?;
    let record = ResultRecord {
        schema: schema_name(config.experiment.name()),
        config_hash: config.hash()?,
        config: config.clone(),
        table: out.table,
        streams: out.streams,
        notes: out.notes,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        threads: runner.threads(),
    };
    if let Some(path) = &config.output {
        record.write(path, config.format)?;
    }
    Ok(record)
}

fn dispatch<TR: TrialRunner>(config: &ExperimentConfig, runner: &TR) -> Result<Output> {
    let trials = config.trials;
    let seed = config.seed();
    match &config.experiment {
        Experiment::OverlapCurve {
            n,
            d,
            k,
            t_grid,
            t_plus,
            algorithm,
        } => {
            let spec = algorithm.spec(dense_cap()?)?;
            let points = overlap_curve(&spec, *n, *d, *k, t_grid, *t_plus, trials, seed, runner)?;
            let mut table = Table::new(&["t", "mean", "std", "ci_low", "ci_high", "trials"]);
            let mut streams = Vec::new();
            for (i, p) in points.iter().enumerate() {
                table.push(vec![
                    p.t.into(),
                    p.mean.into(),
                    p.std.into(),
                    p.ci_low.into(),
                    p.ci_high.into(),
                    p.trials.into(),
                ]);
                streams.push(vec![span(seed, i as u64, 0, trials)]);
            }
            let mut notes = algorithm_notes(algorithm);
            let rough = smoothness_screen(&points);
            if !rough.is_empty() {
                notes.push(format!(
                    "smoothness screen flags intervals starting at rows {rough:?}"
                ));
            }
            Ok(Output {
                table,
                streams,
                notes,
            })
        }
        Experiment::Mcdiarmid {
            n,
            p,
            c,
            eps,
            empirical,
        } => mcdiarmid(n, p, c, eps, *empirical, trials, seed, runner),
        Experiment::Branching { d, k, x, u, mode } => {
            let mut table = Table::new(&[
                "d",
                "k",
                "x",
                "u",
                "threshold",
                "bound",
                "tail",
                "ci_radius",
                "truncated",
                "pass",
            ]);
            let mut streams = Vec::new();
            let mut combo = 0u64;
            for &dd in d {
                for &kk in k {
                    for &xx in x {
                        let child = seed.child(combo);
                        for &uu in u {
                            let r =
                                tail_check(dd, kk, xx, uu, trials, (*mode).into(), child, runner)?;
                            table.push(vec![
                                dd.into(),
                                kk.into(),
                                xx.into(),
                                uu.into(),
                                r.threshold.into(),
                                r.bound.into(),
                                r.tail.estimate.into(),
                                r.tail.ci_radius().into(),
                                r.truncated.into(),
                                r.pass.into(),
                            ]);
                            streams.push(vec![span(child, 0, 0, trials)]);
                        }
                        combo += 1;
                    }
                }
            }
            let notes = vec!["rows sharing (d, k, x) reuse the same simulated trials".to_string()];
            Ok(Output {
                table,
                streams,
                notes,
            })
        }
        Experiment::Concentration {
            n,
            d,
            k,
            algorithm,
            signed,
            t,
        } => {
            let spec = algorithm.spec(dense_cap()?)?;
            let params = SuiteParams {
                d: *d,
                k: *k,
                signed: *signed,
                t: *t,
            };
            let rows = concentration_suite(n, params, &spec, trials, seed, runner)?;
            let mut table = Table::new(&[
                "n",
                "metric",
                "mean",
                "std",
                "std_ci_low",
                "std_ci_high",
                "trials",
                "decays",
            ]);
            let mut streams = Vec::new();
            for r in &rows {
                let (lo, hi) = r.summary.std_ci();
                table.push(vec![
                    r.n.into(),
                    r.metric.name().into(),
                    r.summary.mean.into(),
                    r.summary.std.into(),
                    lo.into(),
                    hi.into(),
                    r.summary.count.into(),
                    r.decays.map_or(Cell::Empty, Cell::from),
                ]);
                streams.push(vec![span(seed, r.lane, 0, trials)]);
            }
            Ok(Output {
                table,
                streams,
                notes: algorithm_notes(algorithm),
            })
        }
        Experiment::OgpProbe {
            n,
            d,
            k,
            eta,
            t,
            signed,
        } => {
            let r = ogp_probe(*n, *d, *k, *eta, *t, *signed, trials, seed, runner)?;
            let counts = r.total_counts();
            let mass = r.mean_mass();
            let mut table = Table::new(&["hamming", "overlap", "abs_overlap", "count", "mass"]);
            let mut streams = Vec::new();
            for h in 0..=*n {
                let overlap = (*n as f64 - 2.0 * h as f64) / *n as f64;
                table.push(vec![
                    h.into(),
                    overlap.into(),
                    overlap.abs().into(),
                    counts[h].into(),
                    mass[h].into(),
                ]);
                streams.push(vec![span(seed, 0, 0, trials)]);
            }
            let notes = vec![
                "exploratory histogram over all near-optimal cross pairs; no threshold is asserted"
                    .to_string(),
            ];
            Ok(Output {
                table,
                streams,
                notes,
            })
        }
        Experiment::Bell { angles, baseline } => {
            let angles = bell_angles(*angles);
            let mut rng = seed.stream(0);
            let r = bell_experiment(&angles, trials as u64, (*baseline).into(), &mut rng)?;
            let mut table = Table::new(&["quantity", "value", "std_err"]);
            for (sa, row) in r.correlators.iter().enumerate() {
                for (sb, &e) in row.iter().enumerate() {
                    let c = r.counts[sa][sb].max(1) as f64;
                    let se = ((1.0 - e * e).max(0.0) / c).sqrt();
                    table.push(vec![format!("E{sa}{sb}").into(), e.into(), se.into()]);
                }
            }
            table.push(vec!["chsh".into(), r.chsh.into(), r.chsh_std_err.into()]);
            if let Some(exact) = r.exact_chsh {
                table.push(vec!["chsh_exact".into(), exact.into(), Cell::Empty]);
            }
            let streams = vec![vec![span(seed, 0, 0, 1)]; table.rows.len()];
            let notes = vec![format!(
                "angles: alice={}, bob={}, bob_offset={}",
                angles.alice, angles.bob, angles.bob_offset
            )];
            Ok(Output {
                table,
                streams,
                notes,
            })
        }
        Experiment::LightconeCheck {
            n,
            d,
            k,
            beta,
            gamma,
            signed,
        } => lightcone_check(*n, *d, *k, beta, gamma, *signed, trials, seed, runner),
        Experiment::NbhdStats {
            n,
            d,
            k,
            p,
            tau,
            exponent,
        } => {
            let radius = match p {
                Some(p) => *p,
                None => depth_budget(*n, *d, *k, *tau)?,
            };
            let stats = runner
                .map_trials(trials, |j| {
                    let mut rng = seed.stream(j as u64);
                    let g = sample_hypergraph(*n, *d, *k, &mut rng)?;
                    neighborhood_stats(&g, radius, *exponent)
                })
                .into_iter()
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let mut table = Table::new(&[
                "instance",
                "n",
                "p",
                "max",
                "mean",
                "median",
                "q90",
                "q99",
                "threshold",
                "exceed_fraction",
            ]);
            let mut streams = Vec::new();
            for (j, s) in stats.iter().enumerate() {
                table.push(vec![
                    j.into(),
                    (*n).into(),
                    radius.into(),
                    s.max.into(),
                    s.mean.into(),
                    s.median.into(),
                    s.q90.into(),
                    s.q99.into(),
                    s.threshold.into(),
                    s.exceed_fraction.into(),
                ]);
                streams.push(vec![span(seed, 0, j as u64, 1)]);
            }
            Ok(Output {
                table,
                streams,
                notes: Vec::new(),
            })
        }
    }
}

fn algorithm_notes(algorithm: &AlgorithmConfig) -> Vec<String> {
    match algorithm {
        AlgorithmConfig::Qaoa { .. } => vec![GATE_CONVENTION.to_string()],
        _ => Vec::new(),
    }
}

#[allow(clippy::too_many_arguments)]
fn mcdiarmid<TR: TrialRunner>(
    ns: &[usize],
    ps: &[f64],
    cs: &[f64],
    epss: &[f64],
    empirical: bool,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<Output> {
    let mut columns = vec!["n", "p", "c", "eps", "biased", "standard", "fan"];
    if empirical {
        columns.extend(["empirical", "ci_radius", "within_bound"]);
    }
    let mut table = Table::new(&columns);
    let mut streams = Vec::new();
    let mut row = 0u64;
    for &n in ns {
        for &p in ps {
            for &c in cs {
                for &eps in epss {
                    let params = BiasedBoundParams::new(n, p, c, eps)?;
                    let biased = biased_mcdiarmid_bound(&params);
                    let mut cells: Vec<Cell> = vec![
                        n.into(),
                        p.into(),
                        c.into(),
                        eps.into(),
                        biased.into(),
                        standard_mcdiarmid_bound(n, c, eps)?.into(),
                        fan_bound(eps / c, n as f64 * p * (2.0 - p))?.into(),
                    ];
                    let mut spans = Vec::new();
                    if empirical {
                        // Test function: c times the number of coordinates
                        // off the dominant outcome.
                        let child = seed.child(row);
                        let dist = FiniteDist::biased(2, p, 0)?;
                        let f = move |x: &[usize]| c * x.iter().filter(|&&v| v != 0).count() as f64;
                        let est = empirical_tail(f, &dist, n, eps, trials, child, runner)?;
                        cells.push(est.probability().into());
                        cells.push(est.ci_radius().into());
                        cells.push((est.probability() <= biased + 5.0 * est.ci_radius()).into());
                        spans.push(span(child, PILOT_LANE, 0, 10 * trials));
                        spans.push(span(child, MAIN_LANE, 0, trials));
                    }
                    table.push(cells);
                    streams.push(spans);
                    row += 1;
                }
            }
        }
    }
    Ok(Output {
        table,
        streams,
        notes: Vec::new(),
    })
}

#[allow(clippy::too_many_arguments)]
fn lightcone_check<TR: TrialRunner>(
    n: usize,
    d: f64,
    k: usize,
    beta: &[f64],
    gamma: &[f64],
    signed: bool,
    trials: usize,
    seed: Seed,
    runner: &TR,
) -> Result<Output> {
    let params = QaoaParams::new(beta.to_vec(), gamma.to_vec())?;
    let cap = dense_cap()?;
    let per_instance = runner
        .map_trials(trials, |j| -> Result<Vec<Vec<Cell>>> {
            let mut rng = seed.stream(j as u64);
            let g = sample_hypergraph(n, d, k, &mut rng)?;
            let inst = if signed {
                sample_signs(&g, &mut rng)
            } else {
                SignedInstance::unsigned(g)
            };
            let diag = build_cost_diagonal_with_cap(&inst, cap)?;
            let state = evolve(&params, InitialState::Plus, &diag)?;
            let mut rows = Vec::new();
            for e in 0..inst.graph().edge_count() {
                let mask = inst
                    .graph()
                    .edge(e)
                    .iter()
                    .fold(0u64, |m, &v| m ^ (1u64 << v));
                let dense = f64::from(inst.edge_sign(e)) * z_product_expectation(&state, mask);
                let cone = edge_lightcone(&inst, e, params.depth())?;
                let local = f64::from(inst.edge_sign(e))
                    * lightcone_edge_expectation(&inst, &params, InitialState::Plus, e, cap)?;
                rows.push(vec![
                    j.into(),
                    e.into(),
                    cone.vertices.len().into(),
                    local.into(),
                    dense.into(),
                    (local - dense).abs().into(),
                ]);
            }
            Ok(rows)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&[
        "instance",
        "edge_id",
        "ball_size",
        "lightcone",
        "dense",
        "abs_diff",
    ]);
    let mut streams = Vec::new();
    for (j, rows) in per_instance.into_iter().enumerate() {
        for r in rows {
            table.push(r);
            streams.push(vec![span(seed, 0, j as u64, 1)]);
        }
    }
    Ok(Output {
        table,
        streams,
        notes: vec![GATE_CONVENTION.to_string()],
    })
}
