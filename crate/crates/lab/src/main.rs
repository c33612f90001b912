use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ogp_core::instances::{
    brute_force_max_with_cap, sample_coupled, sample_hypergraph, sample_signs, signed_energy,
    xor_value, SignedInstance, SpinConfig,
};
use ogp_core::qaoa::{
    build_cost_diagonal_with_cap, energy_expectation, evolve, sample_output, InitialState,
    QaoaParams,
};
use ogp_core::rng::Seed;
use ogp_core::stats::summarize;
use ogp_lab::config::{AlgorithmConfig, BaselineConfig, InitialConfig, ModeConfig};
use ogp_lab::experiments::dense_cap;
use ogp_lab::instance_io::InstanceFile;
use ogp_lab::plot::emit_plotdata;
use ogp_lab::{
    run_experiment, Experiment, ExperimentConfig, LabError, OutputFormat, RayonRunner, Result,
};

#[derive(Debug, Parser)]
#[command(
    name = "ogp-lab",
    version,
    about = "Local algorithms on sparse random spin glasses"
)]
struct Cli {
    /// 128-bit seed as `hi,lo`, or a single integer for `0,lo`.
    #[arg(long, global = true, default_value = "0,0", value_parser = parse_seed)]
    seed: Seed,
    /// Output file; results go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Also write plot data files and an SVG chart into this directory.
    #[arg(long, global = true)]
    plot_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn parse_seed(s: &str) -> std::result::Result<Seed, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<u64>()
            .map_err(|e| format!("bad seed part {p:?}: {e}"))
    };
    match parts.as_slice() {
        [lo] => Ok(Seed::new(0, num(lo)?)),
        [hi, lo] => Ok(Seed::new(num(hi)?, num(lo)?)),
        _ => Err("seed must be `hi,lo` or a single integer".into()),
    }
}

#[derive(Debug, Args)]
struct Shape {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    k: usize,
}

#[derive(Debug, Args)]
struct Algorithm {
    /// threshold, parity or qaoa.
    #[arg(long, default_value = "threshold")]
    rule: String,
    #[arg(long, default_value_t = 1)]
    radius: usize,
    /// Threshold or parity cut in [0, 1].
    #[arg(long, default_value_t = 0.5)]
    level: f64,
    #[arg(long, value_delimiter = ',')]
    beta: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    gamma: Vec<f64>,
}

impl Algorithm {
    fn config(&self) -> Result<AlgorithmConfig> {
        match self.rule.as_str() {
            "threshold" => Ok(AlgorithmConfig::Threshold {
                radius: self.radius,
                threshold: self.level,
            }),
            "parity" => Ok(AlgorithmConfig::Parity {
                radius: self.radius,
                cut: self.level,
            }),
            "qaoa" => Ok(AlgorithmConfig::Qaoa {
                beta: self.beta.clone(),
                gamma: self.gamma.clone(),
                initial: InitialConfig::Plus,
            }),
            other => Err(LabError::Config(format!("unknown rule {other:?}"))),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample an instance, or a coupled pair with --t.
    Sample {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        signed: bool,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Energy and XOR value of one assignment.
    Energy {
        #[arg(long)]
        instance: PathBuf,
        /// Spins as a string over `+`/`-`, or bits over `0`/`1`.
        #[arg(long)]
        spins: String,
    },
    /// Exhaustive maximum of H.
    BruteForce {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Dense QAOA on one instance: expected energy and sampled energies.
    QaoaRun {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        shots: u64,
    },
    /// Per-edge expectations: lightcone against dense simulation.
    LightconeCheck {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        #[arg(long)]
        signed: bool,
        #[arg(long, default_value_t = 10)]
        instances: usize,
    },
    /// CHSH statistic of the embedded Bell circuit or the hidden-variable baseline.
    Bell {
        /// `alice,bob,bob_offset`; the optimum from a grid search by default.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        angles: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value_t = BaselineConfig::Quantum)]
        baseline: BaselineConfig,
        #[arg(long, default_value_t = 100_000)]
        shots: usize,
    },
    /// Mean overlap of coupled runs along a t grid.
    OverlapCurve {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        algorithm: Algorithm,
        #[arg(long, value_delimiter = ',', required = true)]
        t_grid: Vec<f64>,
        #[arg(long)]
        t_plus: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Biased, classical and martingale tail bounds over a parameter grid.
    Mcdiarmid {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        /// Add a Monte Carlo tail column with this many trials.
        #[arg(long)]
        empirical: Option<usize>,
    },
    /// Branching-process tail estimates against e^(1-u).
    Branching {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ModeConfig::Dominating)]
        mode: ModeConfig,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },
    /// Ball-size statistics of sampled instances.
    NbhdStats {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        tau: f64,
        #[arg(long, default_value_t = 0.5)]
        exponent: f64,
        #[arg(long, default_value_t = 10)]
        instances: usize,
    },
    /// Spread of output statistics across instance sizes.
    Concentration {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        algorithm: Algorithm,
        #[arg(long)]
        signed: bool,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Exhaustive overlap histogram of near-optimal cross pairs (n <= 20).
    OgpProbe {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        signed: bool,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Run an experiment from a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| LabError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_spins(s: &str) -> Result<SpinConfig> {
    let values: Vec<i8> = s
        .chars()
        .map(|c| match c {
            '+' | '0' => Ok(1),
            '-' | '1' => Ok(-1),
            other => Err(LabError::Config(format!("bad spin character {other:?}"))),
        })
        .collect::<Result<_>>()?;
    Ok(SpinConfig::new(values)?)
}

fn experiment(cli: &Cli, experiment: Experiment, trials: usize) -> Result<()> {
    let mut config = ExperimentConfig::new(experiment, trials, cli.seed);
    config.output = cli.out.clone();
    config.format = cli.format;
    run_config(cli, config)
}

fn run_config(cli: &Cli, config: ExperimentConfig) -> Result<()> {
    let runner = RayonRunner::new(cli.threads).map_err(|e| LabError::Config(e.to_string()))?;
    let record = run_experiment(&config, &runner)?;
    if let Some(dir) = &cli.plot_dir {
        emit_plotdata(&record, dir, config.experiment.name())?;
    }
    if config.output.is_none() {
        match config.format {
            OutputFormat::Csv => {
                std::io::stdout()
                    .write_all(&record.csv_bytes()?)
                    .map_err(|source| LabError::Io {
                        path: "<stdout>".into(),
                        source,
                    })?;
            }
            OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<()> {
    let seed = cli.seed;
    match &cli.command {
        Command::Sample { shape, signed, t } => {
            let mut rng = seed.stream(0);
            let wrap = |g: &ogp_core::instances::Hypergraph, rng: &mut _| {
                if *signed {
                    InstanceFile::from_signed(&sample_signs(g, rng), Some(seed))
                } else {
                    InstanceFile::from_graph(g, Some(seed))
                }
            };
            let text = match t {
                None => {
                    let g = sample_hypergraph(shape.n, shape.d, shape.k, &mut rng)?;
                    wrap(&g, &mut rng).to_json()?
                }
                Some(t) => {
                    let pair = sample_coupled(shape.n, shape.d, shape.k, *t, &mut rng)?;
                    let a = wrap(pair.graph1(), &mut rng);
                    let b = wrap(pair.graph2(), &mut rng);
                    serde_json::to_string(&serde_json::json!({
                        "t": t,
                        "shared": pair.shared_count(),
                        "graph1": a,
                        "graph2": b,
                    }))?
                }
            };
            emit(cli.out.as_deref(), &(text + "\n"))
        }
        Command::Energy { instance, spins } => {
            let inst = InstanceFile::read(instance)?.instance()?;
            let sigma = parse_spins(spins)?;
            let h = signed_energy(&inst, &sigma)?;
            let val = xor_value(&inst, &sigma.to_bits())?;
            emit(
                cli.out.as_deref(),
                &format!(
                    "energy {h}\nxor_value {val}\nclauses {}\n",
                    inst.graph().edge_count()
                ),
            )
        }
        Command::BruteForce { instance } => {
            let inst = InstanceFile::read(instance)?.instance()?;
            let best = brute_force_max_with_cap(&inst, dense_cap()?)?;
            let argmax: String = best
                .argmax
                .values()
                .iter()
                .map(|&s| if s > 0 { '+' } else { '-' })
                .collect();
            emit(
                cli.out.as_deref(),
                &format!(
                    "optimum {}\nmaximizers {}\nargmax {argmax}\n",
                    best.optimum, best.count
                ),
            )
        }
        Command::QaoaRun {
            instance,
            beta,
            gamma,
            shots,
        } => {
            let inst: SignedInstance = InstanceFile::read(instance)?.instance()?;
            let params = QaoaParams::new(beta.clone(), gamma.clone())?;
            let diag = build_cost_diagonal_with_cap(&inst, dense_cap()?)?;
            let state = evolve(&params, InitialState::Plus, &diag)?;
            let mut text = format!(
                "expected_energy {}\noptimum {}\n",
                energy_expectation(&state, &diag)?,
                diag.max()
            );
            if *shots > 0 {
                let mut rng = seed.stream(0);
                let mut energies = Vec::with_capacity(*shots as usize);
                for _ in 0..*shots {
                    let sigma = sample_output(&state, &mut rng)?;
                    energies.push(signed_energy(&inst, &sigma)? as f64);
                }
                let s = summarize(&energies);
                text += &format!("sampled_mean {}\nsampled_std_err {}\n", s.mean, s.std_err);
            }
            emit(cli.out.as_deref(), &text)
        }
        Command::LightconeCheck {
            shape,
            beta,
            gamma,
            signed,
            instances,
        } => experiment(
            cli,
            Experiment::LightconeCheck {
                n: shape.n,
                d: shape.d,
                k: shape.k,
                beta: beta.clone(),
                gamma: gamma.clone(),
                signed: *signed,
            },
            *instances,
        ),
        Command::Bell {
            angles,
            baseline,
            shots,
        } => experiment(
            cli,
            Experiment::Bell {
                angles: angles.as_ref().map(|a| [a[0], a[1], a[2]]),
                baseline: *baseline,
            },
            *shots,
        ),
        Command::OverlapCurve {
            shape,
            algorithm,
            t_grid,
            t_plus,
            trials,
        } => experiment(
            cli,
            Experiment::OverlapCurve {
                n: shape.n,
                d: shape.d,
                k: shape.k,
                t_grid: t_grid.clone(),
                t_plus: *t_plus,
                algorithm: algorithm.config()?,
            },
            *trials,
        ),
        Command::Mcdiarmid {
            n,
            p,
            c,
            eps,
            empirical,
        } => experiment(
            cli,
            Experiment::Mcdiarmid {
                n: n.clone(),
                p: p.clone(),
                c: c.clone(),
                eps: eps.clone(),
                empirical: empirical.is_some(),
            },
            empirical.unwrap_or(1),
        ),
        Command::Branching {
            d,
            k,
            x,
            u,
            mode,
            trials,
        } => experiment(
            cli,
            Experiment::Branching {
                d: d.clone(),
                k: k.clone(),
                x: x.clone(),
                u: u.clone(),
                mode: *mode,
            },
            *trials,
        ),
        Command::NbhdStats {
            shape,
            p,
            tau,
            exponent,
            instances,
        } => experiment(
            cli,
            Experiment::NbhdStats {
                n: shape.n,
                d: shape.d,
                k: shape.k,
                p: *p,
                tau: *tau,
                exponent: *exponent,
            },
            *instances,
        ),
        Command::Concentration {
            n,
            d,
            k,
            algorithm,
            signed,
            t,
            trials,
        } => experiment(
            cli,
            Experiment::Concentration {
                n: n.clone(),
                d: *d,
                k: *k,
                algorithm: algorithm.config()?,
                signed: *signed,
                t: *t,
            },
            *trials,
        ),
        Command::OgpProbe {
            shape,
            eta,
            t,
            signed,
            trials,
        } => experiment(
            cli,
            Experiment::OgpProbe {
                n: shape.n,
                d: shape.d,
                k: shape.k,
                eta: *eta,
                t: *t,
                signed: *signed,
            },
            *trials,
        ),
        Command::Run { config } => {
            let text = std::fs::read_to_string(config).map_err(|source| LabError::Io {
                path: config.clone(),
                source,
            })?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if cli.out.is_some() {
                cfg.output = cli.out.clone();
                cfg.format = cli.format;
            }
            run_config(cli, cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ogp-lab: {e}");
            ExitCode::FAILURE
        }
    }
}
