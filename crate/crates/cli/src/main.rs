use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irs_noma_cli::commands;
use irs_noma_cli::config::{self, Overrides};
use irs_noma_cli::plot::Metric;
use irs_noma_cli::CliError;

/// Two-user IRS-assisted NOMA link-level simulator.
#[derive(Parser)]
#[command(name = "irsnoma", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (TOML). Defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override `master_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Override `trials`.
    #[arg(long)]
    trials: Option<usize>,
    /// Print the fully resolved scenario and exit.
    #[arg(long)]
    show_config: bool,
}

impl ScenarioArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            trials: self.trials,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Output CSV path.
    #[arg(long, required_unless_present = "show_config")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    #[value(name = "rx_power")]
    RxPower,
    Sinr,
}

#[derive(Clone, Copy, ValueEnum)]
enum UserArg {
    U1,
    U2,
}

#[derive(Subcommand)]
enum Command {
    /// Conventional vs IRS-specific path loss over the distance sweep.
    Sweep(RunArgs),
    /// Adds the conventional model with enhanced (horn) antenna gains.
    Compare(RunArgs),
    /// Render a results CSV as an SVG line chart plus `.dat` sidecar.
    Plot {
        /// Results CSV produced by `sweep` or `compare`.
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        metric: MetricArg,
        #[arg(long, value_enum)]
        user: UserArg,
    },
    /// Inspect every model at a single near-user distance.
    Point {
        /// Near-user distance from the IRS, m.
        #[arg(allow_negative_numbers = true)]
        d_near: f64,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

fn show_config(args: &ScenarioArgs) -> Result<(), CliError> {
    let scn = config::load(args.config.as_deref(), args.overrides())?;
    print!("{}", config::render(&scn));
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) | Command::Compare(args) if args.scenario.show_config => {
            show_config(&args.scenario)
        }
        Command::Sweep(args) => commands::cmd_sweep(
            args.scenario.config.as_deref(),
            args.out.as_deref().expect("required by clap"),
            args.scenario.overrides(),
        ),
        Command::Compare(args) => commands::cmd_compare(
            args.scenario.config.as_deref(),
            args.out.as_deref().expect("required by clap"),
            args.scenario.overrides(),
        ),
        Command::Plot {
            input,
            out,
            metric,
            user,
        } => {
            let metric = match metric {
                MetricArg::RxPower => Metric::RxPower,
                MetricArg::Sinr => Metric::Sinr,
            };
            let user = match user {
                UserArg::U1 => "u1",
                UserArg::U2 => "u2",
            };
            commands::cmd_plot(&input, &out, metric, user)
        }
        Command::Point { scenario, .. } if scenario.show_config => show_config(&scenario),
        Command::Point { d_near, scenario } => {
            let text =
                commands::cmd_point(scenario.config.as_deref(), d_near, scenario.overrides())?;
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
