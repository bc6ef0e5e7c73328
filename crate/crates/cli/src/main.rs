//! `gasnet`: contingency analysis for gas pipeline networks.
//!
//! Every command takes a network file or the name of a built-in network
//! (`example_original`, `example_extended`). Edge ids are the 1-based ids
//! written in the file.

mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gasnet::dom::compute_dom;
use gasnet::restoration::{compute_raom, compute_rrom, RestorationOptions};
use gasnet::significance::{
    compensation_ratio, scenario_sweep, significance_measure, SweepOptions, ZeroOutagePolicy,
};
use input::{edge_scenario, load, read_file, CliResult, Failure};
use report::Format;

#[derive(Debug, Parser)]
#[command(name = "gasnet", version, about = "Line-failure and reservoir significance analysis for gas networks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RestoreMode {
    Rrom,
    Raom,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ZeroOutage {
    Exclude,
    Zero,
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    /// Network file or built-in network name.
    network: String,
    /// Also report the failure-probability weighted mean.
    #[arg(long)]
    weighted: bool,
    /// How scenarios with no outage left after re-routing are averaged.
    #[arg(long, value_enum, default_value_t = ZeroOutage::Exclude)]
    zero_outage: ZeroOutage,
    /// Also evaluate all reservoirs active together.
    #[arg(long)]
    joint: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Weight re-routed flow by transfer cost.
    #[arg(long)]
    use_costs: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a network file and its baseline state.
    Validate { network: String },
    /// Cancel circulating baseline flow and write an acyclic network file.
    StripCycles {
        network: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Disrupted state after a line failure.
    Dom {
        network: String,
        #[arg(long)]
        fail_edge: usize,
        /// Fraction of capacity the failed edge keeps.
        #[arg(long, default_value_t = 0.0)]
        fraction: f64,
    },
    /// Re-routing (rrom) or reservoir activation (raom) after a line failure.
    Restore {
        network: String,
        #[arg(long)]
        fail_edge: usize,
        #[arg(long, default_value_t = 0.0)]
        fraction: f64,
        #[arg(long, value_enum, default_value_t = RestoreMode::Rrom)]
        mode: RestoreMode,
        /// Reservoir node name, or `all`.
        #[arg(long, default_value = "all")]
        reservoir: String,
        #[arg(long)]
        use_costs: bool,
    },
    /// Reservoir significance over every single-line failure.
    Significance(SweepArgs),
    /// Significance table followed by the full JSON document.
    Report {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Write the JSON document here instead of after the table.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn emit(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn validate(network: &str) -> CliResult<()> {
    let l = load(network)?;
    let reservoirs: Vec<String> = l
        .network
        .reservoir_nodes()
        .iter()
        .map(|r| l.network.nodes()[r.0].name.clone())
        .collect();
    eprintln!(
        "{}: ok, {} nodes, {} edges, nominal consumption {}, reservoirs: {}",
        l.name,
        l.network.node_count(),
        l.network.edge_count(),
        l.network.total_nominal_consumption(),
        if reservoirs.is_empty() { "none".to_string() } else { reservoirs.join(", ") }
    );
    Ok(())
}

fn strip_cycles(network: &str, output: &PathBuf) -> CliResult<()> {
    let (_, file) = read_file(network)?;
    let (stripped, summary) = file.strip_cycles::<gasnet::Rational>(gasnet::Rational::from_integer(0))?;
    std::fs::write(output, stripped.to_json())
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", output.display())))?;
    eprintln!(
        "reduced flow on edges {:?}, removed edges {:?}; wrote {}",
        summary.reduced_edges,
        summary.removed_edges,
        output.display()
    );
    Ok(())
}

fn render_transition(r: &report::TransitionReport, format: Format) -> String {
    match format {
        Format::Table => report::transition_table(r),
        Format::Json => report::json(r),
        Format::Csv => report::transition_csv(r),
    }
}

fn dom(network: &str, fail_edge: usize, fraction: f64, format: Format) -> CliResult<()> {
    let l = load(network)?;
    let scenario = edge_scenario(&l.network, fail_edge, fraction)?;
    let d = compute_dom(&l.network, &l.nom, &scenario)?;
    let r = report::transition(report::Transition {
        name: &l.name,
        net: &l.network,
        scenario: &scenario,
        nom: l.nom.state(),
        before: l.nom.state(),
        after: &d.state,
        overrides: &d.overrides,
    });
    emit(&render_transition(&r, format))
}

struct RestoreArgs<'a> {
    network: &'a str,
    fail_edge: usize,
    fraction: f64,
    mode: RestoreMode,
    reservoir: &'a str,
    use_costs: bool,
}

fn restore(a: RestoreArgs<'_>, format: Format) -> CliResult<()> {
    let l = load(a.network)?;
    let net = &l.network;
    let scenario = edge_scenario(net, a.fail_edge, a.fraction)?;
    let opts = RestorationOptions { use_costs: a.use_costs };
    let d = compute_dom(net, &l.nom, &scenario)?;
    let rrom = compute_rrom(net, &l.nom, &d, opts)?;
    let r = match a.mode {
        RestoreMode::Rrom => report::transition(report::Transition {
            name: &l.name,
            net,
            scenario: &scenario,
            nom: l.nom.state(),
            before: &d.state,
            after: &rrom,
            overrides: &d.overrides,
        }),
        RestoreMode::Raom => {
            let filter = if a.reservoir == "all" {
                net.reservoir_nodes()
            } else {
                let id = net
                    .node_by_name(a.reservoir)
                    .ok_or_else(|| Failure::Input(format!("no node named {:?}", a.reservoir)))?;
                if net.nodes()[id.0].reservoir_capacity <= 0.0 {
                    return Err(Failure::Input(format!("node {} has no reservoir", a.reservoir)));
                }
                vec![id]
            };
            let raom = compute_raom(net, &l.nom, &rrom, &d.overrides, Some(&filter), opts)?;
            let mut r = report::transition(report::Transition {
                name: &l.name,
                net,
                scenario: &scenario,
                nom: l.nom.state(),
                before: &rrom,
                after: &raom,
                overrides: &d.overrides,
            });
            r.active_reservoirs = Some(filter.iter().map(|j| net.nodes()[j.0].name.clone()).collect());
            let eps = 1e-9 * net.volume_scale();
            r.compensation_ratio = Some(compensation_ratio(l.nom.state(), &rrom, &raom, eps));
            r
        }
    };
    emit(&render_transition(&r, format))
}

fn sweep(a: &SweepArgs) -> CliResult<report::SignificanceDoc> {
    let l = load(&a.network)?;
    let opts = SweepOptions {
        restoration: RestorationOptions { use_costs: a.use_costs },
        joint: a.joint,
        jobs: a.jobs,
    };
    let outcomes = scenario_sweep(&l.network, &l.nom, None, &opts)?;
    let (policy, policy_name) = match a.zero_outage {
        ZeroOutage::Exclude => (ZeroOutagePolicy::Exclude, "exclude"),
        ZeroOutage::Zero => (ZeroOutagePolicy::Zero, "zero"),
    };
    if a.weighted {
        let missing: Vec<String> = l
            .network
            .edges()
            .iter()
            .filter(|e| e.failure_probability.is_none())
            .map(|e| (e.id.0 + 1).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Failure::Input(format!(
                "--weighted needs failure_probability on every edge; missing on edges {}",
                missing.join(", ")
            )));
        }
    }
    let report = significance_measure(&l.network, &outcomes, policy);
    for o in &outcomes {
        if let Err(e) = &o.result {
            eprintln!("scenario {} failed: {e}", o.scenario.label);
        }
    }
    Ok(report::significance_doc(
        &l.name,
        &l.network,
        l.nom.state(),
        &outcomes,
        &report,
        policy_name,
        a.weighted,
    ))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate { network } => validate(&network),
        Command::StripCycles { network, output } => strip_cycles(&network, &output),
        Command::Dom {
            network,
            fail_edge,
            fraction,
        } => dom(&network, fail_edge, fraction, cli.format),
        Command::Restore {
            network,
            fail_edge,
            fraction,
            mode,
            reservoir,
            use_costs,
        } => restore(
            RestoreArgs {
                network: &network,
                fail_edge,
                fraction,
                mode,
                reservoir: &reservoir,
                use_costs,
            },
            cli.format,
        ),
        Command::Significance(args) => {
            let doc = sweep(&args)?;
            emit(&match cli.format {
                Format::Table => report::significance_table(&doc),
                Format::Json => report::json(&doc),
                Format::Csv => report::significance_csv(&doc),
            })
        }
        Command::Report { sweep: args, output } => {
            let doc = sweep(&args)?;
            let table = report::significance_table(&doc);
            match output {
                Some(path) => {
                    std::fs::write(&path, report::json(&doc))
                        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
                    emit(&table)
                }
                None => emit(&format!("{table}\n{}", report::json(&doc))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
