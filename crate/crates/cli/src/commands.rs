use std::fmt;
use std::io;

use serde_json::{json, Value};
use treecut::exact_engine::{exact_moments, float_moments, MomentTable};
use treecut::limit_law::{limit_table, LimitMoment};
use treecut::simulator::{monte_carlo, Method, SimConfig};
use treecut::verify::{run_verification, VerifyOptions};
use treecut::{Root2Scalar, Scalar};

use crate::output::{emit, Sink, Table};
use crate::{exit, Cli, Command, LimitArgs, MethodArg, MomentsArgs, Precision, SimulateArgs, VerifyArgs};

pub enum Status {
    Ok,
    VerificationFailed,
}

#[derive(Debug)]
pub enum CliError {
    Core(treecut::Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(treecut::Error::Budget(_) | treecut::Error::Precision { .. }) => exit::BUDGET,
            CliError::Core(_) | CliError::Io(_) => exit::USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "cannot write output: {e}"),
        }
    }
}

impl From<treecut::Error> for CliError {
    fn from(e: treecut::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Status> {
    let name = match cli.command {
        Command::Moments(_) => "moments",
        Command::Limit(_) => "limit",
        Command::Simulate(_) => "simulate",
        Command::Verify(_) => "verify",
    };
    let sink = Sink::resolve(cli.output.as_deref(), cli.output_dir.as_deref(), name, cli.format);
    match &cli.command {
        Command::Moments(args) => moments(args, &sink, cli).map(|_| Status::Ok),
        Command::Limit(args) => limit(args, &sink, cli).map(|_| Status::Ok),
        Command::Simulate(args) => simulate(args, &sink, cli).map(|_| Status::Ok),
        Command::Verify(args) => verify(args, &sink, cli),
    }
}

fn moment_table<T: Scalar>(table: &MomentTable<T>, render: impl Fn(&T) -> Value) -> Table {
    let kmax = table.kmax;
    let mut columns = vec!["n".to_string()];
    columns.extend((1..=kmax).map(|k| format!("mu_{k}")));
    columns.extend((1..=kmax).map(|k| format!("scaled_{k}")));
    let mut out = Table::new(columns);
    for n in 1..=table.nmax {
        let mut row = vec![json!(n)];
        row.extend((1..=kmax).map(|k| render(&table.moment(n, k))));
        row.extend((1..=kmax).map(|k| json!(table.scaled_moment(n, k))));
        out.push(row);
    }
    out
}

fn moments(args: &MomentsArgs, sink: &Sink, cli: &Cli) -> Result<()> {
    let (nmax, kmax) = (args.nmax as usize, args.kmax as usize);
    let (table, mode, precision) = if args.exact {
        let t = exact_moments(nmax, kmax)?;
        (moment_table(&t, |x| json!(x.to_string())), "exact", None)
    } else {
        match args.precision {
            Precision::F64 => {
                let t = float_moments::<f64>(nmax, kmax)?;
                (moment_table(&t, |x| json!(x)), "floating", Some("f64"))
            }
            Precision::F32 => {
                let t = float_moments::<f32>(nmax, kmax)?;
                (moment_table(&t, |x| json!(f64::from(*x))), "floating", Some("f32"))
            }
        }
    };
    let doc = json!({
        "mode": mode,
        "precision": precision,
        "nmax": nmax,
        "kmax": kmax,
        "rows": table.records(),
    });
    emit(sink, cli.format, &table, Some(&doc))?;
    Ok(())
}

fn root2_cells(x: &Root2Scalar) -> [Value; 3] {
    [json!(x.p.to_string()), json!(x.q.to_string()), json!(x.to_f64())]
}

fn moment_cells(m: &LimitMoment) -> [Value; 4] {
    [
        json!(m.rational_part.p.to_string()),
        json!(m.rational_part.q.to_string()),
        json!(m.times_sqrt_pi()),
        json!(m.float_value),
    ]
}

fn limit(args: &LimitArgs, sink: &Sink, cli: &Cli) -> Result<()> {
    let rows = limit_table(args.kmax as usize)?;
    let mut columns = vec!["k".to_string()];
    for name in ["a", "abar"] {
        columns.extend(["p", "q", "float"].map(|s| format!("{name}_{s}")));
    }
    columns.push("omega".into());
    for name in ["m", "xi", "eta"] {
        columns.extend(["p", "q", "times_sqrt_pi", "float"].map(|s| format!("{name}_{s}")));
    }
    columns.extend(["xi_over_eta", "identity_residual_p", "identity_residual_q"].map(String::from));
    let mut table = Table::new(columns);
    for r in &rows {
        let mut row = vec![json!(r.k)];
        row.extend(root2_cells(&r.a));
        row.extend(root2_cells(&r.abar));
        row.push(json!(r.omega.to_string()));
        row.extend(moment_cells(&r.m));
        row.extend(moment_cells(&r.xi));
        row.extend(moment_cells(&r.eta));
        row.push(json!(r.xi_over_eta));
        row.push(json!(r.identity_residual.p.to_string()));
        row.push(json!(r.identity_residual.q.to_string()));
        table.push(row);
    }
    emit(sink, cli.format, &table, Some(&rows))?;
    Ok(())
}

fn simulate(args: &SimulateArgs, sink: &Sink, cli: &Cli) -> Result<()> {
    let method = match args.method {
        MethodArg::Tree => Method::Tree,
        MethodArg::Chain => Method::Chain,
    };
    let config = SimConfig {
        workers: args.threads.map(|t| t as usize),
        ..SimConfig::new(args.n as usize, args.reps as usize, args.kmax as usize, args.seed, method)
    };
    let report = monte_carlo(&config)?;
    let columns = ["n", "replications", "seed", "method", "mean_cost", "k", "mean", "stderr"];
    let mut table = Table::new(columns.map(String::from).to_vec());
    for m in &report.moments {
        table.push(vec![
            json!(report.n),
            json!(report.replications),
            json!(report.seed),
            json!(report.method.to_string()),
            json!(report.mean_cost),
            json!(m.k),
            json!(m.mean),
            json!(m.stderr),
        ]);
    }
    emit(sink, cli.format, &table, Some(&report))?;
    Ok(())
}

fn verify(args: &VerifyArgs, sink: &Sink, cli: &Cli) -> Result<Status> {
    let defaults = VerifyOptions::default();
    let opts = VerifyOptions {
        criteria: args.criteria.clone(),
        seed: args.seed.unwrap_or(defaults.seed),
        workers: args.threads.map(|t| t as usize),
        weight_fault: args.inject_fault.map(|n| n as usize),
    };
    let report = run_verification(&opts)?;
    for r in &report.results {
        eprintln!("{r}");
    }
    let columns = [
        "id", "name", "metric", "measured", "rule", "tolerance", "value_ok", "elapsed_secs",
        "runtime_limit_secs", "passed", "detail",
    ];
    let mut table = Table::new(columns.map(String::from).to_vec());
    for r in &report.results {
        table.push(vec![
            json!(r.id),
            json!(r.name),
            json!(r.metric),
            json!(r.measured),
            serde_json::to_value(r.rule).expect("plain enum"),
            json!(r.tolerance),
            json!(r.value_ok),
            json!(r.elapsed_secs),
            json!(r.runtime_limit_secs),
            json!(r.passed),
            json!(r.detail),
        ]);
    }
    emit(sink, cli.format, &table, Some(&report))?;
    Ok(if report.all_passed() {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}
