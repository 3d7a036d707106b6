mod commands;
mod config;
mod error;

use clap::{Arg, ArgAction, ArgMatches, Command};
use commands::{Table, COMMANDS};
use config::RunConfig;
use error::CliError;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

fn cli() -> Command {
    let mut cmd = Command::new("lowlying")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Prime-side statistics for low-lying zeros, written as CSV")
        .after_help(
            "Parameters are given as key=value after the subcommand and override values from \
             --config. Output goes to --out, else $LOWLYING_OUT_DIR/<command>.csv, else stdout. \
             Errors print one `error kind=... message=\"...\"` line on stderr and exit with 2.",
        )
        .arg(
            Arg::new("config")
                .long("config")
                .value_name("PATH")
                .global(true)
                .help("Read key=value parameters (and optionally command=...) from a file"),
        )
        .arg(
            Arg::new("out")
                .long("out")
                .value_name("PATH")
                .global(true)
                .help("Write CSV here instead of the default destination"),
        )
        .arg(
            Arg::new("save-config")
                .long("save-config")
                .value_name("PATH")
                .global(true)
                .help("Write the effective parameters, defaults included, as a config file"),
        )
        .arg(
            Arg::new("threads")
                .long("threads")
                .value_name("N")
                .value_parser(clap::value_parser!(usize))
                .global(true)
                .help("Worker threads (default: all cores); output does not depend on it"),
        )
        .arg(
            Arg::new("override-resource-guard")
                .long("override-resource-guard")
                .action(ArgAction::SetTrue)
                .global(true)
                .help("Allow runs above the built-in size limits"),
        );
    for def in COMMANDS {
        cmd = cmd.subcommand(
            Command::new(def.name)
                .about(def.about)
                .after_help(def.help_text())
                .arg(
                    Arg::new("params")
                        .value_name("KEY=VALUE")
                        .num_args(0..)
                        .trailing_var_arg(true)
                        .allow_hyphen_values(true),
                ),
        );
    }
    cmd
}

fn effective_config(m: &ArgMatches) -> Result<RunConfig, CliError> {
    let mut cfg = match m.get_one::<String>("config") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    match m.subcommand() {
        Some((name, sub)) => {
            if let Some(c) = &cfg.command {
                if c != name {
                    return Err(CliError::Config(format!(
                        "config file is for '{c}' but '{name}' was requested"
                    )));
                }
            }
            cfg.command = Some(name.to_string());
            let args: Vec<String> = sub
                .get_many::<String>("params")
                .map(|v| v.cloned().collect())
                .unwrap_or_default();
            cfg.apply_args(&args)?;
        }
        None if cfg.command.is_none() => {
            return Err(CliError::Config("no command given (subcommand or command= in --config)".into()))
        }
        None => {}
    }
    let name = cfg.command.clone().expect("set above");
    let def = commands::def(&name).ok_or_else(|| CliError::Config(format!("unknown command '{name}'")))?;
    cfg.params = commands::resolve(def, &cfg.params)?;
    Ok(cfg)
}

fn write_table(out: Box<dyn Write>, cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let mut out = out;
    writeln!(out, "# lowlying {} {}", env!("CARGO_PKG_VERSION"), cfg.echo())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    let mut out = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    for note in &table.notes {
        writeln!(out, "# {note}")?;
    }
    out.flush()?;
    Ok(())
}

fn destination(m: &ArgMatches, command: &str) -> Result<Box<dyn Write>, CliError> {
    let path = match m.get_one::<String>("out") {
        Some(p) => Some(PathBuf::from(p)),
        None => std::env::var_os("LOWLYING_OUT_DIR").map(|d| PathBuf::from(d).join(format!("{command}.csv"))),
    };
    Ok(match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            Box::new(std::io::BufWriter::new(std::fs::File::create(p)?))
        }
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(m: &ArgMatches) -> Result<(), CliError> {
    if let Some(&n) = m.get_one::<usize>("threads") {
        if n == 0 {
            return Err(CliError::BadValue { key: "threads".into(), reason: "must be at least 1".into() });
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let cfg = effective_config(m)?;
    if let Some(path) = m.get_one::<String>("save-config") {
        std::fs::write(path, cfg.to_string())?;
    }
    let name = cfg.command.as_deref().expect("resolved");
    let table = commands::run(name, &cfg.params, m.get_flag("override-resource-guard"))?;
    write_table(destination(m, name)?, &cfg, &table)
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    match run(&matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.machine_line());
            ExitCode::from(2)
        }
    }
}
