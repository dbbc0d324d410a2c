//! Command-line front end of the `sgg` toolkit: argument definitions, the
//! table emitter and one function per subcommand.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod figures;
pub mod table;
pub mod table1;
pub mod validate;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn sink(cli: &Cli) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Executes a parsed command line, writing to stdout or `--out`.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let table = match &cli.command {
        Command::Ggd(a) => commands::cmd_ggd(a)?,
        Command::Sum(a) => commands::cmd_sum(a)?,
        Command::Approx(a) => commands::cmd_approx(a)?,
        Command::Table1(a) => table1::cmd_table1(a.curves)?,
        Command::Figure(a) => figures::cmd_figure(a.id, a.grid, a.mc_count, cli.seed)?,
        Command::Validate(a) => {
            let mut out = sink(cli)?;
            let result = validate::cmd_validate(a.suite, cli.tolerance, &mut out);
            out.flush()?;
            return result;
        }
    };
    let mut out = sink(cli)?;
    table.write(cli.format, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Full entry point: config merge, parsing, dispatch. Returns the exit status.
pub fn main_with_args(args: Vec<OsString>) -> u8 {
    let args = match config::merge_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("sgg: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("sgg: {e}");
            e.exit_code()
        }
    }
}
