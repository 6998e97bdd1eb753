use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use djpuzzle_cli::{
    cmd_bench, cmd_check, cmd_dual, cmd_enumerate, cmd_project, cmd_wedge, render_reports, CliError, EnumMethod,
    Format, InputFile, RunOptions, RunReport,
};

/// Enumerate mod-2 characteristic maps over simplicial spheres and their wedges.
#[derive(Parser)]
#[command(name = "djpuzzle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Largest board (number of nodes) the puzzle methods accept.
    #[arg(long, default_value_t = 1 << 20)]
    cap_nodes: u128,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            workers: self.workers.max(1),
            cap_nodes: self.cap_nodes,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print every DJ class over a complex, or over its wedge by J.
    Enumerate {
        complex: String,
        #[arg(long, value_enum, default_value_t = EnumMethod::Gs)]
        method: EnumMethod,
        /// J as comma-separated positive integers, one per vertex.
        #[arg(long)]
        wedge_list: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        /// Write the run report as JSON here instead of to standard error.
        #[arg(long)]
        report: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the wedged complex K(J).
    Wedge {
        complex: String,
        #[arg(long)]
        wedge_list: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dualize primal maps; turn dual maps back into primal ones.
    Dual {
        maps: String,
        #[arg(long)]
        complex: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Project maps onto the link of a face.
    Project {
        maps: String,
        #[arg(long)]
        complex: String,
        /// Comma-separated vertices of the face.
        #[arg(long)]
        face: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Time several methods on a seed for each J, after checking they agree.
    Bench {
        seed: String,
        /// Repeat for several tuples.
        #[arg(long, required = true)]
        wedge_list: Vec<String>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "puzzle,gs")]
        method: Vec<EnumMethod>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        report: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Validate a complex and optionally a map file over it.
    Check {
        complex: String,
        #[arg(long)]
        map: Option<String>,
    },
}

fn write_reports(path: Option<&str>, reports: &[RunReport]) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, render_reports(reports)).map_err(|e| CliError::Io {
            path: path.to_string(),
            msg: e.to_string(),
        }),
        None => {
            for r in reports {
                eprintln!("{}", r.render_line());
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Enumerate {
            complex,
            method,
            wedge_list,
            run,
            report,
            format,
        } => {
            let input = InputFile::read(&complex)?;
            let (out, rep) = cmd_enumerate(&input, method, wedge_list.as_deref(), &run.options(), format)?;
            write_reports(report.as_deref(), &[rep])?;
            Ok(out)
        }
        Command::Wedge {
            complex,
            wedge_list,
            format,
        } => cmd_wedge(&InputFile::read(&complex)?, &wedge_list, format),
        Command::Dual { maps, complex, format } => {
            cmd_dual(&InputFile::read(&maps)?, &InputFile::read(&complex)?, format)
        }
        Command::Project {
            maps,
            complex,
            face,
            format,
        } => cmd_project(&InputFile::read(&maps)?, &InputFile::read(&complex)?, &face, format),
        Command::Bench {
            seed,
            wedge_list,
            method,
            run,
            report,
            format,
        } => {
            let (out, reports) = cmd_bench(&InputFile::read(&seed)?, &wedge_list, &method, &run.options(), format)?;
            if let Some(path) = report.as_deref() {
                write_reports(Some(path), &reports)?;
            }
            Ok(out)
        }
        Command::Check { complex, map } => {
            let maps = map.as_deref().map(InputFile::read).transpose()?;
            cmd_check(&InputFile::read(&complex)?, maps.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
