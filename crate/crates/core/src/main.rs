use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use shagraph::cli::{fixtures::fixtures, run, Command, Job};

/// Obstruction groups of tori over arithmetic curves via decorated-graph cohomology.
///
/// Commands: snf, tate, flasque-check, resolve, graph-h, contract, six-term,
/// monotonic, psi, basechange, sha, shaP1-report. `fixtures` lists the bundled
/// examples, or writes their inputs into the directory given by --out.
#[derive(Parser, Debug)]
#[command(name = "shagraph", version)]
struct Args {
    command: String,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// Number of worker threads.
    #[arg(long)]
    parallel: Option<usize>,
    #[arg(long)]
    verbose: bool,
}

fn dump_fixtures(out: Option<PathBuf>) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            for f in fixtures() {
                let line = writeln!(stdout, "{}\t{}\t{}\t{}", f.name, f.command, f.digest(), f.description);
                match line {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => return Ok(()),
                    other => other?,
                }
            }
        }
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            for f in fixtures() {
                std::fs::write(dir.join(format!("{}.json", f.name)), f.input_bytes())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.command == "fixtures" {
        return match dump_fixtures(args.output) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("shagraph: {e}");
                ExitCode::from(1)
            }
        };
    }
    let command: Command = match args.command.parse() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("shagraph: {e}");
            return ExitCode::from(2);
        }
    };
    let (Some(input), Some(output)) = (args.input, args.output) else {
        eprintln!("shagraph: {command} needs --in <file> and --out <file>");
        return ExitCode::from(2);
    };
    let job = Job {
        command,
        input,
        output,
        parallel: args.parallel,
        verbose: args.verbose,
    };
    match run(&job) {
        Ok(report) => {
            if let Some(msg) = &report.failure {
                eprintln!("shagraph: {msg}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("shagraph: cannot write {}: {e}", job.output.display());
            ExitCode::from(1)
        }
    }
}
