use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use superquiver::cli::{parse_job, run, RunOptions};
use superquiver::oracle::DEFAULT_CAP;

/// Run a quiver job file.
#[derive(Parser, Debug)]
#[command(name = "superquiver", version)]
struct Args {
    /// Job file
    job: PathBuf,

    /// Exit with status 3 when a component exceeds the cap
    #[arg(long)]
    strict: bool,

    /// Largest component the oracle will build
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Write oracle reports as CSV
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Print the canonical form of the job and exit
    #[arg(long)]
    canonical: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.job) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", args.job.display());
            return ExitCode::from(2);
        }
    };
    let job = match parse_job(&text) {
        Ok(j) => j,
        Err(d) => {
            eprintln!("{}:{d}", args.job.display());
            return ExitCode::from(2);
        }
    };
    if args.canonical {
        print!("{job}");
        return ExitCode::SUCCESS;
    }
    let opts = RunOptions {
        strict: args.strict,
        cap: args.cap,
        base_dir: args.job.parent().map(PathBuf::from).unwrap_or_default(),
    };
    let out = run(&job, &opts);
    for line in &out.lines {
        println!("{line}");
    }
    if let Some(path) = &args.csv {
        if let Err(e) = std::fs::write(path, out.csv()) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(out.exit_code(args.strict) as u8)
}
