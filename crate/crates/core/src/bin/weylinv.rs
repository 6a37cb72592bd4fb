use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use weylinv::bgmodel::{case, case_table_json, series_m, MPart};
use weylinv::config::RunConfig;
use weylinv::mui::GroupFamily;
use weylinv::report::Format;
use weylinv::suites::{error_exit_code, execute, exit_code, Suite};
use weylinv::Error;

#[derive(Parser)]
#[command(
    name = "weylinv",
    version,
    about = "Brute-force checks of mod-p invariant theory and Weyl-invariant bookkeeping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one verification suite and emit its report.
    Verify {
        /// steenrod, division, lemma31, prop33, prop34, thm41, prop43, thm42-closure, serre or weyl
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print a truncated Poincaré series of M_0, M_1 or their even parts modulo e_k.
    Series {
        #[arg(long)]
        case: String,
        /// m0, m1, m0even or m1even
        #[arg(long)]
        part: String,
        #[arg(long, default_value_t = 40)]
        max_deg: usize,
    },
    /// Print the case table as JSON.
    Cases,
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// sl, gn or gnp
    #[arg(long)]
    family: Option<String>,
    /// pu3, pu5, f4, e6, e7 or e8
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    max_deg: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// json, csv or text
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// key = value file with the same keys as the long flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// also run the rank 6 and 7 Weyl computations
    #[arg(long)]
    heavy: bool,
}

impl Flags {
    fn resolve(self) -> weylinv::Result<RunConfig> {
        let bad = |what: &str, v: &str| Error::Config(format!("unknown {what} {v:?}"));
        let flags = RunConfig {
            p: self.p,
            n: self.n,
            family: self
                .family
                .as_deref()
                .map(|f| GroupFamily::parse(f).ok_or_else(|| bad("family", f)))
                .transpose()?,
            case: self.case,
            max_deg: self.max_deg,
            jobs: self.jobs,
            cache_dir: self.cache_dir,
            format: self
                .format
                .as_deref()
                .map(|f| Format::parse(f).ok_or_else(|| bad("format", f)))
                .transpose()?,
            out: self.out,
            heavy: self.heavy,
        };
        let file = match self.config {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                RunConfig::from_kv(&text)?
            }
            None => RunConfig::default(),
        };
        let cfg = flags.or(file);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn verify(suite: &str, flags: Flags) -> u8 {
    let Some(suite) = Suite::parse(suite) else {
        eprintln!("error: unknown suite {suite:?}");
        return 2;
    };
    let cfg = match flags.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit_code(&e) as u8;
        }
    };
    info!("running {suite} with {}", cfg.to_json());
    let outcome = execute(suite, &cfg);
    let code = exit_code(&outcome);
    match outcome {
        Ok(report) => {
            let text = report.render(cfg.output_format());
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            for r in report.failures() {
                eprintln!(
                    "FAIL {:?} {}: expected {}, computed {}",
                    r.degree, r.statement, r.expected, r.computed
                );
            }
            eprintln!(
                "{suite}: {} of {} checks passed",
                report.summary.passed, report.summary.total
            );
        }
        Err(e) => eprintln!("error: {e}"),
    }
    code as u8
}

fn series(id: &str, part: &str, max_deg: usize) -> u8 {
    let Some(which) = MPart::parse(part) else {
        eprintln!("error: unknown part {part:?}");
        return 2;
    };
    let spec = match case(id) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let s = series_m(&spec, which, max_deg);
    println!("{s}");
    let coeffs: Vec<String> = s.coeffs().iter().map(i64::to_string).collect();
    println!("[{}]", coeffs.join(", "));
    0
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { suite, flags } => verify(&suite, flags),
        Command::Series {
            case,
            part,
            max_deg,
        } => series(&case, &part, max_deg),
        Command::Cases => {
            println!("{}", case_table_json());
            0
        }
    };
    ExitCode::from(code)
}
