use clap::{Parser, Subcommand};
use nfm_core::{RunConfig, Session};
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

mod golden;
mod scan;

#[derive(Parser)]
#[command(name = "nfm", about = "Pattern-matching language interpreter")]
struct Cli {
    /// Truncate printed collections after this many elements.
    #[arg(long, global = true, default_value_t = 100)]
    print_limit: usize,
    /// Start without the pattern-matching library.
    #[arg(long, global = true)]
    no_stdlib: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a source file, printing each bare expression's value.
    Run { file: PathBuf },
    /// Evaluate one expression and print its value.
    Eval { expr: String },
    /// Compare every .nfm file in a directory against its .expected twin.
    Test { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        print_limit: cli.print_limit,
        load_stdlib: !cli.no_stdlib,
        ..RunConfig::default()
    };
    match cli.command {
        None => repl(config),
        Some(Command::Run { file }) => run_file(&file, config),
        Some(Command::Eval { expr }) => eval_source(&expr, config),
        Some(Command::Test { dir }) => golden::run_golden_tests(&dir, config),
    }
}

fn repl(config: RunConfig) -> ExitCode {
    let mut session = Session::new(config);
    let stdin = std::io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        print!("> ");
        let _ = std::io::stdout().flush();
        let mut buf = String::new();
        loop {
            match lines.next() {
                None => {
                    if buf.trim().is_empty() {
                        return ExitCode::SUCCESS;
                    }
                    break;
                }
                Some(Err(e)) => {
                    eprintln!("Error: Io: {e}");
                    return ExitCode::FAILURE;
                }
                Some(Ok(line)) => {
                    buf.push_str(&line);
                    buf.push('\n');
                    if scan::balance(&buf) != scan::Balance::Open {
                        break;
                    }
                }
            }
        }
        if buf.trim().is_empty() {
            continue;
        }
        match nfm_core::syntax::parse_program(&buf) {
            Err(e) => println!("{}", e.report()),
            Ok(forms) => {
                for form in &forms {
                    match session.eval_top(form) {
                        Ok(None) => {}
                        Ok(Some(rendered)) => println!("{rendered}"),
                        Err(e) => println!("{}", e.report()),
                    }
                }
            }
        }
    }
}

fn run_file(path: &PathBuf, config: RunConfig) -> ExitCode {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("Error: Io: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    eval_source(&src, config)
}

fn eval_source(src: &str, config: RunConfig) -> ExitCode {
    let mut session = Session::new(config);
    let forms = match nfm_core::syntax::parse_program(src) {
        Ok(forms) => forms,
        Err(e) => {
            eprintln!("{}", e.report());
            return ExitCode::from(2);
        }
    };
    for form in &forms {
        match session.eval_top(form) {
            Ok(None) => {}
            Ok(Some(rendered)) => println!("{rendered}"),
            Err(e) => {
                eprintln!("{}", e.report());
                return ExitCode::from(1);
            }
        }
    }
    ExitCode::SUCCESS
}
