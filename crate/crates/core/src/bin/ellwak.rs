use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ellwak::verifier::{run_suite, Format, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(name = "ellwak", about = "Machine verification of the free-boson realization of U_{q,p}(sl2) at level k")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a suite of relations and print a report.
    Verify {
        /// One of special, prop1, prop2, thm3, elliptic, screening, vertex, twisted, proofs, fock, all.
        suite: String,
        /// Compared powers of the exchange variable, |m| <= N.
        #[arg(long = "x-window", default_value_t = 6)]
        x_window: i64,
        /// Order in the nome p.
        #[arg(long = "p-order", default_value_t = 3)]
        p_order: i64,
        /// Top oscillator grade of the matrix-element oracle.
        #[arg(long, default_value_t = 3)]
        grade: i64,
        /// Spins for the vertex-operator relations.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        spin: Vec<i64>,
        /// Run only the relation with this id.
        #[arg(long)]
        relation: Option<String>,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Cmd::Verify { suite, x_window, p_order, grade, spin, relation, format, out } = cli.cmd;
    let format = match format {
        Fmt::Text => Format::Text,
        Fmt::Json => Format::Json,
    };
    let mut cfg = SuiteConfig::new(&suite).window(x_window).p_order(p_order).grade(grade).spins(&spin);
    cfg.relation = relation;
    cfg.format = format;
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("usage: ellwak verify <{}> [--x-window N] [--p-order P] [--grade G] [--spin L,..] [--relation ID] [--format text|json] [--out FILE]", SUITES.join("|"));
            return ExitCode::from(2);
        }
    };
    let text = report.render(format);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
