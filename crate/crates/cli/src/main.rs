//! `nielsen`: command-line front end for the coincidence calculators.
//!
//! Every invocation prints one JSON document (or its text rendering) and
//! exits with 0 when a verdict was computed, 1 on invalid input, and 2 when
//! the available results do not decide the answer.

use clap::Parser;

use nielsen_cli::args::{Cli, Command};
use nielsen_cli::output::{error_document, render, Format, InputError, EXIT_INVALID, EXIT_OK};
use nielsen_cli::{commands, crosscheck};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(EXIT_OK);
            }
            let field = e
                .get(clap::error::ContextKind::InvalidArg)
                .map(|v| v.to_string())
                .unwrap_or_else(|| "arguments".to_string());
            let err = InputError::new(field, e.kind().to_string());
            println!("{}", render(&error_document(&err), Format::Json));
            std::process::exit(EXIT_INVALID);
        }
    };

    let result = match &cli.command {
        Command::Circle(a) => commands::circle(a),
        Command::Sphere(a) => commands::sphere(a),
        Command::Reidemeister(a) => commands::reidemeister(a),
        Command::Index(a) => commands::index(a),
        Command::Immersion(a) => commands::immersion(a),
        Command::OracleTorus(a) => commands::oracle_torus(a),
        Command::Crosscheck(a) => crosscheck::run(a),
        Command::Tables(a) => commands::tables(a),
    };
    match result {
        Ok(verdict) => {
            let doc = serde_json::to_value(&verdict).expect("verdicts serialize");
            println!("{}", render(&doc, cli.format));
            std::process::exit(verdict.exit_code());
        }
        Err(err) => {
            println!("{}", render(&error_document(&err), cli.format));
            std::process::exit(EXIT_INVALID);
        }
    }
}
