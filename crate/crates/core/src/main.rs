use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use rescurrent::cli::{run_corpus, run_script, Options, EXIT_PARSE_ERROR};
use rescurrent::homalg::DEFAULT_CAP;
use rescurrent::polyring::MonomialOrder;

/// Runs scripts of ring, ideal and complex computations and reports the results.
#[derive(Parser, Debug)]
#[command(name = "rescurrent", version)]
struct Args {
    /// Script to execute (`-` reads standard input).
    #[arg(long, value_name = "PATH", conflicts_with = "corpus")]
    script: Option<PathBuf>,

    /// Also write the canonical JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Run the bundled worked-example corpus.
    #[arg(long)]
    corpus: bool,

    /// Resolution cap for statements that give none.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Monomial order of rings declared without one.
    #[arg(long, value_name = "ORDER", default_value = "grevlex", value_parser = parse_order)]
    order: MonomialOrder,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    match s {
        "lex" | "grlex" | "grevlex" => s.parse(),
        _ => Err(format!("expected lex, grlex or grevlex, found `{s}`")),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.cap == 0 {
        eprintln!("rescurrent: --cap must be positive");
        return ExitCode::from(EXIT_PARSE_ERROR as u8);
    }
    let options = Options { cap: args.cap, order: args.order };
    let report = if args.corpus {
        run_corpus(options)
    } else {
        let text = match &args.script {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map(|_| s)
            }
        };
        match text {
            Ok(t) => run_script(&t, options),
            Err(e) => {
                eprintln!("rescurrent: cannot read script: {e}");
                return ExitCode::from(EXIT_PARSE_ERROR as u8);
            }
        }
    };
    print!("{}", report.to_text());
    if let Some(path) = &args.json {
        let body = report.to_json_string() + "\n";
        let written = if path.as_os_str() == "-" {
            print!("{body}");
            Ok(())
        } else {
            std::fs::write(path, body)
        };
        if let Err(e) = written {
            eprintln!("rescurrent: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code as u8)
}
