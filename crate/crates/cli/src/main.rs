use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rclkit_cli::{run_file, Command, Format, Options};

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

/// Verifies recollements, quotients and mutation pairs declared in a workspace file.
#[derive(Debug, Parser)]
#[command(name = "rclkit", version)]
struct Cli {
    command: Command,
    workspace: PathBuf,
    #[command(flatten)]
    options: Options,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cert = run_file(cli.command, &cli.workspace, &cli.options);
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Structured => Format::Structured,
    };
    let text = cert.render(format);
    let mut code = cert.exit_code;
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                code = 2;
            }
            if let Some((_, message)) = &cert.error {
                eprintln!("error: {message}");
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
