use clap::Parser;
use parabolic_odd_cli::{run, Cli, CliError, EXIT_CONFIG, EXIT_OK};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(&cli) {
        if !matches!(e, CliError::ChecksFailed(_)) {
            eprintln!("parabolic-odd: {e}");
        }
        std::process::exit(e.exit_code());
    }
}
