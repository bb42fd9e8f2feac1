use std::process::ExitCode;

use clap::Parser;

use utlab_cli::{run, Cli, Commands};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("warning: could not set thread count: {e}");
        }
    }
    let argv: Vec<String> = std::env::args().collect();
    let report = run(&cli, argv);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        let hide = matches!(cli.command, Commands::Ut { witness: false, .. });
        print!("{}", report.to_text(hide));
    }
    ExitCode::from(report.exit_code())
}
