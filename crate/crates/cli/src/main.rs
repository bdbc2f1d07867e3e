use clap::Parser;

fn main() {
    let cli = phasecrit_cli::Cli::parse();
    let code = match phasecrit_cli::run(&cli, &mut std::io::stdout()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
