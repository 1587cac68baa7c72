use clap::Parser;

fn main() {
    let cli = autohom_cli::Cli::parse();
    match autohom_cli::run(&cli) {
        Ok(manifest) => println!("{}", manifest.display()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
