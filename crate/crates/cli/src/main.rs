use clap::Parser;

fn main() {
    let cli = match ncsn_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // exit code 2 is reserved for unconverged runs
            std::process::exit(if e.use_stderr() {
                ncsn_cli::EXIT_CONFIG
            } else {
                ncsn_cli::EXIT_OK
            });
        }
    };
    std::process::exit(ncsn_cli::run(cli));
}
