use clap::error::ErrorKind;
use clap::Parser;

fn main() {
    // clap's own exit code for usage errors is 2, which this tool reserves
    // for violated verdicts; map usage errors to 1 explicitly.
    let cli = match fracineq::cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    std::process::exit(fracineq::cli::run(cli) as i32);
}
