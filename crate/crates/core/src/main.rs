//! The `sp4` command-line tool.

use clap::Parser;

fn main() {
    let config = sp4::cli::CliConfig::parse();
    let out = sp4::cli::run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
