use clap::Parser;

use pnverify_core::cli::{execute, Args};

fn main() {
    let args = Args::parse();
    let code = execute(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
