use std::io::{stderr, stdout};
use std::process::exit;

fn main() {
    let code = ader_adr::cli::main_with_args(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    exit(code);
}
