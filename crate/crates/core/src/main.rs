use std::io;

fn main() {
    let code = hypertoric_gkm::cli::run_with(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
