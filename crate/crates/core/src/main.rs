use std::io::{self, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = cycgraph::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    if out.flush().is_err() && code == cycgraph::cli::EXIT_OK {
        std::process::exit(cycgraph::cli::EXIT_INTERNAL);
    }
    std::process::exit(code);
}
