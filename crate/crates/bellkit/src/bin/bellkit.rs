use std::io::{self, BufWriter};

fn main() {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut output = BufWriter::new(io::stdout().lock());
    let mut errors = io::stderr().lock();
    let code = bellkit::run(std::env::args_os(), &mut input, &mut output, &mut errors);
    drop(output);
    std::process::exit(code);
}
