fn main() { std::process::exit(quadmult::cli::main_with_args(std::env::args_os())) }
