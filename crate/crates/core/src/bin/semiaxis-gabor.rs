fn main() {
    std::process::exit(semiaxis_gabor::cli::main_with_args(std::env::args_os()));
}
