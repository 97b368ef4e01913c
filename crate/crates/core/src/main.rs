fn main() {
    std::process::exit(naive_matrix::cli::run(std::env::args_os()));
}
