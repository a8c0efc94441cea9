fn main() {
    std::process::exit(femkit::cli::main_with_args(std::env::args_os()));
}
