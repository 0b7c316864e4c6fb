fn main() {
    std::process::exit(anyon_mcg::cli::main_with_args(std::env::args_os()));
}
