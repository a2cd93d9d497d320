fn main() {
    std::process::exit(hopf_fs::cli::main_with_args(std::env::args()));
}
