fn main() {
    std::process::exit(bc_hypergroup::cli::main_with_args(std::env::args_os()));
}
