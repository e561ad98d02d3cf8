fn main() {
    std::process::exit(h1loc_cli::main_with_args(std::env::args_os()));
}
