fn main() {
    std::process::exit(posetdef::cli::run(std::env::args_os()));
}
