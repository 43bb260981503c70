fn main() {
    std::process::exit(govsym::cli::run(std::env::args_os()));
}
