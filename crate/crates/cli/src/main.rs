fn main() {
    std::process::exit(triax_cli::run(std::env::args_os()));
}
