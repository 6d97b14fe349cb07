fn main() {
    std::process::exit(bollobas::cli::run(std::env::args_os()));
}
