fn main() {
    std::process::exit(addrep_cli::run(std::env::args().collect()));
}
