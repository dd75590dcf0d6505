fn main() {
    std::process::exit(adpart_cli::run());
}
