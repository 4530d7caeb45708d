fn main() {
    std::process::exit(quasistat::cli::run());
}
