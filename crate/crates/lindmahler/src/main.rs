fn main() {
    std::process::exit(lindmahler::cli::run());
}
