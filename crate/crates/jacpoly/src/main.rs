fn main() {
    std::process::exit(jacpoly::cli::run());
}
