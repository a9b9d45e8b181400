fn main() {
    std::process::exit(gridfloer::cli::run());
}
