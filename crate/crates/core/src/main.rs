fn main() {
    std::process::exit(quotseries::cli::run(std::env::args_os()));
}
