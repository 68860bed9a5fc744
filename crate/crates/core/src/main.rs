fn main() {
    std::process::exit(gridfloer::cli::run(std::env::args_os()));
}
