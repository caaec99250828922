fn main() {
    std::process::exit(rankcode::cli::run(std::env::args_os()));
}
