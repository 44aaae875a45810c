fn main() {
    std::process::exit(mirrorpair::cli::run(std::env::args_os()));
}
