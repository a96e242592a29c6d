fn main() {
    std::process::exit(extraspecial::cli::run(std::env::args_os()));
}
