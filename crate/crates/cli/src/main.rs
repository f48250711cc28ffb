fn main() {
    std::process::exit(gradus_cli::run(std::env::args_os()));
}
