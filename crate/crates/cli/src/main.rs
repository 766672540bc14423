fn main() {
    std::process::exit(blockade_cli::run(std::env::args_os()));
}
