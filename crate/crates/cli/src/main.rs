fn main() {
    std::process::exit(cubeflat_cli::run(std::env::args_os()));
}
