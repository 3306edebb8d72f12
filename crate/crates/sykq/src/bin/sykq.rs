fn main() {
    std::process::exit(sykq::cli::run(std::env::args_os()));
}
