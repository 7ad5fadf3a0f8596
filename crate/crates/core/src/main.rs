fn main() {
    std::process::exit(thetazeta::cli::run(std::env::args_os()));
}
