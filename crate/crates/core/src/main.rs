fn main() {
    std::process::exit(vardelay::cli::run(std::env::args_os()));
}
