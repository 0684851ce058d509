fn main() {
    std::process::exit(schlomilch::cli::run(std::env::args_os()));
}
