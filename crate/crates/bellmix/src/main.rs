fn main() {
    std::process::exit(bellmix::cli::run(std::env::args_os()));
}
