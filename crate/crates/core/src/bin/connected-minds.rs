fn main() {
    std::process::exit(connected_minds::cli::run(std::env::args_os()));
}
