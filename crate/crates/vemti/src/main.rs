fn main() {
    std::process::exit(vemti::cli::main_with(std::env::args_os()));
}
