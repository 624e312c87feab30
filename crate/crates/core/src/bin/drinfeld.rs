fn main() {
    std::process::exit(drinfeld::cli::main_with(std::env::args_os()));
}
