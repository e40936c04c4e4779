fn main() {
    std::process::exit(epos::run(std::env::args_os()));
}
