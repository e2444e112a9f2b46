fn main() {
    std::process::exit(imix::run(std::env::args_os()));
}
