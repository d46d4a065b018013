fn main() {
    std::process::exit(spidercat::cli::run());
}
