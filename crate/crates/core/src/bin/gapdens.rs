fn main() {
    std::process::exit(gapdens::cli::run(std::env::args_os()));
}
