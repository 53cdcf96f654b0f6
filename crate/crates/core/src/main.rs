fn main() {
    std::process::exit(elgamal_image::cli::run(std::env::args_os()));
}
