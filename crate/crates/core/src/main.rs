fn main() {
    let code = spectra_diag::cli::main_with_env();
    std::process::exit(code);
}
