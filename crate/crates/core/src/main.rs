fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = quasilinkage::cli::run(&args, &mut std::io::stdout());
    std::process::exit(code);
}
