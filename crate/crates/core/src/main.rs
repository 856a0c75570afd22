use std::io::Write;

fn main() {
    let (code, out, err) = hecke_gamma::cli::run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
