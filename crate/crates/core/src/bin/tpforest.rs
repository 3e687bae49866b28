use std::io::Write;

fn main() {
    let (code, text) = tpforest::cli::run(std::env::args_os());
    if code == 2 {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(code);
}
