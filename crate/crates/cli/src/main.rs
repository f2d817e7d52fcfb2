use std::io::Write;

fn main() {
    let r = gw_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(r.stdout.as_bytes());
    let _ = stdout.flush();
    std::process::exit(r.code);
}
