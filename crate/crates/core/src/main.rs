use std::io::Write;

fn main() {
    let report = delpezzo::cli::run(std::env::args_os());
    print!("{}", report.stdout());
    if let Some(e) = &report.error {
        let _ = writeln!(std::io::stderr(), "{}", e.trim_end());
    }
    let _ = std::io::stdout().flush();
    std::process::exit(report.status);
}
