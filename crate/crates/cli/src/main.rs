use std::io::Write;

fn configure_threads() {
    let Ok(value) = std::env::var("EVENPOINTS_THREADS") else { return };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            // only fails if a pool already exists, which cannot happen here
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring EVENPOINTS_THREADS={value:?}, expected a positive integer"),
    }
}

fn main() {
    configure_threads();
    let response = evenpoints_cli::run(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(response.stdout.as_bytes());
    let _ = std::io::stderr().write_all(response.stderr.as_bytes());
    std::process::exit(response.code);
}
