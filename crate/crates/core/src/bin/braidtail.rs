fn main() {
    // stderr stays unlocked: colored --progress writes to it from worker threads
    let code = braidtail::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
