fn main() -> std::process::ExitCode {
    squarefull::cli::run()
}
