fn main() -> std::process::ExitCode {
    expressive_choice::cli::main()
}
