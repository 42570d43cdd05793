fn main() -> std::process::ExitCode {
    flexigraph::cli::main()
}
