fn main() -> std::process::ExitCode {
    posheap::cli::main()
}
