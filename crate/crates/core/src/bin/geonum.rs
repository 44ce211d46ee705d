fn main() -> std::process::ExitCode {
    geonum::cli::main()
}
