fn main() -> std::process::ExitCode {
    hitchcock::cli::main_entry()
}
