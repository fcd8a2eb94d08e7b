fn main() {
    std::process::exit(horosphere::run_cli());
}
