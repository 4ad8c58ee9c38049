fn main() {
    std::process::exit(projcluster::cli::main_exit());
}
