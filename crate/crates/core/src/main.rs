fn main() {
    std::process::exit(uavscf::cli::main_entry());
}
