fn main() {
    std::process::exit(bcs_tc_lab::cli::main());
}
