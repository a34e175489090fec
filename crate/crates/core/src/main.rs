fn main() {
    polyblend::cli::main()
}
