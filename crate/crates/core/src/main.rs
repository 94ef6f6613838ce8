fn main() {
    std::process::exit(lqwalk::runner::cli_main(std::env::args_os()));
}
