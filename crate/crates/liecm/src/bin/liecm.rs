//! `liecm` command-line tool; see [`liecm::cli`].

fn main() {
    std::process::exit(liecm::cli::main_with_args(std::env::args_os()));
}
