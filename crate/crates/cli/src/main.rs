// SPDX-License-Identifier: MIT OR Apache-2.0

fn main() {
    std::process::exit(wbs2sdll_cli::run_cli(std::env::args_os()));
}
