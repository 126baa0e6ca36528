//! Run a predicate over the bundled cubic corpus through the CLI entry
//! point, serially and on four threads.

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/cubic");
    let dir = dir.to_str().expect("utf-8 path");
    let serial = rgraphs::cli::run(["rgraphs", "corpus", "--predicate", "rgraph", dir]);
    print!("{}", serial.stdout);
    let parallel = rgraphs::cli::run(["rgraphs", "corpus", "--predicate", "rgraph", "--jobs", "4", dir]);
    println!("exit {}, parallel output identical: {}", serial.code, serial.stdout == parallel.stdout);
}
