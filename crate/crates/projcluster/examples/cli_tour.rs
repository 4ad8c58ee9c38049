//! Drives the command-line front end in-process and prints a few envelopes.

use clap::Parser;
use projcluster::cli::{run, Cli};

fn main() {
    for args in [
        "projcluster classify --polygon 4",
        "projcluster verify pentagon --classical",
        "projcluster trace --surface g1s1 --loop ab --power 1",
        "projcluster reconstruct --polygon 4 --random",
    ] {
        let cli = Cli::parse_from(args.split_whitespace());
        let (env, code) = run(&cli);
        println!("$ {args}  (exit {code})");
        println!("{}", serde_json::to_string(&env["result"]).unwrap());
    }
}
