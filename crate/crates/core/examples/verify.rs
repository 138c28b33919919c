//! Runs the brute-force cross-checks on a small exhaustive set plus a few
//! random texts.
//!
//!     cargo run --release --example verify [MAX_N]

use posheap::verify::{run, VerifyConfig};

fn main() {
    let max_n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let config = VerifyConfig {
        max_n,
        random_texts: 3,
        random_n: 2_000,
        ..VerifyConfig::default()
    };
    match run(&config) {
        Ok(report) => println!("{report}"),
        Err(d) => {
            eprintln!("{d}");
            std::process::exit(1);
        }
    }
}
