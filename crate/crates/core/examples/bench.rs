//! Construction time on random and periodic texts, as CSV.
//!
//!     cargo run --release --example bench [SIZE...]

use posheap::bench::{run, to_csv};

fn main() {
    let mut sizes: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if sizes.is_empty() {
        sizes = vec![100_000, 200_000, 400_000];
    }
    print!("{}", to_csv(&run(&sizes, 1, 3)));
}
