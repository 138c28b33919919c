//! Stores the maximal-reach depths in 2n bits and reads them back with
//! rank and select.
//!
//!     cargo run --example succinct_mrp [TEXT]

use posheap::{AugmentedHeap, PositionHeap};

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let index = AugmentedHeap::new(PositionHeap::build_finalized(text.as_bytes())?)?;
    let depths = index.mrp_depths();
    let bits = index.encode_mrp()?;
    println!("depths {depths:?}");
    println!(
        "bits   {} ({} bits for n = {})",
        bits.bits(),
        bits.bits().len(),
        index.len()
    );

    let rs = bits.rank_select();
    for i in 1..=index.len() {
        let zero = rs.select0(i)?;
        let ones = rs.rank1(zero)?;
        println!(
            "m_{i:<2} = rank1(select0({i}) = {zero}) - {i} + 1 = {ones} - {i} + 1 = {}",
            bits.depth(i)?
        );
    }
    Ok(())
}
