//! Maximal-reach pointers: for each position, the node it is stored at and
//! the node of the longest represented prefix of its suffix.
//!
//!     cargo run --example maximal_reach [TEXT]

use posheap::{AugmentedHeap, PositionHeap};

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let index = AugmentedHeap::new(PositionHeap::build_finalized(text.as_bytes())?)?;
    let heap = index.heap();
    let label = |v| String::from_utf8_lossy(&heap.path_label(v)).into_owned();
    println!("{:>3}  {:<8} {:<8}", "i", "stored", "mrp");
    for i in 1..=index.len() {
        let stored = index.node_of(i)?;
        let reach = index.mrp_node(i)?;
        let mark = if stored == reach { "" } else { "  *" };
        println!("{i:>3}  {:<8} {:<8}{mark}", label(stored), label(reach));
    }
    println!("(* pointer leaves the node storing the position)");
    Ok(())
}
