//! Prints every suffix link of a heap; each one drops the first letter of
//! the node's label.
//!
//!     cargo run --example suffix_links [TEXT]

use posheap::PositionHeap;

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let heap = PositionHeap::build_finalized(text.as_bytes())?;
    let show = |label: Vec<u8>| format!("{:?}", String::from_utf8_lossy(&label));
    for (v, node) in heap.nodes() {
        match node.suffix_link() {
            Some(w) => println!(
                "{:>8} -> {}",
                show(heap.path_label(v)),
                show(heap.path_label(w))
            ),
            None => println!("{:>8} -> (bottom)", show(heap.path_label(v))),
        }
    }
    Ok(())
}
