//! Grows the heap of `aababbbaabaab` one letter at a time, then finalizes
//! it and lists every node with its positions.
//!
//!     cargo run --example online_build [TEXT]

use posheap::PositionHeap;

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let mut heap = PositionHeap::new();
    println!("{:>3}  letter  nodes  active node  active position", "k");
    for (k, &a) in text.as_bytes().iter().enumerate() {
        heap.append(a)?;
        let label = String::from_utf8_lossy(&heap.path_label(heap.active_node())).into_owned();
        println!(
            "{:>3}  {:>6}  {:>5}  {:>11}  {:>15}",
            k + 1,
            a as char,
            heap.node_count(),
            format!("{label:?}"),
            heap.active_position()
        );
    }
    heap.finalize();

    println!("\nnode  label   positions");
    for (v, node) in heap.nodes() {
        let label = String::from_utf8_lossy(&heap.path_label(v)).into_owned();
        let positions: Vec<String> = node.positions().map(|p| p.to_string()).collect();
        println!("{:>4}  {:<6}  {}", v.index(), label, positions.join(","));
    }
    println!(
        "height {}, {} loop iterations",
        heap.height(),
        heap.loop_iterations()
    );
    Ok(())
}
