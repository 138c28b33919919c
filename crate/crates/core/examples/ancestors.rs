//! Constant-time ancestor tests two ways: DFS discovery/finishing
//! intervals, and the balanced-parenthesis string of the trie.
//!
//!     cargo run --example ancestors [TEXT]

use posheap::{AugmentedHeap, PositionHeap};

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let index = AugmentedHeap::new(PositionHeap::build_finalized(text.as_bytes())?)?;
    let heap = index.heap();
    let parens = index.parens();
    println!("parentheses {}", parens.bits());

    println!("\nnode  label  [disc, fin]  open  close");
    for (v, _) in heap.nodes() {
        let open = parens.open_of(v);
        println!(
            "{:>4}  {:<5}  [{:>2}, {:>2}]     {:>4}  {:>5}",
            v.index(),
            String::from_utf8_lossy(&heap.path_label(v)),
            index.disc(v),
            index.fin(v),
            open,
            parens.find_close(open)?
        );
    }

    let (Some(u), Some(w)) = (heap.locate(b"b"), heap.locate(b"baa")) else {
        return Ok(());
    };
    println!(
        "\n\"b\" is an ancestor of \"baa\": intervals {}, parentheses {}",
        index.is_ancestor(u, w),
        index.parens_is_ancestor(u, w)
    );
    Ok(())
}
