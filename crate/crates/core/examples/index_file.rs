//! Saves an index as JSON, loads it back and renders the trie in
//! Graphviz DOT.
//!
//!     cargo run --example index_file [TEXT] | dot -Tsvg > heap.svg

use posheap::{to_dot, AugmentedHeap, IndexFile, PositionHeap};

fn main() -> posheap::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "aababbbaabaab".into());
    let index = AugmentedHeap::new(PositionHeap::build_finalized(text.as_bytes())?)?;

    let json = IndexFile::from_index(&index)?.to_json()?;
    eprintln!(
        "{} bytes of JSON for {} nodes",
        json.len(),
        index.heap().node_count()
    );
    let reloaded = IndexFile::from_json(&json)?.to_index()?;
    assert_eq!(reloaded.text(), index.text());
    assert_eq!(IndexFile::from_index(&reloaded)?.to_json()?, json);

    print!("{}", to_dot(&reloaded));
    Ok(())
}
