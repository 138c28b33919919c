//! Finds all occurrences of a pattern and shows how it was split into
//! represented segments.
//!
//!     cargo run --example search [TEXT PATTERN]

use posheap::{decompose, find_all_naive, AugmentedHeap, Matcher, PositionHeap};

fn main() -> posheap::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "aababbbaabaab".into());
    let patterns: Vec<String> = match args.next() {
        Some(p) => vec![p],
        None => ["ab", "aab", "bab", "abaab", "bbbb"]
            .map(String::from)
            .to_vec(),
    };
    let index = AugmentedHeap::new(PositionHeap::build_finalized(text.as_bytes())?)?;
    let mut matcher = Matcher::new(&index);

    for p in &patterns {
        let split = decompose(&index, p.as_bytes())?;
        let mut offset = 0;
        let segments: Vec<String> = split
            .segments
            .iter()
            .map(|s| {
                let seg = &p[offset..offset + s.len];
                offset += s.len;
                seg.to_owned()
            })
            .collect();
        let found = matcher.find_all(p.as_bytes())?;
        assert_eq!(found, find_all_naive(index.text(), p.as_bytes())?);
        println!(
            "{p:>6}: segments {segments:?}, occurrences {:?} ({} steps)",
            found.positions(),
            matcher.last_steps()
        );
    }
    Ok(())
}
