//! Construction timing over generated texts.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::heap::{Letter, PositionHeap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TextKind {
    /// Uniform random bytes.
    Random,
    /// A random block of 17 letters over `{a, b, c, d}` repeated.
    Periodic,
}

impl TextKind {
    pub fn name(self) -> &'static str {
        match self {
            TextKind::Random => "random",
            TextKind::Periodic => "periodic",
        }
    }

    pub fn generate(self, n: usize, seed: u64) -> Vec<Letter> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            TextKind::Random => {
                let mut text = vec![0u8; n];
                rng.fill(text.as_mut_slice());
                text
            }
            TextKind::Periodic => {
                let block: Vec<Letter> = (0..17).map(|_| b"abcd"[rng.gen_range(0..4)]).collect();
                block.iter().cycle().take(n).copied().collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub kind: &'static str,
    pub n: usize,
    /// Non-root nodes, i.e. nodes created by the builder.
    pub nodes_created: usize,
    pub iterations: u64,
    pub height: usize,
    pub elapsed: Duration,
}

impl BenchRow {
    pub fn bytes_per_sec(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.n as f64 / secs
        } else {
            0.0
        }
    }
}

/// Times the on-line build plus finalize, keeping the fastest of
/// `repeats` runs.
pub fn time_build(kind: TextKind, text: &[Letter], repeats: usize) -> BenchRow {
    let mut best: Option<BenchRow> = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let mut heap = PositionHeap::build(text).expect("text length within limits");
        heap.finalize();
        let elapsed = start.elapsed();
        let row = BenchRow {
            kind: kind.name(),
            n: text.len(),
            nodes_created: heap.node_count() - 1,
            iterations: heap.loop_iterations(),
            height: heap.height(),
            elapsed,
        };
        drop(heap);
        if best.as_ref().is_none_or(|b| row.elapsed < b.elapsed) {
            best = Some(row);
        }
    }
    best.unwrap()
}

pub fn run(sizes: &[usize], seed: u64, repeats: usize) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for kind in [TextKind::Random, TextKind::Periodic] {
        for &n in sizes {
            let text = kind.generate(n, seed);
            rows.push(time_build(kind, &text, repeats));
        }
    }
    rows
}

pub const CSV_HEADER: &str = "kind,n,nodes_created,iterations,height,seconds,bytes_per_sec";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.0}",
            r.kind,
            r.n,
            r.nodes_created,
            r.iterations,
            r.height,
            r.elapsed.as_secs_f64(),
            r.bytes_per_sec()
        );
    }
    out
}
