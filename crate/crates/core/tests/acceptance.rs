//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! print and timings are not disturbed by parallel tests.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posheap::augmented::naive_mrp;
use posheap::bench::{time_build, TextKind};
use posheap::bitvec::unary_encode;
use posheap::heap::{oracle_build, NodeId};
use posheap::verify::{self, all_strings, random_text};
use posheap::{AugmentedHeap, Matcher, MrpBits, PositionHeap};

const SAMPLE: &[u8] = b"aababbbaabaab";

const BUILD_BUDGET: Duration = Duration::from_millis(1);
const CONSTRUCTION_BUDGET: Duration = Duration::from_secs(60);
const MATCHING_BUDGET: Duration = Duration::from_secs(300);
const DOUBLING_RATIO: f64 = 2.5;
const THROUGHPUT_BYTES: usize = 10_000_000;
const THROUGHPUT_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn node(heap: &PositionHeap, label: &str) -> Result<NodeId, String> {
    heap.locate(label.as_bytes())
        .ok_or_else(|| format!("{label:?} not represented"))
}

fn label(heap: &PositionHeap, v: NodeId) -> String {
    String::from_utf8_lossy(&heap.path_label(v)).into_owned()
}

/// Binary strings of length 1..=12 and ternary strings of length 1..=8.
fn exhaustive_texts() -> Vec<Vec<u8>> {
    all_strings(b"ab", 12)
        .chain(all_strings(b"abc", 8))
        .filter(|t| !t.is_empty())
        .collect()
}

fn trie_reproduction() -> Outcome {
    let start = Instant::now();
    let mut heap = PositionHeap::build(SAMPLE).map_err(|e| e.to_string())?;
    heap.finalize();
    let elapsed = start.elapsed();

    let labels = [
        "a", "ab", "b", "abb", "bb", "bba", "ba", "aa", "aba", "baa", "aab",
    ];
    ensure(heap.node_count() == 12, || {
        format!("{} nodes", heap.node_count())
    })?;
    for (i, l) in labels.iter().enumerate() {
        let v = node(&heap, l)?;
        ensure(v.index() == i + 1, || format!("{l:?} created as node {v}"))?;
        ensure(heap.node(v).primary() == Some(i + 1), || {
            format!("{l:?} primary {:?}", heap.node(v).primary())
        })?;
    }
    let doubles: Vec<(String, usize, usize)> = heap
        .nodes()
        .filter(|(_, n)| n.is_double())
        .map(|(v, n)| {
            (
                label(&heap, v),
                n.primary().unwrap(),
                n.secondary().unwrap(),
            )
        })
        .collect();
    let want = vec![("ab".to_string(), 2, 12), ("b".to_string(), 3, 13)];
    ensure(doubles == want, || format!("double nodes {doubles:?}"))?;
    ensure(elapsed < BUILD_BUDGET, || format!("build took {elapsed:?}"))?;
    Ok(format!("11 labels, 2 double nodes, built in {elapsed:?}"))
}

fn suffix_links() -> Outcome {
    let heap = PositionHeap::build_finalized(SAMPLE).map_err(|e| e.to_string())?;
    let mut checked = 0;
    ensure(heap.suffix_link(heap.root()).is_none(), || {
        "root link is not the virtual node".into()
    })?;
    checked += 1;
    for (v, n) in heap.nodes().skip(1) {
        let link = n
            .suffix_link()
            .ok_or_else(|| format!("node {v} has no link"))?;
        let l = heap.path_label(v);
        ensure(heap.path_label(link) == l[1..], || {
            format!("{:?} links to {:?}", label(&heap, v), label(&heap, link))
        })?;
        checked += 1;
    }
    ensure(checked == 12, || format!("{checked} links"))?;
    Ok(format!("{checked} links"))
}

fn maximal_reach() -> Outcome {
    let heap = PositionHeap::build_finalized(SAMPLE).map_err(|e| e.to_string())?;
    let index = AugmentedHeap::new(heap).map_err(|e| e.to_string())?;
    let heap = index.heap();
    let expected = [(1, "aab"), (2, "aba"), (3, "ba"), (7, "baa"), (8, "aab")];
    for i in 1..=SAMPLE.len() {
        let want = match expected.iter().find(|(p, _)| *p == i) {
            Some((_, l)) => node(heap, l)?,
            None => index.node_of(i).unwrap(),
        };
        let got = index.mrp_node(i).unwrap();
        ensure(got == want, || {
            format!(
                "mrp({i}) = {:?}, want {:?}",
                label(heap, got),
                label(heap, want)
            )
        })?;
    }
    Ok(format!("{} positions", SAMPLE.len()))
}

fn encoding() -> Outcome {
    let bits = unary_encode([1, 2, 0, 3, 0, 1, 0]).to_string();
    ensure(bits == "10110011100100", || {
        format!("encoder emitted {bits}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut positions = 0usize;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10_000);
        let sigma = rng.gen_range(1..=4);
        let text = random_text(&mut rng, sigma, n);
        let heap = PositionHeap::build_finalized(&text).map_err(|e| e.to_string())?;
        let explicit: Vec<usize> = naive_mrp(&heap)[1..]
            .iter()
            .map(|&v| heap.depth(v))
            .collect();
        let encoded = MrpBits::from_depths(&explicit).map_err(|e| e.to_string())?;
        for (i, &m) in explicit.iter().enumerate() {
            let got = encoded.depth(i + 1).map_err(|e| e.to_string())?;
            ensure(got == m, || {
                format!("n={n} position {}: {got} vs {m}", i + 1)
            })?;
        }
        positions += n;
    }
    Ok(format!(
        "fixture matches; 1000 strings, {positions} positions"
    ))
}

fn construction_equivalence(texts: &[Vec<u8>]) -> Outcome {
    let start = Instant::now();
    for text in texts {
        let heap = verify::check_construction(text).map_err(|d| d.to_string())?;
        ensure(heap == oracle_build(text), || format!("{text:?} differs"))?;
        ensure(
            heap.loop_iterations() as usize == heap.node_count() - 1,
            || format!("{text:?}: {} iterations", heap.loop_iterations()),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CONSTRUCTION_BUDGET, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} texts with every prefix in {elapsed:.2?}",
        texts.len()
    ))
}

fn heap_properties(texts: &[Vec<u8>]) -> Outcome {
    for text in texts {
        let heap = PositionHeap::build_finalized(text).map_err(|e| e.to_string())?;
        verify::check_heap_properties(&heap).map_err(|d| d.to_string())?;
    }
    Ok(format!("{} texts, zero violations", texts.len()))
}

fn matching_equivalence() -> Outcome {
    let start = Instant::now();
    let patterns: Vec<Vec<u8>> = all_strings(b"ab", 6).filter(|p| !p.is_empty()).collect();
    let mut exhaustive = 0u64;
    for text in all_strings(b"ab", 11) {
        let index = AugmentedHeap::new(PositionHeap::build_finalized(&text).unwrap()).unwrap();
        let mut matcher = Matcher::new(&index);
        for p in &patterns {
            verify::check_search(&mut matcher, &index, p).map_err(|d| d.to_string())?;
            exhaustive += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random = 0u64;
    for _ in 0..100 {
        let text = random_text(&mut rng, 4, 10_000);
        let index = AugmentedHeap::new(PositionHeap::build_finalized(&text).unwrap()).unwrap();
        let mut matcher = Matcher::new(&index);
        for p in verify::random_patterns(&mut rng, &text, 4, 100) {
            verify::check_search(&mut matcher, &index, &p).map_err(|d| d.to_string())?;
            random += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < MATCHING_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{exhaustive} exhaustive + {random} random pairs in {elapsed:.2?}"
    ))
}

fn linearity() -> Outcome {
    let mut times = Vec::new();
    for (k, n) in [1_000_000usize, 2_000_000, 4_000_000]
        .into_iter()
        .enumerate()
    {
        let text = TextKind::Random.generate(n, 100 + k as u64);
        let row = time_build(TextKind::Random, &text, 3);
        ensure(row.iterations as usize == row.nodes_created, || {
            format!("{row:?}")
        })?;
        times.push(row.elapsed.as_secs_f64());
    }
    let ratios = [times[1] / times[0], times[2] / times[1]];
    ensure(ratios.iter().all(|&r| r <= DOUBLING_RATIO), || {
        format!("doubling ratios {ratios:.2?}")
    })?;

    let text = TextKind::Random.generate(THROUGHPUT_BYTES, 200);
    let start = Instant::now();
    let heap = PositionHeap::build_finalized(&text).map_err(|e| e.to_string())?;
    let nodes = heap.node_count();
    let iterations = heap.loop_iterations();
    let index = AugmentedHeap::new(heap).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    drop(index);
    ensure(iterations as usize == nodes - 1, || {
        format!("{iterations} iterations, {nodes} nodes")
    })?;
    ensure(elapsed < THROUGHPUT_BUDGET, || {
        format!("10 MB took {elapsed:?}")
    })?;
    Ok(format!(
        "doubling ratios {ratios:.2?}; 10 MB indexed in {elapsed:.2?}"
    ))
}

fn ancestors(texts: &[Vec<u8>]) -> Outcome {
    let mut pairs = 0u64;
    for text in texts {
        let index = AugmentedHeap::new(PositionHeap::build_finalized(text).unwrap()).unwrap();
        pairs += verify::check_ancestors(&index).map_err(|d| d.to_string())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut seen = HashSet::new();
    for _ in 0..100 {
        let sigma = rng.gen_range(2..=4);
        let text = random_text(&mut rng, sigma, 10_000);
        let index = AugmentedHeap::new(PositionHeap::build_finalized(&text).unwrap()).unwrap();
        // Half uniform pairs, half pairs drawn near each other in the tree.
        verify::check_ancestors_sampled(&index, 50_000, &mut rng).map_err(|d| d.to_string())?;
        pairs += 100_000;
        seen.insert(index.heap().height());
    }
    Ok(format!(
        "{pairs} pairs, random heights {:?}..{:?}",
        seen.iter().min(),
        seen.iter().max()
    ))
}

fn main() -> ExitCode {
    let texts = exhaustive_texts();
    let criteria: Vec<Criterion> = vec![
        ("trie reproduction", Box::new(trie_reproduction)),
        ("suffix links", Box::new(suffix_links)),
        ("maximal-reach pointers", Box::new(maximal_reach)),
        ("unary mrp encoding", Box::new(encoding)),
        (
            "construction vs oracle",
            Box::new(|| construction_equivalence(&texts)),
        ),
        ("heap properties", Box::new(|| heap_properties(&texts))),
        ("matching vs naive", Box::new(matching_equivalence)),
        ("linearity accounting", Box::new(linearity)),
        ("ancestor structures", Box::new(|| ancestors(&texts))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
