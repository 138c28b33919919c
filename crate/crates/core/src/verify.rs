//! Cross-checks of every structure against independent brute-force
//! references. Each check returns a [`Discrepancy`] carrying a reproducer
//! on the first mismatch.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augmented::{naive_mrp, AugmentedHeap};
use crate::heap::{h_oracle, oracle_build, Letter, NodeId, PositionHeap};
use crate::search::{decompose, find_all_naive, Matcher};

/// Steps per `m + occ` allowed to a query before the work bound fails.
pub const WORK_CONSTANT: u64 = 4;

/// Environment variable scaling the randomized suites of [`run`].
pub const SCALE_ENV: &str = "POSHEAP_VERIFY_SCALE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub check: &'static str,
    pub text: Vec<Letter>,
    pub pattern: Option<Vec<Letter>>,
    pub seed: Option<u64>,
    pub detail: String,
}

impl Discrepancy {
    fn new(check: &'static str, text: &[Letter], detail: impl Into<String>) -> Self {
        Discrepancy {
            check,
            text: text.to_vec(),
            pattern: None,
            seed: None,
            detail: detail.into(),
        }
    }

    fn with_pattern(mut self, pattern: &[Letter]) -> Self {
        self.pattern = Some(pattern.to_vec());
        self
    }
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check failed: {}", self.check)?;
        writeln!(f, "  text:    {:?}", String::from_utf8_lossy(&self.text))?;
        if let Some(p) = &self.pattern {
            writeln!(f, "  pattern: {:?}", String::from_utf8_lossy(p))?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "  seed:    {s}")?;
        }
        write!(f, "  {}", self.detail)
    }
}

impl std::error::Error for Discrepancy {}

type Check<T = ()> = Result<T, Discrepancy>;

/// Number of cases run per check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub counts: BTreeMap<&'static str, u64>,
}

impl Report {
    fn add(&mut self, check: &'static str, n: u64) {
        *self.counts.entry(check).or_default() += n;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (check, n) in &self.counts {
            writeln!(f, "{check:<28} {n:>10}")?;
        }
        write!(f, "{:<28} {:>10}", "total", self.total())
    }
}

/// Every string over `alphabet` of length `0..=max_len`, shortest first.
pub fn all_strings(alphabet: &[Letter], max_len: usize) -> impl Iterator<Item = Vec<Letter>> + '_ {
    (0..=max_len).flat_map(move |len| {
        let total = alphabet.len().pow(len as u32);
        (0..total).map(move |mut code| {
            let mut s = vec![0; len];
            for slot in s.iter_mut().rev() {
                *slot = alphabet[code % alphabet.len()];
                code /= alphabet.len();
            }
            s
        })
    })
}

/// The first `size` lowercase letters.
pub fn alphabet(size: usize) -> Vec<Letter> {
    (b'a'..=b'z').take(size).collect()
}

/// On-line build versus the definitional builder, at the full text and at
/// every prefix, plus the structural invariants of the builder.
pub fn check_construction(text: &[Letter]) -> Check<PositionHeap> {
    let mut heap = PositionHeap::new();
    for k in 0..=text.len() {
        if k > 0 {
            heap.append(text[k - 1])
                .map_err(|e| Discrepancy::new("construction", text, e.to_string()))?;
        }
        let prefix = &text[..k];
        if heap.node_count() != heap.active_position() {
            return Err(Discrepancy::new(
                "node count",
                prefix,
                format!(
                    "{} nodes with active position {}",
                    heap.node_count(),
                    heap.active_position()
                ),
            ));
        }
        if heap.depth(heap.active_node()) != k + 1 - heap.active_position() {
            return Err(Discrepancy::new("active node depth", prefix, ""));
        }
        let mut snapshot = heap.clone();
        snapshot.finalize();
        let oracle = oracle_build(prefix);
        if snapshot != oracle {
            return Err(Discrepancy::new(
                if k == text.len() {
                    "oracle equivalence"
                } else {
                    "prefix consistency"
                },
                prefix,
                structural_diff(&snapshot, &oracle),
            ));
        }
    }
    heap.finalize();
    check_builder_invariants(&heap)?;
    Ok(heap)
}

/// First node where two heaps differ, for failure messages.
pub fn structural_diff(left: &PositionHeap, right: &PositionHeap) -> String {
    if left.node_count() != right.node_count() {
        return format!(
            "node counts {} vs {}",
            left.node_count(),
            right.node_count()
        );
    }
    for ((id, a), (_, b)) in left.nodes().zip(right.nodes()) {
        if a != b {
            return format!("node {id} differs: {a:?} vs {b:?}");
        }
    }
    if left.text() != right.text() {
        return "texts differ".into();
    }
    format!(
        "active node/position ({}, {}) vs ({}, {}); finalized {} vs {}",
        left.active_node(),
        left.active_position(),
        right.active_node(),
        right.active_position(),
        left.is_finalized(),
        right.is_finalized()
    )
}

/// Invariants of a finalized heap that do not need an oracle.
pub fn check_builder_invariants(heap: &PositionHeap) -> Check {
    let text = heap.text();
    let n = text.len();
    let fail = |check, detail: String| Err(Discrepancy::new(check, text, detail));

    if heap.loop_iterations() != heap.node_count() as u64 - 1 {
        return fail(
            "work accounting",
            format!(
                "{} iterations for {} nodes",
                heap.loop_iterations(),
                heap.node_count()
            ),
        );
    }

    let mut secondaries: Vec<usize> = heap.nodes().filter_map(|(_, n)| n.secondary()).collect();
    secondaries.sort_unstable();
    let expected: Vec<usize> = (heap.active_position()..=n).collect();
    if secondaries != expected {
        return fail("secondary interval", format!("{secondaries:?}"));
    }

    for (v, node) in heap.nodes() {
        let label = heap.path_label(v);
        if label.len() != node.depth() {
            return fail("depth", format!("node {v}"));
        }
        if let Some(p) = node.parent() {
            if heap.depth(p) + 1 != node.depth() {
                return fail("depth", format!("node {v}"));
            }
        }
        let letters: Vec<Letter> = heap.children(v).map(|(a, _)| a).collect();
        if letters.windows(2).any(|w| w[0] >= w[1]) {
            return fail("trie property", format!("node {v}"));
        }
        if v != NodeId::ROOT {
            let link = node.suffix_link().ok_or_else(|| {
                Discrepancy::new("suffix link", text, format!("node {v} has none"))
            })?;
            if heap.path_label(link) != label[1..] {
                return fail("suffix link", format!("node {v} -> {link}"));
            }
            if node.primary().is_none() {
                return fail("primary", format!("node {v} has no primary position"));
            }
        }
        for p in node.positions() {
            if !text[p - 1..].starts_with(&label) {
                return fail("stored prefix", format!("position {p} at node {v}"));
            }
        }
        if let Some(s) = node.secondary() {
            if label != text[s - 1..] {
                return fail("secondary is whole suffix", format!("position {s}"));
            }
        }
    }
    Ok(())
}

fn occurrences(text: &[Letter], w: &[Letter]) -> Vec<usize> {
    if w.len() > text.len() {
        return Vec::new();
    }
    text.windows(w.len())
        .enumerate()
        .filter(|(_, x)| *x == w)
        .map(|(i, _)| i)
        .collect()
}

/// Whether `w[..1], w[..2], ..., w` occur at strictly increasing positions.
/// Greedy earliest choice is optimal.
fn increasing_occurrences(text: &[Letter], w: &[Letter]) -> bool {
    let mut after = 0;
    for l in 1..=w.len() {
        match occurrences(text, &w[..l]).into_iter().find(|&p| p >= after) {
            Some(p) => after = p + 1,
            None => return false,
        }
    }
    true
}

/// Properties of the represented set: closure under substrings, the
/// increasing-positions characterization, the frequency implication and
/// its converse bound, and the depth bound `2 h(T)`.
pub fn check_heap_properties(heap: &PositionHeap) -> Check {
    let text = heap.text();
    let fail = |check, detail: String| Err(Discrepancy::new(check, text, detail));

    for (v, _) in heap.nodes() {
        let label = heap.path_label(v);
        for i in 0..label.len() {
            for j in i + 1..=label.len() {
                if heap.locate(&label[i..j]).is_none() {
                    return fail(
                        "factorial set",
                        format!(
                            "{:?} represented, {:?} not",
                            String::from_utf8_lossy(&label),
                            String::from_utf8_lossy(&label[i..j])
                        ),
                    );
                }
            }
        }
    }

    let mut seen: HashSet<&[Letter]> = HashSet::new();
    for i in 0..text.len() {
        for j in i + 1..=text.len() {
            let w = &text[i..j];
            if !seen.insert(w) {
                continue;
            }
            let represented = heap.locate(w).is_some();
            if represented != increasing_occurrences(text, w) {
                return fail(
                    "increasing-positions characterization",
                    format!("{:?} represented={represented}", String::from_utf8_lossy(w)),
                );
            }
            let occ = occurrences(text, w).len();
            if occ >= w.len() && !represented {
                return fail(
                    "frequency implication",
                    format!("{:?} occurs {occ} times", String::from_utf8_lossy(w)),
                );
            }
            if !represented {
                let prefix = heap.depth(heap.longest_represented_prefix(w));
                if occ > prefix {
                    return fail(
                        "occurrence bound",
                        format!(
                            "{:?} occurs {occ} > {prefix} times",
                            String::from_utf8_lossy(w)
                        ),
                    );
                }
            }
        }
    }

    let h = h_oracle(text);
    if heap.height() > 2 * h {
        return fail("depth bound", format!("height {} > 2 * {h}", heap.height()));
    }
    Ok(())
}

/// Maximal-reach pointers against per-position root walks, and the
/// unary encoding identities.
pub fn check_mrp(index: &AugmentedHeap) -> Check {
    let heap = index.heap();
    let text = heap.text();
    let n = text.len();
    let fail = |check, detail: String| Err(Discrepancy::new(check, text, detail));

    let naive = naive_mrp(heap);
    for (i, &want) in naive.iter().enumerate().skip(1) {
        let got = index.mrp_node(i).unwrap();
        if got != want {
            return fail(
                "mrp vs naive walk",
                format!("position {i}: {got} vs {want}"),
            );
        }
        let stored = index.node_of(i).unwrap();
        if !index.is_ancestor(stored, got) {
            return fail("stored node above mrp", format!("position {i}"));
        }
        if i >= heap.active_position() && got != stored {
            return fail("secondary mrp", format!("position {i}"));
        }
    }

    let depths = index.mrp_depths();
    for i in 1..n {
        if depths[i] + 1 < depths[i - 1] {
            return fail("mrp chain inequality", format!("position {}", i + 1));
        }
    }
    let bits = index
        .encode_mrp()
        .map_err(|e| Discrepancy::new("mrp encoding", text, e.to_string()))?;
    if bits.bits().len() != 2 * n || bits.bits().count_ones() != n {
        return fail(
            "mrp bit count",
            format!(
                "{} bits, {} ones",
                bits.bits().len(),
                bits.bits().count_ones()
            ),
        );
    }
    for (i, &m) in depths.iter().enumerate() {
        if bits.depth(i + 1).unwrap() != m {
            return fail("mrp rank/select depth", format!("position {}", i + 1));
        }
    }
    Ok(())
}

fn walk_is_ancestor(heap: &PositionHeap, u: NodeId, v: NodeId) -> bool {
    let mut x = Some(v);
    while let Some(y) = x {
        if heap.depth(y) < heap.depth(u) {
            return false;
        }
        if y == u {
            return true;
        }
        x = heap.parent(y);
    }
    false
}

/// Interval, parenthesis and parent-chain ancestor tests on one pair.
pub fn check_ancestor_pair(index: &AugmentedHeap, u: NodeId, v: NodeId) -> Check {
    let walk = walk_is_ancestor(index.heap(), u, v);
    let intervals = index.is_ancestor(u, v);
    let parens = index.parens_is_ancestor(u, v);
    if walk != intervals || walk != parens {
        return Err(Discrepancy::new(
            "ancestor structures",
            index.text(),
            format!("({u}, {v}): walk {walk}, intervals {intervals}, parens {parens}"),
        ));
    }
    Ok(())
}

/// All node pairs.
pub fn check_ancestors(index: &AugmentedHeap) -> Check<u64> {
    let heap = index.heap();
    let parens = index.parens();
    for (v, node) in heap.nodes() {
        if parens.excess(parens.open_of(v)) != node.depth() as i64 + 1 {
            return Err(Discrepancy::new(
                "parenthesis excess",
                heap.text(),
                format!("node {v}"),
            ));
        }
    }
    let mut pairs = 0;
    for (u, _) in heap.nodes() {
        for (v, _) in heap.nodes() {
            check_ancestor_pair(index, u, v)?;
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// `count` random node pairs.
pub fn check_ancestors_sampled(index: &AugmentedHeap, count: usize, rng: &mut impl Rng) -> Check {
    let nodes = index.heap().node_count();
    for _ in 0..count {
        let u = NodeId::from_index(rng.gen_range(0..nodes));
        let v = NodeId::from_index(rng.gen_range(0..nodes));
        check_ancestor_pair(index, u, v)?;
        // Also exercise true ancestor pairs, which random pairs rarely hit.
        let mut w = v;
        for _ in 0..rng.gen_range(0..4) {
            w = index.heap().parent(w).unwrap_or(w);
        }
        check_ancestor_pair(index, w, v)?;
    }
    Ok(())
}

/// One query against the sliding-window matcher, with the occurrence
/// bound, the segment filter and the work bound.
pub fn check_search(matcher: &mut Matcher<'_>, index: &AugmentedHeap, pattern: &[Letter]) -> Check {
    let text = index.text();
    let fail =
        |check, detail: String| Err(Discrepancy::new(check, text, detail).with_pattern(pattern));

    let got = matcher
        .find_all(pattern)
        .map_err(|e| Discrepancy::new("search", text, e.to_string()).with_pattern(pattern))?;
    let want = find_all_naive(text, pattern).unwrap();
    if got != want {
        return fail(
            "find_all vs naive",
            format!("{:?} vs {:?}", got.positions(), want.positions()),
        );
    }
    let m = pattern.len() as u64;
    let occ = got.len() as u64;
    if matcher.last_steps() > WORK_CONSTANT * (m + occ) {
        return fail(
            "work bound",
            format!("{} steps for m={m}, occ={occ}", matcher.last_steps()),
        );
    }

    let d = decompose(index, pattern).unwrap();
    if d.complete && d.segments.len() >= 2 {
        let first = d.segments[0].len;
        if got.len() > first {
            return fail("occurrence bound", format!("{} > {first}", got.len()));
        }
        let mut offset = 0;
        for seg in &d.segments[..d.segments.len() - 1] {
            let tail = &pattern[offset..];
            for q in find_all_naive(text, tail).unwrap().into_vec() {
                if index.mrp_node(q).unwrap() != seg.node {
                    return fail(
                        "segment filter",
                        format!("tail at offset {offset}, position {q}"),
                    );
                }
            }
            offset += seg.len;
        }
    }
    Ok(())
}

/// Exhaustive and randomized suites driven by [`run`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Longest text in the exhaustive suite.
    pub max_n: usize,
    pub alphabet_size: usize,
    /// Longest pattern tried against each exhaustive text.
    pub max_pattern: usize,
    pub seed: u64,
    /// Random texts in the large suite.
    pub random_texts: usize,
    pub random_n: usize,
    pub patterns_per_text: usize,
    pub ancestor_pairs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 12,
            alphabet_size: 2,
            max_pattern: 6,
            seed: 0x5eed,
            random_texts: 20,
            random_n: 10_000,
            patterns_per_text: 100,
            ancestor_pairs: 10_000,
        }
    }
}

impl VerifyConfig {
    /// Multiplies the randomized suite sizes by the value of
    /// [`SCALE_ENV`], if set.
    pub fn scaled_from_env(mut self) -> Self {
        if let Some(scale) = std::env::var(SCALE_ENV)
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
        {
            let apply = |x: usize| (x as f64 * scale).round() as usize;
            self.random_texts = apply(self.random_texts);
            self.patterns_per_text = apply(self.patterns_per_text);
            self.ancestor_pairs = apply(self.ancestor_pairs);
        }
        self
    }
}

/// Full per-text check used by both suites.
pub fn check_text(
    text: &[Letter],
    patterns: &[Vec<Letter>],
    exhaustive: bool,
    report: &mut Report,
) -> Check<AugmentedHeap> {
    let heap = check_construction(text)?;
    report.add("construction", 1);
    if exhaustive {
        check_heap_properties(&heap)?;
        report.add("heap properties", 1);
    }
    let index = AugmentedHeap::new(heap).expect("finalized");
    check_mrp(&index)?;
    report.add("maximal reach", 1);
    if exhaustive {
        let pairs = check_ancestors(&index)?;
        report.add("ancestor pairs", pairs);
    }
    let mut matcher = Matcher::new(&index);
    for p in patterns {
        check_search(&mut matcher, &index, p)?;
    }
    report.add("queries", patterns.len() as u64);
    Ok(index)
}

/// Random text over the first `sigma` letters.
pub fn random_text(rng: &mut impl Rng, sigma: usize, n: usize) -> Vec<Letter> {
    let letters = alphabet(sigma);
    (0..n).map(|_| letters[rng.gen_range(0..sigma)]).collect()
}

/// Patterns for a random text: substrings of it (so most have
/// occurrences) mixed with random strings.
pub fn random_patterns(
    rng: &mut impl Rng,
    text: &[Letter],
    sigma: usize,
    count: usize,
) -> Vec<Vec<Letter>> {
    (0..count)
        .map(|k| {
            if k % 2 == 0 && !text.is_empty() {
                let len = rng.gen_range(1..=text.len().min(40));
                let start = rng.gen_range(0..=text.len() - len);
                text[start..start + len].to_vec()
            } else {
                let len = rng.gen_range(1..=12);
                random_text(rng, sigma, len)
            }
        })
        .collect()
}

/// Runs the exhaustive suite over every string up to `max_n`, then the
/// randomized suite. Stops at the first discrepancy.
pub fn run(config: &VerifyConfig) -> Result<Report, Discrepancy> {
    let mut report = Report::default();
    let letters = alphabet(config.alphabet_size.clamp(1, 26));
    let patterns: Vec<Vec<Letter>> = all_strings(&letters, config.max_pattern.min(config.max_n))
        .filter(|p| !p.is_empty())
        .collect();
    for text in all_strings(&letters, config.max_n) {
        check_text(&text, &patterns, true, &mut report)?;
    }

    let sigma = config.alphabet_size.clamp(1, 26);
    for t in 0..config.random_texts {
        let seed = config.seed.wrapping_add(t as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = random_text(&mut rng, sigma, config.random_n);
        let patterns = random_patterns(&mut rng, &text, sigma, config.patterns_per_text);
        let with_seed = |mut d: Discrepancy| {
            d.seed = Some(seed);
            d
        };
        let index = check_text(&text, &patterns, false, &mut report).map_err(with_seed)?;
        check_ancestors_sampled(&index, config.ancestor_pairs, &mut rng).map_err(with_seed)?;
        report.add("ancestor pairs", 2 * config.ancestor_pairs as u64);
    }
    Ok(report)
}
