//! The bundled acceptance suite. Each criterion is a self-contained check
//! that reports a pass, a failure with a reason, or a skip.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bookgraph::{book, book_permutations};
use crate::graphcore::generators::{cycle, free_trees, path, path_tokens, spider_s, star};
use crate::graphcore::io::{parse_graph, parse_words};
use crate::graphcore::{derive_graph, represents, tok, uniformity, Graph, VertexToken, Word};
use crate::oracle::{chord_intersection_graph, circle_search, local_complement, prn_search, ChordDiagram, SearchBounds};
use crate::pathcycle::{cycle_permutations, path_closed_form, path_permutations};
use crate::treebuilder::{root_and_label, tree_permutations};

pub const DEFAULT_SEED: u64 = 20_240_601;

const EMBEDDED: [(&str, &str); 5] = [
    ("demo_tree.graph", include_str!("../fixtures/demo_tree.graph")),
    ("demo_tree.perms", include_str!("../fixtures/demo_tree.perms")),
    ("spider.graph", include_str!("../fixtures/spider.graph")),
    ("spider.word", include_str!("../fixtures/spider.word")),
    ("local_complement.graph", include_str!("../fixtures/local_complement.graph")),
];

#[derive(Clone, Debug)]
pub struct Options {
    /// Skip the two long exhaustive searches (criteria 3 and 6).
    pub quick: bool,
    /// Seed for the random words of criterion 9.
    pub seed: u64,
    /// Read golden files from this directory instead of the embedded copies.
    pub fixtures: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Options { quick: false, seed: DEFAULT_SEED, fixtures: None }
    }
}

impl Options {
    fn fixture(&self, name: &str) -> Result<String, String> {
        match &self.fixtures {
            Some(dir) => {
                let path = dir.join(name);
                fs::read_to_string(&path).map_err(|e| format!("cannot read fixture {}: {e}", path.display()))
            }
            None => Ok(EMBEDDED.iter().find(|(n, _)| *n == name).expect("known fixture").1.to_string()),
        }
    }

    fn fixture_graph(&self, name: &str) -> Result<Graph, String> {
        parse_graph(&self.fixture(name)?).map_err(|e| format!("fixture {name}: {e}"))
    }

    fn fixture_words(&self, name: &str) -> Result<Vec<Word>, String> {
        parse_words(&self.fixture(name)?).map_err(|e| format!("fixture {name}: {e}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(f, "[{tag}] {} {} ({:.2?}): {}", self.id, self.name, self.elapsed, self.detail)
    }
}

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    long: bool,
    run: fn(&Options) -> Check,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, name: "demo tree golden permutations", limit: Duration::from_secs(1), long: false, run: demo_tree_golden },
    Criterion { id: 2, name: "all free trees up to 10 vertices", limit: Duration::from_secs(120), long: false, run: all_small_trees },
    Criterion { id: 3, name: "spider word and two-permutation exhaustion", limit: Duration::from_secs(300), long: true, run: spider },
    Criterion { id: 4, name: "path closed forms", limit: Duration::from_secs(1), long: false, run: paths },
    Criterion { id: 5, name: "even cycles", limit: Duration::from_secs(30), long: false, run: even_cycles },
    Criterion { id: 6, name: "book graphs and chord-diagram exhaustion", limit: Duration::from_secs(300), long: true, run: books },
    Criterion { id: 7, name: "local complement golden edge set", limit: Duration::from_secs(1), long: false, run: local_complement_golden },
    Criterion { id: 8, name: "tree construction scaling", limit: Duration::from_secs(60), long: false, run: scaling },
    Criterion { id: 9, name: "random 2-uniform words vs chord diagrams", limit: Duration::from_secs(5), long: false, run: chord_cross_check },
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.id)
}

/// Runs one criterion; `None` for an unknown id.
pub fn run_one(id: u8, opts: &Options) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    if opts.quick && c.long {
        return Some(CriterionResult {
            id,
            name: c.name,
            status: Status::Skipped,
            detail: "skipped in quick mode".into(),
            elapsed: Duration::ZERO,
        });
    }
    let started = Instant::now();
    let outcome = (c.run)(opts);
    let elapsed = started.elapsed();
    let (status, detail) = match outcome {
        Ok(_) if elapsed > c.limit => (Status::Fail, format!("took longer than {:?}", c.limit)),
        Ok(detail) => (Status::Pass, detail),
        Err(detail) => (Status::Fail, detail),
    };
    Some(CriterionResult { id, name: c.name, status, detail, elapsed })
}

pub fn run_all(opts: &Options) -> Vec<CriterionResult> {
    criterion_ids().filter_map(|id| run_one(id, opts)).collect()
}

fn demo_tree_golden(opts: &Options) -> Check {
    let g = opts.fixture_graph("demo_tree.graph")?;
    let expected = opts.fixture_words("demo_tree.perms")?;
    ensure!(expected.len() == 3, "expected three permutations in the golden file, found {}", expected.len());
    let t = ok(root_and_label(&g, &tok("1")))?;
    let seq = ok(tree_permutations(&t))?;
    for (i, (got, want)) in seq.perms().iter().zip(&expected).enumerate() {
        ensure!(got == want, "p{} is {got}, expected {want}", i + 1);
    }
    ensure!(ok(represents(&seq.word(), &g))?, "the word does not represent the tree");
    Ok(format!("p1 = {}", seq.perms()[0]))
}

fn all_small_trees(_: &Options) -> Check {
    let mut words = 0;
    let mut at_ten = 0;
    for n in 1..=10 {
        let trees = free_trees(n);
        if n == 10 {
            at_ten = trees.len();
        }
        for g in &trees {
            for root in g.vertices() {
                let seq = ok(tree_permutations(&ok(root_and_label(g, root))?))?;
                let w = seq.word();
                ensure!(ok(represents(&w, g))?, "root {root}: {w} does not represent {:?}", g.edges());
                ensure!(uniformity(&w) == Some(3), "root {root}: {w} is not 3-uniform");
                words += 1;
            }
        }
    }
    ensure!(at_ten == 106, "found {at_ten} trees on 10 vertices, expected 106");
    Ok(format!("{words} rooted trees checked, 106 trees on 10 vertices"))
}

fn spider(opts: &Options) -> Check {
    let g = opts.fixture_graph("spider.graph")?;
    ensure!(g == spider_s(), "fixture graph differs from the built-in spider");
    let words = opts.fixture_words("spider.word")?;
    ensure!(words.len() == 1, "expected one word in the fixture");
    ensure!(ok(represents(&words[0], &g))?, "the fixture word does not represent the spider");
    let outcome = ok(prn_search(&g, 2, &SearchBounds::default()))?;
    ensure!(!outcome.found, "found a two-permutation word: {:?}", outcome.witness);
    ensure!(outcome.states_examined == 25_401_600, "examined {} pairs", outcome.states_examined);
    Ok(format!("no two-permutation word among {} pairs", outcome.states_examined))
}

fn paths(_: &Options) -> Check {
    for n in 3..=14 {
        let built = ok(path_permutations(n))?;
        let closed = ok(path_closed_form(&path_tokens(n)))?;
        ensure!(built == closed, "n = {n}: built {} but closed form is {}", built.word(), closed.word());
        ensure!(ok(represents(&built.word(), &path(n)))?, "n = {n}: word does not represent the path");
    }
    Ok("3 <= n <= 14".into())
}

fn even_cycles(_: &Options) -> Check {
    for n in (6..=14).step_by(2) {
        let w = ok(cycle_permutations(n))?.word();
        ensure!(ok(represents(&w, &cycle(n)))?, "n = {n}: {w} does not represent the cycle");
    }
    let outcome = ok(prn_search(&cycle(6), 2, &SearchBounds::default()))?;
    ensure!(!outcome.found, "found a two-permutation word for the 6-cycle");
    ensure!(outcome.states_examined == 518_400, "examined {} pairs", outcome.states_examined);
    Ok(format!("even 6 <= n <= 14 represented; 6-cycle exhausted over {} pairs", outcome.states_examined))
}

fn books(_: &Options) -> Check {
    for m in 1..=12 {
        let w = ok(book_permutations(m))?.word();
        ensure!(ok(represents(&w, &ok(book(m))?))?, "m = {m}: {w} does not represent the book");
    }
    let outcome = ok(circle_search(&ok(book(3))?, &SearchBounds::default()))?;
    ensure!(!outcome.found, "found a chord diagram for the three-page book: {:?}", outcome.witness);
    ensure!(outcome.states_examined == 2_027_025, "examined {} diagrams", outcome.states_examined);
    Ok(format!("1 <= m <= 12 represented; no chord diagram among {}", outcome.states_examined))
}

/// The three-page book as drawn with 1 and 5 on the spine.
pub fn drawn_three_page_book() -> Graph {
    let pairs = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (5, 6), (5, 7), (5, 8)];
    Graph::from_edges(pairs.map(|(a, b)| (VertexToken::from(a), VertexToken::from(b)))).expect("simple graph")
}

fn local_complement_golden(opts: &Options) -> Check {
    let expected = opts.fixture_graph("local_complement.graph")?;
    let b3 = drawn_three_page_book();
    let pivot = tok("1");
    let lc = ok(local_complement(&b3, &pivot))?;
    let missing: Vec<_> = expected.edges().difference(lc.edges()).collect();
    let extra: Vec<_> = lc.edges().difference(expected.edges()).collect();
    ensure!(lc == expected, "missing edges {missing:?}, unexpected edges {extra:?}");
    ensure!(ok(local_complement(&lc, &pivot))? == b3, "complementing twice does not restore the book");
    Ok(format!("{} edges match", lc.edge_count()))
}

fn time_tree(g: &Graph, root: &VertexToken) -> Result<Duration, String> {
    let started = Instant::now();
    let t = ok(root_and_label(g, root))?;
    ok(tree_permutations(&t))?;
    Ok(started.elapsed())
}

fn best_of(runs: usize, g: &Graph, root: &VertexToken) -> Result<Duration, String> {
    let mut best = Duration::MAX;
    for _ in 0..runs {
        best = best.min(time_tree(g, root)?);
    }
    Ok(best)
}

fn scaling(_: &Options) -> Check {
    let limit = Duration::from_secs(10);
    let big_path = time_tree(&path(10_000), &tok("a1"))?;
    ensure!(big_path <= limit, "10,000-vertex path took {big_path:?}");
    let big_star = time_tree(&star(10_000), &tok("0"))?;
    ensure!(big_star <= limit, "10,000-leaf star took {big_star:?}");
    let mut ratios = Vec::new();
    for (name, small, large, root) in [
        ("path", path(2_500), path(5_000), tok("a1")),
        ("star", star(2_499), star(4_999), tok("0")),
    ] {
        let ratio = best_of(5, &large, &root)?.as_secs_f64() / best_of(5, &small, &root)?.as_secs_f64();
        ensure!(ratio <= 5.0, "{name}: doubling n multiplied the runtime by {ratio:.2}");
        ratios.push(format!("{name} x{ratio:.2}"));
    }
    Ok(format!("path {big_path:.2?}, star {big_star:.2?}; doubling {}", ratios.join(", ")))
}

/// A 2-uniform word on `1..=7` random letters, seeded.
pub fn random_two_uniform_word<R: Rng>(rng: &mut R) -> Word {
    let n = rng.gen_range(1..=7);
    let mut letters: Vec<usize> = (1..=n).chain(1..=n).collect();
    letters.shuffle(rng);
    letters.into_iter().map(VertexToken::from).collect()
}

fn chord_cross_check(opts: &Options) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..500 {
        let w = random_two_uniform_word(&mut rng);
        let diagram = ok(ChordDiagram::from_two_uniform_word(&w))?;
        ensure!(ok(derive_graph(&w))? == chord_intersection_graph(&diagram), "disagreement on {w}");
    }
    Ok(format!("500 words agree (seed {})", opts.seed))
}
