use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use permrep_core::acceptance::{self, Status};
use permrep_core::bookgraph::{book_numbers, BookSpec, PrimeStyle};
use permrep_core::graphcore::generators::{cycle, path, path_tokens};
use permrep_core::graphcore::io::{format_graph, parse_graph, parse_word};
use permrep_core::graphcore::{derive_graph, represents, Graph, PermSequence, VertexToken, Word};
use permrep_core::oracle::{self, SearchBounds, SearchOutcome, Witness, BOUNDS_ENV};
use permrep_core::pathcycle::{cycle_prn, path_permutations};
use permrep_core::treebuilder::{default_root, root_and_label, tree_permutations, tree_prn_value};
use permrep_core::Error;

#[derive(Parser)]
#[command(name = "permrep", version, about = "Permutational word representations of graphs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Search bound overrides, e.g. `perm2=7,circle=8`.
    #[arg(long, global = true, env = BOUNDS_ENV, value_name = "KEY=N,...")]
    bounds: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file in edge-list text format or JSON; `-` reads standard input.
    #[arg(long, short = 'g', alias = "edges")]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Three permutations representing a tree.
    Tree {
        #[command(flatten)]
        input: GraphArg,
        /// Root vertex; defaults to the smallest token.
        #[arg(long)]
        root: Option<String>,
    },
    /// Permutations representing the path a1 .. an.
    Path { n: usize },
    /// Permutations representing the even cycle a1 .. an.
    Cycle { n: usize },
    /// The book graph with m pages and its three-permutation word.
    Book {
        m: usize,
        /// Spell primed vertices with `_p` instead of an apostrophe.
        #[arg(long)]
        suffix: bool,
        /// Also write the graph in edge-list format to this file.
        #[arg(long, value_name = "FILE")]
        graph_out: Option<PathBuf>,
    },
    /// Check whether a word represents a graph.
    Verify {
        /// The word, or a file holding it.
        #[arg(long, short = 'w')]
        word: String,
        #[command(flatten)]
        input: GraphArg,
    },
    /// The graph a word represents.
    Derive {
        /// The word, or a file holding it.
        #[arg(long, short = 'w')]
        word: String,
    },
    /// Exhaustive search for k permutations representing a graph.
    Search {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, short = 'k', default_value_t = 2)]
        k: usize,
        /// Fix the first permutation and match against relabelings instead.
        #[arg(long)]
        canonical: bool,
    },
    /// Exhaustive search for a chord diagram realizing a graph.
    Circle {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Local complement of a graph at a vertex.
    Lc {
        #[command(flatten)]
        input: GraphArg,
        #[arg(long, short = 'v')]
        vertex: String,
    },
    /// Exhaustive search for a transitive orientation.
    Comparability {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Checks whether a small circle comparability graph has at most three permutations.
    Probe {
        #[command(flatten)]
        input: GraphArg,
    },
    /// Runs the bundled acceptance suite.
    Selftest {
        /// Skip the two long exhaustive searches.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = acceptance::DEFAULT_SEED)]
        seed: u64,
        /// Directory of golden files to use instead of the built-in copies.
        #[arg(long, value_name = "DIR")]
        fixtures: Option<PathBuf>,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// What went wrong, mapped to an exit code.
enum Failure {
    /// Bad input or usage: exit 1.
    Input(String),
    /// A produced word failed its certificate: exit 2.
    Certificate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificateFailed(_) => Failure::Certificate(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(arg: &GraphArg) -> Result<Graph, Failure> {
    let text = read_source(&arg.graph)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", arg.graph.display())))
    } else {
        parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", arg.graph.display())))
    }
}

/// A word given inline, or the contents of the file it names.
fn load_word(arg: &str) -> Result<Word, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() { read_source(path)? } else { arg.to_string() };
    Ok(parse_word(&text)?)
}

fn token(s: &str) -> Result<VertexToken, Failure> {
    Ok(VertexToken::new(s)?)
}

/// Writes to standard output, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().write_all(text.as_bytes());
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn perm_strings(seq: &PermSequence) -> Vec<String> {
    seq.perms().iter().map(Word::to_string).collect()
}

fn perm_lines(seq: &PermSequence) -> String {
    seq.perms().iter().enumerate().map(|(i, p)| format!("p{}: {p}\n", i + 1)).collect()
}

/// Edge lines, then isolated vertices on lines of their own.
fn edge_lines(g: &Graph) -> String {
    let mut out: String = g.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect();
    for v in g.vertices() {
        if g.degree(v) == 0 {
            out.push_str(&format!("{v}\n"));
        }
    }
    out
}

fn certify(seq: &PermSequence, g: &Graph) -> Result<(), Failure> {
    if !represents(&seq.word(), g)? {
        return Err(Failure::Certificate(format!("{} does not represent the graph", seq.word())));
    }
    Ok(())
}

fn sequence_report(json: bool, seq: &PermSequence, prn: usize) -> String {
    if json {
        to_json(&json!({ "permutations": perm_strings(seq), "word": seq.word(), "prn": prn }))
    } else {
        format!("{}word: {}\nprn: {prn}\n", perm_lines(seq), seq.word())
    }
}

fn outcome_report(json: bool, out: &SearchOutcome) -> String {
    if json {
        return to_json(out);
    }
    let witness = match &out.witness {
        None => "none\n".to_string(),
        Some(Witness::Perms(p)) => format!("\n{}", perm_lines(p)),
        Some(Witness::Graph(g)) => format!("\n{}", edge_lines(g)),
        Some(other) => format!("{}\n", serde_json::to_string(other).expect("serializable")),
    };
    format!(
        "found: {}\nwitness: {witness}states_examined: {}\nelapsed_ms: {}\n",
        out.found, out.states_examined, out.elapsed_ms
    )
}

fn run(cli: Cli) -> Outcome {
    let bounds = match &cli.bounds {
        Some(spec) => SearchBounds::default().parse_overrides(spec)?,
        None => SearchBounds::default(),
    };
    let json = cli.json;
    match cli.command {
        Command::Tree { input, root } => {
            let g = load_graph(&input)?;
            let root = match root {
                Some(r) => token(&r)?,
                None => default_root(&g).cloned().ok_or_else(|| Failure::Input("the graph has no vertices".into()))?,
            };
            let seq = tree_permutations(&root_and_label(&g, &root)?)?;
            certify(&seq, &g)?;
            let prn = tree_prn_value(&g, &bounds)?;
            let [p1, p2, p3] = [0, 1, 2].map(|i| seq.perms()[i].to_string());
            if json {
                Ok(to_json(&json!({ "p1": p1, "p2": p2, "p3": p3, "word": seq.word(), "prn": prn })))
            } else {
                Ok(format!("{}word: {}\nprn: {prn}\n", perm_lines(&seq), seq.word()))
            }
        }
        Command::Path { n } => {
            let (seq, prn) = match n {
                0 => return Err(Failure::Input("a path needs at least one vertex".into())),
                1 | 2 => (PermSequence::new(vec![Word::new(path_tokens(n))])?, 1),
                _ => (path_permutations(n)?, 2),
            };
            certify(&seq, &path(n))?;
            Ok(sequence_report(json, &seq, prn))
        }
        Command::Cycle { n } => {
            let result = cycle_prn(n, &bounds)?;
            certify(&result.witness, &cycle(n))?;
            Ok(sequence_report(json, &result.witness, result.prn))
        }
        Command::Book { m, suffix, graph_out } => {
            let style = if suffix { PrimeStyle::Suffix } else { PrimeStyle::Apostrophe };
            let spec = BookSpec::with_style(m, style)?;
            let g = spec.graph();
            let seq = spec.permutations()?;
            certify(&seq, &g)?;
            let numbers = book_numbers(&spec, &bounds)?;
            certify(&numbers.witness, &g)?;
            if let Some(path) = graph_out {
                fs::write(&path, format_graph(&g)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            if json {
                Ok(to_json(&json!({
                    "graph": g,
                    "permutations": perm_strings(&seq),
                    "word": seq.word(),
                    "representation_number": numbers.representation_number,
                    "prn": numbers.prn,
                    "witness": perm_strings(&numbers.witness),
                })))
            } else {
                Ok(format!(
                    "{}word: {}\nrepresentation_number: {}\nprn: {}\n",
                    perm_lines(&seq),
                    seq.word(),
                    numbers.representation_number,
                    numbers.prn
                ))
            }
        }
        Command::Verify { word, input } => {
            let w = load_word(&word)?;
            let g = load_graph(&input)?;
            let ok = represents(&w, &g)?;
            let text = if json { to_json(&json!({ "represents": ok })) } else { format!("represents: {ok}\n") };
            if ok {
                Ok(text)
            } else {
                emit(&text);
                Err(Failure::Certificate(format!("{w} does not represent the graph")))
            }
        }
        Command::Derive { word } => {
            let g = derive_graph(&load_word(&word)?)?;
            Ok(if json { to_json(&g) } else { edge_lines(&g) })
        }
        Command::Search { input, k, canonical } => {
            let g = load_graph(&input)?;
            let out = if canonical {
                oracle::prn_search_canonical(&g, k, &bounds)?
            } else {
                oracle::prn_search(&g, k, &bounds)?
            };
            Ok(outcome_report(json, &out))
        }
        Command::Circle { input } => Ok(outcome_report(json, &oracle::circle_search(&load_graph(&input)?, &bounds)?)),
        Command::Comparability { input } => {
            Ok(outcome_report(json, &oracle::is_comparability_small(&load_graph(&input)?, &bounds)?))
        }
        Command::Lc { input, vertex } => {
            let g = oracle::local_complement(&load_graph(&input)?, &token(&vertex)?)?;
            Ok(if json { to_json(&g) } else { format_graph(&g) })
        }
        Command::Probe { input } => {
            let report = oracle::conjecture_probe(&load_graph(&input)?, &bounds)?;
            if json {
                return Ok(to_json(&report));
            }
            let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            let mut text = format!(
                "verdict: {:?}\nreason: {}\ncircle: {}\ncomparability: {}\nprn: {}\n",
                report.verdict,
                report.reason,
                show(report.circle),
                show(report.comparability),
                report.prn.map_or("-".to_string(), |p| p.to_string())
            );
            if let Some(w) = &report.witness {
                text.push_str(&perm_lines(w));
            }
            Ok(text)
        }
        Command::Selftest { quick, seed, fixtures, only } => {
            let opts = acceptance::Options { quick, seed, fixtures };
            let ids: Vec<u8> = if only.is_empty() { acceptance::criterion_ids().collect() } else { only };
            let mut results = Vec::new();
            for id in ids {
                let r = acceptance::run_one(id, &opts).ok_or_else(|| Failure::Input(format!("no criterion {id}")))?;
                if !json {
                    emit(&format!("{r}\n"));
                }
                results.push(r);
            }
            let failed = results.iter().filter(|r| r.status == Status::Fail).count();
            if json {
                let rows: Vec<Value> = results
                    .iter()
                    .map(|r| {
                        json!({
                            "id": r.id,
                            "name": r.name,
                            "status": format!("{:?}", r.status).to_lowercase(),
                            "detail": r.detail,
                            "elapsed_ms": r.elapsed.as_millis(),
                        })
                    })
                    .collect();
                emit(&format!("{}\n", to_json(&rows)));
            }
            if failed > 0 {
                Err(Failure::Certificate(format!("{failed} criteria failed")))
            } else {
                Ok(if json { String::new() } else { format!("all {} criteria passed or skipped\n", results.len()) })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(text) => {
            emit(&text);
            if !text.is_empty() && !text.ends_with('\n') {
                emit("\n");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Certificate(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
