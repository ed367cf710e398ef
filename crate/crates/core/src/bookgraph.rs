//! Cartesian products, book graphs and their three-permutation words.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphcore::generators::star;
use crate::graphcore::{certify_perm_sequence, Graph, PermSequence, VertexToken, Word};
use crate::oracle::{self, SearchBounds};

/// A vertex of a product graph. Renders as `(a,b)` with `\`, `,`, `(` and
/// `)` inside the coordinates backslash-escaped, so distinct pairs always
/// render to distinct tokens.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductVertex(pub VertexToken, pub VertexToken);

fn escape(s: &str, out: &mut String) {
    for c in s.chars() {
        if matches!(c, '\\' | ',' | '(' | ')') {
            out.push('\\');
        }
        out.push(c);
    }
}

impl ProductVertex {
    pub fn token(&self) -> VertexToken {
        VertexToken::new(self.to_string()).expect("coordinates contain no whitespace")
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("(");
        escape(self.0.as_str(), &mut s);
        s.push(',');
        escape(self.1.as_str(), &mut s);
        s.push(')');
        f.write_str(&s)
    }
}

/// `g □ h`: pairs are adjacent when they agree in one coordinate and are
/// adjacent in the other.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let pair = |a: &VertexToken, b: &VertexToken| ProductVertex(a.clone(), b.clone()).token();
    let mut out = Graph::new();
    for a in g.vertices() {
        for b in h.vertices() {
            out.add_vertex(pair(a, b));
        }
    }
    for a in g.vertices() {
        for (b, d) in h.edges() {
            out.add_edge(pair(a, b), pair(a, d)).expect("distinct pairs");
        }
    }
    for b in h.vertices() {
        for (a, c) in g.edges() {
            out.add_edge(pair(a, b), pair(c, b)).expect("distinct pairs");
        }
    }
    out
}

/// How the primed copy of a book vertex is spelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PrimeStyle {
    /// `3'`
    #[default]
    Apostrophe,
    /// `3_p`, for consumers that dislike quotes.
    Suffix,
}

impl PrimeStyle {
    pub fn suffix(self) -> &'static str {
        match self {
            PrimeStyle::Apostrophe => "'",
            PrimeStyle::Suffix => "_p",
        }
    }
}

/// Token naming for `B_m`: spine `0` and `0'`, pages `1..m` and `1'..m'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BookSpec {
    pub m: usize,
    pub style: PrimeStyle,
}

impl BookSpec {
    pub fn new(m: usize) -> Result<Self> {
        Self::with_style(m, PrimeStyle::default())
    }

    pub fn with_style(m: usize, style: PrimeStyle) -> Result<Self> {
        if m < 1 {
            return Err(invalid("a book graph needs at least one page"));
        }
        Ok(BookSpec { m, style })
    }

    pub fn plain(&self, i: usize) -> VertexToken {
        VertexToken::from(i)
    }

    pub fn primed(&self, i: usize) -> VertexToken {
        VertexToken::new(format!("{i}{}", self.style.suffix())).expect("no whitespace")
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for i in 1..=self.m {
            g.add_edge(self.plain(0), self.plain(i)).unwrap();
            g.add_edge(self.primed(0), self.primed(i)).unwrap();
        }
        for i in 0..=self.m {
            g.add_edge(self.plain(i), self.primed(i)).unwrap();
        }
        g
    }

    /// `q1, q2, q3`:
    /// `q1 = 0' 1 1' 2 2' .. m m' 0`,
    /// `q2 = 0' m m' .. 1 1' 0`,
    /// `q3 = 1 2 .. m 0' 0 m' .. 1'`.
    pub fn permutations(&self) -> Result<PermSequence> {
        let m = self.m;
        let pages_up = |out: &mut Vec<VertexToken>, order: &mut dyn Iterator<Item = usize>| {
            for i in order {
                out.push(self.plain(i));
                out.push(self.primed(i));
            }
        };
        let mut q1 = vec![self.primed(0)];
        pages_up(&mut q1, &mut (1..=m));
        q1.push(self.plain(0));
        let mut q2 = vec![self.primed(0)];
        pages_up(&mut q2, &mut (1..=m).rev());
        q2.push(self.plain(0));
        let mut q3: Vec<VertexToken> = (1..=m).map(|i| self.plain(i)).collect();
        q3.push(self.primed(0));
        q3.push(self.plain(0));
        q3.extend((1..=m).rev().map(|i| self.primed(i)));
        let seq = PermSequence::new(vec![Word::new(q1), Word::new(q2), Word::new(q3)])?;
        if !certify_perm_sequence(&seq, &self.graph())? {
            return Err(Error::CertificateFailed(format!("book word {} does not represent the book", seq.word())));
        }
        Ok(seq)
    }
}

/// `B_m` with apostrophe primes.
pub fn book(m: usize) -> Result<Graph> {
    Ok(BookSpec::new(m)?.graph())
}

/// The certified three-permutation word for `B_m`.
pub fn book_permutations(m: usize) -> Result<PermSequence> {
    BookSpec::new(m)?.permutations()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BookNumbers {
    pub representation_number: usize,
    pub prn: usize,
    pub witness: PermSequence,
}

/// Representation number and permutation-representation number of `B_m`.
/// One and two pages give 2 and 2 with a searched two-permutation witness;
/// three or more pages give 3 and 3 with the `q1 q2 q3` witness.
pub fn book_numbers(spec: &BookSpec, bounds: &SearchBounds) -> Result<BookNumbers> {
    if spec.m <= 2 {
        let outcome = oracle::prn_search(&spec.graph(), 2, bounds)?;
        let witness = outcome
            .perms()
            .cloned()
            .ok_or_else(|| Error::CertificateFailed(format!("no two-permutation word for B{}", spec.m)))?;
        return Ok(BookNumbers { representation_number: 2, prn: 2, witness });
    }
    Ok(BookNumbers { representation_number: 3, prn: 3, witness: spec.permutations()? })
}

/// `K_{1,m} □ K_2`, the product form of the book graph.
pub fn book_as_product(m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(invalid("a book graph needs at least one page"));
    }
    let k2 = Graph::from_edges([(VertexToken::from(0), VertexToken::from(1))])?;
    Ok(cartesian_product(&star(m), &k2))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use rand::SeedableRng;

    use super::*;
    use crate::graphcore::generators::{cycle, random_graph};
    use crate::graphcore::{alternates, represents, restrict, tok, uniformity};

    fn bounds() -> SearchBounds {
        SearchBounds { iso_vertices: 32, ..SearchBounds::default() }
    }

    fn k2() -> Graph {
        Graph::from_edges([(tok("0"), tok("1"))]).unwrap()
    }

    fn ladder() -> Graph {
        let pairs = [("u1", "u2"), ("u2", "u3"), ("v1", "v2"), ("v2", "v3"), ("u1", "v1"), ("u2", "v2"), ("u3", "v3")];
        Graph::from_edges(pairs.map(|(a, b)| (tok(a), tok(b)))).unwrap()
    }

    #[test]
    fn product_rendering_is_injective() {
        let a = ProductVertex(tok("x,y"), tok("z"));
        let b = ProductVertex(tok("x"), tok("y,z"));
        assert_ne!(a.token(), b.token());
        assert_eq!(ProductVertex(tok("1"), tok("0'")).to_string(), "(1,0')");
    }

    #[test]
    fn square_of_an_edge_is_a_four_cycle() {
        let g = cartesian_product(&k2(), &k2());
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert!(oracle::isomorphic(&g, &cycle(4), &bounds()).unwrap().is_some());
    }

    #[test]
    fn product_degrees_add() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_graph(4, 0.5, &mut rng);
            let h = random_graph(3, 0.5, &mut rng);
            let p = cartesian_product(&g, &h);
            for a in g.vertices() {
                for b in h.vertices() {
                    let v = ProductVertex(a.clone(), b.clone()).token();
                    assert_eq!(p.degree(&v), g.degree(a) + h.degree(b));
                }
            }
        }
    }

    #[test]
    fn small_books() {
        let b1 = book(1).unwrap();
        assert!(oracle::isomorphic(&b1, &cycle(4), &bounds()).unwrap().is_some());
        assert!(b1.contains(&tok("0'")) && b1.contains(&tok("1'")));
        assert!(oracle::isomorphic(&book(2).unwrap(), &ladder(), &bounds()).unwrap().is_some());
        let b3 = book(3).unwrap();
        assert_eq!((b3.vertex_count(), b3.edge_count()), (8, 10));
        assert!(book(0).is_err());
    }

    #[test]
    fn book_matches_drawn_labeling() {
        let drawn = Graph::from_edges(
            [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 7), (4, 8), (5, 6), (5, 7), (5, 8)]
                .map(|(a, b)| (VertexToken::from(a), VertexToken::from(b))),
        )
        .unwrap();
        let rename = |v: &VertexToken| {
            tok(match v.as_str() {
                "1" => "0",
                "5" => "0'",
                "2" => "1",
                "3" => "2",
                "4" => "3",
                "6" => "1'",
                "7" => "2'",
                "8" => "3'",
                other => other,
            })
        };
        assert_eq!(drawn.relabel(rename).unwrap(), book(3).unwrap());
    }

    #[test]
    fn book_is_star_times_edge() {
        for m in 1..=10 {
            let iso = oracle::isomorphic(&book(m).unwrap(), &book_as_product(m).unwrap(), &bounds()).unwrap();
            assert!(iso.is_some(), "m = {m}");
        }
    }

    #[test]
    fn three_pages() {
        let words: Vec<String> = book_permutations(3).unwrap().perms().iter().map(Word::to_string).collect();
        assert_eq!(words, ["0' 1 1' 2 2' 3 3' 0", "0' 3 3' 2 2' 1 1' 0", "1 2 3 0' 0 3' 2' 1'"]);
        let one: Vec<String> = book_permutations(1).unwrap().perms().iter().map(Word::to_string).collect();
        assert_eq!(one, ["0' 1 1' 0", "0' 1 1' 0", "1 0' 0 1'"]);
        assert!(represents(&book_permutations(1).unwrap().word(), &cycle(4).relabel(|v| {
            tok(match v.as_str() { "a1" => "0", "a2" => "1", "a3" => "1'", _ => "0'" })
        }).unwrap()).unwrap());
    }

    #[test]
    fn book_words_represent() {
        for m in 1..=12 {
            let w = book_permutations(m).unwrap().word();
            assert!(represents(&w, &book(m).unwrap()).unwrap(), "m = {m}");
            assert_eq!(uniformity(&w), Some(3));
        }
    }

    #[test]
    fn rungs_are_the_only_cross_alternations() {
        for m in 1..=12 {
            let spec = BookSpec::new(m).unwrap();
            let w = spec.permutations().unwrap().word();
            for i in 0..=m {
                for j in 0..=m {
                    assert_eq!(alternates(&w, &spec.plain(i), &spec.primed(j)).unwrap(), i == j);
                }
            }
        }
    }

    #[test]
    fn outer_permutations_are_shuffles_of_star_words() {
        for m in 1..=8 {
            let spec = BookSpec::new(m).unwrap();
            let seq = spec.permutations().unwrap();
            let plain: BTreeSet<VertexToken> = (0..=m).map(|i| spec.plain(i)).collect();
            let primed: BTreeSet<VertexToken> = (0..=m).map(|i| spec.primed(i)).collect();
            let join = |v: Vec<VertexToken>| Word::new(v).to_string();
            let up = |f: &dyn Fn(usize) -> VertexToken| (1..=m).map(f).collect::<Vec<_>>();
            let down = |f: &dyn Fn(usize) -> VertexToken| (1..=m).rev().map(f).collect::<Vec<_>>();
            // p1 = 1 .. m 0, p2 = m .. 1 0, p1' = 0' m' .. 1', p2' = 0' 1' .. m'
            let p1 = join([up(&|i| spec.plain(i)), vec![spec.plain(0)]].concat());
            let p2 = join([down(&|i| spec.plain(i)), vec![spec.plain(0)]].concat());
            let p1p = join([vec![spec.primed(0)], down(&|i| spec.primed(i))].concat());
            let p2p = join([vec![spec.primed(0)], up(&|i| spec.primed(i))].concat());
            let (q1, q2) = (&seq.perms()[0], &seq.perms()[1]);
            assert_eq!(restrict(q1, &primed).to_string(), p2p);
            assert_eq!(restrict(q1, &plain).to_string(), p1);
            assert_eq!(restrict(q2, &primed).to_string(), p1p);
            assert_eq!(restrict(q2, &plain).to_string(), p2);
        }
    }

    #[test]
    fn suffix_style() {
        let spec = BookSpec::with_style(2, PrimeStyle::Suffix).unwrap();
        assert_eq!(spec.permutations().unwrap().perms()[2].to_string(), "1 2 0_p 0 2_p 1_p");
    }

    #[test]
    fn numbers() {
        let b = SearchBounds::default();
        for m in [1, 2] {
            let n = book_numbers(&BookSpec::new(m).unwrap(), &b).unwrap();
            assert_eq!((n.representation_number, n.prn), (2, 2));
            assert!(represents(&n.witness.word(), &book(m).unwrap()).unwrap());
        }
        for m in [3, 5] {
            let n = book_numbers(&BookSpec::new(m).unwrap(), &b).unwrap();
            assert_eq!((n.representation_number, n.prn), (3, 3));
            assert!(represents(&n.witness.word(), &book(m).unwrap()).unwrap());
        }
    }
}
