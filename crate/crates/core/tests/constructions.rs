mod common;

use common::naive_represents;
use permrep_core::bookgraph::{book, book_numbers, book_permutations, BookSpec, PrimeStyle};
use permrep_core::graphcore::generators::{cycle, demo_tree, path, random_tree, star};
use permrep_core::graphcore::{tok, uniformity, VertexToken};
use permrep_core::oracle::SearchBounds;
use permrep_core::pathcycle::{cycle_permutations, cycle_permutations_on, path_permutations, path_word};
use permrep_core::treebuilder::{default_root, root_and_label, tree_permutations, tree_prn};
use rand::SeedableRng;

#[test]
fn random_trees_every_root() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for n in [3, 9, 17, 30] {
        for _ in 0..10 {
            let g = random_tree(n, &mut rng);
            for root in g.vertices() {
                let w = tree_permutations(&root_and_label(&g, root).unwrap()).unwrap().word();
                assert!(naive_represents(&w, &g), "root {root}: {w}");
                assert_eq!(uniformity(&w), Some(3));
            }
        }
    }
}

#[test]
fn demo_tree_from_default_root() {
    let g = demo_tree();
    assert_eq!(default_root(&g), Some(&tok("1")));
    let seq = tree_permutations(&root_and_label(&g, &tok("1")).unwrap()).unwrap();
    assert!(naive_represents(&seq.word(), &g));
}

#[test]
fn non_trees_rejected() {
    assert!(root_and_label(&cycle(5), &tok("a1")).is_err());
    let mut forest = path(3);
    forest.add_vertex(tok("z"));
    assert!(root_and_label(&forest, &tok("a1")).is_err());
    assert!(root_and_label(&path(3), &tok("missing")).is_err());
}

#[test]
fn tree_numbers() {
    let b = SearchBounds::default();
    let single = tree_prn(&path(2), None, &b).unwrap();
    assert_eq!(single.prn, 1);
    let p = tree_prn(&path(6), None, &b).unwrap();
    assert_eq!(p.prn, 2);
    assert!(naive_represents(&p.word(), &path(6)));
    let s = tree_prn(&demo_tree(), None, &b).unwrap();
    assert_eq!(s.prn, 3);
    assert!(naive_represents(&s.word(), &demo_tree()));
    assert_eq!(tree_prn(&star(5), None, &b).unwrap().prn, 2);
}

#[test]
fn paths_and_cycles_against_reference() {
    for n in 3..=20 {
        assert!(naive_represents(&path_permutations(n).unwrap().word(), &path(n)));
        assert!(naive_represents(&path_word(n).unwrap(), &path(n)));
    }
    for n in (6..=20).step_by(2) {
        assert!(naive_represents(&cycle_permutations(n).unwrap().word(), &cycle(n)));
    }
}

#[test]
fn cycle_with_custom_tokens() {
    let tokens: Vec<VertexToken> = ["u", "v", "w", "x", "y", "z"].map(tok).to_vec();
    let seq = cycle_permutations_on(&tokens).unwrap();
    assert_eq!(seq.perms()[0].to_string(), "v x w z u y");
}

#[test]
fn books_against_reference() {
    for m in 1..=12 {
        assert!(naive_represents(&book_permutations(m).unwrap().word(), &book(m).unwrap()));
    }
    let spec = BookSpec::with_style(4, PrimeStyle::Suffix).unwrap();
    assert!(naive_represents(&spec.permutations().unwrap().word(), &spec.graph()));
    let numbers = book_numbers(&spec, &SearchBounds::default()).unwrap();
    assert_eq!((numbers.representation_number, numbers.prn), (3, 3));
}
