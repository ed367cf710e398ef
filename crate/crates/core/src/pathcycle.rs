//! Two-permutation representations of paths and three-permutation
//! representations of even cycles.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graphcore::generators::{cycle_on, path_on, path_tokens};
use crate::graphcore::{certify_perm_sequence, PermSequence, VertexToken, Word};
use crate::oracle::{self, SearchBounds};
use crate::treebuilder::{root_and_label, tree_permutations};

fn check_distinct(tokens: &[VertexToken]) -> Result<()> {
    let set: BTreeSet<&VertexToken> = tokens.iter().collect();
    if set.len() != tokens.len() {
        return Err(invalid("vertex tokens must be distinct"));
    }
    Ok(())
}

/// `p2, p3` for the path `tokens[0] - tokens[1] - ...`, taken from the tree
/// construction rooted at the first vertex.
pub fn path_permutations_on(tokens: &[VertexToken]) -> Result<PermSequence> {
    if tokens.len() < 3 {
        return Err(invalid(format!(
            "a path on {} vertices is complete; use a single permutation",
            tokens.len()
        )));
    }
    check_distinct(tokens)?;
    let labeled = root_and_label(&path_on(tokens), &tokens[0])?;
    let perms = tree_permutations(&labeled)?.perms()[1..].to_vec();
    let seq = PermSequence::new(perms)?;
    if !certify_perm_sequence(&seq, labeled.tree())? {
        return Err(Error::CertificateFailed(format!("path word {} does not represent the path", seq.word())));
    }
    Ok(seq)
}

/// [`path_permutations_on`] with tokens `a1 .. an`.
pub fn path_permutations(n: usize) -> Result<PermSequence> {
    path_permutations_on(&path_tokens(n))
}

/// The explicit form of the path permutations, written down directly from
/// the index pattern rather than by running the tree construction.
pub fn path_closed_form(tokens: &[VertexToken]) -> Result<PermSequence> {
    let n = tokens.len();
    if n < 3 {
        return Err(invalid("closed form needs at least three vertices"));
    }
    let a = |i: usize| tokens[i - 1].clone();
    // p2 = a2 a1 a4 a3 ..., the last vertex alone when n is odd
    let mut p2 = Vec::with_capacity(n);
    let mut i = 2;
    while i <= n {
        p2.push(a(i));
        p2.push(a(i - 1));
        i += 2;
    }
    if n % 2 == 1 {
        p2.push(a(n));
    }
    // p3 = (a_n when n is even) ... a4 a5 a2 a3 a1
    let mut p3 = Vec::with_capacity(n);
    if n % 2 == 0 {
        p3.push(a(n));
    }
    let mut j = if n % 2 == 0 { n - 2 } else { n - 1 };
    while j >= 2 {
        p3.push(a(j));
        p3.push(a(j + 1));
        j -= 2;
    }
    p3.push(a(1));
    PermSequence::new(vec![Word::new(p2), Word::new(p3)])
}

/// A word representing the path `a1 .. an`: one permutation for `n <= 2`,
/// otherwise `p2 p3`.
pub fn path_word(n: usize) -> Result<Word> {
    match n {
        0 => Err(invalid("a path needs at least one vertex")),
        1 | 2 => Ok(Word::new(path_tokens(n))),
        _ => Ok(path_permutations(n)?.word()),
    }
}

fn check_even_cycle(n: usize) -> Result<()> {
    if n < 4 {
        return Err(invalid(format!("an even cycle needs at least four vertices, got {n}")));
    }
    if n % 2 == 1 {
        return Err(Error::NotComparability(format!(
            "the odd cycle on {n} vertices has no permutational representation"
        )));
    }
    Ok(())
}

/// `p1, p2, p3` for the even cycle on `tokens` (length at least 6).
/// `p2` and `p3` are the path permutations of all but the last vertex with
/// the last vertex put in front; `p1` lists the remaining even-position
/// vertices, then the remaining odd-position ones, then `an a1 a(n-1)`.
pub fn cycle_permutations_on(tokens: &[VertexToken]) -> Result<PermSequence> {
    let n = tokens.len();
    check_even_cycle(n)?;
    if n == 4 {
        return Err(Error::UseOracle(
            "the 4-cycle is a permutation graph; ask the exhaustive search for its two permutations".into(),
        ));
    }
    check_distinct(tokens)?;
    let last = tokens[n - 1].clone();
    let path = path_permutations_on(&tokens[..n - 1])?;
    let mut perms = Vec::with_capacity(3);
    let evens = (2..n).step_by(2).map(|i| tokens[i - 1].clone());
    let odds = (3..n - 1).step_by(2).map(|i| tokens[i - 1].clone());
    let tail = [last.clone(), tokens[0].clone(), tokens[n - 2].clone()];
    perms.push(evens.chain(odds).chain(tail).collect());
    for p in path.perms() {
        perms.push(std::iter::once(last.clone()).chain(p.iter().cloned()).collect());
    }
    let seq = PermSequence::new(perms)?;
    if !certify_perm_sequence(&seq, &cycle_on(tokens))? {
        return Err(Error::CertificateFailed(format!("cycle word {} does not represent the cycle", seq.word())));
    }
    Ok(seq)
}

/// [`cycle_permutations_on`] with tokens `a1 .. an`.
pub fn cycle_permutations(n: usize) -> Result<PermSequence> {
    cycle_permutations_on(&path_tokens(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePrn {
    pub prn: usize,
    pub witness: PermSequence,
}

/// The permutation-representation number of the even cycle on `a1 .. an`
/// with a certified witness. The 4-cycle's witness comes from the search.
pub fn cycle_prn(n: usize, bounds: &SearchBounds) -> Result<CyclePrn> {
    check_even_cycle(n)?;
    if n == 4 {
        let outcome = oracle::prn_search(&cycle_on(&path_tokens(4)), 2, bounds)?;
        return match outcome.perms() {
            Some(p) => Ok(CyclePrn { prn: 2, witness: p.clone() }),
            None => Err(Error::CertificateFailed("no two-permutation word for the 4-cycle".into())),
        };
    }
    Ok(CyclePrn { prn: 3, witness: cycle_permutations(n)? })
}
