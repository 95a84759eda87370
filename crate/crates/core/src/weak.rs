//! Prefixes in the weak order, involution prefixes, ancestors and ancestor
//! decompositions.
//!
//! `u` is a prefix of `w` when `l(u) + l(u^-1 w) = l(w)`. The ancestors of
//! `w` are its involution prefixes of maximal length. When there is exactly
//! one, stripping it and repeating gives the ancestor decomposition, whose
//! number of factors is the involution length.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::table::{ElementId, GroupTable, Word};

/// A set of prefixes of `owner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSet {
    pub owner: ElementId,
    pub members: BTreeSet<ElementId>,
    pub involutions_only: bool,
}

impl PrefixSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: ElementId) -> bool {
        self.members.contains(&u)
    }
}

/// `w = factors[0] * factors[1] * ...`, each factor being the unique ancestor
/// of the product of itself and everything to its right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestorDecomposition {
    pub owner: ElementId,
    pub factors: Vec<ElementId>,
}

impl AncestorDecomposition {
    pub fn ilen(&self) -> usize {
        self.factors.len()
    }

    /// Factors as canonical reduced words.
    pub fn factor_words(&self, t: &GroupTable) -> Vec<Word> {
        self.factors.iter().map(|&f| t.canonical_reduced_word(f)).collect()
    }

    /// Renders as `(r3 r6)(r2 r4)(r1 r5)`.
    pub fn render(&self, t: &GroupTable) -> String {
        render_factors(&self.factor_words(t))
    }
}

pub fn render_factors(words: &[Word]) -> String {
    words.iter().map(|w| format!("({})", w.render_generators())).collect()
}

/// An element with more than one ancestor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub element: ElementId,
    pub witnesses: Vec<ElementId>,
}

/// Result of a query that assumes the ancestor property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Unique(T),
    Ambiguous(Ambiguity),
}

impl<T> Outcome<T> {
    pub fn unique(self) -> Option<T> {
        match self {
            Outcome::Unique(x) => Some(x),
            Outcome::Ambiguous(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Unique(x) => Outcome::Unique(f(x)),
            Outcome::Ambiguous(a) => Outcome::Ambiguous(a),
        }
    }
}

/// `l(u) + l(u^-1 w) = l(w)`.
pub fn is_prefix(t: &GroupTable, u: ElementId, w: ElementId) -> bool {
    let residual = t.multiply(t.inverse(u), w);
    t.length(u) + t.length(residual) == t.length(w)
}

/// Same relation through left inversion sets: `u` is a prefix of `w` exactly
/// when the left inversions of `u` are among those of `w`.
pub fn is_prefix_by_inversions(t: &GroupTable, u: ElementId, w: ElementId) -> bool {
    t.left_inversions(u)
        .iter()
        .zip(t.left_inversions(w))
        .all(|(a, b)| a & !b == 0)
}

/// All prefixes of `w`, by breadth-first growth: from a prefix `u` with
/// residual `v = u^-1 w`, the next prefixes are `u r` for each left descent
/// `r` of `v`.
pub fn prefixes(t: &GroupTable, w: ElementId) -> PrefixSet {
    let mut members = BTreeSet::from([t.identity()]);
    let mut queue = VecDeque::from([(t.identity(), w)]);
    while let Some((u, v)) = queue.pop_front() {
        for s in t.left_descents(v).iter() {
            let next = t.mul_gen(u, s);
            if members.insert(next) {
                queue.push_back((next, t.gen_mul_left(s, v)));
            }
        }
    }
    PrefixSet { owner: w, members, involutions_only: false }
}

pub fn involution_prefixes(t: &GroupTable, w: ElementId) -> PrefixSet {
    let mut set = prefixes(t, w);
    set.members.retain(|&u| t.is_involution(u));
    set.involutions_only = true;
    set
}

/// Involution prefixes of maximal length.
pub fn ancestors(t: &GroupTable, w: ElementId) -> Result<PrefixSet> {
    if w == t.identity() {
        return Err(Error::IdentityHasNoAncestor);
    }
    let mut set = involution_prefixes(t, w);
    let top = set.members.iter().map(|&u| t.length(u)).max().unwrap_or(0);
    set.members.retain(|&u| t.length(u) == top);
    Ok(set)
}

pub fn ancestor(t: &GroupTable, w: ElementId) -> Result<Outcome<ElementId>> {
    let set = ancestors(t, w)?;
    Ok(if set.len() == 1 {
        Outcome::Unique(*set.members.first().unwrap())
    } else {
        Outcome::Ambiguous(Ambiguity { element: w, witnesses: set.members.into_iter().collect() })
    })
}

/// Strips ancestors until the identity is reached. An ambiguous step is
/// reported with the element at which it occurred.
pub fn ancestor_decomposition(t: &GroupTable, w: ElementId) -> Result<Outcome<AncestorDecomposition>> {
    decompose_with(t, w, |cur| ancestor(t, cur))
}

/// Shared driver; `step` yields the ancestor of a non-identity element.
pub(crate) fn decompose_with(
    t: &GroupTable,
    w: ElementId,
    mut step: impl FnMut(ElementId) -> Result<Outcome<ElementId>>,
) -> Result<Outcome<AncestorDecomposition>> {
    if w == t.identity() {
        return Err(Error::IdentityHasNoAncestor);
    }
    let mut factors = Vec::new();
    let mut cur = w;
    while cur != t.identity() {
        match step(cur)? {
            Outcome::Unique(a) => {
                factors.push(a);
                cur = t.multiply(a, cur);
            }
            Outcome::Ambiguous(amb) => return Ok(Outcome::Ambiguous(amb)),
        }
    }
    Ok(Outcome::Unique(AncestorDecomposition { owner: w, factors }))
}

/// Number of factors in the ancestor decomposition; zero for the identity.
pub fn involution_length(t: &GroupTable, w: ElementId) -> Outcome<usize> {
    if w == t.identity() {
        return Outcome::Unique(0);
    }
    ancestor_decomposition(t, w)
        .expect("non-identity element")
        .map(|d| d.ilen())
}

/// Decomposition built from longest involution suffixes: the prefix
/// decomposition of `w^-1`, read backwards.
pub fn suffix_ancestor_decomposition(
    t: &GroupTable,
    w: ElementId,
) -> Result<Outcome<AncestorDecomposition>> {
    Ok(ancestor_decomposition(t, t.inverse(w))?.map(|mut d| {
        d.factors.reverse();
        d.owner = w;
        d
    }))
}
