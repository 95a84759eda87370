//! Coxeter elements analysed on the Coxeter graph alone.
//!
//! A Coxeter element is determined by the order in which its generators
//! appear, up to swapping adjacent commuting generators. Two orderings give
//! the same element exactly when they orient every edge of the graph the
//! same way (earlier generator pointing to the later one), so the orientation
//! serves as the element's identity. None of this needs a group table, so it
//! works equally for infinite groups.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{chromatic_on, extend_within, VertexSet, MAX_SEARCH_VERTICES};
use crate::system::CoxeterGraph;
use crate::table::{ElementId, GroupTable, Word};

/// Largest rank for which all orderings are enumerated.
pub const MAX_SPECTRUM_RANK: usize = 9;

/// The order in which the generators of a Coxeter element appear.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterElementWord {
    ordering: Vec<usize>,
}

impl CoxeterElementWord {
    /// Wraps a 0-based permutation of `0..n`.
    pub fn new(ordering: Vec<usize>) -> Result<Self> {
        let n = ordering.len();
        let mut seen = VertexSet::EMPTY;
        for &v in &ordering {
            if v >= n || seen.contains(v) {
                return Err(Error::BadLetter { letter: v + 1, rank: n });
            }
            seen.insert(v);
        }
        Ok(Self { ordering })
    }

    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        let n = letters.len();
        let word = Word::from_one_based(letters, n)?;
        Self::new(word.0)
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn word(&self) -> Word {
        Word(self.ordering.clone())
    }

    /// The element of a finite group this word evaluates to.
    pub fn element(&self, t: &GroupTable) -> ElementId {
        self.ordering.iter().fold(t.identity(), |w, &s| t.mul_gen(w, s))
    }
}

/// Orientation of the Coxeter graph induced by an ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeOrientation {
    /// For each vertex, the neighbours that point to it.
    preds: Vec<u64>,
}

impl EdgeOrientation {
    pub fn vertex_count(&self) -> usize {
        self.preds.len()
    }

    pub fn predecessors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.preds[v])
    }

    /// Directed edges `(from, to)`, 0-based, sorted.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.vertex_count())
            .flat_map(|v| self.predecessors(v).iter().map(move |u| (u, v)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

pub fn orientation_of(g: &CoxeterGraph, c: &CoxeterElementWord) -> EdgeOrientation {
    let n = g.vertex_count();
    let mut preds = vec![0u64; n];
    let mut placed = VertexSet::EMPTY;
    for &v in c.ordering() {
        preds[v] = g.neighbors(v).intersection(placed).mask();
        placed.insert(v);
    }
    EdgeOrientation { preds }
}

/// Left descents of the Coxeter element: the sources of the orientation.
pub fn coxeter_descents(o: &EdgeOrientation) -> VertexSet {
    (0..o.vertex_count()).filter(|&v| o.preds[v] == 0).collect()
}

/// Layer `i` holds the vertices whose longest incoming directed path has
/// `i + 1` vertices. The product of the generators in each layer is the
/// corresponding factor of the ancestor decomposition.
pub fn coxeter_ancestor_decomposition(o: &EdgeOrientation) -> Vec<VertexSet> {
    let mut remaining = VertexSet::full(o.vertex_count());
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let layer: VertexSet = remaining
            .iter()
            .filter(|&v| o.predecessors(v).intersection(remaining).is_empty())
            .collect();
        assert!(!layer.is_empty(), "orientation induced by an ordering is acyclic");
        layers.push(layer);
        remaining = remaining.difference(layer);
    }
    layers
}

/// Vertex count of a longest directed path.
pub fn path_length(o: &EdgeOrientation) -> usize {
    let mut depth = vec![0usize; o.vertex_count()];
    for (i, layer) in coxeter_ancestor_decomposition(o).iter().enumerate() {
        for v in layer.iter() {
            depth[v] = i + 1;
        }
    }
    // check the layering against the definition: one more than the deepest
    // predecessor
    debug_assert!((0..o.vertex_count())
        .all(|v| depth[v] == 1 + o.predecessors(v).iter().map(|u| depth[u]).max().unwrap_or(0)));
    depth.into_iter().max().unwrap_or(0)
}

fn guard(g: &CoxeterGraph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::TooLarge { vertices: g.vertex_count(), limit });
    }
    Ok(())
}

/// A Coxeter element of least involution length, built by repeatedly placing
/// an inclusion-maximal independent set first: a color class of an optimal
/// coloring of the remaining vertices, grown in ascending order.
pub fn min_ilen_coxeter_element(g: &CoxeterGraph) -> Result<(CoxeterElementWord, usize)> {
    guard(g, MAX_SEARCH_VERTICES)?;
    let mut remaining = g.vertices();
    let mut ordering = Vec::with_capacity(g.vertex_count());
    while !remaining.is_empty() {
        let coloring = chromatic_on(g, remaining);
        let first = extend_within(g, coloring.classes[0], remaining)?;
        ordering.extend(first.iter());
        remaining = remaining.difference(first);
    }
    let word = CoxeterElementWord::new(ordering)?;
    let ilen = path_length(&orientation_of(g, &word));
    Ok((word, ilen))
}

/// One representative ordering (the lexicographically least) per Coxeter
/// element, with its orientation, in order of first appearance.
pub fn coxeter_elements(g: &CoxeterGraph) -> Result<Vec<(CoxeterElementWord, EdgeOrientation)>> {
    guard(g, MAX_SPECTRUM_RANK)?;
    let n = g.vertex_count();
    let mut seen: HashSet<EdgeOrientation> = HashSet::new();
    let mut out = Vec::new();
    for ordering in (0..n).permutations(n) {
        let word = CoxeterElementWord { ordering };
        let o = orientation_of(g, &word);
        if seen.insert(o.clone()) {
            out.push((word, o));
        }
    }
    Ok(out)
}

/// Number of distinct Coxeter elements per involution length.
pub fn ilen_spectrum(g: &CoxeterGraph) -> Result<BTreeMap<usize, usize>> {
    let mut spectrum = BTreeMap::new();
    for (_, o) in coxeter_elements(g)? {
        *spectrum.entry(path_length(&o)).or_insert(0) += 1;
    }
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chromatic_number, longest_path_order};
    use crate::system::parse_spec;

    fn graph(d: &str) -> CoxeterGraph {
        parse_spec(d).unwrap().matrix().graph()
    }

    fn cw(letters: &[usize]) -> CoxeterElementWord {
        CoxeterElementWord::from_one_based(letters).unwrap()
    }

    fn sets(layers: &[VertexSet]) -> Vec<Vec<usize>> {
        layers.iter().map(|l| l.to_one_based()).collect()
    }

    #[test]
    fn orientations() {
        let a3 = graph("A3");
        assert_eq!(orientation_of(&a3, &cw(&[1, 2, 3])).directed_edges(), [(0, 1), (1, 2)]);
        assert_eq!(orientation_of(&a3, &cw(&[1, 3, 2])).directed_edges(), [(0, 1), (2, 1)]);
        let edgeless = CoxeterGraph::from_edges(3, &[]);
        assert!(orientation_of(&edgeless, &cw(&[2, 3, 1])).directed_edges().is_empty());
        assert_eq!(
            orientation_of(&a3, &cw(&[1, 3, 2])),
            orientation_of(&a3, &cw(&[3, 1, 2]))
        );
        assert!(CoxeterElementWord::from_one_based(&[1, 1, 2]).is_err());
        assert!(CoxeterElementWord::from_one_based(&[1, 4, 2]).is_err());
    }

    #[test]
    fn descents_of_coxeter_elements() {
        let a6 = graph("A6");
        let o = orientation_of(&a6, &cw(&[6, 3, 2, 1, 4, 5]));
        assert_eq!(coxeter_descents(&o).to_one_based(), [3, 6]);
        let a3 = graph("A3");
        assert_eq!(coxeter_descents(&orientation_of(&a3, &cw(&[1, 2, 3]))).to_one_based(), [1]);
        let edgeless = CoxeterGraph::from_edges(4, &[]);
        let o = orientation_of(&edgeless, &cw(&[4, 1, 3, 2]));
        assert_eq!(coxeter_descents(&o), VertexSet::full(4));
    }

    #[test]
    fn layered_decompositions() {
        let a6 = graph("A6");
        let o = orientation_of(&a6, &cw(&[6, 3, 2, 1, 4, 5]));
        assert_eq!(sets(&coxeter_ancestor_decomposition(&o)), [vec![3, 6], vec![2, 4], vec![1, 5]]);
        assert_eq!(path_length(&o), 3);

        let d4 = graph("D4");
        let o = orientation_of(&d4, &cw(&[1, 2, 3, 4]));
        assert_eq!(sets(&coxeter_ancestor_decomposition(&o)), [vec![1], vec![2], vec![3, 4]]);

        let edgeless = CoxeterGraph::from_edges(3, &[]);
        let o = orientation_of(&edgeless, &cw(&[3, 2, 1]));
        assert_eq!(sets(&coxeter_ancestor_decomposition(&o)), [vec![1, 2, 3]]);
        assert_eq!(path_length(&o), 1);

        for n in 1..=8 {
            let g = graph(&format!("A{n}"));
            let o = orientation_of(&g, &CoxeterElementWord::new((0..n).collect()).unwrap());
            assert_eq!(path_length(&o), n);
        }
    }

    #[test]
    fn minimal_ilen_elements() {
        let (_, k) = min_ilen_coxeter_element(&graph("D5")).unwrap();
        assert_eq!(k, 2);
        let (_, k) = min_ilen_coxeter_element(&CoxeterGraph::from_edges(4, &[])).unwrap();
        assert_eq!(k, 1);
        let (w, k) = min_ilen_coxeter_element(&graph("U3")).unwrap();
        assert_eq!(k, 3);
        assert_eq!(w.ordering(), [0, 1, 2]);
        assert!(min_ilen_coxeter_element(&graph("A17")).is_err());
    }

    #[test]
    fn minimal_ilen_matches_chromatic_number() {
        let odd = CoxeterGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5), (5, 6)]);
        let wheel = CoxeterGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)],
        );
        for g in [odd, wheel, graph("U4"), graph("E8"), graph("A2xU3")] {
            let (w, k) = min_ilen_coxeter_element(&g).unwrap();
            assert_eq!(k, chromatic_number(&g).unwrap().chromatic_number);
            assert_eq!(path_length(&orientation_of(&g, &w)), k);
        }
    }

    #[test]
    fn spectra() {
        assert_eq!(ilen_spectrum(&graph("A2")).unwrap(), BTreeMap::from([(2, 2)]));
        assert_eq!(ilen_spectrum(&graph("A1xA1")).unwrap(), BTreeMap::from([(1, 1)]));
        let d4 = ilen_spectrum(&graph("D4")).unwrap();
        assert_eq!(d4.keys().next(), Some(&2));
        assert_eq!(d4.keys().last(), Some(&3));
        assert!(ilen_spectrum(&graph("A10")).is_err());
    }

    #[test]
    fn spectrum_extremes_on_assorted_graphs() {
        let odd = CoxeterGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        for g in [odd, graph("U4"), graph("E7"), graph("D6"), graph("B3xA2")] {
            let spec = ilen_spectrum(&g).unwrap();
            assert_eq!(*spec.keys().next().unwrap(), chromatic_number(&g).unwrap().chromatic_number);
            assert_eq!(*spec.keys().last().unwrap(), longest_path_order(&g).unwrap());
        }
    }

    #[test]
    fn forests_have_one_element_per_orientation() {
        // for a forest every orientation is acyclic, so there are 2^edges
        for d in ["A5", "D5", "E6", "B2xA3"] {
            let g = graph(d);
            let count = coxeter_elements(&g).unwrap().len();
            assert_eq!(count, 1 << g.edges().len(), "{d}");
        }
    }
}
