//! Exact algorithms on small Coxeter graphs.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::system::CoxeterGraph;

/// Vertex guard for the exponential searches.
pub const MAX_SEARCH_VERTICES: usize = 16;

/// Set of 0-based generator indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Least member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    /// Members as 1-based generator indices.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_one_based()).finish()
    }
}

/// Renders as `{1, 3}` with 1-based indices.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.to_one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_one_based())
    }
}

impl CoxeterGraph {
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.neighbors(v).intersection(s).is_empty())
    }
}

fn guard(g: &CoxeterGraph) -> Result<()> {
    if g.vertex_count() > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge { vertices: g.vertex_count(), limit: MAX_SEARCH_VERTICES });
    }
    Ok(())
}

/// An optimal proper coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub chromatic_number: usize,
    /// Color classes, ordered by their least vertex.
    pub classes: Vec<VertexSet>,
}

/// Chromatic number with a witness coloring, by iterative deepening over the
/// number of colors and backtracking in ascending vertex order.
pub fn chromatic_number(g: &CoxeterGraph) -> Result<Coloring> {
    guard(g)?;
    Ok(chromatic_on(g, g.vertices()))
}

/// Chromatic number of the subgraph induced on `within`. An empty vertex set
/// gets zero colors.
pub(crate) fn chromatic_on(g: &CoxeterGraph, within: VertexSet) -> Coloring {
    let order: Vec<usize> = within.iter().collect();
    if order.is_empty() {
        return Coloring { chromatic_number: 0, classes: Vec::new() };
    }
    for k in 1..=order.len() {
        let mut classes = vec![VertexSet::EMPTY; k];
        if color_from(g, &order, 0, &mut classes, 0) {
            classes.retain(|c| !c.is_empty());
            return Coloring { chromatic_number: k, classes };
        }
    }
    unreachable!("n colors always suffice for n vertices")
}

fn color_from(
    g: &CoxeterGraph,
    order: &[usize],
    next: usize,
    classes: &mut [VertexSet],
    used: usize,
) -> bool {
    let Some(&v) = order.get(next) else {
        return true;
    };
    // a fresh color is only tried once, which removes color permutations
    let limit = (used + 1).min(classes.len());
    for c in 0..limit {
        if !g.neighbors(v).intersection(classes[c]).is_empty() {
            continue;
        }
        classes[c].insert(v);
        if color_from(g, order, next + 1, classes, used.max(c + 1)) {
            return true;
        }
        classes[c].remove(v);
    }
    false
}

/// Number of vertices on a longest simple path, by exhaustive DFS from every
/// vertex.
pub fn longest_path_order(g: &CoxeterGraph) -> Result<usize> {
    guard(g)?;
    Ok(longest_path_from_each(g).into_iter().max().unwrap_or(0))
}

fn longest_path_from_each(g: &CoxeterGraph) -> Vec<usize> {
    fn dfs(g: &CoxeterGraph, v: usize, visited: VertexSet) -> usize {
        let visited = visited.union(VertexSet::singleton(v));
        1 + g
            .neighbors(v)
            .difference(visited)
            .iter()
            .map(|u| dfs(g, u, visited))
            .max()
            .unwrap_or(0)
    }
    (0..g.vertex_count()).map(|v| dfs(g, v, VertexSet::EMPTY)).collect()
}

/// Breadth-first 2-coloring.
pub fn is_bipartite(g: &CoxeterGraph) -> bool {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for u in g.neighbors(v).iter() {
                match side[u] {
                    None => {
                        side[u] = Some(!sv);
                        queue.push_back(u);
                    }
                    Some(su) if su == sv => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Grows an independent set to an inclusion-maximal one, adding eligible
/// vertices in ascending order.
pub fn extend_to_maximal_independent(g: &CoxeterGraph, s: VertexSet) -> Result<VertexSet> {
    extend_within(g, s, g.vertices())
}

/// As [`extend_to_maximal_independent`], but only inside `within`.
pub(crate) fn extend_within(g: &CoxeterGraph, s: VertexSet, within: VertexSet) -> Result<VertexSet> {
    for v in s.iter() {
        if let Some(u) = g.neighbors(v).intersection(s).first() {
            return Err(Error::NotIndependent(v.min(u) + 1, v.max(u) + 1));
        }
    }
    let mut out = s;
    for v in within.difference(s).iter() {
        if g.neighbors(v).intersection(out).is_empty() {
            out.insert(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_spec;

    fn triangle() -> CoxeterGraph {
        parse_spec("U3").unwrap().matrix().graph()
    }

    fn graph(d: &str) -> CoxeterGraph {
        parse_spec(d).unwrap().matrix().graph()
    }

    /// Brute force: is there any proper coloring with `k` colors?
    fn colorable(g: &CoxeterGraph, k: usize) -> bool {
        let n = g.vertex_count();
        let total = k.pow(n as u32);
        (0..total).any(|mut code| {
            let mut color = vec![0; n];
            for c in color.iter_mut() {
                *c = code % k;
                code /= k;
            }
            g.edges().iter().all(|&(u, v)| color[u] != color[v])
        })
    }

    #[test]
    fn chromatic_small_cases() {
        let edgeless = CoxeterGraph::from_edges(5, &[]);
        assert_eq!(chromatic_number(&edgeless).unwrap().chromatic_number, 1);
        assert_eq!(chromatic_number(&graph("D5")).unwrap().chromatic_number, 2);
        assert_eq!(chromatic_number(&graph("E6")).unwrap().chromatic_number, 2);

        let tri = triangle();
        assert!(!colorable(&tri, 2));
        assert!(colorable(&tri, 3));
        let c = chromatic_number(&tri).unwrap();
        assert_eq!(c.chromatic_number, 3);
        assert_eq!(c.classes, vec![VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::singleton(2)]);
    }

    #[test]
    fn chromatic_witness_is_proper() {
        let odd_cycle = CoxeterGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let k4 = CoxeterGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for g in [odd_cycle, k4, graph("A7"), graph("U5"), graph("A2xU3")] {
            let c = chromatic_number(&g).unwrap();
            assert_eq!(c.classes.len(), c.chromatic_number);
            let all = c.classes.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b));
            assert_eq!(all, g.vertices());
            assert!(c.classes.iter().all(|&cl| g.is_independent(cl)));
            assert!(colorable(&g, c.chromatic_number));
            assert!(!colorable(&g, c.chromatic_number - 1) || c.chromatic_number == 1);
        }
    }

    #[test]
    fn search_guard() {
        let big = graph("A17");
        assert_eq!(
            chromatic_number(&big),
            Err(Error::TooLarge { vertices: 17, limit: MAX_SEARCH_VERTICES })
        );
        assert!(longest_path_order(&big).is_err());
        assert!(longest_path_order(&graph("A16")).is_ok());
    }

    #[test]
    fn longest_paths() {
        for n in 1..=8 {
            assert_eq!(longest_path_order(&graph(&format!("A{n}"))).unwrap(), n);
        }
        assert_eq!(longest_path_order(&graph("D4")).unwrap(), 3);
        assert_eq!(longest_path_order(&graph("D6")).unwrap(), 5);
        assert_eq!(longest_path_order(&graph("E6")).unwrap(), 5);
        assert_eq!(longest_path_order(&graph("E8")).unwrap(), 7);
        assert_eq!(longest_path_order(&CoxeterGraph::from_edges(4, &[])).unwrap(), 1);
        assert_eq!(longest_path_order(&triangle()).unwrap(), 3);
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&graph("E8")));
        assert!(is_bipartite(&graph("D5xA3")));
        assert!(!is_bipartite(&triangle()));
        assert!(is_bipartite(&graph("A1")));
        let square = CoxeterGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_bipartite(&square));
    }

    #[test]
    fn maximal_independent_extension() {
        let a3 = graph("A3");
        let got = extend_to_maximal_independent(&a3, VertexSet::singleton(0)).unwrap();
        assert_eq!(got, [0, 2].into_iter().collect());
        assert_eq!(extend_to_maximal_independent(&a3, got).unwrap(), got);
        assert_eq!(
            extend_to_maximal_independent(&triangle(), VertexSet::EMPTY).unwrap(),
            VertexSet::singleton(0)
        );
        assert_eq!(
            extend_to_maximal_independent(&a3, [0, 1].into_iter().collect()),
            Err(Error::NotIndependent(1, 2))
        );
    }

    #[test]
    fn maximal_extension_is_maximal() {
        // brute-force maximality over every independent seed of a few graphs
        for g in [graph("D5"), graph("E6"), triangle(), graph("A2xA3")] {
            let n = g.vertex_count();
            for mask in 0..1u64 << n {
                let s = VertexSet::from_mask(mask);
                if !g.is_independent(s) {
                    continue;
                }
                let m = extend_to_maximal_independent(&g, s).unwrap();
                assert!(s.is_subset(m) && g.is_independent(m));
                for v in g.vertices().difference(m).iter() {
                    assert!(!g.is_independent(m.union(VertexSet::singleton(v))));
                }
            }
        }
    }
}
