//! Coxeter matrices, Coxeter graphs and the descriptor language for naming
//! standard systems.
//!
//! Generators are 0-based internally. Everything user-visible (descriptors,
//! matrix files, words, rendered vertex sets) is 1-based.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Largest rank any system may have; vertex sets are 64-bit masks.
pub const MAX_RANK: usize = 64;

/// A bond label `m_ij`: the order of `r_i r_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// `true` when the two generators do not commute.
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    /// Integer used in matrix files, where 0 stands for infinity.
    pub fn to_file_int(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinite => 0,
        }
    }

    fn from_file_int(x: u32) -> Self {
        if x == 0 {
            Label::Infinite
        } else {
            Label::Finite(x)
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.to_file_int())
    }
}

/// Symmetric matrix of bond labels with ones on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Label>,
}

impl CoxeterMatrix {
    /// Matrix of the system with pairwise commuting generators, `A1^n`.
    pub fn commuting(rank: usize) -> Self {
        let mut entries = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Label::Finite(1);
        }
        Self { rank, entries }
    }

    /// Validates and wraps a full `rank × rank` label array given row by row.
    pub fn from_entries(rank: usize, entries: Vec<Label>) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {rank} not in 1..={MAX_RANK}")));
        }
        if entries.len() != rank * rank {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, found {}",
                rank * rank,
                entries.len()
            )));
        }
        for i in 0..rank {
            if entries[i * rank + i] != Label::Finite(1) {
                return Err(Error::InvalidMatrix(format!("m[{0}][{0}] must be 1", i + 1)));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let m = entries[i * rank + j];
                if m != entries[j * rank + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if matches!(m, Label::Finite(x) if x < 2) {
                    return Err(Error::InvalidMatrix(format!(
                        "m[{}][{}] = {m} is below 2",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label between 0-based generators `i` and `j`.
    pub fn get(&self, i: usize, j: usize) -> Label {
        self.entries[i * self.rank + j]
    }

    fn set_pair(&mut self, i: usize, j: usize, m: Label) {
        self.entries[i * self.rank + j] = m;
        self.entries[j * self.rank + i] = m;
    }

    /// Block-diagonal sum; generators of different blocks commute.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let rank = self.rank + other.rank;
        let mut out = CoxeterMatrix::commuting(rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                out.entries[i * rank + j] = self.get(i, j);
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                out.entries[(i + self.rank) * rank + j + self.rank] = other.get(i, j);
            }
        }
        out
    }

    /// Parses the matrix file format: the rank on the first line followed by
    /// either the strict upper triangle or the full matrix, whitespace
    /// separated. `0` encodes an infinite label.
    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let mut nums = Vec::new();
        for tok in text.split_whitespace() {
            let x: u32 = tok
                .parse()
                .map_err(|_| Error::InvalidMatrix(format!("not a non-negative integer: `{tok}`")))?;
            nums.push(x);
        }
        let Some((&rank, rest)) = nums.split_first() else {
            return Err(Error::InvalidMatrix("empty matrix file".into()));
        };
        let rank = rank as usize;
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {rank} not in 1..={MAX_RANK}")));
        }
        let triangle = rank * (rank - 1) / 2;
        if rest.len() == triangle {
            let mut m = CoxeterMatrix::commuting(rank);
            let mut it = rest.iter();
            for i in 0..rank {
                for j in i + 1..rank {
                    let x = *it.next().unwrap();
                    if x == 1 {
                        return Err(Error::InvalidMatrix(format!(
                            "off-diagonal entry m[{}][{}] = 1",
                            i + 1,
                            j + 1
                        )));
                    }
                    m.set_pair(i, j, Label::from_file_int(x));
                }
            }
            Ok(m)
        } else if rest.len() == rank * rank {
            let entries = rest
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    if k / rank == k % rank {
                        Label::Finite(x)
                    } else {
                        Label::from_file_int(x)
                    }
                })
                .collect();
            CoxeterMatrix::from_entries(rank, entries)
        } else {
            Err(Error::InvalidMatrix(format!(
                "rank {rank} needs {triangle} (upper triangle) or {} (full) entries, found {}",
                rank * rank,
                rest.len()
            )))
        }
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse_file_contents(&text)
    }

    /// Renders the upper-triangle file format.
    pub fn to_file_contents(&self) -> String {
        let mut out = format!("{}\n", self.rank);
        for i in 0..self.rank.saturating_sub(1) {
            let row: Vec<String> = (i + 1..self.rank)
                .map(|j| self.get(i, j).to_file_int().to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn graph(&self) -> CoxeterGraph {
        graph_of(self)
    }
}

/// The Coxeter graph: an edge joins every pair of non-commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGraph {
    adjacency: Vec<u64>,
    labels: Vec<Label>,
}

pub fn graph_of(matrix: &CoxeterMatrix) -> CoxeterGraph {
    let n = matrix.rank();
    let mut adjacency = vec![0u64; n];
    for (i, adj) in adjacency.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && matrix.get(i, j).is_edge() {
                *adj |= 1 << j;
            }
        }
    }
    CoxeterGraph { adjacency, labels: matrix.entries.clone() }
}

impl CoxeterGraph {
    /// Graph on `n` vertices with the given 0-based edges, all labelled 3.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = CoxeterMatrix::commuting(n);
        for &(i, j) in edges {
            m.set_pair(i, j, Label::Finite(3));
        }
        graph_of(&m)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.adjacency[v])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    /// Label of the edge `{u, v}`, or `None` if the vertices commute.
    pub fn label(&self, u: usize, v: usize) -> Option<Label> {
        self.adjacent(u, v).then(|| self.labels[u * self.vertex_count() + v])
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adjacency[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == n
    }
}

/// An irreducible (or explicitly given) block of a [`SystemSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(Label),
    /// The universal group: every pair of generators has infinite order.
    Universal(usize),
    /// A matrix loaded from a file.
    File { path: String, matrix: CoxeterMatrix },
}

impl Component {
    pub fn rank(&self) -> usize {
        match self {
            Component::A(n)
            | Component::B(n)
            | Component::D(n)
            | Component::E(n)
            | Component::H(n)
            | Component::Universal(n) => *n,
            Component::F4 => 4,
            Component::I2(_) => 2,
            Component::File { matrix, .. } => matrix.rank(),
        }
    }

    /// Standard Coxeter matrix of the block. Type B puts the 4 between the
    /// first two generators, type D branches at the third-from-last node and
    /// type E uses the Bourbaki numbering.
    pub fn matrix(&self) -> CoxeterMatrix {
        let n = self.rank();
        let mut m = CoxeterMatrix::commuting(n);
        let three = Label::Finite(3);
        let chain = |m: &mut CoxeterMatrix, len: usize| {
            for i in 0..len.saturating_sub(1) {
                m.set_pair(i, i + 1, three);
            }
        };
        match self {
            Component::A(_) => chain(&mut m, n),
            Component::B(_) => {
                chain(&mut m, n);
                m.set_pair(0, 1, Label::Finite(4));
            }
            Component::D(_) => {
                chain(&mut m, n - 1);
                m.set_pair(n - 3, n - 1, three);
            }
            Component::E(_) => {
                m.set_pair(0, 2, three);
                m.set_pair(1, 3, three);
                for i in 2..n - 1 {
                    m.set_pair(i, i + 1, three);
                }
            }
            Component::F4 => {
                chain(&mut m, 4);
                m.set_pair(1, 2, Label::Finite(4));
            }
            Component::H(_) => {
                chain(&mut m, n);
                m.set_pair(0, 1, Label::Finite(5));
            }
            Component::I2(label) => m.set_pair(0, 1, *label),
            Component::Universal(_) => {
                for i in 0..n {
                    for j in i + 1..n {
                        m.set_pair(i, j, Label::Infinite);
                    }
                }
            }
            Component::File { matrix, .. } => return matrix.clone(),
        }
        m
    }

    fn parse(token: &str) -> Result<Self> {
        if let Some(path) = token.strip_prefix("file:") {
            let matrix = CoxeterMatrix::read_file(Path::new(path))?;
            return Ok(Component::File { path: path.to_string(), matrix });
        }
        let upper = token.to_ascii_uppercase();
        if let Some(inner) = upper.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
            let label = match inner {
                "INF" | "OO" | "∞" | "0" => Label::Infinite,
                _ => {
                    let m: u32 = inner.parse().map_err(|_| Error::UnknownType(token.into()))?;
                    if m < 3 {
                        return Err(Error::RankOutOfRange(token.into()));
                    }
                    Label::Finite(m)
                }
            };
            return Ok(Component::I2(label));
        }
        let split = upper
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::UnknownType(token.into()))?;
        let (name, digits) = upper.split_at(split);
        let n: usize = digits.parse().map_err(|_| Error::UnknownType(token.into()))?;
        let out_of_range = || Error::RankOutOfRange(token.into());
        let component = match name {
            "A" if n >= 1 => Component::A(n),
            "B" | "C" if n >= 2 => Component::B(n),
            "D" if n >= 4 => Component::D(n),
            "E" if (6..=8).contains(&n) => Component::E(n),
            "F" if n == 4 => Component::F4,
            "H" if n == 3 || n == 4 => Component::H(n),
            "U" if n >= 1 => Component::Universal(n),
            "A" | "B" | "C" | "D" | "E" | "F" | "H" | "U" => return Err(out_of_range()),
            _ => return Err(Error::UnknownType(token.into())),
        };
        if component.rank() > MAX_RANK {
            return Err(out_of_range());
        }
        Ok(component)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::A(n) => write!(f, "A{n}"),
            Component::B(n) => write!(f, "B{n}"),
            Component::D(n) => write!(f, "D{n}"),
            Component::E(n) => write!(f, "E{n}"),
            Component::F4 => f.write_str("F4"),
            Component::H(n) => write!(f, "H{n}"),
            Component::I2(m) => write!(f, "I2({m})"),
            Component::Universal(n) => write!(f, "U{n}"),
            Component::File { path, .. } => write!(f, "file:{path}"),
        }
    }
}

/// A named Coxeter system, possibly reducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    pub descriptor: String,
    pub components: Vec<Component>,
}

impl SystemSpec {
    pub fn rank(&self) -> usize {
        self.components.iter().map(Component::rank).sum()
    }

    pub fn matrix(&self) -> CoxeterMatrix {
        build_matrix(self)
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor)
    }
}

impl FromStr for SystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

impl Serialize for SystemSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor)
    }
}

/// Parses descriptors such as `A5`, `I2(7)`, `A2xB3`, `U3` or `file:path`.
/// A `file:` component swallows the rest of the descriptor, so it must come
/// last in a product.
pub fn parse_spec(descriptor: &str) -> Result<SystemSpec> {
    let descriptor = descriptor.trim();
    if descriptor.is_empty() {
        return Err(Error::UnknownType(String::new()));
    }
    let (head, file) = match descriptor.find("file:") {
        Some(0) => ("", Some(descriptor)),
        Some(pos) if descriptor[..pos].ends_with(['x', 'X']) => {
            (&descriptor[..pos - 1], Some(&descriptor[pos..]))
        }
        Some(_) => return Err(Error::UnknownType(descriptor.into())),
        None => (descriptor, None),
    };
    let mut components = Vec::new();
    if !head.is_empty() {
        for token in head.split(['x', 'X']) {
            if token.is_empty() {
                return Err(Error::UnknownType(descriptor.into()));
            }
            components.push(Component::parse(token)?);
        }
    }
    if let Some(file) = file {
        components.push(Component::parse(file)?);
    }
    let spec = SystemSpec {
        descriptor: components.iter().map(ToString::to_string).collect::<Vec<_>>().join("x"),
        components,
    };
    if spec.rank() > MAX_RANK {
        return Err(Error::RankOutOfRange(descriptor.into()));
    }
    Ok(spec)
}

pub fn build_matrix(spec: &SystemSpec) -> CoxeterMatrix {
    spec.components
        .iter()
        .map(Component::matrix)
        .reduce(|a, b| a.direct_sum(&b))
        .expect("a parsed spec has at least one component")
}

/// Every standard irreducible type of rank at most `max_rank`, with dihedral
/// labels `I2(3)..=I2(max_dihedral)`.
pub fn standard_types(max_rank: usize, max_dihedral: u32) -> Vec<SystemSpec> {
    let mut names = Vec::new();
    for n in 1..=max_rank {
        names.push(format!("A{n}"));
    }
    for n in 2..=max_rank {
        names.push(format!("B{n}"));
    }
    for n in 4..=max_rank {
        names.push(format!("D{n}"));
    }
    for n in 6..=max_rank.min(8) {
        names.push(format!("E{n}"));
    }
    if max_rank >= 4 {
        names.push("F4".into());
    }
    for n in 3..=max_rank.min(4) {
        names.push(format!("H{n}"));
    }
    if max_rank >= 2 {
        for m in 3..=max_dihedral {
            names.push(format!("I2({m})"));
        }
    }
    names.iter().map(|s| parse_spec(s).expect("standard names parse")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_standard_names() {
        let a5 = parse_spec("A5").unwrap();
        assert_eq!(a5.rank(), 5);
        assert_eq!(a5.components.len(), 1);

        let prod = parse_spec("A2xB3").unwrap();
        assert_eq!(prod.rank(), 5);
        assert_eq!(prod.components, vec![Component::A(2), Component::B(3)]);

        assert_eq!(parse_spec("D3"), Err(Error::RankOutOfRange("D3".into())));
        assert_eq!(parse_spec("E9"), Err(Error::RankOutOfRange("E9".into())));
        assert_eq!(parse_spec("I2(2)"), Err(Error::RankOutOfRange("I2(2)".into())));
        assert!(matches!(parse_spec("Q4"), Err(Error::UnknownType(_))));
        assert!(matches!(parse_spec("A2x"), Err(Error::UnknownType(_))));
        assert!(matches!(parse_spec(""), Err(Error::UnknownType(_))));
    }

    #[test]
    fn descriptors_round_trip() {
        for d in ["A5", "A2xB3", "I2(7)", "I2(inf)", "U3", "E6xF4xH3", "D4xA1xA1"] {
            let spec = parse_spec(d).unwrap();
            assert_eq!(spec.descriptor, d);
            assert_eq!(parse_spec(&spec.descriptor).unwrap(), spec);
        }
        assert_eq!(parse_spec("i2(oo)").unwrap().descriptor, "I2(inf)");
    }

    #[test]
    fn matrices_of_small_types() {
        let a2 = parse_spec("A2").unwrap().matrix();
        assert_eq!(a2.get(0, 1), Label::Finite(3));
        let i27 = parse_spec("I2(7)").unwrap().matrix();
        assert_eq!(i27.get(0, 1), Label::Finite(7));
        let u3 = parse_spec("U3").unwrap().matrix();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Label::Finite(1) } else { Label::Infinite };
                assert_eq!(u3.get(i, j), want);
            }
        }
        let prod = parse_spec("A2xB2").unwrap().matrix();
        assert_eq!(prod.get(0, 1), Label::Finite(3));
        assert_eq!(prod.get(2, 3), Label::Finite(4));
        assert_eq!(prod.get(1, 2), Label::Finite(2));
        assert_eq!(prod.get(0, 3), Label::Finite(2));
    }

    #[test]
    fn graphs_of_small_types() {
        let a3 = parse_spec("A3").unwrap().matrix().graph();
        assert_eq!(a3.edges(), vec![(0, 1), (1, 2)]);
        let a1a1 = parse_spec("A1xA1").unwrap().matrix().graph();
        assert!(a1a1.edges().is_empty());
        let u3 = parse_spec("U3").unwrap().matrix().graph();
        assert_eq!(u3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(u3.label(0, 2), Some(Label::Infinite));
        let d4 = parse_spec("D4").unwrap().matrix().graph();
        assert_eq!(d4.edges(), vec![(0, 1), (1, 2), (1, 3)]);
        let e6 = parse_spec("E6").unwrap().matrix().graph();
        assert_eq!(e6.edges(), vec![(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn connectivity_matches_component_count() {
        for spec in standard_types(8, 12) {
            assert!(spec.matrix().graph().is_connected(), "{spec}");
        }
        for d in ["A1xA1", "A2xB3", "D4xH3", "E6xA1"] {
            assert!(!parse_spec(d).unwrap().matrix().graph().is_connected(), "{d}");
        }
    }

    #[test]
    fn matrix_file_formats() {
        let m = CoxeterMatrix::parse_file_contents("3\n0 0\n0\n").unwrap();
        assert_eq!(m, parse_spec("U3").unwrap().matrix());
        let full = CoxeterMatrix::parse_file_contents("2\n1 5\n5 1\n").unwrap();
        assert_eq!(full, parse_spec("I2(5)").unwrap().matrix());
        let b3 = parse_spec("B3").unwrap().matrix();
        assert_eq!(CoxeterMatrix::parse_file_contents(&b3.to_file_contents()).unwrap(), b3);
        assert_eq!(CoxeterMatrix::parse_file_contents("1\n").unwrap().rank(), 1);
    }

    #[test]
    fn matrix_file_validation() {
        let bad = [
            "",
            "0\n",
            "2\n1 3\n4 1\n",
            "2\n2 3\n3 1\n",
            "2\n1\n",
            "3\n3 3\n",
            "2\n-1\n",
            "2\nx\n",
        ];
        for text in bad {
            assert!(CoxeterMatrix::parse_file_contents(text).is_err(), "{text:?}");
        }
    }
}
