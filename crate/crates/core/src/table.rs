//! Full enumeration of a finite Coxeter group.
//!
//! Elements are identified by the root permutations they induce. Once the
//! generator permutations have passed the audit in [`crate::roots`], all work
//! here is integer arithmetic on those permutations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::roots::{build_root_system, RootId, RootSystem, DEFAULT_ROOT_CAP};
use crate::scalar::RootScalar;
use crate::system::{CoxeterMatrix, SystemSpec};

/// Default limit on the number of group elements.
pub const DEFAULT_ORDER_GUARD: usize = 1_000_000;

/// Index of an element in a [`GroupTable`]. The identity is `ElementId(0)`,
/// and ids increase with length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A word in the generators, 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    /// Builds a word from 1-based letters, checking them against `rank`.
    pub fn from_one_based(letters: &[usize], rank: usize) -> Result<Self> {
        letters
            .iter()
            .map(|&l| {
                if l == 0 || l > rank {
                    Err(Error::BadLetter { letter: l, rank })
                } else {
                    Ok(l - 1)
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Renders as `r1 r2 r1`, or `1` for the empty word.
    pub fn render_generators(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|l| format!("r{}", l + 1)).collect::<Vec<_>>().join(" ")
    }
}

/// Comma separated 1-based letters, e.g. `6,3,2,1,4,5`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_one_based().iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Parses comma separated 1-based letters. Letters are not range checked.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        s.split(',')
            .map(|tok| match tok.trim().parse::<usize>() {
                Ok(l) if l >= 1 => Ok(l - 1),
                Ok(l) => Err(Error::BadLetter { letter: l, rank: 0 }),
                Err(_) => Err(Error::BadLetter { letter: 0, rank: 0 }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_one_based())
    }
}

/// Multiplication table, lengths, inverses and descent data for every
/// element of a finite Coxeter group.
#[derive(Clone, Debug)]
pub struct GroupTable {
    matrix: CoxeterMatrix,
    rank: usize,
    positive_roots: usize,
    /// Row `w` holds the root id `w(r)` for every root `r`.
    perm: Vec<RootId>,
    len: Vec<u32>,
    inv: Vec<u32>,
    ldesc: Vec<u64>,
    rdesc: Vec<u64>,
    /// Row `w` holds `w * r_s` for each generator `s`.
    gen_mul: Vec<u32>,
    /// Left inversion sets `{b > 0 : w^-1(b) < 0}` as bitsets over positive
    /// root ids, `inv_words` words per element.
    left_inversions: Vec<u64>,
    inv_words: usize,
}

impl GroupTable {
    /// Builds root system and table in one go, in double precision.
    pub fn from_spec(spec: &SystemSpec, guard: usize) -> Result<Self> {
        Self::from_matrix(&spec.matrix(), guard)
    }

    pub fn from_matrix(matrix: &CoxeterMatrix, guard: usize) -> Result<Self> {
        let roots = build_root_system::<f64>(matrix, DEFAULT_ROOT_CAP)?;
        build_group_table(&roots, guard)
    }
}

/// Breadth-first closure from the identity under right multiplication by the
/// generators. Ids are assigned by length, and within a length by the
/// lexicographically least reduced word.
pub fn build_group_table<T: RootScalar>(roots: &RootSystem<T>, guard: usize) -> Result<GroupTable> {
    let n = roots.rank();
    let total = roots.root_count();
    let npos = roots.positive_count();
    let words = npos.div_ceil(64);
    let simple_mask = VertexSet::full(n).mask();

    // discovery order; levels are contiguous
    let mut perm: Vec<RootId> = (0..total as RootId).collect();
    let mut linv: Vec<u64> = vec![0; words];
    let mut level_start = vec![0usize, 1];
    let mut lookup: HashMap<Box<[RootId]>, u32> = HashMap::new();
    lookup.insert(perm[..n].into(), 0);

    let mut scratch = vec![0 as RootId; total];
    loop {
        let (lo, hi) = (level_start[level_start.len() - 2], level_start[level_start.len() - 1]);
        for w in lo..hi {
            for s in 0..n {
                let img = perm[w * total + s];
                if !roots.is_positive(img) {
                    continue;
                }
                let refl = roots.reflection(s);
                for (r, out) in scratch.iter_mut().enumerate() {
                    *out = perm[w * total + refl[r] as usize];
                }
                if lookup.contains_key(&scratch[..n]) {
                    continue;
                }
                let id = lookup.len();
                if id >= guard {
                    return Err(Error::OrderGuardExceeded { guard });
                }
                lookup.insert(scratch[..n].into(), id as u32);
                perm.extend_from_slice(&scratch);
                linv.extend_from_within(w * words..(w + 1) * words);
                linv[id * words + img as usize / 64] |= 1 << (img % 64);
            }
        }
        if lookup.len() == hi {
            break;
        }
        level_start.push(lookup.len());
    }
    let order = lookup.len();

    // renumber by (length, lex-least reduced word)
    let key_of = |images: &[RootId]| -> usize { lookup[images] as usize };
    let mut new_of_old = vec![u32::MAX; order];
    let mut old_of_new: Vec<usize> = Vec::with_capacity(order);
    new_of_old[0] = 0;
    old_of_new.push(0);
    let mut key = vec![0 as RootId; n];
    for pair in level_start.windows(2).skip(1) {
        let mut level: Vec<(usize, u32, usize)> = (pair[0]..pair[1])
            .map(|v| {
                let d = (linv[v * words] & simple_mask).trailing_zeros() as usize;
                let refl = roots.reflection(d);
                for (i, k) in key.iter_mut().enumerate() {
                    *k = refl[perm[v * total + i] as usize];
                }
                (d, new_of_old[key_of(&key)], v)
            })
            .collect();
        level.sort_unstable();
        for (_, _, v) in level {
            new_of_old[v] = old_of_new.len() as u32;
            old_of_new.push(v);
        }
    }
    let len_of_old: Vec<u32> = level_start
        .windows(2)
        .enumerate()
        .flat_map(|(l, p)| std::iter::repeat_n(l as u32, p[1] - p[0]))
        .collect();

    let mut table = GroupTable {
        matrix: roots.matrix().clone(),
        rank: n,
        positive_roots: npos,
        perm: Vec::with_capacity(order * total),
        len: Vec::with_capacity(order),
        inv: Vec::with_capacity(order),
        ldesc: Vec::with_capacity(order),
        rdesc: Vec::with_capacity(order),
        gen_mul: Vec::with_capacity(order * n),
        left_inversions: Vec::with_capacity(order * words),
        inv_words: words,
    };
    let mut inv_images = vec![0 as RootId; n];
    for &old in &old_of_new {
        let row = &perm[old * total..(old + 1) * total];
        table.perm.extend_from_slice(row);
        table.len.push(len_of_old[old]);
        let li = &linv[old * words..(old + 1) * words];
        table.left_inversions.extend_from_slice(li);
        table.ldesc.push(li[0] & simple_mask);
        let rd = (0..n).filter(|&s| !roots.is_positive(row[s])).fold(0u64, |a, s| a | 1 << s);
        table.rdesc.push(rd);
        for s in 0..n {
            let refl = roots.reflection(s);
            for (i, k) in key.iter_mut().enumerate() {
                *k = row[refl[i] as usize];
            }
            table.gen_mul.push(new_of_old[key_of(&key)]);
        }
        for (r, &img) in row.iter().enumerate() {
            if (img as usize) < n {
                inv_images[img as usize] = r as RootId;
            }
        }
        table.inv.push(new_of_old[key_of(&inv_images)]);
    }
    table.validate()?;
    Ok(table)
}

impl GroupTable {
    /// Checks the length, inverse and descent invariants on every element.
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::AuditFailed(msg));
        for w in self.elements() {
            let lw = self.length(w);
            let inv = self.inverse(w);
            if self.inverse(inv) != w || self.length(inv) != lw {
                return fail(format!("inverse of element {} is inconsistent", w.0));
            }
            for s in 0..self.rank {
                let right = self.mul_gen(w, s);
                let down = self.right_descents(w).contains(s);
                if self.length(right) != if down { lw - 1 } else { lw + 1 } {
                    return fail(format!("right descent rule fails at element {}", w.0));
                }
                let left = self.gen_mul_left(s, w);
                let down = self.left_descents(w).contains(s);
                if self.length(left) != if down { lw - 1 } else { lw + 1 } {
                    return fail(format!("left descent rule fails at element {}", w.0));
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.len.len()
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_roots
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    /// All elements in id order, which is non-decreasing in length.
    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order() as u32).map(ElementId)
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.len[w.index()] as usize
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        ElementId(self.inv[w.index()])
    }

    /// `w(r)` for a root id `r`.
    pub fn root_image(&self, w: ElementId, r: RootId) -> RootId {
        let total = 2 * self.positive_roots;
        self.perm[w.index() * total + r as usize]
    }

    /// Generators `r` with `l(rw) < l(w)`.
    pub fn left_descents(&self, w: ElementId) -> VertexSet {
        VertexSet::from_mask(self.ldesc[w.index()])
    }

    /// Generators `r` with `l(wr) < l(w)`.
    pub fn right_descents(&self, w: ElementId) -> VertexSet {
        VertexSet::from_mask(self.rdesc[w.index()])
    }

    /// `w * r_s`.
    pub fn mul_gen(&self, w: ElementId, s: usize) -> ElementId {
        ElementId(self.gen_mul[w.index() * self.rank + s])
    }

    /// `r_s * w`.
    pub fn gen_mul_left(&self, s: usize, w: ElementId) -> ElementId {
        self.inverse(self.mul_gen(self.inverse(w), s))
    }

    /// Left inversion set of `w` as a bitset over positive root ids.
    pub fn left_inversions(&self, w: ElementId) -> &[u64] {
        &self.left_inversions[w.index() * self.inv_words..(w.index() + 1) * self.inv_words]
    }

    pub fn check_letter(&self, letter: usize) -> Result<()> {
        if letter >= self.rank {
            return Err(Error::BadLetter { letter: letter + 1, rank: self.rank });
        }
        Ok(())
    }

    /// Evaluates an arbitrary (not necessarily reduced) word left to right.
    pub fn element_from_word(&self, word: &Word) -> Result<ElementId> {
        word.letters().iter().try_fold(self.identity(), |w, &s| {
            self.check_letter(s)?;
            Ok(self.mul_gen(w, s))
        })
    }

    /// Lexicographically least reduced word, built by repeatedly removing the
    /// least left descent.
    pub fn canonical_reduced_word(&self, w: ElementId) -> Word {
        let mut letters = Vec::with_capacity(self.length(w));
        let mut cur = w;
        while let Some(d) = self.left_descents(cur).first() {
            letters.push(d);
            cur = self.gen_mul_left(d, cur);
        }
        Word(letters)
    }

    pub fn is_involution(&self, w: ElementId) -> bool {
        w != self.identity() && self.inverse(w) == w
    }

    /// `u * v`, walking the shorter of the two canonical words.
    pub fn multiply(&self, u: ElementId, v: ElementId) -> ElementId {
        if self.length(u) <= self.length(v) {
            let word = self.canonical_reduced_word(u);
            word.letters().iter().rev().fold(v, |acc, &s| self.gen_mul_left(s, acc))
        } else {
            let word = self.canonical_reduced_word(v);
            word.letters().iter().fold(u, |acc, &s| self.mul_gen(acc, s))
        }
    }

    /// Least `k >= 1` with `w^k = 1`.
    pub fn element_order(&self, w: ElementId) -> usize {
        let mut k = 1;
        let mut power = w;
        while power != self.identity() {
            power = self.multiply(power, w);
            k += 1;
        }
        k
    }

    /// Generators occurring in a reduced word for `w`.
    pub fn support(&self, w: ElementId) -> VertexSet {
        self.canonical_reduced_word(w).letters().iter().copied().collect()
    }

    /// The longest element, the unique element of maximal length.
    pub fn longest_element(&self) -> ElementId {
        ElementId(self.order() as u32 - 1)
    }

    /// The product of a set of pairwise commuting generators.
    pub fn product_of_generators(&self, gens: VertexSet) -> ElementId {
        gens.iter().fold(self.identity(), |w, s| self.mul_gen(w, s))
    }
}
