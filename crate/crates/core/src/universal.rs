//! The universal Coxeter group, where no two distinct generators satisfy any
//! relation.
//!
//! Every element has exactly one reduced word: the one with no two equal
//! adjacent letters. An element is an involution exactly when that word is a
//! nonempty palindrome, and its prefixes are its initial segments.

use std::fmt;

use crate::error::{Error, Result};
use crate::table::Word;

/// Longest word the universal group operations accept.
pub const MAX_WORD_LEN: usize = 10_000;

/// Reduced word of an element of the universal group, 0-based letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<usize>);

impl FreeWord {
    /// Reduces an arbitrary word by cancelling equal adjacent letters.
    pub fn reduce(letters: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut stack: Vec<usize> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
                if stack.len() > MAX_WORD_LEN {
                    return Err(Error::WordTooLong { len: stack.len(), limit: MAX_WORD_LEN });
                }
            }
        }
        Ok(FreeWord(stack))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Length of the element.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_involution(&self) -> bool {
        !self.0.is_empty() && self.0.iter().eq(self.0.iter().rev())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().copied().collect())
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// `(r_1 r_2 ... r_n)^k`.
    pub fn coxeter_power(n: usize, k: usize) -> Result<Self> {
        if n.saturating_mul(k) > 2 * MAX_WORD_LEN {
            return Err(Error::WordTooLong { len: n.saturating_mul(k), limit: MAX_WORD_LEN });
        }
        FreeWord::reduce((0..k).flat_map(|_| 0..n))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

pub fn ug_multiply(a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
    let mut out = a.0.clone();
    let mut rest = b.0.as_slice();
    while let (Some(&x), Some(&y)) = (out.last(), rest.first()) {
        if x != y {
            break;
        }
        out.pop();
        rest = &rest[1..];
    }
    out.extend_from_slice(rest);
    if out.len() > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len: out.len(), limit: MAX_WORD_LEN });
    }
    Ok(FreeWord(out))
}

/// Nonempty palindromic initial segments, shortest first.
pub fn ug_involution_prefixes(w: &FreeWord) -> Vec<FreeWord> {
    (1..=w.len())
        .map(|i| FreeWord(w.0[..i].to_vec()))
        .filter(FreeWord::is_involution)
        .collect()
}

/// Length of the longest palindromic initial segment, via the prefix function
/// of `w # reverse(w)`.
fn longest_palindromic_prefix(w: &[usize]) -> usize {
    const SEP: usize = usize::MAX;
    let text: Vec<usize> = w.iter().copied().chain([SEP]).chain(w.iter().rev().copied()).collect();
    let mut pi = vec![0usize; text.len()];
    for i in 1..text.len() {
        let mut k = pi[i - 1];
        while k > 0 && text[i] != text[k] {
            k = pi[k - 1];
        }
        if text[i] == text[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi.last().copied().unwrap_or(0)
}

/// Ancestor decomposition of a nonempty element: strip the longest
/// palindromic initial segment until nothing is left. Prefixes are unique per
/// length, so the ancestor is always unique.
pub fn ug_ancestor_decomposition(w: &FreeWord) -> Result<Vec<FreeWord>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if w.len() > MAX_WORD_LEN {
        return Err(Error::WordTooLong { len: w.len(), limit: MAX_WORD_LEN });
    }
    let mut factors = Vec::new();
    let mut rest = w.letters();
    while !rest.is_empty() {
        let k = longest_palindromic_prefix(rest);
        factors.push(FreeWord(rest[..k].to_vec()));
        rest = &rest[k..];
    }
    Ok(factors)
}

/// Involution length; zero for the identity.
pub fn ug_involution_length(w: &FreeWord) -> Result<usize> {
    if w.is_empty() {
        return Ok(0);
    }
    ug_ancestor_decomposition(w).map(|f| f.len())
}
