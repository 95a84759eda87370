//! Reference implementations used to check the library. Nothing here calls
//! into the group table, the weak-order code or the graph algorithms.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use coxanc_core::{CoxeterGraph, CoxeterMatrix, Label};

/// A finite Coxeter group enumerated breadth-first as real matrices of the
/// geometric representation.
pub struct MatrixGroup {
    pub rank: usize,
    /// Shortest word for each element, in discovery order.
    pub words: Vec<Vec<usize>>,
    /// Cayley graph distance from the identity.
    pub len: Vec<usize>,
    /// `right[a][s]` is `a * s`.
    pub right: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

fn form(m: &CoxeterMatrix, i: usize, j: usize) -> f64 {
    if i == j {
        return 1.0;
    }
    match m.get(i, j) {
        Label::Finite(k) => -(std::f64::consts::PI / k as f64).cos(),
        Label::Infinite => -1.0,
    }
}

fn key(mat: &[f64]) -> Vec<i64> {
    mat.iter().map(|x| (x * 1e6).round() as i64).collect()
}

fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0.0 {
                for j in 0..n {
                    c[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    c
}

impl MatrixGroup {
    /// Panics past `limit` elements.
    pub fn new(m: &CoxeterMatrix, limit: usize) -> Self {
        let n = m.rank();
        let gens: Vec<Vec<f64>> = (0..n)
            .map(|s| {
                let mut g = vec![0.0; n * n];
                for i in 0..n {
                    g[i * n + i] = 1.0;
                }
                for j in 0..n {
                    g[s * n + j] -= 2.0 * form(m, s, j);
                }
                g
            })
            .collect();
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(key(&id), 0);
        let mut mats = vec![id];
        let mut words = vec![Vec::new()];
        let mut len = vec![0];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let mut row = vec![0; n];
            for s in 0..n {
                let p = matmul(&mats[a], &gens[s], n);
                let k = key(&p);
                let b = match index.get(&k) {
                    Some(&b) => b,
                    None => {
                        let b = mats.len();
                        assert!(b < limit, "more than {limit} elements");
                        index.insert(k, b);
                        mats.push(p);
                        let mut w = words[a].clone();
                        w.push(s);
                        words.push(w);
                        len.push(len[a] + 1);
                        queue.push_back(b);
                        b
                    }
                };
                row[s] = b;
            }
            right.push(row);
        }
        let mut g = MatrixGroup { rank: n, words, len, right, inv: Vec::new() };
        g.inv = (0..g.order()).map(|a| g.eval(g.words[a].iter().rev().copied())).collect();
        g
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn eval(&self, letters: impl IntoIterator<Item = usize>) -> usize {
        letters.into_iter().fold(0, |a, s| self.right[a][s])
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |x, &s| self.right[x][s])
    }

    /// `s * a`.
    pub fn left(&self, s: usize, a: usize) -> usize {
        self.mul(self.right[0][s], a)
    }

    pub fn is_involution(&self, a: usize) -> bool {
        a != 0 && self.mul(a, a) == 0
    }

    /// `w = u v` with lengths adding up.
    pub fn is_prefix(&self, u: usize, w: usize) -> bool {
        self.len[u] + self.len[self.mul(self.inv[u], w)] == self.len[w]
    }

    pub fn prefixes(&self, w: usize) -> Vec<usize> {
        (0..self.order()).filter(|&u| self.is_prefix(u, w)).collect()
    }

    pub fn ancestors(&self, w: usize) -> Vec<usize> {
        let ip: Vec<usize> = (0..self.order()).filter(|&u| self.is_involution(u) && self.is_prefix(u, w)).collect();
        let top = ip.iter().map(|&u| self.len[u]).max().unwrap_or(0);
        ip.into_iter().filter(|&u| self.len[u] == top).collect()
    }

    /// Ancestor decomposition, `None` if some step has several ancestors.
    pub fn decomposition(&self, w: usize) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = w;
        while cur != 0 {
            let a = self.ancestors(cur);
            if a.len() != 1 {
                return None;
            }
            out.push(a[0]);
            cur = self.mul(a[0], cur);
        }
        Some(out)
    }
}

/// Most vertices on a simple path, by exhaustive depth-first search.
pub fn longest_path_dfs(g: &CoxeterGraph) -> usize {
    fn go(g: &CoxeterGraph, v: usize, seen: &mut Vec<bool>) -> usize {
        seen[v] = true;
        let mut best = 0;
        for u in 0..g.vertex_count() {
            if !seen[u] && g.adjacent(u, v) {
                best = best.max(go(g, u, seen));
            }
        }
        seen[v] = false;
        best + 1
    }
    let n = g.vertex_count();
    (0..n).map(|v| go(g, v, &mut vec![false; n])).max().unwrap_or(0)
}

/// Least `k` admitting a proper `k`-coloring, trying all `k^n` assignments.
pub fn chromatic_brute(g: &CoxeterGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let edges = g.edges();
    for k in 1..=n {
        let total = k.pow(n as u32);
        for code in 0..total {
            let mut c = vec![0; n];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = x % k;
                x /= k;
            }
            if edges.iter().all(|&(u, v)| c[u] != c[v]) {
                return k;
            }
        }
    }
    n
}

/// All permutations of `0..n`.
pub fn orderings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Classical group orders.
pub fn classical_order(name: &str) -> Option<u64> {
    let fact = |n: u64| (1..=n).product::<u64>();
    let (head, tail) = name.split_at(1);
    if let Some(m) = name.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
        return m.parse::<u64>().ok().map(|m| 2 * m);
    }
    let n: u64 = tail.parse().ok()?;
    match (head, n) {
        ("A", n) => Some(fact(n + 1)),
        ("B", n) => Some((1u64 << n) * fact(n)),
        ("D", n) => Some((1u64 << (n - 1)) * fact(n)),
        ("E", 6) => Some(51_840),
        ("E", 7) => Some(2_903_040),
        ("E", 8) => Some(696_729_600),
        ("F", 4) => Some(1152),
        ("H", 3) => Some(120),
        ("H", 4) => Some(14_400),
        _ => None,
    }
}

/// Coxeter numbers of the irreducible finite types.
pub fn coxeter_number(name: &str) -> Option<usize> {
    if let Some(m) = name.strip_prefix("I2(").and_then(|s| s.strip_suffix(')')) {
        return m.parse().ok();
    }
    let (head, tail) = name.split_at(1);
    let n: usize = tail.parse().ok()?;
    match (head, n) {
        ("A", n) => Some(n + 1),
        ("B", n) => Some(2 * n),
        ("D", n) => Some(2 * n - 2),
        ("E", 6) => Some(12),
        ("E", 7) => Some(18),
        ("E", 8) => Some(30),
        ("F", 4) => Some(12),
        ("H", 3) => Some(10),
        ("H", 4) => Some(30),
        _ => None,
    }
}
