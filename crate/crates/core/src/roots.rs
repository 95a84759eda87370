//! Root systems in the standard geometric representation.
//!
//! Coordinates are taken in the basis of simple roots, with the bilinear form
//! `B(a_i, a_j) = -cos(pi / m_ij)` (and `-1` for infinite labels). Roots are
//! discovered by closing the simple roots under the simple reflections; every
//! new vector is snapped onto an existing root when within tolerance.
//!
//! Root ids: positive roots are `0..N` with the simple roots first, and the
//! negative of root `p` is `p + N`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::scalar::RootScalar;
use crate::system::{CoxeterMatrix, Label};

/// Default cap on the total number of roots before a group is declared
/// infinite.
pub const DEFAULT_ROOT_CAP: usize = 8192;

/// Root ids are stored as `u16` in permutation tables.
const MAX_ROOT_CAP: usize = u16::MAX as usize;

pub type RootId = u16;

/// A closed finite root system together with the action of each simple
/// reflection on root ids.
#[derive(Clone, Debug)]
pub struct RootSystem<T> {
    matrix: CoxeterMatrix,
    /// Coordinates of the positive roots.
    positive: Vec<Vec<T>>,
    /// `reflect[s][r]` is the id of `s(r)`.
    reflect: Vec<Vec<RootId>>,
}


/// A root with its coordinates in the simple root basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Root<T> {
    pub id: RootId,
    pub positive: bool,
    pub coords: Vec<T>,
}

fn bilinear_form<T: RootScalar>(matrix: &CoxeterMatrix) -> Vec<Vec<T>> {
    let n = matrix.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match matrix.get(i, j) {
                    Label::Finite(1) => T::one(),
                    Label::Finite(m) => -(T::PI() / T::from_f64_lossy(m as f64)).cos(),
                    Label::Infinite => -T::one(),
                })
                .collect()
        })
        .collect()
}

/// Lookup of roots by coordinates, bucketed on a fixed linear projection.
struct RootIndex<T> {
    weights: Vec<T>,
    width: T,
    near: T,
    buckets: HashMap<i64, Vec<usize>>,
}

impl<T: RootScalar> RootIndex<T> {
    fn new(n: usize) -> Self {
        let golden = T::from_f64_lossy(0.618_033_988_749_895);
        let weights: Vec<T> = (0..n)
            .map(|j| {
                let x = T::from_f64_lossy(j as f64) * golden;
                T::one() + (x - x.floor())
            })
            .collect();
        // identifications closer than `near` but farther than the snap
        // tolerance are reported as unstable
        let near = T::snap_tolerance() * T::from_f64_lossy(10.0);
        let total = weights.iter().fold(T::zero(), |a, &w| a + w);
        Self { weights, width: total * near, near, buckets: HashMap::new() }
    }

    fn bucket(&self, v: &[T]) -> i64 {
        let p = v.iter().zip(&self.weights).fold(T::zero(), |a, (&x, &w)| a + x * w);
        (p / self.width).floor().to_i64().unwrap_or(i64::MAX)
    }

    fn find(&self, v: &[T], roots: &[Vec<T>]) -> Result<Option<usize>> {
        let k = self.bucket(v);
        let mut hit = None;
        for b in [k.saturating_sub(1), k, k.saturating_add(1)] {
            let Some(ids) = self.buckets.get(&b) else { continue };
            for &id in ids {
                let dist = v
                    .iter()
                    .zip(&roots[id])
                    .fold(T::zero(), |a, (&x, &y)| a.max((x - y).abs()));
                if dist < T::snap_tolerance() {
                    if hit.is_some_and(|h| h != id) {
                        return Err(Error::NumericalInstability(format!(
                            "vector {v:?} snaps to more than one root"
                        )));
                    }
                    hit = Some(id);
                } else if dist < self.near {
                    return Err(Error::NumericalInstability(format!(
                        "vector {v:?} is {dist:?} from root {id}, inside the ambiguity band"
                    )));
                }
            }
        }
        Ok(hit)
    }

    fn insert(&mut self, v: &[T], id: usize) {
        let b = self.bucket(v);
        self.buckets.entry(b).or_default().push(id);
    }
}

/// Closes the simple roots under the simple reflections.
///
/// Fails with [`Error::NotFinite`] once more than `cap` roots (positive and
/// negative together) have been found.
pub fn build_root_system<T: RootScalar>(matrix: &CoxeterMatrix, cap: usize) -> Result<RootSystem<T>> {
    let n = matrix.rank();
    if cap < 2 * n {
        return Err(Error::NotFinite { cap });
    }
    let cap = cap.min(MAX_ROOT_CAP);
    let form = bilinear_form::<T>(matrix);
    let tol = T::snap_tolerance();
    let two = T::one() + T::one();

    let mut positive: Vec<Vec<T>> = Vec::new();
    let mut index = RootIndex::<T>::new(n);
    for i in 0..n {
        let mut e = vec![T::zero(); n];
        e[i] = T::one();
        index.insert(&e, i);
        positive.push(e);
    }
    // images of positive roots, resolved to positive ids; `None` marks s_i(a_i)
    let mut images: Vec<Vec<Option<usize>>> = vec![Vec::new(); n];
    let mut queue: VecDeque<usize> = (0..n).collect();
    while let Some(p) = queue.pop_front() {
        for s in 0..n {
            if p == s {
                images[s].push(None);
                continue;
            }
            let beta = &positive[p];
            let pairing = (0..n).fold(T::zero(), |a, j| a + form[s][j] * beta[j]);
            let mut image = beta.clone();
            image[s] = image[s] - two * pairing;
            if image[s].abs() < tol {
                image[s] = T::zero();
            }
            if image.iter().any(|&x| x < -tol) {
                return Err(Error::NumericalInstability(format!(
                    "reflection {} of positive root {p} has mixed signs: {image:?}",
                    s + 1
                )));
            }
            let q = match index.find(&image, &positive)? {
                Some(q) => q,
                None => {
                    let q = positive.len();
                    if 2 * (q + 1) > cap {
                        return Err(Error::NotFinite { cap });
                    }
                    index.insert(&image, q);
                    positive.push(image);
                    queue.push_back(q);
                    q
                }
            };
            images[s].push(Some(q));
        }
    }
    // `images[s]` was filled in queue order, which is id order
    let count = positive.len();
    let reflect = images
        .iter()
        .enumerate()
        .map(|(s, img)| {
            let mut perm = vec![0 as RootId; 2 * count];
            for (p, q) in img.iter().enumerate() {
                let q = q.unwrap_or(s + count);
                let neg = if q >= count { q - count } else { q + count };
                perm[p] = q as RootId;
                perm[p + count] = neg as RootId;
            }
            perm
        })
        .collect();
    let system = RootSystem { matrix: matrix.clone(), positive, reflect };
    system.audit()?;
    Ok(system)
}

impl<T: RootScalar> RootSystem<T> {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn positive_count(&self) -> usize {
        self.positive.len()
    }

    pub fn root_count(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn negate(&self, r: RootId) -> RootId {
        let n = self.positive.len() as RootId;
        if r >= n {
            r - n
        } else {
            r + n
        }
    }

    pub fn is_positive(&self, r: RootId) -> bool {
        (r as usize) < self.positive.len()
    }

    pub fn root(&self, r: RootId) -> Root<T> {
        let p = r as usize % self.positive.len();
        let positive = self.is_positive(r);
        let coords = if positive {
            self.positive[p].clone()
        } else {
            self.positive[p].iter().map(|&x| -x).collect()
        };
        Root { id: r, positive, coords }
    }

    pub fn roots(&self) -> Vec<Root<T>> {
        (0..self.root_count()).map(|r| self.root(r as RootId)).collect()
    }

    /// Permutation of root ids induced by simple reflection `s` (0-based).
    pub fn reflection(&self, s: usize) -> &[RootId] {
        &self.reflect[s]
    }

    /// Purely combinatorial check of the snapped generator permutations: each
    /// is an involutive bijection sending its simple root to its negative and
    /// every other positive root to a positive root, each commutes with
    /// negation, and `s_i s_j` has order `m_ij`.
    pub fn audit(&self) -> Result<()> {
        let n = self.rank();
        let total = self.root_count();
        for s in 0..n {
            let perm = &self.reflect[s];
            let mut seen = vec![false; total];
            for (r, &img) in perm.iter().enumerate() {
                let img_u = img as usize;
                if img_u >= total || std::mem::replace(&mut seen[img_u], true) {
                    return Err(Error::AuditFailed(format!("generator {} is not a bijection", s + 1)));
                }
                if perm[img_u] as usize != r {
                    return Err(Error::AuditFailed(format!("generator {} is not an involution", s + 1)));
                }
                if perm[self.negate(r as RootId) as usize] != self.negate(img) {
                    return Err(Error::AuditFailed(format!(
                        "generator {} does not commute with negation",
                        s + 1
                    )));
                }
                let flips = r < self.positive_count() && !self.is_positive(img);
                if flips != (r == s) {
                    return Err(Error::AuditFailed(format!(
                        "generator {} sends root {r} to the wrong sign",
                        s + 1
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let product: Vec<RootId> =
                    (0..total).map(|r| self.reflect[i][self.reflect[j][r] as usize]).collect();
                let order = permutation_order(&product);
                let want = match self.matrix.get(i, j) {
                    Label::Finite(m) => m as u64,
                    Label::Infinite => 0,
                };
                if order != want {
                    return Err(Error::AuditFailed(format!(
                        "r{} r{} has order {order} on roots, expected m = {}",
                        i + 1,
                        j + 1,
                        self.matrix.get(i, j)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of a permutation: lcm of its cycle lengths.
fn permutation_order(perm: &[RootId]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            r = perm[r] as usize;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_spec;

    fn roots(d: &str) -> Result<RootSystem<f64>> {
        build_root_system(&parse_spec(d).unwrap().matrix(), DEFAULT_ROOT_CAP)
    }

    #[test]
    fn root_counts() {
        // |Phi| = 2N with N the number of reflections
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("I2(7)", 14),
            ("A3", 12),
            ("B3", 18),
            ("H3", 30),
            ("D4", 24),
            ("F4", 48),
            ("H4", 120),
            ("E6", 72),
            ("E8", 240),
            ("A2xB2", 14),
        ];
        for (d, count) in cases {
            assert_eq!(roots(d).unwrap().root_count(), count, "{d}");
        }
    }

    #[test]
    fn a2_roots_by_hand() {
        let sys = roots("A2").unwrap();
        let mut coords: Vec<Vec<i64>> = sys
            .roots()
            .iter()
            .map(|r| r.coords.iter().map(|x| x.round() as i64).collect())
            .collect();
        coords.sort();
        let mut want = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
        ];
        want.sort();
        assert_eq!(coords, want);
    }

    #[test]
    fn infinite_groups_are_rejected() {
        for d in ["U2", "U3", "I2(inf)"] {
            assert!(matches!(roots(d), Err(Error::NotFinite { .. })), "{d}");
        }
        // affine A2 has a triangle of 3s
        let affine = CoxeterMatrix::parse_file_contents("3\n3 3\n3\n").unwrap();
        assert!(matches!(
            build_root_system::<f64>(&affine, 500),
            Err(Error::NotFinite { cap: 500 })
        ));
        assert!(matches!(
            build_root_system::<f64>(&parse_spec("A3").unwrap().matrix(), 4),
            Err(Error::NotFinite { .. })
        ));
    }

    #[test]
    fn negation_pairs() {
        let sys = roots("H3").unwrap();
        for r in sys.roots() {
            let neg = sys.root(sys.negate(r.id));
            assert_eq!(neg.positive, !r.positive);
            for (a, b) in r.coords.iter().zip(&neg.coords) {
                assert_eq!(*a, -*b);
            }
        }
    }

    #[test]
    fn single_precision_agrees() {
        for d in ["A4", "B3", "H3", "H4", "I2(9)", "F4", "D5"] {
            let m = parse_spec(d).unwrap().matrix();
            let a = build_root_system::<f64>(&m, DEFAULT_ROOT_CAP).unwrap();
            let b = build_root_system::<f32>(&m, DEFAULT_ROOT_CAP).unwrap();
            assert_eq!(a.root_count(), b.root_count(), "{d}");
            for s in 0..m.rank() {
                assert_eq!(a.reflection(s), b.reflection(s), "{d}");
            }
        }
    }

    #[test]
    fn permutation_orders() {
        assert_eq!(permutation_order(&[0, 1, 2]), 1);
        assert_eq!(permutation_order(&[1, 2, 0, 4, 3]), 6);
    }
}
