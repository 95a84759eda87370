//! Whole-group sweeps checking that every non-identity element has a unique
//! ancestor and that involution lengths never exceed the rank.
//!
//! Instead of enumerating the prefix interval of each element, the sweep
//! lists the involutions once and tests each against each element through
//! left inversion sets. Elements are processed independently, so the element
//! range is split across worker threads; results are collected in id order,
//! which keeps reports identical for any number of workers.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::system::{parse_spec, SystemSpec};
use crate::table::{ElementId, GroupTable, DEFAULT_ORDER_GUARD};
use crate::weak::{is_prefix_by_inversions, Ambiguity, Outcome};

/// Environment variable overriding the element-count guard.
pub const ORDER_GUARD_ENV: &str = "COXANC_ORDER_GUARD";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `Some(1)` runs the plain serial loop, `None` uses the
    /// available parallelism.
    pub workers: Option<usize>,
    pub order_guard: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { workers: None, order_guard: DEFAULT_ORDER_GUARD }
    }
}

impl SweepOptions {
    pub fn serial() -> Self {
        Self { workers: Some(1), ..Self::default() }
    }

    /// Default options with the guard taken from [`ORDER_GUARD_ENV`] when
    /// set to a positive integer.
    pub fn from_env() -> Self {
        let order_guard = std::env::var(ORDER_GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&g: &usize| g > 0)
            .unwrap_or(DEFAULT_ORDER_GUARD);
        Self { workers: None, order_guard }
    }

    /// Maps `f` over `0..len` in order, serially or on a pool.
    fn map_range<T: Send>(&self, len: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        match self.workers {
            Some(1) => (0..len).map(f).collect(),
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool")
                .install(|| (0..len).into_par_iter().map(&f).collect()),
            None => (0..len).into_par_iter().map(f).collect(),
        }
    }
}

/// Involutions grouped by length, ascending ids within a length.
struct InvolutionIndex {
    by_length: Vec<Vec<ElementId>>,
}

impl InvolutionIndex {
    fn new(t: &GroupTable) -> Self {
        let top = t.elements().last().map_or(0, |w| t.length(w));
        let mut by_length = vec![Vec::new(); top + 1];
        for w in t.elements().filter(|&w| t.is_involution(w)) {
            by_length[t.length(w)].push(w);
        }
        Self { by_length }
    }

    /// All longest involution prefixes of a non-identity element.
    fn ancestors(&self, t: &GroupTable, w: ElementId) -> Vec<ElementId> {
        let start = t.length(w).min(self.by_length.len() - 1);
        for len in (1..=start).rev() {
            let found: Vec<ElementId> = self.by_length[len]
                .iter()
                .copied()
                .filter(|&u| is_prefix_by_inversions(t, u, w))
                .collect();
            if !found.is_empty() {
                return found;
            }
        }
        unreachable!("every left descent is an involution prefix")
    }
}

/// Ancestors of every element, indexed by element id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestorSweep {
    /// `None` for the identity.
    slots: Vec<Option<Outcome<ElementId>>>,
}

pub fn ancestor_sweep(t: &GroupTable, opts: &SweepOptions) -> AncestorSweep {
    let index = InvolutionIndex::new(t);
    let slots = opts.map_range(t.order(), |i| {
        let w = ElementId(i as u32);
        if w == t.identity() {
            return None;
        }
        let found = index.ancestors(t, w);
        Some(if found.len() == 1 {
            Outcome::Unique(found[0])
        } else {
            Outcome::Ambiguous(Ambiguity { element: w, witnesses: found })
        })
    });
    AncestorSweep { slots }
}

impl AncestorSweep {
    pub fn ancestor(&self, w: ElementId) -> Option<&Outcome<ElementId>> {
        self.slots[w.index()].as_ref()
    }

    /// Elements with more than one ancestor, in id order.
    pub fn ambiguities(&self) -> Vec<Ambiguity> {
        self.slots
            .iter()
            .filter_map(|s| match s {
                Some(Outcome::Ambiguous(a)) => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    /// Involution length of every element, `None` where some step of the
    /// decomposition is ambiguous. Ids increase with length and stripping an
    /// ancestor shortens the element, so one pass in id order suffices.
    pub fn involution_lengths(&self, t: &GroupTable) -> Vec<Option<usize>> {
        let mut ilen: Vec<Option<usize>> = vec![None; t.order()];
        ilen[0] = Some(0);
        for w in t.elements().skip(1) {
            if let Some(Outcome::Unique(a)) = self.ancestor(w) {
                let rest = t.multiply(*a, w);
                debug_assert!(rest < w);
                ilen[w.index()] = ilen[rest.index()].map(|k| k + 1);
            }
        }
        ilen
    }
}

pub fn verify_ancestor_property(t: &GroupTable) -> (bool, Vec<Ambiguity>) {
    let amb = ancestor_sweep(t, &SweepOptions::default()).ambiguities();
    (amb.is_empty(), amb)
}

/// Outcome of the rank bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlenBound {
    pub holds: bool,
    pub max_ilen: usize,
    /// Element count per involution length, identity at 0.
    pub histogram: BTreeMap<usize, u64>,
    /// Elements whose decomposition hit an ambiguous step.
    pub undetermined: u64,
}

fn ilen_bound_from(ilens: &[Option<usize>], rank: usize) -> IlenBound {
    let mut histogram = BTreeMap::new();
    let mut undetermined = 0;
    for k in ilens {
        match k {
            Some(k) => *histogram.entry(*k).or_insert(0) += 1,
            None => undetermined += 1,
        }
    }
    let max_ilen = histogram.keys().last().copied().unwrap_or(0);
    IlenBound { holds: undetermined == 0 && max_ilen <= rank, max_ilen, histogram, undetermined }
}

pub fn verify_ilen_bound(t: &GroupTable, rank: usize) -> IlenBound {
    let sweep = ancestor_sweep(t, &SweepOptions::default());
    ilen_bound_from(&sweep.involution_lengths(t), rank)
}

/// A counterexample to the ancestor property, by canonical reduced words.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Counterexample {
    pub element: crate::table::Word,
    pub witnesses: Vec<crate::table::Word>,
}

/// Verification outcome for one group.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ConjectureReport {
    pub spec: String,
    pub rank: usize,
    pub group_order: usize,
    pub conjecture1_holds: bool,
    pub conjecture1_counterexamples: Vec<Counterexample>,
    pub conjecture2_holds: bool,
    pub max_ilen: usize,
    pub ilen_histogram: BTreeMap<usize, u64>,
    pub ilen_undetermined: u64,
    pub suffix_ilen_mismatches: u64,
    pub elapsed_seconds: f64,
    /// Why the group could not be verified, e.g. because it is infinite.
    pub failure: Option<String>,
}

impl ConjectureReport {
    pub fn failed(spec: &SystemSpec, reason: String, elapsed_seconds: f64) -> Self {
        Self {
            spec: spec.descriptor.clone(),
            rank: spec.rank(),
            group_order: 0,
            conjecture1_holds: false,
            conjecture1_counterexamples: Vec::new(),
            conjecture2_holds: false,
            max_ilen: 0,
            ilen_histogram: BTreeMap::new(),
            ilen_undetermined: 0,
            suffix_ilen_mismatches: 0,
            elapsed_seconds,
            failure: Some(reason),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.conjecture1_holds && self.conjecture2_holds
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self { elapsed_seconds: 0.0, ..self.clone() }
    }
}

/// Runs both checks and the suffix comparison on a built table.
pub fn verify_table(spec: &SystemSpec, t: &GroupTable, opts: &SweepOptions) -> ConjectureReport {
    let start = Instant::now();
    let sweep = ancestor_sweep(t, opts);
    let amb = sweep.ambiguities();
    let ilens = sweep.involution_lengths(t);
    let bound = ilen_bound_from(&ilens, spec.rank());
    let suffix_ilen_mismatches = t
        .elements()
        .filter(|&w| {
            let (p, s) = (ilens[w.index()], ilens[t.inverse(w).index()]);
            p.is_some() && s.is_some() && p != s
        })
        .count() as u64;
    let counterexamples = amb
        .iter()
        .map(|a| Counterexample {
            element: t.canonical_reduced_word(a.element),
            witnesses: a.witnesses.iter().map(|&u| t.canonical_reduced_word(u)).collect(),
        })
        .collect();
    ConjectureReport {
        spec: spec.descriptor.clone(),
        rank: spec.rank(),
        group_order: t.order(),
        conjecture1_holds: amb.is_empty(),
        conjecture1_counterexamples: counterexamples,
        conjecture2_holds: bound.holds,
        max_ilen: bound.max_ilen,
        ilen_histogram: bound.histogram,
        ilen_undetermined: bound.undetermined,
        suffix_ilen_mismatches,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        failure: None,
    }
}

/// Builds and verifies each group in turn. A group that cannot be built
/// yields a report carrying the failure; the sweep carries on.
pub fn sweep(specs: &[SystemSpec], opts: &SweepOptions) -> Vec<ConjectureReport> {
    specs
        .iter()
        .map(|spec| {
            let start = Instant::now();
            match GroupTable::from_spec(spec, opts.order_guard) {
                Ok(t) => {
                    let mut report = verify_table(spec, &t, opts);
                    report.elapsed_seconds = start.elapsed().as_secs_f64();
                    report
                }
                Err(e) => ConjectureReport::failed(spec, e.to_string(), start.elapsed().as_secs_f64()),
            }
        })
        .collect()
}

/// The irreducible groups below order 100,000 other than dihedral ones, plus
/// dihedral groups up to `I2(50)`.
pub fn paper_preset() -> Vec<SystemSpec> {
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=7).map(|n| format!("A{n}")));
    names.extend((2..=6).map(|n| format!("B{n}")));
    names.extend((4..=6).map(|n| format!("D{n}")));
    names.extend(["E6", "F4", "H3", "H4"].map(String::from));
    names.extend((3..=50).map(|m| format!("I2({m})")));
    names.iter().map(|d| parse_spec(d).expect("preset names parse")).collect()
}

pub fn preset(name: &str) -> Result<Vec<SystemSpec>> {
    match name {
        "paper" => Ok(paper_preset()),
        other => Err(crate::Error::UnknownType(format!("preset `{other}`"))),
    }
}
