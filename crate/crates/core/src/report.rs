//! Report objects for single elements, Coxeter elements and the universal
//! group, and the JSON, CSV and text renderings of all reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::coxelem::{
    coxeter_ancestor_decomposition, coxeter_elements, ilen_spectrum, min_ilen_coxeter_element,
    orientation_of, path_length,
};
use crate::error::Result;
use crate::graph::{chromatic_number, is_bipartite, longest_path_order, VertexSet};
use crate::system::SystemSpec;
use crate::table::{GroupTable, Word};
use crate::universal::{ug_ancestor_decomposition, FreeWord};
use crate::verify::ConjectureReport;
use crate::weak::{
    ancestor_decomposition, ancestors, involution_prefixes, render_factors,
    suffix_ancestor_decomposition, AncestorDecomposition, Outcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

/// A decomposition as factor words, or the ancestors that made it ambiguous.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionView {
    Unique { factors: Vec<Word>, rendered: String, ilen: usize },
    Ambiguous { element: Word, witnesses: Vec<Word> },
}

impl DecompositionView {
    fn from_outcome(t: &GroupTable, outcome: Outcome<AncestorDecomposition>) -> Self {
        match outcome {
            Outcome::Unique(d) => {
                let factors = d.factor_words(t);
                DecompositionView::Unique {
                    rendered: render_factors(&factors),
                    ilen: factors.len(),
                    factors,
                }
            }
            Outcome::Ambiguous(a) => DecompositionView::Ambiguous {
                element: t.canonical_reduced_word(a.element),
                witnesses: a.witnesses.iter().map(|&u| t.canonical_reduced_word(u)).collect(),
            },
        }
    }

    fn identity() -> Self {
        DecompositionView::Unique { factors: Vec::new(), rendered: "1".into(), ilen: 0 }
    }

    pub fn ilen(&self) -> Option<usize> {
        match self {
            DecompositionView::Unique { ilen, .. } => Some(*ilen),
            DecompositionView::Ambiguous { .. } => None,
        }
    }

    pub fn rendered(&self) -> String {
        match self {
            DecompositionView::Unique { rendered, .. } => rendered.clone(),
            DecompositionView::Ambiguous { witnesses, .. } => {
                format!("ambiguous: {}", render_factors(witnesses))
            }
        }
    }
}

/// Everything the weak order says about one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementReport {
    pub spec: String,
    pub word: Word,
    pub canonical_word: Word,
    pub length: usize,
    pub left_descents: VertexSet,
    pub is_involution: bool,
    pub involution_prefix_count: usize,
    pub ancestors: Vec<Word>,
    pub decomposition: DecompositionView,
    pub suffix_decomposition: DecompositionView,
}

impl ElementReport {
    pub fn new(spec: &SystemSpec, t: &GroupTable, word: &Word) -> Result<Self> {
        let w = t.element_from_word(word)?;
        let words = |set: crate::weak::PrefixSet| -> Vec<Word> {
            set.members.iter().map(|&u| t.canonical_reduced_word(u)).collect()
        };
        let (anc, decomposition, suffix_decomposition) = if w == t.identity() {
            (Vec::new(), DecompositionView::identity(), DecompositionView::identity())
        } else {
            (
                words(ancestors(t, w)?),
                DecompositionView::from_outcome(t, ancestor_decomposition(t, w)?),
                DecompositionView::from_outcome(t, suffix_ancestor_decomposition(t, w)?),
            )
        };
        Ok(Self {
            spec: spec.descriptor.clone(),
            word: word.clone(),
            canonical_word: t.canonical_reduced_word(w),
            length: t.length(w),
            left_descents: t.left_descents(w),
            is_involution: t.is_involution(w),
            involution_prefix_count: involution_prefixes(t, w).len(),
            ancestors: anc,
            decomposition,
            suffix_decomposition,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.spec);
        let _ = writeln!(s, "word: {}", self.word.render_generators());
        let _ = writeln!(s, "canonical reduced word: {}", self.canonical_word.render_generators());
        let _ = writeln!(s, "length: {}", self.length);
        let _ = writeln!(s, "left descents: {}", self.left_descents);
        let _ = writeln!(s, "involution: {}", if self.is_involution { "yes" } else { "no" });
        let _ = writeln!(s, "involution prefixes: {}", self.involution_prefix_count);
        let anc = if self.ancestors.is_empty() { "none".into() } else { render_factors(&self.ancestors) };
        let _ = writeln!(s, "ancestors: {anc}");
        let _ = writeln!(s, "decomposition: {}", self.decomposition.rendered());
        let _ = writeln!(s, "ilen: {}", opt(self.decomposition.ilen()));
        let _ = writeln!(s, "suffix decomposition: {}", self.suffix_decomposition.rendered());
        let _ = writeln!(s, "suffix ilen: {}", opt(self.suffix_decomposition.ilen()));
        s
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "undetermined".into(), |k| k.to_string())
}

/// One Coxeter element with its layered decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterElementView {
    pub ordering: Word,
    pub layers: Vec<VertexSet>,
    pub ilen: usize,
}

impl CoxeterElementView {
    pub fn rendered(&self) -> String {
        self.layers
            .iter()
            .map(|l| {
                let gens: Vec<String> = l.iter().map(|v| format!("r{}", v + 1)).collect();
                format!("({})", gens.join(" "))
            })
            .collect()
    }
}

/// Graph-level analysis of the Coxeter elements of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxElemReport {
    pub spec: String,
    pub rank: usize,
    pub chromatic_number: usize,
    pub coloring: Vec<VertexSet>,
    pub longest_path: usize,
    pub bipartite: bool,
    pub spectrum: BTreeMap<usize, usize>,
    pub min_ilen_witness: CoxeterElementView,
    /// Filled only on request.
    pub elements: Vec<CoxeterElementView>,
}

impl CoxElemReport {
    pub fn new(spec: &SystemSpec, list_elements: bool) -> Result<Self> {
        let g = spec.matrix().graph();
        let coloring = chromatic_number(&g)?;
        let longest_path = longest_path_order(&g)?;
        let spectrum = ilen_spectrum(&g)?;
        let view = |word: &crate::coxelem::CoxeterElementWord| {
            let o = orientation_of(&g, word);
            CoxeterElementView {
                ordering: word.word(),
                layers: coxeter_ancestor_decomposition(&o),
                ilen: path_length(&o),
            }
        };
        let (witness, _) = min_ilen_coxeter_element(&g)?;
        let elements = if list_elements {
            coxeter_elements(&g)?.iter().map(|(w, _)| view(w)).collect()
        } else {
            Vec::new()
        };
        Ok(Self {
            spec: spec.descriptor.clone(),
            rank: spec.rank(),
            chromatic_number: coloring.chromatic_number,
            coloring: coloring.classes,
            longest_path,
            bipartite: is_bipartite(&g),
            spectrum,
            min_ilen_witness: view(&witness),
            elements,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {} (rank {})", self.spec, self.rank);
        let classes: Vec<String> = self.coloring.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "chromatic number: {} [{}]", self.chromatic_number, classes.join(" "));
        let _ = writeln!(s, "longest path: {}", self.longest_path);
        let _ = writeln!(s, "bipartite: {}", if self.bipartite { "yes" } else { "no" });
        let spectrum: Vec<String> = self.spectrum.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        let _ = writeln!(s, "ilen spectrum: {}", spectrum.join(" "));
        let w = &self.min_ilen_witness;
        let _ = writeln!(
            s,
            "min ilen witness: {} -> {} (ilen {})",
            w.ordering.render_generators(),
            w.rendered(),
            w.ilen
        );
        for e in &self.elements {
            let _ = writeln!(s, "  {} -> {} (ilen {})", e.ordering.render_generators(), e.rendered(), e.ilen);
        }
        s
    }
}

/// Decomposition of `(r_1 ... r_n)^k` in the universal group of rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub n: usize,
    pub k: usize,
    pub word: Word,
    pub factors: Vec<Word>,
    pub rendered: String,
    pub ilen: usize,
    pub exceeds_rank: bool,
}

impl UniversalReport {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let w = FreeWord::coxeter_power(n, k)?;
        let factors: Vec<Word> = if w.is_empty() {
            Vec::new()
        } else {
            ug_ancestor_decomposition(&w)?.iter().map(FreeWord::to_word).collect()
        };
        let ilen = factors.len();
        Ok(Self {
            n,
            k,
            word: w.to_word(),
            rendered: if factors.is_empty() { "1".into() } else { render_factors(&factors) },
            factors,
            ilen,
            exceeds_rank: ilen > n,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "universal group of rank {}: (r1 ... r{})^{}", self.n, self.n, self.k);
        let _ = writeln!(s, "reduced word: {}", self.word.render_generators());
        let _ = writeln!(s, "decomposition: {}", self.rendered);
        let verdict = if self.exceeds_rank {
            format!("exceeds rank {}", self.n)
        } else if self.ilen == self.n {
            format!("equals rank {}", self.n)
        } else {
            format!("within rank {}", self.n)
        };
        let _ = writeln!(s, "ilen: {} ({verdict})", self.ilen);
        s
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn reports_to_text(reports: &[ConjectureReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        if let Some(f) = &r.failure {
            let _ = writeln!(s, "{}: error: {f}", r.spec);
            continue;
        }
        let _ = writeln!(
            s,
            "{}: order {} rank {} conj1 = {} conj2 = {} max_ilen {} suffix mismatches {} ({:.3}s)",
            r.spec,
            r.group_order,
            r.rank,
            flag(r.conjecture1_holds),
            flag(r.conjecture2_holds),
            r.max_ilen,
            r.suffix_ilen_mismatches,
            r.elapsed_seconds
        );
        let hist: Vec<String> = r.ilen_histogram.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        let _ = writeln!(s, "  ilen histogram: {}", hist.join(" "));
        for c in &r.conjecture1_counterexamples {
            let _ = writeln!(s, "  counterexample {}: ancestors {}", c.element, render_factors(&c.witnesses));
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(s, "{passed}/{} groups pass", reports.len());
    s
}

/// CSV summary with columns spec, order, conj1, conj2, max_ilen, rank,
/// seconds.
pub fn reports_to_csv(reports: &[ConjectureReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["spec", "order", "conj1", "conj2", "max_ilen", "rank", "seconds"])
        .expect("in-memory write");
    for r in reports {
        w.write_record([
            r.spec.clone(),
            r.group_order.to_string(),
            r.conjecture1_holds.to_string(),
            r.conjecture2_holds.to_string(),
            r.max_ilen.to_string(),
            r.rank.to_string(),
            format!("{:.6}", r.elapsed_seconds),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}
