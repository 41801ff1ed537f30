//! Serializable reports. Counts and seeds are written as decimal strings so
//! that no consumer ever sees them as floats.

use serde::Serialize;

use crate::algebra::mpoly::Poly;
use crate::harness::{CatalogEntry, Verification};
use crate::localinv::InvariantReport;
use crate::numericlab::{BirationalityReport, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub d: String,
    pub d_dual: String,
    pub f0: String,
    #[serde(rename = "t_I")]
    pub t_i: String,
    #[serde(rename = "t_J")]
    pub t_j: String,
    pub g: String,
    #[serde(rename = "mu_I")]
    pub mu_i: String,
    #[serde(rename = "mu_J")]
    pub mu_j: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeClass<T> {
    pub degree: T,
    pub class: T,
}

#[derive(Clone, Debug, Serialize)]
pub struct BirationalitySummary {
    pub verdict: Verdict,
    pub samples: String,
}

/// One curve and source. Fields that the command did not compute are null.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub curve: String,
    pub source: Option<String>,
    pub seed: String,
    pub invariants: Option<Invariants>,
    pub predicted: Option<DegreeClass<String>>,
    pub computed: Option<DegreeClass<String>>,
    /// Independent numeric fiber counts for the two images; null where the
    /// oracle was unstable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<DegreeClass<Option<String>>>,
    #[serde(rename = "match")]
    pub matches: Option<DegreeClass<bool>>,
    pub birationality: Option<BirationalitySummary>,
    pub caustic_equation: Option<String>,
    pub dual_equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quetelet_dandelin: Option<bool>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(curve: &Poly, seed: u64) -> Self {
        RunReport {
            curve: curve.to_string(),
            source: None,
            seed: seed.to_string(),
            invariants: None,
            predicted: None,
            computed: None,
            oracle: None,
            matches: None,
            birationality: None,
            caustic_equation: None,
            dual_equation: None,
            quetelet_dandelin: None,
            warnings: Vec::new(),
        }
    }

    pub fn set_invariants(&mut self, r: &InvariantReport) {
        self.invariants = Some(Invariants {
            d: r.d.to_string(),
            d_dual: r.d_dual.to_string(),
            f0: r.f0.to_string(),
            t_i: r.t_i.to_string(),
            t_j: r.t_j.to_string(),
            g: r.g.to_string(),
            mu_i: r.mu_i.to_string(),
            mu_j: r.mu_j.to_string(),
        });
        self.predicted = Some(DegreeClass {
            degree: r.predicted_degree.to_string(),
            class: r.predicted_class.to_string(),
        });
        if let (Some(d), Some(c)) = (r.computed_degree, r.computed_class) {
            self.computed = Some(DegreeClass {
                degree: d.to_string(),
                class: c.to_string(),
            });
        }
        if let (Some(d), Some(c)) = (r.degree_match, r.class_match) {
            self.matches = Some(DegreeClass {
                degree: d,
                class: c,
            });
        }
    }

    pub fn set_birationality(&mut self, b: &BirationalityReport) {
        self.birationality = Some(BirationalitySummary {
            verdict: b.verdict,
            samples: b.sample_count.to_string(),
        });
    }

    pub fn from_verification(
        curve: &Poly,
        seed: u64,
        v: &Verification,
        bir: Option<&BirationalityReport>,
    ) -> Self {
        let mut r = RunReport::new(curve, seed);
        r.source = Some(v.report.source.to_string());
        r.set_invariants(&v.report);
        if let Some(b) = bir {
            r.set_birationality(b);
        }
        r.oracle = Some(DegreeClass {
            degree: v.caustic.numeric_degree.map(|n| n.to_string()),
            class: v.caustic_dual.numeric_degree.map(|n| n.to_string()),
        });
        r.caustic_equation = Some(v.caustic.equation.to_string());
        r.dual_equation = Some(v.caustic_dual.equation.to_string());
        r.warnings = v.warnings();
        r
    }

    /// Formulas match, the oracle agrees with elimination, and the sampling
    /// test and the evolute cross-check did not fail where they were run.
    pub fn passed(&self) -> bool {
        let certified = match (&self.oracle, &self.computed) {
            (Some(o), Some(c)) => {
                o.degree.as_ref() == Some(&c.degree) && o.class.as_ref() == Some(&c.class)
            }
            (Some(_), None) => false,
            (None, _) => true,
        };
        certified
            && self.matches.as_ref().is_some_and(|m| m.degree && m.class)
            && self
                .birationality
                .as_ref()
                .is_none_or(|b| b.verdict == Verdict::Injective)
            && self.quetelet_dandelin != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub curve: String,
    pub notes: String,
    pub biduality: Option<bool>,
    pub sources: Vec<RunReport>,
    pub errors: Vec<String>,
    pub passed: bool,
}

impl EntryReport {
    pub(crate) fn new(e: &CatalogEntry) -> Self {
        EntryReport {
            name: e.name.to_string(),
            curve: e.equation.to_string(),
            notes: e.notes.to_string(),
            biduality: None,
            sources: Vec::new(),
            errors: Vec::new(),
            passed: false,
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.passed = self.errors.is_empty()
            && self.biduality == Some(true)
            && self.sources.iter().all(RunReport::passed);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub seed: String,
    pub entries: Vec<EntryReport>,
    pub passed: bool,
}

impl CatalogReport {
    pub fn new(seed: u64, entries: Vec<EntryReport>) -> Self {
        let passed = entries.iter().all(|e| e.passed);
        CatalogReport {
            seed: seed.to_string(),
            entries,
            passed,
        }
    }
}
