//! Claim records and their line-oriented rendering.
//!
//! ```text
//! CLAIM preserve:plus:left PASS tested=6
//! COUNTEREXAMPLE bijection:L:right:roundtrip-s
//! detail ...
//! gamma-semiring ...
//! fuzzy S
//! 0 1
//! 1 1/2
//! end
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::GammaSemiring;
use crate::fuzzy::FuzzySubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClaimStatus {
    Pass,
    Fail,
    Gated,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Gated => "GATED",
        })
    }
}

/// Everything needed to replay a failure: the structure and the fuzzy
/// subsets involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub detail: String,
    pub structure: GammaSemiring,
    pub subsets: Vec<FuzzySubset>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "detail {}", self.detail)?;
        write!(f, "{}", self.structure)?;
        for subset in &self.subsets {
            writeln!(f, "fuzzy {}", subset.carrier())?;
            write!(f, "{subset}")?;
        }
        writeln!(f, "end")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimRecord {
    pub id: String,
    pub tested: usize,
    /// instances skipped because a required unity is missing
    pub gated: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl ClaimRecord {
    pub fn new(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            tested: 0,
            gated: 0,
            failures: 0,
            counterexample: None,
        }
    }

    pub fn status(&self) -> ClaimStatus {
        if self.failures > 0 {
            ClaimStatus::Fail
        } else if self.tested == 0 && self.gated > 0 {
            ClaimStatus::Gated
        } else {
            ClaimStatus::Pass
        }
    }

    /// Counts one test; on failure keeps the smallest counterexample seen.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.tested += 1;
        if !ok {
            self.failures += 1;
            self.keep(counterexample());
        }
    }

    fn keep(&mut self, candidate: Counterexample) {
        let replace = match &self.counterexample {
            None => true,
            Some(current) => candidate.to_string() < current.to_string(),
        };
        if replace {
            self.counterexample = Some(candidate);
        }
    }

    fn merge(&mut self, other: ClaimRecord) {
        self.tested += other.tested;
        self.gated += other.gated;
        self.failures += other.failures;
        if let Some(c) = other.counterexample {
            self.keep(c);
        }
    }
}

/// Claim records keyed by id. Merging sums the counters and keeps the
/// smallest counterexample, so it is associative and order-independent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TheoremReport {
    records: BTreeMap<String, ClaimRecord>,
    notes: Vec<String>,
}

impl TheoremReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn claim(&mut self, id: &str) -> &mut ClaimRecord {
        self.records
            .entry(id.to_string())
            .or_insert_with(|| ClaimRecord::new(id))
    }

    pub fn gate(&mut self, id: &str) {
        self.claim(id).gated += 1;
    }

    pub fn get(&self, id: &str) -> Option<&ClaimRecord> {
        self.records.get(id)
    }

    pub fn records(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.values()
    }

    /// Free-form `NOTE` lines, kept sorted and deduplicated.
    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if let Err(pos) = self.notes.binary_search(&note) {
            self.notes.insert(pos, note);
        }
    }

    pub fn merge(&mut self, other: TheoremReport) {
        for (id, record) in other.records {
            match self.records.get_mut(&id) {
                Some(existing) => existing.merge(record),
                None => {
                    self.records.insert(id, record);
                }
            }
        }
        for note in other.notes {
            self.note(note);
        }
    }

    pub fn count(&self, status: ClaimStatus) -> usize {
        self.records.values().filter(|r| r.status() == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(ClaimStatus::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.records.values().filter(|r| r.status() == ClaimStatus::Fail)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for note in &self.notes {
            writeln!(f, "NOTE {note}")?;
        }
        for r in self.records.values() {
            writeln!(f, "CLAIM {} {} tested={}", r.id, r.status(), r.tested)?;
        }
        for r in self.records.values() {
            if let Some(c) = &r.counterexample {
                writeln!(f, "COUNTEREXAMPLE {}", r.id)?;
                write!(f, "{c}")?;
            }
        }
        writeln!(
            f,
            "SUMMARY pass={} fail={} gated={}",
            self.count(ClaimStatus::Pass),
            self.count(ClaimStatus::Fail),
            self.count(ClaimStatus::Gated)
        )
    }
}
