//! Instance generators, the fuzz corpus and instance-level checkers for the rigidity
//! statements.

mod checks;
mod corpus;
mod generators;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hermitian::Signature;
use crate::maps::MapDescriptor;

pub use checks::{
    check_boundary_prop, check_equiv1, check_faran_dichotomy, check_theorem, hypothesis_holds, less2_certificate,
    CheckParams,
};
pub use corpus::{analyze, analyze_map, default_corpus, CorpusConfig, CorpusEntry, MapAnalysis};
pub use generators::{
    example_instance, gen_null, gen_orthogonal_mixture, gen_quasi_standard, gen_standard, perturb, quasi_example,
    random_linear_map, twist_target, Mixture,
};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Inputs of every generator; outputs are deterministic functions of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub source: Signature,
    pub target: Signature,
    pub degree: u32,
    pub seed: u64,
    /// Bound on numerators of random coefficients.
    pub height: i64,
}

impl GenSpec {
    pub fn new(source: Signature, target: Signature, degree: u32, seed: u64) -> Self {
        GenSpec { source, target, degree, seed, height: 5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    Same,
    Less,
    Less2,
    Same2,
    DoubleDim,
    Main,
    Ball,
    Boundary,
    FaranType,
    Equiv1,
}

impl TheoremId {
    /// The rigidity statements checked over a whole corpus.
    pub const RIGIDITY: [TheoremId; 7] = [
        TheoremId::Same,
        TheoremId::Less,
        TheoremId::Less2,
        TheoremId::Same2,
        TheoremId::DoubleDim,
        TheoremId::Main,
        TheoremId::Ball,
    ];

    pub const ALL: [TheoremId; 10] = [
        TheoremId::Same,
        TheoremId::Less,
        TheoremId::Less2,
        TheoremId::Same2,
        TheoremId::DoubleDim,
        TheoremId::Main,
        TheoremId::Ball,
        TheoremId::Boundary,
        TheoremId::FaranType,
        TheoremId::Equiv1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Same => "same",
            TheoremId::Less => "less",
            TheoremId::Less2 => "less2",
            TheoremId::Same2 => "same2",
            TheoremId::DoubleDim => "double-dim",
            TheoremId::Main => "main",
            TheoremId::Ball => "ball",
            TheoremId::Boundary => "boundary",
            TheoremId::FaranType => "faran-type",
            TheoremId::Equiv1 => "equiv1",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().replace('-', "") == key)
            .ok_or_else(|| Error::Descriptor(format!("unknown theorem id `{s}`")))
    }
}

/// A corpus instance on which a checked conclusion failed, with everything needed to
/// reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub label: String,
    pub map: MapDescriptor,
    pub verdict: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub instances: usize,
    pub hypothesis_satisfied: usize,
    pub conclusion_verified: usize,
    /// Instances outside the hypothesis; nothing is asserted on them.
    pub vacuous: usize,
    /// Hypothesis instances that also carried sign-preservation evidence (the
    /// strengthened conclusions of same / double-dim / main).
    pub with_sign_evidence: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl TheoremReport {
    pub fn new(theorem: TheoremId) -> Self {
        TheoremReport {
            theorem,
            instances: 0,
            hypothesis_satisfied: 0,
            conclusion_verified: 0,
            vacuous: 0,
            with_sign_evidence: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.conclusion_verified == self.hypothesis_satisfied
    }

    /// Accumulates another report for the same theorem.
    pub fn merge(&mut self, other: TheoremReport) {
        debug_assert_eq!(self.theorem, other.theorem);
        self.instances += other.instances;
        self.hypothesis_satisfied += other.hypothesis_satisfied;
        self.conclusion_verified += other.conclusion_verified;
        self.vacuous += other.vacuous;
        self.with_sign_evidence += other.with_sign_evidence;
        self.counterexamples.extend(other.counterexamples);
    }

    pub fn record_vacuous(&mut self) {
        self.instances += 1;
        self.vacuous += 1;
    }

    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.instances += 1;
        self.hypothesis_satisfied += 1;
        if ok {
            self.conclusion_verified += 1;
        } else {
            self.counterexamples.push(counterexample());
        }
    }
}
