//! The default fuzz corpus and its one-pass analysis.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::{gen_null, gen_orthogonal_mixture, gen_quasi_standard, gen_standard, Mixture};
use super::GenSpec;
use crate::error::{Error, Result};
use crate::hermitian::Signature;
use crate::maps::{classify, is_orthogonal, sign_sample, MapClass, Orthogonality, RationalMap, SignReport};
use crate::random;

/// Bounds and seeds for [`default_corpus`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Instances generated per construction family.
    pub seeds_per_family: usize,
    /// Cap on `n` and `n'`.
    pub max_dim: usize,
    pub max_degree: u32,
    pub height: i64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seed: 0x5EED, seeds_per_family: 10, max_dim: 8, max_degree: 3, height: 5 }
    }
}

#[derive(Clone, Copy, Debug)]
enum Construction {
    Standard,
    Null,
    QuasiStandard,
    Mix(Mixture),
}

impl Construction {
    fn label(&self) -> &'static str {
        match self {
            Construction::Standard => "standard",
            Construction::Null => "null",
            Construction::QuasiStandard => "quasi-standard",
            Construction::Mix(m) => m.label(),
        }
    }

    fn build(&self, spec: &GenSpec) -> Result<RationalMap> {
        match self {
            Construction::Standard => gen_standard(spec),
            Construction::Null => gen_null(spec),
            Construction::QuasiStandard => gen_quasi_standard(spec),
            Construction::Mix(m) => gen_orthogonal_mixture(spec, *m),
        }
    }
}

struct Family {
    construction: Construction,
    source: (usize, usize, usize),
    target: (usize, usize, usize),
    degrees: &'static [u32],
}

const fn fam(
    construction: Construction,
    source: (usize, usize, usize),
    target: (usize, usize, usize),
    degrees: &'static [u32],
) -> Family {
    Family { construction, source, target, degrees }
}

use Construction::{Mix, Null, QuasiStandard, Standard};

/// Construction families chosen so that every rigidity hypothesis (with and without
/// sign evidence) is hit repeatedly, alongside sharpness examples outside them.
const FAMILIES: &[Family] = &[
    fam(Standard, (2, 2, 0), (2, 3, 0), &[1]),
    fam(Standard, (2, 2, 0), (2, 2, 1), &[1]),
    fam(Standard, (2, 3, 0), (2, 4, 1), &[1]),
    fam(Standard, (3, 2, 0), (3, 3, 0), &[1]),
    fam(Standard, (2, 2, 1), (2, 3, 1), &[1]),
    fam(Standard, (3, 3, 0), (3, 4, 0), &[1]),
    fam(Standard, (3, 3, 0), (3, 3, 2), &[1]),
    fam(Standard, (1, 2, 0), (1, 2, 1), &[1]),
    fam(Standard, (1, 3, 0), (1, 4, 0), &[1]),
    fam(Standard, (1, 3, 0), (1, 4, 2), &[1]),
    fam(Standard, (2, 1, 0), (2, 2, 0), &[1]),
    fam(Standard, (1, 1, 0), (1, 1, 1), &[1]),
    fam(QuasiStandard, (2, 2, 0), (2, 2, 1), &[2, 3]),
    fam(QuasiStandard, (2, 2, 0), (2, 3, 1), &[2]),
    fam(QuasiStandard, (2, 3, 0), (2, 3, 2), &[2]),
    fam(QuasiStandard, (3, 2, 0), (3, 3, 1), &[2]),
    fam(QuasiStandard, (2, 2, 1), (2, 2, 2), &[2]),
    fam(QuasiStandard, (2, 3, 0), (3, 4, 0), &[2]),
    fam(QuasiStandard, (3, 3, 0), (4, 4, 0), &[2]),
    fam(QuasiStandard, (1, 2, 0), (1, 2, 1), &[2, 3]),
    fam(QuasiStandard, (1, 3, 0), (1, 4, 1), &[2]),
    fam(QuasiStandard, (1, 3, 0), (1, 3, 2), &[2]),
    fam(QuasiStandard, (1, 1, 0), (2, 2, 1), &[2, 3]),
    fam(QuasiStandard, (2, 1, 0), (3, 2, 0), &[2]),
    fam(Null, (2, 2, 0), (2, 3, 1), &[1, 2, 3]),
    fam(Null, (2, 2, 0), (1, 3, 1), &[1, 2]),
    fam(Null, (3, 3, 0), (2, 4, 2), &[2]),
    fam(Null, (2, 3, 0), (2, 2, 2), &[2]),
    fam(Null, (3, 2, 0), (1, 3, 1), &[2]),
    fam(Null, (1, 2, 0), (1, 2, 1), &[2]),
    fam(Null, (1, 3, 0), (1, 4, 0), &[2, 3]),
    fam(Null, (1, 1, 0), (2, 0, 1), &[2]),
    fam(Null, (1, 2, 0), (0, 3, 1), &[2]),
    fam(Null, (2, 1, 1), (3, 0, 1), &[2]),
    fam(Null, (2, 2, 0), (2, 2, 0), &[2]),
    fam(Mix(Mixture::StandardSwap), (2, 1, 0), (2, 2, 0), &[1]),
    fam(Mix(Mixture::StandardSwap), (1, 2, 0), (1, 3, 1), &[1]),
    fam(Mix(Mixture::StandardSwap), (3, 2, 0), (3, 3, 0), &[1]),
    fam(Mix(Mixture::ExampleFamily), (1, 1, 0), (2, 2, 1), &[2, 3]),
    fam(Mix(Mixture::ExampleFamily), (2, 1, 0), (3, 2, 1), &[2]),
    fam(Mix(Mixture::ExampleFamily), (2, 2, 0), (3, 3, 1), &[2]),
    fam(Mix(Mixture::ExampleFamily), (1, 2, 0), (2, 3, 1), &[2]),
    fam(Mix(Mixture::PowerMap), (1, 1, 0), (1, 1, 0), &[2, 3]),
    fam(Mix(Mixture::Whitney), (1, 2, 0), (1, 3, 0), &[2]),
    fam(Mix(Mixture::Whitney), (1, 3, 0), (1, 5, 0), &[2]),
    fam(Mix(Mixture::Composition), (1, 1, 0), (2, 2, 1), &[2]),
    fam(Mix(Mixture::Composition), (2, 2, 0), (2, 3, 1), &[2]),
    fam(Mix(Mixture::Composition), (2, 2, 0), (2, 2, 1), &[1]),
    fam(Mix(Mixture::DoubledStandard), (1, 2, 0), (2, 4, 0), &[1]),
    fam(Mix(Mixture::DoubledStandard), (2, 2, 0), (4, 4, 0), &[1]),
    fam(Mix(Mixture::DoubledStandard), (1, 1, 0), (2, 2, 0), &[1]),
    fam(Mix(Mixture::AntiStandard), (2, 2, 0), (2, 2, 0), &[1]),
    fam(Mix(Mixture::AntiStandard), (2, 3, 0), (3, 2, 0), &[1]),
    fam(Mix(Mixture::AntiStandard), (1, 2, 0), (2, 1, 1), &[1]),
    fam(Mix(Mixture::AntiStandard), (2, 1, 0), (1, 2, 0), &[1]),
];

/// A generated corpus map with the construction that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub construction: String,
    pub spec: GenSpec,
    pub map: RationalMap,
}

fn sig(t: (usize, usize, usize)) -> Signature {
    Signature::rst(t.0, t.1, t.2)
}

/// Deterministic corpus over all construction families within the configured bounds.
pub fn default_corpus(config: &CorpusConfig) -> Result<Vec<CorpusEntry>> {
    let mut jobs = Vec::new();
    for (f_idx, fam) in FAMILIES.iter().enumerate() {
        let (src, tgt) = (sig(fam.source), sig(fam.target));
        if src.n() > config.max_dim || tgt.n() > config.max_dim {
            continue;
        }
        let degrees: Vec<u32> = fam.degrees.iter().copied().filter(|&d| d <= config.max_degree).collect();
        if degrees.is_empty() {
            continue;
        }
        for i in 0..config.seeds_per_family {
            let seed = random::sub_seed(config.seed, (f_idx as u64) << 20 | i as u64).max(1);
            let degree = degrees[i % degrees.len()];
            let spec = GenSpec { source: src, target: tgt, degree, seed, height: config.height };
            jobs.push((fam.construction, spec, i));
        }
    }
    jobs.par_iter()
        .map(|(c, spec, i)| {
            let map = c.build(spec)?;
            Ok(CorpusEntry {
                label: format!("{}:{}->{}:d{}:#{}", c.label(), spec.source, spec.target, spec.degree, i),
                construction: c.label().to_string(),
                spec: *spec,
                map,
            })
        })
        .collect()
}

/// Everything the rigidity checkers need about one map, computed once.
#[derive(Clone, Debug, Serialize)]
pub struct MapAnalysis {
    pub label: String,
    pub map: RationalMap,
    pub class: MapClass,
    pub orthogonality: Orthogonality,
    pub signs: SignReport,
}

pub fn analyze_map(label: &str, map: &RationalMap, sign_trials: usize, seed: u64) -> Result<MapAnalysis> {
    Ok(MapAnalysis {
        label: label.to_string(),
        map: map.clone(),
        class: classify(map),
        orthogonality: is_orthogonal(map)?,
        signs: sign_sample(map, sign_trials, seed),
    })
}

/// Analyses every entry in parallel; order and results are independent of scheduling.
pub fn analyze(entries: &[CorpusEntry], sign_trials: usize, seed: u64) -> Result<Vec<MapAnalysis>> {
    entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            analyze_map(&e.label, &e.map, sign_trials, random::sub_seed(seed, i as u64))
                .map_err(|err| Error::Corpus(format!("{}: {err}", e.label)))
        })
        .collect()
}
