//! Subcommand implementations: each produces a typed report rendered as text or JSON.

use std::fmt::Write as _;

use hyperquadric::grassmann::{random_plane, span_of_image, symbolic_plane_image_dim};
use hyperquadric::harness::{
    analyze, analyze_map, check_boundary_prop, check_equiv1, check_faran_dichotomy, check_theorem, default_corpus,
    CheckParams, CorpusConfig, TheoremId, TheoremReport, SCHEMA_VERSION,
};
use hyperquadric::maps::{
    classify, decompose_quasi_with, is_orthogonal, project_embedded, remove_common_factor, MapClass, MapDescriptor,
    Mode, RationalMap, Verdict,
};
use hyperquadric::{random, Error, Subspace};
use serde::Serialize;

use crate::input::load_map;
use crate::{Cli, Command, Format, FuzzArgs, ModeArg};

pub struct Outcome {
    pub rendered: String,
    /// A checked statement failed: exit code 2.
    pub violation: bool,
}

fn render<T: Serialize>(format: Format, report: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Classify(m) => classify_cmd(cli, &load_map(&m.input)?),
        Command::OrthoTest(m) => ortho_cmd(cli, &load_map(&m.input)?),
        Command::Decompose { map, mode, retries, retry_seed } => {
            decompose_cmd(cli, &load_map(&map.input)?, *mode, *retries, *retry_seed)
        }
        Command::Planes { map, k, trials, symbolic } => planes_cmd(cli, &load_map(&map.input)?, *k, *trials, *symbolic),
        Command::Fuzz(args) => fuzz_cmd(cli, args),
        Command::Verify { map, theorem, trials } => verify_cmd(cli, &load_map(&map.input)?, theorem, *trials),
    }
}

fn subspace_line(name: &str, s: &Subspace) -> String {
    format!("{name} ≅ {s}\n")
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    schema: u32,
    command: &'static str,
    map: MapDescriptor,
    #[serde(flatten)]
    class: &'a MapClass,
}

fn witness_text(out: &mut String, class: &MapClass) {
    if let Some(w) = &class.witness {
        if let Some(a) = &w.a {
            out.push_str(&subspace_line("A", a));
        }
        if let Some(b) = &w.b {
            out.push_str(&subspace_line(if w.a.is_some() { "B" } else { "image span" }, b));
        }
        if let Some(phi) = &w.common_factor {
            let _ = writeln!(out, "common factor: {phi}");
        }
        if let Some(l) = &w.gram_scalar {
            let _ = writeln!(out, "gram scalar λ = {l}");
        }
    }
}

fn classify_cmd(cli: &Cli, f: &RationalMap) -> Result<Outcome, Error> {
    let class = classify(f);
    let report = ClassifyReport { schema: SCHEMA_VERSION, command: "classify", map: f.descriptor(), class: &class };
    let rendered = render(cli.format, &report, || {
        let mut out = format!("map: {f}\nverdict: {}\n", class.verdict);
        witness_text(&mut out, &class);
        out
    });
    Ok(Outcome { rendered, violation: false })
}

#[derive(Serialize)]
struct OrthoReport {
    schema: u32,
    command: &'static str,
    map: MapDescriptor,
    orthogonal: bool,
    k: u32,
    rho: String,
}

fn ortho_cmd(cli: &Cli, f: &RationalMap) -> Result<Outcome, Error> {
    let o = is_orthogonal(f)?;
    let report = OrthoReport {
        schema: SCHEMA_VERSION,
        command: "ortho-test",
        map: f.descriptor(),
        orthogonal: o.orthogonal,
        k: o.k,
        rho: o.rho.to_string(),
    };
    let rendered = render(cli.format, &report, || {
        let mut out = format!("map: {f}\northogonal: {}\n", o.orthogonal);
        if o.orthogonal {
            let _ = writeln!(out, "P = Q^{} · ρ, ρ = {}", o.k, o.rho);
        }
        out
    });
    Ok(Outcome { rendered, violation: false })
}

#[derive(Serialize)]
struct DecomposeReport {
    schema: u32,
    command: &'static str,
    map: MapDescriptor,
    mode: Mode,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection_a: Option<MapDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    projection_b: Option<MapDescriptor>,
}

fn decompose_cmd(cli: &Cli, f: &RationalMap, mode: ModeArg, retries: usize, seed: u64) -> Result<Outcome, Error> {
    let mode = match mode {
        ModeArg::Standard => Mode::Standard,
        ModeArg::Linear => Mode::Linear,
    };
    let found = decompose_quasi_with(f, mode, retries, seed)?;
    let projections = match &found {
        Some((a, b)) => {
            let pa = project_embedded(f, a, b).ok();
            let pb = project_embedded(f, b, a).ok();
            (pa, pb)
        }
        None => (None, None),
    };
    let report = DecomposeReport {
        schema: SCHEMA_VERSION,
        command: "decompose",
        map: f.descriptor(),
        mode,
        found: found.is_some(),
        a: found.as_ref().map(|(a, _)| a.clone()),
        b: found.as_ref().map(|(_, b)| b.clone()),
        projection_a: projections.0.as_ref().map(RationalMap::descriptor),
        projection_b: projections.1.as_ref().map(RationalMap::descriptor),
    };
    let rendered = render(cli.format, &report, || {
        let mut out = format!("map: {f}\n");
        match &found {
            Some((a, b)) => {
                out.push_str(&subspace_line("A", a));
                out.push_str(&subspace_line("B", b));
                if let Some(pa) = &projections.0 {
                    let (phi, red) = remove_common_factor(pa);
                    let _ = writeln!(out, "π_A∘F = {phi} · {red}");
                }
                if let Some(pb) = &projections.1 {
                    let _ = writeln!(out, "π_B∘F = {pb}");
                } else {
                    out.push_str("π_B∘F vanishes identically\n");
                }
            }
            None => out.push_str("no decomposition found\n"),
        }
        out
    });
    Ok(Outcome { rendered, violation: false })
}

#[derive(Serialize)]
struct PlanesReport {
    schema: u32,
    command: &'static str,
    map: MapDescriptor,
    k: usize,
    /// Projective dimension of each sampled image span; `null` where the map
    /// vanishes on the plane.
    dims: Vec<Option<i64>>,
    generic_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic_dim: Option<i64>,
    /// `min{r',s'} + t' − 1` for orthogonal maps and `k = min{r,s} − 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_bound: Option<i64>,
    within_bound: bool,
}

fn planes_cmd(cli: &Cli, f: &RationalMap, k: Option<usize>, trials: usize, symbolic: bool) -> Result<Outcome, Error> {
    let (src, tgt) = (f.source(), f.target());
    let natural = src.r.min(src.s).saturating_sub(1);
    let k = k.unwrap_or(natural);
    if k >= src.n() {
        return Err(Error::Dimension(format!("no {k}-planes in a space of dimension {}", src.n() - 1)));
    }
    let mut rng = random::rng(cli.seed);
    let mut dims = Vec::with_capacity(trials);
    for _ in 0..trials {
        let plane = random_plane(&mut rng, src, k, 10);
        dims.push(match span_of_image(f, &plane) {
            Ok(w) => Some(w.projective_dim()),
            Err(Error::Indeterminate(_)) => None,
            Err(e) => return Err(e),
        });
    }
    let generic_dim = dims.iter().flatten().copied().max().unwrap_or(-1);
    let symbolic_dim = if symbolic { symbolic_plane_image_dim(f, k)? } else { None };
    let orthogonal = src.r + src.s >= 2 && is_orthogonal(f)?.orthogonal;
    let boundary_bound =
        (orthogonal && k == natural && src.r.min(src.s) >= 1).then(|| (tgt.r.min(tgt.s) + tgt.t) as i64 - 1);
    let worst = symbolic_dim.unwrap_or(generic_dim).max(generic_dim);
    let within_bound = boundary_bound.is_none_or(|b| worst <= b);
    let report = PlanesReport {
        schema: SCHEMA_VERSION,
        command: "planes",
        map: f.descriptor(),
        k,
        dims,
        generic_dim,
        symbolic_dim,
        boundary_bound,
        within_bound,
    };
    let rendered = render(cli.format, &report, || {
        let mut out = format!("map: {f}\n{k}-planes: generic image dimension {generic_dim} over {trials} samples\n");
        if let Some(d) = symbolic_dim {
            let _ = writeln!(out, "symbolic generic dimension: {d}");
        }
        if let Some(b) = boundary_bound {
            let _ = writeln!(out, "boundary bound {b}: {}", if within_bound { "holds" } else { "VIOLATED" });
        }
        out
    });
    Ok(Outcome { rendered, violation: !within_bound })
}

fn parse_theorems(arg: &str) -> Result<Vec<TheoremId>, Error> {
    if arg.eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    arg.split(',').map(|s| s.trim().parse()).collect()
}

fn report_lines(out: &mut String, reports: &[TheoremReport]) {
    for r in reports {
        let _ = writeln!(
            out,
            "{:<11} {}  instances {:>5}  hypothesis {:>5}  verified {:>5}  vacuous {:>5}  counterexamples {}",
            r.theorem.name(),
            if r.passed() { "PASS" } else { "FAIL" },
            r.instances,
            r.hypothesis_satisfied,
            r.conclusion_verified,
            r.vacuous,
            r.counterexamples.len()
        );
        for c in &r.counterexamples {
            let _ = writeln!(out, "  counterexample {}: {}", c.label, c.reason);
        }
    }
}

#[derive(Serialize)]
struct InstanceLine {
    label: String,
    verdict: Verdict,
    orthogonal: bool,
}

#[derive(Serialize)]
struct FuzzReport {
    schema: u32,
    command: &'static str,
    seed: u64,
    config: CorpusConfig,
    params: CheckParams,
    corpus_size: usize,
    instances: Vec<InstanceLine>,
    reports: Vec<TheoremReport>,
}

fn fuzz_cmd(cli: &Cli, args: &FuzzArgs) -> Result<Outcome, Error> {
    let theorems = parse_theorems(&args.theorem)?;
    let config = CorpusConfig {
        seed: cli.seed,
        seeds_per_family: args.seeds,
        max_dim: args.max_dim,
        max_degree: args.max_degree,
        height: args.height,
    };
    let corpus = default_corpus(&config)?;
    let analysis = analyze(&corpus, args.sign_trials, random::sub_seed(cli.seed, 1))?;
    let params = CheckParams { seed: random::sub_seed(cli.seed, 2), ..CheckParams::default() };
    let reports = theorems.iter().map(|&id| check_theorem(id, &analysis, &params)).collect::<Result<Vec<_>, _>>()?;
    let violation = reports.iter().any(|r| !r.passed());
    let report = FuzzReport {
        schema: SCHEMA_VERSION,
        command: "fuzz",
        seed: cli.seed,
        config,
        params,
        corpus_size: corpus.len(),
        instances: analysis
            .iter()
            .map(|a| InstanceLine {
                label: a.label.clone(),
                verdict: a.class.verdict,
                orthogonal: a.orthogonality.orthogonal,
            })
            .collect(),
        reports,
    };
    if let Some(path) = &args.out {
        let mut json = serde_json::to_string_pretty(&report).expect("reports serialize");
        json.push('\n');
        std::fs::write(path, json).map_err(|e| Error::Descriptor(format!("writing {}: {e}", path.display())))?;
    }
    let rendered = render(cli.format, &report, || {
        let mut out = format!("corpus: {} maps (seed {})\n", report.corpus_size, cli.seed);
        report_lines(&mut out, &report.reports);
        out
    });
    Ok(Outcome { rendered, violation })
}

#[derive(Serialize)]
struct VerifyReport {
    schema: u32,
    command: &'static str,
    map: MapDescriptor,
    orthogonal: bool,
    verdict: Verdict,
    reports: Vec<TheoremReport>,
}

fn verify_cmd(cli: &Cli, f: &RationalMap, theorem: &str, trials: usize) -> Result<Outcome, Error> {
    let theorems = parse_theorems(theorem)?;
    let analysis = analyze_map("input", f, trials, cli.seed)?;
    let orthogonal = analysis.orthogonality.orthogonal;
    let params =
        CheckParams { seed: cli.seed, plane_trials: trials.min(16), equiv_trials: trials, ..CheckParams::default() };
    let mut reports = Vec::new();
    for id in theorems {
        let report = match id {
            TheoremId::FaranType => {
                let src = f.source();
                let l = src.r.min(src.s).max(1);
                if l < src.n() {
                    check_faran_dichotomy(f, l, params.plane_trials, cli.seed)?
                } else {
                    let mut r = TheoremReport::new(id);
                    r.record_vacuous();
                    r
                }
            }
            TheoremId::Equiv1 => check_equiv1(f, params.equiv_trials, cli.seed)?,
            // The remaining statements presuppose an orthogonal map.
            _ if !orthogonal => {
                let mut r = TheoremReport::new(id);
                r.record_vacuous();
                r
            }
            TheoremId::Boundary => check_boundary_prop(f, params.plane_trials, cli.seed)?,
            _ => check_theorem(id, std::slice::from_ref(&analysis), &params)?,
        };
        let mut report = report;
        for c in report.counterexamples.iter_mut() {
            c.label = "input".into();
        }
        reports.push(report);
    }
    let violation = reports.iter().any(|r| !r.passed());
    let report = VerifyReport {
        schema: SCHEMA_VERSION,
        command: "verify",
        map: f.descriptor(),
        orthogonal,
        verdict: analysis.class.verdict,
        reports,
    };
    let rendered = render(cli.format, &report, || {
        let mut out = format!("map: {f}\northogonal: {orthogonal}\nverdict: {}\n", report.verdict);
        report_lines(&mut out, &report.reports);
        out
    });
    Ok(Outcome { rendered, violation })
}
