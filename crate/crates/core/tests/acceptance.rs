//! Acceptance run: prints one PASS/FAIL line per criterion with its measured
//! runtime against a pinned limit, and exits nonzero if any criterion fails.
//!
//! Every oracle here is computed independently of the library routine it checks:
//! pairings, polynomial evaluation, Gram matrices and definiteness are recomputed
//! from scratch in this file.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng as _;

use hyperquadric::grassmann::{in_omega, on_shilov, plane_from_chart, PlaneChart};
use hyperquadric::harness::{
    analyze, analyze_map, check_boundary_prop, check_theorem, default_corpus, gen_standard, hypothesis_holds, perturb,
    CheckParams, CorpusConfig, GenSpec, TheoremId, TheoremReport,
};
use hyperquadric::hermitian::subspace_signature;
use hyperquadric::linalg::rank;
use hyperquadric::maps::{
    classify, gram_scalar, is_null_map, is_orthogonal, verify_quasi, MapDescriptor, Mode, RationalMap, Verdict,
};
use hyperquadric::random::{self, Rng};
use hyperquadric::{Matrix, Polynomial, Signature, Subspace, GQ};

type Check = Result<String, String>;

/// Name, runtime limit and body of one criterion.
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Independent oracles.

fn epsilons(sig: &Signature) -> Vec<i64> {
    use std::iter::repeat_n;
    repeat_n(1, sig.r).chain(repeat_n(-1, sig.s)).chain(repeat_n(0, sig.t)).collect()
}

/// `⟨a, b⟩ = Σ ε_j a_j conj(b_j)`.
fn pair(eps: &[i64], a: &[GQ], b: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for ((e, x), y) in eps.iter().zip(a).zip(b) {
        if *e != 0 {
            acc += &(&(x * &y.conj()) * &GQ::from_int(*e));
        }
    }
    acc
}

fn eval_poly(p: &Polynomial, z: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (x, &e) in z.iter().zip(m.exps()) {
            for _ in 0..e {
                t *= x;
            }
        }
        acc += &t;
    }
    acc
}

fn eval_map(f: &RationalMap, z: &[GQ]) -> Vec<GQ> {
    f.components().iter().map(|p| eval_poly(p, z)).collect()
}

fn gaussian_int(rng: &mut Rng, h: i64) -> GQ {
    GQ::from_ratios(rng.gen_range(-h..=h), 1, rng.gen_range(-h..=h), 1)
}

fn gaussian_vec(rng: &mut Rng, n: usize, h: i64) -> Vec<GQ> {
    (0..n).map(|_| gaussian_int(rng, h)).collect()
}

fn nonzero_gaussian_vec(rng: &mut Rng, n: usize, h: i64) -> Vec<GQ> {
    loop {
        let v = gaussian_vec(rng, n, h);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// A nonzero `q` with `⟨q, p⟩ = 0`: project a random vector onto `p^⊥` and clear
/// the denominator `⟨p, p⟩` (real), keeping Gaussian-integer coordinates.
fn orthogonal_to(rng: &mut Rng, eps: &[i64], p: &[GQ]) -> Vec<GQ> {
    loop {
        let q = gaussian_vec(rng, p.len(), 4);
        let pp = pair(eps, p, p);
        let qp = pair(eps, &q, p);
        if pp.is_zero() && qp.is_zero() && q.iter().any(|x| !x.is_zero()) {
            return q;
        }
        let out: Vec<GQ> = q.iter().zip(p).map(|(qi, pi)| &(&pp * qi) - &(&qp * pi)).collect();
        if out.iter().any(|x| !x.is_zero()) {
            return out;
        }
    }
}

/// Gaussian integers modulo the Mersenne prime `2^61 − 1 ≡ 3 (mod 4)`. Reduction is a
/// ring homomorphism commuting with conjugation, so an exact zero reduces to zero
/// and a nonzero residue proves the exact value nonzero.
mod zp {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    use hyperquadric::GQ;

    pub const P: u64 = (1 << 61) - 1;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub struct Zp {
        pub re: u64,
        pub im: u64,
    }

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn int(n: &BigInt) -> u64 {
        let p = BigInt::from(P);
        (((n % &p) + &p) % &p).to_u64().expect("reduced below P")
    }

    fn rational(q: &BigRational) -> u64 {
        let d = int(q.denom());
        assert_ne!(d, 0, "denominator divisible by the modulus");
        mul(int(q.numer()), pow(d, P - 2))
    }

    impl Zp {
        pub const ZERO: Zp = Zp { re: 0, im: 0 };

        pub fn from_gq(x: &GQ) -> Zp {
            Zp { re: rational(&x.re), im: rational(&x.im) }
        }

        pub fn add(self, o: Zp) -> Zp {
            Zp { re: (self.re + o.re) % P, im: (self.im + o.im) % P }
        }

        pub fn neg(self) -> Zp {
            Zp { re: (P - self.re) % P, im: (P - self.im) % P }
        }

        pub fn mul(self, o: Zp) -> Zp {
            let re = (mul(self.re, o.re) + P - mul(self.im, o.im)) % P;
            let im = (mul(self.re, o.im) + mul(self.im, o.re)) % P;
            Zp { re, im }
        }

        pub fn conj(self) -> Zp {
            Zp { re: self.re, im: (P - self.im) % P }
        }
    }
}

use zp::Zp;

/// A map with coefficients reduced mod `P`, evaluated with per-point power tables.
struct ModMap {
    terms: Vec<Vec<(Vec<u32>, Zp)>>,
}

impl ModMap {
    fn new(f: &RationalMap) -> Self {
        let terms = f
            .components()
            .iter()
            .map(|p| p.terms().map(|(m, c)| (m.exps().to_vec(), Zp::from_gq(c))).collect())
            .collect();
        ModMap { terms }
    }

    fn eval(&self, z: &[Zp], degree: u32) -> Vec<Zp> {
        let powers: Vec<Vec<Zp>> = z
            .iter()
            .map(|&x| {
                let mut row = vec![Zp { re: 1, im: 0 }];
                for e in 0..degree as usize {
                    row.push(row[e].mul(x));
                }
                row
            })
            .collect();
        self.terms
            .iter()
            .map(|comp| {
                comp.iter().fold(Zp::ZERO, |acc, (exps, c)| {
                    let t = exps.iter().enumerate().fold(*c, |t, (j, &e)| t.mul(powers[j][e as usize]));
                    acc.add(t)
                })
            })
            .collect()
    }
}

fn pair_mod(eps: &[i64], a: &[Zp], b: &[Zp]) -> Zp {
    eps.iter().zip(a).zip(b).fold(Zp::ZERO, |acc, ((&e, x), y)| match e {
        1 => acc.add(x.mul(y.conj())),
        -1 => acc.add(x.mul(y.conj()).neg()),
        _ => acc,
    })
}

/// Pairs per map whose pairing is also recomputed in exact rational arithmetic.
const EXACT_PAIRS: usize = 5;

/// Sampling orthogonality oracle: `F(p) ⊥ F(q)` on `pairs` random Gaussian-integer
/// orthogonal pairs, stopping at the first violation. The first pairs are checked
/// exactly; all of them are checked mod `P`, and a violation found mod `P` is
/// confirmed exactly.
fn sampled_orthogonal(f: &RationalMap, pairs: usize, seed: u64) -> bool {
    let (es, et) = (epsilons(&f.source()), epsilons(&f.target()));
    let modmap = ModMap::new(f);
    let d = f.degree();
    let mut rng = random::rng(seed);
    for i in 0..pairs {
        let p = nonzero_gaussian_vec(&mut rng, es.len(), 3);
        let q = orthogonal_to(&mut rng, &es, &p);
        let exact = || pair(&et, &eval_map(f, &p), &eval_map(f, &q)).is_zero();
        if i < EXACT_PAIRS && !exact() {
            return false;
        }
        let (pm, qm): (Vec<Zp>, Vec<Zp>) = (p.iter().map(Zp::from_gq).collect(), q.iter().map(Zp::from_gq).collect());
        if pair_mod(&et, &modmap.eval(&pm, d), &modmap.eval(&qm, d)) != Zp::ZERO {
            assert!(!exact(), "a nonzero residue must come from a nonzero pairing");
            return false;
        }
    }
    true
}

/// `Mᴴ J' M`, entrywise.
fn pulled_back_gram(m: &Matrix, target: &Signature) -> Vec<Vec<GQ>> {
    let et = epsilons(target);
    let cols: Vec<Vec<GQ>> = (0..m.ncols()).map(|j| m.column(j)).collect();
    cols.iter().map(|a| cols.iter().map(|b| pair(&et, b, a)).collect()).collect()
}

/// The `λ` with `G = λ J`, if any.
fn proportionality(g: &[Vec<GQ>], source: &Signature) -> Option<GQ> {
    let es = epsilons(source);
    let j0 = es.iter().position(|&e| e != 0)?;
    let lambda = &g[j0][j0] * &GQ::from_int(es[j0]);
    let ok = (0..es.len()).all(|i| {
        (0..es.len()).all(|j| {
            let want = if i == j { &lambda * &GQ::from_int(es[i]) } else { GQ::zero() };
            g[i][j] == want
        })
    });
    ok.then_some(lambda)
}

/// Positive definiteness of a Hermitian matrix by pivot-free elimination: every
/// pivot of a positive definite matrix is a positive real.
fn positive_definite(mut g: Vec<Vec<GQ>>) -> bool {
    let n = g.len();
    for k in 0..n {
        let piv = g[k][k].clone();
        if !piv.is_real() || piv.re <= Zero::zero() {
            return false;
        }
        let pivot_row = g[k].clone();
        for row in g.iter_mut().skip(k + 1) {
            let f = &row[k] / &piv;
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x -= &(&f * p);
            }
        }
    }
    true
}

fn gram_of(sig: &Signature, basis: &[Vec<GQ>]) -> Vec<Vec<GQ>> {
    let e = epsilons(sig);
    basis.iter().map(|a| basis.iter().map(|b| pair(&e, a, b)).collect()).collect()
}

// ---------------------------------------------------------------------------
// Criteria.

fn example_fidelity() -> Check {
    let (src, tgt) = (Signature::rst(1, 1, 0), Signature::rst(2, 2, 1));
    let f = lib(RationalMap::parse(src, tgt, &["z1^2", "z2^2", "z1*z2", "z2^2", "z2^2"]))?;
    let o = lib(is_orthogonal(&f))?;
    let rho = Polynomial::monomial(vec![1, 0, 1, 0], GQ::one(), 2, 2);
    ensure(o.orthogonal && o.k == 1 && o.rho == rho, || {
        format!("got orthogonal={} k={} ρ={}", o.orthogonal, o.k, o.rho)
    })?;

    // P(z, w̄) = Q(z, w̄) · z1 w̄1 on sample points.
    let mut rng = random::rng(1);
    let (es, et) = (epsilons(&src), epsilons(&tgt));
    for _ in 0..50 {
        let (z, w) = (gaussian_vec(&mut rng, 2, 5), gaussian_vec(&mut rng, 2, 5));
        let lhs = pair(&et, &eval_map(&f, &z), &eval_map(&f, &w));
        let rhs = &pair(&es, &z, &w) * &(&z[0] * &w[0].conj());
        ensure(lhs == rhs, || "pullback is not Q · z1w̄1".into())?;
    }

    let class = classify(&f);
    ensure(class.verdict == Verdict::QuasiStandard, || format!("verdict {}", class.verdict))?;
    let w = class.witness.ok_or("no witness")?;
    let (a, b) = (w.a.ok_or("no A")?, w.b.ok_or("no B")?);
    let a_want = lib(Subspace::coordinate(tgt, &[0, 2]))?;
    let b_want = lib(Subspace::coordinate(tgt, &[1, 3, 4]))?;
    ensure(a == a_want && a.abc() == (1, 1, 0), || format!("A = {a}"))?;
    ensure(b == b_want && b.abc() == (1, 1, 1), || format!("B = {b}"))?;
    ensure(verify_quasi(&f, &a, &b, Mode::Standard), || "verify_quasi rejected the witness".into())?;
    Ok(format!("k=1, ρ=z1w̄1, A ≅ {a}, B ≅ {b}"))
}

fn oracle_agreement() -> Check {
    const PAIRS: usize = 1000;
    let corpus = lib(default_corpus(&CorpusConfig::default()))?;
    let mut maps: Vec<(String, RationalMap)> = Vec::new();
    for (i, e) in corpus.iter().enumerate().step_by(5).take(110) {
        maps.push((e.label.clone(), e.map.clone()));
        let j = (i + 2) % corpus.len();
        maps.push((format!("perturbed {}", corpus[j].label), perturb(&corpus[j].map, 0xBEEF + i as u64)));
    }
    ensure(maps.len() >= 200, || format!("only {} maps", maps.len()))?;
    let mut non_orthogonal = 0;
    for (i, (label, f)) in maps.iter().enumerate() {
        let symbolic = lib(is_orthogonal(f))?.orthogonal;
        let sampled = sampled_orthogonal(f, PAIRS, 0xA11CE + i as u64);
        ensure(symbolic == sampled, || format!("{label}: divisibility says {symbolic}, sampling says {sampled}"))?;
        non_orthogonal += usize::from(!symbolic);
    }
    Ok(format!(
        "{} maps ({} non-orthogonal), {PAIRS} orthogonal pairs each, 100% agreement",
        maps.len(),
        non_orthogonal
    ))
}

fn linear_checker() -> Check {
    let pairs = [
        (Signature::rst(1, 1, 0), Signature::rst(2, 2, 0)),
        (Signature::rst(2, 1, 0), Signature::rst(3, 2, 1)),
        (Signature::rst(1, 2, 1), Signature::rst(2, 3, 1)),
        (Signature::rst(2, 2, 0), Signature::rst(3, 3, 0)),
        (Signature::rst(1, 0, 1), Signature::rst(2, 1, 1)),
    ];
    let scalings = [
        (GQ::one(), GQ::one()),
        (GQ::from_int(2), GQ::from_int(4)),
        (GQ::from_ratios(3, 2, 0, 1), GQ::from_ratios(9, 4, 0, 1)),
    ];
    for i in 0..100u64 {
        let (src, tgt) = pairs[i as usize % pairs.len()];
        let f = lib(gen_standard(&GenSpec::new(src, tgt, 1, i + 1)))?;
        let (c, lambda) = &scalings[i as usize % scalings.len()];
        let m = f.linear_matrix().ok_or("standard maps are linear")?.scale(c);
        let oracle = proportionality(&pulled_back_gram(&m, &tgt), &src);
        ensure(oracle.as_ref() == Some(lambda), || format!("isometry #{i}: Mᴴ J' M is not {lambda} J"))?;
        let got = lib(gram_scalar(&m, &src, &tgt))?;
        ensure(got.as_ref() == Some(lambda), || format!("isometry #{i}: gram_scalar = {got:?}, want {lambda}"))?;
    }
    let mut rng = random::rng(0x11AE);
    for i in 0..100 {
        let (src, tgt) = pairs[i % pairs.len()];
        let m = random::matrix(&mut rng, tgt.n(), src.n(), 4);
        let oracle = proportionality(&pulled_back_gram(&m, &tgt), &src);
        ensure(oracle.is_none(), || format!("random matrix #{i} happens to be proportional"))?;
        let got = lib(gram_scalar(&m, &src, &tgt))?;
        ensure(got.is_none(), || format!("random matrix #{i}: gram_scalar = {got:?}, want none"))?;
    }
    Ok("100 scaled isometries recovered λ ∈ {1, 4, 9/4}; 100 non-proportional maps gave none".into())
}

fn theorem_suite() -> Check {
    const MIN_INSTANCES: usize = 20;
    let cfg = CorpusConfig::default();
    let corpus = lib(default_corpus(&cfg))?;
    ensure(corpus.len() >= 500, || format!("corpus has {} maps", corpus.len()))?;
    for e in &corpus {
        let (n, n2, d) = (e.map.source().n(), e.map.target().n(), e.map.degree());
        ensure(n <= 8 && n2 <= 8 && d <= 3, || format!("{} exceeds the corpus caps", e.label))?;
    }
    let analysis = lib(analyze(&corpus, 48, cfg.seed))?;
    let params = CheckParams::default();
    let mut lines = Vec::new();
    for id in TheoremId::RIGIDITY {
        let r = lib(check_theorem(id, &analysis, &params))?;
        ensure(r.counterexamples.is_empty(), || {
            format!("{id}: {} counterexamples, first {:?}", r.counterexamples.len(), r.counterexamples[0])
        })?;
        ensure(r.passed(), || format!("{id}: verified {} of {}", r.conclusion_verified, r.hypothesis_satisfied))?;
        ensure(r.hypothesis_satisfied >= MIN_INSTANCES, || {
            format!("{id}: only {} non-vacuous instances (need {MIN_INSTANCES})", r.hypothesis_satisfied)
        })?;
        lines.push(format!("{id} {}", r.hypothesis_satisfied));
    }
    Ok(format!("{} maps, 0 counterexamples; non-vacuous instances: {}", corpus.len(), lines.join(", ")))
}

fn plane_mapping() -> Check {
    const MAPS: usize = 50;
    const PLANES: usize = 30;
    const CHARTS: usize = 100;
    let corpus = lib(default_corpus(&CorpusConfig::default()))?;
    let step = corpus.len() / MAPS;
    let mut rng = random::rng(0x9A7E);
    for (i, e) in corpus.iter().step_by(step).take(MAPS).enumerate() {
        let f = &e.map;
        let (src, tgt) = (f.source(), f.target());
        let k = src.r.min(src.s).max(1) - 1;
        let bound = (tgt.r.min(tgt.s) + tgt.t) as i64 - 1;
        let report = lib(check_boundary_prop(f, PLANES, 0xB0 + i as u64))?;
        ensure(report.passed() && report.hypothesis_satisfied >= PLANES, || format!("{}: {report:?}", e.label))?;
        // Independent estimate of each image span from point evaluations.
        let samples = num_monomials(k + 1, f.degree()) + 3;
        for _ in 0..PLANES {
            let basis: Vec<Vec<GQ>> = (0..=k).map(|_| gaussian_vec(&mut rng, src.n(), 3)).collect();
            let images: Vec<Vec<GQ>> = (0..samples)
                .map(|_| {
                    let coeffs = gaussian_vec(&mut rng, k + 1, 3);
                    let p: Vec<GQ> = (0..src.n())
                        .map(|j| coeffs.iter().zip(&basis).fold(GQ::zero(), |acc, (c, b)| &acc + &(c * &b[j])))
                        .collect();
                    eval_map(f, &p)
                })
                .collect();
            let dim = rank(&images, tgt.n()) as i64 - 1;
            ensure(dim <= bound, || format!("{}: a {k}-plane spans a {dim}-plane, bound {bound}", e.label))?;
        }
    }

    let sigs = [
        Signature::rst(1, 1, 0),
        Signature::rst(1, 2, 1),
        Signature::rst(2, 2, 0),
        Signature::rst(2, 3, 1),
        Signature::rst(3, 3, 0),
    ];
    let mut generic_in_omega = 0;
    for i in 0..CHARTS {
        let sig = sigs[i % sigs.len()];
        let b = random::matrix(&mut rng, sig.r, sig.t, 3);
        let omega = lib(PlaneChart::new(sig, random::omega_point(&mut rng, sig.r, sig.s), b.clone()))?;
        let shilov = lib(PlaneChart::new(sig, random::shilov_point(&mut rng, sig.r, sig.s), b))?;
        let generic = PlaneChart::random(&mut rng, sig, 1);
        for chart in [&omega, &generic] {
            if in_omega(chart.a()) {
                let plane = plane_from_chart(chart);
                ensure(positive_definite(gram_of(&sig, plane.basis())), || format!("Ω chart {i} is not positive"))?;
                ensure(lib(subspace_signature(&sig, plane.basis()))? == (sig.r, 0, 0), || format!("Ω chart {i}"))?;
            } else {
                ensure(!std::ptr::eq(chart, &omega), || format!("Ω sample {i} rejected by in_omega"))?;
            }
        }
        generic_in_omega += usize::from(in_omega(generic.a()));
        ensure(lib(on_shilov(shilov.a()))?, || format!("Shilov sample {i} rejected by on_shilov"))?;
        let plane = plane_from_chart(&shilov);
        let g = gram_of(&sig, plane.basis());
        ensure(g.iter().flatten().all(Zero::is_zero), || format!("Shilov chart {i} is not null"))?;
        ensure(lib(subspace_signature(&sig, plane.basis()))? == (0, 0, sig.r), || format!("Shilov chart {i}"))?;
    }
    Ok(format!(
        "{MAPS} maps × {PLANES} planes within min{{r',s'}}+t'−1; {CHARTS} Ω and {CHARTS} Shilov charts consistent \
         ({generic_in_omega} of {CHARTS} generic charts in Ω)"
    ))
}

fn num_monomials(vars: usize, d: u32) -> usize {
    // C(vars + d − 1, d)
    let d = d as usize;
    (1..=d).fold(1usize, |acc, i| acc * (vars + i - 1) / i)
}

fn sharpness_sentinel() -> Check {
    let sig = Signature::rst(1, 1, 0);
    let f = lib(RationalMap::parse(sig, sig, &["z1^2", "z2^2"]))?;
    ensure(lib(is_orthogonal(&f))?.orthogonal, || "not orthogonal".into())?;
    ensure(sampled_orthogonal(&f, 200, 6), || "sampling disagrees".into())?;
    ensure(!is_null_map(&f), || "reported null".into())?;
    let class = classify(&f);
    ensure(class.verdict == Verdict::Unclassified, || format!("verdict {}", class.verdict))?;
    let a = lib(analyze_map("sentinel", &f, 48, 6))?;
    for id in TheoremId::RIGIDITY {
        ensure(hypothesis_holds(id, &sig, &sig, &a.signs).is_none(), || format!("{id} gate fires"))?;
    }
    let params = CheckParams::default();
    let corpus = [a];
    let reports: Vec<TheoremReport> =
        TheoremId::RIGIDITY.iter().map(|&id| lib(check_theorem(id, &corpus, &params))).collect::<Result<_, _>>()?;
    for r in &reports {
        let all_vacuous = r.hypothesis_satisfied == 0 && r.vacuous == r.instances && r.counterexamples.is_empty();
        ensure(all_vacuous, || format!("{}: {r:?}", r.theorem))?;
    }
    Ok("orthogonal, not null, Unclassified; all 7 rigidity gates vacuous".into())
}

fn determinism_round_trip() -> Check {
    let cfg = CorpusConfig::default();
    let a = lib(default_corpus(&cfg))?;
    let b = lib(default_corpus(&cfg))?;
    let ser = |c: &[hyperquadric::harness::CorpusEntry]| {
        serde_json::to_string(&c.iter().map(|e| (&e.label, &e.spec, e.map.descriptor())).collect::<Vec<_>>())
    };
    ensure(lib(ser(&a))? == lib(ser(&b))?, || "corpus differs between runs".into())?;

    let small = CorpusConfig { seeds_per_family: 1, ..cfg.clone() };
    let run = || -> Result<String, String> {
        let corpus = lib(default_corpus(&small))?;
        let analysis = lib(analyze(&corpus, 48, small.seed))?;
        let reports: Vec<TheoremReport> = TheoremId::ALL
            .iter()
            .map(|&id| lib(check_theorem(id, &analysis, &CheckParams::default())))
            .collect::<Result<_, _>>()?;
        let verdicts: Vec<String> = analysis.iter().map(|m| m.class.verdict.to_string()).collect();
        lib(serde_json::to_string(&(verdicts, reports)))
    };
    let (r1, r2) = (run()?, run()?);
    ensure(r1 == r2, || "theorem reports differ between runs".into())?;

    for e in &a {
        let text = lib(serde_json::to_string(&e.map.descriptor()))?;
        let desc: MapDescriptor = lib(serde_json::from_str(&text))?;
        let back = lib(desc.to_map())?;
        ensure(back == e.map, || format!("{}: parse∘serialize changed the map", e.label))?;
        ensure(lib(serde_json::to_string(&back.descriptor()))? == text, || {
            format!("{}: reserialization differs", e.label)
        })?;
    }
    Ok(format!("corpus and {}-byte report identical across runs; {} maps round-trip", r1.len(), a.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("example fidelity", Duration::from_secs(1), example_fidelity),
        ("orthogonality oracle agreement", Duration::from_secs(60), oracle_agreement),
        ("linear-map Gram scalar", Duration::from_secs(10), linear_checker),
        ("rigidity theorem suite", Duration::from_secs(300), theorem_suite),
        ("plane mapping and chart consistency", Duration::from_secs(60), plane_mapping),
        ("sharpness sentinel", Duration::from_secs(1), sharpness_sentinel),
        ("determinism and round-trip", Duration::from_secs(30), determinism_round_trip),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        failures += usize::from(outcome.is_err());
        println!("{tag} {}. {name} [{elapsed:.2?} / {limit:?}] {detail}", i + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
