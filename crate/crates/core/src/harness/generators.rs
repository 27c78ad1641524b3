//! Seeded generators of standard, null, quasi-standard and assorted orthogonal maps.

use num_traits::{One, Zero};
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::GenSpec;
use crate::error::{Error, Result};
use crate::hermitian::Signature;
use crate::linalg::Matrix;
use crate::maps::{is_standard, swap_signature, RationalMap};
use crate::poly::{parse_polynomial, Polynomial};
use crate::random::{self, Rng};
use crate::scalar::GQ;

/// Isometry moves per random isometry; enough to hide block structure while
/// keeping coefficient heights small.
const ISOMETRY_STEPS: usize = 3;
const MAX_TERMS: usize = 3;

fn spec_rng(spec: &GenSpec, tag: u64) -> Rng {
    random::rng(random::sub_seed(spec.seed, tag))
}

fn isometry_or_identity(rng: &mut Rng, sig: &Signature, seed: u64) -> Matrix {
    if seed == 0 {
        Matrix::identity(sig.n())
    } else {
        random::isometry(rng, sig, ISOMETRY_STEPS)
    }
}

/// Block embedding `C^{r,s,t} → C^{r',s',t'}`: positive and negative blocks go to the
/// leading coordinates of the matching target blocks, degenerate coordinates to the
/// target's degenerate coordinates while they last and to zero afterwards.
fn block_embedding(source: &Signature, target: &Signature, keep_degenerate: bool) -> Matrix {
    let mut m = Matrix::zeros(target.n(), source.n());
    for i in 0..source.r {
        m[(i, i)] = GQ::one();
    }
    for j in 0..source.s {
        m[(target.r + j, source.r + j)] = GQ::one();
    }
    if keep_degenerate {
        for k in 0..source.t.min(target.t) {
            m[(target.r + target.s + k, source.r + source.s + k)] = GQ::one();
        }
    }
    m
}

fn check_capacity(source: &Signature, target: &Signature) -> Result<()> {
    if target.r < source.r || target.s < source.s {
        return Err(Error::Capacity(format!("{source} does not embed isometrically into {target}")));
    }
    Ok(())
}

/// A linear map with `Mᴴ J' M = J`: the block embedding between random isometries.
pub fn gen_standard(spec: &GenSpec) -> Result<RationalMap> {
    check_capacity(&spec.source, &spec.target)?;
    let mut rng = spec_rng(spec, 1);
    let e = block_embedding(&spec.source, &spec.target, true);
    let u_src = isometry_or_identity(&mut rng, &spec.source, spec.seed);
    let u_tgt = isometry_or_identity(&mut rng, &spec.target, spec.seed);
    let m = u_tgt.mul(&e)?.mul(&u_src)?;
    RationalMap::from_matrix(spec.source, spec.target, &m)
}

/// Basis of a maximal null subspace of `sig` (identity Shilov point for seed 0).
fn null_basis(rng: &mut Rng, sig: &Signature, seed: u64) -> Vec<Vec<GQ>> {
    if seed != 0 {
        return random::maximal_null_basis(rng, sig);
    }
    let (r, s, n) = (sig.r, sig.s, sig.n());
    let mut basis = Vec::new();
    for i in 0..r.min(s) {
        let mut v = vec![GQ::zero(); n];
        v[i] = GQ::one();
        v[r + i] = GQ::one();
        basis.push(v);
    }
    for k in r + s..n {
        let mut v = vec![GQ::zero(); n];
        v[k] = GQ::one();
        basis.push(v);
    }
    basis
}

fn random_forms(rng: &mut Rng, n: usize, d: u32, count: usize, height: i64) -> Vec<Polynomial> {
    (0..count).map(|_| random::homogeneous_polynomial(rng, n, d, MAX_TERMS, height)).collect()
}

/// `Σ ψ_i · b_i` for random forms `ψ_i`, as target components.
fn fill(basis: &[Vec<GQ>], forms: &[Polynomial], n_src: usize, n_tgt: usize) -> Vec<Polynomial> {
    (0..n_tgt)
        .map(|l| {
            let mut acc = Polynomial::zero(n_src, 0);
            for (b, psi) in basis.iter().zip(forms) {
                if !b[l].is_zero() {
                    acc = &acc + &psi.scale(&b[l]);
                }
            }
            acc
        })
        .collect()
}

/// A map whose image spans (part of) a random maximal null subspace of the target.
pub fn gen_null(spec: &GenSpec) -> Result<RationalMap> {
    let tgt = spec.target;
    if tgt.r.min(tgt.s) + tgt.t == 0 {
        return Err(Error::NoNullPoints);
    }
    let mut rng = spec_rng(spec, 2);
    let basis = null_basis(&mut rng, &tgt, spec.seed);
    loop {
        let forms = random_forms(&mut rng, spec.source.n(), spec.degree, basis.len(), spec.height);
        let comps = fill(&basis, &forms, spec.source.n(), tgt.n());
        if let Ok(f) = RationalMap::new(spec.source, tgt, comps) {
            return Ok(f);
        }
    }
}

/// `F = φ·L ⊕ ν`: `L` the block embedding into an `A`-block, `φ` of degree `d − 1`, `ν`
/// a null map into the orthogonal `B`-block, then hidden by random source and target
/// isometries. Regenerates while the result happens to be standard.
pub fn gen_quasi_standard(spec: &GenSpec) -> Result<RationalMap> {
    let (src, tgt) = (spec.source, spec.target);
    check_capacity(&src, &tgt)?;
    if spec.degree < 2 {
        return Err(Error::Capacity("quasi-standard maps need degree ≥ 2".into()));
    }
    let extra = (tgt.r - src.r).min(tgt.s - src.s);
    if extra + tgt.t == 0 {
        return Err(Error::Capacity(format!("{tgt} leaves no null block orthogonal to an isometric copy of {src}")));
    }
    let (n, nt) = (src.n(), tgt.n());
    let mut rng = spec_rng(spec, 3);
    // Null basis of the B-block: (e_{r+i} + e_{r'+s+i}) pairs, then degenerate axes.
    let mut b_null = Vec::new();
    for i in 0..extra {
        let mut v = vec![GQ::zero(); nt];
        v[src.r + i] = GQ::one();
        v[tgt.r + src.s + i] = if spec.seed == 0 { GQ::one() } else { random::unit_phase(&mut rng) };
        b_null.push(v);
    }
    for k in tgt.r + tgt.s..nt {
        let mut v = vec![GQ::zero(); nt];
        v[k] = GQ::one();
        b_null.push(v);
    }
    let e = block_embedding(&src, &tgt, false);
    for _ in 0..64 {
        let phi = random::homogeneous_polynomial(&mut rng, n, spec.degree - 1, MAX_TERMS, spec.height);
        let forms = random_forms(&mut rng, n, spec.degree, b_null.len(), spec.height);
        let null_part = fill(&b_null, &forms, n, nt);
        let comps: Vec<Polynomial> = (0..nt)
            .map(|l| {
                let mut acc = null_part[l].clone();
                for j in 0..n {
                    if !e[(l, j)].is_zero() {
                        acc = &acc + &(&phi * &Polynomial::z(j, n)).scale(&e[(l, j)]);
                    }
                }
                acc
            })
            .collect();
        let raw = RationalMap::new(src, tgt, comps)?;
        let u_src = isometry_or_identity(&mut rng, &src, spec.seed);
        let u_tgt = isometry_or_identity(&mut rng, &tgt, spec.seed);
        let f = raw.precompose_linear(src, &u_src)?.postcompose_linear(tgt, &u_tgt)?;
        if is_standard(&f).is_none() {
            return Ok(f);
        }
    }
    Err(Error::Capacity("could not generate a non-standard instance".into()))
}

/// `[φ z⁺, ψ, φ z⁻, ψ, χ]` from `P^{r,s}` to `P^{r+1,s+1,1}`.
pub fn example_instance(
    source: Signature,
    phi: &Polynomial,
    psi: &Polynomial,
    chi: &Polynomial,
) -> Result<RationalMap> {
    if source.t != 0 {
        return Err(Error::UnsupportedSignature("the example family has a nondegenerate source".into()));
    }
    let n = source.n();
    let mut comps = Vec::with_capacity(n + 3);
    for j in 0..source.r {
        comps.push(phi * &Polynomial::z(j, n));
    }
    comps.push(psi.clone());
    for j in source.r..n {
        comps.push(phi * &Polynomial::z(j, n));
    }
    comps.push(psi.clone());
    comps.push(chi.clone());
    RationalMap::new(source, Signature::rst(source.r + 1, source.s + 1, 1), comps)
}

/// The instance `[z1², z2², z1z2, z2², z2²]` on `P^{1,1}`.
pub fn quasi_example() -> RationalMap {
    let p = |s: &str| parse_polynomial(s, 2, false).expect("literal");
    example_instance(Signature::rst(1, 1, 0), &p("z1"), &p("z2^2"), &p("z2^2")).expect("valid example")
}

/// Constructions used to populate the fuzz corpus beyond the basic generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mixture {
    StandardSwap,
    ExampleFamily,
    PowerMap,
    Whitney,
    Composition,
    DoubledStandard,
    AntiStandard,
}

impl Mixture {
    pub const ALL: [Mixture; 7] = [
        Mixture::StandardSwap,
        Mixture::ExampleFamily,
        Mixture::PowerMap,
        Mixture::Whitney,
        Mixture::Composition,
        Mixture::DoubledStandard,
        Mixture::AntiStandard,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Mixture::StandardSwap => "standard∘swap",
            Mixture::ExampleFamily => "example-family",
            Mixture::PowerMap => "power-map",
            Mixture::Whitney => "whitney",
            Mixture::Composition => "composition",
            Mixture::DoubledStandard => "doubled-standard",
            Mixture::AntiStandard => "anti-standard",
        }
    }
}

/// An orthogonal map built by the named construction. Signatures in `spec` are
/// honoured where the construction allows; otherwise the construction's own
/// signatures are used (power maps on `P^{1,1}`, Whitney maps `P^{1,s} → P^{1,2s−1}`,
/// the example family `P^{r,s} → P^{r+1,s+1,1}`).
pub fn gen_orthogonal_mixture(spec: &GenSpec, kind: Mixture) -> Result<RationalMap> {
    let mut rng = spec_rng(spec, 4);
    let (src, tgt) = (spec.source, spec.target);
    match kind {
        Mixture::StandardSwap => {
            let swapped = GenSpec { source: src.swapped(), target: tgt.swapped(), ..*spec };
            Ok(swap_signature(&gen_standard(&swapped)?))
        }
        Mixture::ExampleFamily => {
            let src = Signature::rst(src.r, src.s, 0);
            let n = src.n();
            let d = spec.degree.max(2);
            let phi = random::homogeneous_polynomial(&mut rng, n, d - 1, MAX_TERMS, spec.height);
            let psi = random::homogeneous_polynomial(&mut rng, n, d, MAX_TERMS, spec.height);
            let chi = random::homogeneous_polynomial(&mut rng, n, d, MAX_TERMS, spec.height);
            let f = example_instance(src, &phi, &psi, &chi)?;
            let u = isometry_or_identity(&mut rng, &f.target(), spec.seed);
            f.postcompose_linear(f.target(), &u)
        }
        Mixture::PowerMap => {
            let d = spec.degree.max(2);
            let n = 2;
            let comps = (0..2).map(|j| Polynomial::z(j, n).pow(d)).collect();
            let s11 = Signature::rst(1, 1, 0);
            let f = RationalMap::new(s11, s11, comps)?;
            let u = isometry_or_identity(&mut rng, &s11, spec.seed);
            f.postcompose_linear(s11, &u)
        }
        Mixture::Whitney => {
            let s = src.s.max(1);
            let n = s + 1;
            let z = |j: usize| Polynomial::z(j, n);
            let mut comps = vec![z(0).pow(2)];
            for j in 1..s {
                comps.push(&z(0) * &z(j));
            }
            for j in 1..=s {
                comps.push(&z(s) * &z(j));
            }
            let tgt = Signature::rst(1, 2 * s - 1, 0);
            let f = RationalMap::new(Signature::rst(1, s, 0), tgt, comps)?;
            let u = isometry_or_identity(&mut rng, &tgt, spec.seed);
            f.postcompose_linear(tgt, &u)
        }
        Mixture::Composition => {
            // A standard self-map of the target after a quasi-standard (or null) map:
            // G ∘ F stays in the class of F.
            let inner = if spec.degree >= 2 {
                gen_quasi_standard(spec).or_else(|_| gen_null(spec))?
            } else {
                gen_standard(spec)?
            };
            let outer =
                gen_standard(&GenSpec { source: tgt, target: tgt, seed: random::sub_seed(spec.seed, 5), ..*spec })?;
            inner.then(&outer)
        }
        Mixture::DoubledStandard => {
            // z ↦ (Lz, Lz) into C^{2r,2s,2t} pulls the form back to 2J.
            let double = Signature::rst(2 * src.r, 2 * src.s, 2 * src.t);
            let l = gen_standard(&GenSpec { target: src, ..*spec })?;
            let m = l.linear_matrix().expect("linear");
            let n = src.n();
            let big = Matrix::from_fn(2 * n, n, |i, j| m[(double_index(&src, i), j)].clone());
            RationalMap::from_matrix(src, double, &big)
        }
        Mixture::AntiStandard => {
            // A standard map into the sign-swapped target, read in the original target:
            // Mᴴ J' M = −J.
            let flipped = GenSpec { target: tgt.swapped(), ..*spec };
            let g = gen_standard(&flipped)?;
            let perm: Vec<usize> = (0..tgt.n()).map(|l| swap_target_index(&tgt.swapped(), l)).collect();
            let mut comps = vec![Polynomial::zero(src.n(), 0); tgt.n()];
            for (l, c) in g.components().iter().enumerate() {
                comps[perm[l]] = c.clone();
            }
            RationalMap::new(src, tgt, comps)
        }
    }
}

/// The row of `C^{r,s,t}` copied into row `i` of the doubled space `C^{2r,2s,2t}`.
fn double_index(sig: &Signature, i: usize) -> usize {
    let (r, s) = (sig.r, sig.s);
    if i < 2 * r {
        i % r
    } else if i < 2 * r + 2 * s {
        r + (i - 2 * r) % s
    } else {
        r + s + (i - 2 * r - 2 * s) % sig.t
    }
}

/// Index in `(s, r, t)` coordinates → index in `(r, s, t)` coordinates exchanging blocks.
fn swap_target_index(sig: &Signature, l: usize) -> usize {
    if l < sig.r {
        sig.s + l
    } else if l < sig.r + sig.s {
        l - sig.r
    } else {
        l
    }
}

/// Adds a random nonzero multiple of a random monomial to one random component.
pub fn perturb(f: &RationalMap, seed: u64) -> RationalMap {
    let mut rng = random::rng(seed);
    let n = f.source().n();
    let monos = random::monomials_of_degree(n, f.degree());
    loop {
        let l = rng.gen_range(0..f.components().len());
        let m = &monos[rng.gen_range(0..monos.len())];
        let c = random::nonzero_scalar(&mut rng, 3, true);
        let bump = Polynomial::monomial(m.exps().to_vec(), c, n, 0);
        let mut comps = f.components().to_vec();
        comps[l] = &comps[l] + &bump;
        if let Ok(g) = RationalMap::new(f.source(), f.target(), comps) {
            return g;
        }
    }
}

/// A random linear map `C^n → C^{n'}` with integer-ish entries (used by the Less2 probe).
pub fn random_linear_map(source: Signature, target: Signature, seed: u64) -> RationalMap {
    let mut rng = random::rng(seed);
    loop {
        let m = random::matrix(&mut rng, target.n(), source.n(), 4);
        if let Ok(f) = RationalMap::from_matrix(source, target, &m) {
            return f;
        }
    }
}

/// Applies a random target isometry (used by the invariance properties).
pub fn twist_target(f: &RationalMap, seed: u64) -> RationalMap {
    let mut rng = random::rng(seed);
    let u = random::isometry(&mut rng, &f.target(), ISOMETRY_STEPS);
    f.postcompose_linear(f.target(), &u).expect("isometries are invertible")
}
