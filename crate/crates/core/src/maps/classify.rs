//! Standard / linear / null tests, projections along orthogonal decompositions, the
//! quasi decomposition search and the classification ladder.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{is_null_map, RationalMap};
use crate::error::{Error, Result};
use crate::hermitian::{combine, Signature, Subspace};
use crate::linalg::{self, Matrix};
use crate::poly::{poly_gcd, Polynomial};
use crate::random;
use crate::scalar::GQ;

/// Number of randomized complements tried after the canonical one.
pub const DEFAULT_RETRIES: usize = 8;
/// Seed of the randomized complement retries in [`decompose_quasi`].
pub const DECOMPOSE_SEED: u64 = 0x0A5B_0C1D;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Standard,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Constant,
    Null,
    Standard,
    Linear,
    QuasiStandard,
    QuasiLinear,
    Unclassified,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Subspace>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_display")]
    pub common_factor: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_scalar: Option<GQ>,
}

fn opt_display<S: serde::Serializer>(p: &Option<Polynomial>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.collect_str(p),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapClass {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Splits off `φ = gcd(components)` (monic); `F = φ · F_red`.
pub fn remove_common_factor(f: &RationalMap) -> (Polynomial, RationalMap) {
    let (phi, comps) = reduce_components(f.components()).expect("a map has a nonzero component");
    let red = RationalMap::new(f.source(), f.target(), comps).expect("dividing by the gcd keeps a valid map");
    (phi, red)
}

/// `None` when every component vanishes.
fn reduce_components(comps: &[Polynomial]) -> Option<(Polynomial, Vec<Polynomial>)> {
    let phi = poly_gcd(comps).ok()?;
    if phi.is_one() {
        return Some((phi, comps.to_vec()));
    }
    let red =
        comps.iter().map(|c| c.div_exact(&phi).expect("same ring").expect("gcd divides every component")).collect();
    Some((phi, red))
}

fn reduced_degree(comps: &[Polynomial]) -> Option<u32> {
    let (_, red) = reduce_components(comps)?;
    red.iter().find_map(|c| c.degree())
}

pub fn is_linear(f: &RationalMap) -> bool {
    reduced_degree(f.components()) == Some(1)
}

pub fn is_constant(f: &RationalMap) -> bool {
    reduced_degree(f.components()) == Some(0)
}

/// `λ` with `Mᴴ J' M = λ J` exactly, if one exists.
pub fn gram_scalar(m: &Matrix, source: &Signature, target: &Signature) -> Result<Option<GQ>> {
    if m.nrows() != target.n() || m.ncols() != source.n() {
        return Err(Error::Shape(format!(
            "expected a {}×{} matrix, got {}×{}",
            target.n(),
            source.n(),
            m.nrows(),
            m.ncols()
        )));
    }
    if source.r + source.s == 0 {
        return Ok(None);
    }
    let g = m.conj_transpose().mul(&target.form_matrix())?.mul(m)?;
    // λ is read off the first nondegenerate diagonal slot; ε_0 = ±1.
    let lambda = if source.epsilon(0) == 1 { g[(0, 0)].clone() } else { -&g[(0, 0)] };
    let n = source.n();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j {
                match source.epsilon(i) {
                    1 => lambda.clone(),
                    -1 => -&lambda,
                    _ => GQ::zero(),
                }
            } else {
                GQ::zero()
            };
            if g[(i, j)] != want {
                return Ok(None);
            }
        }
    }
    Ok(Some(lambda))
}

/// A positive Gram scalar forces `r ≤ r'` and `s ≤ s'`.
pub fn lambda_respects_capacity(lambda: &GQ, source: &Signature, target: &Signature) -> bool {
    lambda.re <= Zero::zero() || (source.r <= target.r && source.s <= target.s)
}

fn standard_scalar(source: &Signature, target: &Signature, comps: &[Polynomial]) -> Option<GQ> {
    let (_, red) = reduce_components(comps)?;
    if red.iter().find_map(|c| c.degree()) != Some(1) {
        return None;
    }
    let f = RationalMap::new(*source, *target, red).ok()?;
    let lambda = gram_scalar(&f.linear_matrix()?, source, target).ok()??;
    (lambda.re > Zero::zero()).then_some(lambda)
}

/// `λ > 0` when `F` reduces to a linear map with `Mᴴ J' M = λ J`.
pub fn is_standard(f: &RationalMap) -> Option<GQ> {
    standard_scalar(&f.source(), &f.target(), f.components())
}

fn check_decomposition(s: &Subspace, t: &Subspace) -> Result<()> {
    if s.sig() != t.sig() {
        return Err(Error::InvalidDecomposition("subspaces of different spaces".into()));
    }
    if !s.is_orthogonal_to(t) {
        return Err(Error::InvalidDecomposition("the summands are not orthogonal".into()));
    }
    if s.dim() + t.dim() != s.sig().n() || s.sum(t)?.dim() != s.sig().n() {
        return Err(Error::InvalidDecomposition("the summands do not span the space directly".into()));
    }
    Ok(())
}

/// Matrix of the projection onto `s` along `t`, for `s ⊕ t` the whole space.
pub fn projection_matrix(s: &Subspace, t: &Subspace) -> Result<Matrix> {
    check_decomposition(s, t)?;
    let n = s.sig().n();
    let mut all = s.basis().to_vec();
    all.extend(t.basis().iter().cloned());
    let k = s.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![GQ::zero(); n];
        e[j] = GQ::one();
        let c = linalg::coordinates(&all, &e)
            .ok_or_else(|| Error::InvalidDecomposition("the summands do not span the space".into()))?;
        cols.push(combine(s.basis(), &c[..k], n));
    }
    Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

/// `π_S ∘ F` written in the ambient target coordinates; its image lies in `s`.
pub fn project_embedded(f: &RationalMap, s: &Subspace, t: &Subspace) -> Result<RationalMap> {
    let p = projection_matrix(s, t)?;
    let comps = f.components_mapped(&p);
    if comps.iter().all(Polynomial::is_zero) {
        return Err(Error::Indeterminate("the image lies entirely in the discarded summand".into()));
    }
    RationalMap::new(f.source(), f.target(), comps)
}

/// `π_S ∘ F`. When `s` is spanned by coordinate vectors the result is a map into `s`
/// with its restricted signature; otherwise the projection stays in ambient
/// coordinates, since a ±1-normalized basis of `s` generally needs square roots.
pub fn project(f: &RationalMap, s: &Subspace, t: &Subspace) -> Result<RationalMap> {
    let embedded = project_embedded(f, s, t)?;
    match (s.coordinate_indices(), s.restricted_signature()) {
        (Some(idx), Some(sig)) => {
            let comps = idx.iter().map(|&i| embedded.components()[i].clone()).collect();
            RationalMap::new(f.source(), sig, comps)
        }
        _ => Ok(embedded),
    }
}

/// Re-checks a decomposition from scratch: `A ⊥ B`, `A ⊕ B` the whole target,
/// `π_A ∘ F` standard (or linear) and `π_B ∘ F` null or identically zero.
pub fn verify_quasi(f: &RationalMap, a: &Subspace, b: &Subspace, mode: Mode) -> bool {
    if a.sig() != f.target() || b.sig() != f.target() {
        return false;
    }
    let Ok(p) = projection_matrix(a, b) else {
        return false;
    };
    let n = f.target().n();
    let q = Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { GQ::one() } else { GQ::zero() };
        &id - &p[(i, j)]
    });
    let part_a = f.components_mapped(&p);
    let part_b = f.components_mapped(&q);
    let a_ok = match mode {
        Mode::Standard => standard_scalar(&f.source(), &f.target(), &part_a).is_some(),
        Mode::Linear => reduced_degree(&part_a) == Some(1),
    };
    a_ok && components_null(f.target(), &part_b)
}

fn components_null(target: Signature, comps: &[Polynomial]) -> bool {
    let vs: Vec<Vec<GQ>> =
        Polynomial::joint_support(comps).iter().map(|m| Polynomial::coefficient_vector(comps, m)).collect();
    Subspace::span(target, &vs).map(|w| w.is_null()).unwrap_or(false)
}

pub fn decompose_quasi(f: &RationalMap, mode: Mode) -> Result<Option<(Subspace, Subspace)>> {
    decompose_quasi_with(f, mode, DEFAULT_RETRIES, DECOMPOSE_SEED)
}

/// Radical/complement search: `W` the image span, `N` its radical, `A` the
/// nondegenerate block of a congruence diagonalization of `W`, `B = A^⊥`. Failing
/// the canonical choice, `A` is tilted by random elements of `N` up to `retries` times.
pub fn decompose_quasi_with(
    f: &RationalMap,
    mode: Mode,
    retries: usize,
    seed: u64,
) -> Result<Option<(Subspace, Subspace)>> {
    let target = f.target();
    let n = target.n();
    let w = f.image_span();
    let radical = w.radical();
    let cong = linalg::congruence_diagonalize(&w.gram())?;
    if cong.rank == 0 {
        return Ok(None);
    }
    let a_vecs: Vec<Vec<GQ>> = cong.transform[..cong.rank].iter().map(|t| combine(w.basis(), t, n)).collect();
    let try_complement = |vecs: &[Vec<GQ>]| -> Result<Option<(Subspace, Subspace)>> {
        let a = Subspace::from_basis(target, vecs)?;
        let b = a.orthogonal_complement();
        Ok(verify_quasi(f, &a, &b, mode).then_some((a, b)))
    };
    if let Some(found) = try_complement(&a_vecs)? {
        return Ok(Some(found));
    }
    if radical.dim() == 0 {
        return Ok(None);
    }
    let mut rng = random::rng(seed);
    for _ in 0..retries {
        let tilted: Vec<Vec<GQ>> = a_vecs
            .iter()
            .map(|v| {
                let c: Vec<GQ> = (0..radical.dim()).map(|_| random::scalar(&mut rng, 3, true)).collect();
                let shift = combine(radical.basis(), &c, n);
                v.iter().zip(&shift).map(|(x, y)| x + y).collect()
            })
            .collect();
        if let Some(found) = try_complement(&tilted)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// The ladder Constant → Null → Standard → Linear → QuasiStandard → QuasiLinear →
/// Unclassified, with the witness of the first rung that holds.
pub fn classify(f: &RationalMap) -> MapClass {
    let (phi, red) = remove_common_factor(f);
    let factor = (!phi.is_one()).then(|| phi.clone());
    if red.degree() == 0 {
        return MapClass {
            verdict: Verdict::Constant,
            witness: Some(Witness { common_factor: factor, ..Witness::default() }),
        };
    }
    if is_null_map(f) {
        return MapClass {
            verdict: Verdict::Null,
            witness: Some(Witness { b: Some(f.image_span()), ..Witness::default() }),
        };
    }
    if let Some(lambda) = is_standard(f) {
        return MapClass {
            verdict: Verdict::Standard,
            witness: Some(Witness { common_factor: factor, gram_scalar: Some(lambda), ..Witness::default() }),
        };
    }
    if red.degree() == 1 {
        return MapClass {
            verdict: Verdict::Linear,
            witness: Some(Witness { common_factor: factor, ..Witness::default() }),
        };
    }
    for (mode, verdict) in [(Mode::Standard, Verdict::QuasiStandard), (Mode::Linear, Verdict::QuasiLinear)] {
        if let Ok(Some((a, b))) = decompose_quasi(f, mode) {
            let part = project_embedded(f, &a, &b).expect("verified decomposition");
            let (phi_a, _) = remove_common_factor(&part);
            let lambda = if mode == Mode::Standard { is_standard(&part) } else { None };
            return MapClass {
                verdict,
                witness: Some(Witness { a: Some(a), b: Some(b), common_factor: Some(phi_a), gram_scalar: lambda }),
            };
        }
    }
    MapClass { verdict: Verdict::Unclassified, witness: None }
}
