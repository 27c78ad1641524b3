//! Polynomial maps `P^{r,s,t} ⇢ P^{r',s',t'}`, their Hermitian pullback and the
//! exact orthogonality test.

mod classify;
mod sample;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{pairing_coords, Signature, Subspace};
use crate::linalg::Matrix;
use crate::poly::{parse_polynomial, Monomial, Polynomial};
use crate::scalar::GQ;

pub use classify::{
    classify, decompose_quasi, decompose_quasi_with, gram_scalar, is_constant, is_linear, is_standard,
    lambda_respects_capacity, project, project_embedded, projection_matrix, remove_common_factor, verify_quasi,
    MapClass, Mode, Verdict, Witness, DECOMPOSE_SEED, DEFAULT_RETRIES,
};
pub use sample::{sign_sample, sign_sample_with, swap_signature, SignReport};

/// A tuple of homogeneous polynomials of a common degree, not all zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    source: Signature,
    target: Signature,
    components: Vec<Polynomial>,
    degree: u32,
}

impl RationalMap {
    pub fn new(source: Signature, target: Signature, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != target.n() {
            return Err(Error::Descriptor(format!(
                "{} components for a target {} of dimension {}",
                components.len(),
                target,
                target.n()
            )));
        }
        let n = source.n();
        let mut degree = None;
        for (i, c) in components.iter().enumerate() {
            if c.nz() != n || c.nw() != 0 {
                return Err(Error::Descriptor(format!(
                    "component {} lives in {} variables, source {} has {}",
                    i + 1,
                    c.nvars(),
                    source,
                    n
                )));
            }
            if c.is_zero() {
                continue;
            }
            let d = c.degree().ok_or_else(|| Error::Descriptor(format!("component {} is not homogeneous", i + 1)))?;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::DegreeMismatch(e, d)),
                _ => {}
            }
        }
        let degree = degree.ok_or_else(|| Error::Descriptor("all components vanish identically".into()))?;
        Ok(Self { source, target, components, degree })
    }

    /// Parses components written in the polynomial grammar.
    pub fn parse(source: Signature, target: Signature, components: &[&str]) -> Result<Self> {
        let comps = components
            .iter()
            .enumerate()
            .map(|(i, c)| parse_component(i, c, source.n()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, comps)
    }

    pub fn from_matrix(source: Signature, target: Signature, m: &Matrix) -> Result<Self> {
        if m.nrows() != target.n() || m.ncols() != source.n() {
            return Err(Error::Shape(format!("{}×{} matrix for a map {} → {}", m.nrows(), m.ncols(), source, target)));
        }
        let n = source.n();
        let comps = (0..m.nrows())
            .map(|l| {
                Polynomial::from_terms(
                    n,
                    0,
                    (0..n).map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, m[(l, j)].clone())
                    }),
                )
            })
            .collect();
        Self::new(source, target, comps)
    }

    pub fn identity(sig: Signature) -> Self {
        Self::from_matrix(sig, sig, &Matrix::identity(sig.n())).expect("identity is a valid map")
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Same components, reinterpreted with another target signature of equal size.
    pub fn with_target(&self, target: Signature) -> Result<Self> {
        Self::new(self.source, target, self.components.clone())
    }

    pub fn eval(&self, z: &[GQ]) -> Vec<GQ> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    /// Union of the component supports, in descending monomial order.
    pub fn support(&self) -> Vec<Monomial> {
        Polynomial::joint_support(&self.components)
    }

    /// One target vector per monomial of the support: its coefficients across components.
    pub fn coefficient_vectors(&self) -> Vec<(Monomial, Vec<GQ>)> {
        self.support()
            .into_iter()
            .map(|m| {
                let v = Polynomial::coefficient_vector(&self.components, &m);
                (m, v)
            })
            .collect()
    }

    /// The linear span of the image: span of all coefficient vectors.
    pub fn image_span(&self) -> Subspace {
        let vs: Vec<Vec<GQ>> = self.coefficient_vectors().into_iter().map(|(_, v)| v).collect();
        Subspace::span(self.target, &vs).expect("coefficient vectors have target length")
    }

    /// The `n' × n` matrix of a degree-one map.
    pub fn linear_matrix(&self) -> Option<Matrix> {
        if self.degree != 1 {
            return None;
        }
        let n = self.source.n();
        Some(Matrix::from_fn(self.target.n(), n, |l, j| {
            let mut e = vec![0; n];
            e[j] = 1;
            self.components[l].coeff(&Monomial::new(e))
        }))
    }

    /// `F ∘ M` for an `n × k` matrix `M` from a `k`-dimensional source.
    pub fn precompose_linear(&self, source: Signature, m: &Matrix) -> Result<Self> {
        if m.ncols() != source.n() {
            return Err(Error::Shape("precomposition matrix width".into()));
        }
        let comps = self.components.iter().map(|c| c.substitute_linear(m)).collect::<Result<Vec<_>>>()?;
        Self::new(source, self.target, comps)
    }

    /// `M ∘ F` for an `n'' × n'` matrix `M` into `target`.
    pub fn postcompose_linear(&self, target: Signature, m: &Matrix) -> Result<Self> {
        if m.ncols() != self.target.n() || m.nrows() != target.n() {
            return Err(Error::Shape("postcomposition matrix shape".into()));
        }
        let comps = self.components_mapped(m);
        Self::new(self.source, target, comps)
    }

    /// `M · (F_1, …, F_n')ᵀ` without validation; may vanish identically.
    pub(crate) fn components_mapped(&self, m: &Matrix) -> Vec<Polynomial> {
        let n = self.source.n();
        (0..m.nrows())
            .map(|i| {
                let mut acc = Polynomial::zero(n, 0);
                for (l, c) in self.components.iter().enumerate() {
                    if !m[(i, l)].is_zero() {
                        acc = &acc + &c.scale(&m[(i, l)]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `G ∘ F` where `G` has source equal to this map's target.
    pub fn then(&self, g: &RationalMap) -> Result<Self> {
        if g.source != self.target {
            return Err(Error::Dimension(format!("cannot compose into {} with a map from {}", self.target, g.source)));
        }
        let comps = g.components.iter().map(|c| c.compose(&self.components)).collect::<Result<Vec<_>>>()?;
        Self::new(self.source, g.target, comps)
    }

    pub fn descriptor(&self) -> MapDescriptor {
        MapDescriptor {
            source: self.source,
            target: self.target,
            components: self.components.iter().map(|c| c.to_string()).collect(),
        }
    }
}

fn parse_component(i: usize, text: &str, n: usize) -> Result<Polynomial> {
    parse_polynomial(text, n, false).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::Parse { line, column, message: format!("component {}: {message}", i + 1) }
        }
        other => other,
    })
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}: [", self.source, self.target)?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form of a map: `{"source": {...}, "target": {...}, "components": ["z1^2", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDescriptor {
    pub source: Signature,
    pub target: Signature,
    pub components: Vec<String>,
}

impl MapDescriptor {
    pub fn to_map(&self) -> Result<RationalMap> {
        let comps: Vec<&str> = self.components.iter().map(String::as_str).collect();
        RationalMap::parse(self.source, self.target, &comps)
    }
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        MapDescriptor::deserialize(deserializer)?.to_map().map_err(serde::de::Error::custom)
    }
}

/// `P(z, w̄) = Σ_ℓ ε'_ℓ F_ℓ(z) · conj(F_ℓ)(w̄)`, bihomogeneous of bidegree `(d, d)`.
///
/// Computed monomial-pairwise: the coefficient of `z^m w̄^{m'}` is the target pairing
/// of the coefficient vectors of `m` and `m'`.
pub fn hermitian_pullback(f: &RationalMap) -> Polynomial {
    let n = f.source.n();
    let vecs = f.coefficient_vectors();
    let mut terms = Vec::with_capacity(vecs.len() * vecs.len());
    for (m1, v1) in &vecs {
        for (m2, v2) in &vecs {
            let c = pairing_coords(&f.target, v1, v2);
            if c.is_zero() {
                continue;
            }
            let mut e = m1.exps().to_vec();
            e.extend_from_slice(m2.exps());
            terms.push((e, c));
        }
    }
    Polynomial::from_terms(n, n, terms)
}

/// `Q(z, w̄) = Σ_{j ≤ r} z_j w̄_j − Σ_{r < j ≤ r+s} z_j w̄_j`.
pub fn quadric_form(sig: &Signature) -> Result<Polynomial> {
    if sig.r + sig.s == 0 {
        return Err(Error::DegenerateForm(format!("{sig} has no nondegenerate part")));
    }
    let n = sig.n();
    let terms = (0..sig.r + sig.s).map(|j| {
        let mut e = vec![0; 2 * n];
        e[j] = 1;
        e[n + j] = 1;
        (e, GQ::from_int(sig.epsilon(j) as i64))
    });
    Ok(Polynomial::from_terms(n, n, terms.collect::<Vec<_>>()))
}

/// Outcome of the divisibility test `P = Q^k ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orthogonality {
    pub orthogonal: bool,
    pub k: u32,
    #[serde(serialize_with = "serialize_display")]
    pub rho: Polynomial,
}

fn serialize_display<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Exact orthogonality: `Q` divides the Hermitian pullback. A map whose pullback
/// vanishes identically (a null map) is orthogonal with `k = 0` and `ρ = 0`.
pub fn is_orthogonal(f: &RationalMap) -> Result<Orthogonality> {
    let sig = f.source;
    if sig.r + sig.s < 2 {
        return Err(Error::UnsupportedSignature(format!("orthogonality needs r+s ≥ 2 on the source, got {sig}")));
    }
    let p = hermitian_pullback(f);
    let n = sig.n();
    if p.is_zero() {
        return Ok(Orthogonality { orthogonal: true, k: 0, rho: Polynomial::zero(n, n) });
    }
    let q = quadric_form(&sig)?;
    let d = p.reduce_by(&q)?;
    if d.multiplicity == 0 {
        return Ok(Orthogonality { orthogonal: false, k: 0, rho: d.remainder });
    }
    Ok(Orthogonality { orthogonal: true, k: d.multiplicity, rho: d.quotient })
}

pub fn is_null_map(f: &RationalMap) -> bool {
    f.image_span().is_null()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(super) fn sig(r: usize, s: usize, t: usize) -> Signature {
        Signature::rst(r, s, t)
    }

    pub(super) fn map(src: Signature, tgt: Signature, comps: &[&str]) -> RationalMap {
        RationalMap::parse(src, tgt, comps).unwrap()
    }

    pub(super) fn two(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n, true).unwrap()
    }

    pub(super) fn example() -> RationalMap {
        map(sig(1, 1, 0), sig(2, 2, 1), &["z1^2", "z2^2", "z1*z2", "z2^2", "z2^2"])
    }

    #[test]
    fn construction_checks() {
        assert!(RationalMap::parse(sig(1, 1, 0), sig(1, 1, 0), &["z1", "z2^2"]).is_err());
        assert!(RationalMap::parse(sig(1, 1, 0), sig(1, 1, 0), &["0", "0"]).is_err());
        assert!(RationalMap::parse(sig(1, 1, 0), sig(1, 1, 0), &["z1"]).is_err());
        assert!(RationalMap::parse(sig(1, 1, 0), sig(1, 1, 0), &["z1 + z2^2", "z1"]).is_err());
        let f = map(sig(1, 1, 0), sig(1, 1, 0), &["z1", "0"]);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn pullback_examples() {
        let id = RationalMap::identity(sig(1, 1, 0));
        assert_eq!(hermitian_pullback(&id), two("z1*w1 - z2*w2", 2));
        let sq = map(sig(1, 1, 0), sig(1, 1, 0), &["z1^2", "z2^2"]);
        assert_eq!(hermitian_pullback(&sq), two("z1^2*w1^2 - z2^2*w2^2", 2));
        assert_eq!(hermitian_pullback(&example()), two("z1^2*w1^2 - z1*z2*w1*w2", 2));
    }

    #[test]
    fn pullback_is_hermitian_symmetric() {
        let f = map(sig(2, 1, 0), sig(2, 2, 0), &["(1+2i)*z1^2", "z2*z3", "(0-1i)*z1*z3", "z2^2 - z3^2"]);
        let p = hermitian_pullback(&f);
        assert_eq!(p.hermitian_transpose(), p);
        assert_eq!(p.block_degrees(), Some((2, 2)));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(quadric_form(&sig(1, 1, 0)).unwrap(), two("z1*w1 - z2*w2", 2));
        assert_eq!(quadric_form(&sig(1, 1, 1)).unwrap(), two("z1*w1 - z2*w2", 3));
        assert_eq!(quadric_form(&sig(2, 1, 0)).unwrap(), two("z1*w1 + z2*w2 - z3*w3", 3));
        assert!(matches!(quadric_form(&sig(0, 0, 2)), Err(Error::DegenerateForm(_))));
    }

    #[test]
    fn orthogonality_examples() {
        let o = is_orthogonal(&RationalMap::identity(sig(1, 1, 0))).unwrap();
        assert!(o.orthogonal && o.k == 1 && o.rho.is_one());

        let o = is_orthogonal(&map(sig(1, 1, 0), sig(1, 1, 0), &["z1^2", "z2^2"])).unwrap();
        assert_eq!((o.orthogonal, o.k), (true, 1));
        assert_eq!(o.rho, two("z1*w1 + z2*w2", 2));

        let o = is_orthogonal(&map(sig(1, 1, 0), sig(1, 1, 0), &["z1^2", "z1*z2"])).unwrap();
        assert_eq!((o.orthogonal, o.k), (true, 1));
        assert_eq!(o.rho, two("z1*w1", 2));

        let o = is_orthogonal(&map(sig(1, 1, 0), sig(1, 1, 0), &["z1", "2*z2"])).unwrap();
        assert_eq!((o.orthogonal, o.k), (false, 0));

        let o = is_orthogonal(&example()).unwrap();
        assert_eq!((o.orthogonal, o.k), (true, 1));
        assert_eq!(o.rho, two("z1*w1", 2));

        assert!(matches!(
            is_orthogonal(&map(sig(1, 0, 1), sig(1, 1, 0), &["z1", "z2"])),
            Err(Error::UnsupportedSignature(_))
        ));
    }

    #[test]
    fn null_maps() {
        let psi = "z1^2 - (2+1i)*z1*z2";
        assert!(is_null_map(&map(sig(1, 1, 0), sig(1, 1, 0), &[psi, psi])));
        assert!(!is_null_map(&RationalMap::identity(sig(1, 1, 0))));
        assert!(is_null_map(&map(sig(1, 1, 0), sig(2, 2, 0), &["z1", "z2", "z1", "z2"])));
        let o = is_orthogonal(&map(sig(1, 1, 0), sig(1, 1, 0), &[psi, psi])).unwrap();
        assert_eq!((o.orthogonal, o.k), (true, 0));
        assert!(o.rho.is_zero());
    }

    #[test]
    fn descriptor_round_trip() {
        let f = example();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"source":{"r":1,"s":1,"t":0},"target":{"r":2,"s":2,"t":1},"components":["z1^2","z2^2","z1*z2","z2^2","z2^2"]}"#
        );
        let back: RationalMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"source":{"r":1,"s":1},"target":{"r":1,"s":1},"components":["z1 +", "z2"]}"#;
        assert!(serde_json::from_str::<RationalMap>(bad).is_err());
    }

    #[test]
    fn image_span_of_the_example() {
        let w = example().image_span();
        let expect = Subspace::span(
            sig(2, 2, 1),
            &[
                crate::hermitian::int_vec(&[1, 0, 0, 0, 0]),
                crate::hermitian::int_vec(&[0, 0, 1, 0, 0]),
                crate::hermitian::int_vec(&[0, 1, 0, 1, 1]),
            ],
        )
        .unwrap();
        assert_eq!(w, expect);
    }
}
