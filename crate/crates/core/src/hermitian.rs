//! The indefinite, possibly degenerate Hermitian structure on `C^{r,s,t}`.
//!
//! Coordinates are ordered positive block, negative block, degenerate block:
//! `<z, w> = Σ_{j≤r} z_j w̄_j − Σ_{r<j≤r+s} z_j w̄_j`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::GQ;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    r: usize,
    s: usize,
    #[serde(default)]
    t: usize,
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = Error;
    fn try_from(v: SignatureRepr) -> Result<Self> {
        Signature::new(v.r, v.s, v.t)
    }
}

impl From<Signature> for SignatureRepr {
    fn from(v: Signature) -> Self {
        SignatureRepr { r: v.r, s: v.s, t: v.t }
    }
}

impl Signature {
    pub fn new(r: usize, s: usize, t: usize) -> Result<Self> {
        if r + s + t == 0 {
            return Err(Error::Dimension("signature (0,0,0) has no coordinates".into()));
        }
        Ok(Self { r, s, t })
    }

    /// Panicking constructor for literals in code and tests.
    pub fn rst(r: usize, s: usize, t: usize) -> Self {
        Self::new(r, s, t).expect("r + s + t > 0")
    }

    pub fn n(&self) -> usize {
        self.r + self.s + self.t
    }

    /// Diagonal entry of the form on coordinate `j` (0-based): `1`, `-1` or `0`.
    pub fn epsilon(&self, j: usize) -> i8 {
        if j < self.r {
            1
        } else if j < self.r + self.s {
            -1
        } else {
            0
        }
    }

    pub fn epsilons(&self) -> Vec<i8> {
        (0..self.n()).map(|j| self.epsilon(j)).collect()
    }

    /// The diagonal matrix `J` of the form.
    pub fn form_matrix(&self) -> Matrix {
        let d: Vec<GQ> = self.epsilons().into_iter().map(|e| GQ::from_int(e as i64)).collect();
        Matrix::diagonal(&d)
    }

    /// Projective dimension of a maximal null space, `min{r,s}+t−1`; `-1` when none exist.
    pub fn max_null_dimension(&self) -> i64 {
        self.r.min(self.s) as i64 + self.t as i64 - 1
    }

    /// `(r,s,t) ↦ (s,r,t)`, the signature of the negated form.
    pub fn swapped(&self) -> Signature {
        Signature { r: self.s, s: self.r, t: self.t }
    }

    pub fn nondegenerate_part(&self) -> Result<Signature> {
        Signature::new(self.r, self.s, 0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 0 {
            write!(f, "P^{{{},{}}}", self.r, self.s)
        } else {
            write!(f, "P^{{{},{},{}}}", self.r, self.s, self.t)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "VectorRepr")]
pub struct Vector {
    sig: Signature,
    coords: Vec<GQ>,
}

#[derive(Deserialize)]
struct VectorRepr {
    sig: Signature,
    coords: Vec<GQ>,
}

impl TryFrom<VectorRepr> for Vector {
    type Error = Error;
    fn try_from(v: VectorRepr) -> Result<Self> {
        Vector::new(v.sig, v.coords)
    }
}

impl Vector {
    pub fn new(sig: Signature, coords: Vec<GQ>) -> Result<Self> {
        if coords.len() != sig.n() {
            return Err(Error::Dimension(format!(
                "vector has {} coordinates but the signature needs {}",
                coords.len(),
                sig.n()
            )));
        }
        Ok(Self { sig, coords })
    }

    /// The coordinate vector `e_{j+1}`.
    pub fn unit(sig: Signature, j: usize) -> Self {
        let mut coords = vec![GQ::zero(); sig.n()];
        coords[j] = GQ::one();
        Self { sig, coords }
    }

    pub fn from_ints(sig: Signature, xs: &[i64]) -> Result<Self> {
        Self::new(sig, xs.iter().map(|&x| GQ::from_int(x)).collect())
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coords(&self) -> &[GQ] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<GQ> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Sign of a point `[z]`; `special` marks null points orthogonal to the whole space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PointSign {
    Positive,
    Negative,
    Null { special: bool },
}

impl PointSign {
    pub fn is_null(&self) -> bool {
        matches!(self, PointSign::Null { .. })
    }
}

/// `Σ ε_j z_j w̄_j` on raw coordinates. Lengths must agree with `sig`.
pub fn pairing_coords(sig: &Signature, z: &[GQ], w: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for j in 0..sig.r + sig.s {
        if z[j].is_zero() || w[j].is_zero() {
            continue;
        }
        let term = &z[j] * &w[j].conj();
        if j < sig.r {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// `‖z‖²` on raw coordinates; always real.
pub fn norm_coords(sig: &Signature, z: &[GQ]) -> BigRational {
    let mut acc = BigRational::zero();
    for (j, x) in z.iter().enumerate().take(sig.r + sig.s) {
        let n = x.norm_sqr();
        if j < sig.r {
            acc += n;
        } else {
            acc -= n;
        }
    }
    acc
}

pub fn pairing(z: &Vector, w: &Vector) -> Result<GQ> {
    if z.sig != w.sig {
        return Err(Error::Dimension(format!("pairing between {} and {}", z.sig, w.sig)));
    }
    Ok(pairing_coords(&z.sig, &z.coords, &w.coords))
}

pub fn sign_of_coords(sig: &Signature, z: &[GQ]) -> Result<PointSign> {
    if z.iter().all(Zero::is_zero) {
        return Err(Error::InvalidPoint);
    }
    let n = norm_coords(sig, z);
    Ok(if n.is_positive() {
        PointSign::Positive
    } else if n.is_negative() {
        PointSign::Negative
    } else {
        let special = z[..sig.r + sig.s].iter().all(Zero::is_zero);
        PointSign::Null { special }
    })
}

pub fn point_sign(z: &Vector) -> Result<PointSign> {
    sign_of_coords(&z.sig, &z.coords)
}

pub fn max_null_dimension(sig: &Signature) -> i64 {
    sig.max_null_dimension()
}

/// Gram matrix `G_ij = <b_i, b_j>` of a family of coordinate vectors.
pub fn gram_matrix(sig: &Signature, basis: &[Vec<GQ>]) -> Matrix {
    let m = basis.len();
    Matrix::from_fn(m, m, |i, j| pairing_coords(sig, &basis[i], &basis[j]))
}

/// Inertia `(a,b,c)` of the restricted form on an independent family.
pub fn subspace_signature(sig: &Signature, basis: &[Vec<GQ>]) -> Result<(usize, usize, usize)> {
    if basis.iter().any(|b| b.len() != sig.n()) {
        return Err(Error::Dimension("basis vector length".into()));
    }
    let rank = linalg::rank(basis, sig.n());
    if rank < basis.len() {
        return Err(Error::Rank { rank, count: basis.len() });
    }
    Ok(linalg::congruence_diagonalize(&gram_matrix(sig, basis))?.inertia())
}

/// A linear subspace of `C^{r,s,t}`, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    sig: Signature,
    basis: Vec<Vec<GQ>>,
    abc: (usize, usize, usize),
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    sig: Signature,
    basis: Vec<Vec<GQ>>,
    #[serde(default)]
    abc: Option<[usize; 3]>,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;
    fn try_from(v: SubspaceRepr) -> Result<Self> {
        let s = Subspace::span(v.sig, &v.basis)?;
        if let Some(abc) = v.abc {
            if abc != [s.abc.0, s.abc.1, s.abc.2] {
                return Err(Error::Descriptor(format!(
                    "declared signature {abc:?} disagrees with computed {:?}",
                    s.abc
                )));
            }
        }
        Ok(s)
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(v: Subspace) -> Self {
        SubspaceRepr { sig: v.sig, basis: v.basis, abc: Some([v.abc.0, v.abc.1, v.abc.2]) }
    }
}

impl Subspace {
    /// Span of an arbitrary (possibly dependent) family.
    pub fn span(sig: Signature, vectors: &[Vec<GQ>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != sig.n()) {
            return Err(Error::Dimension("spanning vector length".into()));
        }
        let (basis, _) = linalg::rref(vectors, sig.n());
        let abc = linalg::congruence_diagonalize(&gram_matrix(&sig, &basis))?.inertia();
        Ok(Self { sig, basis, abc })
    }

    pub fn span_vectors(sig: Signature, vectors: &[Vector]) -> Result<Self> {
        let raw: Vec<Vec<GQ>> = vectors.iter().map(|v| v.coords.clone()).collect();
        Self::span(sig, &raw)
    }

    /// Like [`Subspace::span`] but rejects dependent families.
    pub fn from_basis(sig: Signature, vectors: &[Vec<GQ>]) -> Result<Self> {
        let s = Self::span(sig, vectors)?;
        if s.dim() < vectors.len() {
            return Err(Error::Rank { rank: s.dim(), count: vectors.len() });
        }
        Ok(s)
    }

    pub fn zero(sig: Signature) -> Self {
        Self { sig, basis: Vec::new(), abc: (0, 0, 0) }
    }

    pub fn whole(sig: Signature) -> Self {
        Self { sig, basis: Matrix::identity(sig.n()).into_rows(), abc: (sig.r, sig.s, sig.t) }
    }

    /// Span of `e_{j+1}` for the 0-based `indices`.
    pub fn coordinate(sig: Signature, indices: &[usize]) -> Result<Self> {
        let vs: Vec<Vec<GQ>> = indices
            .iter()
            .map(|&j| {
                if j >= sig.n() {
                    Err(Error::Dimension(format!("coordinate e{} outside {}", j + 1, sig)))
                } else {
                    Ok(Vector::unit(sig, j).coords)
                }
            })
            .collect::<Result<_>>()?;
        Self::span(sig, &vs)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension `dim − 1`.
    pub fn projective_dim(&self) -> i64 {
        self.dim() as i64 - 1
    }

    pub fn basis(&self) -> &[Vec<GQ>] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.iter().map(|b| Vector { sig: self.sig, coords: b.clone() }).collect()
    }

    /// The restricted signature `(a, b, c)`.
    pub fn abc(&self) -> (usize, usize, usize) {
        self.abc
    }

    pub fn restricted_signature(&self) -> Option<Signature> {
        Signature::new(self.abc.0, self.abc.1, self.abc.2).ok()
    }

    pub fn is_null(&self) -> bool {
        self.abc.0 == 0 && self.abc.1 == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.abc.2 == 0
    }

    pub fn gram(&self) -> Matrix {
        gram_matrix(&self.sig, &self.basis)
    }

    pub fn contains(&self, v: &[GQ]) -> bool {
        v.iter().all(Zero::is_zero) || linalg::coordinates(&self.basis, v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.sig == other.sig && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.sig, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let n = self.sig.n();
        let k = self.dim();
        let l = other.dim();
        // Solve Σ a_i u_i − Σ b_j v_j = 0.
        let rows: Vec<Vec<GQ>> = (0..n)
            .map(|c| self.basis.iter().map(|u| u[c].clone()).chain(other.basis.iter().map(|v| -&v[c])).collect())
            .collect();
        let sols = linalg::nullspace(&rows, k + l);
        let vs: Vec<Vec<GQ>> = sols.iter().map(|x| combine(&self.basis, &x[..k], n)).collect();
        Subspace::span(self.sig, &vs)
    }

    /// `{w : <v, w> = 0 for all v ∈ S}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.sig.n();
        // <v, w> = 0  ⇔  Σ ε_j conj(v_j) w_j = 0 (conjugate of the defining sum).
        let rows: Vec<Vec<GQ>> = self
            .basis
            .iter()
            .map(|v| {
                (0..n)
                    .map(|j| match self.sig.epsilon(j) {
                        1 => v[j].conj(),
                        -1 => -v[j].conj(),
                        _ => GQ::zero(),
                    })
                    .collect()
            })
            .collect();
        let null = linalg::nullspace(&rows, n);
        Subspace::span(self.sig, &null).expect("complement vectors have ambient length")
    }

    /// `S ∩ S^⊥`, the kernel of the restricted form.
    pub fn radical(&self) -> Subspace {
        let g = self.gram();
        let m = self.dim();
        // x = Σ c_i b_i is radical iff Σ_i c_i G_ij = 0 for every j.
        let rows: Vec<Vec<GQ>> = (0..m).map(|j| (0..m).map(|i| g[(i, j)].clone()).collect()).collect();
        let sols = linalg::nullspace(&rows, m);
        let vs: Vec<Vec<GQ>> = sols.iter().map(|c| combine(&self.basis, c, self.sig.n())).collect();
        Subspace::span(self.sig, &vs).expect("radical vectors have ambient length")
    }

    /// True when every basis vector is a standard coordinate vector.
    pub fn coordinate_indices(&self) -> Option<Vec<usize>> {
        self.basis
            .iter()
            .map(|b| {
                let nz: Vec<usize> = (0..b.len()).filter(|&j| !b[j].is_zero()).collect();
                (nz.len() == 1 && b[nz[0]].is_one()).then(|| nz[0])
            })
            .collect()
    }

    pub fn is_orthogonal_to(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|u| other.basis.iter().all(|v| pairing_coords(&self.sig, u, v).is_zero()))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::Dimension(format!("subspaces of {} and {}", self.sig, other.sig)));
        }
        Ok(())
    }
}

pub(crate) fn combine(basis: &[Vec<GQ>], coeffs: &[GQ], n: usize) -> Vec<GQ> {
    let mut v = vec![GQ::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            if !b[j].is_zero() {
                let t = c * &b[j];
                v[j] += &t;
            }
        }
    }
    v
}

pub fn orthogonal_complement(s: &Subspace) -> Subspace {
    s.orthogonal_complement()
}

pub fn is_null_subspace(s: &Subspace) -> bool {
    s.is_null()
}

/// Renders a vector as a combination of coordinate vectors, e.g. `e2 + e4 + e5`.
pub fn format_combination(v: &[GQ]) -> String {
    let mut out = String::new();
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_real() && c.re.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&format!("e{}", j + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.abc;
        let name = if c == 0 { format!("P^{{{a},{b}}}") } else { format!("P^{{{a},{b},{c}}}") };
        let parts: Vec<String> = self.basis.iter().map(|v| format_combination(v)).collect();
        write!(f, "{name}: span{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
pub(crate) fn int_vec(xs: &[i64]) -> Vec<GQ> {
    xs.iter().map(|&x| GQ::from_int(x)).collect()
}
