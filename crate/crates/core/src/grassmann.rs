//! Charts `H_{A,B} = {(z⁺, z⁺A, z⁺B)}` for `(r−1)`-planes, the `Ω_{r,s}` and
//! Shilov-boundary tests, and spans of images of planes under maps.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{Signature, Subspace};
use crate::linalg::Matrix;
use crate::maps::RationalMap;
use crate::poly::Polynomial;
use crate::random::{self, Rng};
use crate::scalar::GQ;

/// `A` is `r × s`, `B` is `r × t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChartRepr")]
pub struct PlaneChart {
    sig: Signature,
    a: Matrix,
    b: Matrix,
}

#[derive(Deserialize)]
struct ChartRepr {
    sig: Signature,
    a: Matrix,
    #[serde(default)]
    b: Option<Matrix>,
}

impl TryFrom<ChartRepr> for PlaneChart {
    type Error = Error;
    fn try_from(c: ChartRepr) -> Result<Self> {
        let b = c.b.unwrap_or_else(|| Matrix::zeros(c.sig.r, c.sig.t));
        PlaneChart::new(c.sig, c.a, b)
    }
}

fn shape_ok(m: &Matrix, rows: usize, cols: usize) -> bool {
    // A matrix with no rows cannot report its width.
    m.nrows() == rows && (rows == 0 || m.ncols() == cols)
}

impl PlaneChart {
    pub fn new(sig: Signature, a: Matrix, b: Matrix) -> Result<Self> {
        if !shape_ok(&a, sig.r, sig.s) || !shape_ok(&b, sig.r, sig.t) {
            return Err(Error::Shape(format!(
                "chart for {sig} needs A {}×{} and B {}×{}, got {}×{} and {}×{}",
                sig.r,
                sig.s,
                sig.r,
                sig.t,
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols()
            )));
        }
        Ok(Self { sig, a, b })
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn random(rng: &mut Rng, sig: Signature, height: i64) -> Self {
        let a = random::matrix(rng, sig.r, sig.s, height);
        let b = random::matrix(rng, sig.r, sig.t, height);
        Self { sig, a, b }
    }
}

/// The `r`-dimensional subspace with basis rows `(e_i, e_i A, e_i B)`.
pub fn plane_from_chart(c: &PlaneChart) -> Subspace {
    let (r, s, t) = (c.sig.r, c.sig.s, c.sig.t);
    let rows: Vec<Vec<GQ>> = (0..r)
        .map(|i| {
            let mut v = vec![GQ::zero(); r + s + t];
            v[i] = GQ::one();
            for j in 0..s {
                v[r + j] = c.a[(i, j)].clone();
            }
            for j in 0..t {
                v[r + s + j] = c.b[(i, j)].clone();
            }
            v
        })
        .collect();
    Subspace::from_basis(c.sig, &rows).expect("chart rows are independent")
}

/// `I − A Aᴴ` is positive definite, decided by its leading principal minors.
pub fn in_omega(a: &Matrix) -> bool {
    let r = a.nrows();
    if r == 0 {
        return true;
    }
    let aah = a.mul(&a.conj_transpose()).expect("A Aᴴ is square");
    let h = Matrix::from_fn(r, r, |i, j| {
        let id = if i == j { GQ::one() } else { GQ::zero() };
        &id - &aah[(i, j)]
    });
    (1..=r).all(|k| {
        let minor = Matrix::from_fn(k, k, |i, j| h[(i, j)].clone());
        let d = minor.determinant().expect("square minor");
        d.re > Zero::zero()
    })
}

/// `A Aᴴ = I` exactly; only the `r ≤ s` orientation is defined.
pub fn on_shilov(a: &Matrix) -> Result<bool> {
    let (r, s) = (a.nrows(), a.ncols());
    if r > s {
        return Err(Error::Shape(format!("Shilov test needs r ≤ s, got a {r}×{s} matrix; swap the signature first")));
    }
    if r == 0 {
        return Ok(true);
    }
    Ok(a.mul(&a.conj_transpose())? == Matrix::identity(r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneKind {
    Positive,
    Null,
    Mixed,
}

pub fn plane_kind(c: &PlaneChart) -> PlaneKind {
    if in_omega(&c.a) {
        PlaneKind::Positive
    } else if on_shilov(&c.a).unwrap_or(false) {
        PlaneKind::Null
    } else {
        PlaneKind::Mixed
    }
}

/// Linear span of `F(S)`: substitute a parametrization of `S` and collect the
/// coefficient vectors of every monomial in the parameters.
pub fn span_of_image(f: &RationalMap, s: &Subspace) -> Result<Subspace> {
    if s.sig() != f.source() {
        return Err(Error::Dimension(format!("subspace of {} for a map from {}", s.sig(), f.source())));
    }
    if s.dim() == 0 {
        return Err(Error::Indeterminate("the zero subspace has no image".into()));
    }
    let n = f.source().n();
    let m = Matrix::from_fn(n, s.dim(), |j, l| s.basis()[l][j].clone());
    let comps = f.components().iter().map(|c| c.substitute_linear(&m)).collect::<Result<Vec<_>>>()?;
    let vs: Vec<Vec<GQ>> =
        Polynomial::joint_support(&comps).iter().map(|mono| Polynomial::coefficient_vector(&comps, mono)).collect();
    if vs.is_empty() {
        return Err(Error::Indeterminate("the map vanishes identically on the subspace".into()));
    }
    Subspace::span(f.target(), &vs)
}

/// A random projective `k`-plane of `sig`.
pub fn random_plane(rng: &mut Rng, sig: Signature, k: usize, height: i64) -> Subspace {
    loop {
        let vs: Vec<Vec<GQ>> = (0..=k).map(|_| random::vector(rng, sig.n(), height)).collect();
        if let Ok(s) = Subspace::from_basis(sig, &vs) {
            return s;
        }
    }
}

/// A random projective `k`-plane inside a random maximal null subspace.
pub fn random_null_plane(rng: &mut Rng, sig: Signature, k: usize, height: i64) -> Result<Subspace> {
    let basis = random::maximal_null_basis(rng, &sig);
    if k + 1 > basis.len() {
        return Err(Error::Dimension(format!(
            "{sig} has no null {k}-planes (maximal null dimension {})",
            sig.max_null_dimension()
        )));
    }
    loop {
        let vs: Vec<Vec<GQ>> = (0..=k)
            .map(|_| {
                let c: Vec<GQ> = (0..basis.len()).map(|_| random::scalar(rng, height, true)).collect();
                crate::hermitian::combine(&basis, &c, sig.n())
            })
            .collect();
        if let Ok(s) = Subspace::from_basis(sig, &vs) {
            return Ok(s);
        }
    }
}

/// Largest projective dimension of `span_of_image` over `trials` random `k`-planes.
pub fn generic_plane_image_dim(f: &RationalMap, k: usize, trials: usize, seed: u64) -> Result<i64> {
    let sig = f.source();
    if k >= sig.n() {
        return Err(Error::Dimension(format!("no {k}-planes in a space of dimension {}", sig.n() - 1)));
    }
    let mut rng = random::rng(seed);
    let mut best = -1;
    for _ in 0..trials.max(1) {
        let plane = random_plane(&mut rng, sig, k, 10);
        match span_of_image(f, &plane) {
            Ok(w) => best = best.max(w.projective_dim()),
            Err(Error::Indeterminate(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}

/// Size guard for the symbolic mode: `(k+1)·n` indeterminates, degree ≤ 3.
pub const SYMBOLIC_MAX_INDETERMINATES: usize = 12;
pub const SYMBOLIC_MAX_DEGREE: u32 = 3;

/// Exact generic image dimension of `k`-planes: parametrize a plane by a fully
/// indeterminate `(k+1) × n` matrix `Y`, and take the rank over `ℚ(i)(Y)` of the
/// coefficient matrix by fraction-free elimination. This is an upper bound valid for
/// every plane. `None` when the instance exceeds the size guard.
pub fn symbolic_plane_image_dim(f: &RationalMap, k: usize) -> Result<Option<i64>> {
    let n = f.source().n();
    if k >= n {
        return Err(Error::Dimension(format!("no {k}-planes in a space of dimension {}", n - 1)));
    }
    if (k + 1) * n > SYMBOLIC_MAX_INDETERMINATES || f.degree() > SYMBOLIC_MAX_DEGREE {
        return Ok(None);
    }
    let ku = k + 1;
    let nv = ku + ku * n;
    // Variables: u_0..u_k, then y_{l,j} at ku + l·n + j.
    let subs: Vec<Polynomial> = (0..n)
        .map(|j| {
            let mut acc = Polynomial::zero(nv, 0);
            for l in 0..ku {
                let mut e = vec![0; nv];
                e[l] = 1;
                e[ku + l * n + j] = 1;
                acc = &acc + &Polynomial::monomial(e, GQ::one(), nv, 0);
            }
            acc
        })
        .collect();
    let composed = f.components().iter().map(|c| c.compose(&subs)).collect::<Result<Vec<_>>>()?;
    // Group by the u-part of each monomial: rows are u-monomials, columns components.
    let mut rows: std::collections::BTreeMap<Vec<u32>, Vec<Polynomial>> = Default::default();
    for (col, c) in composed.iter().enumerate() {
        for (m, coeff) in c.terms() {
            let key = m.exps()[..ku].to_vec();
            let mut e = m.exps().to_vec();
            e[..ku].iter_mut().for_each(|x| *x = 0);
            let row = rows.entry(key).or_insert_with(|| vec![Polynomial::zero(nv, 0); composed.len()]);
            row[col] = &row[col] + &Polynomial::monomial(e, coeff.clone(), nv, 0);
        }
    }
    let matrix: Vec<Vec<Polynomial>> = rows.into_values().collect();
    let rank = bareiss_rank(matrix, nv)?;
    Ok(Some(rank as i64 - 1))
}

/// Rank over the fraction field of a polynomial matrix by Bareiss elimination.
fn bareiss_rank(mut m: Vec<Vec<Polynomial>>, nv: usize) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(nv, 0);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] =
                    num.div_exact(&prev)?.ok_or_else(|| Error::Indeterminate("inexact fraction-free step".into()))?;
            }
            m[i][c] = Polynomial::zero(nv, 0);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Ok(r)
}

/// Dimension, in parameters, of the monomials of degree `d` in `k+1` variables.
pub fn veronese_bound(k: usize, d: u32) -> usize {
    random::monomials_of_degree(k + 1, d).len()
}
