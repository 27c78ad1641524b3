//! Seeded sampling of exact scalars, vectors, polynomials and isometries.
//!
//! Everything takes an explicit RNG built by [`rng`], so results are reproducible
//! across platforms.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermitian::Signature;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{ratio, GQ};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream from a base seed and a tag.
pub fn sub_seed(seed: u64, tag: u64) -> u64 {
    // SplitMix64 finalizer.
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Rational with numerator in `[-height, height]` and denominator in `[1, height]`.
pub fn rational(rng: &mut Rng, height: i64) -> num_rational::BigRational {
    let h = height.max(1);
    ratio(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

pub fn nonzero_rational(rng: &mut Rng, height: i64) -> num_rational::BigRational {
    loop {
        let q = rational(rng, height);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Gaussian rational; the imaginary part is drawn only when `complex`.
pub fn scalar(rng: &mut Rng, height: i64, complex: bool) -> GQ {
    let re = rational(rng, height);
    let im = if complex { rational(rng, height) } else { num_rational::BigRational::zero() };
    GQ::new(re, im)
}

pub fn nonzero_scalar(rng: &mut Rng, height: i64, complex: bool) -> GQ {
    loop {
        let c = scalar(rng, height, complex);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn vector(rng: &mut Rng, n: usize, height: i64) -> Vec<GQ> {
    loop {
        let v: Vec<GQ> = (0..n).map(|_| scalar(rng, height, true)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn matrix(rng: &mut Rng, rows: usize, cols: usize, height: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng, height, true))
}

/// All exponent vectors of total degree `d` in `n` variables, in descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// A nonzero homogeneous polynomial of degree `d` in `n` variables with at most
/// `max_terms` terms.
pub fn homogeneous_polynomial(rng: &mut Rng, n: usize, d: u32, max_terms: usize, height: i64) -> Polynomial {
    let mut monos = monomials_of_degree(n, d);
    monos.shuffle(rng);
    let count = rng.gen_range(1..=max_terms.clamp(1, monos.len()));
    Polynomial::from_terms(
        n,
        0,
        monos
            .into_iter()
            .take(count)
            .map(|m| (m.exps().to_vec(), nonzero_scalar(rng, height, true)))
            .collect::<Vec<_>>(),
    )
}

/// A unit-modulus Gaussian rational `((p²−q²) + 2pq i)/(p²+q²)`.
pub fn unit_phase(rng: &mut Rng) -> GQ {
    let (p, q) = (rng.gen_range(1..=4i64), rng.gen_range(0..=4i64));
    let den = p * p + q * q;
    GQ::from_ratios(p * p - q * q, den, 2 * p * q, den)
}

fn small_parameter(rng: &mut Rng) -> (i64, i64) {
    // u = a/b with 0 < |u| < 1.
    let b = rng.gen_range(2..=5i64);
    let a = rng.gen_range(1..b);
    if rng.gen_bool(0.5) {
        (a, b)
    } else {
        (-a, b)
    }
}

/// Pythagorean cosine/sine pair for `u = a/b`.
fn elliptic(a: i64, b: i64) -> (GQ, GQ) {
    let den = a * a + b * b;
    (GQ::from_ratios(b * b - a * a, den, 0, 1), GQ::from_ratios(2 * a * b, den, 0, 1))
}

/// Rational cosh/sinh pair for `u = a/b`, `|u| < 1`.
fn hyperbolic(a: i64, b: i64) -> (GQ, GQ) {
    let den = b * b - a * a;
    (GQ::from_ratios(b * b + a * a, den, 0, 1), GQ::from_ratios(2 * a * b, den, 0, 1))
}

/// Left-multiplies by a rotation acting on rows `i`, `j`.
fn rotate_rows(m: &mut Matrix, i: usize, j: usize, c: &GQ, s: &GQ, hyperbolic: bool) {
    for col in 0..m.ncols() {
        let (x, y) = (m[(i, col)].clone(), m[(j, col)].clone());
        if hyperbolic {
            m[(i, col)] = &(c * &x) + &(s * &y);
            m[(j, col)] = &(s * &x) + &(c * &y);
        } else {
            m[(i, col)] = &(c * &x) - &(s * &y);
            m[(j, col)] = &(s * &x) + &(c * &y);
        }
    }
}

fn scale_row(m: &mut Matrix, i: usize, k: &GQ) {
    for col in 0..m.ncols() {
        m[(i, col)] = &m[(i, col)] * k;
    }
}

fn swap_rows(m: &mut Matrix, i: usize, j: usize) {
    for col in 0..m.ncols() {
        let a = m[(i, col)].clone();
        m[(i, col)] = m[(j, col)].clone();
        m[(j, col)] = a;
    }
}

/// A random exact isometry `M` of `C^{r,s,t}` (`Mᴴ J M = J`), built from `steps`
/// elementary moves: block permutations, unit phases, elliptic rotations within a
/// sign block, hyperbolic rotations across the blocks, and degenerate shears.
pub fn isometry(rng: &mut Rng, sig: &Signature, steps: usize) -> Matrix {
    let n = sig.n();
    let mut m = Matrix::identity(n);
    let blocks = [(0, sig.r), (sig.r, sig.r + sig.s), (sig.r + sig.s, n)];
    for _ in 0..steps {
        match rng.gen_range(0..5u8) {
            0 => {
                // Permutation within a sign block.
                let (a, b) = blocks[rng.gen_range(0..2)];
                if b - a >= 2 {
                    let i = rng.gen_range(a..b);
                    let j = rng.gen_range(a..b);
                    swap_rows(&mut m, i, j);
                }
            }
            1 => {
                if sig.r + sig.s > 0 {
                    let i = rng.gen_range(0..sig.r + sig.s);
                    let ph = unit_phase(rng);
                    scale_row(&mut m, i, &ph);
                }
            }
            2 => {
                let (a, b) = blocks[rng.gen_range(0..2)];
                if b - a >= 2 {
                    let i = rng.gen_range(a..b);
                    let mut j = rng.gen_range(a..b);
                    while j == i {
                        j = rng.gen_range(a..b);
                    }
                    let (pa, pb) = small_parameter(rng);
                    let (c, s) = elliptic(pa, pb);
                    rotate_rows(&mut m, i, j, &c, &s, false);
                }
            }
            3 => {
                if sig.r > 0 && sig.s > 0 {
                    let i = rng.gen_range(0..sig.r);
                    let j = rng.gen_range(sig.r..sig.r + sig.s);
                    let (pa, pb) = small_parameter(rng);
                    let (c, s) = hyperbolic(pa, pb);
                    rotate_rows(&mut m, i, j, &c, &s, true);
                }
            }
            _ => {
                // z⁰_k += c·z_j for a nondegenerate j: invisible to the form.
                if sig.t > 0 && sig.r + sig.s > 0 {
                    let k = rng.gen_range(sig.r + sig.s..n);
                    let j = rng.gen_range(0..sig.r + sig.s);
                    let c = nonzero_scalar(rng, 3, true);
                    for col in 0..n {
                        let add = &c * &m[(j, col)];
                        m[(k, col)] = &m[(k, col)] + &add;
                    }
                }
            }
        }
    }
    m
}

/// A random exact unitary `s × s` matrix.
pub fn unitary(rng: &mut Rng, s: usize, steps: usize) -> Matrix {
    isometry(rng, &Signature::rst(s, 0, 0), steps)
}

/// An `r × s` matrix with `A Aᴴ = I` (a Shilov-boundary point), `r ≤ s`.
pub fn shilov_point(rng: &mut Rng, r: usize, s: usize) -> Matrix {
    assert!(r <= s, "Shilov points need r ≤ s");
    let u = unitary(rng, s, 2 + s);
    Matrix::from_rows(u.rows()[..r].to_vec()).expect("rectangular slice")
}

/// A random point of `Ω_{r,s}`, i.e. `I − A Aᴴ > 0`: a Shilov point scaled by a
/// rational in `[0, 1)`, or a matrix with small entries when `r > s`.
pub fn omega_point(rng: &mut Rng, r: usize, s: usize) -> Matrix {
    if r <= s {
        let u = shilov_point(rng, r, s);
        let den = rng.gen_range(2..=6i64);
        let num = rng.gen_range(0..den);
        u.scale(&GQ::from_ratios(num, den, 0, 1))
    } else {
        // ‖A‖ < 1 by keeping entries small: |a_ij| ≤ 1/(2·s·r).
        let bound = (2 * r * s) as i64;
        Matrix::from_fn(r, s, |_, _| {
            let x = rng.gen_range(-1..=1i64);
            let y = rng.gen_range(-1..=1i64);
            GQ::from_ratios(x, bound, y, bound)
        })
    }
}

/// A random null vector `(z⁺, z⁺A, z⁰)` of `C^{r,s,t}` (for `r ≤ s`; swapped roles
/// otherwise). Requires `r, s ≥ 1` or `t ≥ 1`.
pub fn null_vector(rng: &mut Rng, sig: &Signature, height: i64) -> Vec<GQ> {
    let (r, s, t) = (sig.r, sig.s, sig.t);
    let mut v = vec![GQ::zero(); sig.n()];
    if r == 0 || s == 0 {
        assert!(t > 0, "no null vectors in a definite space");
        for x in v.iter_mut().skip(r + s) {
            *x = scalar(rng, height, true);
        }
        if v.iter().all(Zero::is_zero) {
            v[r + s] = GQ::one();
        }
        return v;
    }
    let lo = r.min(s);
    let hi = r.max(s);
    let a = shilov_point(rng, lo, hi);
    let x = vector(rng, lo, height);
    let y = a.transpose().mul_vec(&x).expect("shape");
    let (xs, ys) = if r <= s { (0, r) } else { (r, 0) };
    for (i, xi) in x.into_iter().enumerate() {
        v[xs + i] = xi;
    }
    for (i, yi) in y.into_iter().enumerate() {
        v[ys + i] = yi;
    }
    for x in v.iter_mut().skip(r + s) {
        *x = scalar(rng, height, true);
    }
    v
}

/// A random maximal null subspace basis: rows `(e_i, e_iA)` for a Shilov point `A`,
/// plus the degenerate directions.
pub fn maximal_null_basis(rng: &mut Rng, sig: &Signature) -> Vec<Vec<GQ>> {
    let (r, s) = (sig.r, sig.s);
    let n = sig.n();
    let mut basis = Vec::new();
    let lo = r.min(s);
    if lo > 0 {
        let a = shilov_point(rng, lo, r.max(s));
        for i in 0..lo {
            let mut v = vec![GQ::zero(); n];
            let (xs, ys) = if r <= s { (0, r) } else { (r, 0) };
            v[xs + i] = GQ::one();
            for j in 0..r.max(s) {
                v[ys + j] = a[(i, j)].clone();
            }
            basis.push(v);
        }
    }
    for k in r + s..n {
        let mut v = vec![GQ::zero(); n];
        v[k] = GQ::one();
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{gram_matrix, norm_coords};

    #[test]
    fn isometries_preserve_the_form() {
        let mut g = rng(11);
        for sig in [Signature::rst(2, 2, 1), Signature::rst(1, 3, 0), Signature::rst(3, 1, 2)] {
            let m = isometry(&mut g, &sig, 8);
            let j = sig.form_matrix();
            let lhs = m.conj_transpose().mul(&j).unwrap().mul(&m).unwrap();
            assert_eq!(lhs, j);
        }
    }

    #[test]
    fn shilov_and_null_samples() {
        let mut g = rng(5);
        let a = shilov_point(&mut g, 2, 3);
        assert_eq!(a.mul(&a.conj_transpose()).unwrap(), Matrix::identity(2));
        for sig in [Signature::rst(2, 3, 1), Signature::rst(3, 1, 0), Signature::rst(0, 2, 1)] {
            let v = null_vector(&mut g, &sig, 5);
            assert!(norm_coords(&sig, &v).is_zero());
            let b = maximal_null_basis(&mut g, &sig);
            assert_eq!(b.len() as i64, sig.max_null_dimension() + 1);
            assert!(gram_matrix(&sig, &b).is_zero());
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<GQ> = vector(&mut rng(3), 4, 10);
        let b: Vec<GQ> = vector(&mut rng(3), 4, 10);
        assert_eq!(a, b);
        assert_ne!(sub_seed(1, 2), sub_seed(1, 3));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }
}
