//! Sparse multivariate polynomials over ℚ(i) in one or two variable blocks.
//!
//! The first block holds `z1..zn`; the optional second block holds `w1..wn`, which
//! stand for the conjugated variables `w̄1..w̄n` of the polarized forms. Monomials are
//! ordered degree-lexicographically with `z1 > … > zn > w1 > … > wn`.

mod gcd;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::GQ;

pub use gcd::{poly_gcd, poly_gcd_pair};
pub use parse::parse_polynomial;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    // Field order gives the derived Ord: total degree first, then lex on exponents.
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { deg: exps.iter().sum(), exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { deg: 0, exps: vec![0; nvars] }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { deg: self.deg + other.deg, exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial { deg: other.deg - self.deg, exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() }
    }

    fn block_degrees(&self, nz: usize) -> (u32, u32) {
        let dz = self.exps[..nz].iter().sum();
        (dz, self.deg - dz)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nz: usize,
    nw: usize,
    terms: BTreeMap<Monomial, GQ>,
}

pub type HomogeneousPolynomial = Polynomial;

/// Outcome of [`Polynomial::reduce_by`]:
/// `dividend = divisor^max(k,1) · quotient + remainder`, with `remainder = 0` iff `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    pub multiplicity: u32,
}

impl Polynomial {
    pub fn zero(nz: usize, nw: usize) -> Self {
        Self { nz, nw, terms: BTreeMap::new() }
    }

    pub fn constant(c: GQ, nz: usize, nw: usize) -> Self {
        let mut p = Self::zero(nz, nw);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nz + nw), c);
        }
        p
    }

    pub fn one(nz: usize, nw: usize) -> Self {
        Self::constant(GQ::one(), nz, nw)
    }

    /// The variable with flat index `i` (z-block first, then w-block).
    pub fn var(i: usize, nz: usize, nw: usize) -> Self {
        let mut exps = vec![0; nz + nw];
        exps[i] = 1;
        let mut p = Self::zero(nz, nw);
        p.terms.insert(Monomial::new(exps), GQ::one());
        p
    }

    /// `z_{i+1}` in a single-block ring of `n` variables.
    pub fn z(i: usize, n: usize) -> Self {
        Self::var(i, n, 0)
    }

    pub fn monomial(exps: Vec<u32>, coeff: GQ, nz: usize, nw: usize) -> Self {
        assert_eq!(exps.len(), nz + nw, "exponent vector length");
        let mut p = Self::zero(nz, nw);
        if !coeff.is_zero() {
            p.terms.insert(Monomial::new(exps), coeff);
        }
        p
    }

    pub fn from_terms(nz: usize, nw: usize, terms: impl IntoIterator<Item = (Vec<u32>, GQ)>) -> Self {
        let mut p = Self::zero(nz, nw);
        for (e, c) in terms {
            assert_eq!(e.len(), nz + nw, "exponent vector length");
            p.add_term(Monomial::new(e), &c);
        }
        p
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn nw(&self) -> usize {
        self.nw
    }

    pub fn nvars(&self) -> usize {
        self.nz + self.nw
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.deg == 0 && c.is_one())
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GQ)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> GQ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GQ)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&GQ> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree when homogeneous; `None` for the zero polynomial or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let (first, _) = self.terms.iter().next()?;
        let (last, _) = self.terms.iter().next_back()?;
        (first.deg == last.deg).then_some(first.deg)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Degree in each block when every term shares it (bihomogeneous).
    pub fn block_degrees(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| m.block_degrees(self.nz));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Degree in the single variable with flat index `v`.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[v]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exps[v] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: &GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            self.nz == other.nz && self.nw == other.nw,
            "polynomials from different rings: ({}, {}) vs ({}, {})",
            self.nz,
            self.nw,
            other.nz,
            other.nw
        );
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nz != other.nz || self.nw != other.nw {
            return Err(Error::Dimension(format!(
                "variable blocks ({}, {}) vs ({}, {})",
                self.nz, self.nw, other.nz, other.nw
            )));
        }
        Ok(())
    }

    /// Sum of two homogeneous polynomials of equal degree (zero is compatible with all).
    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a != b {
                return Err(Error::DegreeMismatch(a, b));
            }
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &GQ) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nz, self.nw);
        }
        Polynomial { nz: self.nz, nw: self.nw, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GQ) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nz, self.nw);
        }
        Polynomial { nz: self.nz, nw: self.nw, terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nz, self.nw);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj_coeffs(&self) -> Polynomial {
        Polynomial { nz: self.nz, nw: self.nw, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Embeds a single-block polynomial in `z` into the two-block ring `(z, w)`.
    pub fn lift_to_two_blocks(&self) -> Polynomial {
        assert_eq!(self.nw, 0, "already two-block");
        let n = self.nz;
        Polynomial {
            nz: n,
            nw: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps.clone();
                    e.resize(2 * n, 0);
                    (Monomial { deg: m.deg, exps: e }, c.clone())
                })
                .collect(),
        }
    }

    /// `p(z) ↦ p̄(w)`: moves the polynomial to the second block and conjugates coefficients.
    pub fn conj_to_second_block(&self) -> Polynomial {
        assert_eq!(self.nw, 0, "expects a single-block polynomial");
        let n = self.nz;
        Polynomial {
            nz: n,
            nw: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; n];
                    e.extend_from_slice(&m.exps);
                    (Monomial { deg: m.deg, exps: e }, c.conj())
                })
                .collect(),
        }
    }

    /// Exchanges the blocks and conjugates coefficients; fixes Hermitian-symmetric forms.
    pub fn hermitian_transpose(&self) -> Polynomial {
        assert_eq!(self.nz, self.nw, "needs two blocks of equal size");
        let n = self.nz;
        Polynomial {
            nz: n,
            nw: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps[n..].to_vec();
                    e.extend_from_slice(&m.exps[..n]);
                    (Monomial { deg: m.deg, exps: e }, c.conj())
                })
                .collect(),
        }
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars());
        Polynomial {
            nz: self.nz,
            nw: self.nw,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; m.exps.len()];
                    for (i, &x) in m.exps.iter().enumerate() {
                        e[perm[i]] = x;
                    }
                    (Monomial { deg: m.deg, exps: e }, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[GQ]) -> GQ {
        assert_eq!(point.len(), self.nvars(), "evaluation point length");
        let maxdeg = self.max_degree().unwrap_or(0) as usize;
        // powers[v][e] = point[v]^e
        let mut powers: Vec<Vec<GQ>> = Vec::with_capacity(point.len());
        for x in point {
            let mut row = vec![GQ::one()];
            for e in 1..=maxdeg {
                let next = &row[e - 1] * x;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = GQ::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[v][e as usize];
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes variable `j` by `subs[j]`; all substitutes share one ring.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.nvars() {
            return Err(Error::Dimension(format!("{} substitutes for {} variables", subs.len(), self.nvars())));
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let (nz, nw) = (first.nz, first.nw);
        if subs.iter().any(|s| s.nz != nz || s.nw != nw) {
            return Err(Error::Dimension("substitutes from different rings".into()));
        }
        let maxdeg = self.max_degree().unwrap_or(0);
        let mut cache: Vec<Vec<Polynomial>> = subs.iter().map(|s| vec![Polynomial::one(nz, nw), s.clone()]).collect();
        let mut out = Polynomial::zero(nz, nw);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone(), nz, nw);
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize && cache[v].len() <= maxdeg as usize {
                    let next = &cache[v][cache[v].len() - 1] * &subs[v];
                    cache[v].push(next);
                }
                t = &t * &cache[v][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `p(z) ↦ p(M u)`, with `M` an `n × k` matrix sending the `k` new variables to `z`.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial> {
        if self.nw != 0 {
            return Err(Error::Dimension("substitute_linear expects a single-block polynomial".into()));
        }
        if m.nrows() != self.nz {
            return Err(Error::Dimension(format!(
                "substitution matrix has {} rows for {} variables",
                m.nrows(),
                self.nz
            )));
        }
        let k = m.ncols();
        let forms: Vec<Polynomial> = (0..self.nz)
            .map(|j| {
                let mut f = Polynomial::zero(k, 0);
                for l in 0..k {
                    if !m[(j, l)].is_zero() {
                        let mut e = vec![0; k];
                        e[l] = 1;
                        f.add_term(Monomial::new(e), &m[(j, l)]);
                    }
                }
                f
            })
            .collect();
        if k == 0 {
            // Only the constant term survives a substitution into zero variables.
            let c = self.coeff(&Monomial::one(self.nz));
            return Ok(Polynomial::constant(c, 0, 0));
        }
        self.compose(&forms)
    }

    /// One pass of multivariate division by a single divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut p = self.terms.clone();
        let mut q = Polynomial::zero(self.nz, self.nw);
        let mut rem = Polynomial::zero(self.nz, self.nw);
        while let Some((m, c)) = p.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                // p -= qc * qm * (divisor − leading term)
                for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                    let key = dm.mul(&qm);
                    let delta = &qc * dc;
                    match p.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= &delta;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                    }
                }
                q.terms.insert(qm, qc);
            } else {
                rem.terms.insert(m, c);
            }
        }
        Ok((q, rem))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Normal form modulo the principal ideal `(divisor)` together with the largest
    /// power `k` of `divisor` dividing `self`.
    pub fn reduce_by(&self, divisor: &Polynomial) -> Result<DivisionResult> {
        let (q, r) = self.div_rem(divisor)?;
        if self.is_zero() || !r.is_zero() {
            return Ok(DivisionResult { quotient: q, remainder: r, multiplicity: 0 });
        }
        let mut quotient = q;
        let mut k = 1;
        // A unit divides everything, so its multiplicity is reported as 1.
        if divisor.max_degree() != Some(0) {
            while quotient.max_degree() >= divisor.max_degree() {
                match quotient.div_exact(divisor)? {
                    Some(q2) => {
                        quotient = q2;
                        k += 1;
                    }
                    None => break,
                }
            }
        }
        Ok(DivisionResult { quotient, remainder: Polynomial::zero(self.nz, self.nw), multiplicity: k })
    }

    /// Coefficient of `m` in each of `ps`, as a row vector.
    pub fn coefficient_vector(ps: &[Polynomial], m: &Monomial) -> Vec<GQ> {
        ps.iter().map(|p| p.coeff(m)).collect()
    }

    /// Union of the monomial supports, in descending order.
    pub fn joint_support(ps: &[Polynomial]) -> Vec<Monomial> {
        let mut all: Vec<Monomial> = ps.iter().flat_map(|p| p.terms.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all.reverse();
        all
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        self.terms.values().fold(num_bigint::BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, &c.denom_lcm()))
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Monomial, GQ> {
        &self.terms
    }
}

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.try_add(q)
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.try_mul(q)
}

pub fn poly_scale(p: &Polynomial, c: &GQ) -> Polynomial {
    p.scale(c)
}

pub fn reduce_by(dividend: &Polynomial, divisor: &Polynomial) -> Result<DivisionResult> {
    dividend.reduce_by(divisor)
}

pub fn substitute_linear(p: &Polynomial, m: &Matrix) -> Result<Polynomial> {
    p.substitute_linear(m)
}

pub fn conj_to_second_block(p: &Polynomial) -> Polynomial {
    p.conj_to_second_block()
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(self.nz, self.nw);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nz: self.nz, nw: self.nw, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::write_polynomial(self, f)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}
