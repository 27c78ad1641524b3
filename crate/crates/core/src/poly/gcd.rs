//! Multivariate gcd: recursive content/primitive-part splitting, one variable at a
//! time, with the subresultant remainder sequence doing the univariate work.

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Greatest common divisor of all nonzero entries, normalized to leading coefficient 1.
pub fn poly_gcd(ps: &[Polynomial]) -> Result<Polynomial> {
    if ps.is_empty() {
        return Err(Error::EmptyInput("gcd of an empty list"));
    }
    let mut acc: Option<Polynomial> = None;
    for p in ps.iter().filter(|p| !p.is_zero()) {
        if acc.as_ref().is_some_and(|g| g.max_degree() == Some(0)) {
            break;
        }
        acc = Some(match acc {
            None => p.clone(),
            Some(g) => gcd(&g, p),
        });
    }
    acc.map(|g| g.monic()).ok_or(Error::EmptyInput("gcd of zero polynomials"))
}

pub fn poly_gcd_pair(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    poly_gcd(&[a.clone(), b.clone()])
}

fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let Some(v) = (0..a.nvars()).find(|&v| a.uses_var(v) || b.uses_var(v)) else {
        return Polynomial::one(a.nz(), a.nw());
    };
    if !a.uses_var(v) {
        return gcd(a, &content(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content(a, v), b);
    }
    let (ca, cb) = (content(a, v), content(b, v));
    let pa = exact(a, &ca);
    let pb = exact(b, &cb);
    let c = gcd(&ca, &cb);
    let g = subresultant(&coeffs_in(&pa, v), &coeffs_in(&pb, v));
    let g = from_coeffs(&g, v, a.nz(), a.nw());
    let g = if g.uses_var(v) { exact(&g, &content(&g, v)) } else { Polynomial::one(a.nz(), a.nw()) };
    &c * &g
}

fn exact(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.div_exact(b).expect("same ring").expect("exact division in gcd recursion")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
fn content(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nz(), p.nw());
    for c in coeffs_in(p, v).into_iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c } else { gcd(&g, &c) };
        if g.max_degree() == Some(0) {
            return Polynomial::one(p.nz(), p.nw());
        }
    }
    g
}

/// Coefficients of `p` in `v`, indexed by the power of `v`.
fn coeffs_in(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let d = p.degree_in(v) as usize;
    let mut out = vec![Polynomial::zero(p.nz(), p.nw()); d + 1];
    for (m, c) in p.terms_map() {
        let k = m.exps()[v] as usize;
        let mut e = m.exps().to_vec();
        e[v] = 0;
        out[k].add_term(Monomial::new(e), c);
    }
    out
}

fn from_coeffs(cs: &[Polynomial], v: usize, nz: usize, nw: usize) -> Polynomial {
    let mut out = Polynomial::zero(nz, nw);
    for (k, c) in cs.iter().enumerate() {
        let mut e = vec![0; nz + nw];
        e[v] = k as u32;
        out = &out + &c.mul_monomial(&Monomial::new(e), &crate::scalar::GQ::from_int(1));
    }
    out
}

// Univariate polynomials over the coefficient ring, lowest power first, no trailing zeros.
type Upoly = Vec<Polynomial>;

fn trim(mut p: Upoly) -> Upoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deg(p: &Upoly) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1) · a mod b`.
fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut steps = 0;
    let total = deg(a) + 1 - db;
    while !r.is_empty() && r.len() > db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bc);
        }
        r = trim(r);
        steps += 1;
    }
    let fix = lb.pow((total - steps) as u32);
    r.into_iter().map(|c| &c * &fix).collect()
}

fn subresultant(a: &Upoly, b: &Upoly) -> Upoly {
    let (mut a, mut b) =
        if a.len() >= b.len() { (trim(a.clone()), trim(b.clone())) } else { (trim(b.clone()), trim(a.clone())) };
    let (nz, nw) = (a[0].nz(), a[0].nw());
    let mut g = Polynomial::one(nz, nw);
    let mut h = Polynomial::one(nz, nw);
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg(&r) == 0 {
            return vec![Polynomial::one(nz, nw)];
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 { h } else { exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1)) };
        debug_assert!(!g.is_zero());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n, false).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&[p("z1^2", 2), p("z1*z2", 2)]).unwrap(), p("z1", 2));
        assert!(poly_gcd(&[p("z1+z2", 2), p("z1-z2", 2)]).unwrap().is_one());
        let g = poly_gcd(&[p("z1^2*z3+z1*z2*z3", 3), p("z1^2*z2+z1*z2^2", 3)]).unwrap();
        assert_eq!(g, p("z1^2 + z1*z2", 3));
        assert!(poly_gcd(&[]).is_err());
        assert!(poly_gcd(&[Polynomial::zero(2, 0)]).is_err());
    }

    #[test]
    fn gcd_with_complex_coefficients() {
        let g = p("z1 + (0+1i)*z2", 2);
        let a = &g * &p("z1^2 - 3*z2^2", 2);
        let b = &g
            * &p("(2+1i)*z1*z2 + z3^2", 3)
                .substitute_linear(
                    &crate::linalg::Matrix::from_rows(vec![
                        vec![1.into(), 0.into()],
                        vec![0.into(), 1.into()],
                        vec![1.into(), 1.into()],
                    ])
                    .unwrap(),
                )
                .unwrap();
        assert_eq!(poly_gcd(&[a, b]).unwrap(), g);
    }

    #[test]
    fn gcd_of_many_with_zeros() {
        let phi = p("z1 - 2*z2", 3);
        let ps = vec![&phi * &p("z1", 3), Polynomial::zero(3, 0), &phi * &p("z2^2 + z3^2", 3), &phi * &p("z3", 3)];
        let g = poly_gcd(&ps).unwrap();
        assert_eq!(g, phi);
    }

    #[test]
    fn gcd_keeps_multiplicity() {
        let a = p("z1^3*z2 - z1^2*z2^2", 2);
        let b = p("z1^2*z2^2 - z1*z2^3", 2);
        // z1 z2 (z1 − z2) · {z1, z2}
        assert_eq!(poly_gcd(&[a, b]).unwrap(), p("z1^2*z2 - z1*z2^2", 2));
    }
}
