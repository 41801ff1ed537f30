use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

/// Ordered list of variable names; the first is the largest in the term order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new(names: &[&str]) -> Self {
        Vars(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    pub fn xyz() -> Self {
        Vars::new(&["x", "y", "z"])
    }

    pub fn uvw() -> Self {
        Vars::new(&["u", "v", "w"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial. No zero coefficient is ever stored.
#[derive(Clone, PartialEq)]
pub struct MPoly<K = GaussianRational> {
    vars: Vars,
    terms: BTreeMap<Monomial, K>,
}

pub type Poly = MPoly<GaussianRational>;

impl<K: Scalar> MPoly<K> {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: K) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MPoly::constant(vars, K::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        MPoly::monomial(vars, Monomial::var(vars.len(), i, 1), K::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: K) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum c_k * var_k`.
    pub fn linear(vars: &Vars, coeffs: &[K]) -> Self {
        let mut p = MPoly::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars.len(), i, 1), c.clone());
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = MPoly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree() as usize)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree() as usize).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<usize> {
        self.terms.keys().map(|m| m.0[var] as usize).max()
    }

    pub fn occurs(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term under the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> K {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, o: &Self) {
        assert!(
            self.vars == o.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut out = MPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &K) -> Self {
        MPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c.mul(&K::from_int(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars()).map(|v| self.derivative(v)).collect()
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars());
        let maxdeg: Vec<u32> = (0..self.nvars())
            .map(|v| self.degree_in(v).unwrap_or(0) as u32)
            .collect();
        let powers: Vec<Vec<K>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                v.push(K::one());
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute `subs[k]` for variable `k`; the result lives in the
    /// variables of the substituted polynomials.
    pub fn compose(&self, subs: &[MPoly<K>]) -> MPoly<K> {
        assert_eq!(subs.len(), self.nvars());
        let target = subs[0].vars.clone();
        let maxdeg: Vec<usize> = (0..self.nvars())
            .map(|v| self.degree_in(v).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MPoly<K>>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &d)| {
                let mut v = vec![MPoly::one(&target)];
                for k in 1..=d {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Set variable `var` to the value `c`, keeping the variable list.
    pub fn specialize(&self, var: usize, c: &K) -> Self {
        let maxd = self.degree_in(var).unwrap_or(0);
        let mut pw = vec![K::one()];
        for k in 1..=maxd {
            let next = pw[k - 1].mul(c);
            pw.push(next);
        }
        let mut out = MPoly::zero(&self.vars);
        for (m, a) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var] as usize;
            m2.0[var] = 0;
            out.add_term(m2, a.mul(&pw[e]));
        }
        out
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly<K>> {
        let d = self.degree_in(var).unwrap_or(0);
        let mut out = vec![MPoly::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[var] as usize;
            m2.0[var] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Vars, var: usize, coeffs: &[MPoly<K>]) -> Self {
        let mut out = MPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[var] += k as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Univariate view when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UPoly<K>> {
        let mut v = vec![K::zero(); self.degree_in(var).map_or(0, |d| d + 1)];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            v[m.0[var] as usize] = c.clone();
        }
        Some(UPoly::new(v))
    }

    pub fn from_univariate(vars: &Vars, var: usize, p: &UPoly<K>) -> Self {
        MPoly::from_terms(
            vars,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(vars.len(), var, k as u32), c.clone())),
        )
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        MPoly::from_terms(
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() as usize == k)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Make homogeneous of degree `deg` using `var` as the extra variable.
    pub fn homogenize(&self, var: usize, deg: usize) -> Self {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[var] += deg as u32 - m.degree();
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.leading_coeff().inv()?;
        Ok(self.scale(&inv))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.check_vars(d);
        let (lm, lc) = d.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc.inv()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.vars);
        while let Some((m, c)) = r.leading_term() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul(&lc_inv);
            r = r.sub(&d.mul_monomial(&qm).scale(&qc));
            q.add_term(qm, qc);
        }
        Ok(Some(q))
    }

    pub fn map_coeffs<L: Scalar>(&self, f: impl Fn(&K) -> L) -> MPoly<L> {
        MPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Same terms, new variable names (same count).
    pub fn with_vars(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.nvars());
        MPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl MPoly<GaussianRational> {
    /// All coefficients are real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    pub fn to_complex_terms(&self) -> Vec<(Vec<u32>, num_complex::Complex64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.to_complex()))
            .collect()
    }

    /// Scale to Gaussian-integer coefficients (positive multiplier).
    pub fn clear_denominators(&self) -> Self {
        let den = self
            .terms
            .values()
            .fold(num_bigint::BigInt::from(1), |acc, c| {
                num_integer::Integer::lcm(&acc, &c.denom_lcm())
            });
        self.scale(&GaussianRational::new(
            num_rational::BigRational::from_integer(den),
            num_rational::BigRational::from_integer(0.into()),
        ))
    }
}

impl<K: Scalar> fmt::Display for MPoly<K> {
    /// Descending term order, in the input grammar (for Q(i) coefficients).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars.0[i].clone()
                        } else {
                            format!("{}^{}", self.vars.0[i], e)
                        }
                    })
                    .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let simple = !cs[1..].contains(['+', '-', '[']) && !cs.contains(" mod ");
            let (neg, body) = if simple && cs.starts_with('-') {
                (true, &cs[1..])
            } else {
                (false, cs.as_str())
            };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let body = if simple {
                body.to_string()
            } else {
                format!("({body})")
            };
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for MPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Scalar> Add for &MPoly<K> {
    type Output = MPoly<K>;
    fn add(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::add(self, o)
    }
}

impl<K: Scalar> Sub for &MPoly<K> {
    type Output = MPoly<K>;
    fn sub(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::sub(self, o)
    }
}

impl<K: Scalar> Mul for &MPoly<K> {
    type Output = MPoly<K>;
    fn mul(self, o: &MPoly<K>) -> MPoly<K> {
        MPoly::mul(self, o)
    }
}

impl<K: Scalar> Neg for &MPoly<K> {
    type Output = MPoly<K>;
    fn neg(self) -> MPoly<K> {
        MPoly::neg(self)
    }
}

impl<K: Scalar> serde::Serialize for MPoly<K> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        let c = Monomial(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(
            xyz("z^2+x*y+x^2").leading_term().unwrap().0,
            &Monomial(vec![2, 0, 0])
        );
    }

    #[test]
    fn euler_identity_on_cubic() {
        let f = xyz("y^2*z - x^3 + 3*x*y*z");
        let g = f.gradient();
        let lhs = &(&(&xyz("x") * &g[0]) + &(&xyz("y") * &g[1])) + &(&xyz("z") * &g[2]);
        assert_eq!(lhs, f.scale(&GaussianRational::from_int(3)));
    }

    #[test]
    fn exact_division() {
        let f = xyz("x^2-z^2");
        assert_eq!(f.div_exact(&xyz("x-z")).unwrap(), Some(xyz("x+z")));
        assert_eq!(xyz("x^2+y^2").div_exact(&xyz("x+y")).unwrap(), None);
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero(&Vars::xyz()).total_degree(), None);
        assert_eq!(xyz("3").total_degree(), Some(0));
    }

    #[test]
    fn compose_and_coefficients() {
        let f = xyz("x^2+y");
        let g = f.compose(&[xyz("y+z"), xyz("x"), xyz("z")]);
        assert_eq!(g, xyz("y^2+2*y*z+z^2+x"));
        let cs = xyz("x^2*y+3*x+y").coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(
            Poly::from_coeffs_in(&Vars::xyz(), 0, &cs),
            xyz("x^2*y+3*x+y")
        );
    }
}
