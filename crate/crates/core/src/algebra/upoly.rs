use std::fmt;

use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first.
///
/// Trailing coefficients that are exactly zero are never stored. Over an
/// extension ring a stored leading coefficient can still be a zero divisor;
/// [`UPoly::trim_decided`] settles that.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> UPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        UPoly::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    /// `t - root`.
    pub fn linear_root(root: &K) -> Self {
        UPoly::new(vec![root.neg(), K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = 0; use only where that is harmless.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    /// Drop leading coefficients that vanish in every component of the ring.
    pub fn trim_decided(&mut self) -> Result<()> {
        while let Some(c) = self.coeffs.last() {
            if c.decide_zero()? {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UPoly::constant(K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&K::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute a polynomial for the variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let mut d = d.clone();
        d.trim_decided()?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.lc().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].mul(&lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].sub(&c.mul(dc));
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, mut r) = self.divrem(d)?;
        r.trim_decided()?;
        if !r.is_zero() {
            return Err(Error::EliminationFailed(
                "inexact univariate division".into(),
            ));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Self> {
        let mut s = self.clone();
        s.trim_decided()?;
        if s.is_zero() {
            return Ok(s);
        }
        let inv = s.lc().inv()?;
        Ok(s.scale(&inv))
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = o.clone();
        a.trim_decided()?;
        b.trim_decided()?;
        while !b.is_zero() {
            let mut r = a.rem(&b)?;
            r.trim_decided()?;
            K::shrink(&mut r.coeffs);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Largest `k` with `lin^k | self`, where `lin` has degree one.
    pub fn multiplicity_of(&self, lin: &Self) -> Result<usize> {
        let mut p = self.clone();
        p.trim_decided()?;
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut k = 0;
        loop {
            let (q, mut r) = p.divrem(lin)?;
            r.trim_decided()?;
            if !r.is_zero() {
                return Ok(k);
            }
            k += 1;
            p = q;
        }
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` with monic,
    /// pairwise coprime, square-free factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Self, usize)>> {
        let f = self.monic()?;
        if f.deg0() == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let a0 = f.gcd(&fp)?;
        let mut b = f.exact_div(&a0)?;
        let mut c = fp.exact_div(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d)?;
            if a.deg0() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            if b.deg0() == 0 {
                break;
            }
            c = d.exact_div(&a)?;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    pub fn squarefree_part(&self) -> Result<Self> {
        let f = self.monic()?;
        if f.deg0() == 0 {
            return Ok(f);
        }
        let g = f.gcd(&f.derivative())?;
        f.exact_div(&g)?.monic()
    }

    /// Resultant over a field by the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> Result<K> {
        let mut a = self.clone();
        let mut b = o.clone();
        a.trim_decided()?;
        b.trim_decided()?;
        if a.is_zero() || b.is_zero() {
            return Ok(K::zero());
        }
        let mut acc = K::one();
        loop {
            let da = a.deg0();
            let db = b.deg0();
            if db == 0 {
                return Ok(acc.mul(&b.lc().pow(da as u32)));
            }
            let mut r = a.rem(&b)?;
            r.trim_decided()?;
            if r.is_zero() {
                return Ok(K::zero());
            }
            let dr = r.deg0();
            // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b, r)
            if da % 2 == 1 && db % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.lc().pow((da - dr) as u32));
            a = b;
            b = r;
        }
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> UPoly<L> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl UPoly<GaussianRational> {
    /// Roots in Q(i), found by rounding numeric approximations and confirmed
    /// by exact evaluation. Roots with large denominators may be missed; every
    /// returned root is exact.
    pub fn gaussian_roots(&self) -> Vec<GaussianRational> {
        use crate::numericlab::roots::{poly_roots, RootOptions};
        use num_bigint::BigInt;
        use num_rational::BigRational;

        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        // Clear denominators so that lc * root is a Gaussian integer for any
        // rational root whose denominator divides lc.
        let den = self.coeffs.iter().fold(BigInt::from(1), |acc, c| {
            num_integer::Integer::lcm(&acc, &c.denom_lcm())
        });
        let scaled: Vec<GaussianRational> = self
            .coeffs
            .iter()
            .map(|c| {
                c * &GaussianRational::new(
                    BigRational::from_integer(den.clone()),
                    BigRational::from_integer(0.into()),
                )
            })
            .collect();
        let lc = scaled.last().unwrap().clone();
        let approx: Vec<num_complex::Complex64> = scaled.iter().map(|c| c.to_complex()).collect();
        let Some(roots) = poly_roots(&approx, &RootOptions::default()) else {
            return Vec::new();
        };
        let lc_c = lc.to_complex();
        let mut found: Vec<GaussianRational> = Vec::new();
        let mut rest = self.clone();
        for r in roots {
            let mut candidates = Vec::new();
            let w = r * lc_c;
            if w.re.is_finite() && w.im.is_finite() && w.norm() < 1e15 {
                let g = GaussianRational::from_parts(w.re.round() as i64, w.im.round() as i64);
                if let Ok(c) = g.div(&lc) {
                    candidates.push(c);
                }
            }
            if r.norm() < 1e15 {
                for den in [1i64, 2, 3, 4, 5, 6, 8, 10, 12] {
                    let re = (r.re * den as f64).round() as i64;
                    let im = (r.im * den as f64).round() as i64;
                    candidates.push(GaussianRational::new(
                        BigRational::new(re.into(), den.into()),
                        BigRational::new(im.into(), den.into()),
                    ));
                }
            }
            for c in candidates {
                if found.contains(&c) {
                    continue;
                }
                if Scalar::is_zero(&rest.eval(&c)) {
                    found.push(c.clone());
                    if let Ok(q) = rest.exact_div(&UPoly::linear_root(&c)) {
                        rest = q;
                    }
                    break;
                }
            }
        }
        found
    }
}

impl<K: Scalar> fmt::Display for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<K: Scalar> fmt::Debug for UPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = GaussianRational;

    fn p(c: &[i64]) -> UPoly<Q> {
        UPoly::new(c.iter().map(|&v| Q::from_int(v)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (t-1)(t-2) and (t-2)(t-3)
        let a = p(&[2, -3, 1]);
        let b = p(&[6, -5, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[-2, 1]));
        let (q, r) = a.divrem(&p(&[-1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p(&[-2, 1]));
    }

    #[test]
    fn squarefree_decomposition_groups_by_multiplicity() {
        // (t-1)^3 (t+2)
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1]));
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
        assert_eq!(f.multiplicity_of(&p(&[-1, 1])).unwrap(), 3);
    }

    #[test]
    fn univariate_resultant() {
        // res(t^2+1, t-1) = 2
        assert_eq!(
            p(&[1, 0, 1]).resultant(&p(&[-1, 1])).unwrap(),
            Q::from_int(2)
        );
        // shared root
        assert!(p(&[2, -3, 1]).resultant(&p(&[-2, 1])).unwrap().is_zero());
    }

    #[test]
    fn gaussian_roots_found_exactly() {
        // (2t - 1)(t - i)(t^2 - 2)
        let f = p(&[-1, 2])
            .mul(&UPoly::new(vec![Q::from_parts(0, -1), Q::one()]))
            .mul(&p(&[-2, 0, 1]));
        let mut roots = f.gaussian_roots();
        roots.sort_by_key(|r| r.to_string());
        assert_eq!(roots, vec![Q::from_ratio(1, 2), Q::i()]);
    }
}
