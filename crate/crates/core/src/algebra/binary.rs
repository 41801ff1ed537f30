//! Restriction of a ternary form to a line, as a binary form in `(s, t)`.

use crate::algebra::mpoly::Poly;
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// Binary form of degree `degree`: `sum coeffs[k] * s^(degree-k) * t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<K> {
    pub degree: usize,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> BinaryForm<K> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Dehomogenized in `u = t/s`.
    pub fn affine(&self) -> UPoly<K> {
        UPoly::new(self.coeffs.clone())
    }

    /// Multiplicity of the root `[s0 : t0]`, i.e. the number of times the
    /// linear form `t0*s - s0*t` divides the form.
    pub fn multiplicity_at_root(&self, s0: &K, t0: &K) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if s0.decide_zero()? {
            // Root [0:1]: the factor is s, whose power is degree - deg(affine).
            let mut a = self.affine();
            a.trim_decided()?;
            return Ok(self.degree - a.deg0());
        }
        let u0 = t0.div(s0)?;
        self.affine().multiplicity_of(&UPoly::linear_root(&u0))
    }
}

/// Univariate restriction `u -> F(a + u*b)`.
pub fn restrict_affine<K: Scalar>(f: &Poly, a: &[K; 3], b: &[K; 3]) -> UPoly<K> {
    let lines: Vec<UPoly<K>> = (0..3)
        .map(|k| UPoly::new(vec![a[k].clone(), b[k].clone()]))
        .collect();
    let maxdeg: Vec<usize> = (0..3).map(|v| f.degree_in(v).unwrap_or(0)).collect();
    let powers: Vec<Vec<UPoly<K>>> = lines
        .iter()
        .zip(&maxdeg)
        .map(|(l, &d)| {
            let mut v = vec![UPoly::constant(K::one())];
            for k in 1..=d {
                let next = v[k - 1].mul(l);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = UPoly::zero();
    for (m, c) in f.terms() {
        let mut t = UPoly::constant(K::from_gaussian(c));
        for (pw, &e) in powers.iter().zip(m.0.iter()) {
            if e > 0 {
                t = t.mul(&pw[e as usize]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// `F(s*A + t*B)` for a homogeneous `F`. Root multiplicities of the result
/// are intersection multiplicities of the line `(A B)` with `V(F)`.
pub fn restrict_to_line<K: Scalar>(f: &Poly, a: &[K; 3], b: &[K; 3]) -> Result<BinaryForm<K>> {
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let u = restrict_affine(f, a, b);
    let mut coeffs: Vec<K> = u.into_coeffs();
    coeffs.resize(d + 1, K::zero());
    let form = BinaryForm { degree: d, coeffs };
    let mut all_zero = true;
    for c in &form.coeffs {
        if !c.decide_zero()? {
            all_zero = false;
        }
    }
    if all_zero {
        return Err(Error::LineIsComponent);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::Vars;
    use crate::algebra::parse::{parse_point, parse_poly};
    use crate::algebra::GaussianRational as Q;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn circle_at_infinity() {
        let f = xyz("x^2+y^2-z^2");
        let bf = restrict_to_line(
            &f,
            &parse_point("[1:i:0]").unwrap(),
            &parse_point("[1:-i:0]").unwrap(),
        )
        .unwrap();
        assert_eq!(bf.coeffs, vec![Q::zero(), Q::from_int(4), Q::zero()]);
        assert_eq!(bf.multiplicity_at_root(&Q::one(), &Q::zero()).unwrap(), 1);
        assert_eq!(bf.multiplicity_at_root(&Q::zero(), &Q::one()).unwrap(), 1);
        assert_eq!(bf.multiplicity_at_root(&Q::one(), &Q::one()).unwrap(), 0);
    }

    #[test]
    fn parabola_double_root() {
        let f = xyz("y*z-x^2");
        let bf = restrict_to_line(
            &f,
            &parse_point("[0:1:0]").unwrap(),
            &parse_point("[1:0:0]").unwrap(),
        )
        .unwrap();
        // F(t, s, 0) = -t^2: double root at t = 0, the point [0:1:0].
        assert_eq!(bf.multiplicity_at_root(&Q::one(), &Q::zero()).unwrap(), 2);
    }

    #[test]
    fn component_line() {
        let f = xyz("z*(x^2+y^2-z^2)");
        let r = restrict_to_line(
            &f,
            &parse_point("[1:0:0]").unwrap(),
            &parse_point("[0:1:0]").unwrap(),
        );
        assert!(matches!(r, Err(Error::LineIsComponent)));
    }
}
