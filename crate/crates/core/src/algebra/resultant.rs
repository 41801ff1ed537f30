//! Resultants of multivariate polynomials with respect to one variable.

use crate::algebra::mpoly::MPoly;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};

fn exact<K: Scalar>(a: &MPoly<K>, b: &MPoly<K>) -> Result<MPoly<K>> {
    if b.is_constant() {
        return Ok(a.scale(&b.constant_term().inv()?));
    }
    a.div_exact(b)?
        .ok_or_else(|| Error::EliminationFailed("inexact division in subresultant sequence".into()))
}

fn pow<K: Scalar>(p: &MPoly<K>, e: usize) -> MPoly<K> {
    p.pow(e as u32)
}

/// Resultant with respect to variable index `var`, computed by the
/// subresultant remainder sequence. The result does not involve `var`.
pub fn resultant<K: Scalar>(p: &MPoly<K>, q: &MPoly<K>, var: usize) -> Result<MPoly<K>> {
    if p.vars() != q.vars() {
        return Err(Error::VariableMismatch);
    }
    let vars = p.vars().clone();
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut a = p.coeffs_in(var);
    let mut b = q.coeffs_in(var);
    if a.len() == 1 && b.len() == 1 {
        return Err(Error::ConstantInVariable {
            var: vars.names()[var].clone(),
        });
    }
    let mut sign = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        let r = pow(&b[0], a.len() - 1);
        return Ok(if sign { r.neg() } else { r });
    }
    let mut g = MPoly::one(&vars);
    let mut h = MPoly::one(&vars);
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = super::gcd::prem(&a, &b);
        if r.is_empty() {
            return Ok(MPoly::zero(&vars));
        }
        let divisor = g.mul(&pow(&h, delta));
        let r: Vec<MPoly<K>> = r
            .iter()
            .map(|c| exact(c, &divisor))
            .collect::<Result<_>>()?;
        a = b;
        b = r;
        g = a.last().unwrap().clone();
        // h <- g^delta / h^(delta-1)
        if delta > 0 {
            h = exact(&pow(&g, delta), &pow(&h, delta - 1))?;
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let res = if da == 0 {
                b[0].clone()
            } else {
                exact(&pow(&b[0], da), &pow(&h, da - 1))?
            };
            return Ok(if sign { res.neg() } else { res });
        }
    }
}

/// Resultant by the fraction-free determinant of the Sylvester matrix. Slow;
/// used to cross-check the remainder-sequence version.
pub fn resultant_sylvester<K: Scalar>(p: &MPoly<K>, q: &MPoly<K>, var: usize) -> Result<MPoly<K>> {
    let vars = p.vars().clone();
    let a = p.coeffs_in(var);
    let b = q.coeffs_in(var);
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Err(Error::ConstantInVariable {
            var: vars.names()[var].clone(),
        });
    }
    let zero = MPoly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + r][r + n - k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free Gaussian elimination (Bareiss) determinant.
pub fn bareiss_det<K: Scalar>(mut mat: Vec<Vec<MPoly<K>>>) -> Result<MPoly<K>> {
    let n = mat.len();
    let vars = mat[0][0].vars().clone();
    let mut prev = MPoly::one(&vars);
    let mut negate = false;
    for k in 0..n {
        if mat[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return Ok(MPoly::zero(&vars));
            };
            mat.swap(k, sw);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = exact(&t, &prev)?;
            }
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::{Poly, Vars};
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(resultant(&xyz("x^2+1"), &xyz("x-1"), 0).unwrap(), xyz("2"));
        assert!(resultant(&xyz("(x-y)*x"), &xyz("(x-y)*y"), 0)
            .unwrap()
            .is_zero());
        assert_eq!(
            resultant(&xyz("x^2-y"), &xyz("x-z"), 0).unwrap(),
            xyz("z^2-y")
        );
    }

    #[test]
    fn constant_inputs_rejected() {
        assert!(matches!(
            resultant(&xyz("y"), &xyz("z"), 0),
            Err(Error::ConstantInVariable { .. })
        ));
    }

    #[test]
    fn matches_sylvester() {
        let cases = [
            ("x^3*y+2*x^2-z*x+y^2", "x^2*z-y*x+3"),
            ("x^4-y*z*x^2+1", "x^3+x*y-z^2"),
            ("(x-y)^2*(x+z)", "x^2*y-1"),
            ("x^2+y^2-z^2", "x*y-z+1"),
        ];
        for (a, b) in cases {
            let r1 = resultant(&xyz(a), &xyz(b), 0).unwrap();
            let r2 = resultant_sylvester(&xyz(a), &xyz(b), 0).unwrap();
            assert_eq!(r1, r2, "{a} / {b}");
        }
    }
}
