//! One-level algebraic extensions `Q(i)[t]/(q(t))`.
//!
//! The modulus is monic and square-free but not required to be irreducible,
//! so the ring is a product of fields: one element stands for a whole set of
//! conjugate values. Whenever a computation meets a zero divisor it raises
//! [`Error::ZeroDivisor`] carrying a proper factor of the modulus, and
//! [`run_split`] re-runs the computation on each factor. This is dynamic
//! evaluation in place of factorization.

use std::fmt;
use std::sync::Arc;

use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

type Base = UPoly<GaussianRational>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Modulus {
    poly: Base,
}

impl Modulus {
    /// Accepts any nonconstant polynomial; it is made monic and square-free.
    pub fn new(poly: Base) -> Result<Arc<Modulus>> {
        let poly = poly.squarefree_part()?;
        if poly.deg0() == 0 {
            return Err(Error::InvalidInput(
                "extension modulus must be nonconstant".into(),
            ));
        }
        Ok(Arc::new(Modulus { poly }))
    }

    pub fn poly(&self) -> &Base {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg0()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Element of `Q(i)[t]/(q)`, or a bare Q(i) scalar when `modulus` is `None`.
///
/// Bare scalars combine with elements of any extension. Combining elements of
/// two different extensions through the operator-style [`Scalar`] methods
/// panics; the `try_*` methods report [`Error::ExtensionMismatch`] instead.
#[derive(Clone)]
pub struct ExtElem {
    rep: Base,
    modulus: Option<Arc<Modulus>>,
}

impl ExtElem {
    pub fn scalar(g: GaussianRational) -> Self {
        ExtElem {
            rep: UPoly::constant(g),
            modulus: None,
        }
    }

    /// Reduce `rep` modulo `modulus`.
    pub fn new(rep: Base, modulus: &Arc<Modulus>) -> Self {
        let rep = rep.rem(modulus.poly()).expect("monic modulus");
        ExtElem {
            rep,
            modulus: Some(modulus.clone()),
        }
    }

    /// The class of `t`.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        ExtElem::new(UPoly::monomial(GaussianRational::one(), 1), modulus)
    }

    pub fn rep(&self) -> &Base {
        &self.rep
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus>> {
        self.modulus.as_ref()
    }

    /// The value as a Q(i) scalar, when it is one in every component.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.rep.degree() {
            None => Some(GaussianRational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    /// Re-interpret in a factor ring: `new_modulus` must divide the old modulus.
    pub fn reduce_to(&self, new_modulus: &Arc<Modulus>) -> Self {
        ExtElem::new(self.rep.clone(), new_modulus)
    }

    fn common(&self, o: &Self) -> Result<Option<Arc<Modulus>>> {
        match (&self.modulus, &o.modulus) {
            (None, m) | (m, None) => Ok(m.clone()),
            (Some(a), Some(b)) => {
                if Arc::ptr_eq(a, b) || a == b {
                    Ok(Some(a.clone()))
                } else {
                    Err(Error::ExtensionMismatch)
                }
            }
        }
    }

    fn build(rep: Base, modulus: Option<Arc<Modulus>>) -> Self {
        match modulus {
            Some(m) => ExtElem::new(rep, &m),
            None => ExtElem { rep, modulus: None },
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let m = self.common(o)?;
        Ok(ExtElem {
            rep: self.rep.add(&o.rep),
            modulus: m,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        let m = self.common(o)?;
        Ok(ExtElem {
            rep: self.rep.sub(&o.rep),
            modulus: m,
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let m = self.common(o)?;
        Ok(ExtElem::build(self.rep.mul(&o.rep), m))
    }
}

impl PartialEq for ExtElem {
    fn eq(&self, o: &Self) -> bool {
        match self.common(o) {
            Ok(_) => self.rep == o.rep,
            Err(_) => false,
        }
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.modulus, self.as_gaussian()) {
            (_, Some(g)) => write!(f, "{g}"),
            (Some(m), None) => write!(f, "[{} mod {}]", self.rep, m),
            (None, None) => write!(f, "{}", self.rep),
        }
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Scalar for ExtElem {
    fn zero() -> Self {
        ExtElem {
            rep: UPoly::zero(),
            modulus: None,
        }
    }

    fn one() -> Self {
        ExtElem::scalar(GaussianRational::one())
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("mixed extension moduli")
    }

    fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("mixed extension moduli")
    }

    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("mixed extension moduli")
    }

    fn neg(&self) -> Self {
        ExtElem {
            rep: self.rep.neg(),
            modulus: self.modulus.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        let Some(m) = &self.modulus else {
            let c = self.as_gaussian().ok_or(Error::ExtensionMismatch)?;
            return Ok(ExtElem::scalar(c.inv()?));
        };
        if self.rep.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (rep, q).
        let q = m.poly().clone();
        let (mut r0, mut r1) = (q.clone(), self.rep.clone());
        let (mut s0, mut s1) = (Base::zero(), Base::constant(GaussianRational::one()));
        while !r1.is_zero() {
            let (quo, rem) = r0.divrem(&r1)?;
            let s2 = s0.sub(&quo.mul(&s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd up to a unit, and s0 * rep = r0 (mod q)
        if r0.deg0() > 0 {
            return Err(Error::ZeroDivisor {
                factor: r0.monic()?,
            });
        }
        let c = r0.coeff(0).inv()?;
        Ok(ExtElem::new(s0.scale(&c), m))
    }

    fn decide_zero(&self) -> Result<bool> {
        if self.rep.is_zero() {
            return Ok(true);
        }
        let Some(m) = &self.modulus else {
            return Ok(false);
        };
        if self.rep.deg0() == 0 {
            return Ok(false);
        }
        let g = self.rep.gcd(m.poly())?;
        if g.deg0() == 0 {
            Ok(false)
        } else {
            Err(Error::ZeroDivisor { factor: g })
        }
    }

    fn from_gaussian(g: &GaussianRational) -> Self {
        ExtElem::scalar(g.clone())
    }
}

/// Run `f` over the ring defined by `modulus`, splitting the modulus on every
/// zero divisor the computation reports. Returns one result per final factor.
pub fn run_split<T>(
    modulus: Arc<Modulus>,
    mut f: impl FnMut(&Arc<Modulus>) -> Result<T>,
) -> Result<Vec<(Arc<Modulus>, T)>> {
    let mut work = vec![modulus];
    let mut out = Vec::new();
    while let Some(m) = work.pop() {
        match f(&m) {
            Ok(v) => out.push((m, v)),
            Err(Error::ZeroDivisor { factor }) => {
                let other = m.poly().exact_div(&factor)?;
                if factor.deg0() == 0 || other.deg0() == 0 {
                    return Err(Error::EliminationFailed(
                        "trivial zero-divisor split".into(),
                    ));
                }
                // Keep deterministic order: first factor processed first.
                work.push(Modulus::new(other)?);
                work.push(Modulus::new(factor)?);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = GaussianRational;

    fn base(c: &[i64]) -> Base {
        UPoly::new(c.iter().map(|&v| Q::from_int(v)).collect())
    }

    #[test]
    fn sqrt2_arithmetic() {
        let m = Modulus::new(base(&[-2, 0, 1])).unwrap();
        let t = ExtElem::generator(&m);
        assert_eq!(t.mul(&t), ExtElem::scalar(Q::from_int(2)));
        let inv = t.inv().unwrap();
        assert_eq!(inv.mul(&t), ExtElem::one());
        assert!(!t.decide_zero().unwrap());
    }

    #[test]
    fn degree_one_modulus_is_gaussian() {
        let m = Modulus::new(base(&[-3, 1])).unwrap();
        let t = ExtElem::generator(&m);
        assert_eq!(t.as_gaussian(), Some(Q::from_int(3)));
        let a = ExtElem::new(base(&[1, 1]), &m); // 1 + t = 4
        assert_eq!(a.mul(&t).as_gaussian(), Some(Q::from_int(12)));
        assert_eq!(a.inv().unwrap().as_gaussian(), Some(Q::from_ratio(1, 4)));
    }

    #[test]
    fn mismatched_moduli_error() {
        let m1 = Modulus::new(base(&[-2, 0, 1])).unwrap();
        let m2 = Modulus::new(base(&[-3, 0, 1])).unwrap();
        let a = ExtElem::generator(&m1);
        let b = ExtElem::generator(&m2);
        assert!(matches!(a.try_add(&b), Err(Error::ExtensionMismatch)));
        assert!(matches!(a.try_mul(&b), Err(Error::ExtensionMismatch)));
    }

    #[test]
    fn zero_divisor_splits() {
        // t^2 - 1 = (t-1)(t+1): the element t-1 is a zero divisor.
        let m = Modulus::new(base(&[-1, 0, 1])).unwrap();
        let parts = run_split(m, |m| {
            let t = ExtElem::generator(m);
            let z = t.sub(&ExtElem::one()).decide_zero()?;
            Ok(z)
        })
        .unwrap();
        assert_eq!(parts.len(), 2);
        let zeros: Vec<bool> = parts.iter().map(|(_, z)| *z).collect();
        assert!(zeros.contains(&true) && zeros.contains(&false));
    }
}
