//! Local invariants of a plane curve: multiplicities, branches, inflectional
//! excess away from the line at infinity, tangency with it at the cyclic
//! points, and the contact number with it.

pub mod points;
pub mod puiseux;

use serde::Serialize;

use crate::algebra::binary::{restrict_affine, restrict_to_line};
use crate::algebra::extension::{run_split, ExtElem, Modulus};
use crate::algebra::mpoly::Poly;
use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::projgeom::{all_zero, eval_in, wedge, ProjPoint, Triple};

pub use puiseux::{CurveBranch, LocalField};

type Q = GaussianRational;

const POINT_SEED: u64 = 0x10ca_1157;

/// Newton steps allowed along one branch: `4·d²`.
pub fn default_truncation(f: &Poly) -> usize {
    let d = f.total_degree().unwrap_or(1).max(1);
    4 * d * d
}

fn gradient_at<K: Scalar>(f: &Poly, p: &Triple<K>) -> Triple<K> {
    [0, 1, 2].map(|v| eval_in(&f.derivative(v), p))
}

/// Multiplicity of `V(f)` at `p`; 0 iff `p` is not on the curve.
pub fn multiplicity_at(f: &Poly, p: &ProjPoint) -> Result<usize> {
    puiseux::multiplicity_in(f, &p.coords)
}

/// The branches of `V(f)` at `p`.
pub fn branches_at(f: &Poly, p: &ProjPoint, truncation: Option<usize>) -> Result<Vec<CurveBranch>> {
    puiseux::branches_in(
        f,
        &p.coords,
        truncation.unwrap_or_else(|| default_truncation(f)),
    )
}

/// Intersection number at a smooth point `p` of the curve with its tangent.
fn smooth_tangent_order<K: Scalar>(f: &Poly, p: &Triple<K>, tangent: &Triple<K>) -> Result<usize> {
    let probes = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3]];
    for e in probes {
        let q = wedge(tangent, &e.map(K::from_int));
        if all_zero(&q)? || all_zero(&wedge(p, &q))? {
            continue;
        }
        let r = restrict_affine(f, p, &q);
        for (k, c) in r.coeffs().iter().enumerate() {
            if !c.decide_zero()? {
                return Ok(k);
            }
        }
        return Err(Error::LineIsComponent);
    }
    Err(Error::InvalidInput("no second point on the tangent".into()))
}

fn tangent_is_infinity<K: Scalar>(t: &Triple<K>) -> Result<bool> {
    Ok(t[0].decide_zero()? && t[1].decide_zero()?)
}

/// Inflectional excess `Σ (i - 2e)` at one point, over branches not tangent
/// to the line at infinity.
fn excess_at<K: LocalField>(
    f: &Poly,
    p: &Triple<K>,
    truncation: usize,
    smooth_only: bool,
) -> Result<usize> {
    let grad = gradient_at(f, p);
    if !all_zero(&grad)? {
        if tangent_is_infinity(&grad)? {
            return Ok(0);
        }
        let i = smooth_tangent_order(f, p, &grad)?;
        return Ok(i.saturating_sub(2));
    }
    if smooth_only {
        return Ok(0);
    }
    let mut total = 0;
    for b in puiseux::branches_in(f, p, truncation)? {
        if !b.tangent_at_infinity && b.tangent_order > 2 * b.mult {
            total += (b.tangent_order - 2 * b.mult) * b.conjugates;
        }
    }
    Ok(total)
}

/// Number of inflectional branches not tangent to the line at infinity,
/// counted with their excess `i - 2e`.
pub fn f0(f: &Poly) -> Result<usize> {
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Ok(0);
    }
    let trunc = default_truncation(f);
    let mut total = 0;
    // Singular points lie on every polar curve.
    let polar = f
        .derivative(0)
        .add(&f.derivative(1).scale(&Q::from_int(2)))
        .add(&f.derivative(2).scale(&Q::from_int(3)));
    for (w, e) in points::for_each_intersection(f, &polar, POINT_SEED, |p| {
        if all_zero(&gradient_at(f, p))? {
            excess_at(f, p, trunc, false)
        } else {
            Ok(0)
        }
    })? {
        total += w * e;
    }
    // Smooth flexes lie on the Hessian.
    let h = points::hessian(f);
    if h.is_zero() {
        return Err(Error::InvalidInput(
            "the Hessian vanishes identically".into(),
        ));
    }
    if !h.is_constant() {
        for (w, e) in
            points::for_each_intersection(f, &h, POINT_SEED + 1, |p| excess_at(f, p, trunc, true))?
        {
            total += w * e;
        }
    }
    Ok(total)
}

fn t_in<K: LocalField>(f: &Poly, p: &Triple<K>) -> Result<usize> {
    if !eval_in(f, p).decide_zero()? {
        return Ok(0);
    }
    let grad = gradient_at(f, p);
    if !all_zero(&grad)? {
        return Ok(usize::from(tangent_is_infinity(&grad)?));
    }
    let branches = puiseux::branches_in(f, p, default_truncation(f))?;
    Ok(branches
        .iter()
        .filter(|b| b.tangent_at_infinity)
        .map(|b| b.mult * b.conjugates)
        .sum())
}

/// Sum of the multiplicities of the branches at `p` tangent to the line at
/// infinity.
pub fn t_at(f: &Poly, p: &ProjPoint) -> Result<usize> {
    t_in(f, &p.coords)
}

/// Contact number with the line at infinity: `d - Σ μ_P` over the distinct
/// points `P` of the curve on that line.
pub fn contact_infinity(f: &Poly) -> Result<usize> {
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let form = restrict_to_line(
        f,
        &[Q::one(), Q::zero(), Q::zero()],
        &[Q::zero(), Q::one(), Q::zero()],
    )?;
    let a = form.affine();
    let mut mu = 0;
    if a.deg0() < d {
        mu += multiplicity_at(f, &ProjPoint::from_ints(0, 1, 0))?;
    }
    if a.deg0() > 0 {
        let q = a.squarefree_part()?;
        for (m, v) in run_split(Modulus::new(q)?, |m| {
            let xi = ExtElem::generator(m);
            puiseux::multiplicity_in(f, &[ExtElem::one(), xi, ExtElem::zero()])
        })? {
            mu += m.degree() * v;
        }
    }
    d.checked_sub(mu)
        .ok_or_else(|| Error::EliminationFailed("multiplicities exceed the degree".into()))
}

/// Right-hand sides of the degree and class formulas for a caustic, with
/// the values computed by elimination once they are known.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub d: usize,
    pub d_dual: usize,
    pub f0: usize,
    pub t_i: usize,
    pub t_j: usize,
    pub g: usize,
    pub mu_i: usize,
    pub mu_j: usize,
    pub predicted_degree: usize,
    pub predicted_class: usize,
    pub computed_degree: Option<usize>,
    pub computed_class: Option<usize>,
    pub degree_match: Option<bool>,
    pub class_match: Option<bool>,
    pub source: ProjPoint,
}

impl InvariantReport {
    pub fn set_computed(&mut self, degree: usize, class: usize) {
        self.computed_degree = Some(degree);
        self.computed_class = Some(class);
        self.degree_match = Some(degree == self.predicted_degree);
        self.class_match = Some(class == self.predicted_class);
    }

    pub fn all_match(&self) -> bool {
        self.degree_match == Some(true) && self.class_match == Some(true)
    }
}

/// Degree `3d + f0 - t_I - t_J` and class `2d∨ + d - g - μ_I - μ_J`.
pub fn invariant_bundle(f: &Poly, s: &ProjPoint, d_dual: usize) -> Result<InvariantReport> {
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let (ci, cj) = (ProjPoint::cyclic_i(), ProjPoint::cyclic_j());
    let mu_i = multiplicity_at(f, &ci)?;
    let t_i = t_at(f, &ci)?;
    // Conjugation swaps I and J and fixes a real curve.
    let (mu_j, t_j) = if f.is_real() {
        (mu_i, t_i)
    } else {
        (multiplicity_at(f, &cj)?, t_at(f, &cj)?)
    };
    let f0 = f0(f)?;
    let g = contact_infinity(f)?;
    let predicted_degree = (3 * d + f0)
        .checked_sub(t_i + t_j)
        .ok_or_else(|| Error::EliminationFailed("negative degree prediction".into()))?;
    let predicted_class = (2 * d_dual + d)
        .checked_sub(g + mu_i + mu_j)
        .ok_or_else(|| Error::EliminationFailed("negative class prediction".into()))?;
    Ok(InvariantReport {
        d,
        d_dual,
        f0,
        t_i,
        t_j,
        g,
        mu_i,
        mu_j,
        predicted_degree,
        predicted_class,
        computed_degree: None,
        computed_class: None,
        degree_match: None,
        class_match: None,
        source: s.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::Vars;
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let circle = xyz("x^2+y^2-z^2");
        assert_eq!(
            multiplicity_at(&circle, &ProjPoint::from_ints(1, 0, 1)).unwrap(),
            1
        );
        assert_eq!(
            multiplicity_at(&xyz("y^2*z-x^3"), &ProjPoint::from_ints(0, 0, 1)).unwrap(),
            2
        );
        assert_eq!(multiplicity_at(&circle, &ProjPoint::cyclic_i()).unwrap(), 1);
    }

    #[test]
    fn tangency_at_cyclic_points() {
        assert_eq!(
            t_at(&xyz("x^2+y^2-z^2"), &ProjPoint::cyclic_i()).unwrap(),
            0
        );
        assert_eq!(t_at(&xyz("y*z-x^2"), &ProjPoint::cyclic_i()).unwrap(), 0);
    }

    #[test]
    fn contact_with_infinity() {
        assert_eq!(contact_infinity(&xyz("x^2+y^2-z^2")).unwrap(), 0);
        assert_eq!(contact_infinity(&xyz("y*z-x^2")).unwrap(), 1);
        assert_eq!(contact_infinity(&xyz("y^2*z-x^3")).unwrap(), 2);
    }

    #[test]
    fn inflectional_counts() {
        assert_eq!(f0(&xyz("x^2+y^2-z^2")).unwrap(), 0);
        assert_eq!(f0(&xyz("y^2*z-x^3")).unwrap(), 0);
        // The flex at [0:1:0] is tangent to the line at infinity.
        assert_eq!(f0(&xyz("y^2*z-x^3+x*z^2")).unwrap(), 8);
        assert_eq!(f0(&xyz("y^2*z-x^2*z-x^3")).unwrap(), 2);
    }

    #[test]
    fn circle_bundle() {
        let r = invariant_bundle(&xyz("x^2+y^2-z^2"), &ProjPoint::from_ints(2, 1, 1), 2).unwrap();
        assert_eq!((r.predicted_degree, r.predicted_class), (6, 4));
    }
}
