//! Choice of a generic light source.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::binary::restrict_affine;
use crate::algebra::mpoly::Poly;
use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::localinv::multiplicity_at;
use crate::projgeom::ProjPoint;

type Q = GaussianRational;

/// Largest numerator or denominator of a drawn source coordinate.
pub const SOURCE_HEIGHT: i64 = 50;
pub const SOURCE_DRAWS: usize = 100;

/// Whether `s` lies on a line through the cyclic point `c` that is tangent
/// to the curve, or that meets the curve at a point of `V(F, ∇F·c)`.
pub fn on_isotropic_tangent(f: &Poly, s: &ProjPoint, c: &ProjPoint) -> Result<bool> {
    // Points of the line other than c: s + u·c.
    let along = restrict_affine(f, &s.coords, &c.coords);
    if along.is_zero() {
        return Ok(true);
    }
    let polar = (0..3).fold(Poly::zero(f.vars()), |acc, k| {
        acc.add(&f.derivative(k).scale(&c.coords[k]))
    });
    let p_along = restrict_affine(&polar, &s.coords, &c.coords);
    if along.gcd(&p_along)?.deg0() > 0 {
        return Ok(true);
    }
    // At c itself every line passes through c, so ask for tangency there:
    // the line meets the curve at c more often than the multiplicity.
    let mu = multiplicity_at(f, c)?;
    if mu == 0 {
        return Ok(false);
    }
    let at_c = restrict_affine(f, &c.coords, &s.coords);
    let order = at_c
        .coeffs()
        .iter()
        .position(|a| !a.is_zero())
        .unwrap_or(usize::MAX);
    Ok(order > mu)
}

/// Why a candidate source was turned down, if it was.
pub fn source_defect(f: &Poly, s: &ProjPoint) -> Result<Option<&'static str>> {
    if s.coords[2].is_zero() {
        return Ok(Some("on the line at infinity"));
    }
    if f.eval(&s.coords).is_zero() {
        return Ok(Some("on the curve"));
    }
    for c in [ProjPoint::cyclic_i(), ProjPoint::cyclic_j()] {
        if on_isotropic_tangent(f, s, &c)? {
            return Ok(Some("on an isotropic tangent"));
        }
    }
    Ok(None)
}

fn draw(rng: &mut ChaCha8Rng) -> Q {
    Q::from_ratio(
        rng.gen_range(-SOURCE_HEIGHT..=SOURCE_HEIGHT),
        rng.gen_range(1..=SOURCE_HEIGHT),
    )
}

/// A real source `[a:b:1]` of height at most 50 that avoids the curve, the
/// line at infinity and every isotropic tangent.
pub fn generic_source(f: &Poly, seed: u64) -> Result<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SOURCE_DRAWS {
        let s = ProjPoint {
            coords: [draw(&mut rng), draw(&mut rng), Q::one()],
        };
        if source_defect(f, &s)?.is_none() {
            return Ok(s);
        }
    }
    Err(Error::NoGenericSource(SOURCE_DRAWS))
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
    fn points_on_the_curve_are_rejected() {
        let f = xyz("x^2+y^2-z^2");
        assert_eq!(
            source_defect(&f, &ProjPoint::from_ints(1, 0, 1)).unwrap(),
            Some("on the curve")
        );
    }

    #[test]
    fn circle_isotropic_tangents_are_rejected() {
        // The isotropic tangents of the unit circle are its tangents at the
        // cyclic points, which all pass through the origin.
        let f = xyz("x^2+y^2-z^2");
        assert_eq!(
            source_defect(&f, &ProjPoint::from_ints(0, 0, 1)).unwrap(),
            Some("on an isotropic tangent")
        );
        assert_eq!(
            source_defect(&f, &ProjPoint::from_ints(2, 1, 1)).unwrap(),
            None
        );
    }

    #[test]
    fn parabola_isotropic_tangents() {
        // The isotropic tangents of a conic meet at its foci.
        let f = xyz("y*z-x^2");
        let focus = ProjPoint {
            coords: [Q::zero(), Q::from_ratio(1, 4), Q::one()],
        };
        assert_eq!(
            source_defect(&f, &focus).unwrap(),
            Some("on an isotropic tangent")
        );
        assert_eq!(
            source_defect(&f, &ProjPoint::from_ints(1, 3, 1)).unwrap(),
            None
        );
    }

    #[test]
    fn generic_sources_are_deterministic_and_valid() {
        let f = xyz("y^2*z-x^3");
        let a = generic_source(&f, 1).unwrap();
        assert_eq!(a.to_string(), generic_source(&f, 1).unwrap().to_string());
        assert!(!f.eval(&a.coords).is_zero());
        assert!(a.is_real());
    }
}
