//! Points of `V(F) ∩ V(G)` by elimination in a random chart. Each point is
//! handed over with coordinates in a one-level extension ring that stands
//! for a whole set of conjugate points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::binary::restrict_affine;
use crate::algebra::extension::{run_split, ExtElem, Modulus};
use crate::algebra::mpoly::Poly;
use crate::algebra::resultant::resultant;
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::projgeom::{eval_in, Triple};

type Q = GaussianRational;

fn det3(c: &[[i64; 3]; 3]) -> i64 {
    c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
        - c[1][0] * (c[0][1] * c[2][2] - c[0][2] * c[2][1])
        + c[2][0] * (c[0][1] * c[1][2] - c[0][2] * c[1][1])
}

fn to_q(v: &[i64; 3]) -> [Q; 3] {
    v.map(Q::from_int)
}

/// `P(x·c0 + y·c1 + c2)` as a polynomial in x, y (z absent).
fn pull_back(p: &Poly, cols: &[[i64; 3]; 3]) -> Poly {
    let subs: Vec<Poly> = (0..3)
        .map(|k| {
            Poly::linear(
                p.vars(),
                &[
                    Q::from_int(cols[0][k]),
                    Q::from_int(cols[1][k]),
                    Q::from_int(cols[2][k]),
                ],
            )
        })
        .collect();
    p.compose(&subs).specialize(2, &Q::one())
}

fn column_at(p: &Poly, x: &ExtElem) -> UPoly<ExtElem> {
    let pt = [x.clone(), ExtElem::zero(), ExtElem::one()];
    UPoly::new(p.coeffs_in(1).iter().map(|c| eval_in(c, &pt)).collect())
}

/// Run `visit` at every point of `V(f) ∩ V(g)` and return its results, each
/// with the number of conjugate points it stands for. `f` and `g` must have
/// no common component.
pub fn for_each_intersection<T>(
    f: &Poly,
    g: &Poly,
    seed: u64,
    mut visit: impl FnMut(&Triple<ExtElem>) -> Result<T>,
) -> Result<Vec<(usize, T)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..20 {
        let mut cols = [[0i64; 3]; 3];
        for c in cols.iter_mut() {
            for v in c.iter_mut() {
                *v = rng.gen_range(-20..=20);
            }
        }
        if det3(&cols) == 0 || f.eval(&to_q(&cols[1])).is_zero() {
            continue;
        }
        // No common point on the chart's line at infinity.
        let uf = restrict_affine(f, &to_q(&cols[0]), &to_q(&cols[1]));
        let ug = restrict_affine(g, &to_q(&cols[0]), &to_q(&cols[1]));
        if ug.is_zero() || uf.gcd(&ug)?.deg0() > 0 {
            continue;
        }
        let p = pull_back(f, &cols);
        let h = pull_back(g, &cols);
        let r = resultant(&p, &h, 1)?
            .to_univariate(0)
            .ok_or_else(|| Error::EliminationFailed("eliminant still depends on y".into()))?;
        if r.is_zero() {
            return Err(Error::EliminationFailed(
                "the curves share a component".into(),
            ));
        }
        if r.deg0() == 0 {
            return Ok(Vec::new());
        }
        let q = r.squarefree_part()?;
        let run = run_split(Modulus::new(q)?, |m| {
            let xi = ExtElem::generator(m);
            let mut common = column_at(&p, &xi).gcd(&column_at(&h, &xi))?;
            common.trim_decided()?;
            if common.deg0() > 1 {
                // Tangency or a singular point gives a repeated root.
                common = common.squarefree_part()?;
            }
            if common.degree() != Some(1) {
                // Two points above one x, or none: the projection is not generic.
                return Err(Error::ChartFailure(attempt));
            }
            let y0 = common.coeff(0).neg().div(&common.coeff(1))?;
            let c = cols.map(|v| v.map(ExtElem::from_int));
            let pt: Triple<ExtElem> =
                [0, 1, 2].map(|k| c[0][k].mul(&xi).add(&c[1][k].mul(&y0)).add(&c[2][k]));
            visit(&pt)
        });
        match run {
            Ok(v) => return Ok(v.into_iter().map(|(m, t)| (m.degree(), t)).collect()),
            Err(Error::ChartFailure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ChartFailure(20))
}

/// Hessian determinant of a form in x, y, z.
pub fn hessian(f: &Poly) -> Poly {
    let h: Vec<Vec<Poly>> = (0..3)
        .map(|i| (0..3).map(|j| f.derivative(i).derivative(j)).collect())
        .collect();
    let minor =
        |a: usize, b: usize, c: usize, d: usize| h[1][a].mul(&h[2][b]).sub(&h[1][c].mul(&h[2][d]));
    h[0][0]
        .mul(&minor(1, 2, 2, 1))
        .sub(&h[0][1].mul(&minor(0, 2, 2, 0)))
        .add(&h[0][2].mul(&minor(0, 1, 1, 0)))
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
    fn circle_meets_a_line_in_two_points() {
        let f = xyz("x^2+y^2-z^2");
        let g = xyz("x-y");
        let pts = for_each_intersection(&f, &g, 1, |p| eval_in(&f, p).decide_zero()).unwrap();
        let total: usize = pts.iter().map(|(w, _)| w).sum();
        assert_eq!(total, 2);
        assert!(pts.iter().all(|(_, on)| *on));
    }

    #[test]
    fn cubic_meets_its_hessian_in_nine_points() {
        let f = xyz("y^2*z-x^3+x*z^2");
        let pts = for_each_intersection(&f, &hessian(&f), 2, |_| Ok(())).unwrap();
        assert_eq!(pts.iter().map(|(w, _)| w).sum::<usize>(), 9);
    }
}
