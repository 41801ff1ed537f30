//! Image curves by iterated resultants, with extraneous factors stripped by
//! exact membership tests. Exponential in practice; kept for small maps and
//! as an independent cross-check of the interpolation route.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::gcd::{divides, gcd, square_free_part};
use crate::algebra::mpoly::{Monomial, Poly, Vars};
use crate::algebra::resultant::resultant;
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

use super::StrippedFactor;

type Q = GaussianRational;

fn five_vars() -> Vars {
    Vars::new(&["x", "y", "u", "v", "w"])
}

/// Random invertible substitution, dehomogenized at z = 1, embedded in the
/// five-variable ring.
fn chart_pullback(p: &Poly, cols: &[[i64; 3]; 3], vars5: &Vars) -> Poly {
    let subs: Vec<Poly> = (0..3)
        .map(|i| {
            Poly::linear(
                p.vars(),
                &[
                    Q::from_int(cols[0][i]),
                    Q::from_int(cols[1][i]),
                    Q::from_int(cols[2][i]),
                ],
            )
        })
        .collect();
    let q = p.compose(&subs).specialize(2, &Q::one());
    Poly::from_terms(
        vars5,
        q.terms()
            .map(|(m, c)| (Monomial(vec![m.0[0], m.0[1], 0, 0, 0]), c.clone())),
    )
}

fn to_uvw(p: &Poly) -> Result<Poly> {
    let uvw = Vars::uvw();
    let mut out = Poly::zero(&uvw);
    for (m, c) in p.terms() {
        if m.0[0] != 0 || m.0[1] != 0 {
            return Err(Error::EliminationFailed(
                "source variables survived elimination".into(),
            ));
        }
        out.add_term(Monomial(vec![m.0[2], m.0[3], m.0[4]]), c.clone());
    }
    Ok(out)
}

fn eliminant(f: &Poly, map: &[Poly; 3], rng: &mut ChaCha8Rng) -> Result<Poly> {
    let vars5 = five_vars();
    for _ in 0..3 {
        let mut cols = [[0i64; 3]; 3];
        for c in cols.iter_mut() {
            for v in c.iter_mut() {
                *v = rng.gen_range(-5..=5);
            }
        }
        let fc = chart_pullback(f, &cols, &vars5);
        if fc.degree_in(1) != f.total_degree() {
            continue;
        }
        let m: Vec<Poly> = map
            .iter()
            .map(|c| chart_pullback(c, &cols, &vars5))
            .collect();
        let u = Poly::var(&vars5, 2);
        let v = Poly::var(&vars5, 3);
        let w = Poly::var(&vars5, 4);
        let e1 = u.mul(&m[1]).sub(&v.mul(&m[0]));
        let e2 = u.mul(&m[2]).sub(&w.mul(&m[0]));
        let r1 = resultant(&fc, &e1, 1)?;
        let r2 = resultant(&fc, &e2, 1)?;
        if r1.is_zero() || r2.is_zero() {
            continue;
        }
        // Base points of the map give a common factor in x alone.
        let g = x_content(&r1)?.gcd(&x_content(&r2)?)?;
        let g = Poly::from_univariate(&vars5, 0, &g);
        let (Some(r1), Some(r2)) = (r1.div_exact(&g)?, r2.div_exact(&g)?) else {
            continue;
        };
        let r = if r1.occurs(0) || r2.occurs(0) {
            resultant(&r1, &r2, 0)?
        } else {
            gcd(&r1, &r2)?
        };
        if r.is_zero() || r.is_constant() {
            continue;
        }
        return square_free_part(&to_uvw(&r)?);
    }
    Err(Error::ChartFailure(3))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in u, v, w over Q(i)[x].
fn x_content(p: &Poly) -> Result<UPoly<Q>> {
    let mut groups: BTreeMap<Vec<u32>, Vec<Q>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let v = groups.entry(m.0[2..].to_vec()).or_default();
        let k = m.0[0] as usize;
        if v.len() <= k {
            v.resize(k + 1, Q::zero());
        }
        v[k] = c.clone();
    }
    let mut g = UPoly::zero();
    for (_, v) in groups {
        g = g.gcd(&UPoly::new(v))?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

/// The coordinate variables dividing `p`, and the cofactor.
fn split_monomial(p: &Poly) -> Result<(Vec<Poly>, Poly)> {
    let n = p.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    for (k, ek) in e.iter_mut().enumerate() {
        *ek = p.terms().map(|(m, _)| m.0[k]).min().unwrap_or(0);
        if *ek > 0 {
            out.push(Poly::var(p.vars(), k));
        }
    }
    let rest = p
        .div_exact(&Poly::monomial(p.vars(), Monomial(e), Q::one()))?
        .ok_or(Error::ZeroPolynomial)?;
    Ok((out, rest))
}

/// Pairwise coprime square-free polynomials with the same product of
/// distinct factors as the inputs.
pub fn coprime_basis(inputs: &[Poly]) -> Result<Vec<Poly>> {
    let mut work: Vec<Poly> = inputs.to_vec();
    let mut basis: Vec<Poly> = Vec::new();
    let exact = |a: &Poly, b: &Poly| -> Result<Poly> {
        a.div_exact(b)?
            .ok_or_else(|| Error::EliminationFailed("gcd does not divide".into()))
    };
    'outer: while let Some(p) = work.pop() {
        if p.is_constant() {
            continue;
        }
        for i in 0..basis.len() {
            let g = gcd(&p, &basis[i])?;
            if !g.is_constant() {
                let b = basis.remove(i);
                work.push(exact(&b, &g)?);
                work.push(exact(&p, &g)?);
                work.push(g);
                continue 'outer;
            }
        }
        basis.push(p.monic()?);
    }
    basis.sort_by(|a, b| {
        b.leading_term()
            .map(|t| t.0.clone())
            .cmp(&a.leading_term().map(|t| t.0.clone()))
    });
    Ok(basis)
}

/// Image equation and the factors that were discarded.
pub fn image_by_resultants(
    f: &Poly,
    map: &[Poly; 3],
    seed: u64,
) -> Result<(Poly, Vec<StrippedFactor>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = eliminant(f, map, &mut rng)?;
    let b = eliminant(f, map, &mut rng)?;
    // Coordinate factors are common to every chart and would stay fused
    // to the image equation in the basis; split them off first.
    let mut pieces = Vec::new();
    for p in [a, b] {
        let (mono, rest) = split_monomial(&p)?;
        pieces.extend(mono);
        pieces.push(rest);
    }
    let basis = coprime_basis(&pieces)?;
    let uvw = Vars::uvw();
    let mut kept = Poly::one(&uvw);
    let mut stripped = Vec::new();
    for h in basis {
        let composed = h.with_vars(&Vars::uvw()).compose(map);
        if composed.is_zero() || divides(f, &composed)? {
            kept = kept.mul(&h);
        } else {
            stripped.push(StrippedFactor {
                factor: h,
                reason: "does not vanish on the image".into(),
            });
        }
    }
    if kept.is_constant() {
        return Err(Error::EliminationFailed(
            "no eliminant factor vanishes on the image".into(),
        ));
    }
    Ok((kept.monic()?, stripped))
}
