//! Multivariate gcd over Q(i) by recursive primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::mpoly::{MPoly, Poly};
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

/// Greatest common divisor, normalized to leading coefficient 1 in the
/// graded-lex order. `gcd(0, q)` is the normalized `q`.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.vars() != q.vars() {
        return Err(Error::VariableMismatch);
    }
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Poly::one(p.vars()));
    }
    if probably_coprime(p, q)? {
        return Ok(Poly::one(p.vars()));
    }
    if p.is_homogeneous() && q.is_homogeneous() && p.nvars() >= 2 {
        return homogeneous_gcd(p, q);
    }
    gcd_rec(p, q)?.monic()
}

/// Gcd of a whole list.
pub fn gcd_many(ps: &[Poly]) -> Result<Poly> {
    let mut it = ps.iter();
    let first = it.next().ok_or(Error::ZeroPolynomial)?;
    let mut g = first.monic()?;
    for p in it {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd(&g, p)?;
    }
    Ok(g)
}

/// `p / gcd(p, p_x, p_y, ...)`, normalized.
pub fn square_free_part(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut g = p.clone();
    for v in 0..p.nvars() {
        if g.is_constant() {
            break;
        }
        let d = p.derivative(v);
        if !d.is_zero() {
            g = gcd(&g, &d)?;
        }
    }
    let q = p
        .div_exact(&g)?
        .ok_or_else(|| Error::EliminationFailed("gcd does not divide".into()))?;
    q.monic()
}

/// Exact trial division test: `f | g`.
pub fn divides(f: &Poly, g: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.is_zero() {
        return Ok(true);
    }
    if let (Some(df), Some(dg)) = (f.total_degree(), g.total_degree()) {
        if df > dg {
            return Ok(false);
        }
    }
    Ok(g.div_exact(f)?.is_some())
}

/// Cheap sufficient test for a trivial gcd: specialize all but one variable
/// at random integers and compare univariate gcd degrees.
fn probably_coprime(p: &Poly, q: &Poly) -> Result<bool> {
    let n = p.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(
        0x5eed_9cd0 ^ (p.num_terms() as u64) << 16 ^ q.num_terms() as u64,
    );
    for v in 0..n {
        let dp = p.degree_in(v).unwrap_or(0);
        let dq = q.degree_in(v).unwrap_or(0);
        if dp == 0 || dq == 0 {
            continue;
        }
        let mut ok = false;
        for _ in 0..3 {
            let pt: Vec<GaussianRational> = (0..n)
                .map(|k| {
                    if k == v {
                        GaussianRational::zero()
                    } else {
                        GaussianRational::from_int(rng.gen_range(-1000..=1000))
                    }
                })
                .collect();
            let ps = specialize_except(p, v, &pt);
            let qs = specialize_except(q, v, &pt);
            // The specialization must keep the degree in v, else it proves nothing.
            if ps.deg0() != dp || qs.deg0() != dq {
                continue;
            }
            ok = ps.gcd(&qs)?.deg0() == 0;
            break;
        }
        if !ok {
            return Ok(false);
        }
    }
    // Every variable either is absent from one input or has a trivial
    // specialized gcd; a common factor would involve some variable.
    Ok(true)
}

fn specialize_except(p: &Poly, v: usize, pt: &[GaussianRational]) -> UPoly<GaussianRational> {
    let d = p.degree_in(v).unwrap_or(0);
    let mut c = vec![GaussianRational::zero(); d + 1];
    let cs = p.coeffs_in(v);
    for (k, ck) in cs.iter().enumerate() {
        c[k] = ck.eval(pt);
    }
    UPoly::new(c)
}

fn homogeneous_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    let n = p.nvars();
    let last = n - 1;
    let zp = p.terms().map(|(m, _)| m.0[last]).min().unwrap_or(0);
    let zq = q.terms().map(|(m, _)| m.0[last]).min().unwrap_or(0);
    let one = GaussianRational::one();
    let a = p.specialize(last, &one);
    let b = q.specialize(last, &one);
    let g = gcd_rec(&a, &b)?;
    let dg = g.total_degree().unwrap_or(0);
    let mut h = g.homogenize(last, dg);
    let zmin = zp.min(zq);
    if zmin > 0 {
        h = h.mul_monomial(&crate::algebra::mpoly::Monomial::var(n, last, zmin));
    }
    h.monic()
}

fn main_var(p: &Poly, q: &Poly) -> Option<usize> {
    (0..p.nvars()).find(|&v| p.occurs(v) || q.occurs(v))
}

/// Gcd up to a constant factor.
fn gcd_rec(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Ok(q.clone());
    }
    if q.is_zero() {
        return Ok(p.clone());
    }
    let Some(v) = main_var(p, q) else {
        return Ok(Poly::one(p.vars()));
    };
    let vars = p.vars().clone();
    // Univariate case: Euclid over the field.
    if let (Some(up), Some(uq)) = (p.to_univariate(v), q.to_univariate(v)) {
        let g = up.gcd(&uq)?;
        return Ok(MPoly::from_univariate(&vars, v, &g));
    }
    let occurring: Vec<usize> = (0..p.nvars())
        .filter(|&k| p.occurs(k) || q.occurs(k))
        .collect();
    if occurring.len() == 2 {
        return gcd_bivariate(p, q, occurring[0], occurring[1]);
    }
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let cp = content(&pc)?;
    let cq = content(&qc)?;
    let c = gcd_rec(&cp, &cq)?;
    let mut a = primitive(&pc, &cp)?;
    let mut b = primitive(&qc, &cq)?;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    // Primitive PRS.
    while b.len() > 1 {
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        let rc = content(&r)?;
        let r = primitive(&r, &rc)?;
        a = b;
        b = r;
    }
    let g = if b.len() == 1 {
        // b is a nonzero element free of v and primitive: the gcd is 1.
        Poly::one(&vars)
    } else {
        MPoly::from_coeffs_in(&vars, v, &b)
    };
    Ok(g.mul(&c))
}

type Q = GaussianRational;

/// `p` as a polynomial in `a` with coefficients in `K[b]`.
fn dense_in(p: &Poly, a: usize, b: usize) -> Vec<UPoly<Q>> {
    let da = p.degree_in(a).unwrap_or(0);
    let db = p.degree_in(b).unwrap_or(0);
    let mut rows = vec![vec![Q::zero(); db + 1]; da + 1];
    for (m, c) in p.terms() {
        rows[m.0[a] as usize][m.0[b] as usize] = c.clone();
    }
    rows.into_iter().map(UPoly::new).collect()
}

fn from_dense(vars: &crate::algebra::mpoly::Vars, a: usize, b: usize, rows: &[UPoly<Q>]) -> Poly {
    let n = vars.len();
    let mut out = Poly::zero(vars);
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; n];
                e[a] = i as u32;
                e[b] = j as u32;
                out.add_term(crate::algebra::mpoly::Monomial(e), c.clone());
            }
        }
    }
    out
}

fn content_dense(rows: &[UPoly<Q>]) -> Result<UPoly<Q>> {
    let mut g = UPoly::zero();
    for r in rows {
        g = g.gcd(r)?;
        if g.degree() == Some(0) {
            break;
        }
    }
    Ok(g)
}

/// Newton interpolation through `(xs[k], ys[k])`.
fn interpolate(xs: &[Q], ys: &[Q]) -> Result<UPoly<Q>> {
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]).mul(&(&xs[i] - &xs[i - j]).inv()?);
        }
    }
    let mut out = UPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        out = out
            .mul(&UPoly::linear_root(&xs[i]))
            .add(&UPoly::constant(dd[i].clone()));
    }
    Ok(out)
}

/// Gcd of polynomials in the two variables `a`, `b` by evaluating `b` at
/// integers, taking univariate gcds and interpolating. The leading
/// coefficient in `a` is fixed by the gcd of the input leading coefficients,
/// and each candidate is confirmed by trial division.
fn gcd_bivariate(p: &Poly, q: &Poly, a: usize, b: usize) -> Result<Poly> {
    let vars = p.vars().clone();
    let mut pd = dense_in(p, a, b);
    let mut qd = dense_in(q, a, b);
    let cp = content_dense(&pd)?;
    let cq = content_dense(&qd)?;
    let c = cp.gcd(&cq)?;
    for r in pd.iter_mut() {
        *r = r.exact_div(&cp)?;
    }
    for r in qd.iter_mut() {
        *r = r.exact_div(&cq)?;
    }
    let c_poly = from_dense(&vars, a, b, &[c]);
    let (Some(lp), Some(lq)) = (pd.last().cloned(), qd.last().cloned()) else {
        return Ok(c_poly);
    };
    if pd.len() == 1 || qd.len() == 1 {
        return Ok(c_poly);
    }
    let gamma = lp.gcd(&lq)?;
    let bound = lp.deg0().min(lq.deg0())
        + pd.iter()
            .map(|r| r.deg0())
            .max()
            .unwrap_or(0)
            .min(qd.iter().map(|r| r.deg0()).max().unwrap_or(0));
    let pp = from_dense(&vars, a, b, &pd);
    let qp = from_dense(&vars, a, b, &qd);
    let eval_rows = |rows: &[UPoly<Q>], x: &Q| UPoly::new(rows.iter().map(|r| r.eval(x)).collect());

    let mut xs: Vec<Q> = Vec::new();
    let mut images: Vec<UPoly<Q>> = Vec::new();
    let mut min_deg = usize::MAX;
    let mut next_try = bound + 1;
    for k in 1..=(4 * bound as i64 + 40) {
        let x = Q::from_int(if k % 2 == 0 { k / 2 } else { -(k / 2) - 1 });
        let gx = gamma.eval(&x);
        if lp.eval(&x).is_zero() || lq.eval(&x).is_zero() || gx.is_zero() {
            continue;
        }
        let g = eval_rows(&pd, &x).gcd(&eval_rows(&qd, &x))?;
        let dg = g.deg0();
        if dg == 0 {
            return Ok(c_poly);
        }
        if dg > min_deg {
            continue;
        }
        if dg < min_deg {
            min_deg = dg;
            xs.clear();
            images.clear();
            next_try = bound + 1;
        }
        xs.push(x);
        images.push(g.monic()?.scale(&gx));
        if xs.len() < next_try {
            continue;
        }
        next_try = xs.len() + 4;
        let rows: Vec<UPoly<Q>> = (0..=min_deg)
            .map(|i| {
                let ys: Vec<Q> = images.iter().map(|g| g.coeff(i)).collect();
                interpolate(&xs, &ys)
            })
            .collect::<Result<_>>()?;
        let cont = content_dense(&rows)?;
        let rows: Vec<UPoly<Q>> = rows
            .iter()
            .map(|r| r.exact_div(&cont))
            .collect::<Result<_>>()?;
        let h = from_dense(&vars, a, b, &rows);
        if pp.div_exact(&h)?.is_some() && qp.div_exact(&h)?.is_some() {
            return Ok(h.mul(&c_poly));
        }
    }
    Err(Error::EliminationFailed(
        "bivariate gcd did not stabilize".into(),
    ))
}

/// Gcd of the coefficient list.
fn content(cs: &[Poly]) -> Result<Poly> {
    let mut g = Poly::zero(cs[0].vars());
    for c in cs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            c.clone()
        } else {
            gcd_rec(&g, c)?
        };
        if g.is_constant() {
            return Ok(Poly::one(cs[0].vars()));
        }
    }
    Ok(g)
}

fn primitive(cs: &[Poly], c: &Poly) -> Result<Vec<Poly>> {
    let mut out = Vec::with_capacity(cs.len());
    if c.is_constant() {
        let inv = cs.last().unwrap().leading_coeff().inv()?;
        for x in cs {
            out.push(x.scale(&inv));
        }
    } else {
        for x in cs {
            out.push(
                x.div_exact(c)?
                    .ok_or_else(|| Error::EliminationFailed("content does not divide".into()))?,
            );
        }
    }
    Ok(integer_normalize(out))
}

/// Rescale by a rational so that all coefficients are Gaussian integers
/// whose real and imaginary parts have no common factor. Without this the
/// heights in a primitive remainder sequence over Q(i) grow quickly.
fn integer_normalize(cs: Vec<Poly>) -> Vec<Poly> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for c in &cs {
        for (_, k) in c.terms() {
            for r in [&k.re, &k.im] {
                den = den.lcm(r.denom());
                num = num.gcd(r.numer());
            }
        }
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return cs;
    }
    let f = GaussianRational::new(BigRational::new(den, num), BigRational::zero());
    cs.into_iter().map(|c| c.scale(&f)).collect()
}

/// Pseudo-remainder on coefficient vectors (highest entry is the leading
/// coefficient). Returns the trimmed coefficient vector.
pub(crate) fn prem<K: Scalar>(a: &[MPoly<K>], b: &[MPoly<K>]) -> Vec<MPoly<K>> {
    let mut r: Vec<MPoly<K>> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x = x.mul(lb);
        }
        for (j, bj) in b.iter().enumerate() {
            let t = bj.mul(&lr);
            r[shift + j] = r[shift + j].sub(&t);
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
    }
    while r.last().is_some_and(|x| x.is_zero()) {
        r.pop();
    }
    r
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
    fn difference_of_squares() {
        assert_eq!(gcd(&xyz("x^2-z^2"), &xyz("x-z")).unwrap(), xyz("x-z"));
    }

    #[test]
    fn gaussian_factor() {
        assert_eq!(gcd(&xyz("x^2+z^2"), &xyz("x+i*z")).unwrap(), xyz("x+i*z"));
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_part(&xyz("(x+y)^3*z")).unwrap(), xyz("x*z+y*z"));
    }

    #[test]
    fn nonhomogeneous_multivariate() {
        let g = xyz("x*y+z+1");
        let a = g.mul(&xyz("x^2+y-3"));
        let b = g.mul(&xyz("y*z+x+2"));
        assert_eq!(gcd(&a, &b).unwrap(), g);
    }

    #[test]
    fn homogeneous_with_z_power() {
        let a = xyz("z^2*(x-y)*(x+z)");
        let b = xyz("z*(x-y)^2");
        assert_eq!(gcd(&a, &b).unwrap(), xyz("x*z-y*z"));
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&xyz("x-z"), &xyz("x^2-z^2")).unwrap());
        assert!(!divides(&xyz("x+y"), &xyz("x^2+y^2")).unwrap());
        let f = xyz("x^2+y^2-z^2");
        assert!(divides(&f, &f.mul(&xyz("x+(1+i)*y"))).unwrap());
    }
}
