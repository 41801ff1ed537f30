//! Complex evaluation of exact polynomials.

use num_complex::Complex64;

use crate::algebra::mpoly::Poly;
use crate::projgeom::PolyTriple;

/// Value of a polynomial at a complex point, and the rounding scale
/// `Σ |c·m^e|` that makes the value relative.
pub fn eval_complex(f: &Poly, pt: &[Complex64]) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (m, c) in f.terms() {
        let mut t = c.to_complex();
        for (k, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t *= pt[k].powu(e);
            }
        }
        acc += t;
        scale += t.norm();
    }
    (acc, scale)
}

/// `|f(pt)| / scale`, zero for the zero polynomial.
pub fn relative_value(f: &Poly, pt: &[Complex64]) -> f64 {
    let (v, s) = eval_complex(f, pt);
    if s == 0.0 {
        0.0
    } else {
        v.norm() / s
    }
}

/// Scale so that the coordinate of largest modulus is 1.
pub fn normalize(p: &[Complex64; 3]) -> [Complex64; 3] {
    let k = (0..3)
        .max_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm()))
        .unwrap_or(0);
    let d = p[k];
    if d.norm() == 0.0 {
        return *p;
    }
    [p[0] / d, p[1] / d, p[2] / d]
}

/// Evaluate three polynomials, returning the values and the largest
/// relative size among them.
pub fn eval_triple_complex(t: &PolyTriple, pt: &[Complex64]) -> ([Complex64; 3], f64) {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut rel: f64 = 0.0;
    for (k, c) in t.iter().enumerate() {
        let (v, s) = eval_complex(c, pt);
        out[k] = v;
        if s > 0.0 {
            rel = rel.max(v.norm() / s);
        }
    }
    (out, rel)
}

pub fn wedge_c(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Distance between two projective points: `|a ∧ b| / (|a|·|b|)`.
pub fn proj_distance(a: &[Complex64; 3], b: &[Complex64; 3]) -> f64 {
    let n = |v: &[Complex64; 3]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let na = n(a);
    let nb = n(b);
    if na == 0.0 || nb == 0.0 {
        return f64::INFINITY;
    }
    n(&wedge_c(a, b)) / (na * nb)
}
