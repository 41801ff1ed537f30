//! Random points on a curve and the sampling test for birationality of the
//! reflected-line and caustic maps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::mpoly::Poly;
use crate::error::{Error, Result};
use crate::numericlab::eval::{
    eval_complex, eval_triple_complex, normalize, proj_distance, relative_value, wedge_c,
};
use crate::numericlab::roots::{poly_roots, RootOptions};
use crate::projgeom::{self, PolyTriple, ProjPoint};

/// Accepted samples satisfy `|F| / scale` below this.
pub const SAMPLE_RESIDUAL: f64 = 1e-10;
/// Relative size of `F_x² + F_y²` or of the gradient below which a sample is
/// treated as outside the smooth non-isotropic part of the curve.
const C0_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct NumericPoint {
    /// Largest-modulus coordinate equal to 1.
    #[serde(serialize_with = "ser_coords")]
    pub coords: [Complex64; 3],
    pub residual: f64,
}

fn ser_coords<S: serde::Serializer>(
    c: &[Complex64; 3],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for z in c {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn slice_rng(seed: u64, k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k + 1))
}

/// Roots of `F(x0, y, 1)` in y.
pub fn slice_roots(f: &Poly, x0: Complex64) -> Option<Vec<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let coeffs: Vec<Complex64> = f
        .coeffs_in(1)
        .iter()
        .map(|c| eval_complex(c, &[x0, zero, one]).0)
        .collect();
    if coeffs.len() < 2 {
        return Some(Vec::new());
    }
    poly_roots(&coeffs, &RootOptions::default())
}

/// Smooth point where the tangent is not isotropic.
fn in_c0_numeric(f: &Poly, m: &[Complex64; 3]) -> bool {
    let g = projgeom::gradient_triple(f);
    let (v, _) = eval_triple_complex(&g, m);
    let scale: f64 = g.iter().map(|c| eval_complex(c, m).1).fold(0.0, f64::max);
    let gn = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 || gn < C0_TOL * scale {
        return false;
    }
    let iso = v[0] * v[0] + v[1] * v[1];
    iso.norm() > C0_TOL * (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr())
}

/// `n` points of `C_0` in the chart `z = 1`, from slices at random complex
/// abscissae. Fails after `10·n` slices.
pub fn sample_curve(f: &Poly, n: usize, seed: u64) -> Result<Vec<NumericPoint>> {
    if f.total_degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..(10 * n.max(1)) as u64 {
        if out.len() >= n {
            break;
        }
        let mut rng = slice_rng(seed, k);
        let x0 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let Some(ys) = slice_roots(f, x0) else {
            continue;
        };
        for y in ys {
            if out.len() >= n {
                break;
            }
            let m = normalize(&[x0, y, Complex64::new(1.0, 0.0)]);
            let residual = relative_value(f, &m);
            if residual < SAMPLE_RESIDUAL && in_c0_numeric(f, &m) {
                out.push(NumericPoint {
                    coords: m,
                    residual,
                });
            }
        }
    }
    if out.len() < n {
        return Err(Error::SamplingFailed(format!(
            "found {} of {} points",
            out.len(),
            n
        )));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Injective,
    CollisionFound,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Collision {
    pub first: usize,
    pub second: usize,
    #[serde(serialize_with = "ser_coords")]
    pub line: [Complex64; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct BirationalityReport {
    pub sample_count: usize,
    pub distinct_images: usize,
    pub collisions: Vec<Collision>,
    /// Confirmed coincidences of caustic points, recorded alongside.
    pub phi_collisions: usize,
    pub base_hits: usize,
    pub verdict: Verdict,
}

/// Reflected line at a sample, from the tangent and the reflection directly.
fn reflected_line_numeric(f: &Poly, s: &[Complex64; 3], m: &[Complex64; 3]) -> [Complex64; 3] {
    let (t, _) = eval_triple_complex(&projgeom::gradient_triple(f), m);
    let nn = t[0] * t[0] + t[1] * t[1];
    let ts = t[0] * s[0] + t[1] * s[1] + t[2] * s[2];
    let r = [
        nn * s[0] - 2.0 * ts * t[0],
        nn * s[1] - 2.0 * ts * t[1],
        nn * s[2],
    ];
    normalize(&wedge_c(m, &r))
}

fn collisions(
    images: &[Option<[Complex64; 3]>],
    samples: &[NumericPoint],
    tol: f64,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..images.len() {
        let Some(a) = &images[i] else { continue };
        for j in i + 1..images.len() {
            let Some(b) = &images[j] else { continue };
            if proj_distance(a, b) < tol
                && proj_distance(&samples[i].coords, &samples[j].coords) > 1e-6
            {
                out.push((i, j));
            }
        }
    }
    out
}

fn images(t: &PolyTriple, samples: &[NumericPoint]) -> (Vec<Option<[Complex64; 3]>>, usize) {
    let mut hits = 0;
    let v = samples
        .iter()
        .map(|p| {
            let (v, rel) = eval_triple_complex(t, &p.coords);
            if rel < 1e-10 {
                hits += 1;
                None
            } else {
                Some(normalize(&v))
            }
        })
        .collect();
    (v, hits)
}

/// Look for distinct samples with the same reflected line. Suspected pairs
/// are confirmed by recomputing both lines from the reflection itself.
pub fn birationality_test(
    f: &Poly,
    s: &ProjPoint,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<BirationalityReport> {
    let samples = sample_curve(f, n, seed)?;
    let rho = projgeom::rho_components(f, s)?;
    let (rho_img, base_hits) = images(&rho, &samples);
    let sc = s.to_complex();
    let mut confirmed = Vec::new();
    for (i, j) in collisions(&rho_img, &samples, tol) {
        let a = reflected_line_numeric(f, &sc, &samples[i].coords);
        let b = reflected_line_numeric(f, &sc, &samples[j].coords);
        if proj_distance(&a, &b) < 1e-10 {
            confirmed.push(Collision {
                first: i,
                second: j,
                line: a,
            });
        }
    }
    let phi_collisions = match projgeom::phi_components(f, s) {
        Ok(phi) => {
            let (img, _) = images(&phi, &samples);
            collisions(&img, &samples, tol).len()
        }
        Err(Error::DegenerateCaustic) => 0,
        Err(e) => return Err(e),
    };
    // Merge colliding samples into classes to count distinct images.
    let mut class: Vec<usize> = (0..samples.len()).collect();
    fn root(c: &mut [usize], mut i: usize) -> usize {
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    for c in &confirmed {
        let (a, b) = (root(&mut class, c.first), root(&mut class, c.second));
        class[a.max(b)] = a.min(b);
    }
    let valid: Vec<usize> = (0..samples.len())
        .filter(|&i| rho_img[i].is_some())
        .collect();
    let mut roots: Vec<usize> = valid.iter().map(|&i| root(&mut class, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let verdict = if base_hits * 2 > samples.len() {
        Verdict::Inconclusive
    } else if confirmed.is_empty() {
        Verdict::Injective
    } else {
        Verdict::CollisionFound
    };
    Ok(BirationalityReport {
        sample_count: samples.len(),
        distinct_images: roots.len(),
        collisions: confirmed,
        phi_collisions,
        base_hits,
        verdict,
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
    fn circle_samples_lie_on_the_circle() {
        let f = xyz("x^2+y^2-z^2");
        let pts = sample_curve(&f, 10, 1).unwrap();
        assert_eq!(pts.len(), 10);
        for p in &pts {
            let c = p.coords;
            let (x, y) = (c[0] / c[2], c[1] / c[2]);
            assert!((x * x + y * y - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = xyz("y^2*z-x^3");
        let a = sample_curve(&f, 20, 5).unwrap();
        let b = sample_curve(&f, 20, 5).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert_eq!(p.coords, q.coords);
        }
    }

    #[test]
    fn cusp_samples_avoid_the_cusp() {
        let f = xyz("y^2*z-x^3");
        for p in sample_curve(&f, 50, 3).unwrap() {
            let c = p.coords;
            assert!((c[0] / c[2]).norm() > 1e-4);
        }
    }

    #[test]
    fn reflected_line_map_is_injective_on_the_circle() {
        let f = xyz("x^2+y^2-z^2");
        let r = birationality_test(&f, &ProjPoint::from_ints(2, 1, 1), 200, 1, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::Injective);
        assert_eq!(r.distinct_images, 200);
    }

    #[test]
    fn ellipse_is_injective_too() {
        let f = xyz("x^2+2*y^2-z^2");
        let r = birationality_test(&f, &ProjPoint::from_ints(3, 1, 1), 200, 2, 1e-8).unwrap();
        assert_eq!(r.verdict, Verdict::Injective);
    }
}
