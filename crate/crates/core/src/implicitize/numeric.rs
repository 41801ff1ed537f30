//! Independent degree oracle: count, numerically, the points of `C` that a
//! rational map sends onto a random line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::mpoly::Poly;
use crate::algebra::resultant::resultant;
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::numericlab::eval::eval_complex;
use crate::numericlab::roots::{poly_roots, RootOptions};

type Q = GaussianRational;

/// Relative size below which all map components count as vanishing.
pub const BASE_POINT_TOL: f64 = 1e-10;

/// Complex approximations of the coefficients, rescaled by a common power of
/// two so that huge exact values stay in range.
pub fn scaled_complex_coeffs(p: &UPoly<Q>) -> Vec<Complex64> {
    let den = p.coeffs().iter().fold(BigInt::from(1), |acc, c| {
        num_integer::Integer::lcm(&acc, &c.denom_lcm())
    });
    let ints: Vec<(BigInt, BigInt)> = p
        .coeffs()
        .iter()
        .map(|c| {
            let s = c * &Q::new(den.clone().into(), Zero::zero());
            s.integer_parts().expect("denominators cleared")
        })
        .collect();
    let bits = ints
        .iter()
        .map(|(a, b)| a.bits().max(b.bits()))
        .max()
        .unwrap_or(0);
    let shift = bits.saturating_sub(900) as usize;
    let conv = |v: &BigInt| -> f64 {
        let m = if v.is_negative() {
            -((-v) >> shift)
        } else {
            v >> shift
        };
        m.to_f64().unwrap_or(0.0)
    };
    let mut out: Vec<Complex64> = ints
        .iter()
        .map(|(a, b)| Complex64::new(conv(a), conv(b)))
        .collect();
    let max = out.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max > 0.0 {
        for c in out.iter_mut() {
            *c /= max;
        }
    }
    out
}

/// Relative size of the map at a point: `max_i |M_i(m)| / scale_i(m)`.
pub fn relative_map_size(map: &[Poly; 3], m: &[Complex64; 3]) -> f64 {
    let norm = m.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let m: Vec<Complex64> = m.iter().map(|c| c / norm).collect();
    map.iter()
        .map(|c| {
            let (v, s) = eval_complex(c, &m);
            if s == 0.0 {
                0.0
            } else {
                v.norm() / s
            }
        })
        .fold(0.0, f64::max)
}

struct Chart {
    cols: [[i64; 3]; 3],
}

impl Chart {
    fn draw(f: &Poly, rng: &mut ChaCha8Rng) -> Option<Chart> {
        for _ in 0..20 {
            let mut cols = [[0i64; 3]; 3];
            for c in cols.iter_mut() {
                for v in c.iter_mut() {
                    *v = rng.gen_range(-10..=10);
                }
            }
            let det = cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1])
                - cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1])
                + cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1]);
            let a1: Vec<Q> = cols[1].iter().map(|&v| Q::from_int(v)).collect();
            if det != 0 && !f.eval(&a1).is_zero() {
                return Some(Chart { cols });
            }
        }
        None
    }

    /// `P(x·A0 + y·A1 + A2)` as a polynomial in x, y.
    fn pull_back(&self, p: &Poly) -> Poly {
        let vars = p.vars();
        let subs: Vec<Poly> = (0..3)
            .map(|i| {
                Poly::linear(
                    vars,
                    &[
                        Q::from_int(self.cols[0][i]),
                        Q::from_int(self.cols[1][i]),
                        Q::from_int(self.cols[2][i]),
                    ],
                )
            })
            .collect();
        p.compose(&subs).specialize(2, &Q::one())
    }

    fn point(&self, x: Complex64, y: Complex64) -> [Complex64; 3] {
        [0, 1, 2].map(|i| {
            x * self.cols[0][i] as f64
                + y * self.cols[1][i] as f64
                + Complex64::new(self.cols[2][i] as f64, 0.0)
        })
    }
}

fn random_line(rng: &mut ChaCha8Rng) -> [Q; 3] {
    loop {
        let l = [
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
            rng.gen_range(-10..=10),
        ];
        if l != [0, 0, 0] {
            return l.map(Q::from_int);
        }
    }
}

fn line_pullback(map: &[Poly; 3], l: &[Q; 3]) -> Poly {
    map[0]
        .scale(&l[0])
        .add(&map[1].scale(&l[1]))
        .add(&map[2].scale(&l[2]))
}

/// x-eliminant of `{F = 0, L∘M = 0}` in the chart.
fn eliminant(fc: &Poly, h: &Poly, chart: &Chart) -> Option<UPoly<Q>> {
    let r = resultant(fc, &chart.pull_back(h), 1)
        .ok()?
        .to_univariate(0)?;
    (!r.is_zero()).then_some(r)
}

fn one_trial(f: &Poly, map: &[Poly; 3], rng: &mut ChaCha8Rng) -> Option<usize> {
    let chart = Chart::draw(f, rng)?;
    let fc = chart.pull_back(f);
    let opts = RootOptions {
        tol: 1e-15,
        max_iter: 500,
    };
    let h1 = line_pullback(map, &random_line(rng));
    let h2 = line_pullback(map, &random_line(rng));
    let r1 = eliminant(&fc, &h1, &chart)?.squarefree_part().ok()?;
    let r2 = eliminant(&fc, &h2, &chart)?;
    // Base points lie on every pulled-back line; remove them exactly.
    let common = r1.gcd(&r2).ok()?;
    let moving = r1.exact_div(&common).ok()?;
    if moving.deg0() == 0 {
        return Some(0);
    }
    let roots1 = poly_roots(&scaled_complex_coeffs(&moving), &opts)?;
    let ycoeffs = fc.coeffs_in(1);
    let mut count = 0;
    for x0 in roots1 {
        // Points of C above x0, and the one on the pulled-back line.
        let yc: Vec<Complex64> = ycoeffs
            .iter()
            .map(|c| eval_complex(c, &[x0, Complex64::zero(), Complex64::new(1.0, 0.0)]).0)
            .collect();
        let ys = poly_roots(&yc, &RootOptions::default())?;
        let best = ys
            .iter()
            .map(|&y| {
                let m = chart.point(x0, y);
                let norm = m.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let mn: Vec<Complex64> = m.iter().map(|c| c / norm).collect();
                let (v, s) = eval_complex(&h1, &mn);
                (if s == 0.0 { 0.0 } else { v.norm() / s }, m)
            })
            .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))?;
        if relative_map_size(map, &best.1) >= BASE_POINT_TOL {
            count += 1;
        }
    }
    Some(count)
}

/// Degree of the image curve `M(C)`, by counting the non-base points of `C`
/// sent onto random lines. Returns the majority count over `trials`.
pub fn numeric_degree(f: &Poly, map: &[Poly; 3], trials: usize, seed: u64) -> Result<usize> {
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for t in 0..trials {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(t as u64 + 1)));
        if let Some(c) = one_trial(f, map, &mut rng) {
            *tally.entry(c).or_insert(0) += 1;
        }
    }
    let (best, votes) = tally
        .iter()
        .max_by_key(|(_, v)| **v)
        .map(|(k, v)| (*k, *v))
        .unwrap_or((0, 0));
    if votes * 2 <= trials {
        return Err(Error::Unstable(tally.into_iter().collect()));
    }
    Ok(best)
}
