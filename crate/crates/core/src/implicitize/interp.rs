//! Implicit equation of an image curve by interpolation on line slices.
//!
//! Lines through a fixed center `P0 ∉ C` cut `C` in `d` points each. A form
//! `G` of degree `D` vanishes on the image `M(C)` iff `G∘M ≡ 0 mod F`, and by
//! Bézout it suffices that `G(M(P0 + s·Q_j)) ≡ 0 mod F(P0 + s·Q_j)` on
//! `D·k + 1` distinct lines, `k = deg M`. Those congruences are linear in the
//! coefficients of `G`. The smallest `D` with a nonzero solution is found
//! modulo word-size primes; the coefficients are lifted by Chinese
//! remaindering and rational reconstruction, and the lifted equation is then
//! checked exactly on `D·k + 1` slices, which proves `F | G∘M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::modp::{self, addmod, mulmod, submod};
use crate::algebra::mpoly::{Monomial, Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

type Q = GaussianRational;

/// Monomials of degree `deg` in three variables, largest first (graded lex).
pub fn monomials_desc(deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for b in (0..=deg - a).rev() {
            out.push(Monomial(vec![a, b, deg - a - b]));
        }
    }
    out
}

/// One slice: the line `P0 + s·Q`, with `f(s) = F(P0 + s·Q)` square-free of
/// full degree `d`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub p0: [i64; 3],
    pub q: [i64; 3],
}

/// A family of slices through a common center.
#[derive(Clone, Debug)]
pub struct SlicePlan {
    pub center: [i64; 3],
    pub slices: Vec<Slice>,
}

fn ints_to_q(v: &[i64; 3]) -> [Q; 3] {
    [Q::from_int(v[0]), Q::from_int(v[1]), Q::from_int(v[2])]
}

/// Exact restriction `f(s) = F(a + s·b)`.
fn restrict_exact(f: &Poly, a: &[i64; 3], b: &[i64; 3]) -> UPoly<Q> {
    crate::algebra::binary::restrict_affine(f, &ints_to_q(a), &ints_to_q(b))
}

impl SlicePlan {
    /// Draw a center off the curve and `count` admissible slices.
    pub fn draw(f: &Poly, count: usize, rng: &mut ChaCha8Rng) -> Result<SlicePlan> {
        let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
        let h = 100i64;
        let rnd3 = |rng: &mut ChaCha8Rng| {
            [
                rng.gen_range(-h..=h),
                rng.gen_range(-h..=h),
                rng.gen_range(-h..=h),
            ]
        };
        for _ in 0..3 {
            let center = rnd3(rng);
            if center == [0, 0, 0] || f.eval(&ints_to_q(&center)).is_zero() {
                continue;
            }
            let b0 = rnd3(rng);
            let b1 = rnd3(rng);
            let mut slices = Vec::with_capacity(count);
            let mut j: i64 = 0;
            while slices.len() < count && j < 20 * count as i64 + 100 {
                j += 1;
                let q = [b0[0] + j * b1[0], b0[1] + j * b1[1], b0[2] + j * b1[2]];
                let fs = restrict_exact(f, &center, &q);
                if fs.degree() != Some(d) {
                    continue;
                }
                if fs.gcd(&fs.derivative())?.deg0() > 0 {
                    continue;
                }
                slices.push(Slice { p0: center, q });
            }
            if slices.len() == count {
                return Ok(SlicePlan { center, slices });
            }
        }
        Err(Error::ChartFailure(3))
    }
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[s]/(f) with f monic of degree d; residues have length d.

struct ModRing<'a> {
    f: &'a [u64], // monic, length d+1
    p: u64,
}

impl ModRing<'_> {
    fn d(&self) -> usize {
        self.f.len() - 1
    }

    fn reduce(&self, mut a: Vec<u64>) -> Vec<u64> {
        let d = self.d();
        while a.len() > d {
            let c = a.pop().unwrap();
            if c != 0 {
                let base = a.len() - d;
                for k in 0..d {
                    a[base + k] = submod(a[base + k], mulmod(c, self.f[k], self.p), self.p);
                }
            }
        }
        a.resize(d, 0);
        a
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = addmod(out[i + j], mulmod(x, y, self.p), self.p);
            }
        }
        self.reduce(out)
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.d()];
        v[0] = 1 % self.p;
        v
    }
}

/// A polynomial reduced into `F_p` under one embedding of Q(i).
struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
    maxdeg: [usize; 3],
}

fn reduce_poly(f: &Poly, p: u64, root: u64) -> Option<ModPoly> {
    let mut terms = Vec::with_capacity(f.num_terms());
    let mut maxdeg = [0usize; 3];
    for (m, c) in f.terms() {
        let v = modp::gaussian_mod(c, p, root)?;
        for (mx, &e) in maxdeg.iter_mut().zip(m.0.iter()) {
            *mx = (*mx).max(e as usize);
        }
        terms.push((m.0.clone(), v));
    }
    Some(ModPoly { terms, maxdeg })
}

fn mod_int(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// `g(a + s·b) mod f` in the residue ring.
fn eval_on_line(g: &ModPoly, a: &[i64; 3], b: &[i64; 3], ring: &ModRing) -> Vec<u64> {
    let p = ring.p;
    let d = ring.d();
    let mut powers: Vec<Vec<Vec<u64>>> = Vec::with_capacity(3);
    for k in 0..3 {
        let mut lin = vec![0u64; d.max(2)];
        lin[0] = mod_int(a[k], p);
        lin[1] = mod_int(b[k], p);
        let lin = ring.reduce(lin);
        let mut pw = vec![ring.one()];
        for e in 1..=g.maxdeg[k] {
            let next = ring.mul(&pw[e - 1], &lin);
            pw.push(next);
        }
        powers.push(pw);
    }
    let mut acc = vec![0u64; d];
    for (m, c) in &g.terms {
        let t = ring.mul(
            &ring.mul(&powers[0][m[0] as usize], &powers[1][m[1] as usize]),
            &powers[2][m[2] as usize],
        );
        for k in 0..d {
            acc[k] = addmod(acc[k], mulmod(*c, t[k], p), p);
        }
    }
    acc
}

/// Per-prime, per-embedding data: residues of the map components on every slice.
struct SliceResidues {
    rings: Vec<Vec<u64>>,
    comps: Vec<[Vec<u64>; 3]>,
}

fn residues(
    f: &Poly,
    map: &[Poly; 3],
    plan: &SlicePlan,
    p: u64,
    root: u64,
) -> Option<SliceResidues> {
    let fm = reduce_poly(f, p, root)?;
    let mm: Vec<ModPoly> = map
        .iter()
        .map(|c| reduce_poly(c, p, root))
        .collect::<Option<_>>()?;
    let d = f.total_degree()?;
    let mut rings = Vec::new();
    let mut comps = Vec::new();
    for sl in &plan.slices {
        // f(s) = F(p0 + s q) has degree d, so working modulo s^(d+1) is exact.
        let mut trunc = vec![0u64; d + 2];
        trunc[d + 1] = 1;
        let lift = ModRing { f: &trunc, p };
        let fs = eval_on_line(&fm, &sl.p0, &sl.q, &lift);
        let lc = fs[d];
        if lc == 0 {
            return None;
        }
        let inv = modp::invmod(lc, p);
        let monic: Vec<u64> = fs[..=d].iter().map(|&c| mulmod(c, inv, p)).collect();
        let ring = ModRing { f: &monic, p };
        let c: [Vec<u64>; 3] = [0, 1, 2].map(|i| eval_on_line(&mm[i], &sl.p0, &sl.q, &ring));
        comps.push(c);
        rings.push(monic);
    }
    Some(SliceResidues { rings, comps })
}

/// Linear system for forms of degree `deg`, over the first `nslices` slices.
fn build_rows(res: &SliceResidues, deg: u32, nslices: usize, p: u64) -> (Vec<Vec<u64>>, usize) {
    let monos = monomials_desc(deg);
    let ncols = monos.len();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for j in 0..nslices {
        let ring = ModRing {
            f: &res.rings[j],
            p,
        };
        let d = ring.d();
        let pw: Vec<Vec<Vec<u64>>> = (0..3)
            .map(|i| {
                let mut v = vec![ring.one()];
                for e in 1..=deg as usize {
                    let next = ring.mul(&v[e - 1], &res.comps[j][i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut block = vec![vec![0u64; ncols]; d];
        for (col, m) in monos.iter().enumerate() {
            let t = ring.mul(
                &ring.mul(&pw[0][m.0[0] as usize], &pw[1][m.0[1] as usize]),
                &pw[2][m.0[2] as usize],
            );
            for r in 0..d {
                block[r][col] = t[r];
            }
        }
        rows.extend(block);
    }
    (rows, ncols)
}

fn slices_needed(deg: u32, k: usize) -> usize {
    deg as usize * k + 1
}

/// Smallest degree with a nonzero vanishing form, and the kernel dimension there.
fn search_degree(
    res: &SliceResidues,
    k: usize,
    p: u64,
    max_deg: u32,
) -> Result<(u32, Vec<Vec<u64>>)> {
    for deg in 1..=max_deg {
        let n = slices_needed(deg, k).min(res.rings.len());
        let (rows, ncols) = build_rows(res, deg, n, p);
        let ker = modp::kernel(rows, ncols, p);
        if ker.is_empty() {
            continue;
        }
        if deg == 1 && ker.len() >= 2 {
            return Err(Error::DegenerateImage);
        }
        return Ok((deg, ker));
    }
    Err(Error::EliminationFailed(format!(
        "no vanishing form up to degree {max_deg}"
    )))
}

fn normalized_kernel(ker: &[Vec<u64>], p: u64) -> Option<(usize, Vec<u64>)> {
    if ker.len() != 1 {
        return None;
    }
    let v = &ker[0];
    let lead = v.iter().position(|&c| c != 0)?;
    let inv = modp::invmod(v[lead], p);
    Some((lead, v.iter().map(|&c| mulmod(c, inv, p)).collect()))
}

type ZI = num_complex::Complex<BigInt>;

/// Terms of `l·p` as Gaussian integers; `l` must clear every denominator.
fn integral_terms(p: &Poly, l: &BigInt) -> Vec<(Vec<u32>, ZI)> {
    let l = BigRational::from_integer(l.clone());
    p.terms()
        .map(|(m, c)| {
            (
                m.0.clone(),
                ZI::new((&c.re * &l).to_integer(), (&c.im * &l).to_integer()),
            )
        })
        .collect()
}

/// `Z[i][t]/(g)` for monic `g`; residues have length `deg g`.
struct ZRing {
    g: Vec<ZI>,
}

impl ZRing {
    fn d(&self) -> usize {
        self.g.len() - 1
    }

    fn reduce(&self, mut a: Vec<ZI>) -> Vec<ZI> {
        let d = self.d();
        while a.len() > d {
            let c = a.pop().expect("nonempty");
            if !c.is_zero() {
                let base = a.len() - d;
                for k in 0..d {
                    a[base + k] -= &c * &self.g[k];
                }
            }
        }
        a.resize(d, ZI::zero());
        a
    }

    fn mul(&self, a: &[ZI], b: &[ZI]) -> Vec<ZI> {
        let mut out = vec![ZI::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    fn one(&self) -> Vec<ZI> {
        self.reduce(vec![ZI::one()])
    }

    /// `Σ c·a0^e0·a1^e1·a2^e2` over the given terms.
    fn eval(&self, terms: &[(Vec<u32>, ZI)], args: &[Vec<ZI>]) -> Vec<ZI> {
        let maxdeg: Vec<usize> = (0..args.len())
            .map(|k| terms.iter().map(|(m, _)| m[k] as usize).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Vec<ZI>>> = args
            .iter()
            .zip(&maxdeg)
            .map(|(a, &n)| {
                let mut pw = vec![self.one()];
                for e in 1..=n {
                    let next = self.mul(&pw[e - 1], a);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = vec![ZI::zero(); self.d()];
        for (m, c) in terms {
            let mut t = powers[0][m[0] as usize].clone();
            for k in 1..args.len() {
                if m[k] > 0 {
                    t = self.mul(&t, &powers[k][m[k] as usize]);
                }
            }
            for (x, y) in acc.iter_mut().zip(&t) {
                *x += c * y;
            }
        }
        acc
    }
}

/// Exact check of `G(M(P0 + s·Q)) ≡ 0 mod F(P0 + s·Q)` on each slice.
///
/// With `f(s) = F(P0 + s·Q)` of leading coefficient `c`, the substitution
/// `s = t/c` turns `c^(d-1)·f` into a monic `g(t)` with Gaussian-integer
/// coefficients, and `P0 + s·Q` into `c·P0 + t·Q` up to scale. All
/// arithmetic then stays in `Z[i][t]/(g)`.
pub fn certify_on_slices(f: &Poly, map: &[Poly; 3], g: &Poly, plan: &SlicePlan) -> Result<bool> {
    let f_int = f.scale(&Q::new(
        BigRational::from_integer(integral_scale(f)),
        BigRational::zero(),
    ));
    // One scale for all components, so that the map itself is unchanged.
    let l = map
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&integral_scale(c)));
    let map_terms: Vec<Vec<(Vec<u32>, ZI)>> = map.iter().map(|c| integral_terms(c, &l)).collect();
    let g_terms = integral_terms(g, &integral_scale(g));
    for sl in &plan.slices {
        let fs = restrict_exact(&f_int, &sl.p0, &sl.q);
        let d = fs.deg0();
        let coeffs: Vec<ZI> = fs
            .coeffs()
            .iter()
            .map(|c| c.integer_parts().map(|(a, b)| ZI::new(a, b)))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::EliminationFailed("slice restriction is not integral".into()))?;
        let lc = coeffs[d].clone();
        let mut monic = Vec::with_capacity(d + 1);
        let mut scale = ZI::one();
        for j in (0..d).rev() {
            monic.push(&coeffs[j] * &scale);
            scale = &scale * &lc;
        }
        monic.reverse();
        monic.push(ZI::one());
        let ring = ZRing { g: monic };
        let line: Vec<Vec<ZI>> = (0..3)
            .map(|k| {
                let a = &lc * ZI::new(BigInt::from(sl.p0[k]), BigInt::zero());
                ring.reduce(vec![a, ZI::new(BigInt::from(sl.q[k]), BigInt::zero())])
            })
            .collect();
        let comps: Vec<Vec<ZI>> = map_terms.iter().map(|t| ring.eval(t, &line)).collect();
        if ring.eval(&g_terms, &comps).iter().any(|c| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn integral_scale(p: &Poly) -> BigInt {
    p.terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(&c.denom_lcm()))
}

struct Lift {
    lead: usize,
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    modulus: BigInt,
}

fn reconstruct(l: &Lift) -> Option<Vec<Q>> {
    let mut out = Vec::with_capacity(l.re.len());
    for (a, b) in l.re.iter().zip(&l.im) {
        let re = modp::rational_reconstruct(a, &l.modulus)?;
        let im = modp::rational_reconstruct(b, &l.modulus)?;
        out.push(Q::new(re, im));
    }
    Some(out)
}

/// Result of one interpolation run.
#[derive(Clone, Debug)]
pub struct InterpResult {
    pub equation: Poly,
    pub plan: SlicePlan,
    pub primes_used: usize,
}

/// Minimal-degree form in `(u, v, w)` vanishing on `map(V(f))`, certified
/// exactly on slices.
pub fn interpolate_image(
    f: &Poly,
    map: &[Poly; 3],
    rng: &mut ChaCha8Rng,
    prime_offset: usize,
) -> Result<InterpResult> {
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let k = map
        .iter()
        .filter_map(|c| c.total_degree())
        .max()
        .ok_or(Error::DegenerateImage)?;
    let max_deg = (d * k) as u32;
    let uvw = Vars::uvw();

    let mut primes = modp::primes_1mod4().skip(prime_offset);
    let mut plan: Option<SlicePlan> = None;
    let mut lift: Option<Lift> = None;
    let mut degree = 0u32;
    let mut previous: Option<Vec<Q>> = None;
    let mut primes_used = 0;
    let max_primes = 400;

    while primes_used < max_primes {
        let p = primes.next().expect("infinitely many primes");
        let r = modp::sqrt_minus_one(p);
        // Draw the slices once the degree is known; the first pass uses the
        // largest count that could be needed.
        if plan.is_none() {
            let pl = SlicePlan::draw(f, slices_needed(max_deg, k), rng)?;
            plan = Some(pl);
        }
        let pl = plan.as_ref().unwrap();
        let (Some(rp), Some(rm)) = (residues(f, map, pl, p, r), residues(f, map, pl, p, p - r))
        else {
            continue;
        };
        primes_used += 1;
        if degree == 0 {
            let (deg, _) = search_degree(&rp, k, p, max_deg)?;
            degree = deg;
            // Keep only the slices needed at this degree.
            let need = slices_needed(degree, k);
            let pl = plan.as_mut().unwrap();
            pl.slices.truncate(need);
            // Residues computed for the full plan are still valid for the prefix.
        }
        let n = slices_needed(degree, k);
        let kp = {
            let (rows, ncols) = build_rows(&rp, degree, n, p);
            modp::kernel(rows, ncols, p)
        };
        let km = {
            let (rows, ncols) = build_rows(&rm, degree, n, p);
            modp::kernel(rows, ncols, p)
        };
        let (Some((lp, vp)), Some((lm, vm))) =
            (normalized_kernel(&kp, p), normalized_kernel(&km, p))
        else {
            continue;
        };
        if lp != lm {
            continue;
        }
        // re = (g+ + g-)/2, im = (g+ - g-)/(2r)
        let inv2 = modp::invmod(2, p);
        let inv2r = modp::invmod(mulmod(2, r, p), p);
        let re: Vec<u64> = vp
            .iter()
            .zip(&vm)
            .map(|(&a, &b)| mulmod(addmod(a, b, p), inv2, p))
            .collect();
        let im: Vec<u64> = vp
            .iter()
            .zip(&vm)
            .map(|(&a, &b)| mulmod(submod(a, b, p), inv2r, p))
            .collect();
        match &mut lift {
            Some(l) if l.lead == lp => {
                let m = l.modulus.clone();
                for (x, &y) in l.re.iter_mut().zip(&re) {
                    *x = modp::crt(x, &m, y, p);
                }
                for (x, &y) in l.im.iter_mut().zip(&im) {
                    *x = modp::crt(x, &m, y, p);
                }
                l.modulus = m * BigInt::from(p);
            }
            Some(l) if l.lead < lp => continue, // unlucky prime: leading coefficient vanished
            _ => {
                lift = Some(Lift {
                    lead: lp,
                    re: re.iter().map(|&c| BigInt::from(c)).collect(),
                    im: im.iter().map(|&c| BigInt::from(c)).collect(),
                    modulus: BigInt::from(p),
                });
                previous = None;
                continue;
            }
        }
        let Some(cand) = reconstruct(lift.as_ref().unwrap()) else {
            previous = None;
            continue;
        };
        if previous.as_ref() != Some(&cand) {
            previous = Some(cand);
            continue;
        }
        let monos = monomials_desc(degree);
        let g = Poly::from_terms(&uvw, monos.into_iter().zip(cand.iter().cloned()));
        if certify_on_slices(f, map, &g, plan.as_ref().unwrap())? {
            return Ok(InterpResult {
                equation: g.monic()?,
                plan: plan.unwrap(),
                primes_used,
            });
        }
    }
    Err(Error::Uncertified(format!(
        "no certified equation after {max_primes} primes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use rand::SeedableRng;

    #[test]
    fn slice_certificate_respects_component_scales() {
        let xyz = Vars::xyz();
        let f = parse_poly("x^2+y^2-z^2", &xyz).unwrap();
        // (x/2, y, z) maps the circle onto 4u² + v² = w².
        let map = [
            parse_poly("1/2*x", &xyz).unwrap(),
            Poly::var(&xyz, 1),
            Poly::var(&xyz, 2),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let plan = SlicePlan::draw(&f, 5, &mut rng).unwrap();
        let good = parse_poly("4*u^2+v^2-w^2", &Vars::uvw()).unwrap();
        let bad = parse_poly("u^2+v^2-w^2", &Vars::uvw()).unwrap();
        assert!(certify_on_slices(&f, &map, &good, &plan).unwrap());
        assert!(!certify_on_slices(&f, &map, &bad, &plan).unwrap());
    }
}
