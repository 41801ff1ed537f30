//! End-to-end checks: generic sources, the degree and class formulas, the
//! bad-source curve bound and the catalog run.

pub mod catalog;
pub mod report;
pub mod source;

use serde::Serialize;

use crate::algebra::mpoly::{Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::implicitize::{self, ImageCurve, ImageOptions, RationalMapP2};
use crate::localinv::{invariant_bundle, InvariantReport};
use crate::numericlab::{birationality_test, BirationalityReport, Verdict};
use crate::projgeom::{self, ProjPoint};

pub use catalog::{catalog, entry, CatalogEntry};
pub use report::{CatalogReport, EntryReport, RunReport};
pub use source::{generic_source, source_defect};

/// Sources tried in total when the formulas disagree with elimination.
pub const FORMULA_ATTEMPTS: usize = 3;
/// Sources tried in total when the sampling test finds a collision.
pub const BIRATIONALITY_ATTEMPTS: usize = 5;
pub const BIRATIONALITY_SAMPLES: usize = 200;
pub const COLLISION_TOL: f64 = 1e-8;
pub const SOURCES_PER_ENTRY: usize = 3;

fn mix(seed: u64, k: u64) -> u64 {
    // splitmix64 step, so that nearby seeds give unrelated streams.
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Source-independent data for one curve.
#[derive(Clone, Debug)]
pub struct CurveData {
    pub equation: Poly,
    pub dual: ImageCurve,
    /// Invariants and predictions for a placeholder source.
    pub bundle: InvariantReport,
}

impl CurveData {
    pub fn new(f: &Poly, seed: u64) -> Result<Self> {
        let dual = implicitize::dual_curve(f, &ImageOptions::with_seed(seed))?;
        let bundle = invariant_bundle(f, &ProjPoint::from_ints(0, 0, 1), dual.degree)?;
        Ok(CurveData {
            equation: f.clone(),
            dual,
            bundle,
        })
    }
}

/// Formula check for one source, with the image curves behind it.
#[derive(Clone, Debug)]
pub struct Verification {
    pub report: InvariantReport,
    pub caustic: ImageCurve,
    pub caustic_dual: ImageCurve,
    /// Earlier sources given up on, with the reason.
    pub discarded: Vec<(ProjPoint, String)>,
}

impl Verification {
    pub fn warnings(&self) -> Vec<String> {
        let mut w: Vec<String> = self
            .discarded
            .iter()
            .map(|(s, why)| format!("source {s} discarded: {why}"))
            .collect();
        w.extend(
            self.caustic
                .warnings
                .iter()
                .map(|x| format!("caustic: {x}")),
        );
        w.extend(
            self.caustic_dual
                .warnings
                .iter()
                .map(|x| format!("caustic dual: {x}")),
        );
        w
    }
}

fn check_once(data: &CurveData, s: &ProjPoint, seed: u64) -> Result<Verification> {
    let opts = ImageOptions::with_seed(seed);
    let caustic = implicitize::caustic_implicit(&data.equation, s, &opts)?;
    let caustic_dual = implicitize::caustic_dual_implicit(&data.equation, s, &opts)?;
    let mut report = data.bundle.clone();
    report.source = s.clone();
    report.set_computed(caustic.degree, caustic_dual.degree);
    Ok(Verification {
        report,
        caustic,
        caustic_dual,
        discarded: Vec::new(),
    })
}

/// Compare both formulas with elimination at `s`. A mismatch, or a caustic
/// that degenerates, is retried at fresh generic sources before it is
/// reported.
pub fn verify_with(data: &CurveData, s: &ProjPoint, seed: u64) -> Result<Verification> {
    let mut discarded = Vec::new();
    let mut s = s.clone();
    for attempt in 0..FORMULA_ATTEMPTS {
        let last = attempt + 1 == FORMULA_ATTEMPTS;
        match check_once(data, &s, mix(seed, attempt as u64)) {
            Ok(mut v) if v.report.all_match() || last => {
                v.discarded = discarded;
                return Ok(v);
            }
            Ok(v) => discarded.push((
                s.clone(),
                format!(
                    "predicted {}/{}, computed {}/{}",
                    v.report.predicted_degree,
                    v.report.predicted_class,
                    v.caustic.degree,
                    v.caustic_dual.degree
                ),
            )),
            Err(e @ (Error::DegenerateImage | Error::DegenerateCaustic)) if !last => {
                discarded.push((s.clone(), e.to_string()))
            }
            Err(e) => return Err(e),
        }
        s = generic_source(&data.equation, mix(seed, 100 + attempt as u64))?;
    }
    unreachable!("the last attempt always returns")
}

/// Predicted and computed degree and class of the caustic from `s`.
pub fn verify_formulas(f: &Poly, s: &ProjPoint, seed: u64) -> Result<InvariantReport> {
    Ok(verify_with(&CurveData::new(f, seed)?, s, seed)?.report)
}

/// Sampling test at `s`, redrawing the source while collisions turn up.
pub fn birationality_with_retries(
    f: &Poly,
    s: &ProjPoint,
    seed: u64,
) -> Result<(BirationalityReport, Vec<ProjPoint>)> {
    let mut tried = Vec::new();
    let mut s = s.clone();
    for attempt in 0..BIRATIONALITY_ATTEMPTS {
        let r = birationality_test(
            f,
            &s,
            BIRATIONALITY_SAMPLES,
            mix(seed, 200 + attempt as u64),
            COLLISION_TOL,
        )?;
        if r.verdict == Verdict::Injective || attempt + 1 == BIRATIONALITY_ATTEMPTS {
            return Ok((r, tried));
        }
        tried.push(s);
        s = generic_source(f, mix(seed, 300 + attempt as u64))?;
    }
    unreachable!("the last attempt always returns")
}

/// Whether the caustic equals the evolute of the orthotomic.
pub fn quetelet_dandelin(f: &Poly, s: &ProjPoint, caustic: &Poly, seed: u64) -> Result<bool> {
    let opts = ImageOptions {
        trials: 0,
        ..ImageOptions::with_seed(seed)
    };
    let ortho = implicitize::orthotomic(f, s, &opts)?
        .equation
        .with_vars(&Vars::xyz());
    let ev = implicitize::evolute(&ortho, &opts)?.equation;
    Ok(ev.monic()? == caustic.monic()?)
}

/// Whether dualizing twice gives the curve back.
pub fn biduality(f: &Poly, dual: &Poly, seed: u64) -> Result<bool> {
    let opts = ImageOptions {
        trials: 0,
        ..ImageOptions::with_seed(seed)
    };
    let back = implicitize::dual_curve(&dual.with_vars(&Vars::xyz()), &opts)?.equation;
    Ok(back.with_vars(f.vars()).monic()? == f.monic()?)
}

#[derive(Clone, Debug, Serialize)]
pub struct BadSourceCurve {
    pub point: ProjPoint,
    pub equation: Poly,
    pub degree: usize,
    /// `2d² + 2`.
    pub bound: usize,
    /// `None` when the chord map is constant on the curve.
    pub tau_image_degree: Option<usize>,
}

/// The curve of sources `S` for which the reflected line at `m` meets
/// another reflected line through `m` again: the image of the curve under
/// `m' ↦ τ_m(m')`, together with the tangent and the normal at `m`.
pub fn bad_source_curve(f: &Poly, m: &ProjPoint, seed: u64) -> Result<BadSourceCurve> {
    if !projgeom::in_c0(f, m)? {
        return Err(Error::NotInC0);
    }
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let vars = f.vars();
    let opts = ImageOptions {
        trials: 0,
        ..ImageOptions::with_seed(seed)
    };
    let tau = projgeom::tau_components(f, m)?;
    let (mut equation, tau_image_degree) =
        match RationalMapP2::new(tau).and_then(|map| implicitize::image_curve(f, &map, &opts)) {
            Ok(img) => (img.equation.with_vars(vars), Some(img.degree)),
            Err(Error::DegenerateImage) => (
                Poly::constant(vars, crate::algebra::GaussianRational::from_int(1)),
                None,
            ),
            Err(e) => return Err(e),
        };
    for line in [projgeom::tangent_line(f, m)?, projgeom::normal_line(f, m)?] {
        let l = Poly::linear(vars, &line.coeffs);
        if equation.div_exact(&l)?.is_none() {
            equation = equation.mul(&l);
        }
    }
    let degree = equation.total_degree().unwrap_or(0);
    Ok(BadSourceCurve {
        point: m.clone(),
        equation,
        degree,
        bound: 2 * d * d + 2,
        tau_image_degree,
    })
}

/// One catalog entry at `SOURCES_PER_ENTRY` generic sources.
pub fn run_entry(e: &CatalogEntry, seed: u64) -> EntryReport {
    let mut out = EntryReport::new(e);
    let data = match CurveData::new(&e.equation, seed) {
        Ok(d) => d,
        Err(err) => {
            out.errors.push(format!("{}: {err}", err.kind()));
            return out.finish();
        }
    };
    match biduality(&e.equation, &data.dual.equation, seed) {
        Ok(b) => out.biduality = Some(b),
        Err(err) => out.errors.push(format!("biduality: {err}")),
    }
    for k in 0..SOURCES_PER_ENTRY as u64 {
        let s_seed = mix(seed, 1000 + k);
        let run = || -> Result<RunReport> {
            let s = generic_source(&e.equation, s_seed)?;
            let v = verify_with(&data, &s, s_seed)?;
            let s = v.report.source.clone();
            let (bir, redrawn) = birationality_with_retries(&e.equation, &s, s_seed)?;
            let mut r = RunReport::from_verification(&e.equation, s_seed, &v, Some(&bir));
            r.warnings.extend(
                redrawn
                    .iter()
                    .map(|p| format!("source {p} showed a collision; redrawn")),
            );
            // The evolute of a cubic's orthotomic takes about a minute, so
            // the cross-check is reserved for conics.
            if e.equation.total_degree() == Some(2) && !s.coords[2].is_zero() {
                r.quetelet_dandelin = Some(quetelet_dandelin(
                    &e.equation,
                    &s,
                    &v.caustic.equation,
                    s_seed,
                )?);
            }
            Ok(r)
        };
        match run() {
            Ok(r) => out.sources.push(r),
            Err(err) => out
                .errors
                .push(format!("source {k}: {}: {err}", err.kind())),
        }
    }
    out.finish()
}

/// All catalog entries, each on its own thread with a seed derived from
/// `seed`; the report depends only on `seed`.
pub fn run_catalog(seed: u64) -> CatalogReport {
    let entries = catalog();
    let reports: Vec<EntryReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .enumerate()
            .map(|(k, e)| scope.spawn(move || run_entry(e, mix(seed, k as u64))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("catalog worker panicked"))
            .collect()
    });
    CatalogReport::new(seed, reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn circle_formulas_match() {
        let f = xyz("x^2+y^2-z^2");
        let r = verify_formulas(&f, &ProjPoint::from_ints(2, 1, 1), 1).unwrap();
        assert_eq!((r.computed_degree, r.computed_class), (Some(6), Some(4)));
        assert!(r.all_match());
    }

    #[test]
    fn circle_bad_source_curve_is_within_bound() {
        let f = xyz("x^2+y^2-z^2");
        let b = bad_source_curve(&f, &ProjPoint::from_ints(1, 0, 1), 1).unwrap();
        assert!(b.degree <= 10, "{}", b.degree);
        assert_eq!(b.bound, 10);
        // The tangent x = z and the normal y = 0 divide the equation.
        for l in ["x-z", "y"] {
            assert!(b.equation.div_exact(&xyz(l)).unwrap().is_some(), "{l}");
        }
    }

    #[test]
    fn bad_source_curve_contains_chord_sources() {
        let f = xyz("y*z-x^2");
        let m = ProjPoint::from_ints(1, 1, 1);
        let b = bad_source_curve(&f, &m, 2).unwrap();
        for t in [2, 3, -1, -4] {
            let m2 = ProjPoint::from_ints(t, t * t, 1);
            let p = projgeom::tau(&f, &m, &m2).unwrap();
            assert!(b.equation.eval(&p.coords).is_zero());
        }
    }

    #[test]
    fn parabola_caustic_is_evolute_of_orthotomic() {
        let f = xyz("y*z-x^2");
        let s = ProjPoint::from_ints(1, 3, 1);
        let c = implicitize::caustic_implicit(&f, &s, &ImageOptions::with_seed(1)).unwrap();
        assert!(quetelet_dandelin(&f, &s, &c.equation, 1).unwrap());
    }

    #[test]
    fn conics_are_bidual() {
        for text in ["x^2+y^2-z^2", "y*z-x^2"] {
            let f = xyz(text);
            let d = implicitize::dual_curve(&f, &ImageOptions::with_seed(1)).unwrap();
            assert!(biduality(&f, &d.equation, 1).unwrap(), "{text}");
        }
    }
}
