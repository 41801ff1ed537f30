//! Implicit equations of image curves: caustics, their duals, dual curves,
//! orthotomics and evolutes.

pub mod eliminate;
pub mod interp;
pub mod numeric;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::gcd::{divides, gcd};
use crate::algebra::mpoly::{Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::projgeom::{self, remove_content, PolyTriple, ProjPoint};

pub use numeric::numeric_degree;

/// Three homogeneous forms of one degree without common factor.
#[derive(Clone, Debug)]
pub struct RationalMapP2 {
    pub components: PolyTriple,
}

impl RationalMapP2 {
    pub fn new(components: PolyTriple) -> Result<Self> {
        let degs: Vec<usize> = components.iter().filter_map(|c| c.total_degree()).collect();
        if degs.is_empty() || degs[0] == 0 {
            return Err(Error::DegenerateImage);
        }
        if degs.iter().any(|&d| d != degs[0]) || components.iter().any(|c| !c.is_homogeneous()) {
            return Err(Error::InvalidInput(
                "map components must be homogeneous of one degree".into(),
            ));
        }
        Ok(RationalMapP2 {
            components: remove_content(components)?,
        })
    }

    pub fn identity(vars: &Vars) -> Self {
        RationalMapP2 {
            components: [Poly::var(vars, 0), Poly::var(vars, 1), Poly::var(vars, 2)],
        }
    }

    pub fn gradient(f: &Poly) -> Result<Self> {
        RationalMapP2::new(projgeom::gradient_triple(f))
    }

    pub fn degree(&self) -> usize {
        self.components
            .iter()
            .filter_map(|c| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Fails when every component vanishes on `V(f)`.
    pub fn check_on_curve(&self, f: &Poly) -> Result<()> {
        for c in &self.components {
            if !c.is_zero() && !divides(f, c)? {
                return Ok(());
            }
        }
        Err(Error::DegenerateImage)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrippedFactor {
    pub factor: Poly,
    pub reason: String,
}

/// Square-free equation of the Zariski closure of an image curve.
#[derive(Clone, Debug, Serialize)]
pub struct ImageCurve {
    pub equation: Poly,
    pub degree: usize,
    /// The independent numeric fiber count agrees with `degree`.
    pub certified: bool,
    pub numeric_degree: Option<usize>,
    pub stripped_factors: Vec<StrippedFactor>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct ImageOptions {
    pub seed: u64,
    /// Random lines for the numeric degree oracle; 0 skips it.
    pub trials: usize,
    /// Recompute in a second slice family and compare.
    pub second_chart: bool,
}

impl Default for ImageOptions {
    fn default() -> Self {
        ImageOptions {
            seed: 0,
            trials: 5,
            second_chart: true,
        }
    }
}

impl ImageOptions {
    pub fn with_seed(seed: u64) -> Self {
        ImageOptions {
            seed,
            ..Default::default()
        }
    }
}

/// Implicit equation of the closure of `M(V(f))`, for irreducible `f`.
pub fn image_curve(f: &Poly, map: &RationalMapP2, opts: &ImageOptions) -> Result<ImageCurve> {
    map.check_on_curve(f)?;
    let m = &map.components;
    let mut warnings = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let first = interp::interpolate_image(f, m, &mut rng, 0)?;
    let mut equation = first.equation;
    if opts.second_chart {
        let mut rng2 = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc2b2_ae3d_27d4_eb4f);
        let second = interp::interpolate_image(f, m, &mut rng2, 7)?;
        if second.equation != equation {
            warnings.push("slice families disagree; kept their gcd".into());
            equation = gcd(&equation, &second.equation)?;
            if equation.is_constant() {
                return Err(Error::EliminationFailed(
                    "chart runs share no factor".into(),
                ));
            }
        }
    }
    let degree = equation.total_degree().unwrap_or(0);
    let mut numeric = None;
    if opts.trials > 0 {
        match numeric_degree(f, m, opts.trials, opts.seed.wrapping_add(1)) {
            Ok(n) => numeric = Some(n),
            Err(e) => warnings.push(format!("numeric degree oracle failed: {e}")),
        }
    }
    Ok(ImageCurve {
        equation,
        degree,
        certified: numeric == Some(degree),
        numeric_degree: numeric,
        stripped_factors: Vec::new(),
        warnings,
    })
}

/// The same image by iterated resultants and factor stripping.
pub fn image_curve_by_resultants(
    f: &Poly,
    map: &RationalMapP2,
    opts: &ImageOptions,
) -> Result<ImageCurve> {
    map.check_on_curve(f)?;
    let (equation, stripped) = eliminate::image_by_resultants(f, &map.components, opts.seed)?;
    let degree = equation.total_degree().unwrap_or(0);
    let numeric = if opts.trials > 0 {
        numeric_degree(f, &map.components, opts.trials, opts.seed.wrapping_add(1)).ok()
    } else {
        None
    };
    Ok(ImageCurve {
        equation,
        degree,
        certified: numeric == Some(degree),
        numeric_degree: numeric,
        stripped_factors: stripped,
        warnings: Vec::new(),
    })
}

/// Dual curve: the image under the gradient map.
pub fn dual_curve(g: &Poly, opts: &ImageOptions) -> Result<ImageCurve> {
    if g.total_degree().unwrap_or(0) < 2 {
        return Err(Error::DegenerateImage);
    }
    image_curve(g, &RationalMapP2::gradient(g)?, opts)
}

/// The caustic: closure of the image of the caustic map.
pub fn caustic_implicit(f: &Poly, s: &ProjPoint, opts: &ImageOptions) -> Result<ImageCurve> {
    let phi = projgeom::phi_components(f, s)?;
    image_curve(f, &RationalMapP2::new(phi)?, opts)
}

/// The dual of the caustic: closure of the image of the reflected-line map.
/// Its degree is the class of the caustic.
pub fn caustic_dual_implicit(f: &Poly, s: &ProjPoint, opts: &ImageOptions) -> Result<ImageCurve> {
    let rho = projgeom::rho_components(f, s)?;
    image_curve(f, &RationalMapP2::new(rho)?, opts)
}

/// Locus of reflections of a finite source across the tangents of the curve.
pub fn orthotomic(f: &Poly, s: &ProjPoint, opts: &ImageOptions) -> Result<ImageCurve> {
    if s.coords[2].is_zero() {
        return Err(Error::InvalidInput(
            "orthotomic needs a source off the line at infinity".into(),
        ));
    }
    let m = projgeom::orthotomic_components(f, s)?;
    image_curve(f, &RationalMapP2::new(m)?, opts)
}

/// Envelope of the normal lines.
pub fn evolute(g: &Poly, opts: &ImageOptions) -> Result<ImageCurve> {
    let m = projgeom::evolute_components(g)?;
    image_curve(g, &RationalMapP2::new(m)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    fn uvw(s: &str) -> Poly {
        parse_poly(s, &Vars::uvw()).unwrap()
    }

    fn quick() -> ImageOptions {
        ImageOptions {
            seed: 3,
            trials: 3,
            second_chart: false,
        }
    }

    #[test]
    fn identity_map_returns_the_curve() {
        let f = xyz("x^2+y^2-z^2");
        let img = image_curve(&f, &RationalMapP2::identity(&Vars::xyz()), &quick()).unwrap();
        assert_eq!(img.equation, uvw("u^2+v^2-w^2"));
        assert!(img.certified);
    }

    #[test]
    fn circle_is_self_dual_up_to_sign() {
        let img = dual_curve(&xyz("x^2+y^2-z^2"), &quick()).unwrap();
        assert_eq!(img.equation, uvw("u^2+v^2-w^2"));
    }

    #[test]
    fn cuspidal_cubic_dual_is_a_cubic() {
        let img = dual_curve(&xyz("y^2*z-x^3"), &quick()).unwrap();
        assert_eq!(img.degree, 3);
        assert_eq!(img.numeric_degree, Some(3));
    }

    #[test]
    fn smooth_cubic_dual_is_a_sextic() {
        let img = dual_curve(&xyz("y^2*z-x^3+x*z^2"), &quick()).unwrap();
        assert_eq!(img.degree, 6);
    }

    #[test]
    fn circle_caustic_degree_and_class() {
        let f = xyz("x^2+y^2-z^2");
        let s = ProjPoint::from_ints(2, 1, 1);
        let c = caustic_implicit(&f, &s, &quick()).unwrap();
        assert_eq!(c.degree, 6);
        assert!(c.certified);
        let d = caustic_dual_implicit(&f, &s, &quick()).unwrap();
        assert_eq!(d.degree, 4);
    }

    #[test]
    fn source_at_circle_center_degenerates() {
        let f = xyz("x^2+y^2-z^2");
        let r = caustic_implicit(&f, &ProjPoint::from_ints(0, 0, 1), &quick());
        assert!(matches!(r, Err(Error::DegenerateImage)), "{r:?}");
    }

    #[test]
    fn parabola_evolute_is_a_semicubical_parabola() {
        let img = evolute(&xyz("y*z-x^2"), &quick()).unwrap();
        assert_eq!(img.degree, 3);
    }

    #[test]
    fn caustic_is_evolute_of_orthotomic() {
        let f = xyz("x^2+y^2-z^2");
        let s = ProjPoint::from_ints(2, 1, 1);
        let c = caustic_implicit(&f, &s, &quick()).unwrap();
        let o = orthotomic(&f, &s, &quick()).unwrap();
        let g = o.equation.with_vars(&Vars::xyz());
        let e = evolute(&g, &quick()).unwrap();
        assert_eq!(e.equation, c.equation);
    }

    #[test]
    fn resultant_route_agrees_on_cusp_dual() {
        let f = xyz("y^2*z-x^3");
        let map = RationalMapP2::gradient(&f).unwrap();
        let a = image_curve(&f, &map, &quick()).unwrap();
        let b = image_curve_by_resultants(&f, &map, &quick()).unwrap();
        assert_eq!(a.equation, b.equation);
    }
}
