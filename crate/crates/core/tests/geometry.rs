//! Exact identities of the reflection geometry on random rational data.

use caustic_core::algebra::mpoly::{Poly, Vars};
use caustic_core::algebra::parse::parse_poly;
use caustic_core::algebra::scalar::Scalar;
use caustic_core::algebra::GaussianRational;
use caustic_core::projgeom::{
    dot, eval_triple, incident, phi_components, reflect_point, reflected_line, rho_components,
    tangent_line, PolyTriple, ProjLine, ProjPoint,
};
use caustic_core::Error;
use proptest::prelude::*;
use std::sync::OnceLock;

type Q = GaussianRational;

fn q(a: i64, b: i64) -> Q {
    Q::from_ratio(a, b)
}

fn gauss() -> impl Strategy<Value = Q> {
    (-30i64..=30, -30i64..=30, 1i64..=12).prop_map(|(a, b, d)| Q::new(q(a, d).re, q(b, d).re))
}

fn point() -> impl Strategy<Value = ProjPoint> {
    [gauss(), gauss(), gauss()].prop_filter_map("zero point", |c| ProjPoint::new(c).ok())
}

fn line() -> impl Strategy<Value = ProjLine> {
    [gauss(), gauss(), gauss()].prop_filter_map("zero line", |c| ProjLine::new(c).ok())
}

fn xyz(s: &str) -> Poly {
    parse_poly(s, &Vars::xyz()).unwrap()
}

/// A rational point on one of a few parametrized curves.
fn curve_point(which: usize, t: &Q) -> (Poly, ProjPoint) {
    let one = Q::one();
    let two = Q::from_int(2);
    let tt = t.mul(t);
    match which {
        0 => (
            xyz("x^2+y^2-z^2"),
            ProjPoint {
                coords: [one.sub(&tt), two.mul(t), one.add(&tt)],
            },
        ),
        1 => (
            xyz("y*z-x^2"),
            ProjPoint {
                coords: [t.clone(), tt, one],
            },
        ),
        _ => (
            xyz("y^2*z-x^3"),
            ProjPoint {
                coords: [tt.clone(), tt.mul(t), one],
            },
        ),
    }
}

const SOURCES: [(i64, i64, i64); 4] = [(2, 1, 1), (-3, 5, 2), (7, -4, 3), (1, 1, 0)];

/// Reflected-line and caustic maps for every curve and fixed source; building
/// them symbolically is too slow to repeat per case.
fn maps() -> &'static Vec<Vec<(PolyTriple, PolyTriple)>> {
    static MAPS: OnceLock<Vec<Vec<(PolyTriple, PolyTriple)>>> = OnceLock::new();
    MAPS.get_or_init(|| {
        (0..3)
            .map(|which| {
                let (f, _) = curve_point(which, &Q::zero());
                SOURCES
                    .iter()
                    .map(|&(a, b, c)| {
                        let s = ProjPoint::from_ints(a, b, c);
                        (
                            rho_components(&f, &s).unwrap(),
                            phi_components(&f, &s).unwrap(),
                        )
                    })
                    .collect()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflection_is_an_involution(d in line(), p in point()) {
        match reflect_point(&d, &p) {
            Err(Error::IsotropicMirror) => {}
            Err(e) => panic!("{e}"),
            Ok(r) => prop_assert!(reflect_point(&d, &r).unwrap().proj_eq(&p).unwrap()),
        }
    }

    #[test]
    fn mirror_fixes_its_points(d in line(), p in point(), s in gauss()) {
        // A point of d: the meet of d with some other line through p.
        let other = ProjLine { coeffs: [p.coords[1].sub(&s), p.coords[2].clone(), p.coords[0].add(&s)] };
        prop_assume!(!other.proj_eq(&d).unwrap());
        let Ok(m) = caustic_core::projgeom::meet(&d, &other) else { return Ok(()) };
        match reflect_point(&d, &m) {
            Err(Error::IsotropicMirror) => {}
            Err(e) => panic!("{e}"),
            Ok(r) => prop_assert!(r.proj_eq(&m).unwrap()),
        }
    }

    #[test]
    fn reflected_line_passes_through_point_and_image(which in 0usize..3, t in gauss(), s in point()) {
        let (f, m) = curve_point(which, &t);
        match reflected_line(&f, &s, &m) {
            Ok(l) => {
                prop_assert!(incident(&m, &l).unwrap());
                let r = reflect_point(&tangent_line(&f, &m).unwrap(), &s).unwrap();
                prop_assert!(incident(&r, &l).unwrap());
            }
            Err(Error::NotInC0 | Error::SourceAtPoint | Error::ReflectionDegenerate | Error::SingularPoint) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn caustic_point_lies_on_reflected_line(which in 0usize..3, k in 0usize..SOURCES.len(), t in gauss()) {
        let (_, m) = curve_point(which, &t);
        let (rho, phi) = &maps()[which][k];
        let l = eval_triple(rho, &m.coords);
        let c = eval_triple(phi, &m.coords);
        prop_assert!(dot(&l, &c).is_zero());
    }

    #[test]
    fn euler_identity(coeffs in proptest::collection::vec(-20i64..=20, 10)) {
        // Generic cubic form.
        let vars = Vars::xyz();
        let monos = ["x^3", "x^2*y", "x^2*z", "x*y^2", "x*y*z", "x*z^2", "y^3", "y^2*z", "y*z^2", "z^3"];
        let f = monos.iter().zip(&coeffs).fold(Poly::zero(&vars), |acc, (m, &c)| {
            acc.add(&parse_poly(m, &vars).unwrap().scale(&Q::from_int(c)))
        });
        let lhs = (0..3).fold(Poly::zero(&vars), |acc, k| acc.add(&Poly::var(&vars, k).mul(&f.derivative(k))));
        prop_assert_eq!(lhs, f.scale(&Q::from_int(3)));
    }
}
