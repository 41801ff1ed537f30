//! The test curves and exact points on them.

use crate::algebra::mpoly::{Poly, Vars};
use crate::algebra::parse::parse_poly;
use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::projgeom::ProjPoint;

type Q = GaussianRational;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub equation: Poly,
    /// Irreducibility and anything unusual about the entry.
    pub notes: &'static str,
    /// Caustic degree and class where they are known in closed form.
    pub expected_degree: Option<usize>,
    pub expected_class: Option<usize>,
    /// Exact smooth points with non-isotropic tangent, from a rational
    /// parametrization.
    pub points: Vec<ProjPoint>,
}

/// Parameter values for the stored points; none of them hits a singular
/// point of the catalog curves.
const PARAMS: [(i64, i64); 10] = [
    (0, 1),
    (2, 1),
    (3, 1),
    (-2, 1),
    (-3, 1),
    (1, 2),
    (-1, 2),
    (1, 3),
    (-1, 3),
    (5, 2),
];

fn points(param: impl Fn(Q) -> [Q; 3]) -> Vec<ProjPoint> {
    PARAMS
        .iter()
        .map(|&(a, b)| ProjPoint {
            coords: param(Q::from_ratio(a, b)),
        })
        .collect()
}

fn poly(text: &str) -> Poly {
    parse_poly(text, &Vars::xyz()).expect("catalog equations parse")
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "circle",
            equation: poly("x^2+y^2-z^2"),
            notes: "smooth conic through both cyclic points",
            expected_degree: Some(6),
            expected_class: Some(4),
            points: points(|t| [q(1).sub(&t.mul(&t)), q(2).mul(&t), q(1).add(&t.mul(&t))]),
        },
        CatalogEntry {
            name: "ellipse",
            equation: poly("x^2+2*y^2-z^2"),
            notes: "smooth conic missing the cyclic points",
            expected_degree: Some(6),
            expected_class: None,
            points: points(|t| {
                let tt = q(2).mul(&t).mul(&t);
                [tt.sub(&q(1)), q(-2).mul(&t), q(1).add(&tt)]
            }),
        },
        CatalogEntry {
            name: "parabola",
            equation: poly("y*z-x^2"),
            notes: "smooth conic tangent to the line at infinity",
            expected_degree: Some(6),
            expected_class: Some(5),
            points: points(|t| [t.clone(), t.mul(&t), q(1)]),
        },
        CatalogEntry {
            name: "cuspidal_cubic",
            equation: poly("y^2*z-x^3"),
            notes: "irreducible cubic with a cusp at the origin and a flex at [0:1:0]",
            expected_degree: Some(9),
            expected_class: Some(7),
            points: points(|t| {
                // t = 0 is the cusp; shift the parameters off it.
                let t = t.add(&q(7));
                [t.mul(&t), t.mul(&t).mul(&t), q(1)]
            }),
        },
        CatalogEntry {
            name: "nodal_cubic",
            equation: poly("y^2*z-x^2*z-x^3"),
            notes: "irreducible cubic with a node at the origin",
            expected_degree: None,
            expected_class: None,
            points: points(|t| {
                // t = ±1 is the node; shift the parameters off it.
                let t = t.add(&q(5));
                let s = t.mul(&t).sub(&q(1));
                [s.clone(), t.mul(&s), q(1)]
            }),
        },
    ]
}

pub fn entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::in_c0;

    #[test]
    fn stored_points_are_usable() {
        for e in catalog() {
            assert_eq!(e.points.len(), 10);
            for (k, p) in e.points.iter().enumerate() {
                assert!(in_c0(&e.equation, p).unwrap(), "{} point {k}", e.name);
                for p2 in &e.points[..k] {
                    assert!(!p.proj_eq(p2).unwrap(), "{} repeats a point", e.name);
                }
            }
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(entry("parabola").is_some());
        assert!(entry("folium").is_none());
        assert!(entry("circle")
            .unwrap()
            .equation
            .eval(&[q(1), q(0), q(1)])
            .is_zero());
    }
}
