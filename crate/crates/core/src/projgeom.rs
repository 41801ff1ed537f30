//! Projective-plane primitives and the reflection constructions built on them.
//!
//! Points and lines are both triples; the alternating product `a ∧ b` (the
//! cross product) gives the line through two points and the point on two
//! lines.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::gcd::{divides, gcd_many};
use crate::algebra::mpoly::{Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};

pub type Triple<K> = [K; 3];

/// Alternating product of two triples.
pub fn wedge<K: Scalar>(a: &Triple<K>, b: &Triple<K>) -> Triple<K> {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn dot<K: Scalar>(a: &Triple<K>, b: &Triple<K>) -> K {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub(crate) fn all_zero<K: Scalar>(t: &Triple<K>) -> Result<bool> {
    for c in t {
        if !c.decide_zero()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale so that the last nonzero entry is 1.
fn normalize<K: Scalar>(t: &Triple<K>) -> Result<Triple<K>> {
    for k in (0..3).rev() {
        if !t[k].decide_zero()? {
            let inv = t[k].inv()?;
            return Ok([t[0].mul(&inv), t[1].mul(&inv), t[2].mul(&inv)]);
        }
    }
    Err(Error::InvalidInput("zero triple".into()))
}

macro_rules! projective_type {
    ($name:ident, $field:ident, $what:literal) => {
        #[derive(Clone)]
        pub struct $name<K = GaussianRational> {
            pub $field: Triple<K>,
        }

        impl<K: Scalar> $name<K> {
            pub fn new($field: Triple<K>) -> Result<Self> {
                if all_zero(&$field)? {
                    return Err(Error::InvalidInput(
                        concat!("the zero triple is not a ", $what).into(),
                    ));
                }
                Ok($name { $field })
            }

            /// Representative with the last nonzero entry equal to 1.
            pub fn normalized(&self) -> Result<Self> {
                Ok($name {
                    $field: normalize(&self.$field)?,
                })
            }

            /// Equality up to a nonzero scalar.
            pub fn proj_eq(&self, o: &Self) -> Result<bool> {
                all_zero(&wedge(&self.$field, &o.$field))
            }

            pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> $name<L> {
                $name {
                    $field: [f(&self.$field[0]), f(&self.$field[1]), f(&self.$field[2])],
                }
            }
        }

        impl $name<GaussianRational> {
            pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
                $name::new([
                    GaussianRational::from_int(a),
                    GaussianRational::from_int(b),
                    GaussianRational::from_int(c),
                ])
                .expect("nonzero triple")
            }

            pub fn parse(text: &str) -> Result<Self> {
                $name::new(crate::algebra::parse_point(text)?)
            }

            pub fn conj(&self) -> Self {
                self.map(|c| c.conj())
            }

            pub fn is_real(&self) -> bool {
                self.$field.iter().all(|c| c.is_real())
            }

            pub fn to_complex(&self) -> [num_complex::Complex64; 3] {
                [
                    self.$field[0].to_complex(),
                    self.$field[1].to_complex(),
                    self.$field[2].to_complex(),
                ]
            }
        }

        impl<K: Scalar> PartialEq for $name<K> {
            fn eq(&self, o: &Self) -> bool {
                self.proj_eq(o).unwrap_or(false)
            }
        }

        impl<K: Scalar> fmt::Display for $name<K> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let t = &self.$field;
                write!(f, "[{}:{}:{}]", t[0], t[1], t[2])
            }
        }

        impl<K: Scalar> fmt::Debug for $name<K> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{self}")
            }
        }

        impl Serialize for $name<GaussianRational> {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $name<GaussianRational> {
            fn deserialize<D: serde::Deserializer<'de>>(
                d: D,
            ) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                $name::parse(&s).map_err(serde::de::Error::custom)
            }
        }
    };
}

projective_type!(ProjPoint, coords, "projective point");
projective_type!(ProjLine, coeffs, "projective line");

impl ProjPoint<GaussianRational> {
    /// The cyclic point `I = [1:i:0]`.
    pub fn cyclic_i() -> Self {
        ProjPoint::new([
            GaussianRational::one(),
            GaussianRational::i(),
            GaussianRational::zero(),
        ])
        .unwrap()
    }

    /// The cyclic point `J = [1:-i:0]`.
    pub fn cyclic_j() -> Self {
        ProjPoint::new([
            GaussianRational::one(),
            GaussianRational::i().neg(),
            GaussianRational::zero(),
        ])
        .unwrap()
    }
}

impl ProjLine<GaussianRational> {
    /// The line at infinity `z = 0`.
    pub fn infinity() -> Self {
        ProjLine::from_ints(0, 0, 1)
    }
}

pub fn incident<K: Scalar>(p: &ProjPoint<K>, l: &ProjLine<K>) -> Result<bool> {
    dot(&p.coords, &l.coeffs).decide_zero()
}

/// The line through two distinct points.
pub fn join<K: Scalar>(p: &ProjPoint<K>, q: &ProjPoint<K>) -> Result<ProjLine<K>> {
    let w = wedge(&p.coords, &q.coords);
    if all_zero(&w)? {
        return Err(Error::EqualArguments("join of equal points"));
    }
    Ok(ProjLine { coeffs: w })
}

/// The common point of two distinct lines.
pub fn meet<K: Scalar>(l1: &ProjLine<K>, l2: &ProjLine<K>) -> Result<ProjPoint<K>> {
    let w = wedge(&l1.coeffs, &l2.coeffs);
    if all_zero(&w)? {
        return Err(Error::EqualArguments("meet of equal lines"));
    }
    Ok(ProjPoint { coords: w })
}

/// Orthogonal symmetry across `D = V(ax+by+cz)`:
/// `p ↦ (a²+b²)·p − 2·(a p_x + b p_y + c p_z)·(a, b, 0)`.
pub fn reflect_point<K: Scalar>(d: &ProjLine<K>, p: &ProjPoint<K>) -> Result<ProjPoint<K>> {
    let [a, b, _] = &d.coeffs;
    let n = a.mul(a).add(&b.mul(b));
    if n.decide_zero()? {
        return Err(Error::IsotropicMirror);
    }
    let s = dot(&d.coeffs, &p.coords).mul(&K::from_int(2));
    let q = &p.coords;
    let out = [
        n.mul(&q[0]).sub(&s.mul(a)),
        n.mul(&q[1]).sub(&s.mul(b)),
        n.mul(&q[2]),
    ];
    ProjPoint::new(out)
}

fn eval_gradient<K: Scalar>(f: &Poly, m: &ProjPoint<K>) -> Triple<K> {
    let pt: Vec<K> = m.coords.to_vec();
    let g: Vec<K> = (0..3).map(|v| eval_in(&f.derivative(v), &pt)).collect();
    [g[0].clone(), g[1].clone(), g[2].clone()]
}

/// Evaluate a Q(i) polynomial at a point with coordinates in `K`.
pub fn eval_in<K: Scalar>(f: &Poly, pt: &[K]) -> K {
    f.map_coeffs(|c| K::from_gaussian(c)).eval(pt)
}

fn check_on_curve<K: Scalar>(f: &Poly, m: &ProjPoint<K>) -> Result<()> {
    if !eval_in(f, &m.coords).decide_zero()? {
        return Err(Error::NotOnCurve);
    }
    Ok(())
}

/// Tangent `[F_x(m) : F_y(m) : F_z(m)]` at a smooth point of `V(F)`.
pub fn tangent_line<K: Scalar>(f: &Poly, m: &ProjPoint<K>) -> Result<ProjLine<K>> {
    check_on_curve(f, m)?;
    let g = eval_gradient(f, m);
    if all_zero(&g)? {
        return Err(Error::SingularPoint);
    }
    Ok(ProjLine { coeffs: g })
}

/// Normal: the line through `m` and `[F_x(m) : F_y(m) : 0]`.
pub fn normal_line<K: Scalar>(f: &Poly, m: &ProjPoint<K>) -> Result<ProjLine<K>> {
    check_on_curve(f, m)?;
    let g = eval_gradient(f, m);
    if all_zero(&g)? {
        return Err(Error::SingularPoint);
    }
    let dir = [g[0].clone(), g[1].clone(), K::zero()];
    let w = wedge(&m.coords, &dir);
    if all_zero(&w)? {
        return Err(Error::NormalUndefined);
    }
    Ok(ProjLine { coeffs: w })
}

/// `m` lies on the curve outside `V(F_x² + F_y²)`.
pub fn in_c0<K: Scalar>(f: &Poly, m: &ProjPoint<K>) -> Result<bool> {
    check_on_curve(f, m)?;
    let g = eval_gradient(f, m);
    Ok(!g[0].mul(&g[0]).add(&g[1].mul(&g[1])).decide_zero()?)
}

/// The reflected line `(m  σ_{T_m}(S))`.
pub fn reflected_line<K: Scalar>(
    f: &Poly,
    s: &ProjPoint<K>,
    m: &ProjPoint<K>,
) -> Result<ProjLine<K>> {
    if !in_c0(f, m)? {
        return Err(Error::NotInC0);
    }
    if m.proj_eq(s)? {
        return Err(Error::SourceAtPoint);
    }
    let t = tangent_line(f, m)?;
    let rs = reflect_point(&t, s)?;
    if rs.proj_eq(m)? {
        return Err(Error::ReflectionDegenerate);
    }
    join(m, &rs)
}

/// The candidate source `τ_m(m')` of Lemma-type coincidences: the meet of
/// `(m σ_{T_m}(m'))` and `(m' σ_{T_{m'}}(m))`.
pub fn tau<K: Scalar>(f: &Poly, m: &ProjPoint<K>, m2: &ProjPoint<K>) -> Result<ProjPoint<K>> {
    if m.proj_eq(m2)? {
        return Err(Error::EqualArguments("tau needs distinct points"));
    }
    for p in [m, m2] {
        if !in_c0(f, p)? {
            return Err(Error::NotInC0);
        }
    }
    let t1 = tangent_line(f, m)?;
    let t2 = tangent_line(f, m2)?;
    let a = wedge(&m.coords, &reflect_point(&t1, m2)?.coords);
    let b = wedge(&m2.coords, &reflect_point(&t2, m)?.coords);
    if all_zero(&a)? || all_zero(&b)? {
        return Err(Error::TauDegenerate("a reflected chord is undefined"));
    }
    let p = wedge(&a, &b);
    if all_zero(&p)? {
        return Err(Error::TauDegenerate("the two reflected chords coincide"));
    }
    Ok(ProjPoint { coords: p })
}

// ---------------------------------------------------------------------------
// Symbolic forms: triples of polynomials in (x, y, z).

pub type PolyTriple = [Poly; 3];

fn const_poly(vars: &Vars, c: &GaussianRational) -> Poly {
    Poly::constant(vars, c.clone())
}

pub fn wedge_polys(a: &PolyTriple, b: &PolyTriple) -> PolyTriple {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn dot_polys(a: &PolyTriple, b: &PolyTriple) -> Poly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

/// Divide out the common polynomial factor of a triple. A zero triple is
/// returned unchanged.
pub fn remove_content(t: PolyTriple) -> Result<PolyTriple> {
    let nonzero: Vec<Poly> = t.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(t);
    }
    let g = gcd_many(&nonzero)?;
    if g.is_constant() {
        return Ok(t);
    }
    let q = |p: &Poly| -> Result<Poly> {
        p.div_exact(&g)?
            .ok_or_else(|| Error::EliminationFailed("content does not divide".into()))
    };
    Ok([q(&t[0])?, q(&t[1])?, q(&t[2])?])
}

fn coordinate_triple(vars: &Vars) -> PolyTriple {
    [Poly::var(vars, 0), Poly::var(vars, 1), Poly::var(vars, 2)]
}

pub fn gradient_triple(f: &Poly) -> PolyTriple {
    [f.derivative(0), f.derivative(1), f.derivative(2)]
}

/// Symbolic `σ_D(p)` for a line triple `d` and a point triple `p`.
pub fn reflect_polys(d: &PolyTriple, p: &PolyTriple) -> PolyTriple {
    let n = d[0].mul(&d[0]).add(&d[1].mul(&d[1]));
    let s = dot_polys(d, p).scale(&GaussianRational::from_int(2));
    [
        n.mul(&p[0]).sub(&s.mul(&d[0])),
        n.mul(&p[1]).sub(&s.mul(&d[1])),
        n.mul(&p[2]),
    ]
}

/// Symbolic form of `m ↦ σ_{T_m}(S)` (the orthotomic map), degree `2(d-1)`.
pub fn orthotomic_components(f: &Poly, s: &ProjPoint) -> Result<PolyTriple> {
    let vars = f.vars();
    let sp = [
        const_poly(vars, &s.coords[0]),
        const_poly(vars, &s.coords[1]),
        const_poly(vars, &s.coords[2]),
    ];
    remove_content(reflect_polys(&gradient_triple(f), &sp))
}

/// Line coordinates of the reflected line at a general point `m` of `V(F)`.
pub fn rho_components(f: &Poly, s: &ProjPoint) -> Result<PolyTriple> {
    let vars = f.vars();
    let sp = [
        const_poly(vars, &s.coords[0]),
        const_poly(vars, &s.coords[1]),
        const_poly(vars, &s.coords[2]),
    ];
    let refl = reflect_polys(&gradient_triple(f), &sp);
    remove_content(wedge_polys(&coordinate_triple(vars), &refl))
}

/// Characteristic point of a one-parameter family of lines `L(m)` along
/// `V(F)`: `L(m) ∧ (J_L(m) · t(m))` with `t = ∇F ∧ m`, content removed.
pub fn envelope_components(f: &Poly, lines: &PolyTriple) -> Result<PolyTriple> {
    let vars = f.vars();
    let t = wedge_polys(&gradient_triple(f), &coordinate_triple(vars));
    let deriv: PolyTriple = [0, 1, 2].map(|i| {
        let g = gradient_triple(&lines[i]);
        dot_polys(&g, &t)
    });
    remove_content(wedge_polys(lines, &deriv))
}

/// The caustic map: characteristic point of the reflected-line family.
/// Fails with [`Error::DegenerateCaustic`] if it vanishes identically on the curve.
pub fn phi_components(f: &Poly, s: &ProjPoint) -> Result<PolyTriple> {
    let rho = rho_components(f, s)?;
    let phi = envelope_components(f, &rho)?;
    for c in &phi {
        if !c.is_zero() && !divides(f, c)? {
            return Ok(phi);
        }
    }
    Err(Error::DegenerateCaustic)
}

/// Normal-line family `m ∧ [F_x : F_y : 0]`.
pub fn normal_components(f: &Poly) -> Result<PolyTriple> {
    let vars = f.vars();
    let dir = [f.derivative(0), f.derivative(1), Poly::zero(vars)];
    remove_content(wedge_polys(&coordinate_triple(vars), &dir))
}

/// The evolute map: characteristic point of the family of normals.
pub fn evolute_components(f: &Poly) -> Result<PolyTriple> {
    envelope_components(f, &normal_components(f)?)
}

/// Symbolic `τ_m` as a map of the second point, degree at most `2d`.
pub fn tau_components(f: &Poly, m: &ProjPoint) -> Result<PolyTriple> {
    let vars = f.vars();
    let t = tangent_line(f, m)?;
    let mp = [
        const_poly(vars, &m.coords[0]),
        const_poly(vars, &m.coords[1]),
        const_poly(vars, &m.coords[2]),
    ];
    let tp = [
        const_poly(vars, &t.coeffs[0]),
        const_poly(vars, &t.coeffs[1]),
        const_poly(vars, &t.coeffs[2]),
    ];
    let x = coordinate_triple(vars);
    let a = wedge_polys(&mp, &reflect_polys(&tp, &x));
    let b = wedge_polys(&x, &reflect_polys(&gradient_triple(f), &mp));
    remove_content(wedge_polys(&a, &b))
}

/// Evaluate a polynomial triple at a point.
pub fn eval_triple<K: Scalar>(t: &PolyTriple, p: &[K]) -> Triple<K> {
    [eval_in(&t[0], p), eval_in(&t[1], p), eval_in(&t[2], p)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    type Q = GaussianRational;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    fn line(s: &str) -> ProjLine {
        ProjLine::parse(s).unwrap()
    }

    #[test]
    fn join_and_meet() {
        let l = join(&pt("[1:0:1]"), &pt("[0:1:1]")).unwrap();
        assert_eq!(l, line("[1:1:-1]"));
        assert_eq!(
            meet(&line("[1:0:0]"), &line("[0:1:0]")).unwrap(),
            pt("[0:0:1]")
        );
        assert_eq!(
            join(&ProjPoint::cyclic_i(), &ProjPoint::cyclic_j()).unwrap(),
            ProjLine::infinity()
        );
        assert!(matches!(
            join(&pt("[1:2:3]"), &pt("[2:4:6]")),
            Err(Error::EqualArguments(_))
        ));
    }

    #[test]
    fn reflections() {
        assert_eq!(
            reflect_point(&line("[1:0:0]"), &pt("[1:2:3]")).unwrap(),
            pt("[-1:2:3]")
        );
        assert_eq!(
            reflect_point(&line("[1:0:0]"), &pt("[0:5:7]")).unwrap(),
            pt("[0:5:7]")
        );
        assert_eq!(
            reflect_point(&line("[1:0:-1]"), &pt("[0:0:1]")).unwrap(),
            pt("[2:0:1]")
        );
        assert!(matches!(
            reflect_point(&line("[1:i:0]"), &pt("[0:0:1]")),
            Err(Error::IsotropicMirror)
        ));
    }

    #[test]
    fn tangent_normal_c0() {
        let c = xyz("x^2+y^2-z^2");
        assert_eq!(tangent_line(&c, &pt("[1:0:1]")).unwrap(), line("[1:0:-1]"));
        assert_eq!(normal_line(&c, &pt("[1:0:1]")).unwrap(), line("[0:1:0]"));
        let cusp = xyz("y^2*z-x^3");
        assert!(matches!(
            tangent_line(&cusp, &pt("[0:0:1]")),
            Err(Error::SingularPoint)
        ));
        assert!(in_c0(&c, &pt("[1:0:1]")).unwrap());
        assert!(!in_c0(&c, &ProjPoint::cyclic_i()).unwrap());
        assert!(!in_c0(&cusp, &pt("[0:0:1]")).unwrap());
    }

    #[test]
    fn reflected_line_examples() {
        let c = xyz("x^2+y^2-z^2");
        let m = pt("[1:0:1]");
        assert_eq!(
            reflected_line(&c, &pt("[0:0:1]"), &m).unwrap(),
            line("[0:1:0]")
        );
        // S on the tangent x = z: reflected line is the tangent.
        assert_eq!(
            reflected_line(&c, &pt("[1:5:1]"), &m).unwrap(),
            line("[1:0:-1]")
        );
        // S on the normal y = 0: reflected line is the normal.
        assert_eq!(
            reflected_line(&c, &pt("[3:0:1]"), &m).unwrap(),
            line("[0:1:0]")
        );
    }

    #[test]
    fn rho_matches_pointwise() {
        let c = xyz("x^2+y^2-z^2");
        let s = pt("[2:1:1]");
        let rho = rho_components(&c, &s).unwrap();
        let m = pt("[3/5:4/5:1]");
        let direct = reflected_line(&c, &s, &m).unwrap();
        let sym = ProjLine::new(eval_triple(&rho, &m.coords)).unwrap();
        assert_eq!(direct, sym);
        let expected = join(
            &m,
            &reflect_point(&tangent_line(&c, &m).unwrap(), &s).unwrap(),
        )
        .unwrap();
        assert_eq!(sym, expected);
        assert!(gcd_many(&rho).unwrap().is_constant());
    }

    #[test]
    fn phi_incidence_and_degree() {
        let c = xyz("x^2+y^2-z^2");
        let s = pt("[2:1:1]");
        let rho = rho_components(&c, &s).unwrap();
        let phi = phi_components(&c, &s).unwrap();
        assert!(dot_polys(&rho, &phi).is_zero());
        assert!(phi.iter().all(|p| p.is_homogeneous()));
    }

    #[test]
    fn tau_is_symmetric() {
        let c = xyz("x^2+y^2-z^2");
        let m = pt("[1:0:1]");
        let m2 = pt("[3/5:4/5:1]");
        let a = tau(&c, &m, &m2).unwrap();
        let b = tau(&c, &m2, &m).unwrap();
        assert_eq!(a, b);
        let tc = tau_components(&c, &m).unwrap();
        assert!(tc.iter().all(|p| p.total_degree().unwrap_or(0) <= 4));
        assert_eq!(ProjPoint::new(eval_triple(&tc, &m2.coords)).unwrap(), a);
    }

    #[test]
    fn serde_round_trip() {
        let p = pt("[1/2:-i:3]");
        assert_eq!(p.to_string(), "[1/2:-i:3]");
        let js = serde_json::to_string(&p).unwrap();
        let back: ProjPoint = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        let _ = Q::one();
    }
}
