//! Branches of a plane curve at a point by Newton polygons.
//!
//! The expansion uses rational Puiseux substitutions
//! `s = ξ^v·s1^q`, `w = s1^p·(ξ^u + w1)` with `uq - vp = 1`, so every
//! coefficient stays in the ring generated by the roots of the edge
//! polynomials. Over Q(i) a root outside the field opens one extension
//! level; a second level is refused.

use serde::Serialize;

use crate::algebra::extension::{run_split, ExtElem, Modulus};
use crate::algebra::mpoly::{MPoly, Monomial, Poly, Vars};
use crate::algebra::scalar::Scalar;
use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::projgeom::{eval_in, ProjLine, Triple};

type Q = GaussianRational;

/// One branch at a point, or a family of conjugate branches with equal
/// invariants when the expansion needed an algebraic extension.
#[derive(Clone, Debug, Serialize)]
pub struct CurveBranch {
    pub center: String,
    /// Multiplicity of the branch.
    pub mult: usize,
    pub tangent: String,
    /// Intersection number of the branch with its tangent line.
    pub tangent_order: usize,
    pub tangent_at_infinity: bool,
    /// Number of conjugate branches this entry stands for.
    pub conjugates: usize,
    /// Local parametrization in the chart centered at the point:
    /// `x = c·t^n` as `(n, c)` and `y = Σ b_k·t^k` as `(k, b_k)`.
    pub x_param: (usize, String),
    pub series_prefix: Vec<(usize, String)>,
    #[serde(skip)]
    pub tangent_line: Option<ProjLine>,
}

/// Projective frame `(a0, a1, P)`: local coordinates `(s, w)` stand for the
/// point `s·a0 + w·a1 + P`.
#[derive(Clone)]
pub struct LocalChart<K> {
    pub cols: [Triple<K>; 3],
}

impl<K: Scalar> LocalChart<K> {
    /// Frame at `p` completed by two unit vectors; `None` only when `p` is
    /// the zero triple.
    pub fn at(p: &Triple<K>) -> Result<Option<Self>> {
        let unit = |k: usize| -> Triple<K> {
            let mut t = [K::zero(), K::zero(), K::zero()];
            t[k] = K::one();
            t
        };
        for k in (0..3).rev() {
            if !p[k].decide_zero()? {
                let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
                return Ok(Some(LocalChart {
                    cols: [unit(others[0]), unit(others[1]), p.clone()],
                }));
            }
        }
        Ok(None)
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> LocalChart<L> {
        LocalChart {
            cols: self.cols.each_ref().map(|c| c.each_ref().map(&f)),
        }
    }

    /// `F(s·a0 + w·a1 + P)` in the variables `s, w`.
    pub fn local_poly(&self, f: &Poly) -> MPoly<K> {
        let vars = Vars::new(&["s", "w"]);
        let subs: Vec<MPoly<K>> = (0..3)
            .map(|k| {
                MPoly::linear(&vars, &[self.cols[0][k].clone(), self.cols[1][k].clone()])
                    .add(&MPoly::constant(&vars, self.cols[2][k].clone()))
            })
            .collect();
        f.map_coeffs(|c| K::from_gaussian(c)).compose(&subs)
    }

    /// Global coefficients of a line given in local homogeneous coordinates.
    pub fn line_to_global(&self, l: &Triple<K>) -> Triple<K> {
        let [c0, c1, c2] = &self.cols;
        let rows = [
            crate::projgeom::wedge(c1, c2),
            crate::projgeom::wedge(c2, c0),
            crate::projgeom::wedge(c0, c1),
        ];
        let mut out = [K::zero(), K::zero(), K::zero()];
        for (lk, row) in l.iter().zip(rows.iter()) {
            for j in 0..3 {
                out[j] = out[j].add(&lk.mul(&row[j]));
            }
        }
        out
    }
}

/// Parametrization built so far: `x = c·s^n`, `y = S(s) + d·s^m·w` where
/// `w` is the still unknown part, of positive order.
#[derive(Clone)]
pub(crate) struct Param<K> {
    c: K,
    n: usize,
    s: Vec<K>,
    m: usize,
    d: K,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Sub {
    p: u32,
    q: u32,
    u: u32,
    v: u32,
    delta: u32,
}

impl<K: Scalar> Param<K> {
    fn start() -> Self {
        Param {
            c: K::one(),
            n: 1,
            s: Vec::new(),
            m: 0,
            d: K::one(),
        }
    }

    fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Param<L> {
        Param {
            c: f(&self.c),
            n: self.n,
            s: self.s.iter().map(&f).collect(),
            m: self.m,
            d: f(&self.d),
        }
    }

    fn advance(&self, sub: &Sub, xi: &K) -> Self {
        let q = sub.q as usize;
        let xv = xi.pow(sub.v);
        let c = self.c.mul(&xv.pow(self.n as u32));
        let n = q * self.n;
        let m = q * self.m + sub.p as usize;
        let mut s = vec![K::zero(); m + 1];
        let mut pw = K::one();
        for (k, b) in self.s.iter().enumerate() {
            s[k * q] = b.mul(&pw);
            pw = pw.mul(&xv);
        }
        let d = self.d.mul(&xv.pow(self.m as u32));
        s[m] = s[m].add(&d.mul(&xi.pow(sub.u)));
        Param { c, n, s, m, d }
    }

    fn coef(&self, k: usize) -> K {
        self.s.get(k).cloned().unwrap_or_else(K::zero)
    }

    /// Multiplicity, local tangent direction and tangent order, once the
    /// known part of the series fixes them. With `exact` the unknown part is
    /// zero.
    fn read_off(&self, exact: bool) -> Result<Option<(usize, [K; 2], usize)>> {
        let known = if exact {
            self.s.len().max(self.n + 1)
        } else {
            self.m
        };
        let mut ord = None;
        for k in 0..=known.min(self.n) {
            if !self.coef(k).decide_zero()? {
                ord = Some(k);
                break;
            }
        }
        if let Some(o) = ord {
            if o < self.n {
                // The branch is tangent to the line s = 0.
                return Ok(Some((o, [K::zero(), K::one()], self.n)));
            }
        }
        if self.n > known {
            return Ok(None);
        }
        let a = self.coef(self.n);
        for k in self.n + 1..=known {
            if !self.coef(k).decide_zero()? {
                return Ok(Some((self.n, [self.c.clone(), a], k)));
            }
        }
        if exact {
            return Err(Error::LineIsComponent);
        }
        Ok(None)
    }
}

/// Coefficient rings in which edge polynomials can be solved.
pub trait LocalField: Scalar {
    /// Roots in the ring with multiplicities, and the square-free factors
    /// (with multiplicity) that have no root in it.
    #[allow(clippy::type_complexity)]
    fn edge_roots(phi: &UPoly<Self>) -> Result<(Vec<(Self, usize)>, Vec<(UPoly<Self>, usize)>)>;

    /// Continue an expansion at a root of `factor`, adjoining it.
    fn expand_at_new_root(job: &Job<Self>, _factor: &UPoly<Self>) -> Result<Vec<CurveBranch>> {
        let _ = job;
        Err(Error::TowerExceeded)
    }

    fn to_gaussian(&self) -> Option<GaussianRational>;
}

/// State handed over when an expansion must move to an extension ring.
pub struct Job<K> {
    ctx: Ctx<K>,
    g: MPoly<K>,
    param: Param<K>,
    sub: Sub,
    depth: usize,
    weight: usize,
}

#[derive(Clone)]
struct Ctx<K> {
    chart: LocalChart<K>,
    limit: usize,
    center: String,
}

impl LocalField for GaussianRational {
    fn edge_roots(phi: &UPoly<Q>) -> Result<(Vec<(Q, usize)>, Vec<(UPoly<Q>, usize)>)> {
        let mut roots = Vec::new();
        let mut rest = Vec::new();
        for (factor, mult) in phi.squarefree_decomposition()? {
            let mut left = factor.clone();
            for r in factor.gaussian_roots() {
                left = left.exact_div(&UPoly::linear_root(&r))?;
                roots.push((r, mult));
            }
            if left.deg0() > 0 {
                rest.push((left, mult));
            }
        }
        Ok((roots, rest))
    }

    fn expand_at_new_root(job: &Job<Q>, factor: &UPoly<Q>) -> Result<Vec<CurveBranch>> {
        let lift = |c: &Q| ExtElem::scalar(c.clone());
        let results = run_split(Modulus::new(factor.clone())?, |m| {
            let xi = ExtElem::generator(m);
            let ctx = Ctx {
                chart: job.ctx.chart.map(lift),
                limit: job.ctx.limit,
                center: job.ctx.center.clone(),
            };
            step(
                &ctx,
                &job.g.map_coeffs(lift),
                &job.param.map(lift),
                &job.sub,
                &xi,
                job.depth,
                job.weight * m.degree(),
            )
        })?;
        Ok(results.into_iter().flat_map(|(_, v)| v).collect())
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        Some(self.clone())
    }
}

impl LocalField for ExtElem {
    fn edge_roots(
        phi: &UPoly<ExtElem>,
    ) -> Result<(Vec<(ExtElem, usize)>, Vec<(UPoly<ExtElem>, usize)>)> {
        let mut roots = Vec::new();
        for (factor, mult) in phi.squarefree_decomposition()? {
            match factor.degree() {
                Some(1) => roots.push((factor.coeff(0).neg().div(&factor.coeff(1))?, mult)),
                _ => {
                    // Still solvable when the factor happens to split over Q(i).
                    let coeffs: Option<Vec<Q>> =
                        factor.coeffs().iter().map(|c| c.as_gaussian()).collect();
                    let Some(coeffs) = coeffs else {
                        return Err(Error::TowerExceeded);
                    };
                    let rs = UPoly::new(coeffs).gaussian_roots();
                    if rs.len() != factor.deg0() {
                        return Err(Error::TowerExceeded);
                    }
                    roots.extend(rs.into_iter().map(|r| (ExtElem::scalar(r), mult)));
                }
            }
        }
        Ok((roots, Vec::new()))
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        self.as_gaussian()
    }
}

/// Drop the terms whose coefficient vanishes in every component.
fn clean<K: Scalar>(g: &MPoly<K>) -> Result<MPoly<K>> {
    let mut out = MPoly::zero(g.vars());
    for (m, c) in g.terms() {
        if !c.decide_zero()? {
            out.add_term(m.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `ord_w g(0, w)`, or `None` when `s` divides `g`.
fn order_on_axis<K: Scalar>(g: &MPoly<K>) -> Option<usize> {
    g.terms()
        .filter(|(m, _)| m.0[0] == 0)
        .map(|(m, _)| m.0[1] as usize)
        .min()
}

struct Edge {
    start: (u32, u32),
    p: u32,
    q: u32,
    len: u32,
}

/// Lower-left Newton polygon edges between the `s`-axis and the point `(0, r)`.
fn newton_edges<K: Scalar>(g: &MPoly<K>, r: usize) -> Vec<Edge> {
    let mut low: Vec<Option<u32>> = vec![None; r + 1];
    for (m, _) in g.terms() {
        let j = m.0[1] as usize;
        if j <= r {
            low[j] = Some(low[j].map_or(m.0[0], |i: u32| i.min(m.0[0])));
        }
    }
    let mut edges = Vec::new();
    let Some(i0) = low[0] else { return edges };
    let mut cur = (i0, 0u32);
    while (cur.1 as usize) < r {
        let mut best: Option<(u32, u32)> = None;
        for (j, i) in low.iter().enumerate().skip(cur.1 as usize + 1) {
            let Some(i) = *i else { continue };
            let j = j as u32;
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    // Compare slopes (i - ci)/(j - cj); prefer the longer edge on ties.
                    let lhs = (i as i64 - cur.0 as i64) * (bj as i64 - cur.1 as i64);
                    let rhs = (bi as i64 - cur.0 as i64) * (j as i64 - cur.1 as i64);
                    if lhs <= rhs {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        let (bi, bj) = best.expect("the point (0, r) is present");
        let di = cur.0 - bi;
        let dj = bj - cur.1;
        let h = num_integer::gcd(di, dj);
        edges.push(Edge {
            start: cur,
            p: di / h,
            q: dj / h,
            len: h,
        });
        cur = (bi, bj);
    }
    edges
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for t in 0..k as i64 {
        acc = acc * (n as i64 - t) / (t + 1);
    }
    acc
}

/// `g(ξ^v·s^q, s^p·(ξ^u + w)) / s^δ`.
fn substitute<K: Scalar>(g: &MPoly<K>, sub: &Sub, xi: &K) -> MPoly<K> {
    let xu = xi.pow(sub.u);
    let xv = xi.pow(sub.v);
    let mut out = MPoly::zero(g.vars());
    for (m, a) in g.terms() {
        let (i, j) = (m.0[0], m.0[1]);
        let e = sub.q * i + sub.p * j - sub.delta;
        let coef = a.mul(&xv.pow(i));
        for l in 0..=j {
            let c = coef.mul(&K::from_int(binomial(j, l))).mul(&xu.pow(j - l));
            out.add_term(Monomial(vec![e, l]), c);
        }
    }
    out
}

fn step<K: LocalField>(
    ctx: &Ctx<K>,
    g: &MPoly<K>,
    param: &Param<K>,
    sub: &Sub,
    xi: &K,
    depth: usize,
    weight: usize,
) -> Result<Vec<CurveBranch>> {
    let g1 = clean(&substitute(g, sub, xi))?;
    let p1 = param.advance(sub, xi);
    let r1 = order_on_axis(&g1)
        .ok_or_else(|| Error::EliminationFailed("lost the branch axis".into()))?;
    expand(ctx, g1, p1, r1, depth + 1, weight)
}

fn finish<K: LocalField>(
    ctx: &Ctx<K>,
    param: &Param<K>,
    data: (usize, [K; 2], usize),
    weight: usize,
) -> Result<CurveBranch> {
    let (mult, dir, order) = data;
    let local = [dir[1].neg(), dir[0].clone(), K::zero()];
    let global = ctx.chart.line_to_global(&local);
    let at_infinity = global[0].decide_zero()? && global[1].decide_zero()?;
    let line = ProjLine { coeffs: global };
    let tangent_line = match (
        line.coeffs[0].to_gaussian(),
        line.coeffs[1].to_gaussian(),
        line.coeffs[2].to_gaussian(),
    ) {
        (Some(a), Some(b), Some(c)) => ProjLine::new([a, b, c])
            .ok()
            .and_then(|l| l.normalized().ok()),
        _ => None,
    };
    let tangent = match &tangent_line {
        Some(l) => l.to_string(),
        None => line
            .normalized()
            .map(|l| l.to_string())
            .unwrap_or_else(|_| line.to_string()),
    };
    let series_prefix = param
        .s
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.to_string()))
        .collect();
    Ok(CurveBranch {
        center: ctx.center.clone(),
        mult,
        tangent,
        tangent_order: order,
        tangent_at_infinity: at_infinity,
        conjugates: weight,
        x_param: (param.n, param.c.to_string()),
        series_prefix,
        tangent_line,
    })
}

fn expand<K: LocalField>(
    ctx: &Ctx<K>,
    g: MPoly<K>,
    param: Param<K>,
    r: usize,
    depth: usize,
    weight: usize,
) -> Result<Vec<CurveBranch>> {
    if depth > ctx.limit {
        return Err(Error::TruncationInsufficient(ctx.limit));
    }
    let mut out = Vec::new();
    let mut g = g;
    let mut r = r;
    if !g.terms().any(|(m, _)| m.0[1] == 0) {
        // w = 0 is an exact root: the expansion terminates here.
        let data = param.read_off(true)?.ok_or(Error::LineIsComponent)?;
        out.push(finish(ctx, &param, data, weight)?);
        let w = MPoly::var(g.vars(), 1);
        g = g
            .div_exact(&w)?
            .ok_or_else(|| Error::EliminationFailed("w does not divide".into()))?;
        r -= 1;
        if r == 0 {
            return Ok(out);
        }
        if !g.terms().any(|(m, _)| m.0[1] == 0) {
            return Err(Error::InvalidInput(
                "curve is not reduced at this point".into(),
            ));
        }
    }
    if r == 1 && depth > 0 {
        if let Some(data) = param.read_off(false)? {
            out.push(finish(ctx, &param, data, weight)?);
            return Ok(out);
        }
    }
    for edge in newton_edges(&g, r) {
        let (i1, j1) = edge.start;
        let phi = UPoly::new(
            (0..=edge.len)
                .map(|k| g.coeff(&Monomial(vec![i1 - edge.p * k, j1 + edge.q * k])))
                .collect(),
        );
        let v = (0..edge.q)
            .find(|v| (1 + v * edge.p) % edge.q == 0)
            .expect("coprime edge slope");
        let sub = Sub {
            p: edge.p,
            q: edge.q,
            u: (1 + v * edge.p) / edge.q,
            v,
            delta: edge.q * i1 + edge.p * j1,
        };
        let (roots, rest) = K::edge_roots(&phi)?;
        for (xi, _) in roots {
            out.extend(step(ctx, &g, &param, &sub, &xi, depth, weight)?);
        }
        for (factor, _) in rest {
            let job = Job {
                ctx: ctx.clone(),
                g: g.clone(),
                param: param.clone(),
                sub,
                depth,
                weight,
            };
            out.extend(K::expand_at_new_root(&job, &factor)?);
        }
    }
    Ok(out)
}

/// All branches of `V(f)` at the point `p` (which must lie on the curve),
/// with at most `limit` Newton steps along any branch.
pub fn branches_in<K: LocalField>(
    f: &Poly,
    p: &Triple<K>,
    limit: usize,
) -> Result<Vec<CurveBranch>> {
    if !eval_in(f, p).decide_zero()? {
        return Err(Error::NotOnCurve);
    }
    let chart = LocalChart::at(p)?.ok_or_else(|| Error::InvalidInput("zero point".into()))?;
    let g = clean(&chart.local_poly(f))?;
    let r = order_on_axis(&g).ok_or(Error::LineIsComponent)?;
    let center = format!("[{}:{}:{}]", p[0], p[1], p[2]);
    let ctx = Ctx {
        chart,
        limit,
        center,
    };
    expand(&ctx, g, Param::start(), r, 0, 1)
}

/// Lowest degree of the local equation at `p`; 0 when `p` is off the curve.
pub fn multiplicity_in<K: Scalar>(f: &Poly, p: &Triple<K>) -> Result<usize> {
    let chart = LocalChart::at(p)?.ok_or_else(|| Error::InvalidInput("zero point".into()))?;
    let g = clean(&chart.local_poly(f))?;
    Ok(g.terms()
        .map(|(m, _)| m.degree() as usize)
        .min()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    fn pt(a: i64, b: i64, c: i64) -> Triple<Q> {
        [Q::from_int(a), Q::from_int(b), Q::from_int(c)]
    }

    #[test]
    fn edges_of_the_cusp() {
        let g = parse_poly("w^2-s^3", &Vars::new(&["s", "w"])).unwrap();
        let e = newton_edges(&g, 2);
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].p, e[0].q, e[0].len), (3, 2, 1));
    }

    #[test]
    fn cusp_branch() {
        let b = branches_in(&xyz("y^2*z-x^3"), &pt(0, 0, 1), 36).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].mult, b[0].tangent_order), (2, 3));
        assert_eq!(b[0].tangent_line, Some(ProjLine::from_ints(0, 1, 0)));
    }

    #[test]
    fn node_branches_have_the_two_tangents() {
        let b = branches_in(&xyz("y^2*z-x^2*z-x^3"), &pt(0, 0, 1), 36).unwrap();
        assert_eq!(b.len(), 2);
        let mut tangents: Vec<ProjLine> =
            b.iter().map(|x| x.tangent_line.clone().unwrap()).collect();
        tangents.sort_by_key(|l| l.to_string());
        assert!(tangents.contains(&ProjLine::from_ints(1, -1, 0)));
        assert!(tangents.contains(&ProjLine::from_ints(1, 1, 0)));
        for x in &b {
            assert_eq!((x.mult, x.tangent_order), (1, 2));
        }
    }

    #[test]
    fn irrational_tangents_use_one_extension() {
        // Node with tangents y = ±√2·x.
        let b = branches_in(&xyz("y^2*z-2*x^2*z-x^3"), &pt(0, 0, 1), 36).unwrap();
        let total: usize = b.iter().map(|x| x.conjugates * x.mult).sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn tacnode_branches_separate_late() {
        // y^2 = x^4 + x^5: two smooth branches tangent to y = 0 with contact 2.
        let b = branches_in(&xyz("y^2*z^3-x^4*z-x^5"), &pt(0, 0, 1), 36).unwrap();
        assert_eq!(b.len(), 2);
        for x in &b {
            assert_eq!((x.mult, x.tangent_order), (1, 2));
            assert_eq!(x.tangent_line, Some(ProjLine::from_ints(0, 1, 0)));
        }
    }

    #[test]
    fn flex_at_infinity_of_the_cusp() {
        let b = branches_in(&xyz("y^2*z-x^3"), &pt(0, 1, 0), 36).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].mult, b[0].tangent_order), (1, 3));
        assert!(b[0].tangent_at_infinity);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity_in(&xyz("y^2*z-x^3"), &pt(0, 0, 1)).unwrap(), 2);
        assert_eq!(
            multiplicity_in(&xyz("x^2+y^2-z^2"), &pt(1, 0, 1)).unwrap(),
            1
        );
        assert_eq!(
            multiplicity_in(&xyz("x^2+y^2-z^2"), &pt(1, 1, 1)).unwrap(),
            0
        );
    }
}
