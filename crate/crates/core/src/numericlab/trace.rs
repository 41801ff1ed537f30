//! Real points of a caustic for plotting.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::algebra::mpoly::Poly;
use crate::error::{Error, Result};
use crate::numericlab::eval::eval_triple_complex;
use crate::numericlab::sample::slice_roots;
use crate::projgeom::{self, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.x0 && p[0] <= self.x1 && p[1] >= self.y0 && p[1] <= self.y1
    }

    fn diagonal(&self) -> f64 {
        ((self.x1 - self.x0).powi(2) + (self.y1 - self.y0).powi(2)).sqrt()
    }
}

impl std::str::FromStr for Window {
    type Err = Error;

    /// `x0,x1,y0,y1`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInput(format!("window: {e}")))?;
        if v.len() != 4 || !(v[0] < v[1] && v[2] < v[3]) {
            return Err(Error::InvalidInput(
                "window must be x0,x1,y0,y1 with x0<x1, y0<y1".into(),
            ));
        }
        Ok(Window {
            x0: v[0],
            x1: v[1],
            y0: v[2],
            y1: v[3],
        })
    }
}

pub type Segment = Vec<[f64; 2]>;

const IMAG_TOL: f64 = 1e-8;

/// Real roots of the vertical slices of `C` across the window, chained into
/// arcs by nearest-neighbour matching between consecutive slices.
fn real_arcs(f: &Poly, w: &Window, resolution: usize) -> Vec<Vec<[f64; 2]>> {
    let cols = resolution.max(2);
    let dx = (w.x1 - w.x0) / (cols - 1) as f64;
    let link = (4.0 * dx).max(0.05 * (w.y1 - w.y0));
    let mut open: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut done: Vec<Vec<[f64; 2]>> = Vec::new();
    for k in 0..cols {
        let x = w.x0 + dx * k as f64;
        let mut ys: Vec<f64> = slice_roots(f, Complex64::new(x, 0.0))
            .unwrap_or_default()
            .into_iter()
            .filter(|y| y.im.abs() < IMAG_TOL * (1.0 + y.re.abs()) && y.re >= w.y0 && y.re <= w.y1)
            .map(|y| y.re)
            .collect();
        ys.sort_by(f64::total_cmp);
        let mut next: Vec<Vec<[f64; 2]>> = Vec::new();
        let mut used = vec![false; ys.len()];
        for mut arc in open.drain(..) {
            let last = arc.last().expect("arcs are nonempty")[1];
            let best = (0..ys.len())
                .filter(|&i| !used[i] && (ys[i] - last).abs() < link)
                .min_by(|&a, &b| (ys[a] - last).abs().total_cmp(&(ys[b] - last).abs()));
            match best {
                Some(i) => {
                    used[i] = true;
                    arc.push([x, ys[i]]);
                    next.push(arc);
                }
                None => done.push(arc),
            }
        }
        for (i, y) in ys.iter().enumerate() {
            if !used[i] {
                next.push(vec![[x, *y]]);
            }
        }
        open = next;
    }
    done.extend(open);
    done
}

/// Caustic points of the real points of `C` in the window, as polylines.
/// Images that are complex, at infinity, outside the window or far from
/// their predecessor start a new segment.
pub fn real_trace(f: &Poly, s: &ProjPoint, w: &Window, resolution: usize) -> Result<Vec<Segment>> {
    if !f.is_real() {
        return Err(Error::InvalidInput(
            "real traces need real coefficients".into(),
        ));
    }
    let phi = projgeom::phi_components(f, s)?;
    let arcs = real_arcs(f, w, resolution);
    if arcs.is_empty() {
        return Err(Error::NoRealPoints);
    }
    let jump = 0.25 * w.diagonal();
    let mut out = Vec::new();
    for arc in arcs {
        let mut seg: Segment = Vec::new();
        for p in arc {
            let m = [
                Complex64::new(p[0], 0.0),
                Complex64::new(p[1], 0.0),
                Complex64::new(1.0, 0.0),
            ];
            let (v, rel) = eval_triple_complex(&phi, &m);
            let ok =
                rel > 1e-12 && v[2].norm() > 1e-12 * v.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let img = if ok {
                let a = v[0] / v[2];
                let b = v[1] / v[2];
                let real = a.im.abs() < IMAG_TOL * (1.0 + a.re.abs())
                    && b.im.abs() < IMAG_TOL * (1.0 + b.re.abs());
                Some([a.re, b.re]).filter(|q| real && w.contains(*q))
            } else {
                None
            };
            match img {
                Some(q)
                    if seg.last().is_none_or(|l| {
                        ((l[0] - q[0]).powi(2) + (l[1] - q[1]).powi(2)).sqrt() < jump
                    }) =>
                {
                    seg.push(q)
                }
                Some(q) => {
                    if seg.len() > 1 {
                        out.push(std::mem::take(&mut seg));
                    }
                    seg = vec![q];
                }
                None => {
                    if seg.len() > 1 {
                        out.push(std::mem::take(&mut seg));
                    }
                    seg.clear();
                }
            }
        }
        if seg.len() > 1 {
            out.push(seg);
        }
    }
    Ok(out)
}

/// Rows `x,y,segment_id`.
pub fn to_csv(segments: &[Segment]) -> String {
    let mut s = String::from("x,y,segment_id\n");
    for (k, seg) in segments.iter().enumerate() {
        for p in seg {
            let _ = writeln!(s, "{},{},{}", p[0], p[1], k);
        }
    }
    s
}

/// One path element per segment; the y axis is flipped so that the plot is
/// upright.
pub fn to_svg(segments: &[Segment], w: &Window) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        w.x0,
        -w.y1,
        w.x1 - w.x0,
        w.y1 - w.y0
    );
    for seg in segments {
        let mut d = String::new();
        for (k, p) in seg.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, p[0], -p[1]);
        }
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
            d.trim_end(),
            (w.x1 - w.x0) / 500.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::Vars;
    use crate::algebra::parse::parse_poly;
    use crate::numericlab::eval::eval_complex;

    fn xyz(s: &str) -> Poly {
        parse_poly(s, &Vars::xyz()).unwrap()
    }

    #[test]
    fn window_parses() {
        let w: Window = "-2,2,-1.5,3".parse().unwrap();
        assert_eq!(
            w,
            Window {
                x0: -2.0,
                x1: 2.0,
                y0: -1.5,
                y1: 3.0
            }
        );
        assert!("1,0,0,1".parse::<Window>().is_err());
    }

    #[test]
    fn circle_trace_lies_on_the_caustic() {
        let f = xyz("x^2+y^2-z^2");
        let s = ProjPoint::from_ints(2, 1, 1);
        let w: Window = "-2,2,-2,2".parse().unwrap();
        let segs = real_trace(&f, &s, &w, 200).unwrap();
        assert!(!segs.is_empty());
        let opts = crate::implicitize::ImageOptions {
            seed: 1,
            trials: 0,
            second_chart: false,
        };
        let g = crate::implicitize::caustic_implicit(&f, &s, &opts)
            .unwrap()
            .equation;
        for p in segs.iter().flatten() {
            let pt = [
                Complex64::new(p[0], 0.0),
                Complex64::new(p[1], 0.0),
                Complex64::new(1.0, 0.0),
            ];
            let (v, sc) = eval_complex(&g, &pt);
            assert!(v.norm() < 1e-6 * sc, "{p:?}");
        }
        let csv = to_csv(&segs);
        assert!(csv.starts_with("x,y,segment_id\n"));
        assert!(to_svg(&segs, &w).contains("<path"));
    }
}
