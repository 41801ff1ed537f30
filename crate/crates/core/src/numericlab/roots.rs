//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Relative correction size at which a root counts as converged.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-14,
            max_iter: 200,
        }
    }
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) of `sum coeffs[k] z^k`.
///
/// Returns `None` when the iteration does not converge within
/// `opts.max_iter` sweeps or the input has no nonzero coefficient.
pub fn poly_roots(coeffs: &[Complex64], opts: &RootOptions) -> Option<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Some(out);
    }
    let lc = c[n];
    for a in c.iter_mut() {
        *a /= lc;
    }
    if n == 1 {
        out.push(-c[0]);
        return Some(out);
    }
    // Initial guesses on a circle whose radius bounds the root moduli.
    let radius = (0..n)
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4,
            )
        })
        .collect();
    let mut done = vec![false; n];
    for _ in 0..opts.max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&c, z[k]);
            let scale: f64 = c
                .iter()
                .rev()
                .fold(0.0, |acc, a| acc * z[k].norm() + a.norm());
            if p.norm() <= 4.0 * f64::EPSILON * scale {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= opts.tol * z[k].norm().max(1.0) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            out.extend(z);
            return Some(out);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_and_zero_root() {
        // z (z^2 + 1)
        let r = poly_roots(&[c(0.0), c(1.0), c(0.0), c(1.0)], &RootOptions::default()).unwrap();
        assert_eq!(r.len(), 3);
        let mut ims: Vec<f64> = r.iter().map(|z| z.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(
            (ims[0] + 1.0).abs() < 1e-12 && ims[1].abs() < 1e-12 && (ims[2] - 1.0).abs() < 1e-12
        );
    }

    #[test]
    fn wilkinson_ten() {
        let mut p = vec![c(1.0)];
        for r in 1..=10 {
            let mut q = vec![c(0.0); p.len() + 1];
            for (k, a) in p.iter().enumerate() {
                q[k + 1] += *a;
                q[k] -= *a * r as f64;
            }
            p = q;
        }
        let mut roots: Vec<f64> = poly_roots(&p, &RootOptions::default())
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, r) in roots.iter().enumerate() {
            assert!((r - (k + 1) as f64).abs() < 1e-6, "{roots:?}");
        }
    }
}
