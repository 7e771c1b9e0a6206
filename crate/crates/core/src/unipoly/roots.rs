//! Simultaneous root finding by the Aberth–Ehrlich iteration.
//!
//! Starting points come from the upper convex hull of `(k, log|a_k|)`
//! (the Newton polygon), which places them on circles whose radii match the
//! moduli of the roots. Points with `|z| > 1` are evaluated through the
//! reversed polynomial so that high degrees do not overflow.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

/// Hard cap on Aberth sweeps.
pub const MAX_ITERATIONS: usize = 500;
/// Relative update size below which a root is considered converged.
pub const UPDATE_TOLERANCE: f64 = 1e-14;
/// Roots closer than this, or with overlapping inclusion disks, are grouped
/// into one cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Root {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// `|p(z)|` relative to `sum |a_k| |z|^k`.
    pub residual: f64,
    /// Radius of an inclusion disk around `value`.
    pub error_bound: f64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// Indices into `roots`, grouped within [`CLUSTER_TOLERANCE`].
    pub clusters: Vec<Vec<usize>>,
    pub iterations: usize,
    pub converged: bool,
}

impl RootSet {
    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|r| r.value)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

struct Poly<'a> {
    a: &'a [Complex64],
    abs: Vec<f64>,
}

struct Eval {
    /// p'(z) / p(z)
    dlog: Complex64,
    /// p(z) / p'(z)
    newton: Complex64,
    /// |p(z)| / sum |a_k| |z|^k
    residual: f64,
    /// log(|p(z)| + rounding bound)
    log_abs_p: f64,
}

impl<'a> Poly<'a> {
    fn new(a: &'a [Complex64]) -> Self {
        Poly {
            a,
            abs: a.iter().map(|c| c.norm()).collect(),
        }
    }

    fn degree(&self) -> usize {
        self.a.len() - 1
    }

    fn eval(&self, z: Complex64) -> Eval {
        let n = self.degree();
        let gamma = 4.0 * (n as f64 + 1.0) * f64::EPSILON;
        let r = z.norm();
        if r <= 1.0 {
            let mut p = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            for k in (0..=n).rev() {
                dp = dp * z + p;
                p = p * z + self.a[k];
                bound = bound * r + self.abs[k];
            }
            Eval {
                dlog: safe_div(dp, p),
                newton: safe_div(p, dp),
                residual: p.norm() / bound,
                log_abs_p: (p.norm() + gamma * bound).ln(),
            }
        } else {
            // p(z) = z^n q(w), q(w) = sum a_{n-k} w^k, w = 1/z
            let w = z.inv();
            let rw = 1.0 / r;
            let mut q = Complex64::new(0.0, 0.0);
            let mut dq = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            for k in 0..=n {
                dq = dq * w + q;
                q = q * w + self.a[k];
                bound = bound * rw + self.abs[k];
            }
            // p'/p = w (n - w q'/q)
            let dlog = w * (Complex64::new(n as f64, 0.0) - w * safe_div(dq, q));
            let newton = if dlog.norm() == 0.0 {
                Complex64::new(f64::MAX.sqrt(), 0.0)
            } else {
                cdiv(Complex64::new(1.0, 0.0), dlog)
            };
            Eval {
                dlog,
                newton,
                residual: q.norm() / bound,
                log_abs_p: n as f64 * r.ln() + (q.norm() + gamma * bound).ln(),
            }
        }
    }
}

fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    if b.norm() == 0.0 {
        if a.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            a * f64::MAX.sqrt()
        }
    } else {
        cdiv(a, b)
    }
}

/// Smith's division; `a / b` in `num_complex` squares `|b|` and underflows.
pub(crate) fn cdiv(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let den = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / den, (a.im - a.re * r) / den)
    } else {
        let r = b.re / b.im;
        let den = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / den, (a.im * r - a.re) / den)
    }
}

fn initial_guesses(abs: &[f64]) -> Vec<Complex64> {
    let n = abs.len() - 1;
    let pts: Vec<(usize, f64)> = abs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0.0)
        .map(|(k, &c)| (k, c.ln()))
        .collect();
    // upper convex hull, monotone chain
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let sigma = 0.7;
    let mut out = Vec::with_capacity(n);
    for (edge, w) in hull.windows(2).enumerate() {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let count = k2 - k1;
        let radius = ((y1 - y2) / count as f64).exp();
        for j in 0..count {
            let theta = TAU * j as f64 / count as f64 + TAU * edge as f64 / n as f64 + sigma;
            out.push(Complex64::from_polar(radius, theta));
        }
    }
    out
}

/// All roots of `sum a_k z^k` (coefficients low to high). Exact zero
/// leading coefficients are trimmed; zero roots are split off exactly.
pub fn find_roots_complex(coeffs: &[Complex64]) -> RootSet {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].norm() == 0.0 {
        hi -= 1;
    }
    let coeffs = &coeffs[..hi];
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots: Vec<Root> = (0..zeros)
        .map(|_| Root {
            value: Complex64::new(0.0, 0.0),
            residual: 0.0,
            error_bound: 0.0,
        })
        .collect();
    if coeffs.len() <= zeros + 1 {
        return finish(roots, 0, true);
    }
    let a = &coeffs[zeros..];
    let poly = Poly::new(a);
    let n = poly.degree();

    if n == 1 {
        let z = -a[0] / a[1];
        let e = poly.eval(z);
        roots.push(Root {
            value: z,
            residual: e.residual,
            error_bound: e.newton.norm(),
        });
        return finish(roots, 0, true);
    }

    let mut z = initial_guesses(&poly.abs);
    let mut frozen = vec![false; n];
    let backward_tol = 8.0 * n as f64 * f64::EPSILON;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && frozen.iter().any(|f| !f) {
        iterations += 1;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let zi = z[i];
            let e = poly.eval(zi);
            if e.residual <= backward_tol {
                frozen[i] = true;
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s += (zi - zj).inv();
                }
            }
            // N / (1 - N S) = 1 / (p'/p - S)
            let denom = e.dlog - s;
            let delta = if denom.norm() == 0.0 { e.newton } else { cdiv(Complex64::new(1.0, 0.0), denom) };
            if !delta.re.is_finite() || !delta.im.is_finite() {
                continue;
            }
            z[i] = zi - delta;
            if delta.norm() <= UPDATE_TOLERANCE * zi.norm().max(1.0) {
                frozen[i] = true;
            }
        }
    }
    let converged = frozen.iter().all(|&f| f);

    // Weierstrass inclusion radii n |p(z_i)| / (|a_n| prod |z_i - z_j|),
    // intersected with the Newton disk n |p/p'|.
    let log_lead = poly.abs[n].ln();
    for i in 0..n {
        let e = poly.eval(z[i]);
        let mut log_den = log_lead;
        for (j, &zj) in z.iter().enumerate() {
            if j != i {
                log_den += (z[i] - zj).norm().ln();
            }
        }
        let weierstrass = (n as f64).ln() + e.log_abs_p - log_den;
        let newton = n as f64 * e.newton.norm();
        let bound = weierstrass.exp().min(newton);
        roots.push(Root {
            value: z[i],
            residual: e.residual,
            error_bound: if bound.is_finite() { bound } else { f64::INFINITY },
        });
    }
    finish(roots, iterations, converged)
}

fn finish(roots: Vec<Root>, iterations: usize, converged: bool) -> RootSet {
    let clusters = cluster(&roots);
    RootSet {
        roots,
        clusters,
        iterations,
        converged,
    }
}

fn cluster(roots: &[Root]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let max_err = roots.iter().map(|r| r.error_bound).filter(|e| e.is_finite()).fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| roots[a].value.re.total_cmp(&roots[b].value.re));
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if roots[j].value.re - roots[i].value.re > CLUSTER_TOLERANCE.max(max_err * 2.0) {
                break;
            }
            let reach = CLUSTER_TOLERANCE.max(roots[i].error_bound + roots[j].error_bound);
            if (roots[i].value - roots[j].value).norm() <= reach {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}
