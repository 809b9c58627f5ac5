use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub(crate) struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 1..n {
        let jf = j as f64;
        let p2 = ((2.0 * jf + 1.0) * x * p1 - jf * p0) / (jf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_rule(n: usize) -> GlRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    GlRule { nodes, weights }
}

fn rule(n: usize) -> Arc<GlRule> {
    static CACHE: Lazy<Mutex<HashMap<usize, Arc<GlRule>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(compute_rule(n)))
        .clone()
}

fn apply_rule<F: Fn(f64) -> Complex64>(f: &F, x0: f64, x1: f64, rule: &GlRule) -> Complex64 {
    let mid = 0.5 * (x0 + x1);
    let hw = 0.5 * (x1 - x0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += *w * f(mid + hw * t);
    }
    acc * hw
}

/// Integral over one segment, with the difference between two quadrature
/// orders as the error estimate.
fn segment<F: Fn(f64) -> Complex64>(f: &F, x0: f64, x1: f64) -> (Complex64, f64) {
    let lo = apply_rule(f, x0, x1, &rule(24));
    let hi = apply_rule(f, x0, x1, &rule(48));
    (hi, (hi - lo).norm())
}

pub(crate) struct Panelled {
    pub value: Complex64,
    pub est_error: f64,
    pub panels: usize,
}

/// Integrate f over [start, end] with panels that double in width away from
/// the left endpoint until `max_width` caps them. The geometric start keeps
/// panels short where the integrand still feels the origin, and the cap keeps
/// enough nodes per oscillation cycle once it does not.
pub(crate) fn ray<F: Fn(f64) -> Complex64>(f: &F, start: f64, end: f64, max_width: f64) -> Panelled {
    let mut t = start;
    let mut value = Complex64::new(0.0, 0.0);
    let mut est_error = 0.0;
    let mut panels = 0;
    while t < end {
        let width = t.min(max_width);
        let t1 = (t + width).min(end);
        let (v, e) = segment(f, t, t1);
        value += v;
        est_error += e;
        t = t1;
        panels += 1;
    }
    Panelled {
        value,
        est_error,
        panels,
    }
}

/// Integral over the arc parameter range [0, pi] at two fixed orders.
pub(crate) fn arc<F: Fn(f64) -> Complex64>(f: &F) -> (Complex64, f64) {
    let lo = apply_rule(f, 0.0, std::f64::consts::PI, &rule(64));
    let hi = apply_rule(f, 0.0, std::f64::consts::PI, &rule(128));
    (hi, (hi - lo).norm())
}
