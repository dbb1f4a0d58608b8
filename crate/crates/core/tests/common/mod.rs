#![allow(dead_code)]

use std::sync::Arc;

use dsogda::problems::{make_instance, InstanceSpec, SetShape};
use dsogda::{ConvexSet, InnerSolution, MinimaxProblem, Objective, StructureInfo};

/// `f(x, y) = x y` in one dimension.
#[derive(Debug)]
pub struct Product;

impl Objective for Product {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        x[0] * y[0]
    }
    fn grad_x(&self, _x: &[f64], y: &[f64]) -> Vec<f64> {
        vec![y[0]]
    }
    fn grad_y(&self, x: &[f64], _y: &[f64]) -> Vec<f64> {
        vec![x[0]]
    }
}

/// `f = 0`.
#[derive(Debug)]
pub struct Flat(pub usize, pub usize);

impl Objective for Flat {
    fn value(&self, _x: &[f64], _y: &[f64]) -> f64 {
        0.0
    }
    fn grad_x(&self, x: &[f64], _y: &[f64]) -> Vec<f64> {
        vec![0.0; x.len()]
    }
    fn grad_y(&self, _x: &[f64], y: &[f64]) -> Vec<f64> {
        vec![0.0; y.len()]
    }
    fn argmax_y(&self, _x: &[f64]) -> Option<InnerSolution> {
        Some(InnerSolution { point: vec![0.0; self.1], unique: false })
    }
}

pub fn product_on(set_x: ConvexSet, set_y: ConvexSet) -> MinimaxProblem {
    MinimaxProblem::new("product", Arc::new(Product), set_x, set_y, StructureInfo::new(1.0).unwrap().convex_concave())
}

pub fn product_unconstrained() -> MinimaxProblem {
    product_on(ConvexSet::whole(1).unwrap(), ConvexSet::whole(1).unwrap())
}

pub fn flat(n: usize, d: usize) -> MinimaxProblem {
    MinimaxProblem::new(
        "flat",
        Arc::new(Flat(n, d)),
        ConvexSet::whole(n).unwrap(),
        ConvexSet::whole(d).unwrap(),
        StructureInfo::new(1.0).unwrap().convex_concave(),
    )
}

/// `f = x y` on `[-1, 1]^2`, via the bilinear family.
pub fn unit_bilinear() -> MinimaxProblem {
    make_instance(&InstanceSpec::BilinearCc {
        n: 1,
        d: 1,
        seed: 0,
        scale: 1.0,
        shape: SetShape::Box,
        radius: 1.0,
        offset: 0.0,
    })
    .unwrap()
}

pub fn hard(boxed: bool) -> MinimaxProblem {
    make_instance(&InstanceSpec::HardGda { boxed }).unwrap()
}

pub fn polynomial_1d() -> MinimaxProblem {
    make_instance(&InstanceSpec::PolynomialNcC { n: 1, scale: 1.0 / 3.0, coupling: 0.25, x_bound: 1.5, y_bound: 1.0 })
        .unwrap()
}

/// Every family at small sizes.
pub fn suite() -> Vec<MinimaxProblem> {
    dsogda::problems::standard_specs().iter().map(|s| make_instance(s).unwrap()).collect()
}

/// Global max of a 1-d function on `[lo, hi]`: grid with the given spacing,
/// then golden-section refinement inside the best cell's neighbours.
pub fn grid_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, spacing: f64) -> (f64, f64) {
    let n = ((hi - lo) / spacing).ceil().max(1.0) as usize;
    let at = |k: usize| if k == n { hi } else { lo + k as f64 * spacing };
    let (mut best_k, mut best) = (0, f(lo));
    for k in 1..=n {
        let v = f(at(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let (mut a, mut b) = (at(best_k.saturating_sub(1)), at((best_k + 1).min(n)));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) >= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let m = 0.5 * (a + b);
    if f(m) > best {
        (m, f(m))
    } else {
        (at(best_k), best)
    }
}

pub fn grid_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, spacing: f64) -> (f64, f64) {
    let (x, v) = grid_max(|t| -f(t), lo, hi, spacing);
    (x, -v)
}

pub fn interval(set: &ConvexSet) -> (f64, f64) {
    match set.kind() {
        dsogda::SetKind::Box { lower, upper } => (lower[0], upper[0]),
        dsogda::SetKind::Ball { center, radius } => (center[0] - radius, center[0] + radius),
        _ => (-10.0, 10.0),
    }
}

/// Brute-force saddle gap of a 1-d problem.
pub fn grid_gap(p: &MinimaxProblem, x: f64, y: f64, spacing: f64) -> f64 {
    let (ylo, yhi) = interval(p.set_y());
    let (xlo, xhi) = interval(p.set_x());
    let up = grid_max(|t| p.eval_f(&[x], &[t]), ylo, yhi, spacing).1;
    let down = grid_min(|t| p.eval_f(&[t], &[y]), xlo, xhi, spacing).1;
    up - down
}

/// Brute-force prox residual of a 1-d problem.
pub fn grid_os(p: &MinimaxProblem, z: f64, r: f64, outer: f64, inner: f64) -> f64 {
    let (ylo, yhi) = interval(p.set_y());
    let (xlo, xhi) = interval(p.set_x());
    let phi = |x: f64| grid_max(|t| p.eval_f(&[x], &[t]), ylo, yhi, inner).1;
    let w = grid_min(|x| phi(x) + 0.5 * r * (x - z) * (x - z), xlo.max(z - 10.0), xhi.min(z + 10.0), outer).0;
    (w - z).abs()
}
