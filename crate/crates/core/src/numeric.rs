//! Small numerical kernels shared by the geometry modules: finite-difference
//! weights, cumulative quadrature, Hermite interpolation on monotone tables
//! and a golden-section minimizer.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use crate::lorentz::MVec3;

/// Values that can be combined linearly (scalars and vectors).
pub trait Linear: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
}

impl Linear for MVec3 {
    fn zero() -> Self {
        MVec3::ZERO
    }
}

/// Finite-difference weights (Fornberg's recursion).
///
/// Returns `w` with `w[k][j]` the weight of `f(nodes[j])` in the
/// approximation of the `k`-th derivative at `z`, for `k = 0..=max_order`.
pub fn fd_weights(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Start index of a `width`-point window around `i` clamped to `0..n`.
pub fn stencil_start(i: usize, n: usize, width: usize) -> usize {
    debug_assert!(n >= width);
    let half = width / 2;
    i.saturating_sub(half).min(n - width)
}

/// Derivative of order `order` of uniformly sampled data at every node.
///
/// Uses a centred stencil of `width` points where possible and shifted
/// stencils of the same width near the ends. A width of `order + 4`
/// (rounded up to odd for centred rows) gives fourth-order accuracy.
pub fn fd_uniform<T: Linear>(values: &[T], h: f64, order: usize, width: usize) -> Vec<T> {
    let n = values.len();
    assert!(n >= width, "need at least {width} samples, got {n}");
    let scale = libm::pow(h, order as f64);
    (0..n)
        .map(|i| {
            let start = stencil_start(i, n, width);
            let nodes: Vec<f64> = (start..start + width).map(|j| j as f64 - i as f64).collect();
            let w = fd_weights(0.0, &nodes, order);
            let mut acc = T::zero();
            for (k, wk) in w[order].iter().enumerate() {
                acc = acc + values[start + k] * *wk;
            }
            acc * (1.0 / scale)
        })
        .collect()
}

/// Fourth-order stencil width for a derivative of the given order.
pub fn width_for_order(order: usize) -> usize {
    let w = order + 4;
    if w % 2 == 0 {
        w + 1
    } else {
        w
    }
}

/// Cumulative integral of uniformly sampled data, fourth order.
///
/// Each panel uses the cubic through its four nearest samples.
pub fn cumulative_uniform(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + 0.5 * h * (y[i - 1] + y[i]);
        }
        return out;
    }
    for i in 0..n - 1 {
        let panel = if i == 0 {
            h / 24.0 * (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3])
        } else if i == n - 2 {
            h / 24.0 * (9.0 * y[n - 1] + 19.0 * y[n - 2] - 5.0 * y[n - 3] + y[n - 4])
        } else {
            h / 24.0 * (-y[i - 1] + 13.0 * y[i] + 13.0 * y[i + 1] - y[i + 2])
        };
        out[i + 1] = out[i] + panel;
    }
    out
}

/// Vector version of [`cumulative_uniform`].
pub fn cumulative_uniform_vec(y: &[MVec3], h: f64) -> Vec<MVec3> {
    let n = y.len();
    let mut out = vec![MVec3::ZERO; n];
    if n < 4 {
        for i in 1..n {
            out[i] = out[i - 1] + (y[i - 1] + y[i]) * (0.5 * h);
        }
        return out;
    }
    for i in 0..n - 1 {
        let panel = if i == 0 {
            y[0] * 9.0 + y[1] * 19.0 + y[2] * -5.0 + y[3]
        } else if i == n - 2 {
            y[n - 1] * 9.0 + y[n - 2] * 19.0 + y[n - 3] * -5.0 + y[n - 4]
        } else {
            y[i - 1] * -1.0 + y[i] * 13.0 + y[i + 1] * 13.0 + y[i + 2] * -1.0
        };
        out[i + 1] = out[i] + panel * (h / 24.0);
    }
    out
}

/// Simpson's rule on `[a, b]` using the midpoint.
pub fn simpson_panel(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Cubic Hermite interpolation on one interval.
pub fn hermite<T: Linear>(x0: f64, x1: f64, y0: T, y1: T, d0: T, d1: T, x: f64) -> T {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    y0 * h00 + d0 * (h10 * h) + y1 * h01 + d1 * (h11 * h)
}

/// Index `i` with `xs[i] <= x <= xs[i + 1]` for sorted `xs`, clamped to the
/// first/last interval.
pub fn bracket(xs: &[f64], x: f64) -> usize {
    let n = xs.len();
    debug_assert!(n >= 2);
    match xs.binary_search_by(|p| p.partial_cmp(&x).unwrap_or(core::cmp::Ordering::Less)) {
        Ok(i) => i.min(n - 2),
        Err(i) => i.saturating_sub(1).min(n - 2),
    }
}

/// A strictly increasing table `x -> y` with slopes, interpolated by cubic
/// Hermite segments.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneTable {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub dy: Vec<f64>,
}

impl MonotoneTable {
    /// Table with exact slopes.
    pub fn with_slopes(x: Vec<f64>, y: Vec<f64>, dy: Vec<f64>) -> Self {
        debug_assert!(x.len() == y.len() && y.len() == dy.len() && x.len() >= 2);
        MonotoneTable { x, y, dy }
    }

    /// Table whose slopes are estimated from the data by three-point
    /// differences on the (possibly non-uniform) abscissae.
    pub fn from_samples(x: Vec<f64>, y: Vec<f64>) -> Self {
        let dy = slopes(&x, &y);
        MonotoneTable { x, y, dy }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = bracket(&self.x, x);
        hermite(self.x[i], self.x[i + 1], self.y[i], self.y[i + 1], self.dy[i], self.dy[i + 1], x)
    }

    pub fn slope(&self, x: f64) -> f64 {
        let i = bracket(&self.x, x);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let t2 = t * t;
        let dh00 = (6.0 * t2 - 6.0 * t) / h;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t2 + 6.0 * t) / h;
        let dh11 = 3.0 * t2 - 2.0 * t;
        self.y[i] * dh00 + self.dy[i] * dh10 + self.y[i + 1] * dh01 + self.dy[i + 1] * dh11
    }

    /// The table with abscissa and ordinate swapped. Requires `y` strictly
    /// increasing and non-zero slopes.
    pub fn inverse(&self) -> MonotoneTable {
        MonotoneTable {
            x: self.y.clone(),
            y: self.x.clone(),
            dy: self.dy.iter().map(|d| 1.0 / d).collect(),
        }
    }

    pub fn first_x(&self) -> f64 {
        self.x[0]
    }

    pub fn last_x(&self) -> f64 {
        self.x[self.x.len() - 1]
    }

    pub fn last_y(&self) -> f64 {
        self.y[self.y.len() - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.x.windows(2).all(|w| w[1] > w[0]) && self.y.windows(2).all(|w| w[1] > w[0])
    }
}

/// Three-point slope estimates on non-uniform abscissae.
pub fn slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 2 {
        let d = (y[1] - y[0]) / (x[1] - x[0]);
        return vec![d, d];
    }
    (0..n)
        .map(|i| {
            let s = stencil_start(i, n, 3);
            let w = fd_weights(x[i], &x[s..s + 3], 1);
            w[1][0] * y[s] + w[1][1] * y[s + 1] + w[1][2] * y[s + 2]
        })
        .collect()
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if libm::fabs(b - a) <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

/// Composite 8-point Gauss-Legendre quadrature over `panels` equal panels.
pub fn gauss_legendre<T: Linear, F: Fn(f64) -> T>(f: F, a: f64, b: f64, panels: usize) -> T {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = T::zero();
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        let half = 0.5 * h;
        for &(x, w) in &GL8 {
            acc = acc + (f(mid - half * x) + f(mid + half * x)) * (w * half);
        }
    }
    acc
}

/// Uniform grid of `n >= 2` points on `[a, b]` with exact endpoints.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        let v = gauss_legendre(|x: f64| x.powi(15) - 3.0 * x * x, -1.0, 2.0, 1);
        let exact = (2f64.powi(16) - 1.0) / 16.0 - (8.0 + 1.0);
        assert!((v - exact).abs() < 1e-9);
        let e = gauss_legendre(libm::exp, 0.0, 1.0, 4);
        assert!((e - (core::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn fornberg_reproduces_classic_stencils() {
        let w = fd_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
        let d1 = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        let d2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for j in 0..5 {
            assert!((w[1][j] - d1[j]).abs() < 1e-14);
            assert!((w[2][j] - d2[j]).abs() < 1e-14);
        }
        let w3 = fd_weights(0.0, &[-3., -2., -1., 0., 1., 2., 3.], 3);
        let d3 = [0.125, -1.0, 1.625, 0.0, -1.625, 1.0, -0.125];
        for j in 0..7 {
            assert!((w3[3][j] - d3[j]).abs() < 1e-13, "{j}: {}", w3[3][j]);
        }
    }

    #[test]
    fn fd_uniform_is_fourth_order() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let y: Vec<f64> = (0..n).map(|i| libm::sin(3.0 * i as f64 * h)).collect();
            let d = fd_uniform(&y, h, 1, 5);
            (0..n)
                .map(|i| (d[i] - 3.0 * libm::cos(3.0 * i as f64 * h)).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(41) / err(81);
        assert!(ratio > 12.0, "ratio {ratio}");
    }

    #[test]
    fn cumulative_matches_closed_form() {
        let n = 201;
        let h = 2.0 / (n - 1) as f64;
        let y: Vec<f64> = (0..n).map(|i| libm::exp(i as f64 * h)).collect();
        let c = cumulative_uniform(&y, h);
        for i in 0..n {
            let exact = libm::exp(i as f64 * h) - 1.0;
            assert!((c[i] - exact).abs() < 1e-9, "{i}");
        }
    }

    #[test]
    fn hermite_table_and_inverse() {
        let x = linspace(0.0, 1.0, 50);
        let y: Vec<f64> = x.iter().map(|t| t * t + t).collect();
        let dy: Vec<f64> = x.iter().map(|t| 2.0 * t + 1.0).collect();
        let tab = MonotoneTable::with_slopes(x, y, dy);
        assert!((tab.eval(0.3337) - (0.3337f64 * 0.3337 + 0.3337)).abs() < 1e-14);
        let inv = tab.inverse();
        let target = 0.77;
        let t = inv.eval(target);
        assert!((t * t + t - target).abs() < 1e-8);
    }

    #[test]
    fn golden_finds_parabola_minimum() {
        let m = golden_section(|x| (x - 0.3) * (x - 0.3), -1.0, 2.0, 1e-10);
        assert!((m - 0.3).abs() < 1e-8);
    }
}
