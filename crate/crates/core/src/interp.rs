//! Local cubic interpolation on sampled tables.

use crate::grid::Grid;

/// Four-point Lagrange interpolation of a table sampled on a uniform grid.
///
/// Returns `None` outside the grid. The stencil is shifted inwards at the edges.
pub fn cubic_uniform(grid: &Grid, values: &[f64], x: f64) -> Option<f64> {
    debug_assert_eq!(grid.len(), values.len());
    if !grid.contains(x) || values.len() < 4 {
        return None;
    }
    let h = grid.step();
    let n = values.len();
    let cell = (((x - grid.x_min()) / h).floor() as usize).min(n - 2);
    let start = cell.saturating_sub(1).min(n - 4);
    let t = (x - grid.x(start)) / h;
    let (y0, y1, y2, y3) = (
        values[start],
        values[start + 1],
        values[start + 2],
        values[start + 3],
    );
    // Lagrange basis at nodes 0, 1, 2, 3 in units of h.
    let l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    let l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    let l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    let l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    Some(l0 * y0 + l1 * y1 + l2 * y2 + l3 * y3)
}

/// Cubic Hermite interpolation through `(xs[i], ys[i])` with slopes `dys[i]`.
///
/// `xs` must be strictly increasing. Returns the interpolated value and its
/// derivative, or `None` outside `[xs[0], xs[last]]`.
pub fn hermite(xs: &[f64], ys: &[f64], dys: &[f64], x: f64) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || x < xs[0] || x > xs[n - 1] {
        return None;
    }
    let k = match xs.partition_point(|&xi| xi <= x) {
        0 => 0,
        p if p >= n => n - 2,
        p => p - 1,
    };
    let h = xs[k + 1] - xs[k];
    let t = (x - xs[k]) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let value = h00 * ys[k] + h10 * h * dys[k] + h01 * ys[k + 1] + h11 * h * dys[k + 1];

    let d00 = (6.0 * t2 - 6.0 * t) / h;
    let d10 = 3.0 * t2 - 4.0 * t + 1.0;
    let d01 = (-6.0 * t2 + 6.0 * t) / h;
    let d11 = 3.0 * t2 - 2.0 * t;
    let slope = d00 * ys[k] + d10 * dys[k] + d01 * ys[k + 1] + d11 * dys[k + 1];
    Some((value, slope))
}
