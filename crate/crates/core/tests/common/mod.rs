#![allow(dead_code)]

use hcover::exact::heavy_threshold;
use hcover::{Point, Rect};

fn coords(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Every maximal probe-empty rectangle, by trying all sides on probe coordinates
/// or ±∞ and checking emptiness and support directly.
pub fn naive_maximal_empty(probes: &[Point]) -> Vec<Rect> {
    let xs = coords(probes.iter().map(|p| p.x));
    let ys = coords(probes.iter().map(|p| p.y));
    let lows = |v: &[f64]| std::iter::once(f64::NEG_INFINITY).chain(v.iter().copied()).collect::<Vec<_>>();
    let highs = |v: &[f64]| v.iter().copied().chain(std::iter::once(f64::INFINITY)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for &x_lo in &lows(&xs) {
        for &x_hi in &highs(&xs) {
            if x_lo >= x_hi {
                continue;
            }
            for &y_lo in &lows(&ys) {
                for &y_hi in &highs(&ys) {
                    if y_lo >= y_hi {
                        continue;
                    }
                    let r = Rect::new(x_lo, y_lo, x_hi, y_hi);
                    if probes.iter().any(|&p| r.contains_interior(p)) {
                        continue;
                    }
                    let on_x = |x: f64| x.is_infinite() || probes.iter().any(|p| p.x == x && y_lo < p.y && p.y < y_hi);
                    let on_y = |y: f64| y.is_infinite() || probes.iter().any(|p| p.y == y && x_lo < p.x && p.x < x_hi);
                    if on_x(x_lo) && on_x(x_hi) && on_y(y_lo) && on_y(y_hi) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort_by(Rect::lex_cmp);
    out
}

/// ε-net check over every closed rectangle with sides on input coordinates, using
/// 2-d prefix sums of points and of net points on the rank grid.
pub fn slow_is_epsnet(points: &[Point], eps: f64, net: &[usize]) -> bool {
    let xs = coords(points.iter().map(|p| p.x));
    let ys = coords(points.iter().map(|p| p.y));
    let (w, h) = (xs.len(), ys.len());
    let mut all = vec![vec![0usize; h + 1]; w + 1];
    let mut hit = vec![vec![0usize; h + 1]; w + 1];
    let rank = |v: &[f64], x: f64| v.iter().position(|&c| c == x).unwrap();
    for (i, p) in points.iter().enumerate() {
        let (a, b) = (rank(&xs, p.x) + 1, rank(&ys, p.y) + 1);
        all[a][b] += 1;
        if net.contains(&i) {
            hit[a][b] += 1;
        }
    }
    for grid in [&mut all, &mut hit] {
        for a in 1..=w {
            for b in 1..=h {
                grid[a][b] += grid[a - 1][b] + grid[a][b - 1] - grid[a - 1][b - 1];
            }
        }
    }
    let sum = |g: &Vec<Vec<usize>>, a0: usize, a1: usize, b0: usize, b1: usize| g[a1][b1] + g[a0][b0] - g[a0][b1] - g[a1][b0];
    let threshold = heavy_threshold(eps, points.len());
    for a0 in 0..w {
        for a1 in a0 + 1..=w {
            for b0 in 0..h {
                for b1 in b0 + 1..=h {
                    if sum(&hit, a0, a1, b0, b1) == 0 && sum(&all, a0, a1, b0, b1) >= threshold {
                        return false;
                    }
                }
            }
        }
    }
    true
}
