//! Slow, direct oracles shared by the integration tests. None of them reuse
//! the library's formulas or enumeration code.
#![allow(dead_code)]

use evenpoints::WeightVector;

pub fn wv(v: &[i64]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

/// Every vector `x` with `0 <= x_i <= bounds[i]`, in lexicographic order.
pub fn grid(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Semistandard tableaux of shape `(k, k)` and content `d·w`: choose the
/// first row's content, fill both rows in increasing order and test the
/// columns.
pub fn tableau_count(w: &[i64], d: i64) -> u64 {
    let content: Vec<i64> = w.iter().map(|x| d * x).collect();
    let total: i64 = content.iter().sum();
    if total % 2 != 0 {
        return 0;
    }
    let k = total / 2;
    let mut count = 0;
    for top in grid(&content) {
        if top.iter().sum::<i64>() != k {
            continue;
        }
        let row = |c: &dyn Fn(usize) -> i64| -> Vec<usize> {
            (0..w.len()).flat_map(|i| std::iter::repeat_n(i, c(i) as usize)).collect()
        };
        let upper = row(&|i| top[i]);
        let lower = row(&|i| content[i] - top[i]);
        if upper.iter().zip(&lower).all(|(a, b)| a < b) {
            count += 1;
        }
    }
    count
}

pub fn catalan(m: u64) -> u64 {
    let mut c: u64 = 1;
    for i in 0..m {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn triangle(x: i64, y: i64, z: i64) -> bool {
    x <= y + z && y <= x + z && z <= x + y
}

/// Even points of `d·P_w`, by scanning a box and testing the chain of
/// triangle conditions directly.
pub fn pw_points_naive(w: &[i64], d: i64) -> Vec<Vec<i64>> {
    let n = w.len();
    let bound = d * w.iter().sum::<i64>();
    let dim = n - 3;
    let half: Vec<i64> = vec![bound / 2; dim];
    grid(&half)
        .into_iter()
        .map(|p| p.into_iter().map(|x| 2 * x).collect::<Vec<i64>>())
        .filter(|u| {
            let dw = |i: usize| d * w[i - 1];
            let mut ok = triangle(dw(1), dw(2), u[0]) && triangle(u[dim - 1], dw(n - 1), dw(n));
            for i in 3..=n - 2 {
                ok &= triangle(u[i - 3], dw(i), u[i - 2]);
            }
            ok
        })
        .collect()
}

/// Lattice points of `d·Q_w` from the raw inequalities.
pub fn qw_points_naive(w: &[i64], d: i64) -> Vec<Vec<i64>> {
    let bounds: Vec<i64> = w.iter().map(|x| d * x).collect();
    let total: i64 = bounds.iter().sum();
    grid(&bounds)
        .into_iter()
        .filter(|nu| {
            if 2 * nu.iter().sum::<i64>() != total {
                return false;
            }
            (0..nu.len()).all(|l| {
                let before: i64 = nu[..l].iter().sum();
                let weight: i64 = bounds[..=l].iter().sum();
                2 * before + nu[l] >= weight
            })
        })
        .collect()
}

pub fn sq_norm(points: &[&[i64]]) -> i64 {
    points.iter().flat_map(|p| p.iter()).map(|x| x * x).sum()
}
