//! Two-row tableaux, first-row partitions and the stretched Kostka count.
//!
//! A semistandard tableau of shape `(k, k)` with content `d·w` is determined
//! by its first-row content `ν`. The admissible `ν` are the integer points
//! with
//!
//! ```text
//! 0 <= ν_l <= d·w_l,    2(ν_1 + ... + ν_{l-1}) + ν_l >= d(w_1 + ... + w_l),
//! ν_1 + ... + ν_n = d|w|/2,
//! ```
//!
//! and counting them gives `dim (R_w)_d = K(dλ, dμ)` for `λ = (|w|/2, |w|/2)`
//! and `μ = w`. The maps [`phi_map`] and [`psi_map`] realise the bijection
//! behind `K = π(n, dw, d|w|/2) − π(n, dw, d|w|/2 − 1)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// First-row content `(ν_1, ..., ν_n)` of a two-row tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PartitionNu {
    entries: Vec<i64>,
}

impl PartitionNu {
    pub fn new(entries: Vec<i64>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Membership in `Π(n, d·w, k)`: `0 <= ν_i <= d·w_i` and `Σν = k`.
    pub fn in_box(&self, w: &WeightVector, d: i64, k: i64) -> bool {
        self.entries.len() == w.n()
            && self.sum() == k
            && self.entries.iter().zip(w.entries()).all(|(&v, &wi)| 0 <= v && v <= d * wi)
    }

    /// The inequality system cutting out tableaux of content `d·w`.
    pub fn is_admissible(&self, w: &WeightVector, d: i64) -> bool {
        if (d * w.total()) % 2 != 0 || !self.in_box(w, d, d * w.total() / 2) {
            return false;
        }
        let mut prefix_nu = 0;
        let mut prefix_w = 0;
        for (&v, &wi) in self.entries.iter().zip(w.entries()) {
            prefix_w += d * wi;
            if 2 * prefix_nu + v < prefix_w {
                return false;
            }
            prefix_nu += v;
        }
        true
    }
}

impl fmt::Display for PartitionNu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Depth-first walk over `ν` with `lower(l, ν_1 + ... + ν_{l-1}) <= ν_l <=
/// upper[l]` and `Σν = target`, in lexicographic order.
fn walk_partitions(
    upper: &[i64],
    target: i64,
    lower: &dyn Fn(usize, i64) -> i64,
    visit: &mut dyn FnMut(&[i64]),
) {
    let n = upper.len();
    // suffix_cap[l] = upper[l] + ... + upper[n-1]
    let mut suffix_cap = vec![0i64; n + 1];
    for l in (0..n).rev() {
        suffix_cap[l] = suffix_cap[l + 1] + upper[l];
    }
    let mut current = vec![0i64; n];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        l: usize,
        sum: i64,
        upper: &[i64],
        suffix_cap: &[i64],
        target: i64,
        lower: &dyn Fn(usize, i64) -> i64,
        current: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[i64]),
    ) {
        if l == upper.len() {
            if sum == target {
                visit(current);
            }
            return;
        }
        let lo = lower(l, sum).max(0).max(target - sum - suffix_cap[l + 1]);
        let hi = upper[l].min(target - sum);
        for v in lo..=hi {
            current[l] = v;
            rec(l + 1, sum + v, upper, suffix_cap, target, lower, current, visit);
        }
    }

    if target < 0 || target > suffix_cap[0] {
        return;
    }
    rec(0, 0, upper, &suffix_cap, target, lower, &mut current, visit);
}

fn scaled(w: &WeightVector, d: i64) -> Vec<i64> {
    w.entries().iter().map(|wi| d * wi).collect()
}

fn for_each_admissible(w: &WeightVector, d: i64, visit: &mut dyn FnMut(&[i64])) {
    if d < 0 || (d * w.total()) % 2 != 0 {
        return;
    }
    let upper = scaled(w, d);
    let mut prefix_w = vec![0i64; upper.len()];
    let mut acc = 0;
    for (l, u) in upper.iter().enumerate() {
        acc += u;
        prefix_w[l] = acc;
    }
    let lower = |l: usize, prefix_nu: i64| prefix_w[l] - 2 * prefix_nu;
    walk_partitions(&upper, d * w.total() / 2, &lower, visit);
}

/// All admissible `ν` for content `d·w`, in lexicographic order. Empty when
/// `d·|w|` is odd.
pub fn enumerate_admissible_partitions(w: &WeightVector, d: i64) -> Vec<PartitionNu> {
    let mut out = Vec::new();
    for_each_admissible(w, d, &mut |nu| out.push(PartitionNu::new(nu.to_vec())));
    out
}

/// `K(dλ, dμ)` by direct enumeration of admissible partitions.
pub fn kostka_bruteforce(w: &WeightVector, d: i64) -> u64 {
    let mut count = 0u64;
    for_each_admissible(w, d, &mut |_| count += 1);
    count
}

/// `Π(n, bounds, k)`: all `0 <= ν_i <= bounds_i` with `Σν = k`, lexicographic.
pub fn enumerate_box_partitions(bounds: &[i64], k: i64) -> Vec<PartitionNu> {
    let mut out = Vec::new();
    walk_partitions(bounds, k, &|_, _| 0, &mut |nu| out.push(PartitionNu::new(nu.to_vec())));
    out
}

/// A tableau of shape `(k, k)` with entries in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoRowTableau {
    n: usize,
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl TwoRowTableau {
    pub fn new(n: usize, top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::DimensionMismatch { expected: top.len(), got: bottom.len() });
        }
        if let Some(&bad) = top.iter().chain(&bottom).find(|&&v| v == 0 || v > n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        Ok(Self { n, top, bottom })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// Rows weakly increase, columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        self.top.windows(2).all(|p| p[0] <= p[1])
            && self.bottom.windows(2).all(|p| p[0] <= p[1])
            && self.top.iter().zip(&self.bottom).all(|(t, b)| t < b)
    }

    /// Number of occurrences of each value `1..=n`.
    pub fn content(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.n];
        for &v in self.top.iter().chain(&self.bottom) {
            c[v - 1] += 1;
        }
        c
    }

    /// Content of the first row.
    pub fn first_row_partition(&self) -> PartitionNu {
        let mut nu = vec![0i64; self.n];
        for &v in &self.top {
            nu[v - 1] += 1;
        }
        PartitionNu::new(nu)
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[usize]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "[{} / {}]", row(&self.top), row(&self.bottom))
    }
}

/// Fills the first row with `ν_i` copies of `i` and the second with
/// `d·w_i − ν_i` copies of `i`.
pub fn tableau_from_partition(nu: &PartitionNu, w: &WeightVector, d: i64) -> Result<TwoRowTableau> {
    if !nu.is_admissible(w, d) {
        return Err(Error::NotAdmissible(nu.entries().to_vec()));
    }
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (i, (&v, &wi)) in nu.entries().iter().zip(w.entries()).enumerate() {
        top.extend(std::iter::repeat_n(i + 1, v as usize));
        bottom.extend(std::iter::repeat_n(i + 1, (d * wi - v) as usize));
    }
    TwoRowTableau::new(w.n(), top, bottom)
}

/// Exponents of `m_τ = x_{i_1}⋯x_{i_k} y_{j_1}⋯y_{j_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TableauMonomial {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

pub fn monomial_of_tableau(tableau: &TwoRowTableau) -> TableauMonomial {
    let mut x = vec![0u64; tableau.n];
    let mut y = vec![0u64; tableau.n];
    for &i in &tableau.top {
        x[i - 1] += 1;
    }
    for &j in &tableau.bottom {
        y[j - 1] += 1;
    }
    TableauMonomial { x, y }
}

/// `f_ν(i) = 2(ν_1 + ... + ν_{i-1}) + ν_i − d(w_1 + ... + w_i)`, 1-based `i`.
pub fn f_nu(nu: &PartitionNu, w: &WeightVector, d: i64, i: usize) -> Result<i64> {
    let n = w.n();
    if i == 0 || i > n || nu.len() != n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let e = nu.entries();
    let before: i64 = e[..i - 1].iter().sum();
    let weight: i64 = w.entries()[..i].iter().sum();
    Ok(2 * before + e[i - 1] - d * weight)
}

/// `[f_ν(1), ..., f_ν(n)]`.
pub fn f_values(nu: &PartitionNu, w: &WeightVector, d: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(w.n());
    let mut before = 0;
    let mut weight = 0;
    for (&v, &wi) in nu.entries().iter().zip(w.entries()) {
        weight += d * wi;
        out.push(2 * before + v - weight);
        before += v;
    }
    out
}

fn domain_total(w: &WeightVector, d: i64, nu: &PartitionNu) -> Result<i64> {
    if (d * w.total()) % 2 != 0 {
        return Err(Error::OutsideDomain {
            nu: nu.entries().to_vec(),
            reason: "d|w| is odd".into(),
        });
    }
    Ok(d * w.total() / 2)
}

/// Decrements `ν` at the last position where `f_ν` attains its minimum.
///
/// Domain: `ν ∈ Π(n, d·w, d|w|/2)` with some `f_ν(i) < 0`.
pub fn phi_map(nu: &PartitionNu, w: &WeightVector, d: i64) -> Result<PartitionNu> {
    let total = domain_total(w, d, nu)?;
    if !nu.in_box(w, d, total) {
        return Err(Error::OutsideDomain {
            nu: nu.entries().to_vec(),
            reason: format!("not in Π(n, dw, {total})"),
        });
    }
    let f = f_values(nu, w, d);
    let min = *f.iter().min().expect("n >= 3");
    if min >= 0 {
        return Err(Error::OutsideDomain {
            nu: nu.entries().to_vec(),
            reason: "f_ν is nonnegative, ν is admissible".into(),
        });
    }
    let pos = f.iter().rposition(|&v| v == min).expect("minimum is attained");
    let mut out = nu.entries().to_vec();
    out[pos] -= 1;
    Ok(PartitionNu::new(out))
}

/// Increments `ν'` at the first position where `f_ν'` attains its minimum.
///
/// Domain: `ν' ∈ Π(n, d·w, d|w|/2 − 1)`.
pub fn psi_map(nu: &PartitionNu, w: &WeightVector, d: i64) -> Result<PartitionNu> {
    let total = domain_total(w, d, nu)? - 1;
    if !nu.in_box(w, d, total) {
        return Err(Error::OutsideDomain {
            nu: nu.entries().to_vec(),
            reason: format!("not in Π(n, dw, {total})"),
        });
    }
    let f = f_values(nu, w, d);
    let min = *f.iter().min().expect("n >= 3");
    let pos = f.iter().position(|&v| v == min).expect("minimum is attained");
    let mut out = nu.entries().to_vec();
    out[pos] += 1;
    Ok(PartitionNu::new(out))
}
