//! The polytopes `Q_w ⊂ R^n` and `P_w ⊂ R^{n-3}`, their lattice points and
//! the normality of `P_w` with respect to `M = (2Z)^{n-3}`.
//!
//! Coordinates of `P_w` are stored 0-based: `coords[c]` is `u(c + 2)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::PartitionNu;
use crate::error::{Error, Result};
use crate::weights::WeightVector;

/// Reference lattice of a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lattice {
    #[serde(rename = "Z")]
    Unit,
    #[serde(rename = "2Z")]
    Even,
}

/// `normal · x + level · offset >= 0` (or `= 0` for equalities).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineConstraint {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl AffineConstraint {
    pub fn new(normal: Vec<i64>, offset: i64) -> Self {
        Self { normal, offset }
    }

    pub fn value(&self, x: &[i64], level: i64) -> i64 {
        self.normal.iter().zip(x).map(|(a, v)| a * v).sum::<i64>() + level * self.offset
    }
}

/// A polytope in H-representation with integral data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPolytope {
    pub dim: usize,
    pub equalities: Vec<AffineConstraint>,
    pub inequalities: Vec<AffineConstraint>,
    pub lattice: Lattice,
}

impl HPolytope {
    /// Whether `x` is a lattice point of `level · P`.
    pub fn contains(&self, x: &[i64], level: u64) -> bool {
        let level = level as i64;
        x.len() == self.dim
            && (self.lattice == Lattice::Unit || x.iter().all(|v| v % 2 == 0))
            && self.equalities.iter().all(|c| c.value(x, level) == 0)
            && self.inequalities.iter().all(|c| c.value(x, level) >= 0)
    }
}

/// A point `(u, d)` of the graded semigroup of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub level: u64,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>, level: u64) -> Self {
        Self { coords, level }
    }

    pub fn add(&self, other: &Self) -> Self {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self { coords, level: self.level + other.level }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Self { coords, level: self.level - other.level }
    }

    pub fn norm(&self) -> i64 {
        self.coords.iter().map(|v| v * v).sum()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Q_w`: `Σν = |w|/2` together with `0 <= ν_l <= w_l` and
/// `2(ν_1 + ... + ν_{l-1}) + ν_l >= w_1 + ... + w_l`.
///
/// The equality is stored doubled (`2Σν - |w| = 0`) so that it stays
/// integral for odd `|w|`.
pub fn build_qw(w: &WeightVector) -> HPolytope {
    let n = w.n();
    let mut inequalities = Vec::with_capacity(3 * n);
    let mut prefix_w = 0;
    for l in 0..n {
        let mut lower = vec![0; n];
        lower[l] = 1;
        inequalities.push(AffineConstraint::new(lower, 0));
        let mut upper = vec![0; n];
        upper[l] = -1;
        inequalities.push(AffineConstraint::new(upper, w.entries()[l]));
        prefix_w += w.entries()[l];
        let mut tableau = vec![0; n];
        for t in tableau.iter_mut().take(l) {
            *t = 2;
        }
        tableau[l] = 1;
        inequalities.push(AffineConstraint::new(tableau, -prefix_w));
    }
    HPolytope {
        dim: n,
        equalities: vec![AffineConstraint::new(vec![2; n], -w.total())],
        inequalities,
        lattice: Lattice::Unit,
    }
}

/// `[ x + y - z, x + z - y, y + z - x ] >= 0` with each of `x, y, z` either a
/// coordinate index or a weight.
fn triangle(dim: usize, terms: [(Option<usize>, i64); 3]) -> [AffineConstraint; 3] {
    let make = |signs: [i64; 3]| {
        let mut normal = vec![0; dim];
        let mut offset = 0;
        for ((coord, weight), s) in terms.iter().zip(signs) {
            match coord {
                Some(c) => normal[*c] += s,
                None => offset += s * weight,
            }
        }
        AffineConstraint::new(normal, offset)
    };
    [make([1, 1, -1]), make([1, -1, 1]), make([-1, 1, 1])]
}

/// `P_w ⊂ R^{n-3}`: the triples `(w_1, w_2, u(2))`, `(u(i-1), w_i, u(i))`
/// for `3 <= i <= n-2`, and `(u(n-2), w_{n-1}, w_n)` satisfy the triangle
/// inequalities. Reference lattice `(2Z)^{n-3}`.
pub fn build_pw(w: &WeightVector) -> Result<HPolytope> {
    w.require_all_even()?;
    let n = w.n();
    if n < 4 {
        return Err(Error::TooFewWeights { min: 4, got: n });
    }
    let dim = n - 3;
    let wt = |i: usize| w.get(i);
    let mut inequalities = Vec::with_capacity(3 * (n - 2));
    inequalities.extend(triangle(dim, [(None, wt(1)), (None, wt(2)), (Some(0), 0)]));
    for i in 3..=n - 2 {
        // u(i-1) is coords[i-3], u(i) is coords[i-2]
        inequalities.extend(triangle(dim, [(Some(i - 3), 0), (None, wt(i)), (Some(i - 2), 0)]));
    }
    inequalities.extend(triangle(dim, [(Some(dim - 1), 0), (None, wt(n - 1)), (None, wt(n))]));
    Ok(HPolytope { dim, equalities: Vec::new(), inequalities, lattice: Lattice::Even })
}

type Row = (Vec<i64>, i64);

fn fdiv(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

fn cdiv(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

fn normalize(mut row: Row) -> Row {
    let g = row.0.iter().fold(row.1.abs(), |g, &a| g.gcd(&a));
    if g > 1 {
        row.0.iter_mut().for_each(|a| *a /= g);
        // offsets are only ever compared against 0, floor keeps the half-space
        row.1 = fdiv(row.1, g);
    }
    row
}

/// Bounds on coordinate `k` over the whole polytope by Fourier-Motzkin
/// elimination of every other coordinate. `None` marks an unbounded side.
fn projected_bounds(p: &HPolytope, level: i64, k: usize) -> (Option<i64>, Option<i64>) {
    let mut rows: HashSet<Row> = HashSet::new();
    for c in &p.inequalities {
        rows.insert(normalize((c.normal.clone(), level * c.offset)));
    }
    for c in &p.equalities {
        rows.insert(normalize((c.normal.clone(), level * c.offset)));
        let neg = c.normal.iter().map(|a| -a).collect();
        rows.insert(normalize((neg, -level * c.offset)));
    }
    for j in (0..p.dim).filter(|&j| j != k) {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), HashSet::new());
        for row in rows {
            match row.0[j].signum() {
                1 => pos.push(row),
                -1 => neg.push(row),
                _ => {
                    next.insert(row);
                }
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let (sp, sn) = (pa[j], -na[j]);
                let normal = pa.iter().zip(na).map(|(a, b)| a * sn + b * sp).collect();
                next.insert(normalize((normal, pb * sn + nb * sp)));
            }
        }
        rows = next;
    }
    let (mut lo, mut hi): (Option<i64>, Option<i64>) = (None, None);
    for (a, b) in rows {
        let c = a[k];
        if c > 0 {
            let v = cdiv(-b, c);
            lo = Some(lo.map_or(v, |l| l.max(v)));
        } else if c < 0 {
            let v = fdiv(b, -c);
            hi = Some(hi.map_or(v, |h| h.min(v)));
        } else if b < 0 {
            // 0 >= -b > 0: empty
            return (Some(1), Some(0));
        }
    }
    (lo, hi)
}

struct Enumerator<'a> {
    poly: &'a HPolytope,
    level: i64,
    // constraints grouped by the index of their last nonzero coefficient
    ineq_by_last: Vec<Vec<&'a AffineConstraint>>,
    eq_by_last: Vec<Vec<&'a AffineConstraint>>,
    fallback: Vec<(Option<i64>, Option<i64>)>,
}

impl<'a> Enumerator<'a> {
    fn new(poly: &'a HPolytope, level: i64) -> Result<Option<Self>> {
        let dim = poly.dim;
        let mut ineq_by_last = vec![Vec::new(); dim];
        let mut eq_by_last = vec![Vec::new(); dim];
        for c in &poly.inequalities {
            match c.normal.iter().rposition(|&a| a != 0) {
                Some(k) => ineq_by_last[k].push(c),
                None if level * c.offset < 0 => return Ok(None),
                None => {}
            }
        }
        for c in &poly.equalities {
            match c.normal.iter().rposition(|&a| a != 0) {
                Some(k) => eq_by_last[k].push(c),
                None if level * c.offset != 0 => return Ok(None),
                None => {}
            }
        }
        let mut fallback = vec![(None, None); dim];
        for k in 0..dim {
            let has_lower = !eq_by_last[k].is_empty() || ineq_by_last[k].iter().any(|c| c.normal[k] > 0);
            let has_upper = !eq_by_last[k].is_empty() || ineq_by_last[k].iter().any(|c| c.normal[k] < 0);
            if !(has_lower && has_upper) {
                let (lo, hi) = projected_bounds(poly, level, k);
                if lo.is_none() || hi.is_none() {
                    return Err(Error::Unbounded(k));
                }
                fallback[k] = (lo, hi);
            }
        }
        Ok(Some(Self { poly, level, ineq_by_last, eq_by_last, fallback }))
    }

    fn bounds(&self, k: usize, prefix: &[i64]) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = self.fallback[k];
        let partial = |c: &AffineConstraint| -> i64 {
            c.normal[..k].iter().zip(prefix).map(|(a, v)| a * v).sum::<i64>() + self.level * c.offset
        };
        for c in &self.ineq_by_last[k] {
            let (a, s) = (c.normal[k], partial(c));
            if a > 0 {
                let v = cdiv(-s, a);
                lo = Some(lo.map_or(v, |l: i64| l.max(v)));
            } else {
                let v = fdiv(s, -a);
                hi = Some(hi.map_or(v, |h: i64| h.min(v)));
            }
        }
        for c in &self.eq_by_last[k] {
            let (a, s) = (c.normal[k], partial(c));
            if (-s) % a != 0 {
                return None;
            }
            let v = -s / a;
            lo = Some(lo.map_or(v, |l: i64| l.max(v)));
            hi = Some(hi.map_or(v, |h: i64| h.min(v)));
        }
        let (mut lo, mut hi) = (lo.expect("bounded below"), hi.expect("bounded above"));
        if self.poly.lattice == Lattice::Even {
            lo = cdiv(lo, 2) * 2;
            hi = fdiv(hi, 2) * 2;
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn run(&self, k: usize, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
        if k == self.poly.dim {
            out.push(LatticePoint::new(prefix.clone(), self.level as u64));
            return;
        }
        let Some((lo, hi)) = self.bounds(k, prefix) else { return };
        let step = if self.poly.lattice == Lattice::Even { 2 } else { 1 };
        let mut v = lo;
        while v <= hi {
            prefix.push(v);
            self.run(k + 1, prefix, out);
            prefix.pop();
            v += step;
        }
    }
}

/// Lattice points of `level · P` in lexicographic order.
///
/// Each coordinate is bounded by the constraints whose last nonzero
/// coefficient sits at that coordinate, given the coordinates before it.
/// When that leaves a side open, a Fourier-Motzkin projection supplies a
/// global bound, and a polytope unbounded in that direction is an error.
pub fn lattice_points(p: &HPolytope, level: u64) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    if let Some(e) = Enumerator::new(p, level as i64)? {
        e.run(0, &mut Vec::with_capacity(p.dim), &mut out);
    }
    Ok(out)
}

/// `ν ∈ dQ_w ∩ Z^n ↦ u ∈ dP_w ∩ M` with
/// `u(l) = 2(ν_2 + ... + ν_l) - d(w_2 + ... + w_l - w_1)`.
pub fn qw_point_to_pw(nu: &PartitionNu, w: &WeightVector, d: u64) -> Result<LatticePoint> {
    w.require_all_even()?;
    if w.n() < 4 {
        return Err(Error::TooFewWeights { min: 4, got: w.n() });
    }
    let di = d as i64;
    if d == 0 {
        if nu.entries().iter().any(|&v| v != 0) || nu.len() != w.n() {
            return Err(Error::NotAdmissible(nu.entries().to_vec()));
        }
    } else if !nu.is_admissible(w, di) {
        return Err(Error::NotAdmissible(nu.entries().to_vec()));
    }
    let e = nu.entries();
    let mut coords = Vec::with_capacity(w.n() - 3);
    let (mut nu_sum, mut w_sum) = (0, -w.get(1));
    for l in 2..=w.n() - 2 {
        nu_sum += e[l - 1];
        w_sum += w.get(l);
        coords.push(2 * nu_sum - di * w_sum);
    }
    Ok(LatticePoint::new(coords, d))
}

/// Inverse of [`qw_point_to_pw`]; the level of `point` is the dilation `d`.
pub fn pw_point_to_qw(point: &LatticePoint, w: &WeightVector) -> Result<PartitionNu> {
    let pw = build_pw(w)?;
    if point.coords.len() != pw.dim {
        return Err(Error::DimensionMismatch { expected: pw.dim, got: point.coords.len() });
    }
    if point.coords.iter().any(|v| v % 2 != 0) {
        return Err(Error::NotInLattice(point.coords.clone()));
    }
    if !pw.contains(&point.coords, point.level) {
        return Err(Error::NotInPolytope { point: point.coords.clone(), level: point.level });
    }
    let d = point.level as i64;
    let n = w.n();
    let u = |l: usize| point.coords[l - 2];
    let mut nu = vec![0i64; n];
    nu[0] = d * w.get(1);
    let twice = u(2) - d * w.get(1) + d * w.get(2);
    nu[1] = twice / 2;
    for l in 3..=n - 2 {
        nu[l - 1] = (u(l) - u(l - 1) + d * w.get(l)) / 2;
    }
    let head: i64 = nu[..n - 2].iter().sum();
    nu[n - 2] = d * w.total() / 2 - head;
    nu[n - 1] = 0;
    Ok(PartitionNu::new(nu))
}

/// Tie-breaking direction for [`even_round`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Nearest even integer to `x`; odd integers `2a + 1` go to `2a + 2` under
/// [`Sign::Plus`] and to `2a` under [`Sign::Minus`].
pub fn even_round<T: Integer + Clone>(x: &Ratio<T>, sign: Sign) -> T {
    let (p, q) = (x.numer().clone(), x.denom().clone());
    let two = T::one() + T::one();
    let two_q = q.clone() * two.clone();
    // round(p / 2q), half up or half down
    let half = match sign {
        Sign::Plus => (p + q).div_floor(&two_q),
        Sign::Minus => {
            let t = p - q;
            let (quot, rem) = t.div_mod_floor(&two_q);
            if rem.is_zero() { quot } else { quot + T::one() }
        }
    };
    half * two
}

fn odd_multiple(value: i64, m: i64) -> Option<i64> {
    (value % m == 0 && (value / m) % 2 != 0).then_some(value / m)
}

/// The `(r, m)`-admissible signs for `r ∈ mP_w ∩ M`, normalized so that the
/// first sign is [`Sign::Plus`]: the sign flips between consecutive
/// coordinates exactly when both `r(i)/m` and `r(i+1)/m` are odd integers
/// summing to `w_{i+1}`.
pub fn admissible_signs(r: &LatticePoint, w: &WeightVector) -> Vec<Sign> {
    let m = r.level as i64;
    let mut signs = Vec::with_capacity(r.coords.len());
    if r.coords.is_empty() {
        return signs;
    }
    signs.push(Sign::Plus);
    for c in 0..r.coords.len() - 1 {
        let prev = signs[c];
        // coords[c] = r(c+2), so the shared weight is w_{c+3}
        let flip = m > 0
            && matches!(
                (odd_multiple(r.coords[c], m), odd_multiple(r.coords[c + 1], m)),
                (Some(a), Some(b)) if a + b == w.get(c + 3)
            );
        signs.push(if flip { -prev } else { prev });
    }
    signs
}

fn rounded_share(r: &LatticePoint, signs: &[Sign]) -> LatticePoint {
    let m = r.level as i64;
    let coords = r
        .coords
        .iter()
        .zip(signs)
        .map(|(&v, &s)| even_round(&Ratio::new(v, m), s))
        .collect();
    LatticePoint::new(coords, 1)
}

fn check_member(pw: &HPolytope, p: &LatticePoint) -> Result<()> {
    if pw.contains(&p.coords, p.level) {
        Ok(())
    } else {
        Err(Error::NotInPolytope { point: p.coords.clone(), level: p.level })
    }
}

/// Writes `r ∈ mP_w ∩ M` as a sum of `m` points of `P_w ∩ M` by repeatedly
/// peeling off `(e^{σ(i)}(r(i)/m))_i` and recursing on the remainder.
pub fn normal_decompose(r: &LatticePoint, w: &WeightVector) -> Result<Vec<LatticePoint>> {
    let pw = build_pw(w)?;
    normal_decompose_in(&pw, r, w)
}

fn normal_decompose_in(pw: &HPolytope, r: &LatticePoint, w: &WeightVector) -> Result<Vec<LatticePoint>> {
    check_member(pw, r)?;
    if r.level == 0 {
        return Ok(Vec::new());
    }
    let mut parts = Vec::with_capacity(r.level as usize);
    let mut rest = r.clone();
    while rest.level > 1 {
        let signs = admissible_signs(&rest, w);
        let u = rounded_share(&rest, &signs);
        let next = rest.sub(&u);
        if !pw.contains(&u.coords, 1) || !pw.contains(&next.coords, next.level) {
            return Err(Error::NormalityViolation { point: rest.coords.clone(), level: rest.level });
        }
        parts.push(u);
        rest = next;
    }
    parts.push(rest);
    Ok(parts)
}

/// For `v, v' ∈ P_w ∩ M`, points `u, u'` with `u + u' = v + v'` and
/// `|u(i) - u'(i)| <= 2`, obtained by rounding `(v + v')/2` both ways.
pub fn balanced_pair(v: &LatticePoint, v2: &LatticePoint, w: &WeightVector) -> Result<(LatticePoint, LatticePoint)> {
    let pw = build_pw(w)?;
    balanced_pair_in(&pw, v, v2, w)
}

pub(crate) fn balanced_pair_in(
    pw: &HPolytope,
    v: &LatticePoint,
    v2: &LatticePoint,
    w: &WeightVector,
) -> Result<(LatticePoint, LatticePoint)> {
    check_member(pw, v)?;
    check_member(pw, v2)?;
    let r = v.add(v2);
    let signs = admissible_signs(&r, w);
    let u = rounded_share(&r, &signs);
    let flipped: Vec<Sign> = signs.iter().map(|&s| -s).collect();
    let u2 = rounded_share(&r, &flipped);
    check_member(pw, &u)?;
    check_member(pw, &u2)?;
    Ok((u, u2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: u64,
    pub points: usize,
    pub failures: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub weights: WeightVector,
    pub levels: Vec<LevelReport>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.failures.is_empty())
    }
}

/// Runs [`normal_decompose`] on every point of `mP_w ∩ M` for
/// `1 <= m <= m_max`, also checking that the parts sum back to the point.
pub fn normality_check(w: &WeightVector, m_max: u64) -> Result<NormalityReport> {
    let pw = build_pw(w)?;
    let mut levels = Vec::new();
    for m in 1..=m_max {
        let points = lattice_points(&pw, m)?;
        let failures: Vec<Vec<i64>> = points
            .par_iter()
            .filter(|r| match normal_decompose_in(&pw, r, w) {
                Ok(parts) => {
                    let zero = LatticePoint::new(vec![0; pw.dim], 0);
                    let total = parts.iter().fold(zero, |acc, p| acc.add(p));
                    parts.len() as u64 != m || &total != *r
                }
                Err(_) => true,
            })
            .map(|r| r.coords.clone())
            .collect();
        levels.push(LevelReport { level: m, points: points.len(), failures });
    }
    Ok(NormalityReport { weights: w.clone(), levels })
}

/// Index of each level-1 lattice point of `P_w`, in lexicographic order.
pub(crate) fn point_index(points: &[LatticePoint]) -> HashMap<Vec<i64>, usize> {
    points.iter().enumerate().map(|(i, p)| (p.coords.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_admissible_partitions;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn pt(c: &[i64], level: u64) -> LatticePoint {
        LatticePoint::new(c.to_vec(), level)
    }

    fn coords(points: &[LatticePoint]) -> Vec<Vec<i64>> {
        points.iter().map(|p| p.coords.clone()).collect()
    }

    #[test]
    fn qw_pentagon() {
        let q = build_qw(&w(&[2; 5]));
        let pts = lattice_points(&q, 1).unwrap();
        assert_eq!(pts.len(), 6);
        let proj: Vec<(i64, i64)> = pts.iter().map(|p| (p.coords[1], p.coords[2])).collect();
        assert_eq!(proj, vec![(0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1)]);
        for p in &pts {
            assert_eq!((p.coords[0], p.coords[4]), (2, 0));
        }
        // the five vertices of the projected pentagon are among the points
        for v in [(1, 0), (2, 0), (2, 1), (1, 2), (0, 2)] {
            assert!(proj.contains(&v));
        }
    }

    #[test]
    fn qw_of_five_unit_weights_has_no_points() {
        let q = build_qw(&w(&[1; 5]));
        assert!(lattice_points(&q, 1).unwrap().is_empty());
        assert_eq!(lattice_points(&q, 2).unwrap().len(), 6);
    }

    #[test]
    fn qw_points_are_admissible_partitions() {
        for v in [vec![1, 2, 3, 2], vec![2; 5], vec![1; 6]] {
            let wv = w(&v);
            let q = build_qw(&wv);
            for d in 1..=3 {
                let pts: Vec<Vec<i64>> = coords(&lattice_points(&q, d).unwrap());
                let parts: Vec<Vec<i64>> = enumerate_admissible_partitions(&wv, d as i64)
                    .into_iter()
                    .map(|p| p.into_entries())
                    .collect();
                assert_eq!(pts, parts);
            }
        }
    }

    #[test]
    fn pw_inequalities_for_five_points() {
        let p = build_pw(&w(&[2; 5])).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.inequalities.len(), 9);
        assert_eq!(p.lattice, Lattice::Even);
        // agrees with the reduced system on a grid of integer points
        let reduced = |a: i64, b: i64| {
            (0..=4).contains(&a) && (0..=4).contains(&b) && a + b >= 2 && a + 2 >= b && b + 2 >= a
        };
        for a in -4..=8 {
            for b in -4..=8 {
                let even = a % 2 == 0 && b % 2 == 0;
                assert_eq!(p.contains(&[a, b], 1), even && reduced(a, b), "{a} {b}");
            }
        }
        let pts = coords(&lattice_points(&p, 1).unwrap());
        assert_eq!(pts, vec![vec![0, 2], vec![2, 0], vec![2, 2], vec![2, 4], vec![4, 2], vec![4, 4]]);
    }

    #[test]
    fn pw_interval_for_four_points() {
        let p = build_pw(&w(&[2; 4])).unwrap();
        assert_eq!(p.dim, 1);
        assert_eq!(coords(&lattice_points(&p, 1).unwrap()), vec![vec![0], vec![2], vec![4]]);
    }

    #[test]
    fn pw_rejects_bad_weights() {
        assert!(matches!(build_pw(&w(&[1; 5])), Err(Error::OddWeights(_))));
        assert!(matches!(build_pw(&w(&[2; 3])), Err(Error::TooFewWeights { .. })));
    }

    #[test]
    fn level_zero_is_origin() {
        let p = build_pw(&w(&[2; 5])).unwrap();
        assert_eq!(lattice_points(&p, 0).unwrap(), vec![pt(&[0, 0], 0)]);
    }

    #[test]
    fn fourier_motzkin_fallback_and_unbounded() {
        // x0 >= 0, x1 - x0 >= 0, 3 - x1 >= 0: x0 has no upper bound of its own
        let p = HPolytope {
            dim: 2,
            equalities: vec![],
            inequalities: vec![
                AffineConstraint::new(vec![1, 0], 0),
                AffineConstraint::new(vec![-1, 1], 0),
                AffineConstraint::new(vec![0, -1], 3),
            ],
            lattice: Lattice::Unit,
        };
        let pts = lattice_points(&p, 1).unwrap();
        assert_eq!(pts.len(), 10);
        assert_eq!(lattice_points(&p, 2).unwrap().len(), 28);

        let ray = HPolytope {
            dim: 1,
            equalities: vec![],
            inequalities: vec![AffineConstraint::new(vec![1], 0)],
            lattice: Lattice::Unit,
        };
        assert_eq!(lattice_points(&ray, 1), Err(Error::Unbounded(0)));
    }

    #[test]
    fn isomorphism_examples() {
        let w5 = w(&[2; 5]);
        let nu = PartitionNu::new(vec![2, 1, 0, 2, 0]);
        assert_eq!(qw_point_to_pw(&nu, &w5, 1).unwrap(), pt(&[2, 0], 1));
        let nu = PartitionNu::new(vec![2, 0, 2, 1, 0]);
        assert_eq!(qw_point_to_pw(&nu, &w5, 1).unwrap(), pt(&[0, 2], 1));
        assert_eq!(pw_point_to_qw(&pt(&[0, 2], 1), &w5).unwrap(), nu);
        assert!(matches!(pw_point_to_qw(&pt(&[1, 2], 1), &w5), Err(Error::NotInLattice(_))));
        assert!(matches!(pw_point_to_qw(&pt(&[0, 0], 1), &w5), Err(Error::NotInPolytope { .. })));
    }

    #[test]
    fn isomorphism_round_trips() {
        for v in [vec![2; 4], vec![2; 5], vec![2; 6], vec![2, 4, 2, 4]] {
            let wv = w(&v);
            let q = build_qw(&wv);
            let p = build_pw(&wv).unwrap();
            for d in 0..=3u64 {
                let qs = lattice_points(&q, d).unwrap();
                let mut image: Vec<LatticePoint> = qs
                    .iter()
                    .map(|x| qw_point_to_pw(&PartitionNu::new(x.coords.clone()), &wv, d).unwrap())
                    .collect();
                image.sort();
                assert_eq!(image, lattice_points(&p, d).unwrap());
                for u in &image {
                    let nu = pw_point_to_qw(u, &wv).unwrap();
                    assert_eq!(&qw_point_to_pw(&nu, &wv, d).unwrap(), u);
                }
            }
        }
    }

    #[test]
    fn even_round_examples() {
        let r = |p: i64, q: i64| Ratio::new(p, q);
        assert_eq!(even_round(&r(3, 1), Sign::Plus), 4);
        assert_eq!(even_round(&r(3, 1), Sign::Minus), 2);
        assert_eq!(even_round(&r(5, 2), Sign::Plus), 2);
        assert_eq!(even_round(&r(5, 2), Sign::Minus), 2);
        assert_eq!(even_round(&r(-1, 1), Sign::Plus), 0);
        assert_eq!(even_round(&r(-1, 1), Sign::Minus), -2);
        assert_eq!(even_round(&r(-7, 3), Sign::Minus), -2);
        assert_eq!(even_round(&r(4, 1), Sign::Minus), 4);
    }

    #[test]
    fn even_round_properties_exhaustive() {
        let signs = [Sign::Plus, Sign::Minus];
        let mut xs = Vec::new();
        for q in 1..=4i64 {
            for p in -40..=40i64 {
                xs.push(Ratio::new(p, q));
            }
        }
        for &s in &signs {
            for x in &xs {
                let ex = even_round(x, s);
                assert_eq!(ex % 2, 0);
                // (6)
                assert_eq!(even_round(&-*x, s), -even_round(x, -s));
                for a in (-10..=10i64).step_by(2) {
                    let ar = Ratio::from_integer(a);
                    // (2)
                    assert_eq!(even_round(&(*x + ar), s), ex + a);
                    // (3)
                    if ar >= *x {
                        assert!(a >= ex);
                    }
                }
            }
            for x in xs.iter().step_by(3) {
                for y in xs.iter().step_by(5) {
                    let (ex, ey) = (even_round(x, s), even_round(y, s));
                    // (1)
                    if x <= y {
                        assert!(ex <= ey);
                    }
                    // (5)
                    assert!(Ratio::from_integer(ex + ey) >= *x + *y - Ratio::from_integer(2));
                    // (4)
                    for a in (-10..=10i64).step_by(2) {
                        if *x + *y >= Ratio::from_integer(a) {
                            assert!(ex + even_round(y, -s) >= a);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn signs_examples() {
        let w5 = w(&[2; 5]);
        assert_eq!(admissible_signs(&pt(&[2, 2], 2), &w5), vec![Sign::Plus, Sign::Minus]);
        assert_eq!(admissible_signs(&pt(&[4, 4], 2), &w5), vec![Sign::Plus, Sign::Plus]);
        let w6 = w(&[2; 6]);
        assert_eq!(admissible_signs(&pt(&[4, 8, 4], 2), &w6), vec![Sign::Plus; 3]);
    }

    #[test]
    fn decompose_examples() {
        let w5 = w(&[2; 5]);
        assert_eq!(normal_decompose(&pt(&[2, 2], 2), &w5).unwrap(), vec![pt(&[2, 0], 1), pt(&[0, 2], 1)]);
        assert_eq!(normal_decompose(&pt(&[4, 4], 2), &w5).unwrap(), vec![pt(&[2, 2], 1), pt(&[2, 2], 1)]);
        assert_eq!(normal_decompose(&pt(&[2, 4], 1), &w5).unwrap(), vec![pt(&[2, 4], 1)]);
        assert!(matches!(normal_decompose(&pt(&[2, 4], 0), &w5), Err(Error::NotInPolytope { .. })));
    }

    #[test]
    fn balanced_pair_examples() {
        let w5 = w(&[2; 5]);
        let (u, u2) = balanced_pair(&pt(&[0, 2], 1), &pt(&[4, 2], 1), &w5).unwrap();
        assert_eq!((u, u2), (pt(&[2, 2], 1), pt(&[2, 2], 1)));
        let (u, u2) = balanced_pair(&pt(&[2, 0], 1), &pt(&[0, 2], 1), &w5).unwrap();
        assert_eq!((u, u2), (pt(&[2, 0], 1), pt(&[0, 2], 1)));
        let p = build_pw(&w5).unwrap();
        let pts = lattice_points(&p, 1).unwrap();
        for a in &pts {
            for b in &pts {
                let (u, u2) = balanced_pair(a, b, &w5).unwrap();
                let (x, x2) = balanced_pair(b, a, &w5).unwrap();
                assert_eq!((&u, &u2), (&x, &x2));
                assert_eq!(u.add(&u2), a.add(b));
                assert!(u.coords.iter().zip(&u2.coords).all(|(p, q)| (p - q).abs() <= 2));
            }
        }
    }

    #[test]
    fn normality_small() {
        let report = normality_check(&w(&[2; 5]), 3).unwrap();
        assert!(report.passed());
        let counts: Vec<usize> = report.levels.iter().map(|l| l.points).collect();
        assert_eq!(counts[0], 6);
        for v in [vec![2; 4], vec![2, 4, 2, 4, 2, 4]] {
            assert!(normality_check(&w(&v), 2).unwrap().passed());
        }
    }
}
