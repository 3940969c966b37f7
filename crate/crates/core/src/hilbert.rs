//! Hilbert functions, degrees and Hilbert series of `R_w`.
//!
//! For `d|w|` even,
//!
//! ```text
//! h(d) = Σ_{J ⊆ [n], |w_J| < |w|/2} (-1)^{|J|} C(d(|w|/2 - |w_J|) + n - |J| - 2, n - 2)
//! ```
//!
//! and `h(d) = 0` otherwise. All sums run over a [`SubsetProfile`], so the
//! `2^n` walk happens once per weight vector and the big-integer work is
//! proportional to the number of distinct `(|J|, |w_J|)` pairs.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{GradedSeries, RationalHilbertForm};
use crate::subsets::SubsetProfile;
use crate::weights::WeightVector;

/// Counting binomial: `C(a, b)` for `0 <= b <= a`, and `0` otherwise.
pub fn binom_count<T: Scalar>(a: i64, b: i64) -> T {
    if b < 0 || a < 0 || a < b {
        return T::zero();
    }
    let k = b.min(a - b);
    let mut acc = T::one();
    for i in 0..k {
        // acc = C(a, i) here, so the division is exact
        acc = acc * T::from_i64_exact(a - i) / T::from_i64_exact(i + 1);
    }
    acc
}

fn signed<T: Scalar>(value: T, size: usize, count: u64) -> T {
    let v = value * T::from_u64(count).expect("subset counts fit every scalar");
    if size.is_multiple_of(2) { v } else { -v }
}

/// `π(n, w_I, k)`: the number of `ν ∈ N^n` with `Σν = k` and `ν_i <= w_i`
/// for every bounded index (`Some(w_i)`); `None` means unbounded.
pub fn pi_count<T: Scalar>(bounds: &[Option<i64>], k: i64) -> T {
    let n = bounds.len() as i64;
    if k < 0 || n == 0 {
        return if n == 0 && k == 0 { T::one() } else { T::zero() };
    }
    let bounded: Vec<i64> = bounds.iter().flatten().copied().collect();
    SubsetProfile::new(&bounded)
        .iter()
        .fold(T::zero(), |acc, (size, sum, count)| {
            let top = n - 1 + k - (sum + size as i64);
            acc + signed(binom_count::<T>(top, n - 1), size, count)
        })
}

/// Evaluates `h(d)` repeatedly for one weight vector.
#[derive(Clone, Debug)]
pub struct HilbertFunction {
    n: i64,
    total: i64,
    // (size, sum, multiplicity) restricted to 2|w_J| < |w|
    terms: Vec<(usize, i64, u64)>,
}

impl HilbertFunction {
    pub fn new(w: &WeightVector) -> Self {
        Self::from_entries(w.entries())
    }

    fn from_entries(entries: &[i64]) -> Self {
        let total: i64 = entries.iter().sum();
        let terms = SubsetProfile::new(entries)
            .iter()
            .filter(|&(_, sum, _)| 2 * sum < total)
            .collect();
        Self { n: entries.len() as i64, total, terms }
    }

    pub fn at<T: Scalar>(&self, d: u64) -> T {
        let d = d as i64;
        if (d * self.total) % 2 != 0 {
            return T::zero();
        }
        let n = self.n;
        self.terms.iter().fold(T::zero(), |acc, &(size, sum, count)| {
            // d(|w|/2 - |w_J|) computed without halving |w|
            let top = d * (self.total - 2 * sum) / 2 + n - size as i64 - 2;
            acc + signed(binom_count::<T>(top, n - 2), size, count)
        })
    }
}

/// `h(d) = dim (R_w)_d`.
pub fn hilbert_function<T: Scalar>(w: &WeightVector, d: u64) -> T {
    HilbertFunction::new(w).at(d)
}

/// Degree of `M_w` from the closed formula; `|w|` must be even.
///
/// Fails on a non-exact final division by `n - 2` or a nonpositive result,
/// both of which indicate weights with an empty stable locus.
pub fn degree<T: Scalar>(w: &WeightVector) -> Result<T> {
    let half = w
        .half()
        .ok_or_else(|| Error::DegenerateWeights(format!("|w| = {} is odd", w.total())))?;
    let n = w.n() as i64;
    let mut acc = T::zero();
    for (size, sum, count) in SubsetProfile::new(w.entries()).iter() {
        if sum >= half {
            continue;
        }
        let base = T::from_i64_exact(half - sum);
        let power = num_traits::pow(base, (n - 3) as usize);
        let inner: i64 = (0..=n - 3).map(|i| n - size as i64 - 2 - i).sum();
        acc = acc + signed(power * T::from_i64_exact(inner), size, count);
    }
    let divisor = T::from_i64_exact(n - 2);
    let (q, r) = acc.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::DegenerateWeights(format!("{acc} is not divisible by n - 2 = {divisor}")));
    }
    if !q.is_positive() {
        return Err(Error::DegenerateWeights(format!("degree formula gives {q}")));
    }
    Ok(q)
}

/// A polynomial in `d` with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial<T: Clone + num_integer::Integer> {
    coeffs: Vec<Ratio<T>>,
}

impl<T: Scalar> HilbertPolynomial<T> {
    /// Interpolates the unique polynomial of degree `<= values.len() - 1`
    /// through `(0, values[0]), (1, values[1]), ...`.
    pub fn interpolate(values: &[T]) -> Self {
        // forward differences Δ^j h(0)
        let mut diffs: Vec<T> = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|p| p[1].clone() - p[0].clone()).collect();
        }
        // Σ_j Δ^j h(0) · C(d, j), with C(d, j) expanded as a falling factorial
        let mut coeffs = vec![Ratio::zero(); values.len().max(1)];
        let mut falling: Vec<Ratio<T>> = vec![Ratio::one()];
        let mut factorial = T::one();
        for (j, delta) in leading.into_iter().enumerate() {
            if j > 0 {
                factorial = factorial * T::from_usize(j).expect("small index");
                // falling *= (d - (j - 1))
                let shift = Ratio::from_integer(T::from_usize(j - 1).expect("small index"));
                let mut next = vec![Ratio::zero(); falling.len() + 1];
                for (k, c) in falling.iter().enumerate() {
                    next[k + 1] = next[k + 1].clone() + c.clone();
                    next[k] = next[k].clone() - c.clone() * shift.clone();
                }
                falling = next;
            }
            let scale = Ratio::new(delta, factorial.clone());
            for (k, c) in falling.iter().enumerate() {
                coeffs[k] = coeffs[k].clone() + c.clone() * scale.clone();
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Ratio<T>] {
        &self.coeffs
    }

    /// Coefficient of `d^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> Ratio<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, d: i64) -> Ratio<T> {
        let x = Ratio::from_integer(T::from_i64_exact(d));
        self.coeffs
            .iter()
            .rev()
            .fold(Ratio::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Hilbert polynomial of `R_w` through `h(0), ..., h(n-3)`, checked against
/// `h(n-2)` and `h(n-1)`.
pub fn hilbert_polynomial<T: Scalar>(w: &WeightVector) -> Result<HilbertPolynomial<T>> {
    if !w.even_total() {
        return Err(Error::DegenerateWeights(format!("|w| = {} is odd", w.total())));
    }
    let h = HilbertFunction::new(w);
    let n = w.n() as u64;
    let values: Vec<T> = (0..=n - 3).map(|d| h.at(d)).collect();
    let poly = HilbertPolynomial::interpolate(&values);
    for d in [n - 2, n - 1] {
        let expected: T = h.at(d);
        let got = poly.eval(d as i64);
        if got != Ratio::from_integer(expected.clone()) {
            return Err(Error::PolynomialMismatch {
                degree: d,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Degree from the closed formula, cross-checked against `(n-3)!` times
/// the coefficient of `d^{n-3}` in the Hilbert polynomial.
pub fn degree_cross_checked<T: Scalar>(w: &WeightVector) -> Result<T> {
    let formula: T = degree(w)?;
    let poly: HilbertPolynomial<T> = hilbert_polynomial(w)?;
    let k = w.n() - 3;
    let factorial = (1..=k).fold(T::one(), |acc, i| acc * T::from_usize(i).expect("small index"));
    let scaled = poly.coeff(k) * Ratio::from_integer(factorial);
    if scaled != Ratio::from_integer(formula.clone()) {
        return Err(Error::DegreeMismatch {
            formula: formula.to_string(),
            polynomial: scaled.to_string(),
        });
    }
    Ok(formula)
}

/// `h(0), ..., h(D)`.
pub fn hilbert_series<T: Scalar>(w: &WeightVector, degree: usize) -> GradedSeries<T> {
    let h = HilbertFunction::new(w);
    GradedSeries::new((0..=degree as u64).map(|d| h.at(d)).collect())
}

/// `numerator / (1 - z)^e`; the usual choice is `e = n - 2`.
pub fn rational_form<T: Scalar>(series: &GradedSeries<T>, e: usize) -> Result<RationalHilbertForm<T>> {
    RationalHilbertForm::from_series(series, e)
}

/// Coefficients of `H(-z)^{-1}` and the first negative one, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulCheck<T: Scalar> {
    pub coefficients: GradedSeries<T>,
    pub first_negative: Option<usize>,
}

/// A negative coefficient of `H(-z)^{-1}` rules out the Koszul property;
/// nonnegative coefficients up to `D` are inconclusive.
pub fn koszul_numerical_check<T: Scalar>(w: &WeightVector, depth: usize) -> KoszulCheck<T> {
    let series = hilbert_series::<T>(w, depth);
    let coefficients = series
        .alternate()
        .inverse()
        .expect("h(0) = 1 is a unit");
    let first_negative = coefficients.first_negative();
    KoszulCheck { coefficients, first_negative }
}

/// Multigraded Hilbert function of the Plücker algebra at `w ∈ Z^n`: the
/// number of semistandard tableaux of shape `(|w|/2, |w|/2)` and content `w`.
pub fn multigraded_hilbert<T: Scalar>(w: &[i64]) -> T {
    let total: i64 = w.iter().sum();
    if total % 2 != 0 || w.iter().any(|&wj| wj < 0 || 2 * wj > total) {
        return T::zero();
    }
    // zero entries do not occur in any tableau
    let support: Vec<i64> = w.iter().copied().filter(|&wj| wj > 0).collect();
    if support.len() < 2 {
        return if total == 0 { T::one() } else { T::zero() };
    }
    HilbertFunction::from_entries(&support).at(1)
}

/// Both sides of `C(n+d-1, d)^2 - C(n+d, d+1) C(n+d-2, d-1) = Σ_{|w| = 2d}
/// h(w)` over `w ∈ N^n`.
pub fn grassmannian_identity_sides<T: Scalar>(n: usize, d: usize) -> (T, T) {
    let (n, d) = (n as i64, d as i64);
    let lhs = binom_count::<T>(n + d - 1, d) * binom_count::<T>(n + d - 1, d)
        - binom_count::<T>(n + d, d + 1) * binom_count::<T>(n + d - 2, d - 1);
    let mut rhs = T::zero();
    let bounds = vec![2 * d; n as usize];
    for w in crate::combinatorics::enumerate_box_partitions(&bounds, 2 * d) {
        rhs = rhs + multigraded_hilbert::<T>(w.entries());
    }
    (lhs, rhs)
}

pub fn grassmannian_identity_check(n: usize, d: usize) -> bool {
    let (lhs, rhs) = grassmannian_identity_sides::<num_bigint::BigInt>(n, d);
    lhs == rhs
}

/// `Σ_{J ⊆ [n]} (-1)^{|J|} (|w|/2 - |w_J|)^{n-2}` scaled by `2^{n-2}`.
pub fn cancellation_sum<T: Scalar>(w: &WeightVector) -> T {
    let n = w.n();
    SubsetProfile::new(w.entries())
        .iter()
        .fold(T::zero(), |acc, (size, sum, count)| {
            let base = T::from_i64_exact(w.total() - 2 * sum);
            acc + signed(num_traits::pow(base, n - 2), size, count)
        })
}

/// The top-degree terms of the Hilbert polynomial cancel.
pub fn cancellation_identity_check(w: &WeightVector) -> bool {
    cancellation_sum::<num_bigint::BigInt>(w).is_zero()
}
