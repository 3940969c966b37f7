//! Truncated integer power series.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::binom_count;
use crate::scalar::Scalar;

/// Coefficients `a_0, ..., a_D` of a power series known up to degree `D`.
///
/// Nothing is assumed about coefficients beyond `D`; binary operations
/// truncate to the smaller of the two degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> GradedSeries<T> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Self { coeffs }
    }

    pub fn one(degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[0] = T::one();
        Self { coeffs }
    }

    /// `(1 - z)^e` truncated at `degree`.
    pub fn one_minus_z_pow(e: usize, degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| {
                let c: T = binom_count(e as i64, k as i64);
                if k % 2 == 0 { c } else { -c }
            })
            .collect();
        Self { coeffs }
    }

    /// `(1 - z)^{-e}` truncated at `degree`.
    pub fn inverse_one_minus_z_pow(e: usize, degree: usize) -> Self {
        let coeffs = (0..=degree)
            .map(|k| binom_count((k + e) as i64 - 1, e as i64 - 1))
            .collect();
        Self { coeffs }
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::new(self.coeffs[..=degree.min(self.truncation_degree())].to_vec())
    }

    /// Cauchy product up to the smaller truncation degree.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.truncation_degree().min(other.truncation_degree());
        let coeffs = (0..=degree)
            .map(|k| {
                (0..=k).fold(T::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        Self { coeffs }
    }

    /// `f(z) ↦ f(-z)`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c.clone() })
            .collect();
        Self { coeffs }
    }

    /// Multiplicative inverse to the same degree. The constant term must be
    /// `±1` so that the inverse stays integral.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !a0.abs().is_one() {
            return Err(Error::NotInvertible);
        }
        let mut inv: Vec<T> = Vec::with_capacity(self.coeffs.len());
        inv.push(a0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(T::zero(), |acc, i| acc + self.coeffs[i].clone() * inv[k - i].clone());
            // a0 = ±1, so dividing by a0 is multiplying by a0
            inv.push(-(s * a0.clone()));
        }
        Ok(Self { coeffs: inv })
    }

    /// Smallest degree with a negative coefficient.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }
}

impl<T: Scalar> fmt::Display for GradedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl<T: Scalar> Serialize for GradedSeries<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        text.serialize(serializer)
    }
}

/// `numerator(z) / (1 - z)^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalHilbertForm<T> {
    numerator: Vec<T>,
    denominator_exponent: usize,
}

impl<T: Scalar> RationalHilbertForm<T> {
    pub fn new(numerator: Vec<T>, denominator_exponent: usize) -> Self {
        Self { numerator, denominator_exponent }
    }

    /// Multiplies `series` by `(1 - z)^e` and requires every coefficient in
    /// degrees `e..=D` to vanish, i.e. a numerator of degree below `e`.
    pub fn from_series(series: &GradedSeries<T>, e: usize) -> Result<Self> {
        let degree = series.truncation_degree();
        if degree < e {
            return Err(Error::TruncationTooLow { degree, required: e });
        }
        let product = series.mul(&GradedSeries::one_minus_z_pow(e, degree));
        if let Some(k) = (e..=degree).find(|&k| !product.coeffs[k].is_zero()) {
            return Err(Error::WrongDenominator { degree: k, exponent: e });
        }
        let mut numerator = product.into_coeffs();
        while numerator.len() > 1 && numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        Ok(Self { numerator, denominator_exponent: e })
    }

    pub fn numerator(&self) -> &[T] {
        &self.numerator
    }

    pub fn denominator_exponent(&self) -> usize {
        self.denominator_exponent
    }

    /// Power-series expansion up to `degree`.
    pub fn expand(&self, degree: usize) -> GradedSeries<T> {
        let mut num = self.numerator.clone();
        num.resize(degree + 1, T::zero());
        num.truncate(degree + 1);
        GradedSeries::new(num).mul(&GradedSeries::inverse_one_minus_z_pow(self.denominator_exponent, degree))
    }
}

impl<T: Scalar> fmt::Display for RationalHilbertForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let coeff = if magnitude.is_one() && k > 0 { String::new() } else { magnitude.to_string() };
            out.push_str(&match k {
                0 => coeff,
                1 => format!("{coeff}z"),
                _ => format!("{coeff}z^{k}"),
            });
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "({out})/(1-z)^{}", self.denominator_exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn s(v: &[i64]) -> GradedSeries<i64> {
        GradedSeries::new(v.to_vec())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = GradedSeries::<i64>::one_minus_z_pow(1, 5);
        assert_eq!(one_minus_z.coeffs(), &[1, -1, 0, 0, 0, 0]);
        assert_eq!(one_minus_z.inverse().unwrap().coeffs(), &[1; 6]);
        assert_eq!(GradedSeries::<i64>::inverse_one_minus_z_pow(2, 4).coeffs(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn inverse_needs_unit_constant() {
        assert_eq!(s(&[2, 1]).inverse(), Err(Error::NotInvertible));
        assert_eq!(s(&[-1, 1]).inverse().unwrap().coeffs(), &[-1, -1]);
    }

    #[test]
    fn product_truncates_to_shorter() {
        let p = s(&[1, 1, 1]).mul(&s(&[1, 2]));
        assert_eq!(p.coeffs(), &[1, 3]);
        assert_eq!(s(&[1, 2, 3]).alternate().coeffs(), &[1, -2, 3]);
    }

    #[test]
    fn rational_form_of_binomial_series() {
        // Σ (d+1) z^d = 1/(1-z)^2
        let series = s(&[1, 2, 3, 4, 5]);
        let form = RationalHilbertForm::from_series(&series, 2).unwrap();
        assert_eq!(form.numerator(), &[1]);
        assert_eq!(form.expand(4), series);
        assert_eq!(
            RationalHilbertForm::from_series(&series, 1),
            Err(Error::WrongDenominator { degree: 1, exponent: 1 })
        );
        assert!(matches!(
            RationalHilbertForm::from_series(&s(&[1, 2]), 2),
            Err(Error::TruncationTooLow { .. })
        ));
        assert_eq!(form.to_string(), "(1)/(1-z)^2");
        let mixed = RationalHilbertForm::new(vec![1i64, -3, 0, 1, 2], 3);
        assert_eq!(mixed.to_string(), "(1 - 3z + z^3 + 2z^4)/(1-z)^3");
    }

    #[test]
    fn bigint_and_i64_agree() {
        let a = s(&[1, -3, 7, 2, -5]);
        let b = GradedSeries::new(a.coeffs().iter().map(|&c| BigInt::from(c)).collect());
        let ai = a.inverse().unwrap();
        let bi = b.inverse().unwrap();
        assert_eq!(bi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                   ai.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
}
