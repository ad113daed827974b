//! Truncated formal power series with exact coefficients, and the
//! Euler/Jennings product identities that connect a Hilbert series to the
//! graded ranks of a Lie algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::Scalar;

/// Truncation order used when nothing else is requested.
pub const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series is not invertible: constant term {constant} is not a unit")]
    NonInvertible { constant: String },
    #[error("logarithm needs constant term 1, found {constant}")]
    LogDomain { constant: String },
    #[error("exponential needs constant term 0, found {constant}")]
    ExpDomain { constant: String },
    #[error("coefficient {degree} cannot be divided exactly in this coefficient ring")]
    InexactDivision { degree: usize },
    #[error("not an Euler product: exponent at degree {degree} is {value}, not an integer")]
    NotEulerian { degree: usize, value: String },
}

/// A power series `c_0 + c_1 t + ... + c_N t^N`, all higher terms discarded.
///
/// The coefficient vector always has exactly `N + 1` entries, so two series
/// compare equal only when their truncation orders agree.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// Builds a series from leading coefficients. Missing terms are zero and
    /// terms beyond `order` are dropped.
    pub fn from_coefficients(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::from_coefficients(coeffs.iter().map(|&c| T::from_i64(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `t^n`; zero past the truncation order.
    pub fn coefficient(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    /// Index of the last nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Same series at a different truncation order (zero-padded or cut).
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coefficients(self.coeffs.clone(), order)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// Cauchy product, truncated.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// The series `s(-t)`.
    pub fn negate_variable(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        let non_invertible = || SeriesError::NonInvertible {
            constant: c0.to_string(),
        };
        let inv0 = T::one().div_exact(c0).ok_or_else(non_invertible)?;
        let n = self.order();
        let mut r = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                let s = &self.coeffs[j];
                if !s.is_zero() {
                    acc = acc + s.clone() * r[k - j].clone();
                }
            }
            r.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: r })
    }

    /// Formal logarithm `sum_{n>=1} (-1)^{n+1} (s-1)^n / n` for `s(0) = 1`.
    ///
    /// Computed through `n b_n = n s_n - sum_{k<n} k b_k s_{n-k}`, which is
    /// the coefficient form of `s' = s b'`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogDomain {
                constant: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        let mut b = vec![T::zero(); n + 1];
        for k in 1..=n {
            let mut acc = T::from_i64(k as i64) * self.coeffs[k].clone();
            for j in 1..k {
                if !b[j].is_zero() {
                    acc = acc - T::from_i64(j as i64) * b[j].clone() * self.coeffs[k - j].clone();
                }
            }
            b[k] = acc
                .div_exact(&T::from_i64(k as i64))
                .ok_or(SeriesError::InexactDivision { degree: k })?;
        }
        Ok(Self { coeffs: b })
    }

    /// Formal exponential for `f(0) = 0`, the inverse of [`Self::log`].
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpDomain {
                constant: self.coeffs[0].to_string(),
            });
        }
        let n = self.order();
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + T::from_i64(j as i64) * self.coeffs[j].clone() * e[k - j].clone();
                }
            }
            e[k] = acc
                .div_exact(&T::from_i64(k as i64))
                .ok_or(SeriesError::InexactDivision { degree: k })?;
        }
        Ok(Self { coeffs: e })
    }

    /// Multiplies in place by `(1 - t^step)^exponent` for any integer exponent.
    fn mul_binomial(&mut self, step: usize, exponent: &BigInt) {
        if exponent.is_zero() || step == 0 || step > self.order() {
            return;
        }
        let n = self.order();
        // Generalized binomial coefficients of (1 - x)^e, signs folded in.
        let mut factor: Vec<T> = Vec::with_capacity(n / step + 1);
        let mut binom = BigInt::one();
        factor.push(T::one());
        for k in 1..=n / step {
            binom = binom * (exponent - BigInt::from(k - 1)) / BigInt::from(k);
            let term = if k % 2 == 1 { -binom.clone() } else { binom.clone() };
            factor.push(T::from_integer(&term));
        }
        for i in (0..=n).rev() {
            let mut acc = T::zero();
            for (k, f) in factor.iter().enumerate().skip(1) {
                let shift = k * step;
                if shift > i {
                    break;
                }
                let c = &self.coeffs[i - shift];
                if !c.is_zero() && !f.is_zero() {
                    acc = acc + f.clone() * c.clone();
                }
            }
            if !acc.is_zero() {
                self.coeffs[i] = self.coeffs[i].clone() + acc;
            }
        }
    }
}

impl<T: Scalar> fmt::Debug for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(t^{})]", self.order() + 1)
    }
}

impl<T: Scalar> fmt::Display for TruncatedSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// Integer exponents `a_1, a_2, ...` indexed from degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExponentSequence(Vec<BigInt>);

impl ExponentSequence {
    pub fn new(values: Vec<BigInt>) -> Self {
        Self(values)
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    /// Value at degree `n >= 1`; zero past the stored range.
    pub fn get(&self, n: usize) -> BigInt {
        assert!(n >= 1, "exponent sequences start at degree 1");
        self.0.get(n - 1).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: usize, value: BigInt) {
        assert!(n >= 1, "exponent sequences start at degree 1");
        if self.0.len() < n {
            self.0.resize(n, BigInt::zero());
        }
        self.0[n - 1] = value;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values in degree order, starting at degree 1.
    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.0.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }
}

/// Which enveloping-algebra product the exponents describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelMode {
    /// `prod (1 - t^n)^{-a_n}`
    Ordinary,
    /// `prod ((1 - t^{pn}) / (1 - t^n))^{a_n}` for the given prime.
    Restricted(u32),
}

/// `prod_{n=1..N} (1 - t^n)^{-a_n}`, truncated at `order`.
pub fn euler_product<T: Scalar>(a: &ExponentSequence, order: usize) -> TruncatedSeries<T> {
    let mut s = TruncatedSeries::one(order);
    for (n, e) in a.iter().take_while(|(n, _)| *n <= order) {
        s.mul_binomial(n, &-e);
    }
    s
}

/// `prod_{n=1..N} ((1 - t^{pn}) / (1 - t^n))^{a_n}`, truncated at `order`.
pub fn jennings_product<T: Scalar>(a: &ExponentSequence, p: u32, order: usize) -> TruncatedSeries<T> {
    assert!(p >= 2, "restricted products need p >= 2");
    let mut s = TruncatedSeries::one(order);
    for (n, e) in a.iter().take_while(|(n, _)| *n <= order) {
        s.mul_binomial(n, &-e);
        s.mul_binomial(n * p as usize, e);
    }
    s
}

/// Recovers the exponents of an Euler (or Jennings) product degree by degree.
///
/// After the factors for degrees below `n` are divided out, the coefficient
/// of `t^n` is exactly the next exponent. A non-integer there means the input
/// is not the Hilbert series of an envelope of a torsion-free Lie algebra.
pub fn peel_exponents<T: Scalar>(
    c: &TruncatedSeries<T>,
    mode: PeelMode,
) -> Result<ExponentSequence, SeriesError> {
    if !c.coefficients()[0].is_one() {
        return Err(SeriesError::LogDomain {
            constant: c.coefficients()[0].to_string(),
        });
    }
    let order = c.order();
    let mut rest = c.clone();
    let mut out = ExponentSequence::zeros(order);
    for n in 1..=order {
        let coeff = &rest.coefficients()[n];
        let a = coeff.to_integer().ok_or_else(|| SeriesError::NotEulerian {
            degree: n,
            value: coeff.to_string(),
        })?;
        rest.mul_binomial(n, &a);
        if let PeelMode::Restricted(p) = mode {
            assert!(p >= 2, "restricted products need p >= 2");
            rest.mul_binomial(n * p as usize, &-&a);
        }
        out.set(n, a);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = TruncatedSeries<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Untruncated polynomial product on plain integers.
    fn naive_poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Number of aperiodic words of length n over d letters, divided by n.
    fn necklace_count(d: usize, n: usize) -> i64 {
        let total = d.pow(n as u32);
        let mut primitive = 0;
        for w in 0..total {
            let word: Vec<usize> = (0..n).map(|i| (w / d.pow(i as u32)) % d).collect();
            let periodic = (1..n).any(|s| n.is_multiple_of(s) && (0..n).all(|i| word[i] == word[(i + s) % n]));
            if !periodic {
                primitive += 1;
            }
        }
        primitive / n as i64
    }

    #[test]
    fn difference_of_squares() {
        let a = Q::from_i64s(&[1, 1], 4);
        let b = Q::from_i64s(&[1, -1], 4);
        assert_eq!(a.mul(&b).unwrap(), Q::from_i64s(&[1, 0, -1, 0, 0], 4));
    }

    #[test]
    fn multiply_by_one() {
        let s = Q::from_i64s(&[3, -2, 7, 0, 5], 4);
        assert_eq!(s.mul(&Q::one(4)).unwrap(), s);
    }

    #[test]
    fn cube_of_surface_polynomial() {
        let cubed = naive_poly_mul(&naive_poly_mul(&[1, 4, 1], &[1, 4, 1]), &[1, 4, 1]);
        assert_eq!(&cubed[..5], &[1, 12, 51, 88, 51]);
        let s = Q::from_i64s(&[1, 4, 1], 4);
        let got = s.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(got, Q::from_i64s(&cubed, 4));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = Q::one(3).mul(&Q::one(4)).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 3, right: 4 });
    }

    #[test]
    fn geometric_inverse() {
        let inv = Q::from_i64s(&[1, -1], 6).inverse().unwrap();
        assert_eq!(inv, Q::from_i64s(&[1; 7], 6));
    }

    #[test]
    fn inverse_of_example_denominator() {
        let den = Q::from_i64s(&[1, -12, 35, -16, 2], 6);
        let inv = den.inverse().unwrap();
        assert_eq!(&inv.coefficients()[..4], Q::from_i64s(&[1, 12, 109, 904], 3).coefficients());
        assert_eq!(inv.mul(&den).unwrap(), Q::one(6));
        assert_eq!(inv.inverse().unwrap(), den);
    }

    #[test]
    fn zero_constant_is_not_invertible() {
        assert!(matches!(
            Q::from_i64s(&[0, 1], 3).inverse(),
            Err(SeriesError::NonInvertible { .. })
        ));
        // 2 is not a unit over the integers but is over the rationals.
        let z = TruncatedSeries::<BigInt>::from_i64s(&[2, 1], 3);
        assert!(z.inverse().is_err());
        assert!(Q::from_i64s(&[2, 1], 3).inverse().is_ok());
    }

    #[test]
    fn log_of_geometric_series() {
        let g = Q::from_i64s(&[1, -1], 8).inverse().unwrap();
        let l = g.log().unwrap();
        for n in 1..=8 {
            assert_eq!(l.coefficient(n), q(1, n as i64));
        }
        assert!(l.coefficient(0).is_zero());
    }

    #[test]
    fn log_of_example_gocha() {
        let g = Q::from_i64s(&[1, -12, 35, -16, 2], 6).inverse().unwrap();
        let l = g.log().unwrap();
        // b2 = c2 - c1^2/2, b3 = c3 - c1 c2 + c1^3/3 with c = 12, 109, 904.
        let (c1, c2, c3) = (q(12, 1), q(109, 1), q(904, 1));
        let b2 = c2.clone() - c1.clone() * c1.clone() / q(2, 1);
        let b3 = c3 - c1.clone() * c2 + c1.clone() * c1.clone() * c1 / q(3, 1);
        assert_eq!(b2, q(37, 1));
        assert_eq!(b3, q(172, 1));
        assert_eq!(l.coefficient(1), q(12, 1));
        assert_eq!(l.coefficient(2), b2);
        assert_eq!(l.coefficient(3), b3);
    }

    #[test]
    fn log_domain() {
        assert_eq!(Q::one(5).log().unwrap(), Q::zero(5));
        assert!(matches!(Q::from_i64s(&[2, 1], 3).log(), Err(SeriesError::LogDomain { .. })));
    }

    #[test]
    fn exp_inverts_log() {
        let s = Q::from_i64s(&[1, 3, -2, 5, 1], 9);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
    }

    #[test]
    fn euler_product_cases() {
        let free = euler_product::<BigRational>(&ExponentSequence::from_i64s(&[3]), 6);
        assert_eq!(free, Q::from_i64s(&[1, -3, 3, -1], 6).inverse().unwrap());
        assert_eq!(euler_product::<BigRational>(&ExponentSequence::zeros(6), 6), Q::one(6));

        let witt: Vec<i64> = (1..=6).map(|n| necklace_count(2, n)).collect();
        assert_eq!(witt, vec![2, 1, 2, 3, 6, 9]);
        let prod = euler_product::<BigRational>(&ExponentSequence::from_i64s(&witt), 6);
        assert_eq!(prod, Q::from_i64s(&[1, -2], 6).inverse().unwrap());
    }

    #[test]
    fn jennings_product_cases() {
        let s = jennings_product::<BigRational>(&ExponentSequence::from_i64s(&[1]), 2, 6);
        assert_eq!(s, Q::from_i64s(&[1, 1], 6));
        assert_eq!(jennings_product::<BigRational>(&ExponentSequence::zeros(6), 3, 6), Q::one(6));
        // Powers-of-two indicator recovers 1/(1-t) over p = 2.
        let ind = ExponentSequence::from_i64s(&[1, 1, 0, 1, 0, 0, 0, 1]);
        assert_eq!(
            jennings_product::<BigRational>(&ind, 2, 8),
            Q::from_i64s(&[1; 9], 8)
        );
    }

    #[test]
    fn peel_free_algebras_gives_necklaces() {
        for d in 1..=3usize {
            let c = Q::from_i64s(&[1, -(d as i64)], 6).inverse().unwrap();
            let a = peel_exponents(&c, PeelMode::Ordinary).unwrap();
            let expect: Vec<i64> = (1..=6).map(|n| necklace_count(d, n)).collect();
            assert_eq!(a, ExponentSequence::from_i64s(&expect));
        }
    }

    #[test]
    fn peel_example_gocha() {
        let c = Q::from_i64s(&[1, -12, 35, -16, 2], 5).inverse().unwrap();
        let a = peel_exponents(&c, PeelMode::Ordinary).unwrap();
        assert_eq!(a, ExponentSequence::from_i64s(&[12, 31, 168, 928, 5704]));
    }

    #[test]
    fn peel_reports_first_bad_degree() {
        let c = Q::from_coefficients(vec![q(1, 1), q(2, 1), q(1, 2)], 4);
        match peel_exponents(&c, PeelMode::Ordinary) {
            Err(SeriesError::NotEulerian { degree, .. }) => assert_eq!(degree, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integer_series_work_too() {
        let z = TruncatedSeries::<BigInt>::from_i64s(&[1, -12, 35, -16, 2], 5);
        let inv = z.inverse().unwrap();
        assert_eq!(
            peel_exponents(&inv, PeelMode::Ordinary).unwrap(),
            ExponentSequence::from_i64s(&[12, 31, 168, 928, 5704])
        );
    }

    #[test]
    fn negative_exponents_are_allowed() {
        // (1 - t)^{+1} is the Euler product with a_1 = -1.
        let s = euler_product::<BigRational>(&ExponentSequence::from_i64s(&[-1]), 4);
        assert_eq!(s, Q::from_i64s(&[1, -1], 4));
        assert_eq!(
            peel_exponents(&s, PeelMode::Ordinary).unwrap(),
            ExponentSequence::from_i64s(&[-1, 0, 0, 0])
        );
    }
}
