//! Ranks of the graded Lie algebras of the lower central series (`a_n(Z_p)`)
//! and of the Zassenhaus filtration (`a_n(F_p)`), obtained from the gocha
//! series by Möbius inversion, and cross-checked by three routes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::numtheory::{divisors, moebius, p_valuation};
use crate::scalar::Scalar;
use crate::series::{euler_product, jennings_product, peel_exponents, ExponentSequence, PeelMode, SeriesError};
use crate::Series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("rank at degree {degree} is {value}, not an integer")]
    NotIntegral { degree: usize, value: String },
    #[error("gocha coefficient at degree {degree} is {value}, not an integer")]
    NonIntegralSeries { degree: usize, value: String },
    #[error("degree {degree}: Möbius formula gives {mobius}, peeling gives {peel}")]
    ConventionMismatch { degree: usize, mobius: BigInt, peel: BigInt },
}

fn integral(degree: usize, value: BigRational) -> Result<BigInt, RankError> {
    Scalar::to_integer(&value).ok_or_else(|| RankError::NotIntegral {
        degree,
        value: value.to_string(),
    })
}

/// Coefficients `b_1..b_N` of `log(gocha)`.
pub fn b_from_gocha(g: &Series) -> Result<Vec<BigRational>, RankError> {
    Ok(g.log()?.into_coefficients().into_iter().skip(1).collect())
}

/// `a_n = (1/n) sum_{m | n} mu(n/m) m b_m`.
pub fn a_zp(b: &[BigRational]) -> Result<ExponentSequence, RankError> {
    let mut out = ExponentSequence::zeros(b.len());
    for n in 1..=b.len() {
        let mut acc = BigRational::zero();
        for m in divisors(n as u64) {
            let mu = moebius(n as u64 / m).expect("positive");
            if mu != 0 {
                acc += BigRational::from_integer((mu as i64 * m as i64).into()) * &b[m as usize - 1];
            }
        }
        out.set(n, integral(n, acc / BigRational::from_integer(n.into()))?);
    }
    Ok(out)
}

/// `a_n(F_p) = a_m + a_{mp} + ... + a_n` where `n = m p^v`, `m` prime to `p`.
pub fn a_fp_lazard(a_z: &ExponentSequence, p: u32) -> ExponentSequence {
    let mut out = ExponentSequence::zeros(a_z.len());
    for n in 1..=a_z.len() {
        let (v, m) = p_valuation(n as u64, p as u64);
        let sum = (0..=v).map(|j| a_z.get((m * (p as u64).pow(j)) as usize)).sum();
        out.set(n, sum);
    }
    out
}

/// Exponents of the restricted (Jennings) product equal to `c`.
pub fn a_fp_peel(c: &Series, p: u32) -> Result<ExponentSequence, RankError> {
    Ok(peel_exponents(c, PeelMode::Restricted(p))?)
}

/// `a_n(F_p) = (1/n) sum_{v=0}^{nu_p(n)} sum_{p^v m | n} mu(n / (p^v m)) p^v m b_m`,
/// with `m` running over every positive integer such that `p^v m` divides
/// `n`. The result is checked against peeling `exp(sum b_n t^n)`.
pub fn a_fp_mobius(b: &[BigRational], p: u32) -> Result<ExponentSequence, RankError> {
    let n_max = b.len();
    let p64 = p as u64;
    let mut out = ExponentSequence::zeros(n_max);
    for n in 1..=n_max {
        let (nu, _) = p_valuation(n as u64, p64);
        let mut acc = BigRational::zero();
        for v in 0..=nu {
            let pv = p64.pow(v);
            for m in divisors(n as u64 / pv) {
                let mu = moebius(n as u64 / (pv * m)).expect("positive");
                if mu != 0 {
                    let weight = BigInt::from(mu) * BigInt::from(pv) * BigInt::from(m);
                    acc += BigRational::from_integer(weight) * &b[m as usize - 1];
                }
            }
        }
        out.set(n, integral(n, acc / BigRational::from_integer(n.into()))?);
    }

    let mut log = vec![BigRational::zero()];
    log.extend(b.iter().cloned());
    let c = Series::from_coefficients(log, n_max).exp()?;
    let peeled = a_fp_peel(&c, p)?;
    for n in 1..=n_max {
        if out.get(n) != peeled.get(n) {
            return Err(RankError::ConventionMismatch {
                degree: n,
                mobius: out.get(n),
                peel: peeled.get(n),
            });
        }
    }
    Ok(out)
}

/// Aligned `c_n`, `b_n`, `a_n(Z_p)` and `a_n(F_p)` for `1 <= n <= N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub p: u32,
    pub truncation: usize,
    pub c: Vec<BigInt>,
    pub b: Vec<BigRational>,
    pub a_zp: ExponentSequence,
    pub a_fp: ExponentSequence,
}

impl RankTable {
    /// Builds the table from a gocha series; `a_fp` comes from the Lazard
    /// sum over `a_zp`.
    pub fn from_gocha(gocha: &Series, p: u32) -> Result<Self, RankError> {
        let c = gocha
            .coefficients()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, x)| {
                Scalar::to_integer(x).ok_or_else(|| RankError::NonIntegralSeries {
                    degree: n,
                    value: x.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let b = b_from_gocha(gocha)?;
        let a_zp = a_zp(&b)?;
        let a_fp = a_fp_lazard(&a_zp, p);
        Ok(Self {
            p,
            truncation: gocha.order(),
            c,
            b,
            a_zp,
            a_fp,
        })
    }

    /// `1 + sum c_n t^n`.
    pub fn gocha(&self) -> Series {
        let mut coeffs = vec![BigRational::from_integer(1.into())];
        coeffs.extend(self.c.iter().cloned().map(BigRational::from_integer));
        Series::from_coefficients(coeffs, self.truncation)
    }
}

/// Outcome of each identity at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeChecks {
    pub degree: usize,
    /// `prod (1 - t^n)^{-a_n(Z_p)}` has coefficient `c_n` here.
    pub euler: bool,
    /// The restricted product over `a_n(F_p)` has coefficient `c_n` here.
    pub jennings: bool,
    /// `a_n(F_p)` equals the Lazard sum of `a(Z_p)`.
    pub lazard: bool,
    /// `a_n(Z_p) >= 0`.
    pub nonnegative: bool,
}

impl DegreeChecks {
    pub fn passed(&self) -> bool {
        self.euler && self.jennings && self.lazard && self.nonnegative
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub p: u32,
    pub degrees: Vec<DegreeChecks>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.degrees.iter().all(DegreeChecks::passed)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.passed()).map(|d| d.degree)
    }
}

/// Checks the PBW reconstructions, the Lazard relation between the two rank
/// sequences, and nonnegativity, degree by degree. Failures are reported,
/// not raised.
pub fn verify_identities(table: &RankTable) -> IdentityReport {
    let n = table.truncation;
    let target = table.gocha();
    let ordinary: Series = euler_product(&table.a_zp, n);
    let restricted: Series = jennings_product(&table.a_fp, table.p, n);
    let lazard = a_fp_lazard(&table.a_zp, table.p);
    let degrees = (1..=n)
        .map(|k| DegreeChecks {
            degree: k,
            euler: ordinary.coefficient(k) == target.coefficient(k),
            jennings: restricted.coefficient(k) == target.coefficient(k),
            lazard: lazard.get(k) == table.a_fp.get(k),
            nonnegative: !table.a_zp.get(k).is_negative(),
        })
        .collect();
    IdentityReport { p: table.p, degrees }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn geometric(d: i64, n: usize) -> Series {
        Series::from_i64s(&[1, -d], n).inverse().unwrap()
    }

    fn example_gocha(n: usize) -> Series {
        Series::from_i64s(&[1, -12, 35, -16, 2], n).inverse().unwrap()
    }

    fn seq(v: &[i64]) -> ExponentSequence {
        ExponentSequence::from_i64s(v)
    }

    #[test]
    fn b_values() {
        let b = b_from_gocha(&geometric(3, 5)).unwrap();
        for (i, x) in b.iter().enumerate() {
            let n = i as i64 + 1;
            assert_eq!(*x, BigRational::new(3i64.pow(n as u32).into(), n.into()));
        }
        assert_eq!(&b_from_gocha(&example_gocha(3)).unwrap(), &[q(12), q(37), q(172)]);
        assert!(b_from_gocha(&Series::one(4)).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn lower_central_ranks() {
        assert_eq!(a_zp(&b_from_gocha(&geometric(2, 6)).unwrap()).unwrap(), seq(&[2, 1, 2, 3, 6, 9]));
        assert_eq!(
            a_zp(&b_from_gocha(&example_gocha(5)).unwrap()).unwrap(),
            seq(&[12, 31, 168, 928, 5704])
        );
        let torus = Series::from_i64s(&[1, -2, 1], 6).inverse().unwrap();
        assert_eq!(a_zp(&b_from_gocha(&torus).unwrap()).unwrap(), seq(&[2, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn non_integral_ranks_are_errors() {
        let b = vec![q(1), BigRational::new(1.into(), 3.into())];
        assert!(matches!(a_zp(&b), Err(RankError::NotIntegral { degree: 2, .. })));
    }

    #[test]
    fn lazard_sums() {
        let az = seq(&[12, 31, 168, 928, 5704]);
        let af = a_fp_lazard(&az, 2);
        assert_eq!(af.get(1), 12.into());
        assert_eq!(af.get(2), 43.into());
        assert_eq!(af.get(3), 168.into());
        assert_eq!(af.get(4), 971.into());
        assert_eq!(af.get(5), 5704.into());
        // Only a_1: the indicator of powers of p.
        let af = a_fp_lazard(&seq(&[3, 0, 0, 0, 0, 0, 0, 0, 0]), 3);
        assert_eq!(af, seq(&[3, 0, 3, 0, 0, 0, 0, 0, 3]));
    }

    #[test]
    fn peel_integers_mod_two() {
        let af = a_fp_peel(&geometric(1, 8), 2).unwrap();
        assert_eq!(af, seq(&[1, 1, 0, 1, 0, 0, 0, 1]));
        assert_eq!(a_fp_peel(&Series::one(5), 3).unwrap(), ExponentSequence::zeros(5));
    }

    #[test]
    fn genus_two_surface_routes_agree() {
        let c = Series::from_i64s(&[1, -4, 1], 12).inverse().unwrap();
        let b = b_from_gocha(&c).unwrap();
        let az = a_zp(&b).unwrap();
        let lazard = a_fp_lazard(&az, 2);
        assert_eq!(a_fp_peel(&c, 2).unwrap(), lazard);
        assert_eq!(a_fp_mobius(&b, 2).unwrap(), lazard);
        let back: Series = jennings_product(&lazard, 2, 12);
        assert_eq!(back, c);
    }

    #[test]
    fn mobius_route() {
        let b = b_from_gocha(&geometric(1, 8)).unwrap();
        assert_eq!(a_fp_mobius(&b, 2).unwrap(), seq(&[1, 1, 0, 1, 0, 0, 0, 1]));
        let b = b_from_gocha(&example_gocha(6)).unwrap();
        let af = a_fp_mobius(&b, 2).unwrap();
        assert_eq!(af.get(2), 43.into());
        // Degrees prime to p collapse to the lower central formula.
        let az = a_zp(&b).unwrap();
        for n in [1, 3, 5] {
            assert_eq!(af.get(n), az.get(n));
        }
    }

    #[test]
    fn example_table_passes_everything() {
        let table = RankTable::from_gocha(&example_gocha(12), 2).unwrap();
        let report = verify_identities(&table);
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.degrees.len(), 12);
    }

    #[test]
    fn perturbed_table_fails_at_degree_two() {
        let mut table = RankTable::from_gocha(&example_gocha(12), 2).unwrap();
        table.a_zp.set(2, 32.into());
        let report = verify_identities(&table);
        let d2 = report.degrees[1];
        assert!(!d2.euler && !d2.lazard);
        assert!(report.degrees[0].passed());
        assert_eq!(report.first_failure(), Some(2));
    }

    #[test]
    fn free_table() {
        let table = RankTable::from_gocha(&geometric(2, 8), 2).unwrap();
        assert!(verify_identities(&table).all_passed());
        assert_eq!(table.a_zp, seq(&[2, 1, 2, 3, 6, 9, 18, 30]));
        // a_8(F_2) = a_1 + a_2 + a_4 + a_8
        assert_eq!(table.a_fp.get(8), (2 + 1 + 3 + 30).into());
        assert_eq!(table.c[2], 8.into());
    }

    #[test]
    fn torsion_shows_up_as_negative_ranks() {
        // Z/2: H = 1/(1 - t), gocha = 1 + t.
        let table = RankTable::from_gocha(&Series::from_i64s(&[1, 1], 6), 2).unwrap();
        assert_eq!(table.a_zp.get(2), (-1).into());
        assert!(!verify_identities(&table).all_passed());
    }
}
