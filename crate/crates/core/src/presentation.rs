//! Quadratic algebras over a prime field: relation spaces, quadratic duals,
//! and graded dimensions of the quotient of the free associative algebra by
//! the two-sided ideal generated by the relations.
//!
//! Degree-`n` monomials (words of length `n` in `d` letters) are indexed in
//! base `d`, first letter most significant. With this order, left
//! multiplication by a letter maps an echelon basis of `I_{n-1}` to rows with
//! distinct leads, so `I_n = V I_{n-1} + S V^{n-2}` only needs the fresh
//! leftmost relation placements reduced.

use thiserror::Error;

use crate::fp::{reduced_row_echelon, EchelonBasis, PrimeField, SparseRow};
use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("generator index {index} out of range for {generators} generators")]
    GeneratorOutOfRange { index: usize, generators: usize },
    #[error("{labels} labels given for {generators} generators")]
    LabelCount { labels: usize, generators: usize },
    #[error("resource cap exceeded at degree {degree}")]
    Capped {
        degree: usize,
        /// Dimensions computed before the cap was hit, from degree 0.
        dims: Vec<u64>,
    },
}

/// Limits on the size of a single degree's elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResourceCap {
    /// Largest admissible `d^n`.
    pub max_columns: u64,
    /// Largest admissible number of spanning rows for `I_n`.
    pub max_rows: u64,
}

impl Default for ResourceCap {
    fn default() -> Self {
        Self {
            max_columns: 4_000_000,
            max_rows: 1_000_000,
        }
    }
}

impl ResourceCap {
    pub const UNLIMITED: Self = Self {
        max_columns: u32::MAX as u64,
        max_rows: u64::MAX,
    };
}

/// Names a generator by the vertex it came from and its position there,
/// both counted from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorLabel {
    pub vertex: usize,
    pub index: usize,
}

/// Generators `X_0..X_{d-1}` and a space of degree-2 relations over `F_p`.
///
/// A relation is a vector in the `d^2`-dimensional space with basis
/// `X_a X_b` (column `a * d + b`). Relations are stored in reduced row
/// echelon form, so `relation_count` is the dimension of their span and two
/// presentations with the same span have identical relation lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: PrimeField,
    generators: usize,
    labels: Option<Vec<GeneratorLabel>>,
    relations: Vec<SparseRow>,
}

/// One relation as `(a, b, coefficient)` triples, meaning
/// `sum coefficient * X_a X_b` with 0-based generator indices.
pub type RelationTerms = Vec<(usize, usize, i64)>;

impl QuadraticPresentation {
    pub fn new(p: u32, generators: usize, relations: &[RelationTerms]) -> Result<Self, PresentationError> {
        let field = Self::field_for(p)?;
        if generators == 0 {
            return Err(PresentationError::NoGenerators);
        }
        let mut rows = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut terms = Vec::with_capacity(rel.len());
            for &(a, b, c) in rel {
                for index in [a, b] {
                    if index >= generators {
                        return Err(PresentationError::GeneratorOutOfRange { index, generators });
                    }
                }
                terms.push(((a * generators + b) as u32, c));
            }
            rows.push(SparseRow::from_terms(field, terms));
        }
        Ok(Self::from_rows(field, generators, rows))
    }

    /// Free algebra on `generators` letters.
    pub fn free(p: u32, generators: usize) -> Result<Self, PresentationError> {
        Self::new(p, generators, &[])
    }

    pub(crate) fn from_rows(field: PrimeField, generators: usize, rows: Vec<SparseRow>) -> Self {
        Self {
            field,
            generators,
            labels: None,
            relations: reduced_row_echelon(field, rows),
        }
    }

    fn field_for(p: u32) -> Result<PrimeField, PresentationError> {
        if p >= 1 << 31 || numtheory::require_prime(p as u64).is_err() {
            return Err(PresentationError::NotPrime(p as u64));
        }
        Ok(PrimeField::new(p))
    }

    pub fn with_labels(mut self, labels: Vec<GeneratorLabel>) -> Result<Self, PresentationError> {
        if labels.len() != self.generators {
            return Err(PresentationError::LabelCount {
                labels: labels.len(),
                generators: self.generators,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub(crate) fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn labels(&self) -> Option<&[GeneratorLabel]> {
        self.labels.as_deref()
    }

    pub(crate) fn relation_rows(&self) -> &[SparseRow] {
        &self.relations
    }

    /// Canonical relations as `(a, b, coefficient)` with coefficients in `0..p`.
    pub fn relations(&self) -> Vec<Vec<(usize, usize, u32)>> {
        let d = self.generators;
        self.relations
            .iter()
            .map(|r| {
                r.entries()
                    .iter()
                    .map(|&(c, v)| (c as usize / d, c as usize % d, v))
                    .collect()
            })
            .collect()
    }

    /// Whether both presentations have the same generators and relation span.
    pub fn same_relation_space(&self, other: &Self) -> bool {
        self.field == other.field && self.generators == other.generators && self.relations == other.relations
    }

    /// The presentation whose relations span the orthogonal complement of
    /// this one's under `<X_a X_b, X_c X_d> = [a = c][b = d]`.
    pub fn quadratic_dual(&self) -> Self {
        let f = self.field;
        let dim = (self.generators * self.generators) as u32;
        let pivots: Vec<u32> = self.relations.iter().map(|r| r.lead().unwrap().0).collect();
        let mut rows = Vec::with_capacity(dim as usize - pivots.len());
        for free in (0..dim).filter(|c| !pivots.contains(c)) {
            // e_free - sum_i R[i][free] e_{pivot_i}
            let mut terms = vec![(free, 1i64)];
            for (row, &pivot) in self.relations.iter().zip(&pivots) {
                let v = row.get(free);
                if v != 0 {
                    terms.push((pivot, f.neg(v) as i64));
                }
            }
            rows.push(SparseRow::from_terms(f, terms));
        }
        Self {
            field: f,
            generators: self.generators,
            labels: self.labels.clone(),
            relations: reduced_row_echelon(f, rows),
        }
    }

    /// Dimensions `c_0..c_N` of the graded quotient algebra.
    pub fn graded_dimensions(&self, max_degree: usize, cap: &ResourceCap) -> Result<GradedDimensions, PresentationError> {
        let d = self.generators as u64;
        let r = self.relations.len() as u64;
        let mut dims = vec![1u64];
        let mut prev: Vec<SparseRow> = Vec::new();
        for n in 1..=max_degree {
            if dims[n - 1] == 0 {
                // I_{n-1} is everything, hence so is I_n.
                dims.push(0);
                continue;
            }
            let capped = |dims: &Vec<u64>| PresentationError::Capped {
                degree: n,
                dims: dims.clone(),
            };
            let columns = d
                .checked_pow(n as u32)
                .filter(|&c| c <= cap.max_columns && c <= u32::MAX as u64)
                .ok_or_else(|| capped(&dims))?;
            if n == 1 {
                dims.push(columns);
                continue;
            }
            if n == 2 {
                prev = self.relations.clone();
                dims.push(columns - r);
                continue;
            }
            let tail = d.pow(n as u32 - 2);
            let projected = (d * prev.len() as u64).saturating_add(r * tail);
            if projected > cap.max_rows {
                return Err(capped(&dims));
            }
            let block = (columns / d) as u32;
            let mut basis = EchelonBasis::with_columns(self.field, columns as usize);
            for x in 0..d as u32 {
                for row in &prev {
                    basis.push_unreduced(row.map_columns(|c| x * block + c));
                }
            }
            let tail = tail as u32;
            for rel in &self.relations {
                for w in 0..tail {
                    basis.insert(rel.map_columns(|c| c * tail + w));
                }
            }
            dims.push(columns - basis.rank() as u64);
            prev = basis.into_rows();
        }
        Ok(GradedDimensions { p: self.p(), dims })
    }

    /// Checks `sum_{i+j=n} (-1)^j c_i(A) c_j(A^!) = 0` for `1 <= n <= N`,
    /// the numerical shadow of Koszulity. Passing is necessary, not
    /// sufficient.
    pub fn koszulity_test(&self, max_degree: usize, cap: &ResourceCap) -> Result<KoszulReport, PresentationError> {
        let algebra = self.graded_dimensions(max_degree, cap)?;
        let dual = self.quadratic_dual().graded_dimensions(max_degree, cap)?;
        let first_failure = (1..=max_degree).find(|&n| {
            let sum: i128 = (0..=n)
                .map(|j| {
                    let term = algebra.dims[n - j] as i128 * dual.dims[j] as i128;
                    if j % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            sum != 0
        });
        Ok(KoszulReport {
            passed: first_failure.is_none(),
            first_failure,
            algebra,
            dual,
        })
    }
}

/// Graded dimensions `c_0, c_1, ..., c_N` of a quadratic algebra over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDimensions {
    pub p: u32,
    pub dims: Vec<u64>,
}

impl GradedDimensions {
    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Last degree with a nonzero dimension, if the tail is zero.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self.dims.last() {
            Some(0) => self.dims.iter().rposition(|&c| c != 0),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulReport {
    pub passed: bool,
    pub first_failure: Option<usize>,
    pub algebra: GradedDimensions,
    pub dual: GradedDimensions,
}

/// The one-relator algebra `sum_j (X_j Y_j - Y_j X_j)` on generators
/// `X_1..X_g, Y_1..Y_g` (indices `0..g` and `g..2g`).
pub fn surface_relation(genus: usize) -> RelationTerms {
    (0..genus)
        .flat_map(|j| [(j, genus + j, 1), (genus + j, j, -1)])
        .collect()
}

pub fn surface_algebra(p: u32, genus: usize) -> Result<QuadraticPresentation, PresentationError> {
    QuadraticPresentation::new(p, 2 * genus, &[surface_relation(genus)])
}
