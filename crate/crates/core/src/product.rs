//! Graph products: per-vertex cohomology data combined over the cliques of a
//! graph into the Poincaré and gocha series, plus the combined quadratic
//! presentation and its Koszul-dual relation family.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fp::SparseRow;
use crate::graph::{enumerate_cliques, CliqueList, Graph};
use crate::numtheory;
use crate::presentation::{
    surface_algebra, GeneratorLabel, PresentationError, QuadraticPresentation, ResourceCap,
};
use crate::series::DEFAULT_TRUNCATION;
use crate::Series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("vertex {vertex}: {reason}")]
    InvalidVertex { vertex: usize, reason: String },
    #[error("{groups} vertex groups given for a graph with {vertices} vertices")]
    GroupCount { groups: usize, vertices: usize },
    #[error("vertex {vertex} has no quadratic presentation ({kind})")]
    NotPresentable { vertex: usize, kind: &'static str },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Cohomological data for one vertex group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    /// Free group of the given rank, `H = 1 + d t`.
    Free { rank: usize },
    /// Closed orientable surface group, `H = 1 + 2g t + t^2`.
    Surface { genus: usize },
    /// `Z/2` at `p = 2`; cohomology is one-dimensional in every degree.
    Cyclic2,
    /// A Poincaré polynomial taken on trust. `koszul` records whether the
    /// caller vouches for Koszulity, which the gocha formula relies on.
    ByPoincare { coefficients: Vec<BigInt>, koszul: bool },
    /// A quadratic algebra; its cohomology is the quadratic dual.
    ByPresentation(QuadraticPresentation),
}

impl VertexGroup {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Free { .. } => "free",
            Self::Surface { .. } => "surface",
            Self::Cyclic2 => "cyclic2",
            Self::ByPoincare { .. } => "poincare",
            Self::ByPresentation(_) => "presentation",
        }
    }

    fn validate(&self, vertex: usize, p: u32) -> Result<(), ProductError> {
        let invalid = |reason: &str| {
            Err(ProductError::InvalidVertex {
                vertex,
                reason: reason.to_string(),
            })
        };
        match self {
            Self::Free { rank: 0 } => invalid("free rank must be at least 1"),
            Self::Surface { genus: 0 } => invalid("surface genus must be at least 1"),
            Self::Cyclic2 if p != 2 => invalid("cyclic2 requires p = 2"),
            Self::ByPoincare { coefficients, .. } => {
                if coefficients.first().is_none_or(|c| !c.is_one()) {
                    invalid("Poincaré coefficients must start with 1")
                } else if coefficients.iter().any(Signed::is_negative) {
                    invalid("Poincaré coefficients must be nonnegative")
                } else {
                    Ok(())
                }
            }
            Self::ByPresentation(pres) if pres.p() != p => invalid("presentation is over a different prime"),
            _ => Ok(()),
        }
    }

    /// Number of minimal generators, `h^1`.
    pub fn generator_count(&self) -> usize {
        match self {
            Self::Free { rank } => *rank,
            Self::Surface { genus } => 2 * genus,
            Self::Cyclic2 => 1,
            Self::ByPoincare { coefficients, .. } => coefficients
                .get(1)
                .and_then(|c| usize::try_from(c).ok())
                .unwrap_or(0),
            Self::ByPresentation(pres) => pres.generator_count(),
        }
    }

    /// The vertex algebra as a quadratic presentation, when it has one.
    pub fn presentation(&self, vertex: usize, p: u32) -> Result<QuadraticPresentation, ProductError> {
        match self {
            Self::Free { rank } => Ok(QuadraticPresentation::free(p, *rank)?),
            Self::Surface { genus } => Ok(surface_algebra(p, *genus)?),
            Self::ByPresentation(pres) => Ok(pres.clone()),
            Self::Cyclic2 | Self::ByPoincare { .. } => Err(ProductError::NotPresentable {
                vertex,
                kind: self.kind(),
            }),
        }
    }
}

/// A graph together with one vertex group per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    p: u32,
    graph: Graph,
    groups: Vec<VertexGroup>,
    truncation: usize,
    cap: ResourceCap,
}

impl FamilySpec {
    pub fn new(p: u32, graph: Graph, groups: Vec<VertexGroup>, truncation: usize) -> Result<Self, ProductError> {
        if numtheory::require_prime(p as u64).is_err() {
            return Err(ProductError::NotPrime(p));
        }
        if groups.len() != graph.vertex_count() {
            return Err(ProductError::GroupCount {
                groups: groups.len(),
                vertices: graph.vertex_count(),
            });
        }
        for (i, g) in groups.iter().enumerate() {
            g.validate(i + 1, p)?;
        }
        Ok(Self {
            p,
            graph,
            groups,
            truncation,
            cap: ResourceCap::default(),
        })
    }

    pub fn with_default_truncation(p: u32, graph: Graph, groups: Vec<VertexGroup>) -> Result<Self, ProductError> {
        Self::new(p, graph, groups, DEFAULT_TRUNCATION)
    }

    pub fn with_cap(mut self, cap: ResourceCap) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_truncation(mut self, truncation: usize) -> Self {
        self.truncation = truncation;
        self
    }

    /// Same graph and groups over another prime.
    pub fn with_prime(&self, p: u32) -> Result<Self, ProductError> {
        Ok(Self::new(p, self.graph.clone(), self.groups.clone(), self.truncation)?.with_cap(self.cap))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn cap(&self) -> &ResourceCap {
        &self.cap
    }

    /// Whether any vertex's numbers are taken on trust.
    pub fn has_declared_vertices(&self) -> bool {
        self.groups.iter().any(|g| matches!(g, VertexGroup::ByPoincare { .. }))
    }

    pub fn cliques(&self) -> CliqueList {
        enumerate_cliques(&self.graph)
    }
}

/// Poincaré series of one vertex group, truncated at `order`.
pub fn vertex_poincare(v: &VertexGroup, p: u32, order: usize) -> Result<Series, ProductError> {
    vertex_poincare_with_cap(v, p, order, &ResourceCap::default())
}

pub fn vertex_poincare_with_cap(v: &VertexGroup, p: u32, order: usize, cap: &ResourceCap) -> Result<Series, ProductError> {
    v.validate(0, p)?;
    let ints = |cs: &[i64]| Series::from_i64s(cs, order);
    Ok(match v {
        VertexGroup::Free { rank } => ints(&[1, *rank as i64]),
        VertexGroup::Surface { genus } => ints(&[1, 2 * *genus as i64, 1]),
        VertexGroup::Cyclic2 => ints(&vec![1; order + 1]),
        VertexGroup::ByPoincare { coefficients, .. } => Series::from_coefficients(
            coefficients.iter().cloned().map(BigRational::from_integer).collect(),
            order,
        ),
        VertexGroup::ByPresentation(pres) => {
            let dims = pres.quadratic_dual().graded_dimensions(order, cap)?;
            Series::from_coefficients(
                dims.dims.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
                order,
            )
        }
    })
}

/// Cohomology of a vertex: its Poincaré series and, when the series is a
/// polynomial, its degree (the cohomological dimension).
struct VertexData {
    series: Series,
    degree: Option<usize>,
}

fn vertex_data(spec: &FamilySpec) -> Result<Vec<VertexData>, ProductError> {
    let n = spec.truncation;
    spec.groups
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let degree = match g {
                VertexGroup::Free { .. } => Some(1),
                VertexGroup::Surface { .. } => Some(2),
                VertexGroup::Cyclic2 => None,
                VertexGroup::ByPoincare { coefficients, .. } => coefficients.iter().rposition(|c| !c.is_zero()),
                VertexGroup::ByPresentation(pres) => {
                    // Once the dual vanishes in some degree it vanishes in all
                    // later ones, so a zero at the top means a polynomial.
                    let dims = pres
                        .quadratic_dual()
                        .graded_dimensions(n.max(2), &spec.cap)?;
                    dims.polynomial_degree()
                }
            };
            let series = vertex_poincare_with_cap(g, spec.p, n, &spec.cap).map_err(|e| match e {
                ProductError::InvalidVertex { reason, .. } => ProductError::InvalidVertex { vertex: i + 1, reason },
                other => other,
            })?;
            Ok(VertexData { series, degree })
        })
        .collect()
}

/// Sums `prod_j h^{n_j}` over compositions `n_1 + ... + n_m = n` with every
/// part at least 1, by explicit enumeration.
fn composition_sums(members: &[&VertexData], order: usize, out: &mut [BigRational]) {
    fn walk(members: &[&VertexData], order: usize, total: usize, acc: &BigRational, out: &mut [BigRational]) {
        let Some((first, rest)) = members.split_first() else {
            out[total] += acc;
            return;
        };
        let top = first.degree.unwrap_or(order).min(order - total);
        for part in 1..=top {
            let h = first.series.coefficient(part);
            if h.is_zero() {
                continue;
            }
            // Later members need at least one degree each.
            if total + part + rest.len() > order {
                break;
            }
            walk(rest, order, total + part, &(acc * &h), out);
        }
    }
    if members.len() <= order {
        walk(members, order, 0, &BigRational::one(), out);
    }
}

/// `H(t) = 1 + sum over cliques of the composition sums`.
///
/// Evaluated twice, once by enumerating compositions and once as
/// `1 + sum_cliques prod_j (H_{i_j} - 1)` with series products; the two
/// must agree.
pub fn poincare_series(spec: &FamilySpec) -> Result<Series, ProductError> {
    let data = vertex_data(spec)?;
    let order = spec.truncation;
    let cliques = spec.cliques();

    let mut direct = vec![BigRational::zero(); order + 1];
    direct[0] = BigRational::one();
    for clique in cliques.iter() {
        let members: Vec<&VertexData> = clique.vertices().iter().map(|&v| &data[v - 1]).collect();
        composition_sums(&members, order, &mut direct);
    }
    let direct = Series::from_coefficients(direct, order);

    let one = Series::one(order);
    let reduced: Vec<Series> = data.iter().map(|d| d.series.sub(&one).expect("same order")).collect();
    let mut expanded = one.clone();
    for clique in cliques.iter() {
        if clique.len() > order {
            continue;
        }
        let mut term = one.clone();
        for &v in clique.vertices() {
            term = term.mul(&reduced[v - 1]).expect("same order");
        }
        expanded = expanded.add(&term).expect("same order");
    }

    assert_eq!(direct, expanded, "clique formula evaluations disagree");
    Ok(direct)
}

/// `1 / H(-t)`.
pub fn gocha_series(spec: &FamilySpec) -> Result<Series, ProductError> {
    Ok(poincare_series(spec)?
        .negate_variable()
        .inverse()
        .expect("Poincaré series has constant term 1"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohomologicalDimension {
    Finite(usize),
    Unbounded,
}

/// Largest total cohomological degree over all cliques.
pub fn cohomological_dimension(spec: &FamilySpec) -> Result<CohomologicalDimension, ProductError> {
    let data = vertex_data(spec)?;
    if data.iter().any(|d| d.degree.is_none()) {
        return Ok(CohomologicalDimension::Unbounded);
    }
    let best = spec
        .cliques()
        .iter()
        .map(|c| c.vertices().iter().map(|&v| data[v - 1].degree.unwrap()).sum::<usize>())
        .max()
        .unwrap_or(0);
    Ok(CohomologicalDimension::Finite(best))
}

/// Generator offsets and labels for the disjoint union of vertex generators.
struct Layout {
    offsets: Vec<usize>,
    counts: Vec<usize>,
    labels: Vec<GeneratorLabel>,
}

impl Layout {
    fn new(vertex_algebras: &[QuadraticPresentation]) -> Self {
        let mut offsets = Vec::new();
        let mut counts = Vec::new();
        let mut labels = Vec::new();
        for (i, a) in vertex_algebras.iter().enumerate() {
            offsets.push(labels.len());
            counts.push(a.generator_count());
            labels.extend((1..=a.generator_count()).map(|index| GeneratorLabel { vertex: i + 1, index }));
        }
        Self { offsets, counts, labels }
    }

    fn total(&self) -> usize {
        self.labels.len()
    }

    fn generators(&self, vertex: usize) -> std::ops::Range<usize> {
        self.offsets[vertex - 1]..self.offsets[vertex - 1] + self.counts[vertex - 1]
    }

    /// Embeds a vertex relation into the product's degree-2 space.
    fn embed(&self, vertex: usize, row: &SparseRow) -> SparseRow {
        let (off, local, total) = (self.offsets[vertex - 1], self.counts[vertex - 1], self.total());
        let mut entries: Vec<(u32, u32)> = row
            .entries()
            .iter()
            .map(|&(c, v)| {
                let (a, b) = (c as usize / local, c as usize % local);
                (((off + a) * total + off + b) as u32, v)
            })
            .collect();
        entries.sort_unstable();
        SparseRow::from_sorted(entries)
    }
}

fn vertex_algebras(spec: &FamilySpec) -> Result<Vec<QuadraticPresentation>, ProductError> {
    spec.groups
        .iter()
        .enumerate()
        .map(|(i, g)| g.presentation(i + 1, spec.p))
        .collect()
}

/// The vertex relations plus `[u X_a, v X_b]` for every edge and every pair of
/// generators across it.
pub fn assemble_presentation(spec: &FamilySpec) -> Result<QuadraticPresentation, ProductError> {
    let algebras = vertex_algebras(spec)?;
    let layout = Layout::new(&algebras);
    let field = algebras[0].field();
    let d = layout.total();
    let mut rows = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        rows.extend(a.relation_rows().iter().map(|r| layout.embed(i + 1, r)));
    }
    for (u, v) in spec.graph.edges() {
        for a in layout.generators(u) {
            for b in layout.generators(v) {
                rows.push(SparseRow::from_terms(
                    field,
                    [((a * d + b) as u32, 1), ((b * d + a) as u32, -1)],
                ));
            }
        }
    }
    Ok(QuadraticPresentation::from_rows(field, d, rows).with_labels(layout.labels)?)
}

/// Raw sizes of the relation families and the ranks of their spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCensus {
    pub generators: usize,
    pub vertex_relations: usize,
    pub edge_commutators: usize,
    /// Dimension of the span of the presentation's relations.
    pub relation_rank: usize,
    pub vertex_dual_relations: usize,
    pub anticommutators: usize,
    pub non_edge_products: usize,
    /// Dimension of the span of the dual family.
    pub dual_rank: usize,
    /// The dual family spans exactly the orthogonal complement of the
    /// presentation's relations.
    pub matches_quadratic_dual: bool,
}

impl DualCensus {
    pub fn counts_complementary(&self) -> bool {
        self.relation_rank + self.dual_rank == self.generators * self.generators
    }
}

fn dual_family_rows(spec: &FamilySpec) -> Result<(usize, Vec<SparseRow>, DualCensus), ProductError> {
    let algebras = vertex_algebras(spec)?;
    let layout = Layout::new(&algebras);
    let field = algebras[0].field();
    let d = layout.total();
    let k = spec.graph.vertex_count();
    let mut rows = Vec::new();

    let mut vertex_dual_relations = 0;
    for (i, a) in algebras.iter().enumerate() {
        let dual = a.quadratic_dual();
        vertex_dual_relations += dual.relation_count();
        rows.extend(dual.relation_rows().iter().map(|r| layout.embed(i + 1, r)));
    }
    let mut anticommutators = 0;
    let mut non_edge_products = 0;
    for u in 1..=k {
        for v in u + 1..=k {
            let edge = spec.graph.has_edge(u, v);
            for a in layout.generators(u) {
                for b in layout.generators(v) {
                    let (ab, ba) = ((a * d + b) as u32, (b * d + a) as u32);
                    rows.push(SparseRow::from_terms(field, [(ab, 1), (ba, 1)]));
                    anticommutators += 1;
                    if !edge {
                        rows.push(SparseRow::from_terms(field, [(ab, 1)]));
                        rows.push(SparseRow::from_terms(field, [(ba, 1)]));
                        non_edge_products += 2;
                    }
                }
            }
        }
    }
    let census = DualCensus {
        generators: d,
        vertex_relations: algebras.iter().map(QuadraticPresentation::relation_count).sum(),
        edge_commutators: spec
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| layout.counts[u - 1] * layout.counts[v - 1])
            .sum(),
        relation_rank: 0,
        vertex_dual_relations,
        anticommutators,
        non_edge_products,
        dual_rank: 0,
        matches_quadratic_dual: false,
    };
    Ok((d, rows, census))
}

/// Relations of the cohomology algebra: each vertex's dual relations,
/// anticommutators across every pair of distinct vertices, and plain products
/// across every non-edge.
pub fn dual_family(spec: &FamilySpec) -> Result<QuadraticPresentation, ProductError> {
    let (d, rows, _) = dual_family_rows(spec)?;
    let labels = Layout::new(&vertex_algebras(spec)?).labels;
    let field = crate::fp::PrimeField::new(spec.p);
    Ok(QuadraticPresentation::from_rows(field, d, rows).with_labels(labels)?)
}

/// Counts for both relation families and the `d^2` identity between them.
pub fn dual_census(spec: &FamilySpec) -> Result<DualCensus, ProductError> {
    let pres = assemble_presentation(spec)?;
    let dual = dual_family(spec)?;
    let (_, _, mut census) = dual_family_rows(spec)?;
    census.relation_rank = pres.relation_count();
    census.dual_rank = dual.relation_count();
    census.matches_quadratic_dual = pres.quadratic_dual().same_relation_space(&dual);
    Ok(census)
}

/// Convenience: the worked three-vertex example, a path `2 - 1 - 3` with a
/// genus-2 surface group at every vertex.
pub fn example_spec(p: u32, truncation: usize) -> FamilySpec {
    let graph = Graph::new(3, &[(1, 2), (1, 3)]).expect("valid graph");
    FamilySpec::new(p, graph, vec![VertexGroup::Surface { genus: 2 }; 3], truncation).expect("valid spec")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    fn spec(k: usize, edges: &[(usize, usize)], groups: Vec<VertexGroup>, n: usize) -> FamilySpec {
        FamilySpec::new(2, Graph::new(k, edges).unwrap(), groups, n).unwrap()
    }

    #[test]
    fn vertex_series() {
        let s = vertex_poincare(&VertexGroup::Surface { genus: 2 }, 3, 4).unwrap();
        assert_eq!(ints(&s), vec![1, 4, 1, 0, 0]);
        assert_eq!(ints(&vertex_poincare(&VertexGroup::Free { rank: 1 }, 3, 3).unwrap()), vec![1, 1, 0, 0]);
        assert_eq!(ints(&vertex_poincare(&VertexGroup::Cyclic2, 2, 3).unwrap()), vec![1, 1, 1, 1]);
        let torus = VertexGroup::ByPresentation(surface_algebra(2, 1).unwrap());
        assert_eq!(ints(&vertex_poincare(&torus, 2, 4).unwrap()), vec![1, 2, 1, 0, 0]);
        assert!(matches!(
            vertex_poincare(&VertexGroup::Cyclic2, 3, 3),
            Err(ProductError::InvalidVertex { .. })
        ));
    }

    #[test]
    fn example_poincare_and_gocha() {
        let ex = example_spec(2, 8);
        assert_eq!(ints(&poincare_series(&ex).unwrap()), vec![1, 12, 35, 16, 2, 0, 0, 0, 0]);
        let den = gocha_series(&ex).unwrap().inverse().unwrap();
        assert_eq!(ints(&den), vec![1, -12, 35, -16, 2, 0, 0, 0, 0]);
        assert_eq!(cohomological_dimension(&ex).unwrap(), CohomologicalDimension::Finite(4));
    }

    #[test]
    fn single_vertex_is_its_own_series() {
        let s = spec(1, &[], vec![VertexGroup::Surface { genus: 3 }], 5);
        assert_eq!(ints(&poincare_series(&s).unwrap()), vec![1, 6, 1, 0, 0, 0]);
        assert_eq!(cohomological_dimension(&s).unwrap(), CohomologicalDimension::Finite(2));
        let f = spec(1, &[], vec![VertexGroup::Free { rank: 3 }], 5);
        assert_eq!(ints(&gocha_series(&f).unwrap()), vec![1, 3, 9, 27, 81, 243]);
    }

    #[test]
    fn complete_pair_of_tori() {
        let s = spec(2, &[(1, 2)], vec![VertexGroup::Surface { genus: 1 }; 2], 6);
        assert_eq!(ints(&poincare_series(&s).unwrap()), vec![1, 4, 6, 4, 1, 0, 0]);
    }

    #[test]
    fn edgeless_pair_of_tori() {
        let s = spec(2, &[], vec![VertexGroup::Surface { genus: 1 }; 2], 5);
        assert_eq!(ints(&poincare_series(&s).unwrap()), vec![1, 4, 2, 0, 0, 0]);
        // 1 / (1 - 4t + 2t^2): c_n = 4 c_{n-1} - 2 c_{n-2}.
        assert_eq!(ints(&gocha_series(&s).unwrap()), vec![1, 4, 14, 48, 164, 560]);
    }

    #[test]
    fn triangle_of_tori_has_dimension_six() {
        let s = spec(3, &[(1, 2), (1, 3), (2, 3)], vec![VertexGroup::Surface { genus: 1 }; 3], 8);
        assert_eq!(cohomological_dimension(&s).unwrap(), CohomologicalDimension::Finite(6));
        // (1 + 2t + t^2)^3 = (1 + t)^6
        assert_eq!(ints(&poincare_series(&s).unwrap()), vec![1, 6, 15, 20, 15, 6, 1, 0, 0]);
    }

    #[test]
    fn cyclic_vertex_is_unbounded() {
        let s = spec(2, &[(1, 2)], vec![VertexGroup::Cyclic2, VertexGroup::Free { rank: 1 }], 5);
        assert_eq!(cohomological_dimension(&s).unwrap(), CohomologicalDimension::Unbounded);
        // (1 + t + t^2 + ...)(1 + t)
        assert_eq!(ints(&poincare_series(&s).unwrap()), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn example_presentation_census() {
        let ex = example_spec(2, 6);
        let pres = assemble_presentation(&ex).unwrap();
        assert_eq!((pres.generator_count(), pres.relation_count()), (12, 35));
        let census = dual_census(&ex).unwrap();
        assert_eq!(census.dual_rank, 109);
        assert_eq!(census.vertex_dual_relations, 45);
        assert_eq!(census.anticommutators, 48);
        assert_eq!(census.non_edge_products, 32);
        assert!(census.counts_complementary());
        assert!(census.matches_quadratic_dual);
    }

    #[test]
    fn small_presentations() {
        let f = spec(1, &[], vec![VertexGroup::Free { rank: 2 }], 4);
        let pres = assemble_presentation(&f).unwrap();
        assert_eq!((pres.generator_count(), pres.relation_count()), (2, 0));

        let raag = spec(2, &[(1, 2)], vec![VertexGroup::Free { rank: 1 }; 2], 4);
        let pres = assemble_presentation(&raag).unwrap();
        assert_eq!(pres.relations(), vec![vec![(0, 1, 1), (1, 0, 1)]]); // XY - YX over F_2

        let one = spec(1, &[], vec![VertexGroup::Free { rank: 1 }], 4);
        assert_eq!(dual_family(&one).unwrap().relations(), vec![vec![(0, 0, 1)]]);
    }

    #[test]
    fn raag_dual_family_is_exterior() {
        let raag = FamilySpec::new(3, Graph::new(2, &[(1, 2)]).unwrap(), vec![VertexGroup::Free { rank: 1 }; 2], 4).unwrap();
        let dual = dual_family(&raag).unwrap();
        let expect = QuadraticPresentation::new(3, 2, &[vec![(0, 0, 1)], vec![(1, 1, 1)], vec![(0, 1, 1), (1, 0, 1)]]).unwrap();
        assert!(dual.same_relation_space(&expect));
    }

    #[test]
    fn non_presentable_vertices() {
        let s = spec(2, &[], vec![VertexGroup::Cyclic2, VertexGroup::Free { rank: 1 }], 4);
        assert_eq!(
            assemble_presentation(&s),
            Err(ProductError::NotPresentable { vertex: 1, kind: "cyclic2" })
        );
    }

    #[test]
    fn spec_validation() {
        let g = Graph::new(2, &[]).unwrap();
        assert_eq!(
            FamilySpec::new(2, g.clone(), vec![VertexGroup::Free { rank: 1 }], 4),
            Err(ProductError::GroupCount { groups: 1, vertices: 2 })
        );
        assert_eq!(FamilySpec::new(4, g.clone(), vec![VertexGroup::Cyclic2; 2], 4), Err(ProductError::NotPrime(4)));
        assert!(matches!(
            FamilySpec::new(3, g.clone(), vec![VertexGroup::Cyclic2; 2], 4),
            Err(ProductError::InvalidVertex { vertex: 1, .. })
        ));
        let bad = VertexGroup::ByPoincare { coefficients: vec![2.into(), 1.into()], koszul: true };
        assert!(FamilySpec::new(2, g, vec![bad, VertexGroup::Surface { genus: 1 }], 4).is_err());
    }
}
