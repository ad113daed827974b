//! Prime-field arithmetic and sparse row reduction.

use std::collections::BTreeMap;

/// Arithmetic modulo a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!((2..1 << 31).contains(&p), "modulus out of range");
        Self { p }
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Inverse by Fermat; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }
}

/// Sparse vector: strictly increasing column indices with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseRow {
    entries: Vec<(u32, u32)>,
}

impl SparseRow {
    /// Collects `(column, value)` terms, merging repeats and dropping zeros.
    pub fn from_terms(field: PrimeField, terms: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (c, v) in terms {
            let e = acc.entry(c).or_insert(0);
            *e = field.add(*e, field.reduce(v));
        }
        Self {
            entries: acc.into_iter().filter(|&(_, v)| v != 0).collect(),
        }
    }

    pub fn from_sorted(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, v)| v != 0));
        Self { entries }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<(u32, u32)> {
        self.entries.first().copied()
    }

    pub fn get(&self, col: u32) -> u32 {
        self.entries
            .binary_search_by_key(&col, |&(c, _)| c)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn scale(&self, field: PrimeField, k: u32) -> Self {
        if k == 0 {
            return Self::default();
        }
        Self {
            entries: self.entries.iter().map(|&(c, v)| (c, field.mul(v, k))).collect(),
        }
    }

    /// `self - k * other`, merging sorted entry lists.
    pub fn sub_scaled(&self, field: PrimeField, k: u32, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i]);
                i += 1;
            } else if take_b {
                out.push((b[j].0, field.neg(field.mul(k, b[j].1))));
                j += 1;
            } else {
                let v = field.sub(a[i].1, field.mul(k, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        Self { entries: out }
    }

    /// Applies a strictly increasing column map.
    pub fn map_columns(&self, f: impl Fn(u32) -> u32) -> Self {
        Self {
            entries: self.entries.iter().map(|&(c, v)| (f(c), v)).collect(),
        }
    }

    pub fn dot(&self, field: PrimeField, other: &Self) -> u32 {
        let (mut i, mut j, mut acc) = (0, 0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            match self.entries[i].0.cmp(&other.entries[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = field.add(acc, field.mul(self.entries[i].1, other.entries[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

#[derive(Debug, Clone)]
enum PivotIndex {
    Sparse(BTreeMap<u32, usize>),
    Dense(Vec<u32>),
}

impl PivotIndex {
    const NONE: u32 = u32::MAX;

    fn get(&self, col: u32) -> Option<usize> {
        match self {
            Self::Sparse(m) => m.get(&col).copied(),
            Self::Dense(v) => match v[col as usize] {
                Self::NONE => None,
                i => Some(i as usize),
            },
        }
    }

    fn insert(&mut self, col: u32, row: usize) -> bool {
        match self {
            Self::Sparse(m) => m.insert(col, row).is_none(),
            Self::Dense(v) => {
                let fresh = v[col as usize] == Self::NONE;
                v[col as usize] = row as u32;
                fresh
            }
        }
    }
}

/// Rows with pairwise distinct leading columns, each leading coefficient 1.
///
/// Only leading terms are reduced on insertion, which is all that is needed
/// to count rank and to keep the basis reusable for the next degree.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    rows: Vec<SparseRow>,
    pivot_row: PivotIndex,
}

impl EchelonBasis {
    pub fn new(field: PrimeField) -> Self {
        Self {
            field,
            rows: Vec::new(),
            pivot_row: PivotIndex::Sparse(BTreeMap::new()),
        }
    }

    /// Basis over a known number of columns, with a flat pivot table.
    pub fn with_columns(field: PrimeField, columns: usize) -> Self {
        Self {
            field,
            rows: Vec::new(),
            pivot_row: PivotIndex::Dense(vec![PivotIndex::NONE; columns]),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Adds a row known to have a leading column no current row has,
    /// normalizing it. Panics if the lead is taken.
    pub fn push_unreduced(&mut self, row: SparseRow) {
        let (lead, v) = row.lead().expect("zero row");
        let row = if v == 1 { row } else { row.scale(self.field, self.field.inv(v)) };
        let fresh = self.pivot_row.insert(lead, self.rows.len());
        assert!(fresh, "pivot column {lead} already used");
        self.rows.push(row);
    }

    /// Reduces `row` against the basis and keeps the remainder if nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        while let Some((lead, v)) = row.lead() {
            match self.pivot_row.get(lead) {
                Some(i) => row = row.sub_scaled(self.field, v, &self.rows[i]),
                None => {
                    self.push_unreduced(row);
                    return true;
                }
            }
        }
        false
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }
}

/// Fully reduced row echelon form, rows sorted by pivot column.
pub fn reduced_row_echelon(field: PrimeField, rows: impl IntoIterator<Item = SparseRow>) -> Vec<SparseRow> {
    let mut basis = EchelonBasis::new(field);
    for r in rows {
        basis.insert(r);
    }
    let mut rows = basis.into_rows();
    rows.sort_by_key(|r| r.lead().map(|(c, _)| c));
    // Back substitution, last pivot first.
    for i in (0..rows.len()).rev() {
        let (pivot, _) = rows[i].lead().unwrap();
        for j in 0..i {
            let k = rows[j].get(pivot);
            if k != 0 {
                rows[j] = rows[j].sub_scaled(field, k, &rows[i]);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = PrimeField::new(7);
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.mul(3, 5), 1);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(0), 0);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = PrimeField::new(3);
        let mut b = EchelonBasis::new(f);
        assert!(b.insert(SparseRow::from_terms(f, [(0, 1), (1, 1)])));
        assert!(b.insert(SparseRow::from_terms(f, [(1, 1), (2, 1)])));
        // (0,1) + (1,2) - ... : r1 - r2 = e0 - e2
        assert!(!b.insert(SparseRow::from_terms(f, [(0, 1), (2, -1)])));
        assert!(b.insert(SparseRow::from_terms(f, [(2, 2)])));
        assert_eq!(b.rank(), 3);
    }

    #[test]
    fn rref_is_reduced() {
        let f = PrimeField::new(5);
        let rows = reduced_row_echelon(
            f,
            [
                SparseRow::from_terms(f, [(0, 2), (1, 1), (3, 1)]),
                SparseRow::from_terms(f, [(1, 3), (2, 1)]),
                SparseRow::from_terms(f, [(0, 4), (1, 2), (3, 2)]),
            ],
        );
        assert_eq!(rows.len(), 2);
        for (i, r) in rows.iter().enumerate() {
            let (c, v) = r.lead().unwrap();
            assert_eq!(v, 1);
            for (j, other) in rows.iter().enumerate() {
                if i != j {
                    assert_eq!(other.get(c), 0);
                }
            }
        }
    }

    #[test]
    fn merges_and_drops_zeros() {
        let f = PrimeField::new(2);
        let r = SparseRow::from_terms(f, [(3, 1), (1, 1), (3, 1)]);
        assert_eq!(r.entries(), &[(1, 1)]);
        assert_eq!(r.sub_scaled(f, 1, &r), SparseRow::default());
    }
}
