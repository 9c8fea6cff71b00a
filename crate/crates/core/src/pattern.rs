//! Symmetric `{0,1,*}` pattern matrices.
//!
//! A pattern matrix `M` of order `m` describes a partition problem: a graph is
//! split into parts `0..m`, and `M(i,j)` says whether two distinct vertices in
//! parts `i` and `j` must be adjacent (`1`), must be non-adjacent (`0`), or are
//! unconstrained (`*`). The diagonal entries therefore say whether a part is a
//! clique, an independent set, or unrestricted.
//!
//! All indices are 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("bad matrix character {0:?}; expected '0', '1' or '*'")]
    BadCharacter(char),
    #[error("matrix must have at least one row")]
    Empty,
    #[error("matrix has a '*' on the diagonal at index {0}; block form is undefined")]
    DiagonalStar(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// One entry of a pattern matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternEntry {
    Zero,
    One,
    Star,
}

impl PatternEntry {
    pub const ALL: [PatternEntry; 3] = [PatternEntry::Zero, PatternEntry::One, PatternEntry::Star];

    pub fn from_char(c: char) -> Result<Self, PatternError> {
        match c {
            '0' => Ok(PatternEntry::Zero),
            '1' => Ok(PatternEntry::One),
            '*' => Ok(PatternEntry::Star),
            other => Err(PatternError::BadCharacter(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PatternEntry::Zero => '0',
            PatternEntry::One => '1',
            PatternEntry::Star => '*',
        }
    }

    /// Swaps `0` and `1`, keeps `*`.
    pub fn complement(self) -> Self {
        match self {
            PatternEntry::Zero => PatternEntry::One,
            PatternEntry::One => PatternEntry::Zero,
            PatternEntry::Star => PatternEntry::Star,
        }
    }

    /// Whether two distinct vertices joined by an edge (`adjacent == true`) or
    /// not may sit in a pair of parts carrying this entry.
    #[inline]
    pub fn permits(self, adjacent: bool) -> bool {
        match self {
            PatternEntry::Zero => !adjacent,
            PatternEntry::One => adjacent,
            PatternEntry::Star => true,
        }
    }
}

/// A symmetric `m x m` matrix over `{0, 1, *}`.
///
/// Every constructor enforces symmetry, so a `PatternMatrix` value is always
/// symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    m: usize,
    entries: Vec<PatternEntry>,
}

impl PatternMatrix {
    /// Builds a matrix from rows, checking shape and symmetry.
    pub fn from_rows(rows: Vec<Vec<PatternEntry>>) -> Result<Self, PatternError> {
        let m = rows.len();
        if m == 0 {
            return Err(PatternError::Empty);
        }
        let mut entries = Vec::with_capacity(m * m);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(PatternError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: m,
                });
            }
            entries.extend_from_slice(row);
        }
        let matrix = PatternMatrix { m, entries };
        for i in 0..m {
            for j in (i + 1)..m {
                if matrix.get(i, j) != matrix.get(j, i) {
                    return Err(PatternError::NotSymmetric(i, j));
                }
            }
        }
        Ok(matrix)
    }

    /// Builds a matrix of order `m` from a function of the upper triangle
    /// (`i <= j`), mirroring it below the diagonal.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> PatternEntry) -> Self {
        assert!(m > 0, "pattern matrix order must be positive");
        let mut entries = vec![PatternEntry::Star; m * m];
        for i in 0..m {
            for j in i..m {
                let e = f(i, j);
                entries[i * m + j] = e;
                entries[j * m + i] = e;
            }
        }
        PatternMatrix { m, entries }
    }

    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> PatternEntry {
        self.entries[i * self.m + j]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = PatternEntry> + '_ {
        (0..self.m).map(move |i| self.get(i, i))
    }

    /// Rows rendered as strings over `0`, `1`, `*`.
    pub fn rows(&self) -> Vec<String> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.get(i, j).as_char()).collect())
            .collect()
    }

    /// Counts of `0`, `1` and `*` entries on the diagonal.
    pub fn diag_counts(&self) -> DiagCounts {
        let mut counts = DiagCounts::default();
        for e in self.diagonal() {
            match e {
                PatternEntry::Zero => counts.zeros += 1,
                PatternEntry::One => counts.ones += 1,
                PatternEntry::Star => counts.stars += 1,
            }
        }
        counts
    }

    /// Index of the first diagonal `*`, if any.
    pub fn first_diagonal_star(&self) -> Option<usize> {
        self.diagonal().position(|e| e == PatternEntry::Star)
    }

    fn require_no_diagonal_star(&self) -> Result<(), PatternError> {
        match self.first_diagonal_star() {
            Some(d) => Err(PatternError::DiagonalStar(d)),
            None => Ok(()),
        }
    }

    pub fn is_star_free(&self) -> bool {
        self.entries.iter().all(|&e| e != PatternEntry::Star)
    }

    /// Relabels parts: entry `(i,j)` of the result is `self(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        PatternMatrix::from_fn(self.m, |i, j| self.get(perm[i], perm[j]))
    }

    /// Principal submatrix on the given part indices, in the given order.
    pub fn principal(&self, indices: &[usize]) -> Self {
        PatternMatrix::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// Reorders the parts so that zero-diagonal parts come first and
    /// one-diagonal parts last. The permutation is the stable sort of the
    /// part indices by diagonal value.
    pub fn normalize_block_form(&self) -> Result<(BlockForm, PatternMatrix), PatternError> {
        self.require_no_diagonal_star()?;
        let mut perm: Vec<usize> = (0..self.m).collect();
        perm.sort_by_key(|&i| self.get(i, i));
        let permuted = self.permuted(&perm);
        let k = self.diag_counts().zeros;
        let ell = self.m - k;
        let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| {
            let entries = rows
                .clone()
                .flat_map(|i| cols.clone().map(move |j| (i, j)))
                .map(|(i, j)| permuted.get(i, j))
                .collect();
            Block {
                rows: rows.len(),
                cols: cols.len(),
                entries,
            }
        };
        let form = BlockForm {
            a: block(0..k, 0..k),
            b: block(k..self.m, k..self.m),
            c: block(0..k, k..self.m),
            perm,
            k,
            ell,
        };
        Ok((form, permuted))
    }

    /// True iff the cross block `C` (zero parts against one parts) contains a `*`.
    pub fn block_c_has_star(&self) -> Result<bool, PatternError> {
        let (form, _) = self.normalize_block_form()?;
        Ok(form.c.entries.contains(&PatternEntry::Star))
    }

    /// True iff every `*` lies in block `C`.
    pub fn is_friendly(&self) -> Result<bool, PatternError> {
        let (form, _) = self.normalize_block_form()?;
        Ok(!form.a.entries.contains(&PatternEntry::Star)
            && !form.b.entries.contains(&PatternEntry::Star))
    }

    /// True iff every non-`*` entry of block `C` lies in a row or a column of
    /// `C` made entirely of non-`*` entries.
    pub fn is_crossed(&self) -> Result<bool, PatternError> {
        let (form, _) = self.normalize_block_form()?;
        let c = &form.c;
        let row_clean: Vec<bool> = (0..c.rows)
            .map(|r| (0..c.cols).all(|s| c.get(r, s) != PatternEntry::Star))
            .collect();
        let col_clean: Vec<bool> = (0..c.cols)
            .map(|s| (0..c.rows).all(|r| c.get(r, s) != PatternEntry::Star))
            .collect();
        Ok((0..c.rows).all(|r| {
            (0..c.cols).all(|s| c.get(r, s) == PatternEntry::Star || row_clean[r] || col_clean[s])
        }))
    }

    /// Entrywise `0 <-> 1` swap; `*` is fixed.
    pub fn complement(&self) -> Self {
        PatternMatrix {
            m: self.m,
            entries: self.entries.iter().map(|e| e.complement()).collect(),
        }
    }

    /// `M_{k,t}`: a `k x k` matrix with zero diagonal, ones between the last
    /// part and the `t` parts just before it, and `*` everywhere else.
    pub fn m_kt(k: usize, t: usize) -> Result<Self, PatternError> {
        if t == 0 || t + 1 > k {
            return Err(PatternError::BadParameters(format!(
                "M_{{k,t}} requires 1 <= t <= k-1, got k={k}, t={t}"
            )));
        }
        let last = k - 1;
        let ones = (k - 1 - t)..last;
        Ok(PatternMatrix::from_fn(k, |i, j| {
            if i == j {
                PatternEntry::Zero
            } else if j == last && ones.contains(&i) {
                PatternEntry::One
            } else {
                PatternEntry::Star
            }
        }))
    }

    /// The matrix whose partitions are exactly `(k, ell)`-partitions: `k`
    /// independent parts, `ell` clique parts, no constraints between parts.
    pub fn kl(k: usize, ell: usize) -> Result<Self, PatternError> {
        if k + ell == 0 {
            return Err(PatternError::BadParameters(
                "a (k,l) matrix needs k + l >= 1".to_string(),
            ));
        }
        Ok(PatternMatrix::from_fn(k + ell, |i, j| {
            match (i == j, i < k) {
                (true, true) => PatternEntry::Zero,
                (true, false) => PatternEntry::One,
                (false, _) => PatternEntry::Star,
            }
        }))
    }

    /// Every symmetric matrix of order `m`, in a fixed order.
    pub fn all_symmetric(m: usize) -> impl Iterator<Item = PatternMatrix> {
        let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let total = 3usize.pow(cells.len() as u32);
        (0..total).map(move |mut code| {
            let mut values = vec![PatternEntry::Zero; cells.len()];
            for v in values.iter_mut() {
                *v = PatternEntry::ALL[code % 3];
                code /= 3;
            }
            let mut it = values.into_iter();
            PatternMatrix::from_fn(m, |_, _| it.next().unwrap())
        })
    }

    /// Short filesystem-safe name: rows joined by `-`, with `*` written as `x`.
    pub fn slug(&self) -> String {
        self.rows().join("-").replace('*', "x")
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rows().join(";"))
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternMatrix({self})")
    }
}

impl FromStr for PatternMatrix {
    type Err = PatternError;

    /// Rows separated by `;` or newlines; whitespace inside a row is ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let rows = text
            .split(|c| c == ';' || c == '\n')
            .map(|row| {
                row.chars()
                    .filter(|c| !c.is_whitespace())
                    .collect::<Vec<_>>()
            })
            .filter(|row| !row.is_empty())
            .map(|row| row.into_iter().map(PatternEntry::from_char).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        PatternMatrix::from_rows(rows)
    }
}

pub fn parse_matrix(text: &str) -> Result<PatternMatrix, PatternError> {
    text.parse()
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    m: usize,
    rows: Vec<String>,
}

impl Serialize for PatternMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            m: self.m,
            rows: self.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PatternMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let matrix: PatternMatrix = raw
            .rows
            .join(";")
            .parse()
            .map_err(serde::de::Error::custom)?;
        if matrix.order() != raw.m {
            return Err(serde::de::Error::custom(format!(
                "declared order {} does not match {} rows",
                raw.m,
                matrix.order()
            )));
        }
        Ok(matrix)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DiagCounts {
    pub zeros: usize,
    pub ones: usize,
    pub stars: usize,
}

/// A rectangular sub-pattern, used for the blocks of a [`BlockForm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<PatternEntry>,
}

impl Block {
    pub fn get(&self, r: usize, c: usize) -> PatternEntry {
        self.entries[r * self.cols + c]
    }
}

/// `(A, B, C)` decomposition of a matrix without diagonal stars.
///
/// `perm[new] = old` maps positions in the normalized matrix back to the
/// original part indices. `A` is the `k x k` block of zero-diagonal parts, `B`
/// the `ell x ell` block of one-diagonal parts, `C` the `k x ell` cross block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub perm: Vec<usize>,
    pub k: usize,
    pub ell: usize,
    pub a: Block,
    pub b: Block,
    pub c: Block,
}
