//! Integer linear algebra over arbitrary-precision integers: Hermite and
//! Smith normal forms, saturated kernels, determinants, and bounded
//! enumeration of unimodular isometries between bilinear lattices.
//!
//! Lattices are row spans. The Hermite form here is the row-style one:
//! pivots positive, entries above a pivot reduced into `[0, pivot)`, zero
//! rows at the bottom. That form is a canonical representative of the row
//! span, so two matrices span the same lattice iff their forms agree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be square; got {rows}x{cols}")]
    GramNotSquare { rows: usize, cols: usize },
    #[error("lattice rank must be positive")]
    ZeroRank,
    #[error("declared rank {declared} does not match gram size {actual}")]
    RankMismatch { declared: usize, actual: usize },
}

/// Dense row-major integer matrix. Entries are `BigInt`, so nothing here
/// ever overflows; JSON form is an array of rows of decimal strings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Builds from rows; they must all have the same length. An empty list
    /// gives the 0x0 matrix (use `zero(0, n)` for an empty matrix with a
    /// definite column count).
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix literal"
        );
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    pub fn without_zero_rows(&self) -> Self {
        let kept: Vec<Vec<BigInt>> = (0..self.rows)
            .filter(|&r| !self.is_zero_row(r))
            .map(|r| self.row(r).to_vec())
            .collect();
        if kept.is_empty() {
            Self::zero(0, self.cols)
        } else {
            Self::from_rows(kept)
        }
    }

    /// Determinant by the Bareiss fraction-free elimination; every interior
    /// division is exact. The empty matrix has determinant 1.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    debug_assert!(num.is_multiple_of(&prev));
                    m[(i, j)] = num / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Compact one-line form `[[0,1],[-1,-2]]`, used in reports.
    pub fn bracket_string(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = self.row(r).iter().map(BigInt::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.entries.swap(a * c + j, b * c + j);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }

    /// row_r -= q * row_p
    fn sub_scaled_row(&mut self, r: usize, p: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(r, j)] - q * &self[(p, j)];
            self[(r, j)] = v;
        }
    }

    /// Replaces rows p, r by (xx*p + yy*r, sa*r - sb*p); unimodular whenever
    /// xx*sa + yy*sb = 1.
    fn combine_rows(&mut self, p: usize, r: usize, xx: &BigInt, yy: &BigInt, sa: &BigInt, sb: &BigInt) {
        for j in 0..self.cols {
            let vp = self[(p, j)].clone();
            let vr = self[(r, j)].clone();
            self[(p, j)] = xx * &vp + yy * &vr;
            self[(r, j)] = sa * &vr - sb * &vp;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} {}", self.rows, self.cols, self.bracket_string())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for (j, e) in self.row(r).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", e.to_string())?;
            }
            write!(f, "]")?;
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(BigInt::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Cell {
            Int(i64),
            Str(String),
        }
        let raw: Vec<Vec<Cell>> = Vec::deserialize(d)?;
        let cols = raw.first().map_or(0, Vec::len);
        if raw.iter().any(|row| row.len() != cols) {
            return Err(D::Error::custom("ragged rows in matrix"));
        }
        let mut rows = Vec::with_capacity(raw.len());
        for row in raw {
            let mut out = Vec::with_capacity(cols);
            for cell in row {
                out.push(match cell {
                    Cell::Int(v) => BigInt::from(v),
                    Cell::Str(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|e| D::Error::custom(format!("bad matrix entry {s:?}: {e}")))?,
                });
            }
            rows.push(out);
        }
        Ok(IntMatrix::from_rows(rows))
    }
}

/// A finitely generated free abelian group with an integer bilinear form,
/// given by its Gram matrix. The form need not be symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearLattice {
    rank: usize,
    gram: IntMatrix,
}

impl BilinearLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::GramNotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if gram.rows() == 0 {
            return Err(LatticeError::ZeroRank);
        }
        Ok(BilinearLattice {
            rank: gram.rows(),
            gram,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
}

impl Serialize for BilinearLattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BilinearLattice", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("gram", &self.gram)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BilinearLattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Raw {
            rank: Option<usize>,
            gram: IntMatrix,
        }
        let raw = Raw::deserialize(d)?;
        let lat = BilinearLattice::new(raw.gram).map_err(D::Error::custom)?;
        if let Some(declared) = raw.rank {
            if declared != lat.rank {
                return Err(D::Error::custom(LatticeError::RankMismatch {
                    declared,
                    actual: lat.rank,
                }));
            }
        }
        Ok(lat)
    }
}

/// Row-style Hermite normal form.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hnf_with_transform(m).0
}

/// Returns `(h, u)` with `u` unimodular and `u * m = h` in Hermite form.
/// Elimination below a pivot uses extended-gcd row combinations, so every
/// step is a determinant-one row operation up to sign.
pub fn hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(nz) = (pivot_row..rows).find(|&r| !h[(r, col)].is_zero()) else {
            continue;
        };
        h.swap_rows(pivot_row, nz);
        u.swap_rows(pivot_row, nz);
        for r in pivot_row + 1..rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, col)].clone();
            let b = h[(r, col)].clone();
            let eg = a.extended_gcd(&b);
            let sa = &a / &eg.gcd;
            let sb = &b / &eg.gcd;
            h.combine_rows(pivot_row, r, &eg.x, &eg.y, &sa, &sb);
            u.combine_rows(pivot_row, r, &eg.x, &eg.y, &sa, &sb);
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&pivot);
            if !q.is_zero() {
                h.sub_scaled_row(r, pivot_row, &q);
                u.sub_scaled_row(r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Basis, in Hermite form with zero rows dropped, of `{v : m * v = 0}`
/// (`v` a column vector, returned as rows). The kernel of an integer matrix
/// is automatically saturated: any rational solution with integer multiple
/// in the span is itself in the span.
pub fn saturated_kernel(m: &IntMatrix) -> IntMatrix {
    let t = m.transpose();
    let (h, u) = hnf_with_transform(&t);
    let kernel_rows: Vec<Vec<BigInt>> = (0..t.rows())
        .filter(|&r| h.is_zero_row(r))
        .map(|r| u.row(r).to_vec())
        .collect();
    if kernel_rows.is_empty() {
        return IntMatrix::zero(0, m.cols());
    }
    hnf(&IntMatrix::from_rows(kernel_rows)).without_zero_rows()
}

/// Whether `v` lies in the row span of `m` over the integers.
pub fn in_row_span(m: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), m.cols(), "vector length mismatch");
    let h = hnf(m).without_zero_rows();
    let mut v = v.to_vec();
    for r in 0..h.rows() {
        let Some(pc) = (0..h.cols()).find(|&c| !h[(r, c)].is_zero()) else {
            continue;
        };
        if v[pc].is_zero() {
            continue;
        }
        let (q, rem) = v[pc].div_rem(&h[(r, pc)]);
        if !rem.is_zero() {
            return false;
        }
        for c in 0..h.cols() {
            v[c] = &v[c] - &q * &h[(r, c)];
        }
    }
    v.iter().all(Zero::is_zero)
}

/// Whether two matrices span the same sublattice of `Z^n` as row spans.
pub fn row_span_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.cols(), b.cols(), "ambient ranks differ");
    hnf(a).without_zero_rows() == hnf(b).without_zero_rows()
}

/// Smith normal form: a diagonal matrix of the same shape with
/// `d_1 | d_2 | ...`, the nonnegative invariant factors.
pub fn snf(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            clear_column(&mut a, t);
            clear_row(&mut a, t);
            if (t + 1..rows).all(|i| a[(i, t)].is_zero())
                && (t + 1..cols).all(|j| a[(t, j)].is_zero())
            {
                let pivot = a[(t, t)].clone();
                match find_nondivisible(&a, t, &pivot) {
                    Some(i) => {
                        // Pull a bad row onto the pivot row and keep going;
                        // the pivot strictly shrinks to a gcd each round.
                        for j in 0..cols {
                            let v = &a[(t, j)] + &a[(i, j)];
                            a[(t, j)] = v;
                        }
                    }
                    None => break,
                }
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
        }
        t += 1;
    }
    for i in 0..rows {
        for j in 0..cols {
            if i != j {
                debug_assert!(a[(i, j)].is_zero());
            }
        }
    }
    a
}

/// Nonzero invariant factors of `m`, in divisibility order.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let s = snf(m);
    (0..m.rows().min(m.cols()))
        .map(|i| s[(i, i)].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some(b) if a[(i, j)].abs() >= a[b].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn find_nondivisible(a: &IntMatrix, t: usize, pivot: &BigInt) -> Option<usize> {
    for i in t + 1..a.rows() {
        for j in t + 1..a.cols() {
            if !a[(i, j)].is_multiple_of(pivot) {
                return Some(i);
            }
        }
    }
    None
}

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x == y {
        return;
    }
    for i in 0..a.rows() {
        let tmp = a[(i, x)].clone();
        a[(i, x)] = a[(i, y)].clone();
        a[(i, y)] = tmp;
    }
}

// Both clearing passes take an exact-division shortcut whenever the pivot
// already divides the entry: that shortcut leaves the pivot row and column
// untouched, so it can never re-dirty what the other pass just cleared. The
// gcd combine below runs only on non-divisible entries and strictly shrinks
// |pivot|, which is what bounds the clear_column/clear_row alternation.

fn clear_column(a: &mut IntMatrix, t: usize) {
    for i in t + 1..a.rows() {
        if a[(i, t)].is_zero() {
            continue;
        }
        let p = a[(t, t)].clone();
        let b = a[(i, t)].clone();
        if b.is_multiple_of(&p) {
            let q = &b / &p;
            a.sub_scaled_row(i, t, &q);
        } else {
            let eg = p.extended_gcd(&b);
            let sa = &p / &eg.gcd;
            let sb = &b / &eg.gcd;
            a.combine_rows(t, i, &eg.x, &eg.y, &sa, &sb);
        }
    }
}

fn clear_row(a: &mut IntMatrix, t: usize) {
    for j in t + 1..a.cols() {
        if a[(t, j)].is_zero() {
            continue;
        }
        let p = a[(t, t)].clone();
        let b = a[(t, j)].clone();
        if b.is_multiple_of(&p) {
            let q = &b / &p;
            for i in 0..a.rows() {
                let v = &a[(i, j)] - &q * &a[(i, t)];
                a[(i, j)] = v;
            }
        } else {
            let eg = p.extended_gcd(&b);
            let sa = &p / &eg.gcd;
            let sb = &b / &eg.gcd;
            // Column version of combine_rows on columns t, j.
            for i in 0..a.rows() {
                let vp = a[(i, t)].clone();
                let vj = a[(i, j)].clone();
                a[(i, t)] = &eg.x * &vp + &eg.y * &vj;
                a[(i, j)] = &sa * &vj - &sb * &vp;
            }
        }
    }
}

/// Whether `a` is a unimodular isometry from the lattice with form `g1` to
/// the lattice with form `g2`, i.e. `|det a| = 1` and `a^T G2 a = G1`.
pub fn is_isometry(a: &IntMatrix, g1: &BilinearLattice, g2: &BilinearLattice) -> bool {
    assert!(a.is_square(), "isometry candidate must be square");
    assert_eq!(a.rows(), g1.rank(), "candidate size does not match rank");
    assert_eq!(g1.rank(), g2.rank(), "lattices have different ranks");
    a.det().abs().is_one() && a.transpose().mul(g2.gram()).mul(a) == *g1.gram()
}

/// Exhaustive enumeration of all isometries with entries in `[-bound, bound]`,
/// in lexicographic order of the row-major entry tuple. The search space is
/// `(2*bound + 1)^(rank^2)`, so this is only meant for small ranks.
pub fn find_isometries(g1: &BilinearLattice, g2: &BilinearLattice, bound: u32) -> Vec<IntMatrix> {
    assert_eq!(g1.rank(), g2.rank(), "lattices have different ranks");
    assert!(bound >= 1, "bound must be at least 1");
    let r = g1.rank();
    let n = r * r;
    let lo = -(bound as i64);
    let hi = bound as i64;
    let mut entries = vec![lo; n];
    let mut out = Vec::new();
    loop {
        let cand = IntMatrix::from_fn(r, r, |i, j| BigInt::from(entries[i * r + j]));
        if is_isometry(&cand, g1, g2) {
            out.push(cand);
        }
        let mut k = n - 1;
        loop {
            if entries[k] < hi {
                entries[k] += 1;
                break;
            }
            entries[k] = lo;
            if k == 0 {
                return out;
            }
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&m(&[&[2, 4], &[6, 8]])), m(&[&[2, 0], &[0, 4]]));
        assert_eq!(
            hnf(&m(&[&[0, 0], &[3, 3]])),
            m(&[&[3, 3], &[0, 0]])
        );
        assert_eq!(hnf(&m(&[&[-1, 0], &[0, -1]])), IntMatrix::identity(2));
        // 1x1 and empty shapes
        assert_eq!(hnf(&m(&[&[-5]])), m(&[&[5]]));
        assert_eq!(hnf(&IntMatrix::zero(0, 3)), IntMatrix::zero(0, 3));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let h = hnf(&m(&[&[5, 7, 2], &[3, 1, 4], &[1, 1, 1]]));
        for c in 0..3 {
            let pr = (0..3).find(|&r| !h[(r, c)].is_zero());
            if let Some(pr) = pr {
                let pivot = h[(pr, c)].clone();
                assert!(pivot.is_positive());
                for r in 0..pr {
                    assert!(h[(r, c)] >= BigInt::from(0) && h[(r, c)] < pivot);
                }
            }
        }
    }

    #[test]
    fn transform_is_unimodular() {
        let a = m(&[&[4, 6, 10], &[2, 2, 2], &[9, 0, 3]]);
        let (h, u) = hnf_with_transform(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(saturated_kernel(&m(&[&[1, 2, 3]])).rows(), 2);
        let k = saturated_kernel(&m(&[&[2, 4]]));
        assert_eq!(k, m(&[&[2, -1]]));
        // saturation: the kernel direction is primitive even though the
        // matrix scales it
        let k = saturated_kernel(&m(&[&[4, 6]]));
        assert_eq!(k, m(&[&[3, -2]]));
        assert_eq!(saturated_kernel(&IntMatrix::identity(3)).rows(), 0);
        assert_eq!(saturated_kernel(&IntMatrix::zero(0, 4)), IntMatrix::identity(4));
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, -1, 0, 2], &[0, 3, -3, 6]]);
        let k = saturated_kernel(&a);
        assert_eq!(k.rows(), 2);
        let prod = a.mul(&k.transpose());
        assert!((0..prod.rows()).all(|r| prod.is_zero_row(r)));
        for r in 0..k.rows() {
            assert!(in_row_span(&k, k.row(r)));
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            invariant_factors(&m(&[&[2, 0], &[0, 3]])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(
            invariant_factors(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]])),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        assert_eq!(invariant_factors(&m(&[&[0, 0], &[0, 0]])), Vec::<BigInt>::new());
        assert_eq!(
            invariant_factors(&m(&[&[1, 2], &[2, 4]])),
            vec![BigInt::from(1)]
        );
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[0, 1], &[-1, -2]]).det(), BigInt::one());
        assert_eq!(m(&[&[2, 0], &[0, 3]]).det(), BigInt::from(6));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
        assert_eq!(
            m(&[&[3, -1, 2], &[0, 4, 1], &[5, 2, -2]]).det(),
            BigInt::from(-75)
        );
        assert_eq!(IntMatrix::zero(0, 0).det(), BigInt::one());
    }

    #[test]
    fn isometry_check() {
        let chi_b = BilinearLattice::new(m(&[&[-1, -1], &[-2, -3]])).unwrap();
        let chi_a = BilinearLattice::new(m(&[&[-3, -4], &[-5, -7]])).unwrap();
        let a = m(&[&[0, 1], &[-1, -2]]);
        assert!(is_isometry(&a, &chi_a, &chi_b));
        assert!(!is_isometry(&IntMatrix::identity(2), &chi_a, &chi_b));
        // non-unimodular candidates are rejected even if the forms match
        let scaled = BilinearLattice::new(m(&[&[-4, -4], &[-8, -12]])).unwrap();
        assert!(!is_isometry(&m(&[&[2, 0], &[0, 2]]), &scaled, &chi_b));
    }

    #[test]
    fn bound_3_enumeration_fixture() {
        // rank-2 pair with six isometries in the bound-3 box; the list is
        // pinned including its lexicographic order
        let chi_b = BilinearLattice::new(m(&[&[-1, -1], &[0, -1]])).unwrap();
        let chi_a = BilinearLattice::new(m(&[&[-1, -2], &[-1, -3]])).unwrap();
        let found = find_isometries(&chi_a, &chi_b, 3);
        let expected = [
            [-1, -2, 1, 1],
            [-1, -1, 0, -1],
            [0, -1, 1, 2],
            [0, 1, -1, -2],
            [1, 1, 0, 1],
            [1, 2, -1, -1],
        ];
        assert_eq!(found.len(), expected.len());
        for (got, want) in found.iter().zip(expected) {
            assert_eq!(got, &m(&[&[want[0], want[1]], &[want[2], want[3]]]));
        }
        for a in &found {
            let neg = IntMatrix::from_fn(2, 2, |i, j| -a[(i, j)].clone());
            assert!(found.contains(&neg));
        }
    }

    #[test]
    fn bilinear_lattice_validation() {
        assert!(BilinearLattice::new(m(&[&[1, 2]])).is_err());
        assert!(BilinearLattice::new(IntMatrix::zero(0, 0)).is_err());
        let lat = BilinearLattice::new(m(&[&[0, 1], &[-1, 0]])).unwrap();
        assert_eq!(lat.rank(), 2);
    }

    #[test]
    fn matrix_json_uses_decimal_strings() {
        let a = m(&[&[0, 1], &[-1, -2]]);
        let j = serde_json::to_value(&a).unwrap();
        assert_eq!(j, serde_json::json!([["0", "1"], ["-1", "-2"]]));
        let back: IntMatrix = serde_json::from_value(j).unwrap();
        assert_eq!(back, a);
        // integer cells are accepted on input
        let relaxed: IntMatrix = serde_json::from_str("[[0,1],[-1,-2]]").unwrap();
        assert_eq!(relaxed, a);
    }

    #[test]
    fn lattice_json_roundtrip() {
        let lat = BilinearLattice::new(m(&[&[-1, -1], &[-2, -3]])).unwrap();
        let j = serde_json::to_string(&lat).unwrap();
        let back: BilinearLattice = serde_json::from_str(&j).unwrap();
        assert_eq!(back, lat);
        let bad = r#"{"rank": 3, "gram": [["1","0"],["0","1"]]}"#;
        assert!(serde_json::from_str::<BilinearLattice>(bad).is_err());
        let missing_rank = r#"{"gram": [["1","0"],["0","1"]]}"#;
        assert!(serde_json::from_str::<BilinearLattice>(missing_rank).is_ok());
    }

    prop_compose! {
        fn arb_matrix(max_rows: usize, max_cols: usize)
            (r in 1..=max_rows, c in 1..=max_cols)
            (entries in prop::collection::vec(-9i64..=9, r * c), r in Just(r), c in Just(c))
            -> IntMatrix
        {
            let mut k = 0;
            IntMatrix::from_fn(r, c, |_, _| { let v = BigInt::from(entries[k]); k += 1; v })
        }
    }

    prop_compose! {
        fn arb_square3()(entries in prop::collection::vec(-9i64..=9, 9)) -> IntMatrix {
            let mut k = 0;
            IntMatrix::from_fn(3, 3, |_, _| { let v = BigInt::from(entries[k]); k += 1; v })
        }
    }

    proptest! {
        #[test]
        fn hnf_preserves_row_span(a in arb_matrix(4, 5)) {
            let h = hnf(&a);
            prop_assert!(row_span_eq(&a, &h));
            for r in 0..a.rows() {
                prop_assert!(in_row_span(&h, a.row(r)));
                prop_assert!(in_row_span(&a, h.row(r)));
            }
        }

        #[test]
        fn hnf_is_canonical_under_row_shuffle(a in arb_matrix(4, 4)) {
            let mut shuffled = a.clone();
            if a.rows() > 1 {
                shuffled.swap_rows(0, a.rows() - 1);
                shuffled.negate_row(0);
            }
            prop_assert_eq!(hnf(&a), hnf(&shuffled));
        }

        #[test]
        fn kernel_saturated_and_annihilating(a in arb_matrix(3, 5)) {
            let k = saturated_kernel(&a);
            let prod = a.mul(&k.transpose());
            for r in 0..prod.rows() {
                prop_assert!(prod.is_zero_row(r));
            }
            if k.rows() > 0 {
                let facs = invariant_factors(&k);
                prop_assert!(facs.iter().all(|d| d.is_one()));
            }
        }

        #[test]
        fn det_multiplicative(a in arb_square3(), b in arb_square3()) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }

        #[test]
        fn snf_invariant_under_transpose(a in arb_square3()) {
            prop_assert_eq!(invariant_factors(&a), invariant_factors(&a.transpose()));
        }
    }
}
