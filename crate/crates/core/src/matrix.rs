//! Exact integer matrix and lattice routines: Hermite and Smith normal forms,
//! left kernels, triangular coordinate solves, and lattice quotients.
//!
//! Matrices carry `BigInt` entries so the elimination steps never overflow,
//! whatever the input magnitudes. Rows are lattice vectors throughout: the
//! lattice spanned by a matrix is the set of integer combinations of its rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMat::zero(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntMat::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row in matrix constructor");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut m = IntMat::zero(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row in matrix constructor");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Stacks `self` on top of `other`; both must have the same width.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "width mismatch in vstack");
        let mut m = IntMat::zero(self.rows + other.rows, self.cols);
        m.data[..self.data.len()].clone_from_slice(&self.data);
        m.data[self.data.len()..].clone_from_slice(&other.data);
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_to_i64(&self, i: usize) -> Vec<i64> {
        self.row(i)
            .iter()
            .map(|v| i64::try_from(v).expect("matrix entry out of i64 range"))
            .collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut m = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = &self[(i, t)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(t, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, c)]);
            self[(i, c)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for col in 0..self.cols {
            let add = c * &self[(src, col)];
            self[(dst, col)] += add;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in 0..self.rows {
            let add = c * &self[(row, src)];
            self[(row, dst)] += add;
        }
    }

    /// Row-lattice Hermite normal form. Returns the echelon matrix of the
    /// nonzero rows: pivots are positive, entries below a pivot vanish and
    /// entries above it are reduced into `[0, pivot)`.
    pub fn hnf(&self) -> IntMat {
        let mut b = self.clone();
        let (m, n) = (b.rows, b.cols);
        let mut pivot_row = 0usize;
        for col in 0..n {
            if pivot_row == m {
                break;
            }
            loop {
                // smallest nonzero entry in this column at or below pivot_row
                let mut best: Option<usize> = None;
                for i in pivot_row..m {
                    if !b[(i, col)].is_zero()
                        && best.is_none_or(|bi| b[(i, col)].abs() < b[(bi, col)].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(best) = best else { break };
                b.swap_rows(pivot_row, best);
                if b[(pivot_row, col)].is_negative() {
                    b.negate_row(pivot_row);
                }
                let mut dirty = false;
                for i in pivot_row + 1..m {
                    if b[(i, col)].is_zero() {
                        continue;
                    }
                    let q = b[(i, col)].div_floor(&b[(pivot_row, col)]);
                    b.add_row_multiple(i, pivot_row, &-q);
                    if !b[(i, col)].is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if !b[(pivot_row, col)].is_zero() {
                for i in 0..pivot_row {
                    let q = b[(i, col)].div_floor(&b[(pivot_row, col)]);
                    b.add_row_multiple(i, pivot_row, &-q);
                }
                pivot_row += 1;
            }
        }
        let mut out = IntMat::zero(pivot_row, n);
        out.data.clone_from_slice(&b.data[..pivot_row * n]);
        out
    }

    /// Smith normal form with unimodular transforms: `u * self * v = s` where
    /// `s` is diagonal with nonnegative entries in an ascending divisibility
    /// chain. Inverse transforms are tracked alongside.
    pub fn snf(&self) -> Snf {
        let (m, n) = (self.rows, self.cols);
        let mut b = self.clone();
        let mut u = IntMat::identity(m);
        let mut u_inv = IntMat::identity(m);
        let mut v = IntMat::identity(n);
        let mut v_inv = IntMat::identity(n);

        // elementary operations, mirrored onto the transforms
        macro_rules! row_swap {
            ($i:expr, $j:expr) => {{
                b.swap_rows($i, $j);
                u.swap_rows($i, $j);
                u_inv.swap_cols($i, $j);
            }};
        }
        macro_rules! row_neg {
            ($i:expr) => {{
                b.negate_row($i);
                u.negate_row($i);
                u_inv.negate_col($i);
            }};
        }
        macro_rules! row_add {
            ($dst:expr, $src:expr, $c:expr) => {{
                let c: BigInt = $c;
                b.add_row_multiple($dst, $src, &c);
                u.add_row_multiple($dst, $src, &c);
                u_inv.add_col_multiple($src, $dst, &-c);
            }};
        }
        macro_rules! col_swap {
            ($i:expr, $j:expr) => {{
                b.swap_cols($i, $j);
                v.swap_cols($i, $j);
                v_inv.swap_rows($i, $j);
            }};
        }
        macro_rules! col_add {
            ($dst:expr, $src:expr, $c:expr) => {{
                let c: BigInt = $c;
                b.add_col_multiple($dst, $src, &c);
                v.add_col_multiple($dst, $src, &c);
                v_inv.add_row_multiple($src, $dst, &-c);
            }};
        }

        let k = m.min(n);
        for t in 0..k {
            'pivot: loop {
                // smallest nonzero entry of the trailing submatrix
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if !b[(i, j)].is_zero()
                            && best.is_none_or(|(bi, bj)| b[(i, j)].abs() < b[(bi, bj)].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { break };
                row_swap!(t, pi);
                col_swap!(t, pj);
                if b[(t, t)].is_negative() {
                    row_neg!(t);
                }
                for i in t + 1..m {
                    if !b[(i, t)].is_zero() {
                        let q = b[(i, t)].div_floor(&b[(t, t)]);
                        row_add!(i, t, -q);
                    }
                }
                if (t + 1..m).any(|i| !b[(i, t)].is_zero()) {
                    continue 'pivot;
                }
                for j in t + 1..n {
                    if !b[(t, j)].is_zero() {
                        let q = b[(t, j)].div_floor(&b[(t, t)]);
                        col_add!(j, t, -q);
                    }
                }
                if (t + 1..n).any(|j| !b[(t, j)].is_zero()) {
                    continue 'pivot;
                }
                // force the divisibility chain
                for i in t + 1..m {
                    for j in t + 1..n {
                        if !(&b[(i, j)] % &b[(t, t)]).is_zero() {
                            row_add!(t, i, BigInt::one());
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }

        let d: Vec<BigInt> = (0..k).map(|i| b[(i, i)].clone()).collect();
        debug_assert!(u.mul(self).mul(&v) == b, "snf transform mismatch");
        debug_assert!(u.mul(&u_inv) == IntMat::identity(m), "u inverse mismatch");
        debug_assert!(v.mul(&v_inv) == IntMat::identity(n), "v inverse mismatch");
        Snf {
            d,
            u,
            u_inv,
            v,
            v_inv,
        }
    }

    /// Basis of the left kernel `{ z : z * self = 0 }` as matrix rows.
    pub fn left_kernel(&self) -> IntMat {
        let snf = self.snf();
        let rank = snf.d.iter().filter(|d| !d.is_zero()).count();
        let mut out = IntMat::zero(self.rows - rank, self.rows);
        for (oi, i) in (rank..self.rows).enumerate() {
            for c in 0..self.rows {
                out[(oi, c)] = snf.u[(i, c)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Smith decomposition `u * a * v = diag(d)`.
pub struct Snf {
    pub d: Vec<BigInt>,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

/// Expresses `x` in the row basis of a square, full-rank, upper-triangular
/// Hermite matrix: returns `c` with `c * h = x`, or `None` when `x` lies
/// outside the row lattice.
pub fn solve_triangular(h: &IntMat, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = h.nrows();
    assert_eq!(h.ncols(), k, "triangular solve needs a square basis");
    assert_eq!(x.len(), k);
    let mut rem = x.to_vec();
    let mut c = vec![BigInt::zero(); k];
    for j in 0..k {
        let pivot = &h[(j, j)];
        assert!(!pivot.is_zero(), "triangular solve needs a full-rank basis");
        let (q, r) = rem[j].div_mod_floor(pivot);
        if !r.is_zero() {
            return None;
        }
        for col in j..k {
            let sub = &q * &h[(j, col)];
            rem[col] -= sub;
        }
        c[j] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    Some(c)
}

/// Canonical residue of `x` modulo the row lattice of `h` (square, full-rank,
/// upper-triangular): the unique coset representative with
/// `0 <= r[j] < h[j][j]` for every `j`. It is also the lexicographically
/// smallest representative.
pub fn box_reduce(h: &IntMat, x: &[BigInt]) -> Vec<BigInt> {
    let k = h.nrows();
    assert_eq!(h.ncols(), k, "box reduction needs a square basis");
    assert_eq!(x.len(), k);
    let mut rem = x.to_vec();
    for j in 0..k {
        let pivot = &h[(j, j)];
        assert!(!pivot.is_zero(), "box reduction needs a full-rank basis");
        let q = rem[j].div_floor(pivot);
        for col in j..k {
            let sub = &q * &h[(j, col)];
            rem[col] -= sub;
        }
    }
    rem
}

/// Structure of the finite quotient `Z^k / rowspan(h)` for a square,
/// full-rank `h`: invariant factors (ascending divisibility, including any
/// trivial `1` factors) together with the coordinate change realizing the
/// isomorphism.
pub struct LatticeQuotient {
    pub factors: Vec<BigInt>,
    v: IntMat,
    v_inv: IntMat,
}

impl LatticeQuotient {
    pub fn new(h: &IntMat) -> Self {
        let k = h.nrows();
        assert_eq!(h.ncols(), k, "lattice quotient needs a square basis");
        let snf = h.snf();
        assert!(
            snf.d.iter().all(|d| !d.is_zero()),
            "lattice quotient needs a full-rank basis"
        );
        LatticeQuotient {
            factors: snf.d,
            v: snf.v,
            v_inv: snf.v_inv,
        }
    }

    /// Indices of the nontrivial invariant factors.
    pub fn kept(&self) -> Vec<usize> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| **f > BigInt::one())
            .map(|(i, _)| i)
            .collect()
    }

    /// Class coordinates of `x`: the kept coordinates of `x * v`, reduced
    /// modulo the corresponding invariant factors.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        let k = self.factors.len();
        assert_eq!(x.len(), k);
        self.kept()
            .iter()
            .map(|&j| {
                let mut acc = BigInt::zero();
                for (i, xi) in x.iter().enumerate() {
                    acc += xi * &self.v[(i, j)];
                }
                acc.mod_floor(&self.factors[j])
            })
            .collect()
    }

    /// A preimage in `Z^k` of the `idx`-th kept generator of the quotient.
    pub fn section(&self, idx: usize) -> Vec<BigInt> {
        let j = self.kept()[idx];
        self.v_inv.row(j).to_vec()
    }
}

pub fn to_bigint_vec(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::from(v)).collect()
}
