//! Vector superspaces, exact matrices, parity signs and the
//! determinant/permanent hybrids.
//!
//! Every space carries its canonical parity-ordered basis: indices
//! `1..=d0` are even, `d0+1..=d0+d1` are odd.  Linear maps are coordinate
//! grids acting on column vectors.

use std::fmt;
use std::ops::Deref;

use crate::scalar::Scalar;
use crate::Error;

/// Z/2 parity label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        self.add(Parity::Odd)
    }
}

/// Sum of a list of parities.
pub fn parity_sum(ps: &[Parity]) -> Parity {
    let odd = ps.iter().filter(|p| p.is_odd()).count();
    if odd % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `(-1)^{eps(x) eps(y)}` as a machine sign.
pub fn eta_sign(x: Parity, y: Parity) -> i32 {
    if x.is_odd() && y.is_odd() {
        -1
    } else {
        1
    }
}

/// `(-1)^{eps(x)eps(y) + eps(y)eps(z) + eps(z)eps(x)}` as a machine sign.
pub fn eta3_sign(x: Parity, y: Parity, z: Parity) -> i32 {
    eta_sign(x, y) * eta_sign(y, z) * eta_sign(z, x)
}

/// The Koszul sign `eta_{x,y}`.
pub fn eta(x: Parity, y: Parity) -> Scalar {
    Scalar::from_sign(eta_sign(x, y))
}

/// The three-argument Koszul sign `eta_{x,y,z}`.
pub fn eta3(x: Parity, y: Parity, z: Parity) -> Scalar {
    Scalar::from_sign(eta3_sign(x, y, z))
}

/// `omega_k = (-1)^{k(k-1)/2}` as a machine sign.
pub fn omega_sign(k: usize) -> i32 {
    match k % 4 {
        0 | 1 => 1,
        _ => -1,
    }
}

/// A finite-dimensional vector superspace with its canonical
/// parity-ordered basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuperSpace {
    pub d0: usize,
    pub d1: usize,
}

impl SuperSpace {
    pub fn new(d0: usize, d1: usize) -> Self {
        SuperSpace { d0, d1 }
    }

    pub fn dim(&self) -> usize {
        self.d0 + self.d1
    }

    /// Parity of the basis vector with 1-based index `i`.
    pub fn parity1(&self, i: usize) -> Parity {
        debug_assert!(i >= 1 && i <= self.dim());
        if i <= self.d0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity of the basis vector with 0-based index `i`.
    pub fn parity0(&self, i: usize) -> Parity {
        self.parity1(i + 1)
    }

    pub fn parities(&self) -> Vec<Parity> {
        (0..self.dim()).map(|i| self.parity0(i)).collect()
    }
}

/// A dense exact matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: Scalar) {
        if !v.is_zero() {
            let idx = r * self.cols + c;
            self.data[idx] = self.data[idx].clone() + v;
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self.at(i, j).is_zero() {
                        acc += self.at(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| {
            s.clone() * self.at(i, j).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let r = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { r.clone() } else { Scalar::zero() };
                if *self.at(i, j) != want {
                    return None;
                }
            }
        }
        Some(r)
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Row rank, by exact Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < work.rows && col < work.cols {
            let pivot = (rank..work.rows).find(|&r| !work.at(r, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            for j in 0..work.cols {
                let tmp = work.at(rank, j).clone();
                work.set(rank, j, work.at(p, j).clone());
                work.set(p, j, tmp);
            }
            let inv = work.at(rank, col).inv().unwrap();
            for r in rank + 1..work.rows {
                let factor = work.at(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..work.cols {
                    let v = work.at(r, j).clone() - factor.clone() * work.at(rank, j).clone();
                    work.set(r, j, v);
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Solves `self * x = rhs` for a square invertible `self`.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        assert_eq!(rhs.len(), n);
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(col, j).clone();
                    a.set(col, j, a.at(pivot, j).clone());
                    a.set(pivot, j, tmp);
                }
                b.swap(col, pivot);
            }
            let inv = a.at(col, col).inv().unwrap();
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.at(r, col).clone() * inv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.at(r, j).clone() - factor.clone() * a.at(col, j).clone();
                    a.set(r, j, v);
                }
                b[r] = b[r].clone() - factor * b[col].clone();
            }
        }
        for i in 0..n {
            b[i] = b[i].try_div(a.at(i, i))?;
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Mat, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            cols.push(self.solve(&e)?);
        }
        Ok(Mat::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Sub-grid picked out by explicit row and column index lists (0-based).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant; `det` of the empty matrix is 1.
pub fn det(m: &Mat) -> Result<Scalar, Error> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut out = Scalar::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a.at(r, col).is_zero());
        let Some(p) = pivot else {
            return Ok(Scalar::zero());
        };
        if p != col {
            for j in 0..n {
                let tmp = a.at(col, j).clone();
                a.set(col, j, a.at(p, j).clone());
                a.set(p, j, tmp);
            }
            sign = -sign;
        }
        let pv = a.at(col, col).clone();
        out *= pv.clone();
        let inv = pv.inv().unwrap();
        for r in col + 1..n {
            let factor = a.at(r, col).clone() * inv.clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let v = a.at(r, j).clone() - factor.clone() * a.at(col, j).clone();
                a.set(r, j, v);
            }
        }
    }
    Ok(out * Scalar::from_sign(sign))
}

/// Exact permanent by the naive expansion; `per` of the empty matrix is 1.
/// Guarded to orders `<= 8`.
pub fn per(m: &Mat) -> Result<Scalar, Error> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > 8 {
        return Err(Error::PermanentTooLarge(n));
    }
    fn expand(m: &Mat, row: usize, used: u32) -> Scalar {
        let n = m.rows();
        if row == n {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let a = m.at(row, c);
            if a.is_zero() {
                continue;
            }
            acc += a.clone() * expand(m, row + 1, used | (1 << c));
        }
        acc
    }
    Ok(expand(m, 0, 0))
}

fn leading_trailing(m: &Mat, k: usize) -> Result<(Mat, Mat), Error> {
    let n = m.rows();
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if k > n {
        return Err(Error::SplitOutOfRange { k, n });
    }
    let lead: Vec<usize> = (0..k).collect();
    let trail: Vec<usize> = (k..n).collect();
    Ok((m.submatrix(&lead, &lead), m.submatrix(&trail, &trail)))
}

/// Determinant of the leading `k x k` block times permanent of the trailing
/// `(n-k) x (n-k)` block.
pub fn detper(k: usize, m: &Mat) -> Result<Scalar, Error> {
    let (lead, trail) = leading_trailing(m, k)?;
    Ok(det(&lead)? * per(&trail)?)
}

/// Permanent of the leading `k x k` block times determinant of the trailing
/// `(n-k) x (n-k)` block.
pub fn perdet(k: usize, m: &Mat) -> Result<Scalar, Error> {
    let (lead, trail) = leading_trailing(m, k)?;
    Ok(per(&lead)? * det(&trail)?)
}

/// Sign of the minimal adjacent-transposition sort of a parity word into
/// the evens-first order: `(-1)^{#\{j<i : a_j odd, a_i even\}}`.
pub fn sigma_sign(alpha: &[Parity]) -> Scalar {
    let mut exp = 0usize;
    for i in 0..alpha.len() {
        if !alpha[i].is_odd() {
            exp += alpha[..i].iter().filter(|p| p.is_odd()).count();
        }
    }
    Scalar::from_sign(if exp % 2 == 0 { 1 } else { -1 })
}

/// A coordinate grid between superspaces, read column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    pub row_space: SuperSpace,
    pub col_space: SuperSpace,
    pub mat: Mat,
}

impl SuperMatrix {
    pub fn new(row_space: SuperSpace, col_space: SuperSpace, mat: Mat) -> Result<Self, Error> {
        if mat.rows() != row_space.dim() || mat.cols() != col_space.dim() {
            return Err(Error::ShapeMismatch(format!(
                "grid {}x{} does not fit spaces ({}|{}) x ({}|{})",
                mat.rows(),
                mat.cols(),
                row_space.d0,
                row_space.d1,
                col_space.d0,
                col_space.d1
            )));
        }
        Ok(SuperMatrix {
            row_space,
            col_space,
            mat,
        })
    }

    /// True when the grid couples only equal parities.
    pub fn is_even(&self) -> bool {
        for i in 0..self.row_space.dim() {
            for j in 0..self.col_space.dim() {
                if self.row_space.parity0(i) != self.col_space.parity0(j)
                    && !self.mat.at(i, j).is_zero()
                {
                    return false;
                }
            }
        }
        true
    }
}

/// An even supermatrix interpreted as a degree-0 linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenMap(SuperMatrix);

impl EvenMap {
    pub fn new(sm: SuperMatrix) -> Result<Self, Error> {
        if !sm.is_even() {
            return Err(Error::NotEven);
        }
        Ok(EvenMap(sm))
    }

    pub fn identity(space: SuperSpace) -> Self {
        EvenMap(SuperMatrix::new(space, space, Mat::identity(space.dim())).unwrap())
    }

    pub fn from_blocks(
        row_space: SuperSpace,
        col_space: SuperSpace,
        even: &Mat,
        odd: &Mat,
    ) -> Result<Self, Error> {
        if even.rows() != row_space.d0
            || even.cols() != col_space.d0
            || odd.rows() != row_space.d1
            || odd.cols() != col_space.d1
        {
            return Err(Error::ShapeMismatch(
                "block sizes do not match spaces".into(),
            ));
        }
        let mut m = Mat::zeros(row_space.dim(), col_space.dim());
        for i in 0..even.rows() {
            for j in 0..even.cols() {
                m.set(i, j, even.at(i, j).clone());
            }
        }
        for i in 0..odd.rows() {
            for j in 0..odd.cols() {
                m.set(row_space.d0 + i, col_space.d0 + j, odd.at(i, j).clone());
            }
        }
        EvenMap::new(SuperMatrix::new(row_space, col_space, m)?)
    }

    pub fn compose(&self, inner: &EvenMap) -> Result<EvenMap, Error> {
        if self.col_space != inner.row_space {
            return Err(Error::ShapeMismatch(
                "composition spaces do not match".into(),
            ));
        }
        EvenMap::new(SuperMatrix::new(
            self.row_space,
            inner.col_space,
            self.mat.mul(&inner.mat),
        )?)
    }
}

impl Deref for EvenMap {
    type Target = SuperMatrix;
    fn deref(&self) -> &SuperMatrix {
        &self.0
    }
}

/// Left-dual of an even map under the canonical duality; in coordinates
/// this is the transpose, with the row and column spaces swapped.
pub fn dual_map(h: &EvenMap) -> EvenMap {
    EvenMap::new(SuperMatrix::new(h.col_space, h.row_space, h.mat.transpose()).unwrap()).unwrap()
}

/// A coordinate vector in a superspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperVector {
    pub space: SuperSpace,
    pub coords: Vec<Scalar>,
}

impl SuperVector {
    pub fn new(space: SuperSpace, coords: Vec<Scalar>) -> Result<Self, Error> {
        if coords.len() != space.dim() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in space of dimension {}",
                coords.len(),
                space.dim()
            )));
        }
        Ok(SuperVector { space, coords })
    }

    pub fn basis(space: SuperSpace, i0: usize) -> Self {
        let mut coords = vec![Scalar::zero(); space.dim()];
        coords[i0] = Scalar::one();
        SuperVector { space, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Parity of a homogeneous vector; `None` for zero or mixed support.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.space.parity0(i);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen
    }
}

/// Incremental exact row-echelon accumulator.  Tracks, for each stored
/// pivot row, its expression in terms of the vectors inserted so far, so
/// members of the span can be rewritten in the inserted basis.
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>, // (pivot, row, combo over inserted)
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(width: usize) -> Self {
        EchelonBasis {
            width,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut v = v.to_vec();
        let mut combo = vec![Scalar::zero(); self.rows.len()];
        for (idx, (pivot, row, _)) in self.rows.iter().enumerate() {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].try_div(&row[*pivot]).unwrap();
            for j in 0..self.width {
                if !row[j].is_zero() {
                    v[j] = v[j].clone() - factor.clone() * row[j].clone();
                }
            }
            combo[idx] = factor;
        }
        (v, combo)
    }

    /// Inserts `v` if independent of the current span; returns whether it
    /// was kept.  Every presented vector consumes one "inserted" slot so
    /// that [`Self::coordinates`] can report combinations over the full
    /// presentation order.
    pub fn try_insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width);
        let (reduced, combo_used) = self.reduce(v);
        let pivot = reduced.iter().position(|c| !c.is_zero());
        let inserted_idx = self.inserted;
        self.inserted += 1;
        match pivot {
            None => false,
            Some(p) => {
                // reduced = v - sum combo_used[r] * row_r, and each row is
                // itself a combination of earlier kept vectors.
                let mut combo = vec![Scalar::zero(); inserted_idx + 1];
                combo[inserted_idx] = Scalar::one();
                for (r, c) in combo_used.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, pc) in self.rows[r].2.iter().enumerate() {
                        if !pc.is_zero() {
                            combo[slot] = combo[slot].clone() - c.clone() * pc.clone();
                        }
                    }
                }
                self.rows.push((p, reduced, combo));
                true
            }
        }
    }

    /// Coordinates of `v` over the presented vectors (support only on the
    /// kept ones), or `None` when `v` lies outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (reduced, combo_used) = self.reduce(v);
        if reduced.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = vec![Scalar::zero(); self.inserted];
        for (r, c) in combo_used.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, pc) in self.rows[r].2.iter().enumerate() {
                if !pc.is_zero() {
                    out[slot] = out[slot].clone() + c.clone() * pc.clone();
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat2(a: i64, b: i64, c: i64, d: i64) -> Mat {
        Mat::from_rows(vec![vec![s(a), s(b)], vec![s(c), s(d)]])
    }

    #[test]
    fn eta_table() {
        use Parity::*;
        assert_eq!(eta(Odd, Odd), s(-1));
        assert_eq!(eta(Even, Odd), s(1));
        assert_eq!(eta(Even, Even), s(1));
        assert_eq!(eta3(Odd, Odd, Odd), s(-1));
        assert_eq!(eta3(Even, Odd, Odd), s(-1));
        assert_eq!(eta3(Even, Even, Odd), s(1));
    }

    #[test]
    fn det_and_per_two_by_two() {
        let m = mat2(1, 2, 3, 4);
        assert_eq!(det(&m).unwrap(), s(-2));
        assert_eq!(per(&m).unwrap(), s(10));
    }

    #[test]
    fn empty_det_and_per_are_one() {
        let e = Mat::zeros(0, 0);
        assert_eq!(det(&e).unwrap(), s(1));
        assert_eq!(per(&e).unwrap(), s(1));
    }

    #[test]
    fn non_square_rejected() {
        let m = Mat::zeros(2, 3);
        assert!(matches!(det(&m), Err(Error::NotSquare { .. })));
        assert!(matches!(per(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn detper_and_perdet_splits() {
        let m = mat2(1, 2, 3, 4);
        assert_eq!(detper(1, &m).unwrap(), s(4)); // a*d
        assert_eq!(detper(2, &m).unwrap(), s(-2)); // plain determinant
        assert_eq!(perdet(0, &m).unwrap(), s(-2)); // plain determinant
        assert_eq!(perdet(2, &m).unwrap(), s(10)); // plain permanent
        assert!(matches!(detper(3, &m), Err(Error::SplitOutOfRange { .. })));
    }

    fn det_bruteforce(m: &Mat) -> Scalar {
        // Permutation sum, the independent route.
        fn go(m: &Mat, row: usize, used: u32, sign: i32) -> Scalar {
            let n = m.rows();
            if row == n {
                return Scalar::from_sign(sign);
            }
            let mut acc = Scalar::zero();
            for c in 0..n {
                if used & (1 << c) != 0 || m.at(row, c).is_zero() {
                    continue;
                }
                let swaps = (0..c).filter(|&x| used & (1 << x) == 0).count();
                let s2 = if swaps % 2 == 0 { sign } else { -sign };
                acc += m.at(row, c).clone() * go(m, row + 1, used | (1 << c), s2);
            }
            acc
        }
        go(m, 0, 0, 1)
    }

    #[test]
    fn det_matches_permutation_sum_up_to_order_six() {
        let mut seed = 37u64;
        let mut next = move || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 0..=6usize {
            let m = Mat::from_fn(n, n, |_, _| s(next()));
            assert_eq!(det(&m).unwrap(), det_bruteforce(&m));
        }
    }

    #[test]
    fn permanent_guard() {
        assert!(matches!(
            per(&Mat::identity(9)),
            Err(Error::PermanentTooLarge(9))
        ));
        assert!(per(&Mat::identity(8)).is_ok());
    }

    #[test]
    fn detper_matches_the_hybrid_permutation_sum() {
        // independent evaluation: sum over block-preserving permutations,
        // signed on the leading block only
        fn hybrid(k: usize, m: &Mat) -> Scalar {
            let n = m.rows();
            fn perms(len: usize) -> Vec<Vec<usize>> {
                if len == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for p in perms(len - 1) {
                    for slot in 0..=p.len() {
                        let mut q = p.clone();
                        q.insert(slot, len - 1);
                        out.push(q);
                    }
                }
                out
            }
            fn sgn(p: &[usize]) -> i32 {
                let mut s = 1;
                for i in 0..p.len() {
                    for j in 0..i {
                        if p[j] > p[i] {
                            s = -s;
                        }
                    }
                }
                s
            }
            let mut acc = Scalar::zero();
            for head in perms(k) {
                for tail in perms(n - k) {
                    let mut term = Scalar::from_sign(sgn(&head));
                    for (t, &r) in head.iter().enumerate() {
                        term *= m.at(r, t).clone();
                    }
                    for (t, &r) in tail.iter().enumerate() {
                        term *= m.at(k + r, k + t).clone();
                    }
                    acc += term;
                }
            }
            acc
        }
        let mut seed = 19u64;
        let mut next = move || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for n in 0..=5usize {
            // block-diagonal grids: the hybrid only sees the blocks
            for k in 0..=n {
                let m = Mat::from_fn(n, n, |i, j| {
                    if (i < k) == (j < k) {
                        s(next())
                    } else {
                        Scalar::zero()
                    }
                });
                assert_eq!(detper(k, &m).unwrap(), hybrid(k, &m), "detper {k} of {n}");
            }
        }
    }

    #[test]
    fn sigma_sign_values() {
        use Parity::*;
        // already parity-ordered words map to +1
        assert_eq!(sigma_sign(&[Even, Even, Odd, Odd]), s(1));
        assert_eq!(sigma_sign(&[Odd, Even]), s(-1));
    }

    #[test]
    fn sigma_sign_adjacent_transposition_law() {
        use Parity::*;
        // exhaustive over words of length <= 6
        for len in 1..=6usize {
            for bits in 0..(1u32 << len) {
                let alpha: Vec<Parity> = (0..len)
                    .map(|i| if bits & (1 << i) != 0 { Odd } else { Even })
                    .collect();
                for i in 0..len.saturating_sub(1) {
                    let mut swapped = alpha.clone();
                    swapped.swap(i, i + 1);
                    // (-1)^{a_i + a_{i+1}}
                    let factor = if alpha[i] != alpha[i + 1] {
                        s(-1)
                    } else {
                        s(1)
                    };
                    assert_eq!(sigma_sign(&swapped), factor * sigma_sign(&alpha));
                }
            }
        }
    }

    #[test]
    fn dual_map_examples() {
        let sp = SuperSpace::new(2, 0);
        let id = EvenMap::identity(sp);
        assert_eq!(dual_map(&id), id);
        let diag = EvenMap::new(SuperMatrix::new(sp, sp, mat2(2, 0, 0, 3)).unwrap()).unwrap();
        assert_eq!(dual_map(&diag), diag);
    }

    #[test]
    fn dual_map_pairing_identity_random() {
        // <h*(f), v> = <f, h(v)> for even h on (2|2).
        let sp = SuperSpace::new(2, 2);
        let mut seed = 99u64;
        let mut next = move || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 30) % 9) as i64 - 4
        };
        for _ in 0..50 {
            let even = Mat::from_fn(2, 2, |_, _| s(next()));
            let odd = Mat::from_fn(2, 2, |_, _| s(next()));
            let h = EvenMap::from_blocks(sp, sp, &even, &odd).unwrap();
            let hd = dual_map(&h);
            let f: Vec<Scalar> = (0..4).map(|_| s(next())).collect();
            let v: Vec<Scalar> = (0..4).map(|_| s(next())).collect();
            let lhs: Scalar = hd
                .mat
                .mul_vec(&f)
                .iter()
                .zip(&v)
                .fold(Scalar::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            let rhs: Scalar = f
                .iter()
                .zip(h.mat.mul_vec(&v).iter())
                .fold(Scalar::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn even_map_rejects_odd_coupling() {
        let sp = SuperSpace::new(1, 1);
        let m = SuperMatrix::new(sp, sp, mat2(0, 1, 0, 0)).unwrap();
        assert!(matches!(EvenMap::new(m), Err(Error::NotEven)));
    }

    #[test]
    fn solve_and_inverse() {
        let m = mat2(2, 1, 1, 1);
        let x = m.solve(&[s(3), s(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s(3), s(2)]);
        assert!(m.inverse().unwrap().mul(&m).is_identity());
        let sing = mat2(1, 2, 2, 4);
        assert!(matches!(sing.solve(&[s(1), s(1)]), Err(Error::Singular)));
    }

    #[test]
    fn echelon_basis_coordinates() {
        let mut e = EchelonBasis::new(3);
        assert!(e.try_insert(&[s(1), s(0), s(1)]));
        assert!(e.try_insert(&[s(0), s(1), s(1)]));
        assert!(!e.try_insert(&[s(1), s(1), s(2)]));
        let c = e.coordinates(&[s(2), s(3), s(5)]).expect("inside the span");
        // 2*(1,0,1) + 3*(0,1,1) = (2,3,5); no weight on the dependent slot
        assert_eq!(c, vec![s(2), s(3), s(0)]);
        assert!(e.coordinates(&[s(1), s(0), s(0)]).is_none());
    }
}
