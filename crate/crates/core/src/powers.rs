//! Canonical bases of alternating and symmetric superpowers, superminors,
//! matrix superpowers, the induced pairings and kernel classification.
//!
//! Basis elements of the n-th power are labelled by ordered multi-indices
//! into the base space.  In the alternating family the even entries are
//! strictly increasing and the odd entries non-decreasing; the symmetric
//! family mirrors this.  Families are enumerated sector by sector, with the
//! number of even entries decreasing, lexicographically inside a sector.

use std::fmt;

use crate::linear::{det, eta_sign, EvenMap, Mat, Parity, SuperSpace, SuperVector};
use crate::scalar::Scalar;
use crate::{Error, MAX_POWER_DIM};

/// Which quotient of the tensor power is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Alt,
    Sym,
}

impl PowerKind {
    /// Sign picked up when two adjacent homogeneous factors swap.
    fn swap_sign(self, a: Parity, b: Parity) -> i32 {
        match self {
            PowerKind::Alt => -eta_sign(a, b),
            PowerKind::Sym => eta_sign(a, b),
        }
    }

    /// Parity whose repetition kills a pure element.
    fn killing_parity(self) -> Parity {
        match self {
            PowerKind::Alt => Parity::Even,
            PowerKind::Sym => Parity::Odd,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            PowerKind::Alt => "alt",
            PowerKind::Sym => "sym",
        }
    }
}

/// An ordered multi-index labelling a canonical power basis element.
/// Entries are 1-based indices into the base space's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    pub kind: PowerKind,
    pub entries: Vec<usize>,
    /// Number of entries from the even block.
    pub even_count: usize,
}

impl IndexTuple {
    pub fn new(kind: PowerKind, space: SuperSpace, entries: Vec<usize>) -> Result<Self, Error> {
        let d = space.dim();
        if entries.is_empty() {
            return Err(Error::Degenerate("empty index tuple".into()));
        }
        for &e in &entries {
            if e < 1 || e > d {
                return Err(Error::IndexOutOfRange(e, d));
            }
        }
        let even_count = entries.iter().filter(|&&e| e <= space.d0).count();
        let (evens, odds) = entries.split_at(even_count);
        if evens.iter().any(|&e| e > space.d0) || odds.iter().any(|&e| e <= space.d0) {
            return Err(Error::ShapeMismatch(
                "entries are not parity-ordered".into(),
            ));
        }
        let even_ok = match kind {
            PowerKind::Alt => evens.windows(2).all(|w| w[0] < w[1]),
            PowerKind::Sym => evens.windows(2).all(|w| w[0] <= w[1]),
        };
        let odd_ok = match kind {
            PowerKind::Alt => odds.windows(2).all(|w| w[0] <= w[1]),
            PowerKind::Sym => odds.windows(2).all(|w| w[0] < w[1]),
        };
        if !even_ok || !odd_ok {
            return Err(Error::ShapeMismatch(format!(
                "{entries:?} is not a canonical {} index tuple",
                kind.label()
            )));
        }
        Ok(IndexTuple {
            kind,
            entries,
            even_count,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn odd_count(&self) -> usize {
        self.entries.len() - self.even_count
    }

    /// Parity of the labelled basis element.
    pub fn parity(&self) -> Parity {
        if self.odd_count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Product of the factorials of entry multiplicities (the order of the
    /// stabilizer of the tuple under slot permutations).
    pub fn stabilizer_order(&self) -> u64 {
        let mut order = 1u64;
        let mut run = 1u64;
        for w in self.entries.windows(2) {
            if w[0] == w[1] {
                run += 1;
                order *= run;
            } else {
                run = 1;
            }
        }
        order
    }

    pub fn parities(&self, space: SuperSpace) -> Vec<Parity> {
        self.entries.iter().map(|&e| space.parity1(e)).collect()
    }

    /// Parses the `"(1,2)"` label form.
    pub fn parse(kind: PowerKind, space: SuperSpace, s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad index tuple: {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index tuple: {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        IndexTuple::new(kind, space, entries)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.entries
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Closed-form dimension of the n-th power.
pub fn dim_power(kind: PowerKind, d0: usize, d1: usize, n: usize) -> Result<usize, Error> {
    check_power_request(kind, d0, d1, n)?;
    // Strict choices from one block, multiset choices from the other.
    let (strict, multi) = match kind {
        PowerKind::Alt => (d0, d1),
        PowerKind::Sym => (d1, d0),
    };
    let mut total: u128 = 0;
    for k in 0..=n.min(strict) {
        let j = n - k;
        let multi_count = if j == 0 {
            1
        } else if multi == 0 {
            0
        } else {
            binom(multi + j - 1, j)
        };
        total += binom(strict, k) * multi_count;
    }
    Ok(total as usize)
}

fn check_power_request(kind: PowerKind, d0: usize, d1: usize, n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::Degenerate("zero power requested".into()));
    }
    if d0 + d1 == 0 {
        return Err(Error::Degenerate("power of the zero space".into()));
    }
    match kind {
        PowerKind::Alt if d1 == 0 && n > d0 => Err(Error::Degenerate(format!(
            "alternating power {n} of an even space of dimension {d0} vanishes"
        ))),
        PowerKind::Sym if d0 == 0 && n > d1 => Err(Error::Degenerate(format!(
            "symmetric power {n} of an odd space of dimension {d1} vanishes"
        ))),
        _ => Ok(()),
    }
}

fn strict_tuples(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    // strictly increasing tuples from lo..=hi
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for rest in strict_tuples(first + 1, hi, len - 1) {
            let mut t = vec![first];
            t.extend(rest);
            out.push(t);
        }
    }
    out
}

fn multiset_tuples(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    // non-decreasing tuples from lo..=hi
    if len == 0 {
        return vec![vec![]];
    }
    if lo > hi {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for rest in multiset_tuples(first, hi, len - 1) {
            let mut t = vec![first];
            t.extend(rest);
            out.push(t);
        }
    }
    out
}

/// Complete canonical enumeration of the power basis labels.
pub fn enum_indices(
    kind: PowerKind,
    space: SuperSpace,
    n: usize,
) -> Result<Vec<IndexTuple>, Error> {
    check_power_request(kind, space.d0, space.d1, n)?;
    let (d0, d1) = (space.d0, space.d1);
    let mut out = Vec::new();
    // sectors by decreasing number of even entries
    for even_len in (0..=n).rev() {
        let odd_len = n - even_len;
        let evens = match kind {
            PowerKind::Alt => {
                if even_len > d0 {
                    continue;
                }
                strict_tuples(1, d0, even_len)
            }
            PowerKind::Sym => {
                if even_len > 0 && d0 == 0 {
                    continue;
                }
                multiset_tuples(1, d0, even_len)
            }
        };
        let odds = match kind {
            PowerKind::Alt => {
                if odd_len > 0 && d1 == 0 {
                    continue;
                }
                multiset_tuples(d0 + 1, d0 + d1, odd_len)
            }
            PowerKind::Sym => {
                if odd_len > d1 {
                    continue;
                }
                strict_tuples(d0 + 1, d0 + d1, odd_len)
            }
        };
        if evens.is_empty() || odds.is_empty() {
            continue;
        }
        for e in &evens {
            for o in &odds {
                let mut entries = e.clone();
                entries.extend_from_slice(o);
                out.push(IndexTuple {
                    kind,
                    entries,
                    even_count: even_len,
                });
            }
        }
    }
    if out.len() > MAX_POWER_DIM {
        return Err(Error::PowerTooLarge(out.len(), MAX_POWER_DIM));
    }
    Ok(out)
}

/// Position of a tuple inside the canonical enumeration.
pub fn tuple_position(tuples: &[IndexTuple], t: &IndexTuple) -> Option<usize> {
    tuples.iter().position(|u| u.entries == t.entries)
}

/// Sorts a list of basis-index factors into canonical shape, accumulating
/// the quotient-relation sign.  Returns `None` when the pure element dies
/// in the quotient (a repeated even factor for the alternating power, a
/// repeated odd factor for the symmetric one).
pub fn normalize_pure(
    kind: PowerKind,
    space: SuperSpace,
    factors: &[usize],
) -> Result<Option<(Scalar, IndexTuple)>, Error> {
    if factors.is_empty() {
        return Err(Error::Degenerate("empty factor list".into()));
    }
    let d = space.dim();
    for &e in factors {
        if e < 1 || e > d {
            return Err(Error::IndexOutOfRange(e, d));
        }
    }
    let mut entries = factors.to_vec();
    let mut sign = 1i32;
    // bubble sort; the swap rule is the defining quotient relation
    loop {
        let mut swapped = false;
        for i in 0..entries.len() - 1 {
            if entries[i] > entries[i + 1] {
                let (a, b) = (space.parity1(entries[i]), space.parity1(entries[i + 1]));
                sign *= kind.swap_sign(a, b);
                entries.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let killer = kind.killing_parity();
    for w in entries.windows(2) {
        if w[0] == w[1] && space.parity1(w[0]) == killer {
            return Ok(None);
        }
    }
    let tuple = IndexTuple::new(kind, space, entries)?;
    Ok(Some((Scalar::from_sign(sign), tuple)))
}

/// Lexicographic next permutation of a slice; the classic multiset step.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One representative per distinct rearrangement of the tuple, in
/// lexicographic order, each with the sign that restores the canonical
/// representative.
pub fn transversal(space: SuperSpace, tuple: &IndexTuple) -> Vec<(Vec<usize>, Scalar)> {
    let mut current = tuple.entries.clone();
    current.sort_unstable();
    let mut out = Vec::new();
    loop {
        let (sign, normalized) = normalize_pure(tuple.kind, space, &current)
            .expect("entries validated")
            .expect("a rearrangement of a canonical tuple cannot vanish");
        debug_assert_eq!(normalized.entries, tuple.entries);
        out.push((current.clone(), sign));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

/// Permanent summed over one representative per distinct row rearrangement:
/// rows are selected (with multiplicity) by `row_entries`, columns by
/// `col_entries`, both 1-based into `a`.
fn multiset_permanent(a: &Mat, row_entries: &[usize], col_entries: &[usize]) -> Scalar {
    debug_assert_eq!(row_entries.len(), col_entries.len());
    if row_entries.is_empty() {
        return Scalar::one();
    }
    let mut rows = row_entries.to_vec();
    rows.sort_unstable();
    let mut acc = Scalar::zero();
    loop {
        let mut term = Scalar::one();
        for (t, &r) in rows.iter().enumerate() {
            let v = a.at(r - 1, col_entries[t] - 1);
            if v.is_zero() {
                term = Scalar::zero();
                break;
            }
            term *= v.clone();
        }
        acc += term;
        if !next_permutation(&mut rows) {
            break;
        }
    }
    acc
}

/// The `(I, J)`-superminor of an even supermatrix: determinant over the
/// strict block times multiset permanent over the repetition block
/// (alternating), or the mirror (symmetric).  Zero when the even-entry
/// counts of `I` and `J` differ.
pub fn superminor(
    kind: PowerKind,
    a: &EvenMap,
    rows: &IndexTuple,
    cols: &IndexTuple,
) -> Result<Scalar, Error> {
    let rd = a.row_space.dim();
    let cd = a.col_space.dim();
    for &e in &rows.entries {
        if e > rd {
            return Err(Error::IndexOutOfRange(e, rd));
        }
    }
    for &e in &cols.entries {
        if e > cd {
            return Err(Error::IndexOutOfRange(e, cd));
        }
    }
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(
            "superminor index tuples of different length".into(),
        ));
    }
    if rows.even_count != cols.even_count {
        return Ok(Scalar::zero());
    }
    let p = rows.even_count;
    let (re, ro) = rows.entries.split_at(p);
    let (ce, co) = cols.entries.split_at(p);
    let sub = |r: &[usize], c: &[usize]| {
        let r0: Vec<usize> = r.iter().map(|&x| x - 1).collect();
        let c0: Vec<usize> = c.iter().map(|&x| x - 1).collect();
        a.mat.submatrix(&r0, &c0)
    };
    match kind {
        PowerKind::Alt => {
            let d = det(&sub(re, ce))?;
            if d.is_zero() {
                return Ok(Scalar::zero());
            }
            Ok(d * multiset_permanent(&a.mat, ro, co))
        }
        PowerKind::Sym => {
            let d = det(&sub(ro, co))?;
            if d.is_zero() {
                return Ok(Scalar::zero());
            }
            Ok(d * multiset_permanent(&a.mat, re, ce))
        }
    }
}

/// A matrix indexed by power basis labels on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerMatrix {
    pub kind: PowerKind,
    pub n: usize,
    pub row_space: SuperSpace,
    pub col_space: SuperSpace,
    pub row_tuples: Vec<IndexTuple>,
    pub col_tuples: Vec<IndexTuple>,
    pub mat: Mat,
}

impl PowerMatrix {
    pub fn mul(&self, other: &PowerMatrix) -> Result<PowerMatrix, Error> {
        if self.kind != other.kind || self.n != other.n || self.col_space != other.row_space {
            return Err(Error::ShapeMismatch("power matrix product mismatch".into()));
        }
        Ok(PowerMatrix {
            kind: self.kind,
            n: self.n,
            row_space: self.row_space,
            col_space: other.col_space,
            row_tuples: self.row_tuples.clone(),
            col_tuples: other.col_tuples.clone(),
            mat: self.mat.mul(&other.mat),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.row_space == self.col_space && self.mat.is_identity()
    }

    /// Dual of the power matrix with respect to the induced pairing, whose
    /// basis Gram weights are the tuple stabilizer orders.
    pub fn pairing_dual(&self) -> PowerMatrix {
        let t = self.mat.transpose();
        let mut mat = Mat::zeros(t.rows(), t.cols());
        for (i, it) in self.col_tuples.iter().enumerate() {
            let si = Scalar::from_int(it.stabilizer_order() as i64);
            for (j, jt) in self.row_tuples.iter().enumerate() {
                let sj = Scalar::from_int(jt.stabilizer_order() as i64);
                let v = t.at(i, j).clone() * sj.try_div(&si).unwrap();
                mat.set(i, j, v);
            }
        }
        PowerMatrix {
            kind: self.kind,
            n: self.n,
            row_space: self.col_space,
            col_space: self.row_space,
            row_tuples: self.col_tuples.clone(),
            col_tuples: self.row_tuples.clone(),
            mat,
        }
    }
}

/// The n-th power of an even map: the grid of `(I', I)`-superminors.
pub fn matrix_power(kind: PowerKind, a: &EvenMap, n: usize) -> Result<PowerMatrix, Error> {
    let row_tuples = enum_indices(kind, a.row_space, n)?;
    let col_tuples = enum_indices(kind, a.col_space, n)?;
    let mut mat = Mat::zeros(row_tuples.len(), col_tuples.len());
    for (i, it) in row_tuples.iter().enumerate() {
        for (j, jt) in col_tuples.iter().enumerate() {
            mat.set(i, j, superminor(kind, a, it, jt)?);
        }
    }
    Ok(PowerMatrix {
        kind,
        n,
        row_space: a.row_space,
        col_space: a.col_space,
        row_tuples,
        col_tuples,
        mat,
    })
}

/// Coordinates of an element of the n-th power over the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerVector {
    pub kind: PowerKind,
    pub space: SuperSpace,
    pub n: usize,
    pub coords: Vec<Scalar>,
}

impl PowerVector {
    pub fn zero(kind: PowerKind, space: SuperSpace, n: usize) -> Result<Self, Error> {
        let dim = enum_indices(kind, space, n)?.len();
        Ok(PowerVector {
            kind,
            space,
            n,
            coords: vec![Scalar::zero(); dim],
        })
    }

    pub fn basis_element(
        kind: PowerKind,
        space: SuperSpace,
        tuple: &IndexTuple,
    ) -> Result<Self, Error> {
        let tuples = enum_indices(kind, space, tuple.len())?;
        let pos = tuple_position(&tuples, tuple)
            .ok_or_else(|| Error::ShapeMismatch(format!("{tuple} is not a basis label here")))?;
        let mut coords = vec![Scalar::zero(); tuples.len()];
        coords[pos] = Scalar::one();
        Ok(PowerVector {
            kind,
            space,
            n: tuple.len(),
            coords,
        })
    }
}

/// Multilinear expansion of a pure power element in the canonical basis.
pub fn expand_pure(kind: PowerKind, vectors: &[SuperVector]) -> Result<PowerVector, Error> {
    if vectors.is_empty() {
        return Err(Error::Degenerate("empty factor list".into()));
    }
    let space = vectors[0].space;
    if vectors.iter().any(|v| v.space != space) {
        return Err(Error::ShapeMismatch(
            "factors live in different spaces".into(),
        ));
    }
    let n = vectors.len();
    let tuples = enum_indices(kind, space, n)?;
    let mut coords = vec![Scalar::zero(); tuples.len()];
    let supports: Vec<Vec<usize>> = vectors
        .iter()
        .map(|v| {
            (0..space.dim())
                .filter(|&i| !v.coords[i].is_zero())
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    if supports.iter().any(|s| s.is_empty()) {
        // a zero factor kills the product
        return PowerVector::zero(kind, space, n);
    }
    let mut pick = vec![0usize; n];
    'outer: loop {
        let factors: Vec<usize> = (0..n).map(|t| supports[t][pick[t]]).collect();
        let mut coeff = Scalar::one();
        for (t, &f) in factors.iter().enumerate() {
            coeff *= vectors[t].coords[f - 1].clone();
        }
        if let Some((sign, tuple)) = normalize_pure(kind, space, &factors)? {
            let pos = tuple_position(&tuples, &tuple).expect("normalized tuple is canonical");
            coords[pos] = coords[pos].clone() + sign * coeff;
        }
        // odometer over supports
        for t in (0..n).rev() {
            pick[t] += 1;
            if pick[t] < supports[t].len() {
                continue 'outer;
            }
            pick[t] = 0;
            if t == 0 {
                break 'outer;
            }
        }
    }
    Ok(PowerVector {
        kind,
        space,
        n,
        coords,
    })
}

/// Coordinate pairing between a power of the dual space and a power of the
/// space: the canonical bases are dual to each other under this form.
pub fn pairing_f(fvec: &PowerVector, vvec: &PowerVector) -> Result<Scalar, Error> {
    if fvec.kind != vvec.kind || fvec.n != vvec.n || fvec.space != vvec.space {
        return Err(Error::ShapeMismatch(
            "mismatched power degrees or spaces".into(),
        ));
    }
    let mut acc = Scalar::zero();
    for (a, b) in fvec.coords.iter().zip(&vvec.coords) {
        if !a.is_zero() && !b.is_zero() {
            acc += a.clone() * b.clone();
        }
    }
    Ok(acc)
}

/// Outcome of the power-kernel membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelVerdict {
    /// `A = r·id` with `r^n = 1`.
    ScalarRoot(Scalar),
    /// The exceptional shape: the power is one-dimensional and membership
    /// is cut out by `det A = 1`.
    SlCase,
    NotKernel,
}

/// Classifies whether the n-th power of `a` is the identity, per the
/// kernel description of the power morphism.
pub fn kernel_check(kind: PowerKind, a: &EvenMap, n: usize) -> Result<KernelVerdict, Error> {
    if a.row_space != a.col_space {
        return Err(Error::ShapeMismatch(
            "kernel test needs an endomorphism".into(),
        ));
    }
    let p = matrix_power(kind, a, n)?;
    if !p.is_identity() {
        return Ok(KernelVerdict::NotKernel);
    }
    let sp = a.row_space;
    let exceptional = match kind {
        PowerKind::Alt => sp.d1 == 0 && sp.d0 == n,
        PowerKind::Sym => sp.d0 == 0 && sp.d1 == n,
    };
    if exceptional {
        let d = det(&a.mat)?;
        if !d.is_one() {
            return Err(Error::Inconsistency(
                "power is the identity but the determinant is not 1".into(),
            ));
        }
        return Ok(KernelVerdict::SlCase);
    }
    match a.mat.is_scalar_multiple_of_identity() {
        Some(r) if r.pow(n as i64)?.is_one() => Ok(KernelVerdict::ScalarRoot(r)),
        _ => Err(Error::Inconsistency(
            "power is the identity but the map is not a scalar root of unity".into(),
        )),
    }
}

/// Per-sector weights `omega_{#odd}` of the supermodule power pairing, and
/// the stabilizer orders: the induced pairing of canonical bases is
/// diagonal with entry `omega_{#odd(I)} * stab(I)` at `I`.
pub fn power_pairing_weight(tuple: &IndexTuple) -> Scalar {
    Scalar::from_sign(crate::linear::omega_sign(tuple.odd_count()))
        * Scalar::from_int(tuple.stabilizer_order() as i64)
}
