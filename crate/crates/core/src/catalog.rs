//! The simple Jordan pairs of types I, II and III with their generic
//! traces, homomorphism and similarity checkers, and the two worked
//! power-pair isomorphism verifications.

use crate::jordan::{tensor_shift, MetricPair, Side, TriplePair};
use crate::lie::Report;
use crate::linear::{Mat, Parity, SuperSpace};
use crate::pair_powers::power_pair;
use crate::powers::PowerKind;
use crate::scalar::Scalar;
use crate::Error;

/// A pair of even coordinate grids between the halves of two pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMap {
    pub minus: Mat,
    pub plus: Mat,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// Rectangular matrices over the field with entries indexed `(row, col)`.
fn basis_matrix(p: usize, q: usize, which: usize) -> Mat {
    let mut m = Mat::zeros(p, q);
    m.set(which / q, which % q, Scalar::one());
    m
}

fn trace_pair(x: &Mat, y: &Mat) -> Scalar {
    // tr(x y^T)
    let mut acc = Scalar::zero();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if !x.at(i, j).is_zero() && !y.at(i, j).is_zero() {
                acc += x.at(i, j).clone() * y.at(i, j).clone();
            }
        }
    }
    acc
}

fn jordan_product(x: &Mat, y: &Mat, z: &Mat) -> Mat {
    // x y^T z + z y^T x
    let yt = y.transpose();
    x.mul(&yt).mul(z).add(&z.mul(&yt).mul(x))
}

fn flatten(m: &Mat) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i));
    }
    v
}

/// The simple Jordan pair of type I on `p x q` matrices with the generic
/// trace `t(x, y) = tr(x y^T)` and products `{x,y,z} = x y^T z + z y^T x`.
pub fn type_i(p: usize, q: usize) -> Result<MetricPair, Error> {
    if p == 0 || q == 0 || p > q {
        return Err(Error::Degenerate(format!("type I parameters ({p},{q})")));
    }
    let d = p * q;
    let sp = SuperSpace::new(d, 0);
    let mut pair = TriplePair::zero(sp, sp);
    let basis: Vec<Mat> = (0..d).map(|i| basis_matrix(p, q, i)).collect();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let prod = flatten(&jordan_product(&basis[x], &basis[y], &basis[z]));
                pair.prod_minus[x][y][z] = prod.clone();
                pair.prod_plus[x][y][z] = prod;
            }
        }
    }
    let gram = Mat::from_fn(d, d, |i, j| trace_pair(&basis[i], &basis[j]));
    Ok(MetricPair::without_labels(pair, gram))
}

/// Index pairs `(i, j)` (1-based) labelling the antisymmetric basis
/// `E_{ij} - E_{ji}`, `i < j`, in lexicographic order.
pub fn antisymmetric_labels(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push((i, j));
        }
    }
    v
}

/// Index pairs `(i, j)` (1-based) labelling the symmetric basis
/// `E_{ij} + E_{ji}`, `i <= j`, in lexicographic order.
pub fn symmetric_labels(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            v.push((i, j));
        }
    }
    v
}

/// The simple Jordan pair of type II on antisymmetric `n x n` matrices,
/// with products installed from the structure-constant formulas on the
/// `E_{ij} - E_{ji}` basis, and trace Gram `t(E_{i1 i2}, E_{j1 j2}) =
/// d_{i1 j1} d_{i2 j2}`.
pub fn type_ii(n: usize) -> Result<MetricPair, Error> {
    if n < 2 {
        return Err(Error::Degenerate(format!("type II parameter {n}")));
    }
    let labels = antisymmetric_labels(n);
    let d = labels.len();
    let sp = SuperSpace::new(d, 0);
    let mut pair = TriplePair::zero(sp, sp);
    let position = |a: usize, b: usize| -> Option<(usize, Scalar)> {
        // E(a,b) written on the canonical basis, with sign
        if a == b {
            return None;
        }
        let (lo, hi, sign) = if a < b { (a, b, s(1)) } else { (b, a, s(-1)) };
        let pos = labels
            .iter()
            .position(|&(i, j)| (i, j) == (lo, hi))
            .unwrap();
        Some((pos, sign))
    };
    for (xi, &(i1, i2)) in labels.iter().enumerate() {
        for (yi, &(j1, j2)) in labels.iter().enumerate() {
            for (zi, &(k1, k2)) in labels.iter().enumerate() {
                let terms = [
                    (
                        delta(i2, j2) * delta(j1, k2) - delta(i2, j1) * delta(j2, k2),
                        (i1, k1),
                    ),
                    (
                        delta(i2, j1) * delta(j2, k1) - delta(i2, j2) * delta(j1, k1),
                        (i1, k2),
                    ),
                    (
                        delta(i1, j1) * delta(j2, k2) - delta(i1, j2) * delta(j1, k2),
                        (i2, k1),
                    ),
                    (
                        delta(i1, j2) * delta(j1, k1) - delta(i1, j1) * delta(j2, k1),
                        (i2, k2),
                    ),
                ];
                for (c, (a, b)) in terms {
                    if c == 0 {
                        continue;
                    }
                    if let Some((w, sign)) = position(a, b) {
                        let v = pair.prod_minus[xi][yi][zi][w].clone() + s(c) * sign;
                        pair.prod_minus[xi][yi][zi][w] = v.clone();
                        pair.prod_plus[xi][yi][zi][w] = v;
                    }
                }
            }
        }
    }
    let gram = Mat::from_fn(d, d, |i, j| {
        let (i1, i2) = labels[i];
        let (j1, j2) = labels[j];
        s(delta(i1, j1) * delta(i2, j2))
    });
    Ok(MetricPair::without_labels(pair, gram))
}

/// The simple Jordan pair of type III on symmetric `n x n` matrices, with
/// products installed from the structure-constant formulas on the
/// `E_{ij} + E_{ji}` basis, and trace Gram `t(E_{i1 i2}, E_{j1 j2}) =
/// 2(d_{i1 j2} d_{i2 j1} + d_{i1 j1} d_{i2 j2})`.
pub fn type_iii(n: usize) -> Result<MetricPair, Error> {
    if n < 1 {
        return Err(Error::Degenerate(format!("type III parameter {n}")));
    }
    let labels = symmetric_labels(n);
    let d = labels.len();
    let sp = SuperSpace::new(d, 0);
    let mut pair = TriplePair::zero(sp, sp);
    let position = |a: usize, b: usize| -> (usize, Scalar) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let pos = labels
            .iter()
            .position(|&(i, j)| (i, j) == (lo, hi))
            .unwrap();
        (pos, s(1))
    };
    for (xi, &(i1, i2)) in labels.iter().enumerate() {
        for (yi, &(j1, j2)) in labels.iter().enumerate() {
            for (zi, &(k1, k2)) in labels.iter().enumerate() {
                let terms = [
                    (
                        delta(i2, j2) * delta(j1, k2) + delta(i2, j1) * delta(j2, k2),
                        (i1, k1),
                    ),
                    (
                        delta(i2, j1) * delta(j2, k1) + delta(i2, j2) * delta(j1, k1),
                        (i1, k2),
                    ),
                    (
                        delta(i1, j1) * delta(j2, k2) + delta(i1, j2) * delta(j1, k2),
                        (i2, k1),
                    ),
                    (
                        delta(i1, j2) * delta(j1, k1) + delta(i1, j1) * delta(j2, k1),
                        (i2, k2),
                    ),
                ];
                for (c, (a, b)) in terms {
                    if c == 0 {
                        continue;
                    }
                    let (w, sign) = position(a, b);
                    let v = pair.prod_minus[xi][yi][zi][w].clone() + s(c) * sign;
                    pair.prod_minus[xi][yi][zi][w] = v.clone();
                    pair.prod_plus[xi][yi][zi][w] = v;
                }
            }
        }
    }
    let gram = Mat::from_fn(d, d, |i, j| {
        let (i1, i2) = labels[i];
        let (j1, j2) = labels[j];
        s(2 * (delta(i1, j2) * delta(i2, j1) + delta(i1, j1) * delta(i2, j2)))
    });
    Ok(MetricPair::without_labels(pair, gram))
}

/// Verifies the intertwining identity of a pair map on all basis triples.
pub fn check_hom(f: &PairMap, src: &TriplePair, dst: &TriplePair) -> Report {
    let mut report = Report::default();
    let dm = src.minus.dim();
    let dp = src.plus.dim();
    if f.minus.cols() != dm
        || f.plus.cols() != dp
        || f.minus.rows() != dst.minus.dim()
        || f.plus.rows() != dst.plus.dim()
    {
        report.push("map shape", "grids do not match the pair dimensions");
        return report;
    }
    for side in [Side::Minus, Side::Plus] {
        let (fs, ff) = match side {
            Side::Minus => (&f.minus, &f.plus),
            Side::Plus => (&f.plus, &f.minus),
        };
        let d = src.side_space(side).dim();
        let e = src.side_space(side.flip()).dim();
        for x in 0..d {
            for y in 0..e {
                for z in 0..d {
                    let lhs = fs.mul_vec(&src.triple_basis(side, x, y, z));
                    let rhs = dst.triple(side, &fs.col(x), &ff.col(y), &fs.col(z));
                    if lhs != rhs {
                        report.push(
                            "homomorphism identity",
                            format!("side {side:?}, x{x}, y{y}, z{z}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// The unique multiplier with `<f x, f y> = mu <x, y>`, when one exists.
pub fn check_similarity(f: &PairMap, src: &MetricPair, dst: &MetricPair) -> Option<Scalar> {
    let transported = f.minus.transpose().mul(&dst.gram).mul(&f.plus);
    let dm = src.pair.minus.dim();
    let dp = src.pair.plus.dim();
    let mut mu: Option<Scalar> = None;
    for i in 0..dm {
        for j in 0..dp {
            let a = src.gram.at(i, j);
            let b = transported.at(i, j);
            if a.is_zero() {
                if !b.is_zero() {
                    return None;
                }
                continue;
            }
            let candidate = b.try_div(a).ok()?;
            match &mu {
                None => mu = Some(candidate),
                Some(m) if *m != candidate => return None,
                _ => {}
            }
        }
    }
    mu
}

/// The type I automorphism `(y -> y A^{-T}, x -> x A)` for invertible `A`.
pub fn type_i_automorphism(p: usize, q: usize, a: &Mat) -> Result<PairMap, Error> {
    if a.rows() != q || a.cols() != q {
        return Err(Error::ShapeMismatch(format!("expected a {q}x{q} grid")));
    }
    let a_inv_t = a.inverse()?.transpose();
    let induced = |b: &Mat| -> Mat {
        // x -> x b on p x q matrices, in the E-basis
        let d = p * q;
        Mat::from_fn(d, d, |tgt, srci| {
            let (ta, td) = (tgt / q, tgt % q);
            let (sa, sb) = (srci / q, srci % q);
            if ta == sa {
                b.at(sb, td).clone()
            } else {
                Scalar::zero()
            }
        })
    };
    Ok(PairMap {
        minus: induced(&a_inv_t),
        plus: induced(a),
    })
}

/// Outcome of one worked example verification.
#[derive(Debug, Clone)]
pub struct ExampleOutcome {
    pub pass: bool,
    pub multiplier: Option<Scalar>,
    pub report: Report,
}

fn find_label(labels: &[String], want: &str) -> Option<usize> {
    labels.iter().position(|l| l == want)
}

fn run_example(
    catalog_pair: MetricPair,
    catalog_labels: Vec<(usize, usize)>,
    kind: PowerKind,
    n: usize,
    scale: Scalar,
    expected_multiplier: Scalar,
) -> Result<ExampleOutcome, Error> {
    let base = type_i(1, n)?;
    let powered = power_pair(kind, &base, 2)?;
    let shifted = tensor_shift(&powered, &s(-4), Parity::Even)?;
    let labels = shifted
        .labels_minus
        .clone()
        .ok_or_else(|| Error::Inconsistency("power pair lost its labels".into()))?;
    let d = catalog_labels.len();
    if shifted.pair.minus.dim() != d {
        return Err(Error::ShapeMismatch(format!(
            "power pair dimension {} vs catalog dimension {d}",
            shifted.pair.minus.dim()
        )));
    }
    // basis map E_{ij} -> scale * (power basis element labelled (i,j))
    let mut grid = Mat::zeros(d, d);
    for (col, &(i, j)) in catalog_labels.iter().enumerate() {
        let row = find_label(&labels, &format!("({i},{j})"))
            .ok_or_else(|| Error::Inconsistency(format!("missing power basis label ({i},{j})")))?;
        grid.set(row, col, scale.clone());
    }
    let f = PairMap {
        minus: grid.clone(),
        plus: grid.clone(),
    };
    let mut report = Report::default();
    if grid.rank() < d {
        report.push("invertibility", "basis map is singular");
    }
    let hom = check_hom(&f, &catalog_pair.pair, &shifted.pair);
    let multiplier = check_similarity(&f, &catalog_pair, &shifted);
    let mut pass = report.is_valid() && hom.is_valid();
    match &multiplier {
        Some(m) if *m == expected_multiplier => {}
        other => {
            pass = false;
            report.push(
                "similarity multiplier",
                format!("got {other:?}, expected {expected_multiplier}"),
            );
        }
    }
    Ok(ExampleOutcome {
        pass,
        multiplier,
        report: report.merged(hom),
    })
}

/// Verifies that the type II pair embeds into the shifted second
/// alternating power of the type I row pair, as a similarity with
/// multiplier -1, over the extension field.
pub fn verify_example_ii(n: usize) -> Result<ExampleOutcome, Error> {
    let pair = type_ii(n)?;
    run_example(
        pair,
        antisymmetric_labels(n),
        PowerKind::Alt,
        n,
        Scalar::i(),
        s(-1),
    )
}

/// Verifies that the type III pair embeds into the shifted second
/// symmetric power of the type I row pair, as a similarity with
/// multiplier 1/2.
pub fn verify_example_iii(n: usize) -> Result<ExampleOutcome, Error> {
    let pair = type_iii(n)?;
    run_example(
        pair,
        symmetric_labels(n),
        PowerKind::Sym,
        n,
        Scalar::one(),
        Scalar::rational(1, 2)?,
    )
}
