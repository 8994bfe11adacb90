//! Closed-form tensor, alternating and symmetric superpowers of metric
//! pairs, and the independent Faulkner-route construction used as an
//! oracle against them.
//!
//! The closed forms assemble products from first superminors of the factor
//! Gram matrix with the four-case sector signs; the oracle instead builds
//! the inner-structure module of the input pair, takes the corresponding
//! power module, and solves the Faulkner linear systems.  The two routes
//! share only the low-level quotient normalization.

use crate::jordan::{
    faulkner_with_dual, module_from_pair, parity_sort, permute_pair_tensors, MetricPair, Side,
};
use crate::lie::{
    power_module, power_pairing_gram, tensor_modules, tensor_pairing_gram, tensor_tuple_position,
    tensor_tuples, MetricLieSupermodule, TensorMode,
};
use crate::linear::{
    detper, eta_sign, omega_sign, perdet, EvenMap, Mat, Parity, SuperMatrix, SuperSpace,
};
use crate::powers::{
    enum_indices, matrix_power, normalize_pure, superminor, tuple_position, IndexTuple, PowerKind,
};
use crate::scalar::Scalar;
use crate::{Error, MAX_POWER_DIM};

/// Which power construction of pairs is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPowerKind {
    Alt,
    Sym,
    Tensor,
}

/// The four-case sector sign table of the power-pair product formulas.
pub fn power_sign(
    kind: PowerKind,
    p: usize,
    q: usize,
    n: usize,
    i: usize,
    j: usize,
) -> Result<Scalar, Error> {
    if i < 1 || i > n {
        return Err(Error::IndexOutOfRange(i, n));
    }
    if j < 1 || j > n {
        return Err(Error::IndexOutOfRange(j, n));
    }
    if p > n {
        return Err(Error::SplitOutOfRange { k: p, n });
    }
    if q > n {
        return Err(Error::SplitOutOfRange { k: q, n });
    }
    let neg = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    let sign = match kind {
        PowerKind::Alt => match (i <= p, j <= q) {
            (true, true) => neg(i + j),
            (true, false) => neg(i + n),
            (false, true) => neg(j + n),
            (false, false) => 1,
        },
        PowerKind::Sym => match (i <= p, j <= q) {
            (true, true) => 1,
            (true, false) => neg(j + n),
            (false, true) => neg(i + n),
            (false, false) => neg(i + j),
        },
    };
    Ok(Scalar::from_sign(sign))
}

/// First superminor of an even `n x n` Gram grid split as
/// `(p|n-p) x (q|n-q)`: delete row `i` and column `j` (1-based).
fn first_superminor(
    kind: PowerKind,
    b: &Mat,
    p: usize,
    q: usize,
    n: usize,
    i: usize,
    j: usize,
) -> Result<Scalar, Error> {
    if n == 1 {
        return Ok(Scalar::one());
    }
    let row_space = SuperSpace::new(p, n - p);
    let col_space = SuperSpace::new(q, n - q);
    let bm = EvenMap::new(SuperMatrix::new(row_space, col_space, b.clone())?)?;
    let rows: Vec<usize> = (1..=n).filter(|&t| t != i).collect();
    let cols: Vec<usize> = (1..=n).filter(|&t| t != j).collect();
    let rt = IndexTuple::new(kind, row_space, rows)?;
    let ct = IndexTuple::new(kind, col_space, cols)?;
    superminor(kind, &bm, &rt, &ct)
}

struct PowerBasis {
    tuples: Vec<IndexTuple>,
    /// `perm[new] = old` position, sorting parities evens-first.
    perm: Vec<usize>,
    space: SuperSpace,
    labels: Vec<String>,
}

fn power_basis(kind: PowerKind, base: SuperSpace, n: usize) -> Result<PowerBasis, Error> {
    let tuples = enum_indices(kind, base, n)?;
    let parities: Vec<Parity> = tuples.iter().map(|t| t.parity()).collect();
    let (perm, space) = parity_sort(&parities);
    let labels = perm.iter().map(|&old| tuples[old].to_string()).collect();
    Ok(PowerBasis {
        tuples,
        perm,
        space,
        labels,
    })
}

fn assemble_pair(
    prod_minus: crate::jordan::Tensor4,
    prod_plus: crate::jordan::Tensor4,
    gram: Mat,
    minus: &PowerBasis,
    plus: &PowerBasis,
) -> MetricPair {
    let pair = permute_pair_tensors(
        &prod_minus,
        &prod_plus,
        &minus.perm,
        &plus.perm,
        minus.space,
        plus.space,
    );
    let mut g = Mat::zeros(minus.perm.len(), plus.perm.len());
    for i in 0..minus.perm.len() {
        for j in 0..plus.perm.len() {
            g.set(i, j, gram.at(minus.perm[i], plus.perm[j]).clone());
        }
    }
    MetricPair {
        pair,
        gram: g,
        labels_minus: Some(minus.labels.clone()),
        labels_plus: Some(plus.labels.clone()),
    }
}

fn check_nonzero(mp: &MetricPair) -> Result<(), Error> {
    if mp.pair.minus.dim() == 0 || mp.pair.plus.dim() == 0 {
        return Err(Error::Degenerate("power of a zero pair".into()));
    }
    Ok(())
}

/// The n-th alternating or symmetric superpower of a metric pair, by the
/// closed product formulas: factor-Gram first superminors, the four-case
/// sector signs, the `omega` sector weight and the Koszul slot prefix.
pub fn power_pair(kind: PowerKind, mp: &MetricPair, n: usize) -> Result<MetricPair, Error> {
    check_nonzero(mp)?;
    let minus = power_basis(kind, mp.pair.minus, n)?;
    let plus = power_basis(kind, mp.pair.plus, n)?;
    let gram = power_pair_gram(kind, mp, &minus.tuples, &plus.tuples, n)?;
    let prod_minus = power_products(kind, mp, Side::Minus, &minus.tuples, &plus.tuples, n)?;
    let prod_plus = power_products(kind, mp, Side::Plus, &plus.tuples, &minus.tuples, n)?;
    Ok(assemble_pair(prod_minus, prod_plus, gram, &minus, &plus))
}

/// Pairing of the power pair: `omega_{#odd}` times the hybrid minor of the
/// factor Gram.
fn power_pair_gram(
    kind: PowerKind,
    mp: &MetricPair,
    rows: &[IndexTuple],
    cols: &[IndexTuple],
    n: usize,
) -> Result<Mat, Error> {
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (ri, rt) in rows.iter().enumerate() {
        for (ci, ct) in cols.iter().enumerate() {
            if rt.even_count != ct.even_count {
                continue;
            }
            let b = Mat::from_fn(n, n, |r, c| {
                mp.pairing_basis(Side::Minus, rt.entries[r] - 1, ct.entries[c] - 1)
            });
            let p = rt.even_count;
            let value = match kind {
                PowerKind::Alt => detper(p, &b)?,
                PowerKind::Sym => perdet(p, &b)?,
            };
            if !value.is_zero() {
                out.set(
                    ri,
                    ci,
                    Scalar::from_sign(omega_sign(rt.odd_count())) * value,
                );
            }
        }
    }
    Ok(out)
}

/// Product tensor of the power pair on `side`: `x_tuples` index the
/// `side` half, `y_tuples` the opposite half.
fn power_products(
    kind: PowerKind,
    mp: &MetricPair,
    side: Side,
    x_tuples: &[IndexTuple],
    y_tuples: &[IndexTuple],
    n: usize,
) -> Result<crate::jordan::Tensor4, Error> {
    let sp = mp.pair.side_space(side);
    let op = mp.pair.side_space(side.flip());
    let dx = x_tuples.len();
    let dy = y_tuples.len();
    let mut out = vec![vec![vec![vec![Scalar::zero(); dx]; dx]; dy]; dx];
    for (xi, xt) in x_tuples.iter().enumerate() {
        let p = xt.even_count;
        let omega = Scalar::from_sign(omega_sign(xt.odd_count()));
        for (yi, yt) in y_tuples.iter().enumerate() {
            let q = yt.even_count;
            let b = Mat::from_fn(n, n, |r, c| {
                mp.pairing_basis(side, xt.entries[r] - 1, yt.entries[c] - 1)
            });
            // all first superminors and signs for this (X, Y) block
            let mut weights = Vec::new();
            for i in 1..=n {
                for j in 1..=n {
                    let minor = first_superminor(kind, &b, p, q, n, i, j)?;
                    if minor.is_zero() {
                        continue;
                    }
                    let sign = power_sign(kind, p, q, n, i, j)?;
                    weights.push((i, j, omega.clone() * sign * minor));
                }
            }
            if weights.is_empty() {
                continue;
            }
            for (zi, zt) in x_tuples.iter().enumerate() {
                for &(i, j, ref w) in &weights {
                    let pd = sp
                        .parity1(xt.entries[i - 1])
                        .add(op.parity1(yt.entries[j - 1]));
                    for k in 1..=n {
                        let mut prefix = 1i32;
                        for t in 0..k - 1 {
                            prefix *= eta_sign(sp.parity1(zt.entries[t]), pd);
                        }
                        let base = mp.pair.triple_basis(
                            side,
                            xt.entries[i - 1] - 1,
                            yt.entries[j - 1] - 1,
                            zt.entries[k - 1] - 1,
                        );
                        for (tw, c) in base.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut factors = zt.entries.clone();
                            factors[k - 1] = tw + 1;
                            if let Some((sign, target)) = normalize_pure(kind, sp, &factors)? {
                                let wi = tuple_position(x_tuples, &target).expect("canonical");
                                out[xi][yi][zi][wi] = out[xi][yi][zi][wi].clone()
                                    + w.clone() * Scalar::from_sign(prefix) * sign * c.clone();
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The spanning inner derivation of the power pair attached to a pair of
/// basis tuples, per the closed generator formula.  Exposed for the
/// generator-consistency checks.
pub fn power_nu_closed_form(
    kind: PowerKind,
    mp: &MetricPair,
    side: Side,
    xt: &IndexTuple,
    yt: &IndexTuple,
    n: usize,
) -> Result<(Mat, Mat), Error> {
    let sp = mp.pair.side_space(side);
    let op = mp.pair.side_space(side.flip());
    let p = xt.even_count;
    let q = yt.even_count;
    let omega = Scalar::from_sign(omega_sign(xt.odd_count()));
    let b = Mat::from_fn(n, n, |r, c| {
        mp.pairing_basis(side, xt.entries[r] - 1, yt.entries[c] - 1)
    });
    let dm = mp.pair.minus.dim();
    let dp = mp.pair.plus.dim();
    let mut acc_minus = Mat::zeros(dm, dm);
    let mut acc_plus = Mat::zeros(dp, dp);
    for i in 1..=n {
        for j in 1..=n {
            let minor = first_superminor(kind, &b, p, q, n, i, j)?;
            if minor.is_zero() {
                continue;
            }
            let weight = omega.clone() * power_sign(kind, p, q, n, i, j)? * minor;
            let (fa, fb) = (xt.entries[i - 1] - 1, yt.entries[j - 1] - 1);
            let nu = match side {
                Side::Minus => {
                    let pf = sp.parity1(xt.entries[i - 1]);
                    let pv = op.parity1(yt.entries[j - 1]);
                    crate::jordan::nu(&mp.pair, &unit(dm, fa), &unit(dp, fb), pf, pv)
                }
                Side::Plus => {
                    let pv = sp.parity1(xt.entries[i - 1]);
                    let pf = op.parity1(yt.entries[j - 1]);
                    crate::jordan::nu_reversed(&mp.pair, &unit(dp, fa), &unit(dm, fb), pv, pf)
                }
            };
            acc_minus = acc_minus.add(&nu.op_minus.scale(&weight));
            acc_plus = acc_plus.add(&nu.op_plus.scale(&weight));
        }
    }
    Ok((acc_minus, acc_plus))
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

struct TensorBasis {
    tuples: Vec<Vec<usize>>,
    perm: Vec<usize>,
    space: SuperSpace,
    labels: Vec<String>,
}

fn tensor_basis(spaces: &[SuperSpace]) -> Result<TensorBasis, Error> {
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let tuples = tensor_tuples(&dims);
    if tuples.len() > MAX_POWER_DIM {
        return Err(Error::PowerTooLarge(tuples.len(), MAX_POWER_DIM));
    }
    let parities: Vec<Parity> = tuples
        .iter()
        .map(|t| {
            let ps: Vec<Parity> = t
                .iter()
                .enumerate()
                .map(|(s, &i)| spaces[s].parity0(i))
                .collect();
            crate::linear::parity_sum(&ps)
        })
        .collect();
    let (perm, space) = parity_sort(&parities);
    let labels = perm
        .iter()
        .map(|&old| {
            let t = &tuples[old];
            format!(
                "({})",
                t.iter()
                    .map(|e| (e + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        })
        .collect();
    Ok(TensorBasis {
        tuples,
        perm,
        space,
        labels,
    })
}

/// The n-th restricted tensor superpower of a metric pair, by the closed
/// double-sum product formula.
pub fn restricted_tensor_power(mp: &MetricPair, n: usize) -> Result<MetricPair, Error> {
    if n < 2 {
        return Err(Error::Degenerate(
            "restricted tensor power needs n > 1".into(),
        ));
    }
    check_nonzero(mp)?;
    let pairs: Vec<&MetricPair> = vec![mp; n];
    tensor_product_impl(&pairs, true)
}

/// The general tensor superproduct of metric pairs, by the closed
/// single-sum diagonal product formula.
pub fn general_tensor_product(pairs: &[&MetricPair]) -> Result<MetricPair, Error> {
    if pairs.is_empty() {
        return Err(Error::Degenerate("empty tensor product".into()));
    }
    for mp in pairs {
        check_nonzero(mp)?;
    }
    tensor_product_impl(pairs, false)
}

fn tensor_product_impl(pairs: &[&MetricPair], restricted: bool) -> Result<MetricPair, Error> {
    let n = pairs.len();
    let minus_spaces: Vec<SuperSpace> = pairs.iter().map(|p| p.pair.minus).collect();
    let plus_spaces: Vec<SuperSpace> = pairs.iter().map(|p| p.pair.plus).collect();
    let minus = tensor_basis(&minus_spaces)?;
    let plus = tensor_basis(&plus_spaces)?;
    let mdims: Vec<usize> = minus_spaces.iter().map(|s| s.dim()).collect();
    let pdims: Vec<usize> = plus_spaces.iter().map(|s| s.dim()).collect();

    // pairing: product of slot pairings with the crossing signs
    let mut gram = Mat::zeros(minus.tuples.len(), plus.tuples.len());
    for (ri, rt) in minus.tuples.iter().enumerate() {
        for (ci, ct) in plus.tuples.iter().enumerate() {
            let mut value = Scalar::one();
            for t in 0..n {
                let g = pairs[t].gram.at(rt[t], ct[t]);
                if g.is_zero() {
                    value = Scalar::zero();
                    break;
                }
                value *= g.clone();
            }
            if value.is_zero() {
                continue;
            }
            let mut sign = 1i32;
            for i in 1..n {
                for j in 0..i {
                    sign *= eta_sign(
                        minus_spaces[i].parity0(rt[i]),
                        plus_spaces[j].parity0(ct[j]),
                    );
                }
            }
            gram.set(ri, ci, Scalar::from_sign(sign) * value);
        }
    }

    let products = |side: Side| -> Result<crate::jordan::Tensor4, Error> {
        let (x_spaces, y_spaces, x_tuples, y_tuples, x_dims) = match side {
            Side::Minus => (
                &minus_spaces,
                &plus_spaces,
                &minus.tuples,
                &plus.tuples,
                &mdims,
            ),
            Side::Plus => (
                &plus_spaces,
                &minus_spaces,
                &plus.tuples,
                &minus.tuples,
                &pdims,
            ),
        };
        let dx = x_tuples.len();
        let dy = y_tuples.len();
        let mut out = vec![vec![vec![vec![Scalar::zero(); dx]; dx]; dy]; dx];
        for (xi, xt) in x_tuples.iter().enumerate() {
            for (yi, yt) in y_tuples.iter().enumerate() {
                // crossing sign of the (x_i, y_j) interleaving
                let mut glob = 1i32;
                for i in 1..n {
                    for j in 0..i {
                        glob *= eta_sign(x_spaces[i].parity0(xt[i]), y_spaces[j].parity0(yt[j]));
                    }
                }
                // slot pairings <x_k, y_k>
                let slot_pairing: Vec<Scalar> = (0..n)
                    .map(|k| pairs[k].pairing_basis(side, xt[k], yt[k]))
                    .collect();
                for (zi, zt) in x_tuples.iter().enumerate() {
                    for i in 0..n {
                        let scal: Scalar = (0..n)
                            .filter(|&k| k != i)
                            .fold(Scalar::one(), |acc, k| acc * slot_pairing[k].clone());
                        if scal.is_zero() {
                            continue;
                        }
                        let target_slots: Vec<usize> = if restricted {
                            (0..n).collect()
                        } else {
                            vec![i]
                        };
                        for &j in &target_slots {
                            let mut prefix = glob;
                            for t in 0..j {
                                prefix *= eta_sign(
                                    x_spaces[i].parity0(xt[i]),
                                    x_spaces[t].parity0(zt[t]),
                                );
                                prefix *= eta_sign(
                                    y_spaces[i].parity0(yt[i]),
                                    x_spaces[t].parity0(zt[t]),
                                );
                            }
                            let base = pairs[j].pair.triple_basis(side, xt[i], yt[i], zt[j]);
                            for (w, c) in base.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let mut target = zt.clone();
                                target[j] = w;
                                let wi = tensor_tuple_position(x_dims, &target);
                                out[xi][yi][zi][wi] = out[xi][yi][zi][wi].clone()
                                    + Scalar::from_sign(prefix) * scal.clone() * c.clone();
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    };
    let prod_minus = products(Side::Minus)?;
    let prod_plus = products(Side::Plus)?;
    let pair = permute_pair_tensors(
        &prod_minus,
        &prod_plus,
        &minus.perm,
        &plus.perm,
        minus.space,
        plus.space,
    );
    let mut g = Mat::zeros(minus.perm.len(), plus.perm.len());
    for i in 0..minus.perm.len() {
        for j in 0..plus.perm.len() {
            g.set(i, j, gram.at(minus.perm[i], plus.perm[j]).clone());
        }
    }
    Ok(MetricPair {
        pair,
        gram: g,
        labels_minus: Some(minus.labels),
        labels_plus: Some(plus.labels),
    })
}

/// The same power pair through the Faulkner route: inner-structure module
/// of the input, power module, then the Faulkner construction with the
/// powered dual presented explicitly.
pub fn oracle_power_pair(
    kind: PairPowerKind,
    mp: &MetricPair,
    n: usize,
) -> Result<MetricPair, Error> {
    check_nonzero(mp)?;
    let image = module_from_pair(mp)?;
    match kind {
        PairPowerKind::Alt | PairPowerKind::Sym => {
            let pk = match kind {
                PairPowerKind::Alt => PowerKind::Alt,
                _ => PowerKind::Sym,
            };
            let (pplus, _) = power_module(pk, &image.plus, n)?;
            let (pminus, _) = power_module(pk, &image.minus, n)?;
            let (_, _, gp) = power_pairing_gram(pk, mp.pair.minus, mp.pair.plus, &image.gram, n)?;
            let (prod_minus, prod_plus) = faulkner_with_dual(
                &MetricLieSupermodule {
                    module: pplus,
                    b: image.b.clone(),
                },
                &pminus,
                &gp,
            )?;
            let minus = power_basis(pk, mp.pair.minus, n)?;
            let plus = power_basis(pk, mp.pair.plus, n)?;
            Ok(assemble_pair(prod_minus, prod_plus, gp, &minus, &plus))
        }
        PairPowerKind::Tensor => {
            if n < 2 {
                return Err(Error::Degenerate(
                    "restricted tensor power needs n > 1".into(),
                ));
            }
            let plus_factors: Vec<&crate::lie::SuperModule> = vec![&image.plus; n];
            let minus_factors: Vec<&crate::lie::SuperModule> = vec![&image.minus; n];
            let pplus = tensor_modules(TensorMode::Restricted, &plus_factors)?;
            let pminus = tensor_modules(TensorMode::Restricted, &minus_factors)?;
            let mparities = mp.pair.minus.parities();
            let pparities = mp.pair.plus.parities();
            let mference: Vec<&[Parity]> = (0..n).map(|_| mparities.as_slice()).collect();
            let pference: Vec<&[Parity]> = (0..n).map(|_| pparities.as_slice()).collect();
            let grams: Vec<&Mat> = (0..n).map(|_| &image.gram).collect();
            let gp = tensor_pairing_gram(&mference, &pference, &grams);
            let (prod_minus, prod_plus) = faulkner_with_dual(
                &MetricLieSupermodule {
                    module: pplus,
                    b: image.b.clone(),
                },
                &pminus,
                &gp,
            )?;
            let minus = tensor_basis(&vec![mp.pair.minus; n])?;
            let plus = tensor_basis(&vec![mp.pair.plus; n])?;
            let pair = permute_pair_tensors(
                &prod_minus,
                &prod_plus,
                &minus.perm,
                &plus.perm,
                minus.space,
                plus.space,
            );
            let mut g = Mat::zeros(minus.perm.len(), plus.perm.len());
            for i in 0..minus.perm.len() {
                for j in 0..plus.perm.len() {
                    g.set(i, j, gp.at(minus.perm[i], plus.perm[j]).clone());
                }
            }
            Ok(MetricPair {
                pair,
                gram: g,
                labels_minus: Some(minus.labels),
                labels_plus: Some(plus.labels),
            })
        }
    }
}

/// Lifts a verified automorphism of a metric pair to the corresponding
/// power pair, returning the component grids on the power bases.  The lift
/// is verified to preserve the power pairing and both products.
pub fn lift_automorphism(
    kind: PairPowerKind,
    mp: &MetricPair,
    phi_minus: &Mat,
    phi_plus: &Mat,
    n: usize,
) -> Result<(Mat, Mat), Error> {
    let f = crate::catalog::PairMap {
        minus: phi_minus.clone(),
        plus: phi_plus.clone(),
    };
    let hom = crate::catalog::check_hom(&f, &mp.pair, &mp.pair);
    if !hom.is_valid() {
        return Err(Error::NotAutomorphism(format!("{hom}")));
    }
    match crate::catalog::check_similarity(&f, mp, mp) {
        Some(mu) if mu.is_one() => {}
        other => {
            return Err(Error::NotAutomorphism(format!(
                "pairing not preserved (multiplier {other:?})"
            )))
        }
    }
    if phi_minus.rank() < mp.pair.minus.dim() || phi_plus.rank() < mp.pair.plus.dim() {
        return Err(Error::NotAutomorphism("component grid is singular".into()));
    }

    let (lift_minus, lift_plus, power) = match kind {
        PairPowerKind::Alt | PairPowerKind::Sym => {
            let pk = match kind {
                PairPowerKind::Alt => PowerKind::Alt,
                _ => PowerKind::Sym,
            };
            let lift_side = |grid: &Mat, space: SuperSpace| -> Result<Mat, Error> {
                let em = EvenMap::new(SuperMatrix::new(space, space, grid.clone())?)?;
                let pm = matrix_power(pk, &em, n)?;
                let basis = power_basis(pk, space, n)?;
                Ok(Mat::from_fn(basis.perm.len(), basis.perm.len(), |r, c| {
                    pm.mat.at(basis.perm[r], basis.perm[c]).clone()
                }))
            };
            (
                lift_side(phi_minus, mp.pair.minus)?,
                lift_side(phi_plus, mp.pair.plus)?,
                power_pair(pk, mp, n)?,
            )
        }
        PairPowerKind::Tensor => {
            let lift_side = |grid: &Mat, space: SuperSpace| -> Result<Mat, Error> {
                let basis = tensor_basis(&vec![space; n])?;
                let raw = Mat::from_fn(basis.tuples.len(), basis.tuples.len(), |r, c| {
                    let mut v = Scalar::one();
                    for t in 0..n {
                        let e = grid.at(basis.tuples[r][t], basis.tuples[c][t]);
                        if e.is_zero() {
                            return Scalar::zero();
                        }
                        v *= e.clone();
                    }
                    v
                });
                Ok(Mat::from_fn(basis.perm.len(), basis.perm.len(), |r, c| {
                    raw.at(basis.perm[r], basis.perm[c]).clone()
                }))
            };
            (
                lift_side(phi_minus, mp.pair.minus)?,
                lift_side(phi_plus, mp.pair.plus)?,
                restricted_tensor_power(mp, n)?,
            )
        }
    };
    let lifted = crate::catalog::PairMap {
        minus: lift_minus.clone(),
        plus: lift_plus.clone(),
    };
    let hom = crate::catalog::check_hom(&lifted, &power.pair, &power.pair);
    if !hom.is_valid() {
        return Err(Error::Inconsistency(format!(
            "lift does not preserve the power products: {hom}"
        )));
    }
    match crate::catalog::check_similarity(&lifted, &power, &power) {
        Some(mu) if mu.is_one() => {}
        other => {
            return Err(Error::Inconsistency(format!(
                "lift does not preserve the power pairing (multiplier {other:?})"
            )))
        }
    }
    Ok((lift_minus, lift_plus))
}
