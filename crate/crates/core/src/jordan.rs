//! Generalized Jordan superpairs as coefficient tensors, their axiom
//! checkers, inner derivations, tensor shifts, and the Faulkner
//! construction in both directions.
//!
//! Pair spaces are parity-ordered.  `prod_minus[x][y][z][w]` is the
//! coefficient of the minus-side basis vector `w` in `{x, y, z}` with
//! `x, z` on the minus side and `y` on the plus side; `prod_plus` mirrors
//! this with the sides exchanged.

use crate::lie::{
    check_metric, check_module, LieSuperAlgebra, MetricLieSupermodule, Report, SuperModule,
};
use crate::linear::{eta3_sign, eta_sign, EchelonBasis, Mat, Parity, SuperSpace};
use crate::scalar::Scalar;
use crate::Error;

pub type Tensor4 = Vec<Vec<Vec<Vec<Scalar>>>>;

/// Which half of a pair an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// A trilinear superpair given by its two product coefficient tensors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePair {
    pub minus: SuperSpace,
    pub plus: SuperSpace,
    pub prod_minus: Tensor4,
    pub prod_plus: Tensor4,
}

/// A trilinear superpair with a pairing between its halves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricPair {
    pub pair: TriplePair,
    /// Gram matrix of the pairing, minus side by plus side.
    pub gram: Mat,
    /// Basis labels, present on pairs produced by power constructions.
    pub labels_minus: Option<Vec<String>>,
    pub labels_plus: Option<Vec<String>>,
}

impl TriplePair {
    pub fn zero(minus: SuperSpace, plus: SuperSpace) -> Self {
        let dm = minus.dim();
        let dp = plus.dim();
        TriplePair {
            minus,
            plus,
            prod_minus: vec![vec![vec![vec![Scalar::zero(); dm]; dm]; dp]; dm],
            prod_plus: vec![vec![vec![vec![Scalar::zero(); dp]; dp]; dm]; dp],
        }
    }

    pub fn side_space(&self, side: Side) -> SuperSpace {
        match side {
            Side::Minus => self.minus,
            Side::Plus => self.plus,
        }
    }

    fn prod(&self, side: Side) -> &Tensor4 {
        match side {
            Side::Minus => &self.prod_minus,
            Side::Plus => &self.prod_plus,
        }
    }

    /// Triple product on basis elements: `{e_x, e_y, e_z}` with `x, z` on
    /// `side` and `y` on the opposite side.
    pub fn triple_basis(&self, side: Side, x: usize, y: usize, z: usize) -> Vec<Scalar> {
        self.prod(side)[x][y][z].clone()
    }

    /// Trilinear evaluation on coordinate vectors.
    pub fn triple(&self, side: Side, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let d = self.side_space(side).dim();
        let t = self.prod(side);
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, zk) in z.iter().enumerate() {
                    if zk.is_zero() {
                        continue;
                    }
                    for (w, c) in t[i][j][k].iter().enumerate() {
                        if !c.is_zero() {
                            out[w] =
                                out[w].clone() + xi.clone() * yj.clone() * zk.clone() * c.clone();
                        }
                    }
                }
            }
        }
        out
    }

    /// The operator `D_{x,y} = {x, y, .}` as a grid on `side`.
    pub fn d_op(&self, side: Side, x: &[Scalar], y: &[Scalar]) -> Mat {
        let d = self.side_space(side).dim();
        let t = self.prod(side);
        let mut out = Mat::zeros(d, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for k in 0..d {
                    for (w, c) in t[i][j][k].iter().enumerate() {
                        if !c.is_zero() {
                            out.add_at(w, k, xi.clone() * yj.clone() * c.clone());
                        }
                    }
                }
            }
        }
        out
    }

    fn d_op_basis(&self, side: Side, x: usize, y: usize) -> Mat {
        let d = self.side_space(side).dim();
        let t = self.prod(side);
        let mut out = Mat::zeros(d, d);
        for k in 0..d {
            for (w, c) in t[x][y][k].iter().enumerate() {
                if !c.is_zero() {
                    out.set(w, k, c.clone());
                }
            }
        }
        out
    }
}

impl MetricPair {
    pub fn without_labels(pair: TriplePair, gram: Mat) -> Self {
        MetricPair {
            pair,
            gram,
            labels_minus: None,
            labels_plus: None,
        }
    }

    /// Exact equality of product tensors and Gram (labels ignored).
    pub fn coefficients_equal(&self, other: &MetricPair) -> bool {
        self.pair == other.pair && self.gram == other.gram
    }

    /// `<a, b>` with `a` on `side` and `b` opposite, using the convention
    /// `<v, f> = eta_{f,v} <f, v>` on the plus side.
    pub fn pairing_basis(&self, side: Side, a: usize, b: usize) -> Scalar {
        match side {
            Side::Minus => self.gram.at(a, b).clone(),
            Side::Plus => {
                let pa = self.pair.plus.parity0(a);
                let pb = self.pair.minus.parity0(b);
                Scalar::from_sign(eta_sign(pa, pb)) * self.gram.at(b, a).clone()
            }
        }
    }
}

/// A pair of operator grids `(on the minus side, on the plus side)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDerivation {
    pub op_minus: Mat,
    pub op_plus: Mat,
    pub parity: Parity,
}

impl InnerDerivation {
    fn flat(&self) -> Vec<Scalar> {
        let mut v = Vec::new();
        for i in 0..self.op_minus.rows() {
            v.extend(self.op_minus.row(i));
        }
        for i in 0..self.op_plus.rows() {
            v.extend(self.op_plus.row(i));
        }
        v
    }

    /// Lie superbracket of two homogeneous operator pairs.
    fn bracket(&self, other: &InnerDerivation) -> InnerDerivation {
        let eta = Scalar::from_sign(eta_sign(self.parity, other.parity));
        InnerDerivation {
            op_minus: self
                .op_minus
                .mul(&other.op_minus)
                .sub(&other.op_minus.mul(&self.op_minus).scale(&eta)),
            op_plus: self
                .op_plus
                .mul(&other.op_plus)
                .sub(&other.op_plus.mul(&self.op_plus).scale(&eta)),
            parity: self.parity.add(other.parity),
        }
    }
}

/// `nu(f, v) = (D^-_{f,v}, -eta_{f,v} D^+_{v,f})` for homogeneous
/// coordinate vectors `f` on the minus side, `v` on the plus side.
pub fn nu(
    pair: &TriplePair,
    f: &[Scalar],
    v: &[Scalar],
    pf: Parity,
    pv: Parity,
) -> InnerDerivation {
    let eta = Scalar::from_sign(eta_sign(pf, pv));
    InnerDerivation {
        op_minus: pair.d_op(Side::Minus, f, v),
        op_plus: pair.d_op(Side::Plus, v, f).scale(&-eta),
        parity: pf.add(pv),
    }
}

/// `nu` with the arguments reversed, via the antisymmetry convention
/// `nu(v, f) = -eta_{f,v} nu(f, v)`.
pub fn nu_reversed(
    pair: &TriplePair,
    v: &[Scalar],
    f: &[Scalar],
    pv: Parity,
    pf: Parity,
) -> InnerDerivation {
    let n = nu(pair, f, v, pf, pv);
    let eta = Scalar::from_sign(eta_sign(pf, pv));
    InnerDerivation {
        op_minus: n.op_minus.scale(&-eta.clone()),
        op_plus: n.op_plus.scale(&-eta),
        parity: n.parity,
    }
}

fn nu_basis(pair: &TriplePair, f: usize, v: usize) -> InnerDerivation {
    let pf = pair.minus.parity0(f);
    let pv = pair.plus.parity0(v);
    let eta = Scalar::from_sign(eta_sign(pf, pv));
    let mut op_plus = pair.d_op_basis(Side::Plus, v, f);
    op_plus = op_plus.scale(&-eta);
    InnerDerivation {
        op_minus: pair.d_op_basis(Side::Minus, f, v),
        op_plus,
        parity: pf.add(pv),
    }
}

/// Checks parity additivity and the graded commutator identity of the
/// products, exhaustively on basis tuples.
pub fn check_pair(pair: &TriplePair) -> Report {
    let mut report = Report::default();
    for side in [Side::Minus, Side::Plus] {
        let sp = pair.side_space(side);
        let op = pair.side_space(side.flip());
        let d = sp.dim();
        let e = op.dim();
        for x in 0..d {
            for y in 0..e {
                for z in 0..d {
                    let want = sp.parity0(x).add(op.parity0(y)).add(sp.parity0(z));
                    for (w, c) in pair.prod(side)[x][y][z].iter().enumerate() {
                        if sp.parity0(w) != want && !c.is_zero() {
                            report.push(
                                "product parity additivity",
                                format!("side {side:?}, ({x},{y},{z}) -> {w}"),
                            );
                        }
                    }
                }
            }
        }
        // [D_{x,y}, D_{z,w}] = D_{D_{x,y}z, w} - eta_{x,y,z} D_{z, D_{y,x}w}
        let dops: Vec<Vec<Mat>> = (0..d)
            .map(|x| (0..e).map(|y| pair.d_op_basis(side, x, y)).collect())
            .collect();
        let dops_rev: Vec<Vec<Mat>> = (0..e)
            .map(|y| (0..d).map(|x| pair.d_op_basis(side.flip(), y, x)).collect())
            .collect();
        // D_{u, w} for a vector u in the first slot
        let d_vec_w = |u: &[Scalar], w: usize| -> Mat {
            let mut acc = Mat::zeros(d, d);
            for (i, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&dops[i][w].scale(c));
                }
            }
            acc
        };
        // D_{z, u} for a vector u in the second slot
        let d_z_vec = |z: usize, u: &[Scalar]| -> Mat {
            let mut acc = Mat::zeros(d, d);
            for (j, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&dops[z][j].scale(c));
                }
            }
            acc
        };
        for x in 0..d {
            for y in 0..e {
                let pxy = sp.parity0(x).add(op.parity0(y));
                for z in 0..d {
                    for w in 0..e {
                        let pzw = sp.parity0(z).add(op.parity0(w));
                        let eta = Scalar::from_sign(eta_sign(pxy, pzw));
                        let lhs = dops[x][y]
                            .mul(&dops[z][w])
                            .sub(&dops[z][w].mul(&dops[x][y]).scale(&eta));
                        let dxyz = pair.triple_basis(side, x, y, z);
                        let t1 = d_vec_w(&dxyz, w);
                        let dyxw = &dops_rev[y][x]; // D^{-side}_{y,x}
                        let dyxw_vec = dyxw.col(w);
                        let t2 = d_z_vec(z, &dyxw_vec);
                        let eta3 = Scalar::from_sign(eta3_sign(
                            sp.parity0(x),
                            op.parity0(y),
                            sp.parity0(z),
                        ));
                        let rhs = t1.sub(&t2.scale(&eta3));
                        if lhs != rhs {
                            report.push(
                                "graded commutator identity",
                                format!("side {side:?}, x{x}, y{y}, z{z}, w{w}"),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

/// Checks the pair axioms plus evenness, superinvariance, supersymmetry
/// and nondegeneracy of the pairing.
pub fn check_metric_pair(mp: &MetricPair) -> Report {
    let mut report = check_pair(&mp.pair);
    let dm = mp.pair.minus.dim();
    let dp = mp.pair.plus.dim();
    if mp.gram.rows() != dm || mp.gram.cols() != dp {
        report.push(
            "pairing shape",
            format!("{}x{}", mp.gram.rows(), mp.gram.cols()),
        );
        return report;
    }
    for i in 0..dm {
        for j in 0..dp {
            if mp.pair.minus.parity0(i) != mp.pair.plus.parity0(j) && !mp.gram.at(i, j).is_zero() {
                report.push(
                    "pairing evenness",
                    format!("<f{i}, v{j}> != 0 across parities"),
                );
            }
        }
    }
    if dm != dp || mp.gram.rank() < dm {
        report.push(
            "pairing nondegeneracy",
            format!("rank {} on {dm}x{dp}", mp.gram.rank()),
        );
    }
    let pairing = |f: &[Scalar], v: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..dm {
            if f[i].is_zero() {
                continue;
            }
            for j in 0..dp {
                if !v[j].is_zero() && !mp.gram.at(i, j).is_zero() {
                    acc += f[i].clone() * v[j].clone() * mp.gram.at(i, j).clone();
                }
            }
        }
        acc
    };
    let basis = |i: usize, d: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        v
    };
    // superinvariance: <D_{x,y}z, w> = eta_{x,y,z} <z, D_{y,x}w>
    for x in 0..dm {
        for y in 0..dp {
            for z in 0..dm {
                for w in 0..dp {
                    let lhs = pairing(&mp.pair.triple_basis(Side::Minus, x, y, z), &basis(w, dp));
                    let rhs =
                        Scalar::from_sign(eta3_sign(
                            mp.pair.minus.parity0(x),
                            mp.pair.plus.parity0(y),
                            mp.pair.minus.parity0(z),
                        )) * pairing(&basis(z, dm), &mp.pair.triple_basis(Side::Plus, y, x, w));
                    if lhs != rhs {
                        report.push("pairing superinvariance", format!("x{x}, y{y}, z{z}, w{w}"));
                    }
                }
            }
        }
    }
    // supersymmetry, both displayed laws
    for x in 0..dm {
        for y in 0..dp {
            for z in 0..dm {
                for w in 0..dp {
                    let pxy = mp.pair.minus.parity0(x).add(mp.pair.plus.parity0(y));
                    let pzw = mp.pair.minus.parity0(z).add(mp.pair.plus.parity0(w));
                    let eta = Scalar::from_sign(eta_sign(pxy, pzw));
                    let lhs1 = pairing(&mp.pair.triple_basis(Side::Minus, x, y, z), &basis(w, dp));
                    let rhs1 = eta.clone()
                        * pairing(&mp.pair.triple_basis(Side::Minus, z, w, x), &basis(y, dp));
                    if lhs1 != rhs1 {
                        report.push(
                            "pairing supersymmetry (first law)",
                            format!("x{x}, y{y}, z{z}, w{w}"),
                        );
                    }
                    let lhs2 = pairing(&basis(x, dm), &mp.pair.triple_basis(Side::Plus, y, z, w));
                    let rhs2 =
                        eta * pairing(&basis(z, dm), &mp.pair.triple_basis(Side::Plus, w, x, y));
                    if lhs2 != rhs2 {
                        report.push(
                            "pairing supersymmetry (second law)",
                            format!("x{x}, y{y}, z{z}, w{w}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// Verifies the superderivation law for an operator pair `(D^-, D^+)` on
/// all basis triples of both sides.
pub fn check_superderivation(pair: &TriplePair, der: &InnerDerivation) -> Report {
    let mut report = Report::default();
    for side in [Side::Minus, Side::Plus] {
        let sp = pair.side_space(side);
        let op = pair.side_space(side.flip());
        let (dr, drf) = match side {
            Side::Minus => (&der.op_minus, &der.op_plus),
            Side::Plus => (&der.op_plus, &der.op_minus),
        };
        let basis = |i: usize, d: usize| -> Vec<Scalar> {
            let mut v = vec![Scalar::zero(); d];
            v[i] = Scalar::one();
            v
        };
        for x in 0..sp.dim() {
            for y in 0..op.dim() {
                for z in 0..sp.dim() {
                    let lhs = dr.mul_vec(&pair.triple_basis(side, x, y, z));
                    let t1 =
                        pair.triple(side, &dr.col(x), &basis(y, op.dim()), &basis(z, sp.dim()));
                    let e1 = Scalar::from_sign(eta_sign(der.parity, sp.parity0(x)));
                    let t2 =
                        pair.triple(side, &basis(x, sp.dim()), &drf.col(y), &basis(z, sp.dim()));
                    let pdxy = sp.parity0(x).add(op.parity0(y));
                    let e2 = Scalar::from_sign(eta_sign(der.parity, pdxy));
                    let t3 =
                        pair.triple(side, &basis(x, sp.dim()), &basis(y, op.dim()), &dr.col(z));
                    let rhs: Vec<Scalar> = (0..sp.dim())
                        .map(|w| {
                            t1[w].clone() + e1.clone() * t2[w].clone() + e2.clone() * t3[w].clone()
                        })
                        .collect();
                    if lhs != rhs {
                        report.push(
                            "superderivation law",
                            format!("side {side:?}, x{x}, y{y}, z{z}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// The inner structure superalgebra of a pair: a maximal independent set
/// of `nu(f_i, v_j)` generators (first-come in lexicographic `(i, j)`
/// order), its bracket structure constants, and coordinates of arbitrary
/// generators over the kept basis.
pub struct InnerStructure {
    pub algebra: LieSuperAlgebra,
    pub ops: Vec<InnerDerivation>,
    pub sources: Vec<(usize, usize)>,
    echelon: EchelonBasis,
    all_sources: Vec<(usize, usize)>,
}

impl InnerStructure {
    /// Coordinates of an operator pair over the kept generator basis.
    pub fn coordinates(&self, op: &InnerDerivation) -> Option<Vec<Scalar>> {
        let over_inserted = self.echelon.coordinates(&op.flat())?;
        let mut out = vec![Scalar::zero(); self.ops.len()];
        let mut kept_slot = 0;
        for (slot, src) in self.all_sources.iter().enumerate() {
            if kept_slot < self.sources.len() && *src == self.sources[kept_slot] {
                out[kept_slot] = over_inserted[slot].clone();
                kept_slot += 1;
            } else {
                debug_assert!(over_inserted[slot].is_zero());
            }
        }
        Some(out)
    }
}

/// Computes the inner structure superalgebra of a pair.
pub fn instr_basis(pair: &TriplePair) -> Result<InnerStructure, Error> {
    let dm = pair.minus.dim();
    let dp = pair.plus.dim();
    let width = dm * dm + dp * dp;
    let mut echelon = EchelonBasis::new(width);
    let mut ops = Vec::new();
    let mut sources = Vec::new();
    let mut all_sources = Vec::new();
    for i in 0..dm {
        for j in 0..dp {
            let op = nu_basis(pair, i, j);
            all_sources.push((i, j));
            if echelon.try_insert(&op.flat()) {
                ops.push(op);
                sources.push((i, j));
            }
        }
    }
    let parities: Vec<Parity> = ops.iter().map(|o| o.parity).collect();
    let dl = ops.len();
    let mut instr = InnerStructure {
        algebra: LieSuperAlgebra {
            parities,
            bracket: vec![vec![vec![Scalar::zero(); dl]; dl]; dl],
        },
        ops,
        sources,
        echelon,
        all_sources,
    };
    for a in 0..dl {
        for b in 0..dl {
            let br = instr.ops[a].bracket(&instr.ops[b]);
            let coords = instr.coordinates(&br).ok_or_else(|| {
                Error::Inconsistency("inner derivations do not close under the bracket".into())
            })?;
            instr.algebra.bracket[a][b] = coords;
        }
    }
    Ok(instr)
}

/// The Faulkner image of a metric pair: the inner structure algebra with
/// its induced form, acting on both halves of the pair.
pub struct PairModuleImage {
    pub lie: LieSuperAlgebra,
    /// The plus half as a module (the `M` of the construction).
    pub plus: SuperModule,
    /// The minus half as a module (the presented dual of `M`).
    pub minus: SuperModule,
    pub b: Mat,
    pub gram: Mat,
}

impl PairModuleImage {
    pub fn metric_module(&self) -> MetricLieSupermodule {
        MetricLieSupermodule {
            module: self.plus.clone(),
            b: self.b.clone(),
        }
    }
}

fn grid_to_action(ops: &[&Mat]) -> Vec<Vec<Vec<Scalar>>> {
    // op columns are images of basis vectors: action[x][v][w] = op[w][v]
    ops.iter()
        .map(|m| {
            let d = m.cols();
            (0..d)
                .map(|v| (0..m.rows()).map(|w| m.at(w, v).clone()).collect())
                .collect()
        })
        .collect()
}

/// Builds the metric Lie supermodule attached to a metric pair: the inner
/// structure algebra, its action on both halves, and the form
/// `b(nu(g,w), nu(f,v)) = <{g,w,f}, v>`, with well-definedness of the
/// form verified on every generator pair.
pub fn module_from_pair(mp: &MetricPair) -> Result<PairModuleImage, Error> {
    let instr = instr_basis(&mp.pair)?;
    let dl = instr.ops.len();
    let dm = mp.pair.minus.dim();
    let dp = mp.pair.plus.dim();
    // b on the kept basis
    let mut b = Mat::zeros(dl, dl);
    let b_value = |(g, w): (usize, usize), (f, v): (usize, usize)| -> Scalar {
        // <{g, w, f}, v>
        let t = mp.pair.triple_basis(Side::Minus, g, w, f);
        let mut acc = Scalar::zero();
        for (i, c) in t.iter().enumerate() {
            if !c.is_zero() && !mp.gram.at(i, v).is_zero() {
                acc += c.clone() * mp.gram.at(i, v).clone();
            }
        }
        acc
    };
    for a in 0..dl {
        for c in 0..dl {
            b.set(a, c, b_value(instr.sources[a], instr.sources[c]));
        }
    }
    // well-definedness: the bilinear extension must reproduce the defining
    // values on all generator pairs, kept or not
    for gi in 0..dm {
        for wi in 0..dp {
            let left = nu_basis(&mp.pair, gi, wi);
            let lc = instr.coordinates(&left).ok_or_else(|| {
                Error::Inconsistency("generator outside the inner-structure span".into())
            })?;
            for fi in 0..dm {
                for vi in 0..dp {
                    let right = nu_basis(&mp.pair, fi, vi);
                    let rc = instr.coordinates(&right).ok_or_else(|| {
                        Error::Inconsistency("generator outside the inner-structure span".into())
                    })?;
                    let mut by_extension = Scalar::zero();
                    for a in 0..dl {
                        if lc[a].is_zero() {
                            continue;
                        }
                        for c in 0..dl {
                            if !rc[c].is_zero() && !b.at(a, c).is_zero() {
                                by_extension += lc[a].clone() * rc[c].clone() * b.at(a, c).clone();
                            }
                        }
                    }
                    if by_extension != b_value((gi, wi), (fi, vi)) {
                        return Err(Error::Inconsistency(format!(
                            "form value conflicts on dependent generators nu({gi},{wi}), nu({fi},{vi})"
                        )));
                    }
                }
            }
        }
    }
    let minus_ops: Vec<&Mat> = instr.ops.iter().map(|o| &o.op_minus).collect();
    let plus_ops: Vec<&Mat> = instr.ops.iter().map(|o| &o.op_plus).collect();
    let image = PairModuleImage {
        lie: instr.algebra.clone(),
        plus: SuperModule {
            algebra: instr.algebra.clone(),
            parities: mp.pair.plus.parities(),
            action: grid_to_action(&plus_ops),
        },
        minus: SuperModule {
            algebra: instr.algebra.clone(),
            parities: mp.pair.minus.parities(),
            action: grid_to_action(&minus_ops),
        },
        b,
        gram: mp.gram.clone(),
    };
    // the induced form must itself be metric, and the halves modules
    let metric_report = check_metric(&image.metric_module());
    if !metric_report.is_valid() {
        return Err(Error::Inconsistency(format!(
            "induced form is not metric: {metric_report}"
        )));
    }
    let mr = check_module(&image.plus).merged(check_module(&image.minus));
    if !mr.is_valid() {
        return Err(Error::Inconsistency(format!(
            "inner structure does not act as a module: {mr}"
        )));
    }
    Ok(image)
}

/// The Faulkner construction for a module with an explicitly presented
/// dual: `dual` plays the dual module and `gram` its pairing with the
/// module (rows: dual side, columns: module side).  Bases need not be
/// parity-ordered; the output pair is emitted on the given bases.
pub fn faulkner_with_dual(
    m: &MetricLieSupermodule,
    dual: &SuperModule,
    gram: &Mat,
) -> Result<(Tensor4, Tensor4), Error> {
    let dl = m.module.algebra.dim();
    let dm = dual.dim();
    let dp = m.module.dim();
    if gram.rows() != dm || gram.cols() != dp {
        return Err(Error::ShapeMismatch("presented dual gram shape".into()));
    }
    if m.b.rows() != dl || m.b.cols() != dl {
        return Err(Error::ShapeMismatch("form shape".into()));
    }
    if dl > 0 && m.b.rank() < dl {
        return Err(Error::DegenerateForm);
    }
    // [f_j, v_k] solved from b(x_l, [f_j, v_k]) = <x_l . f_j, v_k>
    let mut bracket_fv = vec![vec![Vec::new(); dp]; dm];
    for j in 0..dm {
        for k in 0..dp {
            let rhs: Vec<Scalar> = (0..dl)
                .map(|l| {
                    let acted = dual.act_basis(l, &unit(dm, j));
                    let mut acc = Scalar::zero();
                    for (i, c) in acted.iter().enumerate() {
                        if !c.is_zero() && !gram.at(i, k).is_zero() {
                            acc += c.clone() * gram.at(i, k).clone();
                        }
                    }
                    acc
                })
                .collect();
            bracket_fv[j][k] = if dl == 0 {
                Vec::new()
            } else {
                m.b.solve(&rhs)?
            };
        }
    }
    // {f, v, g} = [f, v] . g  and  {v, f, w} = -eta_{f,v} [f, v] . w
    let mut prod_minus = vec![vec![vec![vec![Scalar::zero(); dm]; dm]; dp]; dm];
    let mut prod_plus = vec![vec![vec![vec![Scalar::zero(); dp]; dp]; dm]; dp];
    for j in 0..dm {
        for k in 0..dp {
            let x = &bracket_fv[j][k];
            let eta = Scalar::from_sign(eta_sign(dual.parities[j], m.module.parities[k]));
            for g in 0..dm {
                prod_minus[j][k][g] = dual.act_vec(x, &unit(dm, g));
            }
            for w in 0..dp {
                let acted = m.module.act_vec(x, &unit(dp, w));
                prod_plus[k][j][w] = acted.into_iter().map(|c| -(eta.clone() * c)).collect();
            }
        }
    }
    Ok((prod_minus, prod_plus))
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

/// The Faulkner construction with the abstract dual: the pair lives on
/// `(M^*, M)` with the duality pairing.  The module basis must be
/// parity-ordered.
pub fn faulkner_from_module(m: &MetricLieSupermodule) -> Result<MetricPair, Error> {
    let space = m.module.ordered_space()?;
    let dualm = crate::lie::dual_module(&m.module);
    let gram = Mat::identity(m.module.dim());
    let (prod_minus, prod_plus) = faulkner_with_dual(m, &dualm, &gram)?;
    Ok(MetricPair::without_labels(
        TriplePair {
            minus: space,
            plus: space,
            prod_minus,
            prod_plus,
        },
        gram,
    ))
}

/// Round trip: the Faulkner construction applied to the image of a pair,
/// with the minus half presented as the dual.  Reproduces the input pair
/// exactly when the input is a valid metric pair.
pub fn faulkner_round_trip(mp: &MetricPair) -> Result<MetricPair, Error> {
    let image = module_from_pair(mp)?;
    let (prod_minus, prod_plus) =
        faulkner_with_dual(&image.metric_module(), &image.minus, &image.gram)?;
    Ok(MetricPair {
        pair: TriplePair {
            minus: mp.pair.minus,
            plus: mp.pair.plus,
            prod_minus,
            prod_plus,
        },
        gram: image.gram,
        labels_minus: mp.labels_minus.clone(),
        labels_plus: mp.labels_plus.clone(),
    })
}

/// Parameter of a tensor shift: a scalar correction and a parity flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftParam {
    pub lambda: Scalar,
    pub parity: Parity,
}

impl ShiftParam {
    pub fn new(lambda: Scalar, parity: Parity) -> Self {
        ShiftParam { lambda, parity }
    }

    /// The one-dimensional pair this parameter labels.
    pub fn unit_pair(&self) -> MetricPair {
        shift_unit_pair(&self.lambda, self.parity)
    }

    pub fn apply(&self, mp: &MetricPair) -> Result<MetricPair, Error> {
        tensor_shift(mp, &self.lambda, self.parity)
    }
}

/// The one-dimensional metric pair of parameter `(lambda, a)`: pairing
/// `eta_a`, plus product `lambda`, minus product `eta_a lambda`.  Tensoring
/// with it realizes the parity/product shift.
pub fn shift_unit_pair(lambda: &Scalar, a: Parity) -> MetricPair {
    let (minus, plus) = match a {
        Parity::Even => (SuperSpace::new(1, 0), SuperSpace::new(1, 0)),
        Parity::Odd => (SuperSpace::new(0, 1), SuperSpace::new(0, 1)),
    };
    let eta_a = Scalar::from_sign(if a.is_odd() { -1 } else { 1 });
    let mut pair = TriplePair::zero(minus, plus);
    pair.prod_plus[0][0][0][0] = lambda.clone();
    pair.prod_minus[0][0][0][0] = eta_a.clone() * lambda.clone();
    let mut gram = Mat::zeros(1, 1);
    gram.set(0, 0, eta_a);
    MetricPair::without_labels(pair, gram)
}

/// Tensor-shift of a metric pair by `(lambda, a)`: parities shift by `a`
/// (the basis is re-sorted to stay parity-ordered), the pairing rescales
/// by `eta_a eta_{a,f}`, and the products pick up the
/// `lambda <x,y> z` correction with the displayed signs.
pub fn tensor_shift(mp: &MetricPair, lambda: &Scalar, a: Parity) -> Result<MetricPair, Error> {
    let dm = mp.pair.minus.dim();
    let dp = mp.pair.plus.dim();
    let eta_a = Scalar::from_sign(if a.is_odd() { -1 } else { 1 });
    let eta_af =
        |p: Parity| -> Scalar { Scalar::from_sign(if a.is_odd() && p.is_odd() { -1 } else { 1 }) };
    // corrected products and rescaled pairing on the original basis order
    let mut prod_minus = mp.pair.prod_minus.clone();
    let mut prod_plus = mp.pair.prod_plus.clone();
    for x in 0..dm {
        for y in 0..dp {
            let scale = eta_a.clone() * eta_af(mp.pair.plus.parity0(y));
            let px = mp.pairing_basis(Side::Minus, x, y);
            for z in 0..dm {
                for w in 0..dm {
                    let mut v = prod_minus[x][y][z][w].clone();
                    if z == w {
                        v += lambda.clone() * px.clone();
                    }
                    prod_minus[x][y][z][w] = scale.clone() * v;
                }
            }
        }
    }
    for x in 0..dp {
        for y in 0..dm {
            let scale = eta_af(mp.pair.minus.parity0(y));
            let px = mp.pairing_basis(Side::Plus, x, y);
            for z in 0..dp {
                for w in 0..dp {
                    let mut v = prod_plus[x][y][z][w].clone();
                    if z == w {
                        v += lambda.clone() * px.clone();
                    }
                    prod_plus[x][y][z][w] = scale.clone() * v;
                }
            }
        }
    }
    let mut gram = Mat::zeros(dm, dp);
    for i in 0..dm {
        for j in 0..dp {
            gram.set(
                i,
                j,
                eta_a.clone() * eta_af(mp.pair.minus.parity0(i)) * mp.gram.at(i, j).clone(),
            );
        }
    }
    // shift parities and re-sort the bases to parity order
    let shift_parities =
        |sp: SuperSpace| -> Vec<Parity> { sp.parities().into_iter().map(|p| p.add(a)).collect() };
    let (minus_perm, minus_space) = parity_sort(&shift_parities(mp.pair.minus));
    let (plus_perm, plus_space) = parity_sort(&shift_parities(mp.pair.plus));
    let out_pair = permute_pair_tensors(
        &prod_minus,
        &prod_plus,
        &minus_perm,
        &plus_perm,
        minus_space,
        plus_space,
    );
    let mut out_gram = Mat::zeros(dm, dp);
    for i in 0..dm {
        for j in 0..dp {
            out_gram.set(i, j, gram.at(minus_perm[i], plus_perm[j]).clone());
        }
    }
    let relabel = |labels: &Option<Vec<String>>, perm: &[usize]| {
        labels
            .as_ref()
            .map(|ls| perm.iter().map(|&p| ls[p].clone()).collect::<Vec<_>>())
    };
    Ok(MetricPair {
        labels_minus: relabel(&mp.labels_minus, &minus_perm),
        labels_plus: relabel(&mp.labels_plus, &plus_perm),
        pair: out_pair,
        gram: out_gram,
    })
}

/// Stable permutation sorting evens before odds; returns `(perm, space)`
/// where `perm[new] = old`.
pub fn parity_sort(parities: &[Parity]) -> (Vec<usize>, SuperSpace) {
    let mut perm: Vec<usize> = (0..parities.len())
        .filter(|&i| !parities[i].is_odd())
        .collect();
    let d0 = perm.len();
    perm.extend((0..parities.len()).filter(|&i| parities[i].is_odd()));
    (perm, SuperSpace::new(d0, parities.len() - d0))
}

/// Applies basis permutations (`perm[new] = old`) to a pair of product
/// tensors.
pub fn permute_pair_tensors(
    prod_minus: &Tensor4,
    prod_plus: &Tensor4,
    minus_perm: &[usize],
    plus_perm: &[usize],
    minus_space: SuperSpace,
    plus_space: SuperSpace,
) -> TriplePair {
    let dm = minus_perm.len();
    let dp = plus_perm.len();
    let inv = |perm: &[usize]| -> Vec<usize> {
        let mut v = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            v[old] = new;
        }
        v
    };
    let minv = inv(minus_perm);
    let pinv = inv(plus_perm);
    let mut pm = vec![vec![vec![vec![Scalar::zero(); dm]; dm]; dp]; dm];
    let mut pp = vec![vec![vec![vec![Scalar::zero(); dp]; dp]; dm]; dp];
    for x in 0..dm {
        for y in 0..dp {
            for z in 0..dm {
                for w in 0..dm {
                    pm[minv[x]][pinv[y]][minv[z]][minv[w]] = prod_minus[x][y][z][w].clone();
                }
            }
        }
    }
    for x in 0..dp {
        for y in 0..dm {
            for z in 0..dp {
                for w in 0..dp {
                    pp[pinv[x]][minv[y]][pinv[z]][pinv[w]] = prod_plus[x][y][z][w].clone();
                }
            }
        }
    }
    TriplePair {
        minus: minus_space,
        plus: plus_space,
        prod_minus: pm,
        prod_plus: pp,
    }
}
