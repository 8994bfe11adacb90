//! Lie superalgebras and supermodules as structure-constant data, with
//! duals, tensor superproducts, power modules and their weighted dual
//! pairings.
//!
//! Bases here are homogeneous but not necessarily parity-ordered (tensor
//! and power constructions interleave parities), so algebras and modules
//! carry an explicit parity vector rather than a [`SuperSpace`].

use std::fmt;

use crate::linear::{det, eta_sign, omega_sign, parity_sum, per, Mat, Parity, SuperSpace};
use crate::powers::{enum_indices, normalize_pure, tuple_position, IndexTuple, PowerKind};
use crate::scalar::Scalar;
use crate::Error;

pub type Tensor3 = Vec<Vec<Vec<Scalar>>>;

/// A Lie superalgebra given by its bracket structure constants:
/// `[x_i, x_j] = sum_k bracket[i][j][k] x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperAlgebra {
    pub parities: Vec<Parity>,
    pub bracket: Tensor3,
}

impl LieSuperAlgebra {
    pub fn zero_algebra() -> Self {
        LieSuperAlgebra {
            parities: vec![],
            bracket: vec![],
        }
    }

    pub fn abelian(parities: Vec<Parity>) -> Self {
        let d = parities.len();
        LieSuperAlgebra {
            parities,
            bracket: vec![vec![vec![Scalar::zero(); d]; d]; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..d {
                    let c = &self.bracket[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].clone() + x[i].clone() * y[j].clone() * c.clone();
                    }
                }
            }
        }
        out
    }
}

/// A supermodule given by its action structure constants:
/// `x_i . v_j = sum_k action[i][j][k] v_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperModule {
    pub algebra: LieSuperAlgebra,
    pub parities: Vec<Parity>,
    pub action: Tensor3,
}

impl SuperModule {
    pub fn trivial(algebra: LieSuperAlgebra, parities: Vec<Parity>) -> Self {
        let l = algebra.dim();
        let d = parities.len();
        SuperModule {
            algebra,
            parities,
            action: vec![vec![vec![Scalar::zero(); d]; d]; l],
        }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Action of the basis element `x_i` on a coordinate vector.
    pub fn act_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for j in 0..d {
            if v[j].is_zero() {
                continue;
            }
            for k in 0..d {
                let c = &self.action[i][j][k];
                if !c.is_zero() {
                    out[k] = out[k].clone() + v[j].clone() * c.clone();
                }
            }
        }
        out
    }

    pub fn act_vec(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in self.act_basis(i, v).into_iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].clone() + xi.clone() * c;
                }
            }
        }
        out
    }

    /// The parity-ordered space underlying this module, when its basis is
    /// parity-ordered.
    pub fn ordered_space(&self) -> Result<SuperSpace, Error> {
        let d0 = self.parities.iter().take_while(|p| !p.is_odd()).count();
        if self.parities[d0..].iter().any(|p| !p.is_odd()) {
            return Err(Error::ShapeMismatch(
                "module basis is not parity-ordered".into(),
            ));
        }
        Ok(SuperSpace::new(d0, self.parities.len() - d0))
    }
}

/// A supermodule together with an invariant supersymmetric even
/// nondegenerate form on its algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricLieSupermodule {
    pub module: SuperModule,
    pub b: Mat,
}

/// One failed identity with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

/// Outcome of an axiom check: empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.into(),
        });
    }

    pub fn merged(mut self, other: Report) -> Report {
        self.violations.extend(other.violations);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{}: {}", v.law, v.witness)?;
            }
            Ok(())
        }
    }
}

/// Checks super-anticommutativity, the super Jacobi identity, and parity
/// additivity of the bracket, exhaustively on basis elements.
pub fn check_lie(l: &LieSuperAlgebra) -> Report {
    let d = l.dim();
    let mut report = Report::default();
    for i in 0..d {
        for j in 0..d {
            let pij = l.parities[i].add(l.parities[j]);
            for k in 0..d {
                if l.parities[k] != pij && !l.bracket[i][j][k].is_zero() {
                    report.push(
                        "parity additivity",
                        format!("[x{i}, x{j}] has a component on x{k}"),
                    );
                }
            }
            let eta = eta_sign(l.parities[i], l.parities[j]);
            for k in 0..d {
                let lhs = l.bracket[i][j][k].clone();
                let rhs = -(Scalar::from_sign(eta) * l.bracket[j][i][k].clone());
                if lhs != rhs {
                    report.push("super-anticommutativity", format!("x{i}, x{j}"));
                    break;
                }
            }
        }
    }
    let basis = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        v
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = l.bracket_vec(&basis(i), &l.bracket_vec(&basis(j), &basis(k)));
                let t1 = l.bracket_vec(&l.bracket_vec(&basis(i), &basis(j)), &basis(k));
                let t2 = l.bracket_vec(&basis(j), &l.bracket_vec(&basis(i), &basis(k)));
                let eta = Scalar::from_sign(eta_sign(l.parities[i], l.parities[j]));
                let rhs: Vec<Scalar> = t1
                    .into_iter()
                    .zip(t2)
                    .map(|(a, b)| a + eta.clone() * b)
                    .collect();
                if lhs != rhs {
                    report.push("super Jacobi identity", format!("x{i}, x{j}, x{k}"));
                }
            }
        }
    }
    report
}

/// Checks the supermodule axiom and parity additivity of the action,
/// exhaustively on basis elements.
pub fn check_module(m: &SuperModule) -> Report {
    let l = &m.algebra;
    let dl = l.dim();
    let dm = m.dim();
    let mut report = Report::default();
    for i in 0..dl {
        for j in 0..dm {
            let want = l.parities[i].add(m.parities[j]);
            for k in 0..dm {
                if m.parities[k] != want && !m.action[i][j][k].is_zero() {
                    report.push(
                        "action parity additivity",
                        format!("x{i} . v{j} has a component on v{k}"),
                    );
                }
            }
        }
    }
    let ebasis = |i: usize, d: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        v
    };
    for i in 0..dl {
        for j in 0..dl {
            for v in 0..dm {
                let bracket_act = m.act_vec(
                    &l.bracket_vec(&ebasis(i, dl), &ebasis(j, dl)),
                    &ebasis(v, dm),
                );
                let t1 = m.act_basis(i, &m.act_basis(j, &ebasis(v, dm)));
                let t2 = m.act_basis(j, &m.act_basis(i, &ebasis(v, dm)));
                let eta = Scalar::from_sign(eta_sign(l.parities[i], l.parities[j]));
                let rhs: Vec<Scalar> = t1
                    .into_iter()
                    .zip(t2)
                    .map(|(a, b)| a - eta.clone() * b)
                    .collect();
                if bracket_act != rhs {
                    report.push("supermodule axiom", format!("x{i}, x{j}, v{v}"));
                }
            }
        }
    }
    report
}

/// Checks that `b` is even, invariant, supersymmetric and nondegenerate.
pub fn check_metric(m: &MetricLieSupermodule) -> Report {
    let l = &m.module.algebra;
    let d = l.dim();
    let b = &m.b;
    let mut report = Report::default();
    if b.rows() != d || b.cols() != d {
        report.push(
            "form shape",
            format!(
                "{}x{} form on a {d}-dimensional algebra",
                b.rows(),
                b.cols()
            ),
        );
        return report;
    }
    for i in 0..d {
        for j in 0..d {
            if l.parities[i] != l.parities[j] && !b.at(i, j).is_zero() {
                report.push(
                    "form evenness",
                    format!("b(x{i}, x{j}) != 0 across parities"),
                );
            }
            let eta = Scalar::from_sign(eta_sign(l.parities[i], l.parities[j]));
            if *b.at(i, j) != eta * b.at(j, i).clone() {
                report.push("form supersymmetry", format!("b(x{i}, x{j})"));
            }
        }
    }
    let basis = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); d];
        v[i] = Scalar::one();
        v
    };
    let pair = |x: &[Scalar], y: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !y[j].is_zero() && !b.at(i, j).is_zero() {
                    acc += x[i].clone() * y[j].clone() * b.at(i, j).clone();
                }
            }
        }
        acc
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = pair(&l.bracket_vec(&basis(i), &basis(j)), &basis(k));
                let rhs = pair(&basis(i), &l.bracket_vec(&basis(j), &basis(k)));
                if lhs != rhs {
                    report.push("form invariance", format!("x{i}, x{j}, x{k}"));
                }
            }
        }
    }
    if d > 0 && b.rank() < d {
        report.push("form nondegeneracy", format!("rank {} < {d}", b.rank()));
    }
    report
}

/// The left-dual supermodule.
pub fn dual_module(m: &SuperModule) -> SuperModule {
    let dl = m.algebra.dim();
    let dm = m.dim();
    let mut action = vec![vec![vec![Scalar::zero(); dm]; dm]; dl];
    for x in 0..dl {
        for j in 0..dm {
            let eta = Scalar::from_sign(eta_sign(m.algebra.parities[x], m.parities[j]));
            for i in 0..dm {
                let c = &m.action[x][i][j];
                if !c.is_zero() {
                    action[x][j][i] = -(eta.clone() * c.clone());
                }
            }
        }
    }
    SuperModule {
        algebra: m.algebra.clone(),
        parities: m.parities.clone(),
        action,
    }
}

/// True when only zero acts as zero.
pub fn is_faithful(m: &SuperModule) -> bool {
    let dl = m.algebra.dim();
    let dm = m.dim();
    if dl == 0 {
        return true;
    }
    let rows: Vec<Vec<Scalar>> = (0..dl)
        .map(|x| {
            let mut row = Vec::with_capacity(dm * dm);
            for j in 0..dm {
                for k in 0..dm {
                    row.push(m.action[x][j][k].clone());
                }
            }
            row
        })
        .collect();
    Mat::from_rows(rows).rank() == dl
}

/// Direct sum of metric supermodules: algebras and modules sum, forms go
/// to the orthogonal sum.
pub fn direct_sum(parts: &[&MetricLieSupermodule]) -> MetricLieSupermodule {
    let mut parities_l = Vec::new();
    let mut parities_m = Vec::new();
    for p in parts {
        parities_l.extend(p.module.algebra.parities.iter().copied());
        parities_m.extend(p.module.parities.iter().copied());
    }
    let dl = parities_l.len();
    let dm = parities_m.len();
    let mut bracket = vec![vec![vec![Scalar::zero(); dl]; dl]; dl];
    let mut action = vec![vec![vec![Scalar::zero(); dm]; dm]; dl];
    let mut b = Mat::zeros(dl, dl);
    let mut off_l = 0;
    let mut off_m = 0;
    for p in parts {
        let pl = p.module.algebra.dim();
        let pm = p.module.dim();
        for i in 0..pl {
            for j in 0..pl {
                for k in 0..pl {
                    bracket[off_l + i][off_l + j][off_l + k] =
                        p.module.algebra.bracket[i][j][k].clone();
                }
                b.set(off_l + i, off_l + j, p.b.at(i, j).clone());
            }
            for j in 0..pm {
                for k in 0..pm {
                    action[off_l + i][off_m + j][off_m + k] = p.module.action[i][j][k].clone();
                }
            }
        }
        off_l += pl;
        off_m += pm;
    }
    MetricLieSupermodule {
        module: SuperModule {
            algebra: LieSuperAlgebra {
                parities: parities_l,
                bracket,
            },
            parities: parities_m,
            action,
        },
        b,
    }
}

/// How a tensor superproduct treats its factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorMode {
    /// Factors over distinct algebras; the result lives over their sum.
    General,
    /// All factors over one algebra acting on every slot.
    Restricted,
}

/// All index tuples over the given factor dimensions, last slot fastest.
pub fn tensor_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for t in &out {
            for i in 0..d {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Tensor superproduct of supermodules, with the Koszul-sign slot action.
pub fn tensor_modules(mode: TensorMode, factors: &[&SuperModule]) -> Result<SuperModule, Error> {
    if factors.is_empty() {
        return Err(Error::Degenerate("empty tensor product".into()));
    }
    match mode {
        TensorMode::Restricted => {
            let algebra = &factors[0].algebra;
            if factors.iter().any(|m| m.algebra != *algebra) {
                return Err(Error::ShapeMismatch(
                    "restricted tensor product needs one common algebra".into(),
                ));
            }
        }
        TensorMode::General => {}
    }
    let dims: Vec<usize> = factors.iter().map(|m| m.dim()).collect();
    let tuples = tensor_tuples(&dims);
    if tuples.len() > crate::MAX_POWER_DIM {
        return Err(Error::PowerTooLarge(tuples.len(), crate::MAX_POWER_DIM));
    }
    let parities: Vec<Parity> = tuples
        .iter()
        .map(|t| {
            parity_sum(
                &t.iter()
                    .enumerate()
                    .map(|(s, &i)| factors[s].parities[i])
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let dt = tuples.len();

    let algebra = match mode {
        TensorMode::Restricted => factors[0].algebra.clone(),
        TensorMode::General => {
            let parts: Vec<MetricLieSupermodule> = factors
                .iter()
                .map(|m| MetricLieSupermodule {
                    module: (*m).clone(),
                    b: Mat::zeros(m.algebra.dim(), m.algebra.dim()),
                })
                .collect();
            direct_sum(&parts.iter().collect::<Vec<_>>()).module.algebra
        }
    };
    let dl = algebra.dim();
    let mut action = vec![vec![vec![Scalar::zero(); dt]; dt]; dl];

    // (slot, local index) pairs for each global algebra basis element
    let global_slots: Vec<Vec<(usize, usize)>> = match mode {
        TensorMode::Restricted => (0..dl)
            .map(|x| (0..factors.len()).map(|s| (s, x)).collect())
            .collect(),
        TensorMode::General => {
            let mut v = Vec::with_capacity(dl);
            for (s, m) in factors.iter().enumerate() {
                for x in 0..m.algebra.dim() {
                    v.push(vec![(s, x)]);
                }
            }
            v
        }
    };

    for (g, slots) in global_slots.iter().enumerate() {
        let xp = algebra.parities[g];
        for (ti, tuple) in tuples.iter().enumerate() {
            for &(slot, local) in slots {
                let mut prefix = 1i32;
                for (k, &vk) in tuple.iter().enumerate().take(slot) {
                    prefix *= eta_sign(xp, factors[k].parities[vk]);
                }
                let m = factors[slot];
                for w in 0..m.dim() {
                    let c = &m.action[local][tuple[slot]][w];
                    if c.is_zero() {
                        continue;
                    }
                    let mut target = tuple.clone();
                    target[slot] = w;
                    let tj = tensor_tuple_position(&dims, &target);
                    action[g][ti][tj] =
                        action[g][ti][tj].clone() + Scalar::from_sign(prefix) * c.clone();
                }
            }
        }
    }
    Ok(SuperModule {
        algebra,
        parities,
        action,
    })
}

/// Position of a tuple in [`tensor_tuples`] order.
pub fn tensor_tuple_position(dims: &[usize], tuple: &[usize]) -> usize {
    let mut pos = 0;
    for (s, &i) in tuple.iter().enumerate() {
        pos = pos * dims[s] + i;
    }
    pos
}

/// Gram matrix of the tensor superproduct of dual pairings on tuple bases:
/// rows index tuples over the dual-side factors, columns tuples over the
/// module-side factors.
pub fn tensor_pairing_gram(
    minus_parities: &[&[Parity]],
    plus_parities: &[&[Parity]],
    grams: &[&Mat],
) -> Mat {
    let n = grams.len();
    let mdims: Vec<usize> = minus_parities.iter().map(|p| p.len()).collect();
    let pdims: Vec<usize> = plus_parities.iter().map(|p| p.len()).collect();
    let rows = tensor_tuples(&mdims);
    let cols = tensor_tuples(&pdims);
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (ri, rt) in rows.iter().enumerate() {
        for (ci, ct) in cols.iter().enumerate() {
            let mut value = Scalar::one();
            for t in 0..n {
                let g = grams[t].at(rt[t], ct[t]);
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
                    sign *= eta_sign(minus_parities[i][rt[i]], plus_parities[j][ct[j]]);
                }
            }
            out.set(ri, ci, Scalar::from_sign(sign) * value);
        }
    }
    out
}

/// The n-th alternating or symmetric power of a supermodule whose basis is
/// parity-ordered.  Returns the power module together with its basis labels.
pub fn power_module(
    kind: PowerKind,
    m: &SuperModule,
    n: usize,
) -> Result<(SuperModule, Vec<IndexTuple>), Error> {
    let space = m.ordered_space()?;
    let tuples = enum_indices(kind, space, n)?;
    let dl = m.algebra.dim();
    let dt = tuples.len();
    let parities: Vec<Parity> = tuples.iter().map(|t| t.parity()).collect();
    let mut action = vec![vec![vec![Scalar::zero(); dt]; dt]; dl];
    for x in 0..dl {
        let xp = m.algebra.parities[x];
        for (ti, tuple) in tuples.iter().enumerate() {
            for slot in 0..n {
                let mut prefix = 1i32;
                for &e in tuple.entries.iter().take(slot) {
                    prefix *= eta_sign(xp, space.parity1(e));
                }
                let v = tuple.entries[slot];
                for w in 1..=m.dim() {
                    let c = &m.action[x][v - 1][w - 1];
                    if c.is_zero() {
                        continue;
                    }
                    let mut factors = tuple.entries.clone();
                    factors[slot] = w;
                    if let Some((sign, target)) = normalize_pure(kind, space, &factors)? {
                        let tj = tuple_position(&tuples, &target).expect("canonical");
                        action[x][ti][tj] = action[x][ti][tj].clone()
                            + Scalar::from_sign(prefix) * sign * c.clone();
                    }
                }
            }
        }
    }
    Ok((
        SuperModule {
            algebra: m.algebra.clone(),
            parities,
            action,
        },
        tuples,
    ))
}

/// Gram matrix of the weighted dual pairing between the n-th power of the
/// dual side and the n-th power of the module side, induced by a base Gram
/// `gram` (rows: dual side, columns: module side).  Each sector is weighted
/// by `omega_{#odd factors}`; inside a sector the value is the determinant
/// over the strict block times the plain permanent over the repetition
/// block of the selected sub-Gram (the mirror for the symmetric kind).
pub fn power_pairing_gram(
    kind: PowerKind,
    minus_space: SuperSpace,
    plus_space: SuperSpace,
    gram: &Mat,
    n: usize,
) -> Result<(Vec<IndexTuple>, Vec<IndexTuple>, Mat), Error> {
    if gram.rows() != minus_space.dim() || gram.cols() != plus_space.dim() {
        return Err(Error::ShapeMismatch("gram does not fit the spaces".into()));
    }
    let rows = enum_indices(kind, minus_space, n)?;
    let cols = enum_indices(kind, plus_space, n)?;
    let mut out = Mat::zeros(rows.len(), cols.len());
    for (ri, rt) in rows.iter().enumerate() {
        for (ci, ct) in cols.iter().enumerate() {
            if rt.even_count != ct.even_count {
                continue;
            }
            let p = rt.even_count;
            let (re, ro) = rt.entries.split_at(p);
            let (ce, co) = ct.entries.split_at(p);
            let pick = |r: &[usize], c: &[usize]| {
                let r0: Vec<usize> = r.iter().map(|&x| x - 1).collect();
                let c0: Vec<usize> = c.iter().map(|&x| x - 1).collect();
                gram.submatrix(&r0, &c0)
            };
            let value = match kind {
                PowerKind::Alt => det(&pick(re, ce))? * per(&pick(ro, co))?,
                PowerKind::Sym => per(&pick(re, ce))? * det(&pick(ro, co))?,
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
    Ok((rows, cols, out))
}

/// The full endomorphism algebra of a space with the given basis parities,
/// acting naturally; basis `E_{ab}` in row-major order.
pub fn general_linear_module(parities: Vec<Parity>) -> SuperModule {
    let d = parities.len();
    let dl = d * d;
    let lp: Vec<Parity> = (0..dl)
        .map(|g| parities[g / d].add(parities[g % d]))
        .collect();
    // superbracket of elementary matrices
    let mut bracket = vec![vec![vec![Scalar::zero(); dl]; dl]; dl];
    for a in 0..d {
        for bb in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let i = a * d + bb;
                    let j = c * d + e;
                    // E_ab E_ce = delta_bc E_ae
                    let eta = eta_sign(lp[i], lp[j]);
                    if bb == c {
                        let k = a * d + e;
                        bracket[i][j][k] = bracket[i][j][k].clone() + Scalar::one();
                    }
                    if e == a {
                        let k = c * d + bb;
                        bracket[i][j][k] = bracket[i][j][k].clone() - Scalar::from_sign(eta);
                    }
                }
            }
        }
    }
    let mut action = vec![vec![vec![Scalar::zero(); d]; d]; dl];
    for a in 0..d {
        for bb in 0..d {
            action[a * d + bb][bb][a] = Scalar::one();
        }
    }
    SuperModule {
        algebra: LieSuperAlgebra {
            parities: lp,
            bracket,
        },
        parities,
        action,
    }
}

/// `gl` of a parity-ordered space with the supertrace form.
pub fn gl_with_supertrace(space: SuperSpace) -> MetricLieSupermodule {
    let d = space.dim();
    let module = general_linear_module(space.parities());
    let mut b = Mat::zeros(d * d, d * d);
    for i in 0..d * d {
        for j in 0..d * d {
            // str(E_ab E_ce) = delta_bc delta_ae (-1)^{eps(a)}
            let (a, bb) = (i / d, i % d);
            let (c, e) = (j / d, j % d);
            if bb == c && a == e {
                let sign = if space.parity0(a).is_odd() { -1 } else { 1 };
                b.set(i, j, Scalar::from_sign(sign));
            }
        }
    }
    MetricLieSupermodule { module, b }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn gl11() -> SuperModule {
        general_linear_module(vec![Parity::Even, Parity::Odd])
    }

    #[test]
    fn abelian_with_trivial_module_is_valid() {
        let l = LieSuperAlgebra::abelian(vec![Parity::Even]);
        assert!(check_lie(&l).is_valid());
        let m = SuperModule::trivial(l, vec![Parity::Even, Parity::Odd]);
        assert!(check_module(&m).is_valid());
    }

    #[test]
    fn gl_1_1_is_a_valid_supermodule() {
        let m = gl11();
        assert!(check_lie(&m.algebra).is_valid());
        assert!(check_module(&m).is_valid());
        assert!(is_faithful(&m));
    }

    #[test]
    fn self_bracket_on_an_even_line_is_flagged() {
        let mut l = LieSuperAlgebra::abelian(vec![Parity::Even]);
        l.bracket[0][0][0] = Scalar::one();
        let report = check_lie(&l);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "super-anticommutativity"));
    }

    #[test]
    fn supertrace_form_is_metric() {
        for space in [SuperSpace::new(1, 1), SuperSpace::new(2, 1)] {
            let m = gl_with_supertrace(space);
            assert!(check_metric(&m).is_valid(), "supertrace on {space:?}");
        }
    }

    #[test]
    fn dual_module_examples() {
        // scalar action on an even line dualizes to its negative
        let mut l = LieSuperAlgebra::abelian(vec![Parity::Even]);
        l.bracket[0][0][0] = Scalar::zero();
        let mut m = SuperModule::trivial(l, vec![Parity::Even]);
        m.action[0][0][0] = s(5);
        let d = dual_module(&m);
        assert_eq!(d.action[0][0][0], s(-5));

        // trivial action stays trivial
        let t = SuperModule::trivial(
            LieSuperAlgebra::abelian(vec![Parity::Odd]),
            vec![Parity::Even],
        );
        assert_eq!(dual_module(&t).action, t.action);

        // the double dual is the parity twist; conjugating by the parity
        // involution on the odd part restores the action exactly
        let m = gl11();
        let dd = dual_module(&dual_module(&m));
        for x in 0..m.algebra.dim() {
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    let twist = if m.algebra.parities[x].is_odd() {
                        s(-1)
                    } else {
                        s(1)
                    };
                    assert_eq!(dd.action[x][i][j], twist * m.action[x][i][j].clone());
                    let conj = Scalar::from_sign(eta_sign(m.parities[i], m.parities[i]))
                        * Scalar::from_sign(eta_sign(m.parities[j], m.parities[j]))
                        * dd.action[x][i][j].clone();
                    assert_eq!(conj, m.action[x][i][j]);
                }
            }
        }
        assert!(check_module(&dual_module(&m)).is_valid());
        assert!(check_module(&dd).is_valid());
    }

    #[test]
    fn restricted_tensor_square_is_a_module() {
        let m = gl11();
        let t = tensor_modules(TensorMode::Restricted, &[&m, &m]).unwrap();
        assert!(check_module(&t).is_valid());
        let t3 = tensor_modules(TensorMode::Restricted, &[&m, &m, &m]).unwrap();
        assert!(check_module(&t3).is_valid());
    }

    #[test]
    fn general_tensor_product_is_a_module() {
        let m = gl11();
        let t = tensor_modules(TensorMode::General, &[&m, &m]).unwrap();
        assert!(check_module(&t).is_valid());
        assert_eq!(t.algebra.dim(), 8);
    }

    #[test]
    fn restricted_tensor_rejects_mixed_algebras() {
        let a = gl11();
        let b = SuperModule::trivial(
            LieSuperAlgebra::abelian(vec![Parity::Even]),
            vec![Parity::Even],
        );
        assert!(tensor_modules(TensorMode::Restricted, &[&a, &b]).is_err());
    }

    #[test]
    fn tensor_pairing_duality_identity() {
        // <x.F, V> = -eta_{x,F} <F, x.V> for the tensor superproduct
        let m = gl11();
        let md = dual_module(&m);
        for n in 2..=3usize {
            let factors: Vec<&SuperModule> = vec![&m; n];
            let dual_factors: Vec<&SuperModule> = vec![&md; n];
            for mode in [TensorMode::Restricted, TensorMode::General] {
                let tm = tensor_modules(mode, &factors).unwrap();
                let tdm = tensor_modules(mode, &dual_factors).unwrap();
                let id = Mat::identity(m.dim());
                let mp: Vec<&[Parity]> = factors.iter().map(|f| f.parities.as_slice()).collect();
                let grams: Vec<&Mat> = (0..n).map(|_| &id).collect();
                let g = tensor_pairing_gram(&mp, &mp, &grams);
                let dt = tm.dim();
                let pair = |f: &[Scalar], v: &[Scalar]| -> Scalar {
                    let mut acc = Scalar::zero();
                    for i in 0..dt {
                        for j in 0..dt {
                            if !f[i].is_zero() && !v[j].is_zero() && !g.at(i, j).is_zero() {
                                acc += f[i].clone() * v[j].clone() * g.at(i, j).clone();
                            }
                        }
                    }
                    acc
                };
                for x in 0..tm.algebra.dim() {
                    for fi in 0..dt {
                        for vi in 0..dt {
                            let mut f = vec![Scalar::zero(); dt];
                            f[fi] = Scalar::one();
                            let mut v = vec![Scalar::zero(); dt];
                            v[vi] = Scalar::one();
                            let lhs = pair(&tdm.act_basis(x, &f), &v);
                            let eta = Scalar::from_sign(eta_sign(
                                tm.algebra.parities[x],
                                tdm.parities[fi],
                            ));
                            let rhs = -(eta * pair(&f, &tm.act_basis(x, &v)));
                            assert_eq!(lhs, rhs, "mode {mode:?}, n={n}, x{x}, f{fi}, v{vi}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn power_module_examples() {
        // diag(a, d) acting on a wedge of the plane scales by a + d
        let m = general_linear_module(vec![Parity::Even, Parity::Even]);
        let (p, tuples) = power_module(PowerKind::Alt, &m, 2).unwrap();
        assert_eq!(tuples.len(), 1);
        // x = E11 + 4 E22
        let x: Vec<Scalar> = vec![s(1), s(0), s(0), s(4)];
        let acted = p.act_vec(&x, &[Scalar::one()]);
        assert_eq!(acted, vec![s(5)]);

        // power of a valid module is a valid module
        let m = gl11();
        for kind in [PowerKind::Alt, PowerKind::Sym] {
            for n in 2..=3 {
                let (p, _) = power_module(kind, &m, n).unwrap();
                assert!(check_module(&p).is_valid(), "{kind:?} power {n}");
            }
        }

        // trivial action powers to the trivial action
        let t = SuperModule::trivial(
            LieSuperAlgebra::abelian(vec![Parity::Even]),
            vec![Parity::Even, Parity::Odd],
        );
        let (p, _) = power_module(PowerKind::Alt, &t, 2).unwrap();
        assert!(p.action.iter().flatten().flatten().all(|c| c.is_zero()));
    }

    #[test]
    fn power_modules_of_larger_shapes_are_modules() {
        // exhaustive axiom checks for powers of the natural module of the
        // full endomorphism algebra, shapes up to total dimension 4
        for space in [
            SuperSpace::new(2, 1),
            SuperSpace::new(1, 2),
            SuperSpace::new(2, 2),
        ] {
            let m = general_linear_module(space.parities());
            for kind in [PowerKind::Alt, PowerKind::Sym] {
                for n in 2..=3usize {
                    let (p, _) = power_module(kind, &m, n).unwrap();
                    assert!(
                        check_module(&p).is_valid(),
                        "{kind:?} power {n} of gl on {space:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn power_pairing_is_weighted_delta_diagonal() {
        // the canonical bases pair to a diagonal of omega-signed
        // stabilizer orders; in particular the form is nondegenerate
        for space in [
            SuperSpace::new(1, 1),
            SuperSpace::new(2, 1),
            SuperSpace::new(1, 2),
        ] {
            for kind in [PowerKind::Alt, PowerKind::Sym] {
                for n in 2..=3usize {
                    let (rows, cols, g) =
                        power_pairing_gram(kind, space, space, &Mat::identity(space.dim()), n)
                            .unwrap();
                    for (i, it) in rows.iter().enumerate() {
                        for (j, jt) in cols.iter().enumerate() {
                            let want = if it == jt {
                                crate::powers::power_pairing_weight(it)
                            } else {
                                Scalar::zero()
                            };
                            assert_eq!(*g.at(i, j), want, "{kind:?} n={n} {it} {jt}");
                        }
                    }
                    assert_eq!(g.rank(), rows.len());
                }
            }
        }
    }

    #[test]
    fn omega_weights() {
        assert_eq!(omega_sign(0), 1);
        assert_eq!(omega_sign(1), 1);
        assert_eq!(omega_sign(2), -1);
        assert_eq!(omega_sign(3), -1);
        assert_eq!(omega_sign(4), 1);
    }

    #[test]
    fn power_pairing_duality_identity() {
        // <x.F, V> = -eta_{x,F} <F, x.V> for the weighted power pairing
        let m = gl11();
        let md = dual_module(&m);
        let space = SuperSpace::new(1, 1);
        for kind in [PowerKind::Alt, PowerKind::Sym] {
            for n in 2..=3usize {
                let (pm, _) = power_module(kind, &m, n).unwrap();
                let (pmd, _) = power_module(kind, &md, n).unwrap();
                let (_, _, g) =
                    power_pairing_gram(kind, space, space, &Mat::identity(2), n).unwrap();
                let dt = pm.dim();
                let pair = |f: &[Scalar], v: &[Scalar]| -> Scalar {
                    let mut acc = Scalar::zero();
                    for i in 0..dt {
                        for j in 0..dt {
                            if !f[i].is_zero() && !v[j].is_zero() && !g.at(i, j).is_zero() {
                                acc += f[i].clone() * v[j].clone() * g.at(i, j).clone();
                            }
                        }
                    }
                    acc
                };
                for x in 0..pm.algebra.dim() {
                    for fi in 0..dt {
                        for vi in 0..dt {
                            let mut f = vec![Scalar::zero(); dt];
                            f[fi] = Scalar::one();
                            let mut v = vec![Scalar::zero(); dt];
                            v[vi] = Scalar::one();
                            let lhs = pair(&pmd.act_basis(x, &f), &v);
                            let eta = Scalar::from_sign(eta_sign(
                                pm.algebra.parities[x],
                                pmd.parities[fi],
                            ));
                            let rhs = -(eta * pair(&f, &pm.act_basis(x, &v)));
                            assert_eq!(lhs, rhs, "{kind:?}, n={n}, x{x}, f{fi}, v{vi}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn power_pairing_gram_is_weighted_diagonal() {
        let space = SuperSpace::new(1, 1);
        let (rows, _, g) =
            power_pairing_gram(PowerKind::Alt, space, space, &Mat::identity(2), 2).unwrap();
        // tuples: (1,2) weight omega_1 = 1, (2,2) weight omega_2 * 2! = -2
        assert_eq!(rows.len(), 2);
        assert_eq!(g.at(0, 0), &s(1));
        assert_eq!(g.at(1, 1), &s(-2));
        assert_eq!(g.at(0, 1), &s(0));
    }

    #[test]
    fn direct_sum_of_equal_parts_scales_the_form_on_the_diagonal() {
        let m = gl_with_supertrace(SuperSpace::new(1, 1));
        let sum = direct_sum(&[&m, &m, &m]);
        assert!(check_metric(&sum).is_valid());
        let dl = m.module.algebra.dim();
        // diagonal embedding x -> (x, x, x) multiplies the form by 3
        for i in 0..dl {
            for j in 0..dl {
                let mut di = vec![Scalar::zero(); 3 * dl];
                let mut dj = vec![Scalar::zero(); 3 * dl];
                for c in 0..3 {
                    di[c * dl + i] = Scalar::one();
                    dj[c * dl + j] = Scalar::one();
                }
                let mut acc = Scalar::zero();
                for a in 0..3 * dl {
                    for b in 0..3 * dl {
                        if !di[a].is_zero() && !dj[b].is_zero() {
                            acc += sum.b.at(a, b).clone();
                        }
                    }
                }
                assert_eq!(acc, s(3) * m.b.at(i, j).clone());
            }
        }
    }

    #[test]
    fn automorphism_transport_to_powers() {
        // (phi, h) in Aut(L, M) lifts to (phi, power of h)
        use crate::linear::{EvenMap, SuperMatrix};
        use crate::powers::matrix_power;
        let m = gl11();
        let space = SuperSpace::new(1, 1);
        let mut seed = 3u64;
        let mut next = move || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((seed >> 32) % 5) as i64 + 1
        };
        for _ in 0..5 {
            let h = Mat::from_rows(vec![vec![s(next()), s(0)], vec![s(0), s(next())]]);
            let hinv = h.inverse().unwrap();
            // phi = Ad_h on gl(1|1)
            let phi = |x: usize| -> Vec<Scalar> {
                let xm = Mat::from_rows(vec![
                    vec![m.action[x][0][0].clone(), m.action[x][1][0].clone()],
                    vec![m.action[x][0][1].clone(), m.action[x][1][1].clone()],
                ]);
                let conj = h.mul(&xm).mul(&hinv);
                vec![
                    conj.at(0, 0).clone(),
                    conj.at(0, 1).clone(),
                    conj.at(1, 0).clone(),
                    conj.at(1, 1).clone(),
                ]
            };
            for kind in [PowerKind::Alt, PowerKind::Sym] {
                let (pm, tuples) = power_module(kind, &m, 2).unwrap();
                let hm = EvenMap::new(SuperMatrix::new(space, space, h.clone()).unwrap()).unwrap();
                let hp = matrix_power(kind, &hm, 2).unwrap();
                let dt = tuples.len();
                for x in 0..4 {
                    for vi in 0..dt {
                        let mut v = vec![Scalar::zero(); dt];
                        v[vi] = Scalar::one();
                        let lhs = hp.mat.mul_vec(&pm.act_basis(x, &v));
                        let rhs = pm.act_vec(&phi(x), &hp.mat.mul_vec(&v));
                        assert_eq!(lhs, rhs, "{kind:?} x{x} v{vi}");
                    }
                }
            }
        }
    }
}
