//! JSON document formats for the CLI: scalars as `"p/q"` strings (or
//! `{"re","im"}` objects over the extension field), supermatrices, power
//! vectors, and metric pairs.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::jordan::{MetricPair, Tensor4, TriplePair};
use crate::linear::{Mat, SuperMatrix, SuperSpace};
use crate::powers::{enum_indices, PowerKind, PowerVector};
use crate::scalar::{gaussian_from_parts, gaussian_strings, rational_string, Scalar};
use crate::Error;

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match rational_string(self) {
            Some(s) => serializer.serialize_str(&s),
            None => {
                let (re, im) = gaussian_strings(self);
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("re", &re)?;
                map.serialize_entry("im", &im)?;
                map.end()
            }
        }
    }
}

struct ScalarVisitor;

impl<'de> Visitor<'de> for ScalarVisitor {
    type Value = Scalar;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(
            f,
            "a rational string \"p/q\" or an object {{\"re\",\"im\"}}"
        )
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
        v.parse().map_err(|e| E::custom(format!("{e}")))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Scalar, A::Error> {
        let mut re: Option<String> = None;
        let mut im: Option<String> = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "re" => re = Some(map.next_value()?),
                "im" => im = Some(map.next_value()?),
                other => return Err(de::Error::custom(format!("unexpected field {other:?}"))),
            }
        }
        let re = re.ok_or_else(|| de::Error::custom("missing field \"re\""))?;
        let im = im.ok_or_else(|| de::Error::custom("missing field \"im\""))?;
        gaussian_from_parts(&re, &im).map_err(|e| de::Error::custom(format!("{e}")))
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Scalar, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

fn rows_to_mat(rows: Vec<Vec<Scalar>>, want_rows: usize, want_cols: usize) -> Result<Mat, Error> {
    if rows.len() != want_rows || rows.iter().any(|r| r.len() != want_cols) {
        return Err(Error::ShapeMismatch(format!(
            "expected a {want_rows}x{want_cols} grid"
        )));
    }
    Ok(Mat::from_rows(rows))
}

/// `{"rows":[d0,d1],"cols":[d0,d1],"entries":[[...]]}`
#[derive(Serialize, Deserialize)]
pub struct SuperMatrixJson {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
    pub entries: Vec<Vec<Scalar>>,
}

impl SuperMatrixJson {
    pub fn from_matrix(m: &SuperMatrix) -> Self {
        SuperMatrixJson {
            rows: [m.row_space.d0, m.row_space.d1],
            cols: [m.col_space.d0, m.col_space.d1],
            entries: mat_to_rows(&m.mat),
        }
    }

    pub fn into_matrix(self) -> Result<SuperMatrix, Error> {
        let row_space = SuperSpace::new(self.rows[0], self.rows[1]);
        let col_space = SuperSpace::new(self.cols[0], self.cols[1]);
        let mat = rows_to_mat(self.entries, row_space.dim(), col_space.dim())?;
        SuperMatrix::new(row_space, col_space, mat)
    }
}

/// `{"kind":"alt","n":2,"coords":{"(1,2)":"1",...}}`
#[derive(Serialize, Deserialize)]
pub struct PowerVectorJson {
    pub kind: String,
    pub n: usize,
    pub coords: BTreeMap<String, Scalar>,
}

pub fn power_kind_from_str(s: &str) -> Result<PowerKind, Error> {
    match s {
        "alt" => Ok(PowerKind::Alt),
        "sym" => Ok(PowerKind::Sym),
        other => Err(Error::Parse(format!("unknown power kind {other:?}"))),
    }
}

impl PowerVectorJson {
    pub fn from_vector(v: &PowerVector) -> Result<Self, Error> {
        let tuples = enum_indices(v.kind, v.space, v.n)?;
        let mut coords = BTreeMap::new();
        for (t, c) in tuples.iter().zip(&v.coords) {
            if !c.is_zero() {
                coords.insert(t.to_string(), c.clone());
            }
        }
        Ok(PowerVectorJson {
            kind: v.kind.label().to_string(),
            n: v.n,
            coords,
        })
    }

    pub fn into_vector(self, space: SuperSpace) -> Result<PowerVector, Error> {
        let kind = power_kind_from_str(&self.kind)?;
        let tuples = enum_indices(kind, space, self.n)?;
        let mut out = vec![Scalar::zero(); tuples.len()];
        for (label, value) in self.coords {
            let tuple = crate::powers::IndexTuple::parse(kind, space, &label)?;
            let pos = crate::powers::tuple_position(&tuples, &tuple)
                .ok_or_else(|| Error::Parse(format!("label {label:?} is not canonical")))?;
            out[pos] = value;
        }
        Ok(PowerVector {
            kind,
            space,
            n: self.n,
            coords: out,
        })
    }
}

/// `{"dminus":[d0,d1],"dplus":[d0,d1],"prodMinus":[...],"prodPlus":[...],
/// "gram":[[...]]}` with optional basis labels.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairJson {
    pub dminus: [usize; 2],
    pub dplus: [usize; 2],
    pub prod_minus: Tensor4,
    pub prod_plus: Tensor4,
    pub gram: Vec<Vec<Scalar>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels_minus: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels_plus: Option<Vec<String>>,
}

fn tensor_shape_ok(t: &Tensor4, a: usize, b: usize, c: usize, d: usize) -> bool {
    t.len() == a
        && t.iter().all(|x| {
            x.len() == b
                && x.iter()
                    .all(|y| y.len() == c && y.iter().all(|z| z.len() == d))
        })
}

impl PairJson {
    pub fn from_pair(mp: &MetricPair) -> Self {
        PairJson {
            dminus: [mp.pair.minus.d0, mp.pair.minus.d1],
            dplus: [mp.pair.plus.d0, mp.pair.plus.d1],
            prod_minus: mp.pair.prod_minus.clone(),
            prod_plus: mp.pair.prod_plus.clone(),
            gram: mat_to_rows(&mp.gram),
            labels_minus: mp.labels_minus.clone(),
            labels_plus: mp.labels_plus.clone(),
        }
    }

    pub fn into_pair(self) -> Result<MetricPair, Error> {
        let minus = SuperSpace::new(self.dminus[0], self.dminus[1]);
        let plus = SuperSpace::new(self.dplus[0], self.dplus[1]);
        let dm = minus.dim();
        let dp = plus.dim();
        if !tensor_shape_ok(&self.prod_minus, dm, dp, dm, dm) {
            return Err(Error::ShapeMismatch("prodMinus tensor shape".into()));
        }
        if !tensor_shape_ok(&self.prod_plus, dp, dm, dp, dp) {
            return Err(Error::ShapeMismatch("prodPlus tensor shape".into()));
        }
        let gram = rows_to_mat(self.gram, dm, dp)?;
        Ok(MetricPair {
            pair: TriplePair {
                minus,
                plus,
                prod_minus: self.prod_minus,
                prod_plus: self.prod_plus,
            },
            gram,
            labels_minus: self.labels_minus,
            labels_plus: self.labels_plus,
        })
    }
}

fn parities_to_bits(ps: &[crate::linear::Parity]) -> Vec<u8> {
    ps.iter().map(|p| p.is_odd() as u8).collect()
}

fn bits_to_parities(bits: &[u8]) -> Result<Vec<crate::linear::Parity>, Error> {
    bits.iter()
        .map(|&b| match b {
            0 => Ok(crate::linear::Parity::Even),
            1 => Ok(crate::linear::Parity::Odd),
            other => Err(Error::Parse(format!("parity bit {other}"))),
        })
        .collect()
}

/// `{"parities":[0,1,...],"bracket":[...]}`: a Lie superalgebra as dense
/// structure constants with its parity split declared.
#[derive(Serialize, Deserialize)]
pub struct AlgebraJson {
    pub parities: Vec<u8>,
    pub bracket: Vec<Vec<Vec<Scalar>>>,
}

impl AlgebraJson {
    pub fn from_algebra(l: &crate::lie::LieSuperAlgebra) -> Self {
        AlgebraJson {
            parities: parities_to_bits(&l.parities),
            bracket: l.bracket.clone(),
        }
    }

    pub fn into_algebra(self) -> Result<crate::lie::LieSuperAlgebra, Error> {
        let parities = bits_to_parities(&self.parities)?;
        let d = parities.len();
        let ok = self.bracket.len() == d
            && self
                .bracket
                .iter()
                .all(|x| x.len() == d && x.iter().all(|y| y.len() == d));
        if !ok {
            return Err(Error::ShapeMismatch("bracket tensor shape".into()));
        }
        Ok(crate::lie::LieSuperAlgebra {
            parities,
            bracket: self.bracket,
        })
    }
}

/// `{"algebra":{...},"parities":[...],"action":[...]}`: a supermodule as
/// dense structure constants.
#[derive(Serialize, Deserialize)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub parities: Vec<u8>,
    pub action: Vec<Vec<Vec<Scalar>>>,
}

impl ModuleJson {
    pub fn from_module(m: &crate::lie::SuperModule) -> Self {
        ModuleJson {
            algebra: AlgebraJson::from_algebra(&m.algebra),
            parities: parities_to_bits(&m.parities),
            action: m.action.clone(),
        }
    }

    pub fn into_module(self) -> Result<crate::lie::SuperModule, Error> {
        let algebra = self.algebra.into_algebra()?;
        let parities = bits_to_parities(&self.parities)?;
        let d = parities.len();
        let ok = self.action.len() == algebra.dim()
            && self
                .action
                .iter()
                .all(|x| x.len() == d && x.iter().all(|y| y.len() == d));
        if !ok {
            return Err(Error::ShapeMismatch("action tensor shape".into()));
        }
        Ok(crate::lie::SuperModule {
            algebra,
            parities,
            action: self.action,
        })
    }
}

/// Rejects documents that use the extension field when the run is pinned
/// to the rationals.
pub fn assert_rational_pair(mp: &MetricPair) -> Result<(), Error> {
    let gaussian = mp
        .pair
        .prod_minus
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .chain(mp.pair.prod_plus.iter().flatten().flatten().flatten())
        .any(|c| c.is_gaussian())
        || (0..mp.gram.rows()).any(|i| (0..mp.gram.cols()).any(|j| mp.gram.at(i, j).is_gaussian()));
    if gaussian {
        return Err(Error::Parse(
            "document uses the extension field; pass --field gaussian".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::type_i;
    use crate::linear::EvenMap;
    use crate::linear::SuperVector;
    use crate::powers::expand_pure;

    #[test]
    fn scalar_serde_round_trip() {
        let vals = [
            Scalar::rational(5, 6).unwrap(),
            Scalar::from_int(-2),
            Scalar::i(),
            Scalar::rational(1, 3).unwrap() + Scalar::rational(-2, 7).unwrap() * Scalar::i(),
        ];
        for v in vals {
            let enc = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&enc).unwrap();
            assert_eq!(back, v);
        }
        assert_eq!(
            serde_json::to_string(&Scalar::rational(5, 6).unwrap()).unwrap(),
            "\"5/6\""
        );
        assert_eq!(
            serde_json::to_string(&Scalar::i()).unwrap(),
            "{\"re\":\"0\",\"im\":\"1\"}"
        );
        assert!(serde_json::from_str::<Scalar>("\"1/0\"").is_err());
    }

    #[test]
    fn supermatrix_round_trip() {
        let sp = SuperSpace::new(1, 1);
        let m = EvenMap::identity(sp);
        let json = serde_json::to_string(&SuperMatrixJson::from_matrix(&m)).unwrap();
        let back: SuperMatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(&back.into_matrix().unwrap(), &*m);
    }

    #[test]
    fn power_vector_round_trip() {
        let sp = SuperSpace::new(2, 0);
        let v1 = SuperVector::new(sp, vec![Scalar::one(), Scalar::one()]).unwrap();
        let v2 = SuperVector::basis(sp, 1);
        let w = expand_pure(PowerKind::Alt, &[v1, v2]).unwrap();
        let json = serde_json::to_string(&PowerVectorJson::from_vector(&w).unwrap()).unwrap();
        assert_eq!(
            json,
            "{\"kind\":\"alt\",\"n\":2,\"coords\":{\"(1,2)\":\"1\"}}"
        );
        let back: PowerVectorJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_vector(sp).unwrap(), w);
    }

    #[test]
    fn pair_round_trip() {
        let mp = type_i(1, 2).unwrap();
        let json = serde_json::to_string(&PairJson::from_pair(&mp)).unwrap();
        let back: PairJson = serde_json::from_str(&json).unwrap();
        let back = back.into_pair().unwrap();
        assert!(back.coefficients_equal(&mp));
    }

    #[test]
    fn malformed_pairs_are_rejected() {
        let mp = type_i(1, 2).unwrap();
        let mut doc = PairJson::from_pair(&mp);
        doc.gram.pop();
        assert!(doc.into_pair().is_err());
    }

    #[test]
    fn module_round_trip() {
        let m = crate::lie::general_linear_module(vec![
            crate::linear::Parity::Even,
            crate::linear::Parity::Odd,
        ]);
        let json = serde_json::to_string(&ModuleJson::from_module(&m)).unwrap();
        let back: ModuleJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_module().unwrap(), m);
    }
}
