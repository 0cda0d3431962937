//! JSON forms of model specifications and drawn arguments.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nccumulant::algebra::{Matrix, Monomial, Poly};
use nccumulant::models::{ClassicalSpec, ScalarFreeSpec};
use nccumulant::{Error, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const DEFAULT_MAX_ORDER: usize = 8;
pub const DEFAULT_DIMENSION: usize = 2;

/// A rational number, written `"p/q"` or `"p"`; plain JSON integers are
/// accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Num(Rational::from_integer(n.into()))),
            Raw::Text(t) => Rational::from_str(t.trim())
                .map(Num)
                .map_err(|_| serde::de::Error::custom(format!("not a rational number: {t:?}"))),
        }
    }
}

pub fn nums(values: &[Rational]) -> Vec<Num> {
    values.iter().cloned().map(Num).collect()
}

pub fn rationals(values: &[Num]) -> Vec<Rational> {
    values.iter().map(|n| n.0.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableEntry {
    pub name: String,
    pub moments: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub name: String,
    pub cumulants: Vec<Num>,
}

/// Moment/cumulant specification file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<VariableEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyEntry>,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default = "default_dimension")]
    pub dimension: usize,
}

fn default_max_order() -> usize {
    DEFAULT_MAX_ORDER
}

fn default_dimension() -> usize {
    DEFAULT_DIMENSION
}

impl Default for SpecFile {
    fn default() -> Self {
        SpecFile {
            variables: Vec::new(),
            families: Vec::new(),
            max_order: DEFAULT_MAX_ORDER,
            dimension: DEFAULT_DIMENSION,
        }
    }
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn classical(&self) -> Result<ClassicalSpec, Error> {
        let vars = self.variables.iter().map(|v| (v.name.clone(), rationals(&v.moments))).collect();
        ClassicalSpec::new(vars, self.max_order)
    }

    pub fn free(&self) -> Result<ScalarFreeSpec, Error> {
        let fams = self.families.iter().map(|f| (f.name.clone(), rationals(&f.cumulants))).collect();
        ScalarFreeSpec::new(fams, self.max_order)
    }
}

/// One term `c·x^e` of a polynomial; `e` lists exponents by variable index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub c: Num,
    pub e: Vec<u32>,
}

pub type PolyData = Vec<Term>;
pub type MatrixData = Vec<Vec<PolyData>>;
pub type ScalarMatrixData = Vec<Vec<Num>>;

pub fn poly_data(p: &Poly) -> PolyData {
    p.terms()
        .map(|(m, c)| {
            let mut e = Vec::new();
            for (v, k) in m.powers() {
                e.resize(v + 1, 0);
                e[v] = k;
            }
            Term { c: Num(c.clone()), e }
        })
        .collect()
}

pub fn poly(data: &PolyData) -> Poly {
    Poly::from_terms(data.iter().map(|t| (Monomial::new(t.e.clone()), t.c.0.clone())))
}

pub fn matrix_data(m: &Matrix<Poly>) -> MatrixData {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| poly_data(m.get(i, j))).collect()).collect()
}

pub fn matrix(data: &MatrixData) -> Result<Matrix<Poly>, Error> {
    Matrix::from_rows(data.iter().map(|row| row.iter().map(poly).collect()).collect())
}

pub fn scalar_matrix_data(m: &Matrix<Rational>) -> ScalarMatrixData {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| Num(m.get(i, j).clone())).collect()).collect()
}

pub fn scalar_matrix(data: &ScalarMatrixData) -> Result<Matrix<Rational>, Error> {
    Matrix::from_rows(data.iter().map(|row| rationals(row)).collect())
}
