//! Subcube notation, counting vectors and linear colorings.
//!
//! A `Q_d` inside `Q_n` is written as an `n`-character string over `{0,1,*}`
//! with `d` stars. Its counting vector records the number of 1s before the
//! first star, between consecutive stars and after the last star. A linear
//! coloring sends a counting vector `v` to `Σ v_j · column_j` in a finite
//! abelian group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{FactoredAbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// Largest subcube dimension [`SubcubeString::vertices`] will expand.
pub const MAX_VERTEX_DIM: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubcubeString {
    chars: Vec<u8>,
}

impl FromStr for SubcubeString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(bad) = s.chars().find(|c| !matches!(c, '0' | '1' | '*')) {
            return Err(Error::Invalid(format!("subcube string contains `{bad}`; only 0, 1 and * are allowed")));
        }
        Ok(SubcubeString { chars: s.as_bytes().to_vec() })
    }
}

impl fmt::Display for SubcubeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.chars).expect("ascii"))
    }
}

impl Serialize for SubcubeString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SubcubeString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl SubcubeString {
    /// Builds a subcube from raw `b'0'`, `b'1'`, `b'*'` bytes.
    pub fn from_bytes(chars: Vec<u8>) -> Result<Self> {
        let s = String::from_utf8(chars).map_err(|e| Error::Invalid(e.to_string()))?;
        s.parse()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.chars
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.chars.len()
    }

    /// Number of stars.
    pub fn dim(&self) -> usize {
        self.chars.iter().filter(|&&c| c == b'*').count()
    }

    pub fn counting_vector(&self) -> Result<CountingVector> {
        if self.dim() == 0 {
            return Err(Error::Domain(format!("`{self}` has no stars")));
        }
        let mut entries = vec![0u64];
        for &c in &self.chars {
            match c {
                b'1' => *entries.last_mut().unwrap() += 1,
                b'*' => entries.push(0),
                _ => {}
            }
        }
        Ok(CountingVector(entries))
    }

    /// The `2^dim` vertices, stars instantiated in binary order.
    pub fn vertices(&self) -> Result<Vec<String>> {
        let dim = self.dim();
        if dim > MAX_VERTEX_DIM {
            return Err(Error::Resource(format!(
                "refusing to expand 2^{dim} vertices (limit 2^{MAX_VERTEX_DIM})"
            )));
        }
        let stars: Vec<usize> = (0..self.chars.len()).filter(|&i| self.chars[i] == b'*').collect();
        Ok((0u64..1 << dim)
            .map(|bits| {
                let mut v = self.chars.clone();
                for (k, &pos) in stars.iter().enumerate() {
                    let bit = (bits >> (dim - 1 - k)) & 1;
                    v[pos] = if bit == 1 { b'1' } else { b'0' };
                }
                String::from_utf8(v).expect("ascii")
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CountingVector(pub Vec<u64>);

impl CountingVector {
    pub fn zeros(len: usize) -> Self {
        CountingVector(vec![0; len])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Self {
        CountingVector(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for CountingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A linear `Q_ℓ`-coloring: column `j` is the color of the `j`-th unit counting vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearColoring {
    ell: usize,
    group: FactoredAbelianGroup,
    columns: Vec<GroupElement>,
}

impl LinearColoring {
    pub fn new(ell: usize, group: FactoredAbelianGroup, columns: Vec<GroupElement>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Domain("subcube dimension ell must be at least 1".into()));
        }
        if columns.len() != ell + 1 {
            return Err(Error::Structural(format!(
                "a Q_{ell}-coloring needs {} columns, got {}",
                ell + 1,
                columns.len()
            )));
        }
        if let Some(c) = columns.iter().find(|c| !group.contains(c)) {
            return Err(Error::Structural(format!("column {c} is not an element of {group}")));
        }
        Ok(LinearColoring { ell, group, columns })
    }

    /// Convenience constructor from signed integer columns.
    pub fn from_raw(ell: usize, moduli: &[u64], columns: &[&[i64]]) -> Result<Self> {
        let group = FactoredAbelianGroup::new(moduli.to_vec())?;
        let cols = columns.iter().map(|c| group.element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(ell, group, cols)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn group(&self) -> &FactoredAbelianGroup {
        &self.group
    }

    pub fn columns(&self) -> &[GroupElement] {
        &self.columns
    }

    /// Number of colors, i.e. the group order.
    pub fn colors(&self) -> u64 {
        self.group.order()
    }

    pub fn evaluate(&self, v: &CountingVector) -> Result<GroupElement> {
        if v.len() != self.ell + 1 {
            return Err(Error::Structural(format!(
                "counting vector {v} has length {}, expected {}",
                v.len(),
                self.ell + 1
            )));
        }
        let residues = self
            .group
            .moduli()
            .iter()
            .enumerate()
            .map(|(row, &m)| {
                let m = m as u128;
                let sum = v
                    .0
                    .iter()
                    .zip(&self.columns)
                    .fold(0u128, |acc, (&vj, col)| (acc + (vj as u128 % m) * col.0[row] as u128) % m);
                sum as u64
            })
            .collect();
        Ok(GroupElement(residues))
    }

    /// The coloring whose column order is reversed; it colors reversed strings identically.
    pub fn reversed(&self) -> LinearColoring {
        LinearColoring {
            ell: self.ell,
            group: self.group.clone(),
            columns: self.columns.iter().rev().cloned().collect(),
        }
    }

    /// Row-major coefficient matrix: one row per group component.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        (0..self.group.rank())
            .map(|row| self.columns.iter().map(|c| c.0[row]).collect())
            .collect()
    }

    pub fn to_spec(&self) -> ColoringSpec {
        ColoringSpec {
            ell: self.ell,
            moduli: self.group.moduli().iter().map(|&m| m as i64).collect(),
            columns: Some(self.columns.iter().map(|c| c.0.iter().map(|&r| r as i64).collect()).collect()),
            matrix: None,
            d: None,
        }
    }

    pub fn from_spec_json(json: &str) -> Result<Self> {
        let spec: ColoringSpec = serde_json::from_str(json)?;
        spec.to_coloring()
    }
}

impl fmt::Display for LinearColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{} -> {} columns [", self.ell, self.group)?;
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// On-disk coloring description.
///
/// Either `columns` (one residue list per counting-vector position) or `matrix`
/// (one row per group component) must be given. Coefficients may be negative.
/// Unknown fields are ignored so certificates can be read back as specs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringSpec {
    pub ell: usize,
    pub moduli: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Optional default `d` for verification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

impl ColoringSpec {
    pub fn to_coloring(&self) -> Result<LinearColoring> {
        if self.ell == 0 {
            return Err(Error::Invalid("ell must be at least 1".into()));
        }
        let mut moduli = Vec::with_capacity(self.moduli.len());
        for &m in &self.moduli {
            if m < 2 {
                return Err(Error::Invalid(format!("modulus {m} is below 2")));
            }
            moduli.push(m as u64);
        }
        let group = FactoredAbelianGroup::new(moduli)?;
        let columns: Vec<Vec<i64>> = match (&self.columns, &self.matrix) {
            (Some(c), None) => c.clone(),
            (None, Some(rows)) => {
                if rows.len() != group.rank() {
                    return Err(Error::Invalid(format!(
                        "matrix has {} rows but the group has {} components",
                        rows.len(),
                        group.rank()
                    )));
                }
                let width = rows.first().map_or(self.ell + 1, |r| r.len());
                if rows.iter().any(|r| r.len() != width) {
                    return Err(Error::Invalid("matrix rows have different lengths".into()));
                }
                (0..width).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
            }
            (Some(_), Some(_)) => return Err(Error::Invalid("give either `columns` or `matrix`, not both".into())),
            (None, None) => return Err(Error::Invalid("missing `columns` (or `matrix`)".into())),
        };
        if columns.len() != self.ell + 1 {
            return Err(Error::Invalid(format!(
                "ell = {} needs {} columns, found {}",
                self.ell,
                self.ell + 1,
                columns.len()
            )));
        }
        let mut elems = Vec::with_capacity(columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != group.rank() {
                return Err(Error::Invalid(format!(
                    "column {j} has {} entries but the group has {} components",
                    c.len(),
                    group.rank()
                )));
            }
            elems.push(group.element(c)?);
        }
        LinearColoring::new(self.ell, group, elems)
    }
}

/// Balanced entries `m_0..m_ℓ` with `Σ m_i = d+1`: `r` copies of the ceiling then the floors.
pub fn basic_moduli(ell: usize, d: usize) -> Result<Vec<u64>> {
    if ell == 0 || ell > d {
        return Err(Error::Domain(format!("basic coloring needs 1 <= ell <= d, got ell={ell}, d={d}")));
    }
    let parts = (ell + 1) as u64;
    let total = (d + 1) as u64;
    let floor = total / parts;
    let ceil = total.div_ceil(parts);
    let mut r = total % parts;
    if r == 0 {
        r = parts;
    }
    Ok((0..parts).map(|i| if i < r { ceil } else { floor }).collect())
}

/// The balanced basic coloring `v ↦ (v_0 mod m_0, …, v_ℓ mod m_ℓ)`.
///
/// Entries with `m_i = 1` are trivial and are left out of the group; their
/// columns are then the zero element.
pub fn basic_coloring(ell: usize, d: usize) -> Result<LinearColoring> {
    let entries = basic_moduli(ell, d)?;
    let moduli: Vec<u64> = entries.iter().copied().filter(|&m| m >= 2).collect();
    let group = FactoredAbelianGroup::new(moduli)?;
    let mut comp = 0;
    let columns = entries
        .iter()
        .map(|&m| {
            let mut r = vec![0u64; group.rank()];
            if m >= 2 {
                r[comp] = 1;
                comp += 1;
            }
            GroupElement(r)
        })
        .collect();
    LinearColoring::new(ell, group, columns)
}

pub const FIXTURE_NAMES: [&str; 5] = ["chi26", "chi36a", "chi36b", "chi46", "chi46c"];

/// The published optimal 6-polychromatic colorings with 16, 12, 12 and 9 colors.
///
/// `chi46` is kept exactly as published, and it is not 6-polychromatic: the
/// `Q_6` `*****1*` never sees color `(0, 2)`. `chi46c` reads `p` for `q` in the
/// second coordinate, the nearest polychromatic matrix.
pub fn fixture(name: &str) -> Result<LinearColoring> {
    match name {
        // (q - r, p - r) mod 4
        "chi26" => LinearColoring::from_raw(2, &[4, 4], &[&[0, 1], &[1, 0], &[-1, -1]]),
        // (r - s mod 3, p - q + r - s mod 4)
        "chi36a" => LinearColoring::from_raw(3, &[3, 4], &[&[0, 1], &[0, -1], &[1, 1], &[-1, -1]]),
        // (s mod 2, q + r mod 2, p + q - r mod 3)
        "chi36b" => LinearColoring::from_raw(3, &[2, 2, 3], &[&[0, 0, 1], &[0, 1, 1], &[0, 1, -1], &[1, 0, 0]]),
        // (q + s + t, q - r + s) mod 3
        "chi46" => LinearColoring::from_raw(4, &[3, 3], &[&[0, 0], &[1, 1], &[0, -1], &[1, 1], &[1, 0]]),
        // (q + s + t, p - r + s) mod 3
        "chi46c" => LinearColoring::from_raw(4, &[3, 3], &[&[0, 1], &[1, 0], &[0, -1], &[1, 1], &[1, 0]]),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}
