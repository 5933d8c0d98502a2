//! Closed-form bounds on the number of colors and the table of known exact values.

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

fn check(ell: u64, d: u64) -> Result<()> {
    if ell == 0 || ell > d {
        return Err(Error::Domain(format!("need 1 <= ell <= d, got ell={ell}, d={d}")));
    }
    Ok(())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// Colors of the best basic coloring: `⌈(d+1)/(ℓ+1)⌉^r · ⌊(d+1)/(ℓ+1)⌋^(ℓ+1-r)`
/// with `0 < r <= ℓ+1`, `r ≡ d+1 (mod ℓ+1)`.
pub fn p_bas(ell: u64, d: u64) -> Result<u64> {
    check(ell, d)?;
    let parts = ell + 1;
    let r = match (d + 1) % parts {
        0 => parts,
        r => r,
    };
    let ceil = (d + 1).div_ceil(parts);
    let floor = (d + 1) / parts;
    Ok(ceil.pow(r as u32) * floor.pow((parts - r) as u32))
}

/// `C(d+1, ℓ+1)`, an upper bound for every `d`-polychromatic `Q_ℓ`-coloring.
pub fn upper_os(ell: u64, d: u64) -> Result<u64> {
    check(ell, d)?;
    Ok(binomial(d + 1, ell + 1))
}

/// Lower bound for `Q_2`-colorings from linear constructions, `d >= 4`, `k = ⌊d/3⌋`.
pub fn chen_lower(d: u64) -> Result<u64> {
    if d < 4 {
        return Err(Error::Domain(format!("bound holds for d >= 4, got {d}")));
    }
    let k = d / 3;
    Ok(match d % 3 {
        0 => (k * k + 1) * (k + 1),
        1 => (k * k + k + 1) * (k + 1),
        _ => (k * k + k + 1) * (k + 2),
    })
}

/// `(26/27) · C(d+1, 3)`; only established for sufficiently large `d`.
pub fn chen16_upper(d: u64) -> Result<Ratio<u64>> {
    if d < 2 {
        return Err(Error::Domain(format!("need d >= 2, got {d}")));
    }
    Ok(Ratio::new(26 * binomial(d + 1, 3), 27))
}

/// `⌊(d+1)²/4⌋`, the exact edge-coloring value.
pub fn p1_exact(d: u64) -> u64 {
    (d + 1) * (d + 1) / 4
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValue {
    pub value: u64,
    pub source: String,
}

fn known(value: u64, source: &str) -> Option<KnownValue> {
    Some(KnownValue { value, source: source.to_string() })
}

/// Exact `p_lin^ℓ(d)` values that have been established.
pub fn known_plin(ell: u64, d: u64) -> Option<KnownValue> {
    match (ell, d) {
        (2, 4) => known(6, "computer search"),
        (2, 5) => known(9, "computer search"),
        (3, 5) => known(6, "computer search"),
        (2, 6) => known(16, "computer search"),
        (3, 6) => known(12, "computer search"),
        (4, 6) => known(9, "computer search"),
        (l, d) if d >= 3 && l + 1 == d => known(2, "Q_(d-1) theorem"),
        _ => None,
    }
}

/// Exact values of `p^ℓ(d)` over all colorings.
pub fn known_p(ell: u64, d: u64) -> Option<KnownValue> {
    match (ell, d) {
        (1, d) if d >= 1 => known(p1_exact(d), "edge colorings: floor((d+1)^2/4)"),
        (2, 3) => known(3, "p^2(3) = 3"),
        _ => None,
    }
}

fn ratio_as_string<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub ell: u64,
    pub d: u64,
    pub p_bas: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chen_lower: Option<u64>,
    pub upper_os: u64,
    /// Exact rational, valid only asymptotically.
    #[serde(serialize_with = "ratio_as_string", skip_serializing_if = "Option::is_none")]
    pub chen16_upper: Option<Ratio<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_plin: Option<KnownValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_p: Option<KnownValue>,
}

pub fn row(ell: u64, d: u64) -> Result<BoundsRow> {
    Ok(BoundsRow {
        ell,
        d,
        p_bas: p_bas(ell, d)?,
        chen_lower: if ell == 2 && d >= 4 { Some(chen_lower(d)?) } else { None },
        upper_os: upper_os(ell, d)?,
        chen16_upper: if ell == 2 { Some(chen16_upper(d)?) } else { None },
        known_plin: known_plin(ell, d),
        known_p: known_p(ell, d),
    })
}

/// Rows for every `ell <= d` in the given ranges.
pub fn table(ells: std::ops::RangeInclusive<u64>, ds: std::ops::RangeInclusive<u64>) -> Vec<BoundsRow> {
    let mut rows = Vec::new();
    for d in ds {
        for ell in ells.clone() {
            if ell >= 1 && ell <= d {
                rows.push(row(ell, d).expect("ell <= d"));
            }
        }
    }
    rows
}

/// Every row with `1 <= ℓ <= d <= 6` that carries an exact value.
pub fn known_values() -> Vec<BoundsRow> {
    table(1..=6, 1..=6)
        .into_iter()
        .filter(|r| r.known_plin.is_some() || r.known_p.is_some())
        .collect()
}

/// Aligned text rendering of a table.
pub fn render_text(rows: &[BoundsRow]) -> String {
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    let mut out = format!(
        "{:>3} {:>3} {:>8} {:>11} {:>11} {:>9} {:>10} {:>14}\n",
        "ell", "d", "p_bas", "chen_lower", "known_plin", "upper_os", "known_p", "chen16_upper*"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:>3} {:>8} {:>11} {:>11} {:>9} {:>10} {:>14}\n",
            r.ell,
            r.d,
            r.p_bas,
            opt(r.chen_lower),
            opt(r.known_plin.as_ref().map(|k| k.value)),
            r.upper_os,
            opt(r.known_p.as_ref().map(|k| k.value)),
            r.chen16_upper.map_or("-".to_string(), |q| q.to_string()),
        ));
    }
    out.push_str("* chen16_upper holds only for sufficiently large d\n");
    out
}
