//! Brute-force ground truth over explicit subcubes of `Q_n`.
//!
//! Nothing here goes through star placements or residue ranges: every `Q_d`
//! of `Q_n` is materialized as a pair of bit masks, every `Q_ℓ` inside it is
//! materialized the same way, and its color comes from reading the counting
//! vector off the string.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{groups_of_order, GroupElement};
use crate::coloring::{CountingVector, LinearColoring, SubcubeString};
use crate::error::{Error, Result};
use crate::polycheck::{is_polychromatic, is_polychromatic_with, CheckOptions, XRange};

/// Largest ambient dimension [`explicit_check`] enumerates.
pub const MAX_ORACLE_N: usize = 24;
/// Default cap on the number of `Q_ℓ` colorings one check may perform.
pub const DEFAULT_WORK_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitCheckReport {
    pub n: usize,
    pub d: usize,
    pub ell: usize,
    pub all_qd_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_qd: Option<SubcubeString>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_colors: Option<Vec<GroupElement>>,
}

impl ExplicitCheckReport {
    pub fn success(&self) -> bool {
        self.failing_qd.is_none()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

// Position 0 is the leftmost character.
fn counting_vector_of(n: usize, stars: u64, ones: u64) -> CountingVector {
    let mut entries = vec![0u64];
    for pos in 0..n {
        let bit = 1u64 << pos;
        if stars & bit != 0 {
            entries.push(0);
        } else if ones & bit != 0 {
            *entries.last_mut().unwrap() += 1;
        }
    }
    CountingVector(entries)
}

fn to_string(n: usize, stars: u64, ones: u64) -> SubcubeString {
    let bytes = (0..n)
        .map(|pos| {
            let bit = 1u64 << pos;
            if stars & bit != 0 {
                b'*'
            } else if ones & bit != 0 {
                b'1'
            } else {
                b'0'
            }
        })
        .collect();
    SubcubeString::from_bytes(bytes).expect("valid alphabet")
}

/// Colors missing from the `Q_ℓ`s of one explicit `Q_d` (`stars`/`ones` masks over `n` positions).
fn missing_in(chi: &LinearColoring, n: usize, stars: &[usize], ones: u64) -> Result<Vec<GroupElement>> {
    let group = chi.group();
    let mut seen = vec![false; group.order() as usize];
    let mut remaining = seen.len();
    for chosen in combinations(stars, chi.ell()) {
        let free: Vec<usize> = stars.iter().copied().filter(|s| !chosen.contains(s)).collect();
        let star_mask = chosen.iter().fold(0u64, |m, &p| m | 1 << p);
        for bits in 0u64..1 << free.len() {
            let mut sub_ones = ones;
            for (k, &p) in free.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    sub_ones |= 1 << p;
                }
            }
            let color = chi.evaluate(&counting_vector_of(n, star_mask, sub_ones))?;
            let idx = group.index_of(&color)?;
            if !seen[idx] {
                seen[idx] = true;
                remaining -= 1;
                if remaining == 0 {
                    return Ok(Vec::new());
                }
            }
        }
    }
    Ok(group.elements().zip(&seen).filter(|(_, &s)| !s).map(|(e, _)| e).collect())
}

/// Colors missing from the `Q_ℓ`s inside one explicit subcube; empty means every color appears.
pub fn check_subcube(chi: &LinearColoring, qd: &SubcubeString) -> Result<Vec<GroupElement>> {
    let n = qd.n();
    if n > 64 {
        return Err(Error::Resource(format!("subcube length {n} exceeds 64")));
    }
    if chi.ell() > qd.dim() {
        return Err(Error::Domain(format!("ell = {} exceeds subcube dimension {}", chi.ell(), qd.dim())));
    }
    let work = binomial(qd.dim() as u64, chi.ell() as u64).saturating_mul(1u64 << (qd.dim() - chi.ell()).min(63));
    if work > DEFAULT_WORK_BUDGET {
        return Err(Error::Resource(format!("{work} sub-subcubes exceed the work budget")));
    }
    let stars: Vec<usize> = (0..n).filter(|&i| qd.as_bytes()[i] == b'*').collect();
    let ones = (0..n).filter(|&i| qd.as_bytes()[i] == b'1').fold(0u64, |m, p| m | 1 << p);
    missing_in(chi, n, &stars, ones)
}

pub fn explicit_check(chi: &LinearColoring, n: usize, d: usize) -> Result<ExplicitCheckReport> {
    explicit_check_with_budget(chi, n, d, DEFAULT_WORK_BUDGET)
}

/// Every `Q_d` of `Q_n`, star sets in lexicographic order and the fixed bits in binary order.
pub fn explicit_check_with_budget(chi: &LinearColoring, n: usize, d: usize, budget: u64) -> Result<ExplicitCheckReport> {
    let ell = chi.ell();
    if !(ell <= d && d <= n) {
        return Err(Error::Domain(format!("need ell <= d <= n, got ell={ell}, d={d}, n={n}")));
    }
    if n > MAX_ORACLE_N {
        return Err(Error::Resource(format!("n = {n} exceeds the oracle limit {MAX_ORACLE_N}")));
    }
    let all_qd_count = binomial(n as u64, d as u64) << (n - d);
    let per_qd = binomial(d as u64, ell as u64) << (d - ell);
    let work = all_qd_count.saturating_mul(per_qd);
    if work > budget {
        return Err(Error::Resource(format!("{work} subcube colorings exceed the budget of {budget}")));
    }
    let positions: Vec<usize> = (0..n).collect();
    for stars in combinations(&positions, d) {
        let fixed: Vec<usize> = positions.iter().copied().filter(|p| !stars.contains(p)).collect();
        let star_mask = stars.iter().fold(0u64, |m, &p| m | 1 << p);
        for bits in 0u64..1 << fixed.len() {
            // first fixed position is the most significant bit
            let ones = fixed
                .iter()
                .enumerate()
                .filter(|(k, _)| bits >> (fixed.len() - 1 - k) & 1 == 1)
                .fold(0u64, |m, (_, &p)| m | 1 << p);
            let missing = missing_in(chi, n, &stars, ones)?;
            if !missing.is_empty() {
                return Ok(ExplicitCheckReport {
                    n,
                    d,
                    ell,
                    all_qd_count,
                    failing_qd: Some(to_string(n, star_mask, ones)),
                    missing_colors: Some(missing),
                });
            }
        }
    }
    Ok(ExplicitCheckReport { n, d, ell, all_qd_count, failing_qd: None, missing_colors: None })
}

/// A concrete `Q_d` with counting vector `x`: `x_0` ones, a star, `x_1` ones, …, a star, `x_d` ones.
pub fn embed_witness(x: &CountingVector) -> SubcubeString {
    let mut bytes = Vec::new();
    for (i, &count) in x.0.iter().enumerate() {
        if i > 0 {
            bytes.push(b'*');
        }
        bytes.extend(std::iter::repeat_n(b'1', count as usize));
    }
    SubcubeString::from_bytes(bytes).expect("valid alphabet")
}

/// Checks the counting-vector verdict against explicit enumeration for `d <= n <= n_max`.
///
/// A polychromatic verdict must survive every explicit `Q_n`. A negative
/// verdict's witness, embedded as a concrete subcube, must miss a color, and
/// when it fits inside `Q_{n_max}` the full enumeration at its own `n` must
/// fail as well.
pub fn cross_validate(chi: &LinearColoring, d: usize, n_max: usize) -> Result<bool> {
    let verdict = is_polychromatic(chi, d)?;
    let witness_n = verdict.witness.as_ref().map(|w| d + w.total() as usize);
    if let Some(w) = &verdict.witness {
        if check_subcube(chi, &embed_witness(w))?.is_empty() {
            return Ok(false);
        }
    }
    for n in d..=n_max {
        let report = explicit_check(chi, n, d)?;
        if verdict.polychromatic && !report.success() {
            return Ok(false);
        }
        if witness_n == Some(n) && report.success() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`sample_cross_validation`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub samples: usize,
    pub polychromatic: usize,
    pub oracle_disagreements: usize,
    pub range_disagreements: usize,
}

/// A uniformly random coloring: `ell` in `1..=max_ell.min(d)`, a random group of order `1..=max_order`.
pub fn random_coloring<R: Rng>(rng: &mut R, d: usize, max_ell: usize, max_order: u64) -> LinearColoring {
    let ell = rng.random_range(1..=max_ell.min(d));
    let order = rng.random_range(1..=max_order);
    let groups = groups_of_order(order).expect("order >= 1");
    let group = groups[rng.random_range(0..groups.len())].clone();
    let columns = (0..=ell)
        .map(|_| group.element_at(rng.random_range(0..order as usize)))
        .collect();
    LinearColoring::new(ell, group, columns).expect("columns drawn from the group")
}

/// Cross-validates `samples` random colorings (`d` in `1..=max_d`) against the oracle at
/// `n_max = d + extra_n`, and compares exponent-range and order-range verdicts.
pub fn sample_cross_validation<R: Rng>(
    rng: &mut R,
    samples: usize,
    max_ell: usize,
    max_d: usize,
    max_order: u64,
    extra_n: usize,
) -> Result<SampleSummary> {
    let mut summary = SampleSummary { samples, ..Default::default() };
    for _ in 0..samples {
        let d = rng.random_range(1..=max_d);
        let chi = random_coloring(rng, d, max_ell, max_order);
        if !cross_validate(&chi, d, d + extra_n)? {
            summary.oracle_disagreements += 1;
        }
        let fast = is_polychromatic(&chi, d)?;
        let paper = is_polychromatic_with(&chi, d, CheckOptions { range: XRange::Paper, ..Default::default() })?;
        if fast.polychromatic != paper.polychromatic {
            summary.range_disagreements += 1;
        }
        if fast.polychromatic {
            summary.polychromatic += 1;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{basic_coloring, fixture};
    use proptest::prelude::*;

    #[test]
    fn zero_coloring_fails_on_the_full_cube() {
        for ell in 1..4 {
            let cols: Vec<&[i64]> = vec![&[0]; ell + 1];
            let chi = LinearColoring::from_raw(ell, &[2], &cols).unwrap();
            let r = explicit_check(&chi, ell + 1, ell + 1).unwrap();
            assert_eq!(r.all_qd_count, 1);
            assert_eq!(r.failing_qd.unwrap().to_string(), "*".repeat(ell + 1));
            assert_eq!(r.missing_colors.unwrap(), vec![GroupElement(vec![1])]);
        }
    }

    #[test]
    fn basic_edge_coloring_succeeds() {
        let r = explicit_check(&basic_coloring(1, 3).unwrap(), 4, 3).unwrap();
        assert_eq!(r.all_qd_count, 8);
        assert!(r.success());
    }

    #[test]
    fn chi26_succeeds_in_q7() {
        let r = explicit_check(&fixture("chi26").unwrap(), 7, 6).unwrap();
        assert_eq!(r.all_qd_count, 14);
        assert!(r.success());
    }

    #[test]
    fn budget_and_domain_errors() {
        let chi = fixture("chi26").unwrap();
        assert!(matches!(explicit_check_with_budget(&chi, 9, 6, 100), Err(Error::Resource(_))));
        assert!(matches!(explicit_check(&chi, 5, 6), Err(Error::Domain(_))));
        assert!(matches!(explicit_check(&chi, 25, 6), Err(Error::Resource(_))));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed_witness(&CountingVector(vec![0, 0, 0, 0])).to_string(), "***");
        assert_eq!(embed_witness(&CountingVector(vec![1, 3, 0, 2])).to_string(), "1*111**11");
        assert_eq!(embed_witness(&CountingVector(vec![0, 1, 1, 0])).to_string(), "*1*1*");
    }

    #[test]
    fn cross_validate_examples() {
        assert!(cross_validate(&fixture("chi26").unwrap(), 6, 7).unwrap());
        let zero = LinearColoring::from_raw(2, &[2], &[&[0], &[0], &[0]]).unwrap();
        assert!(cross_validate(&zero, 3, 3).unwrap());
        let v0 = LinearColoring::from_raw(2, &[3], &[&[1], &[0], &[0]]).unwrap();
        assert!(cross_validate(&v0, 3, 3).unwrap());
        assert!(!explicit_check(&v0, 3, 3).unwrap().success());
    }

    #[test]
    fn explicit_failure_order_is_deterministic() {
        let v0 = LinearColoring::from_raw(1, &[3], &[&[1], &[0]]).unwrap();
        let r = explicit_check(&v0, 4, 2).unwrap();
        // first star set {0,1}, fixed bits 00
        assert_eq!(r.failing_qd.unwrap().to_string(), "**00");
    }

    proptest! {
        #[test]
        fn embed_round_trips(x in prop::collection::vec(0u64..6, 2..8)) {
            let x = CountingVector(x);
            let s = embed_witness(&x);
            prop_assert_eq!(s.n() as u64, (x.len() - 1) as u64 + x.total());
            prop_assert_eq!(s.counting_vector().unwrap(), x);
        }
    }
}
