//! Deciding whether a linear `Q_ℓ`-coloring is `d`-polychromatic for every `n ≥ d`.
//!
//! A `Q_d` is identified by its counting vector `x = (x_0, …, x_d)`. Choosing
//! `ℓ` of its `d` stars (a [`StarPlacement`]) and instantiating the other stars
//! arbitrarily yields sub-`Q_ℓ`s whose counting vectors are `y + w`, where
//! `y_i` sums the `x` entries between chosen stars `i` and `i+1` and `w_i`
//! counts the skipped stars set to 1 in that stretch.
//!
//! The coloring is linear, so colors depend on `x` only through scalar
//! multiples of group elements: each entry may be reduced modulo the group
//! exponent `L`, and the outer entries `x_0`, `x_d` only translate the whole
//! color set. The checker therefore scans `x_0 = x_d = 0` and
//! `x_1..x_{d-1} ∈ [0, L)`.
//!
//! Two implementations live here. [`facet_colors`] follows the definition
//! literally and is used as a reference; [`FastChecker`] precomputes, per star
//! placement, the set of offsets `Σ w_i c_i` and its translates, walks `x` as
//! an odometer and keeps each placement's base color `Σ y_i c_i` up to date
//! with one table lookup per changed digit.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abelian::{FactoredAbelianGroup, GroupElement};
use crate::coloring::{CountingVector, LinearColoring};
use crate::error::{Error, Result};

/// Largest group order the bitmask checker supports.
pub const MAX_FAST_ORDER: u64 = 128;

/// Chosen star positions `s_1 < … < s_ℓ` in `1..=d`, framed by `s_0 = 0` and `s_{ℓ+1} = d+1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarPlacement {
    s: Vec<usize>,
}

impl StarPlacement {
    pub fn new(d: usize, stars: &[usize]) -> Result<Self> {
        let mut s = Vec::with_capacity(stars.len() + 2);
        s.push(0);
        s.extend_from_slice(stars);
        s.push(d + 1);
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Structural(format!(
                "star positions {stars:?} are not strictly increasing within 1..={d}"
            )));
        }
        Ok(StarPlacement { s })
    }

    /// Every placement of `ell` stars among `d`, in lexicographic order.
    pub fn all(ell: usize, d: usize) -> Vec<StarPlacement> {
        fn rec(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<StarPlacement>) {
            if left == 0 {
                out.push(StarPlacement::new(d, cur).expect("increasing by construction"));
                return;
            }
            for p in start..=d + 1 - left {
                cur.push(p);
                rec(p + 1, d, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if ell <= d {
            rec(1, d, ell, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn ell(&self) -> usize {
        self.s.len() - 2
    }

    pub fn d(&self) -> usize {
        self.s[self.s.len() - 1] - 1
    }

    /// `s_1..s_ℓ` without sentinels.
    pub fn stars(&self) -> &[usize] {
        &self.s[1..self.s.len() - 1]
    }

    /// `s_{i+1} - s_i` for `i = 0..=ℓ`; segment `i` may absorb `gap - 1` skipped stars.
    pub fn gaps(&self) -> Vec<usize> {
        self.s.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Segment containing counting-vector position `k` of the enclosing `Q_d`.
    pub fn segment_of(&self, k: usize) -> usize {
        self.s.windows(2).position(|w| w[0] <= k && k < w[1]).expect("k within 0..=d")
    }
}

/// Which range the interior entries `x_1..x_{d-1}` are scanned over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XRange {
    /// `[0, L)` with `L` the group exponent.
    #[default]
    Exponent,
    /// `[0, M)` with `M` the group order.
    Paper,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub range: XRange,
    /// Keep scanning after the first failure and count every failing `x`.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub polychromatic: bool,
    /// Lexicographically smallest failing `Q_d` counting vector (`x_0 = x_d = 0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CountingVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub missing_colors: Option<Vec<GroupElement>>,
    /// Number of counting vectors examined.
    pub vectors_checked: u64,
    /// Total failing vectors; only filled in exhaustive mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_vectors: Option<u64>,
}

/// Counting vectors of every `Q_ℓ` in a `Q_d` with counting vector `x` whose chosen stars sit at `sp`.
///
/// Returned in mixed-radix lexicographic order of `w`.
pub fn sub_counting_vectors(x: &CountingVector, sp: &StarPlacement) -> Result<Vec<CountingVector>> {
    if x.len() != sp.d() + 1 {
        return Err(Error::Structural(format!(
            "counting vector {x} has length {}, placement expects {}",
            x.len(),
            sp.d() + 1
        )));
    }
    let gaps = sp.gaps();
    let y: Vec<u64> = sp.s.windows(2).map(|w| x.0[w[0]..w[1]].iter().sum()).collect();
    let mut out = Vec::new();
    let mut w = vec![0u64; gaps.len()];
    loop {
        out.push(CountingVector(y.iter().zip(&w).map(|(a, b)| a + b).collect()));
        let mut i = gaps.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            w[i] += 1;
            if (w[i] as usize) < gaps[i] {
                break;
            }
            w[i] = 0;
        }
    }
}

fn check_dims(chi: &LinearColoring, d: usize) -> Result<()> {
    if chi.ell() > d {
        return Err(Error::Domain(format!("ell = {} exceeds d = {d}", chi.ell())));
    }
    Ok(())
}

/// The colors of all `Q_ℓ`s inside a `Q_d` with counting vector `x`, computed from the definition.
pub fn facet_colors(chi: &LinearColoring, x: &CountingVector) -> Result<BTreeSet<GroupElement>> {
    if x.is_empty() {
        return Err(Error::Structural("empty counting vector".into()));
    }
    let d = x.len() - 1;
    check_dims(chi, d)?;
    let mut colors = BTreeSet::new();
    for sp in StarPlacement::all(chi.ell(), d) {
        for v in sub_counting_vectors(x, &sp)? {
            colors.insert(chi.evaluate(&v)?);
        }
    }
    Ok(colors)
}

pub fn is_polychromatic(chi: &LinearColoring, d: usize) -> Result<Verdict> {
    is_polychromatic_with(chi, d, CheckOptions::default())
}

pub fn is_polychromatic_with(chi: &LinearColoring, d: usize, opts: CheckOptions) -> Result<Verdict> {
    check_dims(chi, d)?;
    let tables = GroupTables::new(chi.group())?;
    let layout = Layout::new(chi.ell(), d)?;
    let range = match opts.range {
        XRange::Exponent => chi.group().exponent(),
        XRange::Paper => chi.group().order(),
    };
    let cols = tables.column_indices(chi)?;
    let mut checker = FastChecker::new(&tables, &layout, range);
    let outcome = checker.check(&cols, opts.exhaustive);
    let group = chi.group();
    Ok(match outcome.first_failure {
        None => Verdict {
            polychromatic: true,
            witness: None,
            missing_colors: None,
            vectors_checked: outcome.checked,
            failing_vectors: opts.exhaustive.then_some(0),
        },
        Some((x, seen)) => Verdict {
            polychromatic: false,
            witness: Some(x),
            missing_colors: Some(
                (0..tables.order)
                    .filter(|&i| seen & (1u128 << i) == 0)
                    .map(|i| group.element_at(i))
                    .collect(),
            ),
            vectors_checked: outcome.checked,
            failing_vectors: opts.exhaustive.then_some(outcome.failures),
        },
    })
}

/// Dense-index arithmetic for one group, shared by every coloring checked over it.
#[derive(Clone, Debug)]
pub struct GroupTables {
    order: usize,
    add: Vec<u8>,
    full: u128,
}

impl GroupTables {
    pub fn new(group: &FactoredAbelianGroup) -> Result<Self> {
        if group.order() > MAX_FAST_ORDER {
            return Err(Error::Resource(format!(
                "group order {} exceeds the supported maximum {MAX_FAST_ORDER}",
                group.order()
            )));
        }
        let order = group.order() as usize;
        let add = group.addition_table().into_iter().map(|i| i as u8).collect();
        let full = if order == 128 { u128::MAX } else { (1u128 << order) - 1 };
        Ok(GroupTables { order, add, full })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Mask with one bit per group element.
    pub fn full_mask(&self) -> u128 {
        self.full
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    pub fn column_indices(&self, chi: &LinearColoring) -> Result<Vec<u8>> {
        chi.columns()
            .iter()
            .map(|c| chi.group().index_of(c).map(|i| i as u8))
            .collect()
    }
}

/// Star placements of `(ℓ, d)` and, for each, which segment every position falls into.
#[derive(Clone, Debug)]
pub struct Layout {
    ell: usize,
    d: usize,
    placements: Vec<StarPlacement>,
    gaps: Vec<Vec<usize>>,
    // segment[k][p]: segment of position k under placement p
    segment: Vec<Vec<u8>>,
}

impl Layout {
    pub fn new(ell: usize, d: usize) -> Result<Self> {
        if ell == 0 || ell > d {
            return Err(Error::Domain(format!("need 1 <= ell <= d, got ell={ell}, d={d}")));
        }
        let placements = StarPlacement::all(ell, d);
        let gaps = placements.iter().map(|p| p.gaps()).collect();
        let segment = (0..=d)
            .map(|k| placements.iter().map(|p| p.segment_of(k) as u8).collect())
            .collect();
        Ok(Layout { ell, d, placements, gaps, segment })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn placements(&self) -> &[StarPlacement] {
        &self.placements
    }
}

pub(crate) struct Outcome {
    pub first_failure: Option<(CountingVector, u128)>,
    pub checked: u64,
    pub failures: u64,
}

/// Reusable scratch state for checking many colorings over one group and layout.
pub struct FastChecker<'a> {
    tables: &'a GroupTables,
    layout: &'a Layout,
    range: u64,
    offset_mask: Vec<u128>,
    offset_list: Vec<Vec<u8>>,
    translates: Vec<u128>,
    bases: Vec<u8>,
    digits: Vec<u64>,
}

impl<'a> FastChecker<'a> {
    /// `range` must be a multiple of the group exponent.
    pub fn new(tables: &'a GroupTables, layout: &'a Layout, range: u64) -> Self {
        let np = layout.placements.len();
        FastChecker {
            tables,
            layout,
            range: range.max(1),
            offset_mask: vec![0; np],
            offset_list: vec![Vec::new(); np],
            translates: vec![0; np * tables.order],
            bases: vec![0; np],
            digits: vec![0; layout.d.saturating_sub(1)],
        }
    }

    fn prepare_offsets(&mut self, cols: &[u8]) {
        let t = self.tables;
        for (p, gaps) in self.layout.gaps.iter().enumerate() {
            let mut mask: u128 = 1;
            for (seg, &gap) in gaps.iter().enumerate() {
                let c = cols[seg];
                let mut grown = mask;
                let mut cur = mask;
                for _ in 1..gap {
                    let mut next = 0u128;
                    let mut rest = cur;
                    while rest != 0 {
                        let e = rest.trailing_zeros() as u8;
                        rest &= rest - 1;
                        next |= 1u128 << t.add(e, c);
                    }
                    cur = next;
                    grown |= next;
                }
                mask = grown;
            }
            self.offset_mask[p] = mask;
            let list = &mut self.offset_list[p];
            list.clear();
            let mut rest = mask;
            while rest != 0 {
                list.push(rest.trailing_zeros() as u8);
                rest &= rest - 1;
            }
        }
    }

    fn prepare_translates(&mut self) {
        let t = self.tables;
        let m = t.order;
        for (p, list) in self.offset_list.iter().enumerate() {
            for g in 0..m {
                let mut mask = 0u128;
                for &o in list {
                    mask |= 1u128 << t.add(g as u8, o);
                }
                self.translates[p * m + g] = mask;
            }
        }
    }

    /// Color mask of the `Q_d` with arbitrary counting vector `x` (length `d+1`).
    pub fn facet_mask(&mut self, cols: &[u8], x: &[u64]) -> u128 {
        self.prepare_offsets(cols);
        let t = self.tables;
        let mut seen = 0u128;
        for p in 0..self.layout.placements.len() {
            let mut base = 0u8;
            for (k, &xk) in x.iter().enumerate() {
                let c = cols[self.layout.segment[k][p] as usize];
                for _ in 0..xk % (t.order as u64).max(1) {
                    base = t.add(base, c);
                }
            }
            for &o in &self.offset_list[p] {
                seen |= 1u128 << t.add(base, o);
            }
        }
        seen
    }

    /// Quick necessary test: is every color present when `x = 0`?
    pub fn passes_zero(&mut self, cols: &[u8]) -> bool {
        self.prepare_offsets(cols);
        self.offset_mask.iter().fold(0u128, |a, &m| a | m) == self.tables.full
    }

    pub(crate) fn check(&mut self, cols: &[u8], exhaustive: bool) -> Outcome {
        self.prepare_offsets(cols);
        self.scan(cols, exhaustive)
    }

    /// Full check of the coloring last given to [`passes_zero`](Self::passes_zero), reusing its offsets.
    pub fn scan_after_zero(&mut self, cols: &[u8]) -> (bool, u64) {
        let out = self.scan(cols, false);
        (out.first_failure.is_none(), out.checked)
    }

    fn scan(&mut self, cols: &[u8], exhaustive: bool) -> Outcome {
        let d = self.layout.d;
        let full = self.tables.full;
        let mut out = Outcome { first_failure: None, checked: 1, failures: 0 };

        let zero_mask = self.offset_mask.iter().fold(0u128, |a, &m| a | m);
        if zero_mask != full {
            out.failures = 1;
            out.first_failure = Some((CountingVector::zeros(d + 1), zero_mask));
            if !exhaustive {
                return out;
            }
        }
        if d < 2 || self.range == 1 {
            return out;
        }

        self.prepare_translates();
        let m = self.tables.order;
        let np = self.layout.placements.len();
        self.bases.iter_mut().for_each(|b| *b = 0);
        self.digits.iter_mut().for_each(|x| *x = 0);
        let last = self.digits.len() - 1;

        loop {
            // odometer step over x_1..x_{d-1}, x_{d-1} fastest
            let mut k = last;
            loop {
                self.digits[k] += 1;
                let pos = k + 1;
                let seg = &self.layout.segment[pos];
                // Both a unit step and a wrap by -(range-1) add one column, as range * c = 0.
                for p in 0..np {
                    self.bases[p] = self.tables.add(self.bases[p], cols[seg[p] as usize]);
                }
                if self.digits[k] < self.range {
                    break;
                }
                self.digits[k] = 0;
                if k == 0 {
                    return out;
                }
                k -= 1;
            }

            out.checked += 1;
            let mut seen = 0u128;
            for p in 0..np {
                seen |= self.translates[p * m + self.bases[p] as usize];
            }
            if seen != full {
                out.failures += 1;
                if out.first_failure.is_none() {
                    let mut x = vec![0u64; d + 1];
                    x[1..d].copy_from_slice(&self.digits);
                    out.first_failure = Some((CountingVector(x), seen));
                }
                if !exhaustive {
                    return out;
                }
            }
        }
    }

    /// True iff the coloring with these column indices passes every scanned `x`.
    pub fn is_polychromatic(&mut self, cols: &[u8]) -> (bool, u64) {
        let out = self.check(cols, false);
        (out.first_failure.is_none(), out.checked)
    }
}
