//! Finite abelian groups presented as direct sums of cyclic groups.
//!
//! A [`FactoredAbelianGroup`] is a *presentation* `Z/m_0 ⊕ … ⊕ Z/m_n`: the
//! component order is kept exactly as given, because coefficient columns of a
//! coloring are written against those components. Isomorphism classes are
//! compared through [`FactoredAbelianGroup::canonical_form`], which returns the
//! invariant-factor presentation (`m_0 | m_1 | … | m_n`).
//!
//! Elements are residue vectors. Every element also has a dense index in
//! `[0, order)` (mixed radix, component 0 most significant) so that index order
//! and lexicographic residue order coincide; the search engine works on indices.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FactoredAbelianGroup {
    moduli: Vec<u64>,
    strides: Vec<u64>,
    order: u64,
    exponent: u64,
}

/// A residue vector; `residues[i]` lies in `[0, m_i)` of the group it was built for.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<u64>> for FactoredAbelianGroup {
    type Error = Error;

    fn try_from(moduli: Vec<u64>) -> Result<Self> {
        FactoredAbelianGroup::new(moduli)
    }
}

impl From<FactoredAbelianGroup> for Vec<u64> {
    fn from(g: FactoredAbelianGroup) -> Self {
        g.moduli
    }
}

impl fmt::Display for FactoredAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "Z/1");
        }
        for (i, m) in self.moduli.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Z/{m}")?;
        }
        Ok(())
    }
}

impl FactoredAbelianGroup {
    /// Builds `⊕ Z/m_i`. Every modulus must be at least 2; the empty list is the trivial group.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::Domain(format!("modulus {bad} is below 2")));
        }
        let mut order: u64 = 1;
        for &m in &moduli {
            order = order
                .checked_mul(m)
                .ok_or_else(|| Error::Resource("group order overflows u64".into()))?;
        }
        let exponent = moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        let mut strides = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(FactoredAbelianGroup { moduli, strides, order, exponent })
    }

    pub fn trivial() -> Self {
        FactoredAbelianGroup::new(Vec::new()).expect("empty moduli list is valid")
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        if m == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![m])
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic components in this presentation.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// lcm of the moduli; annihilates every element.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// Builds an element from arbitrary (possibly negative) integers, reducing each into `[0, m_i)`.
    pub fn element(&self, raw: &[i64]) -> Result<GroupElement> {
        if raw.len() != self.moduli.len() {
            return Err(Error::Structural(format!(
                "element has {} residues but {} has {} components",
                raw.len(),
                self,
                self.moduli.len()
            )));
        }
        Ok(GroupElement(
            raw.iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| r.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.moduli.len() && g.0.iter().zip(&self.moduli).all(|(&r, &m)| r < m)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Structural(format!("{g} is not an element of {self}")))
        }
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| (a + b) % m)
                .collect(),
        ))
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter().zip(&self.moduli).map(|(&a, &m)| (m - a) % m).collect(),
        ))
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let minus_h = self.neg(h)?;
        self.add(g, &minus_h)
    }

    pub fn scalar_mul(&self, k: u64, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement(
            g.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| ((k % m) as u128 * a as u128 % m as u128) as u64)
                .collect(),
        ))
    }

    /// Order of `g` as a group element.
    pub fn element_order(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        Ok(g.0
            .iter()
            .zip(&self.moduli)
            .fold(1u64, |acc, (&a, &m)| acc.lcm(&(m / m.gcd(&a)))))
    }

    /// Dense index of `g` in `[0, order)`; agrees with lexicographic residue order.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.0.iter().zip(&self.strides).map(|(&r, &s)| r * s).sum::<u64>() as usize)
    }

    /// Inverse of [`index_of`](Self::index_of). Panics if `idx >= order`.
    pub fn element_at(&self, idx: usize) -> GroupElement {
        assert!((idx as u64) < self.order, "element index {idx} out of range");
        let idx = idx as u64;
        GroupElement(
            self.moduli
                .iter()
                .zip(&self.strides)
                .map(|(&m, &s)| (idx / s) % m)
                .collect(),
        )
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// Addition table over dense indices: `table[a * order + b] = index(a + b)`.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.order as usize;
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = vec![0usize; n * n];
        for (a, ga) in elems.iter().enumerate() {
            for (b, gb) in elems.iter().enumerate() {
                let sum = self.add(ga, gb).expect("elements of self");
                table[a * n + b] = self.index_of(&sum).expect("element of self");
            }
        }
        table
    }

    /// Membership mask (by index) of the subgroup generated by `columns`.
    pub fn generated_subgroup(&self, columns: &[GroupElement]) -> Result<Vec<bool>> {
        for c in columns {
            self.check(c)?;
        }
        let n = self.order as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut frontier = vec![self.zero()];
        while let Some(g) = frontier.pop() {
            for c in columns {
                let next = self.add(&g, c)?;
                let idx = self.index_of(&next)?;
                if !member[idx] {
                    member[idx] = true;
                    frontier.push(next);
                }
            }
        }
        Ok(member)
    }

    /// True iff `columns` generate the whole group.
    pub fn is_generating(&self, columns: &[GroupElement]) -> Result<bool> {
        Ok(self.generated_subgroup(columns)?.iter().all(|&b| b))
    }

    /// Invariant-factor presentation `m_0 | m_1 | … | m_n` of the same group.
    pub fn canonical_form(&self) -> FactoredAbelianGroup {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &m in &self.moduli {
            for (p, e) in factorize(m) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        let parts: Vec<(u64, Vec<u32>)> = by_prime
            .into_iter()
            .map(|(p, mut exps)| {
                exps.sort_unstable_by(|a, b| b.cmp(a));
                (p, exps)
            })
            .collect();
        invariant_factors(&parts)
    }

    pub fn is_isomorphic(&self, other: &FactoredAbelianGroup) -> bool {
        self.canonical_form().moduli == other.canonical_form().moduli
    }

    /// Automorphisms as permutations of element indices, at most `limit` of them.
    ///
    /// An automorphism is fixed by the images of the component generators; the
    /// image of generator `i` must be killed by `m_i`, and the induced map must
    /// be onto. The identity is always first. Any subset of the automorphism
    /// group is returned when `limit` cuts the enumeration short.
    pub fn automorphisms(&self, limit: usize) -> Vec<Vec<usize>> {
        if limit == 0 {
            return Vec::new();
        }
        let n = self.order as usize;
        let elems: Vec<GroupElement> = self.elements().collect();
        let candidates: Vec<Vec<usize>> = self
            .moduli
            .iter()
            .map(|&m| {
                (0..n)
                    .filter(|&i| self.scalar_mul(m, &elems[i]).unwrap().is_zero())
                    .collect()
            })
            .collect();
        // Identity first: each generator maps to itself.
        let identity: Vec<usize> = (0..n).collect();
        let mut out = vec![identity.clone()];
        let mut images = vec![0usize; self.moduli.len()];
        let add = self.addition_table();
        self.automorphisms_rec(0, &candidates, &mut images, &add, &elems, limit, &mut out, &identity);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn automorphisms_rec(
        &self,
        depth: usize,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        add: &[usize],
        elems: &[GroupElement],
        limit: usize,
        out: &mut Vec<Vec<usize>>,
        identity: &[usize],
    ) {
        if out.len() >= limit {
            return;
        }
        if depth == candidates.len() {
            let n = self.order as usize;
            let mut table = vec![0usize; n];
            let mut seen = vec![false; n];
            for (idx, g) in elems.iter().enumerate() {
                let mut acc = 0usize;
                for (comp, &r) in g.0.iter().enumerate() {
                    for _ in 0..r {
                        acc = add[acc * n + images[comp]];
                    }
                }
                if seen[acc] {
                    return;
                }
                seen[acc] = true;
                table[idx] = acc;
            }
            if table != identity {
                out.push(table);
            }
            return;
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            self.automorphisms_rec(depth + 1, candidates, images, add, elems, limit, out, identity);
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// All partitions of `n` as non-increasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

// `parts[p]` lists the exponents of the p-primary cyclic factors, non-increasing.
fn invariant_factors(parts: &[(u64, Vec<u32>)]) -> FactoredAbelianGroup {
    let len = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, exps) in parts {
        for (k, &e) in exps.iter().enumerate() {
            factors[k] *= p.pow(e);
        }
    }
    factors.reverse();
    FactoredAbelianGroup::new(factors).expect("invariant factors are at least 2")
}

/// One invariant-factor representative per isomorphism class of abelian groups of order `m`.
///
/// Sorted by number of components, then lexicographically, so cyclic groups come first.
pub fn groups_of_order(m: u64) -> Result<Vec<FactoredAbelianGroup>> {
    if m == 0 {
        return Err(Error::Domain("group order must be at least 1".into()));
    }
    let primes = factorize(m);
    let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
    for &(p, e) in &primes {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(e) {
                let mut c = combo.clone();
                c.push((p, part));
                next.push(c);
            }
        }
        combos = next;
    }
    let mut groups: Vec<FactoredAbelianGroup> = combos.iter().map(|c| invariant_factors(c)).collect();
    groups.sort_by(|a, b| a.moduli.len().cmp(&b.moduli.len()).then_with(|| a.moduli.cmp(&b.moduli)));
    Ok(groups)
}
