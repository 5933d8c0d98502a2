//! Explicit counterexamples for linear `Q_{d-1}`-colorings with three or more colors.
//!
//! Write `h_i` for the color of the `i`-th unit counting vector. For a `Q_d`
//! with counting vector `x`, the two facets that drop star `i+1` have colors
//! `X + H_i` and `X + H_i + h_i`, where `X` is the color of the first facet and
//! `H_i = Σ_{j=1}^{i} x_j (h_j - h_{j-1})`. Walking the nonzero `h` indices
//! `i_1 < … < i_k` and choosing each new `x` entry from `{0, |Z|-1, 1}` keeps
//! one fixed color `X + g` out of every facet, so the `Q_d` misses it.

use serde::{Deserialize, Serialize};

use crate::abelian::{FactoredAbelianGroup, GroupElement};
use crate::coloring::{CountingVector, LinearColoring};
use crate::error::{Error, Result};
use crate::polycheck::facet_colors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryInput {
    pub d: usize,
    pub group: FactoredAbelianGroup,
    /// `h_0..h_{d-1}`, the coloring's columns.
    pub h: Vec<GroupElement>,
}

impl AdversaryInput {
    pub fn new(d: usize, group: FactoredAbelianGroup, h: Vec<GroupElement>) -> Result<Self> {
        if d < 3 {
            return Err(Error::Domain(format!("the construction needs d >= 3, got {d}")));
        }
        if group.order() < 3 {
            return Err(Error::Domain(format!(
                "the construction needs at least 3 colors, {group} has {}",
                group.order()
            )));
        }
        if h.len() != d {
            return Err(Error::Structural(format!("need d = {d} values h_i, got {}", h.len())));
        }
        if let Some(bad) = h.iter().find(|e| !group.contains(e)) {
            return Err(Error::Structural(format!("{bad} is not an element of {group}")));
        }
        Ok(AdversaryInput { d, group, h })
    }

    pub fn from_coloring(chi: &LinearColoring) -> Result<Self> {
        Self::new(chi.ell() + 1, chi.group().clone(), chi.columns().to_vec())
    }

    pub fn coloring(&self) -> LinearColoring {
        LinearColoring::new(self.d - 1, self.group.clone(), self.h.clone()).expect("validated input")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// All `x` up to the first nonzero index are 0.
    #[serde(rename = "base")]
    Base,
    #[serde(rename = "1a")]
    OneA,
    #[serde(rename = "1b")]
    OneB,
    #[serde(rename = "1c")]
    OneC,
    #[serde(rename = "2-zero")]
    TwoZero,
    #[serde(rename = "2-minus")]
    TwoMinus,
    /// Every `h_i` is 0; each facet gets color 0.
    #[serde(rename = "monochromatic")]
    Monochromatic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: Case,
    /// Index into `x` that this step assigned.
    pub position: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryWitness {
    pub x: CountingVector,
    pub g: GroupElement,
    /// `X + g`, absent from every facet.
    pub missing_color: GroupElement,
    pub trace: Vec<TraceStep>,
    /// Smallest `n` in which `x` embeds: `d + Σ x_i`.
    pub min_n: u64,
}

impl AdversaryWitness {
    pub fn cases(&self) -> Vec<Case> {
        self.trace.iter().map(|s| s.case).collect()
    }
}

/// Lexicographically smallest element outside `{0, h_first}`.
pub fn choose_g(group: &FactoredAbelianGroup, h_first: &GroupElement) -> Result<GroupElement> {
    if group.order() < 3 {
        return Err(Error::Domain(format!("{group} has fewer than 3 elements")));
    }
    Ok(group
        .elements()
        .find(|e| !e.is_zero() && e != h_first)
        .expect("order >= 3 leaves a third element"))
}

// H_{pos} = H_{pos-1} + x_pos (h_pos - h_{pos-1})
fn advance(group: &FactoredAbelianGroup, big_h: &GroupElement, h: &[GroupElement], pos: usize, x: u64) -> GroupElement {
    let step = group.sub(&h[pos], &h[pos - 1]).expect("validated");
    group.add(big_h, &group.scalar_mul(x, &step).expect("validated")).expect("validated")
}

pub fn construct_witness(inp: &AdversaryInput) -> Result<AdversaryWitness> {
    let group = &inp.group;
    let h = &inp.h;
    let d = inp.d;
    let minus_one = group.order() - 1;
    let mut x = vec![0u64; d + 1];
    let mut trace = Vec::new();

    let nonzero: Vec<usize> = (0..d).filter(|&i| !h[i].is_zero()).collect();
    let g = match nonzero.first() {
        None => {
            trace.push(TraceStep { case: Case::Monochromatic, position: 0, value: 0 });
            choose_g(group, &group.zero())?
        }
        Some(&first) => {
            trace.push(TraceStep { case: Case::Base, position: first, value: 0 });
            choose_g(group, &h[first])?
        }
    };

    let add = |a: &GroupElement, b: &GroupElement| group.add(a, b).expect("validated");
    let sub = |a: &GroupElement, b: &GroupElement| group.sub(a, b).expect("validated");

    let mut big_h = group.zero();
    for pair in nonzero.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b == a + 1 {
            let (case, value) = if g != add(&big_h, &h[b]) {
                (Case::OneA, 0)
            } else if g != sub(&add(&big_h, &h[a]), &h[b]) {
                (Case::OneB, minus_one)
            } else {
                (Case::OneC, 1)
            };
            x[b] = value;
            big_h = advance(group, &big_h, h, b, value);
            trace.push(TraceStep { case, position: b, value });
        } else {
            let (case, value) = if g != add(&big_h, &h[b]) {
                (Case::TwoZero, 0)
            } else {
                (Case::TwoMinus, minus_one)
            };
            x[a + 1] = value;
            big_h = advance(group, &big_h, h, a + 1, value);
            for pos in a + 2..=b {
                big_h = advance(group, &big_h, h, pos, 0);
            }
            trace.push(TraceStep { case, position: a + 1, value });
        }
    }

    let x = CountingVector(x);
    let chi = inp.coloring();
    // X is the color of the facet that merges x_0 and x_1.
    let mut first_facet = vec![x.0[0] + x.0[1]];
    first_facet.extend_from_slice(&x.0[2..]);
    let big_x = chi.evaluate(&CountingVector(first_facet))?;
    let missing_color = add(&big_x, &g);
    if facet_colors(&chi, &x)?.contains(&missing_color) {
        return Err(Error::Structural(format!(
            "internal: constructed x = {x} does not miss {missing_color}"
        )));
    }
    let min_n = d as u64 + x.total();
    Ok(AdversaryWitness { x, g, missing_color, trace, min_n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::groups_of_order;
    use crate::polycheck::is_polychromatic;
    use proptest::prelude::*;

    fn input(d: usize, moduli: &[u64], h: &[&[i64]]) -> AdversaryInput {
        let g = FactoredAbelianGroup::new(moduli.to_vec()).unwrap();
        let h = h.iter().map(|r| g.element(r).unwrap()).collect();
        AdversaryInput::new(d, g, h).unwrap()
    }

    #[test]
    fn witness_examples() {
        let w = construct_witness(&input(3, &[3], &[&[1], &[0], &[0]])).unwrap();
        assert_eq!(w.x.0, vec![0, 0, 0, 0]);
        assert_eq!(w.g.0, vec![2]);
        assert_eq!(w.cases(), vec![Case::Base]);

        let w = construct_witness(&input(3, &[3], &[&[1], &[2], &[1]])).unwrap();
        assert_eq!(w.x.0, vec![0, 1, 1, 0]);
        assert_eq!(w.g.0, vec![2]);
        assert_eq!(w.cases(), vec![Case::Base, Case::OneC, Case::OneC]);
        assert_eq!(w.min_n, 5);

        let w = construct_witness(&input(3, &[4], &[&[0], &[0], &[0]])).unwrap();
        assert_eq!(w.x.0, vec![0, 0, 0, 0]);
        assert_eq!(w.cases(), vec![Case::Monochromatic]);
    }

    #[test]
    fn scope_errors() {
        let z2 = FactoredAbelianGroup::new(vec![2]).unwrap();
        let h = vec![z2.zero(); 3];
        assert!(matches!(AdversaryInput::new(3, z2.clone(), h), Err(Error::Domain(_))));
        let z3 = FactoredAbelianGroup::new(vec![3]).unwrap();
        assert!(matches!(AdversaryInput::new(2, z3.clone(), vec![z3.zero(); 2]), Err(Error::Domain(_))));
        assert!(matches!(AdversaryInput::new(3, z3.clone(), vec![z3.zero(); 2]), Err(Error::Structural(_))));
        assert!(matches!(choose_g(&z2, &z2.zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn choose_g_examples() {
        let z3 = FactoredAbelianGroup::new(vec![3]).unwrap();
        assert_eq!(choose_g(&z3, &GroupElement(vec![1])).unwrap().0, vec![2]);
        assert_eq!(choose_g(&z3, &GroupElement(vec![2])).unwrap().0, vec![1]);
        let v4 = FactoredAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(choose_g(&v4, &GroupElement(vec![0, 1])).unwrap().0, vec![1, 0]);
    }

    #[test]
    fn every_case_is_reachable() {
        let mut seen = std::collections::HashSet::new();
        for m in 3..=6 {
            for group in groups_of_order(m).unwrap() {
                let elems: Vec<GroupElement> = group.elements().collect();
                for a in &elems {
                    for b in &elems {
                        for c in &elems {
                            for e in &elems {
                                let inp = AdversaryInput::new(4, group.clone(), vec![a.clone(), b.clone(), c.clone(), e.clone()]).unwrap();
                                seen.extend(construct_witness(&inp).unwrap().cases());
                            }
                        }
                    }
                }
            }
        }
        for case in [Case::Base, Case::OneA, Case::OneB, Case::OneC, Case::TwoZero, Case::TwoMinus, Case::Monochromatic] {
            assert!(seen.contains(&case), "{case:?} never exercised");
        }
    }

    fn arb_input() -> impl Strategy<Value = AdversaryInput> {
        (3usize..7, prop::sample::select(vec![vec![3u64], vec![4], vec![2, 2], vec![5], vec![6], vec![2, 3], vec![7], vec![3, 3], vec![2, 4]]))
            .prop_flat_map(|(d, moduli)| {
                let g = FactoredAbelianGroup::new(moduli.clone()).unwrap();
                let el = moduli.iter().map(|&m| 0..m).collect::<Vec<_>>().prop_map(GroupElement);
                prop::collection::vec(el, d).prop_map(move |h| AdversaryInput::new(d, g.clone(), h).unwrap())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

        #[test]
        fn witness_is_sound(inp in arb_input()) {
            let w = construct_witness(&inp).unwrap();
            let chi = inp.coloring();
            prop_assert_eq!(w.x.0[0], 0);
            prop_assert_eq!(w.x.0[inp.d], 0);
            prop_assert!(!facet_colors(&chi, &w.x).unwrap().contains(&w.missing_color));
            prop_assert!(!is_polychromatic(&chi, inp.d).unwrap().polychromatic);
        }

        #[test]
        fn case_relations_hold(inp in arb_input()) {
            let g = &inp.group;
            let h = &inp.h;
            let w = construct_witness(&inp).unwrap();
            let nonzero: Vec<usize> = (0..inp.d).filter(|&i| !h[i].is_zero()).collect();
            for step in &w.trace {
                if step.case == Case::OneC {
                    let b = step.position;
                    prop_assert_eq!(g.scalar_mul(2, &h[b]).unwrap(), h[b - 1].clone());
                }
            }
            // H recomputed from scratch along x; checked at every nonzero index.
            let mut running = g.zero();
            for i in 1..inp.d {
                running = advance(g, &running, h, i, w.x.0[i]);
                let mut fresh = g.zero();
                for j in 1..=i {
                    let diff = g.sub(&h[j], &h[j - 1]).unwrap();
                    fresh = g.add(&fresh, &g.scalar_mul(w.x.0[j], &diff).unwrap()).unwrap();
                }
                prop_assert_eq!(&running, &fresh);
            }
            // The two disqualifying equations of the gap case are never both true.
            for pair in nonzero.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                for big_h in g.elements() {
                    let first = g.add(&big_h, &h[b]).unwrap();
                    let second = g.add(&first, &h[a]).unwrap();
                    prop_assert_ne!(first, second);
                }
            }
        }
    }
}
