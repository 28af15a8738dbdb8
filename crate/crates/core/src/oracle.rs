//! Brute-force reference implementations by exhaustive enumeration.
//!
//! These deliberately avoid the normal-form machinery: cocycles, coboundaries,
//! fixed points, and norms are computed by looping over group elements and
//! applying the action pointwise, so they can serve as an independent check of
//! the lattice-based cohomology. A budget caps the group sizes the oracle will
//! touch.

use crate::abelian::{FinAbGroup, GroupElement, Subgroup};
use crate::gamma::GammaModule;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Cap on the group cardinalities the oracle will enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_order: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_order: 4096 }
    }
}

impl EnumerationBudget {
    pub fn new(max_order: u128) -> Result<Self> {
        if max_order < 1 {
            return Err(Error::InvalidRange("budget must be at least 1".into()));
        }
        Ok(EnumerationBudget { max_order })
    }

    fn admit(&self, order: u128) -> Result<()> {
        if order > self.max_order {
            return Err(Error::BudgetExceeded {
                order,
                max_order: self.max_order,
            });
        }
        Ok(())
    }
}

/// Result of an enumerated cohomology computation: the number of classes and
/// the lexicographically smallest element of each class, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub count: u128,
    pub representatives: Vec<GroupElement>,
}

/// Degree-1 cohomology by enumeration: cocycles are the elements with
/// `a + gamma(a) = 0`, coboundaries the elements `b - gamma(b)`.
pub fn h1_enumerate(m: &GammaModule, budget: &EnumerationBudget) -> Result<Enumerated> {
    budget.admit(m.group().cardinality())?;
    let cocycles: Vec<GroupElement> = m
        .group()
        .elements()
        .filter(|a| m.apply(a).add(a).is_zero())
        .collect();
    let coboundaries: BTreeSet<GroupElement> =
        m.group().elements().map(|b| b.sub(&m.apply(&b))).collect();
    Ok(classes(cocycles, &coboundaries))
}

/// Degree-2 cohomology by enumeration: fixed points modulo norms
/// `a + gamma(a)`.
pub fn h2_enumerate(m: &GammaModule, budget: &EnumerationBudget) -> Result<Enumerated> {
    budget.admit(m.group().cardinality())?;
    let fixed: Vec<GroupElement> = m.group().elements().filter(|a| m.apply(a) == *a).collect();
    let norms: BTreeSet<GroupElement> = m.group().elements().map(|a| a.add(&m.apply(&a))).collect();
    Ok(classes(fixed, &norms))
}

fn classes(numerator: Vec<GroupElement>, denominator: &BTreeSet<GroupElement>) -> Enumerated {
    assert_eq!(
        numerator.len() % denominator.len(),
        0,
        "reduction subgroup order must divide the cocycle count"
    );
    let count = (numerator.len() / denominator.len()) as u128;
    let mut representatives = BTreeSet::new();
    for a in &numerator {
        let least = denominator
            .iter()
            .map(|b| a.add(b))
            .min()
            .expect("reduction subgroup contains zero");
        representatives.insert(least);
    }
    assert_eq!(representatives.len() as u128, count);
    Enumerated {
        count,
        representatives: representatives.into_iter().collect(),
    }
}

/// All subgroups, each in canonical form, ordered by cardinality and then by
/// basis. Cyclic subgroups are generated first and then closed under joins
/// until a fixpoint.
pub fn enumerate_subgroups(g: &FinAbGroup, budget: &EnumerationBudget) -> Result<Vec<Subgroup>> {
    budget.admit(g.cardinality())?;
    let mut known: BTreeSet<Subgroup> = BTreeSet::new();
    known.insert(g.trivial_subgroup());
    for e in g.elements() {
        known.insert(g.subgroup(&[e])?);
    }
    loop {
        let snapshot: Vec<Subgroup> = known.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let mut gens = snapshot[i].generators();
                gens.extend(snapshot[j].generators());
                let join = g.subgroup(&gens)?;
                grew |= known.insert(join);
            }
        }
        if !grew {
            break;
        }
    }
    Ok(known.into_iter().collect())
}

/// Checks that the enumerated class count, the closed-form fixed-point
/// formula, and the rank from the normal-form computation all agree.
pub fn verify_formula(m: &GammaModule, budget: &EnumerationBudget) -> Result<bool> {
    let enumerated = h1_enumerate(m, budget)?.count;
    let formula = m.h1_count_formula();
    let rank = m.h1().rank;
    Ok(enumerated == formula && formula == 1u128 << rank)
}
