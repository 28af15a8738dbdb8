//! The decision procedure for equivariant real structures on a symmetric
//! space, over the abstract datum `(Q, H̄, Z, chi, delta, compat)`.
//!
//! Existence requires, in order: the involutions to be compatible up to inner
//! conjugation, the Galois action on `Q` to stabilize `H̄`, and the
//! obstruction class `Delta_H = chi^* delta`, pushed into the second
//! cohomology of `A = Q/H̄`, to vanish. When a structure exists its
//! equivalence classes are counted by the fixed-point formula on the
//! 2-primary part of `A`; the count is always a power of two.

use crate::abelian::{gcd_u128, FinAbGroup, Homomorphism, Subgroup};
use crate::families::{build_sl_symplectic, SlSymplecticSpec};
use crate::gamma::{CohClass, CohDegree, GammaModule};
use crate::{Error, Result};
use std::fmt;

/// Validated input datum for the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineInput {
    q: GammaModule,
    h_bar: Subgroup,
    z: GammaModule,
    chi: Homomorphism,
    delta: CohClass,
    compat: bool,
}

impl EngineInput {
    /// Validates the cross-field invariants: `h_bar` lives in `Q`, `chi` is
    /// an equivariant map from `Z` to `Q`, and `delta` is a degree-2 class
    /// over `Z`.
    pub fn new(
        q: GammaModule,
        h_bar: Subgroup,
        z: GammaModule,
        chi: Homomorphism,
        delta: CohClass,
        compat: bool,
    ) -> Result<Self> {
        if !h_bar.parent().same_presentation(q.group()) {
            return Err(Error::ParentMismatch(
                "subgroup H must live in the module Q".into(),
            ));
        }
        if !chi.domain().same_presentation(z.group())
            || !chi.codomain().same_presentation(q.group())
        {
            return Err(Error::ParentMismatch(
                "chi must map the center module Z into Q".into(),
            ));
        }
        if chi.then(q.action())? != z.action().then(&chi)? {
            return Err(Error::NotEquivariant);
        }
        if delta.degree() != CohDegree::Two {
            return Err(Error::DegreeMismatch);
        }
        if delta.module() != &z {
            return Err(Error::ParentMismatch(
                "delta must be a class over the center module Z".into(),
            ));
        }
        Ok(EngineInput {
            q,
            h_bar,
            z,
            chi,
            delta,
            compat,
        })
    }

    pub fn q(&self) -> &GammaModule {
        &self.q
    }

    pub fn h_bar(&self) -> &Subgroup {
        &self.h_bar
    }

    pub fn z(&self) -> &GammaModule {
        &self.z
    }

    pub fn chi(&self) -> &Homomorphism {
        &self.chi
    }

    pub fn delta(&self) -> &CohClass {
        &self.delta
    }

    pub fn compat(&self) -> bool {
        self.compat
    }

    /// True when the Galois action on `Q` stabilizes `H̄`. Since the action
    /// is an automorphism of a finite group, stabilizing the generators is
    /// enough.
    pub fn check_stability(&self) -> bool {
        self.h_bar.generators().iter().all(|g| {
            self.h_bar
                .contains(&self.q.apply(g))
                .expect("generator lives in Q")
        })
    }

    /// The module `A = Q/H̄` with the action induced along the projection.
    pub fn quotient_module(&self) -> Result<GammaModule> {
        Ok(self.quotient_with_projection()?.0)
    }

    fn quotient_with_projection(&self) -> Result<(GammaModule, Homomorphism)> {
        if !self.check_stability() {
            return Err(Error::NotStable);
        }
        let (a_group, proj, sections) = self.q.group().quotient_with_sections(&self.h_bar)?;
        let matrix: Vec<Vec<i64>> = sections
            .iter()
            .map(|s| {
                proj.apply(&self.q.apply(s))
                    .expect("section lives in Q")
                    .coords()
                    .to_vec()
            })
            .collect();
        let action = Homomorphism::new(a_group.clone(), a_group.clone(), matrix)?;
        let module = GammaModule::new(a_group, action)?;
        // descent sanity: the induced action commutes with the projection
        assert_eq!(
            proj.then(module.action())?,
            self.q.action().then(&proj)?,
            "induced action must descend from the action on Q"
        );
        Ok((module, proj))
    }

    /// The obstruction `Delta_H`: the degree-2 class over `A` obtained by
    /// pushing `delta` along the projection composed with `chi`.
    pub fn delta_h(&self) -> Result<CohClass> {
        let (a_module, proj) = self.quotient_with_projection()?;
        let composed = self.chi.then(&proj)?;
        self.delta.pushforward(&composed, &a_module)
    }

    /// Runs the three existence conditions in order and, when they all hold,
    /// counts the equivalence classes.
    pub fn decide(&self) -> Decision {
        if !self.compat {
            return Decision {
                exists: false,
                failed_condition: Some(FailedCondition::NotCompatible),
                quotient_module: None,
                num_classes: None,
            };
        }
        if !self.check_stability() {
            return Decision {
                exists: false,
                failed_condition: Some(FailedCondition::NotStable),
                quotient_module: None,
                num_classes: None,
            };
        }
        let (a_module, proj) = self
            .quotient_with_projection()
            .expect("stability was just checked");
        let composed = self
            .chi
            .then(&proj)
            .expect("projection composes with the validated chi");
        let obstruction = self
            .delta
            .pushforward(&composed, &a_module)
            .expect("projection of an equivariant map is equivariant");
        if !obstruction.is_zero() {
            return Decision {
                exists: false,
                failed_condition: Some(FailedCondition::DeltaNonzero),
                quotient_module: Some(a_module),
                num_classes: None,
            };
        }
        let num_classes = class_count(&a_module);
        Decision {
            exists: true,
            failed_condition: None,
            quotient_module: Some(a_module),
            num_classes: Some(num_classes),
        }
    }

    /// Number of equivalence classes of structures; an error when no
    /// structure exists.
    pub fn count_classes(&self) -> Result<u128> {
        let decision = self.decide();
        if !decision.exists {
            return Err(Error::StructureDoesNotExist);
        }
        Ok(decision
            .num_classes
            .expect("existing decisions carry a class count"))
    }
}

/// Class count of a quotient module, with the closed-form formula checked
/// against the cocycle-lattice rank.
fn class_count(a: &GammaModule) -> u128 {
    let count = a.h1_count_formula();
    let rank = a.h1().rank;
    assert_eq!(
        count,
        1u128 << rank,
        "fixed-point formula and cohomology rank must agree"
    );
    count
}

/// The first failing existence condition, in the order the conditions are
/// checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedCondition {
    NotCompatible,
    NotStable,
    DeltaNonzero,
}

impl FailedCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailedCondition::NotCompatible => "not_compatible",
            FailedCondition::NotStable => "not_stable",
            FailedCondition::DeltaNonzero => "delta_nonzero",
        }
    }
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub exists: bool,
    pub failed_condition: Option<FailedCondition>,
    /// `A = Q/H̄` with the induced action; present whenever the stability
    /// condition holds.
    pub quotient_module: Option<GammaModule>,
    /// Number of equivalence classes, a power of two; present iff `exists`.
    pub num_classes: Option<u128>,
}

impl Decision {
    /// Canonical form of `A`, when the quotient is defined.
    pub fn a_canonical(&self) -> Option<Vec<i64>> {
        self.quotient_module
            .as_ref()
            .map(|m| m.group().invariant_factors().to_vec())
    }
}

/// One row of the special-linear family sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub n: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub exists: bool,
    pub failed_condition: Option<FailedCondition>,
    pub num_classes: Option<u128>,
}

/// Decides every symmetric subgroup datum of the special-linear symplectic
/// family with `n_min <= n <= n_max`: one record per `(n, r, s)` with `r`
/// ranging over the divisors of `2n` and `s` over `0..=n`, in ascending
/// order.
pub fn sweep_sl(n_min: i64, n_max: i64) -> Result<Vec<SweepRecord>> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "need 2 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    let mut records = Vec::new();
    for n in n_min..=n_max {
        for r in divisors(2 * n) {
            for s in 0..=n {
                let input = build_sl_symplectic(&SlSymplecticSpec { n, r, s })?;
                let decision = input.decide();
                records.push(SweepRecord {
                    n,
                    r,
                    s,
                    t: gcd_u128(r as u128, n as u128) as i64,
                    exists: decision.exists,
                    failed_condition: decision.failed_condition,
                    num_classes: decision.num_classes,
                });
            }
        }
    }
    Ok(records)
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Trivial-action module on `Z/n`; shared by the family constructors.
pub(crate) fn cyclic_trivial_module(n: i64) -> Result<GammaModule> {
    Ok(GammaModule::with_trivial_action(FinAbGroup::cyclic(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_sl_pair, SlPairSpec};

    fn sl(n: i64, r: i64, s: i64) -> EngineInput {
        build_sl_symplectic(&SlSymplecticSpec { n, r, s }).unwrap()
    }

    fn pair(n: i64, h_gens: &[[i64; 2]]) -> EngineInput {
        build_sl_pair(&SlPairSpec {
            n,
            h_gens: h_gens.to_vec(),
        })
        .unwrap()
    }

    #[test]
    fn stability_of_pair_subgroups() {
        // the swap-inverse action fixes the diagonal but moves Z/3 x {0}
        assert!(pair(3, &[[1, 1]]).check_stability());
        assert!(!pair(3, &[[1, 0]]).check_stability());
    }

    #[test]
    fn cyclic_q_is_always_stable() {
        for n in 2..=8 {
            for r in 1..=2 * n {
                if (2 * n) % r != 0 {
                    continue;
                }
                assert!(sl(n, r, 0).check_stability());
            }
        }
    }

    #[test]
    fn quotient_module_of_symplectic_family() {
        // n = 2, r = 2: A = Z/2 with trivial action
        let a = sl(2, 2, 0).quotient_module().unwrap();
        assert_eq!(a.group().invariant_factors(), &[2]);
        assert_eq!(a.action(), &Homomorphism::identity(a.group()));
    }

    #[test]
    fn quotient_module_of_pair_diagonal() {
        // A = Q / diagonal is Z/3 and the induced action is the identity:
        // gamma(a, 0) = (0, -a) = (a, 0) - (a, a) for cosets of the diagonal
        let a = pair(3, &[[1, 1]]).quotient_module().unwrap();
        assert_eq!(a.group().invariant_factors(), &[3]);
        assert_eq!(a.action(), &Homomorphism::identity(a.group()));
    }

    #[test]
    fn quotient_by_everything_is_trivial() {
        let a = pair(3, &[[1, 0], [0, 1]]).quotient_module().unwrap();
        assert!(a.group().is_trivial());
    }

    #[test]
    fn quotient_module_requires_stability() {
        assert!(matches!(
            pair(3, &[[1, 0]]).quotient_module(),
            Err(Error::NotStable)
        ));
    }

    #[test]
    fn obstruction_values_on_the_symplectic_family() {
        // t = gcd(r, n) even and s odd obstructs; s even or t odd does not
        assert!(!sl(2, 2, 1).delta_h().unwrap().is_zero());
        assert!(sl(2, 2, 2).delta_h().unwrap().is_zero());
        assert!(sl(2, 1, 1).delta_h().unwrap().is_zero());
    }

    #[test]
    fn decide_examples() {
        let d = sl(2, 2, 1).decide();
        assert!(!d.exists);
        assert_eq!(d.failed_condition, Some(FailedCondition::DeltaNonzero));
        assert_eq!(d.a_canonical(), Some(vec![2]));

        let d = sl(2, 2, 0).decide();
        assert!(d.exists);
        assert_eq!(d.failed_condition, None);
        assert_eq!(d.num_classes, Some(2));

        let d = pair(3, &[[1, 0]]).decide();
        assert!(!d.exists);
        assert_eq!(d.failed_condition, Some(FailedCondition::NotStable));
        assert_eq!(d.quotient_module, None);
    }

    #[test]
    fn class_counts_on_the_symplectic_family() {
        assert_eq!(sl(2, 2, 0).count_classes().unwrap(), 2);
        assert_eq!(sl(2, 1, 0).count_classes().unwrap(), 1);
        assert!(matches!(
            sl(2, 2, 1).count_classes(),
            Err(Error::StructureDoesNotExist)
        ));
    }

    #[test]
    fn pair_counts_are_odd_order_unique() {
        for gens in [&[[1i64, 1i64]][..], &[[1, 2]][..], &[][..]] {
            let input = pair(3, gens);
            if input.decide().exists {
                assert_eq!(input.count_classes().unwrap(), 1);
            }
        }
    }

    #[test]
    fn failed_conditions_follow_the_stated_order() {
        // incompatible input with an unstable subgroup still reports
        // incompatibility first
        let unstable = pair(3, &[[1, 0]]);
        let incompatible = EngineInput::new(
            unstable.q.clone(),
            unstable.h_bar.clone(),
            unstable.z.clone(),
            unstable.chi.clone(),
            unstable.delta.clone(),
            false,
        )
        .unwrap();
        assert_eq!(
            incompatible.decide().failed_condition,
            Some(FailedCondition::NotCompatible)
        );
        assert_eq!(
            unstable.decide().failed_condition,
            Some(FailedCondition::NotStable)
        );
    }

    #[test]
    fn trivial_and_full_subgroups_never_fail_stability() {
        for n in [3, 5] {
            for gens in [&[][..], &[[1i64, 0i64], [0, 1]][..]] {
                let input = pair(n, gens);
                assert!(input.check_stability());
                let d = input.decide();
                assert!(d.exists); // compat holds and delta is zero
            }
        }
    }

    #[test]
    fn zero_obstruction_with_compat_and_stability_exists() {
        // quasi-split criterion: delta = 0 forces existence once the first
        // two conditions hold
        for n in 2..=5 {
            for r in divisors(2 * n) {
                let input = sl(n, r, 0);
                assert!(input.decide().exists);
            }
        }
    }

    #[test]
    fn sweep_emits_one_record_per_datum() {
        let records = sweep_sl(2, 2).unwrap();
        // divisors of 4 are 1, 2, 4 and s ranges over {0, 1, 2}
        assert_eq!(records.len(), 9);
        let mut keys: Vec<(i64, i64, i64)> = records.iter().map(|r| (r.n, r.r, r.s)).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort_unstable();
            k
        };
        assert_eq!(keys.len(), {
            keys.dedup();
            keys.len()
        });
        assert_eq!(
            sorted,
            records.iter().map(|r| (r.n, r.r, r.s)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sweep_satisfies_the_existence_law() {
        for record in sweep_sl(2, 4).unwrap() {
            let expect = record.s % 2 == 0 || record.t % 2 == 1;
            assert_eq!(record.exists, expect, "record {record:?}");
            if record.exists {
                let count = if record.t % 2 == 1 { 1 } else { 2 };
                assert_eq!(record.num_classes, Some(count), "record {record:?}");
            }
        }
    }

    #[test]
    fn sweep_rejects_bad_ranges() {
        assert!(matches!(sweep_sl(1, 3), Err(Error::InvalidRange(_))));
        assert!(matches!(sweep_sl(4, 3), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn formula_agrees_with_rank_on_decided_inputs() {
        for n in 2..=6 {
            for r in divisors(2 * n) {
                for s in 0..=n {
                    let input = sl(n, r, s);
                    let d = input.decide();
                    if let (Some(a), Some(count)) = (&d.quotient_module, d.num_classes) {
                        assert_eq!(count, 1u128 << a.h1().rank);
                    }
                }
            }
        }
    }
}
