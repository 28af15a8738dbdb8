//! Constructors translating concrete symmetric-space families, and a fully
//! generic datum, into the engine's abstract input.
//!
//! Two families are bundled. For `G = SL_{2n}` with the symplectic involution
//! and `H` generated by `G^theta` and a central `2n`-th root of unity power
//! `xi^r`, the quotient `Q` is cyclic of order `n` with trivial Galois
//! action, the center contributes `Z/2n`, and the inner-twist parameter `s`
//! (real locus `SU(n+s, n-s)`) lands in the connecting map as the parity of
//! `s`. For `G = SL_n x SL_n` (`n` odd) with the factor-wise
//! transpose-inverse involution and the factor-swapping real structure, `Q`
//! is `(Z/n)^2` with the swap-and-invert action and the structure is
//! quasi-split, so the obstruction class is zero. Everything else goes
//! through the generic constructor with explicit data.

use crate::abelian::{FinAbGroup, GroupElement, Homomorphism};
use crate::engine::{cyclic_trivial_module, EngineInput};
use crate::factor_graph::FactorGraph;
use crate::gamma::{CohClass, CohDegree, GammaModule};
use crate::{Error, Result};

/// Parameters for the symplectic family on `SL_{2n}`: the symmetric subgroup
/// selected by `r | 2n` and the inner twist selected by `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlSymplecticSpec {
    /// Half the matrix size; the group is `SL_{2n}`, `n >= 2`.
    pub n: i64,
    /// Positive divisor of `2n`; `H = <xi^r I, G^theta>`.
    pub r: i64,
    /// Signature parameter in `[0, n]`; the real locus of the twist is
    /// `SU(n+s, n-s)`.
    pub s: i64,
}

/// Parameters for the pair family on `SL_n x SL_n` with `n` odd: generators
/// of `H̄ = H/G^theta` inside `(Z/n)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlPairSpec {
    pub n: i64,
    pub h_gens: Vec<[i64; 2]>,
}

/// Compatibility datum for the generic constructor: either an asserted flag
/// or a factor graph to be checked.
#[derive(Debug, Clone, PartialEq)]
pub enum CompatSpec {
    Asserted(bool),
    Graph(FactorGraph),
}

/// Fully explicit engine datum with the compatibility condition still
/// unresolved.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericSpec {
    pub q: GammaModule,
    pub h_gens: Vec<GroupElement>,
    pub z: GammaModule,
    pub chi: Homomorphism,
    pub delta: CohClass,
    pub compat: CompatSpec,
}

pub fn build_sl_symplectic(spec: &SlSymplecticSpec) -> Result<EngineInput> {
    let SlSymplecticSpec { n, r, s } = *spec;
    if n < 2 {
        return Err(Error::InvalidFamilySpec(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let two_n = n
        .checked_mul(2)
        .ok_or_else(|| Error::InvalidFamilySpec(format!("n = {n} is too large")))?;
    if r < 1 || two_n % r != 0 {
        return Err(Error::InvalidFamilySpec(format!(
            "r must be a positive divisor of 2n = {two_n}, got {r}"
        )));
    }
    if s < 0 || s > n {
        return Err(Error::InvalidFamilySpec(format!(
            "s must lie in [0, {n}], got {s}"
        )));
    }
    let q = cyclic_trivial_module(n)?;
    let h_bar = q.group().subgroup(&[q.group().element(&[r % n])?])?;
    let z = cyclic_trivial_module(two_n)?;
    let chi = Homomorphism::new(z.group().clone(), q.group().clone(), vec![vec![1]])?;
    // the connecting map sends the twist sigma_s to the parity of s in
    // H^2(Gamma, Z(G)) = Z(G)/2Z(G); the residue s mod 2 represents it
    let delta = CohClass::new(CohDegree::Two, z.clone(), z.group().element(&[s % 2])?)?;
    // the symplectic involution commutes with the quasi-split form, and Q is
    // cyclic, so conjugation compatibility always holds here
    EngineInput::new(q, h_bar, z, chi, delta, true)
}

pub fn build_sl_pair(spec: &SlPairSpec) -> Result<EngineInput> {
    let n = spec.n;
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidFamilySpec(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    let group = FinAbGroup::new(&[n, n])?;
    // gamma . (a, b) = (-b, -a)
    let action = Homomorphism::new(group.clone(), group.clone(), vec![vec![0, -1], vec![-1, 0]])?;
    let q = GammaModule::new(group.clone(), action)?;
    let gens = spec
        .h_gens
        .iter()
        .map(|&[a, b]| group.element(&[a, b]))
        .collect::<Result<Vec<_>>>()?;
    let h_bar = group.subgroup(&gens)?;
    // the center embeds in Q for odd n, so Z carries the same action and chi
    // is the identity; the swap structure is quasi-split, hence delta = 0
    let z = q.clone();
    let chi = Homomorphism::identity(&group);
    let delta = CohClass::zero(CohDegree::Two, z.clone());
    EngineInput::new(q, h_bar, z, chi, delta, true)
}

/// Validates a user-supplied datum and resolves its compatibility condition,
/// through the factor graph when one is given.
pub fn build_generic(spec: GenericSpec) -> Result<EngineInput> {
    let compat = match &spec.compat {
        CompatSpec::Asserted(flag) => *flag,
        CompatSpec::Graph(fg) => fg.is_theta_sigma_compatible()?,
    };
    let h_bar = spec.q.group().subgroup(&spec.h_gens)?;
    EngineInput::new(spec.q, h_bar, spec.z, spec.chi, spec.delta, compat)
}
