//! Galois-module structure on finite abelian groups for the order-2 Galois
//! group of `C/R`, and the cohomology in degrees one and two.
//!
//! With `gamma` the generating involution acting through an automorphism of
//! the finite abelian group `A`, everything reduces to four sublattices:
//!
//! * cocycles      `Z^1 = ker(1 + gamma)`
//! * coboundaries  `B^1 = im(gamma - 1)`
//! * fixed points  `A^G = ker(gamma - 1)`
//! * norms         `N A = im(gamma + 1)`
//!
//! `H^1 = Z^1 / B^1` is elementary abelian of exponent two; it is returned as
//! a rank plus canonical class representatives. `H^2 = A^G / N A` is returned
//! as a group in canonical form. Both quotients are computed exactly through
//! Smith normal form, with no element enumeration.

use crate::abelian::{FinAbGroup, GroupElement, Homomorphism, Subgroup};
use crate::matrix::{solve_triangular, IntMat, LatticeQuotient};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// A finite abelian group together with an involutive automorphism giving
/// the Galois action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaModule {
    group: FinAbGroup,
    action: Homomorphism,
}

impl fmt::Display for GammaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} with involution {:?}",
            self.group,
            self.action.matrix()
        )
    }
}

impl GammaModule {
    /// Validates that `action` is an automorphism of `group` squaring to the
    /// identity. The two failure modes are reported distinctly.
    pub fn new(group: FinAbGroup, action: Homomorphism) -> Result<Self> {
        if !action.domain().same_presentation(&group)
            || !action.codomain().same_presentation(&group)
        {
            return Err(Error::ParentMismatch(
                "action must be an endomorphism of the module's group".into(),
            ));
        }
        let kernel = action.kernel();
        if !kernel.is_trivial() {
            return Err(Error::NotAutomorphism {
                kernel_order: kernel.order(),
            });
        }
        if action.then(&action)? != Homomorphism::identity(&group) {
            return Err(Error::NotInvolutive);
        }
        Ok(GammaModule { group, action })
    }

    pub fn with_trivial_action(group: FinAbGroup) -> Self {
        let action = Homomorphism::identity(&group);
        GammaModule { group, action }
    }

    pub fn with_inversion(group: FinAbGroup) -> Self {
        let matrix: Vec<Vec<i64>> = (0..group.rank())
            .map(|i| {
                (0..group.rank())
                    .map(|j| if i == j { -1 } else { 0 })
                    .collect()
            })
            .collect();
        let action = Homomorphism::new(group.clone(), group.clone(), matrix)
            .expect("negation is well-defined");
        GammaModule { group, action }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn action(&self) -> &Homomorphism {
        &self.action
    }

    /// Applies the generator of the Galois group. The element must belong to
    /// the module's group.
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.action
            .apply(x)
            .expect("element belongs to the module's group")
    }

    /// Endomorphism `gamma + shift`, used for the four structural lattices.
    fn shifted(&self, shift: i64) -> Homomorphism {
        let k = self.group.rank();
        let matrix: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.action.matrix()[i][j] + if i == j { shift } else { 0 })
                    .collect()
            })
            .collect();
        Homomorphism::new(self.group.clone(), self.group.clone(), matrix)
            .expect("shift of a well-defined endomorphism stays well-defined")
    }

    /// Fixed-point subgroup `A^G = ker(gamma - 1)`.
    pub fn fixed_subgroup(&self) -> Subgroup {
        self.shifted(-1).kernel()
    }

    /// Degree-1 cocycles `Z^1 = ker(1 + gamma)`.
    pub fn cocycle_subgroup(&self) -> Subgroup {
        self.shifted(1).kernel()
    }

    /// Degree-1 coboundaries `B^1 = im(gamma - 1)`.
    pub fn coboundary_subgroup(&self) -> Subgroup {
        self.shifted(-1).image()
    }

    /// Norm subgroup `N A = im(gamma + 1)`, the reduction lattice in degree 2.
    pub fn norm_subgroup(&self) -> Subgroup {
        self.shifted(1).image()
    }

    /// The same group with the action `gamma' = -gamma`. Twisting is an
    /// involution on modules and preserves involutivity of the action.
    pub fn twisted(&self) -> GammaModule {
        let matrix: Vec<Vec<i64>> = self
            .action
            .matrix()
            .iter()
            .map(|row| row.iter().map(|&v| -v).collect())
            .collect();
        let action = Homomorphism::new(self.group.clone(), self.group.clone(), matrix)
            .expect("negation of an automorphism is well-defined");
        GammaModule {
            group: self.group.clone(),
            action,
        }
    }

    /// Restriction of the module to its maximal `p`-subgroup, in the
    /// coordinates of the `p`-power parts of the presentation orders. The
    /// `p`-part is characteristic, so the action restricts.
    pub fn primary_restriction(&self, p: i64) -> Result<GammaModule> {
        if !crate::abelian::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let orders = self.group.orders();
        let k = orders.len();
        let parts: Vec<i64> = orders
            .iter()
            .map(|&n| crate::abelian::p_power_part(n, p))
            .collect();
        let scalars: Vec<i64> = orders.iter().zip(&parts).map(|(&n, &q)| n / q).collect();
        let part_group = FinAbGroup::new(&parts)?;
        let mut matrix = vec![vec![0i64; k]; k];
        for i in 0..k {
            // image of the i-th p-part generator, in parent coordinates
            let mut gen = vec![0i64; k];
            gen[i] = scalars[i] % orders[i];
            let image = self
                .action
                .apply(&self.group.element(&gen)?)
                .expect("generator belongs to the group");
            for j in 0..k {
                let c = image.coords()[j];
                assert_eq!(
                    c % scalars[j],
                    0,
                    "p-primary part must be stable under the action"
                );
                matrix[i][j] = (c / scalars[j]) % parts[j].max(1);
            }
        }
        let action = Homomorphism::new(part_group.clone(), part_group.clone(), matrix)?;
        GammaModule::new(part_group, action)
    }

    /// First cohomology: rank `n` with `H^1` of order `2^n`, plus one
    /// canonical representative per class, sorted lexicographically.
    pub fn h1(&self) -> H1 {
        let z1 = self.cocycle_subgroup();
        let b1 = self.coboundary_subgroup();
        let (factors, sections, hz) = sublattice_quotient(&z1, &b1);
        let rank = factors
            .iter()
            .map(|f| {
                assert!(
                    *f == BigInt::from(1) || *f == BigInt::from(2),
                    "first cohomology of an order-2 group must have exponent 2"
                );
                usize::from(*f == BigInt::from(2))
            })
            .sum::<usize>();
        assert!(rank < 63, "too many cohomology classes to materialize");
        let k = self.group.rank();
        let mut representatives = Vec::with_capacity(1 << rank);
        for mask in 0u64..(1 << rank) {
            let mut c = vec![BigInt::zero(); k];
            for (bit, section) in sections.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    for (ci, si) in c.iter_mut().zip(section) {
                        *ci += si;
                    }
                }
            }
            // back to ambient coordinates: x = c * hz
            let coords: Vec<i64> = (0..k)
                .map(|col| {
                    let mut acc = BigInt::zero();
                    for i in 0..k {
                        acc += &c[i] * &hz[(i, col)];
                    }
                    bigint_mod_i64(&acc, self.group.orders()[col])
                })
                .collect();
            let elem = self
                .group
                .element(&coords)
                .expect("representative has full length");
            let canon = b1.reduce(&elem).expect("representative lives in the group");
            debug_assert!(self.apply(&canon).add(&canon).is_zero());
            representatives.push(canon);
        }
        representatives.sort();
        representatives.dedup();
        assert_eq!(
            representatives.len(),
            1 << rank,
            "class representatives must be pairwise inequivalent"
        );
        H1 {
            rank,
            representatives,
        }
    }

    /// Second cohomology `A^G / N A` in canonical form, together with the
    /// norm subgroup used to reduce class representatives.
    pub fn h2(&self) -> H2 {
        let fixed = self.fixed_subgroup();
        let norms = self.norm_subgroup();
        let (factors, _, _) = sublattice_quotient(&fixed, &norms);
        let kept: Vec<i64> = factors
            .iter()
            .filter(|f| **f > BigInt::from(1))
            .map(|f| i64::try_from(f).expect("factor below cardinality bound"))
            .collect();
        let group = if kept.is_empty() {
            FinAbGroup::trivial()
        } else {
            FinAbGroup::new(&kept).expect("invariant factors form a valid presentation")
        };
        H2 {
            group,
            norm_subgroup: norms,
        }
    }

    /// Closed-form order of `H^1` from the fixed points of the 2-primary
    /// part under the action and its twist: `|A_2^{G'}| * |A_2^G| / |A_2|`.
    /// The division is exact; a failure would be an internal error.
    pub fn h1_count_formula(&self) -> u128 {
        let m2 = self
            .primary_restriction(2)
            .expect("2 is prime and restriction of a valid module is valid");
        let fixed = m2.fixed_subgroup().order();
        let twisted_fixed = m2.twisted().fixed_subgroup().order();
        let total = m2.group.cardinality();
        let numerator = twisted_fixed
            .checked_mul(fixed)
            .expect("orders are below the cardinality bound");
        assert_eq!(
            numerator % total,
            0,
            "fixed-point count formula must divide exactly"
        );
        numerator / total
    }
}

fn bigint_mod_i64(v: &BigInt, n: i64) -> i64 {
    use num_integer::Integer;
    i64::try_from(v.mod_floor(&BigInt::from(n))).expect("residue fits i64")
}

/// For nested subgroup lattices `inner` inside `outer`, the invariant factors
/// of `outer/inner` plus the section rows (in outer-basis coordinates) of the
/// nontrivial generators, and the outer lattice basis itself.
fn sublattice_quotient(
    outer: &Subgroup,
    inner: &Subgroup,
) -> (Vec<BigInt>, Vec<Vec<BigInt>>, IntMat) {
    let hz = outer.lattice();
    let hb = inner.lattice();
    let k = hz.nrows();
    let rows: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            solve_triangular(&hz, hb.row(i))
                .expect("reduction lattice must sit inside the cocycle lattice")
        })
        .collect();
    let c = IntMat::from_bigint_rows(rows, k);
    let lq = LatticeQuotient::new(&c);
    let sections: Vec<Vec<BigInt>> = (0..lq.kept().len()).map(|j| lq.section(j)).collect();
    (lq.factors, sections, hz)
}

/// First cohomology of a module: an elementary abelian 2-group of the given
/// rank, with one canonical representative per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1 {
    pub rank: usize,
    pub representatives: Vec<GroupElement>,
}

impl H1 {
    pub fn order(&self) -> u128 {
        1u128 << self.rank
    }
}

/// Second cohomology of a module: the quotient `A^G / N A` in canonical form
/// and the norm subgroup used for class reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2 {
    pub group: FinAbGroup,
    pub norm_subgroup: Subgroup,
}

/// Cohomological degree of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohDegree {
    One,
    Two,
}

/// An element of `H^1` or `H^2` of a module, stored through its canonical
/// (lexicographically smallest) coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    degree: CohDegree,
    module: GammaModule,
    representative: GroupElement,
}

impl CohClass {
    /// Validates the cocycle condition for the degree: a degree-1
    /// representative must satisfy `a + gamma(a) = 0`, a degree-2
    /// representative must be fixed by the action. The stored representative
    /// is reduced to the canonical element of its class.
    pub fn new(
        degree: CohDegree,
        module: GammaModule,
        representative: GroupElement,
    ) -> Result<Self> {
        if !representative.parent().same_presentation(module.group()) {
            return Err(Error::ParentMismatch(
                "representative does not belong to the module's group".into(),
            ));
        }
        let ok = match degree {
            CohDegree::One => module.apply(&representative).add(&representative).is_zero(),
            CohDegree::Two => module.apply(&representative) == representative,
        };
        if !ok {
            return Err(Error::NotACocycle {
                degree: match degree {
                    CohDegree::One => 1,
                    CohDegree::Two => 2,
                },
            });
        }
        let reduction = match degree {
            CohDegree::One => module.coboundary_subgroup(),
            CohDegree::Two => module.norm_subgroup(),
        };
        let representative = reduction
            .reduce(&representative)
            .expect("representative lives in the module's group");
        Ok(CohClass {
            degree,
            module,
            representative,
        })
    }

    pub fn zero(degree: CohDegree, module: GammaModule) -> Self {
        let zero = module.group().zero();
        CohClass::new(degree, module, zero).expect("zero is always a cocycle")
    }

    pub fn degree(&self) -> CohDegree {
        self.degree
    }

    pub fn module(&self) -> &GammaModule {
        &self.module
    }

    /// Canonical representative of the class.
    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    /// True exactly when the representative lies in the coboundary (degree 1)
    /// or norm (degree 2) subgroup.
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    /// Pushes a degree-2 class forward along an equivariant homomorphism
    /// into the target module.
    pub fn pushforward(&self, f: &Homomorphism, target: &GammaModule) -> Result<CohClass> {
        if self.degree != CohDegree::Two {
            return Err(Error::DegreeMismatch);
        }
        if !f.domain().same_presentation(self.module.group())
            || !f.codomain().same_presentation(target.group())
        {
            return Err(Error::ParentMismatch(
                "homomorphism endpoints must match the class and target modules".into(),
            ));
        }
        if f.then(target.action())? != self.module.action().then(f)? {
            return Err(Error::NotEquivariant);
        }
        let image = f.apply(&self.representative)?;
        CohClass::new(CohDegree::Two, target.clone(), image)
    }
}
