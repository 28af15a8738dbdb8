//! Finite abelian groups presented as products of cyclic groups.
//!
//! A group is a list of cyclic factor orders together with its invariant
//! factor form, computed once through the Smith normal form of the relation
//! lattice. Elements are residue vectors in the presentation coordinates.
//! Subgroups are canonical Hermite bases of the lattice spanned by their
//! generators and the relation lattice `diag(orders)`, which makes
//! membership, equality, and coset reduction decidable and deterministic.

use crate::matrix::{box_reduce, to_bigint_vec, IntMat, LatticeQuotient};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Largest supported group cardinality. Orders, coordinates, and invariant
/// factors all stay below this bound, so they fit in `i64` exactly.
const MAX_CARDINALITY: u128 = i64::MAX as u128;

/// A finite abelian group `Z/n_1 x ... x Z/n_k` with its invariant factors.
///
/// Two groups compare equal exactly when their invariant factor lists agree,
/// i.e. when they are isomorphic. Operations that mix elements of different
/// groups require equal presentations, not just isomorphism.
#[derive(Debug, Clone)]
pub struct FinAbGroup {
    orders: Vec<i64>,
    canonical: Vec<i64>,
    cardinality: u128,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for FinAbGroup {}

impl std::hash::Hash for FinAbGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.canonical.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.canonical.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FinAbGroup {
    /// Builds the group from a list of cyclic factor orders and canonicalizes
    /// it to invariant factors `d_1 | d_2 | ... | d_m` with `d_1 >= 2`.
    /// Order-1 factors are legal placeholders and disappear from the
    /// canonical form. Isomorphic presentations yield equal canonical forms.
    pub fn new(orders: &[i64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidPresentation(
                "order list must be nonempty".into(),
            ));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 1) {
            return Err(Error::InvalidPresentation(format!(
                "cyclic factor order {bad} is not positive"
            )));
        }
        let mut cardinality: u128 = 1;
        for &n in orders {
            cardinality = cardinality
                .checked_mul(n as u128)
                .filter(|&c| c <= MAX_CARDINALITY)
                .ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "group order exceeds the supported bound {MAX_CARDINALITY}"
                    ))
                })?;
        }
        let snf = IntMat::diagonal(orders).snf();
        let canonical: Vec<i64> = snf
            .d
            .iter()
            .map(|d| i64::try_from(d).expect("invariant factor below cardinality bound"))
            .filter(|&d| d >= 2)
            .collect();
        debug_assert_eq!(
            canonical.iter().map(|&d| d as u128).product::<u128>(),
            cardinality
        );
        Ok(FinAbGroup {
            orders: orders.to_vec(),
            canonical,
            cardinality,
        })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        FinAbGroup::new(&[n])
    }

    pub fn trivial() -> Self {
        FinAbGroup::new(&[1]).expect("trivial group is valid")
    }

    /// Presentation orders, including any order-1 placeholders.
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    /// Invariant factors `d_1 | ... | d_m`, empty for the trivial group.
    pub fn invariant_factors(&self) -> &[i64] {
        &self.canonical
    }

    pub fn cardinality(&self) -> u128 {
        self.cardinality
    }

    pub fn is_trivial(&self) -> bool {
        self.cardinality == 1
    }

    /// Number of presentation coordinates.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// True when both groups use the same presentation, so their elements
    /// can be combined coordinatewise.
    pub fn same_presentation(&self, other: &FinAbGroup) -> bool {
        self.orders == other.orders
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            parent: self.clone(),
            coords: vec![0; self.orders.len()],
        }
    }

    /// Element with the given coordinates, reduced modulo the factor orders.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::ParentMismatch(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n))
            .collect();
        Ok(GroupElement {
            parent: self.clone(),
            coords,
        })
    }

    /// Iterates over all elements in mixed-radix order. Enumeration cost is
    /// the group cardinality.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            group: self,
            next: Some(vec![0; self.orders.len()]),
        }
    }

    /// Smallest subgroup containing the given elements, in canonical Hermite
    /// basis form. An empty generating set yields the trivial subgroup.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            if !g.parent.same_presentation(self) {
                return Err(Error::ParentMismatch(
                    "generator does not belong to the parent group".into(),
                ));
            }
        }
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.coords.clone()).collect();
        for (i, &n) in self.orders.iter().enumerate() {
            let mut rel = vec![0; self.orders.len()];
            rel[i] = n;
            rows.push(rel);
        }
        let h = IntMat::from_rows(&rows, self.orders.len()).hnf();
        Ok(Subgroup::from_hnf(self.clone(), &h))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[]).expect("empty generating set is valid")
    }

    pub fn full_subgroup(&self) -> Subgroup {
        let gens: Vec<GroupElement> = (0..self.orders.len())
            .map(|i| {
                let mut c = vec![0; self.orders.len()];
                c[i] = 1;
                self.element(&c).expect("unit vector is a valid element")
            })
            .collect();
        self.subgroup(&gens)
            .expect("generators belong to the group")
    }

    /// Quotient by a subgroup: the quotient group in canonical form together
    /// with the surjective projection. The projection kernel is the subgroup.
    pub fn quotient(&self, sub: &Subgroup) -> Result<(FinAbGroup, Homomorphism)> {
        let (group, proj, _) = self.quotient_with_sections(sub)?;
        Ok((group, proj))
    }

    /// Quotient plus, for each generator of the quotient, a preimage in the
    /// parent group. The sections let callers transport maps along the
    /// projection.
    pub fn quotient_with_sections(
        &self,
        sub: &Subgroup,
    ) -> Result<(FinAbGroup, Homomorphism, Vec<GroupElement>)> {
        if !sub.parent.same_presentation(self) {
            return Err(Error::ParentMismatch(
                "subgroup does not live in this group".into(),
            ));
        }
        let k = self.orders.len();
        let lq = LatticeQuotient::new(&sub.lattice());
        let kept = lq.kept();
        if kept.is_empty() {
            // full quotient collapses to the trivial group
            let group = FinAbGroup::trivial();
            let matrix = vec![vec![0]; k];
            let proj = Homomorphism::new(self.clone(), group.clone(), matrix)?;
            return Ok((group, proj, vec![self.zero()]));
        }
        let factors: Vec<i64> = kept
            .iter()
            .map(|&j| i64::try_from(&lq.factors[j]).expect("factor below cardinality bound"))
            .collect();
        let group = FinAbGroup::new(&factors)?;
        let mut matrix = Vec::with_capacity(k);
        for i in 0..k {
            let mut unit = vec![BigInt::zero(); k];
            unit[i] = BigInt::from(1);
            let class = lq.project(&unit);
            matrix.push(
                class
                    .iter()
                    .map(|v| i64::try_from(v).expect("reduced class coordinate"))
                    .collect(),
            );
        }
        let proj = Homomorphism::new(self.clone(), group.clone(), matrix)?;
        let sections = (0..kept.len())
            .map(|idx| {
                let row = lq.section(idx);
                let coords: Vec<i64> = row
                    .iter()
                    .zip(&self.orders)
                    .map(|(v, &n)| {
                        i64::try_from(v.mod_floor(&BigInt::from(n))).expect("reduced coordinate")
                    })
                    .collect();
                self.element(&coords).expect("section has full length")
            })
            .collect();
        Ok((group, proj, sections))
    }

    /// Maximal `p`-subgroup: the abstract `p`-part and its embedding as a
    /// subgroup of this group.
    pub fn primary_part(&self, p: i64) -> Result<(FinAbGroup, Subgroup)> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut part_orders = Vec::with_capacity(self.orders.len());
        let mut gens = Vec::new();
        for (i, &n) in self.orders.iter().enumerate() {
            let q = p_power_part(n, p);
            part_orders.push(q);
            if q > 1 {
                let mut c = vec![0; self.orders.len()];
                c[i] = n / q;
                gens.push(self.element(&c)?);
            }
        }
        let part = FinAbGroup::new(&part_orders)?;
        let embedding = self.subgroup(&gens)?;
        debug_assert_eq!(part.cardinality(), embedding.order());
        Ok((part, embedding))
    }
}

/// Largest power of `p` dividing `n`.
pub(crate) fn p_power_part(n: i64, p: i64) -> i64 {
    let mut q = 1;
    let mut m = n;
    while m % p == 0 {
        q *= p;
        m /= p;
    }
    q
}

/// Deterministic Miller-Rabin primality test for the supported range.
pub(crate) fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// An element of a [`FinAbGroup`], stored as reduced residues in the
/// presentation coordinates.
#[derive(Debug, Clone)]
pub struct GroupElement {
    parent: FinAbGroup,
    coords: Vec<i64>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_presentation(&other.parent) && self.coords == other.coords
    }
}

impl Eq for GroupElement {}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parent
            .orders
            .cmp(&other.parent.orders)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl GroupElement {
    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn assert_same_parent(&self, other: &GroupElement) {
        assert!(
            self.parent.same_presentation(&other.parent),
            "elements of different group presentations cannot be combined"
        );
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        self.assert_same_parent(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(&self.parent.orders)
            .map(|((&a, &b), &n)| (a + b).rem_euclid(n))
            .collect();
        GroupElement {
            parent: self.parent.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.parent.orders)
            .map(|(&a, &n)| (-a).rem_euclid(n))
            .collect();
        GroupElement {
            parent: self.parent.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.neg())
    }

    pub fn scaled(&self, k: i64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(&self.parent.orders)
            .map(|(&a, &n)| (((a as i128 * k as i128) % n as i128) as i64).rem_euclid(n))
            .collect();
        GroupElement {
            parent: self.parent.clone(),
            coords,
        }
    }

    /// Order of the element: the lcm of the componentwise orders.
    pub fn order(&self) -> u128 {
        self.coords
            .iter()
            .zip(&self.parent.orders)
            .map(|(&c, &n)| (n as u128) / gcd_u128(n as u128, c as u128))
            .fold(1u128, lcm_u128)
    }
}

pub(crate) fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    a / gcd_u128(a, b) * b
}

/// Mixed-radix iterator over group elements.
pub struct Elements<'a> {
    group: &'a FinAbGroup,
    next: Option<Vec<i64>>,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let coords = self.next.take()?;
        let out = GroupElement {
            parent: self.group.clone(),
            coords: coords.clone(),
        };
        let mut bumped = coords;
        for (i, &n) in self.group.orders.iter().enumerate() {
            bumped[i] += 1;
            if bumped[i] < n {
                self.next = Some(bumped);
                return Some(out);
            }
            bumped[i] = 0;
        }
        Some(out)
    }
}

/// A subgroup in canonical form: the Hermite basis of the lattice spanned by
/// its generators together with the relation lattice of the parent.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: FinAbGroup,
    basis: Vec<Vec<i64>>,
    order: u128,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_presentation(&other.parent) && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subgroup of order {} in {}", self.order, self.parent)
    }
}

impl Subgroup {
    pub(crate) fn from_hnf(parent: FinAbGroup, h: &IntMat) -> Subgroup {
        let k = parent.orders.len();
        assert_eq!(h.nrows(), k, "subgroup basis must be full rank");
        let mut index: u128 = 1;
        for i in 0..k {
            index *= u128::try_from(&h[(i, i)]).expect("positive pivot");
        }
        let order = parent.cardinality / index;
        debug_assert_eq!(parent.cardinality % index, 0);
        let basis = (0..k).map(|i| h.row_to_i64(i)).collect();
        Subgroup {
            parent,
            basis,
            order,
        }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Canonical Hermite basis rows (including the relation content).
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_full(&self) -> bool {
        self.order == self.parent.cardinality
    }

    /// Basis rows as group elements, with zero rows dropped.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.basis
            .iter()
            .map(|row| self.parent.element(row).expect("basis row has full length"))
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub(crate) fn lattice(&self) -> IntMat {
        IntMat::from_rows(&self.basis, self.parent.orders.len())
    }

    /// Membership test: true when the element reduces to zero against the
    /// canonical basis.
    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Canonical coset representative of `x` modulo this subgroup: the
    /// lexicographically smallest element of `x + self`.
    pub fn reduce(&self, x: &GroupElement) -> Result<GroupElement> {
        if !x.parent.same_presentation(&self.parent) {
            return Err(Error::ParentMismatch(
                "element does not belong to the subgroup's parent".into(),
            ));
        }
        let reduced = box_reduce(&self.lattice(), &to_bigint_vec(&x.coords));
        let coords: Vec<i64> = reduced
            .iter()
            .map(|v| i64::try_from(v).expect("box residue fits i64"))
            .collect();
        self.parent.element(&coords)
    }
}

/// A homomorphism between finite abelian groups, as the integer matrix
/// sending the `i`-th domain generator to the codomain vector in row `i`.
/// Entries are kept reduced modulo the codomain orders.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain.same_presentation(&other.domain)
            && self.codomain.same_presentation(&other.codomain)
            && self.matrix == other.matrix
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    /// Validates shape and well-definedness: for every domain generator of
    /// order `d`, `d` times its image must fall in the codomain relations.
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (dk, ck) = (domain.orders.len(), codomain.orders.len());
        if matrix.len() != dk || matrix.iter().any(|row| row.len() != ck) {
            return Err(Error::IllDefinedHomomorphism(format!(
                "matrix must be {dk} x {ck}"
            )));
        }
        let matrix: Vec<Vec<i64>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&codomain.orders)
                    .map(|(&v, &n)| v.rem_euclid(n))
                    .collect()
            })
            .collect();
        for (i, row) in matrix.iter().enumerate() {
            let d = domain.orders[i] as i128;
            for (j, &v) in row.iter().enumerate() {
                let n = codomain.orders[j] as i128;
                if (d * v as i128) % n != 0 {
                    return Err(Error::IllDefinedHomomorphism(format!(
                        "generator {i} of order {} maps to an element not killed by it",
                        domain.orders[i]
                    )));
                }
            }
        }
        Ok(Homomorphism {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(group: &FinAbGroup) -> Homomorphism {
        let k = group.orders.len();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        Homomorphism::new(group.clone(), group.clone(), matrix).expect("identity is well-defined")
    }

    pub fn zero(domain: &FinAbGroup, codomain: &FinAbGroup) -> Homomorphism {
        let matrix = vec![vec![0; codomain.orders.len()]; domain.orders.len()];
        Homomorphism::new(domain.clone(), codomain.clone(), matrix)
            .expect("zero map is well-defined")
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain.same_presentation(&self.codomain)
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if !x.parent.same_presentation(&self.domain) {
            return Err(Error::ParentMismatch(
                "element does not belong to the homomorphism domain".into(),
            ));
        }
        let coords: Vec<i64> = (0..self.codomain.orders.len())
            .map(|j| {
                let n = self.codomain.orders[j] as i128;
                let mut acc: i128 = 0;
                for (i, &c) in x.coords.iter().enumerate() {
                    acc += (c as i128 * self.matrix[i][j] as i128) % n;
                }
                (acc % n) as i64
            })
            .collect();
        self.codomain.element(&coords)
    }

    /// Composition `self` then `g`.
    pub fn then(&self, g: &Homomorphism) -> Result<Homomorphism> {
        if !self.codomain.same_presentation(&g.domain) {
            return Err(Error::ParentMismatch(
                "composition requires matching middle groups".into(),
            ));
        }
        let ck = g.codomain.orders.len();
        let matrix: Vec<Vec<i64>> = self
            .matrix
            .iter()
            .map(|row| {
                (0..ck)
                    .map(|j| {
                        let n = g.codomain.orders[j] as i128;
                        let mut acc: i128 = 0;
                        for (cell, g_row) in row.iter().zip(&g.matrix) {
                            acc += (*cell as i128 * g_row[j] as i128) % n;
                        }
                        (acc % n) as i64
                    })
                    .collect()
            })
            .collect();
        Homomorphism::new(self.domain.clone(), g.codomain.clone(), matrix)
    }

    /// Kernel as a canonical subgroup of the domain.
    pub fn kernel(&self) -> Subgroup {
        let dk = self.domain.orders.len();
        let stacked = IntMat::from_rows(&self.matrix, self.codomain.orders.len())
            .vstack(&IntMat::diagonal(&self.codomain.orders));
        let kernel = stacked.left_kernel();
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(kernel.nrows() + dk);
        for i in 0..kernel.nrows() {
            let full = kernel.row(i);
            let coords: Vec<i64> = (0..dk)
                .map(|c| {
                    i64::try_from(full[c].mod_floor(&BigInt::from(self.domain.orders[c])))
                        .expect("residue fits i64")
                })
                .collect();
            rows.push(coords);
        }
        for (i, &n) in self.domain.orders.iter().enumerate() {
            let mut rel = vec![0; dk];
            rel[i] = n;
            rows.push(rel);
        }
        let h = IntMat::from_rows(&rows, dk).hnf();
        Subgroup::from_hnf(self.domain.clone(), &h)
    }

    /// Image as a canonical subgroup of the codomain.
    pub fn image(&self) -> Subgroup {
        let gens: Vec<GroupElement> = self
            .matrix
            .iter()
            .map(|row| {
                self.codomain
                    .element(row)
                    .expect("matrix row has full length")
            })
            .collect();
        self.codomain
            .subgroup(&gens)
            .expect("image generators live in the codomain")
    }

    /// Kernel and image together; their orders multiply to the domain order.
    pub fn kernel_image(&self) -> (Subgroup, Subgroup) {
        let ker = self.kernel();
        let im = self.image();
        debug_assert_eq!(self.domain.cardinality(), ker.order() * im.order());
        (ker, im)
    }
}
