//! Combinatorial model of a semisimple group as a product of simple factors
//! carrying a real structure `sigma` and a group involution `theta`.
//!
//! Each structure is recorded as an involutive permutation of the factor
//! indices plus a label on every fixed factor: a real-form label for `sigma`,
//! an involution-class label for `theta`. The compatibility check decides
//! whether `sigma . theta . sigma` is inner-conjugate to `theta` at this
//! combinatorial level, using a bundled rule table for the special linear
//! family. Label combinations outside the table fail loudly instead of
//! guessing.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A simple factor of the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// Special linear factor `SL_n`.
    Sl { n: i64 },
    /// A factor of some other type; carried through but with no bundled
    /// conjugation rules.
    Custom { tag: String },
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Sl { n } => write!(f, "SL_{n}"),
            FactorKind::Custom { tag } => write!(f, "{tag}"),
        }
    }
}

/// Real-form label on a `sigma`-fixed factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealFormLabel {
    Split,
    QuasiSplitSu,
    SuInnerTwist { s: i64 },
    Custom { tag: String },
}

impl RealFormLabel {
    fn is_supported_sl(&self) -> bool {
        matches!(
            self,
            RealFormLabel::Split | RealFormLabel::QuasiSplitSu | RealFormLabel::SuInnerTwist { .. }
        )
    }
}

impl fmt::Display for RealFormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFormLabel::Split => write!(f, "split"),
            RealFormLabel::QuasiSplitSu => write!(f, "quasi_split_su"),
            RealFormLabel::SuInnerTwist { s } => write!(f, "su_inner_twist({s})"),
            RealFormLabel::Custom { tag } => write!(f, "custom({tag})"),
        }
    }
}

/// Involution-class label on a `theta`-fixed factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionLabel {
    TransposeInverse,
    Symplectic,
    /// Inner involution with signature `(p, q)`; accepted syntactically but
    /// with no bundled conjugation rules.
    InnerPq {
        p: i64,
        q: i64,
    },
    Custom {
        tag: String,
    },
}

impl InvolutionLabel {
    fn is_supported_sl(&self) -> bool {
        matches!(
            self,
            InvolutionLabel::TransposeInverse | InvolutionLabel::Symplectic
        )
    }
}

impl fmt::Display for InvolutionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionLabel::TransposeInverse => write!(f, "transpose_inverse"),
            InvolutionLabel::Symplectic => write!(f, "symplectic"),
            InvolutionLabel::InnerPq { p, q } => write!(f, "inner({p},{q})"),
            InvolutionLabel::Custom { tag } => write!(f, "custom({tag})"),
        }
    }
}

/// A violated structural invariant, reported by [`FactorGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PermutationMalformed {
        which: &'static str,
    },
    PermutationNotInvolutive {
        which: &'static str,
    },
    SwappedFactorsDiffer {
        which: &'static str,
        i: usize,
        j: usize,
    },
    LabelOnMovedFactor {
        which: &'static str,
        index: usize,
    },
    LabelMissingOnFixedFactor {
        which: &'static str,
        index: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PermutationMalformed { which } => {
                write!(
                    f,
                    "{which} permutation is not a permutation of the factor indices"
                )
            }
            Violation::PermutationNotInvolutive { which } => {
                write!(f, "{which} permutation is not an involution")
            }
            Violation::SwappedFactorsDiffer { which, i, j } => {
                write!(f, "{which} swaps non-isomorphic factors {i} and {j}")
            }
            Violation::LabelOnMovedFactor { which, index } => {
                write!(f, "{which} label on factor {index}, which is not fixed")
            }
            Violation::LabelMissingOnFixedFactor { which, index } => {
                write!(f, "missing {which} label on fixed factor {index}")
            }
        }
    }
}

pub(crate) fn render_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Factor-level record of `(G, sigma, theta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorGraph {
    pub factors: Vec<FactorKind>,
    pub sigma_perm: Vec<usize>,
    pub sigma_labels: BTreeMap<usize, RealFormLabel>,
    pub theta_perm: Vec<usize>,
    pub theta_labels: BTreeMap<usize, InvolutionLabel>,
}

impl FactorGraph {
    /// Builds and validates; see [`FactorGraph::validate`] for the invariants.
    pub fn new(
        factors: Vec<FactorKind>,
        sigma_perm: Vec<usize>,
        sigma_labels: BTreeMap<usize, RealFormLabel>,
        theta_perm: Vec<usize>,
        theta_labels: BTreeMap<usize, InvolutionLabel>,
    ) -> Result<Self> {
        let fg = FactorGraph {
            factors,
            sigma_perm,
            sigma_labels,
            theta_perm,
            theta_labels,
        };
        match fg.validate() {
            Ok(()) => Ok(fg),
            Err(violations) => Err(Error::InvalidFactorGraph(violations)),
        }
    }

    /// Checks the structural invariants: both permutations are involutions of
    /// the factor indices, factors exchanged by a permutation are isomorphic,
    /// and labels sit exactly on the fixed points of their permutation.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let n = self.factors.len();
        for (which, perm) in [("sigma", &self.sigma_perm), ("theta", &self.theta_perm)] {
            if perm.len() != n || perm.iter().any(|&i| i >= n) {
                violations.push(Violation::PermutationMalformed { which });
                continue;
            }
            let mut seen = vec![false; n];
            for &i in perm {
                seen[i] = true;
            }
            if seen.iter().any(|&s| !s) {
                violations.push(Violation::PermutationMalformed { which });
                continue;
            }
            if (0..n).any(|i| perm[perm[i]] != i) {
                violations.push(Violation::PermutationNotInvolutive { which });
                continue;
            }
            for (i, &j) in perm.iter().enumerate() {
                if j > i && self.factors[i] != self.factors[j] {
                    violations.push(Violation::SwappedFactorsDiffer { which, i, j });
                }
            }
        }
        let sigma_ok = self.sigma_perm.len() == n
            && self.sigma_perm.iter().all(|&i| i < n)
            && (0..n).all(|i| self.sigma_perm[self.sigma_perm[i]] == i);
        if sigma_ok {
            for i in 0..n {
                let fixed = self.sigma_perm[i] == i;
                match (fixed, self.sigma_labels.contains_key(&i)) {
                    (true, false) => violations.push(Violation::LabelMissingOnFixedFactor {
                        which: "sigma",
                        index: i,
                    }),
                    (false, true) => violations.push(Violation::LabelOnMovedFactor {
                        which: "sigma",
                        index: i,
                    }),
                    _ => {}
                }
            }
        }
        let theta_ok = self.theta_perm.len() == n
            && self.theta_perm.iter().all(|&i| i < n)
            && (0..n).all(|i| self.theta_perm[self.theta_perm[i]] == i);
        if theta_ok {
            for i in 0..n {
                let fixed = self.theta_perm[i] == i;
                match (fixed, self.theta_labels.contains_key(&i)) {
                    (true, false) => violations.push(Violation::LabelMissingOnFixedFactor {
                        which: "theta",
                        index: i,
                    }),
                    (false, true) => violations.push(Violation::LabelOnMovedFactor {
                        which: "theta",
                        index: i,
                    }),
                    _ => {}
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Decides whether `sigma . theta . sigma` is inner-conjugate to `theta`
    /// at the supported-label level.
    ///
    /// The check requires (a) the permutations to commute, and (b) on every
    /// `theta`-fixed factor, the involution class transported through `sigma`
    /// to agree with the original class under the bundled rule table:
    ///
    /// * an `SL_n` factor fixed by `sigma` with a split, quasi-split SU, or
    ///   SU inner-twist form preserves the classes `transpose_inverse` and
    ///   `symplectic`;
    /// * a pair of `theta`-fixed factors swapped by `sigma` is compatible
    ///   exactly when the two involution classes agree.
    ///
    /// Any other combination is outside the bundled table and reported as
    /// unsupported rather than silently decided.
    pub fn is_theta_sigma_compatible(&self) -> Result<bool> {
        if let Err(violations) = self.validate() {
            return Err(Error::InvalidFactorGraph(violations));
        }
        let n = self.factors.len();
        // (a) permutation-level necessity
        let conjugated: Vec<usize> = (0..n)
            .map(|i| self.sigma_perm[self.theta_perm[self.sigma_perm[i]]])
            .collect();
        if conjugated != self.theta_perm {
            return Ok(false);
        }
        // (b) label transport on theta-fixed factors
        for i in 0..n {
            if self.theta_perm[i] != i {
                continue;
            }
            let theta_label = &self.theta_labels[&i];
            let j = self.sigma_perm[i];
            if j == i {
                let sigma_label = &self.sigma_labels[&i];
                match &self.factors[i] {
                    FactorKind::Sl { .. }
                        if sigma_label.is_supported_sl() && theta_label.is_supported_sl() =>
                    {
                        // conjugation by these forms preserves the class
                    }
                    _ => {
                        return Err(Error::UnsupportedLabels(format!(
                            "factor {i} ({}) with sigma form {sigma_label} and involution class {theta_label}",
                            self.factors[i]
                        )));
                    }
                }
            } else {
                // sigma swaps a theta-fixed pair: commuting permutations force
                // theta to fix j as well, and transport identifies the classes
                let other = &self.theta_labels[&j];
                if !matches!(&self.factors[i], FactorKind::Sl { .. })
                    || !theta_label.is_supported_sl()
                    || !other.is_supported_sl()
                {
                    return Err(Error::UnsupportedLabels(format!(
                        "sigma-swapped pair ({i}, {j}) with involution classes {theta_label} and {other}"
                    )));
                }
                if theta_label != other {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
