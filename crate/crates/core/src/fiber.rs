//! Regular fibers at the genus level and the surgeries between them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Closed orientable surface up to diffeomorphism: the sorted multiset of
/// component genera.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiberState {
    genera: Vec<u32>,
}

impl FiberState {
    pub fn empty() -> Self {
        FiberState::default()
    }

    pub fn from_genera(mut genera: Vec<u32>) -> Self {
        genera.sort_unstable();
        FiberState { genera }
    }

    pub fn spheres(n: usize) -> Self {
        FiberState { genera: vec![0; n] }
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    pub fn components(&self) -> usize {
        self.genera.len()
    }

    pub fn total_genus(&self) -> u64 {
        self.genera.iter().map(|&g| g as u64).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.genera.iter().map(|&g| 2 - 2 * g as i64).sum()
    }

    pub fn is_single_sphere(&self) -> bool {
        self.genera == [0]
    }

    pub fn count_genus(&self, g: u32) -> usize {
        self.genera.iter().filter(|&&x| x == g).count()
    }

    /// Disjoint union.
    pub fn union(&self, other: &FiberState) -> FiberState {
        let mut g = self.genera.clone();
        g.extend_from_slice(&other.genera);
        FiberState::from_genera(g)
    }

    /// `self ∖ other` as multisets, `None` unless `other ⊆ self`.
    pub fn difference(&self, other: &FiberState) -> Option<FiberState> {
        let mut g = self.genera.clone();
        for x in &other.genera {
            let i = g.iter().position(|y| y == x)?;
            g.remove(i);
        }
        Some(FiberState { genera: g })
    }

    /// Multiset intersection.
    pub fn common(&self, other: &FiberState) -> FiberState {
        let mut rest = other.genera.clone();
        let mut out = Vec::new();
        for x in &self.genera {
            if let Some(i) = rest.iter().position(|y| y == x) {
                rest.remove(i);
                out.push(*x);
            }
        }
        FiberState { genera: out }
    }

    pub fn with_sphere(&self) -> FiberState {
        self.union(&FiberState::spheres(1))
    }

    /// Replaces one component of genus `from` by one of genus `to`.
    pub fn replace(&self, from: u32, to: u32) -> Option<FiberState> {
        let i = self.genera.iter().position(|&g| g == from)?;
        let mut g = self.genera.clone();
        g[i] = to;
        Some(FiberState::from_genera(g))
    }

    /// Every state reachable by one tube (joining two components) or
    /// self-tube (adding a handle to one component).
    pub fn tube_successors(&self) -> Vec<FiberState> {
        let mut out = Vec::new();
        let g = &self.genera;
        for i in 0..g.len() {
            if i > 0 && g[i] == g[i - 1] {
                continue;
            }
            out.push(self.replace(g[i], g[i] + 1).unwrap());
            for j in i + 1..g.len() {
                if j > i + 1 && g[j] == g[j - 1] {
                    continue;
                }
                let mut rest = g.clone();
                rest.remove(j);
                rest.remove(i);
                rest.push(g[i] + g[j]);
                out.push(FiberState::from_genera(rest));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether `target` is reachable in exactly `steps` tube or self-tube
    /// surgeries.
    pub fn reaches_by_tubes(&self, target: &FiberState, steps: usize) -> bool {
        if self.euler_characteristic() - 2 * steps as i64 != target.euler_characteristic() {
            return false;
        }
        if steps == 0 {
            return self == target;
        }
        if self.components() < target.components() {
            return false;
        }
        self.tube_successors()
            .iter()
            .any(|s| s.reaches_by_tubes(target, steps - 1))
    }
}

impl fmt::Display for FiberState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.genera.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.genera.len() {
            let g = self.genera[i];
            let n = self.genera[i..].iter().take_while(|&&x| x == g).count();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if n > 1 {
                write!(f, "{n}")?;
            }
            match g {
                0 => write!(f, "S²")?,
                1 => write!(f, "T²")?,
                _ => write!(f, "Σ{g}")?,
            }
            i += n;
        }
        Ok(())
    }
}

/// Surgery performed on the fiber as one fold turn is crossed outward.
/// Operands are component ids of a [`TrackedFiber`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum FiberOp {
    SphereBirth { id: usize },
    /// `b` is absorbed into `a`.
    Tube { a: usize, b: usize },
    SelfTube { c: usize },
    CollapseNonSep { c: usize },
    CollapseToSphere { c: usize },
}

impl FiberOp {
    pub fn chi_change(self) -> i64 {
        match self {
            FiberOp::SphereBirth { .. }
            | FiberOp::CollapseNonSep { .. }
            | FiberOp::CollapseToSphere { .. } => 2,
            FiberOp::Tube { .. } | FiberOp::SelfTube { .. } => -2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("component {0} already exists")]
    DuplicateComponent(usize),
    #[error("cannot tube component {0} to itself; use a self-tube")]
    TubeToSelf(usize),
    #[error("component {c} has genus {genus}; {op} needs {needed}")]
    GenusPrecondition {
        c: usize,
        genus: u32,
        op: &'static str,
        needed: &'static str,
    },
}

/// Fiber with stable component ids, for replaying [`FiberOp`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrackedFiber {
    components: BTreeMap<usize, u32>,
}

impl TrackedFiber {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn genus(&self, c: usize) -> Option<u32> {
        self.components.get(&c).copied()
    }

    pub fn state(&self) -> FiberState {
        FiberState::from_genera(self.components.values().copied().collect())
    }

    fn get(&self, c: usize) -> Result<u32, FiberError> {
        self.genus(c).ok_or(FiberError::NoSuchComponent(c))
    }

    pub fn apply(&mut self, op: FiberOp) -> Result<(), FiberError> {
        match op {
            FiberOp::SphereBirth { id } => {
                if self.components.contains_key(&id) {
                    return Err(FiberError::DuplicateComponent(id));
                }
                self.components.insert(id, 0);
            }
            FiberOp::Tube { a, b } => {
                if a == b {
                    return Err(FiberError::TubeToSelf(a));
                }
                let gb = self.get(b)?;
                let ga = self.get(a)?;
                self.components.remove(&b);
                self.components.insert(a, ga + gb);
            }
            FiberOp::SelfTube { c } => {
                let g = self.get(c)?;
                self.components.insert(c, g + 1);
            }
            FiberOp::CollapseNonSep { c } => {
                let g = self.get(c)?;
                if g == 0 {
                    return Err(FiberError::GenusPrecondition {
                        c,
                        genus: g,
                        op: "a non-separating collapse",
                        needed: "genus at least 1",
                    });
                }
                self.components.insert(c, g - 1);
            }
            FiberOp::CollapseToSphere { c } => {
                let g = self.get(c)?;
                if g != 1 {
                    return Err(FiberError::GenusPrecondition {
                        c,
                        genus: g,
                        op: "collapsing to a sphere",
                        needed: "genus exactly 1",
                    });
                }
                self.components.insert(c, 0);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(FiberState::empty().to_string(), "∅");
        assert_eq!(FiberState::from_genera(vec![1, 0, 0, 3]).to_string(), "2S² + T² + Σ3");
    }

    #[test]
    fn multiset_ops() {
        let a = FiberState::from_genera(vec![0, 1, 1]);
        let b = FiberState::from_genera(vec![1]);
        assert_eq!(a.difference(&b), Some(FiberState::from_genera(vec![0, 1])));
        assert_eq!(b.difference(&a), None);
        assert_eq!(a.euler_characteristic(), 2);
        assert_eq!(a.replace(0, 2), Some(FiberState::from_genera(vec![1, 1, 2])));
    }

    #[test]
    fn tube_reachability() {
        let two = FiberState::spheres(2);
        assert!(two.reaches_by_tubes(&FiberState::spheres(1), 1));
        assert!(two.reaches_by_tubes(&FiberState::from_genera(vec![0, 1]), 1));
        assert!(two.reaches_by_tubes(&FiberState::from_genera(vec![1]), 2));
        assert!(!two.reaches_by_tubes(&FiberState::spheres(3), 1));
        assert!(!FiberState::from_genera(vec![2]).reaches_by_tubes(&FiberState::spheres(2), 0));
    }

    #[test]
    fn tracked_preconditions() {
        let mut f = TrackedFiber::new();
        f.apply(FiberOp::SphereBirth { id: 0 }).unwrap();
        assert_eq!(f.apply(FiberOp::SphereBirth { id: 0 }), Err(FiberError::DuplicateComponent(0)));
        assert!(matches!(
            f.apply(FiberOp::CollapseNonSep { c: 0 }),
            Err(FiberError::GenusPrecondition { .. })
        ));
        assert_eq!(f.apply(FiberOp::Tube { a: 0, b: 0 }), Err(FiberError::TubeToSelf(0)));
        f.apply(FiberOp::SphereBirth { id: 1 }).unwrap();
        f.apply(FiberOp::SelfTube { c: 1 }).unwrap();
        f.apply(FiberOp::Tube { a: 0, b: 1 }).unwrap();
        assert_eq!(f.state(), FiberState::from_genera(vec![1]));
        assert_eq!(f.genus(1), None);
        f.apply(FiberOp::CollapseToSphere { c: 0 }).unwrap();
        assert!(f.state().is_single_sphere());
    }

    proptest! {
        #[test]
        fn every_op_moves_chi_by_its_declared_step(
            ops in proptest::collection::vec((0u8..5, 0usize..4, 0usize..4), 0..40)
        ) {
            let mut f = TrackedFiber::new();
            for (kind, a, b) in ops {
                let op = match kind {
                    0 => FiberOp::SphereBirth { id: a },
                    1 => FiberOp::Tube { a, b },
                    2 => FiberOp::SelfTube { c: a },
                    3 => FiberOp::CollapseNonSep { c: a },
                    _ => FiberOp::CollapseToSphere { c: a },
                };
                let before = f.state().euler_characteristic();
                if f.apply(op).is_ok() {
                    prop_assert_eq!(f.state().euler_characteristic() - before, op.chi_change());
                } else {
                    prop_assert_eq!(f.state().euler_characteristic(), before);
                }
            }
        }
    }
}
