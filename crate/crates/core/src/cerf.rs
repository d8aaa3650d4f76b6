//! Concentric fold diagrams over a disk and the Cerf moves that rewrite
//! them, including the removal of definite folds from a round 0-handle.
//!
//! A diagram is a list of fold circles, innermost first, with the regular
//! fiber of each region in between. A circle of winding `w` stands for `w`
//! turns of one fold. Crossing a definite circle outward adds (or removes)
//! `w` spheres; crossing an indefinite one performs `w` tube surgeries in
//! the χ-lowering direction. The fiber over the innermost region is the
//! fiber over the centre, so its Euler characteristic is the Euler
//! characteristic of the total space and no move may change it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fiber::FiberState;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldKind {
    Definite,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldCircle {
    pub kind: FoldKind,
    pub winding: u32,
    pub cusps: u32,
    pub swallowtails: u32,
    /// Swallowtails whose folds have been passed over another turn of the
    /// same circle and are ready to merge.
    #[serde(default)]
    pub passed_swallowtails: u32,
}

impl FoldCircle {
    pub fn definite(winding: u32) -> Self {
        FoldCircle {
            kind: FoldKind::Definite,
            winding,
            cusps: 0,
            swallowtails: 0,
            passed_swallowtails: 0,
        }
    }

    pub fn indefinite(winding: u32) -> Self {
        FoldCircle {
            kind: FoldKind::Indefinite,
            ..Self::definite(winding)
        }
    }

    fn unpassed(&self) -> u32 {
        self.swallowtails - self.passed_swallowtails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    Swallowtail,
    Birth,
    Merge,
    Unmerge,
    PassFolds,
    GayElimination,
}

/// A Cerf move and where it acts.
///
/// Targets are circle indices, except for `Birth`, whose single target is
/// the region receiving the new pair. Shapes:
///
/// * `Swallowtail [i]`: add a swallowtail (two cusps) to circle `i`;
///   inverted, remove an unpassed one.
/// * `Birth [r]`: insert a canceling pair of indefinite circles, each with
///   two cusps, in region `r`; inverted with target `[i, i+1]`, delete one.
/// * `Merge [i, i+1]`: merge the cusps of a canceling pair, leaving two
///   cuspless folds. `Unmerge [i, i+1]` is its inverse.
/// * `Merge [i]`: merge the beaks of a passed swallowtail on definite
///   circle `i` of winding `w ≥ 2`, splitting off one turn as an indefinite
///   circle just outside a definite circle of winding `w-1`.
/// * `PassFolds [i]`: pass the folds of an unpassed swallowtail on definite
///   circle `i` over the neighbouring turn (two at once when `w = 1`);
///   inverted, unpass them.
/// * `PassFolds [i, i+1]`: exchange two adjacent circles across the product
///   region between them.
/// * `GayElimination [i]`: the innermost definite circle of winding 1 with
///   two passed swallowtails becomes an indefinite circle around a torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub target: Vec<usize>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverse: bool,
}

impl Move {
    pub fn new(kind: MoveKind, target: &[usize]) -> Self {
        Move {
            kind,
            target: target.to_vec(),
            inverse: false,
        }
    }

    pub fn inverted(kind: MoveKind, target: &[usize]) -> Self {
        Move {
            inverse: true,
            ..Move::new(kind, target)
        }
    }

    /// The move undoing `self`, when there is one in the move set.
    pub fn inverse(&self) -> Option<Move> {
        use MoveKind::*;
        let t = &self.target;
        match (self.kind, t.len(), self.inverse) {
            (Swallowtail, 1, inv) | (PassFolds, 1, inv) => Some(Move {
                inverse: !inv,
                ..self.clone()
            }),
            (Birth, 1, false) => Some(Move::inverted(Birth, &[t[0], t[0] + 1])),
            (Birth, 2, true) => Some(Move::new(Birth, &[t[0]])),
            (Merge, 2, false) => Some(Move::new(Unmerge, t)),
            (Unmerge, 2, false) => Some(Move::new(Merge, t)),
            (PassFolds, 2, false) => Some(self.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if self.inverse {
            write!(f, "⁻¹")?;
        }
        let t: Vec<String> = self.target.iter().map(usize::to_string).collect();
        write!(f, "[{}]", t.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldDiagram {
    pub circles: Vec<FoldCircle>,
    /// `circles.len() + 1` fibers, innermost region first.
    pub regions: Vec<FiberState>,
    #[serde(default)]
    pub history: Vec<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CerfError {
    #[error("move {mv} is not applicable: {reason}")]
    Inapplicable { mv: Move, reason: String },
    #[error("move {mv} broke diagram consistency: {reason}")]
    PostValidation { mv: Move, reason: String },
    #[error("winding must be at least 1")]
    ZeroWinding,
}

/// Consistency of a circle with its two neighbouring regions.
pub fn circle_consistent(c: &FoldCircle, inner: &FiberState, outer: &FiberState) -> Result<(), String> {
    if c.winding == 0 {
        return Err("winding 0".into());
    }
    if !c.cusps.is_multiple_of(2) {
        return Err(format!("odd cusp count {}", c.cusps));
    }
    if c.passed_swallowtails > c.swallowtails {
        return Err("more passed swallowtails than swallowtails".into());
    }
    let w = c.winding as usize;
    match c.kind {
        FoldKind::Definite => {
            let spheres = FiberState::spheres(w);
            if *outer == inner.union(&spheres) || *inner == outer.union(&spheres) {
                Ok(())
            } else {
                Err(format!("definite winding {w} cannot separate {inner} from {outer}"))
            }
        }
        FoldKind::Indefinite => {
            let (hi, lo) = if inner.euler_characteristic() >= outer.euler_characteristic() {
                (inner, outer)
            } else {
                (outer, inner)
            };
            if hi.reaches_by_tubes(lo, w) {
                Ok(())
            } else {
                Err(format!("indefinite winding {w} cannot separate {inner} from {outer}"))
            }
        }
    }
}

impl FoldDiagram {
    /// The round 0-handle: one definite circle of winding `n` around an
    /// empty centre, `n` spheres outside.
    pub fn round0(n: u32) -> Result<Self, CerfError> {
        if n == 0 {
            return Err(CerfError::ZeroWinding);
        }
        Ok(FoldDiagram {
            circles: vec![FoldCircle::definite(n)],
            regions: vec![FiberState::empty(), FiberState::spheres(n as usize)],
            history: Vec::new(),
        })
    }

    pub fn count(&self, kind: FoldKind) -> usize {
        self.circles.iter().filter(|c| c.kind == kind).count()
    }

    pub fn is_blf_ready(&self) -> bool {
        self.count(FoldKind::Definite) == 0
    }

    /// Circles and regions, ignoring history.
    pub fn same_shape(&self, other: &FoldDiagram) -> bool {
        self.circles == other.circles && self.regions == other.regions
    }

    /// First circle inconsistent with its regions, with the reason.
    pub fn first_inconsistency(&self) -> Option<(usize, String)> {
        if self.regions.len() != self.circles.len() + 1 {
            return Some((
                self.circles.len(),
                format!("{} regions for {} circles", self.regions.len(), self.circles.len()),
            ));
        }
        self.circles.iter().enumerate().find_map(|(i, c)| {
            circle_consistent(c, &self.regions[i], &self.regions[i + 1])
                .err()
                .map(|r| (i, r))
        })
    }

    pub fn centre_euler_characteristic(&self) -> i64 {
        self.regions.first().map_or(0, FiberState::euler_characteristic)
    }
}

fn inapplicable(mv: &Move, reason: impl Into<String>) -> CerfError {
    CerfError::Inapplicable {
        mv: mv.clone(),
        reason: reason.into(),
    }
}

fn circle<'a>(d: &'a FoldDiagram, mv: &Move, i: usize) -> Result<&'a FoldCircle, CerfError> {
    d.circles
        .get(i)
        .ok_or_else(|| inapplicable(mv, format!("no circle {i}")))
}

fn adjacent(d: &FoldDiagram, mv: &Move) -> Result<usize, CerfError> {
    let i = mv.target[0];
    if mv.target[1] != i + 1 || i + 1 >= d.circles.len() {
        return Err(inapplicable(mv, "targets must be two adjacent circles"));
    }
    Ok(i)
}

fn check_local(d: &FoldDiagram, mv: &Move, circles: std::ops::Range<usize>) -> Result<(), CerfError> {
    for i in circles {
        if let Err(r) = circle_consistent(&d.circles[i], &d.regions[i], &d.regions[i + 1]) {
            return Err(inapplicable(mv, format!("circle {i}: {r}")));
        }
    }
    Ok(())
}

fn is_canceling_pair(d: &FoldDiagram, i: usize) -> bool {
    let (a, b) = (&d.circles[i], &d.circles[i + 1]);
    a.kind == FoldKind::Indefinite
        && b.kind == FoldKind::Indefinite
        && a.winding == b.winding
        && d.regions[i] == d.regions[i + 2]
}

/// Applies one move, returning the new diagram with the move appended to
/// its history. The input is never modified.
pub fn apply_move(d: &FoldDiagram, mv: &Move) -> Result<FoldDiagram, CerfError> {
    use MoveKind::*;
    let mut out = d.clone();
    match (mv.kind, mv.target.len(), mv.inverse) {
        (Swallowtail, 1, inv) => {
            let i = mv.target[0];
            let c = circle(d, mv, i)?;
            if inv && c.unpassed() == 0 {
                return Err(inapplicable(mv, "no unpassed swallowtail to remove"));
            }
            let c = &mut out.circles[i];
            if inv {
                c.swallowtails -= 1;
                c.cusps -= 2;
            } else {
                c.swallowtails += 1;
                c.cusps += 2;
            }
        }
        (Birth, 1, false) => {
            let r = mv.target[0];
            let fiber = d
                .regions
                .get(r)
                .ok_or_else(|| inapplicable(mv, format!("no region {r}")))?;
            let g = *fiber
                .genera()
                .first()
                .ok_or_else(|| inapplicable(mv, "empty fiber has no curve to surger"))?;
            let raised = fiber.replace(g, g + 1).unwrap();
            let fold = FoldCircle {
                cusps: 2,
                ..FoldCircle::indefinite(1)
            };
            out.circles.splice(r..r, [fold.clone(), fold]);
            out.regions.splice(r + 1..r + 1, [raised, fiber.clone()]);
        }
        (Birth, 2, true) => {
            let i = adjacent(d, mv)?;
            let fresh = FoldCircle {
                cusps: 2,
                ..FoldCircle::indefinite(1)
            };
            if !is_canceling_pair(d, i) || d.circles[i] != fresh || d.circles[i + 1] != fresh {
                return Err(inapplicable(mv, "not a freshly born canceling pair"));
            }
            out.circles.drain(i..i + 2);
            out.regions.drain(i + 1..i + 3);
        }
        (Merge, 2, false) | (Unmerge, 2, false) => {
            let i = adjacent(d, mv)?;
            if !is_canceling_pair(d, i) {
                return Err(inapplicable(mv, "circles are not a canceling pair"));
            }
            let merge = mv.kind == Merge;
            for c in &mut out.circles[i..i + 2] {
                if merge {
                    if c.cusps < 2 * c.swallowtails + 2 {
                        return Err(inapplicable(mv, "no free cusps to merge"));
                    }
                    c.cusps -= 2;
                } else {
                    c.cusps += 2;
                }
            }
        }
        (Merge, 1, false) => {
            let i = mv.target[0];
            let c = circle(d, mv, i)?;
            if c.kind != FoldKind::Definite || c.winding < 2 || c.passed_swallowtails == 0 {
                return Err(inapplicable(
                    mv,
                    "beak merge needs a definite circle of winding ≥ 2 with a passed swallowtail",
                ));
            }
            let inner = &d.regions[i];
            if d.regions[i + 1] != inner.union(&FiberState::spheres(c.winding as usize)) {
                return Err(inapplicable(mv, "spheres must be born outward"));
            }
            let shrunk = FoldCircle {
                winding: c.winding - 1,
                cusps: c.cusps - 2,
                swallowtails: c.swallowtails - 1,
                passed_swallowtails: c.passed_swallowtails - 1,
                ..c.clone()
            };
            let middle = inner.union(&FiberState::spheres(c.winding as usize - 1));
            out.circles.splice(i..=i, [shrunk, FoldCircle::indefinite(1)]);
            out.regions.insert(i + 1, middle);
        }
        (PassFolds, 1, inv) => {
            let i = mv.target[0];
            let c = circle(d, mv, i)?;
            if c.kind != FoldKind::Definite {
                return Err(inapplicable(mv, "only turns of a definite circle pass each other"));
            }
            let n = if c.winding == 1 { 2 } else { 1 };
            let available = if inv { c.passed_swallowtails } else { c.unpassed() };
            if available < n {
                return Err(inapplicable(mv, format!("needs {n} swallowtails, has {available}")));
            }
            let c = &mut out.circles[i];
            if inv {
                c.passed_swallowtails -= n;
            } else {
                c.passed_swallowtails += n;
            }
        }
        (PassFolds, 2, false) => {
            let i = adjacent(d, mv)?;
            let (b, c) = (&d.regions[i + 1], &d.regions[i + 2]);
            let shared = b.common(c);
            let removed = b.difference(&shared).unwrap();
            let added = c.difference(&shared).unwrap();
            let middle = d.regions[i]
                .difference(&removed)
                .ok_or_else(|| inapplicable(mv, "outer circle's surgery does not fit inside"))?
                .union(&added);
            out.circles.swap(i, i + 1);
            out.regions[i + 1] = middle;
            check_local(&out, mv, i..i + 2)?;
        }
        (GayElimination, 1, false) => {
            let i = mv.target[0];
            let c = circle(d, mv, i)?;
            if i != 0 || c.kind != FoldKind::Definite || c.winding != 1 || c.passed_swallowtails < 2 {
                return Err(inapplicable(
                    mv,
                    "needs the innermost definite circle of winding 1 with two passed swallowtails",
                ));
            }
            out.circles[i] = FoldCircle {
                kind: FoldKind::Indefinite,
                passed_swallowtails: c.passed_swallowtails - 2,
                ..c.clone()
            };
            out.regions[i] = d.regions[i].union(&FiberState::from_genera(vec![1]));
            check_local(&out, mv, i..i + 1)?;
        }
        _ => return Err(inapplicable(mv, "unknown move shape")),
    }
    if let Some((i, reason)) = out.first_inconsistency() {
        return Err(CerfError::PostValidation {
            mv: mv.clone(),
            reason: format!("circle {i}: {reason}"),
        });
    }
    if out.centre_euler_characteristic() != d.centre_euler_characteristic() {
        return Err(CerfError::PostValidation {
            mv: mv.clone(),
            reason: "Euler characteristic of the centre fiber changed".into(),
        });
    }
    out.history.push(mv.clone());
    Ok(out)
}

/// Every intermediate diagram, starting with `start`.
pub fn replay(start: &FoldDiagram, script: &[Move]) -> Result<Vec<FoldDiagram>, CerfError> {
    let mut states = vec![start.clone()];
    for mv in script {
        let next = apply_move(states.last().unwrap(), mv)?;
        states.push(next);
    }
    Ok(states)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub winding: u32,
    pub input: FoldDiagram,
    pub script: Vec<Move>,
    /// Number of script moves before the final winding-1 sequence starts.
    pub gay_start: usize,
    pub output: FoldDiagram,
}

impl Elimination {
    /// The diagram just before the winding-1 sequence.
    pub fn before_gay(&self) -> FoldDiagram {
        replay(&self.input, &self.script[..self.gay_start])
            .expect("script replays")
            .pop()
            .unwrap()
    }
}

/// Removes the definite fold of a round 0-handle of winding `n`.
///
/// While the definite circle winds `w ≥ 2` times: add a swallowtail, pass
/// its folds over the next turn, merge the beaks to split off one
/// indefinite turn, and push that indefinite circle outward past the
/// earlier ones, innermost pass first. Then run the winding-1 sequence:
/// two swallowtails, pass the definite folds, pass the indefinite folds,
/// remove the swallowtails.
pub fn eliminate_definite_round0(n: u32) -> Result<Elimination, CerfError> {
    use MoveKind::*;
    let input = FoldDiagram::round0(n)?;
    let mut d = input.clone();
    let run = |d: &mut FoldDiagram, mv: Move| -> Result<(), CerfError> {
        *d = apply_move(d, &mv)?;
        Ok(())
    };
    for w in (2..=n).rev() {
        run(&mut d, Move::new(Swallowtail, &[0]))?;
        run(&mut d, Move::new(PassFolds, &[0]))?;
        run(&mut d, Move::new(Merge, &[0]))?;
        // the new indefinite circle is circle 1; n - w older ones lie outside
        for k in 1..=(n - w) as usize {
            run(&mut d, Move::new(PassFolds, &[k, k + 1]))?;
        }
    }
    let gay_start = d.history.len();
    run(&mut d, Move::new(Swallowtail, &[0]))?;
    run(&mut d, Move::new(Swallowtail, &[0]))?;
    run(&mut d, Move::new(PassFolds, &[0]))?;
    run(&mut d, Move::new(GayElimination, &[0]))?;
    run(&mut d, Move::inverted(Swallowtail, &[0]))?;
    run(&mut d, Move::inverted(Swallowtail, &[0]))?;
    Ok(Elimination {
        winding: n,
        input,
        script: d.history.clone(),
        gay_start,
        output: d,
    })
}

pub fn validate_diagram(d: &FoldDiagram) -> Report {
    let mut report = Report::new(format!("fold diagram with {} circles", d.circles.len()));
    let bad = d.first_inconsistency();
    report.push(Check::new(
        "region-consistency",
        "region fibers agree with every circle",
        bad.is_none(),
        bad.map(|(i, r)| format!("circle {i}: {r}")),
    ));
    let definite = d.count(FoldKind::Definite);
    report.push(Check::new(
        "blf-ready",
        "no definite folds remain",
        definite == 0,
        Some(format!("{definite} definite circle(s)")),
    ));
    report
}
