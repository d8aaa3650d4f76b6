//! Round-handle descriptors of the fibration and the evolution of the
//! regular fiber from the south pole outward.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fiber::{FiberError, FiberOp, FiberState, TrackedFiber};
use crate::orbits::{orbits, phi_action, phi_power_of_base_band, HandleClass, HandleRef};
use crate::params::{ParamError, TorusKnotParams};
use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoundLabel {
    R0H,
    R0V,
    RH,
    RV,
    RI,
    RII,
    #[serde(rename = "R∂")]
    RBoundary,
}

impl RoundLabel {
    pub fn index(self) -> u8 {
        match self {
            RoundLabel::R0H | RoundLabel::R0V => 0,
            RoundLabel::RH | RoundLabel::RV | RoundLabel::RI => 1,
            RoundLabel::RII | RoundLabel::RBoundary => 2,
        }
    }
}

impl fmt::Display for RoundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RoundLabel::R0H => "R0H",
            RoundLabel::R0V => "R0V",
            RoundLabel::RH => "RH",
            RoundLabel::RV => "RV",
            RoundLabel::RI => "RI",
            RoundLabel::RII => "RII",
            RoundLabel::RBoundary => "R∂",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "ops", rename_all = "kebab-case")]
pub enum Attachment {
    /// One fiber surgery per turn, in order.
    Turns(Vec<FiberOp>),
    Unspecified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundHandle {
    pub label: RoundLabel,
    pub index: u8,
    pub winding: u32,
    /// The 3-dimensional handle this round handle sweeps out, when it comes
    /// from a single one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<HandleRef>,
    pub attachment: Attachment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "fiber", rename_all = "kebab-case")]
pub enum RegionFiber {
    Known(FiberState),
    Unspecified,
}

impl RegionFiber {
    pub fn known(&self) -> Option<&FiberState> {
        match self {
            RegionFiber::Known(s) => Some(s),
            RegionFiber::Unspecified => None,
        }
    }
}

/// Terminal marker for the neighbourhood of the 2-knot over the north pole.
/// It is not a fold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub fiber: FiberState,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BLFDescriptor {
    pub params: TorusKnotParams,
    /// South pole outward.
    pub rounds: Vec<RoundHandle>,
    /// One per region between consecutive fold turns, innermost first.
    pub regions: Vec<RegionFiber>,
    pub binding: Binding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("round {round} ({label}) turn {turn}: {source}")]
    Fiber {
        round: usize,
        label: RoundLabel,
        turn: usize,
        source: FiberError,
    },
    #[error("round {round} ({label}) has no per-turn fiber rule")]
    Unspecified { round: usize, label: RoundLabel },
    #[error("round {round} ({label}) lists {turns} turns but winds {winding} times")]
    TurnCount {
        round: usize,
        label: RoundLabel,
        turns: usize,
        winding: u32,
    },
}

impl BLFDescriptor {
    pub fn windings(&self) -> Vec<u32> {
        self.rounds.iter().map(|r| r.winding).collect()
    }

    pub fn total_turns(&self) -> u64 {
        self.rounds.iter().map(|r| r.winding as u64).sum()
    }

    pub fn count(&self, label: RoundLabel) -> usize {
        self.rounds.iter().filter(|r| r.label == label).count()
    }
}

fn round(label: RoundLabel, winding: u32, source: Option<HandleRef>, ops: Option<Vec<FiberOp>>) -> RoundHandle {
    RoundHandle {
        label,
        index: label.index(),
        winding,
        source,
        attachment: ops.map_or(Attachment::Unspecified, Attachment::Turns),
        framing: (label == RoundLabel::RII).then(|| {
            "vanishing cycle runs over its 1-handle twice, algebraically zero times".to_string()
        }),
    }
}

fn binding(params: TorusKnotParams) -> Binding {
    Binding {
        fiber: FiberState::spheres(1),
        description: format!("S² × D² neighbourhood of the {params} 2-knot over the north pole"),
    }
}

/// Component ids: horizontal sphere `m` is `m`, vertical sphere `n` is `p+n`.
pub fn build_spun(params: TorusKnotParams) -> Result<BLFDescriptor, BuildError> {
    params.validate()?;
    if !params.is_spun() {
        return Err(ParamError::NotSpun(params.k).into());
    }
    let (p, q) = (params.p as usize, params.q as usize);
    let pq = p * q;
    let horizontal = |m: usize| m;
    let vertical = |n: usize| p + n;

    let mut ri = Vec::with_capacity(pq);
    let mut uf: UnionFind<usize> = UnionFind::new(p + q);
    for t in 0..pq as u64 {
        let (m, n) = phi_power_of_base_band(params, t);
        let (x, y) = (horizontal(m as usize), vertical(n as usize));
        let (rx, ry) = (uf.find(x), uf.find(y));
        if rx == ry {
            ri.push(FiberOp::SelfTube { c: rx });
        } else {
            uf.union(x, y);
            let keep = uf.find(x);
            let gone = if keep == rx { ry } else { rx };
            ri.push(FiberOp::Tube { a: keep, b: gone });
        }
    }
    let survivor = uf.find(0);

    let (w_p, w_q, w_pq) = (params.p, params.q, pq as u32);
    let rounds = vec![
        round(
            RoundLabel::R0H,
            w_p,
            None,
            Some((0..p).map(|m| FiberOp::SphereBirth { id: horizontal(m) }).collect()),
        ),
        round(
            RoundLabel::R0V,
            w_q,
            None,
            Some((0..q).map(|n| FiberOp::SphereBirth { id: vertical(n) }).collect()),
        ),
        round(
            RoundLabel::RH,
            w_p,
            None,
            Some((0..p).map(|m| FiberOp::SelfTube { c: horizontal(m) }).collect()),
        ),
        round(
            RoundLabel::RV,
            w_q,
            None,
            Some((0..q).map(|n| FiberOp::SelfTube { c: vertical(n) }).collect()),
        ),
        round(RoundLabel::RI, w_pq, None, Some(ri)),
        round(
            RoundLabel::RII,
            w_pq,
            None,
            Some(vec![FiberOp::CollapseNonSep { c: survivor }; pq]),
        ),
        round(
            RoundLabel::RBoundary,
            1,
            None,
            Some(vec![FiberOp::CollapseToSphere { c: survivor }]),
        ),
    ];
    let mut d = BLFDescriptor {
        params,
        rounds,
        regions: Vec::new(),
        binding: binding(params),
    };
    d.regions = simulate(&d)?.into_iter().map(RegionFiber::Known).collect();
    Ok(d)
}

/// One round per 3-dimensional handle of the fiber's handle decomposition,
/// each winding `k` times, plus the boundary round.
pub fn build_twist_spun(params: TorusKnotParams) -> Result<BLFDescriptor, BuildError> {
    params.validate()?;
    if params.is_spun() {
        return Err(ParamError::NotTwistSpun.into());
    }
    let k = params.k;
    let mut rounds = Vec::new();
    for m in 0..params.p {
        rounds.push(round(RoundLabel::R0H, k, Some(HandleRef::Horizontal(m)), None));
    }
    for n in 0..params.q {
        rounds.push(round(RoundLabel::R0V, k, Some(HandleRef::Vertical(n)), None));
    }
    for label in [RoundLabel::RI, RoundLabel::RII] {
        for m in 0..params.p {
            for n in 0..params.q {
                rounds.push(round(label, k, Some(HandleRef::Band(m, n)), None));
            }
        }
    }
    rounds.push(round(RoundLabel::RBoundary, 1, None, None));
    let turns: u64 = rounds.iter().map(|r| r.winding as u64).sum();
    let mut regions = vec![RegionFiber::Known(FiberState::empty())];
    regions.extend((1..turns).map(|_| RegionFiber::Unspecified));
    regions.push(RegionFiber::Known(FiberState::spheres(1)));
    Ok(BLFDescriptor {
        params,
        rounds,
        regions,
        binding: binding(params),
    })
}

/// Spun or twist-spun according to `params.k`.
pub fn build(params: TorusKnotParams) -> Result<BLFDescriptor, BuildError> {
    if params.is_spun() {
        build_spun(params)
    } else {
        build_twist_spun(params)
    }
}

/// Replays every turn from the empty fiber at the south pole; returns the
/// state of every region.
fn simulate(d: &BLFDescriptor) -> Result<Vec<FiberState>, BuildError> {
    let mut fiber = TrackedFiber::new();
    let mut states = vec![fiber.state()];
    for (i, r) in d.rounds.iter().enumerate() {
        let Attachment::Turns(ops) = &r.attachment else {
            return Err(BuildError::Unspecified { round: i, label: r.label });
        };
        if ops.len() != r.winding as usize {
            return Err(BuildError::TurnCount {
                round: i,
                label: r.label,
                turns: ops.len(),
                winding: r.winding,
            });
        }
        for (turn, &op) in ops.iter().enumerate() {
            fiber.apply(op).map_err(|source| BuildError::Fiber {
                round: i,
                label: r.label,
                turn,
                source,
            })?;
            states.push(fiber.state());
        }
    }
    Ok(states)
}

/// Fiber in every region of a spun descriptor, innermost first.
pub fn fiber_evolution(d: &BLFDescriptor) -> Result<Vec<FiberState>, BuildError> {
    simulate(d)
}

/// Fiber just outside each round handle, or `None` when unknown.
pub fn fiber_after_rounds(d: &BLFDescriptor) -> Vec<Option<FiberState>> {
    let mut at = 0usize;
    d.rounds
        .iter()
        .map(|r| {
            at += r.winding as usize;
            d.regions.get(at).and_then(|f| f.known().cloned())
        })
        .collect()
}

/// `(tubes, self-tubes)` among the RI turns.
pub fn ri_event_counts(d: &BLFDescriptor) -> (usize, usize) {
    let mut counts = (0, 0);
    for r in d.rounds.iter().filter(|r| r.label == RoundLabel::RI) {
        if let Attachment::Turns(ops) = &r.attachment {
            for op in ops {
                match op {
                    FiberOp::Tube { .. } => counts.0 += 1,
                    FiberOp::SelfTube { .. } => counts.1 += 1,
                    _ => {}
                }
            }
        }
    }
    counts
}

/// Euler characteristic of the total space from the base decomposition:
/// annuli and fold circles contribute zero, each polar disk its fiber's χ.
pub fn total_space_euler_characteristic(d: &BLFDescriptor) -> Option<i64> {
    let inner = d.regions.first()?.known()?;
    let outer = d.regions.last()?.known()?;
    Some(inner.euler_characteristic() + outer.euler_characteristic())
}

fn expected_windings(d: &BLFDescriptor) -> Result<Vec<(RoundLabel, u32)>, ParamError> {
    let params = d.params;
    let os = orbits(&phi_action(params)?);
    let len = |class| os.iter().filter(|o| o.class == class).map(|o| o.length).collect::<Vec<_>>();
    let (h, v, b) = (len(HandleClass::Horizontal), len(HandleClass::Vertical), len(HandleClass::Band));
    let mut out = Vec::new();
    if params.is_spun() {
        out.extend(h.iter().map(|&l| (RoundLabel::R0H, l as u32)));
        out.extend(v.iter().map(|&l| (RoundLabel::R0V, l as u32)));
        out.extend(h.iter().map(|&l| (RoundLabel::RH, l as u32)));
        out.extend(v.iter().map(|&l| (RoundLabel::RV, l as u32)));
        out.extend(b.iter().map(|&l| (RoundLabel::RI, l as u32)));
        out.extend(b.iter().map(|&l| (RoundLabel::RII, l as u32)));
    } else {
        let k = params.k;
        let total = |ls: &[usize]| ls.iter().sum::<usize>();
        out.extend((0..total(&h)).map(|_| (RoundLabel::R0H, k)));
        out.extend((0..total(&v)).map(|_| (RoundLabel::R0V, k)));
        out.extend((0..total(&b)).map(|_| (RoundLabel::RI, k)));
        out.extend((0..total(&b)).map(|_| (RoundLabel::RII, k)));
    }
    out.push((RoundLabel::RBoundary, 1));
    Ok(out)
}

pub fn validate(d: &BLFDescriptor) -> Report {
    let mut report = Report::new(format!("BLF descriptor for {}", d.params));
    let turns = d.total_turns();

    let sim = if d.params.is_spun() { Some(simulate(d)) } else { None };

    match &sim {
        None => report.push(Check::skipped(
            "chi-steps",
            "every fold turn changes the fiber χ by ±2",
            "no per-turn fiber rule for twist-spun rounds",
        )),
        Some(Err(e)) => report.push(Check::new(
            "chi-steps",
            "every fold turn changes the fiber χ by ±2",
            false,
            Some(e.to_string()),
        )),
        Some(Ok(states)) => {
            let bad = states.windows(2).position(|w| {
                (w[1].euler_characteristic() - w[0].euler_characteristic()).abs() != 2
            });
            report.push(Check::new(
                "chi-steps",
                "every fold turn changes the fiber χ by ±2",
                bad.is_none(),
                bad.map(|i| format!("turn {i}: {} → {}", states[i], states[i + 1])),
            ));
        }
    }

    let outer = match &sim {
        Some(Ok(states)) => states.last().cloned(),
        Some(Err(_)) => None,
        None => d.regions.last().and_then(|r| r.known().cloned()),
    };
    report.push(Check::new(
        "outer-sphere",
        "outermost fiber is a single sphere",
        outer.as_ref().is_some_and(FiberState::is_single_sphere),
        Some(match &outer {
            Some(s) => s.to_string(),
            None => match &sim {
                Some(Err(e)) => format!("evolution stopped: {e}"),
                _ => "unknown".to_string(),
            },
        }),
    ));

    let chi = total_space_euler_characteristic(d);
    report.push(Check::new(
        "total-chi",
        "total-space Euler characteristic is 2",
        chi == Some(2),
        Some(chi.map_or("polar fibers unknown".to_string(), |c| format!("χ = {c}"))),
    ));

    let got: Vec<(RoundLabel, u32)> = d.rounds.iter().map(|r| (r.label, r.winding)).collect();
    match expected_windings(d) {
        Ok(want) => {
            let diff = (0..got.len().max(want.len())).find(|&i| got.get(i) != want.get(i));
            report.push(Check::new(
                "windings",
                "winding table matches the handle orbits",
                diff.is_none(),
                diff.map(|i| format!("round {i}: {:?} vs expected {:?}", got.get(i), want.get(i))),
            ));
        }
        Err(e) => report.push(Check::new("windings", "winding table matches the handle orbits", false, Some(e.to_string()))),
    }

    let regions_ok = d.regions.len() as u64 == turns + 1
        && match &sim {
            Some(Ok(states)) => states
                .iter()
                .zip(&d.regions)
                .all(|(s, r)| r.known() == Some(s)),
            Some(Err(_)) => false,
            None => true,
        };
    report.push(Check::new(
        "regions",
        "stored region fibers agree with the turn count and the evolution",
        regions_ok,
        Some(format!("{} regions for {} turns", d.regions.len(), turns)),
    ));
    report
}
