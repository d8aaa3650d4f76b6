//! The handle permutation `φ = HV` and its orbits.
//!
//! `H` rotates the horizontal flaps `m ↦ m+1`, `V` rotates the vertical
//! flaps `n ↦ n-1`, and bands follow both: `(m,n) ↦ (m+1, n-1)`. Each orbit
//! becomes one round handle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::params::{ParamError, TorusKnotParams};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HandleRef {
    Horizontal(u32),
    Vertical(u32),
    Band(u32, u32),
}

impl HandleRef {
    pub fn index(self) -> u8 {
        match self {
            HandleRef::Band(..) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for HandleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HandleRef::Horizontal(m) => write!(f, "H{m}"),
            HandleRef::Vertical(n) => write!(f, "V{n}"),
            HandleRef::Band(m, n) => write!(f, "({m},{n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HandleClass {
    Horizontal,
    Vertical,
    Band,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub class: HandleClass,
    pub handle_index: u8,
    /// Traversal order under `φ`, starting from the least member.
    pub members: Vec<HandleRef>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleOrbitAction {
    pub params: TorusKnotParams,
    pub perm0_horizontal: Permutation,
    pub perm0_vertical: Permutation,
    /// On bands indexed `m*q + n`.
    pub perm1: Permutation,
}

pub fn phi(params: TorusKnotParams, h: HandleRef) -> HandleRef {
    let (p, q) = (params.p, params.q);
    match h {
        HandleRef::Horizontal(m) => HandleRef::Horizontal((m + 1) % p),
        HandleRef::Vertical(n) => HandleRef::Vertical((n + q - 1) % q),
        HandleRef::Band(m, n) => HandleRef::Band((m + 1) % p, (n + q - 1) % q),
    }
}

/// `φ^t(0,0) = (t mod p, -t mod q)`.
pub fn phi_power_of_base_band(params: TorusKnotParams, t: u64) -> (u32, u32) {
    let (p, q) = (params.p as u64, params.q as u64);
    ((t % p) as u32, ((q - t % q) % q) as u32)
}

pub fn phi_action(params: TorusKnotParams) -> Result<HandleOrbitAction, ParamError> {
    params.validate()?;
    let (p, q) = (params.p as usize, params.q as usize);
    let band = |m: usize, n: usize| m * q + n;
    Ok(HandleOrbitAction {
        params,
        perm0_horizontal: Permutation::from_images((0..p).map(|m| (m + 1) % p).collect()),
        perm0_vertical: Permutation::from_images((0..q).map(|n| (n + q - 1) % q).collect()),
        perm1: Permutation::from_images(
            (0..p * q)
                .map(|i| band((i / q + 1) % p, (i % q + q - 1) % q))
                .collect(),
        ),
    })
}

type Namer<'a> = &'a dyn Fn(usize) -> HandleRef;

pub fn orbits(action: &HandleOrbitAction) -> Vec<Orbit> {
    let q = action.params.q;
    let mut out = Vec::new();
    let classes: [(HandleClass, &Permutation, Namer); 3] = [
        (HandleClass::Horizontal, &action.perm0_horizontal, &|i| {
            HandleRef::Horizontal(i as u32)
        }),
        (HandleClass::Vertical, &action.perm0_vertical, &|i| HandleRef::Vertical(i as u32)),
        (HandleClass::Band, &action.perm1, &|i| {
            HandleRef::Band(i as u32 / q, i as u32 % q)
        }),
    ];
    for (class, perm, name) in classes {
        for cycle in perm.cycles() {
            let members: Vec<HandleRef> = cycle.into_iter().map(name).collect();
            out.push(Orbit {
                class,
                handle_index: members[0].index(),
                length: members.len(),
                members,
            });
        }
    }
    out
}

impl HandleOrbitAction {
    pub fn band_order(&self) -> u64 {
        self.perm1.order()
    }
}

/// Letters used for the trefoil's handles: `A, B` for the horizontal flaps,
/// `C, D, E` for the vertical flaps and Greek letters for the bands, both in
/// `φ`-traversal order from the zeroth handle.
pub fn trefoil_label(h: HandleRef) -> Option<&'static str> {
    Some(match h {
        HandleRef::Horizontal(0) => "A",
        HandleRef::Horizontal(1) => "B",
        HandleRef::Vertical(0) => "C",
        HandleRef::Vertical(2) => "D",
        HandleRef::Vertical(1) => "E",
        HandleRef::Band(0, 0) => "α",
        HandleRef::Band(1, 2) => "μ",
        HandleRef::Band(0, 1) => "β",
        HandleRef::Band(1, 0) => "κ",
        HandleRef::Band(0, 2) => "γ",
        HandleRef::Band(1, 1) => "λ",
        _ => return None,
    })
}

/// Orbit rendered as `{x→y→…}`, with trefoil letters when `(p,q) = (2,3)`.
pub fn format_orbit(params: TorusKnotParams, orbit: &Orbit) -> String {
    let trefoil = (params.p, params.q) == (2, 3);
    let names: Vec<String> = orbit
        .members
        .iter()
        .map(|&h| match trefoil_label(h) {
            Some(l) if trefoil => l.to_string(),
            _ => h.to_string(),
        })
        .collect();
    format!("{{{}}}", names.join("→"))
}
