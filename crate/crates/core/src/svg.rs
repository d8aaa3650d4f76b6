//! Concentric base diagrams as SVG 1.1.
//!
//! Each fold turn is one circle around the centre of the base disk: a round
//! handle of winding `w` is drawn as `w` circles. Definite folds are dashed,
//! indefinite folds solid. Output depends only on the input.

use std::fmt::Write;

use crate::blf::{BLFDescriptor, RegionFiber};
use crate::cerf::{FoldDiagram, FoldKind};
use crate::document::{Body, Document};
use crate::fiber::FiberState;

const SIZE: f64 = 800.0;
const CENTRE: f64 = SIZE / 2.0;
const DISK: f64 = 380.0;

struct Ring {
    kind: FoldKind,
    /// Drawn on the first turn of a round handle or circle.
    label: Option<String>,
}

struct Scene {
    rings: Vec<Ring>,
    /// `(j, text)`: label for the region just inside ring `j`; `j = rings`
    /// is the outermost region.
    regions: Vec<(usize, String)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fiber_label(f: &FiberState) -> String {
    let genera: Vec<String> = f.genera().iter().map(u32::to_string).collect();
    format!("{}: [{}]", f.components(), genera.join(","))
}

fn descriptor_scene(d: &BLFDescriptor) -> Scene {
    let mut rings = Vec::new();
    for r in &d.rounds {
        let kind = if r.index == 0 {
            FoldKind::Definite
        } else {
            FoldKind::Indefinite
        };
        for turn in 0..r.winding {
            rings.push(Ring {
                kind,
                label: (turn == 0).then(|| format!("{} w={}", r.label, r.winding)),
            });
        }
    }
    let regions = d
        .regions
        .iter()
        .enumerate()
        .map(|(j, f)| {
            let text = match f {
                RegionFiber::Known(s) => fiber_label(s),
                RegionFiber::Unspecified => "?".to_string(),
            };
            (j, text)
        })
        .collect();
    Scene { rings, regions }
}

fn diagram_scene(d: &FoldDiagram) -> Scene {
    let mut rings = Vec::new();
    let mut regions = Vec::new();
    for (i, c) in d.circles.iter().enumerate() {
        regions.push((rings.len(), fiber_label(&d.regions[i])));
        for turn in 0..c.winding {
            rings.push(Ring {
                kind: c.kind,
                label: (turn == 0).then(|| {
                    format!("w={} cusps={} st={}", c.winding, c.cusps, c.swallowtails)
                }),
            });
        }
    }
    if let Some(last) = d.regions.last() {
        regions.push((rings.len(), fiber_label(last)));
    }
    Scene { rings, regions }
}

fn render_scene(scene: &Scene, title: &str) -> String {
    let mut out = String::new();
    let n = scene.rings.len();
    let radius = |j: usize| DISK * (j as f64 + 1.0) / (n as f64 + 1.0);
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.2}" height="{SIZE:.2}" viewBox="0 0 {SIZE:.2} {SIZE:.2}">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(
        out,
        r##"<circle class="base" cx="{CENTRE:.2}" cy="{CENTRE:.2}" r="{DISK:.2}" fill="#f7f7f2" stroke="#000000" stroke-width="1.00"/>"##
    )
    .unwrap();
    for (j, ring) in scene.rings.iter().enumerate() {
        let (class, dash) = match ring.kind {
            FoldKind::Definite => ("definite", r#" stroke-dasharray="4.00 3.00""#),
            FoldKind::Indefinite => ("indefinite", ""),
        };
        writeln!(
            out,
            r##"<circle class="fold {class}" cx="{CENTRE:.2}" cy="{CENTRE:.2}" r="{:.2}" fill="none" stroke="#1f3a93" stroke-width="1.20"{dash}/>"##,
            radius(j)
        )
        .unwrap();
        if let Some(label) = &ring.label {
            writeln!(
                out,
                r#"<text class="winding" x="{:.2}" y="{:.2}" font-size="9.00" font-family="sans-serif">{}</text>"#,
                CENTRE + 2.0,
                CENTRE - radius(j) - 1.0,
                escape(label)
            )
            .unwrap();
        }
    }
    if n > 0 {
        for (k, (j, text)) in scene.regions.iter().enumerate() {
            let inner = if *j == 0 { 0.0 } else { radius(j - 1) };
            let outer = if *j == n { DISK } else { radius(*j) };
            let r = (inner + outer) / 2.0;
            // fan the labels out so neighbouring regions do not overlap
            let angle = (20.0 + 47.0 * k as f64).to_radians();
            writeln!(
                out,
                r#"<text class="region" x="{:.2}" y="{:.2}" font-size="8.00" font-family="sans-serif" text-anchor="middle">{}</text>"#,
                CENTRE + r * angle.cos(),
                CENTRE + r * angle.sin(),
                escape(text)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_descriptor(d: &BLFDescriptor) -> String {
    render_scene(&descriptor_scene(d), &format!("base diagram of the fibration for {}", d.params))
}

pub fn render_diagram(d: &FoldDiagram) -> String {
    render_scene(&diagram_scene(d), "fold diagram")
}

pub fn render_document(doc: &Document) -> String {
    match &doc.body {
        Body::Descriptor { descriptor, .. } => render_descriptor(descriptor),
        Body::FoldDiagram { diagram, .. } => render_diagram(diagram),
    }
}
