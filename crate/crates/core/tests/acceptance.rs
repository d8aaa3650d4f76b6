//! Acceptance gate: every criterion runs once and prints one PASS/FAIL line.
//! The binary exits non-zero if any criterion fails.

use std::time::Instant;

use blf_core::blf::{
    build_spun, build_twist_spun, fiber_after_rounds, fiber_evolution, total_space_euler_characteristic,
    validate, RoundLabel,
};
use blf_core::cerf::{eliminate_definite_round0, replay, FoldKind};
use blf_core::document::{emit, load, Document};
use blf_core::monodromy::{hv_matrix, monodromy_matrix};
use blf_core::orbits::{format_orbit, orbits, phi, phi_action, HandleRef};
use blf_core::surface::build_seifert_surface;
use blf_core::svg::render_document;
use blf_core::{IntPoly, TorusKnotParams};

const PAIRS: [(u32, u32); 5] = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn t(p: u32, q: u32) -> TorusKnotParams {
    TorusKnotParams::new(p, q).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Alexander polynomial as a truncated power series,
/// `(1-t)(1-t^{pq}) Σ t^{pi} Σ t^{qj}`, with machine integers.
fn alexander_series(p: usize, q: usize) -> Vec<i64> {
    let deg = (p - 1) * (q - 1);
    let mut geo = vec![0i64; deg + 1];
    for i in (0..=deg).step_by(p) {
        for j in (0..=deg - i).step_by(q) {
            geo[i + j] += 1;
        }
    }
    // multiply by (1 - t); the t^{pq} term lies beyond the degree
    (0..=deg)
        .map(|k| geo[k] - if k > 0 { geo[k - 1] } else { 0 })
        .collect()
}

fn surface_invariants() -> Outcome {
    for (p, q) in PAIRS {
        let s = build_seifert_surface(t(p, q)).map_err(|e| e.to_string())?;
        let (v, e) = (s.vertices().len(), s.edges().len());
        let b = s.boundary_components().count;
        let b1 = s.cycle_basis().rank();
        let (p, q) = (p as usize, q as usize);
        ensure(v == p + q && e == p * q, || format!("T({p},{q}): {v} vertices, {e} edges"))?;
        ensure(b == 1, || format!("T({p},{q}): {b} boundary components"))?;
        ensure(2 * s.genus() == (p - 1) * (q - 1), || format!("T({p},{q}): genus {}", s.genus()))?;
        ensure(b1 == (p - 1) * (q - 1), || format!("T({p},{q}): b1 {b1}"))?;
    }
    let s = build_seifert_surface(t(2, 3)).unwrap();
    ensure(s.vertices().len() == 5 && s.edges().len() == 6, || "trefoil handle counts".into())?;
    Ok("5 pairs; trefoil 5 0-handles, 6 1-handles".into())
}

fn monodromy_equals_hv() -> Outcome {
    for (p, q) in PAIRS {
        let h = monodromy_matrix(t(p, q)).unwrap().matrix;
        let hv = hv_matrix(t(p, q)).unwrap().matrix;
        if let Some((i, j)) = h.first_difference(&hv) {
            return Err(format!("T({p},{q}) differs at ({i},{j})"));
        }
    }
    Ok("entrywise equal on 5 pairs".into())
}

fn alexander_oracle() -> Outcome {
    for (p, q) in PAIRS {
        let charpoly = monodromy_matrix(t(p, q)).unwrap().matrix.characteristic_polynomial();
        let oracle = IntPoly::from_i64s(&alexander_series(p as usize, q as usize));
        ensure(charpoly.eq_up_to_unit(&oracle), || format!("T({p},{q}): {charpoly} vs {oracle}"))?;
    }
    let trefoil = monodromy_matrix(t(2, 3)).unwrap().matrix.characteristic_polynomial();
    ensure(trefoil.to_string() == "t^2 - t + 1", || format!("trefoil {trefoil}"))?;
    Ok(format!("trefoil {trefoil}"))
}

fn periodicity() -> Outcome {
    for (p, q) in PAIRS {
        let params = t(p, q);
        let h = monodromy_matrix(params).unwrap().matrix;
        ensure(h.pow(params.period()).is_identity(), || format!("T({p},{q}): h^pq ≠ I"))?;
        let mut x = phi(params, HandleRef::Band(0, 0));
        let mut order = 1u64;
        while x != HandleRef::Band(0, 0) {
            x = phi(params, x);
            order += 1;
        }
        ensure(order == params.period(), || format!("T({p},{q}): φ order {order}"))?;
        ensure(phi_action(params).unwrap().perm1.order() == params.period(), || {
            format!("T({p},{q}): permutation order")
        })?;
    }
    Ok("h^pq = I and ord φ = pq on 5 pairs".into())
}

fn orbit_table() -> Outcome {
    let params = t(2, 3);
    let table: Vec<String> = orbits(&phi_action(params).unwrap())
        .iter()
        .map(|o| format_orbit(params, o))
        .collect();
    ensure(table == ["{A→B}", "{C→D→E}", "{α→μ→β→κ→γ→λ}"], || format!("{table:?}"))?;
    for (p, q) in PAIRS {
        let lengths: Vec<usize> = orbits(&phi_action(t(p, q)).unwrap()).iter().map(|o| o.length).collect();
        ensure(lengths == [p as usize, q as usize, (p * q) as usize], || {
            format!("T({p},{q}): {lengths:?}")
        })?;
    }
    Ok(table.join(" "))
}

fn spun_windings() -> Outcome {
    for (p, q) in PAIRS {
        let d = build_spun(t(p, q)).map_err(|e| e.to_string())?;
        let want = [p, q, p, q, p * q, p * q, 1];
        ensure(d.windings() == want, || format!("T({p},{q}): {:?}", d.windings()))?;
    }
    let d = build_spun(t(2, 3)).unwrap();
    let labels: Vec<String> = d.rounds.iter().map(|r| r.label.to_string()).collect();
    ensure(labels == ["R0H", "R0V", "RH", "RV", "RI", "RII", "R∂"], || format!("{labels:?}"))?;
    Ok(format!("trefoil {:?}", d.windings()))
}

fn spun_evolution() -> Outcome {
    for (p, q) in PAIRS {
        let d = build_spun(t(p, q)).map_err(|e| e.to_string())?;
        let n = (p + q) as usize;
        let after = fiber_after_rounds(&d);
        let after_r0 = after[1].clone().unwrap();
        let after_rhv = after[3].clone().unwrap();
        ensure(after_r0.count_genus(0) == n && after_r0.components() == n, || {
            format!("T({p},{q}) after round 0s: {after_r0}")
        })?;
        ensure(after_rhv.count_genus(1) == n && after_rhv.components() == n, || {
            format!("T({p},{q}) after RH+RV: {after_rhv}")
        })?;
        let ev = fiber_evolution(&d).map_err(|e| e.to_string())?;
        for (i, w) in ev.windows(2).enumerate() {
            let step = w[1].euler_characteristic() - w[0].euler_characteristic();
            ensure(step.abs() == 2, || format!("T({p},{q}) turn {i}: Δχ = {step}"))?;
        }
        ensure(ev.last().unwrap().is_single_sphere(), || format!("T({p},{q}) final {}", ev.last().unwrap()))?;
        ensure(total_space_euler_characteristic(&d) == Some(2), || format!("T({p},{q}) total χ"))?;
        let report = validate(&d);
        ensure(report.passed(), || report.to_string())?;
    }
    Ok("p+q spheres, p+q tori, Δχ = ±2, S² outside, χ = 2".into())
}

fn twist_spun_shape() -> Outcome {
    for k in 1..=3 {
        let d = build_twist_spun(TorusKnotParams::twisted(2, 3, k).unwrap()).map_err(|e| e.to_string())?;
        let body: Vec<_> = d.rounds.iter().filter(|r| r.label != RoundLabel::RBoundary).collect();
        let count = |idx: u8| body.iter().filter(|r| r.index == idx).count();
        ensure((count(0), count(1), count(2)) == (5, 6, 6), || {
            format!("k={k}: {:?}", (count(0), count(1), count(2)))
        })?;
        ensure(body.iter().all(|r| r.winding == k), || format!("k={k}: windings"))?;
        let tail: Vec<_> = d.rounds.iter().filter(|r| r.label == RoundLabel::RBoundary).collect();
        ensure(tail.len() == 1 && tail[0].index == 2 && tail[0].winding == 1, || {
            format!("k={k}: boundary round")
        })?;
    }
    Ok("5/6/6 rounds winding k plus one winding 1, k = 1..3".into())
}

fn cerf_elimination() -> Outcome {
    for n in 1..=8 {
        let e = eliminate_definite_round0(n).map_err(|e| e.to_string())?;
        ensure(e.output.count(FoldKind::Definite) == 0, || format!("n={n}: definite circles remain"))?;
        let states = replay(&e.input, &e.script).map_err(|e| format!("n={n}: {e}"))?;
        for (i, s) in states.iter().enumerate() {
            ensure(s.first_inconsistency().is_none(), || format!("n={n}: step {i} inconsistent"))?;
        }
        let replayed = serde_json::to_vec(states.last().unwrap()).unwrap();
        ensure(replayed == serde_json::to_vec(&e.output).unwrap(), || format!("n={n}: replay differs"))?;
        if n == 3 {
            let mid = e.before_gay();
            let counts = (mid.count(FoldKind::Definite), mid.count(FoldKind::Indefinite));
            ensure(counts == (1, 2), || format!("n=3 intermediate {counts:?}"))?;
        }
    }
    Ok("n = 1..8 definite-free; n=3 passes through 1 definite + 2 indefinite".into())
}

fn determinism() -> Outcome {
    let mut docs = Vec::new();
    for (p, q) in PAIRS {
        docs.push(Document::descriptor(build_spun(t(p, q)).unwrap(), format!("blf --p {p} --q {q}")));
    }
    for k in 1..=3 {
        let params = TorusKnotParams::twisted(2, 3, k).unwrap();
        docs.push(Document::descriptor(build_twist_spun(params).unwrap(), format!("blf --twist {k}")));
    }
    let e = eliminate_definite_round0(4).unwrap();
    docs.push(Document::fold_diagram(e.output, e.script, "cerf eliminate --winding 4"));
    for doc in &docs {
        let text = emit(doc);
        let back = load(&text).map_err(|e| e.to_string())?;
        ensure(&back == doc && emit(&back) == text, || format!("round trip: {}", doc.provenance.input))?;
        ensure(render_document(doc) == render_document(&back), || "svg differs".into())?;
    }
    Ok(format!("{} documents round-trip; SVG byte-identical", docs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("surface invariants", surface_invariants),
        ("twist product equals (HV)_*", monodromy_equals_hv),
        ("Alexander polynomial oracle", alexander_oracle),
        ("periodicity", periodicity),
        ("handle orbits", orbit_table),
        ("spun descriptor windings", spun_windings),
        ("spun fiber evolution", spun_evolution),
        ("twist-spun descriptor", twist_spun_shape),
        ("definite fold elimination", cerf_elimination),
        ("determinism and round trip", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    let elapsed = start.elapsed();
    println!("acceptance: {} of 10 passed in {:.2?}", 10 - failed, elapsed);
    if failed > 0 || elapsed.as_secs_f64() > 10.0 {
        std::process::exit(1);
    }
}
