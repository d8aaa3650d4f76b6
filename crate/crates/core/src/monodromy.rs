//! Action of the torus-knot monodromy on the first homology of the fiber.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::matrix::IntMatrix;
use crate::params::{ParamError, TorusKnotParams};
use crate::poly::IntPoly;
use crate::report::{Check, Report};
use crate::surface::{build_seifert_surface, Cycle, CycleBasis, RibbonSurface, SurfaceError};

/// Integer matrix acting on coordinates with respect to the basis named by
/// `basis_tag`. Column `k` is the image of the `k`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyAction {
    pub matrix: IntMatrix,
    pub basis_tag: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chirality {
    /// Right-handed twist, `x ↦ x + ⟨x,γ⟩γ`.
    Right,
    Left,
}

impl Chirality {
    pub fn sign(self) -> i64 {
        match self {
            Chirality::Right => 1,
            Chirality::Left => -1,
        }
    }
}

/// Order in which the rows of cell curves are composed. Within a row the
/// twist along `γ_{i,0}` always acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowOrder {
    /// Row `p-2` acts first, row 0 last.
    #[default]
    TopToBottom,
    /// Row 0 acts first.
    BottomToTop,
}

impl HomologyAction {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `Mᵀ G M = G`.
    pub fn preserves_form(&self, gram: &IntMatrix) -> bool {
        &(&self.matrix.transpose() * gram) * &self.matrix == *gram
    }
}

/// Dehn twist along `gamma` acting on `H_1` in `basis`.
pub fn transvection(
    surface: &RibbonSurface,
    basis: &CycleBasis,
    gamma: &Cycle,
    chirality: Chirality,
) -> Result<HomologyAction, SurfaceError> {
    surface.check_cycle(gamma)?;
    if gamma.is_zero() {
        return Err(SurfaceError::ZeroCycle);
    }
    let mut columns = Vec::with_capacity(basis.rank());
    for b in &basis.cycles {
        let k = chirality.sign() * surface.intersection_number(b, gamma)?;
        columns.push(basis.coordinates(&b.add_scaled(gamma, k)));
    }
    Ok(HomologyAction {
        matrix: IntMatrix::from_columns(basis.rank(), &columns),
        basis_tag: basis.tag.clone(),
    })
}

/// Product of right-handed twists along all cell curves, in the default
/// row order.
pub fn monodromy_matrix(params: TorusKnotParams) -> Result<HomologyAction, ParamError> {
    monodromy_matrix_with(params, RowOrder::default(), Chirality::Right)
}

pub fn monodromy_matrix_with(
    params: TorusKnotParams,
    order: RowOrder,
    chirality: Chirality,
) -> Result<HomologyAction, ParamError> {
    let surface = build_seifert_surface(params)?;
    let basis = surface.cycle_basis();
    let curves = surface.twist_curves().expect("torus surface");
    let mut rows: Vec<u32> = (0..params.p - 1).collect();
    if order == RowOrder::TopToBottom {
        rows.reverse();
    }
    let mut m = IntMatrix::identity(basis.rank());
    for row in rows {
        for c in curves.iter().filter(|c| c.row == row) {
            let t = transvection(&surface, &basis, &c.cycle, chirality)
                .expect("cell curves are nonzero cycles");
            m = &t.matrix * &m;
        }
    }
    Ok(HomologyAction {
        matrix: m,
        basis_tag: basis.tag,
    })
}

/// Action induced by relabelling bands `(m,n) ↦ (m+1, n-1)`. Edge
/// orientations are preserved, so a cycle maps to the permuted chain.
pub fn hv_matrix(params: TorusKnotParams) -> Result<HomologyAction, ParamError> {
    let surface = build_seifert_surface(params)?;
    let basis = surface.cycle_basis();
    let (p, q) = (params.p, params.q);
    let columns: Vec<Vec<BigInt>> = basis
        .cycles
        .iter()
        .map(|b| {
            let mut image = Cycle::zero(b.coefficients.len());
            for (e, &x) in b.coefficients.iter().enumerate() {
                let (m, n) = surface.edges()[e].label;
                let target = surface.band((m + 1) % p, (n + q - 1) % q).unwrap();
                image.coefficients[target] = x;
            }
            basis.coordinates(&image)
        })
        .collect();
    Ok(HomologyAction {
        matrix: IntMatrix::from_columns(basis.rank(), &columns),
        basis_tag: basis.tag,
    })
}

/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` by exact division.
pub fn alexander_polynomial(params: TorusKnotParams) -> Result<IntPoly, ParamError> {
    params.validate()?;
    let (p, q) = (params.p as usize, params.q as usize);
    let num = &IntPoly::cyclotomic_difference(p * q) * &IntPoly::cyclotomic_difference(1);
    let den = &IntPoly::cyclotomic_difference(p) * &IntPoly::cyclotomic_difference(q);
    Ok(num.exact_div(&den).expect("torus knot quotient is exact"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub params: TorusKnotParams,
    pub row_order: RowOrder,
    pub chirality: Chirality,
    pub monodromy: HomologyAction,
    pub hv: HomologyAction,
    pub characteristic_polynomial: IntPoly,
    pub alexander_polynomial: IntPoly,
    /// Order of `(HV)_*`, searched up to `pq`.
    pub hv_order: Option<u64>,
    /// The boundary rotation in the isotopy between the two maps is
    /// supported in a collar, so it acts as the identity on `H_1`.
    pub boundary_rotation: String,
    pub report: Report,
}

impl MonodromyReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// The three verdicts for a pair of matrices in a common basis.
pub fn compare_actions(monodromy: &IntMatrix, hv: &IntMatrix, params: TorusKnotParams) -> Vec<Check> {
    let alexander = alexander_polynomial(params).expect("valid params");
    let charpoly = monodromy.characteristic_polynomial();
    let period = params.period();
    let diff = monodromy.first_difference(hv);
    vec![
        Check::new(
            "h-equals-hv",
            "twist product equals the permutation-induced action",
            diff.is_none(),
            diff.map(|(i, j)| format!("entry ({i},{j}): {} vs {}", monodromy[(i, j)], hv[(i, j)])),
        ),
        Check::new(
            "alexander",
            "characteristic polynomial equals the Alexander polynomial up to ±t^j",
            charpoly.eq_up_to_unit(&alexander),
            Some(format!("char = {charpoly}; alexander = {alexander}")),
        ),
        Check::new(
            "periodic",
            "monodromy^(pq) is the identity",
            monodromy.pow(period).is_identity(),
            Some(format!("pq = {period}")),
        ),
    ]
}

pub fn verify_monodromy_identity(params: TorusKnotParams) -> Result<MonodromyReport, ParamError> {
    verify_monodromy_identity_with(params, RowOrder::default())
}

pub fn verify_monodromy_identity_with(
    params: TorusKnotParams,
    row_order: RowOrder,
) -> Result<MonodromyReport, ParamError> {
    let monodromy = monodromy_matrix_with(params, row_order, Chirality::Right)?;
    let hv = hv_matrix(params)?;
    let mut report = Report::new(format!("monodromy of T({},{})", params.p, params.q));
    for c in compare_actions(&monodromy.matrix, &hv.matrix, params) {
        report.push(c);
    }
    Ok(MonodromyReport {
        params,
        row_order,
        chirality: Chirality::Right,
        characteristic_polynomial: monodromy.matrix.characteristic_polynomial(),
        alexander_polynomial: alexander_polynomial(params)?,
        hv_order: hv.matrix.order_up_to(params.period()),
        boundary_rotation: "identity on H_1".to_string(),
        monodromy,
        hv,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u32, q: u32) -> TorusKnotParams {
        TorusKnotParams::new(p, q).unwrap()
    }

    /// Oracle: multiply out the closed form by hand-written coefficients.
    #[test]
    fn alexander_closed_forms() {
        assert_eq!(alexander_polynomial(t(2, 3)).unwrap(), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(
            alexander_polynomial(t(2, 5)).unwrap(),
            IntPoly::from_i64s(&[1, -1, 1, -1, 1])
        );
        // Δ_{3,4} = t^6 - t^5 + t^3 - t + 1
        assert_eq!(
            alexander_polynomial(t(3, 4)).unwrap(),
            IntPoly::from_i64s(&[1, -1, 0, 1, 0, -1, 1])
        );
        for (p, q) in [(2, 7), (3, 5), (4, 5), (5, 6)] {
            let d = alexander_polynomial(t(p, q)).unwrap();
            assert_eq!(d.degree(), Some(((p - 1) * (q - 1)) as usize));
            assert_eq!(d.eval(&BigInt::from(1)), BigInt::from(1));
        }
    }

    #[test]
    fn trefoil_transvections() {
        let s = build_seifert_surface(t(2, 3)).unwrap();
        let basis = s.cycle_basis();
        let curves = s.twist_curves().unwrap();
        let g1 = &curves[0].cycle;
        let t1 = transvection(&s, &basis, g1, Chirality::Right).unwrap();
        assert_eq!(t1.matrix.determinant(), BigInt::from(1));
        // τ_γ(γ) = γ
        let coords = basis.coordinates(g1);
        assert_eq!(t1.matrix.mul_vec(&coords), coords);
        // in the basis (γ1, γ2) the twist is [[1, ±1], [0, 1]]
        let change = IntMatrix::from_columns(
            2,
            &curves.iter().map(|c| basis.coordinates(&c.cycle)).collect::<Vec<_>>(),
        );
        assert_eq!(change.determinant().magnitude(), &1u32.into());
        let x = s.intersection_number(&curves[1].cycle, g1).unwrap();
        let image = t1.matrix.mul_vec(&basis.coordinates(&curves[1].cycle));
        let expected = basis.coordinates(&curves[1].cycle.add_scaled(g1, x));
        assert_eq!(image, expected);
        assert_eq!(x.abs(), 1);
    }

    #[test]
    fn zero_cycle_has_no_twist() {
        let s = build_seifert_surface(t(2, 3)).unwrap();
        let basis = s.cycle_basis();
        assert_eq!(
            transvection(&s, &basis, &Cycle::zero(6), Chirality::Right),
            Err(SurfaceError::ZeroCycle)
        );
    }

    #[test]
    fn trefoil_monodromy() {
        let h = monodromy_matrix(t(2, 3)).unwrap();
        assert_eq!(h.matrix.characteristic_polynomial(), IntPoly::from_i64s(&[1, -1, 1]));
        assert_eq!(h.matrix.order_up_to(100), Some(6));
        assert_eq!(h.matrix.determinant(), BigInt::from(1));
        assert_eq!(hv_matrix(t(2, 3)).unwrap().matrix.order_up_to(100), Some(6));
    }

    #[test]
    fn identity_holds_with_top_to_bottom_rows() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (2, 7), (3, 7)] {
            let r = verify_monodromy_identity(t(p, q)).unwrap();
            assert!(r.passed(), "{}", r.report);
            assert_eq!(r.row_order, RowOrder::TopToBottom);
        }
    }

    /// With the rows composed the other way the product is still a
    /// monodromy of the right conjugacy type but not equal to `(HV)_*`.
    #[test]
    fn bottom_to_top_rows_break_equality() {
        let r = verify_monodromy_identity_with(t(3, 4), RowOrder::BottomToTop).unwrap();
        assert!(!r.report.get("h-equals-hv").unwrap().passed());
        assert!(r.report.get("alexander").unwrap().passed());
        // a single row leaves nothing to reorder
        assert!(verify_monodromy_identity_with(t(2, 5), RowOrder::BottomToTop)
            .unwrap()
            .passed());
    }

    #[test]
    fn actions_preserve_intersection_form() {
        for (p, q) in [(2, 3), (3, 4), (3, 5)] {
            let s = build_seifert_surface(t(p, q)).unwrap();
            let g = s.gram_matrix(&s.cycle_basis());
            assert!(monodromy_matrix(t(p, q)).unwrap().preserves_form(&g));
            assert!(hv_matrix(t(p, q)).unwrap().preserves_form(&g));
            let left = monodromy_matrix_with(t(p, q), RowOrder::default(), Chirality::Left).unwrap();
            assert!(left.preserves_form(&g));
        }
    }

    #[test]
    fn verdicts_survive_change_of_basis() {
        let params = t(3, 4);
        let h = monodromy_matrix(params).unwrap().matrix;
        let hv = hv_matrix(params).unwrap().matrix;
        // P = I + 2 E_{0,5} - E_{3,1}, P⁻¹ = I - 2 E_{0,5} + E_{3,1}
        let n = h.rows();
        let mut p = IntMatrix::identity(n);
        let mut pinv = IntMatrix::identity(n);
        p[(0, 5)] = BigInt::from(2);
        p[(3, 1)] = BigInt::from(-1);
        pinv[(0, 5)] = BigInt::from(-2);
        pinv[(3, 1)] = BigInt::from(1);
        assert!((&p * &pinv).is_identity());
        let conj = |m: &IntMatrix| &(&pinv * m) * &p;
        let before = compare_actions(&h, &hv, params);
        let after = compare_actions(&conj(&h), &conj(&hv), params);
        let verdicts = |v: &[Check]| v.iter().map(|c| c.status).collect::<Vec<_>>();
        assert_eq!(verdicts(&before), verdicts(&after));
        let bad = monodromy_matrix_with(params, RowOrder::BottomToTop, Chirality::Right)
            .unwrap()
            .matrix;
        assert_eq!(
            verdicts(&compare_actions(&bad, &hv, params)),
            verdicts(&compare_actions(&conj(&bad), &conj(&hv), params))
        );
    }

    #[test]
    fn report_serializes() {
        let r = verify_monodromy_identity(t(2, 3)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: MonodromyReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.hv_order, Some(6));
    }
}
