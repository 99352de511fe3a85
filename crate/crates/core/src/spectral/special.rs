use serde::Serialize;

use super::radius::{spectral_radius, Evidence, RadiusBracket};
use crate::error::{Error, Result};
use crate::graph::{build_closed_quipu, build_open_quipu, ClosedQuipuSpec, OpenQuipuSpec};
use crate::transfer::{d2, rho_mk_function, LambdaPoint, Real};

/// Solver window for the `ρ_{m,k}` and `ρ_m` root functions.
pub const SOLVER_LO: f64 = 2.0 + 1e-9;
pub const SOLVER_HI: f64 = 3.0;
const SCAN_STEP: f64 = 1.0 / 4096.0;

fn sign_at(f: &dyn Fn(&LambdaPoint<Real>) -> Real, x: f64) -> Result<i32> {
    let pt = LambdaPoint::<Real>::from_f64(x)?;
    let v = f(&pt);
    Ok(if v > Real::from(0.0) {
        1
    } else if v < Real::from(0.0) {
        -1
    } else {
        0
    })
}

/// Largest sign change of `f` in the solver window, bisected to width `tol`.
fn largest_sign_change(
    f: &dyn Fn(&LambdaPoint<Real>) -> Real,
    tol: f64,
    what: &str,
) -> Result<RadiusBracket> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Config(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut hi = SOLVER_HI;
    let s_hi = sign_at(f, hi)?;
    if s_hi == 0 {
        return Ok(RadiusBracket::new(hi, hi, Evidence::SignChange));
    }
    let mut lo = hi;
    loop {
        let next = (lo - SCAN_STEP).max(SOLVER_LO);
        let s = sign_at(f, next)?;
        if s == 0 {
            return Ok(RadiusBracket::new(next, next, Evidence::SignChange));
        }
        if s != s_hi {
            lo = next;
            break;
        }
        hi = next;
        lo = next;
        if next == SOLVER_LO {
            return Err(Error::RootNotLocated(format!(
                "{what}: no sign change in ({SOLVER_LO}, {SOLVER_HI})"
            )));
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match sign_at(f, mid)? {
            0 => return Ok(RadiusBracket::new(mid, mid, Evidence::SignChange)),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(RadiusBracket::new(lo, hi, Evidence::SignChange))
}

/// `ρ_{m,k}`, the largest root of `d2 x2^{(k−1)/2} − d1 x1^{(k−1)/2}`.
pub fn rho_mk(m: usize, k: usize, tol: f64) -> Result<RadiusBracket> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidSpec(format!(
            "rho_mk needs m, k >= 1, got ({m},{k})"
        )));
    }
    largest_sign_change(
        &|pt| rho_mk_function(m, k, pt),
        tol,
        &format!("rho_mk({m},{k})"),
    )
}

/// `ρ_m = lim_k ρ_{m,k}`, the largest root of `d_m^(2)`.
pub fn rho_limit(m: usize, tol: f64) -> Result<RadiusBracket> {
    if m == 0 {
        return Err(Error::InvalidSpec("rho_limit needs m >= 1".into()));
    }
    largest_sign_change(&|pt| d2(m, pt), tol, &format!("rho_limit({m})"))
}

/// Outcome of checking that `C_{m,k,r}`, `C_{m,k,1}` and `P_{m,k,r}` all
/// have spectral radius `ρ_{m,k}`.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringCheck {
    pub m: usize,
    pub k: usize,
    pub r: usize,
    pub rho_mk: RadiusBracket,
    pub closed: RadiusBracket,
    pub closed_base: RadiusBracket,
    pub open: RadiusBracket,
}

fn agree(a: &RadiusBracket, b: &RadiusBracket, tol: f64) -> bool {
    (a.mid() - b.mid()).abs() <= 2.0 * tol
}

/// Builds `C_{m,k,r}`, `C_{m,k,1}` and `P_{m,k,r}` and checks their radii
/// against the `ρ_{m,k}` solver.
pub fn rho_c_mkr_equal(m: usize, k: usize, r: usize, tol: f64) -> Result<CoveringCheck> {
    if m == 0 || k < 2 || r == 0 {
        return Err(Error::InvalidSpec(format!(
            "rho_c_mkr_equal needs m >= 1, k >= 2, r >= 1, got ({m},{k},{r})"
        )));
    }
    let reference = rho_mk(m, k, tol)?;
    let closed = spectral_radius(
        &build_closed_quipu(&ClosedQuipuSpec::uniform(m, k, r)?),
        tol,
    )?;
    let closed_base = spectral_radius(
        &build_closed_quipu(&ClosedQuipuSpec::uniform(m, k, 1)?),
        tol,
    )?;
    let open = spectral_radius(&build_open_quipu(&OpenQuipuSpec::special(m, k, r)?), tol)?;
    for (name, b) in [
        ("C_(m,k,r)", &closed),
        ("C_(m,k,1)", &closed_base),
        ("P_(m,k,r)", &open),
    ] {
        if !agree(b, &reference, tol) {
            return Err(Error::Verification(format!(
                "({m},{k},{r}): {name} radius [{:.15}, {:.15}] differs from rho_mk [{:.15}, {:.15}]",
                b.lo, b.hi, reference.lo, reference.hi
            )));
        }
    }
    Ok(CoveringCheck {
        m,
        k,
        r,
        rho_mk: reference,
        closed,
        closed_base,
        open,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::threshold::THRESHOLD_F64;

    #[test]
    fn corollary_boundaries() {
        let t = THRESHOLD_F64;
        assert!(rho_mk(1, 4, 1e-12).unwrap().hi < t);
        assert!(rho_mk(1, 3, 1e-12).unwrap().lo > t);
        assert!(rho_mk(2, 7, 1e-12).unwrap().hi < t);
        assert!(rho_mk(2, 6, 1e-12).unwrap().lo > t);
    }

    #[test]
    fn solver_matches_built_graphs() {
        for (m, k, r) in [(1, 4, 1), (1, 4, 2), (2, 7, 3)] {
            let a = rho_mk(m, k, 1e-12).unwrap();
            let g = build_open_quipu(&OpenQuipuSpec::special(m, k, r).unwrap());
            let b = spectral_radius(&g, 1e-12).unwrap();
            assert!(
                (a.mid() - b.mid()).abs() <= 2e-12,
                "({m},{k},{r}): {a:?} vs {b:?}"
            );
        }
    }

    #[test]
    fn covering_records() {
        for r in 1..=3 {
            let rec = rho_c_mkr_equal(1, 4, r, 1e-12).unwrap();
            assert!(rec.closed.width() <= 1e-12);
        }
        assert!(rho_c_mkr_equal(1, 1, 1, 1e-12).is_err());
    }

    #[test]
    fn limit_is_approached_from_above() {
        // d2(ρ_{m,k}) = d1 x1^{k−1} > 0, so ρ_{m,k} sits above ρ_m
        for m in 1..=3 {
            let lim = rho_limit(m, 1e-12).unwrap();
            for k in [1, 5, 20] {
                assert!(rho_mk(m, k, 1e-12).unwrap().lo > lim.hi, "m={m} k={k}");
            }
            assert!(rho_limit(m + 1, 1e-12).unwrap().lo > rho_mk(m, 2 * m + 5, 1e-12).unwrap().hi);
        }
    }
}
