//! Real zero sets of plane polynomials.
//!
//! Everything here works over exact arithmetic: x-coordinates of interest are
//! isolated as real algebraic numbers, fibers are specialized over the
//! corresponding extension tower, and sample rationals between critical
//! values certify whether a curve has a one-dimensional real branch.

use crate::alg::{extend, Coef, RealRoot, TowerRef};
use crate::mpoly::{content_wrt, gcd, resultant, MPoly};
use crate::rat::{midpoint, rat_int, BigRat};
use crate::unipoly::{simplest_rat_in, UniPoly};
use crate::{internal, Result};
use num_traits::Zero;
use std::cmp::Ordering;

/// The real zero set of a nonzero plane polynomial.
#[derive(Debug)]
pub enum PlaneZeroSet {
    Empty,
    Finite(Vec<Vec<Coef>>),
    Infinite,
}

/// Converts an isolated root into a scalar, stacking a new tower level only
/// when the root is irrational of degree at least two.
pub fn root_to_coef(root: &RealRoot, parent: Option<&TowerRef>) -> Coef {
    if let Some(c) = root.as_existing_coef() {
        return c;
    }
    let t = extend(parent.cloned(), root.clone());
    Coef::generator(&t)
}

fn specialize_x(p: &MPoly, x: &Coef) -> UniPoly {
    p.set_var(0, x).as_unipoly(1)
}

fn refine_root_step(r: &mut RealRoot) {
    if r.is_exact() {
        return;
    }
    let mid = midpoint(&r.lo, &r.hi);
    let s = r.poly.eval_rat(&mid).sign();
    if s == 0 {
        r.lo = mid.clone();
        r.hi = mid;
        return;
    }
    if r.poly.eval_rat(&r.lo).sign() == s {
        r.lo = mid;
    } else {
        r.hi = mid;
    }
}

/// Rationals strictly interleaving a sorted list of distinct roots:
/// one below all, one in each gap, one above all.
pub fn separating_samples(roots: &mut [RealRoot]) -> Vec<BigRat> {
    if roots.is_empty() {
        return vec![BigRat::zero()];
    }
    for i in 0..roots.len() - 1 {
        while roots[i].hi >= roots[i + 1].lo {
            refine_root_step(&mut roots[i]);
            refine_root_step(&mut roots[i + 1]);
        }
    }
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(roots[0].lo.floor() - rat_int(1));
    for i in 0..roots.len() - 1 {
        out.push(simplest_rat_in(&roots[i].hi, &roots[i + 1].lo));
    }
    out.push(roots.last().unwrap().hi.ceil() + rat_int(1));
    out
}

/// Lexicographic value order on points; usable across unrelated towers.
pub fn sort_points(pts: &mut [Vec<Coef>]) {
    pts.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp_value(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    });
}

/// Decides whether the real zero set of `p` is empty, a finite list of
/// points, or contains a curve.  Requires rational coefficients.
pub fn analyze_plane_zeros(p: &MPoly) -> Result<PlaneZeroSet> {
    assert_eq!(p.nvars(), 2);
    assert!(p.all_rational(), "curve analysis is over rational inputs");
    if p.is_zero() {
        return Ok(PlaneZeroSet::Infinite);
    }
    if p.as_constant().is_some() {
        return Ok(PlaneZeroSet::Empty);
    }
    let sq = p.squarefree_part();
    let content = content_wrt(&sq, 1);
    if content.as_constant().is_none() {
        // a factor depending on x alone: any real root gives a vertical line
        if !content.as_unipoly(0).isolate_real_roots().is_empty() {
            return Ok(PlaneZeroSet::Infinite);
        }
    }
    let prim = sq.div_exact(&content)?;
    if prim.deg_in(1) == 0 {
        // content had no real roots and the primitive part is constant
        return Ok(PlaneZeroSet::Empty);
    }
    let disc = resultant(&prim, &prim.deriv(1), 1)?;
    let lc = prim.rec_coeffs(1).pop().unwrap();
    let rpoly = disc.mul(&lc).as_unipoly(0).normalize_unit();
    let mut roots = rpoly.isolate_real_roots();
    let samples = separating_samples(&mut roots);
    for s in &samples {
        let fiber = specialize_x(&prim, &Coef::from_rat(s.clone()));
        if !fiber.isolate_real_roots().is_empty() {
            return Ok(PlaneZeroSet::Infinite);
        }
    }
    // Every remaining zero is isolated, hence a critical zero: both partial
    // derivatives vanish there, so its x kills the y-resultants against both
    // partials.  Their univariate gcd has small degree, which keeps the
    // towers below far smaller than the full discriminant would.
    let hor = gcd(&prim, &prim.deriv(0));
    let core = if hor.as_constant().is_some() {
        prim.clone()
    } else {
        // y-only factors; none has a real root here or the sample fibers
        // above would have caught a horizontal line
        prim.div_exact(&hor)?
    };
    if core.deg_in(1) == 0 {
        return Ok(PlaneZeroSet::Empty);
    }
    let r1 = resultant(&core, &core.deriv(0), 1)?.as_unipoly(0).normalize_unit();
    let m = r1.gcd_monic(&rpoly);
    let mut pts = Vec::new();
    for root in &m.isolate_real_roots() {
        let xi = root_to_coef(root, None);
        let fiber = specialize_x(&core, &xi).value_trimmed();
        if fiber.is_structural_zero() {
            return Err(internal("primitive curve part vanished on a vertical line"));
        }
        for yr in fiber.isolate_real_roots() {
            let eta = root_to_coef(&yr, xi.tower());
            pts.push(vec![xi.clone(), eta]);
        }
    }
    sort_points(&mut pts);
    Ok(if pts.is_empty() {
        PlaneZeroSet::Empty
    } else {
        PlaneZeroSet::Finite(pts)
    })
}

/// Common real zeros of two coprime plane polynomials (a finite set).
pub fn common_real_zeros(p: &MPoly, q: &MPoly) -> Result<Vec<Vec<Coef>>> {
    assert_eq!(p.nvars(), 2);
    assert_eq!(q.nvars(), 2);
    assert!(p.all_rational() && q.all_rational());
    assert!(!p.is_zero() && !q.is_zero());
    debug_assert!(gcd(p, q).as_constant().is_some(), "inputs must be coprime");
    if p.as_constant().is_some() || q.as_constant().is_some() {
        return Ok(Vec::new());
    }
    let r = resultant(p, q, 1)?.as_unipoly(0).normalize_unit();
    if r.is_structural_zero() {
        return Err(internal("resultant of coprime polynomials vanished"));
    }
    let mut pts = Vec::new();
    for root in r.isolate_real_roots() {
        let xi = root_to_coef(&root, None);
        let pu = specialize_x(p, &xi).value_trimmed();
        let qu = specialize_x(q, &xi).value_trimmed();
        let fiber = if pu.is_structural_zero() {
            qu
        } else if qu.is_structural_zero() {
            pu
        } else {
            pu.gcd_monic(&qu)
        };
        if fiber.is_structural_zero() {
            return Err(internal("coprime polynomials vanished on a common line"));
        }
        for yr in fiber.isolate_real_roots() {
            let eta = root_to_coef(&yr, xi.tower());
            pts.push(vec![xi.clone(), eta]);
        }
    }
    sort_points(&mut pts);
    Ok(pts)
}

/// A point on the one-dimensional part of `Z(p)` where `avoid` is nonzero.
/// Requires `gcd(p, avoid)` constant; errors when no such branch exists.
pub fn curve_point_avoiding(p: &MPoly, avoid: &MPoly) -> Result<Vec<Coef>> {
    assert_eq!(p.nvars(), 2);
    assert!(p.all_rational() && avoid.all_rational());
    assert!(!p.is_zero() && !avoid.is_zero());
    debug_assert!(gcd(p, avoid).as_constant().is_some());
    let sq = p.squarefree_part();
    let content = content_wrt(&sq, 1);
    if content.as_constant().is_none() {
        for root in content.as_unipoly(0).isolate_real_roots() {
            let xi = root_to_coef(&root, None);
            let u = specialize_x(avoid, &xi).value_trimmed();
            if u.is_structural_zero() {
                continue;
            }
            // finitely many bad heights on the vertical line
            for k in 0..=u.deg().unwrap_or(0) as i64 {
                let y = rat_int(k);
                if !u.eval_rat(&y).is_zero() {
                    return Ok(vec![xi, Coef::from_rat(y)]);
                }
            }
            return Err(internal("all probe heights hit the avoided set"));
        }
    }
    let prim = sq.div_exact(&content)?;
    if prim.deg_in(1) >= 1 {
        let disc = resultant(&prim, &prim.deriv(1), 1)?;
        let lc = prim.rec_coeffs(1).pop().unwrap();
        let cross = resultant(&prim, avoid, 1)?;
        if cross.is_zero() {
            return Err(internal("avoided set shares a component with the curve"));
        }
        let rpoly = disc.mul(&lc).mul(&cross).as_unipoly(0).normalize_unit();
        let mut roots = rpoly.isolate_real_roots();
        let samples = separating_samples(&mut roots);
        for s in &samples {
            let sc = Coef::from_rat(s.clone());
            let fiber = specialize_x(&prim, &sc).value_trimmed();
            if fiber.is_structural_zero() {
                continue;
            }
            if let Some(yr) = fiber.isolate_real_roots().into_iter().next() {
                let eta = root_to_coef(&yr, None);
                return Ok(vec![sc, eta]);
            }
        }
    }
    Err(internal("curve has no one-dimensional real branch off the avoided set"))
}

/// Small rationals in a deterministic order, for picking values subject to
/// finitely many exclusions.
pub fn small_rationals() -> impl Iterator<Item = BigRat> {
    (1i64..).flat_map(|d| {
        (0i64..=6 * d).flat_map(move |a| {
            let r = BigRat::new(a.into(), d.into());
            if r.denom() == &d.into() || (a == 0 && d == 1) {
                if a == 0 {
                    vec![BigRat::zero()]
                } else {
                    vec![r.clone(), -r]
                }
            } else {
                Vec::new()
            }
        })
    })
}

/// First rational in the standard small sequence where every listed
/// polynomial is nonzero.
pub fn rational_avoiding(polys: &[&UniPoly]) -> BigRat {
    for r in small_rationals() {
        if polys.iter().all(|p| !p.eval_rat(&r).is_zero()) {
            return r;
        }
    }
    unreachable!("finitely many roots cannot exhaust the sequence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn mp(raw: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_int_terms(2, raw)
    }

    #[test]
    fn circle_is_infinite() {
        // x^2 + y^2 - 1
        let p = mp(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        assert!(matches!(analyze_plane_zeros(&p).unwrap(), PlaneZeroSet::Infinite));
    }

    #[test]
    fn sum_of_squares_is_one_point() {
        let p = mp(&[(&[2, 0], 1), (&[0, 2], 1)]);
        match analyze_plane_zeros(&p).unwrap() {
            PlaneZeroSet::Finite(pts) => {
                assert_eq!(pts.len(), 1);
                assert!(pts[0][0].is_zero() && pts[0][1].is_zero());
            }
            other => panic!("expected one point, got {other:?}"),
        }
    }

    #[test]
    fn positive_poly_is_empty() {
        let p = mp(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], 1)]);
        assert!(matches!(analyze_plane_zeros(&p).unwrap(), PlaneZeroSet::Empty));
    }

    #[test]
    fn two_isolated_points() {
        // (x^2 + y^2)((x-1)^2 + y^2) expanded via arithmetic
        let a = mp(&[(&[2, 0], 1), (&[0, 2], 1)]);
        let b = mp(&[(&[2, 0], 1), (&[1, 0], -2), (&[0, 0], 1), (&[0, 2], 1)]);
        let p = a.mul(&b);
        match analyze_plane_zeros(&p).unwrap() {
            PlaneZeroSet::Finite(pts) => {
                assert_eq!(pts.len(), 2);
                assert!(pts[0][0].is_zero() && pts[0][1].is_zero());
                assert!(pts[1][0].value_eq(&Coef::one()) && pts[1][1].is_zero());
            }
            other => panic!("expected two points, got {other:?}"),
        }
    }

    #[test]
    fn vertical_line_detected() {
        // x * (y^2 + 1): zero set is the line x = 0
        let p = mp(&[(&[1, 2], 1), (&[1, 0], 1)]);
        assert!(matches!(analyze_plane_zeros(&p).unwrap(), PlaneZeroSet::Infinite));
    }

    #[test]
    fn common_zeros_of_circle_pair() {
        // x^2 + y^2 - 1 and y - x: meet at +-(1/sqrt2, 1/sqrt2)
        let c = mp(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        let l = mp(&[(&[0, 1], 1), (&[1, 0], -1)]);
        let pts = common_real_zeros(&c, &l).unwrap();
        assert_eq!(pts.len(), 2);
        for pt in &pts {
            assert!(c.eval(&pt.clone()).is_zero());
            assert!(l.eval(&pt.clone()).is_zero());
        }
        assert!(pts[0][0].sign() < 0 && pts[1][0].sign() > 0);
    }

    #[test]
    fn common_zero_at_origin_only() {
        let p = mp(&[(&[1, 0], 1)]); // x
        let q = mp(&[(&[0, 1], 1)]); // y
        let pts = common_real_zeros(&p, &q).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0][0].is_zero() && pts[0][1].is_zero());
    }

    #[test]
    fn curve_sample_avoids_poly() {
        // sample the unit circle away from the zero set of x
        let c = mp(&[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]);
        let avoid = mp(&[(&[1, 0], 1)]);
        let pt = curve_point_avoiding(&c, &avoid).unwrap();
        assert!(c.eval(&pt).is_zero());
        assert!(!avoid.eval(&pt).is_zero());
    }

    #[test]
    fn vertical_component_sampling() {
        // x(x-2) has lines x = 0 and x = 2; avoid x so... avoid y - 5 instead
        let p = mp(&[(&[2, 0], 1), (&[1, 0], -2)]);
        let avoid = mp(&[(&[0, 1], 1), (&[0, 0], -5)]);
        let pt = curve_point_avoiding(&p, &avoid).unwrap();
        assert!(p.eval(&pt).is_zero());
        assert!(!avoid.eval(&pt).is_zero());
    }

    #[test]
    fn small_rational_sequence_shape() {
        let xs: Vec<BigRat> = small_rationals().take(8).collect();
        assert_eq!(xs[0], BigRat::zero());
        assert!(xs.contains(&rat_int(1)) && xs.contains(&rat_int(-1)));
        let mut seen = Vec::new();
        for x in small_rationals().take(40) {
            assert!(!seen.contains(&x), "duplicate {x}");
            seen.push(x);
        }
    }

    #[test]
    fn separating_samples_interleave() {
        let p = UniPoly::from_rats(&[rat_int(-2), rat_int(0), rat_int(1)]);
        let mut roots = p.isolate_real_roots();
        let samples = separating_samples(&mut roots);
        assert_eq!(samples.len(), 3);
        assert!(samples[0] < -rat_int(1) && samples[1].abs() < rat_int(1) && samples[2] > rat_int(1));
    }
}
