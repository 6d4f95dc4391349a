//! Zero sets of locally bounded plane functions and the ideal-theoretic
//! operations built on them: inclusion of zero sets with witness arcs,
//! radical membership, Łojasiewicz exponents, a weak Nullstellensatz, and
//! invertibility.
//!
//! The zero set used throughout is the arcwise one: a point belongs to Z(f)
//! when some arc centered there sends f to zero, which for a locally bounded
//! f means zero lies in its local value interval.

use crate::alg::Coef;
use crate::arcs::{self, Arc, ArcLimit};
use crate::mpoly::{self, MPoly};
use crate::ratfunc::RationalFunction;
use crate::realzeros::{self, PlaneZeroSet};
use crate::resolve::{self, GlobalDecision, ResolveOptions};
use crate::{internal, Error, Result};

/// Zero set of a locally bounded plane function, as the real locus of
/// `curve_part` minus `excluded_points`, together with `isolated_points`.
/// The excluded points are indeterminacy points whose value interval misses
/// zero; they can sit on zero-dimensional factors retained in `curve_part`
/// but never on its one-dimensional branches.  A zero `curve_part` encodes
/// the whole plane (the function vanishes identically).
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub curve_part: MPoly,
    pub isolated_points: Vec<Vec<Coef>>,
    pub excluded_points: Vec<Vec<Coef>>,
}

impl ZeroSet {
    pub fn is_whole_plane(&self) -> bool {
        self.curve_part.is_zero()
    }

    pub fn is_empty(&self) -> bool {
        !self.is_whole_plane()
            && self.curve_part.total_deg() == Some(0)
            && self.isolated_points.is_empty()
    }

    pub fn has_curve(&self) -> bool {
        !self.is_whole_plane() && self.curve_part.total_deg().map_or(false, |d| d > 0)
    }
}

pub fn points_equal(a: &[Coef], b: &[Coef]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.value_eq(y))
}

fn push_unique(list: &mut Vec<Vec<Coef>>, pt: Vec<Coef>) {
    if !list.iter().any(|q| points_equal(q, &pt)) {
        list.push(pt);
    }
}

/// Divides the squarefree `r` by its common factor with the squarefree `s`;
/// the result is coprime to `s`.
fn strip_common(r: &MPoly, s: &MPoly) -> Result<MPoly> {
    if s.total_deg().map_or(true, |d| d == 0) {
        return Ok(r.clone());
    }
    let g = mpoly::gcd(r, s);
    if g.total_deg().map_or(true, |d| d == 0) {
        Ok(r.clone())
    } else {
        r.div_exact(&g)
    }
}

fn certified_bounded(f: &RationalFunction, opts: &ResolveOptions) -> Result<GlobalDecision> {
    match resolve::is_locally_bounded(f, opts)? {
        d @ GlobalDecision::Bounded { .. } => Ok(d),
        GlobalDecision::Unbounded { .. } => Err(Error::NotLocallyBounded),
    }
}

pub fn zero_set(f: &RationalFunction, opts: &ResolveOptions) -> Result<ZeroSet> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedDimension { arity: f.nvars() });
    }
    if f.is_zero() {
        return Ok(ZeroSet {
            curve_part: MPoly::zero(2),
            isolated_points: Vec::new(),
            excluded_points: Vec::new(),
        });
    }
    let trees = match certified_bounded(f, opts)? {
        GlobalDecision::Bounded { certificates } => certificates,
        GlobalDecision::Unbounded { .. } => unreachable!(),
    };
    let mut member_indets = Vec::new();
    let mut excluded_points = Vec::new();
    for tree in &trees {
        let iv = resolve::value_interval(tree)?;
        if iv.contains_zero() {
            member_indets.push(tree.center.clone());
        } else {
            excluded_points.push(tree.center.clone());
        }
    }
    let sq = f.num().squarefree_part().normalize_unit();
    match realzeros::analyze_plane_zeros(&sq)? {
        PlaneZeroSet::Infinite => Ok(ZeroSet {
            curve_part: sq,
            isolated_points: Vec::new(),
            excluded_points,
        }),
        PlaneZeroSet::Finite(pts) => {
            let mut isolated = Vec::new();
            for pt in pts {
                let regular = !f.den().eval(&pt).is_zero();
                if regular || member_indets.iter().any(|q| points_equal(q, &pt)) {
                    isolated.push(pt);
                }
            }
            Ok(ZeroSet {
                curve_part: MPoly::one(2),
                isolated_points: isolated,
                excluded_points,
            })
        }
        PlaneZeroSet::Empty => Ok(ZeroSet {
            curve_part: MPoly::one(2),
            isolated_points: Vec::new(),
            excluded_points,
        }),
    }
}

/// Membership of a point in the arcwise zero set.
pub fn zero_set_contains(
    f: &RationalFunction,
    pt: &[Coef],
    opts: &ResolveOptions,
) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(resolve::value_set(f, pt, opts)?.contains_zero())
}

#[derive(Debug)]
pub enum InclusionOutcome {
    Included,
    Counterexample {
        arc: Arc,
        g_limit: ArcLimit,
        f_limit: ArcLimit,
    },
}

impl InclusionOutcome {
    pub fn is_included(&self) -> bool {
        matches!(self, InclusionOutcome::Included)
    }
}

fn counterexample(g: &RationalFunction, f: &RationalFunction, arc: Arc) -> Result<InclusionOutcome> {
    let g_limit = arcs::compose(g, &arc)?;
    let f_limit = arcs::compose(f, &arc)?;
    if !g_limit.in_zero_set() || f_limit.in_zero_set() {
        return Err(internal("inclusion counterexample failed validation"));
    }
    Ok(InclusionOutcome::Counterexample {
        arc,
        g_limit,
        f_limit,
    })
}

fn straight_arc(w: &[Coef], slope: i64) -> Result<Arc> {
    use crate::arcs::PuiseuxPoly;
    use crate::rat::rat_int;
    use num_traits::One;
    let t = PuiseuxPoly::monomial(crate::rat::BigRat::one(), Coef::one());
    let x = PuiseuxPoly::constant(w[0].clone()).add(&t);
    let y = PuiseuxPoly::constant(w[1].clone()).add(&PuiseuxPoly::monomial(
        crate::rat::BigRat::one(),
        Coef::from_rat(rat_int(slope)),
    ));
    Arc::new(vec![x, y])
}

/// Rational point where none of the given polynomials vanish.
fn generic_point(polys: &[&MPoly]) -> Result<Vec<Coef>> {
    for a in realzeros::small_rationals().take(12) {
        for b in realzeros::small_rationals().take(12) {
            let pt = vec![Coef::from_rat(a.clone()), Coef::from_rat(b)];
            if polys.iter().all(|p| !p.eval(&pt).is_zero()) {
                return Ok(pt);
            }
        }
    }
    Err(internal("no generic rational point found"))
}

/// Decides whether the zero set of g is contained in the zero set of f.
/// Both functions must be locally bounded on the plane.  A negative answer
/// comes with a validated arc along which g tends to zero but f does not.
pub fn zero_set_included(
    g: &RationalFunction,
    f: &RationalFunction,
    opts: &ResolveOptions,
) -> Result<InclusionOutcome> {
    if g.nvars() != 2 || f.nvars() != 2 {
        return Err(Error::UnsupportedDimension { arity: g.nvars() });
    }
    if f.is_zero() {
        return Ok(InclusionOutcome::Included);
    }
    if g.is_zero() {
        let pt = generic_point(&[f.num(), f.den()])?;
        let arc = straight_arc(&pt, 1)?;
        return counterexample(g, f, arc);
    }
    certified_bounded(g, opts)?;
    certified_bounded(f, opts)?;

    // Curve phase: a one-dimensional branch of Z(g) missing the numerator
    // curve of f carries points where g vanishes and f does not.
    let sq_ng = g.num().squarefree_part();
    let mut r = strip_common(&sq_ng, &f.num().squarefree_part())?;
    r = strip_common(&r, &f.den().squarefree_part())?;
    r = strip_common(&r, &g.den().squarefree_part())?;
    let analysis = realzeros::analyze_plane_zeros(&r.normalize_unit())?;
    let mut candidates: Vec<Vec<Coef>> = Vec::new();
    match analysis {
        PlaneZeroSet::Infinite => {
            let avoid = f.num().mul(f.den()).mul(g.den());
            let w = realzeros::curve_point_avoiding(&r, &avoid)?;
            for slope in 0..4 {
                let arc = straight_arc(&w, slope)?;
                let gl = arcs::compose(g, &arc)?;
                let fl = arcs::compose(f, &arc)?;
                if gl.in_zero_set() && !fl.in_zero_set() {
                    return counterexample(g, f, arc);
                }
            }
            return Err(internal("curve counterexample failed validation"));
        }
        PlaneZeroSet::Finite(pts) => {
            for pt in pts {
                push_unique(&mut candidates, pt);
            }
        }
        PlaneZeroSet::Empty => {}
    }
    for pt in g.indeterminacy_points()? {
        push_unique(&mut candidates, pt);
    }
    for pt in f.indeterminacy_points()? {
        push_unique(&mut candidates, pt);
    }
    for w in candidates {
        if let Some(arc) = resolve::zero_inclusion_witness(g, f, &w, opts)? {
            return counterexample(g, f, arc);
        }
    }
    Ok(InclusionOutcome::Included)
}

#[derive(Debug)]
pub enum RadicalOutcome {
    Member {
        n: u32,
        combined: RationalFunction,
        cofactors: Vec<RationalFunction>,
    },
    NotMember {
        arc: Arc,
    },
}

/// Sum used to combine generators: the first one alone, or the sum of
/// squares when there are several.  Its zero set is the intersection of the
/// generators' zero sets.
fn combine_generators(gens: &[RationalFunction]) -> Result<RationalFunction> {
    match gens {
        [] => Err(internal("empty generator list")),
        [only] => Ok(only.clone()),
        many => {
            let mut acc = RationalFunction::zero(many[0].nvars());
            for g in many {
                acc = acc.add(&g.mul(g));
            }
            Ok(acc)
        }
    }
}

/// Membership of f in the radical of the ideal generated by `gens` inside
/// the ring of locally bounded rational functions.  Membership produces an
/// exponent n and cofactors c_i with f^n = sum c_i g_i, each cofactor
/// locally bounded; non-membership produces an arc along which every
/// generator tends to zero but f does not.
pub fn radical_member(
    f: &RationalFunction,
    gens: &[RationalFunction],
    n_max: u32,
    opts: &ResolveOptions,
) -> Result<RadicalOutcome> {
    let combined = combine_generators(gens)?;
    certified_bounded(f, opts)?;
    for g in gens {
        certified_bounded(g, opts)?;
    }
    match zero_set_included(&combined, f, opts)? {
        InclusionOutcome::Counterexample { arc, .. } => Ok(RadicalOutcome::NotMember { arc }),
        InclusionOutcome::Included => {
            for n in 1..=n_max {
                let power = f.pow(n as i64)?;
                let h = power.div(&combined)?;
                if let GlobalDecision::Bounded { .. } = resolve::is_locally_bounded(&h, opts)? {
                    let cofactors: Vec<RationalFunction> = if gens.len() == 1 {
                        vec![h.clone()]
                    } else {
                        gens.iter().map(|gi| h.mul(gi)).collect()
                    };
                    let mut recombined = RationalFunction::zero(f.nvars());
                    for (c, gi) in cofactors.iter().zip(gens) {
                        recombined = recombined.add(&c.mul(gi));
                    }
                    if !recombined.equals(&power) {
                        return Err(internal("radical certificate identity failed"));
                    }
                    return Ok(RadicalOutcome::Member {
                        n,
                        combined,
                        cofactors,
                    });
                }
            }
            Err(Error::Exhausted { n_max })
        }
    }
}

#[derive(Debug)]
pub enum LojaOutcome {
    Exponent {
        n: u32,
        quotient: RationalFunction,
    },
    /// Z(g) is not contained in Z(f), so no power of f is dominated by g.
    PreconditionFailed {
        arc: Arc,
    },
}

/// Smallest n with f^n/g locally bounded on the plane.
pub fn loja_exponent(
    f: &RationalFunction,
    g: &RationalFunction,
    n_max: u32,
    opts: &ResolveOptions,
) -> Result<LojaOutcome> {
    certified_bounded(f, opts)?;
    certified_bounded(g, opts)?;
    if let InclusionOutcome::Counterexample { arc, .. } = zero_set_included(g, f, opts)? {
        return Ok(LojaOutcome::PreconditionFailed { arc });
    }
    for n in 1..=n_max {
        let q = f.pow(n as i64)?.div(g)?;
        if let GlobalDecision::Bounded { .. } = resolve::is_locally_bounded(&q, opts)? {
            return Ok(LojaOutcome::Exponent { n, quotient: q });
        }
    }
    Err(Error::Exhausted { n_max })
}

/// Point in the zero set of a function already known to have one.  Prefers
/// listed isolated points, otherwise samples the curve away from the
/// denominator so the function genuinely vanishes there.
fn sample_zero_point(
    f: &RationalFunction,
    zs: &ZeroSet,
) -> Result<Vec<Coef>> {
    if zs.is_whole_plane() {
        return Ok(vec![Coef::zero(), Coef::zero()]);
    }
    if let Some(pt) = zs.isolated_points.first() {
        return Ok(pt.clone());
    }
    if !zs.has_curve() {
        return Err(internal("no zero point to sample"));
    }
    let curve = strip_common(&zs.curve_part, &f.den().squarefree_part())?;
    realzeros::curve_point_avoiding(&curve, f.den())
}

#[derive(Debug)]
pub enum NullstellensatzOutcome {
    CommonZero {
        point: Vec<Coef>,
    },
    /// Coefficients a_i, each locally bounded, with sum a_i g_i = 1.
    Partition {
        coefficients: Vec<RationalFunction>,
    },
}

pub fn weak_nullstellensatz(
    gens: &[RationalFunction],
    opts: &ResolveOptions,
) -> Result<NullstellensatzOutcome> {
    for g in gens {
        certified_bounded(g, opts)?;
    }
    let mut combined = RationalFunction::zero(2);
    for g in gens {
        combined = combined.add(&g.mul(g));
    }
    if combined.is_zero() {
        return Ok(NullstellensatzOutcome::CommonZero {
            point: vec![Coef::zero(), Coef::zero()],
        });
    }
    let zs = zero_set(&combined, opts)?;
    if !zs.is_empty() {
        let point = sample_zero_point(&combined, &zs)?;
        if !zero_set_contains(&combined, &point, opts)? {
            return Err(internal("sampled common zero failed validation"));
        }
        return Ok(NullstellensatzOutcome::CommonZero { point });
    }
    let mut coefficients = Vec::with_capacity(gens.len());
    let mut total = RationalFunction::zero(2);
    for g in gens {
        let a = g.div(&combined)?;
        certified_bounded(&a, opts)?;
        total = total.add(&a.mul(g));
        coefficients.push(a);
    }
    if !total.equals(&RationalFunction::constant(2, Coef::one())) {
        return Err(internal("partition of unity identity failed"));
    }
    Ok(NullstellensatzOutcome::Partition { coefficients })
}

#[derive(Debug)]
pub enum InvertOutcome {
    Invertible { inverse: RationalFunction },
    NotInvertible { point: Vec<Coef> },
}

/// A locally bounded function is invertible in the ring exactly when its
/// arcwise zero set is empty; the inverse is then locally bounded as well.
pub fn is_invertible(f: &RationalFunction, opts: &ResolveOptions) -> Result<InvertOutcome> {
    let zs = zero_set(f, opts)?;
    if zs.is_empty() {
        let inverse = f.recip()?;
        certified_bounded(&inverse, opts)
            .map_err(|_| internal("inverse of zero-free function not bounded"))?;
        Ok(InvertOutcome::Invertible { inverse })
    } else {
        let point = sample_zero_point(f, &zs)?;
        Ok(InvertOutcome::NotInvertible { point })
    }
}

/// Continuity of f at the point: the local value interval collapses to a
/// single value.
pub fn is_regulous_at(
    f: &RationalFunction,
    pt: &[Coef],
    opts: &ResolveOptions,
) -> Result<bool> {
    Ok(resolve::value_set(f, pt, opts)?.is_single_value())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: MPoly, den: MPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    fn poly(p: MPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn circle() -> MPoly {
        MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)])
    }

    fn ellipse() -> MPoly {
        MPoly::from_int_terms(2, &[(&[2, 0], 2), (&[0, 2], 1)])
    }

    fn x() -> MPoly {
        MPoly::from_int_terms(2, &[(&[1, 0], 1)])
    }

    fn x2() -> MPoly {
        MPoly::from_int_terms(2, &[(&[2, 0], 1)])
    }

    fn opts() -> ResolveOptions {
        ResolveOptions::default()
    }

    fn origin() -> Vec<Coef> {
        vec![Coef::zero(), Coef::zero()]
    }

    #[test]
    fn squared_slope_zero_set_is_vertical_line() {
        let f = rf(x2(), circle());
        let zs = zero_set(&f, &opts()).unwrap();
        assert!(zs.has_curve());
        // curve part is x, up to sign normalization
        assert_eq!(zs.curve_part.total_deg(), Some(1));
        assert!(zs.excluded_points.is_empty());
        assert!(zs.isolated_points.is_empty());
    }

    #[test]
    fn circle_over_ellipse_zero_set_empty_with_excluded_origin() {
        let f = rf(circle(), ellipse());
        let zs = zero_set(&f, &opts()).unwrap();
        assert!(zs.is_empty());
        assert_eq!(zs.excluded_points.len(), 1);
        assert!(points_equal(&zs.excluded_points[0], &origin()));
    }

    #[test]
    fn membership_checks_at_points() {
        let f = rf(x2(), circle());
        assert!(zero_set_contains(&f, &origin(), &opts()).unwrap());
        assert!(zero_set_contains(&f, &[Coef::zero(), Coef::one()], &opts()).unwrap());
        assert!(!zero_set_contains(&f, &[Coef::one(), Coef::zero()], &opts()).unwrap());
        let g = rf(circle(), ellipse());
        assert!(!zero_set_contains(&g, &origin(), &opts()).unwrap());
    }

    #[test]
    fn circle_zeros_inside_line_zeros() {
        let out = zero_set_included(&poly(circle()), &poly(x()), &opts()).unwrap();
        assert!(out.is_included());
    }

    #[test]
    fn line_zeros_not_inside_circle_zeros() {
        match zero_set_included(&poly(x()), &poly(circle()), &opts()).unwrap() {
            InclusionOutcome::Counterexample {
                g_limit, f_limit, ..
            } => {
                assert!(g_limit.in_zero_set());
                assert!(!f_limit.in_zero_set());
            }
            InclusionOutcome::Included => panic!("expected counterexample"),
        }
    }

    #[test]
    fn line_zeros_not_inside_squared_slope_zeros() {
        // The counterexample has to come from the joint blowup walk: the
        // line x = 0 is the curve part of both zero sets, but arcs tangent
        // to it separate the functions at the origin.
        let f = rf(x2(), circle());
        match zero_set_included(&poly(x()), &f, &opts()).unwrap() {
            InclusionOutcome::Counterexample { arc, .. } => {
                let fl = arcs::compose(&f, &arc).unwrap();
                assert!(!fl.in_zero_set());
            }
            InclusionOutcome::Included => panic!("expected counterexample"),
        }
    }

    #[test]
    fn inclusion_is_reflexive() {
        let f = rf(x2(), circle());
        assert!(zero_set_included(&f, &f, &opts()).unwrap().is_included());
    }

    #[test]
    fn radical_membership_of_line_in_circle() {
        let out = radical_member(&poly(x()), &[poly(circle())], 16, &opts()).unwrap();
        match out {
            RadicalOutcome::Member { n, cofactors, .. } => {
                assert_eq!(n, 2);
                assert_eq!(cofactors.len(), 1);
                let expected = rf(x2(), circle());
                assert!(cofactors[0].equals(&expected));
            }
            RadicalOutcome::NotMember { .. } => panic!("expected member"),
        }
    }

    #[test]
    fn radical_non_membership_has_witness_arc() {
        let out = radical_member(&poly(MPoly::from_int_terms(2, &[(&[0, 1], 1)])), &[poly(x())], 16, &opts())
            .unwrap();
        match out {
            RadicalOutcome::NotMember { arc } => {
                let gl = arcs::compose(&poly(x()), &arc).unwrap();
                assert!(gl.in_zero_set());
            }
            RadicalOutcome::Member { .. } => panic!("expected non-member"),
        }
    }

    #[test]
    fn loja_exponent_of_line_against_its_square() {
        let out = loja_exponent(&poly(x()), &poly(x2()), 16, &opts()).unwrap();
        match out {
            LojaOutcome::Exponent { n, quotient } => {
                assert_eq!(n, 2);
                assert!(quotient.equals(&poly(MPoly::one(2))));
            }
            LojaOutcome::PreconditionFailed { .. } => panic!("expected exponent"),
        }
    }

    #[test]
    fn loja_precondition_failure() {
        let out = loja_exponent(
            &poly(MPoly::from_int_terms(2, &[(&[0, 1], 1)])),
            &poly(x()),
            16,
            &opts(),
        )
        .unwrap();
        assert!(matches!(out, LojaOutcome::PreconditionFailed { .. }));
    }

    #[test]
    fn nullstellensatz_common_zero() {
        let gx = poly(x());
        let gy = poly(MPoly::from_int_terms(2, &[(&[0, 1], 1)]));
        match weak_nullstellensatz(&[gx, gy], &opts()).unwrap() {
            NullstellensatzOutcome::CommonZero { point } => {
                assert!(points_equal(&point, &origin()));
            }
            NullstellensatzOutcome::Partition { .. } => panic!("expected common zero"),
        }
    }

    #[test]
    fn nullstellensatz_partition_of_unity() {
        let g1 = poly(x());
        let g2 = poly(MPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 0], -1)]));
        match weak_nullstellensatz(&[g1, g2], &opts()).unwrap() {
            NullstellensatzOutcome::Partition { coefficients } => {
                assert_eq!(coefficients.len(), 2);
            }
            NullstellensatzOutcome::CommonZero { .. } => panic!("expected partition"),
        }
    }

    #[test]
    fn invertibility_of_zero_free_quotient() {
        let f = rf(ellipse(), circle());
        match is_invertible(&f, &opts()).unwrap() {
            InvertOutcome::Invertible { inverse } => {
                assert!(inverse.equals(&rf(circle(), ellipse())));
            }
            InvertOutcome::NotInvertible { .. } => panic!("expected invertible"),
        }
        let g = rf(x2(), circle());
        match is_invertible(&g, &opts()).unwrap() {
            InvertOutcome::NotInvertible { point } => {
                assert!(!zero_set_contains(&g, &point, &opts()).map(|m| !m).unwrap());
            }
            InvertOutcome::Invertible { .. } => panic!("expected non-invertible"),
        }
    }

    #[test]
    fn regulous_checks() {
        let f = rf(x2(), circle());
        assert!(!is_regulous_at(&f, &origin(), &opts()).unwrap());
        assert!(is_regulous_at(&f, &[Coef::one(), Coef::one()], &opts()).unwrap());
        let g = rf(MPoly::from_int_terms(2, &[(&[4, 0], 1)]), circle());
        assert!(is_regulous_at(&g, &origin(), &opts()).unwrap());
    }

    #[test]
    fn loja_exponent_quartic_pair() {
        // f = x, g = x^4 + y^4: Z(g) = {0} is contained in Z(f) = {x = 0};
        // f^n/g is bounded once n reaches 4... the quotient x^4/(x^4+y^4)
        // is bounded, x^3/(x^4+y^4) is not.
        let g = poly(MPoly::from_int_terms(2, &[(&[4, 0], 1), (&[0, 4], 1)]));
        match loja_exponent(&poly(x()), &g, 16, &opts()).unwrap() {
            LojaOutcome::Exponent { n, .. } => assert_eq!(n, 4),
            LojaOutcome::PreconditionFailed { .. } => panic!("expected exponent"),
        }
    }
}
