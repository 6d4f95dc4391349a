//! Shared generators and property suites used by both the property tests
//! and the acceptance run.  Every suite is deterministic for a given seed
//! and panics on the first violation with enough context to replay it.

use locb_core::alg::Coef;
use locb_core::arcs::{self, Arc, ArcLimit, PuiseuxPoly, ScanBudget};
use locb_core::construct::gallery;
use locb_core::geometry;
use locb_core::mpoly::MPoly;
use locb_core::rat::{rat, rat_int, BigRat};
use locb_core::ratfunc::RationalFunction;
use locb_core::report;
use locb_core::resolve::{self, GlobalDecision, LocalDecision, ResolveOptions};
use locb_core::Error;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn origin() -> Vec<Coef> {
    vec![Coef::zero(), Coef::zero()]
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32, nonzero: bool) -> MPoly {
    loop {
        let mut terms: Vec<(Vec<u32>, Coef)> = Vec::new();
        for i in 0..=max_deg {
            for j in 0..=(max_deg - i) {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(-3..=3i64);
                    if c != 0 {
                        terms.push((vec![i, j], Coef::from_int(c)));
                    }
                }
            }
        }
        let p = MPoly::from_terms(2, terms);
        if !p.is_zero() || !nonzero {
            return p;
        }
    }
}

pub fn random_function(rng: &mut ChaCha8Rng, max_deg: u32) -> RationalFunction {
    loop {
        let p = random_poly(rng, max_deg, false);
        let q = random_poly(rng, max_deg, true);
        if let Ok(f) = RationalFunction::new(p, q) {
            return f;
        }
    }
}

/// a^2/(a^2 + b^2) + c: always locally bounded, usually with a genuine
/// indeterminacy locus where a and b meet.  One factor is occasionally
/// quadratic while the other stays linear, so indeterminacy points are
/// rational or quadratic; two quadratic factors would put them in quartic
/// extensions and make a hundred decisions unaffordable.
pub fn random_bounded(rng: &mut ChaCha8Rng) -> RationalFunction {
    let (da, db) = match rng.gen_range(0..10u32) {
        0..=6 => (1, 1),
        7 | 8 => (2, 1),
        _ => (1, 2),
    };
    random_bounded_of_degree(rng, da, db)
}

/// Linear factors only: every indeterminacy point is rational, which keeps
/// sums and products of two such functions cheap to decide.
pub fn random_bounded_linear(rng: &mut ChaCha8Rng) -> RationalFunction {
    random_bounded_of_degree(rng, 1, 1)
}

fn random_bounded_of_degree(rng: &mut ChaCha8Rng, da: u32, db: u32) -> RationalFunction {
    loop {
        let a = random_poly(rng, da, false);
        let b = random_poly(rng, db, true);
        let den = a.mul(&a).add(&b.mul(&b));
        let num = a.mul(&a);
        if let Ok(core) = RationalFunction::new(num, den) {
            let c = rat_int(rng.gen_range(-2..=2));
            return core.add(&RationalFunction::constant(2, Coef::from_rat(c)));
        }
    }
}

pub fn plane_gallery() -> Vec<RationalFunction> {
    gallery()
        .into_iter()
        .filter(|e| e.function.nvars() == 2)
        .map(|e| e.function)
        .collect()
}

pub fn bounded_plane_gallery(opts: &ResolveOptions) -> Vec<RationalFunction> {
    plane_gallery()
        .into_iter()
        .filter(|f| {
            matches!(
                resolve::is_locally_bounded(f, opts),
                Ok(GlobalDecision::Bounded { .. })
            )
        })
        .collect()
}

fn show(f: &RationalFunction) -> String {
    report::fraction_text(f)
}

/// Z(fg) = Z(f) ∪ Z(g), checked at every point any of the three zero sets
/// singles out.  Gallery pairs come from the locally bounded pool so every
/// zero set is defined; random pairs alternate between bounded builds and
/// arbitrary fractions, skipping the latter when a factor or the product
/// falls outside the locally bounded class.
pub fn suite_union_law(seed: u64, cases: usize, opts: &ResolveOptions) {
    let mut rng = seeded(seed);
    let mut pairs: Vec<(RationalFunction, RationalFunction)> = Vec::new();
    let pool = bounded_plane_gallery(opts);
    for (i, a) in pool.iter().enumerate() {
        pairs.push((a.clone(), pool[(i + 1) % pool.len()].clone()));
        pairs.push((a.clone(), pool[(i + 3) % pool.len()].clone()));
    }
    let mut alt = false;
    while pairs.len() < cases + 2 * pool.len() {
        alt = !alt;
        let (f, g) = if alt {
            (random_bounded(&mut rng), random_bounded(&mut rng))
        } else {
            (random_function(&mut rng, 2), random_function(&mut rng, 2))
        };
        if f.num().is_zero() || g.num().is_zero() {
            continue;
        }
        pairs.push((f, g));
    }
    for (f, g) in &pairs {
        let prod = f.mul(g);
        let mut pts: Vec<Vec<Coef>> = Vec::new();
        let mut undefined = false;
        for h in [f, g, &prod] {
            match geometry::zero_set(h, opts) {
                Ok(z) => {
                    pts.extend(z.isolated_points.iter().cloned());
                    pts.extend(z.excluded_points.iter().cloned());
                }
                Err(Error::NotLocallyBounded) => {
                    undefined = true;
                    break;
                }
                Err(e) => panic!("zero_set({}) failed: {e}", show(h)),
            }
        }
        if undefined {
            continue;
        }
        for pt in &pts {
            let in_p = geometry::zero_set_contains(&prod, pt, opts).unwrap();
            let in_f = geometry::zero_set_contains(f, pt, opts).unwrap();
            let in_g = geometry::zero_set_contains(g, pt, opts).unwrap();
            assert_eq!(
                in_p,
                in_f || in_g,
                "union law violated at {} for f = {}, g = {}",
                report::point_text(pt),
                show(f),
                show(g)
            );
        }
    }
}

/// Sums and products of locally bounded functions stay locally bounded.
pub fn suite_ring_closure(seed: u64, cases: usize, opts: &ResolveOptions) {
    let mut rng = seeded(seed);
    let pool = bounded_plane_gallery(opts);
    assert!(pool.len() >= 6);
    let check = |f: &RationalFunction, g: &RationalFunction| {
        for h in [f.add(g), f.mul(g)] {
            match resolve::is_locally_bounded(&h, opts).unwrap() {
                GlobalDecision::Bounded { .. } => {}
                GlobalDecision::Unbounded { arc, .. } => panic!(
                    "closure violated for {} and {}: witness {}",
                    show(f),
                    show(g),
                    arc.display("t")
                ),
            }
        }
    };
    for a in &pool {
        for b in &pool {
            check(a, b);
        }
    }
    for i in 0..cases {
        let f = random_bounded(&mut rng);
        let g = if i % 3 == 0 {
            pool[rng.gen_range(0..pool.len())].clone()
        } else {
            random_bounded(&mut rng)
        };
        check(&f, &g);
    }
}

/// Certified Bounded functions never produce a negative arc order over the
/// scan family at their indeterminacy points.
pub fn suite_bounded_scan_soundness(seed: u64, cases: usize, opts: &ResolveOptions) {
    let mut rng = seeded(seed);
    let light = ScanBudget::with_caps(3, 2);
    let full = ScanBudget::default();
    let audit = |f: &RationalFunction, budget: &ScanBudget| {
        if !matches!(
            resolve::is_locally_bounded(f, opts),
            Ok(GlobalDecision::Bounded { .. })
        ) {
            return false;
        }
        for pt in f.indeterminacy_points().unwrap() {
            for l in arcs::arc_family_scan(f, &pt, budget) {
                assert!(
                    !l.is_infinite(),
                    "bounded {} has an infinite scan limit at {}",
                    show(f),
                    report::point_text(&pt)
                );
                if let Some(o) = &l.order {
                    assert!(
                        !o.is_negative(),
                        "bounded {} has negative arc order at {}",
                        show(f),
                        report::point_text(&pt)
                    );
                }
            }
        }
        true
    };
    for f in &bounded_plane_gallery(opts) {
        assert!(audit(f, &full));
    }
    let mut done = 0;
    while done < cases {
        let f = random_bounded(&mut rng);
        if audit(&f, &light) {
            done += 1;
        }
    }
}

/// Chart-A pullback of the blowup at the origin: x = u, y = u v.
pub fn chart_a_pullback(f: &RationalFunction) -> RationalFunction {
    let lift = |p: &MPoly| -> MPoly {
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| (vec![e[0] + e[1], e[1]], c.clone()))
            .collect();
        MPoly::from_terms(2, terms)
    };
    RationalFunction::new(lift(f.num()), lift(f.den())).expect("pullback keeps den nonzero")
}

fn limits_agree(a: &ArcLimit, b: &ArcLimit) -> bool {
    if a.order != b.order || a.is_infinite() != b.is_infinite() {
        return false;
    }
    match (&a.leading, &b.leading) {
        (None, None) => true,
        (Some(x), Some(y)) => x.value_eq(y),
        _ => false,
    }
}

/// Verdicts and arc limits transport through one blowup chart.
pub fn suite_pullback_invariance(seed: u64, cases: usize, opts: &ResolveOptions) {
    let mut rng = seeded(seed);
    let fibers: Vec<BigRat> = vec![rat_int(0), rat_int(1), rat_int(-1), rat(1, 2)];
    let check = |f: &RationalFunction, v0: &BigRat| {
        let fa = chart_a_pullback(f);
        // (u, v) = (t, v0 + t) maps to (x, y) = (t, v0 t + t^2)
        let up = Arc::new(vec![
            PuiseuxPoly::monomial(rat_int(1), Coef::one()),
            PuiseuxPoly::from_terms(vec![
                (rat_int(0), Coef::from_rat(v0.clone())),
                (rat_int(1), Coef::one()),
            ]),
        ])
        .unwrap();
        let down = Arc::new(vec![
            PuiseuxPoly::monomial(rat_int(1), Coef::one()),
            PuiseuxPoly::from_terms(vec![
                (rat_int(1), Coef::from_rat(v0.clone())),
                (rat_int(2), Coef::one()),
            ]),
        ])
        .unwrap();
        match (arcs::compose(&fa, &up), arcs::compose(f, &down)) {
            (Ok(lu), Ok(ld)) => assert!(
                limits_agree(&lu, &ld),
                "chart transport broke for {} at v0 = {v0}",
                show(f)
            ),
            (Err(Error::ArcInsideIndeterminacy), Err(Error::ArcInsideIndeterminacy)) => {}
            (a, b) => panic!(
                "chart transport mismatch for {} at v0 = {v0}: {a:?} vs {b:?}",
                show(f)
            ),
        }
        let center = origin();
        if let Ok(LocalDecision::Bounded(_)) = resolve::decide_at(f, &center, opts) {
            let fiber_pt = vec![Coef::zero(), Coef::from_rat(v0.clone())];
            match resolve::decide_at(&fa, &fiber_pt, opts).unwrap() {
                LocalDecision::Bounded(_) => {}
                LocalDecision::Unbounded { arc, .. } => panic!(
                    "{} bounded at origin but chart pullback unbounded at (0, {v0}): {}",
                    show(f),
                    arc.display("t")
                ),
            }
        }
    };
    for f in &plane_gallery() {
        for v0 in &fibers {
            check(f, v0);
        }
    }
    for _ in 0..cases {
        let f = random_function(&mut rng, 3);
        let v0 = rat_int(rng.gen_range(-2..=2));
        check(&f, &v0);
    }
}

/// The budgeted scan can refute boundedness but never contradicts the full
/// decision, and unbounded verdicts revalidate along their witness arcs.
pub fn suite_scan_decision_agreement(seed: u64, cases: usize, opts: &ResolveOptions) {
    let mut rng = seeded(seed);
    let light = ScanBudget::with_caps(3, 2);
    let full = ScanBudget::default();
    let check = |f: &RationalFunction, pt: &[Coef], budget: &ScanBudget| {
        let verdict = resolve::decide_at(f, pt, opts)
            .unwrap_or_else(|e| panic!("decide_at({}) failed: {e}", show(f)));
        let refuted = arcs::arc_family_scan(f, pt, budget)
            .iter()
            .any(|l| l.is_infinite());
        match verdict {
            LocalDecision::Bounded(_) => assert!(
                !refuted,
                "scan refutes a Bounded verdict for {} at {}",
                show(f),
                report::point_text(pt)
            ),
            LocalDecision::Unbounded { arc, .. } => {
                let l = arcs::compose(f, &arc).unwrap();
                assert!(
                    l.is_infinite(),
                    "witness fails to revalidate for {} at {}",
                    show(f),
                    report::point_text(pt)
                );
            }
        }
    };
    for f in &plane_gallery() {
        for pt in f.indeterminacy_points().unwrap() {
            check(f, &pt, &full);
        }
    }
    for _ in 0..cases {
        let f = random_function(&mut rng, 4);
        check(&f, &origin(), &light);
    }
}
