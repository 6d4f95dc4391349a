//! Boundedness decisions for plane rational functions by iterated point blowups.
//!
//! A reduced fraction p/q is locally bounded at a point exactly when every
//! Puiseux arc centered there gives a finite limit.  The engine shifts the
//! point to the origin and resolves: a nonvanishing denominator is a regular
//! leaf, a nonvanishing numerator over a vanishing denominator is a pole, and
//! when both vanish the origin is blown up.  In the affine chart (x, y) =
//! (u, u v) the pullback factors as u^d * p1/q1 with p1, q1 not divisible by
//! u; d < 0 forces escape along a transverse arc, d >= 0 pushes the question
//! to the finitely many real fiber zeros of q1(0, v) plus the vertical
//! direction seen only by the chart (x, y) = (u v, v).  Both charts always
//! extract the same d because the lowest homogeneous parts of p and q stay
//! nonzero after dehomogenizing in either variable.

use crate::alg::{Coef, TowerRef};
use crate::arcs::{self, Arc, ArcLimit, PuiseuxPoly};
use crate::mpoly::MPoly;
use crate::rat::BigRat;
use crate::ratfunc::RationalFunction;
use crate::realzeros::{self, PlaneZeroSet};
use crate::unipoly::UniPoly;
use crate::{internal, Error, Result};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy)]
pub struct ResolveOptions {
    pub max_depth: u32,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { max_depth: 64 }
    }
}

/// Resolution certificate for one center.  Node polynomials are written in
/// the local chart coordinates of that node, with the studied point at the
/// origin.
#[derive(Debug, Clone)]
pub struct ResolutionTree {
    pub center: Vec<Coef>,
    pub root: ResolutionNode,
}

#[derive(Debug, Clone)]
pub struct ResolutionNode {
    pub num: MPoly,
    pub den: MPoly,
    pub detail: NodeDetail,
}

#[derive(Debug, Clone)]
pub enum NodeDetail {
    /// Denominator nonzero at the origin.
    Regular,
    /// Origin blown up.  `p_a`, `q_a` are the chart-A pullbacks with the
    /// powers of the exceptional coordinate removed and `d` is the exponent
    /// difference, so the chart function is u^d * p_a/q_a.
    Blown {
        d: i64,
        p_a: MPoly,
        q_a: MPoly,
        children: Vec<FiberChild>,
        vertical: Box<ResolutionNode>,
    },
}

#[derive(Debug, Clone)]
pub struct FiberChild {
    pub root: Coef,
    pub node: ResolutionNode,
}

#[derive(Debug)]
pub enum LocalDecision {
    Bounded(ResolutionTree),
    Unbounded { arc: Arc, limit: ArcLimit },
}

#[derive(Debug)]
pub enum GlobalDecision {
    Bounded { certificates: Vec<ResolutionTree> },
    Unbounded { arc: Arc, limit: ArcLimit },
}

impl ResolutionTree {
    pub fn depth(&self) -> u32 {
        node_depth(&self.root)
    }

    pub fn node_count(&self) -> usize {
        count_nodes(&self.root)
    }

    /// Largest extension-tower height among the fiber roots in the tree.
    /// Zero means every blowup center stayed rational.
    pub fn max_tower_height(&self) -> u32 {
        node_tower_height(&self.root)
    }
}

fn node_depth(n: &ResolutionNode) -> u32 {
    match &n.detail {
        NodeDetail::Regular => 0,
        NodeDetail::Blown {
            children, vertical, ..
        } => {
            let mut m = node_depth(vertical);
            for c in children {
                m = m.max(node_depth(&c.node));
            }
            1 + m
        }
    }
}

fn count_nodes(n: &ResolutionNode) -> usize {
    match &n.detail {
        NodeDetail::Regular => 1,
        NodeDetail::Blown {
            children, vertical, ..
        } => {
            1 + count_nodes(vertical)
                + children.iter().map(|c| count_nodes(&c.node)).sum::<usize>()
        }
    }
}

fn node_tower_height(n: &ResolutionNode) -> u32 {
    match &n.detail {
        NodeDetail::Regular => 0,
        NodeDetail::Blown {
            children, vertical, ..
        } => {
            let mut h = node_tower_height(vertical);
            for c in children {
                if let Some(t) = c.root.tower() {
                    h = h.max(t.height);
                }
                h = h.max(node_tower_height(&c.node));
            }
            h
        }
    }
}

fn vanishes_at_origin(p: &MPoly) -> bool {
    p.order_at_origin().map_or(true, |o| o > 0)
}

fn origin_value(p: &MPoly) -> Coef {
    p.terms()
        .iter()
        .find(|(e, _)| e.iter().all(|&k| k == 0))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Coef::zero)
}

/// Restriction of a chart polynomial to the exceptional fiber u = 0, viewed
/// in the fiber coordinate.
fn fiber_poly(p: &MPoly) -> UniPoly {
    p.subst_zero(0).as_unipoly(1).value_trimmed()
}

fn deepest_tower(polys: &[&MPoly]) -> Option<TowerRef> {
    let mut best: Option<TowerRef> = None;
    for p in polys {
        for (_, c) in p.terms() {
            if let Some(t) = c.tower() {
                if best.as_ref().map_or(true, |b| b.height < t.height) {
                    best = Some(t.clone());
                }
            }
        }
    }
    best
}

fn deepest_tower_uni(polys: &[&UniPoly]) -> Option<TowerRef> {
    let mut best: Option<TowerRef> = None;
    for p in polys {
        for c in p.coefs() {
            if let Some(t) = c.tower() {
                if best.as_ref().map_or(true, |b| b.height < t.height) {
                    best = Some(t.clone());
                }
            }
        }
    }
    best
}

fn unit_speed() -> PuiseuxPoly {
    PuiseuxPoly::monomial(BigRat::one(), Coef::one())
}

/// Arc (t, v0 + t) through the fiber point v0: transverse to the exceptional
/// divisor and with both coordinates nonconstant, so it survives folding
/// through any stack of chart maps.
fn transverse_arc(v0: &Coef) -> (PuiseuxPoly, PuiseuxPoly) {
    let t = unit_speed();
    (t.clone(), t.add(&PuiseuxPoly::constant(v0.clone())))
}

/// p(t, k t) as a polynomial in t.
fn line_restriction(p: &MPoly, k: &Coef) -> UniPoly {
    let mut c: Vec<Coef> = Vec::new();
    for (exps, coef) in p.terms() {
        let dgr = (exps[0] + exps[1]) as usize;
        if c.len() <= dgr {
            c.resize(dgr + 1, Coef::zero());
        }
        c[dgr] = c[dgr].add(&coef.mul(&k.pow_u(exps[1])));
    }
    UniPoly::from_coefs(c)
}

/// Witness for a pole at the chart origin: a line (t, k t) with nonzero
/// slope whose image misses the denominator curve off the origin.
fn pole_witness(den: &MPoly) -> Result<(PuiseuxPoly, PuiseuxPoly)> {
    for k in realzeros::small_rationals().filter(|k| !k.is_zero()).take(64) {
        let kc = Coef::from_rat(k);
        if !line_restriction(den, &kc).is_value_zero() {
            let t = unit_speed();
            let kt = PuiseuxPoly::monomial(BigRat::one(), kc);
            return Ok((t, kt));
        }
    }
    Err(internal("no line through the pole avoids the denominator"))
}

enum Step {
    Tree(ResolutionNode),
    /// Escape arc in the coordinates of the current node.
    Witness(PuiseuxPoly, PuiseuxPoly),
}

fn resolve_node(num: MPoly, den: MPoly, depth: u32, opts: &ResolveOptions) -> Result<Step> {
    if depth > opts.max_depth {
        return Err(Error::DepthExceeded {
            limit: opts.max_depth,
        });
    }
    if !vanishes_at_origin(&den) {
        return Ok(Step::Tree(ResolutionNode {
            num,
            den,
            detail: NodeDetail::Regular,
        }));
    }
    if !vanishes_at_origin(&num) {
        let (x, y) = pole_witness(&den)?;
        return Ok(Step::Witness(x, y));
    }

    // Both vanish: blow up the origin.
    let (a, p_a) = num.blowup_a().extract_power(0);
    let (b, q_a) = den.blowup_a().extract_power(0);
    let d = a as i64 - b as i64;
    if d < 0 {
        // Negative exceptional order: any transverse arc through a generic
        // fiber point escapes with order exactly d.
        let pa0 = fiber_poly(&p_a);
        let qa0 = fiber_poly(&q_a);
        let v0 = Coef::from_rat(realzeros::rational_avoiding(&[&pa0, &qa0]));
        let (x, y) = transverse_arc(&v0);
        return Ok(Step::Witness(x.clone(), x.mul(&y)));
    }

    let num_a = MPoly::var_pow(2, 0, d as u32).mul(&p_a);
    let qa0 = fiber_poly(&q_a);
    let parent = deepest_tower(&[&p_a, &q_a]);
    let mut children = Vec::new();
    for root in qa0.isolate_real_roots() {
        let rho = realzeros::root_to_coef(&root, parent.as_ref());
        let shift = [Coef::zero(), rho.clone()];
        let cnum = num_a.shift_point(&shift);
        let cden = q_a.shift_point(&shift);
        match resolve_node(cnum, cden, depth + 1, opts)? {
            Step::Tree(node) => children.push(FiberChild { root: rho, node }),
            Step::Witness(x, y) => {
                let yy = y.add(&PuiseuxPoly::constant(rho));
                return Ok(Step::Witness(x.clone(), x.mul(&yy)));
            }
        }
    }

    // Chart B adds only the vertical fiber direction; shared fiber points
    // were already handled above.
    let (a2, p_b) = num.blowup_b().extract_power(1);
    let (b2, q_b) = den.blowup_b().extract_power(1);
    let d2 = a2 as i64 - b2 as i64;
    if d2 != d {
        return Err(internal("chart orders disagree after blowup"));
    }
    let vnum = MPoly::var_pow(2, 1, d as u32).mul(&p_b);
    let vertical = match resolve_node(vnum, q_b, depth + 1, opts)? {
        Step::Tree(node) => Box::new(node),
        Step::Witness(x, y) => {
            return Ok(Step::Witness(x.mul(&y), y));
        }
    };

    Ok(Step::Tree(ResolutionNode {
        num,
        den,
        detail: NodeDetail::Blown {
            d,
            p_a,
            q_a,
            children,
            vertical,
        },
    }))
}

pub fn decide_at(f: &RationalFunction, pt: &[Coef], opts: &ResolveOptions) -> Result<LocalDecision> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedDimension { arity: f.nvars() });
    }
    if pt.len() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: pt.len(),
        });
    }
    let num = f.num().shift_point(pt);
    let den = f.den().shift_point(pt);
    match resolve_node(num, den, 0, opts)? {
        Step::Tree(root) => Ok(LocalDecision::Bounded(ResolutionTree {
            center: pt.to_vec(),
            root,
        })),
        Step::Witness(x, y) => {
            let arc = Arc::new(vec![
                x.add(&PuiseuxPoly::constant(pt[0].clone())),
                y.add(&PuiseuxPoly::constant(pt[1].clone())),
            ])?;
            let limit = arcs::compose(f, &arc)?;
            if !limit.is_infinite() {
                return Err(internal("unbounded witness arc failed validation"));
            }
            Ok(LocalDecision::Unbounded { arc, limit })
        }
    }
}

pub fn is_bounded_at(f: &RationalFunction, pt: &[Coef], opts: &ResolveOptions) -> Result<bool> {
    Ok(matches!(decide_at(f, pt, opts)?, LocalDecision::Bounded(_)))
}

/// Escape along a line through a denominator zero that is not a numerator
/// zero.  Used where the denominator vanishes on a whole curve.
fn escape_along_line(f: &RationalFunction, w: &[Coef]) -> Result<(Arc, ArcLimit)> {
    for k in realzeros::small_rationals().filter(|k| !k.is_zero()).take(64) {
        let x = PuiseuxPoly::constant(w[0].clone()).add(&unit_speed());
        let y = PuiseuxPoly::constant(w[1].clone()).add(&PuiseuxPoly::monomial(
            BigRat::one(),
            Coef::from_rat(k),
        ));
        let arc = Arc::new(vec![x, y])?;
        match arcs::compose(f, &arc) {
            Ok(limit) if limit.is_infinite() => return Ok((arc, limit)),
            _ => continue,
        }
    }
    Err(internal("no line escape found at a pole"))
}

pub fn is_locally_bounded(f: &RationalFunction, opts: &ResolveOptions) -> Result<GlobalDecision> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedDimension { arity: f.nvars() });
    }
    if f.is_zero() || f.den().total_deg() == Some(0) {
        return Ok(GlobalDecision::Bounded {
            certificates: Vec::new(),
        });
    }
    match realzeros::analyze_plane_zeros(f.den())? {
        PlaneZeroSet::Empty => Ok(GlobalDecision::Bounded {
            certificates: Vec::new(),
        }),
        PlaneZeroSet::Infinite => {
            // A curve of denominator zeros off the numerator curve is a
            // curve of poles.
            let w = realzeros::curve_point_avoiding(f.den(), f.num())?;
            let (arc, limit) = escape_along_line(f, &w)?;
            Ok(GlobalDecision::Unbounded { arc, limit })
        }
        PlaneZeroSet::Finite(points) => {
            let mut certificates = Vec::new();
            for w in points {
                match decide_at(f, &w, opts)? {
                    LocalDecision::Bounded(tree) => certificates.push(tree),
                    LocalDecision::Unbounded { arc, limit } => {
                        return Ok(GlobalDecision::Unbounded { arc, limit })
                    }
                }
            }
            Ok(GlobalDecision::Bounded { certificates })
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValueInterval {
    pub lo: Coef,
    pub hi: Coef,
}

impl ValueInterval {
    pub fn contains_zero(&self) -> bool {
        self.lo.sign() <= 0 && self.hi.sign() >= 0
    }

    pub fn is_single_value(&self) -> bool {
        self.lo.value_eq(&self.hi)
    }
}

/// Closed interval of arc limits at the tree's center.  Generic fiber limits
/// of a d = 0 node trace the image of a rational map on the fiber line whose
/// extrema sit at critical points or at the ends; d > 0 nodes contribute 0;
/// regular leaves contribute their value.
pub fn value_interval(tree: &ResolutionTree) -> Result<ValueInterval> {
    let mut vals = Vec::new();
    collect_values(&tree.root, &mut vals)?;
    let mut lo = vals[0].clone();
    let mut hi = vals[0].clone();
    for v in &vals[1..] {
        if v.cmp_value(&lo) == std::cmp::Ordering::Less {
            lo = v.clone();
        }
        if v.cmp_value(&hi) == std::cmp::Ordering::Greater {
            hi = v.clone();
        }
    }
    Ok(ValueInterval { lo, hi })
}

fn collect_values(node: &ResolutionNode, vals: &mut Vec<Coef>) -> Result<()> {
    match &node.detail {
        NodeDetail::Regular => {
            vals.push(origin_value(&node.num).div(&origin_value(&node.den))?);
        }
        NodeDetail::Blown {
            d,
            p_a,
            q_a,
            children,
            vertical,
        } => {
            if *d > 0 {
                vals.push(Coef::zero());
            } else {
                fiber_image_bounds(p_a, q_a, children, vals)?;
            }
            for c in children {
                collect_values(&c.node, vals)?;
            }
            collect_values(vertical, vals)?;
        }
    }
    Ok(())
}

fn fiber_image_bounds(
    p_a: &MPoly,
    q_a: &MPoly,
    children: &[FiberChild],
    vals: &mut Vec<Coef>,
) -> Result<()> {
    let hn_raw = fiber_poly(p_a);
    let hd_raw = fiber_poly(q_a);
    let g = hn_raw.gcd_monic(&hd_raw);
    let (hn, hd) = if g.deg() == Some(0) {
        (hn_raw, hd_raw)
    } else {
        (hn_raw.divrem(&g).0, hd_raw.divrem(&g).0)
    };
    if hn.is_value_zero() || hd.is_value_zero() {
        return Err(internal("degenerate fiber restriction"));
    }
    if !hd.isolate_real_roots().is_empty() {
        return Err(internal("fiber denominator zero inside a bounded tree"));
    }
    let dn = hn.deg().unwrap_or(0);
    let dd = hd.deg().unwrap_or(0);
    if dn > dd {
        return Err(internal("fiber limit escapes inside a bounded tree"));
    }
    if dd == 0 {
        vals.push(hn.coef(0).div(hd.coef(0))?);
        return Ok(());
    }
    let w = hn
        .derivative()
        .mul(&hd)
        .sub(&hn.mul(&hd.derivative()))
        .value_trimmed();
    if w.is_value_zero() {
        // Constant fiber image.
        vals.push(hn.eval(&Coef::zero()).div(&hd.eval(&Coef::zero()))?);
        return Ok(());
    }
    let parent = deepest_tower_uni(&[&hn, &hd]);
    for root in w.isolate_real_roots() {
        let xi = realzeros::root_to_coef(&root, parent.as_ref());
        vals.push(hn.eval(&xi).div(&hd.eval(&xi))?);
    }
    for c in children {
        vals.push(hn.eval(&c.root).div(&hd.eval(&c.root))?);
    }
    if dn < dd {
        vals.push(Coef::zero());
    } else {
        vals.push(hn.coef(dn).div(hd.coef(dd))?);
    }
    Ok(())
}

pub fn value_set(f: &RationalFunction, pt: &[Coef], opts: &ResolveOptions) -> Result<ValueInterval> {
    match decide_at(f, pt, opts)? {
        LocalDecision::Unbounded { .. } => Err(Error::NotLocallyBounded),
        LocalDecision::Bounded(tree) => value_interval(&tree),
    }
}

/// Searches for an arc centered at `pt` along which g tends to zero but f
/// does not.  `None` means no such arc exists, so near `pt` the zero set of
/// g is contained in the zero set of f.  Both functions must be locally
/// bounded; this keeps every exceptional order nonnegative in the shared
/// blowup tower.
pub fn zero_inclusion_witness(
    g: &RationalFunction,
    f: &RationalFunction,
    pt: &[Coef],
    opts: &ResolveOptions,
) -> Result<Option<Arc>> {
    if g.nvars() != 2 || f.nvars() != 2 {
        return Err(Error::UnsupportedDimension { arity: g.nvars() });
    }
    let gn = g.num().shift_point(pt);
    let gd = g.den().shift_point(pt);
    let fnum = f.num().shift_point(pt);
    let fden = f.den().shift_point(pt);
    match joint_node(gn, gd, fnum, fden, 0, opts)? {
        None => Ok(None),
        Some((x, y)) => {
            let arc = Arc::new(vec![
                x.add(&PuiseuxPoly::constant(pt[0].clone())),
                y.add(&PuiseuxPoly::constant(pt[1].clone())),
            ])?;
            let gl = arcs::compose(g, &arc)?;
            let fl = arcs::compose(f, &arc)?;
            if !gl.in_zero_set() || fl.in_zero_set() {
                return Err(internal("inclusion witness arc failed validation"));
            }
            Ok(Some(arc))
        }
    }
}

fn joint_node(
    gn: MPoly,
    gd: MPoly,
    fnum: MPoly,
    fden: MPoly,
    depth: u32,
    opts: &ResolveOptions,
) -> Result<Option<(PuiseuxPoly, PuiseuxPoly)>> {
    if depth > opts.max_depth {
        return Err(Error::DepthExceeded {
            limit: opts.max_depth,
        });
    }
    if fnum.is_zero() {
        // f vanishes identically on this chart: every arc is in its zero set.
        return Ok(None);
    }
    if gn.is_zero() {
        return Err(internal("identically zero pullback in inclusion walk"));
    }
    let g_num_vanishes = vanishes_at_origin(&gn);
    let g_den_vanishes = vanishes_at_origin(&gd);
    if !g_den_vanishes && !g_num_vanishes {
        // g tends to a nonzero value along every arc through the origin.
        return Ok(None);
    }
    if !g_den_vanishes && g_num_vanishes && !vanishes_at_origin(&fden) {
        // Both functions continuous here and g vanishes.
        return if vanishes_at_origin(&fnum) {
            Ok(None)
        } else {
            Ok(Some((unit_speed(), unit_speed())))
        };
    }
    if g_den_vanishes && !g_num_vanishes {
        return Err(internal("pole of a certified bounded function"));
    }

    let (ag, pg) = gn.blowup_a().extract_power(0);
    let (bg, qg) = gd.blowup_a().extract_power(0);
    let (af, pf) = fnum.blowup_a().extract_power(0);
    let (bf, qf) = fden.blowup_a().extract_power(0);
    let dg = ag as i64 - bg as i64;
    let df = af as i64 - bf as i64;
    if dg < 0 || df < 0 {
        return Err(internal("negative exceptional order for bounded input"));
    }
    let pf0 = fiber_poly(&pf);
    let qg0 = fiber_poly(&qg);
    let qf0 = fiber_poly(&qf);
    if dg > 0 && df == 0 {
        // g vanishes along the whole fiber but f has a nonzero limit at a
        // generic fiber point.
        let v0 = Coef::from_rat(realzeros::rational_avoiding(&[&pf0, &qg0, &qf0]));
        let (x, y) = transverse_arc(&v0);
        return Ok(Some((x.clone(), x.mul(&y))));
    }
    if dg == 0 {
        let pg0 = fiber_poly(&pg);
        let parent = deepest_tower(&[&pg, &qg, &pf, &qf]);
        for root in pg0.isolate_real_roots() {
            let xi = realzeros::root_to_coef(&root, parent.as_ref());
            if qg0.eval(&xi).is_zero() || qf0.eval(&xi).is_zero() {
                // Handled by a child node below.
                continue;
            }
            let f_vanishes = df > 0 || pf0.eval(&xi).is_zero();
            if !f_vanishes {
                let (x, y) = transverse_arc(&xi);
                return Ok(Some((x.clone(), x.mul(&y))));
            }
        }
    }

    let prod = qg0.mul(&qf0).value_trimmed();
    let parent = deepest_tower(&[&pg, &qg, &pf, &qf]);
    let gnum_a = MPoly::var_pow(2, 0, dg as u32).mul(&pg);
    let fnum_a = MPoly::var_pow(2, 0, df as u32).mul(&pf);
    for root in prod.isolate_real_roots() {
        let rho = realzeros::root_to_coef(&root, parent.as_ref());
        let shift = [Coef::zero(), rho.clone()];
        let res = joint_node(
            gnum_a.shift_point(&shift),
            qg.shift_point(&shift),
            fnum_a.shift_point(&shift),
            qf.shift_point(&shift),
            depth + 1,
            opts,
        )?;
        if let Some((x, y)) = res {
            let yy = y.add(&PuiseuxPoly::constant(rho));
            return Ok(Some((x.clone(), x.mul(&yy))));
        }
    }

    let (eg, pgb) = gn.blowup_b().extract_power(1);
    let (cg, qgb) = gd.blowup_b().extract_power(1);
    let (ef, pfb) = fnum.blowup_b().extract_power(1);
    let (cf, qfb) = fden.blowup_b().extract_power(1);
    if eg as i64 - cg as i64 != dg || ef as i64 - cf as i64 != df {
        return Err(internal("chart orders disagree in inclusion walk"));
    }
    if !vanishes_at_origin(&qgb) && !vanishes_at_origin(&qfb) {
        let g_zero = dg > 0 || vanishes_at_origin(&pgb);
        let f_zero = df > 0 || vanishes_at_origin(&pfb);
        if g_zero && !f_zero {
            let (x, y) = (unit_speed(), unit_speed());
            return Ok(Some((x.mul(&y), y)));
        }
        Ok(None)
    } else {
        let gb_num = MPoly::var_pow(2, 1, dg as u32).mul(&pgb);
        let fb_num = MPoly::var_pow(2, 1, df as u32).mul(&pfb);
        match joint_node(gb_num, qgb, fb_num, qfb, depth + 1, opts)? {
            None => Ok(None),
            Some((x, y)) => Ok(Some((x.mul(&y), y))),
        }
    }
}
