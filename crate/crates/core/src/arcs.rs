//! Bounded Puiseux arcs and exact limits of rational functions along them.
//!
//! Arcs have finitely many terms, so composition is exact: substituting
//! `t = s^N` with `N` the common ramification turns each coordinate into a
//! polynomial in `s`, and the limit comes from the lowest nonzero orders of
//! the composed numerator and denominator.  Only those lowest groups are
//! ever summed, which keeps large arc-family scans cheap.

use crate::alg::Coef;
use crate::rat::{rat_int, BigRat};
use crate::ratfunc::RationalFunction;
use crate::{internal, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Finitely many terms `c * t^e` with distinct rational exponents, kept
/// sorted ascending; stored coefficients are value-nonzero.
#[derive(Debug, Clone)]
pub struct PuiseuxPoly {
    terms: Vec<(BigRat, Coef)>,
}

impl PuiseuxPoly {
    pub fn zero() -> PuiseuxPoly {
        PuiseuxPoly { terms: Vec::new() }
    }

    pub fn constant(c: Coef) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(vec![(BigRat::zero(), c)])
    }

    pub fn monomial(exp: BigRat, c: Coef) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(vec![(exp, c)])
    }

    pub fn from_terms(raw: Vec<(BigRat, Coef)>) -> PuiseuxPoly {
        let mut terms: Vec<(BigRat, Coef)> = Vec::new();
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            match terms.iter_mut().find(|(e2, _)| *e2 == e) {
                Some((_, acc)) => *acc = acc.add(&c),
                None => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        PuiseuxPoly { terms }
    }

    pub fn add(&self, other: &PuiseuxPoly) -> PuiseuxPoly {
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        PuiseuxPoly::from_terms(raw)
    }

    pub fn mul(&self, other: &PuiseuxPoly) -> PuiseuxPoly {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                raw.push((e1 + e2, c1.mul(c2)));
            }
        }
        PuiseuxPoly::from_terms(raw)
    }

    pub fn terms(&self) -> &[(BigRat, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn constant_term(&self) -> Coef {
        self.terms
            .iter()
            .find(|(e, _)| e.is_zero())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coef::zero)
    }

    pub fn min_exponent(&self) -> Option<&BigRat> {
        self.terms.first().map(|(e, _)| e)
    }

    fn ram_denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for (e, _) in &self.terms {
            d = d.lcm(e.denom());
        }
        d
    }

    pub fn display(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c.as_rat() {
                Some(r) => (r.is_negative(), crate::rat::rat_to_string(&r.abs())),
                None => (false, format!("{c}")),
            };
            let tpart = if e.is_zero() {
                None
            } else if e.is_one() {
                Some(var.to_string())
            } else if e.is_integer() {
                Some(format!("{var}^{}", e.numer()))
            } else {
                Some(format!("{var}^({}/{})", e.numer(), e.denom()))
            };
            let body = match tpart {
                None => mag,
                Some(t) if mag == "1" => t,
                Some(t) => format!("{mag}*{t}"),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// A bounded, non-constant Puiseux arc: one coordinate polynomial per
/// variable, every exponent nonnegative.
#[derive(Debug, Clone)]
pub struct Arc {
    entries: Vec<PuiseuxPoly>,
}

impl Arc {
    pub fn new(entries: Vec<PuiseuxPoly>) -> Result<Arc> {
        for p in &entries {
            if p.terms().iter().any(|(e, _)| e.is_negative()) {
                return Err(Error::UnboundedArc);
            }
        }
        if entries.iter().all(|p| p.is_constant()) {
            return Err(Error::ConstantArc);
        }
        Ok(Arc { entries })
    }

    pub fn entries(&self) -> &[PuiseuxPoly] {
        &self.entries
    }

    pub fn nvars(&self) -> usize {
        self.entries.len()
    }

    /// The limit point `γ(0)`.
    pub fn center(&self) -> Vec<Coef> {
        self.entries.iter().map(|p| p.constant_term()).collect()
    }

    /// Common ramification: the lcm of all exponent denominators.
    pub fn ramification(&self) -> u64 {
        let mut d = BigInt::one();
        for p in &self.entries {
            d = d.lcm(&p.ram_denominator());
        }
        d.to_u64().expect("ramification fits a machine word")
    }

    pub fn display(&self, var: &str) -> String {
        let parts: Vec<String> = self.entries.iter().map(|p| p.display(var)).collect();
        format!("({})", parts.join(", "))
    }
}

#[derive(Debug, Clone)]
pub enum LimitValue {
    Finite(Coef),
    Infinite,
}

/// Exact behaviour of `f` composed with an arc: the vanishing order
/// (`None` when the composition is identically zero), the limit at `t = 0`,
/// and the leading coefficient of the composed expansion.
#[derive(Debug, Clone)]
pub struct ArcLimit {
    pub order: Option<BigRat>,
    pub limit: LimitValue,
    pub leading: Option<Coef>,
}

impl ArcLimit {
    /// Arc-wise zero set membership: the composition tends to zero.
    pub fn in_zero_set(&self) -> bool {
        match &self.order {
            None => true,
            Some(o) => o.is_positive(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.limit, LimitValue::Infinite)
    }
}

/// Sparse polynomial in `s`: (degree, coefficient) pairs, ascending, merged.
type Sparse = Vec<(u64, Coef)>;

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut raw: Sparse = Vec::with_capacity(a.len() * b.len());
    for (da, ca) in a {
        for (db, cb) in b {
            raw.push((da + db, ca.mul(cb)));
        }
    }
    merge_sparse(raw)
}

fn merge_sparse(mut raw: Sparse) -> Sparse {
    raw.sort_by_key(|t| t.0);
    let mut out: Sparse = Vec::with_capacity(raw.len());
    for (d, c) in raw {
        match out.last_mut() {
            Some((d2, acc)) if *d2 == d => *acc = acc.add(&c),
            _ => out.push((d, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Lowest degree whose accumulated coefficient is nonzero, without touching
/// higher groups.  Input must be sorted by degree but may hold duplicates.
fn lowest_nonzero(mut raw: Sparse) -> Option<(u64, Coef)> {
    raw.sort_by_key(|t| t.0);
    let mut i = 0;
    while i < raw.len() {
        let d = raw[i].0;
        let mut acc = Coef::zero();
        while i < raw.len() && raw[i].0 == d {
            acc = acc.add(&raw[i].1);
            i += 1;
        }
        if !acc.is_zero() {
            return Some((d, acc));
        }
    }
    None
}

/// Power tables for each coordinate of a (scaled) arc: `tables[v][k]` is the
/// sparse expansion of the v-th coordinate raised to the k-th power.
fn power_tables(entries: &[Sparse], need: &[u32]) -> Vec<Vec<Sparse>> {
    entries
        .iter()
        .zip(need)
        .map(|(base, &n)| {
            let mut pows: Vec<Sparse> = Vec::with_capacity(n as usize + 1);
            pows.push(vec![(0, Coef::one())]);
            for k in 1..=n as usize {
                let next = sparse_mul(&pows[k - 1], base);
                pows.push(next);
            }
            pows
        })
        .collect()
}

/// Expands `p` along the arc given by power tables, as an unsorted sparse
/// term list.
fn expand_terms(p: &crate::mpoly::MPoly, tables: &[Vec<Sparse>]) -> Sparse {
    let mut out: Sparse = Vec::new();
    for (e, c) in p.terms() {
        let mut partial: Sparse = vec![(0, c.clone())];
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let table = &tables[v][k as usize];
            if table.is_empty() {
                partial.clear();
                break;
            }
            let mut next: Sparse = Vec::with_capacity(partial.len() * table.len());
            for (d1, c1) in &partial {
                for (d2, c2) in table {
                    next.push((d1 + d2, c1.mul(c2)));
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

fn limit_from_lows(
    num_low: Option<(u64, Coef)>,
    den_low: Option<(u64, Coef)>,
    ram: u64,
) -> Result<ArcLimit> {
    let (dd, dc) = match den_low {
        None => return Err(Error::ArcInsideIndeterminacy),
        Some(x) => x,
    };
    let (nd, nc) = match num_low {
        None => {
            return Ok(ArcLimit {
                order: None,
                limit: LimitValue::Finite(Coef::zero()),
                leading: None,
            })
        }
        Some(x) => x,
    };
    let diff = BigInt::from(nd) - BigInt::from(dd);
    let order = BigRat::new(diff, BigInt::from(ram));
    let leading = nc.div(&dc)?;
    let limit = if order.is_positive() {
        LimitValue::Finite(Coef::zero())
    } else if order.is_zero() {
        LimitValue::Finite(leading.clone())
    } else {
        LimitValue::Infinite
    };
    Ok(ArcLimit { order: Some(order), limit, leading: Some(leading) })
}

fn scaled_entries(arc: &Arc, ram: u64) -> Result<Vec<Sparse>> {
    let ram_big = BigInt::from(ram);
    arc.entries()
        .iter()
        .map(|p| {
            p.terms()
                .iter()
                .map(|(e, c)| {
                    let scaled = e * BigRat::from(ram_big.clone());
                    let d = scaled
                        .to_integer()
                        .to_u64()
                        .ok_or_else(|| internal("arc exponent too large"))?;
                    Ok((d, c.clone()))
                })
                .collect::<Result<Sparse>>()
                .map(merge_sparse)
        })
        .collect()
}

/// Exact limit of `f` along `γ`.
pub fn compose(f: &RationalFunction, arc: &Arc) -> Result<ArcLimit> {
    if f.nvars() != arc.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: arc.nvars() });
    }
    let ram = arc.ramification();
    let entries = scaled_entries(arc, ram)?;
    let need: Vec<u32> = (0..f.nvars())
        .map(|v| f.num().deg_in(v).max(f.den().deg_in(v)))
        .collect();
    let tables = power_tables(&entries, &need);
    let num_low = lowest_nonzero(expand_terms(f.num(), &tables));
    let den_low = lowest_nonzero(expand_terms(f.den(), &tables));
    limit_from_lows(num_low, den_low, ram)
}

/// Budget for the standard arc family: one perturbation term per coordinate,
/// `center + c * t^e` with `c` and `e` drawn from these sets.
#[derive(Debug, Clone)]
pub struct ScanBudget {
    pub exponents: Vec<BigRat>,
    pub coefficients: Vec<BigRat>,
}

impl ScanBudget {
    pub fn with_caps(max_num: u32, max_den: u32) -> ScanBudget {
        let mut exponents = Vec::new();
        for q in 1..=max_den as i64 {
            for p in 1..=max_num as i64 {
                let e = BigRat::new(p.into(), q.into());
                if !exponents.contains(&e) {
                    exponents.push(e);
                }
            }
        }
        exponents.sort();
        let coefficients = [0, 1, -1, 2, -2, 3, -3]
            .iter()
            .map(|&k| rat_int(k))
            .chain([crate::rat::rat(1, 2), crate::rat::rat(-1, 2)])
            .collect();
        ScanBudget { exponents, coefficients }
    }
}

impl Default for ScanBudget {
    fn default() -> ScanBudget {
        ScanBudget::with_caps(6, 3)
    }
}

/// Every limit of `f` along the budgeted family of arcs centered at `pt`.
/// Arcs lying inside the zero set of the denominator are skipped.
pub fn arc_family_scan(
    f: &RationalFunction,
    pt: &[Coef],
    budget: &ScanBudget,
) -> Vec<ArcLimit> {
    assert_eq!(f.nvars(), pt.len());
    let nv = f.nvars();
    let mut ram = BigInt::one();
    for e in &budget.exponents {
        ram = ram.lcm(e.denom());
    }
    let ram = ram.to_u64().expect("budget ramification fits");
    let ram_big = BigInt::from(ram);
    // per-coordinate options: constant first, then one per (coef, exponent)
    let mut bases: Vec<Sparse> = Vec::new();
    let mut per_coord = 0usize;
    {
        for c in &budget.coefficients {
            if c.is_zero() {
                continue;
            }
            per_coord += budget.exponents.len();
        }
        per_coord += 1;
    }
    for c in &budget.coefficients {
        if c.is_zero() {
            continue;
        }
        for e in &budget.exponents {
            let scaled = (e * BigRat::from(ram_big.clone()))
                .to_integer()
                .to_u64()
                .expect("scan exponent fits");
            bases.push(vec![(scaled, Coef::from_rat(c.clone()))]);
        }
    }
    let need: Vec<u32> = (0..nv)
        .map(|v| f.num().deg_in(v).max(f.den().deg_in(v)))
        .collect();
    // tables[v][opt][k]: option 0 is the constant coordinate
    let tables: Vec<Vec<Vec<Sparse>>> = (0..nv)
        .map(|v| {
            let mut opts = Vec::with_capacity(per_coord);
            let center = pt[v].clone();
            opts.push(constant_powers(&center, need[v]));
            for b in &bases {
                let mut entry = b.clone();
                if !center.is_zero() {
                    entry.push((0, center.clone()));
                }
                let entry = merge_sparse(entry);
                opts.push(single_powers(&entry, need[v]));
            }
            opts
        })
        .collect();
    // Substitute one coordinate at a time and share the partial expansions
    // across the whole subtree of remaining choices.  Coordinates with a
    // nonzero center get binomial power tables, so they go outermost where
    // their cost is amortized; zero centers keep single-monomial tables and
    // stay cheap at the leaves.
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| u8::from(pt[v].is_zero()));
    let ctx = ScanCtx { tables: &tables, order: &order, ram, nv };
    let num0 = term_states(f.num(), &order);
    let den0 = term_states(f.den(), &order);
    if nv == 1 {
        let mut out = Vec::new();
        let mut scratch = (Vec::new(), Vec::new());
        scan_recurse(&ctx, 0, &num0, &den0, false, &mut out, &mut scratch);
        return out;
    }
    let top = order[0];
    tables[top]
        .par_iter()
        .enumerate()
        .map(|(opt, powers)| {
            let nn = substitute_mid(&num0, 0, powers);
            let dd = substitute_mid(&den0, 0, powers);
            let mut out = Vec::new();
            let mut scratch = (Vec::new(), Vec::new());
            scan_recurse(&ctx, 1, &nn, &dd, opt != 0, &mut out, &mut scratch);
            out
        })
        .collect::<Vec<Vec<ArcLimit>>>()
        .into_iter()
        .flatten()
        .collect()
}

struct ScanCtx<'a> {
    /// tables[v][opt][k]: powers of coordinate option `opt` for variable `v`.
    tables: &'a [Vec<Vec<Sparse>>],
    /// Substitution order; position j holds the original variable index.
    order: &'a [usize],
    ram: u64,
    nv: usize,
}

/// One partially substituted term: exponents indexed by substitution
/// position, the accumulated t-degree, and the accumulated coefficient.
#[derive(Clone)]
struct SubTerm {
    exps: Box<[u32]>,
    tdeg: u64,
    coef: Coef,
}

fn term_states(p: &crate::mpoly::MPoly, order: &[usize]) -> Vec<SubTerm> {
    p.terms()
        .iter()
        .map(|(e, c)| SubTerm {
            exps: order.iter().map(|&v| e[v]).collect(),
            tdeg: 0,
            coef: c.clone(),
        })
        .collect()
}

fn substitute_mid(state: &[SubTerm], j: usize, powers: &[Sparse]) -> Vec<SubTerm> {
    let mut out: Vec<SubTerm> = Vec::with_capacity(state.len() * 2);
    for s in state {
        let tab = &powers[s.exps[j] as usize];
        for (d, c) in tab {
            let mut exps = s.exps.clone();
            exps[j] = 0;
            let coef = if is_unit_one(c) { s.coef.clone() } else { s.coef.mul(c) };
            out.push(SubTerm { exps, tdeg: s.tdeg + d, coef });
        }
    }
    out.sort_by(|a, b| a.exps.cmp(&b.exps).then(a.tdeg.cmp(&b.tdeg)));
    let mut merged: Vec<SubTerm> = Vec::with_capacity(out.len());
    for e in out {
        match merged.last_mut() {
            Some(m) if m.exps == e.exps && m.tdeg == e.tdeg => m.coef = m.coef.add(&e.coef),
            _ => merged.push(e),
        }
    }
    merged.retain(|e| !e.coef.is_zero());
    merged
}

fn is_unit_one(c: &Coef) -> bool {
    matches!(c.as_rat(), Some(r) if r.is_one())
}

fn substitute_leaf(state: &[SubTerm], j: usize, powers: &[Sparse], scratch: &mut Sparse) {
    scratch.clear();
    for s in state {
        let tab = &powers[s.exps[j] as usize];
        for (d, c) in tab {
            let coef = if is_unit_one(c) { s.coef.clone() } else { s.coef.mul(c) };
            scratch.push((s.tdeg + d, coef));
        }
    }
}

/// Lowest term of a state that does not mention the coordinate substituted
/// at position `j`, so it is shared by every option.
fn free_low(state: &[SubTerm], j: usize, scratch: &mut Sparse) -> Option<Option<(u64, Coef)>> {
    if state.iter().any(|s| s.exps[j] != 0) {
        return None;
    }
    scratch.clear();
    scratch.extend(state.iter().map(|s| (s.tdeg, s.coef.clone())));
    Some(lowest_in_place(scratch))
}

fn scan_recurse(
    ctx: &ScanCtx,
    j: usize,
    num: &[SubTerm],
    den: &[SubTerm],
    nonconst: bool,
    out: &mut Vec<ArcLimit>,
    scratch: &mut (Sparse, Sparse),
) {
    let v = ctx.order[j];
    if j + 1 == ctx.nv {
        let num_shared = free_low(num, j, &mut scratch.0);
        let den_shared = free_low(den, j, &mut scratch.1);
        for (opt, powers) in ctx.tables[v].iter().enumerate() {
            if opt == 0 && !nonconst {
                // the all-constant combination is the center, not an arc
                continue;
            }
            let num_low = match &num_shared {
                Some(low) => low.clone(),
                None => {
                    substitute_leaf(num, j, powers, &mut scratch.0);
                    lowest_in_place(&mut scratch.0)
                }
            };
            let den_low = match &den_shared {
                Some(low) => low.clone(),
                None => {
                    substitute_leaf(den, j, powers, &mut scratch.1);
                    lowest_in_place(&mut scratch.1)
                }
            };
            if let Ok(l) = limit_from_lows(num_low, den_low, ctx.ram) {
                out.push(l);
            }
        }
    } else {
        for (opt, powers) in ctx.tables[v].iter().enumerate() {
            let nn = substitute_mid(num, j, powers);
            let dd = substitute_mid(den, j, powers);
            scan_recurse(ctx, j + 1, &nn, &dd, nonconst || opt != 0, out, scratch);
        }
    }
}

/// `lowest_nonzero` on a scratch buffer, leaving the allocation in place.
fn lowest_in_place(raw: &mut Sparse) -> Option<(u64, Coef)> {
    raw.sort_by_key(|t| t.0);
    let mut i = 0;
    while i < raw.len() {
        let d = raw[i].0;
        let mut acc = raw[i].1.clone();
        i += 1;
        while i < raw.len() && raw[i].0 == d {
            acc = acc.add(&raw[i].1);
            i += 1;
        }
        if !acc.is_zero() {
            return Some((d, acc));
        }
    }
    None
}

fn constant_powers(c: &Coef, need: u32) -> Vec<Sparse> {
    let mut out = Vec::with_capacity(need as usize + 1);
    let mut acc = Coef::one();
    out.push(vec![(0, acc.clone())]);
    for _ in 0..need {
        acc = acc.mul(c);
        out.push(if acc.is_zero() { Vec::new() } else { vec![(0, acc.clone())] });
    }
    out
}

fn single_powers(base: &Sparse, need: u32) -> Vec<Sparse> {
    let mut out: Vec<Sparse> = Vec::with_capacity(need as usize + 1);
    out.push(vec![(0, Coef::one())]);
    for k in 1..=need as usize {
        let next = sparse_mul(&out[k - 1], base);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::MPoly;
    use crate::rat::rat;

    fn f1() -> RationalFunction {
        // x^2 / (x^2 + y^2)
        RationalFunction::new(
            MPoly::from_int_terms(2, &[(&[2, 0], 1)]),
            MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]),
        )
        .unwrap()
    }

    fn t_arc(coords: &[&[(i64, i64, i64)]]) -> Arc {
        // each coordinate: list of (exp_num, exp_den, coef)
        let entries = coords
            .iter()
            .map(|terms| {
                PuiseuxPoly::from_terms(
                    terms
                        .iter()
                        .map(|&(p, q, c)| (BigRat::new(p.into(), q.into()), Coef::from_int(c)))
                        .collect(),
                )
            })
            .collect();
        Arc::new(entries).unwrap()
    }

    #[test]
    fn pole_along_line() {
        // x/(x^2+y^2) along (t, 0)
        let f = RationalFunction::new(
            MPoly::from_int_terms(2, &[(&[1, 0], 1)]),
            MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]),
        )
        .unwrap();
        let arc = t_arc(&[&[(1, 1, 1)], &[]]);
        let lim = compose(&f, &arc).unwrap();
        assert_eq!(lim.order, Some(rat_int(-1)));
        assert!(lim.is_infinite());
    }

    #[test]
    fn parabola_into_zero_set() {
        let arc = t_arc(&[&[(2, 1, 1)], &[(1, 1, 1)]]);
        let lim = compose(&f1(), &arc).unwrap();
        assert_eq!(lim.order, Some(rat_int(2)));
        assert!(lim.in_zero_set());
        match lim.limit {
            LimitValue::Finite(v) => assert!(v.is_zero()),
            _ => panic!("finite limit expected"),
        }
    }

    #[test]
    fn line_limits_fill_values() {
        let arc = t_arc(&[&[(1, 1, 1)], &[(1, 1, 1)]]);
        let lim = compose(&f1(), &arc).unwrap();
        assert_eq!(lim.order, Some(BigRat::zero()));
        match lim.limit {
            LimitValue::Finite(v) => assert!(v.value_eq(&Coef::from_rat(rat(1, 2)))),
            _ => panic!("finite limit expected"),
        }
        assert!(lim.leading.unwrap().value_eq(&Coef::from_rat(rat(1, 2))));
    }

    #[test]
    fn identically_zero_composition() {
        let f = RationalFunction::from_poly(MPoly::from_int_terms(2, &[(&[1, 0], 1)]));
        let arc = t_arc(&[&[], &[(1, 1, 1)]]);
        let lim = compose(&f, &arc).unwrap();
        assert!(lim.order.is_none());
        assert!(lim.in_zero_set());
        assert!(lim.leading.is_none());
    }

    #[test]
    fn half_exponent_ramification() {
        // (t^(1/2), 1 - t): ramification 2, limit point (0, 1)
        let x_part = PuiseuxPoly::monomial(rat(1, 2), Coef::one());
        let y_part = PuiseuxPoly::from_terms(vec![
            (BigRat::zero(), Coef::one()),
            (rat_int(1), Coef::from_int(-1)),
        ]);
        let arc = Arc::new(vec![x_part, y_part]).unwrap();
        assert_eq!(arc.ramification(), 2);
        let center = arc.center();
        assert!(center[0].is_zero() && center[1].value_eq(&Coef::one()));
        let fx = RationalFunction::from_poly(MPoly::var(2, 0));
        let lim = compose(&fx, &arc).unwrap();
        assert_eq!(lim.order, Some(rat(1, 2)));
        let fy = RationalFunction::from_poly(MPoly::var(2, 1));
        let lim = compose(&fy, &arc).unwrap();
        assert_eq!(lim.order, Some(BigRat::zero()));
        match lim.limit {
            LimitValue::Finite(v) => assert!(v.value_eq(&Coef::one())),
            _ => panic!(),
        }
    }

    #[test]
    fn invalid_arcs_rejected() {
        let neg = PuiseuxPoly::monomial(rat_int(-1), Coef::one());
        assert!(matches!(
            Arc::new(vec![neg, PuiseuxPoly::zero()]),
            Err(Error::UnboundedArc)
        ));
        let c = PuiseuxPoly::constant(Coef::one());
        assert!(matches!(
            Arc::new(vec![c, PuiseuxPoly::zero()]),
            Err(Error::ConstantArc)
        ));
    }

    #[test]
    fn arc_inside_denominator_zero_set() {
        let f = RationalFunction::new(MPoly::one(2), MPoly::var(2, 0)).unwrap();
        let arc = t_arc(&[&[], &[(1, 1, 1)]]);
        assert!(matches!(compose(&f, &arc), Err(Error::ArcInsideIndeterminacy)));
    }

    #[test]
    fn arity_mismatch_detected() {
        let arc = t_arc(&[&[(1, 1, 1)]]);
        assert!(matches!(
            compose(&f1(), &arc),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn scan_family_size_and_range() {
        let budget = ScanBudget::default();
        assert_eq!(budget.exponents.len(), 13);
        assert_eq!(budget.coefficients.len(), 9);
        let pt = [Coef::zero(), Coef::zero()];
        let limits = arc_family_scan(&f1(), &pt, &budget);
        // 105 options per coordinate, minus the all-constant combination
        assert_eq!(limits.len(), 105 * 105 - 1);
        let mut saw_one = false;
        let mut saw_zero = false;
        for lim in &limits {
            assert!(!lim.is_infinite());
            match &lim.limit {
                LimitValue::Finite(v) => {
                    assert!(v.sign() >= 0);
                    assert!(v.sub(&Coef::one()).sign() <= 0);
                    if v.value_eq(&Coef::one()) {
                        saw_one = true;
                    }
                    if v.is_zero() {
                        saw_zero = true;
                    }
                }
                LimitValue::Infinite => unreachable!(),
            }
        }
        assert!(saw_one && saw_zero);
    }

    #[test]
    fn scan_matches_composed_arcs_at_a_shifted_center() {
        // 1/(x - y^2) at (1, 1): the denominator vanishes at the center, so
        // the family mixes finite limits, poles and skipped arcs.
        let f = RationalFunction::new(
            MPoly::one(2),
            MPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 2], -1)]),
        )
        .unwrap();
        let mut budget = ScanBudget::with_caps(2, 2);
        budget.coefficients = vec![rat_int(0), rat_int(1), rat_int(-2)];
        let pt = [Coef::one(), Coef::one()];
        let scanned = arc_family_scan(&f, &pt, &budget);

        let mut options: Vec<Option<(BigRat, BigRat)>> = vec![None];
        for c in &budget.coefficients {
            if c.is_zero() {
                continue;
            }
            for e in &budget.exponents {
                options.push(Some((c.clone(), e.clone())));
            }
        }
        let mut expected = Vec::new();
        for ox in &options {
            for oy in &options {
                if ox.is_none() && oy.is_none() {
                    continue;
                }
                let coord = |o: &Option<(BigRat, BigRat)>| {
                    let mut terms = vec![(BigRat::zero(), Coef::one())];
                    if let Some((c, e)) = o {
                        terms.push((e.clone(), Coef::from_rat(c.clone())));
                    }
                    PuiseuxPoly::from_terms(terms)
                };
                let arc = Arc::new(vec![coord(ox), coord(oy)]).unwrap();
                match compose(&f, &arc) {
                    Ok(l) => expected.push(l),
                    Err(Error::ArcInsideIndeterminacy) => {}
                    Err(e) => panic!("unexpected {e:?}"),
                }
            }
        }
        let key = |l: &ArcLimit| {
            (
                l.order.clone(),
                l.is_infinite(),
                l.leading.as_ref().map(|c| c.as_rat().expect("rational").clone()),
            )
        };
        let mut a: Vec<_> = scanned.iter().map(key).collect();
        let mut b: Vec<_> = expected.iter().map(key).collect();
        a.sort();
        b.sort();
        assert_eq!(a.len(), 48);
        assert_eq!(a, b);
    }

    #[test]
    fn display_forms() {
        let p = PuiseuxPoly::from_terms(vec![
            (rat(3, 2), Coef::from_int(2)),
            (rat_int(1), Coef::from_int(-1)),
        ]);
        assert_eq!(p.display("t"), "2*t^(3/2) - t");
        let arc = t_arc(&[&[(1, 1, 1)], &[(2, 1, 3)]]);
        assert_eq!(arc.display("t"), "(t, 3*t^2)");
    }
}
