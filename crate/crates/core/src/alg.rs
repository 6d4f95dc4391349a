//! Real algebraic scalars.
//!
//! A scalar is either an exact rational or an element of an extension tower.
//! Each tower level adjoins one real root of a squarefree polynomial whose
//! coefficients live at the level below; the root is pinned down by a
//! rational isolating interval.  Defining polynomials are squarefree but not
//! necessarily irreducible (irreducibility is undecidable here without
//! factorization), so quotient representations are not canonical and every
//! decision about a scalar goes through its *value* at the distinguished
//! root: zero tests use gcd plus Sturm counting, signs use interval
//! refinement with exact fallback, and inverses shrink the modulus past any
//! zero divisor they meet.

use crate::rat::{abs_max, max_rat, midpoint, min_rat, rat_int, rat_to_string, BigRat};
use crate::unipoly::{SturmChain, UniPoly};
use crate::{internal, Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc as Shared, Mutex};

pub type TowerRef = Shared<Tower>;

/// One real root of a squarefree polynomial, isolated by a rational
/// interval.  `lo == hi` encodes an exact rational root; otherwise the
/// polynomial has exactly one real root in the open interval and does not
/// vanish at either endpoint.
#[derive(Debug, Clone)]
pub struct RealRoot {
    pub poly: UniPoly,
    pub lo: BigRat,
    pub hi: BigRat,
}

impl RealRoot {
    pub fn exact(r: BigRat) -> RealRoot {
        let poly = UniPoly::from_coefs(vec![Coef::from_rat(-r.clone()), Coef::one()]);
        RealRoot { poly, lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The root as a scalar of the *parent* level, when it needs no
    /// extension: exact rationals and roots of degree-one polynomials.
    pub fn as_existing_coef(&self) -> Option<Coef> {
        if self.is_exact() {
            return Some(Coef::from_rat(self.lo.clone()));
        }
        let p = self.poly.value_trimmed();
        if p.deg() == Some(1) {
            let c1 = p.coef(1).invert().expect("value-trimmed leading coefficient");
            return Some(p.coef(0).neg().mul(&c1));
        }
        None
    }
}

/// An extension tower level: the parent chain, the adjoined root, and a
/// refinement cache for the root's isolating interval.
pub struct Tower {
    pub parent: Option<TowerRef>,
    pub root: RealRoot,
    pub height: u32,
    /// Fast nonzero path: base-level quadratic defining polynomial that is
    /// irreducible over the rationals.
    pub simple: bool,
    cache: Mutex<(BigRat, BigRat)>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("height", &self.height)
            .field("root", &self.root)
            .finish()
    }
}

fn rational_square(r: &BigRat) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &sn * &sn == *n && &sd * &sd == *d
}

pub fn extend(parent: Option<TowerRef>, root: RealRoot) -> TowerRef {
    assert!(root.lo < root.hi, "exact roots never build a tower level");
    let poly = root.poly.value_trimmed();
    assert!(poly.deg().map_or(false, |d| d >= 2), "degree-one roots live in the parent");
    let height = parent.as_ref().map_or(1, |p| p.height + 1);
    let simple = parent.is_none()
        && poly.deg() == Some(2)
        && poly.all_rational().map_or(false, |c| {
            let disc = &c[1] * &c[1] - rat_int(4) * &c[2] * &c[0];
            !rational_square(&disc)
        });
    let cache = Mutex::new((root.lo.clone(), root.hi.clone()));
    let root = RealRoot { poly, lo: root.lo, hi: root.hi };
    Shared::new(Tower { parent, root, height, simple, cache })
}

pub fn is_ancestor(a: &TowerRef, b: &TowerRef) -> bool {
    let mut cur = Some(b.clone());
    while let Some(t) = cur {
        if Shared::ptr_eq(a, &t) {
            return true;
        }
        cur = t.parent.clone();
    }
    false
}

/// Refines the tower root's isolating interval until it is no wider than
/// `goal`, returning the refined interval.  Exact hits collapse it.
fn refine_interval(tower: &Tower, goal: &BigRat) -> (BigRat, BigRat) {
    let mut cache = tower.cache.lock().unwrap();
    if cache.0 == cache.1 {
        return cache.clone();
    }
    let sign_lo = tower.root.poly.eval_rat(&cache.0).sign();
    debug_assert!(sign_lo != 0);
    while &cache.1 - &cache.0 > *goal {
        let mid = midpoint(&cache.0, &cache.1);
        let s = tower.root.poly.eval_rat(&mid).sign();
        if s == 0 {
            *cache = (mid.clone(), mid);
            break;
        }
        if s == sign_lo {
            cache.0 = mid;
        } else {
            cache.1 = mid;
        }
    }
    cache.clone()
}

/// Exact scalar: a rational or a tower element.
#[derive(Debug, Clone)]
pub enum Coef {
    Rat(BigRat),
    Alg(AlgElem),
}

/// Tower element: a polynomial in the tower's generator with coefficients
/// from the parent level, of degree below the defining polynomial's.
#[derive(Debug, Clone)]
pub struct AlgElem {
    pub tower: TowerRef,
    pub repr: UniPoly,
}

impl Coef {
    pub fn zero() -> Coef {
        Coef::Rat(BigRat::zero())
    }

    pub fn one() -> Coef {
        Coef::Rat(BigRat::one())
    }

    pub fn from_int(n: i64) -> Coef {
        Coef::Rat(rat_int(n))
    }

    pub fn from_rat(r: BigRat) -> Coef {
        Coef::Rat(r)
    }

    /// Builds a tower element, reducing modulo the defining polynomial and
    /// collapsing constants to the parent level.
    pub fn alg(tower: &TowerRef, repr: UniPoly) -> Coef {
        let (_, rem) = repr.divrem(&tower.root.poly);
        match rem.deg() {
            None => Coef::zero(),
            Some(0) => rem.coef(0).clone(),
            Some(_) => Coef::Alg(AlgElem { tower: tower.clone(), repr: rem }),
        }
    }

    /// The generator of `tower` as a scalar.
    pub fn generator(tower: &TowerRef) -> Coef {
        Coef::alg(tower, UniPoly::var())
    }

    pub fn as_rat(&self) -> Option<&BigRat> {
        match self {
            Coef::Rat(r) => Some(r),
            Coef::Alg(_) => None,
        }
    }

    pub fn tower(&self) -> Option<&TowerRef> {
        match self {
            Coef::Rat(_) => None,
            Coef::Alg(e) => Some(&e.tower),
        }
    }

    fn lift_to(&self, tower: &TowerRef) -> Coef {
        match self.tower() {
            Some(t) if Shared::ptr_eq(t, tower) => self.clone(),
            _ => Coef::Alg(AlgElem {
                tower: tower.clone(),
                repr: UniPoly::from_coefs(vec![self.clone()]),
            }),
        }
    }

    /// Brings two scalars to a common tower (rationals lift anywhere; an
    /// ancestor element lifts into a descendant tower).  `None` when the
    /// towers are unrelated.
    fn aligned(&self, other: &Coef) -> Option<(Coef, Coef)> {
        match (self.tower(), other.tower()) {
            (None, None) => Some((self.clone(), other.clone())),
            (Some(t), None) => Some((self.clone(), other.lift_to(t))),
            (None, Some(t)) => Some((self.lift_to(t), other.clone())),
            (Some(a), Some(b)) => {
                if Shared::ptr_eq(a, b) {
                    Some((self.clone(), other.clone()))
                } else if is_ancestor(a, b) {
                    Some((self.lift_to(b), other.clone()))
                } else if is_ancestor(b, a) {
                    Some((self.clone(), other.lift_to(a)))
                } else {
                    None
                }
            }
        }
    }

    fn aligned_or_panic(&self, other: &Coef) -> (Coef, Coef) {
        self.aligned(other)
            .expect("arithmetic between scalars of unrelated towers")
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Rat(r) => Coef::Rat(-r),
            Coef::Alg(e) => Coef::Alg(AlgElem { tower: e.tower.clone(), repr: e.repr.neg() }),
        }
    }

    pub fn add(&self, other: &Coef) -> Coef {
        let (a, b) = self.aligned_or_panic(other);
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
            (Coef::Alg(x), Coef::Alg(y)) => Coef::alg(&x.tower, x.repr.add(&y.repr)),
            _ => unreachable!("aligned scalars share a representation"),
        }
    }

    pub fn sub(&self, other: &Coef) -> Coef {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coef) -> Coef {
        let (a, b) = self.aligned_or_panic(other);
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
            (Coef::Alg(x), Coef::Alg(y)) => Coef::alg(&x.tower, x.repr.mul(&y.repr)),
            _ => unreachable!("aligned scalars share a representation"),
        }
    }

    pub fn pow_u(&self, mut k: u32) -> Coef {
        let mut base = self.clone();
        let mut acc = Coef::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact zero test on the value at the distinguished root.
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_zero(),
            Coef::Alg(e) => {
                if e.repr.deg().is_none() {
                    return true;
                }
                if e.tower.simple && e.repr.all_rational().is_some() {
                    // Irreducible base quadratic: a lower-degree nonzero
                    // rational polynomial cannot share its root.
                    return false;
                }
                let g = e.repr.gcd_monic(&e.tower.root.poly);
                match g.deg() {
                    None => unreachable!("gcd of nonzero polynomials"),
                    Some(0) => false,
                    Some(_) => {
                        // repr vanishes at the root iff the gcd does; the
                        // gcd's roots inside the isolating interval can only
                        // be the distinguished root itself.
                        SturmChain::new(&g).count_in(&e.tower.root.lo, &e.tower.root.hi) >= 1
                    }
                }
            }
        }
    }

    /// Rational enclosure of the value; width shrinks as `depth` grows.
    pub fn bounds(&self, depth: u32) -> (BigRat, BigRat) {
        match self {
            Coef::Rat(r) => (r.clone(), r.clone()),
            Coef::Alg(e) => {
                let goal = BigRat::new(BigInt::one(), BigInt::one() << depth);
                let (glo, ghi) = refine_interval(&e.tower, &goal);
                let mut acc = (BigRat::zero(), BigRat::zero());
                for c in e.repr.coefs().iter().rev() {
                    let (clo, chi) = c.bounds(depth);
                    let products = [
                        &acc.0 * &glo,
                        &acc.0 * &ghi,
                        &acc.1 * &glo,
                        &acc.1 * &ghi,
                    ];
                    let mut lo = products[0].clone();
                    let mut hi = products[0].clone();
                    for p in &products[1..] {
                        lo = min_rat(lo, p.clone());
                        hi = max_rat(hi, p.clone());
                    }
                    acc = (lo + clo, hi + chi);
                }
                acc
            }
        }
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> i32 {
        match self {
            Coef::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Coef::Alg(_) => {
                if self.is_zero() {
                    return 0;
                }
                let mut depth = 8;
                loop {
                    let (lo, hi) = self.bounds(depth);
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    // Nonzero value: the enclosure eventually separates.
                    depth *= 2;
                    assert!(depth <= 1 << 20, "sign refinement runaway");
                }
            }
        }
    }

    pub fn invert(&self) -> Result<Coef> {
        match self {
            Coef::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Coef::Rat(r.recip()))
                }
            }
            Coef::Alg(e) => {
                if self.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let inv = invert_mod(&e.repr, &e.tower.root.poly)?;
                Ok(Coef::alg(&e.tower, inv))
            }
        }
    }

    pub fn div(&self, other: &Coef) -> Result<Coef> {
        Ok(self.mul(&other.invert()?))
    }

    /// Total order on values.  Related towers compare by subtraction; scalars
    /// from unrelated towers go through their rational descriptions.
    pub fn cmp_value(&self, other: &Coef) -> Ordering {
        if let Some((a, b)) = self.aligned(other) {
            return match a.sub(&b).sign() {
                0 => Ordering::Equal,
                s if s > 0 => Ordering::Greater,
                _ => Ordering::Less,
            };
        }
        let da = self.q_description();
        let db = other.q_description();
        cross_compare(&da, &db)
    }

    pub fn value_eq(&self, other: &Coef) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }

    /// A rational-coefficient squarefree polynomial vanishing at the value,
    /// with an interval isolating the value among its real roots.
    pub fn q_description(&self) -> QDescription {
        match self {
            Coef::Rat(r) => QDescription {
                poly: UniPoly::from_rats(&[-r.clone(), BigRat::one()]),
                lo: r.clone(),
                hi: r.clone(),
            },
            Coef::Alg(_) => describe_over_q(self),
        }
    }

    /// Advisory decimal rendering; never used in decisions.
    pub fn approx(&self) -> String {
        match self {
            Coef::Rat(r) => match r.to_f64() {
                Some(v) => format!("{v:.6}"),
                None => "overflow".to_string(),
            },
            Coef::Alg(_) => {
                let (lo, hi) = self.bounds(48);
                match midpoint(&lo, &hi).to_f64() {
                    Some(v) => format!("{v:.6}"),
                    None => "overflow".to_string(),
                }
            }
        }
    }
}

/// Value-correct inverse of `r` modulo `m`, where the distinguished root is
/// a root of `m` but not of `r`.  When the extended Euclid meets a
/// nonconstant gcd, the root cannot lie on it (it divides `r`), so the
/// modulus shrinks by that factor and the search repeats; the result then
/// satisfies `result * r = 1` at the root.
fn invert_mod(r: &UniPoly, m: &UniPoly) -> Result<UniPoly> {
    let m = m.value_trimmed();
    let r = r.divrem(&m).1;
    let mut r0 = m.clone();
    let mut r1 = r.clone();
    let mut t0 = UniPoly::zero();
    let mut t1 = UniPoly::from_coefs(vec![Coef::one()]);
    loop {
        let r1t = r1.value_trimmed();
        match r1t.deg() {
            None => {
                // gcd = r0, nonconstant; divide it out of the modulus.
                let g = r0.value_trimmed().monic();
                let m2 = m.divrem(&g).0.value_trimmed();
                if m2.deg().map_or(true, |d| d == 0) {
                    return Err(internal("inverse modulus collapsed"));
                }
                return invert_mod(&r, &m2);
            }
            Some(0) => {
                let c = r1t.coef(0).invert()?;
                return Ok(t1.mul_coef(&c));
            }
            Some(_) => {
                let (q, rem) = r0.divrem(&r1t);
                let t2 = t0.sub(&q.mul(&t1));
                r0 = r1t;
                r1 = rem;
                t0 = t1;
                t1 = t2;
            }
        }
    }
}

/// Rational description of an algebraic value: squarefree polynomial over
/// the rationals plus an isolating interval.
#[derive(Debug, Clone)]
pub struct QDescription {
    pub poly: UniPoly,
    pub lo: BigRat,
    pub hi: BigRat,
}

impl QDescription {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

fn tower_chain(tower: &TowerRef) -> Vec<TowerRef> {
    let mut chain = Vec::new();
    let mut cur = Some(tower.clone());
    while let Some(t) = cur {
        cur = t.parent.clone();
        chain.push(t);
    }
    chain.reverse();
    chain
}

/// Coordinates of a scalar in the monomial basis of the tower chain's
/// quotient algebra over the rationals.
fn q_coords(c: &Coef, chain: &[TowerRef]) -> Vec<BigRat> {
    if chain.is_empty() {
        return vec![c.as_rat().expect("base level is rational").clone()];
    }
    let last = &chain[chain.len() - 1];
    let below = &chain[..chain.len() - 1];
    let sub_dim: usize = below
        .iter()
        .map(|t| t.root.poly.deg().expect("value-trimmed defining"))
        .product();
    let deg = last.root.poly.deg().expect("value-trimmed defining");
    let mut out = vec![BigRat::zero(); sub_dim * deg];
    let reprs: Vec<Coef> = match c {
        Coef::Alg(e) if Shared::ptr_eq(&e.tower, last) => e.repr.coefs().to_vec(),
        other => vec![other.clone()],
    };
    for (k, coeff) in reprs.iter().enumerate() {
        let block = q_coords(coeff, below);
        out[k * sub_dim..(k + 1) * sub_dim].clone_from_slice(&block);
    }
    out
}

/// Characteristic polynomial of a rational matrix via Faddeev-LeVerrier.
fn charpoly(m: &[Vec<BigRat>]) -> UniPoly {
    let n = m.len();
    let mut coeffs = vec![BigRat::zero(); n + 1];
    coeffs[n] = BigRat::one();
    // aux = M * (aux_prev + c_prev * I), c_k = -tr(aux)/k
    let mut aux: Vec<Vec<BigRat>> = m.to_vec();
    for k in 1..=n {
        let tr: BigRat = (0..n).map(|i| aux[i][i].clone()).sum();
        let c = -tr / rat_int(k as i64);
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = aux.clone();
            for (i, row) in shifted.iter_mut().enumerate().take(n) {
                row[i] += &c;
            }
            let mut next = vec![vec![BigRat::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = BigRat::zero();
                    for (l, srow) in shifted.iter().enumerate() {
                        acc += &m[i][l] * &srow[j];
                    }
                    next[i][j] = acc;
                }
            }
            aux = next;
        }
    }
    UniPoly::from_rats(&coeffs)
}

/// Computes a rational polynomial with the scalar's value among its roots by
/// taking the characteristic polynomial of the multiplication matrix on the
/// chain's quotient algebra, then isolates the value among the real roots.
/// Works for reducible definings, where iterated resultants can degenerate.
fn describe_over_q(c: &Coef) -> QDescription {
    let tower = c.tower().expect("rational handled by caller").clone();
    let chain = tower_chain(&tower);
    let degs: Vec<usize> = chain
        .iter()
        .map(|t| t.root.poly.deg().expect("value-trimmed defining"))
        .collect();
    let dim: usize = degs.iter().product();
    // Basis scalars: products of generator powers, matching q_coords order.
    let mut basis = vec![Coef::one()];
    for (i, t) in chain.iter().enumerate() {
        let gen = Coef::generator(t).lift_to(&tower);
        let mut next = Vec::with_capacity(basis.len() * degs[i]);
        for k in 0..degs[i] {
            let gp = gen.pow_u(k as u32);
            for b in &basis {
                next.push(b.mul(&gp));
            }
        }
        basis = next;
    }
    debug_assert_eq!(basis.len(), dim);
    let mut matrix = vec![vec![BigRat::zero(); dim]; dim];
    for (j, b) in basis.iter().enumerate() {
        let col = q_coords(&c.mul(b), &chain);
        for i in 0..dim {
            matrix[i][j] = col[i].clone();
        }
    }
    let cp = charpoly(&matrix);
    let sq = cp.squarefree_part().normalize_unit();
    let roots = sq.isolate_real_roots();
    assert!(!roots.is_empty(), "value must appear among real roots");
    let mut depth = 8;
    loop {
        let (elo, ehi) = c.bounds(depth);
        let mut hits: Vec<&RealRoot> = roots
            .iter()
            .filter(|r| !(r.hi < elo || ehi < r.lo))
            .collect();
        if hits.len() == 1 {
            let r = hits.pop().unwrap();
            if r.is_exact() || (r.lo <= elo && ehi <= r.hi) {
                return QDescription { poly: sq, lo: r.lo.clone(), hi: r.hi.clone() };
            }
        }
        depth *= 2;
        assert!(depth <= 1 << 20, "root identification runaway");
    }
}

fn refine_q(d: &mut QDescription) {
    if d.is_exact() {
        return;
    }
    let mid = midpoint(&d.lo, &d.hi);
    let s = d.poly.eval_rat(&mid).sign();
    if s == 0 {
        d.lo = mid.clone();
        d.hi = mid;
        return;
    }
    let s_lo = d.poly.eval_rat(&d.lo).sign();
    if s == s_lo {
        d.lo = mid;
    } else {
        d.hi = mid;
    }
}

/// Compares two rationally described algebraic values by interval
/// refinement, certifying equality through a shared root of the gcd.
fn cross_compare(a: &QDescription, b: &QDescription) -> Ordering {
    let mut a = a.clone();
    let mut b = b.clone();
    if a.is_exact() && b.is_exact() {
        return a.lo.cmp(&b.lo);
    }
    let g = a.poly.gcd_monic(&b.poly);
    let g_nonconst = g.deg().map_or(false, |d| d >= 1);
    loop {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if a.is_exact() && b.is_exact() {
            return a.lo.cmp(&b.lo);
        }
        if g_nonconst {
            let lo = max_rat(a.lo.clone(), b.lo.clone());
            let hi = min_rat(a.hi.clone(), b.hi.clone());
            if lo < hi && SturmChain::new(&g).count_in(&lo, &hi) >= 1 {
                // That root is the unique root of each polynomial in its
                // own isolating interval, hence equals both values.
                return Ordering::Equal;
            }
        }
        refine_q(&mut a);
        refine_q(&mut b);
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Rat(r) => write!(f, "{}", rat_to_string(r)),
            Coef::Alg(_) => {
                let d = self.q_description();
                write!(
                    f,
                    "root({}, {}, {})",
                    d.poly.display_in("v"),
                    rat_to_string(&d.lo),
                    rat_to_string(&d.hi)
                )
            }
        }
    }
}

/// Upper bound refinements used by Cauchy root bounds: a rational upper
/// bound on |value| and a positive rational lower bound for nonzero values.
pub fn abs_upper(c: &Coef, depth: u32) -> BigRat {
    let (lo, hi) = c.bounds(depth);
    abs_max(&lo, &hi)
}

pub fn abs_lower_nonzero(c: &Coef) -> BigRat {
    let mut depth = 8;
    loop {
        let (lo, hi) = c.bounds(depth);
        if lo.is_positive() {
            return lo;
        }
        if hi.is_negative() {
            return -hi;
        }
        depth *= 2;
        assert!(depth <= 1 << 20, "lower bound refinement runaway");
    }
}
