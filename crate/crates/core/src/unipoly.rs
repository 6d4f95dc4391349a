//! Dense univariate polynomials over exact scalars.
//!
//! Coefficients are `Coef` values, so the same code serves rational
//! polynomials and polynomials over an extension tower.  Representations
//! over a tower are not canonical (a structurally nonzero coefficient can
//! still have value zero), so division and gcd first trim leading
//! coefficients by exact value tests.

use crate::alg::{abs_lower_nonzero, abs_upper, Coef, RealRoot};
use crate::rat::{midpoint, rat_int, rat_to_string, BigRat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients ascending by degree; no trailing structural zeros.
#[derive(Debug, Clone)]
pub struct UniPoly {
    c: Vec<Coef>,
}

fn structural_zero(c: &Coef) -> bool {
    c.as_rat().map_or(false, |r| r.is_zero())
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::from_coefs(vec![Coef::one()])
    }

    pub fn var() -> UniPoly {
        UniPoly::from_coefs(vec![Coef::zero(), Coef::one()])
    }

    pub fn constant(c: Coef) -> UniPoly {
        UniPoly::from_coefs(vec![c])
    }

    pub fn from_coefs(mut c: Vec<Coef>) -> UniPoly {
        while c.last().map_or(false, structural_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_rats(rs: &[BigRat]) -> UniPoly {
        UniPoly::from_coefs(rs.iter().map(|r| Coef::from_rat(r.clone())).collect())
    }

    /// Structural degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coefs(&self) -> &[Coef] {
        &self.c
    }

    pub fn coef(&self, i: usize) -> &Coef {
        &self.c[i]
    }

    pub fn get(&self, i: usize) -> Coef {
        self.c.get(i).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn is_structural_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Drops leading coefficients whose *value* is zero, so the degree and
    /// leading coefficient are honest.
    pub fn value_trimmed(&self) -> UniPoly {
        let mut c = self.c.clone();
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        UniPoly::from_coefs(c)
    }

    pub fn is_value_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn all_rational(&self) -> Option<Vec<BigRat>> {
        self.c.iter().map(|x| x.as_rat().cloned()).collect()
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.get(i).add(&other.get(i)));
        }
        UniPoly::from_coefs(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.c.is_empty() || other.c.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![Coef::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if structural_zero(a) {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coefs(out)
    }

    pub fn mul_coef(&self, k: &Coef) -> UniPoly {
        UniPoly::from_coefs(self.c.iter().map(|x| x.mul(k)).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.c.len() - 1);
        for (i, x) in self.c.iter().enumerate().skip(1) {
            out.push(x.mul(&Coef::from_int(i as i64)));
        }
        UniPoly::from_coefs(out)
    }

    pub fn eval(&self, x: &Coef) -> Coef {
        let mut acc = Coef::zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRat) -> Coef {
        self.eval(&Coef::from_rat(x.clone()))
    }

    /// `p(x + c)` by Horner over `x + c`.
    pub fn shift(&self, c: &Coef) -> UniPoly {
        let lin = UniPoly::from_coefs(vec![c.clone(), Coef::one()]);
        let mut acc = UniPoly::zero();
        for k in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(k.clone()));
        }
        acc
    }

    /// Field division by a value-nonzero divisor; remainder has structural
    /// degree below the divisor's value degree.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let d = d.value_trimmed();
        let dd = d.deg().expect("division by a value-zero polynomial");
        if dd == 0 {
            let inv = d.coef(0).invert().expect("value-trimmed leading coefficient");
            return (self.mul_coef(&inv), UniPoly::zero());
        }
        let lc_inv = d.coef(dd).invert().expect("value-trimmed leading coefficient");
        let mut rem: Vec<Coef> = self.c.clone();
        let mut q = vec![Coef::zero(); rem.len().saturating_sub(dd)];
        let mut top = rem.len();
        loop {
            while top > 0 && rem[top - 1].is_zero() {
                rem[top - 1] = Coef::zero();
                top -= 1;
            }
            if top == 0 || top - 1 < dd {
                break;
            }
            let k = top - 1 - dd;
            let factor = rem[top - 1].mul(&lc_inv);
            for i in 0..dd {
                rem[k + i] = rem[k + i].sub(&factor.mul(d.coef(i)));
            }
            // the leading term cancels exactly by construction
            rem[top - 1] = Coef::zero();
            top -= 1;
            q[k] = factor;
        }
        rem.truncate(top);
        (UniPoly::from_coefs(q), UniPoly::from_coefs(rem))
    }

    pub fn monic(&self) -> UniPoly {
        let t = self.value_trimmed();
        match t.deg() {
            None => UniPoly::zero(),
            Some(d) => {
                let inv = t.coef(d).invert().expect("value-trimmed leading coefficient");
                let mut out = t.mul_coef(&inv);
                // pin the leading coefficient exactly
                out.c[d] = Coef::one();
                UniPoly::from_coefs(out.c)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm over the coefficient field.
    /// Remainders are renormalized at every step; without that the rational
    /// coefficient sizes square each round and moderate degrees become
    /// intractable.
    pub fn gcd_monic(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.value_trimmed().normalize_unit();
        let mut b = other.value_trimmed().normalize_unit();
        while !b.is_structural_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.value_trimmed().normalize_unit();
        }
        if a.is_structural_zero() {
            UniPoly::zero()
        } else {
            a.monic()
        }
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        let p = self.value_trimmed();
        if p.deg().map_or(true, |d| d == 0) {
            return p;
        }
        let g = p.gcd_monic(&p.derivative());
        if g.deg() == Some(0) {
            return p;
        }
        let (q, r) = p.divrem(&g);
        debug_assert!(r.is_value_zero());
        q.value_trimmed()
    }

    /// Canonical unit multiple: integer-primitive with positive leading
    /// coefficient when all coefficients are rational, monic otherwise.
    pub fn normalize_unit(&self) -> UniPoly {
        let t = self.value_trimmed();
        if t.is_structural_zero() {
            return t;
        }
        match t.all_rational() {
            Some(rs) => {
                let mut den = BigInt::one();
                for r in &rs {
                    den = den.lcm(r.denom());
                }
                let mut num = BigInt::zero();
                for r in &rs {
                    num = num.gcd(&(r.numer() * &den / r.denom()));
                }
                if num.is_zero() {
                    return UniPoly::zero();
                }
                let mut scale = BigRat::new(den, num);
                if rs.last().unwrap().is_negative() {
                    scale = -scale.abs();
                } else {
                    scale = scale.abs();
                }
                UniPoly::from_rats(&rs.iter().map(|r| r * &scale).collect::<Vec<_>>())
            }
            None => t.monic(),
        }
    }

    /// Isolates the distinct real roots, sorted ascending.  Exact rational
    /// roots collapse to point intervals; each open interval isolates one
    /// root and the polynomial is nonzero at its endpoints.
    pub fn isolate_real_roots(&self) -> Vec<RealRoot> {
        let p = self.value_trimmed();
        if p.deg().map_or(true, |d| d == 0) {
            return Vec::new();
        }
        let sq = p.squarefree_part().normalize_unit();
        isolate_squarefree(&sq)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if structural_zero(c) {
                continue;
            }
            let (neg, mag) = match c.as_rat() {
                Some(r) => (r.is_negative(), rat_to_string(&r.abs())),
                None => (false, format!("{c}")),
            };
            let body = if i == 0 {
                mag
            } else {
                let v = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if mag == "1" {
                    v
                } else {
                    format!("{mag}*{v}")
                }
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }
}

/// Scales to primitive integer coefficients by a positive rational, which
/// leaves every sign evaluation unchanged.  Non-rational coefficients are
/// returned as they came; those chains stay small.
fn positive_primitive(p: &UniPoly) -> UniPoly {
    let t = p.value_trimmed();
    if t.is_structural_zero() {
        return t;
    }
    match t.all_rational() {
        Some(rs) => {
            let mut den = BigInt::one();
            for r in &rs {
                den = den.lcm(r.denom());
            }
            let mut num = BigInt::zero();
            for r in &rs {
                num = num.gcd(&(r.numer() * &den / r.denom()));
            }
            let scale = BigRat::new(den, num).abs();
            UniPoly::from_rats(&rs.iter().map(|r| r * &scale).collect::<Vec<_>>())
        }
        None => t,
    }
}

/// Sturm chain for counting distinct real roots in a half-open interval
/// `(lo, hi]`; callers keep roots off the endpoints.  Each member is a
/// positive multiple of the textbook one, so variation counts agree while
/// coefficients stay primitive.
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> SturmChain {
        let mut chain = Vec::new();
        let p0 = positive_primitive(p);
        if p0.is_structural_zero() {
            return SturmChain { chain };
        }
        chain.push(p0.clone());
        let mut prev = p0;
        let mut cur = positive_primitive(&prev.derivative());
        while !cur.is_structural_zero() {
            chain.push(cur.clone());
            if cur.deg() == Some(0) {
                break;
            }
            let (_, r) = prev.divrem(&cur);
            prev = cur;
            cur = positive_primitive(&r.neg());
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &BigRat) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.eval_rat(x).sign();
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn count_in(&self, lo: &BigRat, hi: &BigRat) -> usize {
        if self.chain.is_empty() || lo >= hi {
            return 0;
        }
        self.variations(lo) - self.variations(hi)
    }
}

/// Simplest rational (smallest denominator) strictly inside `(lo, hi)` by a
/// Stern-Brocot / continued-fraction walk.
pub fn simplest_rat_in(lo: &BigRat, hi: &BigRat) -> BigRat {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return BigRat::zero();
    }
    if hi.is_zero() || hi.is_negative() {
        return -simplest_nonneg(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo < hi (lo may be zero)
    simplest_nonneg(lo, hi)
}

fn simplest_nonneg(lo: &BigRat, hi: &BigRat) -> BigRat {
    // simplest rational in the open interval, given 0 <= lo < hi
    let fl = lo.floor();
    let next = &fl + BigRat::one();
    if &next < hi {
        return if &next > lo { next } else { unreachable!("floor + 1 exceeds lo") };
    }
    if lo.is_integer() && &next == hi {
        // open interval between consecutive integers: denominator 2 wins
        return lo + crate::rat::rat(1, 2);
    }
    // both endpoints inside [fl, fl+1): invert the fractional parts
    let flo = lo - &fl;
    let fhi = hi - &fl;
    if flo.is_zero() {
        // (0, fhi) with fhi < 1: smallest k with 1/k < fhi is floor(1/fhi)+1
        let d = fhi.recip().floor() + BigRat::one();
        return fl + BigRat::new(BigInt::one(), d.to_integer());
    }
    let r = simplest_nonneg(&fhi.recip(), &flo.recip());
    fl + r.recip()
}

/// Shrinks an interval known to hold exactly one root, testing the simplest
/// rational inside at each step.  Rational roots of modest height collapse to
/// exact points; irrational roots keep a width below 1/64.
fn tighten_isolated(sq: &UniPoly, chain: &SturmChain, mut lo: BigRat, mut hi: BigRat) -> RealRoot {
    let narrow = crate::rat::rat(1, 64);
    loop {
        let s = simplest_rat_in(&lo, &hi);
        if sq.eval_rat(&s).is_zero() {
            return RealRoot::exact(s);
        }
        if &hi - &lo <= narrow {
            return RealRoot { poly: sq.clone(), lo, hi };
        }
        let mid = midpoint(&lo, &hi);
        if sq.eval_rat(&mid).is_zero() {
            return RealRoot::exact(mid);
        }
        if chain.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

fn isolate_squarefree(sq: &UniPoly) -> Vec<RealRoot> {
    let sq = sq.value_trimmed();
    let deg = sq.deg().expect("nonzero squarefree polynomial");
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        let r = sq.coef(0).neg().mul(&sq.coef(1).invert().expect("leading"));
        if let Some(q) = r.as_rat() {
            return vec![RealRoot::exact(q.clone())];
        }
        let (lo, hi) = r.bounds(16);
        if lo == hi {
            return vec![RealRoot::exact(lo)];
        }
        return vec![RealRoot { poly: sq.clone(), lo, hi }];
    }
    // Cauchy bound: all roots lie strictly inside (-b, b)
    let lc_low = abs_lower_nonzero(sq.coef(deg));
    let mut top = BigRat::zero();
    for c in sq.coefs().iter().take(deg) {
        let u = abs_upper(c, 24);
        if u > top {
            top = u;
        }
    }
    let bound = rat_int(1) + top / lc_low;
    let chain = SturmChain::new(&sq);
    let mut found: Vec<RealRoot> = Vec::new();
    let total = chain.count_in(&(-bound.clone()), &bound);
    let mut stack = vec![(-bound.clone(), bound.clone(), total)];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            found.push(tighten_isolated(&sq, &chain, lo, hi));
            continue;
        }
        let mid = midpoint(&lo, &hi);
        if sq.eval_rat(&mid).is_zero() {
            // widen a gap around the exact root so the siblings keep
            // nonzero endpoints
            let mut w = (&hi - &lo) / rat_int(8);
            loop {
                let a = &mid - &w;
                let b = &mid + &w;
                if a > lo
                    && b < hi
                    && !sq.eval_rat(&a).is_zero()
                    && !sq.eval_rat(&b).is_zero()
                    && chain.count_in(&a, &b) == 1
                {
                    stack.push((lo.clone(), a.clone(), chain.count_in(&lo, &a)));
                    stack.push((b.clone(), hi.clone(), chain.count_in(&b, &hi)));
                    found.push(RealRoot::exact(mid.clone()));
                    break;
                }
                w /= rat_int(2);
            }
        } else {
            stack.push((lo.clone(), mid.clone(), chain.count_in(&lo, &mid)));
            stack.push((mid.clone(), hi.clone(), chain.count_in(&mid, &hi)));
        }
    }
    found.sort_by(|a, b| {
        let ka = midpoint(&a.lo, &a.hi);
        let kb = midpoint(&b.lo, &b.hi);
        ka.cmp(&kb)
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn upoly(rs: &[i64]) -> UniPoly {
        UniPoly::from_rats(&rs.iter().map(|&n| rat_int(n)).collect::<Vec<_>>())
    }

    #[test]
    fn division_identity() {
        let a = upoly(&[2, 0, -3, 1]); // x^3 - 3x^2 + 2
        let d = upoly(&[-1, 1]); // x - 1
        let (q, r) = a.divrem(&d);
        assert!(a.sub(&q.mul(&d).add(&r)).is_value_zero());
        assert!(r.is_structural_zero()); // 1 is a root
    }

    #[test]
    fn squarefree_examples() {
        // v^3 -> v
        let p = upoly(&[0, 0, 0, 1]);
        let s = p.squarefree_part().normalize_unit();
        assert_eq!(s.all_rational().unwrap(), vec![rat_int(0), rat_int(1)]);
        // (v-1)^2 (v+2) -> (v-1)(v+2) = v^2 + v - 2
        let p = upoly(&[-1, 1]).mul(&upoly(&[-1, 1])).mul(&upoly(&[2, 1]));
        let s = p.squarefree_part().normalize_unit();
        assert_eq!(
            s.all_rational().unwrap(),
            vec![rat_int(-2), rat_int(1), rat_int(1)]
        );
        // v^2 + 1 unchanged
        let p = upoly(&[1, 0, 1]);
        let s = p.squarefree_part().normalize_unit();
        assert_eq!(s.all_rational().unwrap(), vec![rat_int(1), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn isolate_no_real_roots() {
        assert!(upoly(&[1, 0, 1]).isolate_real_roots().is_empty());
    }

    #[test]
    fn isolate_cube_origin() {
        let roots = upoly(&[0, 0, 0, 1]).isolate_real_roots();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, rat_int(0));
    }

    #[test]
    fn isolate_sqrt2() {
        let roots = upoly(&[-2, 0, 1]).isolate_real_roots();
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].is_exact() && !roots[1].is_exact());
        assert!(roots[0].hi <= roots[1].lo);
        // sign change across each isolating interval
        for r in &roots {
            let a = r.poly.eval_rat(&r.lo).sign();
            let b = r.poly.eval_rat(&r.hi).sign();
            assert_eq!(a * b, -1);
        }
        assert!(roots[0].hi.is_negative() && roots[1].lo.is_positive());
    }

    #[test]
    fn isolate_finds_exact_rational_roots() {
        // (v - 3)(v^2 + 1)
        let p = upoly(&[-3, 1]).mul(&upoly(&[1, 0, 1]));
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, rat_int(3));
        // (3v - 1)(v^2 + 2)
        let p = upoly(&[-1, 3]).mul(&upoly(&[2, 0, 1]));
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].lo, rat(1, 3));
    }

    #[test]
    fn isolate_mixed_roots_sorted() {
        // (v+2)(v)(v^2-3): roots -2, -sqrt3, 0, sqrt3
        let p = upoly(&[2, 1]).mul(&upoly(&[0, 1])).mul(&upoly(&[-3, 0, 1]));
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 4);
        let mids: Vec<BigRat> = roots.iter().map(|r| midpoint(&r.lo, &r.hi)).collect();
        for w in mids.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(roots[0].is_exact() && roots[0].lo == rat_int(-2));
        assert!(roots[2].is_exact() && roots[2].lo == rat_int(0));
    }

    #[test]
    fn sturm_counts() {
        // (v^2-2)(v^2-3): two roots in (0, 2]
        let p = upoly(&[-2, 0, 1]).mul(&upoly(&[-3, 0, 1]));
        let chain = SturmChain::new(&p);
        assert_eq!(chain.count_in(&rat_int(0), &rat_int(2)), 2);
        assert_eq!(chain.count_in(&rat_int(-2), &rat_int(2)), 4);
        assert_eq!(chain.count_in(&rat(3, 2), &rat_int(2)), 1);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rat_in(&rat(-1, 2), &rat(1, 3)), rat_int(0));
        assert_eq!(simplest_rat_in(&rat(5, 2), &rat(7, 2)), rat_int(3));
        assert_eq!(simplest_rat_in(&rat(2, 7), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_rat_in(&rat_int(-3), &rat_int(-1)), rat_int(-2));
        let s = simplest_rat_in(&rat(95, 32), &rat(385, 128));
        assert_eq!(s, rat_int(3));
    }

    #[test]
    fn shift_binomial() {
        let p = upoly(&[0, 0, 1]); // x^2
        let s = p.shift(&Coef::from_int(1));
        assert_eq!(
            s.all_rational().unwrap(),
            vec![rat_int(1), rat_int(2), rat_int(1)]
        );
    }

    #[test]
    fn display_round_trip_shape() {
        let p = upoly(&[-2, 0, 1]);
        assert_eq!(p.display_in("v"), "v^2 - 2");
        let p = UniPoly::from_rats(&[rat(1, 2), rat_int(-1)]);
        assert_eq!(p.display_in("t"), "-t + 1/2");
        assert_eq!(UniPoly::zero().display_in("v"), "0");
    }
}
