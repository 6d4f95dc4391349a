//! Sparse multivariate polynomials over exact scalars.
//!
//! Terms are kept sorted in graded lexicographic order, ascending, and every
//! stored coefficient is value-nonzero: construction tests each coefficient
//! exactly and drops zeros, so `is_zero` and degrees are honest even over an
//! extension tower.

use crate::alg::Coef;
use crate::rat::{rat_to_string, BigRat};
use crate::unipoly::UniPoly;
use crate::{internal, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct MPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, Coef)>,
}

fn mono_total(e: &[u32]) -> u64 {
    e.iter().map(|&k| k as u64).sum()
}

fn mono_cmp(a: &[u32], b: &[u32]) -> Ordering {
    mono_total(a).cmp(&mono_total(b)).then_with(|| a.cmp(b))
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Coef) -> MPoly {
        MPoly::from_terms(nvars, vec![(vec![0; nvars], c)])
    }

    pub fn one(nvars: usize) -> MPoly {
        MPoly::constant(nvars, Coef::one())
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::from_terms(nvars, vec![(e, Coef::one())])
    }

    pub fn var_pow(nvars: usize, i: usize, k: u32) -> MPoly {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = k;
        MPoly::from_terms(nvars, vec![(e, Coef::one())])
    }

    pub fn from_terms(nvars: usize, raw: Vec<(Vec<u32>, Coef)>) -> MPoly {
        let mut map: HashMap<Vec<u32>, Coef> = HashMap::new();
        for (e, c) in raw {
            assert_eq!(e.len(), nvars, "exponent arity mismatch");
            match map.get_mut(&e) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut terms: Vec<(Vec<u32>, Coef)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| mono_cmp(&a.0, &b.0));
        MPoly { nvars, terms }
    }

    pub fn from_int_terms(nvars: usize, raw: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(
            nvars,
            raw.iter()
                .map(|(e, n)| (e.to_vec(), Coef::from_int(*n)))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Coef> {
        match self.terms.len() {
            0 => Some(Coef::zero()),
            1 if mono_total(&self.terms[0].0) == 0 => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn total_deg(&self) -> Option<u64> {
        self.terms.last().map(|(e, _)| mono_total(e))
    }

    /// Minimal total degree of a term: the vanishing order at the origin.
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.first().map(|(e, _)| mono_total(e))
    }

    pub fn deg_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn all_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.as_rat().is_some())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < other.terms.len() {
            match mono_cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly { nvars: self.nvars, terms: out }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return MPoly::zero(self.nvars);
        }
        let mut map: HashMap<Vec<u32>, Coef> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.mul(cb);
                match map.get_mut(&e) {
                    Some(acc) => *acc = acc.add(&c),
                    None => {
                        map.insert(e, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Vec<u32>, Coef)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| mono_cmp(&a.0, &b.0));
        MPoly { nvars: self.nvars, terms }
    }

    pub fn mul_coef(&self, k: &Coef) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deriv(&self, v: usize) -> MPoly {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            out.push((e2, c.mul(&Coef::from_int(e[v] as i64))));
        }
        MPoly::from_terms(self.nvars, out)
    }

    pub fn eval(&self, xs: &[Coef]) -> Coef {
        assert_eq!(xs.len(), self.nvars);
        let mut powers: Vec<Vec<Coef>> = Vec::with_capacity(self.nvars);
        for v in 0..self.nvars {
            let d = self.deg_in(v) as usize;
            let mut ps = Vec::with_capacity(d + 1);
            ps.push(Coef::one());
            for k in 1..=d {
                let next = ps[k - 1].mul(&xs[v]);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = Coef::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..self.nvars {
                if e[v] > 0 {
                    t = t.mul(&powers[v][e[v] as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval_rat(&self, xs: &[BigRat]) -> Coef {
        let cs: Vec<Coef> = xs.iter().map(|r| Coef::from_rat(r.clone())).collect();
        self.eval(&cs)
    }

    /// Sets one variable to zero, dropping every term it divides.
    pub fn subst_zero(&self, v: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[v] == 0)
                .cloned()
                .collect(),
        }
    }

    /// Sets one variable to a scalar value.
    pub fn set_var(&self, v: usize, x: &Coef) -> MPoly {
        let d = self.deg_in(v) as usize;
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Coef::one());
        for k in 1..=d {
            let next = powers[k - 1].mul(x);
            powers.push(next);
        }
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out.push((e2, c.mul(&powers[k])));
        }
        MPoly::from_terms(self.nvars, out)
    }

    /// Translates the origin: `p(x + c)` coordinate by coordinate.
    pub fn shift_point(&self, center: &[Coef]) -> MPoly {
        assert_eq!(center.len(), self.nvars);
        let mut p = self.clone();
        for (v, c) in center.iter().enumerate() {
            if !c.is_zero() {
                p = p.shift_var(v, c);
            }
        }
        p
    }

    fn shift_var(&self, v: usize, c: &Coef) -> MPoly {
        let d = self.deg_in(v) as usize;
        // binomial rows up to the needed degree
        let mut binom = vec![vec![BigInt::one()]];
        for n in 1..=d {
            let prev = &binom[n - 1];
            let mut row = vec![BigInt::one()];
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            binom.push(row);
        }
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(Coef::one());
        for k in 1..=d {
            let next = powers[k - 1].mul(c);
            powers.push(next);
        }
        let mut out = Vec::new();
        for (e, coef) in &self.terms {
            let n = e[v] as usize;
            for k in 0..=n {
                let mut e2 = e.clone();
                e2[v] = k as u32;
                let scale = Coef::from_rat(BigRat::from(binom[n][k].clone()));
                out.push((e2, coef.mul(&scale).mul(&powers[n - k])));
            }
        }
        MPoly::from_terms(self.nvars, out)
    }

    /// Largest power of a variable dividing the polynomial, with the cofactor.
    pub fn extract_power(&self, v: usize) -> (u32, MPoly) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let k = self.terms.iter().map(|(e, _)| e[v]).min().unwrap();
        if k == 0 {
            return (0, self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[v] -= k;
                (e2, c.clone())
            })
            .collect();
        (k, MPoly::from_terms(self.nvars, terms))
    }

    /// Substitution for the chart `x = u, y = u v`: a monomial `x^i y^j`
    /// becomes `u^(i+j) v^j`.
    pub fn blowup_a(&self) -> MPoly {
        assert_eq!(self.nvars, 2);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (vec![e[0] + e[1], e[1]], c.clone()))
            .collect();
        MPoly::from_terms(2, terms)
    }

    /// Substitution for the chart `x = u v, y = v`: a monomial `x^i y^j`
    /// becomes `u^i v^(i+j)`.
    pub fn blowup_b(&self) -> MPoly {
        assert_eq!(self.nvars, 2);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (vec![e[0], e[0] + e[1]], c.clone()))
            .collect();
        MPoly::from_terms(2, terms)
    }

    /// Coefficients with respect to one variable, ascending; each keeps the
    /// full variable count with that exponent zeroed.
    pub fn rec_coeffs(&self, v: usize) -> Vec<MPoly> {
        let d = self.deg_in(v) as usize;
        let mut out = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].push((e2, c.clone()));
        }
        out.into_iter()
            .map(|ts| MPoly::from_terms(self.nvars, ts))
            .collect()
    }

    pub fn from_rec(nvars: usize, v: usize, coeffs: Vec<MPoly>) -> MPoly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.into_iter().enumerate() {
            for (mut e, c) in p.terms {
                assert_eq!(e[v], 0);
                e[v] = k as u32;
                terms.push((e, c));
            }
        }
        MPoly::from_terms(nvars, terms)
    }

    /// Requires every term to involve only `v`.
    pub fn as_unipoly(&self, v: usize) -> UniPoly {
        let d = self.deg_in(v) as usize;
        let mut out = vec![Coef::zero(); d + 1];
        for (e, c) in &self.terms {
            for (w, &k) in e.iter().enumerate() {
                assert!(w == v || k == 0, "polynomial is not univariate in the chosen variable");
            }
            out[e[v] as usize] = c.clone();
        }
        UniPoly::from_coefs(out)
    }

    pub fn from_unipoly(nvars: usize, v: usize, p: &UniPoly) -> MPoly {
        let mut terms = Vec::new();
        for (k, c) in p.coefs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = k as u32;
            terms.push((e, c.clone()));
        }
        MPoly::from_terms(nvars, terms)
    }

    /// Reinterprets the polynomial over a wider variable list; `map[i]` is the
    /// new index of old variable `i`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0; nvars];
                for (i, &k) in e.iter().enumerate() {
                    e2[map[i]] = k;
                }
                (e2, c.clone())
            })
            .collect();
        MPoly::from_terms(nvars, terms)
    }

    /// Exact division; errors if the divisor does not divide evenly.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return Err(internal("exact division by zero polynomial"));
        }
        if self.is_zero() {
            return Ok(MPoly::zero(self.nvars));
        }
        if let Some(c) = d.as_constant() {
            let inv = c.invert()?;
            return Ok(self.mul_coef(&inv));
        }
        let v = (0..self.nvars)
            .rev()
            .find(|&w| d.deg_in(w) > 0)
            .expect("nonconstant divisor");
        let dc = d.rec_coeffs(v);
        let n = dc.len() - 1;
        let lc = &dc[n];
        let mut rem = self.rec_coeffs(v);
        let mut q = vec![MPoly::zero(self.nvars); rem.len().saturating_sub(n)];
        loop {
            while rem.last().map_or(false, |p| p.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
            let dr = rem.len() - 1;
            if dr < n {
                return Err(internal("inexact polynomial division"));
            }
            let qc = rem[dr].div_exact(lc)?;
            for i in 0..n {
                let t = qc.mul(&dc[i]);
                rem[dr - n + i] = rem[dr - n + i].sub(&t);
            }
            rem.truncate(dr);
            q[dr - n] = qc;
        }
        Ok(MPoly::from_rec(self.nvars, v, q))
    }

    /// The scalar that takes this polynomial to its canonical unit multiple.
    pub fn unit_scale(&self) -> Coef {
        if self.is_zero() {
            return Coef::one();
        }
        if self.all_rational() {
            let mut den = BigInt::one();
            for (_, c) in &self.terms {
                den = den.lcm(c.as_rat().unwrap().denom());
            }
            let mut num = BigInt::zero();
            for (_, c) in &self.terms {
                let r = c.as_rat().unwrap();
                num = num.gcd(&(r.numer() * &den / r.denom()));
            }
            let lead_neg = self.terms.last().unwrap().1.as_rat().unwrap().is_negative();
            let mut scale = BigRat::new(den, num).abs();
            if lead_neg {
                scale = -scale;
            }
            Coef::from_rat(scale)
        } else {
            self.terms.last().unwrap().1.invert().expect("nonzero leading")
        }
    }

    /// Canonical unit multiple: integer coefficients with content one and a
    /// positive leading coefficient when all coefficients are rational,
    /// leading coefficient one otherwise.
    pub fn normalize_unit(&self) -> MPoly {
        self.mul_coef(&self.unit_scale())
    }

    pub fn squarefree_part(&self) -> MPoly {
        if self.is_zero() || self.as_constant().is_some() {
            return self.normalize_unit();
        }
        let mut g = self.clone();
        for v in 0..self.nvars {
            if self.deg_in(v) > 0 {
                g = gcd(&g, &self.deriv(v));
            }
        }
        if g.as_constant().is_some() {
            return self.normalize_unit();
        }
        self.div_exact(&g)
            .expect("gcd with derivatives divides")
            .normalize_unit()
    }

    pub fn display(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c.as_rat() {
                Some(r) => (r.is_negative(), rat_to_string(&r.abs())),
                None => (false, format!("{c}")),
            };
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || mono_total(e) == 0 {
                factors.push(mag);
            }
            for (v, &p) in e.iter().enumerate() {
                if p == 1 {
                    factors.push(names[v].to_string());
                } else if p > 1 {
                    factors.push(format!("{}^{}", names[v], p));
                }
            }
            let body = factors.join("*");
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

/// Gcd of the coefficients of `p` viewed recursively in variable `v`.
pub fn content_wrt(p: &MPoly, v: usize) -> MPoly {
    let mut acc = MPoly::zero(p.nvars());
    for c in p.rec_coeffs(v) {
        if !c.is_zero() {
            acc = gcd(&acc, &c);
        }
        if acc.as_constant().map_or(false, |k| !k.is_zero()) {
            break;
        }
    }
    acc
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let bc = b.rec_coeffs(v);
    let db = bc.len() - 1;
    let lcb = &bc[db];
    let mut r = a.rec_coeffs(v);
    loop {
        while r.last().map_or(false, |p| p.is_zero()) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for item in r.iter_mut().take(dr) {
            *item = item.mul(lcb);
        }
        for i in 0..db {
            let t = lcr.mul(&bc[i]);
            r[dr - db + i] = r[dr - db + i].sub(&t);
        }
        r.truncate(dr);
    }
    MPoly::from_rec(a.nvars(), v, r)
}

/// Greatest common divisor by primitive pseudo-remainder sequences, returned
/// in canonical unit form.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    assert_eq!(a.nvars(), b.nvars());
    if a.is_zero() {
        return b.normalize_unit();
    }
    if b.is_zero() {
        return a.normalize_unit();
    }
    let active = (0..a.nvars())
        .rev()
        .find(|&v| a.deg_in(v) > 0 || b.deg_in(v) > 0);
    let v = match active {
        None => return MPoly::one(a.nvars()),
        Some(v) => v,
    };
    let ca = content_wrt(a, v);
    let cb = content_wrt(b, v);
    let cg = gcd(&ca, &cb);
    // The unit normalization also rescales numeric coefficients to content
    // one; without it the remainder sequence squares its coefficient sizes
    // at every step, because polynomial content alone never shrinks them.
    let pa = a.div_exact(&ca).expect("content divides").normalize_unit();
    let pb = b.div_exact(&cb).expect("content divides").normalize_unit();
    let (mut r0, mut r1) = if pa.deg_in(v) >= pb.deg_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !r1.is_zero() {
        let r = prem(&r0, &r1, v);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            let c = content_wrt(&r, v);
            r.div_exact(&c).expect("content divides").normalize_unit()
        };
    }
    let c0 = content_wrt(&r0, v);
    let prim = r0.div_exact(&c0).expect("content divides");
    cg.mul(&prim).normalize_unit()
}

/// Resultant of `a` and `b` with respect to `v`: the determinant of the
/// Sylvester matrix, computed by fraction-free elimination so every division
/// is exact.
pub fn resultant(a: &MPoly, b: &MPoly, v: usize) -> Result<MPoly> {
    assert_eq!(a.nvars(), b.nvars());
    let nv = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Ok(MPoly::zero(nv));
    }
    let ac = a.rec_coeffs(v);
    let bc = b.rec_coeffs(v);
    let m = ac.len() - 1;
    let n = bc.len() - 1;
    if m == 0 && n == 0 {
        return Ok(MPoly::one(nv));
    }
    if m == 0 {
        return Ok(ac[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(bc[0].pow(m as u32));
    }
    let size = m + n;
    let mut mat = vec![vec![MPoly::zero(nv); size]; size];
    for row in 0..n {
        for (k, c) in ac.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in bc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    let mut sign = false;
    let mut prev = MPoly::one(nv);
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..size).find(|&i| !mat[i][k].is_zero());
            match swap {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(MPoly::zero(nv)),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = mat[i][j].mul(&mat[k][k]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = t.div_exact(&prev)?;
            }
            mat[i][k] = MPoly::zero(nv);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if sign { det.neg() } else { det })
}
