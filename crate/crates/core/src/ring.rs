//! Multivariate polynomials over the rationals with weighted gradings and
//! pluggable monomial orders.
//!
//! A [`PolyRing`] fixes an ordered list of variable names and a positive
//! integer weight per variable. Polynomials are stored canonically: a sorted
//! term list with no zero coefficients, so structural equality is semantic
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Coef = BigRational;

pub fn coef_int(n: i64) -> Coef {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coef_ratio(num: i64, den: i64) -> Coef {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    vars: Vec<String>,
    weights: Vec<i64>,
}

/// A polynomial ring `Q[x_1, ..., x_n]` with a positive weight per variable.
#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for PolyRing {}

impl std::hash::Hash for PolyRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PolyRing {
    /// Standard-graded ring: every variable has weight 1.
    pub fn new(vars: &[&str]) -> PolyRing {
        Self::with_weights(&vars.iter().map(|v| (*v, 1)).collect::<Vec<_>>())
    }

    /// Ring with explicit weights. Panics on duplicate names or weights < 1.
    pub fn with_weights(vars: &[(&str, i64)]) -> PolyRing {
        let names: Vec<String> = vars.iter().map(|(v, _)| v.to_string()).collect();
        let weights: Vec<i64> = vars.iter().map(|(_, w)| *w).collect();
        for i in 0..names.len() {
            assert!(weights[i] >= 1, "variable weight must be >= 1");
            for j in (i + 1)..names.len() {
                assert!(names[i] != names[j], "duplicate variable name {}", names[i]);
            }
        }
        PolyRing(Arc::new(RingData { vars: names, weights }))
    }

    pub fn arity(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn weights(&self) -> &[i64] {
        &self.0.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// New ring with extra variables appended.
    pub fn extend(&self, new_vars: &[(&str, i64)]) -> PolyRing {
        let mut vars: Vec<(&str, i64)> = self
            .0
            .vars
            .iter()
            .zip(&self.0.weights)
            .map(|(v, w)| (v.as_str(), *w))
            .collect();
        vars.extend_from_slice(new_vars);
        PolyRing::with_weights(&vars)
    }

    /// New ring keeping only the variables for which `keep` is true.
    pub fn subring(&self, keep: &[bool]) -> PolyRing {
        assert_eq!(keep.len(), self.arity());
        let vars: Vec<(&str, i64)> = self
            .0
            .vars
            .iter()
            .zip(&self.0.weights)
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, (v, w))| (v.as_str(), *w))
            .collect();
        PolyRing::with_weights(&vars)
    }

    /// Same variables, all weights reset to 1. Used for scratch eliminations
    /// where the working ideal is not homogeneous for the official weights.
    pub fn unweighted(&self) -> PolyRing {
        let vars: Vec<(&str, i64)> =
            self.0.vars.iter().map(|v| (v.as_str(), 1)).collect();
        PolyRing::with_weights(&vars)
    }

    /// For each variable of `self`, its index in `target` (by name).
    pub fn injection_into(&self, target: &PolyRing) -> Result<Vec<usize>> {
        self.0
            .vars
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::RingMismatch(format!("variable {v} missing in target ring")))
            })
            .collect()
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(Coef::one())
    }

    pub fn constant(&self, c: Coef) -> Poly {
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(Mono::one(self.arity()), c)] }
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.arity());
        let mut exps = vec![0u16; self.arity()];
        exps[i] = 1;
        Poly { ring: self.clone(), terms: vec![(Mono::new(exps), Coef::one())] }
    }

    pub fn var_named(&self, name: &str) -> Option<Poly> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn monomial(&self, mono: Mono, coef: Coef) -> Poly {
        assert_eq!(mono.arity(), self.arity());
        if coef.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(mono, coef)] }
    }

    /// Build a polynomial from an arbitrary term list (merged and normalized).
    pub fn from_terms(&self, terms: Vec<(Mono, Coef)>) -> Poly {
        let mut p = self.zero();
        for (m, c) in terms {
            p = p.add(&self.monomial(m, c));
        }
        p
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.vars.join(","))
    }
}

/// Exponent vector; one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(Box<[u16]>);

impl Mono {
    pub fn new(exps: Vec<u16>) -> Mono {
        Mono(exps.into_boxed_slice())
    }

    pub fn one(arity: usize) -> Mono {
        Mono(vec![0u16; arity].into_boxed_slice())
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert_eq!(self.arity(), other.arity());
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Mono) -> Mono {
        debug_assert!(self.divides(other));
        Mono(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(e, w)| (*e as i64) * w).sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Support: indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Admissible monomial orders.
///
/// `Elim` is a block order that makes every monomial containing a variable of
/// the first block larger than any monomial without one; it backs elimination,
/// kernels and saturation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, reverse lexicographic tie-break.
    GrevLex,
    /// Weighted degree first, lexicographic tie-break.
    GrLex,
    /// Plain lexicographic.
    Lex,
    /// Eliminate the variables whose index appears in `first`; grevlex inside
    /// each block.
    Elim { first: Vec<usize> },
    /// Compare by `weights . exps` first, then by the tie-break order.
    Weight { weights: Vec<i64>, tie: Box<MonomialOrder> },
}

impl MonomialOrder {
    pub fn elim(first: impl IntoIterator<Item = usize>) -> MonomialOrder {
        let mut v: Vec<usize> = first.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        MonomialOrder::Elim { first: v }
    }

    /// Total order on monomials of the given ring.
    pub fn cmp(&self, ring: &PolyRing, a: &Mono, b: &Mono) -> Ordering {
        self.cmp_exps(ring.weights(), a.exps(), b.exps())
    }

    fn cmp_exps(&self, weights: &[i64], a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex_on(weights, a, b, None),
            MonomialOrder::GrLex => {
                let da: i64 = wdeg(weights, a, None);
                let db: i64 = wdeg(weights, b, None);
                da.cmp(&db).then_with(|| lex(a, b, None))
            }
            MonomialOrder::Lex => lex(a, b, None),
            MonomialOrder::Elim { first } => {
                let mask = block_mask(a.len(), first);
                grevlex_on(weights, a, b, Some((&mask, true)))
                    .then_with(|| grevlex_on(weights, a, b, Some((&mask, false))))
            }
            MonomialOrder::Weight { weights: w, tie } => {
                let da: i64 = a.iter().zip(w).map(|(e, w)| (*e as i64) * w).sum();
                let db: i64 = b.iter().zip(w).map(|(e, w)| (*e as i64) * w).sum();
                da.cmp(&db).then_with(|| tie.cmp_exps(weights, a, b))
            }
        }
    }
}

fn block_mask(arity: usize, first: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; arity];
    for &i in first {
        mask[i] = true;
    }
    mask
}

fn wdeg(weights: &[i64], a: &[u16], mask: Option<(&[bool], bool)>) -> i64 {
    let mut d = 0i64;
    for i in 0..a.len() {
        if let Some((m, sel)) = mask {
            if m[i] != sel {
                continue;
            }
        }
        d += (a[i] as i64) * weights[i];
    }
    d
}

fn lex(a: &[u16], b: &[u16], mask: Option<(&[bool], bool)>) -> Ordering {
    for i in 0..a.len() {
        if let Some((m, sel)) = mask {
            if m[i] != sel {
                continue;
            }
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Graded reverse lex on the selected variables (all, if no mask).
fn grevlex_on(weights: &[i64], a: &[u16], b: &[u16], mask: Option<(&[bool], bool)>) -> Ordering {
    let da = wdeg(weights, a, mask);
    let db = wdeg(weights, b, mask);
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if let Some((m, sel)) = mask {
            if m[i] != sel {
                continue;
            }
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            // last differing exponent smaller => larger monomial
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// A polynomial in canonical form: term list sorted descending by plain lex
/// on exponent vectors, no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: PolyRing,
    terms: Vec<(Mono, Coef)>,
}

impl Poly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Mono, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of an exact monomial (zero if absent).
    pub fn coef_of(&self, m: &Mono) -> Coef {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Coef::zero(),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).expect("ring mismatch")
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match other.terms[j].0.cmp(&self.terms[i].0) {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Coef) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).expect("ring mismatch")
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = std::collections::BTreeMap::<Mono, Coef>::new();
        for (m, c) in &small.terms {
            for (t, k) in &large.terms {
                let key = m.mul(t);
                let v = c * k;
                match acc.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += v;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Mono, Coef)> = acc.into_iter().collect();
        terms.reverse();
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division by a monomial term; errors when some term is not divisible.
    pub fn div_exact_mono(&self, m: &Mono, c: &Coef) -> Result<Poly> {
        assert!(!c.is_zero());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, k) in &self.terms {
            if !m.divides(t) {
                return Err(Error::Invalid(format!(
                    "term {} not divisible by requested monomial",
                    self.ring.monomial(t.clone(), k.clone())
                )));
            }
            terms.push((m.div_into(t), k / c));
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        assert!(i < self.ring.arity());
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            out.push((Mono::new(exps), c * coef_int(e as i64)));
        }
        // exponent vectors stay sorted when one coordinate drops uniformly?
        // not in general: re-normalize through from_terms.
        self.ring.from_terms(out)
    }

    /// Weighted degree when homogeneous.
    pub fn weighted_degree(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let w = self.ring.weights();
        let mut degs: Vec<i64> = self.terms.iter().map(|(m, _)| m.weighted_degree(w)).collect();
        degs.sort_unstable();
        degs.dedup();
        if degs.len() == 1 {
            Ok(degs[0])
        } else {
            Err(Error::NotHomogeneous(degs))
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weighted_degree().is_ok()
    }

    /// Largest weighted degree among terms (0 for the zero polynomial).
    pub fn max_degree(&self) -> i64 {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max().unwrap_or(0)
    }

    /// Leading term under the given order.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Mono, &Coef)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp(&self.ring, a, b))
            .map(|(m, c)| (m, c))
    }

    /// Map this polynomial into `target`, sending variable `i` of the source
    /// to variable `var_map[i]` of the target.
    pub fn map_vars(&self, target: &PolyRing, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.ring.arity());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; target.arity()];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                (Mono::new(exps), c.clone())
            })
            .collect();
        // injective variable maps preserve distinctness of monomials
        target.from_terms(terms)
    }

    /// Inclusion into a ring that contains all our variables by name.
    pub fn lift_to(&self, target: &PolyRing) -> Result<Poly> {
        let map = self.ring.injection_into(target)?;
        Ok(self.map_vars(target, &map))
    }

    /// Restrict to a subring; errors if a variable outside it occurs.
    pub fn restrict_to(&self, target: &PolyRing) -> Result<Poly> {
        let mut map = Vec::with_capacity(self.ring.arity());
        let mut missing = Vec::new();
        for (i, v) in self.ring.var_names().iter().enumerate() {
            match target.var_index(v) {
                Some(j) => map.push(j),
                None => {
                    map.push(usize::MAX);
                    missing.push(i);
                }
            }
        }
        for (m, _) in &self.terms {
            for &i in &missing {
                if m.exps()[i] > 0 {
                    return Err(Error::RingMismatch(format!(
                        "variable {} occurs but is absent from target ring",
                        self.ring.var_names()[i]
                    )));
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; target.arity()];
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        exps[map[i]] = e;
                    }
                }
                (Mono::new(exps), c.clone())
            })
            .collect();
        Ok(target.from_terms(terms))
    }

    /// Substitute every variable by the image polynomial (all in `target`).
    pub fn substitute(&self, target: &PolyRing, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.arity());
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Set the listed variables to zero.
    pub fn set_vars_zero(&self, vars: &[usize]) -> Poly {
        let mut kill = vec![false; self.ring.arity()];
        for &v in vars {
            kill[v] = true;
        }
        let terms: Vec<(Mono, Coef)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps().iter().enumerate().all(|(i, &e)| !kill[i] || e == 0))
            .cloned()
            .collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Exact division by an arbitrary divisor; `None` when the division
    /// leaves a remainder. Used by fraction-free elimination, where
    /// divisibility is guaranteed.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let ord = MonomialOrder::GrevLex;
        let (dm, dc) = divisor.leading(&ord).unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quo = self.ring.zero();
        while let Some((lm, lc)) = rem.leading(&ord) {
            if !dm.divides(lm) {
                return None;
            }
            let m = dm.div_into(lm);
            let c = lc / &dc;
            let t = self.ring.monomial(m.clone(), c.clone());
            quo = quo.add(&t);
            rem = rem.sub(&divisor.mul_mono(&m, &c));
        }
        Some(quo)
    }

    /// Divide by the leading coefficient under the given order.
    pub fn monic(&self, ord: &MonomialOrder) -> Poly {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, c)) => {
                let c = c.clone();
                self.scale(&c.recip())
            }
        }
    }
}

fn fmt_coef_mono(f: &mut fmt::Formatter<'_>, ring: &PolyRing, m: &Mono, c: &Coef) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let abs = c.abs();
    if !abs.is_one() || m.is_one() {
        parts.push(abs.to_string());
    }
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 1 {
            parts.push(ring.var_names()[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", ring.var_names()[i], e));
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_coef_mono(f, &self.ring, m, c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> PolyRing {
        PolyRing::new(&["x", "y", "z"])
    }

    #[test]
    fn canonical_arithmetic() {
        let r = xyz();
        let x = r.var(0);
        let y = r.var(1);
        // (x+y)*(x-y) = x^2 - y^2
        let p = x.add(&y).mul(&x.sub(&y));
        let expected = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expected);
        // p + (-p) = 0
        assert!(p.add(&p.neg()).is_zero());
        // identity
        let q = x.mul(&r.var(2)).sub(&y.mul(&y));
        assert_eq!(q.mul(&r.one()), q);
    }

    #[test]
    fn weighted_degrees() {
        let r = xyz();
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let p = x.pow(2).add(&y.mul(&z));
        assert_eq!(p.weighted_degree().unwrap(), 2);
        let q = x.add(&x.pow(2));
        match q.weighted_degree() {
            Err(Error::NotHomogeneous(degs)) => assert_eq!(degs, vec![1, 2]),
            other => panic!("expected NotHomogeneous, got {other:?}"),
        }
        assert!(matches!(r.zero().weighted_degree(), Err(Error::ZeroInput)));
        // weight bookkeeping: a single variable of weight 2
        let rw = PolyRing::with_weights(&[("t", 1), ("u", 2)]);
        assert_eq!(rw.var(1).weighted_degree().unwrap(), 2);
    }

    #[test]
    fn grevlex_degree_dominates() {
        let r = xyz();
        let ord = MonomialOrder::GrevLex;
        let m = |a: [u16; 3]| Mono::new(a.to_vec());
        assert_eq!(ord.cmp(&r, &m([2, 0, 0]), &m([1, 0, 0])), Ordering::Greater);
        // same degree: x*z vs y^2 under grevlex: last difference decides
        assert_eq!(ord.cmp(&r, &m([1, 0, 1]), &m([0, 2, 0])), Ordering::Less);
        // x*y > z^2
        assert_eq!(ord.cmp(&r, &m([1, 1, 0]), &m([0, 0, 2])), Ordering::Greater);
    }

    #[test]
    fn elim_order_blocks() {
        let r = xyz();
        // eliminate x (index 0): any monomial with x beats any without
        let ord = MonomialOrder::elim([0usize]);
        let m = |a: [u16; 3]| Mono::new(a.to_vec());
        assert_eq!(ord.cmp(&r, &m([1, 0, 0]), &m([0, 5, 5])), Ordering::Greater);
        assert_eq!(ord.cmp(&r, &m([0, 1, 0]), &m([0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn derivative_and_substitution() {
        let r = xyz();
        let x = r.var(0);
        let y = r.var(1);
        let p = x.pow(3).mul(&y).add(&y.pow(2)); // x^3 y + y^2
        let dpdx = p.derivative(0);
        assert_eq!(dpdx, x.pow(2).mul(&y).scale(&coef_int(3)));
        // substitute x -> y, y -> 1, z -> 0
        let images = vec![y.clone(), r.one(), r.zero()];
        let s = p.substitute(&r, &images);
        assert_eq!(s, y.pow(3).add(&r.one()));
    }

    #[test]
    fn display_round_shape() {
        let r = xyz();
        let x = r.var(0);
        let y = r.var(1);
        let z = r.var(2);
        let p = x.mul(&y).sub(&z.pow(2));
        let s = format!("{p}");
        assert_eq!(s, "x*y - z^2");
        assert_eq!(format!("{}", r.zero()), "0");
        assert_eq!(format!("{}", r.constant(coef_ratio(-3, 2))), "-3/2");
    }
}
