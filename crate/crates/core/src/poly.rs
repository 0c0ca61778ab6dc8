//! Bivariate polynomials with exact integer coefficients, used for coboundary
//! polynomials `P(q, y)`, characteristic polynomials `chi(q)` and Tutte
//! polynomials `T(x, y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::polyrat::{PolyRat, Var};

/// A polynomial in two formal variables with `BigInt` coefficients.
///
/// Exponent pairs are `(a, b)` for the first and second variable; zero
/// coefficients are never stored. The variable names only matter for display
/// and serialization (`q, y` for coboundary polynomials, `x, y` for Tutte).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        BivarPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = BivarPoly::zero();
        p.insert_term((0, 0), c);
        p
    }

    pub fn monomial(a: u32, b: u32, c: BigInt) -> Self {
        let mut p = BivarPoly::zero();
        p.insert_term((a, b), c);
        p
    }

    /// `q` (the first variable).
    pub fn var_a() -> Self {
        BivarPoly::monomial(1, 0, BigInt::one())
    }

    /// `y` (the second variable).
    pub fn var_b() -> Self {
        BivarPoly::monomial(0, 1, BigInt::one())
    }

    pub fn insert_term(&mut self, expo: (u32, u32), coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&expo);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn deg_a(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_b(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = BivarPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = BivarPoly::zero();
        for (e, v) in &self.terms {
            out.insert_term(*e, v * c);
        }
        out
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(ea, eb), c) in &self.terms {
            acc += c * a.pow(ea) * b.pow(eb);
        }
        acc
    }

    pub fn eval_rational(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(ea, eb), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * a.pow(ea as i32) * b.pow(eb as i32);
        }
        acc
    }

    /// Conversion from a coefficient-ring polynomial; fails when the input
    /// uses other variables or non-integer coefficients.
    pub fn from_polyrat(p: &PolyRat, a: Var, b: Var) -> Result<Self> {
        if !p.uses_only(&[a, b]) {
            return Err(Error::Parse("polynomial uses unexpected variables".into()));
        }
        let mut out = BivarPoly::zero();
        for (mono, coeff) in p.terms() {
            if !coeff.denom().is_one() {
                return Err(Error::InexactDivision);
            }
            out.insert_term(
                (mono[a.idx()] as u32, mono[b.idx()] as u32),
                coeff.numer().clone(),
            );
        }
        Ok(out)
    }

    pub fn to_polyrat(&self, a: Var, b: Var) -> PolyRat {
        let mut out = PolyRat::zero();
        for (&(ea, eb), c) in &self.terms {
            let mut mono = [0u16; crate::polyrat::NVARS];
            mono[a.idx()] = ea as u16;
            mono[b.idx()] = eb as u16;
            out.insert_term(mono, BigRational::from_integer(c.clone()));
        }
        out
    }

    /// Exact division by the first variable raised to `e`.
    pub fn div_exact_a_pow(&self, e: u32) -> Result<Self> {
        let mut out = BivarPoly::zero();
        for (&(ea, eb), c) in &self.terms {
            if ea < e {
                return Err(Error::InexactDivision);
            }
            out.insert_term((ea - e, eb), c.clone());
        }
        Ok(out)
    }

    /// Exact division by `(b - 1)` where `b` is the second variable.
    pub fn div_exact_b_minus_one(&self) -> Result<Self> {
        // Synthetic division in the second variable; exact iff p(a, 1) = 0.
        let mut rows: BTreeMap<u32, BTreeMap<u32, BigInt>> = BTreeMap::new();
        for (&(ea, eb), c) in &self.terms {
            rows.entry(ea).or_default().insert(eb, c.clone());
        }
        let mut out = BivarPoly::zero();
        for (ea, row) in rows {
            let deg = *row.keys().max().unwrap();
            let mut carry = BigInt::zero();
            // p = (y-1) q + r with q_k = sum_{j>k} p_j
            for eb in (0..=deg).rev() {
                carry += row.get(&eb).cloned().unwrap_or_else(BigInt::zero);
                if eb == 0 {
                    if !carry.is_zero() {
                        return Err(Error::InexactDivision);
                    }
                } else {
                    out.insert_term((ea, eb - 1), carry.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, name_a: &str, name_b: &str) -> Value {
        let mut map = Map::new();
        for (&(ea, eb), c) in self.terms.iter().rev() {
            map.insert(
                format!("{name_a}^{ea} {name_b}^{eb}"),
                Value::String(c.to_string()),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value, name_a: &str, name_b: &str) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an object".into()))?;
        let mut out = BivarPoly::zero();
        for (key, val) in obj {
            let coeff: BigInt = val
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {val}")))?;
            let mut ea = 0u32;
            let mut eb = 0u32;
            for part in key.split_whitespace() {
                let (name, exp) = part
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad monomial {key}")))?;
                let exp: u32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {key}")))?;
                if name == name_a {
                    ea = exp;
                } else if name == name_b {
                    eb = exp;
                } else {
                    return Err(Error::Parse(format!("unknown variable {name}")));
                }
            }
            out.insert_term((ea, eb), coeff);
        }
        Ok(out)
    }

    pub fn display_with(&self, name_a: &str, name_b: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut first = true;
        for (&(ea, eb), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    s.push('-');
                }
                first = false;
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut printed = false;
            if !abs.is_one() || (ea == 0 && eb == 0) {
                s.push_str(&abs.to_string());
                printed = true;
            }
            for (name, e) in [(name_a, ea), (name_b, eb)] {
                if e > 0 {
                    if printed {
                        s.push(' ');
                    }
                    s.push_str(name);
                    if e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                    printed = true;
                }
            }
        }
        s
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        &BivarPoly::zero() - self
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.insert_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("q", "y"))
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Zaslavsky's evaluations: the number of regions is `(-1)^dim chi(-1)` and the
/// number of relatively bounded regions is `(-1)^rank chi(1)`.
pub fn zaslavsky(chi: &BivarPoly, dimension: usize, rank: usize) -> Result<(BigInt, BigInt)> {
    if chi.deg_b() != 0 {
        return Err(Error::PreconditionViolated(
            "characteristic polynomial must not involve y".into(),
        ));
    }
    let minus_one = BigInt::from(-1);
    let one = BigInt::one();
    let regions = chi.eval(&minus_one, &one) * BigInt::from(-1i64).pow(dimension as u32);
    let bounded = chi.eval(&one, &one) * BigInt::from(-1i64).pow(rank as u32);
    Ok((regions, bounded))
}

/// Converts a coboundary polynomial to the Tutte polynomial
/// `T(x, y) = (y-1)^{-rank} P((x-1)(y-1), y)`, after removing the exact factor
/// `q^{dim-rank}` carried by non-essential arrangements.
pub fn tutte_from_coboundary(p: &BivarPoly, rank: usize) -> Result<BivarPoly> {
    if p.is_zero() {
        return Err(Error::PreconditionViolated(
            "zero coboundary polynomial".into(),
        ));
    }
    let dim = p.deg_a() as usize;
    if dim < rank {
        return Err(Error::PreconditionViolated("rank exceeds dimension".into()));
    }
    let reduced = p.div_exact_a_pow((dim - rank) as u32)?;
    // substitute q := (x-1)(y-1)
    let x = BivarPoly::var_a();
    let y = BivarPoly::var_b();
    let one = BivarPoly::one();
    let xm1 = &x - &one;
    let ym1 = &y - &one;
    let sub = &xm1 * &ym1;
    let mut sub_pows = vec![BivarPoly::one()];
    let mut acc = BivarPoly::zero();
    for (&(ea, eb), c) in reduced.terms() {
        while sub_pows.len() <= ea as usize {
            let next = &sub_pows[sub_pows.len() - 1] * &sub;
            sub_pows.push(next);
        }
        let term = &sub_pows[ea as usize] * &BivarPoly::monomial(0, eb, c.clone());
        acc = &acc + &term;
    }
    let mut out = acc;
    for _ in 0..rank {
        out = out.div_exact_b_minus_one()?;
    }
    Ok(out)
}

/// The inverse of [`tutte_from_coboundary`]:
/// `P(q, y) = q^{dim-rank} sum_{a,b} t_{a,b} (q+y-1)^a (y-1)^{rank-a} y^b`.
pub fn coboundary_from_tutte(t: &BivarPoly, rank: usize, dim: usize) -> Result<BivarPoly> {
    if (t.deg_a() as usize) > rank || dim < rank {
        return Err(Error::PreconditionViolated(
            "rank too small for this Tutte polynomial".into(),
        ));
    }
    let q = BivarPoly::var_a();
    let y = BivarPoly::var_b();
    let one = BivarPoly::one();
    let qym1 = &(&q + &y) - &one;
    let ym1 = &y - &one;
    let mut acc = BivarPoly::zero();
    for (&(ea, eb), c) in t.terms() {
        let term =
            &(&qym1.pow(ea) * &ym1.pow(rank as u32 - ea)) * &BivarPoly::monomial(0, eb, c.clone());
        acc = &acc + &term;
    }
    Ok(&acc * &BivarPoly::monomial((dim - rank) as u32, 0, BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zaslavsky_braid_three() {
        // chi(q) = q(q-1)(q-2) in dimension 3, rank 2
        let q = BivarPoly::var_a();
        let one = BivarPoly::one();
        let chi = &(&q * &(&q - &one)) * &(&q - &BivarPoly::constant(BigInt::from(2)));
        let (regions, bounded) = zaslavsky(&chi, 3, 2).unwrap();
        assert_eq!(regions, BigInt::from(6));
        assert_eq!(bounded, BigInt::from(0));
    }

    #[test]
    fn zaslavsky_empty_arrangement() {
        for n in 1..5u32 {
            let chi = BivarPoly::monomial(n, 0, BigInt::one());
            let (regions, bounded) = zaslavsky(&chi, n as usize, 0).unwrap();
            assert_eq!(regions, BigInt::one());
            assert_eq!(bounded, BigInt::one());
        }
    }

    #[test]
    fn tutte_single_hyperplane_in_plane() {
        // P = q^2 + (y-1) q, rank 1: the Tutte polynomial of a coloop.
        let q = BivarPoly::var_a();
        let y = BivarPoly::var_b();
        let one = BivarPoly::one();
        let p = &(&q * &q) + &(&(&y - &one) * &q);
        let t = tutte_from_coboundary(&p, 1).unwrap();
        assert_eq!(t.display_with("x", "y"), "x");
        let back = coboundary_from_tutte(&t, 1, 2).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn tutte_empty_arrangement() {
        let p = BivarPoly::monomial(3, 0, BigInt::one());
        let t = tutte_from_coboundary(&p, 0).unwrap();
        assert_eq!(t.eval(&BigInt::from(2), &BigInt::from(2)), BigInt::one());
    }

    #[test]
    fn json_round_trip() {
        let q = BivarPoly::var_a();
        let y = BivarPoly::var_b();
        let p = &(&q * &q) + &(&(&y - &BivarPoly::one()) * &q);
        let js = p.to_json("q", "y");
        assert_eq!(BivarPoly::from_json(&js, "q", "y").unwrap(), p);
    }
}
