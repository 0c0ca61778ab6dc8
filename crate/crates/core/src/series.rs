//! Truncated multivariate exponential generating series with exact
//! coefficients.
//!
//! A series lives in `t_1 .. t_N` up to a fixed total degree; coefficients are
//! [`PolyRat`] values over the coefficient-ring variables `q, y, u, v, x`.
//! All arithmetic is exact and closed at the truncation order.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::polyrat::{PolyRat, Var};

pub fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

/// `n_1! n_2! ... n_N!` for an exponent vector.
pub fn expo_factorial(expo: &[u32]) -> BigInt {
    expo.iter().map(|&e| factorial(e as u64)).product()
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExpSeries {
    nvars: usize,
    trunc: u32,
    coeffs: BTreeMap<Vec<u32>, PolyRat>,
}

impl ExpSeries {
    pub fn zero(nvars: usize, trunc: u32) -> Self {
        ExpSeries {
            nvars,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, trunc: u32) -> Self {
        ExpSeries::constant(nvars, trunc, PolyRat::one())
    }

    pub fn constant(nvars: usize, trunc: u32, value: PolyRat) -> Self {
        let mut s = ExpSeries::zero(nvars, trunc);
        s.add_term(vec![0; nvars], value);
        s
    }

    /// The variable `t_i` (0-based).
    pub fn tvar(nvars: usize, trunc: u32, i: usize) -> Self {
        let mut expo = vec![0; nvars];
        expo[i] = 1;
        ExpSeries::monomial(nvars, trunc, expo, PolyRat::one())
    }

    pub fn monomial(nvars: usize, trunc: u32, expo: Vec<u32>, value: PolyRat) -> Self {
        let mut s = ExpSeries::zero(nvars, trunc);
        s.add_term(expo, value);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn total(expo: &[u32]) -> u32 {
        expo.iter().sum()
    }

    /// Adds a term, dropping it beyond the truncation and stripping zeros.
    pub fn add_term(&mut self, expo: Vec<u32>, value: PolyRat) {
        debug_assert_eq!(expo.len(), self.nvars);
        if value.is_zero() || Self::total(&expo) > self.trunc {
            return;
        }
        match self.coeffs.get_mut(&expo) {
            Some(entry) => {
                let sum = &*entry + &value;
                if sum.is_zero() {
                    self.coeffs.remove(&expo);
                } else {
                    *entry = sum;
                }
            }
            None => {
                self.coeffs.insert(expo, value);
            }
        }
    }

    pub fn coeff(&self, expo: &[u32]) -> PolyRat {
        self.coeffs.get(expo).cloned().unwrap_or_else(PolyRat::zero)
    }

    /// `n! * [t^n]`, the exponential-coefficient at an exponent vector.
    pub fn egf_coeff(&self, expo: &[u32]) -> PolyRat {
        self.coeff(expo)
            .scale(&BigRational::from_integer(expo_factorial(expo)))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &PolyRat)> {
        self.coeffs.iter()
    }

    /// Smallest total degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|e| Self::total(e)).min()
    }

    pub fn map_coeffs<F: Fn(&Vec<u32>, &PolyRat) -> PolyRat>(&self, f: F) -> ExpSeries {
        let mut out = ExpSeries::zero(self.nvars, self.trunc);
        for (expo, value) in &self.coeffs {
            out.add_term(expo.clone(), f(expo, value));
        }
        out
    }

    /// Substitutes `t_i -> -t_i` for every variable.
    pub fn neg_t(&self) -> ExpSeries {
        self.map_coeffs(|expo, value| {
            if Self::total(expo) % 2 == 1 {
                -value
            } else {
                value.clone()
            }
        })
    }

    pub fn add(&self, rhs: &ExpSeries) -> ExpSeries {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (expo, value) in &rhs.coeffs {
            out.add_term(expo.clone(), value.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &ExpSeries) -> ExpSeries {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (expo, value) in &rhs.coeffs {
            out.add_term(expo.clone(), -value);
        }
        out
    }

    pub fn neg(&self) -> ExpSeries {
        self.map_coeffs(|_, value| -value)
    }

    pub fn mul(&self, rhs: &ExpSeries) -> ExpSeries {
        self.check_shape(rhs);
        let mut out = ExpSeries::zero(self.nvars, self.trunc);
        for (ea, va) in &self.coeffs {
            let da = Self::total(ea);
            for (eb, vb) in &rhs.coeffs {
                if da + Self::total(eb) > self.trunc {
                    continue;
                }
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, va * vb);
            }
        }
        out
    }

    pub fn scale(&self, c: &PolyRat) -> ExpSeries {
        self.map_coeffs(|_, value| value * c)
    }

    pub fn scale_rat(&self, c: &BigRational) -> ExpSeries {
        self.map_coeffs(|_, value| value.scale(c))
    }

    fn check_shape(&self, rhs: &ExpSeries) {
        assert_eq!(self.nvars, rhs.nvars, "series variable count mismatch");
        assert_eq!(self.trunc, rhs.trunc, "series truncation mismatch");
    }

    pub fn pow_u32(&self, e: u32) -> ExpSeries {
        let mut out = ExpSeries::one(self.nvars, self.trunc);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn invert(&self) -> Result<ExpSeries> {
        let c0 = self
            .coeff(&vec![0; self.nvars])
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::PreconditionViolated(
                    "series constant term must be an invertible rational".into(),
                )
            })?;
        let inv0 = BigRational::one() / c0;
        // 1/A = (1/c0) * sum (-1)^k C^k with C = A/c0 - 1 of positive valuation
        let scaled = self.scale_rat(&inv0);
        let c = scaled.sub(&ExpSeries::one(self.nvars, self.trunc));
        let mut out = ExpSeries::one(self.nvars, self.trunc);
        let mut pow = ExpSeries::one(self.nvars, self.trunc);
        for k in 1..=self.trunc {
            pow = pow.mul(&c);
            if pow.is_zero() {
                break;
            }
            out = if k % 2 == 1 {
                out.sub(&pow)
            } else {
                out.add(&pow)
            };
        }
        Ok(out.scale_rat(&inv0))
    }

    pub fn pow_int(&self, e: i64) -> Result<ExpSeries> {
        if e >= 0 {
            Ok(self.pow_u32(e as u32))
        } else {
            Ok(self.invert()?.pow_u32((-e) as u32))
        }
    }

    /// `exp` of a series with positive valuation.
    pub fn exp(&self) -> Result<ExpSeries> {
        if self.valuation() == Some(0) {
            return Err(Error::PreconditionViolated(
                "exp needs positive valuation".into(),
            ));
        }
        let mut out = ExpSeries::one(self.nvars, self.trunc);
        let mut pow = ExpSeries::one(self.nvars, self.trunc);
        let mut fact = BigRational::one();
        for k in 1..=self.trunc {
            pow = pow.mul(self);
            if pow.is_zero() {
                break;
            }
            fact *= BigRational::from_integer(BigInt::from(k));
            out = out.add(&pow.scale_rat(&(BigRational::one() / &fact)));
        }
        Ok(out)
    }

    /// `log` of a series with constant term one.
    pub fn ln(&self) -> Result<ExpSeries> {
        let c0 = self.coeff(&vec![0; self.nvars]);
        if c0.as_constant() != Some(BigRational::one()) {
            return Err(Error::PreconditionViolated(
                "log needs constant term one".into(),
            ));
        }
        let a = self.sub(&ExpSeries::one(self.nvars, self.trunc));
        let mut out = ExpSeries::zero(self.nvars, self.trunc);
        let mut pow = ExpSeries::one(self.nvars, self.trunc);
        for k in 1..=self.trunc {
            pow = pow.mul(&a);
            if pow.is_zero() {
                break;
            }
            let c = BigRational::new(
                BigInt::from(if k % 2 == 1 { 1 } else { -1 }),
                BigInt::from(k),
            );
            out = out.add(&pow.scale_rat(&c));
        }
        Ok(out)
    }

    /// Raises a series with constant term one to a formal coefficient-ring
    /// exponent, via `exp(e log self)`.
    pub fn pow_coeff(&self, e: &PolyRat) -> Result<ExpSeries> {
        self.ln()?.scale(e).exp()
    }

    /// Substitutes a positive-valuation series for the variable `t_i`.
    pub fn subst_tvar(&self, i: usize, value: &ExpSeries) -> Result<ExpSeries> {
        self.check_shape(value);
        if value.valuation() == Some(0) {
            return Err(Error::PreconditionViolated(
                "substitution needs positive valuation".into(),
            ));
        }
        let maxdeg = self.coeffs.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut pows = vec![ExpSeries::one(self.nvars, self.trunc)];
        for _ in 1..=maxdeg {
            pows.push(pows.last().unwrap().mul(value));
        }
        let mut out = ExpSeries::zero(self.nvars, self.trunc);
        for (expo, coeff) in &self.coeffs {
            let mut rest = expo.clone();
            let e = rest[i] as usize;
            rest[i] = 0;
            let term = ExpSeries::monomial(self.nvars, self.trunc, rest, coeff.clone());
            out = out.add(&term.mul(&pows[e]));
        }
        Ok(out)
    }

    /// Substitutes a series for a coefficient-ring variable (e.g. the width
    /// variable `x`).
    pub fn subst_coeff_var(&self, v: Var, value: &ExpSeries) -> ExpSeries {
        self.check_shape(value);
        let maxdeg = self
            .coeffs
            .values()
            .map(|p| p.degree_of(v))
            .max()
            .unwrap_or(0);
        let mut pows = vec![ExpSeries::one(self.nvars, self.trunc)];
        for _ in 1..=maxdeg {
            pows.push(pows.last().unwrap().mul(value));
        }
        let mut out = ExpSeries::zero(self.nvars, self.trunc);
        for (expo, coeff) in &self.coeffs {
            for (w, rest) in coeff.coeffs_of(v).into_iter().enumerate() {
                if rest.is_zero() {
                    continue;
                }
                let term = ExpSeries::monomial(self.nvars, self.trunc, expo.clone(), rest);
                out = out.add(&term.mul(&pows[w]));
            }
        }
        out
    }

    /// Substitutes a rational for a coefficient-ring variable.
    pub fn subst_coeff_var_rat(&self, v: Var, value: &BigRational) -> ExpSeries {
        self.map_coeffs(|_, coeff| coeff.subst_var_rat(v, value))
    }
}

impl fmt::Display for ExpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (expo, coeff) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({coeff})")?;
            for (i, &e) in expo.iter().enumerate() {
                if e > 0 {
                    write!(f, " t{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rat_int;

    fn t(nvars: usize, trunc: u32, i: usize) -> ExpSeries {
        ExpSeries::tvar(nvars, trunc, i)
    }

    #[test]
    fn exp_ln_round_trip() {
        let s = t(2, 6, 0).add(&t(2, 6, 1).scale_rat(&rat_int(3)));
        let e = s.exp().unwrap();
        assert_eq!(e.ln().unwrap(), s);
    }

    #[test]
    fn exp_of_t_is_factorial_series() {
        let e = t(1, 5, 0).exp().unwrap();
        for k in 0..=5u32 {
            assert_eq!(e.egf_coeff(&[k]), PolyRat::one());
        }
    }

    #[test]
    fn invert_geometric() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let one = ExpSeries::one(1, 4);
        let s = one.sub(&t(1, 4, 0));
        let inv = s.invert().unwrap();
        for k in 0..=4u32 {
            assert_eq!(inv.coeff(&[k]), PolyRat::one());
        }
        assert_eq!(inv.mul(&s), one);
    }

    #[test]
    fn formal_exponent() {
        // (1 - t)^{-q} has t-coefficient q, t^2-coefficient q(q+1)/2
        let s = ExpSeries::one(1, 3).sub(&t(1, 3, 0));
        let q = PolyRat::var(Var::Q);
        let p = s.pow_coeff(&-&q).unwrap();
        assert_eq!(p.coeff(&[1]), q);
        let expected = (&(&q * &q) + &q).scale(&crate::polyrat::rat(1, 2));
        assert_eq!(p.coeff(&[2]), expected);
    }

    #[test]
    fn tvar_substitution() {
        // exp(t)|_{t := 2u} where u is the series variable again
        let e = t(1, 4, 0).exp().unwrap();
        let sub = e.subst_tvar(0, &t(1, 4, 0).scale_rat(&rat_int(2))).unwrap();
        for k in 0..=4u32 {
            assert_eq!(
                sub.egf_coeff(&[k]),
                PolyRat::from_rat(rat_int(2).pow(k as i32))
            );
        }
    }

    #[test]
    fn coeff_var_substitution() {
        // coefficient x^2 replaced by (1 + t)^2
        let s = ExpSeries::constant(1, 3, PolyRat::var(Var::X).pow(2));
        let arg = ExpSeries::one(1, 3).add(&t(1, 3, 0));
        let out = s.subst_coeff_var(Var::X, &arg);
        assert_eq!(out.coeff(&[0]), PolyRat::one());
        assert_eq!(out.coeff(&[1]), PolyRat::from_int(2));
        assert_eq!(out.coeff(&[2]), PolyRat::one());
    }

    #[test]
    fn neg_t_parity() {
        let s = t(2, 3, 0).add(&t(2, 3, 1)).exp().unwrap();
        let n = s.neg_t();
        assert_eq!(n.coeff(&[1, 1]), s.coeff(&[1, 1]));
        assert_eq!(n.coeff(&[1, 0]), -&s.coeff(&[1, 0]));
    }
}
