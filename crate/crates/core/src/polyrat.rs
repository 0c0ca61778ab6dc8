//! Polynomials in the formal variables `q, y, u, v, x` with exact rational
//! coefficients. These serve as the coefficient ring of [`crate::ExpSeries`]:
//! series coefficients may carry a Potts parameter `q`, an energy variable `y`,
//! Eulerian variables `u, v`, or a width variable `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 5;

/// The fixed coefficient-ring variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Q,
    Y,
    U,
    V,
    X,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::Y, Var::U, Var::V, Var::X];

    pub fn idx(self) -> usize {
        match self {
            Var::Q => 0,
            Var::Y => 1,
            Var::U => 2,
            Var::V => 3,
            Var::X => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Y => "y",
            Var::U => "u",
            Var::V => "v",
            Var::X => "x",
        }
    }
}

/// Exponent vector of a monomial, indexed by [`Var::idx`].
pub type Mono = [u16; NVARS];

const MONO_ONE: Mono = [0; NVARS];

/// A multivariate polynomial with `BigRational` coefficients.
///
/// Zero coefficients are never stored, so structural equality is semantic
/// equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyRat {
    terms: BTreeMap<Mono, BigRational>,
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl PolyRat {
    pub fn zero() -> Self {
        PolyRat::default()
    }

    pub fn one() -> Self {
        PolyRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        PolyRat::from_rat(rat_int(n))
    }

    pub fn from_rat(r: BigRational) -> Self {
        let mut p = PolyRat::zero();
        p.insert_term(MONO_ONE, r);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut mono = MONO_ONE;
        mono[v.idx()] = 1;
        PolyRat::monomial(mono, BigRational::one())
    }

    pub fn monomial(mono: Mono, coeff: BigRational) -> Self {
        let mut p = PolyRat::zero();
        p.insert_term(mono, coeff);
        p
    }

    pub fn insert_term(&mut self, mono: Mono, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, mono: &Mono) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Returns the constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&MONO_ONE).cloned(),
            _ => None,
        }
    }

    pub fn uses_only(&self, vars: &[Var]) -> bool {
        let mut allowed = [false; NVARS];
        for v in vars {
            allowed[v.idx()] = true;
        }
        self.terms
            .keys()
            .all(|m| (0..NVARS).all(|i| m[i] == 0 || allowed[i]))
    }

    pub fn degree_of(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m[v.idx()]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return PolyRat::zero();
        }
        let mut out = PolyRat::zero();
        for (m, v) in &self.terms {
            out.insert_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = PolyRat::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes a polynomial for a variable.
    pub fn subst_var_poly(&self, v: Var, value: &PolyRat) -> PolyRat {
        let vi = v.idx();
        let mut out = PolyRat::zero();
        let mut value_pows: Vec<PolyRat> = vec![PolyRat::one()];
        for (mono, coeff) in &self.terms {
            let e = mono[vi] as usize;
            while value_pows.len() <= e {
                let next = &value_pows[value_pows.len() - 1] * value;
                value_pows.push(next);
            }
            let mut rest = *mono;
            rest[vi] = 0;
            let term = PolyRat::monomial(rest, coeff.clone());
            out = &out + &(&term * &value_pows[e]);
        }
        out
    }

    pub fn subst_var_rat(&self, v: Var, value: &BigRational) -> PolyRat {
        self.subst_var_poly(v, &PolyRat::from_rat(value.clone()))
    }

    /// Partial derivative with respect to a variable.
    pub fn partial(&self, v: Var) -> PolyRat {
        let vi = v.idx();
        let mut out = PolyRat::zero();
        for (mono, coeff) in &self.terms {
            if mono[vi] == 0 {
                continue;
            }
            let mut m = *mono;
            m[vi] -= 1;
            out.insert_term(m, coeff * rat_int(mono[vi] as i64));
        }
        out
    }

    /// Exact division by a single variable.
    pub fn div_exact_var(&self, v: Var) -> Result<PolyRat> {
        let vi = v.idx();
        let mut out = PolyRat::zero();
        for (mono, coeff) in &self.terms {
            if mono[vi] == 0 {
                return Err(Error::InexactDivision);
            }
            let mut m = *mono;
            m[vi] -= 1;
            out.insert_term(m, coeff.clone());
        }
        Ok(out)
    }

    /// Exact division by `u - v`, failing when a remainder is left.
    pub fn div_exact_u_minus_v(&self) -> Result<PolyRat> {
        let ui = Var::U.idx();
        let vi = Var::V.idx();
        let mut rem = self.clone();
        let mut quot = PolyRat::zero();
        // Each step trades one power of u for one of v, so the loop terminates.
        loop {
            let lead = rem
                .terms
                .iter()
                .filter(|(m, _)| m[ui] > 0)
                .max_by_key(|(m, _)| m[ui])
                .map(|(m, c)| (*m, c.clone()));
            match lead {
                None => {
                    if rem.is_zero() {
                        return Ok(quot);
                    }
                    return Err(Error::InexactDivision);
                }
                Some((mono, coeff)) => {
                    let mut qm = mono;
                    qm[ui] -= 1;
                    quot.insert_term(qm, coeff.clone());
                    // rem -= (u - v) * coeff * qm
                    rem.insert_term(mono, -coeff.clone());
                    let mut vm = qm;
                    vm[vi] += 1;
                    rem.insert_term(vm, coeff);
                }
            }
        }
    }

    /// Collects the polynomial as coefficients of powers of `v`; the entries
    /// themselves no longer contain `v`.
    pub fn coeffs_of(&self, v: Var) -> Vec<PolyRat> {
        let vi = v.idx();
        let deg = self.degree_of(v) as usize;
        let mut out = vec![PolyRat::zero(); deg + 1];
        for (mono, coeff) in &self.terms {
            let e = mono[vi] as usize;
            let mut m = *mono;
            m[vi] = 0;
            out[e].insert_term(m, coeff.clone());
        }
        out
    }
}

impl Add for &PolyRat {
    type Output = PolyRat;
    fn add(self, rhs: &PolyRat) -> PolyRat {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyRat {
    type Output = PolyRat;
    fn sub(self, rhs: &PolyRat) -> PolyRat {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &PolyRat {
    type Output = PolyRat;
    fn neg(self) -> PolyRat {
        let mut out = PolyRat::zero();
        for (m, c) in &self.terms {
            out.insert_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &PolyRat {
    type Output = PolyRat;
    fn mul(self, rhs: &PolyRat) -> PolyRat {
        let mut out = PolyRat::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = *ma;
                for i in 0..NVARS {
                    m[i] = m[i].checked_add(mb[i]).expect("monomial exponent overflow");
                }
                out.insert_term(m, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for PolyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !abs.is_one() || mono == &MONO_ONE {
                write!(f, "{abs}")?;
                printed = true;
            }
            for v in Var::ALL {
                let e = mono[v.idx()];
                if e > 0 {
                    if printed {
                        write!(f, " ")?;
                    }
                    if e == 1 {
                        write!(f, "{}", v.name())?;
                    } else {
                        write!(f, "{}^{}", v.name(), e)?;
                    }
                    printed = true;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PolyRat {
        PolyRat::var(Var::Q)
    }
    fn u() -> PolyRat {
        PolyRat::var(Var::U)
    }
    fn v() -> PolyRat {
        PolyRat::var(Var::V)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = &(&q() * &q()) - &PolyRat::from_int(3);
        assert_eq!(p.to_string(), "q^2 - 3");
        assert_eq!(p.degree_of(Var::Q), 2);
        assert!(p.uses_only(&[Var::Q]));
        assert!(!p.uses_only(&[Var::Y]));
    }

    #[test]
    fn substitution() {
        // (q + 1)^2 at q = 2 is 9
        let p = (&q() + &PolyRat::one()).pow(2);
        assert_eq!(p.subst_var_rat(Var::Q, &rat_int(2)), PolyRat::from_int(9));
    }

    #[test]
    fn derivative() {
        let p = &(&u() * &u()) * &v(); // u^2 v
        assert_eq!(p.partial(Var::U).to_string(), "2 u v");
        assert_eq!(p.partial(Var::V).to_string(), "u^2");
    }

    #[test]
    fn division_by_u_minus_v() {
        // (u^3 - v^3) / (u - v) = u^2 + uv + v^2
        let p = &u().pow(3) - &v().pow(3);
        let d = p.div_exact_u_minus_v().unwrap();
        assert_eq!(d.to_string(), "u^2 + u v + v^2");
        assert!((&u().pow(3) - &v().pow(2)).div_exact_u_minus_v().is_err());
    }
}
