//! Dense univariate polynomials over a shared [`FieldSpec`].
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty list. The degree of the zero polynomial is an
//! explicit [`Degree::MinusInfinity`] sentinel that compares below every
//! integer, so the solver degree bookkeeping can distinguish "counter hit -1"
//! from "remainder vanished".

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Fe, FieldSpec};

/// Degree of a polynomial: an integer, or minus infinity for the zero
/// polynomial. Ordering puts `MinusInfinity` below every finite value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Degree {
    MinusInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(v) => Some(v),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl Add<i64> for Degree {
    type Output = Degree;
    fn add(self, rhs: i64) -> Degree {
        match self {
            Degree::MinusInfinity => Degree::MinusInfinity,
            Degree::Finite(v) => Degree::Finite(v + rhs),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl From<i64> for Degree {
    fn from(v: i64) -> Degree {
        Degree::Finite(v)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient of the zero polynomial")]
    LeadingCoeffOfZero,
    #[error("reversal length {t} is below the degree {deg}")]
    DegreeTooLarge { t: usize, deg: i64 },
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("coefficient {0} out of range for the field")]
    CoeffOutOfRange(u32),
    #[error("bad polynomial text `{0}`: expected comma-separated integers")]
    Parse(String),
}

/// Dense polynomial over GF(p^m), normalized (no trailing zero coefficient).
#[derive(Clone)]
pub struct Poly {
    field: Arc<FieldSpec>,
    coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_text())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Poly {
    pub fn new(field: Arc<FieldSpec>, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Arc<FieldSpec>) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Arc<FieldSpec>) -> Poly {
        Poly {
            field,
            coeffs: vec![Fe::ONE],
        }
    }

    pub fn constant(field: Arc<FieldSpec>, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(field: Arc<FieldSpec>, c: Fe, d: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Poly { field, coeffs }
    }

    /// Builds from raw integers (lowest degree first), validating range.
    pub fn from_ints(field: Arc<FieldSpec>, ints: &[u32]) -> Result<Poly, PolyError> {
        let mut coeffs = Vec::with_capacity(ints.len());
        for &v in ints {
            coeffs.push(
                field
                    .element(v)
                    .map_err(|_| PolyError::CoeffOutOfRange(v))?,
            );
        }
        Ok(Poly::new(field, coeffs))
    }

    /// Parses the CLI text form: comma-separated integers, low degree first.
    pub fn parse(field: Arc<FieldSpec>, s: &str) -> Result<Poly, PolyError> {
        let ints: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let ints = ints.map_err(|_| PolyError::Parse(s.to_string()))?;
        if ints.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        Poly::from_ints(field, &ints)
    }

    /// Text form: comma-separated coefficients, low degree first; the zero
    /// polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n as i64 - 1),
        }
    }

    /// Leading coefficient; the zero polynomial has none.
    pub fn lc(&self) -> Result<Fe, PolyError> {
        self.coeffs
            .last()
            .copied()
            .ok_or(PolyError::LeadingCoeffOfZero)
    }

    /// Coefficient of `x^d`; zero outside the stored range (including d < 0).
    pub fn coeff(&self, d: i64) -> Fe {
        if d < 0 || d as usize >= self.coeffs.len() {
            Fe::ZERO
        } else {
            self.coeffs[d as usize]
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            *self.field == *other.field,
            "polynomial operands belong to different fields"
        );
    }

    pub fn scale(&self, c: Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// `x^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k + self.coeffs.len()];
        coeffs[k..].copy_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Quotient and remainder with `self = q * rhs + r` and `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.assert_same_field(rhs);
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.coeffs.len() < rhs.coeffs.len() {
            return Ok((Poly::zero(self.field.clone()), self.clone()));
        }
        let f = &self.field;
        let db = rhs.coeffs.len() - 1;
        let lb_inv = f.inv(*rhs.coeffs.last().unwrap()).expect("nonzero lc");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, lb_inv);
            quot[i - db] = qc;
            for (j, &bj) in rhs.coeffs.iter().enumerate() {
                let t = f.mul(qc, bj);
                rem[i - db + j] = f.sub(rem[i - db + j], t);
            }
        }
        Ok((
            Poly::new(self.field.clone(), quot),
            Poly::new(self.field.clone(), rem),
        ))
    }

    /// Horner evaluation at `x0`.
    pub fn eval(&self, x0: Fe) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x0), c);
        }
        acc
    }

    /// Formal derivative; the integer factor reduces in the prime subfield.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let p = f.p();
        let mut coeffs = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let scalar = Fe((i as u32) % p);
            coeffs.push(f.mul(c, scalar));
        }
        Poly::new(self.field.clone(), coeffs)
    }

    /// `x^t * self(1/x)`: coefficient i of the result is coefficient t-i of
    /// `self`. Requires `t >= deg(self)`.
    pub fn reverse(&self, t: usize) -> Result<Poly, PolyError> {
        if let Degree::Finite(d) = self.deg() {
            if (t as i64) < d {
                return Err(PolyError::DegreeTooLarge { t, deg: d });
            }
        }
        let mut coeffs = vec![Fe::ZERO; t + 1];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            *slot = self.coeff(t as i64 - i as i64);
        }
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    /// Scales to leading coefficient 1.
    pub fn make_monic(&self) -> Result<Poly, PolyError> {
        let lc = self.lc()?;
        if lc == Fe::ONE {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(lc).expect("nonzero lc")))
    }

    /// Monic greatest common divisor.
    pub fn monic_gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
        a.assert_same_field(b);
        if a.is_zero() && b.is_zero() {
            return Err(PolyError::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let (_, r) = r0.divmod(&r1)?;
            r0 = r1;
            r1 = r;
        }
        r0.make_monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, &c) in short.coeffs.iter().enumerate() {
            coeffs[i] = f.add(coeffs[i], c);
        }
        Poly::new(self.field.clone(), coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(f.sub(self.coeff(i as i64), rhs.coeff(i as i64)));
        }
        Poly::new(self.field.clone(), coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut coeffs = vec![Fe::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf7() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(7, 1, None, Some(3)).unwrap())
    }

    fn p7(ints: &[u32]) -> Poly {
        Poly::from_ints(gf7(), ints).unwrap()
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::MinusInfinity < Degree::Finite(-100));
        assert!(Degree::Finite(-1) < Degree::Finite(0));
        assert_eq!(Degree::MinusInfinity + 5, Degree::MinusInfinity);
        assert_eq!(Degree::Finite(2) + Degree::Finite(3), Degree::Finite(5));
    }

    #[test]
    fn arithmetic_examples() {
        // (x+4) * 1 = x+4
        let a = p7(&[4, 1]);
        assert_eq!(&a * &p7(&[1]), a);
        // (x-3)(x-2) = x^2 + 2x + 6 over GF(7)
        let prod = &p7(&[4, 1]) * &p7(&[5, 1]);
        assert_eq!(prod, p7(&[6, 2, 1]));
        // (x^2+3) + 6x^2 = 3: leading terms cancel
        assert_eq!(&p7(&[3, 0, 1]) + &p7(&[0, 0, 6]), p7(&[3]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p7(&[1, 1]).shift(2), p7(&[0, 0, 1, 1]));
        assert!(Poly::zero(gf7()).shift(5).is_zero());
        assert_eq!(p7(&[3]).shift(1), p7(&[0, 3]));
    }

    #[test]
    fn degree_and_coeff_examples() {
        assert_eq!(Poly::zero(gf7()).deg(), Degree::MinusInfinity);
        assert_eq!(
            Poly::zero(gf7()).lc().unwrap_err(),
            PolyError::LeadingCoeffOfZero
        );
        assert_eq!(p7(&[1, 0, 3]).lc().unwrap(), Fe(3));
        assert_eq!(p7(&[0, 0, 0, 0, 3, 1]).coeff(2), Fe(0));
        assert_eq!(p7(&[1, 2]).coeff(-1), Fe(0));
    }

    #[test]
    fn divmod_examples() {
        // (x^2-1) / (x-1) = (x+1, 0)
        let (q, r) = p7(&[6, 0, 1]).divmod(&p7(&[6, 1])).unwrap();
        assert_eq!(q, p7(&[1, 1]));
        assert!(r.is_zero());
        // deg a < deg b
        let (q, r) = p7(&[6, 1]).divmod(&p7(&[6, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p7(&[6, 1]));
        // the worked pair from the solver setup
        let a = p7(&[6, 0, 0, 0, 0, 0, 1]); // x^6 + 6
        let b = p7(&[0, 0, 6, 2, 3, 1]); // x^5+3x^4+2x^3+6x^2
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.deg(), Degree::Finite(1));
        assert!(r.deg() <= Degree::Finite(4));
        assert_eq!(&(&q * &b) + &r, a);
        assert!(p7(&[1]).divmod(&Poly::zero(gf7())).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p7(&[4, 1]).eval(Fe(3)), Fe(0));
        assert_eq!(Poly::zero(gf7()).eval(Fe(5)), Fe(0));
        // 1+3+2+6 = 12 = 5 mod 7
        assert_eq!(p7(&[0, 0, 6, 2, 3, 1]).eval(Fe(1)), Fe(5));
    }

    #[test]
    fn derivative_examples() {
        // d/dx (x^3 + 2x + 1) = 3x^2 + 2
        assert_eq!(p7(&[1, 2, 0, 1]).derivative(), p7(&[2, 0, 3]));
        // d/dx x^7 = 0 in characteristic 7
        assert!(p7(&[0, 0, 0, 0, 0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(p7(&[4, 1]).derivative(), p7(&[1]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p7(&[1, 4]).reverse(1).unwrap(), p7(&[4, 1]));
        assert_eq!(p7(&[5]).reverse(0).unwrap(), p7(&[5]));
        // involution when the constant term is nonzero
        let a = p7(&[5, 3, 1]);
        let rev = a.reverse(2).unwrap();
        assert_eq!(rev, p7(&[1, 3, 5]));
        assert_eq!(rev.reverse(2).unwrap(), a);
        assert_eq!(
            p7(&[0, 0, 1]).reverse(1).unwrap_err(),
            PolyError::DegreeTooLarge { t: 1, deg: 2 }
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            Poly::monic_gcd(&p7(&[6, 0, 1]), &p7(&[6, 1])).unwrap(),
            p7(&[6, 1])
        );
        // gcd with zero normalizes to monic
        assert_eq!(
            Poly::monic_gcd(&p7(&[2, 4]), &Poly::zero(gf7())).unwrap(),
            p7(&[4, 1])
        );
        // 3^6 = 1 so x-3 divides x^6-1
        assert_eq!(
            Poly::monic_gcd(&p7(&[6, 0, 0, 0, 0, 0, 1]), &p7(&[4, 1])).unwrap(),
            p7(&[4, 1])
        );
        assert_eq!(
            Poly::monic_gcd(&Poly::zero(gf7()), &Poly::zero(gf7())).unwrap_err(),
            PolyError::BothZero
        );
    }

    #[test]
    fn text_round_trip() {
        let a = p7(&[6, 0, 0, 2]);
        assert_eq!(a.to_text(), "6,0,0,2");
        assert_eq!(Poly::parse(gf7(), "6,0,0,2").unwrap(), a);
        assert_eq!(Poly::parse(gf7(), "0").unwrap(), Poly::zero(gf7()));
        assert!(Poly::parse(gf7(), "9").is_err());
        assert!(Poly::parse(gf7(), "x").is_err());
    }

    fn arb_p7() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(0u32..7, 0..10).prop_map(|v| Poly::from_ints(gf7(), &v).unwrap())
    }

    proptest! {
        #[test]
        fn divmod_remultiplies(a in arb_p7(), b in arb_p7()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert!(r.deg() < b.deg());
            prop_assert_eq!(&(&q * &b) + &r, a);
        }

        #[test]
        fn reverse_degree_bound(a in arb_p7(), extra in 0usize..4) {
            prop_assume!(!a.is_zero());
            let d = a.deg().finite().unwrap() as usize;
            let t = d + extra;
            let rev = a.reverse(t).unwrap();
            prop_assert!(rev.deg() <= Degree::Finite(t as i64));
            let full = rev.deg() == Degree::Finite(t as i64);
            prop_assert_eq!(full, !a.coeff(0).is_zero());
        }

        #[test]
        fn derivative_is_linear_and_leibniz(a in arb_p7(), b in arb_p7()) {
            let sum = (&a + &b).derivative();
            prop_assert_eq!(&sum, &(&a.derivative() + &b.derivative()));
            let prod = (&a * &b).derivative();
            let leibniz = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(prod, leibniz);
        }
    }
}
