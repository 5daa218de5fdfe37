//! Arithmetic in GF(p^m) with a designated primitive element.
//!
//! Elements are packed into a single integer whose base-p digits are the
//! coefficients of the element's polynomial representation (for p = 2 this is
//! the conventional bit-packed form). Multiplication, inversion and powering
//! go through exp/log tables built at construction time; the table-free
//! polynomial-mod-modulus multiply only runs while the tables are built.

use std::fmt;
use thiserror::Error;

/// Largest supported field size. Tables are dense, so this caps memory and
/// keeps the exhaustive primitivity check cheap.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// A field element, stored as an integer in `[0, q)` with base-p digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field size {0}^{1} exceeds the supported maximum {MAX_FIELD_SIZE}")]
    FieldTooLarge(u32, u32),
    #[error("no default modulus for GF({0}^{1}); provide one explicitly")]
    ModulusRequired(u32, u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus must have degree {0}")]
    BadModulusDegree(u32),
    #[error("{0} is not a primitive element")]
    NotPrimitive(u32),
    #[error("element {0} out of range for field of size {1}")]
    ElementOutOfRange(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("log of zero")]
    LogOfZero,
    #[error("bad field spec `{0}`: expected p,m,modulus,alpha")]
    Parse(String),
}

/// The conventional Reed-Solomon modulus for GF(2^8): x^8+x^4+x^3+x^2+1.
pub const GF256_DEFAULT_MODULUS: u32 = 0x11D;

/// A finite field GF(p^m) with populated exp/log tables.
///
/// Immutable after construction; share it freely (typically via `Arc`).
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus coefficients over GF(p), lowest degree first.
    /// Empty when m = 1.
    modulus: Vec<u32>,
    alpha: Fe,
    exp: Vec<Fe>,
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.alpha == other.alpha
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.spec_string())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Digits of `v` in base `p`, lowest first, padded/truncated to length `len`.
fn digits(v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    let mut v = v;
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    let mut v = 0u64;
    for &d in ds.iter().rev() {
        v = v * p as u64 + d as u64;
    }
    v as u32
}

/// Degree of a coefficient vector, or None for zero.
fn vec_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Schoolbook product of coefficient vectors over GF(p).
fn vec_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `modulus` over GF(p).
fn vec_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let md = vec_deg(modulus).expect("modulus must be nonzero");
    let mut r: Vec<u32> = a.to_vec();
    loop {
        let rd = match vec_deg(&r) {
            Some(d) if d >= md => d,
            _ => break,
        };
        // modulus is monic, so the quotient digit is just the leading coeff
        let c = r[rd];
        let shift = rd - md;
        for (j, &mj) in modulus.iter().enumerate().take(md + 1) {
            let sub = (c as u64 * mj as u64) % p as u64;
            let cur = r[shift + j] as u64;
            r[shift + j] = ((cur + p as u64 - sub % p as u64) % p as u64) as u32;
        }
    }
    r.truncate(md);
    r
}

/// True if `f` (monic, degree m over GF(p)) has a factor of degree <= m/2.
/// Trial division against every monic polynomial of small degree; fine at
/// table scale since p^(m/2) <= 256 for supported fields.
fn has_small_factor(f: &[u32], p: u32, m: u32) -> bool {
    for d in 1..=(m / 2) {
        let count = (p as u64).pow(d); // monic candidates of degree d
        for idx in 0..count {
            let mut cand = digits(idx as u32, p, d as usize);
            cand.push(1);
            let rem = vec_rem(f, &cand, p);
            if vec_deg(&rem).is_none() {
                return true;
            }
        }
    }
    false
}

impl FieldSpec {
    /// Builds a validated field. With `alpha` omitted, the smallest element
    /// (by integer value) that is primitive is chosen. With the modulus
    /// omitted, only GF(2^8) has a documented default (0x11D).
    pub fn new(
        p: u32,
        m: u32,
        modulus: Option<u32>,
        alpha: Option<u32>,
    ) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m < 1 {
            return Err(FieldError::BadDegree);
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_FIELD_SIZE {
            return Err(FieldError::FieldTooLarge(p, m));
        }
        let q = q64 as u32;

        let modulus_vec = if m == 1 {
            Vec::new()
        } else {
            let raw = match modulus {
                Some(0) | None if p == 2 && m == 8 => GF256_DEFAULT_MODULUS,
                Some(0) | None => return Err(FieldError::ModulusRequired(p, m)),
                Some(v) => v,
            };
            let mut coeffs = digits(raw, p, m as usize + 1);
            while coeffs.len() > m as usize + 1 {
                coeffs.pop();
            }
            if vec_deg(&coeffs) != Some(m as usize) {
                return Err(FieldError::BadModulusDegree(m));
            }
            // normalize to monic: scale by lc^{-1} mod p
            let lc = coeffs[m as usize];
            if lc != 1 {
                let lc_inv = mod_inv(lc, p);
                for c in coeffs.iter_mut() {
                    *c = ((*c as u64 * lc_inv as u64) % p as u64) as u32;
                }
            }
            if has_small_factor(&coeffs, p, m) {
                return Err(FieldError::ReducibleModulus(p));
            }
            coeffs
        };

        let mut spec = FieldSpec {
            p,
            m,
            q,
            modulus: modulus_vec,
            alpha: Fe::ZERO,
            exp: Vec::new(),
            log: Vec::new(),
        };

        let alpha = match alpha {
            Some(a) => {
                if a >= q {
                    return Err(FieldError::ElementOutOfRange(a, q));
                }
                Fe(a)
            }
            None => spec.find_primitive()?,
        };
        spec.alpha = alpha;
        spec.build_tables()?;
        Ok(spec)
    }

    /// Parses the `p,m,modulus,alpha` form used by the CLI `--field` flag.
    pub fn parse(s: &str) -> Result<FieldSpec, FieldError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(FieldError::Parse(s.to_string()));
        }
        let nums: Result<Vec<u32>, _> = parts.iter().map(|t| t.trim().parse::<u32>()).collect();
        let nums = nums.map_err(|_| FieldError::Parse(s.to_string()))?;
        let modulus = if nums[2] == 0 { None } else { Some(nums[2]) };
        FieldSpec::new(nums[0], nums[1], modulus, Some(nums[3]))
    }

    /// The `p,m,modulus,alpha` form; round-trips through [`FieldSpec::parse`].
    pub fn spec_string(&self) -> String {
        let modulus = if self.m == 1 {
            0
        } else {
            undigits(&self.modulus, self.p)
        };
        format!("{},{},{},{}", self.p, self.m, modulus, self.alpha.0)
    }

    fn find_primitive(&self) -> Result<Fe, FieldError> {
        let n = self.q - 1;
        let factors = prime_factors(n);
        for cand in 1..self.q {
            let a = Fe(cand);
            if factors
                .iter()
                .all(|&r| self.pow_slow(a, (n / r) as u64) != Fe::ONE)
            {
                return Ok(a);
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    fn build_tables(&mut self) -> Result<(), FieldError> {
        let n = (self.q - 1) as usize;
        let mut exp = vec![Fe::ZERO; n];
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = Fe::ONE;
        for (i, slot) in exp.iter_mut().enumerate() {
            if cur.is_zero() || log[cur.0 as usize] != u32::MAX {
                // revisited an element before exhausting the group
                return Err(FieldError::NotPrimitive(self.alpha.0));
            }
            *slot = cur;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, self.alpha);
        }
        if cur != Fe::ONE {
            return Err(FieldError::NotPrimitive(self.alpha.0));
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    /// Table-free multiply, used while tables are built and as a test oracle.
    pub fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        if self.m == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let da = digits(a.0, self.p, self.m as usize);
        let db = digits(b.0, self.p, self.m as usize);
        let prod = vec_mul(&da, &db, self.p);
        let rem = vec_rem(&prod, &self.modulus, self.p);
        Fe(undigits(&rem, self.p))
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Code length n = q - 1, the multiplicative group order.
    pub fn n(&self) -> usize {
        (self.q - 1) as usize
    }

    pub fn alpha(&self) -> Fe {
        self.alpha
    }

    pub fn exp_table(&self) -> &[Fe] {
        &self.exp
    }

    /// Validated element constructor.
    pub fn element(&self, v: u32) -> Result<Fe, FieldError> {
        if v < self.q {
            Ok(Fe(v))
        } else {
            Err(FieldError::ElementOutOfRange(v, self.q))
        }
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.m == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        let mut da = digits(a.0, self.p, self.m as usize);
        let db = digits(b.0, self.p, self.m as usize);
        for (x, y) in da.iter_mut().zip(db) {
            *x = (*x + y) % self.p;
        }
        Fe(undigits(&da, self.p))
    }

    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(a.0 < self.q);
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return Fe((self.p - a.0) % self.p);
        }
        let mut da = digits(a.0, self.p, self.m as usize);
        for x in da.iter_mut() {
            *x = (self.p - *x) % self.p;
        }
        Fe(undigits(&da, self.p))
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let n = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        self.exp[((la + lb) % n) as usize]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.q - 1;
        let la = self.log[a.0 as usize];
        Ok(self.exp[((n - la) % n) as usize])
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with negative exponents allowed for nonzero `a`.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Fe::ZERO),
                std::cmp::Ordering::Equal => Ok(Fe::ONE),
                std::cmp::Ordering::Less => Err(FieldError::DivisionByZero),
            };
        }
        let n = (self.q - 1) as i64;
        let la = self.log[a.0 as usize] as i64;
        let idx = (la * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[idx as usize])
    }

    /// `alpha^i` with `i` reduced mod q - 1.
    pub fn exp(&self, i: i64) -> Fe {
        let n = (self.q - 1) as i64;
        self.exp[i.rem_euclid(n) as usize]
    }

    /// Discrete log base alpha, in `[0, q-1)`.
    pub fn log(&self, a: Fe) -> Result<u32, FieldError> {
        if a.is_zero() {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.log[a.0 as usize])
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Inverse of `a` mod prime `p` by Fermat.
fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf7() -> FieldSpec {
        FieldSpec::new(7, 1, None, Some(3)).unwrap()
    }

    fn gf256() -> FieldSpec {
        FieldSpec::new(2, 8, Some(0x11D), Some(2)).unwrap()
    }

    #[test]
    fn gf7_exp_table() {
        let f = gf7();
        let table: Vec<u32> = f.exp_table().iter().map(|e| e.0).collect();
        assert_eq!(table, vec![1, 3, 2, 6, 4, 5]);
        assert_eq!(f.q(), 7);
        assert_eq!(f.n(), 6);
    }

    #[test]
    fn gf256_default_modulus_and_primitivity() {
        // x is primitive for 0x11D; construction runs the exhaustive order check
        let f = gf256();
        assert_eq!(f.q(), 256);
        assert_eq!(f.spec_string(), "2,8,285,2");
        // and the default kicks in when the modulus is omitted
        let g = FieldSpec::new(2, 8, None, Some(2)).unwrap();
        assert_eq!(g.spec_string(), "2,8,285,2");
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(
            FieldSpec::new(4, 1, None, None).unwrap_err(),
            FieldError::NotPrime(4)
        );
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^8 + 1 = (x+1)^8 over GF(2)
        assert_eq!(
            FieldSpec::new(2, 8, Some(0x101), Some(2)).unwrap_err(),
            FieldError::ReducibleModulus(2)
        );
    }

    #[test]
    fn non_primitive_alpha_rejected() {
        // 2 has order 3 in GF(7)
        assert_eq!(
            FieldSpec::new(7, 1, None, Some(2)).unwrap_err(),
            FieldError::NotPrimitive(2)
        );
        assert_eq!(
            FieldSpec::new(7, 1, None, Some(0)).unwrap_err(),
            FieldError::NotPrimitive(0)
        );
    }

    #[test]
    fn smallest_primitive_chosen_when_omitted() {
        let f = FieldSpec::new(7, 1, None, None).unwrap();
        assert_eq!(f.alpha(), Fe(3)); // 1 and 2 have orders 1 and 3
        let g = FieldSpec::new(5, 1, None, None).unwrap();
        assert_eq!(g.alpha(), Fe(2));
    }

    #[test]
    fn gf7_arithmetic_examples() {
        let f = gf7();
        assert_eq!(f.mul(Fe(3), Fe(5)), Fe(1));
        assert_eq!(f.inv(Fe(3)).unwrap(), Fe(5));
        assert_eq!(f.pow(Fe(3), -3).unwrap(), Fe(6));
        assert_eq!(f.exp(4), Fe(4));
        assert_eq!(f.log(Fe(6)).unwrap(), 3);
        assert_eq!(f.exp(-1), Fe(5));
        assert_eq!(f.div(Fe(1), Fe(0)), Err(FieldError::DivisionByZero));
        assert_eq!(f.log(Fe(0)), Err(FieldError::LogOfZero));
        assert_eq!(f.pow(Fe(0), -1), Err(FieldError::DivisionByZero));
        assert_eq!(f.pow(Fe(0), 0).unwrap(), Fe(1));
        assert_eq!(f.pow(Fe(0), 5).unwrap(), Fe(0));
    }

    #[test]
    fn parse_round_trip() {
        let f = FieldSpec::parse("7,1,0,3").unwrap();
        assert_eq!(f.spec_string(), "7,1,0,3");
        let g = FieldSpec::parse("2,8,285,2").unwrap();
        assert_eq!(g.q(), 256);
        assert!(FieldSpec::parse("7,1,0").is_err());
        assert!(FieldSpec::parse("a,b,c,d").is_err());
    }

    #[test]
    fn extension_field_with_odd_characteristic() {
        // GF(9) via x^2 + 1 (irreducible over GF(3)); modulus int: 1 + 0*3 + 1*9 = 10
        let f = FieldSpec::new(3, 2, Some(10), None).unwrap();
        assert_eq!(f.q(), 9);
        for v in 1..9 {
            let a = Fe(v);
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), Fe::ONE);
        }
    }

    fn check_field_properties(f: &FieldSpec, a: Fe, b: Fe, c: Fe) {
        // table-driven mul must match the independent slow path
        assert_eq!(f.mul(a, b), f.mul_slow(a, b));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            if !b.is_zero() {
                let ll = (f.log(a).unwrap() + f.log(b).unwrap()) % f.q().saturating_sub(1);
                assert_eq!(f.log(f.mul(a, b)).unwrap(), ll);
            }
        }
    }

    proptest! {
        #[test]
        fn gf7_properties(a in 0u32..7, b in 0u32..7, c in 0u32..7) {
            check_field_properties(&gf7(), Fe(a), Fe(b), Fe(c));
        }

        #[test]
        fn gf256_properties(a in 0u32..256, b in 0u32..256, c in 0u32..256) {
            check_field_properties(&gf256(), Fe(a), Fe(b), Fe(c));
        }

        #[test]
        fn gf9_properties(a in 0u32..9, b in 0u32..9, c in 0u32..9) {
            let f = FieldSpec::new(3, 2, Some(10), None).unwrap();
            check_field_properties(&f, Fe(a), Fe(b), Fe(c));
        }

        #[test]
        fn exp_log_bijection(i in 0i64..255) {
            let f = gf256();
            prop_assert_eq!(f.log(f.exp(i)).unwrap() as i64, i.rem_euclid(255));
        }
    }
}
