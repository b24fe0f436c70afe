//! Arithmetic in the prime field Z/pZ and the base-p combinatorics used by the
//! multinomial expansion of a product raised to the power `p^j - 1`.
//!
//! Scalars are plain `u32` residues in `[0, p)`. The prime itself lives in an
//! [`Fp`] value that every container carries, so a residue on its own has no
//! meaning.

use crate::error::{Error, Result};

/// Largest prime accepted. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

/// Residue in `[0, p)`.
pub type FpScalar = u32;

/// The field Z/pZ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Checks primality once; every later operation trusts it.
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed machine integer.
    #[inline]
    pub fn from_i64(self, a: i64) -> FpScalar {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: FpScalar, b: FpScalar) -> FpScalar {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: FpScalar, b: FpScalar) -> FpScalar {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: FpScalar) -> FpScalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FpScalar, b: FpScalar) -> FpScalar {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: FpScalar, mut e: u64) -> FpScalar {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat.
    pub fn inv(self, a: FpScalar) -> Result<FpScalar> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// `q` if it is `p^j` for some `j >= 0`, together with `j`.
    pub fn log_p(self, q: u64) -> Option<u32> {
        if q == 0 {
            return None;
        }
        let mut j = 0;
        let mut r = q;
        while r.is_multiple_of(self.p as u64) {
            r /= self.p as u64;
            j += 1;
        }
        (r == 1).then_some(j)
    }

    /// `p^j`, or `None` on overflow.
    pub fn prime_power(self, j: u32) -> Option<u64> {
        (self.p as u64).checked_pow(j)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `total! / prod(parts!)` reduced mod `p`, computed digit by digit (Lucas).
///
/// A carry in the base-p addition of the parts makes the result zero (Kummer);
/// otherwise the result is the product of the digit-wise multinomials, each of
/// which only involves factorials below `p`.
pub fn multinomial_mod_p(total: u64, parts: &[u64], field: Fp) -> Result<FpScalar> {
    let sum = parts
        .iter()
        .try_fold(0u64, |acc, &q| acc.checked_add(q))
        .ok_or_else(|| Error::Contract("multinomial parts overflow".into()))?;
    if sum != total {
        return Err(Error::Contract(format!(
            "multinomial parts sum to {sum}, expected {total}"
        )));
    }
    let p = field.p() as u64;
    let mut digits: Vec<u64> = parts.to_vec();
    let mut rest = total;
    let mut acc = 1 % field.p();
    while rest > 0 {
        let top = rest % p;
        let mut num = 1;
        let mut den = 1;
        let mut seen = 0;
        for d in digits.iter_mut() {
            let digit = *d % p;
            *d /= p;
            // C(seen + digit, digit) accumulated as a ratio of falling products
            for k in 0..digit {
                num = field.mul(num, ((seen + k + 1) % p) as u32);
                den = field.mul(den, ((k + 1) % p) as u32);
            }
            seen += digit;
        }
        if seen != top {
            return Ok(0);
        }
        acc = field.mul(acc, field.mul(num, field.inv(den)?));
        rest /= p;
    }
    Ok(acc)
}

/// Factorial tables for one prime, giving `O(j * t)` multinomials for totals
/// of the form `p^j - 1` in the streaming path.
#[derive(Clone, Debug)]
pub struct LucasTable {
    field: Fp,
    fact: Vec<FpScalar>,
    inv_fact: Vec<FpScalar>,
}

impl LucasTable {
    pub fn new(field: Fp) -> Result<Self> {
        let p = field.p() as usize;
        if p > 1 << 24 {
            return Err(Error::Contract(format!(
                "prime {p} is too large for a factorial table"
            )));
        }
        let mut fact = vec![1u32; p];
        for k in 1..p {
            fact[k] = field.mul(fact[k - 1], k as u32);
        }
        let mut inv_fact = vec![1u32; p];
        inv_fact[p - 1] = field.inv(fact[p - 1])?;
        for k in (1..p).rev() {
            inv_fact[k - 1] = field.mul(inv_fact[k], k as u32);
        }
        Ok(LucasTable {
            field,
            fact,
            inv_fact,
        })
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    /// Same value as [`multinomial_mod_p`]; `parts` must sum to `total`.
    pub fn multinomial(&self, total: u64, parts: &[u64]) -> FpScalar {
        debug_assert_eq!(parts.iter().sum::<u64>(), total);
        let p = self.field.p() as u64;
        let mut scale = 1u64;
        let mut acc = 1 % self.field.p();
        while scale <= total {
            let top = (total / scale) % p;
            let mut seen = 0;
            let mut den = 1;
            for &q in parts {
                let digit = (q / scale) % p;
                seen += digit;
                den = self.field.mul(den, self.inv_fact[digit as usize]);
            }
            if seen != top {
                return 0;
            }
            acc = self
                .field
                .mul(acc, self.field.mul(self.fact[top as usize], den));
            match scale.checked_mul(p) {
                Some(s) => scale = s,
                None => break,
            }
        }
        acc
    }

    /// Whether adding `parts` in base p produces a carry, i.e. the multinomial
    /// vanishes mod p.
    pub fn has_carry(&self, total: u64, parts: &[u64]) -> bool {
        self.multinomial(total, parts) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u64) -> u128 {
        (1..=n as u128).product()
    }

    fn direct(total: u64, parts: &[u64], p: u64) -> u32 {
        let mut v = factorial(total);
        for &q in parts {
            v /= factorial(q);
        }
        (v % p as u128) as u32
    }

    fn compositions(total: u64, t: usize) -> Vec<Vec<u64>> {
        if t == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in compositions(total - first, t - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn field_ops() {
        let f5 = Fp::new(5).unwrap();
        assert_eq!(f5.add(3, 4), 2);
        let f7 = Fp::new(7).unwrap();
        let inv = f7.inv(3).unwrap();
        assert_eq!(inv, 5);
        assert_eq!(f7.mul(3, inv), 1);
        let f2 = Fp::new(2).unwrap();
        assert_eq!(f2.neg(1), 1);
        assert!(matches!(f7.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rejects_composites() {
        assert!(matches!(Fp::new(4), Err(Error::NotPrime(4))));
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(0).is_err());
        assert!(Fp::new(13).is_ok());
    }

    #[test]
    fn log_p_detects_powers() {
        let f3 = Fp::new(3).unwrap();
        assert_eq!(f3.log_p(1), Some(0));
        assert_eq!(f3.log_p(27), Some(3));
        assert_eq!(f3.log_p(12), None);
        assert_eq!(f3.log_p(0), None);
    }

    #[test]
    fn multinomial_examples() {
        let f2 = Fp::new(2).unwrap();
        let f3 = Fp::new(3).unwrap();
        assert_eq!(multinomial_mod_p(1, &[1, 0], f2).unwrap(), 1);
        assert_eq!(multinomial_mod_p(3, &[1, 2], f3).unwrap(), 0);
        assert_eq!(multinomial_mod_p(2, &[1, 1], f3).unwrap(), 2);
        assert!(multinomial_mod_p(3, &[1, 1], f3).is_err());
    }

    #[test]
    fn multinomial_matches_factorials_small() {
        for p in [2u64, 3, 5, 7, 11] {
            let field = Fp::new(p).unwrap();
            let table = LucasTable::new(field).unwrap();
            for total in 0..=12u64 {
                for t in 1..=3 {
                    for parts in compositions(total, t) {
                        let want = direct(total, &parts, p);
                        assert_eq!(multinomial_mod_p(total, &parts, field).unwrap(), want);
                        assert_eq!(table.multinomial(total, &parts), want);
                    }
                }
            }
        }
    }

    #[test]
    fn lucas_consistency_for_prime_power_totals() {
        // digit-wise product against direct factorials for p^j - 1, j <= 2
        for p in [2u64, 3] {
            let field = Fp::new(p).unwrap();
            for j in 1..=2u32 {
                let total = p.pow(j) - 1;
                for parts in compositions(total, 3) {
                    let mut digitwise = 1u32;
                    let mut scale = 1;
                    for _ in 0..j {
                        let digits: Vec<u64> = parts.iter().map(|q| (q / scale) % p).collect();
                        let top = (total / scale) % p;
                        digitwise = if digits.iter().sum::<u64>() == top {
                            field.mul(digitwise, direct(top, &digits, p))
                        } else {
                            0
                        };
                        scale *= p;
                    }
                    assert_eq!(digitwise, direct(total, &parts, p));
                    assert_eq!(multinomial_mod_p(total, &parts, field).unwrap(), digitwise);
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn multinomial_is_symmetric(parts in proptest::collection::vec(0u64..40, 1..5), pi in 0usize..4) {
            let p = [2u64, 3, 5, 7][pi];
            let field = Fp::new(p).unwrap();
            let total: u64 = parts.iter().sum();
            let mut rev = parts.clone();
            rev.reverse();
            let mut sorted = parts.clone();
            sorted.sort();
            let a = multinomial_mod_p(total, &parts, field).unwrap();
            proptest::prop_assert_eq!(a, multinomial_mod_p(total, &rev, field).unwrap());
            proptest::prop_assert_eq!(a, multinomial_mod_p(total, &sorted, field).unwrap());
        }
    }
}
