//! Coefficient arithmetic: prime fields, residue rings `Z/l^r`, exact
//! rationals with l-adic valuation, and the scalar trait shared by the
//! exact matrix and chain types.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::RingError;

/// Exact scalars the generic containers are instantiated at: `i64`,
/// [`BigInt`], [`BigRational`].
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + std::fmt::Display
    + Zero
    + One
    + Signed
    + std::ops::AddAssign
    + std::ops::SubAssign
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + std::fmt::Display
        + Zero
        + One
        + Signed
        + std::ops::AddAssign
        + std::ops::SubAssign
{
}

/// Prime field `F_l` with a runtime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    ell: u32,
}

impl PrimeField {
    pub fn new(ell: u32) -> Result<Self, RingError> {
        if !is_prime_u64(ell as u64) {
            return Err(RingError::NotPrime(ell));
        }
        Ok(PrimeField { ell })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.ell as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.ell as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.ell as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.ell - a % self.ell
        }
    }
}

/// Inverse of `a` in `F`. Errors when `a` is zero mod the modulus.
pub fn ff_inv(a: i64, field: PrimeField) -> Result<u32, RingError> {
    let ell = field.ell() as i64;
    let a = a.rem_euclid(ell);
    if a == 0 {
        return Err(RingError::ZeroInverse { ell: field.ell() });
    }
    let (g, x, _) = ext_gcd(a, ell);
    debug_assert_eq!(g, 1);
    Ok(x.rem_euclid(ell) as u32)
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Residue ring `Z/l^r`, guarded to moduli below `2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueRing {
    ell: u32,
    r: u32,
    modulus: u64,
}

impl ResidueRing {
    pub fn new(ell: u32, r: u32) -> Result<Self, RingError> {
        if !is_prime_u64(ell as u64) {
            return Err(RingError::NotPrime(ell));
        }
        if r == 0 {
            return Err(RingError::ZeroExponent);
        }
        let mut modulus: u64 = 1;
        for _ in 0..r {
            modulus = modulus.saturating_mul(ell as u64);
            if modulus >= 1 << 31 {
                return Err(RingError::ModulusOverflow { ell, r });
            }
        }
        Ok(ResidueRing { ell, r, modulus })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, a: i64) -> i64 {
        a.rem_euclid(self.modulus as i64)
    }

    /// l-adic valuation of `a` in `Z/l^r`; values that reduce to zero
    /// report `r` (divisible by every observable power).
    pub fn valuation(&self, a: i64) -> u32 {
        let mut a = self.reduce(a);
        if a == 0 {
            return self.r;
        }
        let mut v = 0;
        while a % self.ell as i64 == 0 {
            a /= self.ell as i64;
            v += 1;
        }
        v
    }
}

/// Value of an l-adic valuation: finite, or infinite for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_nonnegative(&self) -> bool {
        match self {
            Valuation::Finite(v) => *v >= 0,
            Valuation::Infinite => true,
        }
    }
}

/// l-adic valuation of an exact rational; `Infinite` for zero.
pub fn ell_valuation(q: &BigRational, ell: u32) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let ell = BigInt::from(ell);
    Valuation::Finite(int_valuation(q.numer(), &ell) - int_valuation(q.denom(), &ell))
}

fn int_valuation(a: &BigInt, ell: &BigInt) -> i64 {
    debug_assert!(!a.is_zero());
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, rem) = a.div_rem(ell);
        if !rem.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

/// Smallest positive integer congruent to `q` mod `l^r`; requires
/// `ell_valuation(q, l) >= 0` and denominator coprime to `l`.
pub fn lift_mod(q: &BigRational, ring: ResidueRing) -> Result<u64, RingError> {
    if !ell_valuation(q, ring.ell()).is_nonnegative() {
        return Err(RingError::NotLocal {
            value: q.to_string(),
            ell: ring.ell(),
        });
    }
    let m = BigInt::from(ring.modulus());
    let num = q.numer().mod_floor(&m);
    let den = q.denom().mod_floor(&m);
    // denominator is an l-unit, hence invertible mod l^r
    let den_i = i64::try_from(&den).expect("reduced denominator fits i64");
    let num_i = i64::try_from(&num).expect("reduced numerator fits i64");
    let inv = inv_mod_u64(den_i as u64, ring.modulus()).expect("unit denominator");
    let res = (num_i as u64 as u128 * inv as u128 % ring.modulus() as u128) as u64;
    Ok(if res == 0 { ring.modulus() } else { res })
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i64) as u64)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes strictly below `bound`, ascending.
pub fn primes_below(bound: u32) -> Vec<u32> {
    (2..bound).filter(|&p| is_prime_u64(p as u64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(ff_inv(1, f2).unwrap(), 1);
        assert_eq!(ff_inv(2, f3).unwrap(), 2);
        // oracle: exhaustive search over residues mod 7
        let expected = (1..7).find(|x| (5 * x) % 7 == 1).unwrap();
        assert_eq!(expected, 3);
        assert_eq!(ff_inv(5, f7).unwrap(), 3);
        assert!(ff_inv(0, f7).is_err());
        assert!(ff_inv(14, f7).is_err());
    }

    #[test]
    fn field_axioms_small_primes() {
        for ell in primes_below(98) {
            let f = PrimeField::new(ell).unwrap();
            for a in 1..ell.min(60) {
                let inv = ff_inv(a as i64, f).unwrap();
                assert_eq!(f.mul(a, inv), 1, "a*inv(a) != 1 for a={a} mod {ell}");
            }
        }
    }

    #[test]
    fn not_prime_rejected() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(97).is_ok());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(ell_valuation(&rat(0, 1), 2), Valuation::Infinite);
        assert_eq!(ell_valuation(&rat(12, 1), 2), Valuation::Finite(2));
        assert_eq!(ell_valuation(&rat(3, 8), 2), Valuation::Finite(-3));
    }

    #[test]
    fn valuation_is_additive() {
        let samples = [
            rat(4, 9),
            rat(-18, 5),
            rat(7, 12),
            rat(250, 3),
            rat(1, 1),
            rat(-8, 27),
        ];
        for ell in [2u32, 3, 5] {
            for a in &samples {
                for b in &samples {
                    let lhs = ell_valuation(&(a * b), ell);
                    let (Valuation::Finite(va), Valuation::Finite(vb)) =
                        (ell_valuation(a, ell), ell_valuation(b, ell))
                    else {
                        panic!("nonzero samples");
                    };
                    assert_eq!(lhs, Valuation::Finite(va + vb));
                }
            }
        }
    }

    #[test]
    fn residue_ring_guard() {
        assert!(ResidueRing::new(2, 30).is_ok());
        assert!(ResidueRing::new(2, 31).is_err());
        assert!(ResidueRing::new(3, 20).is_err());
        let r = ResidueRing::new(3, 2).unwrap();
        assert_eq!(r.modulus(), 9);
        assert_eq!(r.valuation(6), 1);
        assert_eq!(r.valuation(9), 2);
        assert_eq!(r.valuation(-1), 0);
    }

    #[test]
    fn lift_smallest_positive() {
        let r = ResidueRing::new(2, 2).unwrap();
        assert_eq!(lift_mod(&rat(1, 1), r).unwrap(), 1);
        assert_eq!(lift_mod(&rat(1, 3), r).unwrap(), 3); // 3*3 = 9 = 1 mod 4
        assert_eq!(lift_mod(&rat(4, 1), r).unwrap(), 4); // zero residue lifts to l^r
        assert!(lift_mod(&rat(1, 2), r).is_err());
    }
}
