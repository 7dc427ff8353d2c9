use super::LinAlgError;

/// Deterministic primality test. Trial division is plenty for the moduli
/// this crate meets (2, 3, 5, 101, ... small word-sized primes).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |dd| dd <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A residue in GF(p). The modulus travels with the value so mixed-field
/// arithmetic is caught instead of silently wrapping.
///
/// Moduli are capped at 2^31 so products of residues fit in `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u64,
    modulus: u64,
}

pub const MAX_MODULUS: u64 = 1 << 31;

impl FieldElem {
    /// Reduces `value` into GF(p). Panics if `p` is not a prime below 2^31;
    /// field construction is the single checkpoint for modulus validity.
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p < MAX_MODULUS, "modulus {p} too large");
        assert!(is_prime(p), "modulus {p} is not prime");
        let m = p as i64;
        let v = ((value % m) + m) % m;
        FieldElem {
            value: v as u64,
            modulus: p,
        }
    }

    pub fn zero(p: u64) -> Self {
        FieldElem::new(0, p)
    }

    pub fn one(p: u64) -> Self {
        FieldElem::new(1, p)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElem) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli {} vs {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.check(other);
        FieldElem {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.check(other);
        FieldElem {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.check(other);
        FieldElem {
            value: (self.value * other.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<FieldElem, LinAlgError> {
        if self.value == 0 {
            return Err(LinAlgError::ZeroInverse(self.modulus));
        }
        let (mut r0, mut r1) = (self.modulus as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Ok(FieldElem::new(t0, self.modulus))
    }
}

/// Raw-residue inverse used by the matrix kernels, which store bare `u64`
/// values against a shared modulus.
pub(crate) fn inv_raw(value: u64, p: u64) -> Result<u64, LinAlgError> {
    Ok(FieldElem { value, modulus: p }.inv()?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(101));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(91)); // 7 * 13
    }

    #[test]
    fn inverse_identity_in_gf2() {
        let one = FieldElem::one(2);
        assert_eq!(one.inv().unwrap(), one);
    }

    #[test]
    fn inverse_of_three_mod_seven() {
        // 3 * 5 = 15 = 2*7 + 1
        let a = FieldElem::new(3, 7);
        assert_eq!(a.inv().unwrap(), FieldElem::new(5, 7));
    }

    #[test]
    fn zero_has_no_inverse() {
        let z = FieldElem::zero(5);
        assert_eq!(z.inv(), Err(LinAlgError::ZeroInverse(5)));
    }

    #[test]
    fn all_nonzero_elements_invert_exactly() {
        for p in [2u64, 3, 5, 7, 101] {
            for v in 1..p.min(120) {
                let a = FieldElem::new(v as i64, p);
                assert_eq!(a.mul(&a.inv().unwrap()), FieldElem::one(p));
            }
        }
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(FieldElem::new(-1, 5).value(), 4);
        assert_eq!(FieldElem::new(-10, 5).value(), 0);
    }

    #[test]
    #[should_panic(expected = "not prime")]
    fn composite_modulus_rejected() {
        FieldElem::new(1, 6);
    }
}
