//! Arithmetic in the prime field F_p.
//!
//! Elements are canonical representatives in `0..p` stored as `u64`. The
//! modulus is kept below 2^31 so products fit in a `u64` without widening.
//! All computation in this crate is exact modulo a prime; there is no
//! floating point anywhere.

/// A prime modulus together with its field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Default modulus for generic sampling: large enough that random rank
    /// degeneracy is negligible, small enough for native arithmetic.
    pub const GENERIC: u64 = 10007;

    /// Moduli admitted by the exhaustive submodule oracle.
    pub const ORACLE: [u64; 3] = [2, 3, 5];

    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        assert!(is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        for p in [2u64, 3, 5, 101, 10007] {
            let f = PrimeField::new(p);
            for a in 1..p.min(50) {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    #[should_panic]
    fn rejects_composite() {
        PrimeField::new(10);
    }
}
