/// Element of `Z/pZ`, always reduced into `[0, p)`.
pub type FieldElem = u64;

pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Prime field context. The default modulus is `2^61 - 1`, which gets a
/// shift-and-add reduction; other primes (small ones, to force collisions in
/// tests) fall back to `u128` remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: MERSENNE_61 }
    }
}

impl Field {
    /// `p` must be an odd prime below `2^62`; primality is the caller's job.
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 62), "modulus out of supported range");
        Field { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> FieldElem {
        x % self.p
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let prod = a as u128 * b as u128;
        if self.p == MERSENNE_61 {
            let lo = (prod as u64) & MERSENNE_61;
            let hi = (prod >> 61) as u64;
            let s = lo + hi;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (prod % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: FieldElem, mut exp: u64) -> FieldElem {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }
}
