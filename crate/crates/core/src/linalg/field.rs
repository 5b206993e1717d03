use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field GF(p), 2 <= p <= 97.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawField", into = "RawField")]
pub struct FieldSpec {
    p: u32,
}

#[derive(Serialize, Deserialize)]
struct RawField {
    p: u32,
}

impl TryFrom<RawField> for FieldSpec {
    type Error = Error;
    fn try_from(raw: RawField) -> Result<Self> {
        FieldSpec::new(raw.p)
    }
}

impl From<FieldSpec> for RawField {
    fn from(f: FieldSpec) -> Self {
        RawField { p: f.p }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: 2 }
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if (2..=97).contains(&p) && is_prime(p) {
            Ok(FieldSpec { p })
        } else {
            Err(Error::InvalidField(p))
        }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let mut result = 1u32;
        let mut base = a;
        let mut exp = self.p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Some(result)
    }

    /// `a += c * b` elementwise.
    #[inline]
    pub fn axpy(self, a: &mut [u32], c: u32, b: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, &y) in a.iter_mut().zip(b) {
            *x = (*x + c * y) % self.p;
        }
    }

    /// Enumerate every coefficient vector of the given length, in counting order.
    pub fn all_vectors(self, len: usize) -> VectorIter {
        VectorIter {
            p: self.p,
            current: vec![0; len],
            done: false,
        }
    }
}

/// Counting-order iterator over GF(p)^n, starting at zero.
pub struct VectorIter {
    p: u32,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for VectorIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = 0;
        loop {
            if i == self.current.len() {
                self.done = true;
                break;
            }
            self.current[i] += 1;
            if self.current[i] == self.p {
                self.current[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_only() {
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(97).is_ok());
        assert_eq!(FieldSpec::new(1), Err(Error::InvalidField(1)));
        assert_eq!(FieldSpec::new(9), Err(Error::InvalidField(9)));
        assert_eq!(FieldSpec::new(101), Err(Error::InvalidField(101)));
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 97] {
            let f = FieldSpec::new(p).unwrap();
            assert_eq!(f.inv(0), None);
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn vector_iter_counts() {
        let f = FieldSpec::new(3).unwrap();
        assert_eq!(f.all_vectors(0).count(), 1);
        assert_eq!(f.all_vectors(3).count(), 27);
    }

    #[test]
    fn serde_rejects_composite() {
        let ok: FieldSpec = serde_json::from_str(r#"{"p":3}"#).unwrap();
        assert_eq!(ok.p(), 3);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":4}"#).is_err());
    }
}
