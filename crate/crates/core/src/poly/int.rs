//! Integer coefficients with an inline `i64` fast path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub fn zero() -> Self {
        Int::Small(0)
    }

    pub fn one() -> Self {
        Int::Small(1)
    }

    fn norm(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn from_big(b: BigInt) -> Self {
        Self::norm(b)
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_big(&self) -> bool {
        matches!(self, Int::Big(_))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Self::norm(-b),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Self::norm(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Self::norm(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(r) => Int::Small(r),
                None => Int::Big(BigInt::from(*a) * BigInt::from(*b)),
            },
            (Int::Small(1), x) | (x, Int::Small(1)) => x.clone(),
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => Self::norm(b * *a),
            (Int::Big(a), Int::Big(b)) => Int::Big(a * b),
        }
    }

    /// `self * a - o * b`, the workhorse of fraction-free reduction.
    pub fn mul_sub(&self, a: &Int, o: &Int, b: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y), Int::Small(z), Int::Small(w)) = (self, a, o, b) {
            let r = (*x as i128) * (*y as i128) - (*z as i128) * (*w as i128);
            if let Ok(v) = i64::try_from(r) {
                return Int::Small(v);
            }
            return Int::Big(BigInt::from(r));
        }
        self.mul(a).sub(&o.mul(b))
    }

    /// Exact division; `o` must divide `self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) if *b != -1 || *a != i64::MIN => Int::Small(a / b),
            _ => Self::norm(self.to_big() / o.to_big()),
        }
    }

    pub fn gcd(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => {
                let g = a.unsigned_abs().gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(g)),
                }
            }
            _ => Self::norm(self.to_big().gcd(&o.to_big())),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::norm(b)
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_shrinks_back() {
        let a = Int::Small(i64::MAX);
        let b = a.add(&Int::Small(1));
        assert!(b.is_big());
        assert_eq!(b.sub(&Int::Small(1)), a);
        assert!(!b.sub(&Int::Small(1)).is_big());
        let m = Int::Small(i64::MIN).neg();
        assert_eq!(m.to_big(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn mul_sub_matches_bigint() {
        let cases = [(3i64, 5i64, 7i64, 11i64), (i64::MAX, 3, i64::MIN, 2), (-4, 9, 6, -6)];
        for (x, y, z, w) in cases {
            let got = Int::Small(x).mul_sub(&Int::Small(y), &Int::Small(z), &Int::Small(w));
            let want = BigInt::from(x) * y - BigInt::from(z) * w;
            assert_eq!(got.to_big(), want);
        }
    }

    #[test]
    fn gcd_and_exact_division() {
        assert_eq!(Int::Small(12).gcd(&Int::Small(-18)), Int::Small(6));
        assert_eq!(Int::Small(-18).div_exact(&Int::Small(6)), Int::Small(-3));
        let big = Int::from(BigInt::from(1u64 << 62) * 8);
        assert_eq!(big.gcd(&Int::Small(12)), Int::Small(4));
        assert_eq!(Int::Small(i64::MIN).div_exact(&Int::Small(-1)).to_big(), -BigInt::from(i64::MIN));
    }
}
