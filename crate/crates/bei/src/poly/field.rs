use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field: exact rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldMode {
    Q,
    Fp(u32),
}

impl FieldMode {
    pub const DEFAULT_PRIME: u32 = 32003;

    pub fn zero(&self) -> Coeff {
        match self {
            FieldMode::Q => Coeff::Q(BigRational::zero()),
            FieldMode::Fp(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldMode::Q => Coeff::Q(BigRational::one()),
            FieldMode::Fp(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldMode::Q => Coeff::Q(BigRational::from(BigInt::from(v))),
            FieldMode::Fp(p) => {
                let p = *p as i64;
                Coeff::Fp(v.rem_euclid(p) as u64)
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldMode::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (FieldMode::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y) % *p as u64),
            _ => panic!("coefficient does not match field mode"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldMode::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x - y),
            (FieldMode::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                let p = *p as u64;
                Coeff::Fp((x + p - y) % p)
            }
            _ => panic!("coefficient does not match field mode"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldMode::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (FieldMode::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(x * y % *p as u64),
            _ => panic!("coefficient does not match field mode"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldMode::Q, Coeff::Q(x)) => Coeff::Q(-x),
            (FieldMode::Fp(p), Coeff::Fp(x)) => {
                let p = *p as u64;
                Coeff::Fp((p - x) % p)
            }
            _ => panic!("coefficient does not match field mode"),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldMode::Q, Coeff::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Q(x.recip())
            }
            (FieldMode::Fp(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(pow_mod(*x, *p as u64 - 2, *p as u64))
            }
            _ => panic!("coefficient does not match field mode"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(x) => x.is_zero(),
            Coeff::Fp(x) => *x == 0,
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Q => write!(f, "Q"),
            FieldMode::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; prime-field values are canonical representatives in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
}

impl Coeff {
    /// Render without a sign; the caller decides how to print `-`.
    pub fn abs_string(&self) -> String {
        match self {
            Coeff::Q(x) => {
                let a = x.abs();
                if a.denom().is_one() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
            Coeff::Fp(x) => x.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_negative(),
            Coeff::Fp(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_one(),
            Coeff::Fp(x) => *x == 1,
        }
    }
}
