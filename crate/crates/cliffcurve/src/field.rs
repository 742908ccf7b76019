//! Exact field scalars: arbitrary-precision rationals and prime fields F_p.
//!
//! Every computation in this crate is exact. A [`Scalar`] is either a
//! `BigRational` (characteristic zero) or a residue modulo a prime `p`.
//! Scalars of different characteristics never mix; combining them is a
//! programming error and panics, while fallible entry points such as
//! matrix construction surface it as [`Error::CharMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Field characteristic tag. `Prime(p)` requires `p` prime; this is the
/// caller's responsibility and is validated by the CLI layer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Char {
    Zero,
    Prime(u64),
}

impl Char {
    pub fn is_prime(self) -> bool {
        matches!(self, Char::Prime(_))
    }

    /// The modulus, if finite.
    pub fn modulus(self) -> Option<u64> {
        match self {
            Char::Zero => None,
            Char::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self)
    }

    pub fn scalar_from(self, n: i64) -> Scalar {
        Scalar::from_i64(self, n)
    }

    /// True when `n` maps to zero in this field (used for the `char ∤ n` guards).
    pub fn divides(self, n: u64) -> bool {
        match self {
            Char::Zero => false,
            Char::Prime(p) => n % p == 0,
        }
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Char::Zero => write!(f, "0"),
            Char::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An exact field element over Q or F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn characteristic(&self) -> Char {
        match self {
            Scalar::Rat(_) => Char::Zero,
            Scalar::Mod { p, .. } => Char::Prime(*p),
        }
    }

    pub fn zero(ch: Char) -> Self {
        match ch {
            Char::Zero => Scalar::Rat(BigRational::zero()),
            Char::Prime(p) => Scalar::Mod { v: 0, p },
        }
    }

    pub fn one(ch: Char) -> Self {
        match ch {
            Char::Zero => Scalar::Rat(BigRational::one()),
            Char::Prime(p) => Scalar::Mod { v: 1 % p, p },
        }
    }

    pub fn from_i64(ch: Char, n: i64) -> Self {
        match ch {
            Char::Zero => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Char::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { v: r, p }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, p } => *v == 1 % p,
        }
    }

    /// Multiplicative inverse. Division by zero is an error, never a
    /// NaN-like value.
    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: mod_pow(*v, *p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.characteristic());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `self^e` for signed exponents; negative exponents invert first.
    pub fn pow_i(&self, e: i64) -> Result<Scalar, Error> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow((-e) as u64))
        }
    }

    /// Residue value in `[0, p)`; only meaningful over F_p.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Mod { v, .. } => Some(*v),
        }
    }

    fn assert_same_char(&self, other: &Scalar) {
        assert_eq!(
            self.characteristic(),
            other.characteristic(),
            "scalars of different characteristics never mix"
        );
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.assert_same_char(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => {
                Scalar::Mod { v: (a + b) % p, p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.assert_same_char(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: (a + p - b) % p,
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.assert_same_char(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => Scalar::Mod {
                v: mod_mul(a, b, p),
                p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: (p - v) % p, p },
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self + rhs.clone()
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self * rhs.clone()
    }
}

fn fmt_scalar(s: &Scalar, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match s {
        Scalar::Rat(r) => {
            if r.is_integer() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
        Scalar::Mod { v, .. } => write!(f, "{v}"),
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_scalar(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_scalar(self, f)
    }
}

/// Exact integer payload of a rational scalar, when it is an integer.
pub fn as_bigint(s: &Scalar) -> Option<BigInt> {
    match s {
        Scalar::Rat(r) if r.is_integer() => Some(r.numer().clone()),
        _ => None,
    }
}

/// Signed magnitude hint used only for display ordering; exactness is not
/// affected.
pub fn is_negative_rat(s: &Scalar) -> bool {
    matches!(s, Scalar::Rat(r) if r.is_negative())
}
