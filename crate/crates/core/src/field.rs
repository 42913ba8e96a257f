//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`], a thin extension of the
//! `num-traits` arithmetic traits. Two implementations are provided: the
//! rationals ([`Q`], arbitrary precision) and a prime field [`Fp`] whose modulus
//! is chosen at run time.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rationals.
pub type Q = BigRational;

/// Exact field arithmetic.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    /// Image of a rational number, `None` when the denominator vanishes.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn characteristic() -> u64;

    /// Short label used in reports, e.g. `Q` or `Fp 32003`.
    fn label() -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers always embed")
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn characteristic() -> u64 {
        0
    }

    fn label() -> String {
        "Q".to_string()
    }
}

/// Default prime for the fast mode.
pub const DEFAULT_PRIME: u64 = 32003;

static MODULUS: AtomicU64 = AtomicU64::new(DEFAULT_PRIME);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModulusError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    TooLarge(u64),
}

/// Element of the prime field `F_p`, with `p` shared process-wide.
///
/// The modulus is a global setting (default [`DEFAULT_PRIME`]); a process works
/// in one characteristic at a time. Values are always kept reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub fn modulus() -> u64 {
        MODULUS.load(Ordering::Relaxed)
    }

    /// Selects the characteristic for all subsequent `Fp` arithmetic.
    pub fn set_modulus(p: u64) -> Result<(), ModulusError> {
        if p >= 1 << 31 {
            return Err(ModulusError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(ModulusError::NotPrime(p));
        }
        MODULUS.store(p, Ordering::Relaxed);
        Ok(())
    }

    pub fn new(v: i64) -> Self {
        let p = Self::modulus() as i64;
        Fp(v.rem_euclid(p) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let p = Self::modulus();
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print the symmetric representative so signs stay readable.
        let p = Self::modulus();
        if self.0 > p / 2 {
            write!(f, "-{}", p - self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        Fp((self.0 + rhs.0) % Self::modulus())
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = Self::modulus();
        Fp((self.0 + p - rhs.0) % p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(self.0 * rhs.0 % Self::modulus())
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        assert!(rhs.0 != 0, "division by zero in F_p");
        self * rhs.pow(Self::modulus() - 2)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(Self::modulus() - self.0)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1 % Self::modulus())
    }
}

impl Field for Fp {
    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(Self::modulus());
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(Fp(num) / Fp(den))
    }

    fn characteristic() -> u64 {
        Self::modulus()
    }

    fn label() -> String {
        format!("Fp {}", Self::modulus())
    }
}

/// Parses `3`, `-2`, `3/4` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}
