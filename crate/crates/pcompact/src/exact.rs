//! Exact scalar arithmetic: arbitrary-precision rationals, the quadratic
//! extensions Q(i) and Q(omega), p-adic valuations, and modular
//! exponentiation.
//!
//! Everything here is an immutable value; all operations are pure.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;

/// Arbitrary-precision rational, always reduced, denominator positive.
///
/// `num_rational::BigRational` maintains both invariants on construction,
/// so bit-exact comparison against tabulated values is plain equality.
pub type Rational = num_rational::BigRational;

/// Build a rational from an integer pair, reducing as needed.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Parse the `"num/den"` string form (`den` omitted when 1).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Render a rational as `"num/den"`, omitting a denominator of 1.
pub fn rational_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A p-adic valuation: a non-negative (or negative, for rationals) finite
/// exponent, or +infinity for zero.
///
/// Infinity is a distinguished variant, never a sentinel integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PValuation {
    Finite(i64),
    Infinite,
}

impl PValuation {
    pub fn is_finite(self) -> bool {
        matches!(self, PValuation::Finite(_))
    }

    /// The finite value; panics on +infinity.
    pub fn finite(self) -> i64 {
        match self {
            PValuation::Finite(v) => v,
            PValuation::Infinite => panic!("valuation is infinite"),
        }
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }
}

impl Add for PValuation {
    type Output = PValuation;
    fn add(self, other: Self) -> Self {
        match (self, other) {
            (PValuation::Finite(a), PValuation::Finite(b)) => PValuation::Finite(a + b),
            _ => PValuation::Infinite,
        }
    }
}

impl fmt::Display for PValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValuation::Finite(v) => write!(f, "{v}"),
            PValuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer; +infinity for zero.
pub fn valuation_int(x: &BigInt, p: u64) -> PValuation {
    if x.is_zero() {
        return PValuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.abs();
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return PValuation::Finite(v);
        }
        v += 1;
        n = q;
    }
}

/// nu_p of a rational: nu_p(num) - nu_p(den); +infinity iff zero.
pub fn valuation(x: &Rational, p: u64) -> PValuation {
    if x.is_zero() {
        return PValuation::Infinite;
    }
    match (valuation_int(x.numer(), p), valuation_int(x.denom(), p)) {
        (PValuation::Finite(a), PValuation::Finite(b)) => PValuation::Finite(a - b),
        _ => unreachable!("nonzero rational has finite valuations"),
    }
}

/// True when nu_p(x) = 0: numerator and denominator both prime to p.
pub fn is_p_unit(x: &Rational, p: u64) -> bool {
    valuation(x, p) == PValuation::Finite(0)
}

/// `base^exponent mod modulus` by square-and-multiply.
///
/// The exponent may be astronomically large; only its bit length matters.
pub fn pow_mod(base: &BigInt, exponent: &BigUint, modulus: &BigInt) -> BigInt {
    assert!(modulus > &BigInt::one(), "modulus must exceed 1");
    base.modpow(&BigInt::from(exponent.clone()), modulus)
}

/// p^k as a BigInt.
pub fn p_power(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

/// The base field of a [`CycRational`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    /// Plain rationals.
    Q,
    /// Q(i), i^2 = -1.
    Qi,
    /// Q(omega), omega^2 = -1 - omega (primitive cube root of unity).
    Qw,
}

impl Base {
    pub fn label(self) -> &'static str {
        match self {
            Base::Q => "Q",
            Base::Qi => "Qi",
            Base::Qw => "Qw",
        }
    }

    pub fn from_label(s: &str) -> Result<Base, Error> {
        match s {
            "Q" => Ok(Base::Q),
            "Qi" => Ok(Base::Qi),
            "Qw" => Ok(Base::Qw),
            _ => Err(Error::Parse(format!("unknown base field {s:?}"))),
        }
    }
}

/// An element a, a + b*i, or a + b*omega of Q, Q(i), or Q(omega).
///
/// The adjoined element is never squared in the stored form: i^2 rewrites
/// to -1 and omega^2 to -1-omega, so {1, i} / {1, omega} are canonical
/// bases. A value with b = 0 compares equal across compatible bases only
/// after [`CycRational::normalize`]; arithmetic treats plain Q as
/// compatible with either extension, while Q(i) and Q(omega) never mix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycRational {
    pub base: Base,
    pub a: Rational,
    pub b: Rational,
}

impl CycRational {
    pub fn new(base: Base, a: Rational, b: Rational) -> Self {
        let c = CycRational { base, a, b };
        c.normalize()
    }

    /// Canonical form: a value with no imaginary part lives in Q.
    fn normalize(mut self) -> Self {
        if self.b.is_zero() {
            self.base = Base::Q;
            self.b = Rational::zero();
        }
        self
    }

    pub fn from_rational(a: Rational) -> Self {
        CycRational {
            base: Base::Q,
            a,
            b: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// i as an element of Q(i).
    pub fn i() -> Self {
        CycRational {
            base: Base::Qi,
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// omega as an element of Q(omega).
    pub fn omega() -> Self {
        CycRational {
            base: Base::Qw,
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// omega^k for any k, reduced mod 3 (omega^2 stored as -1-omega).
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => CycRational {
                base: Base::Qw,
                a: rat_int(-1),
                b: rat_int(-1),
            },
        }
    }

    /// sqrt(-3) represented as 1 + 2*omega; its square is -3.
    pub fn sqrt_minus_three() -> Self {
        CycRational {
            base: Base::Qw,
            a: rat_int(1),
            b: rat_int(2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, or an error if an imaginary part remains.
    pub fn expect_rational(&self) -> Result<Rational, Error> {
        if self.is_rational() {
            Ok(self.a.clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    fn unify(a: Base, b: Base) -> Result<Base, Error> {
        match (a, b) {
            (Base::Q, x) | (x, Base::Q) => Ok(x),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::MixedBase(x.label(), y.label())),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        let base = Self::unify(self.base, other.base)?;
        Ok(CycRational {
            base,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
        .normalize())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        let base = Self::unify(self.base, other.base)?;
        Ok(CycRational {
            base,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
        .normalize())
    }

    /// Exact product with i^2 = -1 or omega^2 = -1-omega applied.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        let base = Self::unify(self.base, other.base)?;
        let ac = &self.a * &other.a;
        let bd = &self.b * &other.b;
        let cross = &self.a * &other.b + &self.b * &other.a;
        let (a, b) = match base {
            Base::Q => (ac, cross),
            Base::Qi => (ac - bd, cross),
            Base::Qw => (ac - &bd, cross - bd),
        };
        Ok(CycRational { base, a, b }.normalize())
    }

    /// Complex conjugate: i -> -i, omega -> omega^2.
    pub fn conj(&self) -> Self {
        match self.base {
            Base::Q => self.clone(),
            Base::Qi => CycRational {
                base: Base::Qi,
                a: self.a.clone(),
                b: -self.b.clone(),
            }
            .normalize(),
            Base::Qw => CycRational {
                base: Base::Qw,
                a: &self.a - &self.b,
                b: -self.b.clone(),
            }
            .normalize(),
        }
    }

    /// Squared complex modulus z * conj(z); always rational.
    pub fn norm(&self) -> Rational {
        match self.base {
            Base::Q => &self.a * &self.a,
            Base::Qi => &self.a * &self.a + &self.b * &self.b,
            Base::Qw => &self.a * &self.a - &self.a * &self.b + &self.b * &self.b,
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycRational {
            base: c.base,
            a: &c.a / &n,
            b: &c.b / &n,
        }
        .normalize())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycRational {
            base: self.base,
            a: &self.a * r,
            b: &self.b * r,
        }
        .normalize()
    }
}

/// Exact product of two cyclotomic rationals; errors on mixed base fields.
pub fn cyc_mul(x: &CycRational, y: &CycRational) -> Result<CycRational, Error> {
    x.checked_mul(y)
}

// Unchecked operator sugar for contexts where base uniformity is
// structural (matrix rows, lattice vectors). Panics on Qi*Qw mixing.
impl Add for &CycRational {
    type Output = CycRational;
    fn add(self, other: Self) -> CycRational {
        self.checked_add(other).expect("mixed base fields")
    }
}

impl Sub for &CycRational {
    type Output = CycRational;
    fn sub(self, other: Self) -> CycRational {
        self.checked_sub(other).expect("mixed base fields")
    }
}

impl Mul for &CycRational {
    type Output = CycRational;
    fn mul(self, other: Self) -> CycRational {
        self.checked_mul(other).expect("mixed base fields")
    }
}

impl Neg for &CycRational {
    type Output = CycRational;
    fn neg(self) -> CycRational {
        CycRational {
            base: self.base,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CycJson {
    base: String,
    a: String,
    b: String,
}

impl serde::Serialize for CycRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycJson {
            base: self.base.label().to_string(),
            a: rational_string(&self.a),
            b: rational_string(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CycRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        let base = Base::from_label(&raw.base).map_err(serde::de::Error::custom)?;
        let a = parse_rational(&raw.a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&raw.b).map_err(serde::de::Error::custom)?;
        Ok(CycRational::new(base, a, b))
    }
}

impl fmt::Display for CycRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rational_string(&self.a));
        }
        let sym = match self.base {
            Base::Q => unreachable!("normalized Q value has b = 0"),
            Base::Qi => "i",
            Base::Qw => "w",
        };
        if self.a.is_zero() {
            write!(f, "{}*{}", rational_string(&self.b), sym)
        } else {
            write!(
                f,
                "{}+{}*{}",
                rational_string(&self.a),
                rational_string(&self.b),
                sym
            )
        }
    }
}
