//! Exact scalars: rationals and residues modulo a prime.
//!
//! Rationals use an `i64` fast path and fall back to big integers on overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 62;

/// A field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// GF(p), checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if !(p < MAX_PRIME && is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn is_rationals(self) -> bool {
        self == FieldSpec::Rationals
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self)
    }

    /// Image of an integer under the canonical map from Z.
    pub fn reduce_integer(self, n: i64) -> Scalar {
        Scalar::from_i64(n, self)
    }

    pub fn reduce_bigint(self, n: &BigInt) -> Scalar {
        Scalar::from_bigint(n, self)
    }

    /// All elements, for a prime field.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(|v| Scalar(Repr::Fp { v, p })).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `GF(p)`, `GF p` or `F_p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" || t == "ℚ" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else if let Some(rest) = t.strip_prefix("GF") {
            rest
        } else if let Some(rest) = t.strip_prefix("F_") {
            rest
        } else {
            return Err(Error::Parse(format!("unknown field '{t}'")));
        };
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field '{t}'")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(Rat),
    Fp { v: u64, p: u64 },
}

/// An element of a [`FieldSpec`].
///
/// Arithmetic through the operator traits panics when the fields differ;
/// the `try_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn big_of(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn rat_from_big(b: BigRational) -> Rat {
    match (b.numer().to_i64(), b.denom().to_i64()) {
        (Some(n), Some(d)) => Rat::Small(Ratio::new_raw(n, d)),
        _ => Rat::Big(Box::new(b)),
    }
}

impl Rat {
    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(r) => big_of(r),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.numer() == &0,
            Rat::Big(b) => b.is_zero(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if *a.denom() == 1 && *b.denom() == 1 {
                if let Some(s) = i64::checked_add(*a.numer(), *b.numer()) {
                    return Rat::Small(Ratio::new_raw(s, 1));
                }
            } else if let Some(s) = a.checked_add(b) {
                return Rat::Small(s);
            }
        }
        rat_from_big(self.to_big() + o.to_big())
    }

    fn sub(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if *a.denom() == 1 && *b.denom() == 1 {
                if let Some(s) = i64::checked_sub(*a.numer(), *b.numer()) {
                    return Rat::Small(Ratio::new_raw(s, 1));
                }
            } else if let Some(s) = a.checked_sub(b) {
                return Rat::Small(s);
            }
        }
        rat_from_big(self.to_big() - o.to_big())
    }

    fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::Small(a), Rat::Small(b)) = (self, o) {
            if *a.denom() == 1 && *b.denom() == 1 {
                if let Some(s) = i64::checked_mul(*a.numer(), *b.numer()) {
                    return Rat::Small(Ratio::new_raw(s, 1));
                }
            } else if let Some(s) = a.checked_mul(b) {
                return Rat::Small(s);
            }
        }
        rat_from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(a) if *a.numer() != i64::MIN => Rat::Small(-*a),
            _ => rat_from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Rat {
        match self {
            Rat::Small(a) if *a.numer() != i64::MIN => Rat::Small(a.recip()),
            _ => rat_from_big(self.to_big().recip()),
        }
    }
}

fn fp_inv(v: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, v as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

#[inline]
fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

impl Scalar {
    pub fn zero(f: FieldSpec) -> Scalar {
        Scalar::from_i64(0, f)
    }

    pub fn one(f: FieldSpec) -> Scalar {
        Scalar::from_i64(1, f)
    }

    pub fn from_i64(n: i64, f: FieldSpec) -> Scalar {
        match f {
            FieldSpec::Rationals => Scalar(Repr::Q(Rat::Small(Ratio::new_raw(n, 1)))),
            FieldSpec::Prime(p) => Scalar(Repr::Fp {
                v: (n as i128).rem_euclid(p as i128) as u64,
                p,
            }),
        }
    }

    pub fn from_bigint(n: &BigInt, f: FieldSpec) -> Scalar {
        match f {
            FieldSpec::Rationals => Scalar(Repr::Q(rat_from_big(BigRational::from_integer(n.clone())))),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar(Repr::Fp { v: r.to_u64().unwrap(), p })
            }
        }
    }

    /// The image of `num/den`; fails if `den` vanishes in the field.
    pub fn from_ratio(num: i64, den: i64, f: FieldSpec) -> Result<Scalar> {
        Scalar::from_i64(num, f).try_div(&Scalar::from_i64(den, f))
    }

    pub fn from_big_rational(r: &BigRational, f: FieldSpec) -> Result<Scalar> {
        Scalar::from_bigint(r.numer(), f).try_div(&Scalar::from_bigint(r.denom(), f))
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Q(_) => FieldSpec::Rationals,
            Repr::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(r) => r.is_zero(),
            Repr::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(Rat::Small(r)) => *r.numer() == 1 && *r.denom() == 1,
            Repr::Q(Rat::Big(_)) => false,
            Repr::Fp { v, .. } => *v == 1,
        }
    }

    /// The rational value, if this is a rational.
    pub fn to_big_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Q(r) => Some(r.to_big()),
            Repr::Fp { .. } => None,
        }
    }

    /// The residue in `[0, p)`, if this is a prime-field element.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Fp { v, .. } => Some(*v),
            Repr::Q(_) => None,
        }
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Q(Rat::Small(r)) if *r.denom() == 1 => Some(*r.numer()),
            _ => None,
        }
    }

    /// Reduce a rational into `f`; fails if a denominator is not invertible there.
    pub fn reduce_into(&self, f: FieldSpec) -> Result<Scalar> {
        match (&self.0, f) {
            (_, g) if g == self.field() => Ok(self.clone()),
            (Repr::Q(r), _) => Scalar::from_big_rational(&r.to_big(), f),
            _ => Err(mismatch(self.field(), f)),
        }
    }

    fn check(&self, o: &Scalar) -> Result<()> {
        if self.field() != o.field() {
            return Err(mismatch(self.field(), o.field()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        Ok(self.sub_unchecked(o))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Q(r) => Scalar(Repr::Q(r.inv())),
            Repr::Fp { v, p } => Scalar(Repr::Fp { v: fp_inv(*v, *p), p: *p }),
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    fn add_unchecked(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a.add(b))),
            (Repr::Fp { v, p }, Repr::Fp { v: w, .. }) => {
                let s = v + w;
                Scalar(Repr::Fp { v: if s >= *p { s - p } else { s }, p: *p })
            }
            _ => panic!("{}", mismatch(self.field(), o.field())),
        }
    }

    fn sub_unchecked(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a.sub(b))),
            (Repr::Fp { v, p }, Repr::Fp { v: w, .. }) => Scalar(Repr::Fp {
                v: if v >= w { v - w } else { v + p - w },
                p: *p,
            }),
            _ => panic!("{}", mismatch(self.field(), o.field())),
        }
    }

    fn mul_unchecked(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a.mul(b))),
            (Repr::Fp { v, p }, Repr::Fp { v: w, .. }) => Scalar(Repr::Fp { v: fp_mul(*v, *w, *p), p: *p }),
            _ => panic!("{}", mismatch(self.field(), o.field())),
        }
    }

    /// `self += a * b` without intermediate clones where possible.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if let (Repr::Fp { v, p }, Repr::Fp { v: x, .. }, Repr::Fp { v: y, .. }) = (&mut self.0, &a.0, &b.0) {
            let s = *v + fp_mul(*x, *y, *p);
            *v = if s >= *p { s - *p } else { s };
            return;
        }
        *self = self.add_unchecked(&a.mul_unchecked(b));
    }

    /// Parse a decimal integer or fraction `a/b` into `f`.
    pub fn parse(s: &str, f: FieldSpec) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad number '{t}'")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let (n, d) = (parse_int(n)?, parse_int(d)?);
                Scalar::from_bigint(&n, f).try_div(&Scalar::from_bigint(&d, f))
            }
            None => Ok(Scalar::from_bigint(&parse_int(s)?, f)),
        }
    }

    /// True when rendering would start with a minus sign.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Q(Rat::Small(r)) => *r.numer() < 0,
            Repr::Q(Rat::Big(b)) => b.is_negative(),
            Repr::Fp { .. } => false,
        }
    }
}

fn mismatch(a: FieldSpec, b: FieldSpec) -> Error {
    Error::FieldMismatch(a.to_string(), b.to_string())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(Rat::Small(r)) => write!(f, "{r}"),
            Repr::Q(Rat::Big(b)) => write!(f, "{b}"),
            Repr::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(_) => write!(f, "{self}"),
            Repr::Fp { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident, $atr:ident, $am:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $atr<&Scalar> for Scalar {
            fn $am(&mut self, o: &Scalar) {
                *self = self.$imp(o);
            }
        }
    };
}

binop!(Add, add, add_unchecked, AddAssign, add_assign);
binop!(Sub, sub, sub_unchecked, SubAssign, sub_assign);
binop!(Mul, mul, mul_unchecked, MulAssign, mul_assign);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(r) => Scalar(Repr::Q(r.neg())),
            Repr::Fp { v, p } => Scalar(Repr::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
