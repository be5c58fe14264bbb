use std::fmt;

/// Maximum number of variables in a ring.
pub const MAX_VARS: usize = 15;

/// Maximum total degree of a monomial.
pub const MAX_DEGREE: u32 = 255;

// Byte 15 holds the total degree, bytes 14..0 the exponents of variables 0..14.
// Integer order on the packed word is then graded lex with x1 > x2 > ... .
const CARRY_MASK: u128 = {
    let mut m = 0u128;
    let mut i = 1;
    while i < 16 {
        m |= 1u128 << (8 * i);
        i += 1;
    }
    m
};

/// A monomial in at most [`MAX_VARS`] variables, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

#[inline]
fn shift(i: usize) -> u32 {
    debug_assert!(i < MAX_VARS);
    8 * (14 - i as u32)
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// Panics if an exponent or the total degree exceeds [`MAX_DEGREE`].
    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m = m.with_exp(i, e);
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        Monomial::ONE.with_exp(i, 1)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> 120) as u32
    }

    /// Replace the exponent of variable `i`.
    pub fn with_exp(self, i: usize, e: u32) -> Monomial {
        let old = self.exp(i);
        let deg = self.degree() - old + e;
        assert!(e <= MAX_DEGREE && deg <= MAX_DEGREE, "monomial degree overflow");
        let mut w = self.0 & !(0xffu128 << shift(i)) & !(0xffu128 << 120);
        w |= (e as u128) << shift(i);
        w |= (deg as u128) << 120;
        Monomial(w)
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    /// Product, or `None` on exponent overflow.
    #[inline]
    pub fn checked_mul(self, o: Monomial) -> Option<Monomial> {
        let (s, of) = self.0.overflowing_add(o.0);
        if of || (self.0 ^ o.0 ^ s) & CARRY_MASK != 0 {
            return None;
        }
        Some(Monomial(s))
    }

    /// Quotient `self / o`, or `None` if `o` does not divide `self`.
    #[inline]
    pub fn checked_div(self, o: Monomial) -> Option<Monomial> {
        let (s, of) = self.0.overflowing_sub(o.0);
        if of || (self.0 ^ o.0 ^ s) & CARRY_MASK != 0 {
            return None;
        }
        Some(Monomial(s))
    }

    pub fn divides(self, o: Monomial) -> bool {
        o.checked_div(self).is_some()
    }

    pub fn swap(self, i: usize, j: usize) -> Monomial {
        if i == j {
            return self;
        }
        let (a, b) = (self.exp(i), self.exp(j));
        self.with_exp(i, b).with_exp(j, a)
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        self.checked_mul(o).expect("monomial degree overflow")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (0..MAX_VARS).rev().find(|&i| self.exp(i) > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", self.exponents(n))
    }
}
