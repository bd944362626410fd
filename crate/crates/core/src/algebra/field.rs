//! Binary extension fields GF(2^m) backed by log/exp tables.

use std::fmt;

use super::AlgebraError;

/// An element of GF(2^m), stored as its polynomial-basis bit pattern.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

/// Conventional primitive polynomials, indexed by extension degree.
const DEFAULT_PRIM_POLYS: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// GF(2^m) with α = x (the element with value 2).
///
/// Tables are built once and never mutated, so a `Field` can be shared freely
/// between threads.
#[derive(Clone)]
pub struct Field {
    m: u32,
    prim_poly: u32,
    // exp has length 2(q-1) so products of two logs index without reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("prim_poly", &format_args!("{:#x}", self.prim_poly))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.prim_poly == other.prim_poly
    }
}

impl Eq for Field {}

impl Field {
    /// Build GF(2^m) from a primitive polynomial given as a bit mask
    /// (bit `m` must be set).
    pub fn new(m: u32, prim_poly: u32) -> Result<Field, AlgebraError> {
        if !(2..=16).contains(&m) {
            return Err(AlgebraError::UnsupportedDegree(m));
        }
        if prim_poly >> m != 1 {
            return Err(AlgebraError::NotPrimitive { m, poly: prim_poly });
        }
        let q = 1u32 << m;
        let order = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut seen = vec![false; q as usize];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            if seen[x as usize] || x == 0 {
                // alpha has order smaller than q-1: the polynomial is not primitive
                return Err(AlgebraError::NotPrimitive { m, poly: prim_poly });
            }
            seen[x as usize] = true;
            *slot = x as u16;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & q != 0 {
                x ^= prim_poly;
            }
        }
        if x != 1 {
            return Err(AlgebraError::NotPrimitive { m, poly: prim_poly });
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Field { m, prim_poly, exp, log })
    }

    /// GF(2^m) with the conventional primitive polynomial for `m`.
    pub fn with_default_poly(m: u32) -> Result<Field, AlgebraError> {
        let poly = *DEFAULT_PRIM_POLYS
            .get(m as usize)
            .ok_or(AlgebraError::UnsupportedDegree(m))?;
        Field::new(m, poly)
    }

    pub fn default_prim_poly(m: u32) -> Option<u32> {
        DEFAULT_PRIM_POLYS.get(m as usize).copied().filter(|&p| p != 0)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn prim_poly(&self) -> u32 {
        self.prim_poly
    }

    /// Field size q = 2^m.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.m
    }

    /// Multiplicative group order q - 1.
    #[inline]
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    /// All field elements in value order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.size() as u32).map(|v| Gf(v as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.size() as u32).map(|v| Gf(v as u16))
    }

    /// Map an integer onto the field, reducing into range.
    #[inline]
    pub fn elem(&self, v: u32) -> Gf {
        Gf((v & (self.size() as u32 - 1)) as u16)
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Gf(self.exp[s as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf, AlgebraError> {
        if a.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(Gf(self.exp[(self.order() - l) % self.order()]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; `0^e` is 0 for e > 0 and 1 for e = 0.
    pub fn pow(&self, a: Gf, e: i64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let ord = self.order() as i64;
        let l = self.log[a.0 as usize] as i64;
        Gf(self.exp[(l * e).rem_euclid(ord) as usize])
    }

    /// α^e, e taken modulo q - 1.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> Gf {
        Gf(self.exp[e.rem_euclid(self.order() as i64) as usize])
    }

    /// a·α^e for e < 2(q - 1).
    #[inline]
    pub(crate) fn mul_alpha_pow(&self, a: Gf, e: usize) -> Gf {
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let s = (self.log[a.0 as usize] as usize + e) % self.order();
        Gf(self.exp[s])
    }

    /// Discrete log base α, `None` for zero.
    #[inline]
    pub fn log(&self, a: Gf) -> Option<usize> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as usize)
    }

    /// The unique square root, a^(2^(m-1)).
    pub fn sqrt(&self, a: Gf) -> Gf {
        if a.0 == 0 {
            return a;
        }
        let l = self.log[a.0 as usize] as usize;
        // halve the log modulo the odd group order
        let half = if l.is_multiple_of(2) { l / 2 } else { (l + self.order()) / 2 };
        Gf(self.exp[half])
    }

    #[inline]
    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }
}

/// Carry-less multiply then reduce modulo `prim_poly`; independent of the tables.
pub fn clmul_reduce(a: u32, b: u32, m: u32, prim_poly: u32) -> u32 {
    let mut acc: u64 = 0;
    for bit in 0..32 {
        if (b >> bit) & 1 == 1 {
            acc ^= (a as u64) << bit;
        }
    }
    for bit in (m as u64..64).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= (prim_poly as u64) << (bit - m as u64);
        }
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_examples() {
        let f = Field::new(3, 0xB).unwrap();
        assert_eq!(f.mul(Gf(0), Gf(5)), Gf(0));
        assert_eq!(f.mul(Gf(1), Gf(6)), Gf(6));
        // alpha * alpha^2 = alpha^3 = alpha + 1
        assert_eq!(clmul_reduce(2, 4, 3, 0xB), 3);
        assert_eq!(f.mul(Gf(2), Gf(4)), Gf(3));
        assert_eq!(f.inv(Gf(1)).unwrap(), Gf(1));
        let brute = (1..8).find(|&b| clmul_reduce(2, b, 3, 0xB) == 1).unwrap();
        assert_eq!(brute, 5);
        assert_eq!(f.inv(Gf(2)).unwrap(), Gf(5));
        assert_eq!(f.inv(Gf(0)), Err(AlgebraError::DivisionByZero));
        assert_eq!(f.sqrt(Gf(0)), Gf(0));
        assert_eq!(f.sqrt(Gf(1)), Gf(1));
        assert_eq!(f.sqrt(Gf(4)), Gf(2));
    }

    #[test]
    fn rejects_non_primitive() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        assert!(matches!(
            Field::new(4, 0x1F),
            Err(AlgebraError::NotPrimitive { .. })
        ));
        assert!(Field::new(1, 0x3).is_err());
        for m in 2..=16 {
            Field::with_default_poly(m).unwrap();
        }
    }

    #[test]
    fn gf256_inverses_and_generator() {
        let f = Field::with_default_poly(8).unwrap();
        for a in f.nonzero_elements() {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Gf::ONE);
        }
        assert_eq!(f.alpha_pow(255), Gf::ONE);
        for j in 1..255 {
            assert_ne!(f.alpha_pow(j), Gf::ONE);
        }
        assert_eq!(f.alpha_pow(1), Gf(2));
    }

    #[test]
    fn sqrt_exhaustive_gf16() {
        let f = Field::with_default_poly(4).unwrap();
        for a in f.elements() {
            let s = f.sqrt(a);
            assert_eq!(f.square(s), a);
        }
    }

    #[test]
    fn pow_negative() {
        let f = Field::with_default_poly(4).unwrap();
        let a = Gf(7);
        assert_eq!(f.mul(f.pow(a, -3), f.pow(a, 3)), Gf::ONE);
        assert_eq!(f.alpha_pow(-1), f.inv(Gf(2)).unwrap());
    }
}
