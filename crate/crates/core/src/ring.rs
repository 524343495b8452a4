//! Arithmetic in `Z/2^k Z` on unsigned machine words.
//!
//! Reduction modulo a power of two is a mask, so every operation is a
//! wrapping machine operation followed by `& mask`. The word type only has to
//! be wide enough to hold `2^k - 1`.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned, WrappingAdd, WrappingMul, WrappingNeg, WrappingSub};

use crate::error::SmithError;

/// Unsigned word usable as a residue modulo `2^k`.
pub trait Word:
    PrimInt
    + Unsigned
    + WrappingAdd
    + WrappingSub
    + WrappingMul
    + WrappingNeg
    + Hash
    + Debug
    + Default
    + Send
    + Sync
    + 'static
{
    const BITS: u32;
}

macro_rules! word {
    ($($t:ty),*) => {$(
        impl Word for $t {
            const BITS: u32 = <$t>::BITS;
        }
    )*};
}
word!(u8, u16, u32, u64, u128);

/// The ring `Z/2^k Z` with elements stored in `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mod2k<W> {
    bits: u32,
    mask: W,
}

impl<W: Word> Mod2k<W> {
    pub fn new(bits: u32) -> Result<Self, SmithError> {
        if bits > W::BITS || bits == 0 {
            return Err(SmithError::ModulusTooWide { bits, width: W::BITS });
        }
        let mask = if bits == W::BITS { W::max_value() } else { (W::one() << bits as usize) - W::one() };
        Ok(Mod2k { bits, mask })
    }

    /// `k` in `2^k`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn modulus(&self) -> u128 {
        1u128 << self.bits
    }

    #[inline]
    pub fn reduce(&self, x: W) -> W {
        x & self.mask
    }

    pub fn from_i64(&self, x: i64) -> W {
        let m = self.modulus() as i128;
        let r = (x as i128).rem_euclid(m) as u128;
        W::from(r).expect("residue fits in the word")
    }

    pub fn to_u64(&self, x: W) -> u64 {
        x.to_u64().expect("residue fits in u64")
    }

    #[inline]
    pub fn add(&self, a: W, b: W) -> W {
        a.wrapping_add(&b) & self.mask
    }

    #[inline]
    pub fn sub(&self, a: W, b: W) -> W {
        a.wrapping_sub(&b) & self.mask
    }

    #[inline]
    pub fn mul(&self, a: W, b: W) -> W {
        a.wrapping_mul(&b) & self.mask
    }

    #[inline]
    pub fn neg(&self, a: W) -> W {
        a.wrapping_neg() & self.mask
    }

    /// 2-adic valuation, with `k` for zero.
    #[inline]
    pub fn valuation(&self, a: W) -> u32 {
        if a.is_zero() {
            self.bits
        } else {
            a.trailing_zeros()
        }
    }

    #[inline]
    pub fn is_unit(&self, a: W) -> bool {
        a & W::one() == W::one()
    }

    /// Inverse of an odd residue by Newton iteration; each step doubles the correct bits.
    pub fn inv_unit(&self, a: W) -> W {
        debug_assert!(self.is_unit(a));
        let two = W::one() + W::one();
        let mut x = a; // correct to 3 bits for odd a
        let mut good = 3;
        while good < self.bits {
            x = x.wrapping_mul(&two.wrapping_sub(&a.wrapping_mul(&x)));
            good *= 2;
        }
        self.reduce(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_inverse<W: Word>(bits: u32) {
        let r = Mod2k::<W>::new(bits).unwrap();
        let odd = (0..200u64).map(|i| 2 * i + 1).chain([u64::MAX, u64::MAX - 2, 0x9e37_79b9_7f4a_7c15]);
        for v in odd {
            let x = r.reduce(W::from(v as u128 & W::max_value().to_u128().unwrap()).unwrap());
            assert_eq!(r.mul(x, r.inv_unit(x)), W::one(), "{x:?} mod 2^{bits}");
        }
    }

    #[test]
    fn inverses() {
        for bits in 1..=8 {
            check_inverse::<u8>(bits);
        }
        check_inverse::<u16>(13);
        check_inverse::<u32>(31);
        check_inverse::<u64>(64);
        check_inverse::<u128>(100);
    }

    #[test]
    fn reduction_of_signed() {
        let r = Mod2k::<u8>::new(3).unwrap();
        assert_eq!(r.from_i64(-1), 7);
        assert_eq!(r.from_i64(-9), 7);
        assert_eq!(r.from_i64(10), 2);
        assert_eq!(r.neg(2), 6);
        assert_eq!(r.valuation(4), 2);
        assert_eq!(r.valuation(0), 3);
    }

    #[test]
    fn rejects_wide_modulus() {
        assert!(Mod2k::<u8>::new(9).is_err());
        assert!(Mod2k::<u8>::new(0).is_err());
        assert!(Mod2k::<u8>::new(8).is_ok());
    }
}
