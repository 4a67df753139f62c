use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;

/// A loop: a set with a product, a two-sided identity, and unique left and
/// right division.
///
/// `ldiv(a, b)` is `a\b`, the unique `x` with `a·x = b`; `rdiv(a, b)` is
/// `a/b`, the unique `x` with `x·b = a`.
pub trait Loop {
    type Elem: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn ldiv(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn rdiv(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `[a, b] = (ba)\(ab)`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ldiv(&self.mul(b, a), &self.mul(a, b))
    }

    /// `(a, b, c) = (a(bc))\((ab)c)`.
    fn associator(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.ldiv(
            &self.mul(a, &self.mul(b, c)),
            &self.mul(&self.mul(a, b), c),
        )
    }

    /// Evaluates the deviation of level `alphas.len()` directly in the loop.
    ///
    /// Panics if `args.len() != alphas.len() + 3` or an alpha is out of
    /// range; see [`crate::term::eval_deviation`] for the checked version.
    fn deviation(&self, args: &[Self::Elem], alphas: &[u32]) -> Self::Elem {
        assert_eq!(args.len(), alphas.len() + 3, "deviation arity mismatch");
        let Some((&last, prefix)) = alphas.split_last() else {
            return self.associator(&args[0], &args[1], &args[2]);
        };
        let slot = last as usize - 1;
        assert!(slot + 1 < args.len(), "alpha out of range");
        let mut sub = Vec::with_capacity(args.len() - 1);
        let mut inner = |x: Self::Elem| {
            sub.clear();
            sub.extend_from_slice(&args[..slot]);
            sub.push(x);
            sub.extend_from_slice(&args[slot + 2..]);
            self.deviation(&sub, prefix)
        };
        let first = inner(args[slot].clone());
        let second = inner(args[slot + 1].clone());
        let joined = inner(self.mul(&args[slot], &args[slot + 1]));
        self.ldiv(&self.mul(&first, &second), &joined)
    }

    /// Right-normed power `(((y y) y) …) y` with `m` factors; `m = 0` gives
    /// the identity.
    fn power(&self, y: &Self::Elem, m: usize) -> Self::Elem {
        let mut acc = self.identity();
        for _ in 0..m {
            acc = self.mul(&acc, y);
        }
        acc
    }
}

/// The integers under addition, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Loop for Integers {
    type Elem = BigInt;

    fn identity(&self) -> BigInt {
        BigInt::zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn ldiv(&self, a: &BigInt, b: &BigInt) -> BigInt {
        b - a
    }

    fn rdiv(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_divisions() {
        let z = Integers;
        let a = BigInt::from(7);
        let b = BigInt::from(-3);
        assert_eq!(z.mul(&a, &z.ldiv(&a, &b)), b);
        assert_eq!(z.mul(&z.rdiv(&a, &b), &b), a);
        assert!(z.commutator(&a, &b).is_zero());
        assert!(z.associator(&a, &b, &a).is_zero());
    }

    #[test]
    fn power_is_repeated_sum() {
        assert_eq!(Integers.power(&BigInt::from(1), 5), BigInt::from(5));
        assert_eq!(Integers.power(&BigInt::from(4), 0), BigInt::zero());
    }

    #[test]
    fn deviations_vanish_in_integers() {
        let z = Integers;
        let args: Vec<BigInt> = (1..=5).map(BigInt::from).collect();
        assert!(z.deviation(&args, &[1, 4]).is_zero());
        assert!(z.deviation(&args[..4], &[2]).is_zero());
    }
}
