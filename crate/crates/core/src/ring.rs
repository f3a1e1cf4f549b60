//! The coefficient-ring abstraction shared by matrices, series and the
//! Gauss decomposition. Multiplication need not be commutative.

use crate::poly::Poly;
use crate::scalars::Scalar;
use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    /// Two-sided inverse when it exists.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Rings carrying an action of the scalar field.
pub trait Algebra: Ring {
    fn scale(&self, c: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Scalar {
        Scalar::zero()
    }
    fn one_like(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn radd(&self, o: &Scalar) -> Scalar {
        self.add(o)
    }
    fn rsub(&self, o: &Scalar) -> Scalar {
        self.sub(o)
    }
    fn rmul(&self, o: &Scalar) -> Scalar {
        self.mul(o)
    }
    fn rneg(&self) -> Scalar {
        self.neg()
    }
    fn try_inv(&self) -> Option<Scalar> {
        self.inv().ok()
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl Algebra for Scalar {
    fn scale(&self, c: &Scalar) -> Scalar {
        self.mul(c)
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Poly {
        Poly::zero()
    }
    fn one_like(&self) -> Poly {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn radd(&self, o: &Poly) -> Poly {
        self.add(o)
    }
    fn rsub(&self, o: &Poly) -> Poly {
        self.sub(o)
    }
    fn rmul(&self, o: &Poly) -> Poly {
        self.mul(o)
    }
    fn rneg(&self) -> Poly {
        self.neg()
    }
    fn try_inv(&self) -> Option<Poly> {
        if self.is_one() || *self == Poly::int(-1) {
            Some(self.clone())
        } else {
            None
        }
    }
}
