use core::fmt::Debug;

use super::jet::Jet;
use super::rat::Rat;

/// Field-like scalar the matrix kernel and the pipelines are generic over.
///
/// `is_pivot` decides which entries elimination may divide by. For exact
/// rationals that is any nonzero value; for jets it is a nonzero value part.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn is_pivot(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn recip(&self) -> Option<Self>;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_pivot(&self) -> bool {
        !Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        Rat::recip(self)
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::constant(Rat::zero())
    }
    fn one() -> Self {
        Jet::constant(Rat::one())
    }
    fn from_rat(r: Rat) -> Self {
        Jet::constant(r)
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }
    fn is_pivot(&self) -> bool {
        !self.value.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Jet::new(&self.value + &rhs.value, &self.deriv + &rhs.deriv)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Jet::new(&self.value - &rhs.value, &self.deriv - &rhs.deriv)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Jet::new(
            &self.value * &rhs.value,
            &(&self.value * &rhs.deriv) + &(&self.deriv * &rhs.value),
        )
    }
    fn neg(&self) -> Self {
        Jet::new(-&self.value, -&self.deriv)
    }
    fn recip(&self) -> Option<Self> {
        let inv = self.value.recip()?;
        let deriv = -&(&self.deriv * &(&inv * &inv));
        Some(Jet::new(inv, deriv))
    }
}
