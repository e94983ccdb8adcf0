//! The field interface shared by exact rational functions and truncated
//! series, so the Fock-space engine can run over either.

use num_rational::BigRational;

use super::ratfunc::RatFunc;
use super::series::Series;

pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(v.into()))
    }

    fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rat(&BigRational::new(n.into(), d.into()))
    }

    fn to_text(&self) -> String;

    /// `Σ a_k b_k`; fields with expensive normalization override this.
    fn sum_products<'a>(terms: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_rat(r: &BigRational) -> Self {
        RatFunc::from_rat(r)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn to_text(&self) -> String {
        self.to_canonical_string()
    }
}

impl Scalar for Series {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::one()
    }
    fn from_rat(r: &BigRational) -> Self {
        Series::constant(RatFunc::from_rat(r))
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Series::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
}
