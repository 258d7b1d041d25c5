//! Minimal coefficient-ring abstraction so the covariant formulas can run
//! both over a field and over dual numbers `k[eps]/(eps^2)` (the derivative
//! oracle used in tests and consistency checks).

use crate::field::{Fe, Fq};

pub trait Ring {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn from_ratio(&self, num: i64, den: i64) -> Self::El;
    fn mul_i64(&self, a: &Self::El, m: i64) -> Self::El {
        self.mul(a, &self.from_ratio(m, 1))
    }
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
}

impl Ring for Fq {
    type El = Fe;
    fn zero(&self) -> Fe {
        Fq::zero(self)
    }
    fn one(&self) -> Fe {
        Fq::one(self)
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Fq::add(self, a, b)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        Fq::sub(self, a, b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        Fq::neg(self, a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Fq::mul(self, a, b)
    }
    fn inv(&self, a: &Fe) -> Fe {
        Fq::inv(self, a)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Fe {
        Fq::from_ratio(self, num, den)
    }
}

/// Dual numbers `a + b eps` over a field, `eps^2 = 0`.
#[derive(Clone)]
pub struct Duals {
    pub f: Fq,
}

pub type Dual = (Fe, Fe);

impl Ring for Duals {
    type El = Dual;
    fn zero(&self) -> Dual {
        (self.f.zero(), self.f.zero())
    }
    fn one(&self) -> Dual {
        (self.f.one(), self.f.zero())
    }
    fn add(&self, a: &Dual, b: &Dual) -> Dual {
        (self.f.add(&a.0, &b.0), self.f.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Dual, b: &Dual) -> Dual {
        (self.f.sub(&a.0, &b.0), self.f.sub(&a.1, &b.1))
    }
    fn neg(&self, a: &Dual) -> Dual {
        (self.f.neg(&a.0), self.f.neg(&a.1))
    }
    fn mul(&self, a: &Dual, b: &Dual) -> Dual {
        (
            self.f.mul(&a.0, &b.0),
            self.f.add(&self.f.mul(&a.0, &b.1), &self.f.mul(&a.1, &b.0)),
        )
    }
    fn inv(&self, a: &Dual) -> Dual {
        let i = self.f.inv(&a.0);
        let di = self.f.neg(&self.f.mul(&a.1, &self.f.square(&i)));
        (i, di)
    }
    fn from_ratio(&self, num: i64, den: i64) -> Dual {
        (self.f.from_ratio(num, den), self.f.zero())
    }
}

impl Duals {
    pub fn lift(&self, a: &Fe) -> Dual {
        (a.clone(), self.f.zero())
    }

    pub fn variable(&self, a: &Fe) -> Dual {
        (a.clone(), self.f.one())
    }
}
