//! Reduced fractions of univariate polynomials, and the even/odd split
//! `X(u) + v·Y(u)` used for functions on a hyperelliptic curve.

use crate::field::{Fe, Fq};
use crate::poly::{self, Poly};

/// `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFraction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFraction {
    pub fn zero(f: &Fq) -> Self {
        RationalFraction {
            num: Poly::zero(),
            den: Poly::constant(f, f.one()),
        }
    }

    pub fn new(f: &Fq, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut fr = RationalFraction { num, den };
        fr.reduce(f);
        fr
    }

    pub fn from_poly(f: &Fq, p: Poly) -> Self {
        RationalFraction {
            num: p,
            den: Poly::constant(f, f.one()),
        }
    }

    pub fn constant(f: &Fq, a: Fe) -> Self {
        Self::from_poly(f, Poly::constant(f, a))
    }

    fn reduce(&mut self, f: &Fq) {
        if self.num.is_zero() {
            self.den = Poly::constant(f, f.one());
            return;
        }
        let g = poly::gcd(f, &self.num, &self.den);
        if g.deg() > 0 {
            self.num = poly::divmod(f, &self.num, &g).0;
            self.den = poly::divmod(f, &self.den, &g).0;
        }
        let lead = f.inv(self.den.lc().unwrap());
        self.num = poly::scale(f, &self.num, &lead);
        self.den = poly::scale(f, &self.den, &lead);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den); -1 for zero.
    pub fn degree(&self) -> isize {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, f: &Fq, o: &Self) -> Self {
        Self::new(
            f,
            poly::add(
                f,
                &poly::mul(f, &self.num, &o.den),
                &poly::mul(f, &o.num, &self.den),
            ),
            poly::mul(f, &self.den, &o.den),
        )
    }

    pub fn sub(&self, f: &Fq, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn neg(&self, f: &Fq) -> Self {
        RationalFraction {
            num: poly::neg(f, &self.num),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, f: &Fq, o: &Self) -> Self {
        Self::new(
            f,
            poly::mul(f, &self.num, &o.num),
            poly::mul(f, &self.den, &o.den),
        )
    }

    pub fn mul_poly(&self, f: &Fq, p: &Poly) -> Self {
        Self::new(f, poly::mul(f, &self.num, p), self.den.clone())
    }

    pub fn scale(&self, f: &Fq, s: &Fe) -> Self {
        RationalFraction {
            num: poly::scale(f, &self.num, s),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self, f: &Fq) -> Self {
        assert!(!self.is_zero(), "inverse of zero fraction");
        Self::new(f, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, f: &Fq, o: &Self) -> Self {
        self.mul(f, &o.inv(f))
    }

    /// Evaluate at a point where the denominator does not vanish.
    pub fn eval(&self, f: &Fq, x: &Fe) -> Option<Fe> {
        let d = poly::eval(f, &self.den, x);
        if f.is_zero(&d) {
            return None;
        }
        Some(f.mul(&poly::eval(f, &self.num, x), &f.inv(&d)))
    }

    /// Lift every coefficient into a larger field of the same tower.
    pub fn embed(&self, big: &Fq) -> Self {
        RationalFraction {
            num: Poly {
                c: self.num.c.iter().map(|x| big.embed(x)).collect(),
            },
            den: Poly {
                c: self.den.c.iter().map(|x| big.embed(x)).collect(),
            },
        }
    }

    /// Square root of a fraction that is a perfect square (numerator and
    /// denominator both squares after reduction).
    pub fn sqrt(&self, f: &Fq) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::from_poly(f, Poly::zero()));
        }
        let n = poly::poly_sqrt(f, &self.num)?;
        let d = poly::poly_sqrt(f, &self.den)?;
        Some(Self::new(f, n, d))
    }
}

/// A function on the curve `v^2 = E(u)` written as `even(u) + v*odd(u)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveFunction {
    pub even: RationalFraction,
    pub odd: RationalFraction,
}

impl CurveFunction {
    pub fn from_even(f: &Fq, even: RationalFraction) -> Self {
        CurveFunction {
            even,
            odd: RationalFraction::zero(f),
        }
    }

    pub fn from_odd(f: &Fq, odd: RationalFraction) -> Self {
        CurveFunction {
            even: RationalFraction::zero(f),
            odd,
        }
    }

    pub fn add(&self, f: &Fq, o: &Self) -> Self {
        CurveFunction {
            even: self.even.add(f, &o.even),
            odd: self.odd.add(f, &o.odd),
        }
    }

    pub fn sub(&self, f: &Fq, o: &Self) -> Self {
        CurveFunction {
            even: self.even.sub(f, &o.even),
            odd: self.odd.sub(f, &o.odd),
        }
    }

    /// Product, using `v^2 = E(u)`.
    pub fn mul(&self, f: &Fq, o: &Self, e_poly: &Poly) -> Self {
        let ef = RationalFraction::from_poly(f, e_poly.clone());
        let even = self
            .even
            .mul(f, &o.even)
            .add(f, &self.odd.mul(f, &o.odd).mul(f, &ef));
        let odd = self.even.mul(f, &o.odd).add(f, &self.odd.mul(f, &o.even));
        CurveFunction { even, odd }
    }

    pub fn scale(&self, f: &Fq, s: &Fe) -> Self {
        CurveFunction {
            even: self.even.scale(f, s),
            odd: self.odd.scale(f, s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Value at an affine point `(u, v)`.
    pub fn eval(&self, f: &Fq, u: &Fe, v: &Fe) -> Option<Fe> {
        let e = self.even.eval(f, u)?;
        let o = self.odd.eval(f, u)?;
        Some(f.add(&e, &f.mul(v, &o)))
    }
}
