//! Independent genus-2 Jacobian arithmetic (Mumford representation, Cantor
//! composition and reduction) used as a ground-truth oracle against the
//! solver pipeline, via multiplication-by-m endomorphisms.

use crate::curves::CurveModel;
use crate::field::{Fe, Fq};
use crate::poly::{self, Poly};

/// A reduced divisor `(a, b)` on an odd-degree model: `a` monic of degree at
/// most 2, `deg b < deg a`, and `a | b^2 - E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    pub a: Poly,
    pub b: Poly,
}

impl MumfordDivisor {
    pub fn identity(f: &Fq) -> MumfordDivisor {
        MumfordDivisor {
            a: Poly::constant(f, f.one()),
            b: Poly::zero(),
        }
    }

    pub fn of_point(f: &Fq, x: &Fe, y: &Fe) -> MumfordDivisor {
        MumfordDivisor {
            a: Poly::from_coeffs(f, vec![f.neg(x), f.one()]),
            b: Poly::constant(f, y.clone()),
        }
    }

    pub fn neg(&self, f: &Fq) -> MumfordDivisor {
        MumfordDivisor {
            a: self.a.clone(),
            b: poly::rem(f, &poly::neg(f, &self.b), &self.a),
        }
    }
}

/// An odd-degree working model `Y^2 = E5(X)` obtained by sending a rational
/// Weierstrass point `(w0, 0)` of `v^2 = E(u)` to infinity:
/// `X = 1/(u - w0)`, `Y = v X^3`.
#[derive(Clone, Debug)]
pub struct OddModel {
    pub e5: Poly,
    pub w0: Fe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// No rational Weierstrass point to move to infinity.
    NoRationalWeierstrass,
    /// The divisor is not in general position (resample the point).
    NonGenericPosition,
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OracleError::NoRationalWeierstrass => "curve has no rational Weierstrass point",
            OracleError::NonGenericPosition => "divisor not in general position",
        };
        write!(f, "{s}")
    }
}

impl std::error::Error for OracleError {}

impl OddModel {
    pub fn from_curve(f: &Fq, c: &CurveModel) -> Result<OddModel, OracleError> {
        let e = c.e_poly(f);
        let roots = poly::roots(f, &e);
        let w0 = roots
            .into_iter()
            .next()
            .ok_or(OracleError::NoRationalWeierstrass)?;
        // E5(X) = E(w0 + 1/X) X^6 = sum E_i (w0 X + 1)^i X^(6-i)
        let mut e5 = vec![f.zero(); 7];
        for i in 0..=6 {
            let ci = e.coeff(f, i);
            if f.is_zero(&ci) {
                continue;
            }
            // (w0 X + 1)^i * X^(6-i)
            let mut t = Poly::constant(f, f.one());
            let lin = Poly::from_coeffs(f, vec![f.one(), w0.clone()]);
            for _ in 0..i {
                t = poly::mul(f, &t, &lin);
            }
            for (k, v) in t.c.iter().enumerate() {
                let idx = k + (6 - i);
                if idx < 7 {
                    e5[idx] = f.add(&e5[idx], &f.mul(&ci, v));
                }
            }
        }
        let e5 = Poly::from_coeffs(f, e5);
        assert_eq!(e5.deg(), 5, "leading coefficient must vanish at a root");
        Ok(OddModel { e5, w0 })
    }

    /// Map an affine point of the original model into odd-model coordinates;
    /// `None` at `u = w0` (sent to infinity).
    pub fn to_odd(&self, f: &Fq, u: &Fe, v: &Fe) -> Option<(Fe, Fe)> {
        let d = f.sub(u, &self.w0);
        if f.is_zero(&d) {
            return None;
        }
        let x = f.inv(&d);
        let y = f.mul(v, &f.mul(&x, &f.square(&x)));
        Some((x, y))
    }

    /// Map back to original coordinates; `None` at infinity (`x = 0`).
    pub fn to_orig(&self, f: &Fq, x: &Fe, y: &Fe) -> Option<(Fe, Fe)> {
        if f.is_zero(x) {
            return None;
        }
        let u = f.add(&self.w0, &f.inv(x));
        let v = f.div(y, &f.mul(x, &f.square(x)));
        Some((u, v))
    }

    /// Cantor composition and reduction.
    pub fn add(&self, f: &Fq, d1: &MumfordDivisor, d2: &MumfordDivisor) -> MumfordDivisor {
        let (a1, b1) = (&d1.a, &d1.b);
        let (a2, b2) = (&d2.a, &d2.b);
        let (g1, e1, e2) = poly::xgcd(f, a1, a2);
        let bsum = poly::add(f, b1, b2);
        let (dd, c1, c2) = poly::xgcd(f, &g1, &bsum);
        let lc = f.inv(dd.lc().unwrap());
        let dd = poly::scale(f, &dd, &lc);
        let s1 = poly::scale(f, &poly::mul(f, &e1, &c1), &lc);
        let s2 = poly::scale(f, &poly::mul(f, &e2, &c1), &lc);
        let s3 = poly::scale(f, &c2, &lc);
        let (mut a, rem) = poly::divmod(f, &poly::mul(f, a1, a2), &poly::mul(f, &dd, &dd));
        debug_assert!(rem.is_zero());
        let num = poly::add(
            f,
            &poly::add(
                f,
                &poly::mul(f, &poly::mul(f, &s1, a1), b2),
                &poly::mul(f, &poly::mul(f, &s2, a2), b1),
            ),
            &poly::mul(f, &s3, &poly::add(f, &poly::mul(f, b1, b2), &self.e5)),
        );
        let (bq, _brem) = poly::divmod(f, &num, &dd);
        let mut b = poly::rem(f, &bq, &a);
        // reduction
        while a.deg() > 2 {
            let (anew, rem2) = poly::divmod(f, &poly::sub(f, &self.e5, &poly::mul(f, &b, &b)), &a);
            debug_assert!(rem2.is_zero());
            let lc2 = f.inv(anew.lc().unwrap());
            let anew = poly::scale(f, &anew, &lc2);
            let bnew = poly::rem(f, &poly::neg(f, &b), &anew);
            a = anew;
            b = bnew;
        }
        let lc3 = f.inv(a.lc().unwrap());
        let a = poly::scale(f, &a, &lc3);
        let b = poly::rem(f, &b, &a);
        MumfordDivisor { a, b }
    }

    pub fn mul_small(&self, f: &Fq, d: &MumfordDivisor, m: u64) -> MumfordDivisor {
        let mut acc = MumfordDivisor::identity(f);
        let mut base = d.clone();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(f, &acc, &base);
            }
            base = self.add(f, &base, &base);
            m >>= 1;
        }
        acc
    }
}

/// Evaluate the rational representation of `[m]` at `Q` on the Jacobian:
/// compute `m [Q - P]` by Cantor arithmetic on an odd model and return the
/// chart values `(x1+x2, x1 x2, y1 y2, (y2-y1)/(x2-x1))` in the original
/// coordinates, possibly over a quadratic extension (the values themselves
/// are symmetric).
pub fn oracle_rational_rep(
    f: &Fq,
    c: &CurveModel,
    p: &(Fe, Fe),
    m: u64,
    q: &(Fe, Fe),
) -> Result<(Fq, [Fe; 4]), OracleError> {
    let odd = OddModel::from_curve(f, c)?;
    let (xq, yq) = odd
        .to_odd(f, &q.0, &q.1)
        .ok_or(OracleError::NonGenericPosition)?;
    let (xp, yp) = odd
        .to_odd(f, &p.0, &p.1)
        .ok_or(OracleError::NonGenericPosition)?;
    // [Q - P] = [Q + i(P) - 2 inf] since the fiber over any x is ~ 2 inf
    let dq = MumfordDivisor::of_point(f, &xq, &yq);
    let dpn = MumfordDivisor::of_point(f, &xp, &f.neg(&yp));
    let base = odd.add(f, &dq, &dpn);
    let total = odd.mul_small(f, &base, m);
    if total.a.deg() != 2 {
        return Err(OracleError::NonGenericPosition);
    }
    // split a over the field or one quadratic extension
    let a1 = total.a.coeff(f, 1);
    let a0 = total.a.coeff(f, 0);
    let disc = f.sub(&f.square(&a1), &f.mul_u64(&a0, 4));
    let (ext, root, _) = f
        .sqrt_extending(&disc)
        .map_err(|_| OracleError::NonGenericPosition)?;
    let half = ext.from_ratio(1, 2);
    let x1 = ext.mul(&ext.sub(&root, &ext.embed(&a1)), &half);
    let x2 = ext.mul(&ext.sub(&ext.neg(&root), &ext.embed(&a1)), &half);
    if x1 == x2 || ext.is_zero(&x1) || ext.is_zero(&x2) {
        return Err(OracleError::NonGenericPosition);
    }
    let beval = |x: &Fe| -> Fe {
        let mut r = ext.zero();
        for c in total.b.c.iter().rev() {
            r = ext.add(&ext.mul(&r, x), &ext.embed(c));
        }
        r
    };
    let y1 = beval(&x1);
    let y2 = beval(&x2);
    // back to original coordinates
    let odd_e = OddModel {
        e5: total.a.clone(),
        w0: odd.w0.clone(),
    }; // reuse w0 only
    let (u1, v1) = {
        let x = &x1;
        if ext.is_zero(x) {
            return Err(OracleError::NonGenericPosition);
        }
        let u = ext.add(&ext.embed(&odd_e.w0), &ext.inv(x));
        let v = ext.div(&y1, &ext.mul(x, &ext.square(x)));
        (u, v)
    };
    let (u2, v2) = {
        let x = &x2;
        let u = ext.add(&ext.embed(&odd_e.w0), &ext.inv(x));
        let v = ext.div(&y2, &ext.mul(x, &ext.square(x)));
        (u, v)
    };
    if u1 == u2 {
        return Err(OracleError::NonGenericPosition);
    }
    let s = ext.add(&u1, &u2);
    let pp = ext.mul(&u1, &u2);
    let qq = ext.mul(&v1, &v2);
    let rr = ext.div(&ext.sub(&v2, &v1), &ext.sub(&u2, &u1));
    Ok((ext, [s, pp, qq, rr]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn curve_with_rational_weierstrass(f: &Fq, rng: &mut SplitMix64) -> CurveModel {
        loop {
            let w0 = f.random(rng);
            // E = (u - w0) * monic quintic
            let quint =
                Poly::from_coeffs(f, (0..5).map(|_| f.random(rng)).chain([f.one()]).collect());
            let lin = Poly::from_coeffs(f, vec![f.neg(&w0), f.one()]);
            let e = poly::mul(f, &lin, &quint);
            let mut c = e.c.clone();
            c.resize(7, f.zero());
            if let Ok(cm) = CurveModel::new(f, std::array::from_fn(|i| c[i].clone())) {
                return cm;
            }
        }
    }

    fn random_point(f: &Fq, c: &CurveModel, rng: &mut SplitMix64) -> (Fe, Fe) {
        loop {
            let u = f.random(rng);
            if let Some(v) = f.sqrt(&c.eval(f, &u)) {
                if !f.is_zero(&v) {
                    return (u, v);
                }
            }
        }
    }

    #[test]
    fn group_laws() {
        let f = Fq::prime(10007).unwrap();
        let mut rng = SplitMix64::new(51);
        let c = curve_with_rational_weierstrass(&f, &mut rng);
        let odd = OddModel::from_curve(&f, &c).unwrap();
        let id = MumfordDivisor::identity(&f);
        let rand_div = |rng: &mut SplitMix64| {
            let (u, v) = random_point(&f, &c, rng);
            let (x, y) = odd.to_odd(&f, &u, &v).unwrap();
            MumfordDivisor::of_point(&f, &x, &y)
        };
        for _ in 0..100 {
            let d1 = rand_div(&mut rng);
            let d2 = rand_div(&mut rng);
            let d3 = rand_div(&mut rng);
            // identity and inverse
            assert_eq!(odd.add(&f, &d1, &id), d1);
            assert_eq!(odd.add(&f, &d1, &d1.neg(&f)), id);
            // commutativity and associativity
            assert_eq!(odd.add(&f, &d1, &d2), odd.add(&f, &d2, &d1));
            let l = odd.add(&f, &odd.add(&f, &d1, &d2), &d3);
            let r = odd.add(&f, &d1, &odd.add(&f, &d2, &d3));
            assert_eq!(l, r);
        }
    }

    #[test]
    fn double_and_add_matches_repeated_addition() {
        let f = Fq::prime(10007).unwrap();
        let mut rng = SplitMix64::new(52);
        let c = curve_with_rational_weierstrass(&f, &mut rng);
        let odd = OddModel::from_curve(&f, &c).unwrap();
        let (u, v) = random_point(&f, &c, &mut rng);
        let (x, y) = odd.to_odd(&f, &u, &v).unwrap();
        let d = MumfordDivisor::of_point(&f, &x, &y);
        let mut acc = MumfordDivisor::identity(&f);
        for m in 1..=7u64 {
            acc = odd.add(&f, &acc, &d);
            assert_eq!(odd.mul_small(&f, &d, m), acc);
        }
    }
}
