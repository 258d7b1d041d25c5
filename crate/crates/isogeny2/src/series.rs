//! Truncated power series `f(z) mod z^prec` and rational-fraction
//! reconstruction (Padé approximation by the extended Euclidean algorithm).

use crate::field::{Fe, Fq};
use crate::fraction::RationalFraction;
use crate::poly::{self, Poly};
use std::fmt;

/// Power series known modulo `z^prec`; `c.len() == prec` always.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    pub c: Vec<Fe>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    ZeroConstantTerm,
    NonSquareLeadingTerm,
    OddValuation,
    PrecisionTooLow,
    NoSolution,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesError::ZeroConstantTerm => "series has zero constant term",
            SeriesError::NonSquareLeadingTerm => "leading term is not a square in the field",
            SeriesError::OddValuation => "series has odd valuation",
            SeriesError::PrecisionTooLow => "series precision too low",
            SeriesError::NoSolution => "no rational fraction within the degree bounds",
        };
        write!(f, "{s}")
    }
}

impl std::error::Error for SeriesError {}

impl Series {
    pub fn zero(f: &Fq, prec: usize) -> Series {
        Series {
            c: vec![f.zero(); prec],
        }
    }

    pub fn constant(f: &Fq, a: Fe, prec: usize) -> Series {
        let mut c = vec![f.zero(); prec];
        if prec > 0 {
            c[0] = a;
        }
        Series { c }
    }

    /// Series from ascending coefficients, padded or truncated to `prec`.
    pub fn from_coeffs(f: &Fq, mut c: Vec<Fe>, prec: usize) -> Series {
        c.resize(prec, f.zero());
        Series { c }
    }

    pub fn from_poly(f: &Fq, p: &Poly, prec: usize) -> Series {
        Series::from_coeffs(f, p.c.clone(), prec)
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn truncate(&self, prec: usize) -> Series {
        assert!(
            prec <= self.c.len(),
            "cannot extend precision by truncation"
        );
        Series {
            c: self.c[..prec].to_vec(),
        }
    }

    /// Valuation: index of the first nonzero coefficient, or `prec` if none.
    pub fn valuation(&self, f: &Fq) -> usize {
        self.c
            .iter()
            .position(|x| !f.is_zero(x))
            .unwrap_or(self.c.len())
    }

    pub fn is_zero(&self, f: &Fq) -> bool {
        self.c.iter().all(|x| f.is_zero(x))
    }
}

fn joint_prec(a: &Series, b: &Series) -> usize {
    a.prec().min(b.prec())
}

pub fn add(f: &Fq, a: &Series, b: &Series) -> Series {
    let n = joint_prec(a, b);
    Series {
        c: (0..n).map(|i| f.add(&a.c[i], &b.c[i])).collect(),
    }
}

pub fn sub(f: &Fq, a: &Series, b: &Series) -> Series {
    let n = joint_prec(a, b);
    Series {
        c: (0..n).map(|i| f.sub(&a.c[i], &b.c[i])).collect(),
    }
}

pub fn neg(f: &Fq, a: &Series) -> Series {
    Series {
        c: a.c.iter().map(|x| f.neg(x)).collect(),
    }
}

pub fn scale(f: &Fq, a: &Series, s: &Fe) -> Series {
    Series {
        c: a.c.iter().map(|x| f.mul(x, s)).collect(),
    }
}

pub fn mul(f: &Fq, a: &Series, b: &Series) -> Series {
    let n = joint_prec(a, b);
    let mut full = poly::mul_slices(f, &a.c[..n], &b.c[..n]);
    full.resize(n, f.zero());
    full.truncate(n);
    Series { c: full }
}

/// Multiply by `z^k` (shifting up, dropping overflow), same precision.
pub fn shift_up(f: &Fq, a: &Series, k: usize) -> Series {
    let n = a.prec();
    let mut c = vec![f.zero(); n];
    for i in 0..n.saturating_sub(k) {
        c[i + k] = a.c[i].clone();
    }
    Series { c }
}

/// Divide by `z^k`; requires valuation >= k. Precision drops by `k`.
pub fn shift_down(f: &Fq, a: &Series, k: usize) -> Series {
    assert!(a.valuation(f) >= k, "shift_down below valuation");
    Series {
        c: a.c[k..].to_vec(),
    }
}

pub fn derivative(f: &Fq, a: &Series) -> Series {
    if a.c.len() <= 1 {
        return Series::zero(f, a.c.len());
    }
    Series {
        c: (1..a.c.len())
            .map(|i| f.mul_u64(&a.c[i], i as u64))
            .collect(),
    }
}

/// Multiplicative inverse; the constant term must be nonzero.
pub fn inv(f: &Fq, a: &Series) -> Result<Series, SeriesError> {
    let n = a.prec();
    if n == 0 {
        return Ok(Series::zero(f, 0));
    }
    if f.is_zero(&a.c[0]) {
        return Err(SeriesError::ZeroConstantTerm);
    }
    // Newton iteration g <- g(2 - a g), doubling precision
    let mut g = vec![f.inv(&a.c[0])];
    let mut k = 1usize;
    while k < n {
        let k2 = (2 * k).min(n);
        let ag = poly::mul_slices(f, &a.c[..k2.min(a.c.len())], &g);
        let mut corr = vec![f.zero(); k2];
        for i in 0..k2 {
            let t = ag.get(i).cloned().unwrap_or_else(|| f.zero());
            corr[i] = if i == 0 {
                f.sub(&f.from_u64(2), &t)
            } else {
                f.neg(&t)
            };
        }
        let gg = poly::mul_slices(f, &g, &corr);
        g = gg;
        g.resize(k2, f.zero());
        g.truncate(k2);
        k = k2;
    }
    Ok(Series { c: g })
}

/// Square root with an explicit branch: `branch^2` must equal the constant
/// term, and the result's constant term is `branch`.
pub fn sqrt(f: &Fq, a: &Series, branch: &Fe) -> Result<Series, SeriesError> {
    let n = a.prec();
    if n == 0 {
        return Ok(Series::zero(f, 0));
    }
    if f.square(branch) != a.c[0] {
        return Err(SeriesError::NonSquareLeadingTerm);
    }
    if f.is_zero(branch) {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let inv2b = f.inv(&f.add(branch, branch));
    let mut g = vec![branch.clone()];
    for k in 1..n {
        // a_k = sum_{i=0..k} g_i g_{k-i}
        let mut s = f.zero();
        for i in 1..k {
            s = f.add(&s, &f.mul(&g[i], &g[k - i]));
        }
        g.push(f.mul(&f.sub(&a.c[k], &s), &inv2b));
    }
    Ok(Series { c: g })
}

/// Square root of a series of even valuation `2m`: returns `(root, m)` where
/// `root^2 = a / z^(2m)` shifted back, i.e. `(z^m root)^2 = a`.
pub fn sqrt_with_valuation(f: &Fq, a: &Series) -> Result<(Series, usize), SeriesError> {
    let v = a.valuation(f);
    if v == a.prec() {
        return Ok((Series::zero(f, a.prec()), 0));
    }
    if v % 2 == 1 {
        return Err(SeriesError::OddValuation);
    }
    let unit = shift_down(f, a, v);
    let branch = f
        .sqrt(&unit.c[0])
        .ok_or(SeriesError::NonSquareLeadingTerm)?;
    let root = sqrt(f, &unit, &branch)?;
    Ok((root, v / 2))
}

/// Evaluate a polynomial at a series (Horner).
pub fn compose_poly(f: &Fq, p: &Poly, x: &Series) -> Series {
    let n = x.prec();
    let mut r = Series::zero(f, n);
    for c in p.c.iter().rev() {
        r = mul(f, &r, x);
        if n > 0 {
            r.c[0] = f.add(&r.c[0], c);
        }
    }
    r
}

/// Expansion of a reduced fraction as a series; the denominator must not
/// vanish at 0.
pub fn expand_fraction(f: &Fq, fr: &RationalFraction, prec: usize) -> Result<Series, SeriesError> {
    let den = Series::from_poly(f, &fr.den, prec);
    let num = Series::from_poly(f, &fr.num, prec);
    let dinv = inv(f, &den)?;
    Ok(mul(f, &num, &dinv))
}

/// Padé approximation: the unique reduced fraction `N/D` with `deg N <= dn`,
/// `deg D <= dd`, `D(0) != 0` and `N/D = f mod z^(dn+dd+1)`, when it exists.
pub fn pade(f: &Fq, a: &Series, dn: usize, dd: usize) -> Result<RationalFraction, SeriesError> {
    let need = dn + dd + 1;
    if a.prec() < need {
        return Err(SeriesError::PrecisionTooLow);
    }
    // extended Euclid on (z^need, a mod z^need), stop at deg r <= dn
    let mut zn = vec![f.zero(); need];
    zn.push(f.one());
    let mut r0 = Poly::from_coeffs(f, zn);
    let mut r1 = Poly::from_coeffs(f, a.c[..need].to_vec());
    let mut t0 = Poly::zero();
    let mut t1 = Poly::constant(f, f.one());
    while r1.deg() > dn as isize {
        let (q, r2) = poly::divmod(f, &r0, &r1);
        let t2 = poly::sub(f, &t0, &poly::mul(f, &q, &t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    let (num, den) = (r1, t1);
    if den.is_zero() || den.deg() > dd as isize {
        return Err(SeriesError::NoSolution);
    }
    // reduce and normalize
    let g = poly::gcd(f, &num, &den);
    let (num, den) = if g.deg() > 0 {
        (poly::divmod(f, &num, &g).0, poly::divmod(f, &den, &g).0)
    } else {
        (num, den)
    };
    if den.is_zero() || f.is_zero(&den.coeff(f, 0)) {
        return Err(SeriesError::NoSolution);
    }
    let lead = f.inv(den.lc().unwrap());
    let fr = RationalFraction {
        num: poly::scale(f, &num, &lead),
        den: poly::scale(f, &den, &lead),
    };
    // verify: N = D * f mod z^need (guards the unattainable cases)
    let prod = mul(f, &Series::from_poly(f, &fr.den, need), &a.truncate(need));
    let nref = Series::from_poly(f, &fr.num, need);
    if prod != nref {
        return Err(SeriesError::NoSolution);
    }
    Ok(fr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn fp() -> Fq {
        Fq::prime(56311).unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let f = fp();
        // 1 - z at precision 4
        let a = Series::from_coeffs(&f, vec![f.one(), f.from_i64(-1)], 4);
        let g = inv(&f, &a).unwrap();
        assert_eq!(g.c, vec![f.one(), f.one(), f.one(), f.one()]);
        // constant c -> 1/c
        let c = Series::constant(&f, f.from_u64(7), 3);
        assert_eq!(inv(&f, &c).unwrap().c[0], f.inv(&f.from_u64(7)));
        // round trip on random series over F_101
        let f101 = Fq::prime(101).unwrap();
        let mut rng = SplitMix64::new(2);
        for _ in 0..20 {
            let mut v: Vec<Fe> = (0..16).map(|_| f101.random(&mut rng)).collect();
            if f101.is_zero(&v[0]) {
                v[0] = f101.one();
            }
            let s = Series { c: v };
            let g = inv(&f101, &s).unwrap();
            let prod = mul(&f101, &s, &g);
            assert_eq!(prod.c[0], f101.one());
            assert!(prod.c[1..].iter().all(|x| f101.is_zero(x)));
            // inv of inv
            assert_eq!(inv(&f101, &g).unwrap(), s);
        }
    }

    #[test]
    fn binomial_sqrt() {
        let f = fp();
        // sqrt(1 + z) = 1 + z/2 - z^2/8 + z^3/16
        let a = Series::from_coeffs(&f, vec![f.one(), f.one()], 4);
        let r = sqrt(&f, &a, &f.one()).unwrap();
        assert_eq!(r.c[0], f.one());
        assert_eq!(r.c[1], f.from_ratio(1, 2));
        assert_eq!(r.c[2], f.from_ratio(-1, 8));
        assert_eq!(r.c[3], f.from_ratio(1, 16));
        // branch selection: sqrt(4) with branch -2
        let four = Series::constant(&f, f.from_u64(4), 3);
        let r = sqrt(&f, &four, &f.from_i64(-2)).unwrap();
        assert_eq!(r.c[0], f.from_i64(-2));
        assert!(r.c[1..].iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn sqrt_of_square_recovers() {
        let f = fp();
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let mut v: Vec<Fe> = (0..12).map(|_| f.random(&mut rng)).collect();
            if f.is_zero(&v[0]) {
                v[0] = f.from_u64(3);
            }
            let g = Series { c: v };
            let g2 = mul(&f, &g, &g);
            let r = sqrt(&f, &g2, &g.c[0]).unwrap();
            assert_eq!(r, g);
            let check = sub(&f, &mul(&f, &r, &r), &g2);
            assert!(check.is_zero(&f));
        }
    }

    #[test]
    fn pade_simple() {
        let f = fp();
        // series of 1/(1-z), bounds (0,1); monic-denominator normalization
        let a = Series {
            c: vec![f.one(); 8],
        };
        let fr = pade(&f, &a, 0, 1).unwrap();
        assert_eq!(fr.num.c, vec![f.from_i64(-1)]);
        assert_eq!(fr.den.c, vec![f.from_i64(-1), f.one()]);
        // polynomial series z^3 + 2z with bounds (3, 0)
        let p = Series::from_coeffs(&f, vec![f.zero(), f.from_u64(2), f.zero(), f.one()], 8);
        let fr = pade(&f, &p, 3, 0).unwrap();
        assert_eq!(fr.den.c, vec![f.one()]);
        assert_eq!(fr.num.c.len(), 4);
    }

    #[test]
    fn pade_precision_gate() {
        let f = fp();
        let a = Series {
            c: vec![f.one(); 13],
        };
        assert_eq!(
            pade(&f, &a, 7, 7).unwrap_err(),
            SeriesError::PrecisionTooLow
        );
        assert!(pade(&f, &a, 6, 6).is_ok());
    }

    #[test]
    fn pade_round_trip_random_fractions() {
        let f = fp();
        let mut rng = SplitMix64::new(4);
        for _ in 0..200 {
            let dn = (rng.below(5) + 1) as usize;
            let dd = (rng.below(5) + 1) as usize;
            let num = Poly::from_coeffs(&f, (0..=dn).map(|_| f.random(&mut rng)).collect());
            let mut denc: Vec<Fe> = (0..=dd).map(|_| f.random(&mut rng)).collect();
            if f.is_zero(&denc[0]) {
                denc[0] = f.one();
            }
            denc[dd] = f.one();
            let den = Poly::from_coeffs(&f, denc);
            let g = crate::poly::gcd(&f, &num, &den);
            if g.deg() > 0 {
                continue;
            }
            let fr = RationalFraction { num, den };
            let nu = fr.num.deg().max(0) as usize;
            let de = fr.den.deg().max(0) as usize;
            let s = expand_fraction(&f, &fr, nu + de + 1).unwrap();
            let rec = pade(&f, &s, nu, de).unwrap();
            assert_eq!(rec.num, fr.num);
            assert_eq!(rec.den, fr.den);
        }
    }
}
