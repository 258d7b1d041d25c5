//! Univariate polynomials over a field from [`crate::field`], in canonical
//! form (no trailing zero coefficients; zero is the empty list).

use crate::field::{Fe, Fq};
use crate::rng::SplitMix64;

/// Polynomial with ascending coefficients; `c` never ends in a zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub c: Vec<Fe>,
}

/// Threshold below which multiplication stays schoolbook.
const KARATSUBA_CUTOFF: usize = 32;

impl Poly {
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn from_coeffs(f: &Fq, mut c: Vec<Fe>) -> Poly {
        while c.last().map_or(false, |x| f.is_zero(x)) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(f: &Fq, a: Fe) -> Poly {
        Poly::from_coeffs(f, vec![a])
    }

    pub fn x(f: &Fq) -> Poly {
        Poly {
            c: vec![f.zero(), f.one()],
        }
    }

    /// Degree; -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> Option<&Fe> {
        self.c.last()
    }

    pub fn coeff(&self, f: &Fq, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| f.zero())
    }
}

pub fn add(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.c.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.c.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    Poly::from_coeffs(f, out)
}

pub fn sub(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.c.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.c.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.sub(&x, &y));
    }
    Poly::from_coeffs(f, out)
}

pub fn neg(f: &Fq, a: &Poly) -> Poly {
    Poly {
        c: a.c.iter().map(|x| f.neg(x)).collect(),
    }
}

pub fn scale(f: &Fq, a: &Poly, s: &Fe) -> Poly {
    Poly::from_coeffs(f, a.c.iter().map(|x| f.mul(x, s)).collect())
}

/// Raw convolution on coefficient slices; dispatches to Karatsuba above the
/// cutoff. Results are identical either way (exact arithmetic).
pub(crate) fn mul_slices(f: &Fq, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        return out;
    }
    // Karatsuba
    let h = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(a.len().min(h));
    let (b0, b1) = b.split_at(b.len().min(h));
    let z0 = mul_slices(f, a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        mul_slices(f, a1, b1)
    };
    let asum: Vec<Fe> = (0..a0.len().max(a1.len()))
        .map(|i| {
            let x = a0.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = a1.get(i).cloned().unwrap_or_else(|| f.zero());
            f.add(&x, &y)
        })
        .collect();
    let bsum: Vec<Fe> = (0..b0.len().max(b1.len()))
        .map(|i| {
            let x = b0.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b1.get(i).cloned().unwrap_or_else(|| f.zero());
            f.add(&x, &y)
        })
        .collect();
    let z1 = mul_slices(f, &asum, &bsum);
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, v) in z0.iter().enumerate() {
        out[i] = f.add(&out[i], v);
    }
    for (i, v) in z1.iter().enumerate() {
        let mut t = v.clone();
        if let Some(x) = z0.get(i) {
            t = f.sub(&t, x);
        }
        if let Some(x) = z2.get(i) {
            t = f.sub(&t, x);
        }
        if h + i < out.len() {
            out[h + i] = f.add(&out[h + i], &t);
        }
    }
    for (i, v) in z2.iter().enumerate() {
        out[2 * h + i] = f.add(&out[2 * h + i], v);
    }
    out
}

pub fn mul(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    Poly::from_coeffs(f, mul_slices(f, &a.c, &b.c))
}

/// Quotient and remainder; divisor must be nonzero.
pub fn divmod(f: &Fq, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.deg() < b.deg() {
        return (Poly::zero(), a.clone());
    }
    let binv = f.inv(b.lc().unwrap());
    let mut rem = a.c.clone();
    let db = b.c.len() - 1;
    let mut q = vec![f.zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let coef = f.mul(&rem[da], &binv);
        if !f.is_zero(&coef) {
            q[da - db] = coef.clone();
            for i in 0..=db {
                let t = f.mul(&coef, &b.c[i]);
                rem[da - db + i] = f.sub(&rem[da - db + i], &t);
            }
        }
        while rem.last().map_or(false, |x| f.is_zero(x)) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (Poly::from_coeffs(f, q), Poly::from_coeffs(f, rem))
}

pub fn rem(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    divmod(f, a, b).1
}

/// Monic gcd.
pub fn gcd(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r2 = rem(f, &r0, &r1);
        r0 = r1;
        r1 = r2;
    }
    if r0.is_zero() {
        return r0;
    }
    monic(f, &r0)
}

pub fn monic(f: &Fq, a: &Poly) -> Poly {
    match a.lc() {
        None => Poly::zero(),
        Some(l) => scale(f, a, &f.inv(l)),
    }
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` (g not normalized).
pub fn xgcd(f: &Fq, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::constant(f, f.one()), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::constant(f, f.one()));
    while !r1.is_zero() {
        let (q, r2) = divmod(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

/// Inverse of `a` modulo `m`; `None` when not coprime.
pub fn inv_mod(f: &Fq, a: &Poly, m: &Poly) -> Option<Poly> {
    let (g, s, _) = xgcd(f, a, m);
    if g.deg() != 0 {
        return None;
    }
    let gi = f.inv(g.lc().unwrap());
    Some(rem(f, &scale(f, &s, &gi), m))
}

pub fn eval(f: &Fq, a: &Poly, x: &Fe) -> Fe {
    let mut r = f.zero();
    for c in a.c.iter().rev() {
        r = f.add(&f.mul(&r, x), c);
    }
    r
}

pub fn derivative(f: &Fq, a: &Poly) -> Poly {
    if a.c.len() <= 1 {
        return Poly::zero();
    }
    Poly::from_coeffs(
        f,
        a.c[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul_u64(c, (i + 1) as u64))
            .collect(),
    )
}

/// `a(x + s)` by Horner expansion.
pub fn taylor_shift(f: &Fq, a: &Poly, s: &Fe) -> Poly {
    let mut res = Poly::zero();
    for c in a.c.iter().rev() {
        // res = res * (x + s) + c
        let mut shifted = vec![f.zero(); res.c.len() + 1];
        for (i, v) in res.c.iter().enumerate() {
            shifted[i + 1] = f.add(&shifted[i + 1], v);
            shifted[i] = f.add(&shifted[i], &f.mul(v, s));
        }
        let mut np = Poly::from_coeffs(f, shifted);
        if np.c.is_empty() {
            np.c.push(c.clone());
        } else {
            np.c[0] = f.add(&np.c[0], c);
        }
        res = Poly::from_coeffs(f, np.c);
    }
    res
}

/// Lagrange interpolation through distinct sample points.
pub fn interpolate(f: &Fq, pts: &[(Fe, Fe)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut num = Poly::constant(f, f.one());
        let mut den = f.one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            num = mul(f, &num, &Poly::from_coeffs(f, vec![f.neg(xj), f.one()]));
            den = f.mul(&den, &f.sub(xi, xj));
        }
        acc = add(f, &acc, &scale(f, &num, &f.mul(yi, &f.inv(&den))));
    }
    acc
}

/// `x^e mod m` with a multi-limb exponent (little-endian), for root finding.
fn pow_x_mod(f: &Fq, e: &[u64], m: &Poly) -> Poly {
    let mut bits = Vec::new();
    for (li, limb) in e.iter().enumerate() {
        for b in 0..64 {
            if limb >> b & 1 == 1 {
                bits.push(li * 64 + b);
            }
        }
    }
    let top = match bits.last() {
        None => return Poly::constant(f, f.one()),
        Some(&t) => t,
    };
    let mut result = Poly::constant(f, f.one());
    let mut sq = rem(f, &Poly::x(f), m);
    let mut bit = 0usize;
    let mut bits_iter = bits.iter().peekable();
    loop {
        if bits_iter.peek() == Some(&&bit) {
            result = rem(f, &mul(f, &result, &sq), m);
            bits_iter.next();
        }
        if bit == top {
            break;
        }
        sq = rem(f, &mul(f, &sq, &sq), m);
        bit += 1;
    }
    result
}

fn pow_poly_mod(f: &Fq, base: &Poly, e: &[u64], m: &Poly) -> Poly {
    let mut e = e.to_vec();
    let mut result = Poly::constant(f, f.one());
    let mut sq = rem(f, base, m);
    while e.iter().any(|&x| x != 0) {
        if e[0] & 1 == 1 {
            result = rem(f, &mul(f, &result, &sq), m);
        }
        sq = rem(f, &mul(f, &sq, &sq), m);
        // halve
        let mut carry = 0u64;
        for limb in e.iter_mut().rev() {
            let new = (*limb >> 1) | (carry << 63);
            carry = *limb & 1;
            *limb = new;
        }
    }
    result
}

fn field_size_limbs(f: &Fq) -> Vec<u64> {
    let mut q = vec![1u64];
    for _ in 0..f.degree() {
        let mut carry: u128 = 0;
        for limb in q.iter_mut() {
            let v = *limb as u128 * f.p() as u128 + carry;
            *limb = v as u64;
            carry = v >> 64;
        }
        while carry > 0 {
            q.push(carry as u64);
            carry >>= 64;
        }
    }
    q
}

/// All roots of `a` in the field, with multiplicity one each, sorted by
/// coefficient vector. Deterministic (fixed-seed equal-degree splitting).
pub fn roots(f: &Fq, a: &Poly) -> Vec<Fe> {
    if a.deg() <= 0 {
        return Vec::new();
    }
    let q = field_size_limbs(f);
    // x^q - x mod a
    let xq = pow_x_mod(f, &q, a);
    let lin = gcd(f, &sub(f, &xq, &Poly::x(f)), a);
    let mut out = Vec::new();
    let mut stack = vec![lin];
    let mut rng = SplitMix64::new(0x726f_6f74_7321);
    // (q-1)/2
    let mut e = q.clone();
    e[0] -= 1;
    let mut carry = 0u64;
    for limb in e.iter_mut().rev() {
        let new = (*limb >> 1) | (carry << 63);
        carry = *limb & 1;
        *limb = new;
    }
    while let Some(g) = stack.pop() {
        if g.deg() <= 0 {
            continue;
        }
        if g.deg() == 1 {
            // root of x + c0 (monic)
            let g = monic(f, &g);
            out.push(f.neg(&g.c[0]));
            continue;
        }
        // split: gcd(g, (x + r)^((q-1)/2) - 1)
        let r = f.random(&mut rng);
        let base = Poly::from_coeffs(f, vec![r, f.one()]);
        let t = pow_poly_mod(f, &base, &e, &g);
        let h = gcd(f, &sub(f, &t, &Poly::constant(f, f.one())), &g);
        if h.deg() <= 0 || h.deg() == g.deg() {
            stack.push(g);
            continue;
        }
        let (other, r2) = divmod(f, &g, &h);
        debug_assert!(r2.is_zero());
        stack.push(h);
        stack.push(other);
    }
    out.sort_by(|a, b| a.c.cmp(&b.c));
    out
}

/// Exact polynomial square root: `Some(g)` with `g^2 = a`, sign canonicalized
/// so that the leading coefficient is the canonical root; `None` when `a` is
/// not a perfect square over this field.
pub fn poly_sqrt(f: &Fq, a: &Poly) -> Option<Poly> {
    if a.is_zero() {
        return Some(Poly::zero());
    }
    let d = a.deg() as usize;
    if d % 2 == 1 {
        return None;
    }
    // strip even-order vanishing at 0
    let val = a.c.iter().position(|c| !f.is_zero(c)).unwrap();
    if val % 2 == 1 {
        return None;
    }
    let body = Poly::from_coeffs(f, a.c[val..].to_vec());
    let db = body.deg() as usize;
    let h = db / 2;
    let lc_root = f.sqrt(body.lc().unwrap())?;
    if f.is_zero(&lc_root) {
        return None;
    }
    let inv2r = f.inv(&f.add(&lc_root, &lc_root));
    // top-down coefficients of g (degree h), g[h] = lc_root
    let mut g = vec![f.zero(); h + 1];
    g[h] = lc_root;
    for k in 1..=h {
        // coefficient of x^(db-k) in g^2
        let mut s = f.zero();
        for i in 1..k {
            s = f.add(&s, &f.mul(&g[h - i], &g[h - k + i]));
        }
        let target = body.coeff(f, db - k);
        g[h - k] = f.mul(&f.sub(&target, &s), &inv2r);
    }
    let mut gp = Poly::from_coeffs(f, g);
    // exact verification
    if mul(f, &gp, &gp) != body {
        return None;
    }
    // reattach x^(val/2)
    if val > 0 {
        let mut c = vec![f.zero(); val / 2];
        c.extend(gp.c);
        gp = Poly::from_coeffs(f, c);
    }
    // canonical sign: leading coefficient equals the canonical square root
    let want = f.sqrt(&f.square(gp.lc().unwrap())).unwrap();
    if *gp.lc().unwrap() != want {
        gp = neg(f, &gp);
    }
    Some(gp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fq {
        Fq::prime(56311).unwrap()
    }

    fn poly(f: &Fq, v: &[i64]) -> Poly {
        Poly::from_coeffs(f, v.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn divmod_roundtrip() {
        let f = fp();
        let a = poly(&f, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let b = poly(&f, &[2, 7, 1, 8]);
        let (q, r) = divmod(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = fp();
        let mut rng = SplitMix64::new(1);
        let a: Vec<Fe> = (0..90).map(|_| f.random(&mut rng)).collect();
        let b: Vec<Fe> = (0..77).map(|_| f.random(&mut rng)).collect();
        let fast = mul_slices(&f, &a, &b);
        let mut slow = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] = f.add(&slow[i + j], &f.mul(x, y));
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn poly_sqrt_examples() {
        let f = fp();
        // (z^2+1)^2
        let g = poly(&f, &[1, 0, 1]);
        let g2 = mul(&f, &g, &g);
        let r = poly_sqrt(&f, &g2).unwrap();
        assert_eq!(mul(&f, &r, &r), g2);
        // z has odd valuation
        assert_eq!(poly_sqrt(&f, &poly(&f, &[0, 1])), None);
        // random square of degree 10
        let mut rng = SplitMix64::new(3);
        let g: Poly = Poly::from_coeffs(&f, (0..11).map(|_| f.random(&mut rng)).collect());
        let sq = mul(&f, &g, &g);
        let r = poly_sqrt(&f, &sq).unwrap();
        assert!(r == g || r == neg(&f, &g));
        // a non-square generically fails
        let ns = add(&f, &sq, &poly(&f, &[1]));
        assert!(poly_sqrt(&f, &ns).is_none());
    }

    #[test]
    fn roots_finds_planted_roots() {
        let f = fp();
        let rs = [5i64, 17, 4431, 222];
        let mut a = Poly::constant(&f, f.one());
        for &r in &rs {
            a = mul(&f, &a, &poly(&f, &[-r, 1]));
        }
        // plus an irreducible quadratic
        let nr = (2..)
            .map(|k| f.from_u64(k))
            .find(|c| !f.is_square(c))
            .unwrap();
        a = mul(
            &f,
            &a,
            &Poly::from_coeffs(&f, vec![f.neg(&nr), f.zero(), f.one()]),
        );
        let got = roots(&f, &a);
        let mut want: Vec<Fe> = rs.iter().map(|&r| f.from_i64(r)).collect();
        want.sort_by(|a, b| a.c.cmp(&b.c));
        assert_eq!(got, want);
    }

    #[test]
    fn interpolation_matches() {
        let f = fp();
        let a = poly(&f, &[9, 0, 7, 3, 1]);
        let pts: Vec<(Fe, Fe)> = (0..5)
            .map(|i| {
                let x = f.from_u64(100 + i);
                (x.clone(), eval(&f, &a, &x))
            })
            .collect();
        assert_eq!(interpolate(&f, &pts), a);
    }
}
