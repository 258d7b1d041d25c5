//! Finite fields: the prime field `F_p` (odd `p`, machine word) and towers of
//! quadratic extensions of total degree dividing 8, with deterministic square
//! roots.
//!
//! A field is described by [`Fq`], a cheaply clonable handle. Elements are
//! plain coefficient vectors ([`Fe`]) over `F_p` in the recursive tower basis;
//! all arithmetic goes through `Fq` methods, so an element is only meaningful
//! together with the field it was created in.

use std::fmt;
use std::sync::Arc;

/// Errors from field construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Total extension degree over `F_p` would exceed 8.
    DegreeOverflow,
    /// Tried to adjoin a square root of an element that is already a square.
    SquareInField,
    /// The supplied minimal polynomial is reducible over the current field.
    ReduciblePolynomial,
    /// The modulus is not an odd prime.
    BadModulus,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::DegreeOverflow => write!(f, "extension degree over F_p would exceed 8"),
            FieldError::SquareInField => write!(f, "element is already a square in the field"),
            FieldError::ReduciblePolynomial => write!(f, "minimal polynomial is reducible"),
            FieldError::BadModulus => write!(f, "modulus is not an odd prime >= 3"),
        }
    }
}

impl std::error::Error for FieldError {}

/// One quadratic step `t^2 + b t + c = 0`; `b`, `c` live in the field below.
#[derive(Debug)]
struct QuadStep {
    b: Vec<u64>,
    c: Vec<u64>,
}

#[derive(Debug)]
struct FqInner {
    p: u64,
    steps: Vec<QuadStep>,
}

/// A finite field `F_p(t_1, ..., t_k)` built as a tower of quadratic
/// extensions. Immutable after construction; clones share the descriptor.
#[derive(Clone)]
pub struct Fq {
    inner: Arc<FqInner>,
}

/// A field element: coefficient vector of length `2^levels` over `F_p`.
///
/// The layout is recursive: an element of a level-`k` field is the
/// concatenation of two level-`k-1` elements `(lo, hi)` meaning `lo + hi*t_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fe {
    pub(crate) c: Vec<u64>,
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe{:?}", self.c)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// Little-endian multi-limb helpers for exponents up to p^8.
fn big_mul_small(a: &mut Vec<u64>, m: u64) {
    let mut carry: u128 = 0;
    for limb in a.iter_mut() {
        let v = *limb as u128 * m as u128 + carry;
        *limb = v as u64;
        carry = v >> 64;
    }
    while carry > 0 {
        a.push(carry as u64);
        carry >>= 64;
    }
}

fn big_sub_one(a: &mut [u64]) {
    for limb in a.iter_mut() {
        if *limb > 0 {
            *limb -= 1;
            return;
        }
        *limb = u64::MAX;
    }
}

fn big_halve(a: &mut [u64]) {
    let mut carry = 0u64;
    for limb in a.iter_mut().rev() {
        let new = (*limb >> 1) | (carry << 63);
        carry = *limb & 1;
        *limb = new;
    }
}

fn big_is_odd(a: &[u64]) -> bool {
    a[0] & 1 == 1
}

fn big_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

impl Fq {
    /// The prime field `F_p`. `p` must be an odd prime, at least 3.
    pub fn prime(p: u64) -> Result<Fq, FieldError> {
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(FieldError::BadModulus);
        }
        Ok(Fq {
            inner: Arc::new(FqInner {
                p,
                steps: Vec::new(),
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    /// Extension degree over `F_p` (a power of two, at most 8).
    pub fn degree(&self) -> usize {
        1 << self.inner.steps.len()
    }

    fn levels(&self) -> usize {
        self.inner.steps.len()
    }

    /// Number of elements, as little-endian limbs.
    fn size_limbs(&self) -> Vec<u64> {
        let mut q = vec![1u64];
        for _ in 0..self.degree() {
            big_mul_small(&mut q, self.inner.p);
        }
        q
    }

    // ----- element constructors -----

    pub fn zero(&self) -> Fe {
        Fe {
            c: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> Fe {
        let mut c = vec![0; self.degree()];
        c[0] = 1;
        Fe { c }
    }

    pub fn from_u64(&self, n: u64) -> Fe {
        let mut c = vec![0; self.degree()];
        c[0] = n % self.inner.p;
        Fe { c }
    }

    pub fn from_i64(&self, n: i64) -> Fe {
        let p = self.inner.p as i64;
        let r = ((n % p) + p) % p;
        self.from_u64(r as u64)
    }

    /// Ratio of two integers reduced into the field. Panics if `den ≡ 0 (mod p)`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Fe {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d)
    }

    /// Embed an element of a subfield lower in the same tower (shorter
    /// coefficient vector) into this field.
    pub fn embed(&self, a: &Fe) -> Fe {
        assert!(
            a.c.len() <= self.degree(),
            "embed: element from a larger field"
        );
        let mut c = a.c.clone();
        c.resize(self.degree(), 0);
        Fe { c }
    }

    /// The generator of the top extension step (the image of `t_k`).
    pub fn generator(&self) -> Fe {
        assert!(self.levels() > 0, "prime field has no extension generator");
        let mut c = vec![0; self.degree()];
        c[self.degree() / 2] = 1;
        Fe { c }
    }

    /// True when the element's coefficients above the prime part vanish.
    pub fn in_prime_subfield(&self, a: &Fe) -> bool {
        a.c[1..].iter().all(|&x| x == 0)
    }

    /// The `F_p`-coordinate vector of an element.
    pub fn coeffs<'a>(&self, a: &'a Fe) -> &'a [u64] {
        &a.c
    }

    // ----- arithmetic -----

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.inner.p;
        Fe {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(&x, &y)| {
                    let s = x + y;
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.inner.p;
        Fe {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
                .collect(),
        }
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.inner.p;
        Fe {
            c: a.c
                .iter()
                .map(|&x| if x == 0 { 0 } else { p - x })
                .collect(),
        }
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let mut out = vec![0u64; self.degree()];
        self.mul_level(&a.c, &b.c, self.levels(), &mut out);
        Fe { c: out }
    }

    pub fn mul_u64(&self, a: &Fe, m: u64) -> Fe {
        let p = self.inner.p;
        let m = m % p;
        Fe {
            c: a.c.iter().map(|&x| mul_mod(x, m, p)).collect(),
        }
    }

    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    fn mul_level(&self, a: &[u64], b: &[u64], lvl: usize, out: &mut [u64]) {
        let p = self.inner.p;
        if lvl == 0 {
            out[0] = mul_mod(a[0], b[0], p);
            return;
        }
        let h = a.len() / 2;
        let step = &self.inner.steps[lvl - 1];
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let mut t00 = vec![0u64; h];
        let mut t11 = vec![0u64; h];
        let mut t01 = vec![0u64; h];
        let mut t10 = vec![0u64; h];
        self.mul_level(a0, b0, lvl - 1, &mut t00);
        self.mul_level(a1, b1, lvl - 1, &mut t11);
        self.mul_level(a0, b1, lvl - 1, &mut t01);
        self.mul_level(a1, b0, lvl - 1, &mut t10);
        // lo = t00 - C*t11 ; hi = t01 + t10 - B*t11
        let mut cb = vec![0u64; h];
        self.mul_level(&step.c, &t11, lvl - 1, &mut cb);
        let mut bb = vec![0u64; h];
        self.mul_level(&step.b, &t11, lvl - 1, &mut bb);
        for i in 0..h {
            out[i] = sub_mod(t00[i], cb[i], p);
            out[h + i] = sub_mod(add_mod(t01[i], t10[i], p), bb[i], p);
        }
    }

    pub fn inv(&self, a: &Fe) -> Fe {
        assert!(!self.is_zero(a), "inverse of zero");
        let mut out = vec![0u64; self.degree()];
        self.inv_level(&a.c, self.levels(), &mut out);
        Fe { c: out }
    }

    fn inv_level(&self, a: &[u64], lvl: usize, out: &mut [u64]) {
        let p = self.inner.p;
        if lvl == 0 {
            out[0] = pow_mod(a[0], p - 2, p);
            return;
        }
        let h = a.len() / 2;
        let step = &self.inner.steps[lvl - 1];
        let (a0, a1) = a.split_at(h);
        // norm = a0^2 - a0*a1*B + a1^2*C  (in the subfield)
        let mut a0a0 = vec![0u64; h];
        self.mul_level(a0, a0, lvl - 1, &mut a0a0);
        let mut a0a1 = vec![0u64; h];
        self.mul_level(a0, a1, lvl - 1, &mut a0a1);
        let mut a1a1 = vec![0u64; h];
        self.mul_level(a1, a1, lvl - 1, &mut a1a1);
        let mut tb = vec![0u64; h];
        self.mul_level(&a0a1, &step.b, lvl - 1, &mut tb);
        let mut tc = vec![0u64; h];
        self.mul_level(&a1a1, &step.c, lvl - 1, &mut tc);
        let mut norm = vec![0u64; h];
        for i in 0..h {
            norm[i] = add_mod(sub_mod(a0a0[i], tb[i], p), tc[i], p);
        }
        let mut ninv = vec![0u64; h];
        self.inv_level(&norm, lvl - 1, &mut ninv);
        // (a0 + a1 t)^(-1) = ((a0 - a1 B) - a1 t) / norm
        let mut a1b = vec![0u64; h];
        self.mul_level(a1, &step.b, lvl - 1, &mut a1b);
        let mut lo = vec![0u64; h];
        for i in 0..h {
            lo[i] = sub_mod(a0[i], a1b[i], p);
        }
        let mut lo_out = vec![0u64; h];
        self.mul_level(&lo, &ninv, lvl - 1, &mut lo_out);
        let mut hi_out = vec![0u64; h];
        self.mul_level(a1, &ninv, lvl - 1, &mut hi_out);
        for i in 0..h {
            out[i] = lo_out[i];
            out[h + i] = sub_mod(0, hi_out[i], p);
        }
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn pow_big(&self, a: &Fe, e: &[u64]) -> Fe {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e.to_vec();
        while !big_is_zero(&e) {
            if big_is_odd(&e) {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            big_halve(&mut e);
        }
        r
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: &Fe) -> Fe {
        self.pow_big(a, &[self.inner.p])
    }

    // ----- square roots -----

    /// Euler criterion: true for zero and nonzero squares.
    pub fn is_square(&self, a: &Fe) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let mut e = self.size_limbs();
        big_sub_one(&mut e);
        big_halve(&mut e);
        self.pow_big(a, &e) == self.one()
    }

    /// Deterministic square root. Returns the root whose coefficient vector is
    /// lexicographically smaller of the two, or `None` for non-squares.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks over F_q
        let mut qm1 = self.size_limbs();
        big_sub_one(&mut qm1);
        let mut t = qm1.clone();
        let mut s = 0u32;
        while !big_is_odd(&t) {
            big_halve(&mut t);
            s += 1;
        }
        let n = self.nonresidue();
        let mut z = self.pow_big(&n, &t);
        let mut m = s;
        let mut u = self.pow_big(a, &t);
        let mut tp1 = t.clone();
        // (t+1)/2
        tp1[0] += 1; // t odd so no carry beyond limb 0 unless t[0]==MAX (impossible: odd)
        big_halve(&mut tp1);
        let mut r = self.pow_big(a, &tp1);
        let one = self.one();
        while u != one {
            let mut i = 0u32;
            let mut u2 = u.clone();
            while u2 != one {
                u2 = self.mul(&u2, &u2);
                i += 1;
            }
            let mut b = z.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            z = self.mul(&b, &b);
            u = self.mul(&u, &z);
            r = self.mul(&r, &b);
        }
        let r2 = self.neg(&r);
        Some(if r.c <= r2.c { r } else { r2 })
    }

    /// A quadratic non-residue, found deterministically: small integers first,
    /// then a fixed-seed pseudorandom scan (extensions of `F_p` contain no
    /// integer non-residues).
    fn nonresidue(&self) -> Fe {
        for k in 2..64u64 {
            let c = self.from_u64(k);
            if !self.is_zero(&c) && !self.is_square(&c) {
                return c;
            }
        }
        let mut rng = crate::rng::SplitMix64::new(0x736f_7274_696c_6567);
        loop {
            let e = self.random(&mut rng);
            if !self.is_zero(&e) && !self.is_square(&e) {
                return e;
            }
        }
    }

    pub fn random(&self, rng: &mut crate::rng::SplitMix64) -> Fe {
        Fe {
            c: (0..self.degree())
                .map(|_| rng.below(self.inner.p))
                .collect(),
        }
    }

    // ----- extensions -----

    /// Adjoin a square root of a non-square `a`: returns `K[t]/(t^2 - a)` and
    /// the image of `t`.
    pub fn adjoin_sqrt(&self, a: &Fe) -> Result<(Fq, Fe), FieldError> {
        if self.is_square(a) {
            return Err(FieldError::SquareInField);
        }
        self.adjoin_quadratic(&self.zero(), &self.neg(a))
    }

    /// Adjoin a root of the monic quadratic `t^2 + b t + c` (must be
    /// irreducible over the current field). Returns the extension and the
    /// image of `t`.
    pub fn adjoin_quadratic(&self, b: &Fe, c: &Fe) -> Result<(Fq, Fe), FieldError> {
        if self.degree() >= 8 {
            return Err(FieldError::DegreeOverflow);
        }
        // irreducible iff the discriminant b^2 - 4c is a non-square
        let disc = self.sub(&self.square(b), &self.mul_u64(c, 4));
        if self.is_square(&disc) {
            return Err(FieldError::ReduciblePolynomial);
        }
        let mut steps: Vec<QuadStep> = self
            .inner
            .steps
            .iter()
            .map(|s| QuadStep {
                b: s.b.clone(),
                c: s.c.clone(),
            })
            .collect();
        steps.push(QuadStep {
            b: b.c.clone(),
            c: c.c.clone(),
        });
        let ext = Fq {
            inner: Arc::new(FqInner {
                p: self.inner.p,
                steps,
            }),
        };
        let gen = ext.generator();
        Ok((ext, gen))
    }

    /// Square root of `a`, extending the field by one quadratic step when `a`
    /// is not a square. Returns the (possibly enlarged) field, the root, and
    /// whether an extension happened.
    pub fn sqrt_extending(&self, a: &Fe) -> Result<(Fq, Fe, bool), FieldError> {
        if let Some(r) = self.sqrt(a) {
            return Ok((self.clone(), r, false));
        }
        let (ext, t) = self.adjoin_sqrt(a)?;
        Ok((ext, t, true))
    }

    /// Description of the tower: the minimal polynomial `(b, c)` coefficient
    /// vectors of each step, for serialization.
    pub fn tower_description(&self) -> Vec<(Vec<u64>, Vec<u64>)> {
        self.inner
            .steps
            .iter()
            .map(|s| (s.b.clone(), s.c.clone()))
            .collect()
    }

    /// Two fields are compatible when one's tower is a prefix of the other's.
    pub fn same_field(&self, other: &Fq) -> bool {
        self.inner.p == other.inner.p
            && self.levels() == other.levels()
            && self
                .inner
                .steps
                .iter()
                .zip(&other.inner.steps)
                .all(|(a, b)| a.b == b.b && a.c == b.c)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.inner.p, self.degree())
    }
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}
