//! Transvectant calculus on binary sextics, the classical generator
//! covariants and scalar invariants, Igusa invariants in Streng's
//! normalization, and the explicit 3x3 matrix of derivatives of Igusa
//! invariants (the curve-level Kodaira-Spencer matrix).

use crate::field::{Fe, Fq};
use crate::mat::{Mat2, Mat3};
use crate::ring::Ring;

/// A binary form of nominal order `n`: coefficients `a_0..a_n` ascending in
/// `x`, representing `sum a_i x^i y^(n-i)`. The leading coefficient may be
/// zero; the order is part of the data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm<T> {
    pub order: usize,
    pub c: Vec<T>,
}

impl<T: Clone> BinaryForm<T> {
    pub fn new(order: usize, c: Vec<T>) -> Self {
        assert_eq!(c.len(), order + 1, "coefficient count must be order + 1");
        BinaryForm { order, c }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CovariantError {
    /// Transvectant order exceeds one of the form orders.
    OrderTooLarge,
    /// `I_10 = 0`: the sextic is singular.
    SingularCurve,
    /// `I_4 = 0`: outside the generic regime for the derivative matrix.
    ZeroI4,
}

impl std::fmt::Display for CovariantError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CovariantError::OrderTooLarge => "transvectant order exceeds form order",
            CovariantError::SingularCurve => "singular sextic (I10 = 0)",
            CovariantError::ZeroI4 => "I4 = 0",
        };
        write!(f, "{s}")
    }
}

impl std::error::Error for CovariantError {}

fn form_mul<R: Ring>(r: &R, a: &BinaryForm<R::El>, b: &BinaryForm<R::El>) -> BinaryForm<R::El> {
    let mut out = vec![r.zero(); a.order + b.order + 1];
    for (i, x) in a.c.iter().enumerate() {
        for (j, y) in b.c.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    BinaryForm::new(a.order + b.order, out)
}

fn d_dx<R: Ring>(r: &R, a: &BinaryForm<R::El>) -> BinaryForm<R::El> {
    let n = a.order;
    BinaryForm::new(
        n - 1,
        (0..n)
            .map(|j| r.mul_i64(&a.c[j + 1], (j + 1) as i64))
            .collect(),
    )
}

fn d_dy<R: Ring>(r: &R, a: &BinaryForm<R::El>) -> BinaryForm<R::El> {
    let n = a.order;
    BinaryForm::new(
        n - 1,
        (0..n).map(|j| r.mul_i64(&a.c[j], (n - j) as i64)).collect(),
    )
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

/// The `k`-th transvectant of forms with nominal orders `m`, `n`, with the
/// classical normalization `((m-k)!(n-k)!)/(m!n!) * sum (-1)^i C(k,i)
/// (d^k f/dx^(k-i)dy^i)(d^k g/dx^i dy^(k-i))`.
pub fn transvectant<R: Ring>(
    r: &R,
    fm: &BinaryForm<R::El>,
    g: &BinaryForm<R::El>,
    k: usize,
) -> Result<BinaryForm<R::El>, CovariantError> {
    let (m, n) = (fm.order, g.order);
    if k > m || k > n {
        return Err(CovariantError::OrderTooLarge);
    }
    let scale = r.from_ratio(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    let mut acc: Option<BinaryForm<R::El>> = None;
    for i in 0..=k {
        let mut df = fm.clone();
        for _ in 0..(k - i) {
            df = d_dx(r, &df);
        }
        for _ in 0..i {
            df = d_dy(r, &df);
        }
        let mut dg = g.clone();
        for _ in 0..i {
            dg = d_dx(r, &dg);
        }
        for _ in 0..(k - i) {
            dg = d_dy(r, &dg);
        }
        let term = form_mul(r, &df, &dg);
        let coef = if i % 2 == 0 {
            binom(k, i)
        } else {
            -binom(k, i)
        };
        let term_c: Vec<R::El> = term.c.iter().map(|x| r.mul_i64(x, coef)).collect();
        acc = Some(match acc {
            None => BinaryForm::new(term.order, term_c),
            Some(a) => BinaryForm::new(
                a.order,
                a.c.iter().zip(&term_c).map(|(x, y)| r.add(x, y)).collect(),
            ),
        });
    }
    let a = acc.unwrap();
    Ok(BinaryForm::new(
        a.order,
        a.c.iter().map(|x| r.mul(x, &scale)).collect(),
    ))
}

/// The generator covariants of a binary sextic used by this crate.
///
/// Scalars are the Clebsch invariants `A, B, C, D` and the Igusa-Clebsch
/// invariants `I2, I4, I6, I6p, I10`; `y1, y2, y3` are the quadratic
/// covariants, `r15` the order-zero covariant of odd weight (degree 15).
pub struct Generators<T> {
    pub a: T,
    pub b: T,
    pub cc: T,
    pub d: T,
    pub i2: T,
    pub i4: T,
    pub i6: T,
    pub i6p: T,
    pub i10: T,
    pub y1: BinaryForm<T>,
    pub y2: BinaryForm<T>,
    pub y3: BinaryForm<T>,
}

/// Compute the generator covariants via the classical transvectant tower:
/// `i = (f,f)_4`, `Delta = (i,i)_2`, `y1 = (f,i)_4`, `y2 = (i,y1)_2`,
/// `y3 = (i,y2)_2`, `A = (f,f)_6`, `B = (i,i)_4`, `C = (i,Delta)_4`,
/// `D = (y3,y1)_2`.
pub fn generators<R: Ring>(r: &R, sextic: &BinaryForm<R::El>) -> Generators<R::El> {
    assert_eq!(sextic.order, 6);
    let i4f = transvectant(r, sextic, sextic, 4).unwrap();
    let delta = transvectant(r, &i4f, &i4f, 2).unwrap();
    let y1 = transvectant(r, sextic, &i4f, 4).unwrap();
    let y2 = transvectant(r, &i4f, &y1, 2).unwrap();
    let y3 = transvectant(r, &i4f, &y2, 2).unwrap();
    let a = transvectant(r, sextic, sextic, 6).unwrap().c[0].clone();
    let b = transvectant(r, &i4f, &i4f, 4).unwrap().c[0].clone();
    let cc = transvectant(r, &i4f, &delta, 4).unwrap().c[0].clone();
    let d = transvectant(r, &y3, &y1, 2).unwrap().c[0].clone();

    // Igusa-Clebsch from Clebsch
    let i2 = r.mul_i64(&a, -120);
    let i4 = r.add(&r.mul_i64(&r.mul(&a, &a), -720), &r.mul_i64(&b, 6750));
    let a2 = r.mul(&a, &a);
    let a3 = r.mul(&a2, &a);
    let i6 = {
        let t1 = r.mul_i64(&a3, 8640);
        let t2 = r.mul_i64(&r.mul(&a, &b), -108000);
        let t3 = r.mul_i64(&cc, 202500);
        r.add(&r.add(&t1, &t2), &t3)
    };
    let i10 = {
        let a5 = r.mul(&a3, &a2);
        let t1 = r.mul_i64(&a5, -62208);
        let t2 = r.mul_i64(&r.mul(&a3, &b), 972000);
        let t3 = r.mul_i64(&r.mul(&a2, &cc), 1620000);
        let t4 = r.mul_i64(&r.mul(&a, &r.mul(&b, &b)), -3037500);
        let t5 = r.mul_i64(&r.mul(&b, &cc), -6075000);
        let t6 = r.mul_i64(&d, -4556250);
        r.add(&r.add(&r.add(&r.add(&r.add(&t1, &t2), &t3), &t4), &t5), &t6)
    };
    let i6p = r.mul(
        &r.sub(&r.mul(&i2, &i4), &r.mul_i64(&i6, 3)),
        &r.from_ratio(1, 2),
    );
    Generators {
        a,
        b,
        cc,
        d,
        i2,
        i4,
        i6,
        i6p,
        i10,
        y1,
        y2,
        y3,
    }
}

/// Streng's Igusa invariants `(I4 I6'/I10, I2 I4^2/I10, I4^5/I10^2)`.
pub fn igusa_invariants<R: Ring>(
    r: &R,
    sextic: &BinaryForm<R::El>,
) -> Result<(R::El, R::El, R::El), CovariantError>
where
    R::El: PartialEq,
{
    let g = generators(r, sextic);
    if g.i10 == r.zero() {
        return Err(CovariantError::SingularCurve);
    }
    let i10inv = r.inv(&g.i10);
    let j1 = r.mul(&r.mul(&g.i4, &g.i6p), &i10inv);
    let j2 = r.mul(&r.mul(&g.i2, &r.mul(&g.i4, &g.i4)), &i10inv);
    let i4sq = r.mul(&g.i4, &g.i4);
    let i4_5 = r.mul(&r.mul(&i4sq, &i4sq), &g.i4);
    let j3 = r.mul(&r.mul(&i4_5, &i10inv), &i10inv);
    Ok((j1, j2, j3))
}

/// The degree-15 scalar covariant, normalized so that the coefficient of
/// `a_1^5 a_4^10` equals `2^-2 3^-6 5^-10`: `-1/16` times the determinant of
/// the coefficient matrix of `(y1, y2, y3)`.
pub fn r15<R: Ring>(r: &R, sextic: &BinaryForm<R::El>) -> R::El {
    let g = generators(r, sextic);
    let rows = [&g.y1.c, &g.y2.c, &g.y3.c];
    let det = {
        let m = |i: usize, j: usize| rows[i][j].clone();
        let t1 = r.mul(
            &m(0, 0),
            &r.sub(&r.mul(&m(1, 1), &m(2, 2)), &r.mul(&m(1, 2), &m(2, 1))),
        );
        let t2 = r.mul(
            &m(0, 1),
            &r.sub(&r.mul(&m(1, 0), &m(2, 2)), &r.mul(&m(1, 2), &m(2, 0))),
        );
        let t3 = r.mul(
            &m(0, 2),
            &r.sub(&r.mul(&m(1, 0), &m(2, 1)), &r.mul(&m(1, 1), &m(2, 0))),
        );
        r.add(&r.sub(&t1, &t2), &t3)
    };
    r.mul(&det, &r.from_ratio(-1, 16))
}

/// The matrix of derivatives of Igusa invariants with respect to the period
/// matrix, evaluated through the curve's covariants. Row `k` holds the
/// quadratic `c2 x^2 + c1 x + c0` attached to `j_k` as `(2 c2, c1, 2 c0)`.
pub fn dtau_j_matrix(f: &Fq, sextic: &BinaryForm<Fe>) -> Result<Mat3, CovariantError> {
    let g = generators(f, sextic);
    if f.is_zero(&g.i10) {
        return Err(CovariantError::SingularCurve);
    }
    if f.is_zero(&g.i4) {
        return Err(CovariantError::ZeroI4);
    }
    let i10inv = f.inv(&g.i10);
    let i2i4 = f.mul(&g.i2, &g.i4);
    let i2sq_i4 = f.mul(&g.i2, &i2i4);
    let i4sq = f.square(&g.i4);

    let lin = |terms: &[(i64, i64, &Fe, &BinaryForm<Fe>)]| -> [Fe; 3] {
        let mut acc = [f.zero(), f.zero(), f.zero()];
        for (num, den, scalar, quad) in terms {
            let coef = f.mul(&f.from_ratio(*num, *den), scalar);
            for s in 0..3 {
                acc[s] = f.add(&acc[s], &f.mul(&coef, &quad.c[s]));
            }
        }
        acc
    };

    // row1 = (153/8 I2^2 I4 - 135/2 I2 I6 + 135/2 I4^2) y1
    //      + (46575/4 I2 I4 - 30375 I6) y2 + 1366875 I4 y3, over I10
    let i2i6 = f.mul(&g.i2, &g.i6);
    let q1 = lin(&[
        (153, 8, &i2sq_i4, &g.y1),
        (-135, 2, &i2i6, &g.y1),
        (135, 2, &i4sq, &g.y1),
        (46575, 4, &i2i4, &g.y2),
        (-30375, 1, &g.i6, &g.y2),
        (1366875, 1, &g.i4, &g.y3),
    ]);
    // row2 = (90 I2^2 I4 + 900 I4^2) y1 + 40500 I2 I4 y2, over I10
    let q2 = lin(&[
        (90, 1, &i2sq_i4, &g.y1),
        (900, 1, &i4sq, &g.y1),
        (40500, 1, &i2i4, &g.y2),
    ]);
    // row3 = I4^4 (225 I2 y1 + 101250 y2), over I10^2
    let i4_4 = f.square(&i4sq);
    let i2i4_4 = f.mul(&g.i2, &i4_4);
    let q3 = lin(&[(225, 1, &i2i4_4, &g.y1), (101250, 1, &i4_4, &g.y2)]);

    let row = |q: [Fe; 3], scale: &Fe| -> [Fe; 3] {
        // quadratic [c0, c1, c2] ascending -> (2 c2, c1, 2 c0), scaled
        [
            f.mul(&f.mul_u64(&q[2], 2), scale),
            f.mul(&q[1], scale),
            f.mul(&f.mul_u64(&q[0], 2), scale),
        ]
    };
    let i10inv2 = f.square(&i10inv);
    Ok([row(q1, &i10inv), row(q2, &i10inv), row(q3, &i10inv2)])
}

/// The twisted action `det^-2 Sym^n(r)` on a binary form:
/// `(bx + d)^n E((ax + c)/(bx + d)) / det(r)^2`, i.e. substitute
/// `x -> a x + c y`, `y -> b x + d y` and divide by `det^2`.
pub fn gl2_act(f: &Fq, form: &BinaryForm<Fe>, r: &Mat2) -> BinaryForm<Fe> {
    let n = form.order;
    let l1 = [r.clone()[1][0].clone(), r[0][0].clone()]; // c + a x (ascending)
    let l2 = [r[1][1].clone(), r[0][1].clone()]; // d + b x
                                                 // powers of the two linear forms
    let mut p1: Vec<Vec<Fe>> = vec![vec![f.one()]];
    let mut p2: Vec<Vec<Fe>> = vec![vec![f.one()]];
    for i in 0..n {
        let mut nxt = vec![f.zero(); i + 2];
        for (j, v) in p1[i].iter().enumerate() {
            nxt[j] = f.add(&nxt[j], &f.mul(v, &l1[0]));
            nxt[j + 1] = f.add(&nxt[j + 1], &f.mul(v, &l1[1]));
        }
        p1.push(nxt);
        let mut nxt = vec![f.zero(); i + 2];
        for (j, v) in p2[i].iter().enumerate() {
            nxt[j] = f.add(&nxt[j], &f.mul(v, &l2[0]));
            nxt[j + 1] = f.add(&nxt[j + 1], &f.mul(v, &l2[1]));
        }
        p2.push(nxt);
    }
    let mut out = vec![f.zero(); n + 1];
    for i in 0..=n {
        if f.is_zero(&form.c[i]) {
            continue;
        }
        // l1^i * l2^(n-i)
        let mut term = vec![f.zero(); n + 1];
        for (u, x) in p1[i].iter().enumerate() {
            for (v, y) in p2[n - i].iter().enumerate() {
                term[u + v] = f.add(&term[u + v], &f.mul(x, y));
            }
        }
        for (j, t) in term.iter().enumerate() {
            out[j] = f.add(&out[j], &f.mul(&form.c[i], t));
        }
    }
    let det = crate::mat::mat2_det(f, r);
    let scale = f.inv(&f.square(&det));
    BinaryForm::new(n, out.into_iter().map(|x| f.mul(&x, &scale)).collect())
}

/// Independent derivative-matrix construction through the algebraic
/// Kodaira-Spencer pairing: directional derivatives of the Igusa invariants
/// along coefficient deformations, paired against root-residue sums
/// `sum_roots u^m dE(u)/E'(u)^2`. Agrees with [`dtau_j_matrix`] up to the
/// global factor 2; used as a cross-check oracle.
pub fn dtau_j_residue_route(f: &Fq, sextic: &BinaryForm<Fe>) -> Option<Mat3> {
    use crate::poly::{self, Poly};
    use crate::ring::Duals;

    let e_poly = Poly::from_coeffs(f, sextic.c.clone());
    if e_poly.deg() != 6 {
        return None; // the pairing derivation assumes a degree-6 model
    }
    let ep = poly::derivative(f, &e_poly);
    let iep = poly::inv_mod(f, &ep, &e_poly)?;
    let iep2 = poly::rem(f, &poly::mul(f, &iep, &iep), &e_poly);

    // power sums of the roots of E via Newton's identities
    let lc = e_poly.lc().unwrap().clone();
    let lci = f.inv(&lc);
    let elem: Vec<Fe> = (0..=6)
        .map(|i| {
            let c = f.mul(&e_poly.coeff(f, 6 - i), &lci);
            if i % 2 == 1 {
                f.neg(&c)
            } else {
                c
            }
        })
        .collect();
    let mut psums = vec![f.zero(); 8];
    for k in 1..=7usize {
        if k <= 6 {
            let mut s = f.mul_u64(&elem[k], k as u64);
            if k % 2 == 0 {
                s = f.neg(&s);
            }
            for i in 1..k {
                let t = f.mul(&elem[k - i], &psums[i]);
                s = if (k - 1 + i) % 2 == 0 {
                    f.add(&s, &t)
                } else {
                    f.sub(&s, &t)
                };
            }
            psums[k] = s;
        } else {
            let mut s = f.zero();
            for i in 1..=6 {
                let t = f.mul(&elem[i], &psums[k - i]);
                s = if i % 2 == 0 {
                    f.add(&s, &t)
                } else {
                    f.sub(&s, &t)
                };
            }
            psums[k] = f.neg(&s);
        }
    }
    let trace = |g: &Poly| -> Fe {
        let gr = poly::rem(f, g, &e_poly);
        let mut s = f.zero();
        for (i, c) in gr.c.iter().enumerate() {
            let pw = if i == 0 {
                f.from_u64(6)
            } else {
                psums[i].clone()
            };
            s = f.add(&s, &f.mul(c, &pw));
        }
        s
    };

    // RES[m][j] = trace(u^(m+j) / E'^2), 0 <= m, j <= 2
    let mut res = [
        [f.zero(), f.zero(), f.zero()],
        [f.zero(), f.zero(), f.zero()],
        [f.zero(), f.zero(), f.zero()],
    ];
    for m in 0..3 {
        for j in 0..3 {
            let mut mono = vec![f.zero(); m + j + 1];
            mono[m + j] = f.one();
            let g = poly::rem(
                f,
                &poly::mul(f, &Poly::from_coeffs(f, mono), &iep2),
                &e_poly,
            );
            res[m][j] = trace(&g);
        }
    }
    // DJ[k][j] = eps-part of j_k(E + eps u^j)
    let duals = Duals { f: f.clone() };
    let mut dj = [
        [f.zero(), f.zero(), f.zero()],
        [f.zero(), f.zero(), f.zero()],
        [f.zero(), f.zero(), f.zero()],
    ];
    for j in 0..3 {
        let coeffs: Vec<(Fe, Fe)> = sextic
            .c
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == j {
                    duals.variable(c)
                } else {
                    duals.lift(c)
                }
            })
            .collect();
        let fd = BinaryForm::new(6, coeffs);
        let (j1, j2, j3) = igusa_invariants(&duals, &fd).ok()?;
        dj[0][j] = j1.1;
        dj[1][j] = j2.1;
        dj[2][j] = j3.1;
    }
    let ri = crate::mat::mat3_inv(f, &res)?;
    let m = crate::mat::mat3_mul(f, &dj, &ri);
    // columns (2 M[:,2], M[:,1], 2 M[:,0])
    Some(std::array::from_fn(|k| {
        [
            f.mul_u64(&m[k][2], 2),
            m[k][1].clone(),
            f.mul_u64(&m[k][0], 2),
        ]
    }))
}
