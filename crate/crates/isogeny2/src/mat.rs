//! Small fixed-size matrices over a field element type.

use crate::field::{Fe, Fq};

pub type Mat2 = [[Fe; 2]; 2];
pub type Mat3 = [[Fe; 3]; 3];

pub fn mat2_id(f: &Fq) -> Mat2 {
    [[f.one(), f.zero()], [f.zero(), f.one()]]
}

pub fn mat2_det(f: &Fq, m: &Mat2) -> Fe {
    f.sub(&f.mul(&m[0][0], &m[1][1]), &f.mul(&m[0][1], &m[1][0]))
}

pub fn mat2_mul(f: &Fq, a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| f.add(&f.mul(&a[i][0], &b[0][j]), &f.mul(&a[i][1], &b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_inv(f: &Fq, m: &Mat2) -> Option<Mat2> {
    let d = mat2_det(f, m);
    if f.is_zero(&d) {
        return None;
    }
    let di = f.inv(&d);
    Some([
        [f.mul(&m[1][1], &di), f.neg(&f.mul(&m[0][1], &di))],
        [f.neg(&f.mul(&m[1][0], &di)), f.mul(&m[0][0], &di)],
    ])
}

pub fn mat2_scale(f: &Fq, m: &Mat2, s: &Fe) -> Mat2 {
    [
        [f.mul(&m[0][0], s), f.mul(&m[0][1], s)],
        [f.mul(&m[1][0], s), f.mul(&m[1][1], s)],
    ]
}

pub fn mat2_transpose(m: &Mat2) -> Mat2 {
    [
        [m[0][0].clone(), m[1][0].clone()],
        [m[0][1].clone(), m[1][1].clone()],
    ]
}

pub fn mat2_embed(big: &Fq, m: &Mat2) -> Mat2 {
    [
        [big.embed(&m[0][0]), big.embed(&m[0][1])],
        [big.embed(&m[1][0]), big.embed(&m[1][1])],
    ]
}

pub fn mat3_det(f: &Fq, m: &Mat3) -> Fe {
    let t1 = f.mul(
        &m[0][0],
        &f.sub(&f.mul(&m[1][1], &m[2][2]), &f.mul(&m[1][2], &m[2][1])),
    );
    let t2 = f.mul(
        &m[0][1],
        &f.sub(&f.mul(&m[1][0], &m[2][2]), &f.mul(&m[1][2], &m[2][0])),
    );
    let t3 = f.mul(
        &m[0][2],
        &f.sub(&f.mul(&m[1][0], &m[2][1]), &f.mul(&m[1][1], &m[2][0])),
    );
    f.add(&f.sub(&t1, &t2), &t3)
}

pub fn mat3_mul(f: &Fq, a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = f.zero();
            for k in 0..3 {
                s = f.add(&s, &f.mul(&a[i][k], &b[k][j]));
            }
            s
        })
    })
}

/// Adjugate: `m * adj(m) = det(m) * I`.
pub fn mat3_adj(f: &Fq, m: &Mat3) -> Mat3 {
    let cof = |r: usize, c: usize| {
        let r1 = (r + 1) % 3;
        let r2 = (r + 2) % 3;
        let c1 = (c + 1) % 3;
        let c2 = (c + 2) % 3;
        f.sub(
            &f.mul(&m[r1][c1], &m[r2][c2]),
            &f.mul(&m[r1][c2], &m[r2][c1]),
        )
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

pub fn mat3_inv(f: &Fq, m: &Mat3) -> Option<Mat3> {
    let d = mat3_det(f, m);
    if f.is_zero(&d) {
        return None;
    }
    let di = f.inv(&d);
    let adj = mat3_adj(f, m);
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| f.mul(&adj[i][j], &di))
    }))
}

pub fn mat3_embed(big: &Fq, m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| big.embed(&m[i][j])))
}

/// `Sym^2` of `r = [[a,b],[c,d]]` in the basis `(x^2, x, 1)`:
/// `[[a^2, ab, b^2], [2ac, ad+bc, 2bd], [c^2, cd, d^2]]`.
pub fn sym2(f: &Fq, r: &Mat2) -> Mat3 {
    let (a, b, c, d) = (&r[0][0], &r[0][1], &r[1][0], &r[1][1]);
    [
        [f.mul(a, a), f.mul(a, b), f.mul(b, b)],
        [
            f.mul_u64(&f.mul(a, c), 2),
            f.add(&f.mul(a, d), &f.mul(b, c)),
            f.mul_u64(&f.mul(b, d), 2),
        ],
        [f.mul(c, c), f.mul(c, d), f.mul(d, d)],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn adjugate_identity() {
        let f = Fq::prime(10007).unwrap();
        let mut rng = SplitMix64::new(8);
        for _ in 0..20 {
            let m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
            let d = mat3_det(&f, &m);
            let adj = mat3_adj(&f, &m);
            let prod = mat3_mul(&f, &m, &adj);
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { d.clone() } else { f.zero() };
                    assert_eq!(prod[i][j], want);
                }
            }
        }
    }

    #[test]
    fn sym2_is_multiplicative() {
        let f = Fq::prime(10007).unwrap();
        let mut rng = SplitMix64::new(9);
        for _ in 0..20 {
            let a: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
            let b: Mat2 = std::array::from_fn(|_| std::array::from_fn(|_| f.random(&mut rng)));
            let lhs = sym2(&f, &mat2_mul(&f, &a, &b));
            let rhs = mat3_mul(&f, &sym2(&f, &a), &sym2(&f, &b));
            assert_eq!(lhs, rhs);
        }
    }
}
