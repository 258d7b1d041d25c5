//! Tangent-matrix candidates from derivative data: the deformation matrix
//! and its `Sym^2` extraction in the Siegel case, and the diagonal-square
//! solve in the Hilbert case.

use crate::field::{Fe, Fq};
use crate::mat::{self, Mat2, Mat3};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangentError {
    /// One of the matrix factors is singular; the name says which.
    SingularMatrix(&'static str),
    /// The computed `(dphi)^2` is not diagonal: the curve models are not
    /// normalized compatibly (the caller may apply `x -> 1/x` on one side).
    NonDiagonalSolution,
}

impl std::fmt::Display for TangentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TangentError::SingularMatrix(which) => write!(f, "singular matrix: {which}"),
            TangentError::NonDiagonalSolution => write!(f, "tangent square is not diagonal"),
        }
    }
}

impl std::error::Error for TangentError {}

/// `-D_tauJ(C')^-1 . D_R^-1 . D_L . D_tauJ(C)`; the tangent matrix satisfies
/// `Sym^2(dphi) = ell * D`.
pub fn deformation_matrix_siegel(
    f: &Fq,
    d_left: &Mat3,
    d_right: &Mat3,
    dtau_c: &Mat3,
    dtau_cp: &Mat3,
) -> Result<Mat3, TangentError> {
    let dtau_cp_inv = mat::mat3_inv(f, dtau_cp).ok_or(TangentError::SingularMatrix("DtauJ(C')"))?;
    let d_right_inv = mat::mat3_inv(f, d_right).ok_or(TangentError::SingularMatrix("DPsi_R"))?;
    if mat::mat3_inv(f, d_left).is_none() {
        return Err(TangentError::SingularMatrix("DPsi_L"));
    }
    if mat::mat3_inv(f, dtau_c).is_none() {
        return Err(TangentError::SingularMatrix("DtauJ(C)"));
    }
    let m = mat::mat3_mul(
        f,
        &mat::mat3_mul(f, &dtau_cp_inv, &d_right_inv),
        &mat::mat3_mul(f, d_left, dtau_c),
    );
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| f.neg(&m[i][j]))
    }))
}

/// Recover `M` (up to global sign, canonicalized) from `S = scale * Sym^2(M)`.
/// Verifies all nine pattern equations exactly; `None` when the pattern is
/// inconsistent or the needed square root does not exist in the field.
pub fn sym2_extract(f: &Fq, s: &Mat3, scale: &Fe) -> Option<Mat2> {
    if f.is_zero(scale) {
        return None;
    }
    let si = f.inv(scale);
    let t: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| f.mul(&s[i][j], &si)));
    let half = f.from_ratio(1, 2);
    // pivots: a^2 = t00, b^2 = t02, c^2 = t20, d^2 = t22
    let m = if !f.is_zero(&t[0][0]) {
        let a = f.sqrt(&t[0][0])?;
        let ai = f.inv(&a);
        let b = f.mul(&t[0][1], &ai);
        let c = f.mul(&f.mul(&t[1][0], &half), &ai);
        let d = f.mul(&f.sub(&t[1][1], &f.mul(&b, &c)), &ai);
        [[a, b], [c, d]]
    } else if !f.is_zero(&t[0][2]) {
        let b = f.sqrt(&t[0][2])?;
        let bi = f.inv(&b);
        let a = f.mul(&t[0][1], &bi);
        let d = f.mul(&f.mul(&t[1][2], &half), &bi);
        let c = f.mul(&f.sub(&t[1][1], &f.mul(&a, &d)), &bi);
        [[a, b], [c, d]]
    } else if !f.is_zero(&t[2][0]) {
        let c = f.sqrt(&t[2][0])?;
        let ci = f.inv(&c);
        let a = f.mul(&f.mul(&t[1][0], &half), &ci);
        let d = f.mul(&t[2][1], &ci);
        let b = f.mul(&f.sub(&t[1][1], &f.mul(&a, &d)), &ci);
        [[a, b], [c, d]]
    } else if !f.is_zero(&t[2][2]) {
        let d = f.sqrt(&t[2][2])?;
        let di = f.inv(&d);
        let c = f.mul(&t[2][1], &di);
        let b = f.mul(&f.mul(&t[1][2], &half), &di);
        let a = f.mul(&f.sub(&t[1][1], &f.mul(&b, &c)), &di);
        [[a, b], [c, d]]
    } else {
        return None;
    };
    // exact consistency of the full pattern
    if mat::sym2(f, &m) != t {
        return None;
    }
    Some(canonical_sign(f, &m))
}

/// Fix the global sign of a matrix determined up to `+-`: the first nonzero
/// entry is made equal to its canonical square root's square... i.e. the
/// first nonzero entry `x` is normalized so that `x` equals the canonical
/// root of `x^2`.
pub fn canonical_sign(f: &Fq, m: &Mat2) -> Mat2 {
    for i in 0..2 {
        for j in 0..2 {
            if !f.is_zero(&m[i][j]) {
                let canon = f.sqrt(&f.square(&m[i][j])).unwrap();
                return if m[i][j] == canon {
                    m.clone()
                } else {
                    mat::mat2_scale(f, m, &f.from_i64(-1))
                };
            }
        }
    }
    m.clone()
}

/// One Hilbert tangent candidate: a diagonal matrix over a possibly extended
/// field, with a tag recording the conjugate-branch and sign choices.
#[derive(Clone, Debug)]
pub struct TangentCandidate {
    pub field: Fq,
    pub matrix: Mat2,
    pub tag: String,
}

/// Solve `D_L . DtG(C) = -D_R . DtG(C') . Diag(1/beta, 1/betabar) . (dphi)^2`
/// for the diagonal `(dphi)^2`, for both assignments of `(beta, betabar)` to
/// the two columns, then take both square-root sign combinations modulo
/// global sign: up to four candidates.
pub fn tangent_candidates_hilbert(
    f: &Fq,
    d_left: &[Vec<Fe>],
    d_right: &[Vec<Fe>],
    dtg_c: &Mat2,
    dtg_cp: &Mat2,
    beta: &Fe,
    betabar: &Fe,
) -> Result<Vec<TangentCandidate>, TangentError> {
    let to_mat2 = |m: &[Vec<Fe>]| -> Mat2 {
        [
            [m[0][0].clone(), m[0][1].clone()],
            [m[1][0].clone(), m[1][1].clone()],
        ]
    };
    let dl = to_mat2(d_left);
    let dr = to_mat2(d_right);
    let rhs_base = mat::mat2_mul(f, &dr, dtg_cp);
    let rhs_inv =
        mat::mat2_inv(f, &rhs_base).ok_or(TangentError::SingularMatrix("DPsi_R . DtG(C')"))?;
    let lhs = mat::mat2_mul(f, &dl, dtg_c);
    // (dphi)^2 = -Diag(beta, betabar) . (D_R DtG')^-1 . D_L DtG(C)
    let core = mat::mat2_mul(f, &rhs_inv, &lhs);
    let mut out = Vec::new();
    for (tag, b1, b2) in [("beta", beta, betabar), ("betabar", betabar, beta)] {
        let sq: Mat2 = [
            [
                f.neg(&f.mul(b1, &core[0][0])),
                f.neg(&f.mul(b1, &core[0][1])),
            ],
            [
                f.neg(&f.mul(b2, &core[1][0])),
                f.neg(&f.mul(b2, &core[1][1])),
            ],
        ];
        if !f.is_zero(&sq[0][1]) || !f.is_zero(&sq[1][0]) {
            return Err(TangentError::NonDiagonalSolution);
        }
        // square roots of the two diagonal entries, extending at most twice
        let (f1, r1, _) = f
            .sqrt_extending(&sq[0][0])
            .map_err(|_| TangentError::SingularMatrix("degree overflow"))?;
        let d2 = f1.embed(&sq[1][1]);
        let (f2, r2, _) = f1
            .sqrt_extending(&d2)
            .map_err(|_| TangentError::SingularMatrix("degree overflow"))?;
        let r1 = f2.embed(&r1);
        // two candidates modulo global sign: (r1, r2) and (r1, -r2)
        for (sgn, suffix) in [(false, "+"), (true, "-")] {
            let second = if sgn { f2.neg(&r2) } else { r2.clone() };
            let m: Mat2 = [[r1.clone(), f2.zero()], [f2.zero(), second]];
            out.push(TangentCandidate {
                field: f2.clone(),
                matrix: canonical_sign(&f2, &m),
                tag: format!("{tag}{suffix}"),
            });
        }
    }
    Ok(out)
}
