//! Real multiplication by the maximal order of `Q(sqrt 5)`: conversion
//! between Gundlach and Igusa invariants, reconstruction of normalized curve
//! models, and the 2x2 matrix of Gundlach-invariant derivatives obtained from
//! the curve-level Kodaira-Spencer matrix by the chain rule.

use crate::covariants;
use crate::curves::{CurveError, CurveModel};
use crate::field::{Fe, Fq};
use crate::mat::Mat2;
use crate::poly::{self, Poly};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RmError {
    ZeroG1,
    /// The invariants do not lie on the real-multiplication locus.
    NotOnHumbert,
    /// A required square root does not exist over the current field.
    NonSquare,
    DegenerateGundlach,
    InconsistentChainRule,
    SingularJacobian,
}

impl std::fmt::Display for RmError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RmError::ZeroG1 => "g1 = 0 (degenerate Gundlach point)",
            RmError::NotOnHumbert => "invariants not on the real-multiplication locus",
            RmError::NonSquare => "square root outside the field",
            RmError::DegenerateGundlach => "degenerate Gundlach data",
            RmError::InconsistentChainRule => "chain-rule system inconsistent (not normalized)",
            RmError::SingularJacobian => "singular invariant Jacobian",
        };
        write!(f, "{s}")
    }
}

impl std::error::Error for RmError {}

/// A point in Gundlach coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GundlachPoint {
    pub g1: Fe,
    pub g2: Fe,
}

/// Igusa invariants of the point with Gundlach invariants `(g1, g2)`:
/// `j1 = (g1 - 864 g2)/256`, `j2 = (3 g2^2 - 2 g1)/32`, `j3 = g1^2/16384`.
pub fn gundlach_to_igusa(f: &Fq, g: &GundlachPoint) -> Result<(Fe, Fe, Fe), RmError> {
    if f.is_zero(&g.g1) {
        return Err(RmError::ZeroG1);
    }
    let j1 = f.div(&f.sub(&g.g1, &f.mul_u64(&g.g2, 864)), &f.from_u64(256));
    let j2 = f.div(
        &f.sub(&f.mul_u64(&f.square(&g.g2), 3), &f.mul_u64(&g.g1, 2)),
        &f.from_u64(32),
    );
    let j3 = f.div(&f.square(&g.g1), &f.from_u64(16384));
    Ok((j1, j2, j3))
}

/// Invert the pullback: `g1 = +-128 sqrt(j3)`, `g2 = (g1 - 256 j1)/864`, the
/// sign fixed by the exact consistency `32 j2 = 3 g2^2 - 2 g1` (which is the
/// membership test for the real-multiplication locus).
pub fn igusa_to_gundlach(f: &Fq, j: &(Fe, Fe, Fe)) -> Result<GundlachPoint, RmError> {
    let root = f.sqrt(&j.2).ok_or(RmError::NonSquare)?;
    let base = f.mul_u64(&root, 128);
    for g1 in [base.clone(), f.neg(&base)] {
        if f.is_zero(&g1) {
            continue;
        }
        let g2 = f.div(&f.sub(&g1, &f.mul_u64(&j.0, 256)), &f.from_u64(864));
        let lhs = f.mul_u64(&j.1, 32);
        let rhs = f.sub(&f.mul_u64(&f.square(&g2), 3), &f.mul_u64(&g1, 2));
        if lhs == rhs {
            return Ok(GundlachPoint { g1, g2 });
        }
    }
    Err(RmError::NotOnHumbert)
}

/// Jacobian `d(j1,j2,j3)/d(g1,g2)` of the pullback at a Gundlach point.
pub fn pullback_jacobian(f: &Fq, g: &GundlachPoint) -> [[Fe; 2]; 3] {
    [
        [f.from_ratio(1, 256), f.from_ratio(-27, 8)],
        [
            f.from_ratio(-1, 16),
            f.div(&f.mul_u64(&g.g2, 3), &f.from_u64(16)),
        ],
        [f.div(&g.g1, &f.from_u64(8192)), f.zero()],
    ]
}

/// The canonical square root of 5 in the field (extends when 5 is not a
/// square). All `sqrt(5)`-flavored data in this module is expressed through
/// this trivialization.
pub fn sqrt5(f: &Fq) -> Result<(Fq, Fe), RmError> {
    let five = f.from_u64(5);
    match f.sqrt(&five) {
        Some(r) => Ok((f.clone(), r)),
        None => {
            let (ext, r) = f.adjoin_sqrt(&five).map_err(|_| RmError::NonSquare)?;
            Ok((ext, r))
        }
    }
}

/// `beta, betabar = (trace +- sqrt(trace^2 - 4 norm))/2` through the chosen
/// trivialization of `sqrt 5` (for `Q(sqrt 5)`, `trace^2 - 4 norm` is `5`
/// times a square).
pub fn beta_from_norm_trace(f: &Fq, s5: &Fe, norm: u64, trace: u64) -> Result<(Fe, Fe), RmError> {
    let t = f.from_u64(trace);
    let disc = f.sub(&f.square(&t), &f.mul_u64(&f.from_u64(norm), 4));
    // disc = 5 m^2: m = sqrt(disc/5)
    let m2 = f.div(&disc, &f.from_u64(5));
    let m = f.sqrt(&m2).ok_or(RmError::NonSquare)?;
    let half = f.from_ratio(1, 2);
    let beta = f.mul(&f.add(&t, &f.mul(s5, &m)), &half);
    let betabar = f.mul(&f.sub(&t, &f.mul(s5, &m)), &half);
    Ok((beta, betabar))
}

/// The column normalization relating Gundlach `t`-derivatives to the columns
/// `(1, 3)` of the curve-level derivative matrix: `((5 + sqrt5)/20,
/// (5 - sqrt5)/20)` in the canonical trivialization.
fn column_factors(f: &Fq, s5: &Fe) -> (Fe, Fe) {
    let inv20 = f.from_ratio(1, 20);
    let five = f.from_u64(5);
    (
        f.mul(&f.add(&five, s5), &inv20),
        f.mul(&f.sub(&five, s5), &inv20),
    )
}

/// The 2x2 matrix of Gundlach-invariant derivatives of a normalized curve
/// model, solved from the chain-rule system
/// `(dJ/dG) . DtG = DtauJ(C) . T . Diag(col_factors)` using rows 1 and 3 and
/// verified exactly on row 2.
pub fn dtg_matrix(f: &Fq, c: &CurveModel) -> Result<(Fq, Mat2), RmError> {
    let j = c.igusa(f);
    let g = igusa_to_gundlach(f, &j)?;
    let dtau = covariants::dtau_j_matrix(f, &c.e).map_err(|_| RmError::SingularJacobian)?;
    let (fld, s5) = sqrt5(f)?;
    let (k1, k2) = column_factors(&fld, &s5);
    let g_l = GundlachPoint {
        g1: fld.embed(&g.g1),
        g2: fld.embed(&g.g2),
    };
    let jac = pullback_jacobian(&fld, &g_l);
    // target columns: (DtauJ . T) with the column factors
    let col = |l: usize, fac: &Fe| -> [Fe; 3] {
        std::array::from_fn(|k| fld.mul(&fld.embed(&dtau[k][l]), fac))
    };
    let t1 = col(0, &k1);
    let t2 = col(2, &k2);
    // solve rows 0 and 2 (the degenerate-free minor: det = 27 g1 / 65536)
    let minor = [
        [jac[0][0].clone(), jac[0][1].clone()],
        [jac[2][0].clone(), jac[2][1].clone()],
    ];
    let minv = crate::mat::mat2_inv(&fld, &minor).ok_or(RmError::SingularJacobian)?;
    let solve_col = |t: &[Fe; 3]| -> [Fe; 2] {
        let rhs = [t[0].clone(), t[2].clone()];
        [
            fld.add(
                &fld.mul(&minv[0][0], &rhs[0]),
                &fld.mul(&minv[0][1], &rhs[1]),
            ),
            fld.add(
                &fld.mul(&minv[1][0], &rhs[0]),
                &fld.mul(&minv[1][1], &rhs[1]),
            ),
        ]
    };
    let c1 = solve_col(&t1);
    let c2 = solve_col(&t2);
    // verify the middle row exactly
    for (t, cc) in [(&t1, &c1), (&t2, &c2)] {
        let got = fld.add(&fld.mul(&jac[1][0], &cc[0]), &fld.mul(&jac[1][1], &cc[1]));
        if got != t[1] {
            return Err(RmError::InconsistentChainRule);
        }
    }
    Ok((
        fld,
        [
            [c1[0].clone(), c2[0].clone()],
            [c1[1].clone(), c2[1].clone()],
        ],
    ))
}

/// Reconstruct a potentially normalized curve model from Gundlach invariants.
///
/// Coefficient shape `y^2 = b6 x^6 + b5 x^5 + b3 x^3 + b1 x + b0` with
/// `b3 = -2 g2`, `b1 = 1`, `b5 = (36 g2^2 - 20 g1)/25`,
/// `b0 b6 = (5 g1 - 4 g2^2)/25`; the split of `b0 b6` is pinned by matching
/// the Igusa invariants exactly (root-finding on an interpolated degree-20
/// условие polynomial), extending the field by one quadratic step if needed.
pub fn hilb_curve_reconstruct(f: &Fq, g: &GundlachPoint) -> Result<(Fq, CurveModel), RmError> {
    if f.is_zero(&g.g1) || f.is_zero(&g.g2) {
        return Err(RmError::DegenerateGundlach);
    }
    let target = gundlach_to_igusa(f, g)?;
    let inv25 = f.from_ratio(1, 25);
    let b15 = f.mul(
        &f.sub(&f.mul_u64(&f.square(&g.g2), 36), &f.mul_u64(&g.g1, 20)),
        &inv25,
    );
    let b06 = f.mul(
        &f.sub(&f.mul_u64(&g.g1, 5), &f.mul_u64(&f.square(&g.g2), 4)),
        &inv25,
    );
    if f.is_zero(&b15) || f.is_zero(&b06) {
        return Err(RmError::DegenerateGundlach);
    }
    // The split b0 may live in a degree-4 extension for a fixed choice of the
    // free coefficient b1; varying b1 moves the splitting field, so scan a
    // few canonical values and both signs of b3, looking for a root within
    // one quadratic step.
    for b1v in 1u64..=6 {
        let b1 = f.from_u64(b1v);
        let b5 = f.div(&b15, &b1);
        for b3sign in [false, true] {
            let b3 = {
                let v = f.neg(&f.mul_u64(&g.g2, 2));
                if b3sign {
                    f.neg(&v)
                } else {
                    v
                }
            };
            // The curve scaled by t = b0 has polynomial coefficients in t:
            // t * curve_t : (t^2, b1 t, 0, b3 t, 0, b5 t, b06).
            // Interpolate N(t) = I4 I6' - j1 I10 on that family (deg <= 20).
            let eval_cond = |t: &Fe| -> Fe {
                let t2 = f.square(t);
                let form = covariants::BinaryForm::new(
                    6,
                    vec![
                        t2,
                        f.mul(&b1, t),
                        f.zero(),
                        f.mul(&b3, t),
                        f.zero(),
                        f.mul(&b5, t),
                        b06.clone(),
                    ],
                );
                let gen = covariants::generators(f, &form);
                f.sub(&f.mul(&gen.i4, &gen.i6p), &f.mul(&target.0, &gen.i10))
            };
            let mut pts = Vec::new();
            let mut x = 1u64;
            while pts.len() < 22 {
                let t = f.from_u64(x);
                x += 1;
                if f.is_zero(&t) {
                    continue;
                }
                pts.push((t.clone(), eval_cond(&t)));
            }
            let cond = poly::interpolate(f, &pts);
            if cond.is_zero() {
                continue;
            }
            let try_roots = |fld: &Fq, cond: &Poly| -> Option<(Fq, CurveModel)> {
                for b0 in poly::roots(fld, cond) {
                    if fld.is_zero(&b0) {
                        continue;
                    }
                    let b6 = fld.div(&fld.embed(&b06), &b0);
                    let coeffs = [
                        b0.clone(),
                        fld.embed(&b1),
                        fld.zero(),
                        fld.embed(&b3),
                        fld.zero(),
                        fld.embed(&b5),
                        b6,
                    ];
                    if let Ok(cm) = CurveModel::new(fld, coeffs) {
                        let got = cm.igusa(fld);
                        let want = (
                            fld.embed(&target.0),
                            fld.embed(&target.1),
                            fld.embed(&target.2),
                        );
                        if got == want {
                            return Some((fld.clone(), cm));
                        }
                    }
                }
                None
            };
            if let Some(hit) = try_roots(f, &cond) {
                return Ok(hit);
            }
            // one quadratic extension by a canonical non-residue
            let mut k = 2u64;
            let nr = loop {
                let c = f.from_u64(k);
                if !f.is_zero(&c) && !f.is_square(&c) {
                    break c;
                }
                k += 1;
            };
            if let Ok((ext, _)) = f.adjoin_sqrt(&nr) {
                let cond_ext = Poly {
                    c: cond.c.iter().map(|x| ext.embed(x)).collect(),
                };
                if let Some(hit) = try_roots(&ext, &cond_ext) {
                    return Ok(hit);
                }
            }
        }
    }
    Err(RmError::NotOnHumbert)
}

/// The four reconstruction identities relating the coefficient shape to the
/// Gundlach data; used by tests and verification.
pub fn normalized_shape_residuals(f: &Fq, c: &CurveModel, g: &GundlachPoint) -> [Fe; 4] {
    let b = &c.e.c;
    let inv25 = f.from_ratio(1, 25);
    let b15 = f.mul(
        &f.sub(&f.mul_u64(&f.square(&g.g2), 36), &f.mul_u64(&g.g1, 20)),
        &inv25,
    );
    let b06 = f.mul(
        &f.sub(&f.mul_u64(&g.g1, 5), &f.mul_u64(&f.square(&g.g2), 4)),
        &inv25,
    );
    [
        b[2].clone(),
        b[4].clone(),
        f.sub(&f.mul(&b[1], &b[5]), &b15),
        f.sub(&f.mul(&b[0], &b[6]), &b06),
    ]
}

/// Draw a random normalized real-multiplication curve (for property tests):
/// random Gundlach point, reconstructed model.
pub fn random_rm_curve(
    f: &Fq,
    rng: &mut SplitMix64,
) -> Result<(Fq, CurveModel, GundlachPoint), CurveError> {
    for _ in 0..50 {
        let g = GundlachPoint {
            g1: f.random(rng),
            g2: f.random(rng),
        };
        if f.is_zero(&g.g1) || f.is_zero(&g.g2) {
            continue;
        }
        if let Ok((fld, cm)) = hilb_curve_reconstruct(f, &g) {
            return Ok((fld, cm, g));
        }
    }
    Err(CurveError::NonGenericInvariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fq {
        Fq::prime(56311).unwrap()
    }

    #[test]
    fn gundlach_golden_pairs() {
        let f = fp();
        let g = GundlachPoint {
            g1: f.from_u64(23),
            g2: f.from_u64(56260),
        };
        let j = gundlach_to_igusa(&f, &g).unwrap();
        assert_eq!(j, (f.from_u64(14030), f.from_u64(9041), f.from_u64(56122)));
        let g = GundlachPoint {
            g1: f.from_u64(8),
            g2: f.from_u64(36073),
        };
        let j = gundlach_to_igusa(&f, &g).unwrap();
        assert_eq!(j, (f.from_u64(13752), f.from_u64(42980), f.from_u64(12538)));
    }

    #[test]
    fn gundlach_igusa_round_trip() {
        let f = fp();
        // golden pair round-trips
        let j = (f.from_u64(14030), f.from_u64(9041), f.from_u64(56122));
        let g = igusa_to_gundlach(&f, &j).unwrap();
        assert_eq!(
            g,
            GundlachPoint {
                g1: f.from_u64(23),
                g2: f.from_u64(56260)
            }
        );
        // random round trips on the consistent branch
        let mut rng = SplitMix64::new(31);
        let mut done = 0;
        while done < 100 {
            let g = GundlachPoint {
                g1: f.random(&mut rng),
                g2: f.random(&mut rng),
            };
            if f.is_zero(&g.g1) {
                continue;
            }
            let j = gundlach_to_igusa(&f, &g).unwrap();
            match igusa_to_gundlach(&f, &j) {
                Ok(back) => assert_eq!(back, g),
                Err(RmError::NonSquare) => continue, // j3 square root not in field
                Err(e) => panic!("unexpected {e:?}"),
            }
            done += 1;
        }
    }

    #[test]
    fn random_j_rejected_off_locus() {
        let f = fp();
        let mut rng = SplitMix64::new(32);
        let mut rejected = 0;
        let mut total = 0;
        while total < 50 {
            let j = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            match igusa_to_gundlach(&f, &j) {
                Err(RmError::NonSquare) => continue,
                Err(RmError::NotOnHumbert) => {
                    rejected += 1;
                    total += 1;
                }
                Ok(_) => {
                    total += 1;
                }
                Err(e) => panic!("unexpected {e:?}"),
            }
        }
        assert!(
            rejected >= 45,
            "random invariants should almost never lie on the locus"
        );
    }

    #[test]
    fn dtg_golden_matrices() {
        let f = fp();
        let c = CurveModel::from_i64(&f, [11111, 54150, 0, 102, 0, 34724, 13425]).unwrap();
        let (fld, m) = dtg_matrix(&f, &c).unwrap();
        assert_eq!(fld.degree(), 1); // sqrt(5) exists in F_56311
        let want = [
            [f.from_u64(43658), f.from_u64(17394)],
            [f.from_u64(16028), f.from_u64(26556)],
        ];
        assert_eq!(m, want);
        let cp = CurveModel::from_i64(&f, [40502, 24699, 0, 40476, 0, 35850, 47601]).unwrap();
        let (_, m) = dtg_matrix(&f, &cp).unwrap();
        let want = [
            [f.from_u64(15131), f.from_u64(739)],
            [f.from_u64(50692), f.from_u64(49952)],
        ];
        assert_eq!(m, want);
    }

    #[test]
    fn dtg_rejects_generic_curves() {
        let f = fp();
        let mut rng = SplitMix64::new(33);
        let mut rejected = 0;
        for _ in 0..10 {
            let coeffs: [Fe; 7] = std::array::from_fn(|_| f.random(&mut rng));
            let c = match CurveModel::new(&f, coeffs) {
                Ok(c) => c,
                Err(_) => continue,
            };
            match dtg_matrix(&f, &c) {
                Err(_) => rejected += 1,
                Ok(_) => {}
            }
        }
        assert!(rejected >= 8);
    }

    #[test]
    fn reconstruct_appendix_points() {
        let f = fp();
        for (g1, g2, j) in [
            (23u64, 56260u64, (14030u64, 9041, 56122)),
            (8, 36073, (13752, 42980, 12538)),
        ] {
            let g = GundlachPoint {
                g1: f.from_u64(g1),
                g2: f.from_u64(g2),
            };
            let (fld, cm) = hilb_curve_reconstruct(&f, &g).unwrap();
            let got = cm.igusa(&fld);
            assert_eq!(
                got,
                (
                    fld.embed(&f.from_u64(j.0)),
                    fld.embed(&f.from_u64(j.1)),
                    fld.embed(&f.from_u64(j.2))
                )
            );
            // shape identities hold exactly
            let gl = GundlachPoint {
                g1: fld.embed(&g.g1),
                g2: fld.embed(&g.g2),
            };
            let res = normalized_shape_residuals(&fld, &cm, &gl);
            assert!(res.iter().all(|x| fld.is_zero(x)));
            // output is accepted by the tangency test
            let (_, _m) = dtg_matrix(&fld, &cm).unwrap();
        }
    }

    #[test]
    fn reconstruct_random_points() {
        let f = Fq::prime(10007).unwrap();
        let mut rng = SplitMix64::new(34);
        let mut done = 0;
        while done < 10 {
            let g = GundlachPoint {
                g1: f.random(&mut rng),
                g2: f.random(&mut rng),
            };
            if f.is_zero(&g.g1) || f.is_zero(&g.g2) {
                continue;
            }
            let want = match gundlach_to_igusa(&f, &g) {
                Ok(j) => j,
                Err(_) => continue,
            };
            match hilb_curve_reconstruct(&f, &g) {
                Ok((fld, cm)) => {
                    let got = cm.igusa(&fld);
                    assert_eq!(
                        got,
                        (fld.embed(&want.0), fld.embed(&want.1), fld.embed(&want.2))
                    );
                    // chain-rule consistency holds on reconstructed curves
                    assert!(dtg_matrix(&fld, &cm).is_ok());
                    done += 1;
                }
                Err(RmError::DegenerateGundlach) => continue,
                // a split needing a degree-4 extension is possible but rare
                Err(RmError::NotOnHumbert) => continue,
                Err(e) => panic!("reconstruction failed: {e:?}"),
            }
        }
    }

    #[test]
    fn appendix_beta_trivialization() {
        // the conjugate pair for norm 11, trace 7 under the canonical sqrt(5)
        let f = fp();
        let (fld, s5) = sqrt5(&f).unwrap();
        assert_eq!(fld.degree(), 1);
        assert_eq!(f.square(&s5), f.from_u64(5));
        let (beta, betabar) = beta_from_norm_trace(&f, &s5, 11, 7).unwrap();
        // the two roots of x^2 - 7x + 11; one of them is 26213
        let known = f.from_u64(26213);
        assert!(beta == known || betabar == known);
        assert_eq!(f.add(&beta, &betabar), f.from_u64(7));
        assert_eq!(f.mul(&beta, &betabar), f.from_u64(11));
    }
}
