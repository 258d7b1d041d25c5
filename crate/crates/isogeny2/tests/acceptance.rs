//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Golden data is over F_56311; the oracle-equivalence battery runs over
//! F_10007.

use isogeny2::covariants::{self, BinaryForm};
use isogeny2::curves::{self, CurveModel};
use isogeny2::field::{Fe, Fq};
use isogeny2::jacobian;
use isogeny2::pipeline::{self, PathKind, RunConfig, TangentSpec};
use isogeny2::reconstruct::{self, IsogenyKind};
use isogeny2::rm_q5::{self, GundlachPoint};
use isogeny2::rng::SplitMix64;
use isogeny2::{mat, modeq, poly, series, solver};

fn f56311() -> Fq {
    Fq::prime(56311).unwrap()
}

const APPENDIX_C: [i64; 7] = [11111, 54150, 0, 102, 0, 34724, 13425];
const APPENDIX_CP: [i64; 7] = [40502, 24699, 0, 40476, 0, 35850, 47601];
const APPENDIX_C_STD: [i64; 7] = [0, 1, 14713, 34825, 16387, 7399, 33461];

const GOLDEN_S_NUM: [u64; 7] = [11726, 49419, 22804, 9527, 17196, 40618, 50255];
const GOLDEN_SP_DEN: [u64; 7] = [7238, 14612, 18069, 41828, 22913, 40883, 1];
const GOLDEN_P_NUM: [u64; 7] = [7231, 32206, 9325, 3347, 52568, 9569, 35444];
// r odd-part numerator coefficients as (constant, alpha) pairs, ascending
const GOLDEN_R_NUM: [(u64, u64); 11] = [
    (56110, 55909),
    (43278, 30245),
    (18430, 36860),
    (34604, 12897),
    (56056, 55801),
    (51965, 47619),
    (13991, 27982),
    (25870, 51740),
    (33376, 10441),
    (27368, 54736),
    (23769, 47538),
];
const GOLDEN_R_DEN: [u64; 14] = [
    0, 19414, 19196, 37792, 10154, 52976, 33200, 4334, 10859, 1295, 8422, 42413, 25455, 1,
];

/// Criterion 1: the golden isogeny run with a supplied tangent matrix
/// reproduces the printed fractions exactly.
#[test]
fn criterion_1_golden_run() {
    let f = f56311();
    // tangent matrix = Diag(50651 a + 53481, 11076 a + 5538) * [[44206, 18649], [0, 7615]]
    // with a^2 + a + 2 = 0, expressed as (constant, alpha) entry pairs
    let (ext, alpha) = f.adjoin_quadratic(&f.from_u64(1), &f.from_u64(2)).unwrap();
    let d1 = ext.add(
        &ext.mul(&ext.embed(&f.from_u64(50651)), &alpha),
        &ext.embed(&f.from_u64(53481)),
    );
    let d2 = ext.add(
        &ext.mul(&ext.embed(&f.from_u64(11076)), &alpha),
        &ext.embed(&f.from_u64(5538)),
    );
    let m11 = ext.mul(&d1, &ext.embed(&f.from_u64(44206)));
    let m12 = ext.mul(&d1, &ext.embed(&f.from_u64(18649)));
    let m22 = ext.mul(&d2, &ext.embed(&f.from_u64(7615)));
    let pair = |x: &Fe| -> (u64, u64) {
        let c = ext.coeffs(x);
        (c[0], c[1])
    };
    let config = RunConfig {
        p: 56311,
        path: PathKind::HilbertQ5,
        curve: Some(APPENDIX_C_STD.iter().map(|&x| x as u64).collect()),
        curve_prime: Some(APPENDIX_CP.iter().map(|&x| x as u64).collect()),
        j: None,
        j_prime: None,
        g: None,
        g_prime: None,
        ell: None,
        beta_norm: Some(11),
        beta_trace: Some(7),
        m: None,
        modeq_text: None,
        tangent: Some(TangentSpec {
            minpoly: Some((1, 2)),
            entries: [[pair(&m11), pair(&m12)], [(0, 0), pair(&m22)]],
        }),
        precision: None,
        seed: 42,
    };
    let started = std::time::Instant::now();
    let out = pipeline::run(&config).expect("golden run completes");
    let elapsed = started.elapsed();
    let accepted: Vec<_> = out
        .candidates
        .iter()
        .filter(|c| c.status == "accepted")
        .collect();
    assert_eq!(accepted.len(), 1, "exactly one accepted candidate");
    let cand = accepted[0];
    // base point (0, 0)
    let bp = out.base_point.as_ref().unwrap();
    assert!(bp.u.iter().all(|&x| x == 0) && bp.v.iter().all(|&x| x == 0));
    let s = cand.s.as_ref().unwrap();
    let p = cand.p.as_ref().unwrap();
    let flat = |v: &Vec<Vec<u64>>| -> Vec<u64> {
        v.iter()
            .map(|c| {
                assert!(c[1..].iter().all(|&x| x == 0), "coefficient must be in F_p");
                c[0]
            })
            .collect()
    };
    assert_eq!(flat(&s.num), GOLDEN_S_NUM.to_vec());
    assert_eq!(flat(&s.den), GOLDEN_SP_DEN.to_vec());
    assert_eq!(flat(&p.num), GOLDEN_P_NUM.to_vec());
    assert_eq!(flat(&p.den), GOLDEN_SP_DEN.to_vec());
    assert!(cand.s_odd.is_none() && cand.p_odd.is_none());
    // the deduced odd part of r matches the printed fraction as well
    let r = cand.r_odd.as_ref().unwrap();
    let rn: Vec<(u64, u64)> = r.num.iter().map(|c| (c[0], c[1])).collect();
    assert_eq!(rn, GOLDEN_R_NUM.to_vec());
    let rd: Vec<u64> = r
        .den
        .iter()
        .map(|c| {
            assert!(c[1..].iter().all(|&x| x == 0));
            c[0]
        })
        .collect();
    assert_eq!(rd, GOLDEN_R_DEN.to_vec());
    let v = cand.verification.as_ref().unwrap();
    assert!(v.rr1 && v.rr2 && v.degree_bounds && v.second_chart && v.sampled_failures == 0);
    assert!(elapsed.as_secs() < 10, "golden run took {elapsed:?}");
    println!("criterion 1 (golden isogeny run, exact s/p/r, {elapsed:?}): PASS");
}

/// Criterion 2: the Gundlach-derivative matrices of the two golden curves.
/// Note: the printed source value for entry (2,2) of the first matrix is
/// 26656; that value is inconsistent with the rest of the printed data (two
/// independent chain-rule equations both give 26556), so the corrected value
/// is asserted here.
#[test]
fn criterion_2_kodaira_spencer_golden_matrices() {
    let f = f56311();
    let c = CurveModel::from_i64(&f, APPENDIX_C).unwrap();
    let (fld, m) = rm_q5::dtg_matrix(&f, &c).unwrap();
    assert_eq!(fld.degree(), 1);
    assert_eq!(
        m,
        [
            [f.from_u64(43658), f.from_u64(17394)],
            [f.from_u64(16028), f.from_u64(26556)],
        ]
    );
    let cp = CurveModel::from_i64(&f, APPENDIX_CP).unwrap();
    let (_, m) = rm_q5::dtg_matrix(&f, &cp).unwrap();
    assert_eq!(
        m,
        [
            [f.from_u64(15131), f.from_u64(739)],
            [f.from_u64(50692), f.from_u64(49952)],
        ]
    );
    println!(
        "criterion 2 (derivative matrices; one source misprint 26656->26556 documented): PASS"
    );
}

/// Criterion 3: Igusa invariants of the golden curves, and the Gundlach
/// conversion reproducing them.
#[test]
fn criterion_3_invariant_golden_values() {
    let f = f56311();
    let c = CurveModel::from_i64(&f, APPENDIX_C).unwrap();
    assert_eq!(
        c.igusa(&f),
        (f.from_u64(14030), f.from_u64(9041), f.from_u64(56122))
    );
    let cp = CurveModel::from_i64(&f, APPENDIX_CP).unwrap();
    assert_eq!(
        cp.igusa(&f),
        (f.from_u64(13752), f.from_u64(42980), f.from_u64(12538))
    );
    let g = GundlachPoint {
        g1: f.from_u64(23),
        g2: f.from_u64(56260),
    };
    assert_eq!(
        rm_q5::gundlach_to_igusa(&f, &g).unwrap(),
        (f.from_u64(14030), f.from_u64(9041), f.from_u64(56122))
    );
    let g = GundlachPoint {
        g1: f.from_u64(8),
        g2: f.from_u64(36073),
    };
    assert_eq!(
        rm_q5::gundlach_to_igusa(&f, &g).unwrap(),
        (f.from_u64(13752), f.from_u64(42980), f.from_u64(12538))
    );
    println!("criterion 3 (invariant golden values): PASS");
}

/// Criterion 4: the coefficient of `a1^5 a4^10` in the degree-15 covariant.
#[test]
fn criterion_4_covariant_anchor() {
    for p in [56311u64, 10007] {
        let f = Fq::prime(p).unwrap();
        let s = BinaryForm::new(
            6,
            vec![
                f.zero(),
                f.one(),
                f.zero(),
                f.zero(),
                f.one(),
                f.zero(),
                f.zero(),
            ],
        );
        let got = covariants::r15(&f, &s);
        let want = f.from_ratio(1, 4 * 729 * 9765625);
        assert_eq!(got, want, "p = {p}");
    }
    println!("criterion 4 (covariant anchor 2^-2 3^-6 5^-10 mod 56311, 10007): PASS");
}

fn curve_with_rational_weierstrass(f: &Fq, rng: &mut SplitMix64) -> CurveModel {
    loop {
        let w0 = f.random(rng);
        let quint =
            poly::Poly::from_coeffs(f, (0..5).map(|_| f.random(rng)).chain([f.one()]).collect());
        let lin = poly::Poly::from_coeffs(f, vec![f.neg(&w0), f.one()]);
        let e = poly::mul(f, &lin, &quint);
        let mut c = e.c.clone();
        c.resize(7, f.zero());
        if let Ok(cm) = CurveModel::new(f, std::array::from_fn(|i| c[i].clone())) {
            return cm;
        }
    }
}

/// Criterion 5: the solver-produced rational representation of `[m]` agrees
/// with the Cantor oracle. The criterion's stated modulus 10003 is composite
/// (7 * 1429), so the run uses the prime 10007 (as criterion 4 does); the
/// non-Weierstrass base point forced by `[m]` requires the elevated
/// one-branch reconstruction precision.
#[test]
fn criterion_5_oracle_equivalence() {
    let started = std::time::Instant::now();
    let f = Fq::prime(10007).unwrap();
    let mut rng = SplitMix64::new(1234);
    for m in [2u64, 3] {
        let kind = IsogenyKind::Endomorphism { m };
        for curve_idx in 0..10 {
            let c = curve_with_rational_weierstrass(&f, &mut rng);
            let dphi = [[f.from_u64(m), f.zero()], [f.zero(), f.from_u64(m)]];
            let bp = curves::find_base_point(&f, &c, &dphi, &c, &mut rng).unwrap();
            let fld = bp.field.clone();
            let cl = c.embed(&fld);
            let ml = mat::mat2_embed(&fld, &dphi);
            let nu = kind.generic_precision();
            let chart = curves::local_expansion(&fld, &cl, &bp.p, nu).unwrap();
            let lift = solver::solve_lift(&fld, &cl, &chart, &ml, &bp.q, nu, false)
                .unwrap_or_else(|e| panic!("m={m} curve {curve_idx}: solve failed: {e}"));
            let (s, p) = reconstruct::reconstruct_sp(&fld, &lift, &chart, &kind)
                .unwrap_or_else(|e| panic!("m={m} curve {curve_idx}: reconstruct failed: {e}"));
            let (q, r) = reconstruct::deduce_qr(&fld, &s, &p, &lift, &chart, &cl, &cl)
                .unwrap_or_else(|e| panic!("m={m} curve {curve_idx}: deduce failed: {e}"));
            // oracle comparison at 20 random points
            let pbase = (bp.p.u.clone(), bp.p.v.clone());
            let mut compared = 0;
            let mut tries = 0;
            while compared < 20 && tries < 500 {
                tries += 1;
                let uq = fld.random(&mut rng);
                let vq = match fld.sqrt(&cl.eval(&fld, &uq)) {
                    Some(v) if !fld.is_zero(&v) => v,
                    _ => continue,
                };
                let vals: Option<Vec<Fe>> = [&s, &p, &q, &r]
                    .iter()
                    .map(|fun| fun.eval(&fld, &uq, &vq))
                    .collect();
                let rep_vals = match vals {
                    Some(v) => v,
                    None => continue,
                };
                match jacobian::oracle_rational_rep(&fld, &cl, &pbase, m, &(uq, vq)) {
                    Ok((ext, orc)) => {
                        for (rv, ov) in rep_vals.iter().zip(&orc) {
                            assert_eq!(
                                ext.embed(rv),
                                ov.clone(),
                                "m={m} curve {curve_idx}: oracle mismatch"
                            );
                        }
                        compared += 1;
                    }
                    Err(_) => continue,
                }
            }
            assert!(
                compared >= 20,
                "m={m} curve {curve_idx}: too few comparable points"
            );
        }
    }
    let elapsed = started.elapsed();
    println!("criterion 5 (oracle equivalence, p=10007 [10003 is composite], m=2,3 x10 curves x20 points, {elapsed:?}): PASS");
}

/// Criterion 6: the external Gundlach modular-equation data file is not
/// available, so (per the criterion's waiver) the modular-equation machinery
/// is exercised on a synthetic correspondence instead: the identity
/// correspondence drives the full pipeline and accepts exactly the identity
/// tangent candidates. Setting ISOGENY2_MODEQ_N11 to a data file at level
/// norm 11, trace 7 additionally reproduces the golden candidates and run.
#[test]
fn criterion_6_tangent_candidates() {
    let f = f56311();
    // toy identity correspondence at level (norm, trace) = (1, 2): beta = 1
    let toy = "\
kind hilbert_q5 1 2
vars 2
poly 1 2
0 0 1 0 1
1 0 0 0 -1
poly 2 2
0 0 0 1 1
0 1 0 0 -1
";
    let config = RunConfig {
        p: 56311,
        path: PathKind::HilbertQ5,
        curve: Some(APPENDIX_C.iter().map(|&x| x as u64).collect()),
        curve_prime: Some(APPENDIX_C.iter().map(|&x| x as u64).collect()),
        j: None,
        j_prime: None,
        g: None,
        g_prime: None,
        ell: None,
        beta_norm: Some(1),
        beta_trace: Some(2),
        m: None,
        modeq_text: Some(toy.into()),
        tangent: None,
        precision: None,
        seed: 7,
    };
    let out = pipeline::run(&config).expect("toy correspondence run completes");
    assert_eq!(
        out.candidates.len(),
        4,
        "at most 4 candidates in Hilbert mode"
    );
    let accepted: Vec<_> = out
        .candidates
        .iter()
        .filter(|c| c.status == "accepted")
        .collect();
    // the two identity-branch candidates are isogenies; the mixed-sign
    // branches are not realizable and must be rejected
    assert_eq!(accepted.len(), 2);
    for cand in &out.candidates {
        if cand.status != "accepted" {
            assert!(cand.reason.is_some());
        }
    }
    // identity rep: s = u + u0, p = u0 * u: check shape of one accepted
    let s = accepted[0].s.as_ref().unwrap();
    assert_eq!(s.den.len(), 1);
    assert_eq!(s.num.len(), 2);
    if let Ok(path) = std::env::var("ISOGENY2_MODEQ_N11") {
        let text = std::fs::read_to_string(&path).expect("readable modeq file");
        let config = RunConfig {
            p: 56311,
            path: PathKind::HilbertQ5,
            curve: Some(APPENDIX_C.iter().map(|&x| x as u64).collect()),
            curve_prime: Some(APPENDIX_CP.iter().map(|&x| x as u64).collect()),
            j: None,
            j_prime: None,
            g: None,
            g_prime: None,
            ell: None,
            beta_norm: Some(11),
            beta_trace: Some(7),
            m: None,
            modeq_text: Some(text),
            tangent: None,
            precision: None,
            seed: 7,
        };
        let out = pipeline::run(&config).expect("modeq-driven golden run");
        let accepted: Vec<_> = out
            .candidates
            .iter()
            .filter(|c| c.status == "accepted")
            .collect();
        assert_eq!(accepted.len(), 1);
        println!("criterion 6 (modeq-driven golden run with external data): PASS");
    } else {
        println!("criterion 6 (waived: external data file unavailable; toy-correspondence pipeline exercised): PASS");
    }
}

/// Criterion 7 rider: the quasi-linear claim is reflected by a smoke
/// benchmark showing the divide-and-conquer solver beating the naive
/// triangular solve at size 2^12 (the property suites live next to their
/// modules and in the `properties` test target).
#[test]
fn criterion_7_dac_benchmark() {
    let f = Fq::prime(10007).unwrap();
    // warm-up and correctness at a modest size
    let _ = pipeline::ode_benchmark(&f, 512, 5);
    let (fast, slow) = pipeline::ode_benchmark(&f, 1 << 12, 6);
    println!("criterion 7 benchmark (d = 4096): divide-and-conquer {fast:?} vs naive {slow:?}");
    assert!(
        fast < slow,
        "divide-and-conquer ({fast:?}) should beat the naive solve ({slow:?}) at 2^12"
    );
    println!("criterion 7 (superlinear speedup at nu >= 2^12): PASS");
}

/// Criterion 1 cross-check: the raw golden pipeline assembled by hand from
/// library calls (curve transform included), asserting the standard-form
/// model and tangent factor along the way.
#[test]
fn criterion_1_supporting_standard_form() {
    let f = f56311();
    let c = CurveModel::from_i64(&f, APPENDIX_C).unwrap();
    // Weierstrass point (36392, 0) moved to (0,0) by the recorded matrix
    assert!(f.is_zero(&c.eval(&f, &f.from_u64(36392))));
    let r: mat::Mat2 = [
        [f.from_u64(44206), f.zero()],
        [f.from_u64(18649), f.from_u64(7615)],
    ];
    let (std_form, factor) = curves::gl2_transform(&f, &c, &r);
    assert_eq!(std_form, CurveModel::from_i64(&f, APPENDIX_C_STD).unwrap());
    assert_eq!(
        factor,
        [
            [f.from_u64(44206), f.from_u64(18649)],
            [f.zero(), f.from_u64(7615)],
        ]
    );
    println!("criterion 1 support (standard form and tangent factor): PASS");
}

/// Modular-equation format gates exercised at acceptance level.
#[test]
fn modeq_format_gates() {
    // a Siegel line with five exponents is rejected with its line number
    let bad = "kind siegel 2\nvars 3\npoly 1 1\n0 0 0 1 0 1\n";
    assert!(matches!(
        modeq::ModularEquationSet::parse(bad),
        Err(modeq::ModeqError::WrongArity { line: 4 })
    ));
    // degree bookkeeping on a synthetic file: J1'^24 present
    let mut text =
        String::from("kind hilbert_q5 11 7\nvars 2\npoly 1 1\n0 0 24 0 1\npoly 2 1\n0 0 0 1 1\n");
    let ms = modeq::ModularEquationSet::parse(&text).unwrap();
    assert_eq!(ms.degree_in_first_primed(1), 24);
    text.push('\n');
    println!("modeq format gates: PASS");
}

/// Determinism: identical configurations produce identical outputs.
#[test]
fn deterministic_outputs() {
    let f = Fq::prime(10007).unwrap();
    let mut rng = SplitMix64::new(99);
    let c = curve_with_rational_weierstrass(&f, &mut rng);
    let coeffs: Vec<u64> = c.e.c.iter().map(|x| f.coeffs(x)[0]).collect();
    let config = RunConfig {
        p: 10007,
        path: PathKind::Endo,
        curve: Some(coeffs),
        curve_prime: None,
        j: None,
        j_prime: None,
        g: None,
        g_prime: None,
        ell: None,
        beta_norm: None,
        beta_trace: None,
        m: Some(2),
        modeq_text: None,
        tangent: None,
        precision: None,
        seed: 5,
    };
    let o1 = pipeline::run(&config).unwrap();
    let o2 = pipeline::run(&config).unwrap();
    let strip = |o: &pipeline::RunOutput| {
        let mut v = serde_json::to_value(o).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    assert_eq!(strip(&o1), strip(&o2));
    println!("determinism: PASS");
}

/// The one-branch reconstruction verifies series identities beyond the solve
/// precision (regression guard for the generic-base-point path).
#[test]
fn generic_base_solver_series_guard() {
    let f = Fq::prime(10007).unwrap();
    let mut rng = SplitMix64::new(123);
    let c = curve_with_rational_weierstrass(&f, &mut rng);
    let kind = IsogenyKind::Endomorphism { m: 2 };
    let dphi = [[f.from_u64(2), f.zero()], [f.zero(), f.from_u64(2)]];
    let bp = curves::find_base_point(&f, &c, &dphi, &c, &mut rng).unwrap();
    let fld = bp.field.clone();
    let cl = c.embed(&fld);
    let ml = mat::mat2_embed(&fld, &dphi);
    let nu = kind.generic_precision() + 20;
    let chart = curves::local_expansion(&fld, &cl, &bp.p, nu).unwrap();
    let lift = solver::solve_lift(&fld, &cl, &chart, &ml, &bp.q, nu, false).unwrap();
    let (s, _p) = reconstruct::reconstruct_sp(&fld, &lift, &chart, &kind).unwrap();
    // re-expansion at the extra 20 orders still matches
    let s_z = series::add(&fld, &lift.x1, &lift.x2);
    let den_s = series::compose_poly(&fld, &s.even.den, &chart.u);
    let ne = series::compose_poly(&fld, &s.even.num, &chart.u);
    let no = series::compose_poly(&fld, &s.odd.num, &chart.u);
    let den_o = series::compose_poly(&fld, &s.odd.den, &chart.u);
    let lhs = series::mul(&fld, &series::mul(&fld, &s_z, &den_s), &den_o);
    let rhs = series::add(
        &fld,
        &series::mul(&fld, &ne, &den_o),
        &series::mul(&fld, &chart.v, &series::mul(&fld, &no, &den_s)),
    );
    assert!(series::sub(&fld, &lhs, &rhs).is_zero(&fld));
    println!("generic-base series guard: PASS");
}
