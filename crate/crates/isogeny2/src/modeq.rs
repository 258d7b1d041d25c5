//! Modular-equation data: parsing the line-based sparse file format,
//! reduction modulo the field characteristic, evaluation, and the left/right
//! derivative matrices.

use crate::field::{Fe, Fq};
use std::fmt;

/// Which modular correspondence a data set describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModeqKind {
    /// Siegel equations of level `ell` in Igusa invariants (3 polynomials in
    /// J1..J3, J1'..J3').
    Siegel { ell: u64 },
    /// Hilbert equations for Q(sqrt 5) in Gundlach invariants (2 polynomials
    /// in G1, G2, G1', G2'), level given by norm and trace of beta.
    HilbertQ5 { norm: u64, trace: u64 },
}

/// One monomial: exponents for the left variables, then the primed ones, and
/// an exact integer coefficient kept as a sign and decimal digit string.
#[derive(Clone, Debug)]
struct Term {
    exps: Vec<u32>,
    negative: bool,
    digits: String,
}

/// A parsed set of cleared-denominator modular equations.
#[derive(Clone, Debug)]
pub struct ModularEquationSet {
    pub kind: ModeqKind,
    /// Number of invariants per side (3 Siegel, 2 Hilbert-Gundlach).
    pub vars: usize,
    polys: Vec<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModeqError {
    Parse {
        line: usize,
        message: String,
    },
    WrongArity {
        line: usize,
    },
    /// A polynomial vanished identically after reduction mod p.
    VanishesModP {
        index: usize,
    },
}

impl fmt::Display for ModeqError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeqError::Parse { line, message } => {
                write!(f, "parse error on line {line}: {message}")
            }
            ModeqError::WrongArity { line } => write!(f, "wrong exponent count on line {line}"),
            ModeqError::VanishesModP { index } => {
                write!(f, "polynomial {index} vanishes after reduction mod p")
            }
        }
    }
}

impl std::error::Error for ModeqError {}

/// Reduce a signed decimal integer string into the field.
fn reduce_decimal(f: &Fq, negative: bool, digits: &str) -> Fe {
    let p = f.p();
    let mut acc: u64 = 0;
    for ch in digits.bytes() {
        let d = (ch - b'0') as u64;
        acc = ((acc as u128 * 10 + d as u128) % p as u128) as u64;
    }
    let v = f.from_u64(acc);
    if negative {
        f.neg(&v)
    } else {
        v
    }
}

impl ModularEquationSet {
    /// Parse the UTF-8 text format:
    ///
    /// ```text
    /// kind siegel <ell>            |  kind hilbert_q5 <norm> <trace>
    /// vars <n>
    /// poly <i> <num_terms>
    /// <e_1> ... <e_n> <e'_1> ... <e'_n> <coefficient>
    /// ```
    ///
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<ModularEquationSet, ModeqError> {
        let mut kind = None;
        let mut vars = None;
        let mut polys: Vec<Vec<Term>> = Vec::new();
        let mut pending: Option<(usize, usize)> = None; // (index, remaining terms)
        let perr = |line: usize, message: &str| ModeqError::Parse {
            line,
            message: message.into(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "kind" => {
                    if toks.len() < 2 {
                        return Err(perr(lineno, "missing kind"));
                    }
                    kind = Some(match toks[1] {
                        "siegel" => {
                            let ell = toks
                                .get(2)
                                .and_then(|s| s.parse().ok())
                                .ok_or_else(|| perr(lineno, "bad level"))?;
                            ModeqKind::Siegel { ell }
                        }
                        "hilbert_q5" => {
                            let norm = toks
                                .get(2)
                                .and_then(|s| s.parse().ok())
                                .ok_or_else(|| perr(lineno, "bad norm"))?;
                            let trace = toks
                                .get(3)
                                .and_then(|s| s.parse().ok())
                                .ok_or_else(|| perr(lineno, "bad trace"))?;
                            ModeqKind::HilbertQ5 { norm, trace }
                        }
                        other => return Err(perr(lineno, &format!("unknown kind {other}"))),
                    });
                }
                "vars" => {
                    let n: usize = toks
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| perr(lineno, "bad vars"))?;
                    if n != 2 && n != 3 {
                        return Err(perr(lineno, "vars must be 2 or 3"));
                    }
                    vars = Some(n);
                }
                "poly" => {
                    if pending.map_or(false, |(_, rem)| rem > 0) {
                        return Err(perr(lineno, "previous poly has missing terms"));
                    }
                    let i: usize = toks
                        .get(1)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| perr(lineno, "bad poly index"))?;
                    let n: usize = toks
                        .get(2)
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| perr(lineno, "bad term count"))?;
                    if i != polys.len() + 1 {
                        return Err(perr(lineno, "poly indices must be 1, 2, ..."));
                    }
                    polys.push(Vec::with_capacity(n));
                    pending = Some((polys.len() - 1, n));
                }
                _ => {
                    let v = vars.ok_or_else(|| perr(lineno, "term before vars"))?;
                    let (pi, rem) = pending.ok_or_else(|| perr(lineno, "term before poly"))?;
                    if rem == 0 {
                        return Err(perr(lineno, "unexpected extra term"));
                    }
                    if toks.len() != 2 * v + 1 {
                        return Err(ModeqError::WrongArity { line: lineno });
                    }
                    let mut exps = Vec::with_capacity(2 * v);
                    for t in &toks[..2 * v] {
                        exps.push(t.parse::<u32>().map_err(|_| perr(lineno, "bad exponent"))?);
                    }
                    let coef = toks[2 * v];
                    let (negative, digits) = match coef.strip_prefix('-') {
                        Some(rest) => (true, rest),
                        None => (false, coef.strip_prefix('+').unwrap_or(coef)),
                    };
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(perr(lineno, "bad coefficient"));
                    }
                    polys[pi].push(Term {
                        exps,
                        negative,
                        digits: digits.to_string(),
                    });
                    pending = Some((pi, rem - 1));
                }
            }
        }
        let kind = kind.ok_or_else(|| perr(0, "missing kind line"))?;
        let vars = vars.ok_or_else(|| perr(0, "missing vars line"))?;
        let expected = match kind {
            ModeqKind::Siegel { .. } => 3,
            ModeqKind::HilbertQ5 { .. } => 2,
        };
        if polys.len() != expected {
            return Err(perr(0, &format!("expected {expected} polynomials")));
        }
        match (&kind, vars) {
            (ModeqKind::Siegel { .. }, 3) | (ModeqKind::HilbertQ5 { .. }, 2) => {}
            _ => return Err(perr(0, "vars inconsistent with kind")),
        }
        Ok(ModularEquationSet { kind, vars, polys })
    }

    pub fn count(&self) -> usize {
        self.polys.len()
    }

    /// Reduce all coefficients into the field; errors if a polynomial
    /// vanishes identically (the prime divides its content).
    pub fn reduce(&self, f: &Fq) -> Result<ReducedModeq, ModeqError> {
        let mut polys = Vec::with_capacity(self.polys.len());
        for (i, terms) in self.polys.iter().enumerate() {
            let red: Vec<(Vec<u32>, Fe)> = terms
                .iter()
                .map(|t| (t.exps.clone(), reduce_decimal(f, t.negative, &t.digits)))
                .filter(|(_, c)| !f.is_zero(c))
                .collect();
            if red.is_empty() {
                return Err(ModeqError::VanishesModP { index: i + 1 });
            }
            polys.push(red);
        }
        Ok(ReducedModeq {
            vars: self.vars,
            polys,
        })
    }

    /// Degree of polynomial `i` (1-based) in the first primed variable.
    pub fn degree_in_first_primed(&self, i: usize) -> u32 {
        self.polys[i - 1]
            .iter()
            .map(|t| t.exps[self.vars])
            .max()
            .unwrap_or(0)
    }
}

/// A modular-equation set with coefficients in a fixed field.
#[derive(Clone, Debug)]
pub struct ReducedModeq {
    pub vars: usize,
    pub(crate) polys: Vec<Vec<(Vec<u32>, Fe)>>,
}

/// Values and both derivative matrices of the set at `(left, right)`:
/// `d_left[n][k] = dPsi_n/dJ_k`, `d_right[n][k] = dPsi_n/dJ'_k`.
#[derive(Clone, Debug)]
pub struct ModeqEvaluation {
    pub values: Vec<Fe>,
    pub d_left: Vec<Vec<Fe>>,
    pub d_right: Vec<Vec<Fe>>,
}

impl ReducedModeq {
    /// Evaluate all polynomials and both derivative matrices at the point.
    /// Derivatives are symbolic per monomial (exponent shift).
    pub fn evaluate_and_differentiate(&self, f: &Fq, left: &[Fe], right: &[Fe]) -> ModeqEvaluation {
        assert_eq!(left.len(), self.vars);
        assert_eq!(right.len(), self.vars);
        let point: Vec<Fe> = left.iter().chain(right.iter()).cloned().collect();
        let maxe: Vec<u32> = (0..2 * self.vars)
            .map(|v| {
                self.polys
                    .iter()
                    .flat_map(|p| p.iter().map(|(e, _)| e[v]))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let powers: Vec<Vec<Fe>> = point
            .iter()
            .zip(&maxe)
            .map(|(x, &m)| {
                let mut v = Vec::with_capacity(m as usize + 1);
                v.push(f.one());
                for i in 0..m as usize {
                    let prev = v[i].clone();
                    v.push(f.mul(&prev, x));
                }
                v
            })
            .collect();
        let mut values = Vec::new();
        let mut d_left = Vec::new();
        let mut d_right = Vec::new();
        for terms in &self.polys {
            let mut val = f.zero();
            let mut dl = vec![f.zero(); self.vars];
            let mut dr = vec![f.zero(); self.vars];
            for (exps, coef) in terms {
                let mut m = coef.clone();
                for (v, &e) in exps.iter().enumerate() {
                    m = f.mul(&m, &powers[v][e as usize]);
                }
                val = f.add(&val, &m);
                for v in 0..2 * self.vars {
                    let e = exps[v];
                    if e == 0 {
                        continue;
                    }
                    let mut d = f.mul_u64(coef, e as u64);
                    for (w, &ew) in exps.iter().enumerate() {
                        let ee = if w == v { ew - 1 } else { ew };
                        d = f.mul(&d, &powers[w][ee as usize]);
                    }
                    if v < self.vars {
                        dl[v] = f.add(&dl[v], &d);
                    } else {
                        dr[v - self.vars] = f.add(&dr[v - self.vars], &d);
                    }
                }
            }
            values.push(val);
            d_left.push(dl);
            d_right.push(dr);
        }
        ModeqEvaluation {
            values,
            d_left,
            d_right,
        }
    }
}

/// The toy identity correspondence `Psi_i = J_i' - J_i`, used in tests.
pub fn toy_identity(vars: usize) -> ModularEquationSet {
    let kind = if vars == 3 {
        ModeqKind::Siegel { ell: 1 }
    } else {
        ModeqKind::HilbertQ5 { norm: 1, trace: 2 }
    };
    let polys = (0..vars)
        .map(|i| {
            let mut e1 = vec![0u32; 2 * vars];
            e1[vars + i] = 1;
            let mut e2 = vec![0u32; 2 * vars];
            e2[i] = 1;
            vec![
                Term {
                    exps: e1,
                    negative: false,
                    digits: "1".into(),
                },
                Term {
                    exps: e2,
                    negative: true,
                    digits: "1".into(),
                },
            ]
        })
        .collect();
    ModularEquationSet { kind, vars, polys }
}
