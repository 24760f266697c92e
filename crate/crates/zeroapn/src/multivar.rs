//! The multivariate method: sparse polynomials over F_2 in up to four
//! variables, Frobenius rotation of a seed relation into a conjugate system,
//! variable elimination by iterated Sylvester resultants (coefficients
//! Kronecker-packed into univariate polynomials, determinant by fraction-free
//! elimination), and factorization of the final eliminant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2n::FieldCtx;
use crate::gf2poly::{BitPoly, Factorization, PolyError};
use crate::resultant::{checked_det, BareissDet, DetStrategy, ResultantError};

pub const VARS: [char; 4] = ['x', 'y', 'z', 'u'];

#[derive(Debug, Error)]
pub enum MultivarError {
    #[error("cannot parse multivariate polynomial: {0}")]
    Parse(String),
    #[error("cannot parse system manifest at line {0}: {1}")]
    Manifest(usize, String),
    #[error("unknown builtin system {0}")]
    UnknownSystem(String),
    #[error("rotation rule maps no successor for variable {0}")]
    UnmappedVariable(char),
    #[error("halving rotation hit an odd exponent on {0}")]
    OddExponent(char),
    #[error("resultant requires positive degree in {0} on both inputs")]
    DegreeZero(char),
    #[error("resultant chain produced the zero polynomial at step {0}")]
    DegenerateResultant(String),
    #[error("exact division failed: {0} does not divide")]
    InexactDivision(String),
    #[error("intermediate expectation failed for {name}: got {got}")]
    ExpectationFailed { name: String, got: String },
    #[error("final factorization mismatch for {id}: got {got}")]
    GoldenMismatch { id: String, got: String },
    #[error("final eliminant is not univariate after content splitting")]
    NotUnivariate,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Resultant(#[from] ResultantError),
}

/// Sparse multivariate polynomial over F_2: the set of exponent vectors
/// (x, y, z, u) with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeSet<[u16; 4]>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeSet<[u16; 4]> {
        &self.terms
    }

    fn toggle(&mut self, e: [u16; 4]) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|e| e[var]).max()
    }

    pub fn uses(&self, var: usize) -> bool {
        self.terms.iter().any(|e| e[var] > 0)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]);
            }
        }
        out
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for e in &other.terms {
            out.toggle(*e);
        }
        out
    }

    /// Applies a Frobenius rotation: each variable maps to its successor,
    /// exponents scaled by the rule's multiplier (the wraparound variable may
    /// square or halve; halving requires even exponents).
    pub fn rotate(&self, rule: &RotationRule) -> Result<MultiPoly, MultivarError> {
        let mut out = MultiPoly::zero();
        for e in &self.terms {
            let mut ne = [0u16; 4];
            for (vi, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (target, mult) = rule.map[vi].ok_or(MultivarError::UnmappedVariable(VARS[vi]))?;
                let nk = match mult {
                    Mult::One => k,
                    Mult::Two => 2 * k,
                    Mult::Half => {
                        if k % 2 != 0 {
                            return Err(MultivarError::OddExponent(VARS[vi]));
                        }
                        k / 2
                    }
                };
                ne[target] += nk;
            }
            out.toggle(ne);
        }
        Ok(out)
    }

    /// Exact division, verified by re-multiplication. Both operands are
    /// Kronecker-packed on all four variables with bounds from the dividend.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, MultivarError> {
        if divisor.is_zero() {
            return Err(MultivarError::InexactDivision(divisor.to_string()));
        }
        let bounds: [usize; 4] =
            std::array::from_fn(|i| self.degree_in(i).map_or(0, |d| d as usize));
        let mut weights = [0usize; 4];
        let mut acc = 1usize;
        for i in 0..4 {
            weights[i] = acc;
            acc *= bounds[i] + 1;
        }
        let pack = |p: &MultiPoly| -> BitPoly {
            let mut out = BitPoly::zero();
            for e in &p.terms {
                let pos: usize = (0..4).map(|i| e[i] as usize * weights[i]).sum();
                out = out.add(&BitPoly::monomial(pos));
            }
            out
        };
        let quotient_packed = pack(self)
            .div_exact(&pack(divisor))
            .map_err(|_| MultivarError::InexactDivision(divisor.to_string()))?;
        let mut quotient = MultiPoly::zero();
        for idx in quotient_packed.support() {
            let mut e = [0u16; 4];
            let mut rem = idx;
            for i in (0..4).rev() {
                e[i] = (rem / weights[i]) as u16;
                rem %= weights[i];
            }
            quotient.toggle(e);
        }
        // Kronecker packing can alias monomials if bounds are exceeded; the
        // re-multiplication check rules that out.
        if quotient.mul(divisor) != *self {
            return Err(MultivarError::InexactDivision(divisor.to_string()));
        }
        Ok(quotient)
    }

    /// Interprets a polynomial in x alone as a BitPoly.
    pub fn to_univariate(&self) -> Result<BitPoly, MultivarError> {
        let mut out = BitPoly::zero();
        for e in &self.terms {
            if e[1] != 0 || e[2] != 0 || e[3] != 0 {
                return Err(MultivarError::NotUnivariate);
            }
            out = out.add(&BitPoly::monomial(e[0] as usize));
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.terms.iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            for (vi, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(VARS[vi].to_string()),
                    _ => parts.push(format!("{}^{}", VARS[vi], k)),
                }
            }
            if parts.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = MultivarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MultivarError::Parse(s.into());
        let mut out = MultiPoly::zero();
        for term in s.trim().split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad());
            }
            let mut e = [0u16; 4];
            if term != "1" {
                for part in term.split('*') {
                    let (var, exp) = match part.split_once('^') {
                        Some((v, x)) => (v, x.parse::<u16>().map_err(|_| bad())?),
                        None => (part, 1),
                    };
                    let vi = VARS
                        .iter()
                        .position(|&c| var.len() == 1 && var.starts_with(c))
                        .ok_or_else(bad)?;
                    e[vi] += exp;
                }
            }
            out.toggle(e);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Rotation rules and Sylvester resultants on MultiPoly
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mult {
    One,
    Two,
    Half,
}

/// Per-variable successor map: variable index -> (target index, exponent multiplier).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationRule {
    pub map: [Option<(usize, Mult)>; 4],
}

/// Sylvester resultant of F and G with respect to `var`. The coefficient
/// polynomials in the remaining variables are Kronecker-packed into
/// univariate polynomials (weights chosen from row-sum degree bounds so no
/// packing collisions can occur), the determinant is taken, and the result
/// unpacked.
pub fn sylvester_resultant(
    f: &MultiPoly,
    g: &MultiPoly,
    var: usize,
) -> Result<MultiPoly, MultivarError> {
    let df = f.degree_in(var).unwrap_or(0) as usize;
    let dg = g.degree_in(var).unwrap_or(0) as usize;
    if df == 0 || dg == 0 {
        return Err(MultivarError::DegreeZero(VARS[var]));
    }
    let coeff_list = |p: &MultiPoly, d: usize| -> Vec<MultiPoly> {
        let mut cs = vec![MultiPoly::zero(); d + 1];
        for e in &p.terms {
            let mut e2 = *e;
            let k = e2[var] as usize;
            e2[var] = 0;
            cs[k].toggle(e2);
        }
        cs
    };
    let cf = coeff_list(f, df);
    let cg = coeff_list(g, dg);
    let others: Vec<usize> = (0..4).filter(|&i| i != var).collect();
    // row-sum degree bound per remaining variable
    let mut bounds = [0usize; 4];
    for &i in &others {
        let max_f = cf.iter().filter_map(|c| c.degree_in(i)).max().unwrap_or(0) as usize;
        let max_g = cg.iter().filter_map(|c| c.degree_in(i)).max().unwrap_or(0) as usize;
        bounds[i] = dg * max_f + df * max_g;
    }
    let mut weights = [0usize; 4];
    let mut acc = 1usize;
    for &i in &others {
        weights[i] = acc;
        acc *= bounds[i] + 1;
    }
    let pack = |p: &MultiPoly| -> BitPoly {
        let mut out = BitPoly::zero();
        for e in &p.terms {
            let pos: usize = others.iter().map(|&i| e[i] as usize * weights[i]).sum();
            out = out.add(&BitPoly::monomial(pos));
        }
        out
    };
    let pf: Vec<BitPoly> = cf.iter().map(&pack).collect();
    let pg: Vec<BitPoly> = cg.iter().map(&pack).collect();
    let n = df + dg;
    let mut matrix = vec![vec![BitPoly::zero(); n]; n];
    for r in 0..dg {
        for j in 0..=df {
            matrix[r][r + j] = pf[df - j].clone();
        }
    }
    for r in 0..df {
        for j in 0..=dg {
            matrix[dg + r][r + j] = pg[dg - j].clone();
        }
    }
    // With at most one remaining variable the packing is the identity and
    // the cross-checked dual-strategy determinant applies; otherwise the
    // packed degrees make interpolation pointless and Bareiss runs alone.
    let active: Vec<usize> = others
        .iter()
        .copied()
        .filter(|&i| cf.iter().chain(&cg).any(|c| c.uses(i)))
        .collect();
    let det = if active.len() <= 1 {
        checked_det(&matrix)?
    } else {
        BareissDet.det(&matrix)?
    };
    let mut out = MultiPoly::zero();
    for idx in det.support() {
        let mut e = [0u16; 4];
        let mut rem = idx;
        for &i in others.iter().rev() {
            e[i] = (rem / weights[i]) as u16;
            rem %= weights[i];
        }
        out.toggle(e);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Builtin conjugate systems and the elimination engine
// ---------------------------------------------------------------------------

/// One step of a system's scripted elimination.
#[derive(Clone, Debug)]
pub enum Step {
    Rotate { dst: String, src: String },
    Resultant { dst: String, var: usize, a: String, b: String },
    Divide { dst: String, src: String, cofactor: MultiPoly },
    Expect { name: String, poly: MultiPoly },
}

/// A conjugate system: seed relation, Frobenius rotation rule, scripted
/// elimination with intermediate expectations, and the golden factorization
/// of the final eliminant.
#[derive(Clone, Debug)]
pub struct ConjugateSystem {
    pub id: String,
    pub rotation: RotationRule,
    pub seed_name: String,
    pub seed: MultiPoly,
    pub steps: Vec<Step>,
    pub final_name: String,
    pub golden_factorization: String,
    /// Catalogue row realized by this system's exponent family.
    pub family_row: Option<u32>,
    /// Smallest admissible concrete instance (k, n, d) for exhaustive checks.
    pub check_instance: Option<(u32, u32, u64)>,
}

/// Outcome of running a system's elimination chain.
#[derive(Clone, Debug)]
pub struct EliminationReport {
    pub id: String,
    pub log: Vec<String>,
    /// Cofactors divided out along the way, as display strings.
    pub cofactors: Vec<String>,
    pub expectations_checked: usize,
    /// Final factorization, canonical text (x-part then y-part for split finals).
    pub factorization: String,
    pub golden: String,
    pub matches_golden: bool,
    /// Distinct irreducible factor degrees > 1 in the final eliminant.
    pub candidate_subfields: BTreeSet<usize>,
}

fn parse_rule_mult(s: &str) -> Option<Mult> {
    match s {
        "1" => Some(Mult::One),
        "2" => Some(Mult::Two),
        "h" => Some(Mult::Half),
        _ => None,
    }
}

fn var_index(s: &str) -> Option<usize> {
    let c = s.chars().next()?;
    if s.len() == 1 {
        VARS.iter().position(|&v| v == c)
    } else {
        None
    }
}

impl ConjugateSystem {
    pub fn parse(manifest: &str) -> Result<ConjugateSystem, MultivarError> {
        let mut id = String::new();
        let mut rotation = RotationRule::default();
        let mut seed_name = String::new();
        let mut seed = MultiPoly::zero();
        let mut steps = Vec::new();
        let mut final_name = String::new();
        let mut golden = String::new();
        let mut family_row = None;
        let mut check_instance = None;
        for (lineno, line) in manifest.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| MultivarError::Manifest(lineno + 1, msg.into());
            let words: Vec<&str> = line.split_whitespace().collect();
            match words[0] {
                "id" => id = words.get(1).ok_or_else(|| err("missing id"))?.to_string(),
                "vars" => {} // informational; variables are fixed to x, y, z, u
                "rot" => {
                    let (from, to, mult) = (
                        var_index(words[1]).ok_or_else(|| err("bad variable"))?,
                        var_index(words[2]).ok_or_else(|| err("bad variable"))?,
                        parse_rule_mult(words[3]).ok_or_else(|| err("bad multiplier"))?,
                    );
                    rotation.map[from] = Some((to, mult));
                }
                "seed" => {
                    seed_name = words[1].to_string();
                    seed = words[2].parse()?;
                }
                "let" => {
                    // let DST = rot SRC | res VAR A B | div SRC POLY
                    let dst = words[1].to_string();
                    match words[3] {
                        "rot" => steps.push(Step::Rotate { dst, src: words[4].into() }),
                        "res" => steps.push(Step::Resultant {
                            dst,
                            var: var_index(words[4]).ok_or_else(|| err("bad variable"))?,
                            a: words[5].into(),
                            b: words[6].into(),
                        }),
                        "div" => steps.push(Step::Divide {
                            dst,
                            src: words[4].into(),
                            cofactor: words[5].parse()?,
                        }),
                        other => return Err(err(&format!("unknown op {other}"))),
                    }
                }
                "expect" => steps.push(Step::Expect {
                    name: words[1].into(),
                    poly: words[2].parse()?,
                }),
                "final" => {
                    final_name = words[1].to_string();
                    golden = words[2..].join(" ");
                }
                "family" => {
                    family_row = Some(words[1].parse().map_err(|_| err("bad row id"))?)
                }
                "check" => {
                    check_instance = Some((
                        words[1].parse().map_err(|_| err("bad k"))?,
                        words[2].parse().map_err(|_| err("bad n"))?,
                        words[3].parse().map_err(|_| err("bad d"))?,
                    ))
                }
                other => return Err(err(&format!("unknown directive {other}"))),
            }
        }
        Ok(ConjugateSystem {
            id,
            rotation,
            seed_name,
            seed,
            steps,
            final_name,
            golden_factorization: golden,
            family_row,
            check_instance,
        })
    }

    /// Runs the scripted elimination chain, checking every stored
    /// intermediate expectation and diffing the final factorization against
    /// the golden line.
    pub fn eliminate(&self) -> Result<EliminationReport, MultivarError> {
        let mut env: BTreeMap<String, MultiPoly> = BTreeMap::new();
        env.insert(self.seed_name.clone(), self.seed.clone());
        let mut log = Vec::new();
        let mut cofactors = Vec::new();
        let mut expectations_checked = 0usize;
        let fetch = |env: &BTreeMap<String, MultiPoly>, name: &str| {
            env.get(name)
                .cloned()
                .ok_or_else(|| MultivarError::Manifest(0, format!("unbound name {name}")))
        };
        for step in &self.steps {
            match step {
                Step::Rotate { dst, src } => {
                    let value = fetch(&env, src)?.rotate(&self.rotation)?;
                    log.push(format!("{dst} = rot({src})"));
                    env.insert(dst.clone(), value);
                }
                Step::Resultant { dst, var, a, b } => {
                    let value = sylvester_resultant(&fetch(&env, a)?, &fetch(&env, b)?, *var)?;
                    if value.is_zero() {
                        return Err(MultivarError::DegenerateResultant(format!(
                            "res_{}({a}, {b})",
                            VARS[*var]
                        )));
                    }
                    log.push(format!("{dst} = res_{}({a}, {b})", VARS[*var]));
                    env.insert(dst.clone(), value);
                }
                Step::Divide { dst, src, cofactor } => {
                    let value = fetch(&env, src)?.div_exact(cofactor)?;
                    log.push(format!("{dst} = {src} / ({cofactor})"));
                    cofactors.push(cofactor.to_string());
                    env.insert(dst.clone(), value);
                }
                Step::Expect { name, poly } => {
                    let got = fetch(&env, name)?;
                    if got != *poly {
                        return Err(MultivarError::ExpectationFailed {
                            name: name.clone(),
                            got: got.to_string(),
                        });
                    }
                    expectations_checked += 1;
                    log.push(format!("{name} verified"));
                }
            }
        }
        let final_poly = fetch(&env, &self.final_name)?;
        let (factorization, candidate_subfields) = factor_final(&final_poly)?;
        let matches_golden = factorization == self.golden_factorization;
        Ok(EliminationReport {
            id: self.id.clone(),
            log,
            cofactors,
            expectations_checked,
            factorization,
            golden: self.golden_factorization.clone(),
            matches_golden,
            candidate_subfields,
        })
    }
}

/// Factors a final eliminant. A univariate final factors directly; a
/// bivariate final is split into its x-content times a pure-y part (the only
/// shape the builtin chains produce).
fn factor_final(p: &MultiPoly) -> Result<(String, BTreeSet<usize>), MultivarError> {
    if !p.uses(2) && !p.uses(3) && !p.uses(1) {
        let fac = p.to_univariate()?.factor()?;
        return Ok((fac.to_string(), fac.nontrivial_degrees()));
    }
    // x-content: gcd of the coefficient polynomials in x over each y-degree
    let mut by_y: BTreeMap<u16, BitPoly> = BTreeMap::new();
    for e in p.terms() {
        if e[2] != 0 || e[3] != 0 {
            return Err(MultivarError::NotUnivariate);
        }
        let slot = by_y.entry(e[1]).or_insert_with(BitPoly::zero);
        *slot = slot.add(&BitPoly::monomial(e[0] as usize));
    }
    let mut content = BitPoly::zero();
    for c in by_y.values() {
        content = if content.is_zero() {
            c.clone()
        } else {
            content.gcd(c)?
        };
    }
    let content_mp: MultiPoly = content.to_string().parse()?;
    let rest = p.div_exact(&content_mp)?;
    let mut y_part = BitPoly::zero();
    for e in rest.terms() {
        if e[0] != 0 {
            return Err(MultivarError::NotUnivariate);
        }
        y_part = y_part.add(&BitPoly::monomial(e[1] as usize));
    }
    let fx = if content.is_one() {
        Factorization::default()
    } else {
        content.factor()?
    };
    let fy = y_part.factor()?;
    let mut text = fx.to_string();
    if !fy.factors().is_empty() {
        let y_text = fy
            .factors()
            .iter()
            .map(|(q, m)| format!("({})^{}", q.to_string().replace('x', "y"), m))
            .collect::<Vec<_>>()
            .join(" * ");
        if text.is_empty() {
            text = y_text;
        } else {
            text = format!("{text} * {y_text}");
        }
    }
    let mut degrees = fx.nontrivial_degrees();
    degrees.extend(fy.nontrivial_degrees());
    Ok((text, degrees))
}

/// True iff, for every degree s in the set, no element of the subfield
/// F_2^gcd(s, n) outside {0, 1} solves (x+1)^d + x^d + 1 = 0 — the endgame
/// argument that rules candidate roots out of F_2^n.
pub fn candidate_subfield_check(n: u32, d: u64, degrees: &BTreeSet<usize>) -> bool {
    let ctx = FieldCtx::new(n).expect("n in range");
    for &s in degrees {
        let g = {
            let (mut a, mut b) = (s as u64, n as u64);
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a as u32
        };
        for a in 2..(1u32 << n) {
            if ctx.in_subfield(a, g) && ctx.fpow(a ^ 1, d) ^ ctx.fpow(a, d) ^ 1 == 0 {
                return false;
            }
        }
    }
    true
}

const SYSTEM_MANIFESTS: [(&str, &str); 14] = [
    ("3.1", include_str!("../data/systems/3_1.sys")),
    ("3.2", include_str!("../data/systems/3_2.sys")),
    ("3.3", include_str!("../data/systems/3_3.sys")),
    ("3.4", include_str!("../data/systems/3_4.sys")),
    ("3.5", include_str!("../data/systems/3_5.sys")),
    ("3.6", include_str!("../data/systems/3_6.sys")),
    ("3.7", include_str!("../data/systems/3_7.sys")),
    ("3.8", include_str!("../data/systems/3_8.sys")),
    ("3.9", include_str!("../data/systems/3_9.sys")),
    ("3.10", include_str!("../data/systems/3_10.sys")),
    ("3.11", include_str!("../data/systems/3_11.sys")),
    ("3.12", include_str!("../data/systems/3_12.sys")),
    ("3.13", include_str!("../data/systems/3_13.sys")),
    ("3.14", include_str!("../data/systems/3_14.sys")),
];

pub fn system_ids() -> Vec<&'static str> {
    SYSTEM_MANIFESTS.iter().map(|(id, _)| *id).collect()
}

/// The builtin conjugate system for a case id ("3.1" through "3.14").
pub fn builtin_system(id: &str) -> Result<&'static ConjugateSystem, MultivarError> {
    static CELL: OnceLock<BTreeMap<&'static str, ConjugateSystem>> = OnceLock::new();
    let map = CELL.get_or_init(|| {
        SYSTEM_MANIFESTS
            .iter()
            .map(|(id, text)| (*id, ConjugateSystem::parse(text).expect("embedded manifest")))
            .collect()
    });
    map.get(id).ok_or_else(|| MultivarError::UnknownSystem(id.into()))
}
