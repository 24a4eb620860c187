//! Grading-by-grading p-integralization of the K-theory generator
//! candidates: verify the published integral combinations and re-derive
//! their coefficients by solving linear systems mod p^k.
//!
//! All work happens in the p-typical substitute picture
//! F~_d = f_d(x + x^p/p + ...), truncated at the group cap; a combination
//! is p-integral there exactly when it is in the log picture.

mod data;

pub use data::integral_basis;

use crate::error::Error;
use crate::exact::{
    p_power, rational_string, valuation, PValuation, Rational,
};
use crate::invariants::{f_monomial_poly, invariant_poly, FExponent, GroupId};
use crate::solve::{rational_mod_pk, solve_mod_pk, ZpkSolution};
use crate::sympoly::{GradedSeries, p_typical_tail, Partition, SymPoly, Tail};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// A candidate K-theory generator: the leading F_d plus correction terms,
/// each a rational multiple of a monomial in the F's.
#[derive(Debug, Clone)]
pub struct IntegralCombination {
    pub group: GroupId,
    pub base_degree: u32,
    pub terms: Vec<(FExponent, Rational)>,
}

impl IntegralCombination {
    pub fn new(group: GroupId, base_degree: u32) -> Self {
        IntegralCombination {
            group,
            base_degree,
            terms: vec![(FExponent::single(base_degree), Rational::from_integer(1.into()))],
        }
    }

    /// The linear terms (single F_d factors), degree -> coefficient.
    pub fn linear_coefficients(&self) -> BTreeMap<u32, Rational> {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_linear())
            .map(|(m, c)| (m.0[0].0, c.clone()))
            .collect()
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            s.push_str(&format!("({}) {}", rational_string(c), m));
        }
        s
    }
}

/// Caches the tail-substituted series of the generator polynomials for
/// one group, so combinations and their products reuse components.
pub struct SeriesContext {
    group: GroupId,
    tail: Tail,
    cap: u32,
    cache: BTreeMap<u32, GradedSeries>,
}

impl SeriesContext {
    /// The p-typical picture for the group (the workhorse).
    pub fn new(group: GroupId) -> Self {
        let cap = group.cap();
        SeriesContext {
            group,
            tail: p_typical_tail(group.prime(), cap),
            cap,
            cache: BTreeMap::new(),
        }
    }

    /// Same machinery under a different substitution tail (used to check
    /// the log-picture equivalence).
    pub fn with_tail(group: GroupId, tail: Tail) -> Self {
        SeriesContext {
            group,
            tail,
            cap: group.cap(),
            cache: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// F~_d as a graded series through the cap.
    pub fn generator_series(&mut self, degree: u32) -> Result<&GradedSeries, Error> {
        if !self.cache.contains_key(&degree) {
            let f = invariant_poly(self.group, degree)?;
            let s = GradedSeries::from_tail_substitution(&f, &self.tail, self.cap)?;
            self.cache.insert(degree, s);
        }
        Ok(&self.cache[&degree])
    }

    /// The series of a monomial in the F's.
    pub fn monomial_series(&mut self, m: &FExponent) -> Result<GradedSeries, Error> {
        let mut acc = GradedSeries::one(self.group.nvars(), self.cap);
        for &(d, e) in &m.0 {
            let s = self.generator_series(d)?.clone();
            for _ in 0..e {
                acc = acc.mul(&s);
            }
        }
        Ok(acc)
    }

    pub fn combination_series(&mut self, c: &IntegralCombination) -> Result<GradedSeries, Error> {
        let mut acc = GradedSeries::zero(self.group.nvars(), self.cap);
        for (m, coeff) in &c.terms {
            let s = self.monomial_series(m)?;
            acc.add_scaled(&s, coeff);
        }
        Ok(acc)
    }
}

/// Exact m-basis coordinates of a product of F~'s in one grading.
pub fn expand_f_monomial(
    group: GroupId,
    monomial: &FExponent,
    grading: u32,
) -> Result<SymPoly, Error> {
    if grading > group.cap() {
        return Err(Error::CapExceeded(grading, group.cap()));
    }
    let mut ctx = SeriesContext::new(group);
    Ok(ctx.monomial_series(monomial)?.component(grading))
}

/// One grading's record in the congruence ledger: the integer coefficient
/// vector of the combination scaled by p^t, reduced mod p^t (all zeros
/// exactly when the combination is p-integral there).
#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub grading: u32,
    pub t: u32,
    pub modulus: String,
    pub min_valuation: i64,
    pub pass: bool,
    pub residues: Vec<LedgerResidue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerResidue {
    pub partition: Vec<u32>,
    pub residue: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceLedger {
    pub group: u32,
    pub combination: String,
    pub base_degree: u32,
    pub pass: bool,
    pub entries: Vec<LedgerEntry>,
}

/// Check a combination at every grading through the cap. Failures are
/// data in the ledger, not errors.
pub fn verify_combination(c: &IntegralCombination) -> Result<CongruenceLedger, Error> {
    let mut ctx = SeriesContext::new(c.group);
    verify_combination_in(&mut ctx, c)
}

pub fn verify_combination_in(
    ctx: &mut SeriesContext,
    c: &IntegralCombination,
) -> Result<CongruenceLedger, Error> {
    let p = c.group.prime();
    let step = (p - 1) as u32;
    let series = ctx.combination_series(c)?;
    let mut entries = Vec::new();
    let mut all_pass = true;
    for g in series.gradings().collect::<Vec<_>>() {
        let comp = series.component(g);
        let t = (g - c.base_degree) / step;
        let modulus = p_power(p, t);
        let mut min_val = PValuation::Infinite;
        let mut residues = Vec::new();
        let pt_scale = Rational::from_integer(modulus.clone());
        for (part, coeff) in comp.terms() {
            min_val = min_val.min(valuation(coeff, p));
            let scaled = coeff * &pt_scale;
            let res = if t == 0 {
                BigInt::zero()
            } else {
                rational_mod_pk(&scaled, &modulus, p).unwrap_or_else(|| {
                    panic!(
                        "coordinate at {part} in grading {g} has denominator \
                         valuation beyond p^{t}: {coeff}"
                    )
                })
            };
            residues.push(LedgerResidue {
                partition: part.parts().to_vec(),
                residue: res.to_string(),
            });
        }
        let pass = comp.is_zero() || min_val >= PValuation::Finite(0);
        all_pass &= pass;
        entries.push(LedgerEntry {
            grading: g,
            t,
            modulus: modulus.to_string(),
            min_valuation: match min_val {
                PValuation::Finite(v) => v,
                PValuation::Infinite => i64::MAX,
            },
            pass,
            residues,
        });
    }
    Ok(CongruenceLedger {
        group: c.group.number(),
        combination: c.describe(),
        base_degree: c.base_degree,
        pass: all_pass,
        entries,
    })
}

/// The mod-p^t correction system at one grading: the current combination
/// plus sum(c_i / p^t * candidate_i) must be integral, i.e.
/// sum(c_i * candidate_i) = p^t * current (mod p^t) coordinatewise.
#[derive(Debug)]
pub struct SolveStep {
    pub grading: u32,
    pub t: u32,
    pub solution: ZpkSolution,
    pub candidates: Vec<FExponent>,
    /// The system rows, for admissibility checks of published values.
    pub matrix: Vec<Vec<BigInt>>,
    pub rhs: Vec<BigInt>,
}

pub fn solve_integralization(
    ctx: &mut SeriesContext,
    current: &IntegralCombination,
    grading: u32,
    candidates: &[FExponent],
) -> Result<SolveStep, Error> {
    let group = ctx.group();
    let p = group.prime();
    let step = (p - 1) as u32;
    if grading > ctx.cap() {
        return Err(Error::CapExceeded(grading, ctx.cap()));
    }
    assert!(
        candidates
            .iter()
            .all(|m| m.total_degree() == grading),
        "candidates must be F-monomials of total degree {grading}"
    );
    let t = (grading - current.base_degree) / step;
    let modulus = p_power(p, t);

    let series = ctx.combination_series(current)?;
    let comp = series.component(grading);
    let cand_polys: Vec<SymPoly> = candidates
        .iter()
        .map(|m| f_monomial_poly(group, m, None))
        .collect::<Result<_, Error>>()?;

    let mut support: Vec<Partition> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for poly in cand_polys.iter().chain(std::iter::once(&comp)) {
        for (part, _) in poly.terms() {
            if seen.insert(part.clone()) {
                support.push(part.clone());
            }
        }
    }

    let pt_scale = Rational::from_integer(modulus.clone());
    let matrix: Vec<Vec<BigInt>> = support
        .iter()
        .map(|part| {
            cand_polys
                .iter()
                .map(|c| {
                    let v = c.coeff(part);
                    debug_assert!(v.denom().is_one(), "candidate coordinates are integers");
                    v.numer().mod_floor(&modulus)
                })
                .collect()
        })
        .collect();
    let rhs: Vec<BigInt> = support
        .iter()
        .map(|part| {
            let scaled = comp.coeff(part) * &pt_scale;
            rational_mod_pk(&scaled, &modulus, p)
                .expect("current combination has denominators within p^t")
        })
        .collect();

    let solution = solve_mod_pk(&matrix, &rhs, p, t)?;
    Ok(SolveStep {
        grading,
        t,
        solution,
        candidates: candidates.to_vec(),
        matrix,
        rhs,
    })
}

/// Convention for how a solved correction enters the combination: the
/// 5-primary families subtract canonical residues, the 7-primary family
/// adds them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionSign {
    Subtract,
    Add,
}

impl SolveStep {
    /// Fold the canonical solution into the combination with the given
    /// sign convention.
    pub fn apply(&self, current: &IntegralCombination, sign: CorrectionSign) -> IntegralCombination {
        let mut updated = current.clone();
        let modulus = &self.solution.modulus;
        let pt = Rational::from_integer(modulus.clone());
        for (m, c) in self.candidates.iter().zip(&self.solution.residues) {
            let canonical = match sign {
                CorrectionSign::Subtract => -Rational::from_integer(c.clone()),
                CorrectionSign::Add => {
                    Rational::from_integer((-c).mod_floor(modulus))
                }
            };
            if canonical.is_zero() {
                continue;
            }
            updated.terms.push((m.clone(), canonical / &pt));
        }
        updated
    }
}

/// Candidate list for re-derivation at one grading: every F-monomial of
/// that degree for the rank-4 groups; the single linear F_g for G34
/// (where linear corrections suffice through the cap).
pub fn derivation_candidates(group: GroupId, grading: u32) -> Vec<FExponent> {
    match group {
        GroupId::G29 | GroupId::G31 => {
            crate::invariants::monomials_of_degree(group.degrees(), grading)
                .into_iter()
                .filter(|m| !m.0.is_empty())
                .collect()
        }
        GroupId::G34 => {
            if grading % 6 == 0 && grading > 0 {
                vec![FExponent::single(grading)]
            } else {
                Vec::new()
            }
        }
    }
}

/// Re-derive the integral combination starting from F_d by canonical
/// mod-p^t solves at each grading through the cap.
pub fn derive_combination(
    group: GroupId,
    base_degree: u32,
) -> Result<(IntegralCombination, Vec<SolveStep>), Error> {
    let mut ctx = SeriesContext::new(group);
    let mut current = IntegralCombination::new(group, base_degree);
    let mut steps = Vec::new();
    let p_step = (group.prime() - 1) as u32;
    let sign = match group {
        GroupId::G29 | GroupId::G31 => CorrectionSign::Subtract,
        GroupId::G34 => CorrectionSign::Add,
    };
    let mut g = base_degree + p_step;
    while g <= group.cap() {
        let candidates = derivation_candidates(group, g);
        if candidates.is_empty() {
            g += p_step;
            continue;
        }
        // Skip gradings where the combination is already integral.
        let comp = ctx.combination_series(&current)?.component(g);
        let integral = comp
            .terms()
            .all(|(_, c)| valuation(c, group.prime()) >= PValuation::Finite(0));
        if !integral {
            let step = solve_integralization(&mut ctx, &current, g, &candidates)?;
            current = step.apply(&current, sign);
            steps.push(step);
        }
        g += p_step;
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests;
