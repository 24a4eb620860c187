//! Exact substitution of a power-series tail x -> x + c_1 x^{q_1} + ...
//! into orbit monomials, one output grading at a time.
//!
//! The component of `m_e(x_1 + tail(x_1), ..., x_l + tail(x_l))` in a fixed
//! grading is computed without touching individual monomials: each slot of
//! the partition independently contributes a small polynomial of grading
//! shifts, and a repetend factor corrects for collisions between equal
//! exponents. Products over the 756-term lattice expansion confirm this
//! against the literal expansion in the tests.

use super::{Partition, SymPoly};
use crate::error::Error;
use crate::exact::{rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A substitution tail: the terms beyond the leading x, each recorded as
/// (grading step q - 1, coefficient of x^q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tail {
    terms: Vec<(u32, Rational)>,
}

impl Tail {
    pub fn new(terms: Vec<(u32, Rational)>) -> Self {
        assert!(terms.iter().all(|&(s, _)| s > 0), "steps must be positive");
        Tail { terms }
    }

    /// The identity substitution x -> x.
    pub fn identity() -> Self {
        Tail { terms: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest positive grading step, if any.
    pub fn min_step(&self) -> Option<u32> {
        self.terms.iter().map(|&(s, _)| s).min()
    }

    /// Greatest common divisor of the grading steps, if any.
    pub fn step_gcd(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|&(s, _)| s)
            .reduce(num_integer::gcd)
    }
}

/// The p-typical series x + x^p/p + x^{p^2}/p^2 + ... truncated so that
/// every retained power is at most `cap`.
pub fn p_typical_tail(p: u64, cap: u32) -> Tail {
    let mut terms = Vec::new();
    let mut q = p;
    let mut c = rat(1, p as i64);
    while q <= cap as u64 {
        terms.push((q as u32 - 1, c.clone()));
        q *= p;
        c = &c * &rat(1, p as i64);
    }
    Tail::new(terms)
}

/// log(1+x) = x - x^2/2 + x^3/3 - ... truncated at `cap`.
pub fn log_tail(cap: u32) -> Tail {
    let mut terms = Vec::new();
    for n in 2..=cap as i64 {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        terms.push((n as u32 - 1, rat(sign, n)));
    }
    Tail::new(terms)
}

pub fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n as u64 {
        f *= k;
    }
    f
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k as u64 {
        num *= n as u64 - i;
    }
    num / factorial(k)
}

/// Product of the factorials of repetend sizes of a tuple.
fn repetend_factor(v: &[u32]) -> BigInt {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut f = BigInt::one();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        f *= factorial((j - i) as u32);
        i = j;
    }
    f
}

/// The grading shifts one slot with exponent `e` can produce, with their
/// coefficients: a pick of j_t copies of the tail term with step s_t
/// shifts the exponent by sum j_t s_t and multiplies by the multinomial
/// e choose (j_1, ..., j_m, rest) times the tail coefficients.
fn slot_poly(e: u32, tail: &Tail, max_shift: u32) -> BTreeMap<u32, Rational> {
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    fn rec(
        terms: &[(u32, Rational)],
        remaining_picks: u32,
        shift: u32,
        max_shift: u32,
        coeff: Rational,
        out: &mut BTreeMap<u32, Rational>,
    ) {
        if terms.is_empty() {
            let entry = out.entry(shift).or_insert_with(Rational::zero);
            *entry += coeff;
            return;
        }
        let (step, c) = &terms[0];
        let mut picked = Rational::one();
        let mut j = 0u32;
        loop {
            let new_shift = shift + j * step;
            if j > remaining_picks || new_shift > max_shift {
                break;
            }
            rec(
                &terms[1..],
                remaining_picks - j,
                new_shift,
                max_shift,
                &coeff * &picked * Rational::from_integer(binomial_falling(remaining_picks, j)),
                out,
            );
            j += 1;
            picked = &picked * c;
        }
    }
    // Multinomial bookkeeping: choosing j copies for this term out of the
    // remaining unpicked factors is C(remaining, j); the recursion then
    // offers the rest to later terms.
    fn binomial_falling(n: u32, k: u32) -> BigInt {
        binomial(n, k)
    }
    rec(&tail.terms, e, 0, max_shift, Rational::one(), &mut out);
    out
}

/// The component of `m_e(x + tail(x))` in the target grading, as a
/// symmetric polynomial. Gradings not reachable by the tail steps give
/// the zero polynomial, not an error.
pub fn substitute_tail_component(
    e: &Partition,
    tail: &Tail,
    target_grading: u32,
    nvars: usize,
) -> Result<SymPoly, Error> {
    if !e.fits(nvars) {
        return Err(Error::PartitionTooLong(e.parts().to_vec(), nvars));
    }
    let base = e.grading();
    let mut out = SymPoly::zero(nvars);
    if target_grading < base {
        return Ok(out);
    }
    let delta = target_grading - base;
    if delta == 0 {
        // Zero-step substitution: the identity component.
        out.add_term(e.clone(), Rational::one());
        return Ok(out);
    }
    if tail.is_identity() {
        return Ok(out);
    }

    let parts = e.parts();
    let r = parts.len();
    // Shift polynomials per slot; equal exponents share one.
    let mut polys: Vec<BTreeMap<u32, Rational>> = Vec::with_capacity(r);
    let mut cache: BTreeMap<u32, BTreeMap<u32, Rational>> = BTreeMap::new();
    for &p in parts {
        let poly = cache
            .entry(p)
            .or_insert_with(|| slot_poly(p, tail, delta))
            .clone();
        polys.push(poly);
    }
    let max_from: Vec<u32> = {
        let maxes: Vec<u32> = polys
            .iter()
            .map(|m| m.keys().next_back().copied().unwrap_or(0))
            .collect();
        let mut suffix = vec![0u32; r + 1];
        for i in (0..r).rev() {
            suffix[i] = suffix[i + 1] + maxes[i];
        }
        suffix
    };

    let p_e = Rational::from_integer(repetend_factor(parts));
    let mut shifted = parts.to_vec();

    fn rec(
        idx: usize,
        remaining: u32,
        coeff: Rational,
        parts: &[u32],
        shifted: &mut Vec<u32>,
        polys: &[BTreeMap<u32, Rational>],
        max_from: &[u32],
        p_e: &Rational,
        out: &mut SymPoly,
    ) {
        if remaining > max_from[idx] {
            return;
        }
        if idx == parts.len() {
            debug_assert_eq!(remaining, 0);
            let p_v = Rational::from_integer(repetend_factor(shifted));
            let c = &coeff * &(p_v / p_e);
            out.add_term(Partition::new(shifted.clone()), c);
            return;
        }
        for (&shift, c) in &polys[idx] {
            if shift > remaining {
                break;
            }
            shifted[idx] = parts[idx] + shift;
            rec(
                idx + 1,
                remaining - shift,
                &coeff * c,
                parts,
                shifted,
                polys,
                max_from,
                p_e,
                out,
            );
        }
        shifted[idx] = parts[idx];
    }
    rec(0, delta, Rational::one(), parts, &mut shifted, &polys, &max_from, &p_e, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use crate::sympoly::{full_expand, pt};

    /// Single-term tail x -> x + x^7 used by the 7-primary computations
    /// before the 1/7 weights are attached.
    fn plain_seventh_tail() -> Tail {
        Tail::new(vec![(6, rat_int(1))])
    }

    #[test]
    fn component_of_3_3_9_15_at_grading_42() {
        // Component of m_(3,3,9,15)(x+x^7) in grading 42 over 6 variables:
        // ten shift tuples contribute, e.g. (15 -> 27) with binom(15,2) and
        // the double shift (3,3) -> (9,9) with repetend factor 3!/2!.
        let e = pt(&[3, 3, 9, 15]);
        let comp = substitute_tail_component(&e, &plain_seventh_tail(), 42, 6).unwrap();
        assert_eq!(comp.coeff(&pt(&[27, 9, 3, 3])), rat_int(105)); // binom(15,2)
        assert_eq!(comp.coeff(&pt(&[9, 9, 9, 15])), rat_int(27)); // 3*3*3
        assert_eq!(comp.coeff(&pt(&[21, 15, 3, 3])), rat_int(36 + 135)); // binom(9,2) + 9*15
        assert_eq!(comp.coeff(&pt(&[15, 15, 9, 3])), rat_int(3 + 3 + 27 + 27));
        assert_eq!(comp.coeff(&pt(&[21, 9, 9, 3])), rat_int(45 + 45)); // 3*15 twice
        assert_eq!(comp.num_terms(), 5);
    }

    #[test]
    fn zero_step_is_identity() {
        let e = pt(&[6]);
        let comp = substitute_tail_component(&e, &plain_seventh_tail(), 6, 6).unwrap();
        assert_eq!(comp.coeff(&pt(&[6])), rat_int(1));
        assert_eq!(comp.num_terms(), 1);
    }

    #[test]
    fn unreachable_grading_is_empty() {
        let e = pt(&[6]);
        let comp = substitute_tail_component(&e, &plain_seventh_tail(), 11, 6).unwrap();
        assert!(comp.is_zero());
    }

    #[test]
    fn sum_of_components_matches_literal_expansion() {
        // Substitute x + x^7 into m_e literally (via full expansion of the
        // orbit and per-monomial binomial expansion) and compare grading by
        // grading. Checked for |e| <= 12 shapes that exercise repetends.
        for parts in [&[3, 3][..], &[2, 1][..], &[4, 4, 4][..], &[5, 5, 1, 1][..]] {
            let e = pt(parts);
            let nvars = 6;
            let tail = plain_seventh_tail();

            // Literal expansion: each monomial x^v becomes a product of
            // (x_i^{v_i} + C(v_i,1) x_i^{v_i+6} + C(v_i,2) x_i^{v_i+12} + ...).
            let orbit = full_expand(
                &SymPoly::monomial(nvars, e.clone(), rat_int(1)).unwrap(),
                100_000,
            )
            .unwrap();
            let cap = e.grading() + 42;
            let mut literal: std::collections::BTreeMap<Vec<u32>, Rational> =
                std::collections::BTreeMap::new();
            for (v, c) in &orbit {
                let mut acc: Vec<(Vec<u32>, Rational)> = vec![(vec![0; nvars], c.clone())];
                for (i, &vi) in v.iter().enumerate() {
                    let mut next = Vec::new();
                    for j in 0..=vi {
                        let shift = 6 * j;
                        let coeff = Rational::from_integer(super::binomial(vi, j));
                        for (expv, cc) in &acc {
                            let mut e2 = expv.clone();
                            e2[i] = vi + shift;
                            let total: u32 = e2.iter().sum();
                            if total <= cap {
                                next.push((e2, cc * &coeff));
                            }
                        }
                    }
                    acc = next;
                }
                for (expv, cc) in acc {
                    *literal.entry(expv).or_insert_with(Rational::zero) += cc;
                }
            }

            let mut g = e.grading();
            while g <= cap {
                let comp = substitute_tail_component(&e, &tail, g, nvars).unwrap();
                let expanded = full_expand(&comp, 1_000_000).unwrap();
                let literal_g: std::collections::BTreeMap<Vec<u32>, Rational> = literal
                    .iter()
                    .filter(|(v, _)| v.iter().sum::<u32>() == g)
                    .map(|(v, c)| (v.clone(), c.clone()))
                    .collect();
                assert_eq!(expanded, literal_g, "mismatch for m_{e} at grading {g}");
                g += 6;
            }
        }
    }

    #[test]
    fn p_typical_tail_shape() {
        let t5 = p_typical_tail(5, 24);
        assert_eq!(t5, Tail::new(vec![(4, rat(1, 5))]));
        let t5 = p_typical_tail(5, 25);
        assert_eq!(t5, Tail::new(vec![(4, rat(1, 5)), (24, rat(1, 25))]));
        let t7 = p_typical_tail(7, 42);
        assert_eq!(t7, Tail::new(vec![(6, rat(1, 7))]));
    }

    #[test]
    fn multi_term_tail_with_rational_coefficients() {
        // x -> x + x^2/2 + x^3/3 on m_(2): (x + x^2/2 + x^3/3)^2 has
        // grading-4 part x^4/4 + (2/3) x^4 = ... computed per slot:
        // shift 2 via two picks of step 1: C(2,2)(1/2)^2 = 1/4, plus one
        // pick of step 2: C(2,1)(1/3) = 2/3. Total 11/12.
        let tail = Tail::new(vec![(1, rat(1, 2)), (2, rat(1, 3))]);
        let comp = substitute_tail_component(&pt(&[2]), &tail, 4, 4).unwrap();
        assert_eq!(comp.coeff(&pt(&[4])), rat(11, 12));
    }
}
