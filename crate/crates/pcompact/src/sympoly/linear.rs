//! Substitution of a linear change of variables x -> M x into a symmetric
//! polynomial, producing a generally non-symmetric polynomial over the
//! matrix's coefficient field. This is the exact invariance check
//! f(Mx) = f(x).

use super::expand::full_expand;
use super::SymPoly;
use crate::error::Error;
use crate::exact::CycRational;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A dense-ish polynomial in the full (non-symmetric) monomial basis,
/// keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycRational>,
}

impl ExpandedPoly {
    pub fn zero(nvars: usize) -> Self {
        ExpandedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> CycRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(CycRational::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: CycRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(&c).expect("mixed base fields");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ExpandedPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &ExpandedPoly) -> ExpandedPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &ExpandedPoly) -> ExpandedPoly {
        let mut out = ExpandedPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.checked_mul(cb).expect("mixed base fields"));
            }
        }
        out
    }

    fn scale_add(&mut self, other: &ExpandedPoly, s: &CycRational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.checked_mul(s).expect("mixed base fields"));
        }
    }
}

/// Powers of the linear forms (Mx)_i, cached per row.
struct RowPowers {
    powers: Vec<Vec<ExpandedPoly>>,
}

impl RowPowers {
    fn new(matrix: &[Vec<CycRational>], nvars: usize, max_exp: u32) -> Self {
        let rows: Vec<ExpandedPoly> = matrix
            .iter()
            .map(|row| {
                let mut p = ExpandedPoly::zero(nvars);
                for (j, c) in row.iter().enumerate() {
                    let mut e = vec![0u32; nvars];
                    e[j] = 1;
                    p.add_term(e, c.clone());
                }
                p
            })
            .collect();
        let powers = rows
            .into_par_iter()
            .map(|row| {
                let mut ps = Vec::with_capacity(max_exp as usize + 1);
                ps.push(ExpandedPoly::constant(row.nvars, CycRational::one()));
                for k in 1..=max_exp as usize {
                    let next = ps[k - 1].mul(&row);
                    ps.push(next);
                }
                ps
            })
            .collect();
        RowPowers { powers }
    }

    fn get(&self, row: usize, exp: u32) -> &ExpandedPoly {
        &self.powers[row][exp as usize]
    }
}

/// Exact expansion of `f(M x_1, ..., M x_l)`.
///
/// Walks the distinct permutations of each orbit depth-first so partial
/// products over shared exponent prefixes are computed once.
pub fn substitute_linear(
    f: &SymPoly,
    matrix: &[Vec<CycRational>],
) -> Result<ExpandedPoly, Error> {
    let nvars = f.nvars();
    if matrix.len() != nvars || matrix.iter().any(|r| r.len() != nvars) {
        return Err(Error::DimensionMismatch(matrix.len(), nvars));
    }
    let max_exp = f
        .terms()
        .flat_map(|(p, _)| p.parts().iter().copied())
        .max()
        .unwrap_or(0);
    let rows = RowPowers::new(matrix, nvars, max_exp);

    let results: Vec<ExpandedPoly> = f
        .terms()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(partition, coeff)| {
            let mut orbit_sum = ExpandedPoly::zero(nvars);
            // DFS over distinct assignments of the padded multiset to
            // variable slots, multiplying row powers as we descend.
            let mut remaining = partition.padded(nvars);
            remaining.sort_unstable();
            remaining.dedup();
            let padded = partition.padded(nvars);
            let mut counts: Vec<(u32, u32)> = remaining
                .iter()
                .map(|&v| (v, padded.iter().filter(|&&x| x == v).count() as u32))
                .collect();
            let unit = ExpandedPoly::constant(nvars, CycRational::one());
            dfs(&rows, &mut counts, 0, nvars, &unit, &mut orbit_sum);
            let mut scaled = ExpandedPoly::zero(nvars);
            scaled.scale_add(&orbit_sum, &CycRational::from_rational(coeff.clone()));
            scaled
        })
        .collect();

    let mut out = ExpandedPoly::zero(nvars);
    for r in results {
        out.add_assign(&r);
    }
    Ok(out)
}

fn dfs(
    rows: &RowPowers,
    counts: &mut Vec<(u32, u32)>,
    depth: usize,
    nvars: usize,
    partial: &ExpandedPoly,
    out: &mut ExpandedPoly,
) {
    if depth == nvars {
        out.add_assign(partial);
        return;
    }
    for i in 0..counts.len() {
        let (value, count) = counts[i];
        if count == 0 {
            continue;
        }
        counts[i].1 -= 1;
        if value == 0 {
            dfs(rows, counts, depth + 1, nvars, partial, out);
        } else {
            let next = partial.mul(rows.get(depth, value));
            dfs(rows, counts, depth + 1, nvars, &next, out);
        }
        counts[i].1 += 1;
    }
}

/// Exact invariance check: `f(Mx) == f(x)`.
pub fn is_invariant(f: &SymPoly, matrix: &[Vec<CycRational>]) -> Result<bool, Error> {
    let substituted = substitute_linear(f, matrix)?;
    let plain = full_expand(f, usize::MAX)?;
    let mut expected = ExpandedPoly::zero(f.nvars());
    for (e, c) in plain {
        expected.add_term(e, CycRational::from_rational(c));
    }
    Ok(substituted == expected)
}
