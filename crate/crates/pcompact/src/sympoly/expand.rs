//! Orbit enumeration and the literal monomial expansion used as the
//! independent oracle for products and substitutions.

use super::{Partition, SymPoly};
use crate::error::Error;
use crate::exact::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Number of distinct monomials in the orbit of `partition` padded to
/// `nvars` variables: nvars! / prod(multiplicity!).
pub fn orbit_size(partition: &Partition, nvars: usize) -> u64 {
    let padded = partition.padded(nvars);
    let mut size = factorial_u64(nvars as u64);
    let mut i = 0;
    while i < padded.len() {
        let mut j = i;
        while j < padded.len() && padded[j] == padded[i] {
            j += 1;
        }
        size /= factorial_u64((j - i) as u64);
        i = j;
    }
    size
}

fn factorial_u64(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// Visit every distinct permutation of `partition` padded to `nvars`,
/// as exponent vectors. Order is deterministic (lexicographic descent
/// from the sorted vector).
pub fn for_each_orbit_vector<F: FnMut(&[u32])>(partition: &Partition, nvars: usize, mut f: F) {
    let mut v = partition.padded(nvars);
    // Start from the lexicographically smallest arrangement.
    v.sort_unstable();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// Standard next-permutation step; returns false after the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The literal sum over all orbit monomials of every term: a map from
/// exponent vectors to coefficients. The budget bounds the total monomial
/// count; exceeding it errors with the offending grading.
pub fn full_expand(
    f: &SymPoly,
    budget: usize,
) -> Result<BTreeMap<Vec<u32>, Rational>, Error> {
    let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    let mut total = 0usize;
    for (p, c) in f.terms() {
        total += orbit_size(p, f.nvars()) as usize;
        if total > budget {
            return Err(Error::BudgetExceeded(p.grading(), total));
        }
        for_each_orbit_vector(p, f.nvars(), |v| {
            let e = out.entry(v.to_vec()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(v);
            }
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::pt;

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&pt(&[4, 4]), 4), 6); // C(4,2)
        assert_eq!(orbit_size(&pt(&[3, 3]), 6), 15); // C(6,2)
        assert_eq!(orbit_size(&pt(&[9, 3]), 6), 30); // ordered pairs
        assert_eq!(orbit_size(&pt(&[1, 1, 1, 1]), 4), 1);
        assert_eq!(orbit_size(&pt(&[20]), 4), 4);
        assert_eq!(orbit_size(&pt(&[2, 2, 2, 2, 2, 2]), 6), 1);
    }

    #[test]
    fn full_expand_counts() {
        let m44 = SymPoly::monomial(4, pt(&[4, 4]), crate::exact::rat_int(1)).unwrap();
        assert_eq!(full_expand(&m44, 1000).unwrap().len(), 6);

        // m_(6k-3s,3s) with distinct parts in 6 vars has 30 monomials.
        let m = SymPoly::monomial(6, pt(&[9, 3]), crate::exact::rat_int(1)).unwrap();
        assert_eq!(full_expand(&m, 1000).unwrap().len(), 30);

        let m33 = SymPoly::monomial(6, pt(&[3, 3]), crate::exact::rat_int(1)).unwrap();
        assert_eq!(full_expand(&m33, 1000).unwrap().len(), 15);
    }

    #[test]
    fn budget_is_enforced() {
        let m = SymPoly::monomial(6, pt(&[5, 4, 3, 2, 1]), crate::exact::rat_int(1)).unwrap();
        assert!(matches!(
            full_expand(&m, 10),
            Err(Error::BudgetExceeded(15, _))
        ));
    }
}
