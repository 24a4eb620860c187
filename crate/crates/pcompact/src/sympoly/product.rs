//! Orbit-to-orbit products in the monomial-symmetric basis.

use super::expand::{for_each_orbit_vector, orbit_size};
use super::{Partition, SymPoly};
use crate::error::Error;
use crate::exact::Rational;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Exact expansion of `m_a * m_b` in the monomial-symmetric basis.
///
/// Fix the sorted representative of `m_a` and add every orbit vector of
/// `m_b` to it; a partition hit `n` times receives the integer coefficient
/// `n * |orbit(a)| / |orbit(result)|`. The division is always exact; the
/// full expansion oracle in the tests pins this down.
pub fn m_product(a: &Partition, b: &Partition, nvars: usize) -> Result<SymPoly, Error> {
    if !a.fits(nvars) {
        return Err(Error::PartitionTooLong(a.parts().to_vec(), nvars));
    }
    if !b.fits(nvars) {
        return Err(Error::PartitionTooLong(b.parts().to_vec(), nvars));
    }
    // Enumerate the smaller orbit.
    let (fixed, moved) = if orbit_size(a, nvars) <= orbit_size(b, nvars) {
        (b, a)
    } else {
        (a, b)
    };
    let fixed_padded = fixed.padded(nvars);
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut sum = vec![0u32; nvars];
    for_each_orbit_vector(moved, nvars, |v| {
        for i in 0..nvars {
            sum[i] = fixed_padded[i] + v[i];
        }
        *counts.entry(Partition::new(sum.clone())).or_insert(0) += 1;
    });

    let fixed_orbit = orbit_size(fixed, nvars);
    let mut out = SymPoly::zero(nvars);
    for (lambda, n) in counts {
        let num = n * fixed_orbit;
        let den = orbit_size(&lambda, nvars);
        debug_assert_eq!(num % den, 0, "orbit count division must be exact");
        out.add_term(lambda, Rational::from_integer(BigInt::from(num / den)));
    }
    Ok(out)
}
