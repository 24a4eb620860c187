//! Power sums over the 756 lattice vectors: the independent route to the
//! G34 invariants. `p_m = sum over vectors v of (v_1 x_1 + ... + v_6 x_6)^m`
//! expanded multinomially, with every omega sum evaluated exactly.

use super::lattice::{build_lattice, inv_sqrt_minus_three, VectorForm};
use crate::error::Error;
use crate::exact::{rat, CycRational, Rational};
use crate::sympoly::{factorial, Partition, SymPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

const DEFAULT_BUDGET: u32 = 12;

/// The exact power sum over the lattice, normalized when m = 6k by
/// (-27)^k / 486 (the scaling that makes the coefficients the small
/// integers of the closed formula); the raw sum otherwise. The raw sum
/// vanishes for m not divisible by 6.
pub fn power_sum(m: u32) -> Result<SymPoly, Error> {
    power_sum_with_budget(m, DEFAULT_BUDGET)
}

pub fn power_sum_with_budget(m: u32, budget: u32) -> Result<SymPoly, Error> {
    if m == 0 || m > budget {
        return Err(Error::BudgetExceeded(m, budget as usize));
    }
    let set = build_lattice();
    let s_pow_m = pow_cyc(&inv_sqrt_minus_three(), m);
    let minus_one_m = m % 2 == 1;

    // Bucket the deep vectors' omega exponents once: the product over a
    // deep vector is (+-1)^m s^m w^{<e,k>}, so only <e,k> mod 3 matters.
    let deep: Vec<(bool, [u8; 6])> = set
        .vectors
        .iter()
        .filter_map(|v| match v.form {
            VectorForm::Deep { negative, exponents } => Some((negative, exponents)),
            VectorForm::Root { .. } => None,
        })
        .collect();
    let roots: Vec<(usize, usize, u8, u8)> = set
        .vectors
        .iter()
        .filter_map(|v| match v.form {
            VectorForm::Root { i, j, a, b } => Some((i, j, a, b)),
            VectorForm::Deep { .. } => None,
        })
        .collect();

    let mut by_partition: BTreeMap<Partition, Vec<(Vec<u32>, CycRational)>> = BTreeMap::new();
    let mut k = [0u32; 6];
    compositions(m, 0, &mut k, &mut |k| {
        let mut omega_buckets = [0i64; 3]; // deep vectors by <e,k> mod 3, sign folded
        for &(negative, e) in &deep {
            let t = (0..6).map(|i| u32::from(e[i]) * k[i]).sum::<u32>() % 3;
            let sgn = if negative && minus_one_m { -1 } else { 1 };
            omega_buckets[t as usize] += sgn;
        }
        let mut total = CycRational::zero();
        for (t, &n) in omega_buckets.iter().enumerate() {
            if n != 0 {
                total = &total
                    + &CycRational::omega_pow(t as i64).scale(&Rational::from_integer(n.into()));
            }
        }
        total = &total * &s_pow_m;

        // Root vectors vanish unless the composition is supported on the
        // vector's two coordinates.
        let support: Vec<usize> = (0..6).filter(|&i| k[i] > 0).collect();
        if support.len() <= 2 {
            let mut root_buckets = [0i64; 3];
            let mut neg_buckets = [0i64; 3];
            for &(i, j, a, b) in &roots {
                if support.iter().any(|&s| s != i && s != j) {
                    continue;
                }
                let t = (u32::from(a) * k[i] + u32::from(b) * k[j]) % 3;
                if k[j] % 2 == 1 {
                    neg_buckets[t as usize] += 1;
                } else {
                    root_buckets[t as usize] += 1;
                }
            }
            for t in 0..3 {
                let n = root_buckets[t] - neg_buckets[t];
                if n != 0 {
                    total = &total
                        + &CycRational::omega_pow(t as i64)
                            .scale(&Rational::from_integer(n.into()));
                }
            }
        }

        if !total.is_zero() {
            let coeff = total.scale(&Rational::from_integer(multinomial(m, k)));
            let partition = Partition::new(k.to_vec());
            by_partition
                .entry(partition)
                .or_default()
                .push((k.to_vec(), coeff));
        }
    });

    // The sum is a symmetric polynomial: every member of an orbit must
    // carry the same coefficient, and each must be rational.
    let mut out = SymPoly::zero(6);
    for (partition, entries) in by_partition {
        let orbit = crate::sympoly::orbit_size(&partition, 6);
        assert_eq!(
            entries.len() as u64,
            orbit,
            "orbit of {partition} only partially present"
        );
        let first = &entries[0].1;
        for (comp, c) in &entries {
            assert_eq!(c, first, "asymmetric coefficient at {comp:?}");
        }
        let c = first
            .expect_rational()
            .unwrap_or_else(|_| panic!("irrational coefficient at {partition}"));
        out.add_term(partition, c);
    }

    if m % 6 == 0 {
        let k6 = m / 6;
        let mut scale = rat(1, 486);
        for _ in 0..k6 {
            scale *= rat(-27, 1);
        }
        Ok(out.scale(&scale))
    } else {
        Ok(out)
    }
}

fn pow_cyc(x: &CycRational, k: u32) -> CycRational {
    let mut out = CycRational::one();
    for _ in 0..k {
        out = &out * x;
    }
    out
}

fn multinomial(m: u32, k: &[u32; 6]) -> BigInt {
    let mut v = factorial(m);
    for &ki in k {
        v /= factorial(ki);
    }
    v
}

fn compositions(remaining: u32, idx: usize, k: &mut [u32; 6], f: &mut impl FnMut(&[u32; 6])) {
    if idx == 5 {
        k[5] = remaining;
        f(k);
        k[5] = 0;
        return;
    }
    for v in 0..=remaining {
        k[idx] = v;
        compositions(remaining - v, idx + 1, k, f);
    }
    k[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::build_f6k;
    use crate::sympoly::full_expand;

    #[test]
    fn low_power_sums_vanish_off_multiples_of_six() {
        for m in [1u32, 2, 3, 4, 5, 7, 8] {
            let p = power_sum(m).unwrap();
            assert!(p.is_zero(), "p_{m} should vanish, got {p}");
        }
    }

    #[test]
    fn normalized_p6_equals_f6() {
        assert_eq!(power_sum(6).unwrap(), build_f6k(1));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(power_sum(13).is_err());
        assert!(power_sum_with_budget(13, 14).is_ok());
    }

    #[test]
    fn naive_product_route_agrees_at_m_3_and_6() {
        // Second oracle: evaluate (v.x)^m coefficient-by-coefficient with
        // plain repeated CycRational multiplication, no bucketing.
        let set = build_lattice();
        for m in [3u32, 6] {
            let mut acc: BTreeMap<Vec<u32>, CycRational> = BTreeMap::new();
            let mut k = [0u32; 6];
            compositions(m, 0, &mut k, &mut |k| {
                let mut total = CycRational::zero();
                for v in &set.vectors {
                    let mut prod = CycRational::one();
                    for i in 0..6 {
                        for _ in 0..k[i] {
                            prod = prod.checked_mul(&v.coords[i]).unwrap();
                        }
                    }
                    total = &total + &prod;
                }
                if !total.is_zero() {
                    let c = total.scale(&Rational::from_integer(multinomial(m, k)));
                    acc.insert(k.to_vec(), c);
                }
            });

            let fast = power_sum(m).unwrap();
            // Undo the 6k normalization for the comparison.
            let raw = if m % 6 == 0 {
                fast.scale(&rat(486, -27))
            } else {
                fast
            };
            let expanded = full_expand(&raw, 1_000_000).unwrap();
            let acc_rat: BTreeMap<Vec<u32>, Rational> = acc
                .into_iter()
                .map(|(k, c)| (k, c.expect_rational().unwrap()))
                .collect();
            assert_eq!(expanded, acc_rat, "m = {m}");
        }
    }
}
