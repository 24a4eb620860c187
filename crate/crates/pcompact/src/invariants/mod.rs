//! The three modular reflection groups and their invariant polynomial
//! generators, with exact verification: the quartic family for G29, the
//! extra degree-24 generator for G31, the closed-form degree-6k family
//! for G34, lattice cross-checks, indecomposability mod p, and the
//! degree-36 decomposition.

mod decompose;
mod groups;
mod lattice;
mod powersum;

pub use decompose::{
    decompose_f36, decompose_mod_p, divisibility_check_h42, f36_candidates, f36_long_coordinate_check,
    f_monomial_poly, indecomposable_mod_p, monomials_of_degree, FExponent, Verdict, F36_COEFFICIENTS,
};
pub use groups::{group_data, group_data_json, load_group_data, mat_mul, mat_vec, Matrix, ReflectionGroupData};
pub use lattice::{
    build_lattice, spot_check_reflection_images, vector_norm, verify_full_lattice, verify_lattice,
    LatticeReport, LatticeVector, LatticeVectorSet, VectorForm,
};
pub use powersum::{power_sum, power_sum_with_budget};

use crate::error::Error;
use crate::exact::{rat_int, Rational};
use crate::sympoly::{Partition, SymPoly};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// The three modular cases, by Shephard-Todd number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupId {
    G29,
    G31,
    G34,
}

impl GroupId {
    pub fn from_number(n: u32) -> Result<GroupId, Error> {
        match n {
            29 => Ok(GroupId::G29),
            31 => Ok(GroupId::G31),
            34 => Ok(GroupId::G34),
            _ => Err(Error::Invalid(format!(
                "group must be 29, 31, or 34; got {n}"
            ))),
        }
    }

    pub fn number(self) -> u32 {
        match self {
            GroupId::G29 => 29,
            GroupId::G31 => 31,
            GroupId::G34 => 34,
        }
    }

    pub fn prime(self) -> u64 {
        match self {
            GroupId::G29 | GroupId::G31 => 5,
            GroupId::G34 => 7,
        }
    }

    pub fn nvars(self) -> usize {
        match self {
            GroupId::G29 | GroupId::G31 => 4,
            GroupId::G34 => 6,
        }
    }

    pub fn degrees(self) -> &'static [u32] {
        match self {
            GroupId::G29 => &[4, 8, 12, 20],
            GroupId::G31 => &[8, 12, 20, 24],
            GroupId::G34 => &[6, 12, 18, 24, 30, 42],
        }
    }

    /// Truncation cap for all K-theoretic series work.
    pub fn cap(self) -> u32 {
        match self {
            GroupId::G29 => 20,
            GroupId::G31 => 24,
            GroupId::G34 => 42,
        }
    }

    /// The second generator r of (Z/p^2)^x used by the homotopy
    /// presentations: 2 for p = 5, 3 for p = 7.
    pub fn unit_generator(self) -> u64 {
        match self.prime() {
            5 => 2,
            7 => 3,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.number())
    }
}

/// A group's invariant generators, keyed by degree.
#[derive(Debug, Clone)]
pub struct InvariantFamily {
    pub group: GroupId,
    pub polys: BTreeMap<u32, SymPoly>,
}

impl InvariantFamily {
    pub fn poly(&self, degree: u32) -> &SymPoly {
        &self.polys[&degree]
    }
}

fn g29_tables() -> Vec<(u32, SymPoly)> {
    let f4 = SymPoly::from_table(4, &[(&[4], 1, 1), (&[1, 1, 1, 1], -12, 1)]);
    let f8 = SymPoly::from_table(4, &[(&[8], 1, 1), (&[4, 4], 14, 1), (&[2, 2, 2, 2], 168, 1)]);
    let f12 = SymPoly::from_table(
        4,
        &[
            (&[12], 1, 1),
            (&[8, 4], -33, 1),
            (&[4, 4, 4], 330, 1),
            (&[6, 2, 2, 2], 792, 1),
        ],
    );
    let f20 = SymPoly::from_table(
        4,
        &[
            (&[20], 1, 1),
            (&[16, 4], -19, 1),
            (&[12, 8], -494, 1),
            (&[14, 2, 2, 2], -336, 1),
            (&[12, 4, 4], 716, 1),
            (&[8, 8, 4], 1038, 1),
            (&[10, 6, 2, 2], 7632, 1),
            (&[8, 4, 4, 4], 129012, 1),
            (&[6, 6, 6, 2], 106848, 1),
        ],
    );
    vec![(4, f4), (8, f8), (12, f12), (20, f20)]
}

fn g31_f24() -> SymPoly {
    SymPoly::from_table(
        4,
        &[
            (&[24], 1, 1),
            (&[20, 4], -66, 1),
            (&[16, 8], 1023, 1),
            (&[12, 12], 2180, 1),
            (&[8, 8, 4, 4], 1293156, 1),
            (&[12, 4, 4, 4], 267096, 1),
            (&[6, 6, 6, 6], 2121984, 1),
            (&[10, 6, 6, 2], 620352, 1),
            (&[14, 6, 2, 2], -4032, 1),
            (&[10, 10, 2, 2], -190080, 1),
            (&[12, 8, 4], -11892, 1),
            (&[16, 4, 4], -4938, 1),
            (&[8, 8, 8], -24534, 1),
            (&[18, 2, 2, 2], -2304, 1),
        ],
    )
}

/// Partitions of `n` into exactly `r` parts, all congruent to `residue`
/// mod 3, non-increasing.
fn partitions_mod3(n: u32, r: usize, residue: u32, max_part: u32, out: &mut Vec<Vec<u32>>) {
    fn rec(n: u32, r: usize, residue: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut part = max_part.min(n);
        while part % 3 != residue || part == 0 {
            if part == 0 {
                return;
            }
            part -= 1;
        }
        while part >= 1 {
            // Parts are non-increasing; remaining sum must stay feasible.
            if part * r as u32 >= n {
                cur.push(part);
                rec(n - part, r - 1, residue, part, cur, out);
                cur.pop();
            }
            if part < 3 {
                break;
            }
            part -= 3;
        }
    }
    rec(n, r, residue, max_part, &mut Vec::new(), out);
}

fn multinomial(total: u32, parts: &[u32]) -> BigInt {
    debug_assert_eq!(parts.iter().sum::<u32>(), total);
    let mut v = crate::sympoly::factorial(total);
    for &p in parts {
        v /= crate::sympoly::factorial(p);
    }
    v
}

/// The degree-6k invariant of G34 from its closed formula:
/// a leading coefficient 1 + (-1)^k 27^{k-1} 5 on m_(6k), binomial terms
/// on the two-part orbits m_(6k-3s,3s), and multinomial coefficients on
/// every partition with 3 to 6 parts congruent to each other mod 3
/// (and to 0 when fewer than 6 parts).
pub fn build_f6k(k: u32) -> SymPoly {
    assert!(k >= 1);
    let n = 6 * k;
    let pow27 = BigInt::from(27).pow(k - 1);
    let sign = |e: u32| if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };

    let mut f = SymPoly::zero(6);
    f.add_term(
        Partition::new(vec![n]),
        Rational::from_integer(BigInt::one() + sign(k) * &pow27 * 5),
    );
    for s in 1..=k {
        let binom = multinomial(n, &[3 * s, n - 3 * s]);
        let c = binom * (BigInt::one() + sign(k + s) * &pow27);
        f.add_term(
            Partition::new(vec![n - 3 * s, 3 * s]),
            Rational::from_integer(c),
        );
    }
    for r in 3..=6usize {
        let residues: &[u32] = if r < 6 { &[0] } else { &[0, 1, 2] };
        for &residue in residues {
            let mut parts = Vec::new();
            partitions_mod3(n, r, residue, n, &mut parts);
            for e in parts {
                let c = multinomial(n, &e);
                f.add_term(Partition::new(e), Rational::from_integer(c));
            }
        }
    }
    f
}

/// The invariant generator family of a group: literal coefficient tables
/// for G29 and G31, the closed formula for G34.
pub fn build_invariants(group: GroupId) -> &'static InvariantFamily {
    static G29: OnceLock<InvariantFamily> = OnceLock::new();
    static G31: OnceLock<InvariantFamily> = OnceLock::new();
    static G34: OnceLock<InvariantFamily> = OnceLock::new();
    match group {
        GroupId::G29 => G29.get_or_init(|| InvariantFamily {
            group,
            polys: g29_tables().into_iter().collect(),
        }),
        GroupId::G31 => G31.get_or_init(|| {
            let mut polys: BTreeMap<u32, SymPoly> = g29_tables()
                .into_iter()
                .filter(|(d, _)| *d != 4)
                .collect();
            polys.insert(24, g31_f24());
            InvariantFamily { group, polys }
        }),
        GroupId::G34 => G34.get_or_init(|| InvariantFamily {
            group,
            polys: GroupId::G34
                .degrees()
                .iter()
                .map(|&d| (d, build_f6k(d / 6)))
                .collect(),
        }),
    }
}

/// The generator polynomial of `group` in the given degree; for G34 any
/// degree 6k is constructible (the decomposition work needs degree 36).
pub fn invariant_poly(group: GroupId, degree: u32) -> Result<SymPoly, Error> {
    if group == GroupId::G34 {
        if degree % 6 != 0 || degree == 0 {
            return Err(Error::Invalid(format!(
                "G34 invariants live in degrees 6k; got {degree}"
            )));
        }
        return Ok(build_f6k(degree / 6));
    }
    build_invariants(group)
        .polys
        .get(&degree)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("{group} has no generator in degree {degree}")))
}

/// m-basis coefficient of 1 as a convenience for tables.
pub fn one() -> Rational {
    rat_int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympoly::pt;

    #[test]
    fn g29_f4_matches_table() {
        let fam = build_invariants(GroupId::G29);
        let f4 = fam.poly(4);
        assert_eq!(f4.coeff(&pt(&[4])), rat_int(1));
        assert_eq!(f4.coeff(&pt(&[1, 1, 1, 1])), rat_int(-12));
        assert_eq!(f4.num_terms(), 2);
    }

    #[test]
    fn g34_f6_matches_listed_form() {
        let f6 = build_f6k(1);
        assert_eq!(f6.coeff(&pt(&[6])), rat_int(-4));
        assert_eq!(f6.coeff(&pt(&[3, 3])), rat_int(40));
        assert_eq!(f6.coeff(&pt(&[1, 1, 1, 1, 1, 1])), rat_int(720));
        assert_eq!(f6.num_terms(), 3);
    }

    #[test]
    fn g34_f12_matches_listed_form() {
        let f12 = build_f6k(2);
        assert_eq!(f12.coeff(&pt(&[12])), rat_int(136));
        // -26 * binom(12,3) on m_(9,3)
        assert_eq!(f12.coeff(&pt(&[9, 3])), rat_int(-26 * 220));
        // 28 * binom(12,6) on m_(6,6)
        assert_eq!(f12.coeff(&pt(&[6, 6])), rat_int(28 * 924));
        // multinomial terms on the five remaining partitions
        let expected: &[(&[u32], i64)] = &[
            (&[6, 3, 3], 18480),     // 12!/(6!3!3!)
            (&[3, 3, 3, 3], 369600), // 12!/(3!^4)
            (&[2, 2, 2, 2, 2, 2], 7484400),
            (&[7, 1, 1, 1, 1, 1], 95040),
            (&[4, 4, 1, 1, 1, 1], 831600),
        ];
        for (parts, c) in expected {
            assert_eq!(f12.coeff(&pt(parts)), rat_int(*c), "at {parts:?}");
        }
        assert_eq!(f12.num_terms(), 8);
    }

    #[test]
    fn g34_f18_head_terms() {
        let f18 = build_f6k(3);
        assert_eq!(f18.coeff(&pt(&[18])), rat_int(1 - 5 * 729));
        let b3 = multinomial(18, &[3, 15]);
        assert_eq!(
            f18.coeff(&pt(&[15, 3])),
            Rational::from_integer(b3 * (1 + 729))
        );
        let b6 = multinomial(18, &[6, 12]);
        assert_eq!(
            f18.coeff(&pt(&[12, 6])),
            Rational::from_integer(b6 * (1 - 729))
        );
        let b9 = multinomial(18, &[9, 9]);
        assert_eq!(
            f18.coeff(&pt(&[9, 9])),
            Rational::from_integer(b9 * (1 + 729))
        );
        // 4 head terms + 14 listed partitions of length 3..6.
        assert_eq!(f18.num_terms(), 4 + 14);
    }

    #[test]
    fn g34_support_congruences() {
        // All parts of every f_6k support partition are congruent mod 3,
        // and congruent to 0 when the length is under 6.
        for k in 1..=7 {
            let f = build_f6k(k);
            for (p, _) in f.terms() {
                let parts = p.parts();
                let r0 = parts[0] % 3;
                assert!(parts.iter().all(|&x| x % 3 == r0), "{p} mixes residues");
                if p.len() < 6 {
                    assert_eq!(r0, 0, "{p} short but not 0 mod 3");
                }
            }
        }
    }

    #[test]
    fn invariant_poly_rejects_bad_degrees() {
        assert!(invariant_poly(GroupId::G34, 7).is_err());
        assert!(invariant_poly(GroupId::G29, 24).is_err());
        assert!(invariant_poly(GroupId::G34, 36).is_ok());
    }
}
