//! The published integral combinations: three series for each rank-4
//! group (5-integral through gradings 20 and 24) and five linear series
//! for G34 (7-integral through grading 42).

use super::IntegralCombination;
use crate::exact::rat;
use crate::invariants::{FExponent, GroupId};

fn combo(group: GroupId, base: u32, terms: &[(&[(u32, u32)], i64, i64)]) -> IntegralCombination {
    let mut c = IntegralCombination::new(group, base);
    for &(m, num, den) in terms {
        c.terms.push((FExponent(m.to_vec()), rat(num, den)));
    }
    c
}

/// The integral generator basis of the group, one combination per
/// generator degree that needs corrections (the top-degree generator is
/// already integral through the cap).
pub fn integral_basis(group: GroupId) -> Vec<IntegralCombination> {
    match group {
        GroupId::G29 => vec![
            combo(
                group,
                4,
                &[
                    (&[(4, 2)], -1, 10),
                    (&[(8, 1)], -1, 5),
                    (&[(12, 1)], -16, 25),
                    (&[(8, 1), (4, 1)], -7, 25),
                    (&[(4, 3)], 4, 25),
                    (&[(12, 1), (4, 1)], -13, 125),
                    (&[(8, 1), (4, 2)], -57, 125),
                    (&[(4, 4)], -102, 125),
                    (&[(8, 2)], -62, 125),
                    (&[(20, 1)], -64, 125),
                    (&[(4, 5)], -4, 625),
                    (&[(12, 1), (4, 2)], -42, 125),
                    (&[(8, 2), (4, 1)], -11, 25),
                    (&[(12, 1), (8, 1)], -72, 125),
                ],
            ),
            combo(
                group,
                8,
                &[
                    (&[(12, 1)], -8, 5),
                    (&[(8, 2)], -7, 25),
                    (&[(20, 1)], -4, 25),
                    (&[(12, 1), (8, 1)], -21, 125),
                ],
            ),
            combo(
                group,
                12,
                &[
                    (&[(8, 2)], -2, 5),
                    (&[(20, 1)], -1, 5),
                    (&[(12, 1), (8, 1)], -4, 25),
                ],
            ),
        ],
        GroupId::G31 => vec![
            combo(
                group,
                8,
                &[
                    (&[(12, 1)], -8, 5),
                    (&[(8, 2)], -7, 25),
                    (&[(20, 1)], -4, 25),
                    (&[(12, 1), (8, 1)], -21, 125),
                    (&[(24, 1)], -99, 125),
                    (&[(8, 3)], -597, 625),
                    (&[(12, 2)], -558, 625),
                ],
            ),
            combo(
                group,
                12,
                &[
                    (&[(8, 2)], -2, 5),
                    (&[(20, 1)], -1, 5),
                    (&[(12, 1), (8, 1)], -4, 25),
                    (&[(24, 1)], -18, 25),
                    (&[(8, 3)], -74, 125),
                    (&[(12, 2)], -11, 125),
                ],
            ),
            combo(
                group,
                20,
                &[(&[(24, 1)], -3, 5), (&[(8, 3)], -2, 5)],
            ),
        ],
        GroupId::G34 => vec![
            combo(
                group,
                30,
                &[(&[(36, 1)], 5, 7), (&[(42, 1)], 22, 49)],
            ),
            combo(
                group,
                24,
                &[
                    (&[(30, 1)], 4, 7),
                    (&[(36, 1)], 45, 49),
                    (&[(42, 1)], 104, 343),
                ],
            ),
            combo(
                group,
                18,
                &[
                    (&[(24, 1)], 3, 7),
                    (&[(30, 1)], 20, 49),
                    (&[(36, 1)], 157, 343),
                    (&[(42, 1)], 526, 2401),
                ],
            ),
            combo(
                group,
                12,
                &[
                    (&[(18, 1)], 2, 7),
                    (&[(24, 1)], 45, 49),
                    (&[(30, 1)], 109, 343),
                    (&[(36, 1)], 1391, 2401),
                    (&[(42, 1)], 6201, 16807),
                ],
            ),
            combo(
                group,
                6,
                &[
                    (&[(12, 1)], 1, 7),
                    (&[(18, 1)], 22, 49),
                    (&[(24, 1)], 204, 343),
                    (&[(30, 1)], 1107, 2401),
                    (&[(36, 1)], 9682, 16807),
                    (&[(42, 1)], 100682, 117649),
                ],
            ),
        ],
    }
}
