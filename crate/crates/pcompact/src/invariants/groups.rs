//! Generator matrices and bundled data for the three groups.
//!
//! The data also ships as versioned JSON files under `data/`; the loader
//! round-trips against the in-code constructors in the tests.

use super::GroupId;
use crate::error::Error;
use crate::exact::{rat, CycRational};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

pub type Matrix = Vec<Vec<CycRational>>;

/// A reflection group's bundled data: prime, ambient rank, generator
/// degrees, and generator matrices over the appropriate cyclotomic field.
#[derive(Debug, Clone)]
pub struct ReflectionGroupData {
    pub id: GroupId,
    pub prime: u64,
    pub nvars: usize,
    pub degrees: Vec<u32>,
    pub generators: Vec<Matrix>,
}

impl ReflectionGroupData {
    /// Multiplicative order of a generator, probed up to a small bound.
    pub fn generator_order(&self, idx: usize, bound: u32) -> Option<u32> {
        let m = &self.generators[idx];
        let n = self.nvars;
        let id = identity(n);
        let mut acc = m.clone();
        for k in 1..=bound {
            if acc == id {
                return Some(k);
            }
            acc = mat_mul(&acc, m);
        }
        None
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| CycRational::from_int(i64::from(i == j)))
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = CycRational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        s = &s + &(&a[i][k] * &bk[j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[CycRational]) -> Vec<CycRational> {
    m.iter()
        .map(|row| {
            let mut s = CycRational::zero();
            for (c, x) in row.iter().zip(v) {
                s = &s + &(c * x);
            }
            s
        })
        .collect()
}

fn swap_matrix(n: usize, a: usize, b: usize) -> Matrix {
    let mut m = identity(n);
    m.swap(a, b);
    m
}

fn g29_generators() -> Vec<Matrix> {
    let h = rat(1, 2);
    let half = |s: i64| CycRational::from_rational(&h * crate::exact::rat_int(s));
    let m1: Matrix = (0..4)
        .map(|i| (0..4).map(|j| half(if i == j { 1 } else { -1 })).collect())
        .collect();
    let zero = CycRational::zero;
    let one = CycRational::one;
    let i = CycRational::i();
    let m2 = vec![
        vec![zero(), i.clone(), zero(), zero()],
        vec![-&i, zero(), zero(), zero()],
        vec![zero(), zero(), one(), zero()],
        vec![zero(), zero(), zero(), one()],
    ];
    let m3 = swap_matrix(4, 0, 1);
    let m4 = swap_matrix(4, 1, 2);
    vec![m1, m2, m3, m4]
}

fn g31_generators() -> Vec<Matrix> {
    let mut gens = g29_generators();
    let mut d = identity(4);
    d[2][2] = CycRational::from_int(-1);
    gens.push(d);
    gens
}

fn g34_generators() -> Vec<Matrix> {
    let zero = CycRational::zero;
    let one = CycRational::one;
    let w = CycRational::omega();
    let w2 = CycRational::omega_pow(2);
    let mut a = identity(6);
    a[0] = vec![zero(), w2, zero(), zero(), zero(), zero()];
    a[1] = vec![w, zero(), zero(), zero(), zero(), zero()];

    // I - (1/3) J: the order-2 reflection through the sum-zero hyperplane.
    let third = rat(1, 3);
    let b: Matrix = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let diag = if i == j { one() } else { zero() };
                    &diag - &CycRational::from_rational(third.clone())
                })
                .collect()
        })
        .collect();

    let mut gens = vec![a, b];
    for i in 0..5 {
        gens.push(swap_matrix(6, i, i + 1));
    }
    gens
}

fn build(id: GroupId) -> ReflectionGroupData {
    let generators = match id {
        GroupId::G29 => g29_generators(),
        GroupId::G31 => g31_generators(),
        GroupId::G34 => g34_generators(),
    };
    ReflectionGroupData {
        id,
        prime: id.prime(),
        nvars: id.nvars(),
        degrees: id.degrees().to_vec(),
        generators,
    }
}

/// Bundled data for a group, built once.
pub fn group_data(id: GroupId) -> &'static ReflectionGroupData {
    static G29: OnceLock<ReflectionGroupData> = OnceLock::new();
    static G31: OnceLock<ReflectionGroupData> = OnceLock::new();
    static G34: OnceLock<ReflectionGroupData> = OnceLock::new();
    match id {
        GroupId::G29 => G29.get_or_init(|| build(id)),
        GroupId::G31 => G31.get_or_init(|| build(id)),
        GroupId::G34 => G34.get_or_init(|| build(id)),
    }
}

#[derive(Serialize, Deserialize)]
pub struct GroupDataJson {
    pub version: u32,
    pub group: u32,
    pub prime: u64,
    pub nvars: usize,
    pub degrees: Vec<u32>,
    pub generators: Vec<Vec<Vec<CycRational>>>,
}

/// Parse a versioned group data file.
pub fn load_group_data(json: &str) -> Result<ReflectionGroupData, Error> {
    let raw: GroupDataJson =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let id = GroupId::from_number(raw.group)?;
    Ok(ReflectionGroupData {
        id,
        prime: raw.prime,
        nvars: raw.nvars,
        degrees: raw.degrees,
        generators: raw.generators,
    })
}

/// Serialize group data in the shipped file format.
pub fn group_data_json(data: &ReflectionGroupData) -> String {
    let raw = GroupDataJson {
        version: 1,
        group: data.id.number(),
        prime: data.prime,
        nvars: data.nvars,
        degrees: data.degrees.clone(),
        generators: data.generators.clone(),
    };
    serde_json::to_string_pretty(&raw).expect("serialization cannot fail")
}
