//! The 756 norm-2 vectors of the Eisenstein lattice whose automorphisms
//! realize G34, and the closure check that the reflection generators
//! permute them.

use super::groups::{mat_vec, Matrix};
use super::GroupId;
use crate::error::Error;
use crate::exact::{rat_int, CycRational, Rational};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// How a lattice vector was built; retained so character sums over the
/// set can work with exponents instead of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorForm {
    /// omega^a in position i, minus omega^b in position j.
    Root { i: usize, j: usize, a: u8, b: u8 },
    /// sign * (1+2w)/(-3) * (omega^{a_1}, ..., omega^{a_6}), sum a_i = 0 mod 3.
    Deep { negative: bool, exponents: [u8; 6] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub coords: Vec<CycRational>,
    pub form: VectorForm,
}

/// The full set, with an index for membership queries.
pub struct LatticeVectorSet {
    pub vectors: Vec<LatticeVector>,
    index: BTreeMap<Vec<CycRational>, usize>,
}

impl LatticeVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn position(&self, coords: &[CycRational]) -> Option<usize> {
        self.index.get(coords).copied()
    }
}

/// (1+2w)/(-3), the reciprocal of sqrt(-3) in Q(omega).
pub fn inv_sqrt_minus_three() -> CycRational {
    CycRational::sqrt_minus_three()
        .inv()
        .expect("sqrt(-3) is nonzero")
}

fn root_vector(i: usize, j: usize, a: u8, b: u8) -> LatticeVector {
    let mut coords = vec![CycRational::zero(); 6];
    coords[i] = CycRational::omega_pow(a as i64);
    coords[j] = -&CycRational::omega_pow(b as i64);
    LatticeVector {
        coords,
        form: VectorForm::Root { i, j, a, b },
    }
}

fn deep_vector(negative: bool, exponents: [u8; 6]) -> LatticeVector {
    let mut s = inv_sqrt_minus_three();
    if negative {
        s = -&s;
    }
    let coords = exponents
        .iter()
        .map(|&a| &s * &CycRational::omega_pow(a as i64))
        .collect();
    LatticeVector {
        coords,
        form: VectorForm::Deep {
            negative,
            exponents,
        },
    }
}

/// Construct the 270 + 486 = 756 vectors.
pub fn build_lattice() -> &'static LatticeVectorSet {
    static SET: OnceLock<LatticeVectorSet> = OnceLock::new();
    SET.get_or_init(|| {
        let mut vectors = Vec::with_capacity(756);
        for i in 0..6 {
            for j in 0..6 {
                if i == j {
                    continue;
                }
                for a in 0..3u8 {
                    for b in 0..3u8 {
                        vectors.push(root_vector(i, j, a, b));
                    }
                }
            }
        }
        for sign in [false, true] {
            for code in 0..3u32.pow(5) {
                let mut e = [0u8; 6];
                let mut c = code;
                let mut sum = 0u32;
                for slot in e.iter_mut().take(5) {
                    *slot = (c % 3) as u8;
                    sum += u32::from(*slot);
                    c /= 3;
                }
                e[5] = ((3 - sum % 3) % 3) as u8;
                vectors.push(deep_vector(sign, e));
            }
        }
        let index = vectors
            .iter()
            .enumerate()
            .map(|(n, v)| (v.coords.clone(), n))
            .collect();
        LatticeVectorSet { vectors, index }
    })
}

/// Result of checking one matrix against the set.
#[derive(Debug)]
pub struct LatticeReport {
    /// Image index of each vector under the matrix.
    pub permutation: Vec<usize>,
}

/// Assert a matrix permutes the 756 vectors; the report carries the
/// permutation. A missing image names the offending vector.
pub fn verify_lattice(set: &LatticeVectorSet, matrix: &Matrix) -> Result<LatticeReport, Error> {
    let mut permutation = Vec::with_capacity(set.len());
    for (n, v) in set.vectors.iter().enumerate() {
        let image = mat_vec(matrix, &v.coords);
        match set.position(&image) {
            Some(m) => permutation.push(m),
            None => {
                return Err(Error::Invalid(format!(
                    "image of lattice vector {n} ({:?}) is not in the set",
                    v.form
                )))
            }
        }
    }
    Ok(LatticeReport { permutation })
}

/// Hermitian norm of a vector.
pub fn vector_norm(coords: &[CycRational]) -> Rational {
    coords.iter().map(CycRational::norm).sum()
}

/// Closure of the whole set under every G34 generator, plus the fixed
/// spot-check images of the order-2 reflection.
pub fn verify_full_lattice() -> Result<(), Error> {
    let set = build_lattice();
    if set.len() != 756 {
        return Err(Error::Invalid(format!("expected 756 vectors, got {}", set.len())));
    }
    let two = rat_int(2);
    for v in &set.vectors {
        if vector_norm(&v.coords) != two {
            return Err(Error::Invalid(format!("vector {:?} has wrong norm", v.form)));
        }
    }
    let g34 = super::groups::group_data(GroupId::G34);
    for m in &g34.generators {
        verify_lattice(set, m)?;
    }
    spot_check_reflection_images()
}

/// The four recorded images of the sum-zero reflection.
pub fn spot_check_reflection_images() -> Result<(), Error> {
    let g34 = super::groups::group_data(GroupId::G34);
    let reflection = &g34.generators[1];
    let s = inv_sqrt_minus_three();
    let w = |k: i64| CycRational::omega_pow(k);
    let scaled = |parts: &[i64]| -> Vec<CycRational> {
        parts.iter().map(|&k| &s * &w(k)).collect()
    };

    // (w, -w^2, 0^4) maps to (1/sqrt(-3)) (w^2, w, 1, 1, 1, 1).
    let mut v1 = vec![CycRational::zero(); 6];
    v1[0] = w(1);
    v1[1] = -&w(2);
    let expect1 = scaled(&[2, 1, 0, 0, 0, 0]);

    // (1/sqrt(-3)) (1,...,1) maps to its negative.
    let v2 = scaled(&[0; 6]);
    let expect2: Vec<CycRational> = v2.iter().map(|c| -c).collect();

    // (1/sqrt(-3)) (1,1,1,w,w,w) maps to -(1/sqrt(-3)) (w,w,w,1,1,1).
    let v3 = scaled(&[0, 0, 0, 1, 1, 1]);
    let expect3: Vec<CycRational> = scaled(&[1, 1, 1, 0, 0, 0]).iter().map(|c| -c).collect();

    // (1/sqrt(-3)) (1,1,w,w,w^2,w^2) is fixed.
    let v4 = scaled(&[0, 0, 1, 1, 2, 2]);
    let expect4 = v4.clone();

    for (n, (v, expect)) in [(1, (v1, expect1)), (2, (v2, expect2)), (3, (v3, expect3)), (4, (v4, expect4))]
    {
        let image = mat_vec(reflection, &v);
        if image != expect {
            return Err(Error::Invalid(format!(
                "reflection image spot-check {n} failed"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_has_756_distinct_norm_2_vectors() {
        let set = build_lattice();
        assert_eq!(set.len(), 756);
        assert_eq!(set.index.len(), 756, "duplicates present");
        let two = rat_int(2);
        for v in &set.vectors {
            assert_eq!(vector_norm(&v.coords), two);
            if let VectorForm::Deep { exponents, .. } = v.form {
                let sum: u32 = exponents.iter().map(|&x| u32::from(x)).sum();
                assert_eq!(sum % 3, 0);
            }
        }
        let deep = set
            .vectors
            .iter()
            .filter(|v| matches!(v.form, VectorForm::Deep { .. }))
            .count();
        assert_eq!(deep, 486);
        assert_eq!(set.len() - deep, 270);
    }

    #[test]
    fn reflection_spot_checks() {
        spot_check_reflection_images().unwrap();
    }

    #[test]
    fn permutation_matrices_permute() {
        let set = build_lattice();
        let g34 = super::super::groups::group_data(GroupId::G34);
        // Generators 2.. are the adjacent transpositions.
        let report = verify_lattice(set, &g34.generators[2]).unwrap();
        let mut seen = vec![false; 756];
        for &m in &report.permutation {
            assert!(!seen[m]);
            seen[m] = true;
        }
    }

    #[test]
    fn full_closure() {
        verify_full_lattice().unwrap();
    }
}
