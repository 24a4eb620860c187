//! Small dense exact linear algebra: integer Smith normal form with
//! transform tracking, rational Gaussian elimination, and linear solving
//! over Z/p^k. Matrices here are at most a few dozen entries; clarity
//! beats asymptotics.

use crate::error::Error;
use crate::exact::{valuation_int, PValuation, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        IMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] -= v;
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] -= v;
        }
    }

    fn row_add(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            self[(dst, j)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Nearest-integer quotient: minimizes |a - q*b|.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.sign() == b.sign()) || (r.is_zero()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Smith normal form: U * A * V = D with U, V unimodular and the diagonal
/// of D a divisibility chain d_1 | d_2 | ... (non-negative).
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub v: IMat,
}

impl Snf {
    /// Diagonal entries, including zeros, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let mut d = a.clone();
    let mut u = IMat::identity(d.rows);
    let mut v = IMat::identity(d.cols);
    let n = d.rows.min(d.cols);

    for t in 0..n {
        loop {
            // Smallest nonzero |entry| in the trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(d, u, v, t);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = div_round(&d[(i, t)], &d[(t, t)]);
                    d.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = div_round(&d[(t, j)], &d[(t, t)]);
                    d.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Divisibility fix: fold in a row containing a non-multiple.
            let mut fixed = true;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        d.row_add(t, i);
                        u.row_add(t, i);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    return finish(d, u, v, n);

    fn finish(d: IMat, u: IMat, v: IMat, _rank: usize) -> Snf {
        debug_assert!({
            let nn = d.rows.min(d.cols);
            (0..nn.saturating_sub(1)).all(|i| {
                d[(i + 1, i + 1)].is_zero()
                    || (!d[(i, i)].is_zero() && (&d[(i + 1, i + 1)] % &d[(i, i)]).is_zero())
            })
        });
        Snf { d, u, v }
    }
}

/// Outcome of an exact rational solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent but with free variables remaining.
    Underdetermined,
}

/// Solve `A x = b` over the rationals by Gaussian elimination.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> QSolution {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut next_row = 0;
    for col in 0..cols {
        let Some(p) = (next_row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, p);
        let inv = m[next_row][col].clone();
        for j in col..=cols {
            let v = &m[next_row][j] / &inv;
            m[next_row][j] = v;
        }
        for i in 0..rows {
            if i != next_row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let v = &m[i][j] - &(&f * &m[next_row][j]);
                    m[i][j] = v;
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows {
            break;
        }
    }
    for row in m.iter().skip(next_row) {
        if !row[cols].is_zero() {
            return QSolution::Inconsistent;
        }
    }
    if pivot_of_col.iter().any(Option::is_none) {
        return QSolution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); cols];
    for (col, p) in pivot_of_col.iter().enumerate() {
        x[col] = m[p.unwrap()][cols].clone();
    }
    QSolution::Unique(x)
}

/// A solution of `A x = b (mod p^k)`: the canonical least non-negative
/// representative, with a uniqueness flag.
#[derive(Debug, Clone)]
pub struct ZpkSolution {
    pub residues: Vec<BigInt>,
    pub modulus: BigInt,
    pub unique: bool,
}

impl ZpkSolution {
    /// Whether a candidate vector of rationals satisfies the system's
    /// solution, i.e. is congruent to a solution mod p^k. Used to confirm
    /// published coefficient choices like 1/2 = 3 (mod 5).
    pub fn admits(&self, a: &[Vec<BigInt>], b: &[BigInt], candidate: &[Rational], p: u64) -> bool {
        let cand: Option<Vec<BigInt>> = candidate
            .iter()
            .map(|r| rational_mod_pk(r, &self.modulus, p))
            .collect();
        let Some(cand) = cand else { return false };
        a.iter().zip(b).all(|(row, rhs)| {
            let lhs: BigInt = row.iter().zip(&cand).map(|(c, x)| c * x).sum();
            (lhs - rhs).mod_floor(&self.modulus).is_zero()
        })
    }
}

/// Reduce a p-integral rational mod p^k; None if the denominator is
/// divisible by p.
pub fn rational_mod_pk(r: &Rational, modulus: &BigInt, p: u64) -> Option<BigInt> {
    if valuation_int(r.denom(), p) != PValuation::Finite(0) {
        return None;
    }
    let num = r.numer().mod_floor(modulus);
    let den = r.denom().mod_floor(modulus);
    let inv = mod_inverse(&den, modulus)?;
    Some((num * inv).mod_floor(modulus))
}

/// Inverse mod m via extended Euclid; None when gcd != 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Solve `A x = b (mod p^k)` through the Smith normal form of A.
///
/// Pivots lift by minimal p-valuation automatically (the SNF diagonal is
/// a divisibility chain); the particular solution sets free coordinates
/// to zero and reduces the rest to least non-negative residues.
pub fn solve_mod_pk(
    a: &[Vec<BigInt>],
    b: &[BigInt],
    p: u64,
    k: u32,
) -> Result<ZpkSolution, Error> {
    let modulus = crate::exact::p_power(p, k);
    let mat = IMat::from_rows(a.to_vec());
    let snf = smith_normal_form(&mat);
    let ub = snf.u.mul_vec(b);
    let n = mat.rows.min(mat.cols);

    let mut y = vec![BigInt::zero(); mat.cols];
    let mut unique = mat.cols <= n;
    for (i, ubi) in ub.iter().enumerate() {
        let d = if i < n {
            snf.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        let rhs = ubi.mod_floor(&modulus);
        if d.is_zero() {
            if !rhs.is_zero() {
                return Err(Error::Inconsistent);
            }
            if i < mat.cols {
                unique = false;
            }
            continue;
        }
        // d * y_i = rhs (mod p^k): write d = u * p^s with u prime to p.
        let s = match valuation_int(&d, p) {
            PValuation::Finite(s) => s as u32,
            PValuation::Infinite => unreachable!(),
        };
        if s >= k {
            // d is 0 mod p^k: the coordinate is free; rhs must vanish.
            if !rhs.is_zero() {
                return Err(Error::Inconsistent);
            }
            unique = false;
            continue;
        }
        let ps = crate::exact::p_power(p, s);
        let unit = &d / &ps;
        let (q, r) = rhs.div_rem(&ps);
        if !r.is_zero() {
            return Err(Error::Inconsistent);
        }
        let sub_modulus = crate::exact::p_power(p, k - s);
        let inv = mod_inverse(&unit.mod_floor(&sub_modulus), &sub_modulus)
            .expect("unit part is invertible");
        y[i] = (q * inv).mod_floor(&sub_modulus);
        if s > 0 {
            unique = false;
        }
    }
    let x = snf.v.mul_vec(&y);
    let residues = x.iter().map(|v| v.mod_floor(&modulus)).collect();
    Ok(ZpkSolution {
        residues,
        modulus,
        unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn mat(rows: &[&[i64]]) -> IMat {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn snf_small() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        let d: Vec<i64> = snf
            .diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![2, 2, 156]);
        // U A V = D
        let mut uav = IMat::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = BigInt::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        s += &snf.u[(i, k)] * &a[(k, l)] * &snf.v[(l, j)];
                    }
                }
                uav[(i, j)] = s;
            }
        }
        assert_eq!(uav, snf.d);
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = mat(&[&[6, 0], &[0, 10]]);
        let snf = smith_normal_form(&a);
        let d = snf.diagonal();
        assert_eq!(d[0], BigInt::from(2));
        assert_eq!(d[1], BigInt::from(30));
    }

    #[test]
    fn rational_solver() {
        let a = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(4)],
        ];
        let b = vec![rat_int(5), rat_int(11)];
        assert_eq!(
            solve_rational(&a, &b),
            QSolution::Unique(vec![rat_int(1), rat_int(2)])
        );

        let a = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert_eq!(
            solve_rational(&a, &vec![rat_int(1), rat_int(3)]),
            QSolution::Inconsistent
        );
        assert_eq!(
            solve_rational(&a, &vec![rat_int(1), rat_int(2)]),
            QSolution::Underdetermined
        );
    }

    #[test]
    fn zpk_solver_examples() {
        // 3x = 6 mod 25: unique.
        let a = vec![vec![BigInt::from(3)]];
        let sol = solve_mod_pk(&a, &[BigInt::from(6)], 5, 2).unwrap();
        assert_eq!(sol.residues, vec![BigInt::from(2)]);
        assert!(sol.unique);

        // 5x = 10 mod 25: solvable, not unique.
        let a = vec![vec![BigInt::from(5)]];
        let sol = solve_mod_pk(&a, &[BigInt::from(10)], 5, 2).unwrap();
        assert!(!sol.unique);
        let check: BigInt = &sol.residues[0] * 5 - 10;
        assert_eq!(check.mod_floor(&BigInt::from(25)), BigInt::zero());

        // 5x = 2 mod 25: inconsistent.
        let a = vec![vec![BigInt::from(5)]];
        assert!(solve_mod_pk(&a, &[BigInt::from(2)], 5, 2).is_err());
    }

    #[test]
    fn zpk_respects_candidate_rationals() {
        // x = 1/2 mod 5 admits the residue 3.
        let a = vec![vec![BigInt::from(2)]];
        let b = vec![BigInt::from(1)];
        let sol = solve_mod_pk(&a, &b, 5, 1).unwrap();
        assert_eq!(sol.residues, vec![BigInt::from(3)]);
        assert!(sol.admits(&a, &b, &[crate::exact::rat(1, 2)], 5));
    }
}
