//! Sparse symmetric-polynomial algebra in a fixed number of variables,
//! working in the monomial-symmetric basis: orbit-to-orbit products,
//! graded truncated series, exact tail substitutions, and linear matrix
//! substitution for invariance checks.

mod expand;
mod linear;
mod product;
mod series;
mod substitute;

pub use expand::{for_each_orbit_vector, full_expand, orbit_size};
pub use linear::{is_invariant, substitute_linear, ExpandedPoly};
pub use product::m_product;
pub use series::GradedSeries;
pub use substitute::{factorial, log_tail, p_typical_tail, substitute_tail_component, Tail};

use crate::error::Error;
use crate::exact::{parse_rational, rational_string, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Largest variable count used anywhere (6 for the rank-6 group).
pub const MAX_VARS: usize = 6;

/// A partition: non-increasing positive parts, at most the ambient
/// variable count of whatever polynomial it indexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Build from parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p != 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts: the grading of the orbit monomial.
    pub fn grading(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to `nvars`, still non-increasing.
    pub fn padded(&self, nvars: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(nvars, 0);
        v
    }

    pub fn fits(&self, nvars: usize) -> bool {
        self.len() <= nvars
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grading()
            .cmp(&other.grading())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand constructor used throughout the tests and data tables.
pub fn pt(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec())
}

/// A sparse symmetric polynomial: a map from partitions to exact rational
/// coefficients in the monomial-symmetric basis. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant 1 = m_() with empty partition.
    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Partition::empty(), Rational::from_integer(1.into()));
        p
    }

    pub fn monomial(nvars: usize, partition: Partition, coeff: Rational) -> Result<Self, Error> {
        if !partition.fits(nvars) {
            return Err(Error::PartitionTooLong(partition.0, nvars));
        }
        let mut p = Self::zero(nvars);
        p.add_term(partition, coeff);
        Ok(p)
    }

    /// Build from a `(parts, num, den)` table; panics on malformed data
    /// (used only for fixed tables whose shape is known).
    pub fn from_table(nvars: usize, table: &[(&[u32], i64, i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for &(parts, num, den) in table {
            let part = pt(parts);
            assert!(part.fits(nvars), "partition too long in table");
            p.add_term(part, crate::exact::rat(num, den));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, partition: &Partition) -> Rational {
        self.terms.get(partition).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, partition: Partition, coeff: Rational) {
        debug_assert!(partition.fits(self.nvars));
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(partition) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymPoly) {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut r = self.clone();
        for (p, c) in &other.terms {
            r.add_term(p.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, r: &Rational) -> SymPoly {
        if r.is_zero() {
            return SymPoly::zero(self.nvars);
        }
        SymPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect(),
        }
    }

    /// Scaled accumulate: `self += s * other`.
    pub fn add_scaled(&mut self, other: &SymPoly, s: &Rational) {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        if s.is_zero() {
            return;
        }
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * s);
        }
    }

    /// Full product, expanded orbit pair by orbit pair.
    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = SymPoly::zero(self.nvars);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let prod = m_product(pa, pb, self.nvars).expect("partitions fit by invariant");
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SymPoly {
        let mut out = SymPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// True when every term is homogeneous of grading `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|p| p.grading() == d)
    }

    /// Restrict to terms whose partition length is at most `len`.
    pub fn truncate_length(&self, len: usize) -> SymPoly {
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() <= len)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// The component of fixed grading `d`.
    pub fn component(&self, d: u32) -> SymPoly {
        SymPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.grading() == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reduce every coefficient mod a prime, keeping nonzero residues.
    /// Coefficients must be p-integral.
    pub fn reduce_mod_p(&self, p: u64) -> SymPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let pb = BigInt::from(p);
        let mut out = SymPoly::zero(self.nvars);
        for (part, c) in &self.terms {
            assert!(
                crate::exact::valuation(c, p) >= crate::exact::PValuation::Finite(0),
                "coefficient {c} is not {p}-integral"
            );
            // c = num/den with den prime to p: residue = num * den^-1 mod p.
            let num = c.numer().mod_floor(&pb);
            let den = c.denom().modpow(&(&pb - 2), &pb);
            let r = (num * den) % &pb;
            if !r.is_zero() {
                out.add_term(part.clone(), Rational::from_integer(r));
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*m_{}", rational_string(c), p)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymPolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SymPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SymPolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    partition: p.0.clone(),
                    coeff: rational_string(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SymPolyJson::deserialize(d)?;
        let mut p = SymPoly::zero(raw.nvars);
        for t in raw.terms {
            let part = Partition::new(t.partition);
            if !part.fits(raw.nvars) {
                return Err(serde::de::Error::custom(format!(
                    "partition {part} too long for {} variables",
                    raw.nvars
                )));
            }
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            p.add_term(part, c);
        }
        Ok(p)
    }
}
