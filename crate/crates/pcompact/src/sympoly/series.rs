//! Graded truncated series: a symmetric polynomial per grading, with all
//! arithmetic discarding gradings above a fixed cap.

use super::substitute::{substitute_tail_component, Tail};
use super::SymPoly;
use crate::error::Error;
use crate::exact::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A symmetric power series known only through grading `cap`: terms above
/// the cap are absent and semantically unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    nvars: usize,
    cap: u32,
    components: BTreeMap<u32, SymPoly>,
}

impl GradedSeries {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        GradedSeries {
            nvars,
            cap,
            components: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(nvars: usize, cap: u32) -> Self {
        let mut s = Self::zero(nvars, cap);
        s.components.insert(0, SymPoly::one(nvars));
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Gradings with a nonzero component, ascending.
    pub fn gradings(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn component(&self, grading: u32) -> SymPoly {
        self.components
            .get(&grading)
            .cloned()
            .unwrap_or_else(|| SymPoly::zero(self.nvars))
    }

    pub fn add_component(&mut self, grading: u32, poly: &SymPoly, scale: &Rational) {
        if grading > self.cap || poly.is_zero() || scale.is_zero() {
            return;
        }
        debug_assert!(poly.is_homogeneous(grading));
        let entry = self
            .components
            .entry(grading)
            .or_insert_with(|| SymPoly::zero(self.nvars));
        entry.add_scaled(poly, scale);
        if entry.is_zero() {
            self.components.remove(&grading);
        }
    }

    /// Substitute `x -> x + tail(x)` into every variable of a homogeneous
    /// polynomial and collect components through the cap.
    pub fn from_tail_substitution(f: &SymPoly, tail: &Tail, cap: u32) -> Result<Self, Error> {
        let mut s = Self::zero(f.nvars(), cap);
        // Components only exist at gradings reachable by whole numbers of
        // tail steps, hence at multiples of their gcd above the base.
        let step = tail.step_gcd();
        for (e, c) in f.terms() {
            let mut g = e.grading();
            while g <= cap {
                let comp = substitute_tail_component(e, tail, g, f.nvars())?;
                s.add_component(g, &comp, c);
                match step {
                    Some(st) => g += st,
                    None => break,
                }
            }
        }
        Ok(s)
    }

    pub fn add_scaled(&mut self, other: &GradedSeries, scale: &Rational) {
        assert_eq!(self.nvars, other.nvars);
        for (&g, poly) in &other.components {
            self.add_component(g, poly, scale);
        }
    }

    /// Truncated product: output grading g collects all i + j = g.
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        assert_eq!(self.nvars, other.nvars);
        let cap = self.cap.min(other.cap);
        let mut out = GradedSeries::zero(self.nvars, cap);
        for (&ga, pa) in &self.components {
            for (&gb, pb) in &other.components {
                let g = ga + gb;
                if g > cap {
                    continue;
                }
                out.add_component(g, &pa.mul(pb), &Rational::from_integer(1.into()));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> GradedSeries {
        let mut out = GradedSeries::one(self.nvars, self.cap);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::sympoly::{p_typical_tail, pt};

    #[test]
    fn tilde_f4_components() {
        // f4 = m_(4) - 12 m_(1,1,1,1) pushed through x + x^5/5, which is
        // the full 5-typical series below grading 25.
        let f4 = SymPoly::from_table(4, &[(&[4], 1, 1), (&[1, 1, 1, 1], -12, 1)]);
        let tail = p_typical_tail(5, 20);
        let s = GradedSeries::from_tail_substitution(&f4, &tail, 20).unwrap();

        assert_eq!(s.component(4), f4);

        let g8 = s.component(8);
        assert_eq!(g8.coeff(&pt(&[8])), rat(4, 5));
        assert_eq!(g8.coeff(&pt(&[5, 1, 1, 1])), rat(-12, 5));
        assert_eq!(g8.num_terms(), 2);

        let g12 = s.component(12);
        assert_eq!(g12.coeff(&pt(&[12])), rat(6, 25));
        assert_eq!(g12.coeff(&pt(&[5, 5, 1, 1])), rat(-12, 25));
        assert_eq!(g12.num_terms(), 2);
    }

    #[test]
    fn series_product_grading_8() {
        let f4 = SymPoly::from_table(4, &[(&[4], 1, 1), (&[1, 1, 1, 1], -12, 1)]);
        let tail = p_typical_tail(5, 20);
        let s = GradedSeries::from_tail_substitution(&f4, &tail, 20).unwrap();
        let sq = s.mul(&s);

        let g8 = sq.component(8);
        assert_eq!(g8.coeff(&pt(&[8])), rat_int(1));
        assert_eq!(g8.coeff(&pt(&[5, 1, 1, 1])), rat_int(-24));
        assert_eq!(g8.coeff(&pt(&[4, 4])), rat_int(2));
        assert_eq!(g8.coeff(&pt(&[2, 2, 2, 2])), rat_int(144));
        assert_eq!(g8.num_terms(), 4);
    }
}
