//! Coherent configurations: color partitions of `d x d` closed under the
//! Weisfeiler-Leman refinement, and the operations on them.

mod refine;
mod structure;

use std::collections::HashMap;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use refine::{cayley_closure, extend_algebraic_iso, extend_algebraic_iso_cayley, wl_closure, CayleySeed, Seed};
pub(crate) use structure::restricted_index;
pub use structure::{
    induced_iso_on_restriction_and_quotient, is_boxplus_trivial, is_wreath_wrt, quotient_cc, restriction, AlgebraicIso,
    EquivalenceInClosure, InducedIsos,
};

use crate::error::{Error, Result};

/// Above this size the routine axiom check samples pairs instead of scanning all.
pub const EXHAUSTIVE_VERIFY_LIMIT: usize = 200;
/// Number of sampled pairs in the routine check for large domains.
pub const VERIFY_SAMPLES: usize = 100_000;

/// How thoroughly to check the coherence axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verify {
    Exhaustive,
    Sampled {
        samples: usize,
        seed: u64,
    },
    /// Exhaustive up to [`EXHAUSTIVE_VERIFY_LIMIT`] points, sampled above.
    Routine,
}

/// A color partition of `d x d` satisfying the coherence axioms, colors
/// numbered by first occurrence in row-major order.
#[derive(Debug)]
pub struct CoherentConfiguration {
    d: usize,
    colors: Vec<u32>,
    rank: usize,
    sizes: Vec<usize>,
    transpose: Vec<u32>,
    reps: Vec<(u32, u32)>,
    fibers: Vec<Vec<usize>>,
    intersections: OnceLock<Vec<Vec<(u32, u32, u32)>>>,
}

impl Clone for CoherentConfiguration {
    fn clone(&self) -> Self {
        CoherentConfiguration::from_canonical(self.d, self.colors.clone(), self.rank)
    }
}

impl PartialEq for CoherentConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.colors == other.colors
    }
}

impl Eq for CoherentConfiguration {}

/// Renumbers colors by first occurrence in row-major order; returns the rank.
pub(crate) fn canonicalize(colors: &mut [u32]) -> usize {
    let mut map: HashMap<u32, u32> = HashMap::new();
    for c in colors.iter_mut() {
        let next = map.len() as u32;
        *c = *map.entry(*c).or_insert(next);
    }
    map.len()
}

impl CoherentConfiguration {
    /// Wraps a partition and checks the axioms ([`Verify::Routine`]).
    pub fn new(d: usize, colors: Vec<u32>) -> Result<Self> {
        let cc = Self::from_partition(d, colors)?;
        cc.verify_axioms(Verify::Routine).map_err(Error::Internal)?;
        Ok(cc)
    }

    /// Wraps a partition after canonical renumbering, without checking the axioms.
    pub fn from_partition(d: usize, mut colors: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyDomain);
        }
        if colors.len() != d * d {
            return Err(Error::InvalidPartition(format!("expected {} cells, got {}", d * d, colors.len())));
        }
        let rank = canonicalize(&mut colors);
        Ok(Self::from_canonical(d, colors, rank))
    }

    pub(crate) fn from_canonical(d: usize, colors: Vec<u32>, rank: usize) -> Self {
        let mut sizes = vec![0usize; rank];
        let mut reps = vec![(u32::MAX, u32::MAX); rank];
        for (i, &c) in colors.iter().enumerate() {
            sizes[c as usize] += 1;
            if reps[c as usize].0 == u32::MAX {
                reps[c as usize] = ((i / d) as u32, (i % d) as u32);
            }
        }
        let transpose = reps.iter().map(|&(a, b)| colors[b as usize * d + a as usize]).collect();
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        let mut fiber_of_color: HashMap<u32, usize> = HashMap::new();
        for a in 0..d {
            let c = colors[a * d + a];
            let next = fibers.len();
            let f = *fiber_of_color.entry(c).or_insert(next);
            if f == fibers.len() {
                fibers.push(Vec::new());
            }
            fibers[f].push(a);
        }
        CoherentConfiguration { d, colors, rank, sizes, transpose, reps, fibers, intersections: OnceLock::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.d + b]
    }

    /// Row-major color matrix.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Number of pairs of color `s`.
    pub fn color_size(&self, s: usize) -> usize {
        self.sizes[s]
    }

    /// The color of the transposed relation.
    pub fn transpose_of(&self, s: usize) -> usize {
        self.transpose[s] as usize
    }

    /// First pair of color `s` in row-major order.
    pub fn representative(&self, s: usize) -> (usize, usize) {
        let (a, b) = self.reps[s];
        (a as usize, b as usize)
    }

    /// Fibers in order of their smallest point.
    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn is_homogeneous(&self) -> bool {
        self.fibers.len() == 1
    }

    /// Whether `s` is a diagonal color.
    pub fn is_reflexive_color(&self, s: usize) -> bool {
        let (a, b) = self.reps[s];
        a == b
    }

    /// Pairs of color `s`.
    pub fn pairs_of(&self, s: usize) -> Vec<(usize, usize)> {
        let d = self.d;
        (0..d * d).filter(|&i| self.colors[i] as usize == s).map(|i| (i / d, i % d)).collect()
    }

    fn intersection_table(&self) -> &Vec<Vec<(u32, u32, u32)>> {
        self.intersections.get_or_init(|| {
            (0..self.rank)
                .into_par_iter()
                .map(|t| {
                    let (a, b) = self.representative(t);
                    let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
                    for g in 0..self.d {
                        *counts.entry((self.color(a, g), self.color(g, b))).or_insert(0) += 1;
                    }
                    let mut v: Vec<(u32, u32, u32)> = counts.into_iter().map(|((r, s), c)| (r, s, c)).collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        })
    }

    /// `c_{rs}^t`: for `(a,b)` in `t`, the number of `g` with `(a,g)` in `r` and `(g,b)` in `s`.
    pub fn intersection_number(&self, r: usize, s: usize, t: usize) -> u32 {
        let row = &self.intersection_table()[t];
        match row.binary_search_by(|&(x, y, _)| (x, y).cmp(&(r as u32, s as u32))) {
            Ok(i) => row[i].2,
            Err(_) => 0,
        }
    }

    /// Nonzero intersection numbers `(r, s, c_{rs}^t)` for a fixed `t`, sorted.
    pub fn intersection_numbers_for(&self, t: usize) -> &[(u32, u32, u32)] {
        &self.intersection_table()[t]
    }

    fn pair_profile(&self, a: usize, b: usize, out: &mut Vec<u64>) {
        let rank = self.rank as u64;
        out.clear();
        out.extend((0..self.d).map(|g| self.color(a, g) as u64 * rank + self.color(g, b) as u64));
        out.sort_unstable();
    }

    /// Checks (C1) diagonal colors stay on the diagonal, (C2) transposes of
    /// colors are colors, and (C3) constant intersection numbers.
    pub fn verify_axioms(&self, mode: Verify) -> std::result::Result<(), String> {
        let d = self.d;
        for a in 0..d {
            for b in 0..d {
                let c = self.color(a, b) as usize;
                if (a == b) != self.is_reflexive_color(c) {
                    return Err(format!("color {c} mixes diagonal and off-diagonal pairs"));
                }
                if self.color(b, a) as usize != self.transpose_of(c) {
                    return Err(format!("transpose of color {c} is not a color"));
                }
            }
        }
        let mode = match mode {
            Verify::Routine if d <= EXHAUSTIVE_VERIFY_LIMIT => Verify::Exhaustive,
            Verify::Routine => Verify::Sampled { samples: VERIFY_SAMPLES, seed: 0xc0de },
            m => m,
        };
        let profiles: Vec<Vec<u64>> = (0..self.rank)
            .map(|t| {
                let (a, b) = self.representative(t);
                let mut v = Vec::new();
                self.pair_profile(a, b, &mut v);
                v
            })
            .collect();
        let check_row = |a: usize, cols: &mut dyn Iterator<Item = usize>| -> std::result::Result<(), String> {
            let mut buf = Vec::with_capacity(d);
            for b in cols {
                self.pair_profile(a, b, &mut buf);
                let t = self.color(a, b) as usize;
                if buf != profiles[t] {
                    return Err(format!("intersection numbers of color {t} differ at ({a},{b})"));
                }
            }
            Ok(())
        };
        match mode {
            Verify::Exhaustive => (0..d).into_par_iter().try_for_each(|a| check_row(a, &mut (0..d))),
            Verify::Sampled { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let pairs: Vec<(usize, usize)> =
                    (0..samples.min(d * d)).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect();
                pairs.par_iter().try_for_each(|&(a, b)| check_row(a, &mut std::iter::once(b)))
            }
            Verify::Routine => unreachable!(),
        }
    }

    /// Whether every color of `self` lies inside a color of `other`.
    pub fn refines(&self, other: &CoherentConfiguration) -> bool {
        let mut map = vec![u32::MAX; self.rank];
        self.colors.iter().zip(&other.colors).all(|(&a, &b)| {
            let m = &mut map[a as usize];
            if *m == u32::MAX {
                *m = b;
            }
            *m == b
        })
    }
}

#[cfg(test)]
mod tests;
