use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

use super::Permutation;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the stabilizer of the earlier base points,
/// its strong generators and the transversal of its orbit through `base`.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    /// `checked[k]` = number of generators whose Schreier generator at orbit
    /// position `k` is known to sift.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    fn add_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        let gi = self.gens.len() - 1;
        // apply the new generator to the old orbit, then close under all generators
        let old_len = self.orbit.len();
        for k in 0..old_len {
            self.visit(k, gi);
        }
        let mut k = old_len;
        while k < self.orbit.len() {
            for g in 0..self.gens.len() {
                self.visit(k, g);
            }
            k += 1;
        }
    }

    fn visit(&mut self, k: usize, gi: usize) {
        let x = self.orbit[k];
        let y = self.gens[gi].apply(x);
        if self.slot[y] == NONE {
            let rep = self.reps[k].then(&self.gens[gi]);
            self.slot[y] = self.orbit.len() as u32;
            self.orbit.push(y);
            self.reps_inv.push(rep.inverse());
            self.reps.push(rep);
            self.checked.push(0);
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    levels: Vec<Level>,
}

enum Sift {
    Member,
    Residue(Permutation, usize),
}

impl StabChain {
    fn build(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                let p = g.first_moved_point().expect("nonidentity");
                base.push(p);
            }
        }
        let mut chain = StabChain { levels: base.iter().map(|&b| Level::new(b, degree)).collect() };
        for g in &gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].add_generator(g.clone());
                if g.apply(chain.levels[i].base) != chain.levels[i].base {
                    break;
                }
            }
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.next_residue(i as usize) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let p = h.first_moved_point().expect("nonidentity residue");
                        chain.levels.push(Level::new(p, degree));
                    }
                    for l in (i as usize + 1)..=j {
                        chain.levels[l].add_generator(h.clone());
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// First Schreier generator at level `i` that does not sift through the
    /// levels below it.
    fn next_residue(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            while self.levels[i].checked[k] < self.levels[i].gens.len() {
                let lvl = &self.levels[i];
                let s = &lvl.gens[lvl.checked[k]];
                let y = s.apply(lvl.orbit[k]);
                let yk = lvl.slot[y] as usize;
                let schreier = lvl.reps[k].then(s).then(&lvl.reps_inv[yk]);
                self.levels[i].checked[k] += 1;
                if schreier.is_identity() {
                    continue;
                }
                if let Sift::Residue(h, j) = self.sift_from(schreier, i + 1) {
                    // re-check this pair once the residue is absorbed
                    self.levels[i].checked[k] -= 1;
                    return Some((h, j));
                }
            }
            k += 1;
        }
        None
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> Sift {
        for (j, lvl) in self.levels.iter().enumerate().skip(start) {
            let y = g.apply(lvl.base);
            let k = lvl.slot[y];
            if k == NONE {
                return Sift::Residue(g, j);
            }
            if k != 0 {
                g = g.then(&lvl.reps_inv[k as usize]);
            }
        }
        if g.is_identity() {
            Sift::Member
        } else {
            Sift::Residue(g, self.levels.len())
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// A permutation group given by generators, with a lazily built stabilizer chain.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<usize>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain,
        }
    }
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, generators, Vec::new())
    }

    /// Chain whose base starts with `prefix` (in order); the remaining base
    /// points are smallest moved points.
    pub fn with_base_prefix(degree: usize, generators: Vec<Permutation>, prefix: Vec<usize>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!("degree {} != {degree}", g.degree())));
        }
        if prefix.iter().any(|&p| p >= degree) {
            return Err(Error::InvalidPermutation("base point out of range".into()));
        }
        Ok(PermutationGroup { degree, generators, base_prefix: prefix, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), base_prefix: Vec::new(), chain: OnceLock::new() }
    }

    /// Symmetric group on `{0..d-1}` from a transposition and a full cycle.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).expect("valid"));
        }
        if degree >= 3 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("valid"));
        }
        PermutationGroup::new(degree, gens).expect("consistent degrees")
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::build(self.degree, &self.generators, &self.base_prefix))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && matches!(self.chain().sift_from(g.clone(), 0), Sift::Member)
    }

    /// Strong generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        let chain = self.chain();
        match chain.levels.get(k) {
            Some(l) => l.gens.clone(),
            None => Vec::new(),
        }
    }

    /// Orbit lengths along the base.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Transversal element `u` at `level` with `base[level]^u = point`, if
    /// `point` lies in that basic orbit.
    pub(crate) fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        let lvl = self.chain().levels.get(level)?;
        match lvl.slot[point] {
            NONE => None,
            s => Some(&lvl.reps[s as usize]),
        }
    }

    /// Uniformly random element: one transversal element per level, deepest first.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> Permutation {
        let mut p = Permutation::identity(self.degree);
        for lvl in self.chain().levels.iter().rev() {
            p = p.then(&lvl.reps[rng.gen_range(0..lvl.reps.len())]);
        }
        p
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        if self.degree == 0 {
            return Vec::new();
        }
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.generators {
                let y = g.apply(orbit[k]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit
    }

    /// Calls `f` on every element; fails if the order exceeds `cap`.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, cap: usize, mut f: F) -> Result<()> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded { what: "group elements", limit: cap });
        }
        let chain = self.chain();
        fn walk<F: FnMut(&Permutation)>(levels: &[Level], depth: usize, acc: &Permutation, f: &mut F) {
            if depth == levels.len() {
                f(acc);
                return;
            }
            // elements are products u_{k-1} ... u_0 (deepest level applied first)
            let lvl = &levels[levels.len() - 1 - depth];
            for rep in &lvl.reps {
                walk(levels, depth + 1, &acc.then(rep), f);
            }
        }
        walk(&chain.levels, 0, &Permutation::identity(self.degree), &mut f);
        Ok(())
    }

    /// Drops generators that are already in the group generated by the earlier ones.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut current = PermutationGroup::trivial(self.degree);
        for g in &self.generators {
            if !current.contains(g) {
                kept.push(g.clone());
                current = PermutationGroup::new(self.degree, kept.clone()).expect("same degree");
            }
        }
        kept
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym5() -> PermutationGroup {
        PermutationGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sym5_order_and_membership() {
        let g = sym5();
        assert_eq!(g.order(), BigUint::from(120u32));
        assert!(g.contains(&Permutation::from_cycles(5, &[&[2, 4]]).unwrap()));
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = PermutationGroup::new(7, vec![]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(!g.contains(&Permutation::from_cycles(7, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn alternating_membership() {
        let a5 = PermutationGroup::new(
            5,
            vec![
                Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(!a5.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
        let mut count = 0;
        a5.for_each_element(1000, |_| count += 1).unwrap();
        assert_eq!(count, 60);
    }

    #[test]
    fn large_symmetric_direct_product() {
        // Sym(30) x Sym(30) wreath C2 on 60 points
        let d = 60;
        let mut gens = vec![];
        for off in [0, 30] {
            gens.push(Permutation::from_cycles(d, &[&[off, off + 1]]).unwrap());
            let c: Vec<usize> = (off..off + 30).collect();
            gens.push(Permutation::from_cycles(d, &[&c]).unwrap());
        }
        let swap: Vec<usize> = (0..d).map(|x| (x + 30) % 60).collect();
        gens.push(Permutation::from_images(swap).unwrap());
        let g = PermutationGroup::new(d, gens).unwrap();
        let f30: BigUint = (1..=30u32).map(BigUint::from).product();
        assert_eq!(g.order(), &f30 * &f30 * 2u32);
    }
}
