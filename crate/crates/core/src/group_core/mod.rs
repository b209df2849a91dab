//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..n`; index 0 is always the identity.

mod morphisms;
mod structure;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm_core::Permutation;

pub use morphisms::{automorphism_group, group_isomorphisms, GroupIsomorphisms};
pub use structure::{
    conjugacy_classes, generated_subgroup, is_almost_simple, is_simple, minimal_generating_sequence, normal_closure,
    quotient_with_epimorphism, socle, subgroups_over_socle, ClassPartition, Epimorphism,
};

/// Default bound on the size of a closure built from permutation generators.
pub const DEFAULT_GROUP_CAP: usize = 10_000;
/// Groups up to this order get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking all group axioms.
    pub fn from_table(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range")));
                }
                table.push(x as u32);
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(Error::InvalidGroup("names length differs from order".into()));
            }
        }
        Self::from_flat(n, table, names)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>, names: Option<Vec<String>>) -> Result<Self> {
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
                if c == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        let g = FiniteGroup { n, table, inverse, names };
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    let ab = g.mul(a, b);
                    for c in 0..n {
                        if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                            return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..1_000_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        Ok(g)
    }

    /// Closure of permutation generators on `degree` points, elements listed
    /// breadth-first (right multiplication by generators in the given order).
    pub fn from_generators(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!("degree {} != {degree}", g.degree())));
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, u32> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut k = 0;
        while k < elements.len() {
            for g in generators {
                let y = elements[k].then(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { limit: cap });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            k += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].then(&elements[b])];
            }
        }
        let names = elements.iter().map(|p| format!("{p:?}")).collect();
        // closure of permutations is a group; skip the axiom scan
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                }
            }
        }
        Ok(FiniteGroup { n, table, inverse, names: Some(names) })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g^-1 x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// The same group with element `x` renamed `relabel[x]`; `relabel[0]` must be 0.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<Self> {
        let n = self.n;
        if relabel.len() != n || relabel[0] != 0 {
            return Err(Error::InvalidGroup("relabeling must fix the identity".into()));
        }
        Permutation::from_images(relabel.to_vec())?;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[relabel[a] * n + relabel[b]] = relabel[self.mul(a, b)] as u32;
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (x, name) in names.iter().enumerate() {
                out[relabel[x]] = name.clone();
            }
            out
        });
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            inverse[relabel[x]] = relabel[self.inv(x)] as u32;
        }
        Ok(FiniteGroup { n, table, inverse, names })
    }

    /// The subgroup as a group in its own right, element `i` being `h.elements()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let m = h.order();
        let mut local = vec![u32::MAX; self.n];
        for (i, &x) in h.elements().iter().enumerate() {
            local[x] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in h.elements().iter().enumerate() {
            for (j, &b) in h.elements().iter().enumerate() {
                table[i * m + j] = local[self.mul(a, b)];
            }
        }
        let inverse = h.elements().iter().map(|&a| local[self.inv(a)]).collect();
        let names = self.names.as_ref().map(|names| h.elements().iter().map(|&x| names[x].clone()).collect());
        FiniteGroup { n: m, table, inverse, names }
    }
}

/// A subgroup of a fixed parent group, stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure under the parent's multiplication and inversion.
    pub fn new(g: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let mut mask = vec![false; g.order()];
        for &x in &elements {
            if x >= g.order() {
                return Err(Error::InvalidGroup(format!("element {x} out of range")));
            }
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::InvalidGroup("subgroup misses the identity".into()));
        }
        for &a in &elements {
            if !mask[g.inv(a)] || elements.iter().any(|&b| !mask[g.mul(a, b)]) {
                return Err(Error::InvalidGroup("set is not closed".into()));
            }
        }
        Ok(Subgroup { elements })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<usize>) -> Self {
        Subgroup { elements }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        let gens = minimal_generating_sequence(g);
        self.elements.iter().all(|&x| gens.iter().all(|&s| self.contains(g.conjugate(x, s))))
    }

    /// Right cosets `H x`, ordered by smallest element; the subgroup itself comes first.
    pub fn right_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order()];
        let mut cosets = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.mul(h, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// A generating set of this subgroup (greedy, in the parent's indices).
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let local = g.subgroup_as_group(self);
        minimal_generating_sequence(&local).into_iter().map(|i| self.elements[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::builtin_group;

    #[test]
    fn closure_orders() {
        let a5 = builtin_group("alt5").unwrap();
        assert_eq!(a5.order(), 60);
        let s5 = builtin_group("sym5").unwrap();
        assert_eq!(s5.order(), 120);
        let t = FiniteGroup::from_generators(1, &[], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn closure_respects_cap() {
        let gens = [
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
        ];
        let err = FiniteGroup::from_generators(5, &gens, 100).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { limit: 100 }));
    }

    #[test]
    fn invariants_hold_on_fixture() {
        let g = builtin_group("sym5").unwrap();
        for x in 0..g.order() {
            assert_eq!(g.mul(0, x), x);
            assert_eq!(g.mul(x, 0), x);
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        // re-validate through the checked constructor
        FiniteGroup::from_table(g.table_rows(), None).unwrap();
    }

    #[test]
    fn table_validation_errors() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5, None).is_err());
    }

    #[test]
    fn relabeling_preserves_structure() {
        let g = builtin_group("alt5").unwrap();
        let relabel: Vec<usize> = std::iter::once(0).chain((1..60).rev()).collect();
        let h = g.relabeled(&relabel).unwrap();
        for a in 0..60 {
            for b in 0..60 {
                assert_eq!(h.mul(relabel[a], relabel[b]), relabel[g.mul(a, b)]);
            }
        }
    }
}
