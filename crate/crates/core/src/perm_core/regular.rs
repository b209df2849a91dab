use std::collections::{BTreeMap, HashMap, HashSet};

use super::{Permutation, PermutationGroup};
use crate::error::Result;
use crate::group_core::{automorphism_group, minimal_generating_sequence, FiniteGroup};

/// Largest group whose elements are streamed during regular-subgroup search.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// Left and right regular representations of a group on its own indices.
#[derive(Clone, Debug)]
pub struct RegularRepresentations {
    /// `x -> g x`
    pub left: Vec<Permutation>,
    /// `x -> x g`
    pub right: Vec<Permutation>,
    /// Union of `left` and `right`.
    pub star: Vec<Permutation>,
    /// `x -> x^-1`
    pub sigma: Permutation,
}

pub fn right_translation(g: &FiniteGroup, s: usize) -> Permutation {
    Permutation::from_raw((0..g.order()).map(|x| g.mul(x, s) as u32).collect())
}

pub fn left_translation(g: &FiniteGroup, s: usize) -> Permutation {
    Permutation::from_raw((0..g.order()).map(|x| g.mul(s, x) as u32).collect())
}

pub fn regular_representations(g: &FiniteGroup) -> RegularRepresentations {
    let gens = minimal_generating_sequence(g);
    let right: Vec<Permutation> = gens.iter().map(|&s| right_translation(g, s)).collect();
    let left: Vec<Permutation> = gens.iter().map(|&s| left_translation(g, s)).collect();
    let star = left.iter().chain(&right).cloned().collect();
    let sigma = Permutation::from_raw((0..g.order()).map(|x| g.inv(x) as u32).collect());
    RegularRepresentations { left, right, star, sigma }
}

/// `D(2,G)`: right translations, automorphisms and inversion.
pub fn d2_group(g: &FiniteGroup) -> Result<PermutationGroup> {
    let n = g.order();
    let reps = regular_representations(g);
    let mut gens = reps.right.clone();
    let mut current = PermutationGroup::new(n, gens.clone())?;
    for a in automorphism_group(g)? {
        if !current.contains(&a) {
            gens.push(a);
            current = PermutationGroup::new(n, gens.clone())?;
        }
    }
    if !current.contains(&reps.sigma) {
        gens.push(reps.sigma);
    }
    PermutationGroup::new(n, gens)
}

/// A regular permutation group with its elements indexed by the image of point 0.
#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    pub generators: Vec<Permutation>,
    /// `elements[p]` is the unique element sending 0 to `p`.
    pub elements: Vec<Permutation>,
}

impl RegularSubgroup {
    /// Closure of `gens`, if it is a regular group.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Option<Self> {
        let mut elements: Vec<Option<Permutation>> = vec![None; degree];
        elements[0] = Some(Permutation::identity(degree));
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let p = queue[k];
            k += 1;
            for a in &gens {
                let q = a.apply(p);
                if elements[q].is_none() {
                    elements[q] = Some(elements[p].as_ref().unwrap().then(a));
                    queue.push(q);
                }
            }
        }
        let elements: Vec<Permutation> = elements.into_iter().collect::<Option<_>>()?;
        // closed under the generators iff it is a group acting regularly
        for v in &elements {
            for a in &gens {
                let w = v.then(a);
                if elements[w.apply(0)] != w {
                    return None;
                }
            }
        }
        Some(RegularSubgroup { generators: gens, elements })
    }

    /// The abstract group, element `p` being `elements[p]`.
    pub fn as_group(&self) -> FiniteGroup {
        let n = self.elements.len();
        let mut table = vec![0u32; n * n];
        for p in 0..n {
            for q in 0..n {
                table[p * n + q] = self.elements[q].images()[p];
            }
        }
        FiniteGroup::from_flat(n, table, None).expect("regular group table")
    }

    pub fn group(&self) -> PermutationGroup {
        PermutationGroup::new(self.elements.len(), self.generators.clone()).expect("same degree")
    }

    fn key(&self) -> Vec<u32> {
        self.elements.iter().flat_map(|e| e.images().iter().copied()).collect()
    }

    fn conjugate_by(&self, k: &Permutation) -> RegularSubgroup {
        let gens = self.generators.iter().map(|a| a.conjugate_by(k)).collect();
        RegularSubgroup::from_generators(self.elements.len(), gens).expect("conjugate of regular is regular")
    }
}

struct RegSearch<'a> {
    h: &'a FiniteGroup,
    hgens: Vec<usize>,
    cands: Vec<Vec<Permutation>>,
}

impl RegSearch<'_> {
    /// Point map `f(1) = 0`, `f(u h_j) = f(u)^{a_j}` over the subgroup
    /// generated by the first `a.len()` generators of `H`.
    fn consistent(&self, a: &[&Permutation]) -> bool {
        let n = self.h.order();
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        f[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let u = queue[k];
            k += 1;
            for (j, aj) in a.iter().enumerate() {
                let v = self.h.mul(u, self.hgens[j]);
                let fv = aj.apply(f[u]);
                if f[v] == usize::MAX {
                    if used[fv] {
                        return false;
                    }
                    f[v] = fv;
                    used[fv] = true;
                    queue.push(v);
                } else if f[v] != fv {
                    return false;
                }
            }
        }
        true
    }

    fn run<'b>(&'b self, first: &[&'b Permutation], found: &mut BTreeMap<Vec<u32>, RegularSubgroup>) {
        let mut stack: Vec<&Permutation> = Vec::new();
        for a1 in first {
            stack.push(a1);
            if self.consistent(&stack) {
                self.extend(&mut stack, found);
            }
            stack.pop();
        }
    }

    fn extend<'b>(&'b self, stack: &mut Vec<&'b Permutation>, found: &mut BTreeMap<Vec<u32>, RegularSubgroup>) {
        let j = stack.len();
        if j == self.hgens.len() {
            let gens: Vec<Permutation> = stack.iter().map(|&p| p.clone()).collect();
            if let Some(v) = RegularSubgroup::from_generators(self.h.order(), gens) {
                found.entry(v.key()).or_insert(v);
            }
            return;
        }
        for a in &self.cands[j] {
            stack.push(a);
            if self.consistent(stack) {
                self.extend(stack, found);
            }
            stack.pop();
        }
    }
}

fn setup<'a>(k: &PermutationGroup, h: &'a FiniteGroup, cap: usize) -> Result<RegSearch<'a>> {
    let hgens = minimal_generating_sequence(h);
    let orders: Vec<u128> = hgens.iter().map(|&s| h.element_order(s) as u128).collect();
    let mut cands: Vec<Vec<Permutation>> = vec![Vec::new(); hgens.len()];
    k.for_each_element(cap, |g| {
        if g.is_fixed_point_free() {
            let o = g.order();
            for (j, &oj) in orders.iter().enumerate() {
                if o == oj {
                    cands[j].push(g.clone());
                }
            }
        }
    })?;
    for c in &mut cands {
        c.sort();
    }
    Ok(RegSearch { h, hgens, cands })
}

/// Representatives of the `K`-conjugacy classes among `elems` (closed under
/// conjugation by `K`), smallest member of each class.
fn class_representatives<'a>(k: &PermutationGroup, elems: &'a [Permutation]) -> Vec<&'a Permutation> {
    let index: HashMap<&Permutation, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut reps = Vec::new();
    for i in 0..elems.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        reps.push(&elems[i]);
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            for g in k.generators() {
                let c = elems[j].conjugate_by(g);
                let ci = index[&c];
                if !seen[ci] {
                    seen[ci] = true;
                    stack.push(ci);
                }
            }
        }
    }
    reps
}

/// Regular subgroups of `K` isomorphic to `H`, at least one from each
/// `K`-conjugacy class, sorted by element set.
pub fn regular_subgroups_up_to_conjugacy(
    k: &PermutationGroup,
    h: &FiniteGroup,
    cap: usize,
) -> Result<Vec<RegularSubgroup>> {
    if k.degree() != h.order() {
        // a regular group has order equal to its degree
        return Ok(Vec::new());
    }
    if h.order() == 1 {
        return Ok(vec![RegularSubgroup { generators: Vec::new(), elements: vec![Permutation::identity(1)] }]);
    }
    let search = setup(k, h, cap)?;
    let first = class_representatives(k, &search.cands[0]);
    let mut found = BTreeMap::new();
    search.run(&first, &mut found);
    Ok(found.into_values().collect())
}

/// All regular subgroups of `K` isomorphic to `H`, sorted by element set.
pub fn regular_subgroups(k: &PermutationGroup, h: &FiniteGroup, cap: usize) -> Result<Vec<RegularSubgroup>> {
    let reps = regular_subgroups_up_to_conjugacy(k, h, cap)?;
    let mut found: BTreeMap<Vec<u32>, RegularSubgroup> = BTreeMap::new();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut stack = Vec::new();
    for v in reps {
        if seen.insert(v.key()) {
            stack.push(v);
        }
    }
    while let Some(v) = stack.pop() {
        for g in k.generators() {
            let w = v.conjugate_by(g);
            if seen.insert(w.key()) {
                stack.push(w);
            }
        }
        found.insert(v.key(), v);
    }
    Ok(found.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::builtin_group;
    use num_bigint::BigUint;

    #[test]
    fn regular_representation_facts() {
        let a5 = builtin_group("alt5").unwrap();
        let r = regular_representations(&a5);
        assert_eq!(PermutationGroup::new(60, r.star.clone()).unwrap().order(), BigUint::from(3600u32));
        assert_eq!(PermutationGroup::new(60, r.right.clone()).unwrap().order(), BigUint::from(60u32));
        let s5 = builtin_group("sym5").unwrap();
        let r = regular_representations(&s5);
        assert!(r.sigma.then(&r.sigma).is_identity());
        let left = PermutationGroup::new(120, r.left.clone()).unwrap();
        for g in &r.right {
            assert!(left.contains(&g.conjugate_by(&r.sigma)));
        }
        let t = builtin_group("trivial").unwrap();
        assert!(regular_representations(&t).sigma.is_identity());
    }

    #[test]
    fn d2_orders() {
        let a5 = builtin_group("alt5").unwrap();
        assert_eq!(d2_group(&a5).unwrap().order(), BigUint::from(14_400u32));
        let t = builtin_group("trivial").unwrap();
        assert_eq!(d2_group(&t).unwrap().order(), BigUint::from(1u32));
    }

    #[test]
    fn regular_subgroups_of_d2_a5() {
        let a5 = builtin_group("alt5").unwrap();
        let k = d2_group(&a5).unwrap();
        let subs = regular_subgroups(&k, &a5, DEFAULT_ENUMERATION_CAP).unwrap();
        let r = regular_representations(&a5);
        let right = PermutationGroup::new(60, r.right).unwrap();
        let left = PermutationGroup::new(60, r.left).unwrap();
        let has = |g: &PermutationGroup| subs.iter().any(|v| v.generators.iter().all(|a| g.contains(a)));
        assert!(has(&right));
        assert!(has(&left));
        for v in &subs {
            assert_eq!(v.elements.len(), 60);
            assert!(v.elements.iter().skip(1).all(|e| e.is_fixed_point_free()));
            assert!(v.group().is_transitive());
        }
    }

    #[test]
    fn degree_mismatch_and_trivial() {
        let s5 = builtin_group("sym5").unwrap();
        let a5 = builtin_group("alt5").unwrap();
        let right = PermutationGroup::new(120, regular_representations(&s5).right).unwrap();
        assert!(regular_subgroups(&right, &a5, DEFAULT_ENUMERATION_CAP).unwrap().is_empty());
        let t = builtin_group("trivial").unwrap();
        assert_eq!(regular_subgroups(&PermutationGroup::trivial(1), &t, 10).unwrap().len(), 1);
    }
}
