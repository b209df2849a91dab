use super::{conjugacy_classes, minimal_generating_sequence, FiniteGroup};
use crate::error::{Error, Result};
use crate::perm_core::Permutation;

/// Default bound on the group order for automorphism enumeration.
pub const DEFAULT_AUT_CAP: usize = 1000;

/// One isomorphism `G -> H` plus all automorphisms of `H`; every isomorphism
/// is `iso` followed by one of the automorphisms.
#[derive(Clone, Debug)]
pub struct GroupIsomorphisms {
    pub iso: Vec<usize>,
    pub automorphisms: Vec<Permutation>,
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn new<'a>(g: &'a FiniteGroup, h: &'a FiniteGroup) -> Search<'a> {
        let gens = minimal_generating_sequence(g);
        let cg = conjugacy_classes(g);
        let ch = conjugacy_classes(h);
        let candidates = gens
            .iter()
            .map(|&s| {
                let ord = g.element_order(s);
                let size = cg.classes()[cg.class_of(s)].len();
                (0..h.order())
                    .filter(|&t| h.element_order(t) == ord && ch.classes()[ch.class_of(t)].len() == size)
                    .collect()
            })
            .collect();
        Search { g, h, gens, candidates }
    }

    /// Extends `f(1) = 1`, `f(x s_i) = f(x) t_i` over the subgroup generated by
    /// the first `images.len()` generators; `None` on any inconsistency.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.h.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (i, &t) in images.iter().enumerate() {
                let y = self.g.mul(x, self.gens[i]);
                let fy = self.h.mul(map[x], t);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy;
                    used[fy] = true;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&self, images: &mut Vec<usize>, first_only: bool, out: &mut Vec<Vec<usize>>) {
        let j = images.len();
        if j == self.gens.len() {
            if let Some(map) = self.extend(images) {
                if map.iter().all(|&v| v != usize::MAX) {
                    out.push(map);
                }
            }
            return;
        }
        for &t in &self.candidates[j] {
            images.push(t);
            if j + 1 == self.gens.len() || self.extend(images).is_some() {
                self.run(images, first_only, out);
            }
            images.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
}

fn same_class_profile(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    let profile = |x: &FiniteGroup| {
        let cp = conjugacy_classes(x);
        let mut v: Vec<(usize, usize)> = cp.classes().iter().map(|c| (c.len(), x.element_order(c[0]))).collect();
        v.sort_unstable();
        v
    };
    g.order() == h.order() && profile(g) == profile(h)
}

/// All automorphisms of `g` as permutations of its indices, sorted.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<Permutation>> {
    automorphism_group_with_cap(g, DEFAULT_AUT_CAP)
}

pub fn automorphism_group_with_cap(g: &FiniteGroup, cap: usize) -> Result<Vec<Permutation>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "automorphism search", limit: cap });
    }
    let search = Search::new(g, g);
    let mut out = Vec::new();
    search.run(&mut Vec::new(), false, &mut out);
    let mut auts: Vec<Permutation> = out.into_iter().map(|m| Permutation::from_images(m).expect("bijection")).collect();
    auts.sort();
    Ok(auts)
}

/// `None` iff the groups are not isomorphic.
pub fn group_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupIsomorphisms>> {
    if !same_class_profile(g, h) {
        return Ok(None);
    }
    let search = Search::new(g, h);
    let mut out = Vec::new();
    search.run(&mut Vec::new(), true, &mut out);
    match out.pop() {
        None => Ok(None),
        Some(iso) => Ok(Some(GroupIsomorphisms { iso, automorphisms: automorphism_group(h)? })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::builtin_group;

    fn is_hom(g: &FiniteGroup, h: &FiniteGroup, f: &[usize]) -> bool {
        (0..g.order()).all(|a| (0..g.order()).all(|b| f[g.mul(a, b)] == h.mul(f[a], f[b])))
    }

    #[test]
    fn automorphism_counts() {
        for (name, count) in [("alt5", 120), ("sym5", 120), ("trivial", 1), ("cyclic6", 2)] {
            let g = builtin_group(name).unwrap();
            let auts = automorphism_group(&g).unwrap();
            assert_eq!(auts.len(), count, "{name}");
            for a in &auts {
                assert_eq!(a.apply(0), 0);
                assert!(is_hom(&g, &g, &a.to_vec()));
            }
        }
    }

    #[test]
    fn isomorphism_between_orderings() {
        let a5 = builtin_group("alt5").unwrap();
        let mut relabel: Vec<usize> = (0..60).collect();
        relabel[1..].reverse();
        let b = a5.relabeled(&relabel).unwrap();
        let res = group_isomorphisms(&a5, &b).unwrap().unwrap();
        assert!(is_hom(&a5, &b, &res.iso));
        assert_eq!(res.automorphisms.len(), 120);
    }

    #[test]
    fn non_isomorphic_groups() {
        let a5 = builtin_group("alt5").unwrap();
        let c60 = builtin_group("cyclic60").unwrap();
        assert!(group_isomorphisms(&a5, &c60).unwrap().is_none());
        let s5 = builtin_group("sym5").unwrap();
        let c2a5 = builtin_group("c2xa5").unwrap();
        assert!(group_isomorphisms(&s5, &c2a5).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let g = builtin_group("sym5").unwrap();
        assert!(automorphism_group_with_cap(&g, 100).unwrap_err().is_cap());
    }
}
