use std::collections::BTreeSet;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A partition of the group into conjugation-closed classes, class 0 = {identity}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    /// Validates that `classes` partition the group, that class 0 is `{0}` and
    /// that every class is closed under conjugation.
    pub fn new(g: &FiniteGroup, classes: Vec<Vec<usize>>) -> Result<Self> {
        let cp = Self::new_unchecked_normality(g.order(), classes)?;
        let gens = minimal_generating_sequence(g);
        for (i, class) in cp.classes.iter().enumerate() {
            for &x in class {
                for &s in &gens {
                    if cp.class_of[g.conjugate(x, s)] != i {
                        return Err(Error::NotCentral(format!("class {i} is not closed under conjugation")));
                    }
                }
            }
        }
        Ok(cp)
    }

    /// Checks only the partition shape (cover, disjointness, class 0 = {0}).
    pub fn new_unchecked_normality(n: usize, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        for (i, class) in classes.iter_mut().enumerate() {
            class.sort_unstable();
            if class.is_empty() {
                return Err(Error::InvalidPartition(format!("class {i} is empty")));
            }
            for &x in class.iter() {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {x} repeated or out of range")));
                }
                class_of[x] = i;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("classes do not cover the group".into()));
        }
        if classes.first().map(|c| c.as_slice()) != Some(&[0][..]) {
            return Err(Error::InvalidPartition("class 0 must be exactly {identity}".into()));
        }
        Ok(ClassPartition { classes, class_of })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class_of_all(&self) -> &[usize] {
        &self.class_of
    }
}

/// Conjugacy classes ordered by (size, smallest member).
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassPartition {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|h| g.conjugate(x, h)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes.sort_by(|a, b| (a.len(), a[0]).cmp(&(b.len(), b[0])));
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i;
        }
    }
    ClassPartition { classes, class_of }
}

/// Subgroup generated by `gens`.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut elems = vec![0];
    let mut k = 0;
    while k < elems.len() {
        for &s in gens {
            let y = g.mul(elems[k], s);
            if !mask[y] {
                mask[y] = true;
                elems.push(y);
            }
        }
        k += 1;
    }
    elems.sort_unstable();
    Subgroup::from_sorted_unchecked(elems)
}

/// Smallest normal subgroup containing `xs`.
pub fn normal_closure(g: &FiniteGroup, xs: &[usize]) -> Subgroup {
    let mut gens = BTreeSet::new();
    for &x in xs {
        for h in 0..g.order() {
            gens.insert(g.conjugate(x, h));
        }
    }
    let gens: Vec<usize> = gens.into_iter().collect();
    generated_subgroup(g, &gens)
}

/// Greedy generating sequence: each step adds the element that enlarges the
/// generated subgroup the most (smallest index on ties).
pub fn minimal_generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut current = Subgroup::trivial();
    while current.order() < n {
        let mut best: Option<(usize, usize)> = None;
        for x in 0..n {
            if current.contains(x) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = generated_subgroup(g, &trial).order();
            if best.is_none_or(|(s, _)| size > s) {
                best = Some((size, x));
                if size == n {
                    break;
                }
            }
        }
        let (_, x) = best.expect("proper subgroup has an outside element");
        gens.push(x);
        current = generated_subgroup(g, &gens);
    }
    gens
}

/// Distinct normal closures of the nonidentity conjugacy classes.
fn class_normal_closures(g: &FiniteGroup) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let mut out: Vec<Subgroup> = Vec::new();
    for class in classes.classes().iter().skip(1) {
        let n = normal_closure(g, &class[..1]);
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// Product of all minimal normal subgroups.
pub fn socle(g: &FiniteGroup) -> Subgroup {
    let closures = class_normal_closures(g);
    let minimal: Vec<&Subgroup> =
        closures.iter().filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n))).collect();
    let gens: Vec<usize> = minimal.iter().flat_map(|m| m.elements().iter().copied()).collect();
    generated_subgroup(g, &gens)
}

/// No proper nontrivial normal subgroup.
pub fn is_simple(g: &FiniteGroup) -> bool {
    g.order() > 1 && class_normal_closures(g).iter().all(|n| n.order() == g.order())
}

/// The socle is nonabelian and simple.
pub fn is_almost_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    let s = g.subgroup_as_group(&socle(g));
    !s.is_abelian() && is_simple(&s)
}

/// The canonical map onto `G/N` together with the right cosets of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Epimorphism {
    map: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl Epimorphism {
    pub fn map(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// Preimages of each target element (cosets of the kernel).
    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    pub fn kernel(&self) -> &[usize] {
        &self.fibers[0]
    }
}

/// Quotient on coset representatives (smallest index per coset).
pub fn quotient_with_epimorphism(g: &FiniteGroup, normal: &Subgroup) -> Result<(FiniteGroup, Epimorphism)> {
    if !normal.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let fibers = normal.right_cosets(g);
    let m = fibers.len();
    let mut map = vec![0; g.order()];
    for (i, f) in fibers.iter().enumerate() {
        for &x in f {
            map[x] = i;
        }
    }
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = map[g.mul(fibers[a][0], fibers[b][0])] as u32;
        }
    }
    let q = FiniteGroup::from_flat(m, table, None)?;
    Ok((q, Epimorphism { map, fibers }))
}

/// All subgroups of a small group, as joins of cyclic subgroups.
fn all_subgroups(q: &FiniteGroup) -> Vec<Subgroup> {
    let mut cyclic: Vec<Subgroup> = Vec::new();
    for x in 0..q.order() {
        let c = generated_subgroup(q, &[x]);
        if !cyclic.contains(&c) {
            cyclic.push(c);
        }
    }
    let mut found: BTreeSet<Subgroup> = BTreeSet::new();
    found.insert(Subgroup::trivial());
    let mut work = vec![Subgroup::trivial()];
    while let Some(h) = work.pop() {
        for c in &cyclic {
            if c.is_subgroup_of(&h) {
                continue;
            }
            let gens: Vec<usize> = h.elements().iter().chain(c.elements()).copied().collect();
            let j = generated_subgroup(q, &gens);
            if found.insert(j.clone()) {
                work.push(j);
            }
        }
    }
    found.into_iter().collect()
}

/// Subgroups `H` with `soc(G) <= H <= G`, ordered by (order, elements).
pub fn subgroups_over_socle(g: &FiniteGroup, require_normal: bool) -> Vec<Subgroup> {
    let s = socle(g);
    let (q, pi) = quotient_with_epimorphism(g, &s).expect("socle is normal");
    let mut out: Vec<Subgroup> = all_subgroups(&q)
        .into_iter()
        .map(|qh| {
            let mut elems: Vec<usize> = qh.elements().iter().flat_map(|&c| pi.fibers()[c].iter().copied()).collect();
            elems.sort_unstable();
            Subgroup::from_sorted_unchecked(elems)
        })
        .filter(|h| !require_normal || h.is_normal_in(g))
        .collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::builtin_group;

    fn sizes(cp: &ClassPartition) -> Vec<usize> {
        let mut s: Vec<usize> = cp.classes().iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn conjugacy_class_sizes() {
        let s5 = builtin_group("sym5").unwrap();
        assert_eq!(sizes(&conjugacy_classes(&s5)), vec![1, 10, 15, 20, 20, 24, 30]);
        let a5 = builtin_group("alt5").unwrap();
        assert_eq!(sizes(&conjugacy_classes(&a5)), vec![1, 12, 12, 15, 20]);
        let t = builtin_group("trivial").unwrap();
        assert_eq!(conjugacy_classes(&t).len(), 1);
    }

    #[test]
    fn class_zero_is_identity_and_inverse_classes_match() {
        let g = builtin_group("psl27").unwrap();
        let cp = conjugacy_classes(&g);
        assert_eq!(cp.classes()[0], vec![0]);
        for x in 0..g.order() {
            let a = cp.class_of(x);
            let b = cp.class_of(g.inv(x));
            assert_eq!(cp.classes()[a].len(), cp.classes()[b].len());
        }
    }

    #[test]
    fn socles() {
        let s5 = builtin_group("sym5").unwrap();
        let soc = socle(&s5);
        assert_eq!(soc.order(), 60);
        // the socle of S5 is the set of squares' closure = even permutations
        let evens = generated_subgroup(&s5, &(0..120).map(|x| s5.mul(x, x)).collect::<Vec<_>>());
        assert_eq!(soc, evens);
        assert_eq!(socle(&builtin_group("alt5").unwrap()).order(), 60);
        assert_eq!(socle(&builtin_group("pgl27").unwrap()).order(), 168);
    }

    #[test]
    fn almost_simplicity() {
        assert!(is_almost_simple(&builtin_group("sym5").unwrap()));
        assert!(is_almost_simple(&builtin_group("alt5").unwrap()));
        assert!(!is_almost_simple(&builtin_group("c2xa5").unwrap()));
        assert!(!is_almost_simple(&builtin_group("cyclic6").unwrap()));
        assert!(!is_almost_simple(&builtin_group("trivial").unwrap()));
    }

    #[test]
    fn subgroups_over_socle_of_fixtures() {
        let s5 = builtin_group("sym5").unwrap();
        for normal in [false, true] {
            let hs = subgroups_over_socle(&s5, normal);
            assert_eq!(hs.iter().map(|h| h.order()).collect::<Vec<_>>(), vec![60, 120]);
        }
        let a5 = builtin_group("alt5").unwrap();
        assert_eq!(subgroups_over_socle(&a5, false).len(), 1);
        assert_eq!(subgroups_over_socle(&a5, true).len(), 1);
    }

    #[test]
    fn quotients() {
        let s5 = builtin_group("sym5").unwrap();
        let (q, pi) = quotient_with_epimorphism(&s5, &socle(&s5)).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.fibers().iter().map(|f| f.len()).collect::<Vec<_>>(), vec![60, 60]);
        for a in 0..120 {
            for b in 0..120 {
                assert_eq!(pi.map(s5.mul(a, b)), q.mul(pi.map(a), pi.map(b)));
            }
        }
        let (q, _) = quotient_with_epimorphism(&s5, &Subgroup::whole(&s5)).unwrap();
        assert_eq!(q.order(), 1);
        let (q, pi) = quotient_with_epimorphism(&s5, &Subgroup::trivial()).unwrap();
        assert_eq!(q.order(), 120);
        assert!((0..120).all(|x| pi.map(x) == x));
        let h = generated_subgroup(&s5, &[1]);
        if !h.is_normal_in(&s5) {
            assert!(matches!(quotient_with_epimorphism(&s5, &h), Err(Error::NotNormal)));
        }
    }

    #[test]
    fn normal_subgroups_contain_socle() {
        for name in ["alt5", "sym5", "psl27", "pgl27"] {
            let g = builtin_group(name).unwrap();
            let soc = socle(&g);
            assert!(soc.is_normal_in(&g));
            for class in conjugacy_classes(&g).classes().iter().skip(1) {
                assert!(soc.is_subgroup_of(&normal_closure(&g, &class[..1])), "{name}");
            }
        }
    }
}
