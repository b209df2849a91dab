//! The quotient graph on `L`-cosets and the lift of its isomorphisms.

use crate::cayley::{ColorCayleyGraph, PrincipalSection};
use crate::error::{Error, Result};
use crate::perm_core::{block_action_with_kernel, BlockAction, Permutation, PermutationGroup};

use super::majorant::IsoCoset;

/// Largest quotient handled by exhaustive enumeration.
pub const QUOTIENT_LIMIT: usize = 12;

/// Complete graph on the `L`-cosets; arc `(i, j)` is labelled by the set of
/// colors that occur between coset `i` and coset `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    m: usize,
    labels: Vec<Vec<u32>>,
}

impl QuotientGraph {
    pub fn new(graph: &ColorCayleyGraph, section: &PrincipalSection) -> Self {
        let g = graph.group();
        let m = section.m();
        let mut block = vec![0usize; g.order()];
        for (i, c) in section.l_cosets.iter().enumerate() {
            for &x in c {
                block[x] = i;
            }
        }
        let k = graph.color_count();
        let mut seen = vec![false; m * m * k];
        for a in 0..g.order() {
            for b in 0..g.order() {
                seen[(block[a] * m + block[b]) * k + graph.color(a, b)] = true;
            }
        }
        let labels = (0..m * m).map(|ij| (0..k).filter(|&c| seen[ij * k + c]).map(|c| c as u32).collect()).collect();
        QuotientGraph { m, labels }
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn label(&self, i: usize, j: usize) -> &[u32] {
        &self.labels[i * self.m + j]
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All label-preserving bijections, in lexicographic order of image arrays.
pub fn quotient_isos(a: &QuotientGraph, b: &QuotientGraph) -> Result<Vec<Permutation>> {
    if a.m != b.m {
        return Ok(Vec::new());
    }
    if a.m > QUOTIENT_LIMIT {
        return Err(Error::QuotientTooLarge(a.m));
    }
    let m = a.m;
    let mut p: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    loop {
        if (0..m).all(|i| (0..m).all(|j| a.label(i, j) == b.label(p[i], p[j]))) {
            out.push(Permutation::from_images(p.clone())?);
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    Ok(out)
}

/// Image of a bijection `G -> G'` on cosets, given the two coset lists.
pub fn induced_on_cosets(f: &Permutation, from: &[Vec<usize>], to: &[Vec<usize>]) -> Option<Permutation> {
    let n = f.degree();
    let mut block = vec![usize::MAX; n];
    for (j, c) in to.iter().enumerate() {
        for &x in c {
            block[x] = j;
        }
    }
    let img: Vec<usize> = from
        .iter()
        .map(|c| {
            let j = block[f.apply(c[0])];
            c.iter().all(|&x| block[f.apply(x)] == j).then_some(j)
        })
        .collect::<Option<_>>()?;
    Permutation::from_images(img).ok()
}

/// Block action of `C_id` on the `L`-cosets.
pub fn coset_action(c_id: &PermutationGroup, section: &PrincipalSection) -> Result<BlockAction> {
    block_action_with_kernel(c_id, &section.l_cosets)
}

/// One element of `{c f : c in C_id, (c f)^bar in B}`, if the set is nonempty.
pub fn lift_and_intersect(
    coset: &IsoCoset,
    action: &BlockAction,
    section: &PrincipalSection,
    section2: &PrincipalSection,
    quotient_isos: &[Permutation],
) -> Result<Option<Permutation>> {
    let f = &coset.representative;
    let fbar = induced_on_cosets(f, &section.l_cosets, &section2.l_cosets)
        .ok_or_else(|| Error::Internal("majorant representative does not respect L-cosets".into()))?;
    let fbar_inv = fbar.inverse();
    for b in quotient_isos {
        let t = b.then(&fbar_inv);
        if let Some(c) = action.preimage(&t) {
            return Ok(Some(c.then(f)));
        }
    }
    Ok(None)
}

/// Generators of `{c in C_id : c^bar in A}` for a group `A` of quotient automorphisms.
pub fn lift_automorphisms(action: &BlockAction, quotient_auts: &[Permutation]) -> Result<Vec<Permutation>> {
    let m = action.block_count();
    let image = action.action();
    let mut gens: Vec<Permutation> = action.kernel().generators().to_vec();
    let mut top: Vec<Permutation> = Vec::new();
    let mut top_group = PermutationGroup::trivial(m);
    for a in quotient_auts {
        if image.contains(a) && !top_group.contains(a) {
            top.push(a.clone());
            top_group = PermutationGroup::new(m, top.clone())?;
            gens.push(action.preimage(a).ok_or_else(|| Error::Internal("preimage missing".into()))?);
        }
    }
    Ok(gens)
}
