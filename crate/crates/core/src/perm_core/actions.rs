use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};

/// A partition of `d x d` into colors `0..count`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPartition {
    pub d: usize,
    pub colors: Vec<u32>,
    pub count: usize,
}

impl RelationPartition {
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.d + b]
    }
}

/// Orbits of `K` on ordered pairs, numbered by first occurrence in row-major order.
pub fn orbitals(k: &PermutationGroup) -> RelationPartition {
    let d = k.degree();
    let mut colors = vec![u32::MAX; d * d];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for start in 0..d * d {
        if colors[start] != u32::MAX {
            continue;
        }
        colors[start] = count;
        stack.push(start);
        while let Some(p) = stack.pop() {
            let (a, b) = (p / d, p % d);
            for g in k.generators() {
                let q = g.apply(a) * d + g.apply(b);
                if colors[q] == u32::MAX {
                    colors[q] = count;
                    stack.push(q);
                }
            }
        }
        count += 1;
    }
    RelationPartition { d, colors, count: count as usize }
}

/// The action of a group on a block system together with its kernel.
#[derive(Clone, Debug)]
pub struct BlockAction {
    d: usize,
    block_of: Vec<usize>,
    /// Group on `d + m` points: original points, then one point per block.
    combined: PermutationGroup,
    action: PermutationGroup,
    kernel: PermutationGroup,
}

impl BlockAction {
    /// Image of the group on the blocks.
    pub fn action(&self) -> &PermutationGroup {
        &self.action
    }

    /// Elements acting trivially on the blocks.
    pub fn kernel(&self) -> &PermutationGroup {
        &self.kernel
    }

    pub fn block_count(&self) -> usize {
        self.action.degree()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// The permutation of blocks induced by `g` (assumed to respect the blocks).
    pub fn image(&self, g: &Permutation) -> Permutation {
        block_image(g, &self.block_of, self.block_count(), &self.first_points())
    }

    fn first_points(&self) -> Vec<usize> {
        let mut first = vec![usize::MAX; self.block_count()];
        for x in (0..self.d).rev() {
            first[self.block_of[x]] = x;
        }
        first
    }

    /// Some group element inducing `b` on the blocks, or `None` if `b` is not
    /// in the action image.
    pub fn preimage(&self, b: &Permutation) -> Option<Permutation> {
        let m = self.block_count();
        if b.degree() != m {
            return None;
        }
        let mut rest = b.clone();
        let mut reps: Vec<&Permutation> = Vec::with_capacity(m);
        for j in 0..m {
            let u = self.combined.transversal(j, self.d + rest.apply(j))?;
            let ubar = Permutation::from_raw(u.images()[self.d..].iter().map(|&y| y - self.d as u32).collect());
            rest = rest.then(&ubar.inverse());
            reps.push(u);
        }
        if !rest.is_identity() {
            return None;
        }
        let mut g = Permutation::identity(self.d + m);
        for u in reps.into_iter().rev() {
            g = g.then(u);
        }
        Some(Permutation::from_raw(g.images()[..self.d].to_vec()))
    }
}

fn block_image(g: &Permutation, block_of: &[usize], m: usize, first: &[usize]) -> Permutation {
    Permutation::from_raw((0..m).map(|j| block_of[g.apply(first[j])] as u32).collect())
}

/// Action of `k` on `blocks` (a partition of its domain), with kernel.
pub fn block_action_with_kernel(k: &PermutationGroup, blocks: &[Vec<usize>]) -> Result<BlockAction> {
    let d = k.degree();
    let m = blocks.len();
    let mut block_of = vec![usize::MAX; d];
    for (j, b) in blocks.iter().enumerate() {
        for &x in b {
            if x >= d || block_of[x] != usize::MAX {
                return Err(Error::NotABlockSystem);
            }
            block_of[x] = j;
        }
    }
    if block_of.contains(&usize::MAX) || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::NotABlockSystem);
    }
    let first: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let mut combined_gens = Vec::new();
    let mut action_gens = Vec::new();
    for g in k.generators() {
        let img = block_image(g, &block_of, m, &first);
        for (j, b) in blocks.iter().enumerate() {
            if b.iter().any(|&x| block_of[g.apply(x)] != img.apply(j)) {
                return Err(Error::NotABlockSystem);
            }
        }
        let mut ext = g.images().to_vec();
        ext.extend(img.images().iter().map(|&y| y + d as u32));
        combined_gens.push(Permutation::from_raw(ext));
        action_gens.push(img);
    }
    let combined = PermutationGroup::with_base_prefix(d + m, combined_gens, (d..d + m).collect())?;
    let mut kernel_gens: Vec<Permutation> = combined
        .stabilizer_generators(m)
        .into_iter()
        .map(|g| Permutation::from_raw(g.images()[..d].to_vec()))
        .collect();
    kernel_gens.sort();
    kernel_gens.dedup();
    let action = PermutationGroup::new(m, action_gens)?;
    let kernel = PermutationGroup::new(d, kernel_gens)?;
    Ok(BlockAction { d, block_of, combined, action, kernel })
}
