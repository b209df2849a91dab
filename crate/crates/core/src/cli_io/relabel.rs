//! Random isomorphic copies of a graph, for cross-instance tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cayley::{build_central_cayley, ColorCayleyGraph};
use crate::error::Result;
use crate::group_core::automorphism_group;
use crate::perm_core::{d2_group, right_translation, Permutation};

/// A copy of `graph` on a renamed group table, with the renaming `G -> G'`.
///
/// The renaming is a random element of `D(2,G)` moved to fix the identity,
/// then a random group automorphism, then a random renaming of the non-identity
/// elements.
pub fn random_relabeling(graph: &ColorCayleyGraph, seed: u64) -> Result<(ColorCayleyGraph, Permutation)> {
    let g = graph.group();
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = d2_group(g)?.random_element(&mut rng);
    let d = d.then(&right_translation(g, g.inv(d.apply(0))));
    let auts = automorphism_group(g)?;
    let a = &auts[rng.gen_range(0..auts.len())];
    let mut tail: Vec<usize> = (1..n).collect();
    tail.shuffle(&mut rng);
    let names = Permutation::from_images(std::iter::once(0).chain(tail).collect())?;
    let r = d.then(a).then(&names);
    let h = g.relabeled(&r.to_vec())?;
    let classes = graph.partition().classes().iter().map(|c| {
        let mut c: Vec<usize> = c.iter().map(|&x| r.apply(x)).collect();
        c.sort_unstable();
        c
    });
    Ok((build_central_cayley(&h, classes.collect())?, r))
}
