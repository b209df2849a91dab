//! Central colored Cayley graphs, their Cayley schemes, and the principal
//! section of the automorphism group.

use crate::coherent::{
    cayley_closure, restriction, wl_closure, CayleySeed, CoherentConfiguration, EquivalenceInClosure, Seed,
};
use crate::error::{Error, Result};
use crate::group_core::{is_almost_simple, socle, subgroups_over_socle, ClassPartition, FiniteGroup, Subgroup};
use crate::perm_core::{regular_representations, Permutation};

/// A complete arc-colored graph on a group: `(g, h)` has the color of the
/// class containing `h g^-1`.
#[derive(Clone, Debug)]
pub struct ColorCayleyGraph {
    group: FiniteGroup,
    partition: ClassPartition,
}

/// Checks the classes (identity first, conjugation-closed) and that the
/// group is almost simple.
pub fn build_central_cayley(g: &FiniteGroup, classes: Vec<Vec<usize>>) -> Result<ColorCayleyGraph> {
    let partition = ClassPartition::new(g, classes)?;
    if !is_almost_simple(g) {
        return Err(Error::NotAlmostSimple);
    }
    Ok(ColorCayleyGraph { group: g.clone(), partition })
}

impl ColorCayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    pub fn color_count(&self) -> usize {
        self.partition.len()
    }

    /// Color of the arc `(g, h)`.
    #[inline]
    pub fn color(&self, g: usize, h: usize) -> usize {
        self.partition.class_of(self.group.mul(h, self.group.inv(g)))
    }

    /// Row-major color matrix.
    pub fn color_matrix(&self) -> Vec<u32> {
        let n = self.group.order();
        (0..n * n).map(|i| self.color(i / n, i % n) as u32).collect()
    }

    /// Whether `p` maps every arc color of `self` onto the same color of `other`.
    pub fn maps_colors_onto(&self, other: &ColorCayleyGraph, p: &Permutation) -> bool {
        let n = self.group.order();
        if other.group.order() != n || p.degree() != n || other.color_count() != self.color_count() {
            return false;
        }
        (0..n).all(|a| {
            let pa = p.apply(a);
            (0..n).all(|b| self.color(a, b) == other.color(pa, p.apply(b)))
        })
    }
}

/// The coherent closure of a Cayley graph (plus Cayley-type extra relations).
#[derive(Clone, Debug)]
pub struct CayleyScheme {
    group: FiniteGroup,
    row: Vec<u32>,
    cc: CoherentConfiguration,
    central: bool,
}

impl CayleyScheme {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn configuration(&self) -> &CoherentConfiguration {
        &self.cc
    }

    /// `row[x]` = basis relation containing `(1, x)`; the neighborhood of the
    /// identity in relation `s` is `{x : row[x] = s}`.
    pub fn row(&self) -> &[u32] {
        &self.row
    }

    pub fn is_central(&self) -> bool {
        self.central
    }

    /// Relations of the scheme restricted to a subgroup, indexed like
    /// [`FiniteGroup::subgroup_as_group`].
    pub fn restrict_to_subgroup(&self, h: &Subgroup) -> Result<CoherentConfiguration> {
        restriction(&self.cc, h.elements())
    }
}

/// `WL(Γ, extra)` where each extra relation is `{(g, h) : h g^-1 in Y}` for
/// a given element set `Y`.
pub fn cayley_wl(graph: &ColorCayleyGraph, extra: &[Vec<usize>]) -> Result<CayleyScheme> {
    let g = &graph.group;
    let mut seed = CayleySeed::new(graph.partition.class_of_all().iter().map(|&c| c as u32).collect());
    for y in extra {
        seed.add_subset(y);
    }
    let (row, cc) = cayley_closure(g, &seed)?;
    let reps = regular_representations(g);
    if reps.right.iter().any(|p| !p.preserves_relation_colors(cc.colors(), g.order())) {
        return Err(Error::Internal("scheme is not invariant under right translations".into()));
    }
    let central = reps.left.iter().all(|p| p.preserves_relation_colors(cc.colors(), g.order()));
    if !central && extra.is_empty() {
        return Err(Error::Internal("scheme of a central graph is not central".into()));
    }
    Ok(CayleyScheme { group: g.clone(), row, cc, central })
}

/// `WL(X, {1_Y : Y in cosets})`; coset indicators are not invariant under
/// right translations, so this runs the dense refinement.
pub fn wl_with_coset_indicators(x: &CoherentConfiguration, cosets: &[Vec<usize>]) -> Result<CoherentConfiguration> {
    let d = x.d();
    let mut seed = Seed::from_colors(d, x.colors().to_vec())?;
    for y in cosets {
        let mut mask = vec![false; d * d];
        for &a in y {
            mask[a * d + a] = true;
        }
        seed.add_mask(mask);
    }
    wl_closure(&seed)
}

/// Subgroups `H` over the socle such that the closure with the indicators of
/// the right `H`-cosets is a direct sum of trivial configurations.
pub fn compute_h0(x: &CayleyScheme) -> Result<Vec<Subgroup>> {
    let g = &x.group;
    let mut out = Vec::new();
    for h in subgroups_over_socle(g, false) {
        let cosets = h.right_cosets(g);
        let passes = if cosets.len() == 1 {
            // the only indicator is the diagonal, already a union of colors
            x.cc.rank() <= 2
        } else {
            crate::coherent::is_boxplus_trivial(&wl_with_coset_indicators(&x.cc, &cosets)?, &cosets)
        };
        if passes {
            out.push(h);
        }
    }
    Ok(out)
}

/// `x -> x h` (or `h x`) on `H`, identity elsewhere.
fn one_sided_translation(g: &FiniteGroup, h: &Subgroup, s: usize, left: bool) -> Permutation {
    Permutation::from_raw(
        (0..g.order())
            .map(|x| {
                let y = if !h.contains(x) {
                    x
                } else if left {
                    g.mul(s, x)
                } else {
                    g.mul(x, s)
                };
                y as u32
            })
            .collect(),
    )
}

/// Normal subgroups `H` over the socle such that `H*` acting on `H` and
/// fixing the rest preserves every basis relation.
pub fn compute_h1(x: &CayleyScheme) -> Vec<Subgroup> {
    let g = &x.group;
    subgroups_over_socle(g, true)
        .into_iter()
        .filter(|h| {
            h.generators(g).into_iter().all(|s| {
                [false, true].iter().all(|&left| {
                    one_sided_translation(g, h, s, left).preserves_relation_colors(x.cc.colors(), g.order())
                })
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Symmetric,
    Normal,
}

impl std::fmt::Display for SectionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SectionKind::Symmetric => "symmetric",
            SectionKind::Normal => "normal",
        })
    }
}

/// `L <= U` with their right-coset partitions.
#[derive(Clone, Debug)]
pub struct PrincipalSection {
    pub kind: SectionKind,
    pub l: Subgroup,
    pub u: Subgroup,
    pub l_cosets: Vec<Vec<usize>>,
    pub u_cosets: Vec<Vec<usize>>,
}

impl PrincipalSection {
    /// Number of `L`-cosets.
    pub fn m(&self) -> usize {
        self.l_cosets.len()
    }

    /// `e_L` inside a configuration that contains it.
    pub fn e_l(&self, x: &CoherentConfiguration) -> Result<EquivalenceInClosure> {
        EquivalenceInClosure::from_partition(x, &self.l_cosets)
    }

    pub fn e_u(&self, x: &CoherentConfiguration) -> Result<EquivalenceInClosure> {
        EquivalenceInClosure::from_partition(x, &self.u_cosets)
    }
}

/// Type and principal section of the automorphism group of a central scheme.
pub fn principal_section(x: &CayleyScheme) -> Result<PrincipalSection> {
    let g = &x.group;
    let soc = socle(g);
    let h0 = compute_h0(x)?;
    let (kind, l, u) = if h0.contains(&soc) {
        let top = h0.last().expect("contains the socle").clone();
        if !h0.iter().all(|h| h.is_subgroup_of(&top)) {
            return Err(Error::Internal("H0 has no largest element".into()));
        }
        (SectionKind::Symmetric, top.clone(), top)
    } else {
        let h1 = compute_h1(x);
        let bottom = h1.first().ok_or_else(|| Error::Internal("H1 empty".into()))?.clone();
        if !h1.iter().all(|h| bottom.is_subgroup_of(h)) {
            return Err(Error::Internal("H1 has no smallest element".into()));
        }
        (SectionKind::Normal, soc, bottom)
    };
    let l_cosets = l.right_cosets(g);
    let u_cosets = u.right_cosets(g);
    Ok(PrincipalSection { kind, l, u, l_cosets, u_cosets })
}

#[cfg(test)]
mod tests;
