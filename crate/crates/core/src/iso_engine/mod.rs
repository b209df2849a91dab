//! Isomorphism test for central colored Cayley graphs over almost simple
//! groups, and an independent brute-force oracle.

mod majorant;
mod oracle;
mod quotient;

use num_bigint::BigUint;

use crate::cayley::{cayley_wl, principal_section, ColorCayleyGraph, PrincipalSection};
use crate::coherent::{extend_algebraic_iso_cayley, AlgebraicIso, CayleySeed};
use crate::error::{Error, Result};
use crate::perm_core::{BlockAction, Permutation, PermutationGroup};

pub use majorant::{c0_search, compute_du, majorant, restricted_phi, IsoCoset, Majorant};
pub use oracle::{brute_force_oracle, brute_force_oracle_with_cap, ORACLE_LIMIT};
pub use quotient::{
    coset_action, induced_on_cosets, lift_and_intersect, lift_automorphisms, quotient_isos, QuotientGraph,
    QUOTIENT_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NonIsomorphic,
}

/// Outcome of an isomorphism test. `aut_generators` generate `Aut(Γ)` of the
/// first graph; every isomorphism is `a * representative` for some `a` in it.
#[derive(Clone, Debug)]
pub struct IsoResult {
    pub verdict: Verdict,
    pub representative: Option<Permutation>,
    pub aut_generators: Vec<Permutation>,
    pub aut_order: BigUint,
    /// Step (1..=5) at which the verdict was reached.
    pub decided_at_step: u8,
}

/// Principal section of `Aut(WL(Γ))`.
pub fn section_of(graph: &ColorCayleyGraph) -> Result<PrincipalSection> {
    principal_section(&cayley_wl(graph, &[])?)
}

fn seed_of(graph: &ColorCayleyGraph, section: &PrincipalSection) -> CayleySeed {
    let mut seed = CayleySeed::new(graph.partition().class_of_all().iter().map(|&c| c as u32).collect());
    seed.add_subset(section.u.elements());
    seed.add_subset(section.l.elements());
    seed
}

/// `X = WL(Γ, {e_U, e_L})`, `X'` likewise, and the algebraic isomorphism
/// `phi: X -> X'` sending `e_i` to `e'_i`, `e_U` to `e_U'` and `e_L` to `e_L'`.
pub fn schemes_with_phi(
    graph: &ColorCayleyGraph,
    section: &PrincipalSection,
    graph2: &ColorCayleyGraph,
    section2: &PrincipalSection,
) -> Option<AlgebraicIso> {
    if section.kind != section2.kind || graph.color_count() != graph2.color_count() {
        return None;
    }
    let ids: Vec<usize> = (0..graph.color_count()).collect();
    extend_algebraic_iso_cayley(
        graph.group(),
        &seed_of(graph, section),
        graph2.group(),
        &seed_of(graph2, section2),
        &ids,
        &[0, 1],
    )
}

/// Everything about one graph that the test needs regardless of the partner.
struct Analysis {
    section: PrincipalSection,
    quotient: QuotientGraph,
    action: BlockAction,
    aut_generators: Vec<Permutation>,
    aut_order: BigUint,
}

fn analyse(graph: &ColorCayleyGraph) -> Result<Analysis> {
    let g = graph.group();
    let section = section_of(graph)?;
    let phi = schemes_with_phi(graph, &section, graph, &section)
        .ok_or_else(|| Error::Internal("no algebraic automorphism of the scheme".into()))?;
    let maj = majorant(g, g, &section, &section, &phi)?
        .ok_or_else(|| Error::Internal("empty majorant for a graph and itself".into()))?;
    let quotient = QuotientGraph::new(graph, &section);
    let action = coset_action(&maj.coset.group, &section)?;
    let quotient_auts = quotient_isos(&quotient, &quotient)?;
    let aut_generators = lift_automorphisms(&action, &quotient_auts)?;
    if let Some(p) = aut_generators.iter().find(|p| !graph.maps_colors_onto(graph, p)) {
        return Err(Error::Internal(format!("lifted generator {p:?} is not an automorphism")));
    }
    let aut_order = PermutationGroup::new(g.order(), aut_generators.clone())?.order();
    Ok(Analysis { section, quotient, action, aut_generators, aut_order })
}

/// `Aut(Γ)` via the same pipeline.
pub fn automorphisms(graph: &ColorCayleyGraph) -> Result<IsoResult> {
    iso_test(graph, graph)
}

/// Decides whether some bijection `G -> G'` maps every color class of `Γ` onto
/// the class of `Γ'` with the same index, returning one such bijection.
pub fn iso_test(graph: &ColorCayleyGraph, graph2: &ColorCayleyGraph) -> Result<IsoResult> {
    let a = analyse(graph)?;
    let verdict = |step: u8, representative: Option<Permutation>| IsoResult {
        verdict: if representative.is_some() { Verdict::Isomorphic } else { Verdict::NonIsomorphic },
        representative,
        aut_generators: a.aut_generators.clone(),
        aut_order: a.aut_order.clone(),
        decided_at_step: step,
    };
    let (g, g2) = (graph.group(), graph2.group());
    let sizes = |x: &ColorCayleyGraph| x.partition().classes().iter().map(Vec::len).collect::<Vec<_>>();
    if g.order() != g2.order() || sizes(graph) != sizes(graph2) {
        return Ok(verdict(1, None));
    }
    let section2 = section_of(graph2)?;
    let (s1, s2) = (&a.section, &section2);
    if s1.l.order() != s2.l.order() || s1.u.order() != s2.u.order() {
        return Ok(verdict(1, None));
    }
    let Some(phi) = schemes_with_phi(graph, s1, graph2, s2) else {
        return Ok(verdict(2, None));
    };
    let Some(maj) = majorant(g, g2, s1, s2, &phi)? else {
        return Ok(verdict(3, None));
    };
    let b = quotient_isos(&a.quotient, &QuotientGraph::new(graph2, s2))?;
    if b.is_empty() {
        return Ok(verdict(4, None));
    }
    let rep = lift_and_intersect(&maj.coset, &a.action, s1, s2, &b)?;
    if let Some(p) = &rep {
        if !graph.maps_colors_onto(graph2, p) {
            return Err(Error::Internal(format!("lifted representative {p:?} is not an isomorphism")));
        }
    }
    Ok(verdict(5, rep))
}

#[cfg(test)]
mod tests;
