use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cayley::build_central_cayley;
use crate::cli_io::builtin_group;
use crate::group_core::{conjugacy_classes, socle, FiniteGroup};

fn s5() -> FiniteGroup {
    builtin_group("sym5").unwrap()
}

fn class_by_order(g: &FiniteGroup, order: usize, size: usize) -> Vec<usize> {
    let cp = conjugacy_classes(g);
    cp.classes().iter().find(|c| c.len() == size && g.element_order(c[0]) == order).unwrap().clone()
}

fn complement(g: &FiniteGroup, parts: &[Vec<usize>]) -> Vec<usize> {
    (0..g.order()).filter(|x| !parts.iter().any(|p| p.contains(x))).collect()
}

fn transpositions(g: &FiniteGroup) -> ColorCayleyGraph {
    let t = class_by_order(g, 2, 10);
    let rest = complement(g, &[vec![0], t.clone()]);
    build_central_cayley(g, vec![vec![0], t, rest]).unwrap()
}

fn swap_pair(g: &FiniteGroup) -> (ColorCayleyGraph, ColorCayleyGraph) {
    let a = class_by_order(g, 3, 20);
    let b = class_by_order(g, 6, 20);
    let rest = complement(g, &[vec![0], a.clone(), b.clone()]);
    (
        build_central_cayley(g, vec![vec![0], a.clone(), b.clone(), rest.clone()]).unwrap(),
        build_central_cayley(g, vec![vec![0], b, a, rest]).unwrap(),
    )
}

fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn relabel(graph: &ColorCayleyGraph, seed: u64) -> (ColorCayleyGraph, Vec<usize>) {
    let g = graph.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tail: Vec<usize> = (1..g.order()).collect();
    tail.shuffle(&mut rng);
    let perm: Vec<usize> = std::iter::once(0).chain(tail).collect();
    let h = g.relabeled(&perm).unwrap();
    let classes = graph.partition().classes().iter().map(|c| c.iter().map(|&x| perm[x]).collect()).collect();
    (build_central_cayley(&h, classes).unwrap(), perm)
}

#[test]
fn transposition_graph_has_d2_automorphisms() {
    let gr = transpositions(&s5());
    let r = automorphisms(&gr).unwrap();
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert_eq!(r.aut_order, BigUint::from(28_800u32));
    assert_eq!(r.decided_at_step, 5);
    let o = brute_force_oracle(&gr, &gr).unwrap();
    assert_eq!(o.aut_order, r.aut_order);
}

#[test]
fn transposition_graph_pieces() {
    let g = s5();
    let gr = transpositions(&g);
    let section = section_of(&gr).unwrap();
    assert_eq!((section.l.order(), section.u.order(), section.m()), (60, 120, 2));
    let q = QuotientGraph::new(&gr, &section);
    let b = quotient_isos(&q, &q).unwrap();
    assert_eq!(b.len(), 2);
    let phi = schemes_with_phi(&gr, &section, &gr, &section).unwrap();
    let maj = majorant(&g, &g, &section, &section, &phi).unwrap().unwrap();
    // |U-cosets| = 1, so C_id = D_U must contain all of Aut(Γ) = D(2,S5)
    assert_eq!(maj.du.order(), BigUint::from(28_800u32));
    assert!(maj.coset.representative.is_identity());
}

#[test]
fn symmetric_type_wreath_order() {
    let g = s5();
    let soc = socle(&g);
    let odd = complement(&g, &[soc.elements().to_vec()]);
    let gr = build_central_cayley(&g, vec![vec![0], soc.elements()[1..].to_vec(), odd]).unwrap();
    let r = automorphisms(&gr).unwrap();
    let f = factorial(60);
    assert_eq!(r.aut_order, &f * &f * 2u32);
}

#[test]
fn complete_graph_over_a5() {
    let g = builtin_group("alt5").unwrap();
    let gr = build_central_cayley(&g, vec![vec![0], (1..60).collect()]).unwrap();
    assert_eq!(automorphisms(&gr).unwrap().aut_order, factorial(60));
    assert_eq!(brute_force_oracle(&gr, &gr).unwrap().aut_order, factorial(60));
}

#[test]
fn swapped_classes_fail_at_the_algebraic_step() {
    let (a, b) = swap_pair(&s5());
    let r = iso_test(&a, &b).unwrap();
    assert_eq!(r.verdict, Verdict::NonIsomorphic);
    assert_eq!(r.decided_at_step, 2);
    assert_eq!(brute_force_oracle(&a, &b).unwrap().verdict, Verdict::NonIsomorphic);
}

#[test]
fn relabeled_copy_is_isomorphic() {
    let gr = transpositions(&s5());
    let (other, _) = relabel(&gr, 7);
    let r = iso_test(&gr, &other).unwrap();
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert!(gr.maps_colors_onto(&other, r.representative.as_ref().unwrap()));
}
