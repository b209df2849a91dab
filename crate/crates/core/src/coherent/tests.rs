use super::*;
use crate::cli_io::builtin_group;
use crate::group_core::{conjugacy_classes, FiniteGroup};
use crate::perm_core::{orbitals, regular_representations, PermutationGroup};

fn class_colors(g: &FiniteGroup, class_of: &[usize]) -> Vec<u32> {
    let n = g.order();
    let mut c = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            c[a * n + b] = class_of[g.mul(b, g.inv(a))] as u32;
        }
    }
    c
}

fn class_with(g: &FiniteGroup, order: usize) -> Vec<usize> {
    let cp = conjugacy_classes(g);
    cp.classes().iter().find(|c| g.element_order(c[0]) == order).unwrap().clone()
}

#[test]
fn trivial_seed_gives_rank_two() {
    let cc = wl_closure(&Seed::from_colors(6, vec![0; 36]).unwrap()).unwrap();
    assert_eq!(cc.rank(), 2);
    assert!(cc.is_homogeneous());
    assert_eq!(wl_closure(&Seed::from_colors(1, vec![0]).unwrap()).unwrap().rank(), 1);
    assert!(matches!(Seed::from_colors(0, vec![]), Err(Error::EmptyDomain)));
}

#[test]
fn pentagon_has_rank_three() {
    let arcs: Vec<(usize, usize)> = (0..5).flat_map(|i| [(i, (i + 1) % 5), ((i + 1) % 5, i)]).collect();
    let cc = wl_closure(&Seed::from_relations(5, &[arcs]).unwrap()).unwrap();
    assert_eq!(cc.rank(), 3);
}

#[test]
fn class_scheme_of_s5_matches_orbitals() {
    let g = builtin_group("sym5").unwrap();
    let cp = conjugacy_classes(&g);
    let cc = wl_closure(&Seed::from_colors(120, class_colors(&g, cp.class_of_all())).unwrap()).unwrap();
    assert_eq!(cc.rank(), 7);
    let star = PermutationGroup::new(120, regular_representations(&g).star).unwrap();
    let orb = orbitals(&star);
    assert_eq!(orb.count, 7);
    let from_orbitals = CoherentConfiguration::from_partition(120, orb.colors.clone()).unwrap();
    assert_eq!(cc, from_orbitals);
    // idempotence
    let again = wl_closure(&Seed::from_colors(120, cc.colors().to_vec()).unwrap()).unwrap();
    assert_eq!(again, cc);
}

#[test]
fn cayley_engine_agrees_with_dense_engine() {
    let g = builtin_group("sym5").unwrap();
    let cp = conjugacy_classes(&g);
    // transpositions: the class of size 10
    let transp = cp.classes().iter().find(|c| c.len() == 10).unwrap();
    let mut base = vec![2u32; 120];
    base[0] = 0;
    for &x in transp {
        base[x] = 1;
    }
    let (row, cay) = cayley_closure(&g, &CayleySeed::new(base.clone())).unwrap();
    assert_eq!(row.len(), 120);
    let dense = wl_closure(
        &Seed::from_colors(120, class_colors(&g, &base.iter().map(|&c| c as usize).collect::<Vec<_>>())).unwrap(),
    )
    .unwrap();
    assert_eq!(cay, dense);
    assert_eq!(cay.rank(), 7);
    cay.verify_axioms(Verify::Exhaustive).unwrap();
}

#[test]
fn restriction_and_quotient_edge_cases() {
    let g = builtin_group("alt5").unwrap();
    let cp = conjugacy_classes(&g);
    let x = wl_closure(&Seed::from_colors(60, class_colors(&g, cp.class_of_all())).unwrap()).unwrap();
    assert_eq!(restriction(&x, &[7]).unwrap().rank(), 1);
    let t = wl_closure(&Seed::from_colors(8, vec![0; 64]).unwrap()).unwrap();
    assert_eq!(restriction(&t, &[1, 4, 6]).unwrap().rank(), 2);

    let full = EquivalenceInClosure::new(&x, &(0..x.rank()).collect::<Vec<_>>()).unwrap();
    assert_eq!(quotient_cc(&x, &full).unwrap().rank(), 1);
    assert!(is_wreath_wrt(&x, &full).unwrap());
    let diag = EquivalenceInClosure::new(&x, &[0]).unwrap();
    assert_eq!(quotient_cc(&x, &diag).unwrap(), x);
    assert!(EquivalenceInClosure::new(&x, &[1]).is_err());
}

#[test]
fn boxplus_trivial_examples() {
    let t = wl_closure(&Seed::from_colors(5, vec![0; 25]).unwrap()).unwrap();
    assert!(is_boxplus_trivial(&t, &[(0..5).collect()]));
    assert!(!is_boxplus_trivial(&t, &[vec![0, 1], vec![2, 3, 4]]));
    // two blocks: diagonal, inside-block, across-block
    let mut c = vec![0u32; 16];
    for a in 0..4 {
        for b in 0..4 {
            c[a * 4 + b] = if a == b {
                0
            } else if a / 2 == b / 2 {
                1
            } else {
                2
            };
        }
    }
    let x = CoherentConfiguration::new(4, c).unwrap();
    assert!(!is_boxplus_trivial(&x, &[vec![0, 1], vec![2, 3]]));
    let e = EquivalenceInClosure::from_partition(&x, &[vec![0, 1], vec![2, 3]]).unwrap();
    assert!(is_wreath_wrt(&x, &e).unwrap());
}

#[test]
fn algebraic_iso_identity_and_relabeling() {
    let g = builtin_group("alt5").unwrap();
    let cp = conjugacy_classes(&g);
    let colors = class_colors(&g, cp.class_of_all());
    let s = Seed::from_colors(60, colors.clone()).unwrap();
    let ids: Vec<usize> = (0..cp.len()).collect();
    let phi = extend_algebraic_iso(&s, &s, &ids, &[]).unwrap();
    assert_eq!(phi.color_map(), (0..phi.source().rank()).collect::<Vec<_>>().as_slice());

    // relabel points by a fixed shuffle
    let perm: Vec<usize> = (0..60).map(|i| (i * 7 + 3) % 60).collect();
    let mut moved = vec![0u32; 3600];
    for a in 0..60 {
        for b in 0..60 {
            moved[perm[a] * 60 + perm[b]] = colors[a * 60 + b];
        }
    }
    let t = Seed::from_colors(60, moved).unwrap();
    let phi = extend_algebraic_iso(&s, &t, &ids, &[]).unwrap();
    for a in 0..60 {
        for b in 0..60 {
            assert_eq!(phi.map(phi.source().color(a, b) as usize), phi.target().color(perm[a], perm[b]) as usize);
        }
    }
}

#[test]
fn swapped_classes_have_no_algebraic_iso() {
    let g = builtin_group("sym5").unwrap();
    let three = class_with(&g, 3);
    let six = class_with(&g, 6);
    let mut base = vec![3u32; 120];
    base[0] = 0;
    let mut swapped = base.clone();
    for &x in &three {
        base[x] = 1;
        swapped[x] = 2;
    }
    for &x in &six {
        base[x] = 2;
        swapped[x] = 1;
    }
    let ids = [0, 1, 2, 3];
    let (s, t) = (CayleySeed::new(base.clone()), CayleySeed::new(swapped.clone()));
    assert!(extend_algebraic_iso_cayley(&g, &s, &g, &t, &ids, &[]).is_none());
    assert!(extend_algebraic_iso_cayley(&g, &s, &g, &s, &ids, &[]).is_some());
    let to_dense = |b: &[u32]| {
        Seed::from_colors(120, class_colors(&g, &b.iter().map(|&c| c as usize).collect::<Vec<_>>())).unwrap()
    };
    assert!(extend_algebraic_iso(&to_dense(&base), &to_dense(&swapped), &ids, &[]).is_none());
}

#[test]
fn induced_isos_of_identity() {
    let g = builtin_group("sym5").unwrap();
    let cp = conjugacy_classes(&g);
    let x = wl_closure(&Seed::from_colors(120, class_colors(&g, cp.class_of_all())).unwrap()).unwrap();
    let a5: Vec<usize> = (0..120).filter(|&v| crate::group_core::socle(&g).contains(v)).collect();
    let odd: Vec<usize> = (0..120).filter(|v| !a5.contains(v)).collect();
    let e = EquivalenceInClosure::from_partition(&x, &[a5, odd]).unwrap();
    let phi = AlgebraicIso::identity(&x);
    let ind = induced_iso_on_restriction_and_quotient(&phi, &e).unwrap();
    assert_eq!(ind.pairing, vec![0, 1]);
    assert_eq!(ind.quotient.source().d(), 2);
    for r in &ind.restricted {
        assert_eq!(r.color_map(), (0..r.source().rank()).collect::<Vec<_>>().as_slice());
    }
}
