use super::*;
use crate::cli_io::builtin_group;
use crate::coherent::is_wreath_wrt;
use crate::group_core::conjugacy_classes;

fn s5() -> FiniteGroup {
    builtin_group("sym5").unwrap()
}

/// `{1 | transpositions | rest}`
fn transpositions(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let cp = conjugacy_classes(g);
    let t = cp.classes().iter().find(|c| c.len() == 10).unwrap().clone();
    let rest = (1..g.order()).filter(|x| !t.contains(x)).collect();
    vec![vec![0], t, rest]
}

/// `{1 | L \ 1 | G \ L}` with `L` the socle.
fn socle_split(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let soc = socle(g);
    vec![vec![0], soc.elements()[1..].to_vec(), (0..g.order()).filter(|&x| !soc.contains(x)).collect()]
}

fn scheme(g: &FiniteGroup, classes: Vec<Vec<usize>>) -> CayleyScheme {
    cayley_wl(&build_central_cayley(g, classes).unwrap(), &[]).unwrap()
}

#[test]
fn building_graphs() {
    let g = s5();
    let gr = build_central_cayley(&g, transpositions(&g)).unwrap();
    assert_eq!(gr.color_count(), 3);
    let full = build_central_cayley(&g, conjugacy_classes(&g).classes().to_vec()).unwrap();
    assert_eq!(full.color_count(), 7);
    let bad = vec![vec![0], vec![1], (2..120).collect()];
    assert!(matches!(build_central_cayley(&g, bad), Err(Error::NotCentral(_))));
    let h = builtin_group("c2xa5").unwrap();
    let classes = conjugacy_classes(&h).classes().to_vec();
    assert!(matches!(build_central_cayley(&h, classes), Err(Error::NotAlmostSimple)));
}

#[test]
fn schemes_of_s5_graphs() {
    let g = s5();
    let x = scheme(&g, transpositions(&g));
    assert_eq!(x.configuration().rank(), 7);
    assert!(x.is_central());
    let full = scheme(&g, conjugacy_classes(&g).classes().to_vec());
    assert_eq!(full.configuration(), x.configuration());
}

#[test]
fn coset_indicators_on_complete_graph() {
    let g = s5();
    let x = scheme(&g, vec![vec![0], (1..120).collect()]);
    let cosets = socle(&g).right_cosets(&g);
    let y = wl_with_coset_indicators(x.configuration(), &cosets).unwrap();
    assert!(crate::coherent::is_boxplus_trivial(&y, &cosets));
}

#[test]
fn h0_examples() {
    let g = s5();
    let orders = |v: Vec<Subgroup>| v.iter().map(|h| h.order()).collect::<Vec<_>>();
    assert_eq!(orders(compute_h0(&scheme(&g, socle_split(&g))).unwrap()), vec![60]);
    assert!(compute_h0(&scheme(&g, transpositions(&g))).unwrap().is_empty());
    assert_eq!(orders(compute_h0(&scheme(&g, vec![vec![0], (1..120).collect()])).unwrap()), vec![60, 120]);
}

#[test]
fn h1_examples() {
    let g = s5();
    let orders = |v: Vec<Subgroup>| v.iter().map(|h| h.order()).collect::<Vec<_>>();
    assert_eq!(orders(compute_h1(&scheme(&g, transpositions(&g)))), vec![120]);
    assert_eq!(orders(compute_h1(&scheme(&g, socle_split(&g)))), vec![60, 120]);
    let a5 = builtin_group("alt5").unwrap();
    assert_eq!(orders(compute_h1(&scheme(&a5, conjugacy_classes(&a5).classes().to_vec()))), vec![60]);
}

#[test]
fn principal_sections() {
    let g = s5();
    let p = principal_section(&scheme(&g, transpositions(&g))).unwrap();
    assert_eq!((p.kind, p.l.order(), p.u.order(), p.m()), (SectionKind::Normal, 60, 120, 2));

    let x = scheme(&g, socle_split(&g));
    let p = principal_section(&x).unwrap();
    assert_eq!((p.kind, p.l.order(), p.u.order(), p.m()), (SectionKind::Symmetric, 60, 60, 2));
    assert!(is_wreath_wrt(x.configuration(), &p.e_l(x.configuration()).unwrap()).unwrap());

    let a5 = builtin_group("alt5").unwrap();
    let p = principal_section(&scheme(&a5, conjugacy_classes(&a5).classes().to_vec())).unwrap();
    assert_eq!((p.l.order(), p.u.order()), (60, 60));
}

#[test]
fn wreath_structure_of_socle_graph() {
    let g = s5();
    let x = scheme(
        &g,
        vec![vec![0], socle(&g).elements()[1..].to_vec(), (0..120).filter(|&v| !socle(&g).contains(v)).collect()],
    );
    let e = EquivalenceInClosure::from_partition(x.configuration(), &socle(&g).right_cosets(&g)).unwrap();
    assert!(is_wreath_wrt(x.configuration(), &e).unwrap());
    let y = scheme(&g, transpositions(&g));
    let ext =
        cayley_wl(&build_central_cayley(&g, transpositions(&g)).unwrap(), &[socle(&g).elements().to_vec()]).unwrap();
    let e = EquivalenceInClosure::from_partition(ext.configuration(), &socle(&g).right_cosets(&g)).unwrap();
    assert!(!is_wreath_wrt(ext.configuration(), &e).unwrap());
    assert_eq!(ext.configuration(), y.configuration());
}
