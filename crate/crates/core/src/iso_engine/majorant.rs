//! The majorant `C_phi = C_id f` containing every isomorphism that induces a
//! given algebraic isomorphism.

use num_bigint::BigUint;

use crate::cayley::{PrincipalSection, SectionKind};
use crate::coherent::{restricted_index, restriction, AlgebraicIso, CoherentConfiguration};
use crate::error::{Error, Result};
use crate::group_core::{automorphism_group, group_isomorphisms, FiniteGroup};
use crate::perm_core::{
    regular_representations, regular_subgroups_up_to_conjugacy, Permutation, PermutationGroup, RegularSubgroup,
    DEFAULT_ENUMERATION_CAP,
};

/// A set of bijections `{c f : c in group}`, `f` the representative.
#[derive(Clone, Debug)]
pub struct IsoCoset {
    pub group: PermutationGroup,
    pub representative: Permutation,
}

impl IsoCoset {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.group.contains(&p.then(&self.representative.inverse()))
    }
}

/// Whether `p` maps color `s` of `x` to color `psi[s]` of `y` for every pair.
fn maps_colors(x: &CoherentConfiguration, y: &CoherentConfiguration, psi: &[usize], p: &[usize]) -> bool {
    let d = x.d();
    // identity row first: cheap rejection
    (0..d).all(|b| psi[x.color(0, b) as usize] == y.color(p[0], p[b]) as usize)
        && (1..d).all(|a| (0..d).all(|b| psi[x.color(a, b) as usize] == y.color(p[a], p[b]) as usize))
}

/// `D_U`: `Sym(U)` in symmetric type, else `D(2,U) ∩ Aut(X_U)`, on the local indices of `U`.
pub fn compute_du(kind: SectionKind, u: &FiniteGroup, x_u: &CoherentConfiguration) -> Result<PermutationGroup> {
    let n = u.order();
    if kind == SectionKind::Symmetric {
        return Ok(PermutationGroup::symmetric(n));
    }
    let reps = regular_representations(u);
    let sigma = reps.sigma.clone();
    let ids: Vec<usize> = (0..x_u.rank()).collect();
    // point stabilizer of D(2,U) is Aut(U) ∪ Aut(U) σ; D_U is its part preserving X_U times U_right
    let mut gens = reps.right.clone();
    let mut current = PermutationGroup::new(n, gens.clone())?;
    for a in automorphism_group(u)? {
        for p in [a.clone(), a.then(&sigma)] {
            if maps_colors(x_u, x_u, &ids, &p.to_vec()) && !current.contains(&p) {
                gens.push(p);
                current = PermutationGroup::new(n, gens.clone())?;
            }
        }
    }
    Ok(current)
}

/// `psi = phi_{U,U'}` as a map between the colors of the two restrictions.
pub fn restricted_phi(
    phi: &AlgebraicIso,
    u_points: &[usize],
    u2_points: &[usize],
) -> Result<(CoherentConfiguration, CoherentConfiguration, Vec<usize>)> {
    let x_u = restriction(phi.source(), u_points)?;
    let y_u = restriction(phi.target(), u2_points)?;
    let src = restricted_index(phi.source(), u_points);
    let dst = restricted_index(phi.target(), u2_points);
    let mut psi = vec![usize::MAX; x_u.rank()];
    for (&s, &r) in &src {
        psi[r] = *dst
            .get(&(phi.map(s as usize) as u32))
            .ok_or_else(|| Error::Internal("algebraic isomorphism does not respect U".into()))?;
    }
    Ok((x_u, y_u, psi))
}

fn accepts(
    x_u: &CoherentConfiguration,
    y_u: &CoherentConfiguration,
    psi: &[usize],
    f0: &[usize],
    du: &PermutationGroup,
    du2: &PermutationGroup,
) -> bool {
    if !maps_colors(x_u, y_u, psi, f0) {
        return false;
    }
    let f = Permutation::from_images(f0.to_vec()).expect("bijection");
    let fi = f.inverse();
    du.generators().iter().all(|d| du2.contains(&fi.then(d).then(&f)))
}

/// `C_0 = D_U f_0`, or `None` if no `f_0` maps the relations per `psi` and
/// conjugates `D_U` onto `D_U'`. Candidates: the identity when the groups
/// coincide, then `f_0 = beta` for isomorphisms `beta` from `U` onto regular
/// subgroups of `D_U'` (right translations first), in a fixed order.
#[allow(clippy::too_many_arguments)]
pub fn c0_search(
    kind: SectionKind,
    x_u: &CoherentConfiguration,
    y_u: &CoherentConfiguration,
    psi: &[usize],
    u: &FiniteGroup,
    u2: &FiniteGroup,
    du: &PermutationGroup,
    du2: &PermutationGroup,
) -> Result<Option<IsoCoset>> {
    let n = u.order();
    if u2.order() != n || du.order() != du2.order() {
        return Ok(None);
    }
    if kind == SectionKind::Symmetric {
        if x_u.rank() > 2 || y_u.rank() > 2 {
            return Err(Error::Internal("symmetric type with a nontrivial restriction".into()));
        }
        return Ok(Some(IsoCoset { group: du.clone(), representative: Permutation::identity(n) }));
    }
    let identity: Vec<usize> = (0..n).collect();
    if u == u2 && accepts(x_u, y_u, psi, &identity, du, du2) {
        return Ok(Some(IsoCoset { group: du.clone(), representative: Permutation::identity(n) }));
    }
    let auts = automorphism_group(u)?;
    let try_regular = |v: &FiniteGroup| -> Result<Option<Vec<usize>>> {
        let Some(iso) = group_isomorphisms(u, v)? else { return Ok(None) };
        for a in &auts {
            let f0: Vec<usize> = (0..n).map(|x| iso.iso[a.apply(x)]).collect();
            if accepts(x_u, y_u, psi, &f0, du, du2) {
                return Ok(Some(f0));
            }
        }
        Ok(None)
    };
    // right translations of U' index their points like U' itself
    if let Some(f0) = try_regular(u2)? {
        return Ok(Some(IsoCoset { group: du.clone(), representative: Permutation::from_images(f0)? }));
    }
    let others: Vec<RegularSubgroup> = regular_subgroups_up_to_conjugacy(du2, u, DEFAULT_ENUMERATION_CAP)?;
    for v in others {
        if let Some(f0) = try_regular(&v.as_group())? {
            return Ok(Some(IsoCoset { group: du.clone(), representative: Permutation::from_images(f0)? }));
        }
    }
    Ok(None)
}

/// `C_id` and one `f`, on the whole groups `G -> G'`.
#[derive(Clone, Debug)]
pub struct Majorant {
    pub coset: IsoCoset,
    pub du: PermutationGroup,
}

/// Right multiplication identifying `U` with the coset `Y = U g_Y`, `g_Y = min Y`.
fn coset_reps(cosets: &[Vec<usize>]) -> Vec<usize> {
    cosets.iter().map(|y| y[0]).collect()
}

/// Builds `C_phi` from `phi: X -> X'` where both schemes contain `e_U`, `e_L`.
pub fn majorant(
    g: &FiniteGroup,
    g2: &FiniteGroup,
    section: &PrincipalSection,
    section2: &PrincipalSection,
    phi: &AlgebraicIso,
) -> Result<Option<Majorant>> {
    let n = g.order();
    if section.kind != section2.kind || section.u_cosets.len() != section2.u_cosets.len() || g2.order() != n {
        return Ok(None);
    }
    let (x_u, y_u, psi) = restricted_phi(phi, section.u.elements(), section2.u.elements())?;
    let u = g.subgroup_as_group(&section.u);
    let u2 = g2.subgroup_as_group(&section2.u);
    let du = compute_du(section.kind, &u, &x_u)?;
    let du2 = compute_du(section2.kind, &u2, &y_u)?;
    let Some(c0) = c0_search(section.kind, &x_u, &y_u, &psi, &u, &u2, &du, &du2)? else {
        return Ok(None);
    };
    let ue = section.u.elements();
    let ue2 = section2.u.elements();
    let k = section.u_cosets.len();
    let reps = coset_reps(&section.u_cosets);
    let reps2 = coset_reps(&section2.u_cosets);
    // local index of u in U, for y = u g_Y
    let mut local = vec![usize::MAX; n];
    for (i, &x) in ue.iter().enumerate() {
        local[x] = i;
    }
    let split = |y: usize| -> (usize, usize) {
        let yi = section.u_cosets.iter().position(|c| c.binary_search(&y).is_ok()).expect("cosets cover G");
        (local[g.mul(y, g.inv(reps[yi]))], yi)
    };
    let decomposition: Vec<(usize, usize)> = (0..n).map(split).collect();

    let mut gens = Vec::new();
    for (yi, &gy) in reps.iter().enumerate() {
        for d in du.generators() {
            let img: Vec<usize> = (0..n)
                .map(|x| {
                    let (ul, xi) = decomposition[x];
                    if xi == yi {
                        g.mul(ue[d.apply(ul)], gy)
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(Permutation::from_images(img)?);
        }
    }
    let mut block_perms: Vec<Vec<usize>> = Vec::new();
    if k >= 2 {
        let mut t: Vec<usize> = (0..k).collect();
        t.swap(0, 1);
        block_perms.push(t);
    }
    if k >= 3 {
        block_perms.push((0..k).map(|i| (i + 1) % k).collect());
    }
    for tau in block_perms {
        let img: Vec<usize> = (0..n)
            .map(|x| {
                let (ul, xi) = decomposition[x];
                g.mul(ue[ul], reps[tau[xi]])
            })
            .collect();
        gens.push(Permutation::from_images(img)?);
    }
    let f0 = &c0.representative;
    let f: Vec<usize> = (0..n)
        .map(|x| {
            let (ul, xi) = decomposition[x];
            g2.mul(ue2[f0.apply(ul)], reps2[xi])
        })
        .collect();
    let group = PermutationGroup::new(n, gens)?;
    Ok(Some(Majorant { coset: IsoCoset { group, representative: Permutation::from_images(f)? }, du }))
}
