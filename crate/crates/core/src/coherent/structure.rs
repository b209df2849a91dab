use std::collections::HashMap;

use super::{CoherentConfiguration, Verify};
use crate::error::{Error, Result};

/// A bijection of colors preserving all intersection numbers.
#[derive(Clone, Debug)]
pub struct AlgebraicIso {
    source: CoherentConfiguration,
    target: CoherentConfiguration,
    map: Vec<usize>,
}

impl AlgebraicIso {
    pub fn new(source: CoherentConfiguration, target: CoherentConfiguration, map: Vec<usize>) -> Result<Self> {
        let r = source.rank();
        if target.d() != source.d() || target.rank() != r || map.len() != r {
            return Err(Error::Internal("rank or degree mismatch".into()));
        }
        let mut hit = vec![false; r];
        for &t in &map {
            if t >= r || std::mem::replace(&mut hit[t], true) {
                return Err(Error::Internal("color map is not a bijection".into()));
            }
        }
        for t in 0..r {
            if source.color_size(t) != target.color_size(map[t]) {
                return Err(Error::Internal(format!("color {t} changes size")));
            }
            let mut mapped: Vec<(u32, u32, u32)> = source
                .intersection_numbers_for(t)
                .iter()
                .map(|&(a, b, c)| (map[a as usize] as u32, map[b as usize] as u32, c))
                .collect();
            mapped.sort_unstable();
            if mapped != target.intersection_numbers_for(map[t]) {
                return Err(Error::Internal(format!("intersection numbers of color {t} not preserved")));
            }
        }
        Ok(AlgebraicIso { source, target, map })
    }

    /// The identity on `x`.
    pub fn identity(x: &CoherentConfiguration) -> Self {
        AlgebraicIso { source: x.clone(), target: x.clone(), map: (0..x.rank()).collect() }
    }

    pub fn source(&self) -> &CoherentConfiguration {
        &self.source
    }

    pub fn target(&self) -> &CoherentConfiguration {
        &self.target
    }

    pub fn map(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn color_map(&self) -> &[usize] {
        &self.map
    }
}

/// An equivalence relation that is a union of colors, with its classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceInClosure {
    colors: Vec<bool>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl EquivalenceInClosure {
    /// The union of `color_set`, which must be an equivalence relation.
    pub fn new(x: &CoherentConfiguration, color_set: &[usize]) -> Result<Self> {
        let d = x.d();
        let mut colors = vec![false; x.rank()];
        for &s in color_set {
            if s >= x.rank() {
                return Err(Error::InvalidPartition(format!("color {s} out of range")));
            }
            colors[s] = true;
        }
        let mut class_of = vec![usize::MAX; d];
        let mut classes = Vec::new();
        for a in 0..d {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[a] = id;
            let mut class = vec![a];
            let mut k = 0;
            while k < class.len() {
                let u = class[k];
                k += 1;
                for v in 0..d {
                    if colors[x.color(u, v) as usize] && class_of[v] == usize::MAX {
                        class_of[v] = id;
                        class.push(v);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        for a in 0..d {
            for b in 0..d {
                if colors[x.color(a, b) as usize] != (class_of[a] == class_of[b]) {
                    return Err(Error::InvalidPartition("color set is not an equivalence relation".into()));
                }
            }
        }
        Ok(EquivalenceInClosure { colors, classes, class_of })
    }

    /// The equivalence whose classes are `parts`, if it is a union of colors.
    pub fn from_partition(x: &CoherentConfiguration, parts: &[Vec<usize>]) -> Result<Self> {
        let mut part_of = vec![usize::MAX; x.d()];
        for (i, p) in parts.iter().enumerate() {
            for &a in p {
                if a >= x.d() {
                    return Err(Error::InvalidPartition(format!("point {a} out of range")));
                }
                part_of[a] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("parts do not cover the domain".into()));
        }
        let mut set: Vec<usize> = Vec::new();
        for p in parts {
            for &a in p {
                for &b in p {
                    set.push(x.color(a, b) as usize);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
        let e = Self::new(x, &set)?;
        if e.classes.len() != parts.len() {
            return Err(Error::InvalidPartition("partition is not a union of colors".into()));
        }
        Ok(e)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn contains_color(&self, s: usize) -> bool {
        self.colors[s]
    }

    pub fn color_set(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&s| self.colors[s]).collect()
    }
}

/// `X` restricted to `points`, colors renumbered canonically in the order of `points`.
pub fn restriction(x: &CoherentConfiguration, points: &[usize]) -> Result<CoherentConfiguration> {
    if points.is_empty() || points.iter().any(|&a| a >= x.d()) {
        return Err(Error::InvalidRestriction("empty or out-of-range point set".into()));
    }
    let colors: Vec<u32> = points.iter().flat_map(|&a| points.iter().map(move |&b| x.color(a, b))).collect();
    let cc = CoherentConfiguration::from_partition(points.len(), colors)?;
    cc.verify_axioms(Verify::Routine).map_err(Error::InvalidRestriction)?;
    Ok(cc)
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Quotient of `X` modulo `e`: on the classes, `(i, j)` colored by the
/// group of colors meeting `class_i x class_j`.
pub fn quotient_cc(x: &CoherentConfiguration, e: &EquivalenceInClosure) -> Result<CoherentConfiguration> {
    let m = e.classes().len();
    let mut parent: Vec<usize> = (0..x.rank()).collect();
    let mut first = vec![usize::MAX; m * m];
    for a in 0..x.d() {
        for b in 0..x.d() {
            let cell = e.class_of(a) * m + e.class_of(b);
            let s = x.color(a, b) as usize;
            if first[cell] == usize::MAX {
                first[cell] = s;
            } else {
                let (p, q) = (find(&mut parent, first[cell]), find(&mut parent, s));
                parent[p] = q;
            }
        }
    }
    let colors: Vec<u32> = first.iter().map(|&s| find(&mut parent, s) as u32).collect();
    let cc = CoherentConfiguration::from_partition(m, colors)?;
    cc.verify_axioms(Verify::Routine).map_err(Error::Internal)?;
    Ok(cc)
}

/// Whether `X` is the direct sum of trivial configurations on the parts.
pub fn is_boxplus_trivial(x: &CoherentConfiguration, parts: &[Vec<usize>]) -> bool {
    let d = x.d();
    let mut part_of = vec![usize::MAX; d];
    for (i, p) in parts.iter().enumerate() {
        for &a in p {
            part_of[a] = i;
        }
    }
    if part_of.contains(&usize::MAX) {
        return false;
    }
    // each color must be exactly one block type: (part, part, diagonal?)
    let mut kind: Vec<Option<(usize, usize, bool)>> = vec![None; x.rank()];
    let mut owner: HashMap<(usize, usize, bool), usize> = HashMap::new();
    for a in 0..d {
        for b in 0..d {
            let k = (part_of[a], part_of[b], a == b);
            let s = x.color(a, b) as usize;
            match kind[s] {
                None => {
                    if *owner.entry(k).or_insert(s) != s {
                        return false;
                    }
                    kind[s] = Some(k);
                }
                Some(k0) if k0 != k => return false,
                _ => {}
            }
        }
    }
    true
}

/// Whether every color outside `e` is a union of full products of classes.
pub fn is_wreath_wrt(x: &CoherentConfiguration, e: &EquivalenceInClosure) -> Result<bool> {
    if !x.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let m = e.classes().len();
    let mut block_color = vec![u32::MAX; m * m];
    for a in 0..x.d() {
        for b in 0..x.d() {
            let (i, j) = (e.class_of(a), e.class_of(b));
            if i == j {
                continue;
            }
            let c = &mut block_color[i * m + j];
            if *c == u32::MAX {
                *c = x.color(a, b);
            } else if *c != x.color(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// What an algebraic isomorphism induces on the classes of an equivalence
/// and on the quotient.
#[derive(Clone, Debug)]
pub struct InducedIsos {
    /// `pairing[i]` = index of the target class matched with source class `i`.
    pub pairing: Vec<usize>,
    pub restricted: Vec<AlgebraicIso>,
    pub quotient: AlgebraicIso,
    pub target_equivalence: EquivalenceInClosure,
}

/// Colors of `x` inside `points`, mapped to restricted (canonical) indices.
pub(crate) fn restricted_index(x: &CoherentConfiguration, points: &[usize]) -> HashMap<u32, usize> {
    let mut idx = HashMap::new();
    for &a in points {
        for &b in points {
            let next = idx.len();
            idx.entry(x.color(a, b)).or_insert(next);
        }
    }
    idx
}

pub fn induced_iso_on_restriction_and_quotient(phi: &AlgebraicIso, e: &EquivalenceInClosure) -> Result<InducedIsos> {
    let (x, y) = (phi.source(), phi.target());
    let mapped: Vec<usize> = e.color_set().iter().map(|&s| phi.map(s)).collect();
    let f = EquivalenceInClosure::new(y, &mapped)?;
    let m = e.classes().len();
    if f.classes().len() != m {
        return Err(Error::Internal("equivalence and its image have different class counts".into()));
    }
    let qx = quotient_cc(x, e)?;
    let qy = quotient_cc(y, &f)?;
    let mut qmap = vec![usize::MAX; qx.rank()];
    for s in 0..x.rank() {
        let (a, b) = x.representative(s);
        let (c, d) = y.representative(phi.map(s));
        let from = qx.color(e.class_of(a), e.class_of(b)) as usize;
        let to = qy.color(f.class_of(c), f.class_of(d)) as usize;
        if qmap[from] != usize::MAX && qmap[from] != to {
            return Err(Error::Internal("induced quotient map is not well defined".into()));
        }
        qmap[from] = to;
    }
    let quotient = AlgebraicIso::new(qx, qy, qmap)?;

    let mut pairing = Vec::with_capacity(m);
    let mut restricted = Vec::with_capacity(m);
    let mut used = vec![false; m];
    for (i, class) in e.classes().iter().enumerate() {
        let xi = restriction(x, class)?;
        let src_idx = restricted_index(x, class);
        let order = std::iter::once(i).chain((0..m).filter(|&j| j != i));
        let mut found = None;
        for j in order {
            if used[j] || f.classes()[j].len() != class.len() {
                continue;
            }
            let dst_idx = restricted_index(y, &f.classes()[j]);
            let mut map = vec![usize::MAX; xi.rank()];
            let ok = src_idx.iter().all(|(&s, &r)| match dst_idx.get(&(phi.map(s as usize) as u32)) {
                Some(&t) => {
                    map[r] = t;
                    true
                }
                None => false,
            });
            if !ok {
                continue;
            }
            let yj = restriction(y, &f.classes()[j])?;
            if let Ok(iso) = AlgebraicIso::new(xi.clone(), yj, map) {
                found = Some((j, iso));
                break;
            }
        }
        let (j, iso) = found.ok_or_else(|| Error::Internal(format!("no class matches class {i}")))?;
        used[j] = true;
        pairing.push(j);
        restricted.push(iso);
    }
    Ok(InducedIsos { pairing, restricted, quotient, target_equivalence: f })
}
