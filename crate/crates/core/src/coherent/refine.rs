//! Weisfeiler-Leman refinement: a dense engine on `d x d` cells, a Cayley
//! engine on `n` group elements (colors depend only on `h g^-1`), and the
//! lockstep driver used for algebraic isomorphisms.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use super::{AlgebraicIso, CoherentConfiguration, Verify};
use crate::error::{Error, Result};
use crate::group_core::FiniteGroup;

const CHUNK: usize = 1 << 16;
const SALTS: [u64; 2] = [0x9e37_79b9_7f4a_7c15, 0xd1b5_4a32_d192_ed03];

#[inline]
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-independent fingerprint accumulator for a multiset of color pairs.
#[derive(Default)]
struct PairSum([u64; 2]);

impl PairSum {
    #[inline]
    fn add(&mut self, r: u32, s: u32) {
        let x = (r as u64) << 32 | s as u64;
        self.0[0] = self.0[0].wrapping_add(splitmix(x ^ SALTS[0]));
        self.0[1] = self.0[1].wrapping_add(splitmix(x.rotate_left(17) ^ SALTS[1]));
    }
}

/// Refinement signature of one cell: the multiset of `(c(a,g), c(g,b))`,
/// either hashed or as a sorted list.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Sig {
    Hashed([u64; 2]),
    Exact(Vec<u64>),
}

struct SigBuilder {
    exact: bool,
    sum: PairSum,
    list: Vec<u64>,
}

impl SigBuilder {
    fn new(exact: bool, cap: usize) -> Self {
        SigBuilder { exact, sum: PairSum::default(), list: Vec::with_capacity(if exact { cap } else { 0 }) }
    }

    #[inline]
    fn add(&mut self, r: u32, s: u32) {
        if self.exact {
            self.list.push((r as u64) << 32 | s as u64);
        } else {
            self.sum.add(r, s);
        }
    }

    fn finish(mut self) -> Sig {
        if self.exact {
            self.list.sort_unstable();
            Sig::Exact(self.list)
        } else {
            Sig::Hashed(self.sum.0)
        }
    }
}

type Key = (u32, u32, Sig);

/// Initial cell label: diagonal flag, base color, membership bits of the extra relations.
#[derive(Clone, PartialEq, Eq, Hash)]
struct InitKey(bool, u32, Vec<u64>);

fn membership(extra: &[Vec<bool>], cell: usize) -> Vec<u64> {
    let mut bits = vec![0u64; extra.len().div_ceil(64)];
    for (j, r) in extra.iter().enumerate() {
        if r[cell] {
            bits[j / 64] |= 1 << (j % 64);
        }
    }
    bits
}

trait Engine: Sync {
    type Aux: Sync;
    fn cells(&self) -> usize;
    fn initial_key(&self, cell: usize) -> InitKey;
    fn prepare(&self, colors: &[u32]) -> Self::Aux;
    fn key(&self, colors: &[u32], aux: &Self::Aux, cell: usize, exact: bool) -> Key;
}

/// Seed relations on `d` points: a base coloring plus extra relations that
/// may overlap it and each other.
#[derive(Clone, Debug)]
pub struct Seed {
    d: usize,
    base: Vec<u32>,
    extra: Vec<Vec<bool>>,
}

impl Seed {
    /// Seed from a color matrix (row-major).
    pub fn from_colors(d: usize, colors: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyDomain);
        }
        if colors.len() != d * d {
            return Err(Error::InvalidPartition(format!("expected {} cells", d * d)));
        }
        Ok(Seed { d, base: colors, extra: Vec::new() })
    }

    /// Seed from a list of relations; uncovered pairs share a background color.
    pub fn from_relations(d: usize, relations: &[Vec<(usize, usize)>]) -> Result<Self> {
        let mut seed = Seed::from_colors(d, vec![0; d * d])?;
        for r in relations {
            seed.add_relation(r)?;
        }
        Ok(seed)
    }

    pub fn add_relation(&mut self, pairs: &[(usize, usize)]) -> Result<()> {
        let d = self.d;
        let mut mask = vec![false; d * d];
        for &(a, b) in pairs {
            if a >= d || b >= d {
                return Err(Error::InvalidPartition(format!("pair ({a},{b}) out of range")));
            }
            mask[a * d + b] = true;
        }
        self.extra.push(mask);
        Ok(())
    }

    pub fn add_mask(&mut self, mask: Vec<bool>) {
        assert_eq!(mask.len(), self.d * self.d);
        self.extra.push(mask);
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn extra_count(&self) -> usize {
        self.extra.len()
    }
}

struct Dense<'a>(&'a Seed);

impl Engine for Dense<'_> {
    type Aux = Vec<u32>;

    fn cells(&self) -> usize {
        self.0.d * self.0.d
    }

    fn initial_key(&self, cell: usize) -> InitKey {
        let d = self.0.d;
        InitKey(cell / d == cell % d, self.0.base[cell], membership(&self.0.extra, cell))
    }

    /// Transposed color matrix, for column access.
    fn prepare(&self, colors: &[u32]) -> Vec<u32> {
        let d = self.0.d;
        let mut t = vec![0u32; d * d];
        t.par_chunks_mut(d).enumerate().for_each(|(b, row)| {
            for (g, x) in row.iter_mut().enumerate() {
                *x = colors[g * d + b];
            }
        });
        t
    }

    fn key(&self, colors: &[u32], transposed: &Vec<u32>, cell: usize, exact: bool) -> Key {
        let d = self.0.d;
        let (a, b) = (cell / d, cell % d);
        let row = &colors[a * d..(a + 1) * d];
        let col = &transposed[b * d..(b + 1) * d];
        let mut sig = SigBuilder::new(exact, d);
        for g in 0..d {
            sig.add(row[g], col[g]);
        }
        (colors[cell], colors[b * d + a], sig.finish())
    }
}

/// Seed for a Cayley-type refinement: relations `{(g,h) : h g^-1 in Y}`
/// given by a base coloring of the elements plus extra element subsets.
#[derive(Clone, Debug)]
pub struct CayleySeed {
    base: Vec<u32>,
    extra: Vec<Vec<bool>>,
}

impl CayleySeed {
    pub fn new(base: Vec<u32>) -> Self {
        CayleySeed { base, extra: Vec::new() }
    }

    pub fn add_subset(&mut self, elements: &[usize]) {
        let mut mask = vec![false; self.base.len()];
        for &x in elements {
            mask[x] = true;
        }
        self.extra.push(mask);
    }

    pub fn extra_count(&self) -> usize {
        self.extra.len()
    }
}

struct Cayley<'a> {
    g: &'a FiniteGroup,
    seed: &'a CayleySeed,
}

impl Engine for Cayley<'_> {
    type Aux = ();

    fn cells(&self) -> usize {
        self.g.order()
    }

    fn initial_key(&self, x: usize) -> InitKey {
        InitKey(x == 0, self.seed.base[x], membership(&self.seed.extra, x))
    }

    fn prepare(&self, _: &[u32]) {}

    /// Cell `x` stands for the pair `(1, x)`; `c(1,g) = row[g]`, `c(g,x) = row[x g^-1]`.
    fn key(&self, row: &[u32], _: &(), x: usize, exact: bool) -> Key {
        let g = self.g;
        let mut sig = SigBuilder::new(exact, g.order());
        for y in 0..g.order() {
            sig.add(row[y], row[g.mul(x, g.inv(y))]);
        }
        (row[x], row[g.inv(x)], sig.finish())
    }
}

/// Ids by first occurrence; with `insert == false` unknown keys fail.
fn assign<K, F>(n: usize, f: F, map: &mut HashMap<K, u32>, insert: bool) -> Option<Vec<u32>>
where
    K: Hash + Eq + Send,
    F: Fn(usize) -> K + Sync,
{
    let mut out = Vec::with_capacity(n);
    for start in (0..n).step_by(CHUNK) {
        let end = (start + CHUNK).min(n);
        let keys: Vec<K> = (start..end).into_par_iter().map(&f).collect();
        for k in keys {
            let id = if insert {
                let next = map.len() as u32;
                *map.entry(k).or_insert(next)
            } else {
                *map.get(&k)?
            };
            out.push(id);
        }
    }
    Some(out)
}

fn refine_single<E: Engine>(e: &E, exact: bool) -> (Vec<u32>, usize) {
    let mut map = HashMap::new();
    let mut colors = assign(e.cells(), |i| e.initial_key(i), &mut map, true).expect("insert mode");
    let mut rank = map.len();
    loop {
        let aux = e.prepare(&colors);
        let mut map = HashMap::new();
        let next = assign(e.cells(), |i| e.key(&colors, &aux, i, exact), &mut map, true).expect("insert mode");
        colors = next;
        if map.len() == rank {
            return (colors, rank);
        }
        rank = map.len();
    }
}

fn sizes(colors: &[u32], rank: usize) -> Vec<usize> {
    let mut s = vec![0usize; rank];
    for &c in colors {
        s[c as usize] += 1;
    }
    s
}

/// Lockstep refinement; ids are shared, assigned by first occurrence on side 0.
fn refine_pair<E: Engine>(
    e0: &E,
    e1: &E,
    relabel: &(dyn Fn(InitKey) -> InitKey + Sync),
    exact: bool,
) -> Option<(Vec<u32>, Vec<u32>, usize)> {
    if e0.cells() != e1.cells() {
        return None;
    }
    let mut map = HashMap::new();
    let mut c0 = assign(e0.cells(), |i| e0.initial_key(i), &mut map, true)?;
    let mut c1 = assign(e1.cells(), |i| relabel(e1.initial_key(i)), &mut map, false)?;
    let mut rank = map.len();
    if sizes(&c0, rank) != sizes(&c1, rank) {
        return None;
    }
    loop {
        let (a0, a1) = (e0.prepare(&c0), e1.prepare(&c1));
        let mut map = HashMap::new();
        let n0 = assign(e0.cells(), |i| e0.key(&c0, &a0, i, exact), &mut map, true)?;
        let n1 = assign(e1.cells(), |i| e1.key(&c1, &a1, i, exact), &mut map, false)?;
        let r = map.len();
        if sizes(&n0, r) != sizes(&n1, r) {
            return None;
        }
        c0 = n0;
        c1 = n1;
        if r == rank {
            return Some((c0, c1, rank));
        }
        rank = r;
    }
}

/// The coherent closure of the seed relations.
pub fn wl_closure(seed: &Seed) -> Result<CoherentConfiguration> {
    let e = Dense(seed);
    let (colors, rank) = refine_single(&e, false);
    let cc = CoherentConfiguration::from_canonical(seed.d, colors, rank);
    if cc.verify_axioms(Verify::Routine).is_ok() {
        return Ok(cc);
    }
    // a fingerprint collision merged cells; redo with exact multisets
    let (colors, rank) = refine_single(&e, true);
    let cc = CoherentConfiguration::from_canonical(seed.d, colors, rank);
    cc.verify_axioms(Verify::Routine).map_err(Error::Internal)?;
    Ok(cc)
}

/// Coherent closure of a Cayley seed, as the row `x -> color(1, x)` and
/// the full configuration with `color(g, h) = row[h g^-1]`.
pub fn cayley_closure(g: &FiniteGroup, seed: &CayleySeed) -> Result<(Vec<u32>, CoherentConfiguration)> {
    if seed.base.len() != g.order() || seed.extra.iter().any(|m| m.len() != g.order()) {
        return Err(Error::InvalidPartition("seed size differs from group order".into()));
    }
    let e = Cayley { g, seed };
    for exact in [false, true] {
        let (row, rank) = refine_single(&e, exact);
        if verify_cayley(g, &row, rank).is_ok() {
            return Ok((row.clone(), expand_cayley(g, &row, rank)));
        }
    }
    Err(Error::Internal("Cayley refinement did not reach a coherent configuration".into()))
}

/// Full matrix of a first-occurrence numbered row; row 0 of the matrix is
/// the row itself, so the numbering stays canonical.
pub(crate) fn expand_cayley(g: &FiniteGroup, row: &[u32], rank: usize) -> CoherentConfiguration {
    CoherentConfiguration::from_canonical(g.order(), expand_row(g, row), rank)
}

fn expand_row(g: &FiniteGroup, row: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut colors = vec![0u32; n * n];
    colors.par_chunks_mut(n).enumerate().for_each(|(a, out)| {
        let ai = g.inv(a);
        for (b, c) in out.iter_mut().enumerate() {
            *c = row[g.mul(b, ai)];
        }
    });
    colors
}

/// Axioms for a right-invariant coloring only need the pairs `(1, x)`.
fn verify_cayley(g: &FiniteGroup, row: &[u32], rank: usize) -> std::result::Result<(), String> {
    let n = g.order();
    let mut first = vec![usize::MAX; rank];
    for (x, &c) in row.iter().enumerate() {
        if first[c as usize] == usize::MAX {
            first[c as usize] = x;
        }
    }
    if first.contains(&usize::MAX) || (1..n).any(|x| row[x] == row[0]) {
        return Err("identity color is not isolated".into());
    }
    for x in 0..n {
        if row[g.inv(x)] != row[g.inv(first[row[x] as usize])] {
            return Err("transpose is not a color".into());
        }
    }
    let profile = |x: usize| {
        let mut v: Vec<u64> = (0..n).map(|y| (row[y] as u64) << 32 | row[g.mul(x, g.inv(y))] as u64).collect();
        v.sort_unstable();
        v
    };
    let reps: Vec<Vec<u64>> = first.iter().map(|&x| profile(x)).collect();
    (0..n).into_par_iter().try_for_each(|x| {
        if profile(x) == reps[row[x] as usize] {
            Ok(())
        } else {
            Err(format!("intersection numbers differ at element {x}"))
        }
    })
}

fn relabeler(base_map: Vec<u32>, extra_map: Vec<usize>) -> impl Fn(InitKey) -> InitKey + Sync {
    move |InitKey(diag, base, bits)| {
        let mut out = vec![0u64; bits.len()];
        for (j, &to) in extra_map.iter().enumerate() {
            if bits[j / 64] >> (j % 64) & 1 == 1 {
                out[to / 64] |= 1 << (to % 64);
            }
        }
        let b = base_map.get(base as usize).copied().unwrap_or(u32::MAX);
        InitKey(diag, b, out)
    }
}

fn invert(p: &[usize]) -> Option<Vec<usize>> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() || inv[x] != usize::MAX {
            return None;
        }
        inv[x] = i;
    }
    Some(inv)
}

/// Turns lockstep joint ids into an algebraic isomorphism between the two
/// canonical configurations, checking every intersection number.
fn finish_pair(source: CoherentConfiguration, joint1: Vec<u32>, d: usize) -> Option<AlgebraicIso> {
    let mut target_colors = joint1.clone();
    let rank = super::canonicalize(&mut target_colors);
    if rank != source.rank() {
        return None;
    }
    let mut map = vec![0u32; rank];
    for (j, t) in joint1.iter().zip(&target_colors) {
        map[*j as usize] = *t;
    }
    let target = CoherentConfiguration::from_canonical(d, target_colors, rank);
    AlgebraicIso::new(source, target, map.into_iter().map(|c| c as usize).collect()).ok()
}

/// Lockstep refinement of two seeds with relation `i` of `s` paired with
/// relation `psi[i]` of `t` (base colors via `psi_base`, extras via `psi_extra`).
pub fn extend_algebraic_iso(s: &Seed, t: &Seed, psi_base: &[usize], psi_extra: &[usize]) -> Option<AlgebraicIso> {
    if s.d != t.d || s.extra.len() != t.extra.len() {
        return None;
    }
    let base_inv: Vec<u32> = invert(psi_base)?.into_iter().map(|x| x as u32).collect();
    let extra_inv = invert(psi_extra)?;
    if extra_inv.len() != s.extra.len() {
        return None;
    }
    let relabel = relabeler(base_inv, extra_inv);
    for exact in [false, true] {
        let (c0, c1, rank) = refine_pair(&Dense(s), &Dense(t), &relabel, exact)?;
        let source = CoherentConfiguration::from_canonical(s.d, c0, rank);
        if source.verify_axioms(Verify::Routine).is_err() {
            continue;
        }
        if let Some(iso) = finish_pair(source, c1, s.d) {
            if iso.target().verify_axioms(Verify::Routine).is_ok() {
                return Some(iso);
            }
        }
        if exact {
            return None;
        }
    }
    None
}

/// [`extend_algebraic_iso`] for two Cayley seeds over groups of equal order.
pub fn extend_algebraic_iso_cayley(
    g: &FiniteGroup,
    s: &CayleySeed,
    h: &FiniteGroup,
    t: &CayleySeed,
    psi_base: &[usize],
    psi_extra: &[usize],
) -> Option<AlgebraicIso> {
    if g.order() != h.order() || s.extra.len() != t.extra.len() {
        return None;
    }
    let base_inv: Vec<u32> = invert(psi_base)?.into_iter().map(|x| x as u32).collect();
    let extra_inv = invert(psi_extra)?;
    if extra_inv.len() != s.extra.len() {
        return None;
    }
    let relabel = relabeler(base_inv, extra_inv);
    let (e0, e1) = (Cayley { g, seed: s }, Cayley { g: h, seed: t });
    for exact in [false, true] {
        let (r0, r1, rank) = refine_pair(&e0, &e1, &relabel, exact)?;
        if verify_cayley(g, &r0, rank).is_ok() && verify_cayley(h, &r1, rank).is_ok() {
            let source = CoherentConfiguration::from_canonical(g.order(), expand_row(g, &r0), rank);
            return finish_pair(source, expand_row(h, &r1), g.order());
        }
        if exact {
            return None;
        }
    }
    None
}
