//! Individualization-refinement search on color matrices. Shares no code with
//! the scheme-based pipeline beyond the graph type.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::{IsoResult, Verdict};
use crate::cayley::ColorCayleyGraph;
use crate::error::{Error, Result};
use crate::perm_core::Permutation;

/// Largest graph the oracle accepts.
pub const ORACLE_LIMIT: usize = 200;

/// Cell of a vertex plus its sorted row of (out color, in color, neighbor cell).
type Signature = (u32, Vec<(u32, u32, u32)>);

struct Side {
    n: usize,
    colors: Vec<u32>,
}

impl Side {
    fn c(&self, a: usize, b: usize) -> u32 {
        self.colors[a * self.n + b]
    }
}

/// Jointly refines two vertex colorings until stable. Ids are issued on side
/// 0; `None` when side 1 cannot match.
fn refine(sides: &[Side; 2], mut cells: [Vec<u32>; 2]) -> Option<[Vec<u32>; 2]> {
    let n = sides[0].n;
    let mut count = usize::MAX;
    loop {
        let mut ids: HashMap<Signature, u32> = HashMap::new();
        let mut next: [Vec<u32>; 2] = [vec![0; n], vec![0; n]];
        let mut sizes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for v in 0..n {
                let mut sig: Vec<(u32, u32, u32)> =
                    (0..n).map(|u| (sides[s].c(v, u), sides[s].c(u, v), cells[s][u])).collect();
                sig.sort_unstable();
                let key = (cells[s][v], sig);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None if s == 0 => {
                        let id = ids.len() as u32;
                        ids.insert(key, id);
                        id
                    }
                    None => return None,
                };
                next[s][v] = id;
                if sizes[s].len() <= id as usize {
                    sizes[s].resize(id as usize + 1, 0);
                }
                sizes[s][id as usize] += 1;
            }
        }
        sizes[1].resize(sizes[0].len(), 0);
        if sizes[0] != sizes[1] {
            return None;
        }
        cells = next;
        if ids.len() == count {
            return Some(cells);
        }
        count = ids.len();
    }
}

fn individualize(sides: &[Side; 2], cells: &[Vec<u32>; 2], v: usize, w: usize) -> Option<[Vec<u32>; 2]> {
    let fresh = cells[0].iter().max().map_or(0, |&m| m + 1);
    let mut c = cells.clone();
    c[0][v] = fresh;
    c[1][w] = fresh;
    refine(sides, c)
}

/// First non-singleton cell (smallest id) and its members on both sides.
fn target_cell(cells: &[Vec<u32>; 2]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = cells[0].len();
    let mut size = HashMap::new();
    for &c in &cells[0] {
        *size.entry(c).or_insert(0usize) += 1;
    }
    let id = size.iter().filter(|&(_, &s)| s > 1).map(|(&c, _)| c).min()?;
    let members = |s: usize| (0..n).filter(|&v| cells[s][v] == id).collect::<Vec<_>>();
    Some((members(0), members(1)))
}

fn search(sides: &[Side; 2], cells: [Vec<u32>; 2]) -> Option<Permutation> {
    let Some((left, right)) = target_cell(&cells) else {
        let n = sides[0].n;
        let mut at = vec![0usize; n];
        for w in 0..n {
            at[cells[1][w] as usize] = w;
        }
        let map: Vec<usize> = (0..n).map(|v| at[cells[0][v] as usize]).collect();
        let ok = (0..n).all(|a| (0..n).all(|b| sides[0].c(a, b) == sides[1].c(map[a], map[b])));
        return ok.then(|| Permutation::from_images(map).expect("discrete cells"));
    };
    let v = left[0];
    right.iter().find_map(|&w| individualize(sides, &cells, v, w).and_then(|c| search(sides, c)))
}

fn side_of(graph: &ColorCayleyGraph) -> Side {
    Side { n: graph.group().order(), colors: graph.color_matrix() }
}

fn orbit(gens: &[Permutation], x: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

/// `Aut(Γ)`: generators and exact order as the product of basic orbit lengths
/// along the first branch of the search tree.
fn automorphisms(graph: &ColorCayleyGraph) -> (Vec<Permutation>, BigUint) {
    let n = graph.group().order();
    let sides = [side_of(graph), side_of(graph)];
    let mut path = Vec::new();
    let mut cells = refine(&sides, [vec![0; n], vec![0; n]]).expect("a graph matches itself");
    while let Some((members, _)) = target_cell(&cells) {
        let b = members[0];
        path.push((cells.clone(), b, members));
        cells = individualize(&sides, &cells, b, b).expect("a graph matches itself");
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = BigUint::from(1u32);
    for (cells, b, members) in path.into_iter().rev() {
        let mut reach = orbit(&gens, b, n);
        for &w in &members {
            if reach[w] {
                continue;
            }
            if let Some(p) = individualize(&sides, &cells, b, w).and_then(|c| search(&sides, c)) {
                gens.push(p);
                reach = orbit(&gens, b, n);
            }
        }
        order *= reach.iter().filter(|&&r| r).count();
    }
    (gens, order)
}

/// Exhaustive isomorphism test on the color matrices alone.
pub fn brute_force_oracle(graph: &ColorCayleyGraph, graph2: &ColorCayleyGraph) -> Result<IsoResult> {
    brute_force_oracle_with_cap(graph, graph2, ORACLE_LIMIT)
}

pub fn brute_force_oracle_with_cap(
    graph: &ColorCayleyGraph,
    graph2: &ColorCayleyGraph,
    cap: usize,
) -> Result<IsoResult> {
    let n = graph.group().order();
    if n > cap || graph2.group().order() > cap {
        return Err(Error::CapExceeded { what: "oracle graph order", limit: cap });
    }
    let (aut_generators, aut_order) = automorphisms(graph);
    let representative = if graph2.group().order() == n && graph2.color_count() == graph.color_count() {
        let sides = [side_of(graph), side_of(graph2)];
        refine(&sides, [vec![0; n], vec![0; n]]).and_then(|c| search(&sides, c))
    } else {
        None
    };
    Ok(IsoResult {
        verdict: if representative.is_some() { Verdict::Isomorphic } else { Verdict::NonIsomorphic },
        representative,
        aut_generators,
        aut_order,
        decided_at_step: 5,
    })
}
