//! JSON files for groups, graphs and results.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::cayley::{build_central_cayley, ColorCayleyGraph};
use crate::error::{Error, Result};
use crate::group_core::{conjugacy_classes, FiniteGroup};
use crate::iso_engine::{IsoResult, Verdict};
use crate::perm_core::{Permutation, PermutationGroup};

/// A multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub identity: usize,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile { order: g.order(), table: g.table_rows(), names: g.names().map(<[String]>::to_vec), identity: 0 }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.identity != 0 {
            return Err(Error::Parse("identity must be element 0".into()));
        }
        if self.table.len() != self.order {
            return Err(Error::Parse(format!("order {} but {} table rows", self.order, self.table.len())));
        }
        FiniteGroup::from_table(self.table.clone(), self.names.clone())
    }
}

/// Group given inline or as a path relative to the graph file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Inline(GroupFile),
    Path(String),
}

/// Color classes of a central Cayley graph; class 0 is `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub group: GroupRef,
    pub colors: Vec<Vec<usize>>,
}

impl GraphFile {
    pub fn from_graph(graph: &ColorCayleyGraph) -> Self {
        GraphFile {
            group: GroupRef::Inline(GroupFile::from_group(graph.group())),
            colors: graph.partition().classes().to_vec(),
        }
    }

    /// `base` resolves a group given by path.
    pub fn to_graph(&self, base: &Path) -> Result<ColorCayleyGraph> {
        let g = match &self.group {
            GroupRef::Inline(f) => f.to_group()?,
            GroupRef::Path(p) => parse_group(&base.join(p))?,
        };
        build_central_cayley(&g, self.colors.clone())
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

pub fn parse_group(path: &Path) -> Result<FiniteGroup> {
    read_json::<GroupFile>(path)?.to_group()
}

pub fn write_group(path: &Path, g: &FiniteGroup) -> Result<()> {
    write_json(path, &GroupFile::from_group(g))
}

pub fn parse_graph(path: &Path) -> Result<ColorCayleyGraph> {
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    read_json::<GraphFile>(path)?.to_graph(&base)
}

pub fn write_graph(path: &Path, graph: &ColorCayleyGraph) -> Result<()> {
    write_json(path, &GraphFile::from_graph(graph))
}

/// Colors from groups of conjugacy-class ids, e.g. `"0;1;2,3"`. Every class
/// id must be used exactly once and the first color must be class 0 alone.
pub fn merge_classes(g: &FiniteGroup, spec: &str) -> Result<Vec<Vec<usize>>> {
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let mut used = vec![false; k];
    let mut colors = Vec::new();
    if spec.split(';').next().map(str::trim) != Some("0") {
        return Err(Error::Parse("the first color must be class 0 alone".into()));
    }
    for part in spec.split(';') {
        let mut color = Vec::new();
        for id in part.split(',') {
            let id: usize = id.trim().parse().map_err(|_| Error::Parse(format!("bad class id `{id}`")))?;
            if id >= k || used[id] {
                return Err(Error::Parse(format!("class id {id} out of range or repeated")));
            }
            used[id] = true;
            color.extend_from_slice(&classes.classes()[id]);
        }
        color.sort_unstable();
        colors.push(color);
    }
    if let Some(id) = used.iter().position(|&u| !u) {
        return Err(Error::Parse(format!("class id {id} not used")));
    }
    Ok(colors)
}

/// Wire form of [`IsoResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoResultJson {
    pub verdict: String,
    pub representative: Option<Vec<usize>>,
    pub aut_generators: Vec<Vec<usize>>,
    pub aut_order: String,
    pub decided_at_step: u8,
}

impl IsoResultJson {
    /// Recomputes the order of the generators and refuses to emit a mismatch.
    pub fn from_result(r: &IsoResult, n: usize) -> Result<Self> {
        let order = PermutationGroup::new(n, r.aut_generators.clone())?.order();
        if order != r.aut_order {
            return Err(Error::Internal(format!("aut_order {} but generators give {order}", r.aut_order)));
        }
        Ok(IsoResultJson {
            verdict: match r.verdict {
                Verdict::Isomorphic => "isomorphic",
                Verdict::NonIsomorphic => "non_isomorphic",
            }
            .into(),
            representative: r.representative.as_ref().map(Permutation::to_vec),
            aut_generators: r.aut_generators.iter().map(Permutation::to_vec).collect(),
            aut_order: order.to_string(),
            decided_at_step: r.decided_at_step,
        })
    }

    pub fn to_result(&self) -> Result<IsoResult> {
        let verdict = match self.verdict.as_str() {
            "isomorphic" => Verdict::Isomorphic,
            "non_isomorphic" => Verdict::NonIsomorphic,
            v => return Err(Error::Parse(format!("unknown verdict `{v}`"))),
        };
        let perm = |v: &Vec<usize>| Permutation::from_images(v.clone());
        Ok(IsoResult {
            verdict,
            representative: self.representative.as_ref().map(perm).transpose()?,
            aut_generators: self.aut_generators.iter().map(perm).collect::<Result<_>>()?,
            aut_order: self.aut_order.parse::<BigUint>().map_err(|e| Error::Parse(format!("aut_order: {e}")))?,
            decided_at_step: self.decided_at_step,
        })
    }
}

/// Result plus run metadata, written by `--report`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultReport {
    pub result: IsoResultJson,
    pub n: usize,
    pub m: Option<usize>,
    pub section_type: Option<String>,
    pub seconds: f64,
    /// Both groups, so a representative `G -> G'` can be replayed.
    pub groups: Vec<GroupFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
}

pub fn emit_report(report: &ResultReport, path: &Path) -> Result<()> {
    write_json(path, report)
}

pub fn parse_report(path: &Path) -> Result<ResultReport> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli_io::builtin_group;
    use crate::iso_engine::automorphisms;

    #[test]
    fn merge_and_round_trip() {
        let g = builtin_group("sym5").unwrap();
        let sizes: Vec<usize> = conjugacy_classes(&g).classes().iter().map(Vec::len).collect();
        let t = sizes.iter().position(|&s| s == 10).unwrap();
        let rest: Vec<String> = (1..sizes.len()).filter(|&i| i != t).map(|i| i.to_string()).collect();
        let colors = merge_classes(&g, &format!("0;{t};{}", rest.join(","))).unwrap();
        let graph = build_central_cayley(&g, colors).unwrap();
        assert_eq!(graph.color_count(), 3);
        let file = GraphFile::from_graph(&graph);
        let text = to_json_string(&file).unwrap();
        let back: GraphFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_graph(Path::new(".")).unwrap().partition().classes(), graph.partition().classes());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = builtin_group("alt5").unwrap();
        assert!(merge_classes(&g, "0,1;2;3;4").is_err());
        assert!(merge_classes(&g, "0;1;2;3").is_err());
        assert!(merge_classes(&g, "0;1;1;2;3;4").is_err());
        let mut file = GraphFile::from_graph(&build_central_cayley(&g, vec![vec![0], (1..60).collect()]).unwrap());
        file.colors = vec![vec![0, 1], (2..60).collect()];
        assert!(file.to_graph(Path::new(".")).is_err());
        assert!(serde_json::from_str::<GraphFile>("{\"colors\": []}").is_err());
    }

    #[test]
    fn result_json_round_trip() {
        let g = builtin_group("alt5").unwrap();
        let graph = build_central_cayley(&g, merge_classes(&g, "0;1,2;3,4").unwrap()).unwrap();
        let r = automorphisms(&graph).unwrap();
        let json = IsoResultJson::from_result(&r, 60).unwrap();
        let back = IsoResultJson::from_result(&json.to_result().unwrap(), 60).unwrap();
        assert_eq!(back, json);
        let mut wrong = r.clone();
        wrong.aut_order += 1u32;
        assert!(IsoResultJson::from_result(&wrong, 60).is_err());
    }
}
