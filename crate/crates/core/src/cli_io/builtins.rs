use crate::error::{Error, Result};
use crate::group_core::{FiniteGroup, DEFAULT_GROUP_CAP};
use crate::perm_core::Permutation;

/// Names accepted by [`builtin_group`] (besides `cyclic<N>`).
pub const BUILTIN_NAMES: &[&str] = &["alt5", "sym5", "alt6", "sym6", "psl27", "pgl27", "c2xa5", "trivial"];

fn gens(degree: usize, list: &[&[&[usize]]]) -> Vec<Permutation> {
    list.iter().map(|cycles| Permutation::from_cycles(degree, cycles).expect("hardcoded generator")).collect()
}

/// Fixture groups built from hardcoded permutation generators.
pub fn builtin_group(name: &str) -> Result<FiniteGroup> {
    let (degree, generators) = match name {
        "alt5" => (5, gens(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]])),
        "sym5" => (5, gens(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1]]])),
        "alt6" => (6, gens(6, &[&[&[0, 1, 2]], &[&[1, 2, 3, 4, 5]]])),
        "sym6" => (6, gens(6, &[&[&[0, 1, 2, 3, 4, 5]], &[&[0, 1]]])),
        // collineations of the Fano plane with lines {i, i+1, i+3} mod 7
        "psl27" => (7, gens(7, &[&[&[0, 1, 2, 3, 4, 5, 6]], &[&[2, 4], &[5, 6]]])),
        // infinity = 7; x -> x+1, x -> 3x, x -> -1/x
        "pgl27" => {
            (8, gens(8, &[&[&[0, 1, 2, 3, 4, 5, 6]], &[&[1, 3, 2, 6, 4, 5]], &[&[0, 7], &[1, 6], &[2, 3], &[4, 5]]]))
        }
        "c2xa5" => (7, gens(7, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]], &[&[5, 6]]])),
        "trivial" => (1, Vec::new()),
        other => {
            let n: usize = other
                .strip_prefix("cyclic")
                .and_then(|s| s.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::UnknownGroup(other.to_string()))?;
            let cycle: Vec<usize> = (0..n).collect();
            let g = if n > 1 { vec![Permutation::from_cycles(n, &[&cycle])?] } else { Vec::new() };
            (n, g)
        }
    };
    FiniteGroup::from_generators(degree, &generators, DEFAULT_GROUP_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::{automorphism_group, is_almost_simple, socle};

    #[test]
    fn fixture_orders() {
        for (name, n) in [
            ("alt5", 60),
            ("sym5", 120),
            ("alt6", 360),
            ("sym6", 720),
            ("psl27", 168),
            ("pgl27", 336),
            ("c2xa5", 120),
            ("trivial", 1),
            ("cyclic6", 6),
            ("cyclic1", 1),
        ] {
            assert_eq!(builtin_group(name).unwrap().order(), n, "{name}");
        }
        assert!(matches!(builtin_group("sym7"), Err(Error::UnknownGroup(_))));
        assert!(builtin_group("cyclic0").is_err());
    }

    #[test]
    fn pgl27_is_almost_simple() {
        let g = builtin_group("pgl27").unwrap();
        assert!(is_almost_simple(&g));
        assert_eq!(socle(&g).order(), 168);
    }

    #[test]
    fn sym6_has_outer_automorphism() {
        let g = builtin_group("sym6").unwrap();
        assert_eq!(automorphism_group(&g).unwrap().len(), 1440);
    }
}
