//! Text group files.
//!
//! ```text
//! # D_30 on 15 points
//! degree: 15
//! gen: (1,2,3,4,5,6,7,8,9,10,11,12,13,14,15)
//! gen: (2,15)(3,14)(4,13)(5,12)(6,11)(7,10)(8,9)
//! ```
//!
//! `#` starts a comment, blank lines are ignored, and the degree line must
//! precede every generator.

use crate::error::GroupError;
use crate::group::PermutationGroup;
use crate::perm::{Permutation, MAX_DEGREE};

pub fn parse_group_file(text: &str) -> Result<PermutationGroup, GroupError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |message: String| GroupError::GroupFile { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| err(format!("expected 'key: value', got {line:?}")))?;
        match key.trim() {
            "degree" => {
                if degree.is_some() {
                    return Err(err("duplicate degree line".into()));
                }
                let n: usize = value.trim().parse().map_err(|_| err(format!("invalid degree {:?}", value.trim())))?;
                if n == 0 || n > MAX_DEGREE {
                    return Err(err(format!("degree {n} outside 1..={MAX_DEGREE}")));
                }
                degree = Some(n);
            }
            "gen" => {
                let n = degree.ok_or_else(|| err("generator before degree line".into()))?;
                let g = Permutation::parse_cycles(value, n).map_err(|e| err(e.to_string()))?;
                gens.push(g);
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }

    let degree =
        degree.ok_or(GroupError::GroupFile { line: last_line.max(1), message: "missing degree line".into() })?;
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    PermutationGroup::new(degree, gens)
}

/// Writes `group` in the format read by [`parse_group_file`].
pub fn format_group_file(group: &PermutationGroup) -> String {
    let mut out = format!("degree: {}\n", group.degree());
    for g in group.generators() {
        out.push_str("gen: ");
        out.push_str(&g.format_cycles());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn reads_dihedral() {
        let text = "# D_30\n\ndegree: 15\ngen: (1,2,3,4,5,6,7,8,9,10,11,12,13,14,15)\n\
                    gen: (2,15)(3,14)(4,13)(5,12)(6,11)(7,10)(8,9)  # reflection\n";
        let g = parse_group_file(text).unwrap();
        assert_eq!(g.order(), 30);
        assert_eq!(g.generators(), catalog::dihedral(30).unwrap().generators());
    }

    #[test]
    fn round_trip() {
        let g = catalog::sl23_example();
        let back = parse_group_file(&format_group_file(&g)).unwrap();
        assert_eq!(back.generators(), g.generators());
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("degree: 5\ngen: (1,2\n", 2),
            ("gen: (1,2)\n", 1),
            ("degree: 5\n\n# c\ngen: (1,9)\n", 4),
            ("degree: x\n", 1),
            ("degree: 3\ndegree: 4\n", 2),
            ("degree: 3\nfoo: 1\n", 2),
            ("degree: 3\njust text\n", 2),
            ("# nothing\n", 1),
        ];
        for (text, line) in cases {
            match parse_group_file(text) {
                Err(GroupError::GroupFile { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn no_generators_means_trivial() {
        assert_eq!(parse_group_file("degree: 4\n").unwrap().order(), 1);
    }
}
