//! Plain-text input formats.
//!
//! Group file: `degree d`, then one generator per line in 0-based cycle
//! notation, then any number of `subgroup <name>:` blocks of generator
//! lines. Module file: `field Q` or `field F<ell>`, `dim d`, then one
//! row-major `d x d` matrix per group generator. Graph file: `vertices n`,
//! then `edge u v <voltage in cycle notation>` lines. `#` starts a comment
//! everywhere.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;
use sunada_core::graph::{VoltageEdge, VoltageGraph};
use sunada_core::homwide::GModule;
use sunada_core::linalg::{Matrix, PrimeField, Rationals};
use sunada_core::num::{BigInt, BigRational};
use sunada_core::{FiniteGroup, Permutation, Subgroup};

use crate::error::{read, Error, Result};

/// A group with named subgroups, in file order.
#[derive(Debug)]
pub struct GroupFile {
    pub group: FiniteGroup,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl GroupFile {
    pub fn load(path: &Path) -> Result<Self> {
        parse_group(&read(path)?)
    }

    pub fn subgroup(&self, name: &str) -> Result<&Subgroup> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, h)| h)
            .ok_or_else(|| Error::UnknownSubgroup(name.into()))
    }

    /// The named subgroups, defaulting to the first two in the file.
    pub fn pair(&self, first: Option<&str>, second: Option<&str>) -> Result<(&Subgroup, &Subgroup)> {
        let pick = |name: Option<&str>, k: usize| match name {
            Some(n) => self.subgroup(n),
            None => self.subgroups.get(k).map(|(_, h)| h).ok_or_else(|| {
                Error::Usage(format!("the group file needs at least {} subgroup blocks", k + 1))
            }),
        };
        Ok((pick(first, 0)?, pick(second, 1)?))
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<(usize, &'a str)> {
    let (n, line) = it.next().ok_or_else(|| Error::syntax(0, format!("missing `{key}` line")))?;
    let value = line
        .strip_prefix(key)
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .ok_or_else(|| Error::syntax(n, format!("expected `{key} ...`")))?;
    Ok((n, value.trim()))
}

fn number<T: std::str::FromStr>(line: usize, text: &str) -> Result<T> {
    text.parse().map_err(|_| Error::syntax(line, format!("not a number: {text:?}")))
}

fn permutation(line: usize, degree: usize, text: &str) -> Result<Permutation> {
    let text = text.trim();
    let text = if text == "e" { "" } else { text };
    Permutation::parse_cycles(degree, text).map_err(|e| Error::syntax(line, e.to_string()))
}

pub fn parse_group(text: &str) -> Result<GroupFile> {
    let mut it = lines(text);
    let (n, d) = header(&mut it, "degree")?;
    let degree: usize = number(n, d)?;
    if degree == 0 {
        return Err(Error::syntax(n, "degree must be positive"));
    }
    let mut generators = Vec::new();
    let mut blocks: Vec<(String, usize, Vec<Permutation>)> = Vec::new();
    for (n, line) in it {
        if let Some(rest) = line.strip_prefix("subgroup") {
            let name = rest
                .trim()
                .strip_suffix(':')
                .map(str::trim)
                .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
                .ok_or_else(|| Error::syntax(n, "expected `subgroup <name>:`"))?;
            if blocks.iter().any(|(b, _, _)| b == name) {
                return Err(Error::syntax(n, format!("duplicate subgroup {name:?}")));
            }
            blocks.push((name.to_owned(), n, Vec::new()));
        } else {
            let p = permutation(n, degree, line)?;
            match blocks.last_mut() {
                Some((_, _, gens)) => gens.push(p),
                None => generators.push(p),
            }
        }
    }
    let group = FiniteGroup::generate(degree, &generators)?;
    let subgroups = blocks
        .into_iter()
        .map(|(name, n, gens)| {
            group
                .subgroup_from_perms(&gens)
                .map(|h| (name, h))
                .map_err(|e| Error::syntax(n, e.to_string()))
        })
        .collect::<Result<_>>()?;
    Ok(GroupFile { group, subgroups })
}

pub fn group_to_text(group: &FiniteGroup, subgroups: &[(&str, &Subgroup)]) -> String {
    let cycles = |p: &Permutation| {
        if p.is_identity() {
            "()".to_owned()
        } else {
            p.to_cycle_string()
        }
    };
    let mut out = format!("degree {}\n", group.degree());
    for p in group.generators() {
        out.push_str(&cycles(p));
        out.push('\n');
    }
    for (name, h) in subgroups {
        let _ = writeln!(out, "subgroup {name}:");
        for &x in h.generators() {
            out.push_str(&cycles(group.element(x)));
            out.push('\n');
        }
    }
    out
}

/// A module over `Q` or over `F_ell`.
#[derive(Clone, Debug)]
pub enum ModuleFile {
    Rational(GModule<Rationals>),
    Modular(GModule<PrimeField>),
}

impl ModuleFile {
    pub fn load(path: &Path, g: &FiniteGroup) -> Result<Self> {
        parse_module(&read(path)?, g)
    }

    pub fn dim(&self) -> usize {
        match self {
            ModuleFile::Rational(m) => m.dim(),
            ModuleFile::Modular(m) => m.dim(),
        }
    }
}

fn rational(line: usize, tok: &str) -> Result<BigRational> {
    let bad = || Error::syntax(line, format!("not a rational: {tok:?}"));
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_module(text: &str, g: &FiniteGroup) -> Result<ModuleFile> {
    let mut it = lines(text);
    let (fl, field) = header(&mut it, "field")?;
    let (dl, d) = header(&mut it, "dim")?;
    let dim: usize = number(dl, d)?;
    let tokens: Vec<(usize, &str)> = it.flat_map(|(n, l)| l.split_whitespace().map(move |t| (n, t))).collect();
    let per = dim * dim;
    let count = g.generators().len();
    if tokens.len() != per * count {
        return Err(Error::syntax(
            tokens.last().map_or(dl, |t| t.0),
            format!("expected {count} matrices of size {dim}x{dim}, found {} entries", tokens.len()),
        ));
    }
    if field == "Q" {
        let mats = tokens
            .chunks(per.max(1))
            .take(count)
            .map(|chunk| {
                let data = chunk.iter().map(|&(n, t)| rational(n, t)).collect::<Result<Vec<_>>>()?;
                Ok(Matrix { rows: dim, cols: dim, data })
            })
            .collect::<Result<Vec<_>>>()?;
        let mats = if per == 0 { vec![Matrix::filled(0, 0, BigRational::zero()); count] } else { mats };
        return Ok(ModuleFile::Rational(GModule::rational(g, dim, mats)?));
    }
    let ell: u64 = field
        .strip_prefix('F')
        .and_then(|p| p.parse().ok())
        .filter(|&p| PrimeField::new(p).is_some())
        .ok_or_else(|| Error::syntax(fl, format!("field must be Q or F<prime>, found {field:?}")))?;
    let mut mats = Vec::with_capacity(count);
    for k in 0..count {
        let data = tokens[k * per..(k + 1) * per]
            .iter()
            .map(|&(n, t)| number::<i64>(n, t).map(|v| v.rem_euclid(ell as i64) as u64))
            .collect::<Result<Vec<_>>>()?;
        mats.push(Matrix { rows: dim, cols: dim, data });
    }
    Ok(ModuleFile::Modular(GModule::modular(g, ell, dim, mats)?))
}

pub fn parse_graph(text: &str, g: &FiniteGroup) -> Result<VoltageGraph> {
    let mut it = lines(text);
    let (n, v) = header(&mut it, "vertices")?;
    let vertices: usize = number(n, v)?;
    let mut edges = Vec::new();
    for (n, line) in it {
        let rest = line
            .strip_prefix("edge")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::syntax(n, "expected `edge u v <voltage>`"))?;
        let mut parts = rest.trim_start().splitn(3, char::is_whitespace);
        let tail: usize = number(n, parts.next().unwrap_or(""))?;
        let head: usize = number(n, parts.next().unwrap_or(""))?;
        let p = permutation(n, g.degree(), parts.next().unwrap_or(""))?;
        let voltage = g
            .index_of(&p)
            .ok_or_else(|| Error::syntax(n, format!("voltage {} is not in the group", p.to_cycle_string())))?;
        if tail >= vertices || head >= vertices {
            return Err(Error::syntax(n, "edge endpoint out of range"));
        }
        edges.push(VoltageEdge { tail, head, voltage });
    }
    Ok(VoltageGraph::new(g, vertices, edges)?)
}

pub fn load_graph(path: &Path, g: &FiniteGroup) -> Result<VoltageGraph> {
    parse_graph(&read(path)?, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = "# S3\ndegree 3\n(0 1)\n(0 1 2)\nsubgroup A:\n(0 1)\nsubgroup B:\n(0 2) # second\n";

    #[test]
    fn group_round_trip() {
        let f = parse_group(S3).unwrap();
        assert_eq!(f.group.order(), 6);
        let (a, b) = f.pair(None, None).unwrap();
        assert_eq!((a.order(), b.order()), (2, 2));
        let text = group_to_text(&f.group, &[("A", a), ("B", b)]);
        let g = parse_group(&text).unwrap();
        assert_eq!(g.group.order(), 6);
        assert!(g.subgroup("B").unwrap().contains(g.group.index_of(&Permutation::parse_cycles(3, "(0 2)").unwrap()).unwrap()));
        assert!(matches!(f.subgroup("C"), Err(Error::UnknownSubgroup(_))));
    }

    #[test]
    fn group_errors_carry_lines() {
        assert!(matches!(parse_group("degree 3\n(0 3)\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_group("(0 1)\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_group("degree 3\nsubgroup :\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_group("degree 3\nsubgroup A:\n(0 1)\n"), Err(Error::Syntax { line: 2, .. })));
        assert_eq!(parse_group("degree 3\n(0 1)\nsubgroup A:\n(0 1)\n").unwrap().subgroups.len(), 1);
    }

    #[test]
    fn modules() {
        let g = parse_group(S3).unwrap().group;
        let sign = "field F5\ndim 1\n-1\n1\n";
        let ModuleFile::Modular(m) = parse_module(sign, &g).unwrap() else { panic!() };
        assert_eq!(m.ell(), 5);
        let q = "field Q\ndim 1\n-1\n2/2\n";
        assert!(matches!(parse_module(q, &g).unwrap(), ModuleFile::Rational(_)));
        assert!(parse_module("field F3\ndim 1\n-1\n1\n", &g).is_err());
        assert!(matches!(parse_module("field F4\ndim 1\n1\n1\n", &g), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_module("field Q\ndim 1\n1\n", &g), Err(Error::Syntax { .. })));
        // Not a representation: (0 1) must square to the identity.
        assert!(parse_module("field F5\ndim 1\n2\n1\n", &g).is_err());
    }

    #[test]
    fn graphs() {
        let g = parse_group(S3).unwrap().group;
        let x = parse_graph("vertices 2\nedge 0 1 ()\nedge 1 1 (0 1 2)\nedge 0 0 (0 1)\n", &g).unwrap();
        assert_eq!(x.edges().len(), 3);
        assert_eq!(x.degree(1), 3);
        assert!(matches!(parse_graph("vertices 2\nedge 0 2 ()\n", &g), Err(Error::Syntax { line: 2, .. })));
        assert!(parse_graph("vertices 2\n", &g).is_err());
        assert!(parse_graph("vertices 1\nedge 0 0 (0 1)(0 2)\n", &g).is_err());
    }
}
