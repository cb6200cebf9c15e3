//! Plain-text file formats.
//!
//! Facet files: optional header `n <int>`, then one facet per line as
//! space-separated positive integers. `#` starts a comment line. A header with
//! no facets is the empty complex `{∅}`; a line `void` marks the void complex.
//!
//! Poset files: `elements <id>..` (may repeat), `bottom <id>`, `cover <a> <b>`.
//!
//! Module files: `n <int>`, `comp <F> <dim>` per nonzero component and
//! `map <F> <j> <rows>` per nonzero multiplication map, where `F` is
//! comma-joined vertices or `-` for `∅`, and `<rows>` separates rows by `;`
//! and entries by `,` (e.g. `1;1` is a 2x1 column).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::homalg::SparseMatrix;
use crate::sposet::{RawPoset, SimplicialPoset};
use crate::sqfree::SquarefreeModule;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{tok}`")))
}

fn parse_vertex(line: usize, tok: &str) -> Result<u32> {
    match tok.parse::<u32>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::parse(line, format!("expected a positive vertex, got `{tok}`"))),
    }
}

/// `1,3,4` or `-` for the empty set.
pub fn parse_face_token(line: usize, tok: &str) -> Result<Face> {
    if tok == "-" {
        return Ok(Face::EMPTY);
    }
    let mut f = Face::EMPTY;
    for part in tok.split(',') {
        let v = parse_vertex(line, part)?;
        if v as usize > crate::face::MAX_VERTICES {
            return Err(Error::parse(line, format!("vertex {v} is too large")));
        }
        f = f.with(v);
    }
    Ok(f)
}

pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut header: Option<usize> = None;
    let mut void = false;
    let mut facets: Vec<Face> = Vec::new();
    for (no, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        let first = toks.next().expect("nonempty line");
        if first == "n" {
            if header.is_some() || !facets.is_empty() {
                return Err(Error::parse(no, "header `n` must come first and only once"));
            }
            let n = toks.next().ok_or_else(|| Error::parse(no, "missing vertex count"))?;
            header = Some(parse_usize(no, n)?);
            if toks.next().is_some() {
                return Err(Error::parse(no, "trailing tokens after header"));
            }
            continue;
        }
        if first == "void" {
            void = true;
            continue;
        }
        let mut f = Face::EMPTY;
        for tok in std::iter::once(first).chain(toks) {
            let v = parse_vertex(no, tok)?;
            if v as usize > crate::face::MAX_VERTICES {
                return Err(Error::parse(no, format!("vertex {v} is too large")));
            }
            f = f.with(v);
        }
        facets.push(f);
    }
    let n = header.unwrap_or_else(|| facets.iter().map(|f| f.max_vertex()).max().unwrap_or(0) as usize);
    if void {
        if !facets.is_empty() {
            return Err(Error::parse(0, "a void complex cannot list facets"));
        }
        return Ok(SimplicialComplex::void(n));
    }
    SimplicialComplex::new(n, facets).map_err(|e| match e {
        Error::VertexOutOfRange { vertex, n } => {
            Error::parse(0, format!("vertex {vertex} exceeds the declared count {n}"))
        }
        other => other,
    })
}

pub fn write_facets(complex: &SimplicialComplex) -> String {
    let mut s = format!("n {}\n", complex.vertex_count());
    if complex.is_void() {
        s.push_str("void\n");
        return s;
    }
    for f in complex.facets() {
        let verts: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", verts.join(" "));
    }
    s
}

pub fn parse_poset(text: &str) -> Result<RawPoset> {
    let mut raw = RawPoset::default();
    let mut bottom = None;
    for (no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "elements" => raw.elements.extend(toks[1..].iter().map(|s| s.to_string())),
            "bottom" => {
                if toks.len() != 2 {
                    return Err(Error::parse(no, "expected `bottom <id>`"));
                }
                if bottom.is_some() {
                    return Err(Error::parse(no, "bottom given twice"));
                }
                bottom = Some(toks[1].to_string());
            }
            "cover" => {
                if toks.len() != 3 {
                    return Err(Error::parse(no, "expected `cover <lower> <upper>`"));
                }
                raw.covers.push((toks[1].to_string(), toks[2].to_string()));
            }
            other => return Err(Error::parse(no, format!("unknown directive `{other}`"))),
        }
    }
    raw.bottom = bottom.ok_or_else(|| Error::parse(0, "missing `bottom` line"))?;
    Ok(raw)
}

pub fn write_poset(p: &SimplicialPoset) -> String {
    let raw = p.to_raw();
    let mut s = format!("elements {}\nbottom {}\n", raw.elements.join(" "), raw.bottom);
    for (a, b) in &raw.covers {
        let _ = writeln!(s, "cover {a} {b}");
    }
    s
}

fn parse_matrix(no: usize, spec: &str) -> Result<Vec<Vec<i64>>> {
    spec.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::parse(no, format!("bad matrix entry `{e}`")))
                })
                .collect()
        })
        .collect()
}

pub fn parse_module(text: &str) -> Result<SquarefreeModule> {
    let mut n = None;
    let mut dims: BTreeMap<Face, usize> = BTreeMap::new();
    let mut pending: Vec<(usize, Face, u32, Vec<Vec<i64>>)> = Vec::new();
    for (no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "n" if toks.len() == 2 => n = Some(parse_usize(no, toks[1])?),
            "comp" if toks.len() == 3 => {
                let f = parse_face_token(no, toks[1])?;
                if dims.insert(f, parse_usize(no, toks[2])?).is_some() {
                    return Err(Error::parse(no, format!("component {f} given twice")));
                }
            }
            "map" if toks.len() >= 4 => {
                let f = parse_face_token(no, toks[1])?;
                let j = parse_vertex(no, toks[2])?;
                pending.push((no, f, j, parse_matrix(no, &toks[3..].concat())?));
            }
            other => return Err(Error::parse(no, format!("malformed line starting with `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `n` line"))?;
    let mut maps = BTreeMap::new();
    for (no, f, j, rows) in pending {
        let expected_rows = dims.get(&f.with(j)).copied().unwrap_or(0);
        let expected_cols = dims.get(&f).copied().unwrap_or(0);
        if rows.len() != expected_rows || rows.iter().any(|r| r.len() != expected_cols) {
            return Err(Error::parse(
                no,
                format!("map x_{j} on {f} must be {expected_rows}x{expected_cols}"),
            ));
        }
        maps.insert((f, j), SparseMatrix::from_dense(&rows));
    }
    SquarefreeModule::new(n, dims, maps)
}

pub fn write_module(m: &SquarefreeModule) -> String {
    let mut s = format!("n {}\n", m.n());
    for (f, d) in m.components() {
        let _ = writeln!(s, "comp {f} {d}");
    }
    for ((f, j), mat) in m.maps() {
        let rows: Vec<String> = mat
            .to_dense()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let _ = writeln!(s, "map {f} {j} {}", rows.join(";"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sposet::{glued_simplices, validate};
    use crate::sqfree::{from_complex, omega_module};

    #[test]
    fn facet_files() {
        let c = parse_facets("# a 4-cycle\nn 4\n1 2\n2 3\n3 4\n4 1\n").unwrap();
        assert_eq!(c.facets().len(), 4);
        assert_eq!(parse_facets(&write_facets(&c)).unwrap(), c);
        let e = parse_facets("n 3\n").unwrap();
        assert_eq!(e, SimplicialComplex::empty(3));
        let v = parse_facets("n 2\nvoid\n").unwrap();
        assert!(v.is_void());
        assert_eq!(parse_facets(&write_facets(&v)).unwrap(), v);
        let headerless = parse_facets("1 2\n2 5\n").unwrap();
        assert_eq!(headerless.vertex_count(), 5);
        assert!(matches!(parse_facets("n 2\n1 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_facets("1 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_facets("0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn poset_files() {
        let p = glued_simplices(1, 2).unwrap();
        let text = write_poset(&p);
        assert!(text.starts_with("elements - 1 2 t1 t2\nbottom -\n"));
        assert_eq!(validate(&parse_poset(&text).unwrap()).unwrap(), p);
        assert!(matches!(parse_poset("elements a\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poset("elements a\nbottom a\nfoo\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn module_files() {
        let c = parse_facets("n 3\n1 2\n2 3\n").unwrap();
        let m = from_complex(&c);
        assert_eq!(parse_module(&write_module(&m)).unwrap(), m);
        let w = omega_module(3, Face::from_vertices([1, 3]));
        assert_eq!(write_module(&w), "n 3\ncomp 1,3 1\n");
        let col = parse_module("n 2\ncomp 1 1\ncomp 1,2 2\nmap 1 2 1;1\n").unwrap();
        assert_eq!(col.map(Face::singleton(1), 2).to_dense(), vec![vec![1], vec![1]]);
        assert!(matches!(
            parse_module("n 2\ncomp 1 1\ncomp 1,2 2\nmap 1 2 1,1\n"),
            Err(Error::Parse { line: 4, .. })
        ));
    }
}
