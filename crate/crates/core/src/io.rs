//! Line-based text formats: GGF graphs, cover files, edge lists and covering maps.

use std::fmt::Write as _;

use crate::cover::CoverCertificate;
use crate::error::{parse_err, Error, Result};
use crate::graph::GeneralizedGraph;

/// Canonical GGF text of a graph.
pub fn write_ggf(g: &GeneralizedGraph) -> String {
    let mut out = String::with_capacity(16 * g.n_darts() + 64);
    writeln!(out, "ggf 1").unwrap();
    writeln!(out, "vertices {}", g.n_vertices()).unwrap();
    writeln!(out, "darts {}", g.n_darts()).unwrap();
    out.push_str("incidence");
    for v in g.incidence() {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for (x, y) in g.orbits() {
        if x == y {
            writeln!(out, "semi {x}").unwrap();
        } else {
            writeln!(out, "pair {x} {y}").unwrap();
        }
    }
    out
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, Vec<&'a str>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| parse_err(0, format!("missing `{key}` line")))?;
    let mut words = line.split_ascii_whitespace();
    if words.next() != Some(key) {
        return Err(parse_err(no, format!("expected `{key}`")));
    }
    Ok((no, words.collect()))
}

fn number(no: usize, word: &str) -> Result<usize> {
    word.parse().map_err(|_| parse_err(no, format!("bad number `{word}`")))
}

fn single(no: usize, words: &[&str]) -> Result<usize> {
    match words {
        [w] => number(no, w),
        _ => Err(parse_err(no, "expected exactly one value")),
    }
}

/// Parses GGF text, rejecting duplicate, missing or non-involutive pairings.
pub fn read_ggf(text: &str) -> Result<GeneralizedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (no, words) = header(&mut lines, "ggf")?;
    if words != ["1"] {
        return Err(parse_err(no, "unsupported ggf version"));
    }
    let (no, words) = header(&mut lines, "vertices")?;
    let n = single(no, &words)?;
    let (no, words) = header(&mut lines, "darts")?;
    let m = single(no, &words)?;
    let (no, words) = header(&mut lines, "incidence")?;
    if words.len() != m {
        return Err(parse_err(
            no,
            format!("expected {m} incidence entries, found {}", words.len()),
        ));
    }
    let incidence = words
        .iter()
        .map(|w| {
            let v = number(no, w)?;
            if v >= n {
                return Err(parse_err(no, format!("vertex {v} out of range")));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairing = vec![usize::MAX; m];
    for (no, line) in lines {
        let words: Vec<&str> = line.split_ascii_whitespace().collect();
        let (x, y) = match words.as_slice() {
            ["pair", a, b] => {
                let (x, y) = (number(no, a)?, number(no, b)?);
                if x >= y {
                    return Err(parse_err(no, "pair must list the smaller dart first"));
                }
                (x, y)
            }
            ["semi", a] => {
                let x = number(no, a)?;
                (x, x)
            }
            _ => return Err(parse_err(no, format!("unexpected line `{line}`"))),
        };
        if y >= m {
            return Err(parse_err(no, format!("dart {y} out of range")));
        }
        if pairing[x] != usize::MAX || pairing[y] != usize::MAX {
            return Err(parse_err(no, "dart listed twice"));
        }
        pairing[x] = y;
        pairing[y] = x;
    }
    if let Some(x) = pairing.iter().position(|&p| p == usize::MAX) {
        return Err(parse_err(0, format!("dart {x} has no pair or semi line")));
    }
    GeneralizedGraph::from_darts(n, incidence, pairing)
}

/// Cover file: `cover d=<d> r=<r>` then the sorted subset on one line.
pub fn write_cover(c: &CoverCertificate) -> String {
    let ids: Vec<String> = c.subset().iter().map(|v| v.to_string()).collect();
    format!("cover d={} r={}\n{}\n", c.d(), c.r(), ids.join(" "))
}

pub fn read_cover(text: &str) -> Result<CoverCertificate> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| parse_err(1, "empty cover file"))?;
    let words: Vec<&str> = head.split_ascii_whitespace().collect();
    let (d, r) = match words.as_slice() {
        ["cover", d, r] => {
            let d = d.strip_prefix("d=").ok_or_else(|| parse_err(1, "expected d=<d>"))?;
            let r = r.strip_prefix("r=").ok_or_else(|| parse_err(1, "expected r=<r>"))?;
            (number(1, d)?, number(1, r)?)
        }
        _ => return Err(parse_err(1, "expected `cover d=<d> r=<r>`")),
    };
    let subset = lines
        .next()
        .unwrap_or("")
        .split_ascii_whitespace()
        .map(|w| number(2, w))
        .collect::<Result<Vec<_>>>()?;
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(parse_err(3, "trailing content"));
    }
    CoverCertificate::new(subset, r, d).map_err(|e| parse_err(2, e.to_string()))
}

/// Whitespace-separated vertex ids on any number of lines, sorted and deduplicated.
pub fn read_vertex_set(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for w in line.split_ascii_whitespace() {
            out.push(number(i + 1, w)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `edges` export of a simple graph: one sorted `u v` line per edge with `u < v`.
pub fn write_edges(g: &GeneralizedGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::NotSimple("edge-list export needs a simple graph"));
    }
    let mut out = String::new();
    for (u, v) in g.edge_list() {
        writeln!(out, "{u} {v}").unwrap();
    }
    Ok(out)
}

/// Reads an `edges` file; the vertex count is one more than the largest id unless given.
pub fn read_edges(text: &str, n: Option<usize>) -> Result<GeneralizedGraph> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let words: Vec<&str> = line.split_ascii_whitespace().collect();
        match words.as_slice() {
            [] => {}
            [u, v] => {
                let (u, v) = (number(i + 1, u)?, number(i + 1, v)?);
                if u == v {
                    return Err(parse_err(i + 1, "self-loop in edge list"));
                }
                edges.push((u, v));
            }
            _ => return Err(parse_err(i + 1, "expected `u v`")),
        }
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    GeneralizedGraph::from_edges(n, &edges, &[], &[])
}

/// Covering map file: `covmap <m_source>` then `dartmap <t_0> ... <t_{m-1}>`.
pub fn write_covmap(dart_map: &[usize]) -> String {
    let mut out = format!("covmap {}\ndartmap", dart_map.len());
    for y in dart_map {
        write!(out, " {y}").unwrap();
    }
    out.push('\n');
    out
}

pub fn read_covmap(text: &str) -> Result<Vec<usize>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (no, words) = header(&mut lines, "covmap")?;
    let m = single(no, &words)?;
    let (no, words) = header(&mut lines, "dartmap")?;
    if words.len() != m {
        return Err(parse_err(no, format!("expected {m} entries, found {}", words.len())));
    }
    words.iter().map(|w| number(no, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ggf_text_is_canonical() {
        let g = GeneralizedGraph::from_edges(2, &[(0, 1)], &[1], &[0]).unwrap();
        let text = write_ggf(&g);
        assert_eq!(
            text,
            "ggf 1\nvertices 2\ndarts 5\nincidence 0 1 1 1 0\npair 0 1\npair 2 3\nsemi 4\n"
        );
        assert_eq!(read_ggf(&text).unwrap(), g);
    }

    #[test]
    fn ggf_rejects_bad_input() {
        let base = "ggf 1\nvertices 2\ndarts 2\nincidence 0 1\n";
        assert!(read_ggf(&format!("{base}pair 0 1\n")).is_ok());
        // gap
        assert!(read_ggf(&format!("{base}semi 0\n")).is_err());
        // duplicate
        assert!(read_ggf(&format!("{base}pair 0 1\nsemi 1\n")).is_err());
        // reversed pair
        assert!(read_ggf(&format!("{base}pair 1 0\n")).is_err());
        // out of range
        assert!(read_ggf(&format!("{base}pair 0 2\n")).is_err());
        assert!(read_ggf("ggf 1\nvertices 1\ndarts 1\nincidence 1\nsemi 0\n").is_err());
        assert!(read_ggf("ggf 2\n").is_err());
        assert!(read_ggf("").is_err());
    }

    #[test]
    fn cover_file() {
        let c = CoverCertificate::new(vec![7, 8, 9], 3, 7).unwrap();
        let text = write_cover(&c);
        assert_eq!(text, "cover d=7 r=3\n7 8 9\n");
        assert_eq!(read_cover(&text).unwrap(), c);
        assert!(read_cover("cover d=3 r=4\n0\n").is_err());
        assert!(read_cover("cover 3 1\n0\n").is_err());
        assert!(read_cover("cover d=3 r=1\n2 1\n").is_err());
    }

    #[test]
    fn edges_file() {
        let g = GeneralizedGraph::from_edges(3, &[(2, 1), (0, 1)], &[], &[]).unwrap();
        let text = write_edges(&g).unwrap();
        assert_eq!(text, "0 1\n1 2\n");
        let h = read_edges(&text, None).unwrap();
        assert_eq!(h.edge_list(), g.edge_list());
        let multi = GeneralizedGraph::from_edges(2, &[(0, 1), (0, 1)], &[], &[]).unwrap();
        assert!(write_edges(&multi).is_err());
    }

    #[test]
    fn covmap_file() {
        let text = write_covmap(&[2, 0, 1]);
        assert_eq!(text, "covmap 3\ndartmap 2 0 1\n");
        assert_eq!(read_covmap(&text).unwrap(), vec![2, 0, 1]);
        assert!(read_covmap("covmap 2\ndartmap 1\n").is_err());
    }
}
