//! Line-oriented text formats for algebra presentations and complexes of
//! projectives.
//!
//! Blank lines and `#` comments are skipped; every other line is one
//! directive. An algebra file:
//!
//! ```text
//! vertices: 1 2
//! arrow a: 1 -> 2
//! arrow b: 2 -> 1
//! relation: b*a
//! length_cap: 64
//! ```
//!
//! A complex file, over an already-loaded algebra:
//!
//! ```text
//! degree -1: P1
//! degree 0: P2
//! d(-1)[0,0] = b
//! ```
//!
//! `d(k)` is the differential leaving degree `k`; `[r,c]` addresses target
//! summand `r` (in degree `k+1`) and source summand `c` (in degree `k`).
//! Entries and relations are `+`-separated terms, each an optional rational
//! coefficient times a `*`-composed arrow path read left to right; `e_v`
//! names the idempotent at vertex `v`. Unstated entries are zero. The
//! printers emit the normalized form, and parsing a printed document gives
//! back the same value.

use silting::homotopy::ProjComplex;
use silting::linalg::rat;
use silting::quiver::{
    AlgElt, AlgebraPresentation, Arrow, PathAlgebra, Quiver, Relation, RelationTerm,
    DEFAULT_LENGTH_CAP,
};
use silting::Rat;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for SyntaxError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        line,
        col,
        msg: msg.into(),
    })
}

/// Column (1-based) of the first occurrence of `token` in `raw`.
fn col_of(raw: &str, token: &str) -> usize {
    raw.find(token).map_or(1, |i| i + 1)
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_arrow_name(s: &str) -> bool {
    is_name(s)
        && s.chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
}

/// Splits a term into its optional leading rational coefficient and the
/// `*`-separated tokens after it.
fn split_term<'a>(
    term: &'a str,
    line: usize,
    raw: &str,
) -> Result<(Rat, Vec<&'a str>), SyntaxError> {
    let mut toks = Vec::new();
    for t in term.split('*') {
        let t = t.trim();
        if t.is_empty() {
            return err(line, col_of(raw, term), "empty path segment (stray `*`?)");
        }
        toks.push(t);
    }
    if let Ok(c) = toks[0].parse::<Rat>() {
        if toks.len() == 1 {
            return err(
                line,
                col_of(raw, toks[0]),
                "a term needs a path after its coefficient",
            );
        }
        Ok((c, toks[1..].to_vec()))
    } else {
        Ok((rat(1), toks))
    }
}

fn lookup_vertex(
    vertices: &[String],
    name: &str,
    line: usize,
    raw: &str,
) -> Result<usize, SyntaxError> {
    vertices.iter().position(|v| v == name).ok_or(SyntaxError {
        line,
        col: col_of(raw, name),
        msg: format!("unknown vertex `{name}`"),
    })
}

pub fn parse_algebra(text: &str) -> Result<AlgebraPresentation, SyntaxError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut saw_vertices = false;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut length_cap = DEFAULT_LENGTH_CAP;
    for (ix, raw) in text.lines().enumerate() {
        let line = ix + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("vertices:") {
            if saw_vertices {
                return err(line, 1, "`vertices:` may only appear once");
            }
            saw_vertices = true;
            for name in rest.split_whitespace() {
                if !is_name(name) {
                    return err(
                        line,
                        col_of(raw, name),
                        format!("vertex name `{name}` may only use letters, digits and `_`"),
                    );
                }
                if vertices.iter().any(|v| v == name) {
                    return err(
                        line,
                        col_of(raw, name),
                        format!("vertex `{name}` listed twice"),
                    );
                }
                vertices.push(name.to_string());
            }
            if vertices.is_empty() {
                return err(line, 1, "`vertices:` needs at least one name");
            }
        } else if let Some(rest) = s.strip_prefix("arrow ") {
            let Some((name, ends)) = rest.split_once(':') else {
                return err(line, 1, "expected `arrow NAME: SOURCE -> TARGET`");
            };
            let name = name.trim();
            if !is_arrow_name(name) {
                return err(
                    line,
                    col_of(raw, name),
                    format!("arrow name `{name}` must start with a letter or `_`"),
                );
            }
            if vertices.iter().any(|v| format!("e_{v}") == name) {
                return err(
                    line,
                    col_of(raw, name),
                    format!("arrow name `{name}` collides with the idempotent notation"),
                );
            }
            if arrows.iter().any(|a| a.name == name) {
                return err(
                    line,
                    col_of(raw, name),
                    format!("arrow `{name}` declared twice"),
                );
            }
            let Some((src, tgt)) = ends.split_once("->") else {
                return err(line, 1, "expected `SOURCE -> TARGET` after the arrow name");
            };
            let source = lookup_vertex(&vertices, src.trim(), line, raw)?;
            let target = lookup_vertex(&vertices, tgt.trim(), line, raw)?;
            arrows.push(Arrow {
                name: name.to_string(),
                source,
                target,
            });
        } else if let Some(rest) = s.strip_prefix("relation:") {
            relations.push(parse_relation(rest, line, raw, &arrows)?);
        } else if let Some(rest) = s.strip_prefix("length_cap:") {
            let rest = rest.trim();
            match rest.parse::<usize>() {
                Ok(n) if n >= 1 => length_cap = n,
                _ => {
                    return err(
                        line,
                        col_of(raw, rest),
                        "length_cap must be a positive integer",
                    )
                }
            }
        } else {
            let head = s.split([':', ' ']).next().unwrap_or(s);
            return err(
                line,
                1,
                format!(
                    "unrecognized directive `{head}`: expected `vertices:`, `arrow`, \
                     `relation:` or `length_cap:`"
                ),
            );
        }
    }
    if !saw_vertices {
        return err(1, 1, "missing `vertices:` line");
    }
    Ok(AlgebraPresentation {
        quiver: Quiver { vertices, arrows },
        relations,
        length_cap,
    })
}

fn parse_relation(
    expr: &str,
    line: usize,
    raw: &str,
    arrows: &[Arrow],
) -> Result<Relation, SyntaxError> {
    let mut terms = Vec::new();
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return err(line, 1, "empty relation term (stray `+`?)");
        }
        let (coef, toks) = split_term(term, line, raw)?;
        let mut path = Vec::new();
        for t in toks {
            match arrows.iter().position(|a| a.name == t) {
                Some(i) => path.push(i),
                None => return err(line, col_of(raw, t), format!("unknown arrow `{t}`")),
            }
        }
        terms.push(RelationTerm { coef, arrows: path });
    }
    Ok(terms)
}

/// Normalized rendering of a presentation; `parse_algebra` inverts it.
pub fn print_algebra(pres: &AlgebraPresentation) -> String {
    let q = &pres.quiver;
    let mut out = format!("vertices: {}\n", q.vertices.join(" "));
    for a in &q.arrows {
        out += &format!(
            "arrow {}: {} -> {}\n",
            a.name, q.vertices[a.source], q.vertices[a.target]
        );
    }
    for rel in &pres.relations {
        let terms: Vec<String> = rel
            .iter()
            .map(|t| {
                let path = t
                    .arrows
                    .iter()
                    .map(|&i| q.arrows[i].name.as_str())
                    .collect::<Vec<_>>()
                    .join("*");
                if t.coef == rat(1) {
                    path
                } else {
                    format!("{}*{}", t.coef, path)
                }
            })
            .collect();
        out += &format!("relation: {}\n", terms.join(" + "));
    }
    out += &format!("length_cap: {}\n", pres.length_cap);
    out
}

pub fn parse_complex(text: &str, alg: &Arc<PathAlgebra>) -> Result<ProjComplex, SyntaxError> {
    let q = &alg.pres.quiver;
    let mut degrees: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    // (line, raw line, degree, row, col, entry expression)
    let mut raw_entries: Vec<(usize, String, i64, usize, usize, String)> = Vec::new();
    for (ix, raw) in text.lines().enumerate() {
        let line = ix + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        if let Some(rest) = s.strip_prefix("degree ") {
            let Some((deg, summands)) = rest.split_once(':') else {
                return err(line, 1, "expected `degree N: P1 P2 ...`");
            };
            let deg = deg.trim();
            let d: i64 = match deg.parse() {
                Ok(d) => d,
                Err(_) => {
                    return err(
                        line,
                        col_of(raw, deg),
                        format!("`{deg}` is not an integer degree"),
                    )
                }
            };
            if degrees.contains_key(&d) {
                return err(line, 1, format!("degree {d} given twice"));
            }
            let mut vs = Vec::new();
            for p in summands.split_whitespace() {
                let Some(name) = p.strip_prefix('P') else {
                    return err(
                        line,
                        col_of(raw, p),
                        format!("summand `{p}` must be `P` followed by a vertex name"),
                    );
                };
                match q.vertices.iter().position(|v| v == name) {
                    Some(v) => vs.push(v),
                    None => {
                        return err(
                            line,
                            col_of(raw, p),
                            format!("unknown projective `{p}`: the algebra has no vertex `{name}`"),
                        )
                    }
                }
            }
            degrees.insert(d, vs);
        } else if let Some(rest) = s.strip_prefix("d(") {
            let Some((deg, after)) = rest.split_once(')') else {
                return err(line, 1, "expected `d(N)[row,col] = ENTRY`");
            };
            let deg = deg.trim();
            let d: i64 = match deg.parse() {
                Ok(d) => d,
                Err(_) => {
                    return err(
                        line,
                        col_of(raw, deg),
                        format!("`{deg}` is not an integer degree"),
                    )
                }
            };
            let Some(idx_and_rest) = after.trim_start().strip_prefix('[') else {
                return err(line, 1, "expected `[row,col]` after `d(N)`");
            };
            let Some((idx, rest)) = idx_and_rest.split_once(']') else {
                return err(line, 1, "expected `]` closing the entry address");
            };
            let Some((r, c)) = idx.split_once(',') else {
                return err(line, col_of(raw, idx), "entry address must be `row,col`");
            };
            let (r, c) = (r.trim(), c.trim());
            let row: usize = match r.parse() {
                Ok(n) => n,
                Err(_) => return err(line, col_of(raw, r), format!("`{r}` is not a row index")),
            };
            let col: usize = match c.parse() {
                Ok(n) => n,
                Err(_) => return err(line, col_of(raw, c), format!("`{c}` is not a column index")),
            };
            let Some(expr) = rest.trim_start().strip_prefix('=') else {
                return err(line, 1, "expected `=` after the entry address");
            };
            raw_entries.push((line, raw.to_string(), d, row, col, expr.trim().to_string()));
        } else {
            let head = s.split([':', ' ', '(']).next().unwrap_or(s);
            return err(
                line,
                1,
                format!("unrecognized directive `{head}`: expected `degree` or `d(N)[r,c] = ...`"),
            );
        }
    }
    let (low, high) = match (degrees.keys().next(), degrees.keys().last()) {
        (Some(&l), Some(&h)) => (l, h),
        _ => return err(1, 1, "a complex needs at least one `degree` line"),
    };
    let terms: Vec<Vec<usize>> = (low..=high)
        .map(|d| degrees.get(&d).cloned().unwrap_or_default())
        .collect();
    let mut diffs: Vec<Vec<Vec<AlgElt>>> = (0..terms.len().saturating_sub(1))
        .map(|k| vec![vec![alg.zero(); terms[k].len()]; terms[k + 1].len()])
        .collect();
    let mut seen: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    for (line, raw, d, r, c, expr) in raw_entries {
        if d < low || d >= high {
            return err(
                line,
                1,
                format!("no differential leaves degree {d}: the complex lives in {low}..={high}"),
            );
        }
        let k = (d - low) as usize;
        let (rows, cols) = (terms[k + 1].len(), terms[k].len());
        if r >= rows {
            return err(
                line,
                1,
                format!(
                    "row {r} out of range: degree {} has {rows} summand(s)",
                    d + 1
                ),
            );
        }
        if c >= cols {
            return err(
                line,
                1,
                format!("column {c} out of range: degree {d} has {cols} summand(s)"),
            );
        }
        if !seen.insert((d, r, c)) {
            return err(line, 1, format!("entry d({d})[{r},{c}] given twice"));
        }
        let x = parse_entry(&expr, line, &raw, alg)?;
        let (src, tgt) = (terms[k][c], terms[k + 1][r]);
        if !alg.elt_in_hom(src, tgt, &x) {
            return err(
                line,
                col_of(&raw, &expr),
                format!(
                    "entry must lie in Hom(P{}, P{}): a combination of paths running from \
                     vertex {} to vertex {}",
                    q.vertices[src], q.vertices[tgt], q.vertices[tgt], q.vertices[src]
                ),
            );
        }
        diffs[k][r][c] = x;
    }
    ProjComplex::new(alg.clone(), low, terms, diffs).map_err(|msg| SyntaxError {
        line: 1,
        col: 1,
        msg,
    })
}

fn parse_entry(
    expr: &str,
    line: usize,
    raw: &str,
    alg: &Arc<PathAlgebra>,
) -> Result<AlgElt, SyntaxError> {
    if expr == "0" {
        return Ok(alg.zero());
    }
    let q = &alg.pres.quiver;
    let mut acc = alg.zero();
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return err(line, col_of(raw, expr), "empty term (stray `+`?)");
        }
        let (coef, toks) = split_term(term, line, raw)?;
        let base: AlgElt = if toks.len() == 1 && !q.arrows.iter().any(|a| a.name == toks[0]) {
            let Some(vname) = toks[0].strip_prefix("e_") else {
                return err(
                    line,
                    col_of(raw, toks[0]),
                    format!("unknown arrow `{}`", toks[0]),
                );
            };
            match q.vertices.iter().position(|v| v == vname) {
                Some(v) => alg.idempotent(v),
                None => {
                    return err(
                        line,
                        col_of(raw, toks[0]),
                        format!(
                            "unknown idempotent `{}`: the algebra has no vertex `{vname}`",
                            toks[0]
                        ),
                    )
                }
            }
        } else {
            let mut path = Vec::new();
            for t in &toks {
                match q.arrows.iter().position(|a| a.name == *t) {
                    Some(i) => path.push(i),
                    None => return err(line, col_of(raw, t), format!("unknown arrow `{t}`")),
                }
            }
            match alg.path_elt(&path) {
                Ok(x) => x,
                Err(e) => return err(line, col_of(raw, term), e.to_string()),
            }
        };
        for (a, b) in acc.iter_mut().zip(&base) {
            *a += &coef * b;
        }
    }
    Ok(acc)
}

/// Normalized rendering of a complex; `parse_complex` inverts it. Zero
/// entries are left unstated, empty degrees keep their `degree` line.
pub fn print_complex(c: &ProjComplex) -> String {
    let q = &c.alg.pres.quiver;
    let mut out = String::new();
    for (k, t) in c.terms.iter().enumerate() {
        let d = c.low + k as i64;
        out += &format!("degree {d}:");
        for &v in t {
            out += &format!(" P{}", q.vertices[v]);
        }
        out.push('\n');
    }
    for (k, m) in c.diffs.iter().enumerate() {
        let d = c.low + k as i64;
        for (r, row) in m.iter().enumerate() {
            for (cix, x) in row.iter().enumerate() {
                if x.iter().all(|v| *v == rat(0)) {
                    continue;
                }
                out += &format!("d({d})[{r},{cix}] = {}\n", c.alg.elt_to_string(x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use silting::fixtures::{family_r, lambda0};
    use silting::homotopy::complexes_isomorphic;
    use silting::linalg::ratq;

    const TWO_VERTEX: &str = "vertices: 1 2\n\
                              arrow a: 1 -> 2\n\
                              arrow b: 2 -> 1\n\
                              relation: b*a\n\
                              length_cap: 64\n";

    #[test]
    fn two_vertex_file_builds_to_dimension_five() {
        let pres = parse_algebra(TWO_VERTEX).expect("parses");
        let alg = PathAlgebra::build(pres).expect("builds");
        assert_eq!(alg.dim, 5);
        let mut by_len = BTreeMap::new();
        for p in &alg.basis {
            *by_len.entry(p.len()).or_insert(0usize) += 1;
        }
        assert_eq!(by_len, BTreeMap::from([(0, 2), (1, 2), (2, 1)]));
    }

    #[test]
    fn relation_free_file_is_the_three_dimensional_algebra() {
        let pres = parse_algebra("vertices: 1 2\narrow a: 1 -> 2\n").expect("parses");
        assert_eq!(pres.length_cap, DEFAULT_LENGTH_CAP);
        let alg = PathAlgebra::build(pres).expect("builds");
        assert_eq!(alg.dim, 3);
    }

    #[test]
    fn malformed_arrow_line_reports_its_position() {
        let e = parse_algebra("vertices: 1 2\narrow a 1 -> 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_algebra("vertices: 1 2\narrow a: 1 -> 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("unknown vertex"), "{}", e.msg);
    }

    #[test]
    fn relation_terms_carry_their_coefficients() {
        let pres = parse_algebra(
            "vertices: 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation: 2*b*a + 1/3*a*b\n",
        )
        .expect("parses");
        let rel = &pres.relations[0];
        assert_eq!(rel[0].coef, rat(2));
        assert_eq!(rel[0].arrows, vec![1, 0]);
        assert_eq!(rel[1].coef, ratq(1, 3));
        assert_eq!(rel[1].arrows, vec![0, 1]);
    }

    #[test]
    fn printed_presentations_parse_back_identically() {
        let pres = parse_algebra(TWO_VERTEX).expect("parses");
        let printed = print_algebra(&pres);
        assert_eq!(printed, TWO_VERTEX);
        let again = print_algebra(&parse_algebra(&printed).expect("reparses"));
        assert_eq!(again, printed);
    }

    #[test]
    fn chain_file_matches_the_programmatic_constructor() {
        let alg = lambda0();
        let doc = "degree -1: P1\ndegree 0: P2\nd(-1)[0,0] = b\n";
        let parsed = parse_complex(doc, &alg).expect("parses");
        let built = family_r(&alg, 1);
        assert!(complexes_isomorphic(&parsed, &built));
        assert_eq!(parsed, built);
    }

    #[test]
    fn stalk_file_parses_to_the_stalk() {
        let alg = lambda0();
        let parsed = parse_complex("degree 2: P1\n", &alg).expect("parses");
        assert_eq!(parsed, ProjComplex::stalk_proj(&alg, 2, 0));
    }

    #[test]
    fn unstated_entries_are_zero_and_gap_degrees_are_empty() {
        let alg = lambda0();
        let parsed = parse_complex("degree -2: P1\ndegree 0: P1\n", &alg).expect("parses");
        let expected =
            ProjComplex::stalk_proj(&alg, -2, 0).direct_sum(&ProjComplex::stalk_proj(&alg, 0, 0));
        assert_eq!(parsed, expected);
    }

    #[test]
    fn non_composable_entry_is_a_parse_error() {
        let alg = lambda0();
        let doc = "degree -1: P2\ndegree 0: P1\nd(-1)[0,0] = a*a\n";
        let e = parse_complex(doc, &alg).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("composable"), "{}", e.msg);
    }

    #[test]
    fn unknown_projective_is_rejected() {
        let alg = lambda0();
        let e = parse_complex("degree 0: P3\n", &alg).unwrap_err();
        assert!(e.msg.contains("unknown projective"), "{}", e.msg);
    }

    #[test]
    fn entry_outside_its_hom_space_is_rejected() {
        let alg = lambda0();
        let doc = "degree -1: P1\ndegree 0: P1\nd(-1)[0,0] = a\n";
        let e = parse_complex(doc, &alg).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("must lie in Hom"), "{}", e.msg);
    }

    #[test]
    fn non_square_zero_document_is_rejected() {
        let alg = lambda0();
        // The maps compose to left multiplication by the nonzero loop a*b,
        // so d² ≠ 0.
        let doc = "degree -2: P1\ndegree -1: P2\ndegree 0: P1\n\
                   d(-2)[0,0] = b\nd(-1)[0,0] = a\n";
        let e = parse_complex(doc, &alg).unwrap_err();
        assert!(e.msg.contains("d²"), "{}", e.msg);
    }

    #[test]
    fn parsing_normalizes_and_printing_stabilizes() {
        let alg = lambda0();
        // Messy but legal: comments, spacing, a redundant zero entry, a term
        // that collapses under the relations, and a rational coefficient.
        let doc = "# a chain with noise\n\n\
                   degree  -1 :  P2\n\
                   degree 0: P1\n\
                   d( -1 )[ 0 , 0 ] = 1/2*a + a*b*a\n";
        let p1 = parse_complex(doc, &alg).expect("parses");
        let n1 = print_complex(&p1);
        assert_eq!(n1, "degree -1: P2\ndegree 0: P1\nd(-1)[0,0] = 1/2*a\n");
        let p2 = parse_complex(&n1, &alg).expect("reparses");
        assert_eq!(p1, p2);
        assert_eq!(print_complex(&p2), n1);
    }

    #[test]
    fn idempotent_entries_round_trip() {
        let alg = lambda0();
        let doc = "degree 0: P1\ndegree 1: P1\nd(0)[0,0] = e_1\n";
        let p = parse_complex(doc, &alg).expect("parses");
        assert_eq!(print_complex(&p), doc);
    }
}
