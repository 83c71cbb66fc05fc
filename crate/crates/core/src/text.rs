//! Parsers for the plain-text input formats. Every error carries a 1-based
//! line and column. `#` starts a comment that runs to the end of the line.

use crate::ci::{CiSpace, CiStatement, GroundSet, Imset, Permutation, Subset, MAX_N, MIN_N};
use crate::error::{Error, Result};
use crate::geometry::{HPolytope, RankTestPartition};
use crate::imset::NonNegCombination;
use crate::markov::MarkovMove;
use crate::rational::Rational;
use crate::semigraphoid::StatementSet;

struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Tokens split on whitespace and commas, with positions.
fn tokens_of_line(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let body = strip_comment(line);
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in body.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push(Token {
                    line: line_no,
                    column: body[..s].chars().count() + 1,
                    text: &body[s..i],
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            line: line_no,
            column: body[..s].chars().count() + 1,
            text: &body[s..],
        });
    }
    out
}

fn tokens(text: &str) -> Vec<Token<'_>> {
    text.lines()
        .enumerate()
        .flat_map(|(i, l)| tokens_of_line(i + 1, l))
        .collect()
}

fn check_n(n: usize, line: usize, column: usize) -> Result<()> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::parse(line, column, format!("ground set size {n} out of range")));
    }
    Ok(())
}

fn statement_at(tok: &Token<'_>) -> Result<CiStatement> {
    tok.text
        .parse()
        .map_err(|e: Error| Error::parse(tok.line, tok.column, format!("`{}`: {e}", tok.text)))
}

/// Ground-set size implied by the largest element mentioned, at least 2.
fn inferred_n(max_element: u8) -> usize {
    (max_element as usize).max(MIN_N)
}

/// A statement-set file: `i.j|K` tokens separated by whitespace or commas.
/// `n` defaults to the largest element mentioned.
pub fn parse_statement_set(text: &str, n: Option<usize>) -> Result<StatementSet> {
    let parsed: Vec<(Token<'_>, CiStatement)> = tokens(text)
        .into_iter()
        .map(|t| statement_at(&t).map(|s| (t, s)))
        .collect::<Result<_>>()?;
    let n = n.unwrap_or_else(|| inferred_n(parsed.iter().map(|(_, s)| s.max_element()).max().unwrap_or(0)));
    check_n(n, 1, 1)?;
    let space = CiSpace::get(n)?;
    let mut set = StatementSet::empty(n)?;
    for (t, s) in &parsed {
        let idx = space
            .index_of(s)
            .ok_or_else(|| Error::parse(t.line, t.column, format!("{s} is not a statement over [{n}]")))?;
        set.insert(idx);
    }
    Ok(set)
}

fn subset_token(tok: &Token<'_>, text: &str) -> Result<Subset> {
    if text == "0" || text == "∅" {
        return Ok(Subset::EMPTY);
    }
    let mut elems = Vec::new();
    for (k, ch) in text.chars().enumerate() {
        let d = ch
            .to_digit(10)
            .filter(|&d| d >= 1 && d as usize <= MAX_N)
            .ok_or_else(|| Error::parse(tok.line, tok.column + k, format!("bad subset element `{ch}`")))?;
        if elems.contains(&(d as u8)) {
            return Err(Error::parse(tok.line, tok.column + k, format!("repeated element {d}")));
        }
        elems.push(d as u8);
    }
    Ok(Subset::from_elements(elems))
}

/// An imset file: one `<coeff> <subset>` term per line, `0` for the empty
/// set; repeated subsets add up.
pub fn parse_imset(text: &str, n: Option<usize>) -> Result<Imset> {
    let mut terms = Vec::new();
    let mut max_el = 0u8;
    for (i, line) in text.lines().enumerate() {
        let toks = tokens_of_line(i + 1, line);
        if toks.is_empty() {
            continue;
        }
        if toks.len() != 2 {
            let t = toks.get(2).unwrap_or(&toks[0]);
            return Err(Error::parse(t.line, t.column, "expected `<coefficient> <subset>`"));
        }
        let coeff: i64 = toks[0]
            .text
            .parse()
            .map_err(|_| Error::parse(toks[0].line, toks[0].column, format!("bad coefficient `{}`", toks[0].text)))?;
        let s = subset_token(&toks[1], toks[1].text)?;
        max_el = max_el.max(s.elements().max().unwrap_or(0));
        terms.push((coeff, s, toks[1].line, toks[1].column));
    }
    let n = n.unwrap_or_else(|| inferred_n(max_el));
    check_n(n, 1, 1)?;
    let ground = GroundSet::new(n)?;
    for &(_, s, line, column) in &terms {
        if !s.is_subset_of(ground.full()) {
            return Err(Error::parse(line, column, format!("subset {s} is not inside [{n}]")));
        }
    }
    let pairs: Vec<(i64, Subset)> = terms.iter().map(|&(c, s, _, _)| (c, s)).collect();
    Ok(Imset::from_terms(ground, &pairs))
}

/// Statement tokens with optional `^mult`, as `(statement, multiplicity)`.
fn monomial(toks: &[Token<'_>]) -> Result<Vec<Term>> {
    toks.iter()
        .map(|t| {
            let (st, mult) = match t.text.split_once('^') {
                Some((s, m)) => {
                    let mult = m.parse::<u64>().ok().filter(|&m| m > 0).ok_or_else(|| {
                        Error::parse(t.line, t.column + s.chars().count() + 1, format!("bad multiplicity `{m}`"))
                    })?;
                    (s, mult)
                }
                None => (t.text, 1),
            };
            let tok = Token {
                line: t.line,
                column: t.column,
                text: st,
            };
            Ok((statement_at(&tok)?, mult, t.line, t.column))
        })
        .collect()
}

fn combination(n: usize, terms: &[Term]) -> Result<NonNegCombination> {
    let space = CiSpace::get(n)?;
    let mut m = vec![0u64; space.len()];
    for &(s, mult, line, column) in terms {
        let idx = space
            .index_of(&s)
            .ok_or_else(|| Error::parse(line, column, format!("{s} is not a statement over [{n}]")))?;
        m[idx.0] += mult;
    }
    NonNegCombination::new(n, m)
}

/// `(statement, multiplicity, line, column)`.
type Term = (CiStatement, u64, usize, usize);

/// `(sign, terms, line)`.
type SignedLine = (char, Vec<Term>, usize);

/// Sign lines of a move or basis file, in order.
fn signed_lines(text: &str) -> Result<Vec<SignedLine>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = tokens_of_line(i + 1, line);
        let Some(first) = toks.first() else { continue };
        let (sign, rest) = match first.text {
            "+" => ('+', &toks[1..]),
            "-" | "−" => ('-', &toks[1..]),
            _ => return Err(Error::parse(first.line, first.column, "line must start with `+` or `-`")),
        };
        out.push((sign, monomial(rest)?, i + 1));
    }
    Ok(out)
}

fn moves_from_lines(
    lines: Vec<SignedLine>,
    n: Option<usize>,
) -> Result<Vec<MarkovMove>> {
    let max_el = lines
        .iter()
        .flat_map(|(_, m, _)| m.iter().map(|t| t.0.max_element()))
        .max()
        .unwrap_or(0);
    let n = n.unwrap_or_else(|| inferred_n(max_el));
    check_n(n, 1, 1)?;
    if !lines.len().is_multiple_of(2) {
        let last = lines.last().map_or(1, |l| l.2);
        return Err(Error::parse(last + 1, 1, "a move needs a `+` line followed by a `-` line"));
    }
    lines
        .chunks(2)
        .map(|pair| {
            let (plus, minus) = (&pair[0], &pair[1]);
            if plus.0 != '+' {
                return Err(Error::parse(plus.2, 1, "expected the `+` line of a move"));
            }
            if minus.0 != '-' {
                return Err(Error::parse(minus.2, 1, "expected the `-` line of a move"));
            }
            MarkovMove::from_parts(&combination(n, &plus.1)?, &combination(n, &minus.1)?)
        })
        .collect()
}

/// A move file: one `+` line and one `-` line.
pub fn parse_move(text: &str, n: Option<usize>) -> Result<MarkovMove> {
    let mut moves = moves_from_lines(signed_lines(text)?, n)?;
    match moves.len() {
        1 => Ok(moves.remove(0)),
        0 => Err(Error::parse(1, 1, "empty move file")),
        _ => Err(Error::parse(3, 1, "a move file holds exactly one move")),
    }
}

/// A basis file: consecutive `+`/`-` line pairs, one move each.
pub fn parse_basis(text: &str, n: Option<usize>) -> Result<Vec<MarkovMove>> {
    moves_from_lines(signed_lines(text)?, n)
}

/// A partition file: one class per line, permutation words separated by
/// spaces.
pub fn parse_partition(text: &str) -> Result<RankTestPartition> {
    let mut classes = Vec::new();
    let mut n: Option<usize> = None;
    for (i, line) in text.lines().enumerate() {
        let toks = tokens_of_line(i + 1, line);
        if toks.is_empty() {
            continue;
        }
        let mut class = Vec::new();
        for t in &toks {
            let p: Permutation = t
                .text
                .parse()
                .map_err(|_| Error::parse(t.line, t.column, format!("`{}` is not a permutation", t.text)))?;
            match n {
                None => {
                    check_n(p.n(), t.line, t.column)?;
                    n = Some(p.n());
                }
                Some(k) if k != p.n() => {
                    return Err(Error::parse(t.line, t.column, format!("expected a permutation of [{k}]")));
                }
                _ => {}
            }
            class.push(p);
        }
        classes.push(class);
    }
    let n = n.ok_or_else(|| Error::parse(1, 1, "empty partition file"))?;
    RankTestPartition::new(n, classes).map_err(|e| Error::parse(1, 1, e.to_string()))
}

fn rational_row(toks: &[Token<'_>]) -> Result<Vec<Rational>> {
    toks.iter()
        .map(|t| {
            t.text
                .parse::<Rational>()
                .map_err(|_| Error::parse(t.line, t.column, format!("bad rational `{}`", t.text)))
        })
        .collect()
}

/// A polytope file: an optional `POINTS` header, rows `c_0 c_1 … c_d`
/// meaning `c·x ≤ c_0`, and an optional `LINEALITY_SPACE` section whose rows
/// `0 l_1 … l_d` list lineality generators.
pub fn parse_polytope(text: &str) -> Result<HPolytope> {
    let mut rows = Vec::new();
    let mut lineality = Vec::new();
    let mut in_lineality = false;
    let mut width: Option<usize> = None;
    for (i, line) in text.lines().enumerate() {
        let toks = tokens_of_line(i + 1, line);
        let Some(first) = toks.first() else { continue };
        match first.text {
            "POINTS" | "FACETS" | "INEQUALITIES" => {
                in_lineality = false;
                continue;
            }
            "LINEALITY_SPACE" => {
                in_lineality = true;
                continue;
            }
            _ => {}
        }
        let v = rational_row(&toks)?;
        if v.len() < 2 {
            return Err(Error::parse(first.line, first.column, "a row needs at least two entries"));
        }
        match width {
            None => width = Some(v.len()),
            Some(w) if w != v.len() => {
                return Err(Error::parse(first.line, first.column, format!("expected {w} entries, found {}", v.len())));
            }
            _ => {}
        }
        let (head, tail) = (v[0].clone(), v[1..].to_vec());
        if in_lineality {
            if !head.is_zero() {
                return Err(Error::parse(first.line, first.column, "lineality rows start with 0"));
            }
            lineality.push(tail);
        } else {
            rows.push((head, tail));
        }
    }
    if rows.is_empty() {
        return Err(Error::parse(1, 1, "no inequality rows"));
    }
    HPolytope::new(rows, lineality)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn statement_sets() {
        let s = parse_statement_set("# M\n2.3|14, 1.4|23\n1.2|   3.4|\n", None).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.len(), 4);
        assert!(parse_statement_set("", None).unwrap().is_empty());
        assert_eq!(pos(parse_statement_set("1.2|\n  1.1|3", None).unwrap_err()), (2, 3));
        assert_eq!(pos(parse_statement_set("1.2|5", Some(4)).unwrap_err()), (1, 1));
    }

    #[test]
    fn imsets() {
        let b = parse_imset("-1 2\n2 25\n1 0 # empty set\n-1 1345\n", None).unwrap();
        assert_eq!(b.ground().n(), 5);
        assert_eq!(b.get(Subset::EMPTY), 1);
        assert_eq!(b.get(Subset::from_elements([2, 5])), 2);
        assert_eq!(pos(parse_imset("1 2\nx 3", None).unwrap_err()), (2, 1));
        assert_eq!(pos(parse_imset("1 2\n1 33", None).unwrap_err()), (2, 4));
        let round = parse_imset(&b.to_string(), Some(5)).unwrap();
        assert_eq!(round, b);
    }

    #[test]
    fn moves() {
        let m = parse_move("+ 1.2| 1.3|2\n- 1.3| 1.2|3\n", None).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(parse_move(&m.to_string(), None).unwrap(), m);
        let sq = parse_move("+ 1.2|^2\n- 1.2| 1.2|\n", None).unwrap();
        assert!(sq.is_zero());
        assert_eq!(pos(parse_move("+ 1.2|^0\n- 1.3|", None).unwrap_err()), (1, 8));
        assert_eq!(pos(parse_move("* 1.2|", None).unwrap_err()), (1, 1));
        let basis = parse_basis("+ 1.2| 1.3|2\n- 1.3| 1.2|3\n\n+ 1.2| 2.3|1\n- 2.3| 1.2|3\n", None).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn partitions() {
        let p = parse_partition("12 21\n").unwrap();
        assert_eq!(p.classes().len(), 1);
        assert_eq!(pos(parse_partition("123 132\n12").unwrap_err()), (2, 1));
        assert_eq!(pos(parse_partition("123 1x2").unwrap_err()), (1, 5));
        assert!(parse_partition("123").is_err());
    }

    #[test]
    fn polytopes() {
        let h = parse_polytope("POINTS\n1 1 0\n1 0 1\n0 -1 0\n0 0 -1\nLINEALITY_SPACE\n").unwrap();
        assert_eq!(h.rows.len(), 4);
        assert_eq!(h.ambient_dim(), 2);
        assert_eq!(pos(parse_polytope("1 1/0 0").unwrap_err()), (1, 3));
        assert_eq!(pos(parse_polytope("1 1 0\n1 1").unwrap_err()), (2, 1));
    }
}
