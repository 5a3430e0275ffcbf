//! Line-oriented text format for marked graph diagrams.
//!
//! ```text
//! mgd v1
//! # comment
//! x 1 2 3 4        crossing, darts counterclockwise, (d2,d4) over
//! m 5 6 7 8        marked vertex, marker in corners (d1,d2) and (d3,d4)
//! loop 9           closed edge without vertices
//! place 1 3l       put component 1 into the face on the left of edge 3
//! ```
//!
//! Every edge id used by `x`/`m` statements occurs exactly twice across
//! them; a `loop` id occurs once in the whole document.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub const FORMAT_VERSION: u8 = 1;

/// Side of an edge occurrence used to name a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A face named by an edge id and a side of its first occurrence.
///
/// The first occurrence of an edge (in statement order) is read as a dart
/// leaving its vertex; `r` is the face on its right, `l` the face on the
/// right of the opposite dart, i.e. on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceToken {
    pub edge: u32,
    pub side: Side,
}

impl fmt::Display for FaceToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => 'l',
            Side::Right => 'r',
        };
        write!(f, "{}{}", self.edge, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Loop(u32),
    Crossing([u32; 4]),
    Marked([u32; 4]),
    Place {
        component: u32,
        face: FaceToken,
        own: Option<FaceToken>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgdDocument {
    pub version: u8,
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {keyword} expects 4 edge ids, found {found}")]
    Arity {
        line: usize,
        keyword: &'static str,
        found: usize,
    },
    #[error("line {line}: edge {edge} occurs {count} times")]
    Multiplicity { line: usize, edge: u32, count: usize },
    #[error("line {line}: version error: {msg}")]
    Version { line: usize, msg: String },
    #[error("line {line}: marked vertex not allowed")]
    MarkedNotAllowed { line: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Arity { line, .. }
            | ParseError::Multiplicity { line, .. }
            | ParseError::Version { line, .. }
            | ParseError::MarkedNotAllowed { line } => *line,
        }
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_id(tok: &str, line: usize) -> Result<u32, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, format!("bad edge id `{tok}`")));
    }
    match tok.parse::<u32>() {
        Ok(0) => Err(syntax(line, "edge ids are positive")),
        Ok(v) => Ok(v),
        Err(_) => Err(syntax(line, format!("edge id `{tok}` out of range"))),
    }
}

fn parse_face(tok: &str, line: usize) -> Result<FaceToken, ParseError> {
    let (num, side) = match tok.as_bytes().last() {
        Some(b'l') => (&tok[..tok.len() - 1], Side::Left),
        Some(b'r') => (&tok[..tok.len() - 1], Side::Right),
        _ => return Err(syntax(line, format!("bad face token `{tok}`"))),
    };
    Ok(FaceToken {
        edge: parse_id(num, line)?,
        side,
    })
}

fn parse_version(body: &str, line: usize) -> Result<u8, ParseError> {
    let mut toks = body.split_whitespace();
    if toks.next() != Some("mgd") {
        return Err(ParseError::Version {
            line,
            msg: "missing `mgd v1` header".into(),
        });
    }
    let v = toks.next().and_then(|t| t.strip_prefix('v'));
    let v = match v.map(str::parse::<u8>) {
        Some(Ok(v)) => v,
        _ => {
            return Err(ParseError::Version {
                line,
                msg: "malformed version".into(),
            })
        }
    };
    if toks.next().is_some() {
        return Err(ParseError::Version {
            line,
            msg: "trailing tokens after version".into(),
        });
    }
    if v != FORMAT_VERSION {
        return Err(ParseError::Version {
            line,
            msg: format!("unsupported version v{v}"),
        });
    }
    Ok(v)
}

fn parse_statement(body: &str, line: usize) -> Result<Statement, ParseError> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    let (kw, rest) = toks.split_first().expect("non-empty statement");
    match *kw {
        "x" | "m" => {
            let keyword = if *kw == "x" { "x" } else { "m" };
            for t in rest {
                parse_id(t, line)?;
            }
            if rest.len() != 4 {
                return Err(ParseError::Arity {
                    line,
                    keyword,
                    found: rest.len(),
                });
            }
            let mut e = [0u32; 4];
            for (slot, t) in e.iter_mut().zip(rest) {
                *slot = parse_id(t, line)?;
            }
            Ok(if keyword == "x" {
                Statement::Crossing(e)
            } else {
                Statement::Marked(e)
            })
        }
        "loop" => match rest {
            [t] => Ok(Statement::Loop(parse_id(t, line)?)),
            _ => Err(syntax(line, "loop expects exactly one edge id")),
        },
        "place" => {
            if rest.len() < 2 || rest.len() > 3 {
                return Err(syntax(line, "place expects a component and one or two faces"));
            }
            let component = rest[0]
                .parse::<u32>()
                .ok()
                .filter(|_| rest[0].bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| syntax(line, format!("bad component index `{}`", rest[0])))?;
            let face = parse_face(rest[1], line)?;
            let own = rest.get(2).map(|t| parse_face(t, line)).transpose()?;
            Ok(Statement::Place {
                component,
                face,
                own,
            })
        }
        other => Err(syntax(line, format!("unknown statement `{other}`"))),
    }
}

/// Checks edge multiplicities. When several edges are wrong, the reported
/// line is the latest offending occurrence.
fn check_multiplicity(stmts: &[(usize, Statement)]) -> Result<(), ParseError> {
    // edge -> (count in x/m, count in loop, lines)
    let mut seen: HashMap<u32, (usize, usize, Vec<usize>)> = HashMap::new();
    for (line, st) in stmts {
        match st {
            Statement::Crossing(e) | Statement::Marked(e) => {
                for &id in e {
                    let ent = seen.entry(id).or_default();
                    ent.0 += 1;
                    ent.2.push(*line);
                }
            }
            Statement::Loop(id) => {
                let ent = seen.entry(*id).or_default();
                ent.1 += 1;
                ent.2.push(*line);
            }
            Statement::Place { .. } => {}
        }
    }
    let mut worst: Option<(usize, u32, usize)> = None;
    for (&id, (vx, lp, lines)) in &seen {
        let bad_line = if *lp == 0 {
            match vx {
                2 => None,
                1 => Some(lines[0]),
                _ => Some(lines[2]),
            }
        } else if *lp == 1 && *vx == 0 {
            None
        } else {
            Some(lines[1])
        };
        if let Some(l) = bad_line {
            let cand = (l, id, vx + lp);
            if worst.is_none_or(|w| (cand.0, std::cmp::Reverse(cand.1)) > (w.0, std::cmp::Reverse(w.1))) {
                worst = Some(cand);
            }
        }
    }
    match worst {
        Some((line, edge, count)) => Err(ParseError::Multiplicity { line, edge, count }),
        None => Ok(()),
    }
}

fn check_places(stmts: &[(usize, Statement)]) -> Result<(), ParseError> {
    let mut edges = std::collections::HashSet::new();
    for (_, st) in stmts {
        match st {
            Statement::Crossing(e) | Statement::Marked(e) => edges.extend(e.iter().copied()),
            Statement::Loop(e) => {
                edges.insert(*e);
            }
            Statement::Place { .. } => {}
        }
    }
    for (line, st) in stmts {
        if let Statement::Place { face, own, .. } = st {
            for tok in std::iter::once(face).chain(own.iter()) {
                if !edges.contains(&tok.edge) {
                    return Err(syntax(*line, format!("face token `{tok}` names no vertex edge")));
                }
            }
        }
    }
    Ok(())
}

/// Parses a document; line numbers in errors are 1-based.
pub fn parse_mgd(text: &[u8]) -> Result<MgdDocument, ParseError> {
    let mut version = None;
    let mut stmts = Vec::new();
    let mut line_no = 0;
    for raw in text.split(|&b| b == b'\n') {
        line_no += 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        if !raw.is_ascii() {
            return Err(syntax(line_no, "non-ASCII byte"));
        }
        let s = std::str::from_utf8(raw).expect("ascii");
        let body = s.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if version.is_none() {
            version = Some(parse_version(body, line_no)?);
            continue;
        }
        stmts.push((line_no, parse_statement(body, line_no)?));
    }
    let version = version.ok_or(ParseError::Version {
        line: line_no.max(1),
        msg: "missing `mgd v1` header".into(),
    })?;
    check_multiplicity(&stmts)?;
    check_places(&stmts)?;
    Ok(MgdDocument {
        version,
        statements: stmts.into_iter().map(|(_, s)| s).collect(),
    })
}

/// As [`parse_mgd`], rejecting marked vertices.
pub fn parse_link(text: &[u8]) -> Result<MgdDocument, ParseError> {
    let doc = parse_mgd(text)?;
    if doc.statements.iter().any(|s| matches!(s, Statement::Marked(_))) {
        // locate the first m statement for the error position
        let mut line_no = 0;
        for raw in text.split(|&b| b == b'\n') {
            line_no += 1;
            let s = String::from_utf8_lossy(raw);
            let body = s.split('#').next().unwrap_or("").trim().to_string();
            if body.split_whitespace().next() == Some("m") {
                break;
            }
        }
        return Err(ParseError::MarkedNotAllowed { line: line_no });
    }
    Ok(doc)
}

/// Canonical text: header, one statement per line, single spaces, LF.
pub fn emit_mgd(doc: &MgdDocument) -> String {
    let mut out = format!("mgd v{}\n", doc.version);
    for st in &doc.statements {
        match st {
            Statement::Loop(e) => out.push_str(&format!("loop {e}\n")),
            Statement::Crossing(e) => {
                out.push_str(&format!("x {} {} {} {}\n", e[0], e[1], e[2], e[3]))
            }
            Statement::Marked(e) => {
                out.push_str(&format!("m {} {} {} {}\n", e[0], e[1], e[2], e[3]))
            }
            Statement::Place {
                component,
                face,
                own,
            } => {
                out.push_str(&format!("place {component} {face}"));
                if let Some(o) = own {
                    out.push_str(&format!(" {o}"));
                }
                out.push('\n');
            }
        }
    }
    out
}
