//! Move traces and their text form.
//!
//! ```text
//! mgt v1
//! start <hex code>
//! O2 + 1 a 3 7 u 12 c <hex code>
//! ```
//! Each step line gives the kind, direction, variant, the anchor darts
//! (`a`), optional upper components (`u`) and the code after the step
//! (`c`). Dart ids refer to the diagram as numbered by the engine: the
//! start diagram is numbered in statement order, four darts per vertex
//! statement and two per loop.

use super::{apply_move, Direction, MoveError, MoveKind, MoveSite};
use crate::diagram::Diagram;
use crate::util::{hex, unhex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub site: MoveSite,
    pub code: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: Vec<u8>,
    pub steps: Vec<TraceStep>,
}

impl MoveTrace {
    pub fn new(start: &Diagram) -> Self {
        MoveTrace {
            start: start.canonical_code(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, site: MoveSite, code: Vec<u8>) {
        self.steps.push(TraceStep { site, code });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the trace from `d`, checking every recorded code.
    pub fn replay(&self, d: &Diagram) -> Result<Diagram, MoveError> {
        if d.canonical_code() != self.start {
            return Err(MoveError::ReplayMismatch { step: 0 });
        }
        let mut cur = d.clone();
        for (i, st) in self.steps.iter().enumerate() {
            cur = apply_move(&cur, &st.site)?;
            if cur.canonical_code() != st.code {
                return Err(MoveError::ReplayMismatch { step: i + 1 });
            }
        }
        Ok(cur)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("mgt v1\nstart {}\n", hex(&self.start));
        for st in &self.steps {
            let s = &st.site;
            let dir = match s.direction {
                Direction::Forward => '+',
                Direction::Backward => '-',
            };
            out.push_str(&format!("{} {} {} a", s.kind.name(), dir, s.variant));
            for a in &s.anchors {
                out.push_str(&format!(" {a}"));
            }
            if !s.upper.is_empty() {
                out.push_str(" u");
                for u in &s.upper {
                    out.push_str(&format!(" {u}"));
                }
            }
            out.push_str(&format!(" c {}\n", hex(&st.code)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<MoveTrace, MoveError> {
        let bad = |no: usize, m: &str| MoveError::TraceFormat(format!("line {no}: {m}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "mgt v1")) => {}
            Some((no, _)) => return Err(bad(no, "expected `mgt v1`")),
            None => return Err(bad(1, "empty trace")),
        }
        let start = match lines.next() {
            Some((no, l)) => {
                let h = l.strip_prefix("start ").ok_or_else(|| bad(no, "expected start code"))?;
                unhex(h.trim()).ok_or_else(|| bad(no, "bad hex"))?
            }
            None => return Err(bad(2, "missing start code")),
        };
        let mut steps = Vec::new();
        for (no, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() < 5 {
                return Err(bad(no, "short step"));
            }
            let kind: MoveKind = toks[0].parse().map_err(|e: String| bad(no, &e))?;
            let direction = match toks[1] {
                "+" => Direction::Forward,
                "-" => Direction::Backward,
                _ => return Err(bad(no, "direction must be + or -")),
            };
            let variant: u8 = toks[2].parse().map_err(|_| bad(no, "bad variant"))?;
            if toks[3] != "a" {
                return Err(bad(no, "expected anchors"));
            }
            let mut anchors = Vec::new();
            let mut upper = Vec::new();
            let mut code = None;
            let mut section = 'a';
            let mut i = 4;
            while i < toks.len() {
                match toks[i] {
                    "u" => section = 'u',
                    "c" => {
                        let h = toks.get(i + 1).ok_or_else(|| bad(no, "missing code"))?;
                        code = Some(unhex(h).ok_or_else(|| bad(no, "bad hex"))?);
                        if i + 2 != toks.len() {
                            return Err(bad(no, "trailing tokens"));
                        }
                        break;
                    }
                    t => {
                        let v: u32 = t.parse().map_err(|_| bad(no, "bad dart id"))?;
                        if section == 'a' {
                            anchors.push(v);
                        } else {
                            upper.push(v);
                        }
                    }
                }
                i += 1;
            }
            let code = code.ok_or_else(|| bad(no, "missing code"))?;
            steps.push(TraceStep {
                site: MoveSite {
                    kind,
                    direction,
                    variant,
                    anchors,
                    upper,
                    regions: vec![],
                },
                code,
            });
        }
        Ok(MoveTrace { start, steps })
    }
}
