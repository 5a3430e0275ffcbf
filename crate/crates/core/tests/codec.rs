mod common;

use mgk::codec::{emit_mgd, parse_link, parse_mgd, ParseError, Statement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn parses_single_loop() {
    let doc = parse_mgd(b"mgd v1\nloop 1").unwrap();
    assert_eq!(doc.version, 1);
    assert_eq!(doc.statements, vec![Statement::Loop(1)]);
}

#[test]
fn parses_kink_with_self_paired_edges() {
    let doc = parse_mgd(b"mgd v1\nx 1 1 2 2").unwrap();
    assert_eq!(doc.statements, vec![Statement::Crossing([1, 1, 2, 2])]);
    // the pairing alone is fine; planarity is the builder's business
    let doc = parse_mgd(b"mgd v1\nx 1 2 1 2").unwrap();
    assert_eq!(doc.statements, vec![Statement::Crossing([1, 2, 1, 2])]);
}

#[test]
fn single_marked_vertex_fails_multiplicity() {
    let err = parse_mgd(b"mgd v1\nm 1 2 3 4").unwrap_err();
    assert!(matches!(err, ParseError::Multiplicity { line: 2, count: 1, .. }), "{err}");
}

#[test]
fn loop_edge_must_be_unique() {
    let err = parse_mgd(b"mgd v1\nloop 3\nx 3 3 4 4\n").unwrap_err();
    assert!(matches!(err, ParseError::Multiplicity { edge: 3, .. }), "{err}");
    let err = parse_mgd(b"mgd v1\nloop 3\nloop 3\n").unwrap_err();
    assert!(matches!(err, ParseError::Multiplicity { line: 3, .. }), "{err}");
}

#[test]
fn error_kinds() {
    let e = |t: &str| parse_mgd(t.as_bytes()).unwrap_err();
    assert!(matches!(e("mgd v1\nx 1 2 3\n"), ParseError::Arity { line: 2, found: 3, .. }));
    assert!(matches!(e("mgd v1\nm 1 1 2 2 3\n"), ParseError::Arity { found: 5, .. }));
    assert!(matches!(e("mgd v1\nx 1 a 1 2\n"), ParseError::Syntax { line: 2, .. }));
    assert!(matches!(e("mgd v1\nx 0 0 1 1\n"), ParseError::Syntax { .. }));
    assert!(matches!(e("mgd v1\ny 1 1 2 2\n"), ParseError::Syntax { .. }));
    assert!(matches!(e("mgd v2\nloop 1\n"), ParseError::Version { line: 1, .. }));
    assert!(matches!(e("loop 1\n"), ParseError::Version { line: 1, .. }));
    assert!(matches!(e(""), ParseError::Version { .. }));
    assert!(matches!(e("mgd v1\nloop 1 # caf\u{e9}\n"), ParseError::Syntax { line: 2, .. }));
}

#[test]
fn comments_blank_lines_and_crlf() {
    let doc = parse_mgd(b"# header comment\r\n\r\nmgd v1   # version\r\n  x 1 1   2 2 # kink\r\n").unwrap();
    assert_eq!(doc.statements, vec![Statement::Crossing([1, 1, 2, 2])]);
    assert_eq!(emit_mgd(&doc), "mgd v1\nx 1 1 2 2\n");
}

#[test]
fn emit_loop_only() {
    let doc = parse_mgd(b"mgd v1\nloop 1").unwrap();
    assert_eq!(emit_mgd(&doc), "mgd v1\nloop 1\n");
}

#[test]
fn emit_keeps_statement_order() {
    let text = "mgd v1\nm 3 2 1 4\nx 5 5 6 6\nm 1 2 3 4\nloop 9\n";
    let doc = parse_mgd(text.as_bytes()).unwrap();
    assert_eq!(emit_mgd(&doc), text);
}

#[test]
fn golden_place_statement() {
    let text = "mgd v1\nx 1 1 2 2\nloop 7\nplace 1 2r\n";
    let doc = parse_mgd(text.as_bytes()).unwrap();
    assert_eq!(emit_mgd(&doc), text);
    let err = parse_mgd(b"mgd v1\nloop 1\nloop 2\nplace 1 5r\n").unwrap_err();
    assert!(matches!(err, ParseError::Syntax { line: 4, .. }), "{err}");
}

#[test]
fn link_parser() {
    let doc = parse_link(b"mgd v1\nloop 1").unwrap();
    assert_eq!(doc.statements.len(), 1);
    let err = parse_link(b"mgd v1\nm 1 2 3 4\nm 3 2 1 4").unwrap_err();
    assert!(matches!(err, ParseError::MarkedNotAllowed { line: 2 }));
    assert_eq!(err.to_string(), "line 2: marked vertex not allowed");
    let hopf = parse_link(common::HOPF.as_bytes()).unwrap();
    assert_eq!(hopf.statements.len(), 2);
    let d = mgk::Diagram::build(&hopf).unwrap();
    assert_eq!(mgk::component_count(&d), 2);
}

#[test]
fn corpus_round_trips() {
    for d in common::marked_corpus(60, 3) {
        let doc = d.to_document();
        let text = emit_mgd(&doc);
        let again = parse_mgd(text.as_bytes()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(emit_mgd(&again), text);
    }
}

/// Replaces or removes one token of line `target` (1-based, a statement
/// line) so that the document becomes invalid at that line.
fn corrupt(text: &str, target: usize, how: u8) -> String {
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let toks: Vec<&str> = lines[target - 1].split_whitespace().collect();
    let mut toks: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
    let n = toks.len();
    match how % 6 {
        0 => toks[n - 1] = "abc".into(),
        1 => toks[1] = "0".into(),
        2 => toks[n - 1] = "-4".into(),
        3 => toks[0] = "q".into(),
        4 => {
            if toks[0] == "loop" {
                toks.push("7".into());
            } else {
                toks.pop();
            }
        }
        _ => {
            if toks[0] == "loop" {
                toks[1] = "7x".into();
            } else {
                toks.push("12".into());
            }
        }
    }
    lines[target - 1] = toks.join(" ");
    lines.join("\n") + "\n"
}

fn corpus() -> &'static [mgk::Diagram] {
    static C: std::sync::OnceLock<Vec<mgk::Diagram>> = std::sync::OnceLock::new();
    C.get_or_init(|| common::marked_corpus(40, 11))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn emit_parse_identity(i in 0usize..40, seed in any::<u64>()) {
        let corpus = corpus();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let doc = common::relabel(&corpus[i].to_document(), false, &mut rng);
        let text = emit_mgd(&doc);
        prop_assert_eq!(parse_mgd(text.as_bytes()).unwrap(), doc);
    }

    #[test]
    fn corrupted_token_reports_its_line(i in 0usize..40, pick in any::<usize>(), how in any::<u8>()) {
        let corpus = corpus();
        let text = emit_mgd(&corpus[i].to_document());
        let statement_lines: Vec<usize> = text
            .lines()
            .enumerate()
            .skip(1)
            .filter(|(_, l)| !l.starts_with("place"))
            .map(|(k, _)| k + 1)
            .collect();
        let target = statement_lines[pick % statement_lines.len()];
        let bad = corrupt(&text, target, how);
        let err = parse_mgd(bad.as_bytes()).unwrap_err();
        prop_assert_eq!(err.line(), target, "{} in\n{}", err, bad);
    }
}
