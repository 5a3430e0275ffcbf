mod common;

use common::*;
use mgk::render::{render_svg, ForceLayout};
use mgk::Layout;

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

/// Every opened element is closed in order.
fn balanced(svg: &str) -> bool {
    let mut stack = Vec::new();
    for tag in svg.split('<').skip(1) {
        let body = tag.split('>').next().unwrap();
        if body.starts_with('?') {
            continue;
        }
        if let Some(name) = body.strip_prefix('/') {
            if stack.pop() != Some(name.trim().to_string()) {
                return false;
            }
        } else if !body.ends_with('/') {
            stack.push(body.split_whitespace().next().unwrap().to_string());
        }
    }
    stack.is_empty()
}

#[test]
fn loop_is_one_closed_curve() {
    let svg = render_svg(&diag(LOOP));
    assert!(balanced(&svg));
    assert_eq!(count(&svg, r#"class="loop""#), 1);
    assert_eq!(count(&svg, r#"class="crossing""#), 0);
    assert_eq!(count(&svg, r#"class="edge""#), 0);
}

#[test]
fn kink_has_one_break() {
    let svg = render_svg(&diag(KINK));
    assert!(balanced(&svg));
    assert_eq!(count(&svg, r#"class="crossing""#), 1);
    assert_eq!(count(&svg, r#"class="marker""#), 0);
}

#[test]
fn bigon_has_two_markers() {
    let svg = render_svg(&diag(BIGON));
    assert!(balanced(&svg));
    assert!(svg.starts_with("<?xml"));
    assert_eq!(count(&svg, r#"class="marker""#), 2);
    assert_eq!(count(&svg, r#"class="edge""#), 4);
}

#[test]
fn counts_match_on_corpus() {
    for d in marked_corpus(40, 71) {
        let svg = render_svg(&d);
        assert!(balanced(&svg));
        assert_eq!(count(&svg, r#"class="crossing""#), d.crossing_count());
        assert_eq!(count(&svg, r#"class="marker""#), d.marked_count());
        assert_eq!(count(&svg, r#"class="loop""#), d.loop_count());
        assert!(!svg.contains("NaN"));
    }
}

#[test]
fn layout_is_deterministic_and_in_range() {
    let d = diag(FIGURE8);
    let a = Layout::compute(&d, 100);
    assert_eq!(a, Layout::compute(&d, 100));
    assert!(a.positions.iter().all(|&(x, y)| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)));
    let b: ForceLayout<f32> = ForceLayout::compute(&d, 100);
    for (p, q) in a.positions.iter().zip(&b.positions) {
        assert!((p.0 - q.0 as f64).abs() < 1e-3 && (p.1 - q.1 as f64).abs() < 1e-3);
    }
}
