//! Kauffman bracket by sweeping crossings in breadth-first order.
//!
//! The partial state sum is kept as a map from planar matchings of the
//! open darts (processed darts whose mates are not yet processed) to
//! polynomials, so the cost follows the sweep width rather than `2^n`.

use std::collections::HashMap;
use std::ops::Neg;

use num_traits::{One, Zero};

use super::{LinkDiagram, LinkError};
use crate::diagram::{Dart, VertexKind};
use crate::poly::{BracketPolynomial, LaurentPoly};

pub const DEFAULT_BRACKET_CAP: usize = 18;

pub fn kauffman_bracket(l: &LinkDiagram) -> Result<BracketPolynomial, LinkError> {
    kauffman_bracket_with_cap(l, DEFAULT_BRACKET_CAP)
}

pub fn kauffman_bracket_with_cap(l: &LinkDiagram, cap: usize) -> Result<BracketPolynomial, LinkError> {
    let crossings = l.crossing_count();
    if crossings > cap {
        return Err(LinkError::TooLarge { crossings, cap });
    }
    Ok(kauffman_bracket_generic(l))
}

fn sweep_order(l: &LinkDiagram) -> Vec<usize> {
    let n = l.num_nodes();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    for s in 0..n {
        if seen[s] || l.kind(s) != VertexKind::Crossing {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for x in l.darts_of(v) {
                let w = l.vertex_of(l.mate(x));
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Unnormalised bracket with any ring of coefficients; no size cap.
pub fn kauffman_bracket_generic<T>(l: &LinkDiagram) -> LaurentPoly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    let delta = LaurentPoly::<T>::loop_value();
    let max_loops = 2 * l.crossing_count() + 2;
    let delta_pow: Vec<LaurentPoly<T>> = (0..=max_loops as u32).map(|k| delta.pow(k)).collect();
    let mut done = vec![false; l.num_nodes()];
    let mut frontier: Vec<Dart> = Vec::new();
    let mut states: HashMap<Vec<u32>, LaurentPoly<T>> = HashMap::from([(Vec::new(), LaurentPoly::one())]);
    for c in sweep_order(l) {
        done[c] = true;
        let xs: Vec<Dart> = l.darts_of(c).collect();
        let is_old = |y: Dart| frontier.binary_search(&y).is_ok();
        // glue partner of each node, if any
        let mut next: Vec<Dart> = frontier
            .iter()
            .copied()
            .filter(|&y| !xs.contains(&l.mate(y)))
            .collect();
        for &x in &xs {
            let m = l.mate(x);
            if !is_old(m) && !xs.contains(&m) {
                next.push(x);
            }
        }
        next.sort_unstable();
        // local node ids: frontier darts first, then the four crossing darts
        let nf = frontier.len();
        let local = |y: Dart| -> usize {
            match frontier.binary_search(&y) {
                Ok(i) => i,
                Err(_) => nf + xs.iter().position(|&x| x == y).expect("crossing dart"),
            }
        };
        let total = nf + 4;
        let mut glue = vec![usize::MAX; total];
        for (i, &x) in xs.iter().enumerate() {
            let m = l.mate(x);
            if is_old(m) || xs.contains(&m) {
                let (a, b) = (nf + i, local(m));
                glue[a] = b;
                glue[b] = a;
            }
        }
        let out_index: HashMap<usize, usize> =
            next.iter().enumerate().map(|(i, &y)| (local(y), i)).collect();
        let mut new_states: HashMap<Vec<u32>, LaurentPoly<T>> = HashMap::new();
        for (key, poly) in &states {
            for (pairs, weight) in [([(0, 1), (2, 3)], 1), ([(1, 2), (3, 0)], -1)] {
                let mut pair = vec![usize::MAX; total];
                for (i, &p) in key.iter().enumerate() {
                    pair[i] = p as usize;
                }
                for (a, b) in pairs {
                    pair[nf + a] = nf + b;
                    pair[nf + b] = nf + a;
                }
                let mut seen = vec![false; total];
                let mut new_key = vec![0u32; next.len()];
                for (&s, &i) in &out_index {
                    if seen[s] {
                        continue;
                    }
                    seen[s] = true;
                    let mut t = pair[s];
                    while glue[t] != usize::MAX {
                        seen[t] = true;
                        let u = glue[t];
                        seen[u] = true;
                        t = pair[u];
                    }
                    seen[t] = true;
                    let j = out_index[&t];
                    new_key[i] = j as u32;
                    new_key[j] = i as u32;
                }
                let mut loops = 0;
                for s in 0..total {
                    if seen[s] {
                        continue;
                    }
                    loops += 1;
                    let mut t = s;
                    loop {
                        seen[t] = true;
                        let u = pair[t];
                        seen[u] = true;
                        t = glue[u];
                        if t == s {
                            break;
                        }
                    }
                }
                let term = &poly.shift(weight) * &delta_pow[loops];
                let e = new_states.entry(new_key).or_insert_with(LaurentPoly::zero);
                *e = &*e + &term;
            }
        }
        states = new_states;
        frontier = next;
    }
    debug_assert!(frontier.is_empty());
    let total = states.remove(&Vec::new()).unwrap_or_else(LaurentPoly::zero);
    &total * &delta.pow(l.loop_count() as u32)
}
