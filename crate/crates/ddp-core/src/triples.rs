//! k-triples: the pathwidth obstruction (A, B, C) with A complete to B,
//! B complete to C, and a perfect matching from C back to A.

use crate::digraph::{Digraph, VertexSet};
use crate::rng;
use rand::Rng as _;
use std::fmt::Write as _;

/// An ordered triple of equal-size vertex lists with the matching `c_i -> a_i`
/// encoded by shared index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTriple {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl KTriple {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn mat(&self, u: usize) -> Option<usize> {
        self.c.iter().position(|&x| x == u).map(|i| self.a[i])
    }

    pub fn mat_inv(&self, v: usize) -> Option<usize> {
        self.a.iter().position(|&x| x == v).map(|i| self.c[i])
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.a.iter().chain(&self.b).chain(&self.c).copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a.contains(&v) || self.b.contains(&v) || self.c.contains(&v)
    }
}

/// Why a claimed triple is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TripleDefect {
    SizeMismatch,
    Overlap(usize),
    MissingArc { from: usize, to: usize },
}

/// Check the defining arcs: every `a -> b`, every `b -> c`, and the matching
/// arc `c_i -> a_i`. Reports the first missing arc otherwise.
pub fn validate_triple(g: &Digraph, t: &KTriple) -> Result<(), TripleDefect> {
    let k = t.a.len();
    if t.b.len() != k || t.c.len() != k || k == 0 {
        return Err(TripleDefect::SizeMismatch);
    }
    let mut seen = std::collections::BTreeSet::new();
    for v in t.vertices() {
        if !seen.insert(v) {
            return Err(TripleDefect::Overlap(v));
        }
        if v >= g.vertex_count() {
            return Err(TripleDefect::SizeMismatch);
        }
    }
    for &a in &t.a {
        for &b in &t.b {
            if !g.has_arc(a, b) {
                return Err(TripleDefect::MissingArc { from: a, to: b });
            }
        }
    }
    for &b in &t.b {
        for &c in &t.c {
            if !g.has_arc(b, c) {
                return Err(TripleDefect::MissingArc { from: b, to: c });
            }
        }
    }
    for i in 0..k {
        if !g.has_arc(t.c[i], t.a[i]) {
            return Err(TripleDefect::MissingArc { from: t.c[i], to: t.a[i] });
        }
    }
    Ok(())
}

/// Exact-search caps for [`find_triple`]; above them the search degrades to a
/// documented best-effort heuristic (bounded candidate enumeration).
pub const FIND_EXACT_MAX_N: usize = 16;
pub const FIND_EXACT_MAX_K: usize = 4;

/// Search for a k-triple. Complete below the exact caps; any returned triple
/// validates regardless.
///
/// Candidate B-sets are enumerated in order of minimum out-degree; once B is
/// fixed, the remaining constraint is k pairwise disjoint arcs from the
/// common out-neighborhood of B back into its common in-neighborhood, found
/// by exhaustive matching.
pub fn find_triple(g: &Digraph, k: usize) -> Option<KTriple> {
    assert!(k >= 1);
    let n = g.vertex_count();
    if 3 * k > n {
        return None;
    }
    let exact = n <= FIND_EXACT_MAX_N && k <= FIND_EXACT_MAX_K;

    let vertices: Vec<usize> = (0..n).collect();
    let mut b_sets: Vec<Vec<usize>> = Vec::new();
    let mut scratch = Vec::new();
    k_subsets(&vertices, k, &mut scratch, &mut b_sets, if exact { usize::MAX } else { 50_000 });
    b_sets.sort_by_key(|b| b.iter().map(|&v| g.out_degree(v)).min().unwrap_or(0));

    for b in b_sets {
        // candidates for A: complete to every vertex of B
        let a_pool: Vec<usize> = (0..n)
            .filter(|&u| !b.contains(&u) && b.iter().all(|&x| g.has_arc(u, x)))
            .collect();
        // candidates for C: every vertex of B complete to them
        let c_pool: Vec<usize> = (0..n)
            .filter(|&w| !b.contains(&w) && b.iter().all(|&x| g.has_arc(x, w)))
            .collect();
        if a_pool.len() < k || c_pool.len() < k {
            continue;
        }
        // k disjoint matching arcs c -> a with c in c_pool, a in a_pool
        let a_set = VertexSet::from_iter(n, a_pool.iter().copied());
        let mut pairs = Vec::new();
        if match_pairs(g, &c_pool, 0, &a_set, k, &mut VertexSet::empty(n), &mut pairs) {
            let (c, a): (Vec<usize>, Vec<usize>) = pairs.iter().copied().unzip();
            let t = KTriple { a, b, c };
            debug_assert!(validate_triple(g, &t).is_ok());
            return Some(t);
        }
    }
    None
}

fn k_subsets(
    pool: &[usize],
    k: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().map_or(0, |&v| v + 1);
    let need = k - cur.len();
    for idx in start..pool.len() {
        if pool.len() - idx < need {
            break;
        }
        cur.push(pool[idx]);
        k_subsets(pool, k, cur, out, limit);
        cur.pop();
    }
}

fn match_pairs(
    g: &Digraph,
    c_pool: &[usize],
    idx: usize,
    a_set: &VertexSet,
    k: usize,
    used: &mut VertexSet,
    pairs: &mut Vec<(usize, usize)>,
) -> bool {
    if pairs.len() == k {
        return true;
    }
    if c_pool.len() - idx < k - pairs.len() {
        return false;
    }
    let c = c_pool[idx];
    if !used.contains(c) {
        for a in g.out_neighbors(c) {
            if a == c || !a_set.contains(a) || used.contains(a) {
                continue;
            }
            used.insert(c);
            used.insert(a);
            pairs.push((c, a));
            if match_pairs(g, c_pool, idx + 1, a_set, k, used, pairs) {
                return true;
            }
            pairs.pop();
            used.remove(c);
            used.remove(a);
        }
    }
    // leave c unmatched
    match_pairs(g, c_pool, idx + 1, a_set, k, used, pairs)
}

/// A semicomplete digraph on `3k + padding` vertices with a planted,
/// validated k-triple; all free pairs are oriented uniformly at random.
pub fn plant_triple(k: usize, padding: usize, seed: u64) -> (Digraph, KTriple) {
    assert!(k >= 1);
    let n = 3 * k + padding;
    let a: Vec<usize> = (0..k).collect();
    let b: Vec<usize> = (k..2 * k).collect();
    let c: Vec<usize> = (2 * k..3 * k).collect();
    let mut rng = rng::seeded(seed);
    let mut builder = crate::digraph::DigraphBuilder::new(n);
    let forced = |u: usize, v: usize| -> Option<bool> {
        // Some(true) = arc u->v forced, Some(false) = arc v->u forced
        let (lo, hi) = (u.min(v), u.max(v));
        let in_a = |x: usize| x < k;
        let in_b = |x: usize| (k..2 * k).contains(&x);
        let in_c = |x: usize| (2 * k..3 * k).contains(&x);
        if in_a(lo) && in_b(hi) {
            return Some(lo == u);
        }
        if in_b(lo) && in_c(hi) {
            return Some(lo == u);
        }
        if in_a(lo) && in_c(hi) && hi - 2 * k == lo {
            return Some(hi == u); // matching arc c_i -> a_i
        }
        None
    };
    for u in 0..n {
        for v in u + 1..n {
            match forced(u, v) {
                Some(true) => {
                    builder.add_arc(u, v);
                }
                Some(false) => {
                    builder.add_arc(v, u);
                }
                None => {
                    if rng.random::<bool>() {
                        builder.add_arc(u, v);
                    } else {
                        builder.add_arc(v, u);
                    }
                }
            }
        }
    }
    let g = builder.build();
    let t = KTriple { a, b, c };
    debug_assert!(validate_triple(&g, &t).is_ok());
    (g, t)
}

/// Serialize as three matched index lines under a `ktriple 1` header.
pub fn write_triple(t: &KTriple) -> String {
    let mut out = String::from("ktriple 1\n");
    for row in [&t.a, &t.b, &t.c] {
        let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

pub fn read_triple(text: &str) -> Result<KTriple, String> {
    let mut rows = Vec::new();
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some("ktriple 1") {
        return Err("expected header `ktriple 1`".into());
    }
    for line in lines {
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|e| format!("bad index: {e}"))?);
    }
    if rows.len() != 3 {
        return Err(format!("expected 3 index lines, got {}", rows.len()));
    }
    let c = rows.pop().unwrap();
    let b = rows.pop().unwrap();
    let a = rows.pop().unwrap();
    if a.len() != b.len() || b.len() != c.len() {
        return Err("rows must have equal length".into());
    }
    Ok(KTriple { a, b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DigraphBuilder;

    #[test]
    fn planted_triples_validate_and_are_found() {
        for k in 1..=4 {
            let (g, t) = plant_triple(k, 2, 11 + k as u64);
            assert!(g.is_semicomplete());
            assert!(validate_triple(&g, &t).is_ok());
            let found = find_triple(&g, k).expect("planted triple not found");
            assert!(validate_triple(&g, &found).is_ok());
        }
    }

    #[test]
    fn determinism_per_seed() {
        assert_eq!(plant_triple(3, 4, 9).0, plant_triple(3, 4, 9).0);
    }

    #[test]
    fn bigger_planted_instance_found_at_lower_order() {
        let (g, _) = plant_triple(4, 6, 5);
        let found = find_triple(&g, 4).expect("4-triple not found");
        assert!(validate_triple(&g, &found).is_ok());
    }

    #[test]
    fn transitive_tournament_has_no_triple() {
        let mut b = DigraphBuilder::new(8);
        for u in 0..8 {
            for v in u + 1..8 {
                b.add_arc(u, v);
            }
        }
        let g = b.build();
        assert_eq!(find_triple(&g, 2), None);
    }

    #[test]
    fn counterexample_contains_the_rail_triple() {
        let (inst, layout) = crate::instances::counterexample(2, 1, 1);
        // A = {v_1, v_2}, B = {u_5, u_6}, C = {u_1, u_2}
        let t = KTriple {
            a: vec![layout.v[0][0], layout.v[0][1]],
            b: vec![layout.u[0][4], layout.u[0][5]],
            c: vec![layout.u[0][0], layout.u[0][1]],
        };
        assert!(validate_triple(&inst.graph, &t).is_ok());
        let found = find_triple(&inst.graph, 2).expect("2-triple not found");
        assert!(validate_triple(&inst.graph, &found).is_ok());
    }

    #[test]
    fn validation_pinpoints_defects() {
        let (g, t) = plant_triple(2, 0, 3);
        let mut broken = t.clone();
        broken.a[0] = t.b[0];
        assert!(matches!(validate_triple(&g, &broken), Err(TripleDefect::Overlap(_))));

        // drop a matching arc by rebuilding without it
        let mut b = DigraphBuilder::new(g.vertex_count());
        for (u, v) in g.arcs() {
            if (u, v) != (t.c[1], t.a[1]) {
                b.add_arc(u, v);
            }
        }
        b.add_arc(t.a[1], t.c[1]);
        let g2 = b.build();
        assert_eq!(
            validate_triple(&g2, &t),
            Err(TripleDefect::MissingArc { from: t.c[1], to: t.a[1] })
        );
    }

    #[test]
    fn serialization_round_trip() {
        let (_, t) = plant_triple(3, 1, 2);
        assert_eq!(read_triple(&write_triple(&t)).unwrap(), t);
    }
}
