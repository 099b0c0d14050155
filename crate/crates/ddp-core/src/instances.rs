//! Problem instances: a digraph, a request multiset, a congestion bound, and
//! the restricted-terminal flag, plus solution verification, the instance
//! file format, seeded generators, and the stacked counterexample family.

use crate::digraph::{Digraph, DigraphBuilder};
use crate::rng;
use rand::Rng as _;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("solution has {got} paths, instance expects {want}")]
    ArityMismatch { want: usize, got: usize },
}

/// A request `(s, t)` with a native multiplicity, so compressed encodings of
/// large request sets stay small on disk. Solvers expand to unit requests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Request {
    pub s: usize,
    pub t: usize,
    pub multiplicity: usize,
}

impl Request {
    pub fn new(s: usize, t: usize, multiplicity: usize) -> Self {
        assert!(s != t, "request with equal endpoints {s}");
        assert!(multiplicity >= 1);
        Request { s, t, multiplicity }
    }
}

/// Debug labels for gadget vertices. Carried through the file format as
/// comments; never part of instance semantics.
pub type NameTable = BTreeMap<usize, String>;

/// A `(k, c)`-disjoint-paths instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Digraph,
    pub requests: Vec<Request>,
    pub congestion: usize,
    /// When set, terminals may appear on a path only as that path's own
    /// endpoints.
    pub restricted: bool,
    pub names: NameTable,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.requests == other.requests
            && self.congestion == other.congestion
            && self.restricted == other.restricted
    }
}

impl Instance {
    pub fn new(graph: Digraph, requests: Vec<Request>, congestion: usize, restricted: bool) -> Self {
        for r in &requests {
            assert!(r.s < graph.vertex_count() && r.t < graph.vertex_count());
        }
        assert!(congestion >= 1);
        Instance { graph, requests, congestion, restricted, names: NameTable::new() }
    }

    /// Total number of unit requests (k).
    pub fn k(&self) -> usize {
        self.requests.iter().map(|r| r.multiplicity).sum()
    }

    /// Unit requests in order, one `(s, t)` per path slot.
    pub fn expanded_requests(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.k());
        for r in &self.requests {
            for _ in 0..r.multiplicity {
                out.push((r.s, r.t));
            }
        }
        out
    }

    /// Every vertex that is an endpoint of some request.
    pub fn terminals(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.requests.iter().flat_map(|r| [r.s, r.t]).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.requests.iter().any(|r| r.s == v || r.t == v)
    }

    /// The instance with vertex `v` deleted; request endpoints are remapped.
    /// Panics if `v` is a terminal.
    pub fn delete_vertex(&self, v: usize) -> Instance {
        assert!(!self.is_terminal(v), "cannot delete terminal {v}");
        let map = |x: usize| if x > v { x - 1 } else { x };
        let mut inst = Instance {
            graph: self.graph.delete_vertex(v),
            requests: self
                .requests
                .iter()
                .map(|r| Request::new(map(r.s), map(r.t), r.multiplicity))
                .collect(),
            congestion: self.congestion,
            restricted: self.restricted,
            names: NameTable::new(),
        };
        for (&idx, name) in &self.names {
            if idx != v {
                inst.names.insert(map(idx), name.clone());
            }
        }
        inst
    }
}

/// One directed path per unit request plus per-vertex usage counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutedSolution {
    /// `paths[i]` serves the i-th unit request, in request order.
    pub paths: Vec<Vec<usize>>,
    pub occupancy: BTreeMap<usize, usize>,
}

impl RoutedSolution {
    pub fn from_paths(paths: Vec<Vec<usize>>) -> Self {
        let mut occupancy = BTreeMap::new();
        for p in &paths {
            for &v in p {
                *occupancy.entry(v).or_insert(0) += 1;
            }
        }
        RoutedSolution { paths, occupancy }
    }

    pub fn total_length(&self) -> usize {
        self.paths.iter().map(|p| p.len()).sum()
    }

    pub fn uses(&self, v: usize) -> usize {
        self.occupancy.get(&v).copied().unwrap_or(0)
    }
}

/// A violated solution property, with enough context to point at the culprit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongEndpoints { path: usize, want: (usize, usize) },
    MissingArc { path: usize, arc: (usize, usize) },
    RepeatedVertex { path: usize, vertex: usize },
    CongestionExceeded { vertex: usize, used: usize, limit: usize },
    ForeignTerminal { path: usize, vertex: usize },
    OccupancyMismatch { vertex: usize },
}

/// Check a routed solution against an instance: endpoints, arcs, simplicity,
/// congestion, the restricted rule, and the occupancy bookkeeping itself.
pub fn verify_solution(inst: &Instance, sol: &RoutedSolution) -> Result<(), Vec<Violation>> {
    let expanded = inst.expanded_requests();
    if sol.paths.len() != expanded.len() {
        return Err(vec![Violation::WrongEndpoints {
            path: sol.paths.len().min(expanded.len()),
            want: (usize::MAX, usize::MAX),
        }]);
    }
    let mut violations = Vec::new();
    let mut counted: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, path) in sol.paths.iter().enumerate() {
        let (s, t) = expanded[i];
        if path.first() != Some(&s) || path.last() != Some(&t) {
            violations.push(Violation::WrongEndpoints { path: i, want: (s, t) });
            continue;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &v in path {
            if !seen.insert(v) {
                violations.push(Violation::RepeatedVertex { path: i, vertex: v });
            }
            *counted.entry(v).or_insert(0) += 1;
        }
        for w in path.windows(2) {
            if !inst.graph.has_arc(w[0], w[1]) {
                violations.push(Violation::MissingArc { path: i, arc: (w[0], w[1]) });
            }
        }
        if inst.restricted {
            for &v in &path[..] {
                if v != s && v != t && inst.is_terminal(v) {
                    violations.push(Violation::ForeignTerminal { path: i, vertex: v });
                }
            }
        }
    }
    for (&v, &used) in &counted {
        if used > inst.congestion {
            violations.push(Violation::CongestionExceeded { vertex: v, used, limit: inst.congestion });
        }
    }
    if counted != sol.occupancy {
        let bad = counted
            .keys()
            .chain(sol.occupancy.keys())
            .find(|v| counted.get(v) != sol.occupancy.get(v))
            .copied()
            .unwrap_or(0);
        violations.push(Violation::OccupancyMismatch { vertex: bad });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Checked variant that errors on a path-count mismatch before verifying.
pub fn verify_solution_arity(inst: &Instance, sol: &RoutedSolution) -> Result<Result<(), Vec<Violation>>, InstanceError> {
    if sol.paths.len() != inst.k() {
        return Err(InstanceError::ArityMismatch { want: inst.k(), got: sol.paths.len() });
    }
    Ok(verify_solution(inst, sol))
}

// ---------------------------------------------------------------------------
// Counterexample family
// ---------------------------------------------------------------------------

/// Vertex ids of one stacked copy, exposed for tests that need to talk about
/// the `u`/`v` rails directly.
pub struct CounterexampleLayout {
    pub n: usize,
    pub tau: usize,
    /// `u[copy][i]` is u_{i+1} of that copy; same for `v`.
    pub u: Vec<Vec<usize>>,
    pub v: Vec<Vec<usize>>,
}

impl CounterexampleLayout {
    fn new(n: usize, tau: usize) -> Self {
        let m = 2 * n + 2;
        let block = 2 * m;
        let u = (0..tau).map(|c| (0..m).map(|i| c * block + i).collect()).collect();
        let v = (0..tau).map(|c| (0..m).map(|i| c * block + m + i).collect()).collect();
        CounterexampleLayout { n, tau, u, v }
    }

    /// Inner vertices of the forced rails, i.e. everything except the four
    /// request endpoints of each copy.
    pub fn inner_rail_vertices(&self) -> Vec<usize> {
        let m = 2 * self.n + 2;
        let mut out = Vec::new();
        for c in 0..self.tau {
            out.extend(self.u[c][1..m - 1].iter().copied());
            out.extend(self.v[c][1..m - 1].iter().copied());
        }
        out
    }
}

fn counterexample_copy(b: &mut DigraphBuilder, u: &[usize], v: &[usize]) {
    let m = u.len();
    // u-rail forward, everything else inside U backward
    for i in 0..m - 1 {
        b.add_arc(u[i], u[i + 1]);
    }
    for i in 0..m {
        for j in i + 2..m {
            b.add_arc(u[j], u[i]);
        }
    }
    // v-rail from high to low, everything else inside V forward
    for i in 0..m - 1 {
        b.add_arc(v[i + 1], v[i]);
    }
    for i in 0..m {
        for j in i + 2..m {
            b.add_arc(v[i], v[j]);
        }
    }
    // diagonals u_i -> v_i, all other cross pairs v_j -> u_i
    for i in 0..m {
        for j in 0..m {
            if i == j {
                b.add_arc(u[i], v[i]);
            } else {
                b.add_arc(v[j], u[i]);
            }
        }
    }
}

fn counterexample_graph(n: usize, tau: usize) -> (Digraph, CounterexampleLayout) {
    let layout = CounterexampleLayout::new(n, tau);
    let m = 2 * n + 2;
    let block = 2 * m;
    let total = tau * block;
    let mut b = DigraphBuilder::new(total);
    for c in 0..tau {
        counterexample_copy(&mut b, &layout.u[c], &layout.v[c]);
    }
    // all arcs from copy a to copy b for a < b
    for a in 0..tau {
        for c in a + 1..tau {
            for x in a * block..(a + 1) * block {
                for y in c * block..(c + 1) * block {
                    b.add_arc(x, y);
                }
            }
        }
    }
    (b.build(), layout)
}

fn rail_names(inst: &mut Instance, layout: &CounterexampleLayout) {
    let m = 2 * layout.n + 2;
    for c in 0..layout.tau {
        let prefix = if layout.tau > 1 { format!("c{}.", c + 1) } else { String::new() };
        for i in 0..m {
            inst.names.insert(layout.u[c][i], format!("{prefix}u_{}", i + 1));
            inst.names.insert(layout.v[c][i], format!("{prefix}v_{}", i + 1));
        }
    }
}

/// The stacked rail tournament: `tau` layered copies of the 4(n+1)-vertex
/// tournament whose two rails are the only way to satisfy the requests, with
/// `c` requests in each direction per copy, so k = 2·c·tau.
pub fn counterexample(n: usize, c: usize, tau: usize) -> (Instance, CounterexampleLayout) {
    assert!(n >= 1 && c >= 1 && tau >= 1);
    let (graph, layout) = counterexample_graph(n, tau);
    let m = 2 * n + 2;
    let mut requests = Vec::new();
    for copy in 0..tau {
        requests.push(Request::new(layout.u[copy][0], layout.u[copy][m - 1], c));
        requests.push(Request::new(layout.v[copy][m - 1], layout.v[copy][0], c));
    }
    let mut inst = Instance::new(graph, requests, c, false);
    rail_names(&mut inst, &layout);
    (inst, layout)
}

/// The lopsided variant: two `(u_1, u_{2n+2})` requests against a single
/// reverse request at congestion 2, which frees the middle of the u-rail.
pub fn counterexample_asymmetric(n: usize) -> (Instance, CounterexampleLayout) {
    assert!(n >= 1);
    let (graph, layout) = counterexample_graph(n, 1);
    let m = 2 * n + 2;
    let requests = vec![
        Request::new(layout.u[0][0], layout.u[0][m - 1], 2),
        Request::new(layout.v[0][m - 1], layout.v[0][0], 1),
    ];
    let mut inst = Instance::new(graph, requests, 2, false);
    rail_names(&mut inst, &layout);
    (inst, layout)
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

/// Uniformly oriented tournament on `n` vertices, deterministic per seed.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    random_semicomplete(n, 0.0, seed)
}

/// Random semicomplete digraph: each pair gets one uniformly oriented arc,
/// then the reverse arc independently with probability `digon_rate`.
pub fn random_semicomplete(n: usize, digon_rate: f64, seed: u64) -> Digraph {
    assert!((0.0..=1.0).contains(&digon_rate));
    let mut rng = rng::seeded(seed);
    let mut b = DigraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (s, t) = if rng.random::<bool>() { (u, v) } else { (v, u) };
            b.add_arc(s, t);
            if digon_rate > 0.0 && rng.random::<f64>() < digon_rate {
                b.add_arc(t, s);
            }
        }
    }
    b.build()
}

/// Sparse random digraph: each ordered pair carries an arc with probability
/// `arc_rate`. Used by class-predicate tests.
pub fn random_digraph(n: usize, arc_rate: f64, seed: u64) -> Digraph {
    let mut rng = rng::seeded(seed);
    let mut b = DigraphBuilder::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random::<f64>() < arc_rate {
                b.add_arc(u, v);
            }
        }
    }
    b.build()
}

/// `count` random requests between distinct vertices, deterministic per rng.
pub fn random_requests(n: usize, count: usize, rng: &mut rng::Rng) -> Vec<Request> {
    assert!(n >= 2);
    (0..count)
        .map(|_| {
            let s = rng.random_range(0..n);
            let mut t = rng.random_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            Request::new(s, t, 1)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// File format v1
// ---------------------------------------------------------------------------

/// Serialize an instance in the v1 line format. Name-table entries ride along
/// as `# name <idx> <label>` comments.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("ddp 1\n");
    writeln!(
        out,
        "n {} c {} restricted {}",
        inst.graph.vertex_count(),
        inst.congestion,
        u8::from(inst.restricted)
    )
    .unwrap();
    for (idx, name) in &inst.names {
        writeln!(out, "# name {idx} {name}").unwrap();
    }
    out.push_str("arcs\n");
    for (u, v) in inst.graph.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out.push_str("end\n");
    out.push_str("requests\n");
    for r in &inst.requests {
        writeln!(out, "{} {} {}", r.s, r.t, r.multiplicity).unwrap();
    }
    out.push_str("end\n");
    out
}

/// Parse the v1 instance format. `#` starts a comment to end of line; the
/// structured `# name <idx> <label>` comments repopulate the name table.
pub fn read_instance(text: &str) -> Result<Instance, InstanceError> {
    let err = |line: usize, reason: &str| InstanceError::Parse { line, reason: reason.to_string() };
    let mut names = NameTable::new();
    let mut lines = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        if let Some(rest) = raw.trim_start().strip_prefix('#') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() >= 3 && parts[0] == "name" {
                if let Ok(idx) = parts[1].parse::<usize>() {
                    names.insert(idx, parts[2..].join(" "));
                }
            }
            continue;
        }
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if !content.trim().is_empty() {
            lines.push((lno, content.trim().to_string()));
        }
    }
    let mut it = lines.into_iter();
    let (lno, header) = it.next().ok_or_else(|| err(1, "empty file"))?;
    if header != "ddp 1" {
        return Err(err(lno, "expected header `ddp 1`"));
    }
    let (lno, meta) = it.next().ok_or_else(|| err(lno, "missing size line"))?;
    let toks: Vec<&str> = meta.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "n" || toks[2] != "c" || toks[4] != "restricted" {
        return Err(err(lno, "expected `n <int> c <int> restricted <0|1>`"));
    }
    let n: usize = toks[1].parse().map_err(|_| err(lno, "bad vertex count"))?;
    let c: usize = toks[3].parse().map_err(|_| err(lno, "bad congestion"))?;
    if c < 1 {
        return Err(err(lno, "congestion must be at least 1"));
    }
    let restricted = match toks[5] {
        "0" => false,
        "1" => true,
        _ => return Err(err(lno, "restricted flag must be 0 or 1")),
    };
    let (lno, kw) = it.next().ok_or_else(|| err(lno, "missing `arcs` section"))?;
    if kw != "arcs" {
        return Err(err(lno, "expected `arcs`"));
    }
    let mut b = DigraphBuilder::new(n);
    let mut last = lno;
    loop {
        let (lno, line) = it.next().ok_or_else(|| err(last, "unterminated `arcs` section"))?;
        last = lno;
        if line == "end" {
            break;
        }
        let nums: Vec<&str> = line.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(err(lno, "expected `u v`"));
        }
        let u: usize = nums[0].parse().map_err(|_| err(lno, "bad arc tail"))?;
        let v: usize = nums[1].parse().map_err(|_| err(lno, "bad arc head"))?;
        if u == v {
            return Err(err(lno, "loop arc"));
        }
        if u >= n || v >= n {
            return Err(err(lno, "arc endpoint out of range"));
        }
        if b.has_arc(u, v) {
            return Err(err(lno, "duplicate arc"));
        }
        b.add_arc(u, v);
    }
    let (lno, kw) = it.next().ok_or_else(|| err(last, "missing `requests` section"))?;
    if kw != "requests" {
        return Err(err(lno, "expected `requests`"));
    }
    let mut requests = Vec::new();
    let mut last = lno;
    loop {
        let (lno, line) = it.next().ok_or_else(|| err(last, "unterminated `requests` section"))?;
        last = lno;
        if line == "end" {
            break;
        }
        let nums: Vec<&str> = line.split_whitespace().collect();
        if nums.len() != 3 {
            return Err(err(lno, "expected `s t m`"));
        }
        let s: usize = nums[0].parse().map_err(|_| err(lno, "bad request source"))?;
        let t: usize = nums[1].parse().map_err(|_| err(lno, "bad request target"))?;
        let m: usize = nums[2].parse().map_err(|_| err(lno, "bad multiplicity"))?;
        if s == t {
            return Err(err(lno, "request with equal endpoints"));
        }
        if s >= n || t >= n {
            return Err(err(lno, "request endpoint out of range"));
        }
        if m < 1 {
            return Err(err(lno, "multiplicity must be at least 1"));
        }
        requests.push(Request::new(s, t, m));
    }
    if let Some((lno, _)) = it.next() {
        return Err(err(lno, "unknown trailing section"));
    }
    let mut inst = Instance::new(b.build(), requests, c, restricted);
    inst.names = names;
    Ok(inst)
}

/// Serialize a solution: one path per line in unit-request order.
pub fn write_solution(sol: &RoutedSolution) -> String {
    let mut out = String::from("sol 1\n");
    for p in &sol.paths {
        let words: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

/// Parse the `sol 1` format.
pub fn read_solution(text: &str) -> Result<RoutedSolution, InstanceError> {
    let err = |line: usize, reason: &str| InstanceError::Parse { line, reason: reason.to_string() };
    let mut lines = text.lines().enumerate().filter_map(|(lno, raw)| {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let t = content.trim();
        if t.is_empty() {
            None
        } else {
            Some((lno + 1, t.to_string()))
        }
    });
    let (lno, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    if header != "sol 1" {
        return Err(err(lno, "expected header `sol 1`"));
    }
    let mut paths = Vec::new();
    for (lno, line) in lines {
        let mut path = Vec::new();
        for tok in line.split_whitespace() {
            path.push(tok.parse::<usize>().map_err(|_| err(lno, "bad vertex id"))?);
        }
        paths.push(path);
    }
    Ok(RoutedSolution::from_paths(paths))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_accepts_trivial_cases() {
        let mut b = DigraphBuilder::new(2);
        b.add_arc(0, 1);
        let g = b.build();
        let inst = Instance::new(g.clone(), vec![], 1, false);
        assert!(verify_solution(&inst, &RoutedSolution::from_paths(vec![])).is_ok());

        let inst = Instance::new(g, vec![Request::new(0, 1, 1)], 1, false);
        let sol = RoutedSolution::from_paths(vec![vec![0, 1]]);
        assert!(verify_solution(&inst, &sol).is_ok());
    }

    #[test]
    fn verify_flags_congestion() {
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1).add_arc(1, 2).add_arc(0, 2);
        let inst = Instance::new(b.build(), vec![Request::new(0, 2, 2)], 1, false);
        let sol = RoutedSolution::from_paths(vec![vec![0, 1, 2], vec![0, 1, 2]]);
        let errs = verify_solution(&inst, &sol).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::CongestionExceeded { vertex: 1, used: 2, limit: 1 })));
    }

    #[test]
    fn verify_arity() {
        let mut b = DigraphBuilder::new(2);
        b.add_arc(0, 1);
        let inst = Instance::new(b.build(), vec![Request::new(0, 1, 2)], 2, false);
        let sol = RoutedSolution::from_paths(vec![vec![0, 1]]);
        assert_eq!(
            verify_solution_arity(&inst, &sol),
            Err(InstanceError::ArityMismatch { want: 2, got: 1 })
        );
    }

    #[test]
    fn counterexample_shape() {
        let (inst, layout) = counterexample(2, 1, 1);
        assert_eq!(inst.graph.vertex_count(), 12);
        assert!(inst.graph.is_tournament());
        assert_eq!(inst.k(), 2);
        // the planted 2-triple rails
        assert!(inst.graph.has_arc(layout.u[0][0], layout.v[0][0]));
        assert!(inst.graph.has_arc(layout.v[0][1], layout.u[0][4]));

        let (inst, _) = counterexample(2, 2, 2);
        assert_eq!(inst.k(), 8);
        assert_eq!(inst.congestion, 2);
        assert!(inst.graph.is_tournament());
    }

    #[test]
    fn asymmetric_shape() {
        let (inst, _) = counterexample_asymmetric(2);
        assert_eq!(inst.graph.vertex_count(), 12);
        assert_eq!(inst.k(), 3);
        assert_eq!(inst.congestion, 2);
    }

    #[test]
    fn random_generators_deterministic() {
        let a = random_tournament(5, 7);
        let b = random_tournament(5, 7);
        assert_eq!(a, b);
        assert!(a.is_tournament());
        let s = random_semicomplete(6, 1.0, 3);
        assert_eq!(s.h_semicompleteness(), 0);
        assert_eq!(s.arc_count(), 30);
    }

    #[test]
    fn format_round_trip() {
        let (mut inst, _) = counterexample(1, 2, 1);
        inst.names.insert(0, "u_1".into());
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.names.get(&0).map(String::as_str), Some("u_1"));
        // byte identity on re-serialization
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn parse_errors() {
        let loops = "ddp 1\nn 4 c 1 restricted 0\narcs\n3 3\nend\nrequests\nend\n";
        assert!(matches!(read_instance(loops), Err(InstanceError::Parse { line: 4, .. })));
        let trailing = "ddp 1\nn 2 c 1 restricted 0\narcs\n0 1\nend\nrequests\nend\nextra\n";
        assert!(matches!(read_instance(trailing), Err(InstanceError::Parse { line: 8, .. })));
        let multiplicity = "ddp 1\nn 3 c 2 restricted 1\narcs\n0 1\nend\nrequests\n0 1 5\nend\n";
        let inst = read_instance(multiplicity).unwrap();
        assert_eq!(inst.k(), 5);
        assert!(inst.restricted);
    }
}
