//! Exact oracles for `(k, c)`-disjoint-paths instances: feasibility,
//! minimum-total-length solutions, full solution enumeration, bounded
//! shortcut detection, and vertex relevance.
//!
//! The search routes one unit request at a time, shortest candidate paths
//! first, under three admissible prunes that gadget instances reward heavily:
//! per-vertex capacity with reserved endpoint claims, distance-to-target
//! reachability, and memoized infeasible (request, occupancy) states.

use crate::instances::{verify_solution, Instance, RoutedSolution};
use std::collections::{HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    /// The search hit its node or time budget; not a feasibility verdict.
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("vertex {0} is a terminal")]
    TerminalVertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Any,
    MinTotalLength,
}

/// Node/time limits. A run that exhausts either reports
/// [`SolverError::BudgetExceeded`] instead of a verdict.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub node_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn none() -> Self {
        Budget::default()
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { node_limit: Some(limit), deadline: None }
    }

    pub fn seconds(secs: u64) -> Self {
        Budget { node_limit: None, deadline: Some(Instant::now() + std::time::Duration::from_secs(secs)) }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub mode: SolveMode,
    pub budget: Budget,
    /// Worker count for root-level fan-out; the answer is identical for any
    /// value.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { mode: SolveMode::Any, budget: Budget::none(), jobs: 1 }
    }
}

impl SolveOptions {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn min() -> Self {
        SolveOptions { mode: SolveMode::MinTotalLength, ..Self::default() }
    }
}

/// Caps for [`enumerate_solutions`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerationCaps {
    pub max_vertices: usize,
    pub max_paths: usize,
    pub max_solutions: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps { max_vertices: 48, max_paths: 16, max_solutions: 500_000 }
    }
}

// A search group: one distinct (s, t) pair with total multiplicity and the
// unit-request slots it must fill in the output.
#[derive(Clone, Debug)]
struct Group {
    s: usize,
    t: usize,
    mult: usize,
    slots: Vec<usize>,
}

fn build_groups(inst: &Instance) -> (Vec<Group>, usize) {
    let mut groups: Vec<Group> = Vec::new();
    let mut slot = 0;
    for r in &inst.requests {
        for _ in 0..r.multiplicity {
            if let Some(g) = groups.iter_mut().find(|g| g.s == r.s && g.t == r.t) {
                g.mult += 1;
                g.slots.push(slot);
            } else {
                groups.push(Group { s: r.s, t: r.t, mult: 1, slots: vec![slot] });
            }
            slot += 1;
        }
    }
    (groups, slot)
}

struct Shared {
    nodes: AtomicU64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    // min-mode global upper bound (total length of best known solution)
    best_cost: AtomicUsize,
}

struct Search<'a> {
    inst: &'a Instance,
    n: usize,
    cap: usize,
    groups: &'a [Group],
    occ: Vec<u32>,
    reserve: Vec<u32>,
    terminal: Vec<bool>,
    chosen: Vec<Vec<Vec<usize>>>,
    memo: HashSet<(usize, Vec<u32>)>,
    shared: &'a Shared,
    mode: SolveMode,
    // best-so-far for min mode (local to this worker)
    best: Option<(usize, Vec<Vec<Vec<usize>>>)>,
    static_lb: &'a [usize],
    collect: Option<Vec<RoutedSolution>>,
    collect_limit: usize,
}

impl<'a> Search<'a> {
    fn new(
        inst: &'a Instance,
        groups: &'a [Group],
        shared: &'a Shared,
        mode: SolveMode,
        static_lb: &'a [usize],
    ) -> Self {
        let n = inst.graph.vertex_count();
        let mut reserve = vec![0u32; n];
        let mut terminal = vec![false; n];
        for g in groups {
            reserve[g.s] += g.mult as u32;
            reserve[g.t] += g.mult as u32;
            terminal[g.s] = true;
            terminal[g.t] = true;
        }
        Search {
            inst,
            n,
            cap: inst.congestion,
            groups,
            occ: vec![0; n],
            reserve,
            terminal,
            chosen: vec![Vec::new(); groups.len()],
            memo: HashSet::new(),
            shared,
            mode,
            best: None,
            static_lb,
            collect: None,
            collect_limit: usize::MAX,
        }
    }

    fn tick(&self) -> Result<(), SolverError> {
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(limit) = self.shared.node_limit {
            if nodes >= limit {
                return Err(SolverError::BudgetExceeded);
            }
        }
        if nodes % 4096 == 0 {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    return Err(SolverError::BudgetExceeded);
                }
            }
        }
        Ok(())
    }

    fn usable(&self, v: usize, s: usize, t: usize) -> bool {
        if self.occ[v] + 1 + self.reserve[v] > self.cap as u32 {
            return false;
        }
        if self.inst.restricted && self.terminal[v] && v != s && v != t {
            return false;
        }
        true
    }

    /// Arc-count distances to `t` over currently usable vertices; `u32::MAX`
    /// marks unreachable. An underestimate for any extension of the current
    /// state, so it is safe as a pruning bound.
    fn hops_to(&self, s: usize, t: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[t] = 0;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for u in self.inst.graph.in_neighbors(v) {
                if dist[u] == u32::MAX && (self.usable(u, s, t) || u == s) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    fn remaining_lb(&self, g_idx: usize, copies_left_in_g: usize) -> usize {
        let mut lb = copies_left_in_g * self.static_lb[g_idx];
        for (i, g) in self.groups.iter().enumerate().skip(g_idx + 1) {
            lb += g.mult * self.static_lb[i];
        }
        lb
    }

    fn current_total(&self) -> usize {
        self.chosen.iter().flat_map(|ps| ps.iter().map(|p| p.len())).sum()
    }

    /// Route copies of group `g_idx` starting with `copy`; `true` aborts the
    /// whole search (any-mode success).
    fn route(&mut self, g_idx: usize, copy: usize) -> Result<bool, SolverError> {
        if g_idx == self.groups.len() {
            return self.complete();
        }
        let memo_key_applicable = copy == 0 && self.mode != SolveMode::MinTotalLength;
        if memo_key_applicable && self.memo.contains(&(g_idx, self.occ.clone())) {
            return Ok(false);
        }
        if self.mode == SolveMode::MinTotalLength {
            let bound = self.current_total()
                + self.remaining_lb(g_idx, self.groups[g_idx].mult - copy);
            let best = self.shared.best_cost.load(Ordering::Relaxed);
            if bound > best {
                return Ok(false);
            }
        }

        let (s, t) = (self.groups[g_idx].s, self.groups[g_idx].t);
        self.reserve[s] -= 1;
        self.reserve[t] -= 1;
        let mut found = false;
        if self.usable(s, s, t) && self.usable(t, s, t) {
            let hops = self.hops_to(s, t);
            if hops[s] != u32::MAX {
                let cursor: Option<Vec<usize>> =
                    if copy > 0 { Some(self.chosen[g_idx].last().unwrap().clone()) } else { None };
                let min_len = (hops[s] as usize + 1).max(cursor.as_ref().map_or(2, |c| c.len()));
                'lengths: for len in min_len..=self.n {
                    let tight = cursor.as_ref().is_some_and(|c| c.len() == len);
                    let mut visited = vec![false; self.n];
                    visited[s] = true;
                    self.occ[s] += 1;
                    let mut path = vec![s];
                    let r = self.extend(
                        g_idx, copy, t, len, &mut path, &mut visited, tight, cursor.as_deref(), &hops,
                    );
                    self.occ[s] -= 1;
                    match r {
                        Err(e) => {
                            self.reserve[s] += 1;
                            self.reserve[t] += 1;
                            return Err(e);
                        }
                        Ok(true) => {
                            found = true;
                            break 'lengths;
                        }
                        Ok(false) => {}
                    }
                }
            }
        }
        self.reserve[s] += 1;
        self.reserve[t] += 1;
        if !found && memo_key_applicable {
            if self.memo.len() < 2_000_000 {
                self.memo.insert((g_idx, self.occ.clone()));
            }
        }
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        g_idx: usize,
        copy: usize,
        t: usize,
        len: usize,
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        tight: bool,
        cursor: Option<&[usize]>,
        hops: &[u32],
    ) -> Result<bool, SolverError> {
        self.tick()?;
        let head = *path.last().unwrap();
        if path.len() == len {
            if head != t {
                return Ok(false);
            }
            self.chosen[g_idx].push(path.clone());
            let r = if copy + 1 < self.groups[g_idx].mult {
                self.route(g_idx, copy + 1)
            } else {
                self.route(g_idx + 1, 0)
            };
            self.chosen[g_idx].pop();
            return r;
        }
        let pos = path.len();
        let s = path[0];
        let remaining = (len - pos - 1) as u32;
        let mut out: Vec<usize> = self.inst.graph.out_neighbors(head).collect();
        out.sort_unstable();
        for v in out {
            if tight {
                let cv = cursor.unwrap()[pos];
                if v < cv {
                    continue;
                }
            }
            if visited[v] || !self.usable(v, s, t) || hops[v] == u32::MAX || hops[v] > remaining {
                continue;
            }
            // reaching t early only allowed at the exact target length
            if v == t && remaining != 0 {
                continue;
            }
            let new_tight = tight && v == cursor.unwrap()[pos];
            visited[v] = true;
            self.occ[v] += 1;
            path.push(v);
            let r = self.extend(g_idx, copy, t, len, path, visited, new_tight, cursor, hops);
            path.pop();
            self.occ[v] -= 1;
            visited[v] = false;
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn complete(&mut self) -> Result<bool, SolverError> {
        match self.mode {
            SolveMode::Any => {
                if self.collect.is_some() {
                    let sol = assemble(self.groups, &self.chosen, self.total_slots());
                    let collector = self.collect.as_mut().unwrap();
                    collector.push(sol);
                    if collector.len() > self.collect_limit {
                        return Err(SolverError::CapExceeded(format!(
                            "more than {} solutions",
                            self.collect_limit
                        )));
                    }
                    Ok(false)
                } else {
                    // snapshot before the recursion unwinds and pops `chosen`
                    self.best = Some((self.current_total(), self.chosen.clone()));
                    Ok(true)
                }
            }
            SolveMode::MinTotalLength => {
                let total = self.current_total();
                let known = self.shared.best_cost.load(Ordering::Relaxed);
                if total < known {
                    self.shared.best_cost.fetch_min(total, Ordering::Relaxed);
                }
                if self.best.as_ref().is_none_or(|(c, _)| total < *c) {
                    self.best = Some((total, self.chosen.clone()));
                }
                Ok(false)
            }
        }
    }

    fn total_slots(&self) -> usize {
        self.groups.iter().map(|g| g.mult).sum()
    }
}

fn assemble(groups: &[Group], chosen: &[Vec<Vec<usize>>], total: usize) -> RoutedSolution {
    let mut paths = vec![Vec::new(); total];
    for (g, picked) in groups.iter().zip(chosen) {
        for (slot, path) in g.slots.iter().zip(picked) {
            paths[*slot] = path.clone();
        }
    }
    RoutedSolution::from_paths(paths)
}

fn static_lower_bounds(inst: &Instance, groups: &[Group]) -> Vec<usize> {
    let n = inst.graph.vertex_count();
    let terminal: Vec<bool> = {
        let mut t = vec![false; n];
        for g in groups {
            t[g.s] = true;
            t[g.t] = true;
        }
        t
    };
    groups
        .iter()
        .map(|g| {
            let mut dist = vec![u32::MAX; n];
            dist[g.t] = 0;
            let mut queue = VecDeque::from([g.t]);
            while let Some(v) = queue.pop_front() {
                for u in inst.graph.in_neighbors(v) {
                    let blocked = inst.restricted && terminal[u] && u != g.s && u != g.t;
                    if dist[u] == u32::MAX && !blocked {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            if dist[g.s] == u32::MAX {
                // unreachable; any search will fail quickly, bound stays weak
                2
            } else {
                dist[g.s] as usize + 1
            }
        })
        .collect()
}

/// Solve an instance. `Ok(None)` is a verified "no solution"; budget
/// exhaustion is an error, never a verdict.
pub fn solve(inst: &Instance, opts: SolveOptions) -> Result<Option<RoutedSolution>, SolverError> {
    let (groups, total) = build_groups(inst);
    if total == 0 {
        return Ok(Some(RoutedSolution::from_paths(vec![])));
    }
    let shared = Shared {
        nodes: AtomicU64::new(0),
        node_limit: opts.budget.node_limit,
        deadline: opts.budget.deadline,
        best_cost: AtomicUsize::new(usize::MAX),
    };
    let static_lb = static_lower_bounds(inst, &groups);
    let jobs = opts.jobs.max(1);
    let result = if jobs == 1 {
        solve_sequential(inst, &groups, &shared, opts.mode, &static_lb, total)?
    } else {
        solve_fanout(inst, &groups, &shared, opts.mode, &static_lb, total, jobs)?
    };
    if let Some(sol) = &result {
        debug_assert!(verify_solution(inst, sol).is_ok());
    }
    Ok(result)
}

fn solve_sequential(
    inst: &Instance,
    groups: &[Group],
    shared: &Shared,
    mode: SolveMode,
    static_lb: &[usize],
    total: usize,
) -> Result<Option<RoutedSolution>, SolverError> {
    let mut search = Search::new(inst, groups, shared, mode, static_lb);
    search.route(0, 0)?;
    Ok(search.best.take().map(|(_, chosen)| assemble(groups, &chosen, total)))
}

// Root-level fan-out: tasks are (length, first-arc) cells of the first
// group's candidate grid, processed in waves in task order, so the returned
// solution is the one the sequential search would produce.
fn solve_fanout(
    inst: &Instance,
    groups: &[Group],
    shared: &Shared,
    mode: SolveMode,
    static_lb: &[usize],
    total: usize,
    jobs: usize,
) -> Result<Option<RoutedSolution>, SolverError> {
    let n = inst.graph.vertex_count();
    let g0 = &groups[0];
    let (s, t) = (g0.s, g0.t);

    // Task grid in sequential candidate order.
    let mut probe = Search::new(inst, groups, shared, mode, static_lb);
    probe.reserve[s] -= 1;
    probe.reserve[t] -= 1;
    let mut seeds: Vec<(usize, usize)> = Vec::new(); // (target_len, second_vertex)
    if probe.usable(s, s, t) && probe.usable(t, s, t) {
        let hops = probe.hops_to(s, t);
        if hops[s] != u32::MAX {
            let min_len = (hops[s] as usize + 1).max(2);
            for len in min_len..=n {
                let mut out: Vec<usize> = inst.graph.out_neighbors(s).collect();
                out.sort_unstable();
                for v in out {
                    if v == t && len != 2 {
                        continue;
                    }
                    if hops[v] != u32::MAX && (hops[v] as usize) <= len.saturating_sub(2) {
                        seeds.push((len, v));
                    }
                }
            }
        }
    }
    if seeds.is_empty() {
        return Ok(None);
    }

    let run_task = |(len, second): (usize, usize)| -> Result<Option<(usize, Vec<Vec<Vec<usize>>>)>, SolverError> {
        let mut search = Search::new(inst, groups, shared, mode, static_lb);
        search.reserve[s] -= 1;
        search.reserve[t] -= 1;
        if !search.usable(second, s, t) {
            return Ok(None);
        }
        let hops = search.hops_to(s, t);
        let mut visited = vec![false; search.n];
        visited[s] = true;
        search.occ[s] += 1;
        visited[second] = true;
        search.occ[second] += 1;
        let mut path = vec![s, second];
        search.extend(0, 0, t, len, &mut path, &mut visited, false, None, &hops)?;
        Ok(search.best.take())
    };

    let mut best: Option<(usize, usize, Vec<Vec<Vec<usize>>>)> = None; // (cost, task, chosen)
    let mut idx = 0;
    while idx < seeds.len() {
        let wave: Vec<(usize, (usize, usize))> =
            (idx..(idx + jobs).min(seeds.len())).map(|i| (i, seeds[i])).collect();
        idx += wave.len();
        let results: Vec<(usize, Result<Option<(usize, Vec<Vec<Vec<usize>>>)>, SolverError>)> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = wave
                    .iter()
                    .map(|&(i, seed)| {
                        let run_task = &run_task;
                        scope.spawn(move || (i, run_task(seed)))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
        for (i, r) in results {
            match r? {
                None => {}
                Some((cost, chosen)) => match mode {
                    SolveMode::Any => {
                        // tasks are in candidate order: first success wins
                        if best.as_ref().is_none_or(|(_, bi, _)| i < *bi) {
                            best = Some((cost, i, chosen));
                        }
                    }
                    SolveMode::MinTotalLength => {
                        if best.as_ref().is_none_or(|(bc, bi, _)| cost < *bc || (cost == *bc && i < *bi)) {
                            best = Some((cost, i, chosen));
                        }
                    }
                },
            }
        }
        if mode == SolveMode::Any {
            if let Some((_, bi, _)) = &best {
                // everything ordered before bi already finished in this or an
                // earlier wave, so the winner is final
                if *bi < idx {
                    break;
                }
            }
        }
    }
    Ok(best.map(|(_, _, chosen)| assemble(groups, &chosen, total)))
}

/// Complete, duplicate-free enumeration of all solutions of a small instance.
/// Paths of equal requests are listed in non-decreasing (length, lex) order,
/// so each solution multiset appears exactly once.
pub fn enumerate_solutions(
    inst: &Instance,
    caps: EnumerationCaps,
    budget: Budget,
) -> Result<Vec<RoutedSolution>, SolverError> {
    let n = inst.graph.vertex_count();
    if n > caps.max_vertices {
        return Err(SolverError::CapExceeded(format!("n = {n} over {}", caps.max_vertices)));
    }
    if inst.k() > caps.max_paths {
        return Err(SolverError::CapExceeded(format!("k = {} over {}", inst.k(), caps.max_paths)));
    }
    let (groups, _total) = build_groups(inst);
    if groups.is_empty() {
        return Ok(vec![RoutedSolution::from_paths(vec![])]);
    }
    let shared = Shared {
        nodes: AtomicU64::new(0),
        node_limit: budget.node_limit,
        deadline: budget.deadline,
        best_cost: AtomicUsize::new(usize::MAX),
    };
    let static_lb = static_lower_bounds(inst, &groups);
    let mut search = Search::new(inst, &groups, &shared, SolveMode::Any, &static_lb);
    search.collect = Some(Vec::new());
    search.collect_limit = caps.max_solutions;
    search.route(0, 0)?;
    Ok(search.collect.unwrap())
}

/// Options for [`find_shortcut`].
#[derive(Clone, Copy, Debug)]
pub struct ShortcutOptions {
    /// Maximum number of vertices of a candidate replacement walk.
    pub max_walk_vertices: usize,
    /// When false, replacement walks may exceed the congestion bound; used
    /// only to replay lemma arguments that supply feasibility by context.
    pub check_congestion: bool,
}

impl Default for ShortcutOptions {
    fn default() -> Self {
        ShortcutOptions { max_walk_vertices: 8, check_congestion: true }
    }
}

/// Search for a congestion-feasible replacement walk for a subpath of path
/// `i` that uses strictly fewer vertices. Minimum-total-length solutions
/// admit none.
pub fn find_shortcut(
    inst: &Instance,
    sol: &RoutedSolution,
    i: usize,
    opts: ShortcutOptions,
) -> Option<Vec<usize>> {
    let path = &sol.paths[i];
    let expanded = inst.expanded_requests();
    let (s_i, t_i) = expanded[i];
    let n = inst.graph.vertex_count();
    // occupancy by the other paths only
    let mut other = vec![0u32; n];
    for (j, p) in sol.paths.iter().enumerate() {
        if j != i {
            for &v in p {
                other[v] += 1;
            }
        }
    }
    let on_path: Vec<bool> = {
        let mut m = vec![false; n];
        for &v in path {
            m[v] = true;
        }
        m
    };
    let admissible = |v: usize| -> bool {
        if inst.restricted && v != s_i && v != t_i && inst.is_terminal(v) {
            return false;
        }
        if opts.check_congestion && !on_path[v] && other[v] + 1 > inst.congestion as u32 {
            return false;
        }
        true
    };
    for p in 0..path.len() {
        for q in (p + 2)..path.len() {
            let from = path[p];
            let to = path[q];
            let replaced = q - p + 1;
            let max_len = (replaced - 1).min(opts.max_walk_vertices);
            if max_len < 2 {
                continue;
            }
            for len in 2..=max_len {
                let mut walk = vec![from];
                let mut visited = vec![false; n];
                visited[from] = true;
                if walk_dfs(inst, &mut walk, &mut visited, to, len, &admissible) {
                    return Some(walk);
                }
            }
        }
    }
    None
}

fn walk_dfs(
    inst: &Instance,
    walk: &mut Vec<usize>,
    visited: &mut [bool],
    to: usize,
    len: usize,
    admissible: &dyn Fn(usize) -> bool,
) -> bool {
    let head = *walk.last().unwrap();
    if walk.len() == len {
        return head == to;
    }
    let mut out: Vec<usize> = inst.graph.out_neighbors(head).collect();
    out.sort_unstable();
    for v in out {
        if visited[v] || !admissible(v) {
            continue;
        }
        if v == to && walk.len() + 1 != len {
            continue;
        }
        visited[v] = true;
        walk.push(v);
        if walk_dfs(inst, walk, visited, to, len, admissible) {
            return true;
        }
        walk.pop();
        visited[v] = false;
    }
    false
}

/// A vertex is relevant when the instance is solvable and deleting the vertex
/// makes it unsolvable. Every vertex of an infeasible instance is irrelevant.
pub fn is_relevant(inst: &Instance, v: usize, budget: Budget) -> Result<bool, SolverError> {
    if inst.is_terminal(v) {
        return Err(SolverError::TerminalVertex(v));
    }
    let opts = SolveOptions { budget, ..SolveOptions::any() };
    let solvable = solve(inst, opts)?.is_some();
    if !solvable {
        return Ok(false);
    }
    let without = inst.delete_vertex(v);
    let solvable_without = solve(&without, opts)?.is_some();
    Ok(!solvable_without)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DigraphBuilder;
    use crate::instances::{counterexample, counterexample_asymmetric, Request};

    fn arc_instance() -> Instance {
        let mut b = DigraphBuilder::new(2);
        b.add_arc(0, 1);
        Instance::new(b.build(), vec![Request::new(0, 1, 1)], 1, false)
    }

    #[test]
    fn single_arc() {
        let inst = arc_instance();
        let sol = solve(&inst, SolveOptions::any()).unwrap().unwrap();
        assert_eq!(sol.paths, vec![vec![0, 1]]);
        assert_eq!(sol.total_length(), 2);
    }

    #[test]
    fn k_zero_is_trivially_solvable() {
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1);
        let inst = Instance::new(b.build(), vec![], 1, false);
        let sol = solve(&inst, SolveOptions::any()).unwrap().unwrap();
        assert!(sol.paths.is_empty());
    }

    #[test]
    fn counterexample_is_forced_onto_rails() {
        let (inst, layout) = counterexample(2, 1, 1);
        let sol = solve(&inst, SolveOptions::any()).unwrap().unwrap();
        assert!(verify_solution(&inst, &sol).is_ok());
        let m = 2 * 2 + 2;
        assert_eq!(sol.paths[0], layout.u[0][..m].to_vec());
        let mut rail: Vec<usize> = layout.v[0].clone();
        rail.reverse();
        assert_eq!(sol.paths[1], rail);
    }

    #[test]
    fn enumerate_rail_solutions() {
        let (inst, layout) = counterexample(1, 1, 1);
        let sols = enumerate_solutions(&inst, EnumerationCaps::default(), Budget::none()).unwrap();
        assert!(!sols.is_empty());
        for sol in &sols {
            for &v in &layout.inner_rail_vertices() {
                assert!(sol.uses(v) >= 1, "inner rail vertex {v} unused in some solution");
            }
        }
    }

    #[test]
    fn enumerate_lists_all_paths_between_adjacent_vertices() {
        // transitive tournament on 3 vertices, request between the endpoints
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1).add_arc(0, 2).add_arc(1, 2);
        let inst = Instance::new(b.build(), vec![Request::new(0, 2, 1)], 1, false);
        let sols = enumerate_solutions(&inst, EnumerationCaps::default(), Budget::none()).unwrap();
        let paths: Vec<Vec<usize>> = sols.into_iter().map(|s| s.paths[0].clone()).collect();
        assert_eq!(paths, vec![vec![0, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn infeasible_is_verified() {
        // no arc from 1 to 0
        let mut b = DigraphBuilder::new(2);
        b.add_arc(0, 1);
        let inst = Instance::new(b.build(), vec![Request::new(1, 0, 1)], 1, false);
        assert_eq!(solve(&inst, SolveOptions::any()).unwrap(), None);
        let sols = enumerate_solutions(&inst, EnumerationCaps::default(), Budget::none()).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn min_mode_agrees_with_any_mode_on_feasibility() {
        for seed in 0..20 {
            let g = crate::instances::random_semicomplete(7, 0.2, seed);
            let mut rng = crate::rng::split(seed, 1);
            let reqs = crate::instances::random_requests(7, 2, &mut rng);
            let inst = Instance::new(g, reqs, 2, false);
            let any = solve(&inst, SolveOptions::any()).unwrap();
            let min = solve(&inst, SolveOptions::min()).unwrap();
            assert_eq!(any.is_some(), min.is_some());
            if let Some(m) = &min {
                assert!(verify_solution(&inst, m).is_ok());
                for i in 0..m.paths.len() {
                    assert_eq!(find_shortcut(&inst, m, i, ShortcutOptions::default()), None);
                }
            }
        }
    }

    #[test]
    fn jobs_do_not_change_answers() {
        for seed in 0..10 {
            let g = crate::instances::random_semicomplete(7, 0.3, seed);
            let mut rng = crate::rng::split(seed, 2);
            let reqs = crate::instances::random_requests(7, 2, &mut rng);
            let inst = Instance::new(g, reqs, 2, false);
            for mode in [SolveMode::Any, SolveMode::MinTotalLength] {
                let seq = solve(&inst, SolveOptions { mode, ..SolveOptions::any() }).unwrap();
                let par = solve(&inst, SolveOptions { mode, jobs: 4, ..SolveOptions::any() }).unwrap();
                assert_eq!(seq, par, "seed {seed} mode {mode:?}");
            }
        }
    }

    #[test]
    fn budget_is_distinguished_from_infeasible() {
        let (inst, _) = counterexample(2, 2, 2);
        let opts = SolveOptions { budget: Budget::nodes(5), ..SolveOptions::any() };
        assert_eq!(solve(&inst, opts), Err(SolverError::BudgetExceeded));
    }

    #[test]
    fn shortcut_on_lengthened_path() {
        // path 0 -> 1 -> 2 with direct arc 0 -> 2 available
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1).add_arc(1, 2).add_arc(0, 2);
        let inst = Instance::new(b.build(), vec![Request::new(0, 2, 1)], 1, false);
        let sol = RoutedSolution::from_paths(vec![vec![0, 1, 2]]);
        assert_eq!(find_shortcut(&inst, &sol, 0, ShortcutOptions::default()), Some(vec![0, 2]));
    }

    #[test]
    fn relevance_on_counterexamples() {
        let (inst, layout) = counterexample(2, 1, 1);
        for v in layout.inner_rail_vertices() {
            assert!(is_relevant(&inst, v, Budget::none()).unwrap(), "vertex {v} should be relevant");
        }
        let (inst, layout) = counterexample_asymmetric(2);
        // u_3 is irrelevant in the lopsided variant
        assert!(!is_relevant(&inst, layout.u[0][2], Budget::none()).unwrap());
        // terminals are rejected
        assert_eq!(
            is_relevant(&inst, layout.u[0][0], Budget::none()),
            Err(SolverError::TerminalVertex(layout.u[0][0]))
        );
    }

    #[test]
    fn infeasible_instance_makes_everything_irrelevant() {
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1).add_arc(2, 1);
        let inst = Instance::new(b.build(), vec![Request::new(1, 0, 1)], 1, false);
        assert!(!is_relevant(&inst, 2, Budget::none()).unwrap());
    }
}
