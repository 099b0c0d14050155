//! Directed path decompositions: the three-condition validator, exact width
//! computation via layouts, and an exact routing DP over a decomposition.

use crate::digraph::Digraph;
use crate::instances::{verify_solution, Instance, RoutedSolution};
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathwidthError {
    #[error("exact search cap exceeded: n = {n}, cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("decomposition invalid: {0:?}")]
    InvalidDecomposition(Defect),
    #[error("routing DP state limit exceeded ({0} states)")]
    StateLimitExceeded(usize),
    #[error("internal: {0}")]
    Internal(String),
}

/// An ordered bag sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedPathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

/// First violated validity condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// A vertex in no bag.
    Cover(usize),
    /// An arc whose tail never appears at or after a bag holding its head.
    Arc(usize, usize),
    /// A vertex whose bag indices do not form one interval.
    Contiguity(usize),
}

impl DirectedPathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        DirectedPathDecomposition { bags }
    }

    /// `max |X_i| - 1`.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    fn intervals(&self, n: usize) -> (Vec<usize>, Vec<usize>) {
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0usize; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    first[v] = first[v].min(i);
                    last[v] = last[v].max(i);
                }
            }
        }
        (first, last)
    }
}

/// Check the three conditions: every vertex covered, every arc within a bag
/// or pointing to an earlier-or-equal bag, and bag indices per vertex forming
/// a single interval.
pub fn validate_decomposition(g: &Digraph, dec: &DirectedPathDecomposition) -> Result<(), Defect> {
    let n = g.vertex_count();
    for bag in &dec.bags {
        for &v in bag {
            if v >= n {
                return Err(Defect::Cover(v));
            }
        }
    }
    let (first, last) = dec.intervals(n);
    if let Some(v) = (0..n).find(|&v| first[v] == usize::MAX) {
        return Err(Defect::Cover(v));
    }
    for (u, v) in g.arcs() {
        // some bag of u at or after some bag of v
        if last[u] < first[v] {
            return Err(Defect::Arc(u, v));
        }
    }
    for v in 0..n {
        let mut count = 0;
        for bag in &dec.bags[first[v]..=last[v]] {
            if bag.contains(&v) {
                count += 1;
            }
        }
        if count != last[v] - first[v] + 1 {
            return Err(Defect::Contiguity(v));
        }
    }
    Ok(())
}

pub const EXACT_DPW_CAP: usize = 18;

/// Exact directed pathwidth with a witness decomposition.
///
/// Realized as a layout problem: a prefix `S` of an ordering pays for its
/// boundary, the vertices of `S` with an out-arc leaving `S`; the optimum
/// over orderings of the maximum prefix boundary equals the directed
/// pathwidth. The DP runs over subsets; the witness layout is turned into
/// bags and re-validated rather than trusted.
pub fn exact_dpw(
    g: &Digraph,
    cap: usize,
) -> Result<(usize, DirectedPathDecomposition), PathwidthError> {
    let n = g.vertex_count();
    if n > cap || n > 25 {
        return Err(PathwidthError::CapExceeded { n, cap: cap.min(25) });
    }
    if n == 0 {
        return Ok((0, DirectedPathDecomposition::new(vec![])));
    }
    let out_mask: Vec<u32> = (0..n)
        .map(|u| {
            let mut m = 0u32;
            for v in g.out_neighbors(u) {
                m |= 1 << v;
            }
            m
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let boundary = |s: u32| -> u8 {
        let mut cnt = 0u8;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if out_mask[v] & !s != 0 {
                cnt += 1;
            }
        }
        cnt
    };
    let mut h = vec![u8::MAX; (full as usize) + 1];
    h[0] = 0;
    let mut bnd = vec![0u8; (full as usize) + 1];
    for s in 1..=full {
        bnd[s as usize] = boundary(s);
    }
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = s & !(1 << v);
            let cost = h[prev as usize].max(bnd[prev as usize]);
            if cost < best {
                best = cost;
            }
        }
        h[s as usize] = best;
    }
    let width = h[full as usize] as usize;
    // reconstruct an optimal layout, lowest achieving vertex last
    let mut layout_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut pick = None;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = s & !(1 << v);
            if h[prev as usize].max(bnd[prev as usize]) == h[s as usize] {
                pick = Some(v);
                break;
            }
        }
        let v = pick.ok_or_else(|| PathwidthError::Internal("layout reconstruction".into()))?;
        layout_rev.push(v as usize);
        s &= !(1 << v);
    }
    layout_rev.reverse();
    let dec = layout_to_bags(g, &layout_rev);
    if let Err(d) = validate_decomposition(g, &dec) {
        return Err(PathwidthError::Internal(format!("witness failed validation: {d:?}")));
    }
    if dec.width() != width {
        return Err(PathwidthError::Internal(format!(
            "witness width {} differs from computed {width}",
            dec.width()
        )));
    }
    Ok((width, dec))
}

/// Bags of a layout: the i-th bag is the i-th vertex plus every earlier
/// vertex still owning an out-arc into the unprocessed suffix.
pub fn layout_to_bags(g: &Digraph, layout: &[usize]) -> DirectedPathDecomposition {
    let n = layout.len();
    let mut in_prefix = vec![false; g.vertex_count()];
    let mut bags = Vec::with_capacity(n);
    for (i, &v) in layout.iter().enumerate() {
        let mut bag: Vec<usize> = layout[..i]
            .iter()
            .copied()
            .filter(|&u| g.out_neighbors(u).any(|w| !in_prefix[w]))
            .collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        in_prefix[v] = true;
    }
    DirectedPathDecomposition::new(bags)
}

pub fn write_decomposition(dec: &DirectedPathDecomposition) -> String {
    let mut out = String::from("dpd 1\n");
    for bag in &dec.bags {
        let words: Vec<String> = bag.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

pub fn read_decomposition(text: &str) -> Result<DirectedPathDecomposition, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next().map(str::trim) != Some("dpd 1") {
        return Err("expected header `dpd 1`".into());
    }
    let mut bags = Vec::new();
    for line in lines {
        let bag: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        bags.push(bag.map_err(|e| format!("bad index: {e}"))?);
    }
    Ok(DirectedPathDecomposition::new(bags))
}

// ---------------------------------------------------------------------------
// Exact routing DP over a decomposition
// ---------------------------------------------------------------------------

const DP_STATE_LIMIT: usize = 400_000;

const TAIL_S: u16 = u16::MAX;
const HEAD_T: u16 = u16::MAX;

/// One contiguous placed piece of a request's path. `tail` is the earliest
/// vertex of the piece (TAIL_S once the source is placed), `head` the latest
/// (HEAD_T once the target is placed). A head in transit has committed to an
/// arc into a vertex the sweep has not introduced yet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Frag {
    tail: u16,
    head: u16,
    transit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct DpState {
    /// per expanded request, fragments sorted for dedup
    reqs: Vec<Vec<Frag>>,
    /// usage counts of alive vertices, ascending vertex order
    usage: Vec<(u16, u16)>,
}

impl DpState {
    fn done(&self) -> bool {
        self.reqs
            .iter()
            .all(|f| f.len() == 1 && f[0].tail == TAIL_S && f[0].head == HEAD_T && !f[0].transit)
    }
}

/// The committed arcs of a placement step, for witness reconstruction.
#[derive(Clone, Debug)]
struct LogArc {
    req: usize,
    from: u16,
    to: u16,
}

struct DpCtx<'a> {
    inst: &'a Instance,
    reqs: Vec<(usize, usize)>,
    groups: Vec<Vec<usize>>,
    cap: u16,
    terminal: Vec<bool>,
}

impl DpCtx<'_> {
    fn blocked(&self, req: usize, v: usize) -> bool {
        let (s, t) = self.reqs[req];
        self.inst.restricted && self.terminal[v] && v != s && v != t
    }

    fn canonical(&self, mut st: DpState) -> DpState {
        for frags in st.reqs.iter_mut() {
            frags.sort();
        }
        for group in &self.groups {
            if group.len() > 1 {
                let mut slice: Vec<Vec<Frag>> =
                    group.iter().map(|&i| st.reqs[i].clone()).collect();
                slice.sort();
                for (&i, s) in group.iter().zip(slice) {
                    st.reqs[i] = s;
                }
            }
        }
        st
    }
}

fn usage_of(st: &DpState, v: u16) -> u16 {
    st.usage.iter().find(|&&(x, _)| x == v).map_or(0, |&(_, c)| c)
}

fn bump_usage(st: &mut DpState, v: u16) {
    match st.usage.binary_search_by_key(&v, |&(x, _)| x) {
        Ok(i) => st.usage[i].1 += 1,
        Err(i) => st.usage.insert(i, (v, 1)),
    }
}

// A state plus its position in the reconstruction arena.
type Node = (DpState, usize);

/// Exact solver driven by a validated decomposition: returns a verified
/// solution iff one exists.
///
/// Sweeping bags right to left, every vertex decides its role on each path
/// the moment it is introduced: skipped, or placed with an optional
/// predecessor link (an alive fragment head, or a transit landing) and an
/// optional successor link (an alive fragment tail). Open tails die when
/// forgotten; open heads branch into transit commitments over future
/// out-neighbors. Exponential in requests times width; a state-count guard
/// aborts cleanly on blow-up.
pub fn dp_solve(
    inst: &Instance,
    dec: &DirectedPathDecomposition,
) -> Result<Option<RoutedSolution>, PathwidthError> {
    if let Err(d) = validate_decomposition(&inst.graph, dec) {
        return Err(PathwidthError::InvalidDecomposition(d));
    }
    let reqs = inst.expanded_requests();
    if reqs.is_empty() {
        return Ok(Some(RoutedSolution::from_paths(vec![])));
    }
    let n = inst.graph.vertex_count();
    let mut groups_map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &st) in reqs.iter().enumerate() {
        groups_map.entry(st).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = groups_map.into_values().collect();
    groups.sort();
    let terminal = {
        let mut t = vec![false; n];
        for &(s, tt) in &reqs {
            t[s] = true;
            t[tt] = true;
        }
        t
    };
    let ctx = DpCtx {
        inst,
        reqs: reqs.clone(),
        groups,
        cap: inst.congestion as u16,
        terminal,
    };
    let (first, last) = dec.intervals(n);

    let mut arena: Vec<(usize, Option<LogArc>)> = vec![(usize::MAX, None)];
    let root = DpState { reqs: vec![Vec::new(); reqs.len()], usage: vec![] };
    let mut frontier: Vec<Node> = vec![(root, 0)];

    let p = dec.bags.len();
    for step in 0..p {
        let bag_idx = p - 1 - step;
        let mut introduced: Vec<u16> = dec.bags[bag_idx]
            .iter()
            .map(|&v| v as u16)
            .filter(|&v| last[v as usize] == bag_idx)
            .collect();
        introduced.sort_unstable();
        introduced.dedup();
        for &v in &introduced {
            frontier = introduce_vertex(&ctx, &inst.graph, frontier, v, bag_idx, &last, &mut arena)?;
            if frontier.is_empty() {
                return Ok(None);
            }
        }
        let mut forgotten: Vec<u16> = dec.bags[bag_idx]
            .iter()
            .map(|&v| v as u16)
            .filter(|&v| first[v as usize] == bag_idx)
            .collect();
        forgotten.sort_unstable();
        forgotten.dedup();
        for &u in &forgotten {
            frontier = forget_vertex(&ctx, &inst.graph, frontier, u, bag_idx, &last, &mut arena)?;
            if frontier.is_empty() {
                return Ok(None);
            }
        }
    }

    let Some((_, node)) = frontier.iter().find(|(st, _)| st.done()) else {
        return Ok(None);
    };
    // rebuild arcs per request from the log
    let mut succ: Vec<HashMap<u16, u16>> = vec![HashMap::new(); reqs.len()];
    let mut cur = *node;
    while cur != usize::MAX {
        let (parent, arc) = &arena[cur];
        if let Some(a) = arc {
            succ[a.req].insert(a.from, a.to);
        }
        cur = *parent;
    }
    let mut paths: Vec<Vec<usize>> = Vec::with_capacity(reqs.len());
    for (r, &(s, t)) in reqs.iter().enumerate() {
        let mut path = vec![s];
        let mut at = s as u16;
        while at as usize != t {
            let Some(&next) = succ[r].get(&at) else {
                return Err(PathwidthError::Internal(format!("broken arc chain for request {r}")));
            };
            path.push(next as usize);
            at = next;
            if path.len() > n {
                return Err(PathwidthError::Internal(format!("cyclic arc chain for request {r}")));
            }
        }
        paths.push(path);
    }
    let sol = RoutedSolution::from_paths(paths);
    if let Err(v) = verify_solution(inst, &sol) {
        return Err(PathwidthError::Internal(format!("reconstructed solution invalid: {v:?}")));
    }
    Ok(Some(sol))
}

/// Expand all placement choices for newly introduced vertex `v`.
fn introduce_vertex(
    ctx: &DpCtx<'_>,
    g: &Digraph,
    frontier: Vec<Node>,
    v: u16,
    bag_idx: usize,
    last: &[usize],
    arena: &mut Vec<(usize, Option<LogArc>)>,
) -> Result<Vec<Node>, PathwidthError> {
    // a vertex can stay an open tail (resp. head) only if some in-neighbor
    // (resp. out-neighbor) is still ahead of the sweep; vertices of this bag
    // introduced after v count as ahead
    let ahead = |w: usize| last[w] < bag_idx || (last[w] == bag_idx && w > v as usize);
    let has_future_in = g.in_neighbors(v as usize).any(ahead);
    let has_future_out = g.out_neighbors(v as usize).any(ahead);
    let mut seen: HashSet<DpState> = HashSet::new();
    let mut out: Vec<Node> = Vec::new();
    for (st, node) in frontier {
        // expand one request at a time
        let mut partial: Vec<Node> = vec![(st, node)];
        for r in 0..ctx.reqs.len() {
            let mut next: Vec<Node> = Vec::new();
            for (st, node) in partial {
                expand_request(ctx, g, &st, node, r, v, has_future_in, has_future_out, &mut next, arena);
            }
            partial = next;
            if partial.len() + out.len() > DP_STATE_LIMIT {
                return Err(PathwidthError::StateLimitExceeded(partial.len() + out.len()));
            }
        }
        for (st, node) in partial {
            if usage_of(&st, v) <= ctx.cap {
                let canon = ctx.canonical(st.clone());
                if seen.insert(canon) {
                    out.push((st, node));
                }
            }
        }
        if out.len() > DP_STATE_LIMIT {
            return Err(PathwidthError::StateLimitExceeded(out.len()));
        }
    }
    Ok(prune_dominated(ctx, out))
}

/// Keep only states whose usage vector is Pareto-minimal among states with
/// identical fragment structure. A state that reaches the same fragments
/// while occupying less can always stand in for the heavier one.
fn prune_dominated(ctx: &DpCtx<'_>, states: Vec<Node>) -> Vec<Node> {
    let mut by_frags: HashMap<Vec<Vec<Frag>>, Vec<usize>> = HashMap::new();
    for (i, (st, _)) in states.iter().enumerate() {
        by_frags.entry(ctx.canonical(st.clone()).reqs).or_default().push(i);
    }
    let mut keep = vec![true; states.len()];
    for idxs in by_frags.values() {
        for &a in idxs {
            if !keep[a] {
                continue;
            }
            for &b in idxs {
                if a != b && keep[b] && usage_le(&states[a].0.usage, &states[b].0.usage) {
                    keep[b] = false;
                }
            }
        }
    }
    states
        .into_iter()
        .zip(keep)
        .filter_map(|(node, k)| k.then_some(node))
        .collect()
}

/// true iff a[v] <= b[v] for every vertex
fn usage_le(a: &[(u16, u16)], b: &[(u16, u16)]) -> bool {
    let mut bi = b.iter().peekable();
    for &(v, ca) in a {
        loop {
            match bi.peek() {
                None => return false,
                Some(&&(w, cb)) => {
                    if w < v {
                        bi.next();
                    } else if w == v {
                        if ca > cb {
                            return false;
                        }
                        bi.next();
                        break;
                    } else {
                        return false; // b lacks v entirely but a uses it
                    }
                }
            }
        }
    }
    true
}

/// All ways request `r` can treat vertex `v`: skip it, or place it with a
/// choice of predecessor (alive head / transit landing) and successor (alive
/// tail / close at the target).
#[allow(clippy::too_many_arguments)]
fn expand_request(
    ctx: &DpCtx<'_>,
    g: &Digraph,
    st: &DpState,
    node: usize,
    r: usize,
    v: u16,
    has_future_in: bool,
    has_future_out: bool,
    out: &mut Vec<Node>,
    arena: &mut Vec<(usize, Option<LogArc>)>,
) {
    let (s_r, t_r) = ctx.reqs[r];
    let frags = &st.reqs[r];
    // a finished request never places anything else
    if frags.len() == 1 && frags[0].tail == TAIL_S && frags[0].head == HEAD_T {
        out.push((st.clone(), node));
        return;
    }
    let transits: Vec<usize> = frags
        .iter()
        .enumerate()
        .filter(|(_, f)| f.transit && f.head == v)
        .map(|(i, _)| i)
        .collect();
    if transits.len() > 1 {
        return; // v would need two predecessors
    }
    let is_source = v as usize == s_r;
    let is_target = v as usize == t_r;
    let forced = !transits.is_empty() || is_source || is_target;

    // option: not on this path
    if !forced {
        out.push((st.clone(), node));
    }
    if ctx.blocked(r, v as usize) {
        return; // placements on foreign terminals are forbidden
    }
    if !transits.is_empty() && is_source {
        return; // the source has no predecessor
    }

    // predecessor choices
    #[derive(Clone, Copy)]
    enum Pred {
        None,
        Land(usize),
        Alive(usize),
    }
    let mut preds: Vec<Pred> = Vec::new();
    if let Some(&ti) = transits.first() {
        preds.push(Pred::Land(ti)); // forced landing
    } else if is_source {
        preds.push(Pred::None);
    } else {
        if has_future_in {
            preds.push(Pred::None); // wait as an open tail
        }
        for (i, f) in frags.iter().enumerate() {
            if !f.transit && f.head != HEAD_T && g.has_arc(f.head as usize, v as usize) {
                preds.push(Pred::Alive(i));
            }
        }
    }
    // successor choices
    let mut succs: Vec<Option<usize>> = Vec::new();
    if is_target {
        succs.push(None); // head closes at the target
    } else {
        if has_future_out {
            succs.push(None); // stay open
        }
        for (i, f) in frags.iter().enumerate() {
            if f.tail != TAIL_S && g.has_arc(v as usize, f.tail as usize) {
                succs.push(Some(i));
            }
        }
    }
    if preds.is_empty() || succs.is_empty() {
        return;
    }

    for &pred in &preds {
        for &succ in &succs {
            let pred_idx = match pred {
                Pred::None => None,
                Pred::Land(i) | Pred::Alive(i) => Some(i),
            };
            if let (Some(a), Some(b)) = (pred_idx, succ) {
                if a == b {
                    continue; // would close a cycle
                }
            }
            let mut reqs = st.reqs.clone();
            let frags = &mut reqs[r];
            let new_tail = match pred_idx {
                Some(i) => frags[i].tail,
                None if is_source => TAIL_S,
                None => v,
            };
            let new_head = match succ {
                Some(i) => frags[i].head,
                None if is_target => HEAD_T,
                None => v,
            };
            let new_transit = match succ {
                Some(i) => frags[i].transit,
                None => false,
            };
            let mut remove: Vec<usize> = pred_idx.iter().chain(succ.iter()).copied().collect();
            remove.sort_unstable();
            for &i in remove.iter().rev() {
                frags.remove(i);
            }
            frags.push(Frag { tail: new_tail, head: new_head, transit: new_transit });
            let mut st2 = DpState { reqs, usage: st.usage.clone() };
            bump_usage(&mut st2, v);
            // log committed arcs; a transit landing was logged at take-off
            let mut node2 = node;
            if let Pred::Alive(i) = pred {
                let from = st.reqs[r][i].head;
                arena.push((node2, Some(LogArc { req: r, from, to: v })));
                node2 = arena.len() - 1;
            }
            if let Some(i) = succ {
                let to = st.reqs[r][i].tail;
                arena.push((node2, Some(LogArc { req: r, from: v, to })));
                node2 = arena.len() - 1;
            }
            out.push((st2, node2));
        }
    }
}

/// Handle the disappearance of `u`: open tails at `u` die, open heads at `u`
/// branch into transit commitments over future out-neighbors.
fn forget_vertex(
    ctx: &DpCtx<'_>,
    g: &Digraph,
    frontier: Vec<Node>,
    u: u16,
    bag_idx: usize,
    last: &[usize],
    arena: &mut Vec<(usize, Option<LogArc>)>,
) -> Result<Vec<Node>, PathwidthError> {
    let mut seen: HashSet<DpState> = HashSet::new();
    let mut out: Vec<Node> = Vec::new();
    'state: for (mut st, node) in frontier {
        // collect fragments that reference u
        let mut branch_targets: Vec<(usize, usize, Vec<u16>)> = Vec::new(); // (req, frag, options)
        for r in 0..st.reqs.len() {
            for (fi, f) in st.reqs[r].iter().enumerate() {
                if f.tail == u {
                    continue 'state; // open tail forgotten: no predecessor can ever attach
                }
                if f.head == u && !f.transit {
                    let mut targets = Vec::new();
                    for w in g.out_neighbors(u as usize) {
                        // only vertices the sweep has not yet introduced; an
                        // arc into an already-seen vertex had its chance at
                        // that vertex's introduction
                        if last[w] < bag_idx
                            && !ctx.blocked(r, w)
                            && !st.reqs[r]
                                .iter()
                                .any(|other| other.transit && other.head == w as u16)
                        {
                            targets.push(w as u16);
                        }
                    }
                    if targets.is_empty() {
                        continue 'state;
                    }
                    branch_targets.push((r, fi, targets));
                }
            }
        }
        st.usage.retain(|&(x, _)| x != u);
        // expand the cartesian product of transit choices
        let mut partial: Vec<Node> = vec![(st, node)];
        for (r, fi, targets) in branch_targets {
            let mut next = Vec::new();
            for (st, node) in partial {
                for &w in &targets {
                    let mut st2 = st.clone();
                    st2.reqs[r][fi] = Frag { tail: st.reqs[r][fi].tail, head: w, transit: true };
                    arena.push((node, Some(LogArc { req: r, from: u, to: w })));
                    next.push((st2, arena.len() - 1));
                }
            }
            partial = next;
            if partial.len() + out.len() > DP_STATE_LIMIT {
                return Err(PathwidthError::StateLimitExceeded(partial.len() + out.len()));
            }
        }
        for (st, node) in partial {
            let canon = ctx.canonical(st.clone());
            if seen.insert(canon) {
                out.push((st, node));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DigraphBuilder;
    use crate::instances::{random_semicomplete, random_requests, Instance, Request};
    use crate::solver::{solve, SolveOptions};

    fn transitive(n: usize) -> Digraph {
        let mut b = DigraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_arc(u, v);
            }
        }
        b.build()
    }

    fn cycle3() -> Digraph {
        let mut b = DigraphBuilder::new(3);
        b.add_arc(0, 1).add_arc(1, 2).add_arc(2, 0);
        b.build()
    }

    /// Independent oracle: try every vertex ordering, score each by its
    /// maximum prefix boundary.
    fn exhaustive_layout_width(g: &Digraph) -> usize {
        fn permute(rest: &mut Vec<usize>, cur: &mut Vec<usize>, g: &Digraph, best: &mut usize) {
            if rest.is_empty() {
                let mut maxb = 0;
                for i in 0..cur.len() {
                    let prefix: std::collections::BTreeSet<usize> = cur[..i].iter().copied().collect();
                    let b = prefix
                        .iter()
                        .filter(|&&u| g.out_neighbors(u).any(|w| !prefix.contains(&w)))
                        .count();
                    maxb = maxb.max(b);
                }
                *best = (*best).min(maxb);
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                permute(rest, cur, g, best);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut rest: Vec<usize> = (0..g.vertex_count()).collect();
        let mut best = usize::MAX;
        permute(&mut rest, &mut Vec::new(), g, &mut best);
        best
    }

    #[test]
    fn width_formula() {
        let dec = DirectedPathDecomposition::new(vec![vec![0], vec![1], vec![2]]);
        assert_eq!(dec.width(), 0);
        let dec = DirectedPathDecomposition::new(vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(dec.width(), 2);
    }

    #[test]
    fn validator_conditions() {
        let g = cycle3();
        let single = DirectedPathDecomposition::new(vec![vec![0, 1, 2]]);
        assert_eq!(validate_decomposition(&g, &single), Ok(()));
        assert_eq!(single.width(), 2);

        let gap = DirectedPathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(validate_decomposition(&g, &gap), Err(Defect::Contiguity(0)));

        // consecutive-arc bags are enough for the cycle: (2, 0) may point back
        let pairs = DirectedPathDecomposition::new(vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(validate_decomposition(&g, &pairs), Ok(()));

        let missing = DirectedPathDecomposition::new(vec![vec![1, 2], vec![0, 1]]);
        // arc (2, 0) has its tail strictly before its head
        assert_eq!(validate_decomposition(&g, &missing), Err(Defect::Arc(2, 0)));

        let uncovered = DirectedPathDecomposition::new(vec![vec![0, 1]]);
        assert!(matches!(validate_decomposition(&g, &uncovered), Err(Defect::Cover(2))));
    }

    #[test]
    fn transitive_tournaments_have_width_zero() {
        for n in 1..=8 {
            let (w, dec) = exact_dpw(&transitive(n), EXACT_DPW_CAP).unwrap();
            assert_eq!(w, 0, "n = {n}");
            assert_eq!(validate_decomposition(&transitive(n), &dec), Ok(()));
        }
    }

    #[test]
    fn three_cycle_width_one() {
        let g = cycle3();
        assert_eq!(exhaustive_layout_width(&g), 1);
        let (w, dec) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
        assert_eq!(w, 1);
        assert_eq!(dec.width(), 1);
    }

    #[test]
    fn matches_exhaustive_oracle_on_counterexample_rails() {
        let (inst, _) = crate::instances::counterexample(1, 1, 1);
        let oracle = exhaustive_layout_width(&inst.graph);
        let (w, dec) = exact_dpw(&inst.graph, EXACT_DPW_CAP).unwrap();
        assert_eq!(w, oracle);
        assert_eq!(validate_decomposition(&inst.graph, &dec), Ok(()));
    }

    #[test]
    fn matches_exhaustive_oracle_on_random_digraphs() {
        for seed in 0..40 {
            let n = 4 + (seed as usize % 4); // 4..=7
            let g = crate::instances::random_digraph(n, 0.4, 1000 + seed);
            let oracle = exhaustive_layout_width(&g);
            let (w, dec) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
            assert_eq!(w, oracle, "seed {seed}");
            assert_eq!(validate_decomposition(&g, &dec), Ok(()));
            assert_eq!(dec.width(), w);
        }
    }

    #[test]
    fn deleting_a_vertex_never_increases_width() {
        for seed in 0..20 {
            let g = crate::instances::random_digraph(6, 0.5, 2000 + seed);
            let (w, _) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
            for v in 0..6 {
                let (w2, _) = exact_dpw(&g.delete_vertex(v), EXACT_DPW_CAP).unwrap();
                assert!(w2 <= w, "seed {seed} vertex {v}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = transitive(19);
        assert!(matches!(exact_dpw(&g, 18), Err(PathwidthError::CapExceeded { .. })));
    }

    #[test]
    fn dp_solve_empty_and_single() {
        let g = transitive(3);
        let (_, dec) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
        let inst = Instance::new(g.clone(), vec![], 1, false);
        assert_eq!(dp_solve(&inst, &dec).unwrap().unwrap().paths.len(), 0);

        let inst = Instance::new(g, vec![Request::new(0, 2, 1)], 1, false);
        let sol = dp_solve(&inst, &dec).unwrap().unwrap();
        assert!(verify_solution(&inst, &sol).is_ok());
    }

    #[test]
    fn dp_solve_agrees_with_search_solver() {
        for seed in 0..30 {
            let n = 6 + (seed as usize % 3);
            let g = random_semicomplete(n, 0.2, 3000 + seed);
            let mut rng = crate::rng::split(3000 + seed, 7);
            let k = 1 + (seed as usize % 3);
            let reqs: Vec<Request> = random_requests(n, k, &mut rng);
            let c = 1 + (seed as usize % 2);
            let inst = Instance::new(g.clone(), reqs, c, false);
            let (_, dec) = exact_dpw(&g, EXACT_DPW_CAP).unwrap();
            let via_dp = dp_solve(&inst, &dec).unwrap();
            let via_search = solve(&inst, SolveOptions::any()).unwrap();
            assert_eq!(via_dp.is_some(), via_search.is_some(), "seed {seed}");
            if let Some(sol) = via_dp {
                assert!(verify_solution(&inst, &sol).is_ok());
            }
        }
    }

    #[test]
    fn dp_solve_rejects_foreign_decomposition() {
        let g = cycle3();
        let inst = Instance::new(g, vec![Request::new(0, 1, 1)], 1, false);
        let bad = DirectedPathDecomposition::new(vec![vec![0], vec![1], vec![2]]);
        assert!(matches!(
            dp_solve(&inst, &bad),
            Err(PathwidthError::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn serialization_round_trip() {
        let dec = DirectedPathDecomposition::new(vec![vec![0, 2], vec![1, 2], vec![3]]);
        assert_eq!(read_decomposition(&write_decomposition(&dec)).unwrap(), dec);
    }
}
