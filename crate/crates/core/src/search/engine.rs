//! Backtracking over decoder entries.
//!
//! Each decoder entry is a variable whose domain is a set of total functions,
//! stored as a bitset over `0..2^n`. Each partial function `g = (S, v)` of the
//! family is a clause: one of its variables (entries for `Y ⊆ S`) must take a
//! value in `Ext(g) = { f : f|S = v }`.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

/// Strongly connected components of the alternating digraph: nodes `0..nc`
/// are clauses, `nc..nc+nv` variables.
fn scc(nc: usize, nv: usize, adj: &[Vec<usize>], mate: &[usize], owner: &[usize]) -> Vec<usize> {
    let n = nc + nv;
    let succ = |x: usize| -> Vec<usize> {
        if x < nc {
            adj[x].iter().filter(|&&v| mate[x] != v).map(|&v| nc + v).collect()
        } else if owner[x - nc] != usize::MAX {
            vec![owner[x - nc]]
        } else {
            Vec::new()
        }
    };
    // Iterative Tarjan.
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut st = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        st.push(root);
        on[root] = true;
        while let Some((x, ss, i)) = call.last_mut() {
            let x = *x;
            if *i < ss.len() {
                let y = ss[*i];
                *i += 1;
                if index[y] == usize::MAX {
                    index[y] = next;
                    low[y] = next;
                    next += 1;
                    st.push(y);
                    on[y] = true;
                    call.push((y, succ(y), 0));
                } else if on[y] {
                    low[x] = low[x].min(index[y]);
                }
            } else {
                call.pop();
                if let Some((p, _, _)) = call.last() {
                    low[*p] = low[*p].min(low[x]);
                }
                if low[x] == index[x] {
                    loop {
                        let y = st.pop().expect("tarjan stack");
                        on[y] = false;
                        comp[y] = ncomp;
                        if y == x {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// A variable domain or clause extension set.
type Bits = [u64];

fn intersects(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn subset_of(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn first_bit(a: &Bits) -> Option<u32> {
    a.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i as u32 * 64 + w.trailing_zeros())
}

fn bits_of_and<'a>(a: &'a Bits, b: &'a Bits) -> impl Iterator<Item = u32> + 'a {
    a.iter().zip(b.iter()).enumerate().flat_map(|(i, (x, y))| {
        let mut w = x & y;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let t = w.trailing_zeros();
                w &= w - 1;
                i as u32 * 64 + t
            })
        })
    })
}

pub(crate) struct Clause {
    pub domain: u32,
    pub values: u32,
    pub vars: Vec<u32>,
}

/// A compiled decision instance.
pub(crate) struct Instance {
    pub words: usize,
    pub nvars: usize,
    pub clauses: Vec<Clause>,
    ext: Vec<u64>,
    var_clauses: Vec<Vec<u32>>,
    /// Clauses sharing a domain, with the union of their variables.
    groups: Vec<(Vec<u32>, Vec<u32>)>,
    var_groups: Vec<Vec<u32>>,
    initial: Vec<u64>,
    full: Vec<u64>,
}

impl Instance {
    /// `n` is the base size; every variable may take any of the `2^n` functions.
    pub fn new(n: usize, nvars: usize, clauses: Vec<Clause>) -> Self {
        let nvals = 1usize << n;
        let words = nvals.div_ceil(64);
        let mut full = vec![u64::MAX; words];
        if nvals < 64 {
            full[0] = (1u64 << nvals) - 1;
        }
        let mut ext = vec![0u64; clauses.len() * words];
        let mut var_clauses = vec![Vec::new(); nvars];
        for (ci, c) in clauses.iter().enumerate() {
            let e = &mut ext[ci * words..(ci + 1) * words];
            // Enumerate f with f & S == v: v plus every subset of the complement.
            let free = (nvals as u32 - 1) & !c.domain;
            let mut sub = free;
            loop {
                let f = (c.values | sub) as usize;
                e[f / 64] |= 1 << (f % 64);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            for &v in &c.vars {
                var_clauses[v as usize].push(ci as u32);
            }
        }
        let mut groups: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut var_groups = vec![Vec::new(); nvars];
        let mut start = 0;
        while start < clauses.len() {
            let dom = clauses[start].domain;
            let end = start + clauses[start..].iter().take_while(|c| c.domain == dom).count();
            if end - start > 1 {
                let mut vars: Vec<u32> =
                    clauses[start..end].iter().flat_map(|c| c.vars.iter().copied()).collect();
                vars.sort_unstable();
                vars.dedup();
                for &v in &vars {
                    var_groups[v as usize].push(groups.len() as u32);
                }
                groups.push(((start as u32..end as u32).collect(), vars));
            }
            start = end;
        }
        let initial = full.repeat(nvars);
        Instance { words, nvars, clauses, ext, var_clauses, groups, var_groups, initial, full }
    }

    fn ext(&self, c: usize) -> &Bits {
        &self.ext[c * self.words..(c + 1) * self.words]
    }

    /// Restricts the initial domain of `var` to `allowed` (a list of function values).
    pub fn restrict_initial(&mut self, var: usize, allowed: impl IntoIterator<Item = u32>) {
        let d = &mut self.initial[var * self.words..(var + 1) * self.words];
        let mut keep = vec![0u64; self.words];
        for f in allowed {
            keep[f as usize / 64] |= 1 << (f % 64);
        }
        for (w, k) in d.iter_mut().zip(keep) {
            *w &= k;
        }
    }
}

#[derive(Clone)]
struct State {
    dom: Vec<u64>,
    entailed: Vec<bool>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Stats {
    pub nodes: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// One function value per variable.
    Found(Vec<u32>),
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Limits {
    pub nodes: u64,
    pub deadline: Option<Instant>,
    pub threads: usize,
}

struct Ctx<'a> {
    inst: &'a Instance,
    cap: u64,
    deadline: Option<Instant>,
    cancelled: &'a dyn Fn() -> bool,
    timed_out: &'a AtomicBool,
    stats: Stats,
}

impl Ctx<'_> {
    fn dom<'s>(&self, s: &'s State, v: usize) -> &'s Bits {
        &s.dom[v * self.inst.words..(v + 1) * self.inst.words]
    }

    /// Unit propagation over clauses plus matching filtering over groups, to
    /// a fixpoint. `false` on conflict.
    fn propagate(&mut self, s: &mut State, mut queue: Vec<u32>) -> bool {
        let inst = self.inst;
        let mut queued = vec![false; inst.nvars];
        for &v in &queue {
            queued[v as usize] = true;
        }
        let mut dirty = vec![false; inst.groups.len()];
        let mut dirty_list: Vec<u32> = Vec::new();
        loop {
            while let Some(v) = queue.pop() {
                queued[v as usize] = false;
                for &g in &inst.var_groups[v as usize] {
                    if !std::mem::replace(&mut dirty[g as usize], true) {
                        dirty_list.push(g);
                    }
                }
                for &c in &inst.var_clauses[v as usize] {
                    match self.unit(s, c as usize) {
                        Err(()) => return false,
                        Ok(Some(u)) => {
                            if !std::mem::replace(&mut queued[u as usize], true) {
                                queue.push(u);
                            }
                        }
                        Ok(None) => {}
                    }
                }
            }
            let Some(g) = dirty_list.pop() else { return true };
            dirty[g as usize] = false;
            if self.past_deadline() {
                // The caller sees the timeout before using the state.
                return true;
            }
            match self.filter_group(s, g as usize) {
                Err(()) => return false,
                Ok(changed) => {
                    for u in changed {
                        if !std::mem::replace(&mut queued[u as usize], true) {
                            queue.push(u);
                        }
                    }
                }
            }
        }
    }

    /// Clause check: marks entailment, detects conflict, or narrows the only
    /// viable variable (returned).
    fn unit(&mut self, s: &mut State, c: usize) -> Result<Option<u32>, ()> {
        if s.entailed[c] {
            return Ok(None);
        }
        let w = self.inst.words;
        let ext = self.inst.ext(c);
        let mut viable = 0;
        let mut last = 0u32;
        for &u in &self.inst.clauses[c].vars {
            let d = self.dom(s, u as usize);
            if intersects(d, ext) {
                if subset_of(d, ext) {
                    s.entailed[c] = true;
                    return Ok(None);
                }
                viable += 1;
                last = u;
                if viable > 1 {
                    return Ok(None);
                }
            }
        }
        if viable == 0 {
            return Err(());
        }
        let d = &mut s.dom[last as usize * w..(last as usize + 1) * w];
        for (x, y) in d.iter_mut().zip(ext) {
            *x &= y;
        }
        s.entailed[c] = true;
        self.stats.propagations += 1;
        Ok(Some(last))
    }

    /// A variable agrees with at most one sample on a given domain, so the
    /// samples of a group need pairwise distinct variables. Fails when no
    /// matching covers every sample; otherwise a variable that is matched in
    /// every such matching keeps only values agreeing with a sample it can be
    /// matched to. Returns the narrowed variables.
    fn filter_group(&mut self, s: &mut State, g: usize) -> Result<Vec<u32>, ()> {
        let inst = self.inst;
        let (clauses, vars) = &inst.groups[g];
        let (nc, nv) = (clauses.len(), vars.len());
        // More untouched variables than samples: any of them can be left out.
        let untouched = vars.iter().filter(|&&u| self.dom(s, u as usize) == inst.full.as_slice());
        if untouched.take(nc + 1).count() > nc {
            return Ok(Vec::new());
        }
        let adj: Vec<Vec<usize>> = clauses
            .iter()
            .map(|&c| {
                let ext = inst.ext(c as usize);
                (0..nv).filter(|&i| intersects(self.dom(s, vars[i] as usize), ext)).collect()
            })
            .collect();
        let mut owner = vec![usize::MAX; nv];
        let mut mate = vec![usize::MAX; nc];
        fn augment(
            c: usize,
            adj: &[Vec<usize>],
            owner: &mut [usize],
            mate: &mut [usize],
            seen: &mut [bool],
        ) -> bool {
            for &v in &adj[c] {
                if !std::mem::replace(&mut seen[v], true)
                    && (owner[v] == usize::MAX || augment(owner[v], adj, owner, mate, seen))
                {
                    owner[v] = c;
                    mate[c] = v;
                    return true;
                }
            }
            false
        }
        let mut seen = vec![false; nv];
        for c in 0..nc {
            seen.fill(false);
            if !augment(c, &adj, &mut owner, &mut mate, &mut seen) {
                return Err(());
            }
        }
        // Alternating digraph: clause c -> var v for unmatched edges, var v -> mate clause.
        // Variables that reach a free variable can be left unmatched.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (c, vs) in adj.iter().enumerate() {
            for &v in vs {
                if mate[c] != v {
                    rev[v].push(c);
                }
            }
        }
        let mut freeable = vec![false; nv];
        let mut stack: Vec<usize> = (0..nv).filter(|&v| owner[v] == usize::MAX).collect();
        for &v in &stack {
            freeable[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &c in &rev[v] {
                let u = mate[c];
                if !freeable[u] {
                    freeable[u] = true;
                    stack.push(u);
                }
            }
        }
        if freeable.iter().all(|f| *f) {
            return Ok(Vec::new());
        }
        let comp = scc(nc, nv, &adj, &mate, &owner);
        let w = inst.words;
        let mut allowed = vec![0u64; w];
        let mut changed = Vec::new();
        for v in 0..nv {
            if freeable[v] {
                continue;
            }
            allowed.fill(0);
            for (c, vs) in adj.iter().enumerate() {
                if (mate[c] == v || comp[c] == comp[nc + v]) && vs.contains(&v) {
                    for (a, e) in allowed.iter_mut().zip(inst.ext(clauses[c] as usize)) {
                        *a |= e;
                    }
                }
            }
            let u = vars[v] as usize;
            let d = &mut s.dom[u * w..(u + 1) * w];
            if d.iter().zip(&allowed).any(|(x, a)| x & !a != 0) {
                for (x, a) in d.iter_mut().zip(&allowed) {
                    *x &= a;
                }
                self.stats.propagations += 1;
                changed.push(u as u32);
            }
        }
        Ok(changed)
    }

    /// Most constrained open clause: fewest viable variables, lowest index on ties.
    fn pick(&self, s: &State) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (c, clause) in self.inst.clauses.iter().enumerate() {
            if s.entailed[c] {
                continue;
            }
            let ext = self.inst.ext(c);
            let bound = best.map_or(usize::MAX, |(b, _)| b);
            let mut viable = 0;
            for &u in &clause.vars {
                if intersects(self.dom(s, u as usize), ext) {
                    viable += 1;
                    if viable >= bound {
                        break;
                    }
                }
            }
            if viable < bound {
                best = Some((viable, c));
                if viable <= 2 {
                    break;
                }
            }
        }
        best.map(|(_, c)| c)
    }

    /// Branch pairs for clause `c`: each viable `(Y, f)` in clause order then ascending `f`.
    fn branches(&self, s: &State, c: usize) -> Vec<(u32, u32)> {
        let ext = self.inst.ext(c);
        self.inst.clauses[c]
            .vars
            .iter()
            .flat_map(|&u| bits_of_and(self.dom(s, u as usize), ext).map(move |f| (u, f)))
            .collect()
    }

    /// Child `i` assigns pair `i` and excludes the earlier pairs; also returns the variables it changed.
    fn child(&self, s: &State, pairs: &[(u32, u32)], i: usize) -> (State, Vec<u32>) {
        let w = self.inst.words;
        let mut child = s.clone();
        let mut changed = Vec::new();
        for &(u, f) in &pairs[..i] {
            child.dom[u as usize * w + f as usize / 64] &= !(1 << (f % 64));
            if changed.last() != Some(&u) {
                changed.push(u);
            }
        }
        let (u, f) = pairs[i];
        let d = &mut child.dom[u as usize * w..(u as usize + 1) * w];
        d.fill(0);
        d[f as usize / 64] = 1 << (f % 64);
        if changed.last() != Some(&u) {
            changed.push(u);
        }
        (child, changed)
    }

    fn past_deadline(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                self.timed_out.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    fn solution(&self, s: &State) -> Vec<u32> {
        (0..self.inst.nvars).map(|v| first_bit(self.dom(s, v)).unwrap_or(0)).collect()
    }

    fn dfs(&mut self, mut s: State, changed: Vec<u32>) -> Outcome {
        self.stats.nodes += 1;
        if self.stats.nodes > self.cap || self.past_deadline() || (self.cancelled)() {
            return Outcome::OutOfBudget;
        }
        if !self.propagate(&mut s, changed) {
            return Outcome::Exhausted;
        }
        if self.past_deadline() {
            return Outcome::OutOfBudget;
        }
        let Some(c) = self.pick(&s) else {
            return Outcome::Found(self.solution(&s));
        };
        let pairs = self.branches(&s, c);
        for i in 0..pairs.len() {
            let (child, changed) = self.child(&s, &pairs, i);
            match self.dfs(child, changed) {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }
}

/// Runs the search. Root branches are explored independently, each with the
/// full node cap, and combined in canonical order, so the outcome and the
/// node count do not depend on the thread count.
pub(crate) fn solve(inst: &Instance, limits: &Limits) -> (Outcome, Stats) {
    let timed_out = AtomicBool::new(false);
    let never = || false;
    let mut root = Ctx {
        inst,
        cap: limits.nodes,
        deadline: limits.deadline,
        cancelled: &never,
        timed_out: &timed_out,
        stats: Stats { nodes: 1, propagations: 0 },
    };
    let mut s = State { dom: inst.initial.clone(), entailed: vec![false; inst.clauses.len()] };
    if s.dom.chunks(inst.words.max(1)).any(|d| d.iter().all(|w| *w == 0)) {
        return (Outcome::Exhausted, root.stats);
    }
    if !root.propagate(&mut s, (0..inst.nvars as u32).collect()) {
        return (Outcome::Exhausted, root.stats);
    }
    if root.past_deadline() {
        return (Outcome::OutOfBudget, root.stats);
    }
    let Some(c) = root.pick(&s) else {
        let sol = root.solution(&s);
        return (Outcome::Found(sol), root.stats);
    };
    let pairs = root.branches(&s, c);
    let children: Vec<(State, Vec<u32>)> =
        (0..pairs.len()).map(|i| root.child(&s, &pairs, i)).collect();
    let winner = AtomicUsize::new(usize::MAX);
    let run = |i: usize, child: State, changed: Vec<u32>| {
        let cancelled = || winner.load(Ordering::Relaxed) < i;
        let mut ctx = Ctx {
            inst,
            cap: limits.nodes,
            deadline: limits.deadline,
            cancelled: &cancelled,
            timed_out: &timed_out,
            stats: Stats::default(),
        };
        let out = ctx.dfs(child, changed);
        if matches!(out, Outcome::Found(_)) {
            winner.fetch_min(i, Ordering::Relaxed);
        }
        (out, ctx.stats)
    };
    let results: Vec<(Outcome, Stats)> = if limits.threads == 1 {
        let mut acc = Vec::new();
        let mut used = root.stats.nodes;
        for (i, (child, changed)) in children.into_iter().enumerate() {
            let r = run(i, child, changed);
            used += r.1.nodes;
            let stop = !matches!(r.0, Outcome::Exhausted) || used > limits.nodes;
            acc.push(r);
            if stop {
                break;
            }
        }
        acc
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            children
                .into_par_iter()
                .enumerate()
                .map(|(i, (child, changed))| run(i, child, changed))
                .collect()
        })
    };
    let mut stats = root.stats;
    for (out, st) in results {
        stats.nodes += st.nodes;
        stats.propagations += st.propagations;
        if stats.nodes > limits.nodes {
            return (Outcome::OutOfBudget, stats);
        }
        match out {
            Outcome::Exhausted => {}
            other => return (other, stats),
        }
    }
    (Outcome::Exhausted, stats)
}
