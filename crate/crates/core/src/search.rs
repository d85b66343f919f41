//! Backtracking over reduced Latin squares.
//!
//! Cells `(r, c)` with `r, c ≥ 1` are filled row-major; the border is fixed
//! to `0, 1, …, n-1`, so every completed square is a loop with identity `0`.
//! Used symbols are tracked per row and per column as `u64` bitmasks.
//!
//! Required properties that are plain identities (or have identity
//! characterizations, like `cc`) are also checked on partial tables. After
//! each cell, instances whose variable-operand ops read the new entry are
//! checked; after each row, all instances are. An instance is refuted when
//! its two sides are known and differ, or when one side is known and forces
//! a table entry that can no longer be placed. Either way no completion can
//! satisfy the identity, so the subtree is discarded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::SearchError;
use crate::loops::FiniteLoop;
use crate::properties::{self, Method, PropertyReport};
use crate::term::registry;
use crate::term::{Identity, LoopOps};

pub const EXHAUSTIVE_MAX: usize = 8;
pub const FIRST_MAX: usize = 10;

const UNKNOWN: u8 = u8::MAX;

/// A reduced table under construction.
#[derive(Clone, Debug)]
pub struct Partial {
    n: usize,
    table: Vec<u8>,
    /// `row_pos[x·n + y]`: the `z` with `x·z = y`, if placed.
    row_pos: Vec<u8>,
    /// `col_pos[z·n + y]`: the `x` with `x·z = y`, if placed.
    col_pos: Vec<u8>,
}

impl Partial {
    fn new(n: usize) -> Self {
        let mut p = Partial {
            n,
            table: vec![UNKNOWN; n * n],
            row_pos: vec![UNKNOWN; n * n],
            col_pos: vec![UNKNOWN; n * n],
        };
        for i in 0..n {
            p.set(0, i, i);
            if i > 0 {
                p.set(i, 0, i);
            }
        }
        p
    }

    fn set(&mut self, r: usize, c: usize, v: usize) {
        let n = self.n;
        self.table[r * n + c] = v as u8;
        self.row_pos[r * n + v] = c as u8;
        self.col_pos[c * n + v] = r as u8;
    }

    fn clear(&mut self, r: usize, c: usize) {
        let n = self.n;
        let v = self.table[r * n + c] as usize;
        self.table[r * n + c] = UNKNOWN;
        self.row_pos[r * n + v] = UNKNOWN;
        self.col_pos[c * n + v] = UNKNOWN;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        let v = self.table[r * self.n + c];
        (v != UNKNOWN).then_some(v as usize)
    }
}

fn known(v: u8) -> Option<u8> {
    (v != UNKNOWN).then_some(v)
}

impl LoopOps for Partial {
    fn identity_elem(&self) -> u8 {
        0
    }
    #[inline]
    fn mul(&self, x: u8, y: u8) -> Option<u8> {
        known(self.table[x as usize * self.n + y as usize])
    }
    #[inline]
    fn ldiv(&self, x: u8, y: u8) -> Option<u8> {
        known(self.row_pos[x as usize * self.n + y as usize])
    }
    #[inline]
    fn rdiv(&self, x: u8, y: u8) -> Option<u8> {
        known(self.col_pos[y as usize * self.n + x as usize])
    }
    #[inline]
    fn lin(&self, x: u8) -> Option<u8> {
        known(self.col_pos[x as usize * self.n])
    }
    #[inline]
    fn rin(&self, x: u8) -> Option<u8> {
        known(self.row_pos[x as usize * self.n])
    }
    fn conflicts(&self, x: u8, y: u8, z: u8) -> bool {
        let n = self.n;
        let (x, y, z) = (x as usize, y as usize, z as usize);
        match known(self.table[x * n + y]) {
            Some(w) => w as usize != z,
            None => self.row_pos[x * n + z] != UNKNOWN || self.col_pos[y * n + z] != UNKNOWN,
        }
    }
}

/// True when some fully defined instance of `id` fails on `p`.
fn refuted(p: &Partial, id: &Identity, slots: &mut Vec<u8>) -> bool {
    id.program().refuted_on(p, p.order(), slots)
}

enum Step {
    Complete,
    Exhausted,
    OutOfBudget,
}

struct Engine {
    full: u64,
    p: Partial,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    cells: Vec<(usize, usize)>,
    base: usize,
    depth: usize,
    avail: Vec<u64>,
    placed: Vec<bool>,
    rng: Option<ChaCha8Rng>,
    nodes: u64,
}

impl Engine {
    fn new(n: usize, prefix: &[u8], rng: Option<ChaCha8Rng>) -> Option<Engine> {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let cells: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
        let mut e = Engine {
            full,
            p: Partial::new(n),
            row_used: (0..n).map(|r| 1u64 << r).collect(),
            col_used: (0..n).map(|c| 1u64 << c).collect(),
            base: prefix.len(),
            depth: prefix.len(),
            avail: vec![0; cells.len() + 1],
            placed: vec![false; cells.len() + 1],
            cells,
            rng,
            nodes: 0,
        };
        for (d, &v) in prefix.iter().enumerate() {
            let (r, c) = e.cells[d];
            let bit = 1u64 << v;
            if (e.row_used[r] | e.col_used[c]) & bit != 0 {
                return None;
            }
            e.place(r, c, v as usize);
        }
        e.enter();
        Some(e)
    }

    fn place(&mut self, r: usize, c: usize, v: usize) {
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
        self.p.set(r, c, v);
    }

    fn unplace(&mut self, r: usize, c: usize) {
        let v = self.p.get(r, c).expect("cell is filled");
        self.row_used[r] &= !(1u64 << v);
        self.col_used[c] &= !(1u64 << v);
        self.p.clear(r, c);
    }

    fn enter(&mut self) {
        if let Some(&(r, c)) = self.cells.get(self.depth) {
            self.avail[self.depth] = !(self.row_used[r] | self.col_used[c]) & self.full;
            self.placed[self.depth] = false;
        }
    }

    fn pick(&mut self, mask: u64) -> usize {
        match &mut self.rng {
            None => mask.trailing_zeros() as usize,
            Some(rng) => {
                let k = rng.gen_range(0..mask.count_ones());
                let mut m = mask;
                for _ in 0..k {
                    m &= m - 1;
                }
                m.trailing_zeros() as usize
            }
        }
    }

    /// Advances to the next complete square. `accept(p, row, col)` is asked after
    /// each completed row; `false` discards the subtree.
    fn next(&mut self, budget: Option<u64>, accept: &mut impl FnMut(&Partial, usize, usize) -> bool) -> Step {
        let total = self.cells.len();
        if self.depth == total {
            if total == self.base {
                // nothing to fill: a single square, already reported
                self.depth = usize::MAX;
                return Step::Exhausted;
            }
            self.depth -= 1;
        }
        if self.depth == usize::MAX {
            return Step::Exhausted;
        }
        loop {
            let d = self.depth;
            if d == total {
                return Step::Complete;
            }
            let (r, c) = self.cells[d];
            if self.placed[d] {
                self.unplace(r, c);
                self.placed[d] = false;
            }
            if self.avail[d] == 0 {
                if d == self.base {
                    self.depth = usize::MAX;
                    return Step::Exhausted;
                }
                self.depth -= 1;
                continue;
            }
            if let Some(b) = budget {
                if self.nodes >= b {
                    return Step::OutOfBudget;
                }
            }
            let v = self.pick(self.avail[d]);
            self.avail[d] &= !(1u64 << v);
            self.place(r, c, v);
            self.placed[d] = true;
            self.nodes += 1;
            if !accept(&self.p, r, c) {
                continue;
            }
            self.depth += 1;
            self.enter();
        }
    }

    fn table(&self) -> Vec<u8> {
        self.p.table.clone()
    }
}

fn check_order(n: usize, max: usize) -> Result<(), SearchError> {
    if n == 0 || n > max {
        return Err(SearchError::OrderTooLarge { order: n, max });
    }
    Ok(())
}

fn to_loop(n: usize, table: Vec<u8>) -> FiniteLoop {
    FiniteLoop::from_flat(n, table, Some(0)).expect("reduced Latin squares are loops")
}

/// Every reduced Latin square of order `n` in lexicographic row-major order.
pub struct ReducedSquares {
    n: usize,
    engine: Option<Engine>,
    first: bool,
}

impl Iterator for ReducedSquares {
    type Item = FiniteLoop;

    fn next(&mut self) -> Option<FiniteLoop> {
        let engine = self.engine.as_mut()?;
        if self.first {
            self.first = false;
            if engine.cells.is_empty() {
                let t = engine.table();
                self.engine = None;
                return Some(to_loop(self.n, t));
            }
        }
        match engine.next(None, &mut |_, _, _| true) {
            Step::Complete => Some(to_loop(self.n, engine.table())),
            _ => {
                self.engine = None;
                None
            }
        }
    }
}

pub fn enumerate_loops(n: usize) -> Result<ReducedSquares, SearchError> {
    check_order(n, EXHAUSTIVE_MAX)?;
    Ok(ReducedSquares {
        n,
        engine: Engine::new(n, &[], None),
        first: true,
    })
}

/// Prefixes of row 1 used to split the tree; lexicographic.
fn prefixes(n: usize, len: usize) -> Vec<Vec<u8>> {
    let len = len.min(n.saturating_sub(1));
    let mut out = vec![Vec::new()];
    for pos in 0..len {
        let col = pos + 1;
        out = out
            .into_iter()
            .flat_map(|p: Vec<u8>| {
                (0..n as u8)
                    .filter(|&v| v as usize != 1 && v as usize != col && !p.contains(&v))
                    .map(|v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn for_each_square(
    n: usize,
    prefix: &[u8],
    accept: &mut impl FnMut(&Partial, usize, usize) -> bool,
    mut visit: impl FnMut(Vec<u8>) -> bool,
) {
    let Some(mut engine) = Engine::new(n, prefix, None) else {
        return;
    };
    if engine.cells.len() == engine.base {
        visit(engine.table());
        return;
    }
    while let Step::Complete = engine.next(None, accept) {
        if !visit(engine.table()) {
            return;
        }
    }
}

/// Number of reduced Latin squares of order `n`, counted in parallel.
pub fn count_loops(n: usize) -> Result<u64, SearchError> {
    check_order(n, EXHAUSTIVE_MAX)?;
    Ok(prefixes(n, 2)
        .par_iter()
        .map(|p| {
            let mut count = 0u64;
            for_each_square(n, p, &mut |_, _, _| true, |_| {
                count += 1;
                true
            });
            count
        })
        .sum())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exhaustive,
    First,
}

#[derive(Clone, Debug)]
pub struct SearchQuery {
    pub order: usize,
    pub require: Vec<String>,
    pub forbid: Vec<String>,
    pub limit: Option<usize>,
    pub mode: Mode,
    pub method: Method,
    pub seed: u64,
}

impl SearchQuery {
    pub fn new(order: usize) -> Self {
        SearchQuery {
            order,
            require: Vec::new(),
            forbid: Vec::new(),
            limit: None,
            mode: Mode::Exhaustive,
            method: Method::Identity,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub table: FiniteLoop,
    pub reports: Vec<PropertyReport>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    /// Complete squares that reached the property filters.
    pub examined: u64,
    /// True when the whole space was covered (exhaustive mode without an
    /// early stop at `limit`).
    pub exhausted: bool,
}

/// Identities usable for partial-table pruning of a required property.
fn pruning_identities(name: &str) -> Vec<&'static Identity> {
    let names: &[&str] = match name {
        "osborn" => &["OS1"],
        "cc" => &["LCC", "RCC"],
        "extra" => &["moufang", "LCC", "RCC"],
        other => match registry::lookup(other) {
            Some(n) => return vec![&n.identity],
            None => &[],
        },
    };
    names
        .iter()
        .map(|n| &registry::lookup(n).expect("registry entry").identity)
        .collect()
}

struct Plan {
    require: Vec<&'static str>,
    forbid: Vec<&'static str>,
    prune: Vec<&'static Identity>,
}

fn plan(q: &SearchQuery) -> Result<Plan, SearchError> {
    let resolve = |names: &[String]| -> Result<Vec<&'static str>, SearchError> {
        let mut out = Vec::new();
        for n in names {
            let c = properties::canonical_name(n)?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.sort_by_key(|n| properties::cost(n));
        Ok(out)
    };
    let require = resolve(&q.require)?;
    let forbid = resolve(&q.forbid)?;
    if let Some(c) = require.iter().find(|r| forbid.contains(r)) {
        return Err(SearchError::Conflict(c.to_string()));
    }
    let mut prune: Vec<&'static Identity> = Vec::new();
    for r in &require {
        for id in pruning_identities(r) {
            if !prune.iter().any(|p| p.name() == id.name()) {
                prune.push(id);
            }
        }
    }
    prune.sort_by_key(|id| id.vars().len());
    Ok(Plan { require, forbid, prune })
}

fn accepts(plan: &Plan, p: &Partial, r: usize, c: usize, slots: &mut Vec<u8>) -> bool {
    if c + 1 == p.order() {
        return !plan.prune.iter().any(|id| refuted(p, id, slots));
    }
    let v = p.get(r, c).expect("cell just placed") as u8;
    !plan
        .prune
        .iter()
        .any(|id| id.program().refuted_at(p, p.order(), (r as u8, c as u8, v), slots))
}

fn evaluate(l: &FiniteLoop, plan: &Plan, method: Method) -> Result<Option<Vec<PropertyReport>>, SearchError> {
    let mut reports = Vec::with_capacity(plan.require.len() + plan.forbid.len());
    for name in &plan.require {
        let r = properties::check(l, name, method)?;
        if !r.holds {
            return Ok(None);
        }
        reports.push(r);
    }
    for name in &plan.forbid {
        let r = properties::check(l, name, method)?;
        if r.holds {
            return Ok(None);
        }
        reports.push(r);
    }
    Ok(Some(reports))
}

pub fn search(q: &SearchQuery) -> Result<SearchOutcome, SearchError> {
    match q.mode {
        Mode::Exhaustive => {
            check_order(q.order, EXHAUSTIVE_MAX)?;
            search_exhaustive(q)
        }
        Mode::First => {
            check_order(q.order, FIRST_MAX)?;
            search_first(q)
        }
    }
}

struct Chunk {
    hits: Vec<SearchHit>,
    examined: u64,
    stopped: bool,
}

fn search_prefix(q: &SearchQuery, plan: &Plan, prefix: &[u8], limit: usize) -> Result<Chunk, SearchError> {
    let n = q.order;
    let mut slots = Vec::new();
    let mut chunk = Chunk {
        hits: Vec::new(),
        examined: 0,
        stopped: false,
    };
    let mut err = None;
    for_each_square(
        n,
        prefix,
        &mut |p, r, c| accepts(plan, p, r, c, &mut slots),
        |table| {
            chunk.examined += 1;
            let l = to_loop(n, table);
            match evaluate(&l, plan, q.method) {
                Ok(Some(reports)) => {
                    chunk.hits.push(SearchHit { table: l, reports });
                    if chunk.hits.len() >= limit {
                        chunk.stopped = true;
                        return false;
                    }
                }
                Ok(None) => {}
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            }
            true
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok(chunk),
    }
}

fn search_exhaustive(q: &SearchQuery) -> Result<SearchOutcome, SearchError> {
    let plan = plan(q)?;
    let limit = q.limit.unwrap_or(usize::MAX);
    let prefixes = prefixes(q.order, if q.order >= 7 { 3 } else { 2 });
    let batch = (rayon::current_num_threads() * 4).max(1);
    let mut out = SearchOutcome {
        hits: Vec::new(),
        examined: 0,
        exhausted: true,
    };
    if limit == 0 {
        out.exhausted = false;
        return Ok(out);
    }
    // batches run in parallel; results are merged in prefix order, so the
    // hit list is the lexicographic one regardless of thread count
    for group in prefixes.chunks(batch) {
        let chunks: Vec<Result<Chunk, SearchError>> = group
            .par_iter()
            .map(|p| search_prefix(q, &plan, p, limit))
            .collect();
        for chunk in chunks {
            let chunk = chunk?;
            out.examined += chunk.examined;
            out.hits.extend(chunk.hits);
            if out.hits.len() >= limit {
                out.hits.truncate(limit);
                out.exhausted = false;
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Node budget per restart in first-match mode.
const RESTART_BUDGET: u64 = 200_000;
const MAX_RESTARTS: u64 = 4096;

fn restart(q: &SearchQuery, plan: &Plan, index: u64, limit: usize) -> Result<Chunk, SearchError> {
    let n = q.order;
    let rng = ChaCha8Rng::seed_from_u64(q.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index);
    let mut engine = Engine::new(n, &[], Some(rng)).expect("empty prefix");
    let mut slots = Vec::new();
    let mut chunk = Chunk {
        hits: Vec::new(),
        examined: 0,
        stopped: false,
    };
    let mut accept = |p: &Partial, r, c| accepts(plan, p, r, c, &mut slots);
    if engine.cells.is_empty() {
        chunk.examined = 1;
        let l = to_loop(n, engine.table());
        if let Some(reports) = evaluate(&l, plan, q.method)? {
            chunk.hits.push(SearchHit { table: l, reports });
        }
        chunk.stopped = true;
        return Ok(chunk);
    }
    loop {
        match engine.next(Some(RESTART_BUDGET), &mut accept) {
            Step::Complete => {
                chunk.examined += 1;
                let l = to_loop(n, engine.table());
                if let Some(reports) = evaluate(&l, plan, q.method)? {
                    chunk.hits.push(SearchHit { table: l, reports });
                    if chunk.hits.len() >= limit {
                        return Ok(chunk);
                    }
                }
            }
            Step::Exhausted => {
                chunk.stopped = true;
                return Ok(chunk);
            }
            Step::OutOfBudget => return Ok(chunk),
        }
    }
}

/// Randomized restarts; restart `i` uses a stream derived from `(seed, i)`,
/// and the lowest-numbered successful restart wins.
fn search_first(q: &SearchQuery) -> Result<SearchOutcome, SearchError> {
    let plan = plan(q)?;
    let limit = q.limit.unwrap_or(1).max(1);
    let batch = rayon::current_num_threads().max(1) as u64;
    let mut examined = 0;
    let mut next = 0u64;
    while next < MAX_RESTARTS {
        let ids: Vec<u64> = (next..(next + batch).min(MAX_RESTARTS)).collect();
        next += ids.len() as u64;
        let chunks: Vec<Result<Chunk, SearchError>> =
            ids.par_iter().map(|&i| restart(q, &plan, i, limit)).collect();
        for chunk in chunks {
            let chunk = chunk?;
            examined += chunk.examined;
            if !chunk.hits.is_empty() {
                return Ok(SearchOutcome {
                    hits: chunk.hits,
                    examined,
                    exhausted: false,
                });
            }
            if chunk.stopped {
                // a restart that ran out of tree covered everything
                return Ok(SearchOutcome {
                    hits: Vec::new(),
                    examined,
                    exhausted: true,
                });
            }
        }
    }
    Ok(SearchOutcome {
        hits: Vec::new(),
        examined,
        exhausted: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: naive recursion over cells with full scans for
    /// row and column conflicts.
    fn oracle_count(n: usize) -> u64 {
        fn go(t: &mut Vec<Vec<usize>>, n: usize, cell: usize) -> u64 {
            if n <= 1 || cell == (n - 1) * (n - 1) {
                return 1;
            }
            let (r, c) = (1 + cell / (n - 1), 1 + cell % (n - 1));
            let mut total = 0;
            for v in 0..n {
                let clash = (0..c).any(|j| t[r][j] == v) || (0..r).any(|i| t[i][c] == v);
                if !clash {
                    t[r][c] = v;
                    total += go(t, n, cell + 1);
                }
            }
            t[r][c] = usize::MAX;
            total
        }
        let mut t = vec![vec![usize::MAX; n]; n];
        for (i, row) in t.iter_mut().enumerate() {
            row[0] = i;
        }
        t[0] = (0..n).collect();
        go(&mut t, n, 0)
    }

    #[test]
    fn counts_match_oracle() {
        for (n, expected) in [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)] {
            assert_eq!(oracle_count(n), expected);
            assert_eq!(enumerate_loops(n).unwrap().count() as u64, expected);
            assert_eq!(count_loops(n).unwrap(), expected);
        }
        assert_eq!(count_loops(6).unwrap(), 9408);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let tables: Vec<Vec<Vec<usize>>> = enumerate_loops(5).unwrap().map(|l| l.rows()).collect();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_loops(5).unwrap().all(|l| l.identity() == 0));
    }

    #[test]
    fn order_caps() {
        assert!(matches!(enumerate_loops(9), Err(SearchError::OrderTooLarge { .. })));
        assert!(matches!(enumerate_loops(0), Err(SearchError::OrderTooLarge { .. })));
        let mut q = SearchQuery::new(11);
        q.mode = Mode::First;
        assert!(search(&q).is_err());
    }

    #[test]
    fn plain_search_lists_everything() {
        let out = search(&SearchQuery::new(4)).unwrap();
        assert_eq!(out.hits.len(), 4);
        assert!(out.exhausted);
    }

    #[test]
    fn conflicting_query() {
        let mut q = SearchQuery::new(4);
        q.require = vec!["cc".into()];
        q.forbid = vec!["CC".into()];
        assert_eq!(search(&q).unwrap_err(), SearchError::Conflict("cc".into()));
    }

    #[test]
    fn pruned_search_matches_filtering() {
        for require in [vec!["cc"], vec!["moufang"], vec!["osborn", "3-PAPL"], vec!["associative"]] {
            let mut q = SearchQuery::new(6);
            q.require = require.iter().map(|s| s.to_string()).collect();
            let pruned: Vec<_> = search(&q).unwrap().hits.into_iter().map(|h| h.table).collect();
            let filtered: Vec<_> = enumerate_loops(6)
                .unwrap()
                .filter(|l| {
                    require
                        .iter()
                        .all(|r| properties::check(l, r, Method::Identity).unwrap().holds)
                })
                .collect();
            assert_eq!(pruned, filtered, "{require:?}");
        }
    }

    #[test]
    fn limit_keeps_lexicographic_prefix() {
        let mut q = SearchQuery::new(5);
        q.limit = Some(7);
        let limited: Vec<_> = search(&q).unwrap().hits.into_iter().map(|h| h.table).collect();
        let all: Vec<_> = enumerate_loops(5).unwrap().take(7).collect();
        assert_eq!(limited, all);
    }

    #[test]
    fn first_mode_finds_groups() {
        let mut q = SearchQuery::new(8);
        q.mode = Mode::First;
        q.require = vec!["associative".into()];
        q.forbid = vec!["commutative".into()];
        q.seed = 7;
        let out = search(&q).unwrap();
        let hit = &out.hits[0].table;
        assert!(hit.is_associative());
        let again = search(&q).unwrap();
        assert_eq!(again.hits[0].table, *hit);
    }
}
