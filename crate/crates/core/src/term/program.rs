//! Identities compiled to straight-line programs.
//!
//! Both sides share one hash-consed op list, so a subterm that occurs several
//! times is computed once. Ops are sorted by the highest variable they
//! depend on; while sweeping assignments in lexicographic order only the ops
//! that depend on a changed variable are recomputed.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Identity, Term};
use crate::loops::FiniteLoop;

/// Marks an undefined root in partial evaluation; tables have at most 64
/// elements, so it never collides with a label.
const UNDEF: u8 = u8::MAX;

/// Read access to a (possibly partial) loop. `None` means "not yet known".
pub trait LoopOps: Sync {
    fn identity_elem(&self) -> u8;
    fn mul(&self, x: u8, y: u8) -> Option<u8>;
    fn ldiv(&self, x: u8, y: u8) -> Option<u8>;
    fn rdiv(&self, x: u8, y: u8) -> Option<u8>;
    fn lin(&self, x: u8) -> Option<u8>;
    fn rin(&self, x: u8) -> Option<u8>;
    /// True when `x·y = z` can no longer be placed. Complete tables answer
    /// by lookup.
    fn conflicts(&self, x: u8, y: u8, z: u8) -> bool {
        self.mul(x, y).is_some_and(|w| w != z)
    }
}

impl LoopOps for FiniteLoop {
    fn identity_elem(&self) -> u8 {
        self.identity() as u8
    }
    #[inline]
    fn mul(&self, x: u8, y: u8) -> Option<u8> {
        Some(FiniteLoop::mul(self, x as usize, y as usize) as u8)
    }
    #[inline]
    fn ldiv(&self, x: u8, y: u8) -> Option<u8> {
        Some(FiniteLoop::ldiv(self, x as usize, y as usize) as u8)
    }
    #[inline]
    fn rdiv(&self, x: u8, y: u8) -> Option<u8> {
        Some(FiniteLoop::rdiv(self, x as usize, y as usize) as u8)
    }
    #[inline]
    fn lin(&self, x: u8) -> Option<u8> {
        Some(FiniteLoop::lin(self, x as usize) as u8)
    }
    #[inline]
    fn rin(&self, x: u8) -> Option<u8> {
        Some(FiniteLoop::rin(self, x as usize) as u8)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Op {
    Var(u8),
    E,
    Mul(u16, u16),
    LDiv(u16, u16),
    RDiv(u16, u16),
    Lin(u16),
    Rin(u16),
}

#[derive(Clone, Debug)]
pub struct Program {
    ops: Vec<Op>,
    lhs: u16,
    rhs: u16,
    nvars: usize,
    /// `level_start[k]`: first op that depends on variable `k - 1` or later.
    level_start: Vec<usize>,
}

struct Builder<'a> {
    vars: &'a [String],
    ops: Vec<Op>,
    level: Vec<usize>,
    seen: HashMap<Op, u16>,
}

impl Builder<'_> {
    fn push(&mut self, op: Op, level: usize) -> u16 {
        if let Some(&i) = self.seen.get(&op) {
            return i;
        }
        let i = self.ops.len() as u16;
        self.ops.push(op);
        self.level.push(level);
        self.seen.insert(op, i);
        i
    }

    fn node(&mut self, t: &Term) -> u16 {
        match t {
            Term::Var(v) => {
                let k = self
                    .vars
                    .iter()
                    .position(|w| w == v)
                    .expect("variable list checked by Identity");
                self.push(Op::Var(k as u8), k + 1)
            }
            Term::E => self.push(Op::E, 0),
            Term::Mul(a, b) | Term::LDiv(a, b) | Term::RDiv(a, b) => {
                let (a, b) = (self.node(a), self.node(b));
                let level = self.level[a as usize].max(self.level[b as usize]);
                let op = match t {
                    Term::Mul(..) => Op::Mul(a, b),
                    Term::LDiv(..) => Op::LDiv(a, b),
                    _ => Op::RDiv(a, b),
                };
                self.push(op, level)
            }
            Term::Lin(a) | Term::Rin(a) => {
                let a = self.node(a);
                let level = self.level[a as usize];
                let op = if matches!(t, Term::Lin(_)) { Op::Lin(a) } else { Op::Rin(a) };
                self.push(op, level)
            }
        }
    }
}

impl Program {
    pub(crate) fn compile(lhs: &Term, rhs: &Term, vars: &[String]) -> Program {
        let mut b = Builder {
            vars,
            ops: Vec::new(),
            level: Vec::new(),
            seen: HashMap::new(),
        };
        let l = b.node(lhs);
        let r = b.node(rhs);

        // Stable sort by level keeps operands ahead of their users.
        let mut order: Vec<usize> = (0..b.ops.len()).collect();
        order.sort_by_key(|&i| b.level[i]);
        let mut remap = vec![0u16; b.ops.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u16;
        }
        let m = |i: u16| remap[i as usize];
        let ops: Vec<Op> = order
            .iter()
            .map(|&old| match b.ops[old] {
                Op::Mul(x, y) => Op::Mul(m(x), m(y)),
                Op::LDiv(x, y) => Op::LDiv(m(x), m(y)),
                Op::RDiv(x, y) => Op::RDiv(m(x), m(y)),
                Op::Lin(x) => Op::Lin(m(x)),
                Op::Rin(x) => Op::Rin(m(x)),
                other => other,
            })
            .collect();
        let levels: Vec<usize> = order.iter().map(|&old| b.level[old]).collect();
        let nvars = vars.len();
        let level_start = (0..=nvars + 1)
            .map(|k| levels.iter().position(|&lv| lv >= k).unwrap_or(levels.len()))
            .collect();
        Program {
            ops,
            lhs: m(l),
            rhs: m(r),
            nvars,
            level_start,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Evaluates both sides under `env`; `None` if some needed entry is unknown.
    pub fn eval<S: LoopOps + ?Sized>(&self, s: &S, env: &[u8], slots: &mut Vec<u8>) -> Option<(u8, u8)> {
        slots.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(k) => env[k as usize],
                Op::E => s.identity_elem(),
                Op::Mul(a, b) => s.mul(slots[a as usize], slots[b as usize])?,
                Op::LDiv(a, b) => s.ldiv(slots[a as usize], slots[b as usize])?,
                Op::RDiv(a, b) => s.rdiv(slots[a as usize], slots[b as usize])?,
                Op::Lin(a) => s.lin(slots[a as usize])?,
                Op::Rin(a) => s.rin(slots[a as usize])?,
            };
            slots.push(v);
        }
        Some((slots[self.lhs as usize], slots[self.rhs as usize]))
    }

    /// True when some assignment has every op defined on `s` and the two sides
    /// differ. Ops are evaluated level by level, so a prefix that leaves an op
    /// undefined skips every assignment extending it.
    pub fn refuted_on<S: LoopOps + ?Sized>(&self, s: &S, n: usize, slots: &mut Vec<u8>) -> bool {
        let fixed = vec![None; self.nvars];
        self.refuted_with(s, n, &fixed, slots)
    }

    /// Like [`Program::refuted_on`], restricted to assignments that make some
    /// op whose operands are variables read the entry `x·y = z`.
    pub fn refuted_at<S: LoopOps + ?Sized>(&self, s: &S, n: usize, entry: (u8, u8, u8), slots: &mut Vec<u8>) -> bool {
        let (x, y, z) = entry;
        let e = s.identity_elem();
        let mut fixed = vec![None; self.nvars];
        for op in &self.ops {
            let binds: &[(u16, u8)] = match *op {
                Op::Mul(a, b) => &[(a, x), (b, y)],
                Op::LDiv(a, b) => &[(a, x), (b, z)],
                Op::RDiv(a, b) => &[(a, z), (b, y)],
                Op::Lin(a) if z == e => &[(a, y)],
                Op::Rin(a) if z == e => &[(a, x)],
                _ => continue,
            };
            fixed.iter_mut().for_each(|f| *f = None);
            let consistent = binds.iter().all(|&(arg, val)| match self.ops[arg as usize] {
                Op::Var(k) => match fixed[k as usize] {
                    Some(w) => w == val,
                    None => {
                        fixed[k as usize] = Some(val);
                        true
                    }
                },
                _ => false,
            });
            if consistent && self.refuted_with(s, n, &fixed, slots) {
                return true;
            }
        }
        false
    }

    fn refuted_with<S: LoopOps + ?Sized>(&self, s: &S, n: usize, fixed: &[Option<u8>], slots: &mut Vec<u8>) -> bool {
        slots.clear();
        slots.resize(self.ops.len(), 0);
        let mut env = vec![0u8; self.nvars];
        self.refute_level(s, n, 0, fixed, &mut env, slots)
    }

    /// Evaluates every assignment, leaving unknown subterms undefined. When
    /// one side is known, the other must evaluate to it; that requirement is
    /// pushed down through ops with one unknown operand until it names a
    /// single table entry, and an entry that can no longer be placed refutes
    /// the instance.
    fn refute_level<S: LoopOps + ?Sized>(
        &self,
        s: &S,
        n: usize,
        k: usize,
        fixed: &[Option<u8>],
        env: &mut [u8],
        slots: &mut [u8],
    ) -> bool {
        let (lo, hi) = (self.level_start[k], self.level_start[k + 1]);
        for i in lo..hi {
            let arg = |a: u16| {
                let v = slots[a as usize];
                (v != UNDEF).then_some(v)
            };
            let v = match self.ops[i] {
                Op::Var(j) => Some(env[j as usize]),
                Op::E => Some(s.identity_elem()),
                Op::Mul(a, b) => arg(a).zip(arg(b)).and_then(|(a, b)| s.mul(a, b)),
                Op::LDiv(a, b) => arg(a).zip(arg(b)).and_then(|(a, b)| s.ldiv(a, b)),
                Op::RDiv(a, b) => arg(a).zip(arg(b)).and_then(|(a, b)| s.rdiv(a, b)),
                Op::Lin(a) => arg(a).and_then(|a| s.lin(a)),
                Op::Rin(a) => arg(a).and_then(|a| s.rin(a)),
            };
            slots[i] = v.unwrap_or(UNDEF);
        }
        if k == self.nvars {
            let (l, r) = (self.lhs as usize, self.rhs as usize);
            return match (slots[l], slots[r]) {
                (UNDEF, UNDEF) => false,
                (UNDEF, w) => self.require(s, l, w, slots),
                (w, UNDEF) => self.require(s, r, w, slots),
                (a, b) => a != b,
            };
        }
        let range = match fixed[k] {
            Some(v) => v..v + 1,
            None => 0..n as u8,
        };
        for x in range {
            env[k] = x;
            if self.refute_level(s, n, k + 1, fixed, env, slots) {
                return true;
            }
        }
        false
    }

    /// True when op `i` can never evaluate to `w` on any completion.
    fn require<S: LoopOps + ?Sized>(&self, s: &S, i: usize, w: u8, slots: &[u8]) -> bool {
        let v = slots[i];
        if v != UNDEF {
            return v != w;
        }
        let get = |a: u16| {
            let v = slots[a as usize];
            (v != UNDEF).then_some(v)
        };
        let e = s.identity_elem();
        match self.ops[i] {
            // a·b = w
            Op::Mul(a, b) => match (get(a), get(b)) {
                (Some(x), Some(y)) => s.conflicts(x, y, w),
                (Some(x), None) => s.ldiv(x, w).is_some_and(|y| self.require(s, b as usize, y, slots)),
                (None, Some(y)) => s.rdiv(w, y).is_some_and(|x| self.require(s, a as usize, x, slots)),
                (None, None) => false,
            },
            // a·w = b
            Op::LDiv(a, b) => match (get(a), get(b)) {
                (Some(x), Some(z)) => s.conflicts(x, w, z),
                (Some(x), None) => s.mul(x, w).is_some_and(|z| self.require(s, b as usize, z, slots)),
                (None, Some(z)) => s.rdiv(z, w).is_some_and(|x| self.require(s, a as usize, x, slots)),
                (None, None) => false,
            },
            // w·b = a
            Op::RDiv(a, b) => match (get(a), get(b)) {
                (Some(z), Some(y)) => s.conflicts(w, y, z),
                (Some(z), None) => s.ldiv(w, z).is_some_and(|y| self.require(s, b as usize, y, slots)),
                (None, Some(y)) => s.mul(w, y).is_some_and(|z| self.require(s, a as usize, z, slots)),
                (None, None) => false,
            },
            // w·a = e
            Op::Lin(a) => match get(a) {
                Some(y) => s.conflicts(w, y, e),
                None => s.rin(w).is_some_and(|y| self.require(s, a as usize, y, slots)),
            },
            // a·w = e
            Op::Rin(a) => match get(a) {
                Some(x) => s.conflicts(x, w, e),
                None => s.lin(w).is_some_and(|x| self.require(s, a as usize, x, slots)),
            },
            Op::Var(_) | Op::E => unreachable!("variables and e are always defined"),
        }
    }

    /// Scans assignments whose first `prefix.len()` variables are fixed, in
    /// lexicographic order of the rest. Returns the first falsifying
    /// assignment.
    pub(crate) fn first_failure(&self, l: &FiniteLoop, prefix: &[u8]) -> Option<Vec<u8>> {
        let n = l.order();
        let table = l.raw_table();
        let ldiv = l.raw_ldiv();
        let rdiv = l.raw_rdiv();
        let lin = l.raw_lin();
        let rin = l.raw_rin();
        let e = l.identity() as u8;
        let mut env = vec![0u8; self.nvars];
        env[..prefix.len()].copy_from_slice(prefix);
        let mut slots = vec![0u8; self.ops.len()];

        let run = |slots: &mut [u8], env: &[u8], from: usize| {
            for i in from..self.ops.len() {
                slots[i] = match self.ops[i] {
                    Op::Var(k) => env[k as usize],
                    Op::E => e,
                    Op::Mul(a, b) => table[slots[a as usize] as usize * n + slots[b as usize] as usize],
                    Op::LDiv(a, b) => ldiv[slots[a as usize] as usize * n + slots[b as usize] as usize],
                    Op::RDiv(a, b) => rdiv[slots[a as usize] as usize * n + slots[b as usize] as usize],
                    Op::Lin(a) => lin[slots[a as usize] as usize],
                    Op::Rin(a) => rin[slots[a as usize] as usize],
                };
            }
        };

        run(&mut slots, &env, 0);
        let fixed = prefix.len();
        loop {
            if slots[self.lhs as usize] != slots[self.rhs as usize] {
                return Some(env);
            }
            // odometer over the free variables, last one fastest
            let mut k = self.nvars;
            loop {
                if k == fixed {
                    return None;
                }
                k -= 1;
                env[k] += 1;
                if (env[k] as usize) < n {
                    break;
                }
                env[k] = 0;
            }
            run(&mut slots, &env, self.level_start[k + 1]);
        }
    }
}

/// Outcome of checking an identity on a loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub holds: bool,
    /// First falsifying assignment in lexicographic order of the declared
    /// variables; present exactly when `holds` is false.
    pub counterexample: Option<Vec<(String, usize)>>,
}

impl CheckResult {
    fn from_failure(id: &Identity, failure: Option<Vec<u8>>) -> Self {
        match failure {
            None => CheckResult { holds: true, counterexample: None },
            Some(env) => CheckResult {
                holds: false,
                counterexample: Some(
                    id.vars()
                        .iter()
                        .cloned()
                        .zip(env.into_iter().map(usize::from))
                        .collect(),
                ),
            },
        }
    }
}

const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Checks `id` on every assignment. Large sweeps split the first variable
/// across the rayon pool; the reported counterexample is the same as the
/// sequential one.
pub fn holds(l: &FiniteLoop, id: &Identity) -> CheckResult {
    let prog = id.program();
    let n = l.order();
    let space = n.checked_pow(prog.nvars() as u32).unwrap_or(usize::MAX);
    if prog.nvars() == 0 || space < PARALLEL_THRESHOLD || rayon::current_num_threads() == 1 {
        return holds_sequential(l, id);
    }
    let failure = (0..n as u8)
        .into_par_iter()
        .find_map_first(|a0| prog.first_failure(l, &[a0]));
    CheckResult::from_failure(id, failure)
}

pub fn holds_sequential(l: &FiniteLoop, id: &Identity) -> CheckResult {
    CheckResult::from_failure(id, id.program().first_failure(l, &[]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::tests::{l5, z};
    use crate::term::parse;

    fn brute(l: &FiniteLoop, id: &Identity) -> Option<Vec<usize>> {
        let k = id.vars().len();
        let n = l.order();
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut env = vec![0usize; k];
            let mut c = code;
            for slot in env.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            let named: Vec<(&str, usize)> =
                id.vars().iter().map(String::as_str).zip(env.iter().copied()).collect();
            if id.lhs().eval(l, &named).unwrap() != id.rhs().eval(l, &named).unwrap() {
                return Some(env);
            }
        }
        None
    }

    #[test]
    fn shared_subterms_compile_once() {
        let id = Identity::parse("t", "(x*y)*(x*y) = (x*y)").unwrap();
        // x, y, x*y, (x*y)*(x*y)
        assert_eq!(id.program().len(), 4);
    }

    #[test]
    fn examples() {
        let moufang = Identity::parse("moufang", "(x*y)*(z*x) = (x*(y*z))*x").unwrap();
        assert!(holds(&z(4), &moufang).holds);
        let r = holds(&l5(), &moufang);
        assert!(!r.holds);
        let cex = r.counterexample.unwrap();
        let env: Vec<usize> = cex.iter().map(|p| p.1).collect();
        assert_eq!(Some(env), brute(&l5(), &moufang));
        assert!(holds(&z(4), &Identity::parse("c", "x*y = y*x").unwrap()).holds);
    }

    #[test]
    fn precedence_respected_in_evaluation() {
        let a = Identity::parse("a", "x*y\\z = x*(y\\z)").unwrap();
        assert!(holds(&l5(), &a).holds);
        let t1 = parse("x*y\\z").unwrap();
        let t2 = parse("(x*y)\\z").unwrap();
        let l = l5();
        let differs = (0..5).any(|x| {
            (0..5).any(|y| {
                (0..5).any(|z| {
                    let env = [("x", x), ("y", y), ("z", z)];
                    t1.eval(&l, &env) != t2.eval(&l, &env)
                })
            })
        });
        assert!(differs);
    }

    #[test]
    fn matches_direct_evaluation_on_small_loops() {
        let ids = [
            "x*(y*z) = (x*y)*z",
            "x \\ (y*x) = (x\\y)*x",
            "(x*y)^r = y^r * x^r",
            "x^l * (x*y) = y",
            "((x/y)*z)\\x = z^l/y^r",
            "x*(y*z)/u = (x*y)/(z\\u)",
        ];
        for l in crate::search::enumerate_loops(5).unwrap() {
            for src in ids {
                let id = Identity::parse("t", src).unwrap();
                let r = holds_sequential(&l, &id);
                let expected = brute(&l, &id);
                assert_eq!(r.holds, expected.is_none(), "{src}");
                if let Some(exp) = expected {
                    let got: Vec<usize> = r.counterexample.unwrap().iter().map(|p| p.1).collect();
                    assert_eq!(got, exp, "{src}");
                }
            }
        }
    }

    #[test]
    fn closed_identities() {
        let id = Identity::parse("t", "e = e^l").unwrap();
        assert!(holds(&l5(), &id).holds);
    }
}
