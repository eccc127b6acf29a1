use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Budget, SearchBudget};

/// Cover every element of `0..universe` exactly `mu` times by a subfamily of `sets`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub mu: u32,
}

impl ExactCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, mu: u32) -> Result<Self> {
        if mu == 0 {
            return Err(Error::Precondition("multiplicity must be at least 1".into()));
        }
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Precondition(format!("subset {i} is empty")));
            }
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::Precondition(format!("subset {i} contains {e} >= {universe}")));
            }
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            if t.len() != s.len() {
                return Err(Error::Precondition(format!("subset {i} repeats an element")));
            }
        }
        Ok(ExactCoverInstance { universe, sets, mu })
    }

    /// `ec1 universe=<u> mu=<mu>` then one subset per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("ec1") {
            return Err(Error::Parse { line: hl, msg: "expected ec1 header".into() });
        }
        let (mut universe, mut mu) = (None, None);
        for p in parts {
            let bad = || Error::Parse { line: hl, msg: format!("bad header field {p:?}") };
            let (k, v) = p.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.parse().map_err(|_| bad())?;
            match k {
                "universe" => universe = Some(v as usize),
                "mu" => mu = Some(v as u32),
                _ => return Err(bad()),
            }
        }
        let universe = universe.ok_or(Error::Parse { line: hl, msg: "header lacks universe=".into() })?;
        let mut sets = Vec::new();
        for (line, l) in lines {
            let s: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
            sets.push(s.map_err(|_| Error::Parse { line, msg: "bad element".into() })?);
        }
        ExactCoverInstance::new(universe, sets, mu.unwrap_or(1))
    }

    pub fn format(&self) -> String {
        let mut out = format!("ec1 universe={} mu={}\n", self.universe, self.mu);
        for s in &self.sets {
            let mut t = s.clone();
            t.sort_unstable();
            let t: Vec<String> = t.iter().map(|e| e.to_string()).collect();
            out.push_str(&t.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn is_solution(&self, chosen: &[usize]) -> bool {
        let mut cnt = vec![0u32; self.universe];
        for &s in chosen {
            for &e in &self.sets[s] {
                cnt[e] += 1;
            }
        }
        cnt.iter().all(|&c| c == self.mu)
    }
}

enum Undo {
    Kill(u32),
    Need(u32),
}

struct Solver<'a> {
    sets: &'a [Vec<u32>],
    elem_sets: Vec<Vec<u32>>,
    need: Vec<u32>,
    avail: Vec<u32>,
    alive: Vec<bool>,
    trail: Vec<Undo>,
    chosen: Vec<usize>,
    remaining: usize,
    budget: Budget,
}

impl Solver<'_> {
    fn kill(&mut self, s: u32) {
        if !self.alive[s as usize] {
            return;
        }
        self.alive[s as usize] = false;
        for &e in &self.sets[s as usize] {
            self.avail[e as usize] -= 1;
        }
        self.trail.push(Undo::Kill(s));
    }

    fn take(&mut self, s: u32) {
        self.kill(s);
        for i in 0..self.sets[s as usize].len() {
            let e = self.sets[s as usize][i];
            self.need[e as usize] -= 1;
            self.trail.push(Undo::Need(e));
            if self.need[e as usize] == 0 {
                self.remaining -= 1;
                for j in 0..self.elem_sets[e as usize].len() {
                    let t = self.elem_sets[e as usize][j];
                    self.kill(t);
                }
            }
        }
        self.chosen.push(s as usize);
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Kill(s) => {
                    self.alive[s as usize] = true;
                    for &e in &self.sets[s as usize] {
                        self.avail[e as usize] += 1;
                    }
                }
                Undo::Need(e) => {
                    if self.need[e as usize] == 0 {
                        self.remaining += 1;
                    }
                    self.need[e as usize] += 1;
                }
            }
        }
    }

    /// Uncovered element with the fewest live sets relative to its need.
    fn pick(&self) -> Option<(usize, bool)> {
        let mut best: Option<(usize, u32)> = None;
        for e in 0..self.need.len() {
            let need = self.need[e];
            if need == 0 {
                continue;
            }
            if self.avail[e] < need {
                return Some((e, false));
            }
            let slack = self.avail[e] - need;
            if best.is_none_or(|(_, b)| slack < b) {
                best = Some((e, slack));
                if slack == 0 {
                    break;
                }
            }
        }
        best.map(|(e, _)| (e, true))
    }

    fn search(&mut self) -> Result<bool> {
        self.budget.tick()?;
        if self.remaining == 0 {
            return Ok(true);
        }
        let Some((e, feasible)) = self.pick() else { return Ok(true) };
        if !feasible {
            return Ok(false);
        }
        let s = *self.elem_sets[e].iter().find(|&&s| self.alive[s as usize]).unwrap();
        let mark = self.trail.len();
        self.take(s);
        if self.search()? {
            return Ok(true);
        }
        self.chosen.pop();
        self.rollback(mark);
        self.kill(s);
        if self.search()? {
            return Ok(true);
        }
        self.rollback(mark);
        Ok(false)
    }
}

/// Finds a subfamily covering every element exactly `mu` times.
///
/// Branches on the element with least slack, including or excluding its first
/// live set. A nonzero seed shuffles the set order.
pub fn exact_cover(inst: &ExactCoverInstance, budget: &SearchBudget) -> Result<Vec<usize>> {
    exact_cover_with(inst, &[], budget)
}

/// As [`exact_cover`], with some sets forced into the solution.
pub fn exact_cover_with(inst: &ExactCoverInstance, forced: &[usize], budget: &SearchBudget) -> Result<Vec<usize>> {
    let sizes: Vec<usize> = inst.sets.iter().map(Vec::len).collect();
    if let Some(&sz) = sizes.first() {
        if sizes.iter().all(|&s| s == sz) && (inst.universe * inst.mu as usize) % sz != 0 {
            return Err(Error::Unsatisfiable);
        }
    } else if inst.universe > 0 {
        return Err(Error::Unsatisfiable);
    }
    let mut order: Vec<usize> = (0..inst.sets.len()).collect();
    if budget.seed != 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(budget.seed));
    }
    let sets: Vec<Vec<u32>> = order.iter().map(|&i| inst.sets[i].iter().map(|&e| e as u32).collect()).collect();
    let mut elem_sets = vec![Vec::new(); inst.universe];
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            elem_sets[e as usize].push(i as u32);
        }
    }
    let avail = elem_sets.iter().map(|v| v.len() as u32).collect();
    let mut solver = Solver {
        sets: &sets,
        elem_sets,
        need: vec![inst.mu; inst.universe],
        avail,
        alive: vec![true; sets.len()],
        trail: Vec::new(),
        chosen: Vec::new(),
        remaining: inst.universe,
        budget: budget.start(),
    };
    for &f in forced {
        let pos = order.iter().position(|&o| o == f).ok_or_else(|| Error::Precondition(format!("no set {f}")))?;
        if !solver.alive[pos] {
            return Err(Error::Unsatisfiable);
        }
        solver.take(pos as u32);
    }
    if !solver.search()? {
        return Err(Error::Unsatisfiable);
    }
    let mut out: Vec<usize> = solver.chosen.iter().map(|&i| order[i]).collect();
    out.sort_unstable();
    if !inst.is_solution(&out) {
        return Err(Error::Verification("exact cover returned a non-cover".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_instance() {
        let inst = ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]], 1).unwrap();
        let s = exact_cover(&inst, &SearchBudget::default()).unwrap();
        assert!(s == vec![0, 1] || s == vec![2]);
    }

    #[test]
    fn multiplicity_two() {
        let inst = ExactCoverInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0]], 2).unwrap();
        let s = exact_cover(&inst, &SearchBudget::default()).unwrap();
        assert_eq!(s, vec![0, 1, 2]);
    }

    #[test]
    fn unsatisfiable_and_budget() {
        let inst = ExactCoverInstance::new(3, vec![vec![0, 1], vec![1, 2]], 1).unwrap();
        assert!(matches!(exact_cover(&inst, &SearchBudget::default()), Err(Error::Unsatisfiable)));
        let b = SearchBudget { node_limit: 1, ..SearchBudget::default() };
        let inst = ExactCoverInstance::new(4, vec![vec![0], vec![1], vec![2], vec![3]], 1).unwrap();
        assert!(matches!(exact_cover(&inst, &b), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn format_round_trip() {
        let inst = ExactCoverInstance::new(3, vec![vec![0, 1], vec![2]], 1).unwrap();
        assert_eq!(ExactCoverInstance::parse(&inst.format()).unwrap(), inst);
    }

    #[test]
    fn seeds_are_deterministic() {
        let sets: Vec<Vec<usize>> = (0..6).flat_map(|i| [vec![i], vec![i, (i + 1) % 6]]).collect();
        let inst = ExactCoverInstance::new(6, sets, 1).unwrap();
        for seed in 0..5 {
            let b = SearchBudget { seed, ..SearchBudget::default() };
            assert_eq!(exact_cover(&inst, &b).unwrap(), exact_cover(&inst, &b).unwrap());
        }
    }
}
