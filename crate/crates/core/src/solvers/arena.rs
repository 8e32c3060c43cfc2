//! Explicit finite arenas and the two fixpoints every solver runs on them.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::models::Player;

use super::SolveError;

pub(crate) const UNREACHED: u32 = u32::MAX;

pub(crate) enum Expansion<P> {
    /// Player 0 has reached its objective.
    Goal,
    /// Lies outside the truncation.
    Frontier,
    Inner {
        owner: Player,
        cost: u32,
        succ: Vec<(usize, P)>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Goal,
    Frontier,
    Inner(Player),
}

pub(crate) struct Arena<P> {
    pub positions: Vec<P>,
    pub index: HashMap<P, u32>,
    pub kind: Vec<Kind>,
    pub cost: Vec<u32>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    labels: Vec<usize>,
}

impl<P: Clone + Eq + Hash> Arena<P> {
    /// Breadth-first exploration from `roots`.
    pub fn explore<F>(roots: &[P], budget: usize, mut expand: F) -> Result<Self, SolveError>
    where
        F: FnMut(&P) -> Expansion<P>,
    {
        let mut arena = Arena {
            positions: Vec::new(),
            index: HashMap::new(),
            kind: Vec::new(),
            cost: Vec::new(),
            offsets: vec![0],
            targets: Vec::new(),
            labels: Vec::new(),
        };
        for r in roots {
            arena.intern(r.clone(), budget)?;
        }
        let mut next = 0;
        while next < arena.positions.len() {
            match expand(&arena.positions[next]) {
                Expansion::Goal => arena.kind.push(Kind::Goal),
                Expansion::Frontier => arena.kind.push(Kind::Frontier),
                Expansion::Inner { owner, cost, succ } => {
                    arena.kind.push(Kind::Inner(owner));
                    arena.cost[next] = cost;
                    for (label, p) in succ {
                        let id = arena.intern(p, budget)?;
                        arena.targets.push(id);
                        arena.labels.push(label);
                    }
                }
            }
            arena.offsets.push(arena.targets.len() as u32);
            next += 1;
        }
        Ok(arena)
    }

    fn intern(&mut self, p: P, budget: usize) -> Result<u32, SolveError> {
        if let Some(&id) = self.index.get(&p) {
            return Ok(id);
        }
        if self.positions.len() >= budget {
            return Err(SolveError::CapacityExceeded { budget });
        }
        let id = self.positions.len() as u32;
        self.index.insert(p.clone(), id);
        self.positions.push(p);
        self.cost.push(0);
        Ok(id)
    }
}

impl<P> Arena<P> {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    /// `(label, target)` pairs of the node, in expansion order.
    pub fn edges(&self, v: u32) -> impl Iterator<Item = (usize, u32)> + '_ {
        let (lo, hi) = (self.offsets[v as usize] as usize, self.offsets[v as usize + 1] as usize);
        (lo..hi).map(move |e| (self.labels[e], self.targets[e]))
    }

    fn predecessors(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.len();
        let mut count = vec![0u32; n + 1];
        for &t in &self.targets {
            count[t as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut fill = count.clone();
        let mut pred = vec![0u32; self.targets.len()];
        for v in 0..n {
            for (_, t) in self.edges(v as u32) {
                pred[fill[t as usize] as usize] = v as u32;
                fill[t as usize] += 1;
            }
        }
        (count, pred)
    }

    /// Player 0 attractor to the goal nodes, never entering a frontier node.
    /// Returns for each node the least total cost Player 0 can force until
    /// the goal, or [`UNREACHED`].
    ///
    /// A Player 1 node without successors is attracted at its own cost.
    pub fn attractor(&self) -> Vec<u32> {
        let n = self.len();
        let (poff, pred) = self.predecessors();
        let mut rank = vec![UNREACHED; n];
        // For Player 1 nodes: number of successors not yet attracted, and the
        // largest rank among attracted ones.
        let mut pending = vec![0u32; n];
        let mut worst = vec![0u32; n];
        let mut buckets: Vec<Vec<u32>> = Vec::new();
        for v in 0..n {
            match self.kind[v] {
                Kind::Goal => push_bucket(&mut buckets, 0, v as u32),
                Kind::Inner(Player::P1) => {
                    pending[v] = self.offsets[v + 1] - self.offsets[v];
                    if pending[v] == 0 {
                        push_bucket(&mut buckets, self.cost[v], v as u32);
                    }
                }
                _ => {}
            }
        }
        let mut level = 0usize;
        while level < buckets.len() {
            let Some(v) = buckets[level].pop() else {
                level += 1;
                continue;
            };
            let r = level as u32;
            if rank[v as usize] != UNREACHED {
                continue;
            }
            rank[v as usize] = r;
            for &u in &pred[poff[v as usize] as usize..poff[v as usize + 1] as usize] {
                let u = u as usize;
                if rank[u] != UNREACHED {
                    continue;
                }
                match self.kind[u] {
                    Kind::Inner(Player::P0) => {
                        push_bucket(&mut buckets, r + self.cost[u], u as u32);
                    }
                    Kind::Inner(Player::P1) => {
                        // `u` occurs once per parallel edge, matching `pending`.
                        worst[u] = worst[u].max(r);
                        pending[u] -= 1;
                        if pending[u] == 0 {
                            push_bucket(&mut buckets, worst[u] + self.cost[u], u as u32);
                        }
                    }
                    _ => {}
                }
            }
        }
        rank
    }

    /// Greatest set of nodes from which Player 1 can avoid goal and frontier
    /// nodes forever.
    pub fn safe_set(&self) -> Vec<bool> {
        let n = self.len();
        let (poff, pred) = self.predecessors();
        let mut safe = vec![true; n];
        let mut alive = vec![0u32; n];
        let mut stack = Vec::new();
        for v in 0..n {
            alive[v] = self.offsets[v + 1] - self.offsets[v];
            let bad = match self.kind[v] {
                Kind::Goal | Kind::Frontier => true,
                Kind::Inner(Player::P1) => alive[v] == 0,
                Kind::Inner(Player::P0) => false,
            };
            if bad {
                safe[v] = false;
                stack.push(v as u32);
            }
        }
        while let Some(v) = stack.pop() {
            for &u in &pred[poff[v as usize] as usize..poff[v as usize + 1] as usize] {
                let u = u as usize;
                if !safe[u] {
                    continue;
                }
                match self.kind[u] {
                    Kind::Inner(Player::P0) => {
                        safe[u] = false;
                        stack.push(u as u32);
                    }
                    Kind::Inner(Player::P1) => {
                        alive[u] -= 1;
                        if alive[u] == 0 {
                            safe[u] = false;
                            stack.push(u as u32);
                        }
                    }
                    _ => {}
                }
            }
        }
        safe
    }

    /// Player 0's choice at an attracted node: the lowest-labelled edge to a
    /// successor realising the rank.
    pub fn attractor_choice(&self, rank: &[u32], v: u32) -> Option<(usize, u32)> {
        let r = rank[v as usize];
        if r == UNREACHED {
            return None;
        }
        let need = r - self.cost[v as usize];
        self.edges(v)
            .filter(|&(_, t)| rank[t as usize] == need)
            .min_by_key(|&(label, t)| (label, t))
    }

    /// Player 1's choice at a safe node: the lowest-labelled safe successor.
    pub fn safe_choice(&self, safe: &[bool], v: u32) -> Option<(usize, u32)> {
        self.edges(v)
            .filter(|&(_, t)| safe[t as usize])
            .min_by_key(|&(label, t)| (label, t))
    }

    /// Nodes owned by `winner` reachable from `root` when `winner` follows
    /// `choose` and the opponent plays anything, paired with the chosen edge.
    pub fn strategy_region<F>(&self, root: u32, winner: Player, choose: F) -> Vec<(u32, usize, u32)>
    where
        F: Fn(u32) -> Option<(usize, u32)>,
    {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root as usize] = true;
        while let Some(v) = queue.pop_front() {
            let Kind::Inner(owner) = self.kind[v as usize] else {
                continue;
            };
            let next: Vec<u32> = if owner == winner {
                match choose(v) {
                    Some((label, t)) => {
                        out.push((v, label, t));
                        vec![t]
                    }
                    None => Vec::new(),
                }
            } else {
                self.edges(v).map(|(_, t)| t).collect()
            };
            for t in next {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        out
    }
}

fn push_bucket(buckets: &mut Vec<Vec<u32>>, r: u32, v: u32) {
    let r = r as usize;
    if buckets.len() <= r {
        buckets.resize_with(r + 1, Vec::new);
    }
    buckets[r].push(v);
}

#[cfg(test)]
mod tests {
    use super::*;

    // A tiny hand-built game: 0 (P0) -> {1, 2}; 1 goal; 2 (P1) -> 2.
    fn arena() -> Arena<u32> {
        Arena::explore(&[0], 100, |&v| match v {
            0 => Expansion::Inner {
                owner: Player::P0,
                cost: 1,
                succ: vec![(0, 2), (1, 1)],
            },
            1 => Expansion::Goal,
            _ => Expansion::Inner {
                owner: Player::P1,
                cost: 1,
                succ: vec![(0, 2)],
            },
        })
        .unwrap()
    }

    #[test]
    fn attractor_and_safe_set_are_complementary_here() {
        let a = arena();
        let rank = a.attractor();
        let safe = a.safe_set();
        let root = a.index[&0];
        assert_eq!(rank[root as usize], 1);
        assert!(!safe[root as usize]);
        assert!(safe[a.index[&2] as usize]);
        assert_eq!(a.attractor_choice(&rank, root), Some((1, a.index[&1])));
    }

    #[test]
    fn budget_is_enforced() {
        let r = Arena::explore(&[0u32], 10, |&v| Expansion::Inner {
            owner: Player::P0,
            cost: 1,
            succ: vec![(0, v + 1)],
        });
        assert!(matches!(r, Err(SolveError::CapacityExceeded { budget: 10 })));
    }
}
