//! Simplicial isomorphism search.
//!
//! Backtracking over vertex bijections, pruned by vertex invariants
//! (degree, incident maximal-simplex sizes, one refinement round over
//! neighbor classes) and by incremental maximal-simplex membership checks.
//! A node budget guards against pathological inputs.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{Complex, Vertex};

pub const DEFAULT_ISO_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error)]
#[error("isomorphism search exceeded the node budget of {budget}")]
pub struct IsoBudgetExhausted {
    pub budget: u64,
}

/// Convenience wrapper with the default budget. Panics if the budget is
/// exhausted, which desk-scale inputs do not approach.
pub fn are_isomorphic(a: &Complex, b: &Complex) -> bool {
    isomorphism(a, b, DEFAULT_ISO_BUDGET)
        .expect("isomorphism search exceeded its node budget")
        .is_some()
}

/// Searches for a vertex bijection carrying maximal simplices onto maximal
/// simplices. Returns a witness relabeling on success.
pub fn isomorphism(
    a: &Complex,
    b: &Complex,
    budget: u64,
) -> Result<Option<Vec<(Vertex, Vertex)>>, IsoBudgetExhausted> {
    if a.f_vector() != b.f_vector() {
        return Ok(None);
    }
    if a.maximal_simplices().len() != b.maximal_simplices().len() {
        return Ok(None);
    }
    if a.vertex_count() == 0 {
        // Void or empty-simplex-only on both sides (f-vectors agree).
        return Ok(Some(Vec::new()));
    }

    let sa = Side::new(a);
    let sb = Side::new(b);

    // Vertices must fall into identical invariant classes with equal counts.
    let mut count_a: HashMap<&InvariantKey, usize> = HashMap::new();
    for key in &sa.class_of {
        *count_a.entry(key).or_default() += 1;
    }
    let mut count_b: HashMap<&InvariantKey, usize> = HashMap::new();
    for key in &sb.class_of {
        *count_b.entry(key).or_default() += 1;
    }
    if count_a != count_b {
        return Ok(None);
    }

    let mut search = Search {
        sa: &sa,
        sb: &sb,
        a_to_b: vec![usize::MAX; sa.n],
        b_used: vec![false; sb.n],
        a_max_hit: vec![0; sa.maximal.len()],
        order: choose_order(&sa, &count_a),
        budget,
        initial_budget: budget,
    };
    let found = search.run(0)?;
    if !found {
        return Ok(None);
    }
    let mut witness: Vec<(Vertex, Vertex)> = search
        .a_to_b
        .iter()
        .enumerate()
        .map(|(i, &j)| (sa.labels[i], sb.labels[j]))
        .collect();
    witness.sort_unstable();
    Ok(Some(witness))
}

type InvariantKey = (Vec<usize>, Vec<u64>);

struct Side {
    n: usize,
    labels: Vec<Vertex>,
    /// Adjacency as sorted neighbor index lists.
    adj: Vec<Vec<usize>>,
    adj_set: Vec<HashSet<usize>>,
    /// Maximal simplices as sorted vertex-index lists.
    maximal: Vec<Vec<usize>>,
    maximal_set: HashSet<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    class_of: Vec<InvariantKey>,
}

impl Side {
    fn new(k: &Complex) -> Side {
        let labels: Vec<Vertex> = k.vertices().to_vec();
        let pos: HashMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = labels.len();

        let mut adj_set: Vec<HashSet<usize>> = vec![HashSet::new(); n];
        for e in k.faces(1) {
            let (u, v) = (pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
            adj_set[u].insert(v);
            adj_set[v].insert(u);
        }
        let adj: Vec<Vec<usize>> = adj_set
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().copied().collect();
                v.sort_unstable();
                v
            })
            .collect();

        let mut maximal: Vec<Vec<usize>> = k
            .maximal_simplices()
            .iter()
            .filter(|m| !m.is_empty())
            .map(|m| {
                let mut v: Vec<usize> = m.vertices().iter().map(|w| pos[w]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        maximal.sort_unstable();
        let maximal_set: HashSet<Vec<usize>> = maximal.iter().cloned().collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, m) in maximal.iter().enumerate() {
            for &v in m {
                incident[v].push(i);
            }
        }

        // Round 0: (incident maximal sizes, [degree]).
        let base: Vec<InvariantKey> = (0..n)
            .map(|v| {
                let mut sizes: Vec<usize> = incident[v].iter().map(|&i| maximal[i].len()).collect();
                sizes.sort_unstable();
                (sizes, vec![adj[v].len() as u64])
            })
            .collect();
        // Round 1: refine by the multiset of neighbor classes. Class ids
        // are ranks among the sorted distinct base keys so that both sides
        // number identical keys identically.
        let mut distinct: Vec<&InvariantKey> = base.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let ids: HashMap<&InvariantKey, u64> = distinct
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u64))
            .collect();
        let class_of: Vec<InvariantKey> = (0..n)
            .map(|v| {
                let mut neigh: Vec<u64> = adj[v].iter().map(|&u| ids[&base[u]]).collect();
                neigh.sort_unstable();
                let mut key = base[v].clone();
                key.1.extend(neigh);
                key
            })
            .collect();

        Side {
            n,
            labels,
            adj,
            adj_set,
            maximal,
            maximal_set,
            incident,
            class_of,
        }
    }
}

/// Process rare classes first, then stay adjacent to the mapped region.
fn choose_order(sa: &Side, counts: &HashMap<&InvariantKey, usize>) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(sa.n);
    let mut placed = vec![false; sa.n];
    while order.len() < sa.n {
        let mut best: Option<usize> = None;
        let frontier: HashSet<usize> = order
            .iter()
            .flat_map(|&v| sa.adj[v].iter().copied())
            .filter(|&v| !placed[v])
            .collect();
        let pool: Box<dyn Iterator<Item = usize>> = if frontier.is_empty() {
            Box::new((0..sa.n).filter(|&v| !placed[v]))
        } else {
            Box::new(frontier.into_iter())
        };
        for v in pool {
            let better = match best {
                None => true,
                Some(b) => counts[&sa.class_of[v]] < counts[&sa.class_of[b]],
            };
            if better {
                best = Some(v);
            }
        }
        let v = best.expect("at least one unplaced vertex");
        placed[v] = true;
        order.push(v);
    }
    order
}

struct Search<'a> {
    sa: &'a Side,
    sb: &'a Side,
    a_to_b: Vec<usize>,
    b_used: Vec<bool>,
    /// How many vertices of each maximal simplex of `a` are mapped.
    a_max_hit: Vec<usize>,
    order: Vec<usize>,
    budget: u64,
    initial_budget: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<bool, IsoBudgetExhausted> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        for w in 0..self.sb.n {
            if self.b_used[w] || self.sa.class_of[v] != self.sb.class_of[w] {
                continue;
            }
            if self.budget == 0 {
                return Err(IsoBudgetExhausted {
                    budget: self.initial_budget,
                });
            }
            self.budget -= 1;
            if !self.consistent(v, w) {
                continue;
            }
            self.a_to_b[v] = w;
            self.b_used[w] = true;
            let ok = self.place_check(v) && self.run(depth + 1)?;
            if ok {
                return Ok(true);
            }
            for &mi in &self.sa.incident[v] {
                self.a_max_hit[mi] -= 1;
            }
            self.a_to_b[v] = usize::MAX;
            self.b_used[w] = false;
        }
        Ok(false)
    }

    /// Adjacency and non-adjacency with every already-mapped vertex.
    fn consistent(&self, v: usize, w: usize) -> bool {
        for (u, &img) in self.a_to_b.iter().enumerate() {
            if img == usize::MAX {
                continue;
            }
            if self.sa.adj_set[v].contains(&u) != self.sb.adj_set[w].contains(&img) {
                return false;
            }
        }
        true
    }

    /// Marks `v` placed; any maximal simplex of `a` that became fully
    /// mapped must land on a maximal simplex of `b`.
    fn place_check(&mut self, v: usize) -> bool {
        let mut ok = true;
        for &mi in &self.sa.incident[v] {
            self.a_max_hit[mi] += 1;
            if ok && self.a_max_hit[mi] == self.sa.maximal[mi].len() {
                let mut image: Vec<usize> = self.sa.maximal[mi]
                    .iter()
                    .map(|&u| self.a_to_b[u])
                    .collect();
                image.sort_unstable();
                if !self.sb.maximal_set.contains(&image) {
                    ok = false;
                }
            }
        }
        ok
    }
}
