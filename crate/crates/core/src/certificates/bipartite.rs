//! One-sided bipartite matching with checkable witnesses.

use std::collections::VecDeque;

use serde::Serialize;

/// Bipartite graph with a "solid" side to be covered and an "open" side.
/// `adjacency[s]` lists the open neighbours of solid vertex `s` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Bipartite {
    pub open_count: usize,
    pub adjacency: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(solid_count: usize, open_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); solid_count];
        for (s, o) in edges {
            assert!(s < solid_count && o < open_count, "edge ({s}, {o}) out of range");
            adjacency[s].push(o);
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        Self { open_count, adjacency }
    }

    pub fn solid_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, s: usize, o: usize) -> bool {
        self.adjacency.get(s).is_some_and(|a| a.binary_search(&o).is_ok())
    }

    /// Neighbourhood of a set of solid vertices, sorted.
    pub fn neighbourhood(&self, solids: &[usize]) -> Vec<usize> {
        let mut n: Vec<usize> = solids.iter().flat_map(|&s| self.adjacency[s].iter().copied()).collect();
        n.sort_unstable();
        n.dedup();
        n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum MatchingWitness {
    /// `assignment[s]` is the open vertex matched to solid vertex `s`.
    Covering(Vec<usize>),
    /// Solid vertices whose neighbourhood is smaller than the set itself.
    HallViolator(Vec<usize>),
}

impl MatchingWitness {
    pub fn is_covering(&self) -> bool {
        matches!(self, MatchingWitness::Covering(_))
    }

    /// Checks the witness against `g`.
    pub fn verify(&self, g: &Bipartite) -> bool {
        match self {
            MatchingWitness::Covering(assignment) => {
                if assignment.len() != g.solid_count() {
                    return false;
                }
                let mut used = vec![false; g.open_count];
                assignment
                    .iter()
                    .enumerate()
                    .all(|(s, &o)| o < g.open_count && !std::mem::replace(&mut used[o], true) && g.has_edge(s, o))
            }
            MatchingWitness::HallViolator(set) => {
                let mut seen = vec![false; g.solid_count()];
                let distinct = set
                    .iter()
                    .all(|&s| s < g.solid_count() && !std::mem::replace(&mut seen[s], true));
                distinct && g.neighbourhood(set).len() < set.len()
            }
        }
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft–Karp maximum matching; returns `match_of_solid` with `FREE` for
/// unmatched vertices.
fn maximum_matching(g: &Bipartite) -> (Vec<usize>, Vec<usize>) {
    let n = g.solid_count();
    let mut match_solid = vec![FREE; n];
    let mut match_open = vec![FREE; g.open_count];
    let mut dist = vec![0usize; n];
    loop {
        // layered BFS from free solid vertices
        let mut queue = VecDeque::new();
        for s in 0..n {
            if match_solid[s] == FREE {
                dist[s] = 0;
                queue.push_back(s);
            } else {
                dist[s] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(s) = queue.pop_front() {
            for &o in &g.adjacency[s] {
                let t = match_open[o];
                if t == FREE {
                    found = true;
                } else if dist[t] == usize::MAX {
                    dist[t] = dist[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        if !found {
            break;
        }
        for s in 0..n {
            if match_solid[s] == FREE {
                augment(g, s, &mut match_solid, &mut match_open, &mut dist);
            }
        }
    }
    (match_solid, match_open)
}

fn augment(g: &Bipartite, s: usize, match_solid: &mut [usize], match_open: &mut [usize], dist: &mut [usize]) -> bool {
    for &o in &g.adjacency[s] {
        let t = match_open[o];
        if t == FREE || (dist[t] == dist[s] + 1 && augment(g, t, match_solid, match_open, dist)) {
            match_solid[s] = o;
            match_open[o] = s;
            return true;
        }
    }
    dist[s] = usize::MAX;
    false
}

/// A matching covering every solid vertex, or a Hall violator when none exists.
///
/// The violator is the set of solid vertices reachable by alternating paths
/// from one unmatched solid vertex; its neighbourhood is one smaller than it.
pub fn complete_matching(g: &Bipartite) -> MatchingWitness {
    let (match_solid, match_open) = maximum_matching(g);
    let Some(root) = match_solid.iter().position(|&o| o == FREE) else {
        return MatchingWitness::Covering(match_solid);
    };
    let mut in_set = vec![false; g.solid_count()];
    let mut seen_open = vec![false; g.open_count];
    in_set[root] = true;
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        for &o in &g.adjacency[s] {
            if !std::mem::replace(&mut seen_open[o], true) {
                let t = match_open[o];
                debug_assert_ne!(t, FREE, "maximum matching admits no augmenting path");
                if !in_set[t] {
                    in_set[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    MatchingWitness::HallViolator((0..g.solid_count()).filter(|&s| in_set[s]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remark_graphs() {
        // Γ₁: three open, two solid; Γ₂: two solid sharing one open
        let g1 = Bipartite::new(2, 3, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)]);
        let w1 = complete_matching(&g1);
        assert!(w1.is_covering() && w1.verify(&g1));

        let g2 = Bipartite::new(2, 1, [(0, 0), (1, 0)]);
        let w2 = complete_matching(&g2);
        assert_eq!(w2, MatchingWitness::HallViolator(vec![0, 1]));
        assert!(w2.verify(&g2));
    }

    #[test]
    fn trivial_graphs() {
        let empty = Bipartite::new(0, 4, []);
        assert_eq!(complete_matching(&empty), MatchingWitness::Covering(vec![]));
        let complete = Bipartite::new(3, 3, (0..3).flat_map(|s| (0..3).map(move |o| (s, o))));
        assert!(complete_matching(&complete).verify(&complete));
        let isolated = Bipartite::new(1, 2, []);
        assert_eq!(complete_matching(&isolated), MatchingWitness::HallViolator(vec![0]));
    }

    #[test]
    fn bogus_witnesses_fail() {
        let g = Bipartite::new(2, 2, [(0, 0), (1, 0), (1, 1)]);
        assert!(!MatchingWitness::Covering(vec![0, 0]).verify(&g));
        assert!(!MatchingWitness::Covering(vec![1, 0]).verify(&g));
        assert!(!MatchingWitness::HallViolator(vec![0, 1]).verify(&g));
        assert!(MatchingWitness::Covering(vec![0, 1]).verify(&g));
    }
}
