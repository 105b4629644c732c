//! Small digraph helpers over index sets: strongly connected components,
//! shortest paths, transitive closure. Deterministic: neighbors are visited
//! in ascending index order.

use std::collections::BTreeSet;

/// Kosaraju's algorithm. Components are returned sorted by smallest member,
/// members sorted ascending.
pub fn sccs(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut fwd = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    for &(s, t) in edges {
        if s < n && t < n {
            fwd[s].push(t);
            rev[t].push(s);
        }
    }

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // iterative post-order
        let mut stack = vec![(start, 0usize)];
        visited[start] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < fwd[v].len() {
                let w = fwd[v][*next];
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    let mut component = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        component[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &rev[v] {
                if component[w] == usize::MAX {
                    component[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

/// BFS shortest path from `from` to `to`, inclusive of both endpoints.
/// A self-path is only found through an actual edge cycle.
pub fn shortest_path(
    n: usize,
    edges: &BTreeSet<(usize, usize)>,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let mut succ = vec![Vec::new(); n];
    for &(s, t) in edges {
        if s < n && t < n {
            succ[s].push(t);
        }
    }
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    let mut seen = vec![false; n];
    // do not mark `from` so cycles back to it are discoverable
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if w == to {
                let mut path = vec![to];
                let mut cur = v;
                while cur != from {
                    path.push(cur);
                    cur = parent[cur];
                }
                path.push(from);
                path.reverse();
                return Some(path);
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

pub fn transitive_closure(
    n: usize,
    edges: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let mut reach = vec![vec![false; n]; n];
    for &(s, t) in edges {
        if s < n && t < n {
            reach[s][t] = true;
        }
    }
    for k in 0..n {
        let via = reach[k].clone();
        for row in reach.iter_mut() {
            if row[k] {
                for (dst, &src) in row.iter_mut().zip(&via) {
                    *dst |= src;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                out.insert((i, j));
            }
        }
    }
    out
}
