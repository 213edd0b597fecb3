//! Tanner graphs, girth, and matching graphs for weight-two columns.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::matrix::BinaryMatrix;
use crate::poly::CyclicPoly;

/// Bipartite check/qubit incidence graph of a parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    checks: Vec<Vec<usize>>,
    qubits: Vec<Vec<usize>>,
}

pub fn tanner(h: &BinaryMatrix) -> TannerGraph {
    TannerGraph {
        checks: h.rows().iter().map(|r| r.ones_vec()).collect(),
        qubits: h.column_supports(),
    }
}

impl TannerGraph {
    pub fn check_count(&self) -> usize {
        self.checks.len()
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    /// Qubits adjacent to check `c`, sorted.
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.checks[c]
    }

    /// Checks adjacent to qubit `q`, sorted.
    pub fn qubit_neighbors(&self, q: usize) -> &[usize] {
        &self.qubits[q]
    }

    pub fn edge_count(&self) -> usize {
        self.checks.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, check: usize, qubit: usize) -> bool {
        self.checks[check].binary_search(&qubit).is_ok()
    }

    // vertex ids: checks first, then qubits
    fn neighbors(&self, v: usize) -> &[usize] {
        let m = self.checks.len();
        if v < m {
            &self.checks[v]
        } else {
            &self.qubits[v - m]
        }
    }

    fn vertex_offset(&self, v: usize) -> usize {
        if v < self.checks.len() {
            self.checks.len()
        } else {
            0
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tanner {\n");
        for c in 0..self.checks.len() {
            out.push_str(&format!("  c{c} [shape=box];\n"));
        }
        for (c, qs) in self.checks.iter().enumerate() {
            for q in qs {
                out.push_str(&format!("  c{c} -- q{q};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Length of the shortest cycle, or `None` for a forest.
pub fn girth(g: &TannerGraph) -> Option<usize> {
    let total = g.checks.len() + g.qubits.len();
    (0..total)
        .into_par_iter()
        .filter_map(|s| shortest_cycle_through(g, s))
        .min()
}

// BFS from `source`; the minimum over all sources is the girth.
fn shortest_cycle_through(g: &TannerGraph, source: usize) -> Option<usize> {
    let total = g.checks.len() + g.qubits.len();
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let mut best: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        if let Some(b) = best {
            if 2 * dist[u] + 1 >= b {
                break;
            }
        }
        let off = g.vertex_offset(u);
        for &w in g.neighbors(u) {
            let w = w + off;
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if parent[u] != w {
                let len = dist[u] + dist[w] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

fn support(p: &CyclicPoly) -> Vec<bool> {
    (0..p.n()).map(|e| p.coeff(e)).collect()
}

/// Whether the Tanner graph of `[G_a | G_b]` has a 4-cycle, by the three
/// coefficient conditions over a shift `i` and two offsets `j ≠ j'`.
pub fn girth4_predicate(a: &CyclicPoly, b: &CyclicPoly) -> bool {
    let n = a.n();
    let (sa, sb) = (support(a), support(b));
    let twice = |x: &[bool], y: &[bool], i: usize| {
        (0..n).filter(|&j| x[j] && y[(j + i) % n]).nth(1).is_some()
    };
    (1..n).any(|i| twice(&sa, &sa, i) || twice(&sb, &sb, i)) || (0..n).any(|i| twice(&sa, &sb, i))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

/// Whether the Tanner graph has girth exactly six: no 4-cycle, and checks
/// `0`, `i`, `i + j` pairwise joined through three distinct qubits whose
/// blocks follow one of the patterns (a, a, a), (b, b, b), (a, a, b), (b, b, a).
pub fn girth6_predicate(a: &CyclicPoly, b: &CyclicPoly) -> bool {
    if girth4_predicate(a, b) {
        return false;
    }
    let n = a.n();
    let (sa, sb) = (support(a), support(b));
    // qubits (side, index) shared by checks c and c + delta: coefficients at
    // l and l + delta, qubit index l + c + delta
    let shared = |side: Side, c: usize, delta: usize| -> Vec<(Side, usize)> {
        let s = if side == Side::A { &sa } else { &sb };
        (0..n)
            .filter(|&l| s[l] && s[(l + delta) % n])
            .map(|l| (side, (l + c + delta) % n))
            .collect()
    };
    let patterns = [
        [Side::A, Side::A, Side::A],
        [Side::B, Side::B, Side::B],
        [Side::A, Side::A, Side::B],
        [Side::B, Side::B, Side::A],
    ];
    for i in 1..n {
        for j in 1..n {
            let ij = (i + j) % n;
            if ij == 0 {
                continue;
            }
            for pat in &patterns {
                // v joins x_0, x_i; v' joins x_i, x_{i+j}; v'' joins x_{i+j}, x_0
                let v1 = shared(pat[0], 0, i);
                let v2 = shared(pat[1], i, j);
                let v3: Vec<(Side, usize)> = (0..n)
                    .filter(|&l| {
                        let s = if pat[2] == Side::A { &sa } else { &sb };
                        s[l] && s[(l + ij) % n]
                    })
                    .map(|l| (pat[2], (l + ij) % n))
                    .collect();
                let hit = v1.iter().any(|p| {
                    v2.iter()
                        .any(|q| q != p && v3.iter().any(|r| r != p && r != q))
                });
                if hit {
                    return true;
                }
            }
        }
    }
    false
}

/// A vertex of a Tanner graph of a GB code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Check(usize),
    Left(usize),
    Right(usize),
}

/// The closed 8-walk `q_s, x_0, q'_j, x_{-k}, q_{s-k}, x_{-k-i}, q'_{j-i}, x_{-i}`
/// for `a = x^s(1 + x^i)`, `b = x^j(1 + x^k)`. `None` unless both have weight two.
pub fn eight_cycle_walk(a: &CyclicPoly, b: &CyclicPoly) -> Option<[Vertex; 8]> {
    let n = a.n();
    let (ea, eb) = (a.exponents(), b.exponents());
    if ea.len() != 2 || eb.len() != 2 {
        return None;
    }
    let (s, i) = (ea[0], ea[1] - ea[0]);
    let (j, k) = (eb[0], eb[1] - eb[0]);
    let m = |x: isize| x.rem_euclid(n as isize) as usize;
    let (s, i, j, k) = (s as isize, i as isize, j as isize, k as isize);
    Some([
        Vertex::Left(m(s)),
        Vertex::Check(0),
        Vertex::Right(m(j)),
        Vertex::Check(m(-k)),
        Vertex::Left(m(s - k)),
        Vertex::Check(m(-k - i)),
        Vertex::Right(m(j - i)),
        Vertex::Check(m(-i)),
    ])
}

/// Whether consecutive vertices of the closed walk are adjacent in `g`
/// (qubits `Left(t)` are columns `t`, `Right(t)` are columns `n + t`).
pub fn is_closed_walk(g: &TannerGraph, n: usize, walk: &[Vertex]) -> bool {
    let col = |v: Vertex| match v {
        Vertex::Left(t) => Some(t),
        Vertex::Right(t) => Some(n + t),
        Vertex::Check(_) => None,
    };
    (0..walk.len()).all(|idx| {
        let (x, y) = (walk[idx], walk[(idx + 1) % walk.len()]);
        match (x, y) {
            (Vertex::Check(c), q) | (q, Vertex::Check(c)) => col(q).is_some_and(|q| g.has_edge(c, q)),
            _ => false,
        }
    })
}

/// Shortest cycle within the edges used by a closed walk (the walk itself
/// when its vertices are distinct), or `None` when the walk only retraces.
pub fn walk_cycle_length(walk: &[Vertex]) -> Option<usize> {
    let mut ids: BTreeMap<Vertex, usize> = BTreeMap::new();
    for v in walk {
        let next = ids.len();
        ids.entry(*v).or_insert(next);
    }
    if ids.len() == walk.len() {
        return Some(walk.len());
    }
    let mut adj = vec![Vec::new(); ids.len()];
    for idx in 0..walk.len() {
        let (x, y) = (ids[&walk[idx]], ids[&walk[(idx + 1) % walk.len()]]);
        if !adj[x].contains(&y) {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    (0..adj.len())
        .filter_map(|s| {
            let mut dist = vec![usize::MAX; adj.len()];
            let mut parent = vec![usize::MAX; adj.len()];
            let mut q = VecDeque::from([s]);
            dist[s] = 0;
            let mut best: Option<usize> = None;
            while let Some(u) = q.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        q.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
            best
        })
        .min()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("column {column} has weight {weight}; matching needs weight at most two")]
    MatchingStructureViolated { column: usize, weight: usize },
    #[error("expected {expected} priors, got {got}")]
    PriorLength { expected: usize, got: usize },
}

/// One matching edge, standing for the lightest qubit among parallel columns.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingEdge {
    pub u: usize,
    /// `None` for a boundary edge.
    pub v: Option<usize>,
    pub weight: f64,
    pub qubit: usize,
    /// Heavier (or equal, later) qubits with the same endpoints.
    pub alternatives: Vec<usize>,
}

/// Checks as nodes and weight-two columns as edges; weight-one columns hang
/// off a shared boundary node.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodingGraph {
    pub nodes: usize,
    pub has_boundary: bool,
    pub edges: Vec<MatchingEdge>,
}

impl DecodingGraph {
    /// Index of the boundary node, when present.
    pub fn boundary(&self) -> Option<usize> {
        self.has_boundary.then_some(self.nodes)
    }
}

/// Edge weights are `ln((1 - p)/p)` for each qubit's prior `p`.
pub fn decoding_graph(h: &BinaryMatrix, priors: &[f64]) -> Result<DecodingGraph, GraphError> {
    if priors.len() != h.num_cols() {
        return Err(GraphError::PriorLength {
            expected: h.num_cols(),
            got: priors.len(),
        });
    }
    let mut by_ends: BTreeMap<(usize, Option<usize>), Vec<(f64, usize)>> = BTreeMap::new();
    for (q, checks) in h.column_supports().into_iter().enumerate() {
        let ends = match checks[..] {
            [] => continue,
            [c] => (c, None),
            [c, d] => (c, Some(d)),
            _ => {
                return Err(GraphError::MatchingStructureViolated {
                    column: q,
                    weight: checks.len(),
                })
            }
        };
        let p = priors[q];
        by_ends.entry(ends).or_default().push((((1.0 - p) / p).ln(), q));
    }
    let has_boundary = by_ends.keys().any(|(_, v)| v.is_none());
    let edges = by_ends
        .into_iter()
        .map(|((u, v), mut list)| {
            list.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            MatchingEdge {
                u,
                v,
                weight: list[0].0,
                qubit: list[0].1,
                alternatives: list[1..].iter().map(|x| x.1).collect(),
            }
        })
        .collect();
    Ok(DecodingGraph {
        nodes: h.num_rows(),
        has_boundary,
        edges,
    })
}
