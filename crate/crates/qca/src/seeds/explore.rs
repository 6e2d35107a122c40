//! Exchange-graph exploration: breadth-first closure of a seed under
//! mutation, with deduplication by a canonical form.
//!
//! Seeds are considered equal up to a permutation of the exchangeable
//! indices (frozen indices stay put). The canonical form orders the
//! exchangeable frame entries by the total order on torus elements and
//! permutes `Λ`, `B̃` and `Σ` accordingly; among tie-breaking orders the
//! lexicographically smallest encoding wins.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{QuantumSeed, SeedError};
use crate::pairs::check_compatible;
use crate::qtorus::{GradingMatrix, SkewForm};

/// The exchange graph discovered from a starting seed. Vertex 0 is the
/// canonical class of the start; each vertex stores a representative seed
/// and its `n` outgoing direction slots.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    vertices: Vec<QuantumSeed>,
    adjacency: Vec<Vec<(usize, usize)>>,
    truncated: bool,
}

impl ExchangeGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn vertex(&self, id: usize) -> &QuantumSeed {
        &self.vertices[id]
    }

    pub fn vertices(&self) -> &[QuantumSeed] {
        &self.vertices
    }

    /// Outgoing slots `(direction label, target vertex)` of a vertex.
    pub fn neighbors(&self, id: usize) -> &[(usize, usize)] {
        &self.adjacency[id]
    }

    /// All direction-labeled edges `(source, direction, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(v, slots)| slots.iter().map(move |&(k, w)| (v, k, w)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.len(),
            "initial": 0,
            "truncated": self.truncated,
            "edges": Value::Array(
                self.edges()
                    .map(|(v, k, w)| json!([v, k, w]))
                    .collect(),
            ),
            "dot": self.to_dot(),
        })
    }

    /// An undirected DOT rendering. Mutation edges come in symmetric
    /// directed pairs, so each undirected edge is emitted once per
    /// direction slot on its smaller endpoint (covering parallel edges),
    /// labeled by that direction; self-loops once per slot.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(out, "  {v} [label=\"seed {v}\"];");
        }
        for (v, k, w) in self.edges() {
            if v <= w {
                let _ = writeln!(out, "  {v} -- {w} [label=\"{k}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A permutation-invariant fingerprint of a seed.
pub fn canonical_key(seed: &QuantumSeed) -> String {
    let m = seed.m();
    let ex = seed.ex().to_vec();
    // Order the exchangeable entries; group ties to enumerate all
    // completions.
    let mut order: Vec<usize> = ex.clone();
    order.sort_by(|&a, &b| seed.frame_entry(a).cmp(seed.frame_entry(b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match groups.last_mut() {
            Some(g) if seed.frame_entry(g[0]) == seed.frame_entry(k) => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    let mut best: Option<String> = None;
    for assignment in tie_orders(&groups) {
        // σ: new ex slot (position in `ex`) -> old index
        let mut sigma: Vec<usize> = (1..=m).collect();
        for (slot, &old) in assignment.iter().enumerate() {
            sigma[ex[slot] - 1] = old;
        }
        let enc = encode(seed, &sigma);
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    }
    best.expect("at least one ordering")
}

/// All concatenations of permutations within tie groups. Ties are rare;
/// the usual outcome is a single order.
fn tie_orders(groups: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut tail in perms(&rest) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
        out
    }
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for g in groups {
        let mut next = Vec::new();
        for head in &acc {
            for p in perms(g) {
                let mut h = head.clone();
                h.extend(p);
                next.push(h);
            }
        }
        acc = next;
    }
    acc
}

/// Serialize the seed with indices relabeled by `σ` (new -> old, 1-based
/// values in a 0-based vec).
fn encode(seed: &QuantumSeed, sigma: &[usize]) -> String {
    let m = seed.m();
    let lam = seed.pair().lambda();
    let bt = seed.pair().btilde();
    let mut s = String::new();
    for i in 0..m {
        for j in 0..m {
            let _ = write!(s, "{},", lam.entry(sigma[i] - 1, sigma[j] - 1));
        }
    }
    s.push('|');
    for i in 0..m {
        for &k in bt.ex() {
            let _ = write!(s, "{},", bt.get(sigma[i], sigma[k - 1]));
        }
    }
    s.push('|');
    if let Some(sig) = seed.sigma() {
        for i in 0..m {
            for j in 0..m {
                let _ = write!(s, "{},", sig.entry(sigma[i] - 1, sigma[j] - 1));
            }
        }
    }
    s.push('|');
    for i in 0..m {
        let _ = write!(s, "{:?};", seed.frame_entry(sigma[i]));
    }
    s
}

/// Breadth-first closure of a seed under mutation in all exchangeable
/// directions, stopping at the caps (and marking the result truncated).
pub fn explore(
    start: &QuantumSeed,
    max_seeds: usize,
    max_depth: usize,
) -> Result<ExchangeGraph, SeedError> {
    let mut vertices: Vec<QuantumSeed> = vec![start.clone()];
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut ids: HashMap<String, usize> = HashMap::new();
    ids.insert(canonical_key(start), 0);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    queue.push_back((0, 0));
    let mut truncated = false;

    while let Some((vid, depth)) = queue.pop_front() {
        if depth == max_depth {
            truncated = true;
            continue;
        }
        let seed = vertices[vid].clone();
        for &k in seed.ex() {
            let neighbor = seed.mutate(k)?;
            let key = canonical_key(&neighbor);
            let target = match ids.get(&key) {
                Some(&w) => w,
                None => {
                    if vertices.len() == max_seeds {
                        truncated = true;
                        continue;
                    }
                    let w = vertices.len();
                    vertices.push(neighbor);
                    adjacency.push(Vec::new());
                    ids.insert(key, w);
                    queue.push_back((w, depth + 1));
                    w
                }
            };
            adjacency[vid].push((k, target));
        }
    }
    Ok(ExchangeGraph { vertices, adjacency, truncated })
}

/// Rebuild the exploration with all coefficients specialized at `q = 1`
/// and compare: the specialization must identify the two graphs vertex by
/// vertex. Returns the common size.
pub fn classical_shadow_size(graph: &ExchangeGraph) -> Result<usize, SeedError> {
    let mut classes: HashMap<String, usize> = HashMap::new();
    for v in graph.vertices() {
        let key = classical_key(v);
        *classes.entry(key).or_insert(0) += 1;
    }
    if classes.len() != graph.len() {
        return Err(SeedError::ShapeViolation(format!(
            "q = 1 specialization identifies {} of {} quantum seeds",
            classes.len(),
            graph.len()
        )));
    }
    Ok(classes.len())
}

/// Canonical form of the `q = 1` shadow: specialized frame entries plus
/// the exchange matrix (no `Λ`).
fn classical_key(seed: &QuantumSeed) -> String {
    let m = seed.m();
    let ex = seed.ex().to_vec();
    let spec: Vec<String> = (1..=m)
        .map(|i| format!("{:?}", seed.frame_entry(i).specialize_q1()))
        .collect();
    let mut order: Vec<usize> = ex.clone();
    order.sort_by(|&a, &b| spec[a - 1].cmp(&spec[b - 1]));
    let mut sigma: Vec<usize> = (1..=m).collect();
    for (slot, &old) in order.iter().enumerate() {
        sigma[ex[slot] - 1] = old;
    }
    let bt = seed.pair().btilde();
    let mut s = String::new();
    for i in 0..m {
        for &k in bt.ex() {
            let _ = write!(s, "{},", bt.get(sigma[i], sigma[k - 1]));
        }
    }
    s.push('|');
    for i in 0..m {
        let _ = write!(s, "{};", spec[sigma[i] - 1]);
    }
    s
}

/// Check that the support hull of a cluster variable does not shrink at
/// `q = 1`: every support point that is extreme for some coordinate
/// functional (hence a vertex of the hull) keeps a nonzero coefficient.
/// In two dimensions the full hull is checked.
pub fn newton_hull_survives_q1(x: &crate::qtorus::TorusElement) -> bool {
    let support: Vec<Vec<i64>> = x.iter().map(|(e, _)| e.clone()).collect();
    let surviving: Vec<Vec<i64>> = x.specialize_q1().into_iter().map(|(e, _)| e).collect();
    if support.is_empty() {
        return true;
    }
    let m = support[0].len();
    let vertices: Vec<Vec<i64>> = if m == 2 {
        hull_2d(&support)
    } else {
        // points uniquely extremal along a coordinate are hull vertices
        let mut vs = Vec::new();
        for i in 0..m {
            for dir in [1i64, -1] {
                let best = support.iter().map(|e| dir * e[i]).max().unwrap();
                let arg: Vec<&Vec<i64>> =
                    support.iter().filter(|e| dir * e[i] == best).collect();
                if arg.len() == 1 && !vs.contains(arg[0]) {
                    vs.push(arg[0].clone());
                }
            }
        }
        vs
    };
    vertices.iter().all(|v| surviving.contains(v))
}

/// Convex hull vertices in the plane (monotone chain).
fn hull_2d(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().map(|(a, b)| vec![a, b]).collect();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|(a, b)| vec![a, b]).collect()
}

/// Convenience: rebuild a graded seed from raw matrices and explore.
pub fn explore_pair(
    lambda: SkewForm,
    btilde: crate::pairs::ExchangeMatrix,
    sigma: Option<GradingMatrix>,
    max_seeds: usize,
    max_depth: usize,
) -> Result<ExchangeGraph, SeedError> {
    let pair = check_compatible(lambda, btilde)?;
    let seed = super::initial_seed(pair, sigma)?;
    explore(&seed, max_seeds, max_depth)
}
