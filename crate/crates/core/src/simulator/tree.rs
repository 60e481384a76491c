use rand::Rng;

use super::CutOutcome;
use crate::error::{Error, Result};
use crate::exact_engine::Toll;

/// A labelled free tree on the vertex labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTree {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl LabelledTree {
    /// Validates that `edges` span a tree on exactly the labels `1..=n`.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a tree has at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (u, v) = (u as usize, v as usize);
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidArgument(format!("edge ({u}, {v}) has a label outside 1..={n}")));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::InvalidArgument(format!("edge ({u}, {v}) closes a cycle")));
            }
            parent[ru] = rv;
        }
        Ok(Self { n, edges })
    }

    /// Decodes a Prüfer sequence of length `n - 2` over `1..=n`.
    pub fn from_prufer(n: usize, seq: &[u32]) -> Result<Self> {
        if n < 2 {
            return if seq.is_empty() && n == 1 {
                Ok(Self { n, edges: vec![] })
            } else {
                Err(Error::InvalidArgument("bad Prüfer input".into()))
            };
        }
        if seq.len() != n - 2 || seq.iter().any(|&v| v == 0 || v as usize > n) {
            return Err(Error::InvalidArgument(format!(
                "a Prüfer sequence for n = {n} has {} entries in 1..={n}",
                n - 2
            )));
        }
        let mut degree = vec![1u32; n + 1];
        for &v in seq {
            degree[v as usize] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut ptr = 1;
        while degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for &v in seq {
            let v = v as usize;
            edges.push((leaf as u32, v as u32));
            degree[v] -= 1;
            if degree[v] == 1 && v < ptr {
                leaf = v;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges.push((leaf as u32, n as u32));
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Sorted edge list with each edge as `(min, max)`.
    pub fn canonical_edges(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        e
    }
}

/// Uniform over the `n^{n-2}` labelled free trees on `1..=n`.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabelledTree {
    assert!(n >= 1, "tree size must be at least 1");
    if n == 1 {
        return LabelledTree { n, edges: vec![] };
    }
    let seq: Vec<u32> = (0..n - 2).map(|_| rng.random_range(1..=n as u32)).collect();
    LabelledTree::from_prufer(n, &seq).expect("valid Prüfer sequence")
}

const NONE: u32 = u32::MAX;

/// Scratch space reused across cuts of trees of bounded size.
#[derive(Debug, Default)]
pub struct CutWorkspace {
    start: Vec<u32>,
    adj: Vec<(u32, u32)>,
    alive: Vec<bool>,
    order: Vec<u32>,
    parent: Vec<u32>,
    parent_edge: Vec<u32>,
    subtree: Vec<u32>,
    roots: Vec<u32>,
}

impl CutWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `tree` into compressed adjacency form with 0-based vertices.
    fn load(&mut self, tree: &LabelledTree) {
        let n = tree.n;
        self.start.clear();
        self.start.resize(n + 1, 0);
        for &(u, v) in &tree.edges {
            self.start[u as usize] += 1;
            self.start[v as usize] += 1;
        }
        // prefix sums: start[i] = first slot of vertex i (0-based)
        let mut acc = 0;
        for i in 0..=n {
            let d = if i < n { self.start[i + 1] } else { 0 };
            self.start[i] = acc;
            acc += d;
        }
        self.adj.clear();
        self.adj.resize(2 * (n - 1), (0, 0));
        let mut fill = self.start.clone();
        for (e, &(u, v)) in tree.edges.iter().enumerate() {
            let (u, v) = (u as usize - 1, v as usize - 1);
            self.adj[fill[u] as usize] = (v as u32, e as u32);
            fill[u] += 1;
            self.adj[fill[v] as usize] = (u as u32, e as u32);
            fill[v] += 1;
        }
        self.alive.clear();
        self.alive.resize(n.saturating_sub(1), true);
        self.parent.resize(n, NONE);
        self.parent_edge.resize(n, NONE);
        self.subtree.resize(n, 0);
    }

    /// Collects the component of `root` in BFS order with parent links.
    fn explore(&mut self, root: u32) {
        self.order.clear();
        self.order.push(root);
        self.parent[root as usize] = NONE;
        let mut idx = 0;
        while idx < self.order.len() {
            let v = self.order[idx] as usize;
            idx += 1;
            let (lo, hi) = (self.start[v] as usize, self.start[v + 1] as usize);
            for slot in lo..hi {
                let (w, e) = self.adj[slot];
                if self.alive[e as usize] && w != self.parent[v] {
                    self.parent[w as usize] = v as u32;
                    self.parent_edge[w as usize] = e;
                    self.order.push(w);
                }
            }
        }
    }

    /// Size of the subtree hanging below `v` in the last exploration.
    fn subtree_size(&mut self, v: u32) -> usize {
        for &w in &self.order {
            self.subtree[w as usize] = 1;
        }
        for &w in self.order.iter().rev() {
            let p = self.parent[w as usize];
            if p != NONE {
                self.subtree[p as usize] += self.subtree[w as usize];
            }
        }
        self.subtree[v as usize] as usize
    }
}

/// Picks a uniform edge of the explored component and a uniform orientation.
/// Returns `(child vertex, left part is the child side)`.
fn choose_cut<R: Rng + ?Sized>(ws: &CutWorkspace, rng: &mut R) -> (u32, bool) {
    let s = ws.order.len();
    let child = ws.order[rng.random_range(1..s)];
    let child_is_left = rng.random::<bool>();
    (child, child_is_left)
}

/// Cuts `tree` down to singletons: each component of size `s ≥ 2` pays `b_s`,
/// loses a uniform edge, and both parts continue as free trees.
pub fn cut_tree_traced<R: Rng + ?Sized>(
    tree: &LabelledTree,
    rng: &mut R,
    toll: &Toll,
    ws: &mut CutWorkspace,
) -> CutOutcome {
    if tree.n <= 1 {
        return CutOutcome { cost: 0, first_left: None };
    }
    ws.load(tree);
    let mut cost = 0u64;
    let mut first_left = None;
    ws.roots.clear();
    ws.roots.push(0);
    while let Some(root) = ws.roots.pop() {
        ws.explore(root);
        let s = ws.order.len();
        if s == 1 {
            continue;
        }
        cost += toll.at(s);
        let (child, child_is_left) = choose_cut(ws, rng);
        if first_left.is_none() {
            let below = ws.subtree_size(child);
            first_left = Some(if child_is_left { below } else { s - below });
        }
        ws.alive[ws.parent_edge[child as usize] as usize] = false;
        ws.roots.push(child);
        ws.roots.push(ws.parent[child as usize]);
    }
    CutOutcome { cost, first_left }
}

/// Total cost of cutting `tree` with the square toll.
pub fn cut_cost_tree<R: Rng + ?Sized>(tree: &LabelledTree, rng: &mut R) -> u64 {
    cut_tree_traced(tree, rng, &Toll::default(), &mut CutWorkspace::new()).cost
}

/// Performs a single random cut and returns the ordered `(left, right)` parts,
/// each relabelled to `1..=size` preserving label order.
pub fn cut_once<R: Rng + ?Sized>(tree: &LabelledTree, rng: &mut R) -> Result<(LabelledTree, LabelledTree)> {
    if tree.n < 2 {
        return Err(Error::InvalidArgument("cannot cut a singleton".into()));
    }
    let mut ws = CutWorkspace::new();
    ws.load(tree);
    ws.explore(0);
    let (child, child_is_left) = choose_cut(&ws, rng);
    ws.alive[ws.parent_edge[child as usize] as usize] = false;
    let other = ws.parent[child as usize];
    let mut part = |root: u32| -> Result<LabelledTree> {
        ws.explore(root);
        let mut labels: Vec<u32> = ws.order.clone();
        labels.sort_unstable();
        let rank = |v: u32| labels.binary_search(&v).expect("in component") as u32 + 1;
        let edges = ws
            .order
            .iter()
            .filter(|&&w| ws.parent[w as usize] != NONE)
            .map(|&w| (rank(ws.parent[w as usize]), rank(w)))
            .collect();
        LabelledTree::new(labels.len(), edges)
    };
    let below = part(child)?;
    let above = part(other)?;
    Ok(if child_is_left { (below, above) } else { (above, below) })
}
