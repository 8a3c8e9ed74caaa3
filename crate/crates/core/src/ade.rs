//! Extended Coxeter-Dynkin graphs, their marks, and matching against McKay
//! matrices.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::characters::McKayMatrix;
use crate::error::{Error, Result};
use crate::exact::linalg::nullspace;
use crate::exact::{rat_int, Rat};
use crate::klein::{Branch, GroupType, KleinGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Zero,
    Star,
    Branch(Branch, u32),
    /// Node `k` of a cyclic graph.
    Cycle(u32),
}

impl Node {
    pub fn label(&self) -> String {
        match self {
            Node::Zero => "0".into(),
            Node::Star => "*".into(),
            Node::Branch(x, n) => format!("{}{n}", x.name()),
            Node::Cycle(k) => k.to_string(),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Branches whose nodes are labelled `n` and `-n`; the second one carries
/// the negative labels.
pub fn coupled_branches(gtype: GroupType) -> Option<(Branch, Branch)> {
    match gtype {
        GroupType::Tetrahedral => Some((Branch::A, Branch::B)),
        GroupType::Dihedral(p) if p % 2 == 1 => Some((Branch::B, Branch::C)),
        _ => None,
    }
}

/// Signed label `n` or `-n` of a branch node.
pub fn signed_index(gtype: GroupType, x: Branch, n: u32) -> i64 {
    match coupled_branches(gtype) {
        Some((_, neg)) if neg == x => -(n as i64),
        _ => n as i64,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdeGraph {
    pub gtype: GroupType,
    pub nodes: Vec<Node>,
    pub adjacency: Vec<Vec<u32>>,
    pub marks: Vec<u32>,
    /// Branches whose node labels come in `+-n` pairs.
    pub coupled: Option<(Branch, Branch)>,
}

impl AdeGraph {
    pub fn build(gtype: GroupType) -> Result<Self> {
        let (nodes, adjacency) = match gtype.triple() {
            None => cycle(gtype),
            Some(t) => branched(gtype, t),
        };
        let coupled = coupled_branches(gtype);
        let marks = affine_marks(&adjacency, 0)?;
        Ok(AdeGraph {
            gtype,
            nodes,
            adjacency,
            marks,
            coupled,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, node: Node) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    /// `2I - adjacency`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 2 * (i == j) as i64 - self.adjacency[i][j] as i64)
                    .collect()
            })
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.adjacency[i][j] > 0).collect()
    }

    /// Adjacency list keyed by node label.
    pub fn adjacency_list(&self) -> Vec<(String, Vec<String>)> {
        (0..self.len())
            .map(|i| {
                (
                    self.nodes[i].label(),
                    self.neighbors(i).iter().map(|&j| self.nodes[j].label()).collect(),
                )
            })
            .collect()
    }
}

fn cycle(gtype: GroupType) -> (Vec<Node>, Vec<Vec<u32>>) {
    let GroupType::Cyclic(n) = gtype else { unreachable!() };
    let n = n as usize;
    let nodes = (0..n as u32).map(Node::Cycle).collect();
    let mut adj = vec![vec![0u32; n]; n];
    for k in 0..n {
        adj[k][(k + 1) % n] += 1;
        adj[(k + 1) % n][k] += 1;
    }
    if n == 1 {
        adj[0][0] = 2;
    }
    (nodes, adj)
}

fn branched(gtype: GroupType, t: [u32; 3]) -> (Vec<Node>, Vec<Vec<u32>>) {
    let mut nodes = vec![Node::Zero];
    for (x, p) in Branch::ALL.into_iter().zip(t) {
        nodes.extend((1..p).map(|n| Node::Branch(x, n)));
    }
    nodes.push(Node::Star);
    let idx = |node: Node| nodes.iter().position(|&m| m == node).expect("node exists");
    let mut edges = Vec::new();
    for (x, p) in Branch::ALL.into_iter().zip(t) {
        for n in 1..p - 1 {
            edges.push((Node::Branch(x, n), Node::Branch(x, n + 1)));
        }
        if p > 1 {
            edges.push((Node::Branch(x, p - 1), Node::Star));
        }
    }
    let zero_at = match gtype {
        GroupType::Icosahedral => Node::Branch(Branch::A, 1),
        GroupType::Octahedral => Node::Branch(Branch::B, 1),
        GroupType::Tetrahedral => Node::Branch(Branch::C, 1),
        GroupType::Dihedral(2) => Node::Star,
        GroupType::Dihedral(_) => Node::Branch(Branch::A, 2),
        GroupType::Cyclic(_) => unreachable!(),
    };
    edges.push((Node::Zero, zero_at));
    let n = nodes.len();
    let mut adj = vec![vec![0u32; n]; n];
    for (a, b) in edges {
        let (i, j) = (idx(a), idx(b));
        adj[i][j] = 1;
        adj[j][i] = 1;
    }
    (nodes, adj)
}

/// Positive integer generator of the 1-dimensional kernel of `2I - adj`,
/// scaled to 1 at `base`.
pub fn affine_marks(adj: &[Vec<u32>], base: usize) -> Result<Vec<u32>> {
    let n = adj.len();
    let c: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_int(2 * (i == j) as i64 - adj[i][j] as i64))
                .collect()
        })
        .collect();
    let ker = nullspace(&c, n, &Rat::zero());
    let not_affine = || Error::Invalid("graph is not affine: kernel is not a positive line".into());
    let [v] = ker.as_slice() else {
        return Err(not_affine());
    };
    let scale = v[base].clone();
    if scale.is_zero() {
        return Err(not_affine());
    }
    v.iter()
        .map(|x| {
            let m = x / &scale;
            if m.is_integer() && m.is_positive() {
                m.to_integer().to_u32().ok_or_else(not_affine)
            } else {
                Err(not_affine())
            }
        })
        .collect()
}

/// All bijections node -> character with `M[i(u)][i(v)] = adj[u][v]`,
/// `degree(i(u)) = mark(u)` and the base node sent to the trivial character.
pub fn match_graph(
    m: &McKayMatrix,
    g: &AdeGraph,
    degrees: &[u32],
    trivial: usize,
) -> Vec<Vec<usize>> {
    let n = g.len();
    if m.len() != n || degrees.len() != n {
        return Vec::new();
    }
    // visit nodes so each one after the first has an already placed neighbor
    let mut order = vec![0usize];
    let mut placed = vec![false; n];
    placed[0] = true;
    let mut k = 0;
    while k < order.len() {
        for j in g.neighbors(order[k]) {
            if !placed[j] {
                placed[j] = true;
                order.push(j);
            }
        }
        k += 1;
    }
    order.extend((0..n).filter(|&j| !placed[j]));

    let mut results = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assign[0] = trivial;
    used[trivial] = true;
    if degrees[trivial] != g.marks[0] || m.get(trivial, trivial) != g.adjacency[0][0] {
        return results;
    }
    extend(m, g, degrees, &order, 1, &mut assign, &mut used, &mut results);
    results
}

#[allow(clippy::too_many_arguments)]
fn extend(
    m: &McKayMatrix,
    g: &AdeGraph,
    degrees: &[u32],
    order: &[usize],
    depth: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == order.len() {
        out.push(assign.clone());
        return;
    }
    let u = order[depth];
    for c in 0..degrees.len() {
        if used[c] || degrees[c] != g.marks[u] || m.get(c, c) != g.adjacency[u][u] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&v| m.get(c, assign[v]) == g.adjacency[u][v] && m.get(assign[v], c) == g.adjacency[v][u]);
        if !consistent {
            continue;
        }
        assign[u] = c;
        used[c] = true;
        extend(m, g, degrees, order, depth + 1, assign, used, out);
        used[c] = false;
        assign[u] = usize::MAX;
    }
}

/// Node -> conjugacy class and node -> group element.
#[derive(Clone, Debug, Serialize)]
pub struct NodeAssignment {
    pub classes: Vec<usize>,
    pub elements: Vec<usize>,
}

impl NodeAssignment {
    /// Zero -> 1, Star -> -1, `Branch(X, n)` -> `e_X^n`, `Cycle(k)` -> `g^k`.
    pub fn assign(k: &KleinGroup, g: &AdeGraph) -> Result<Self> {
        let grp = k.group();
        let elements: Vec<usize> = g
            .nodes
            .iter()
            .map(|node| -> Result<usize> {
                Ok(match *node {
                    Node::Zero => 0,
                    Node::Star => k
                        .minus_one()
                        .ok_or_else(|| Error::NodeClassMismatch("group has no -1".into()))?,
                    Node::Branch(x, n) => {
                        let e = k
                            .triangle()
                            .ok_or_else(|| Error::NodeClassMismatch("no triangle generators".into()))?[x.index()];
                        grp.pow(e, n as i64)
                    }
                    Node::Cycle(j) => grp.pow(k.generators()[0], j as i64),
                })
            })
            .collect::<Result<_>>()?;
        let classes: Vec<usize> = elements.iter().map(|&x| grp.class_of(x)).collect();
        if classes.len() != grp.classes().len() {
            return Err(Error::NodeClassMismatch(format!(
                "{} nodes for {} classes",
                classes.len(),
                grp.classes().len()
            )));
        }
        let mut seen = vec![false; classes.len()];
        for &c in &classes {
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::NodeClassMismatch(format!(
                    "class {c} is assigned to two nodes"
                )));
            }
        }
        if let Some((x, y)) = g.coupled {
            let t = k.group_type().triple().expect("D/E type");
            let tri = k.triangle().expect("checked");
            for n in 1..t[x.index()] {
                let lhs = grp.class_of(grp.pow(tri[y.index()], n as i64));
                let rhs = grp.class_of(grp.pow(tri[x.index()], -(n as i64)));
                if lhs != rhs {
                    return Err(Error::NodeClassMismatch(format!(
                        "coupled branches: e_{}^{n} is not conjugate to e_{}^-{n}",
                        y.name(),
                        x.name()
                    )));
                }
            }
        }
        Ok(NodeAssignment { classes, elements })
    }

    /// Node permutation induced by `[c] -> [c^-1]`.
    pub fn inversion_on_nodes(&self, k: &KleinGroup) -> Vec<usize> {
        let inv = k.inversion_involution();
        self.classes
            .iter()
            .map(|&c| {
                self.classes
                    .iter()
                    .position(|&d| d == inv[c])
                    .expect("assignment is a bijection")
            })
            .collect()
    }
}

/// Node permutation swapping the coupled branches and fixing the rest.
pub fn coupled_swap(g: &AdeGraph) -> Vec<usize> {
    (0..g.len())
        .map(|i| match (g.nodes[i], g.coupled) {
            (Node::Branch(x, n), Some((a, b))) if x == a || x == b => {
                let other = if x == a { b } else { a };
                g.index_of(Node::Branch(other, n)).expect("coupled branches have equal length")
            }
            _ => i,
        })
        .collect()
}

pub fn is_automorphism(g: &AdeGraph, perm: &[usize]) -> bool {
    let n = g.len();
    (0..n).all(|i| (0..n).all(|j| g.adjacency[perm[i]][perm[j]] == g.adjacency[i][j]))
        && (0..n).all(|i| g.marks[perm[i]] == g.marks[i])
}
