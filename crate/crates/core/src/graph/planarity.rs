//! Planarity by the Demoucron–Malgrange–Pertuiset path-embedding algorithm,
//! run per biconnected block. Exact for every input size; intended for the
//! small quotient graphs produced by clique coverings.

use std::collections::HashSet;

use super::Graph;

pub fn is_planar(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    biconnected_blocks(g).iter().all(|b| block_is_planar(b))
}

/// Outerplanar iff the graph plus one vertex adjacent to everything is planar.
pub fn is_outerplanar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut apex = Graph::empty(n + 1);
    for (u, v) in g.edges() {
        apex.add_edge(u, v).expect("edge of a valid graph");
    }
    for u in 0..n {
        apex.add_edge(u, n).expect("apex edge");
    }
    is_planar(&apex)
}

/// A cyclic vertex order in which no two edges, drawn as chords of a circle,
/// cross. Such an order exists iff the graph is outerplanar. Backtracking with
/// vertex 0 fixed first; meant for graphs with at most a dozen vertices.
pub fn outerplanar_cyclic_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(vec![]);
    }
    let mut order = vec![0];
    let mut pos = vec![usize::MAX; n];
    pos[0] = 0;
    if extend_order(g, &mut order, &mut pos) {
        Some(order)
    } else {
        None
    }
}

fn extend_order(g: &Graph, order: &mut Vec<usize>, pos: &mut [usize]) -> bool {
    let n = g.vertex_count();
    if order.len() == n {
        return true;
    }
    let p = order.len();
    for v in 0..n {
        if pos[v] != usize::MAX {
            continue;
        }
        pos[v] = p;
        let ok = g.neighbors(v).filter(|&u| pos[u] != usize::MAX && u != v).all(|u| {
            let lo = pos[u];
            order.iter().all(|&x| {
                if x == u || pos[x] <= lo {
                    return true;
                }
                // x strictly between u and v; any chord from x to a placed
                // vertex outside [lo, p] crosses uv.
                g.neighbors(x)
                    .all(|y| y == u || pos[y] == usize::MAX || y == v || (pos[y] >= lo && pos[y] <= p))
            })
        });
        if ok {
            order.push(v);
            if extend_order(g, order, pos) {
                return true;
            }
            order.pop();
        }
        pos[v] = usize::MAX;
    }
    false
}

/// Edge sets of the biconnected blocks (Hopcroft–Tarjan edge stack).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent, next neighbour index)
        let mut dfs: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, parent, ref mut idx)) = dfs.last_mut() {
            if *idx < adj[u].len() {
                let v = adj[u][*idx];
                *idx += 1;
                if disc[v] == usize::MAX {
                    stack.push((u, v));
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    dfs.push((v, u, 0));
                } else if v != parent && disc[v] < disc[u] {
                    stack.push((u, v));
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                dfs.pop();
                if let Some(&(p, _, _)) = dfs.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

fn block_is_planar(edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    let m = edges.len();
    if n <= 4 || m <= 3 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    Dmp::new(adj).run()
}

struct Dmp {
    adj: Vec<Vec<usize>>,
    total_edges: usize,
    emb_v: Vec<bool>,
    emb_e: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

enum Fragment {
    Edge(usize, usize),
    Component {
        vertices: Vec<usize>,
        attachments: Vec<usize>,
    },
}

impl Fragment {
    fn attachments(&self) -> Vec<usize> {
        match self {
            Fragment::Edge(a, b) => vec![*a, *b],
            Fragment::Component { attachments, .. } => attachments.clone(),
        }
    }
}

impl Dmp {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let total_edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let n = adj.len();
        Dmp {
            adj,
            total_edges,
            emb_v: vec![false; n],
            emb_e: HashSet::new(),
            faces: Vec::new(),
        }
    }

    fn initial_cycle(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        let mut stack = vec![(0usize, 0usize)];
        depth[0] = 0;
        while let Some((u, i)) = stack.pop() {
            if i < self.adj[u].len() {
                stack.push((u, i + 1));
                let v = self.adj[u][i];
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    stack.push((v, 0));
                } else if v != parent[u] && depth[v] < depth[u] {
                    let mut cycle = vec![u];
                    let mut w = u;
                    while w != v {
                        w = parent[w];
                        cycle.push(w);
                    }
                    return cycle;
                }
            }
        }
        unreachable!("a biconnected block with more than 3 edges has a cycle")
    }

    fn run(mut self) -> bool {
        let cycle = self.initial_cycle();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            self.emb_e.insert(key(a, b));
            self.emb_v[a] = true;
        }
        let mut rev = cycle.clone();
        rev.reverse();
        self.faces = vec![cycle, rev];

        while self.emb_e.len() < self.total_edges {
            let frags = self.fragments();
            let mut choice: Option<(usize, usize)> = None;
            for (fi, frag) in frags.iter().enumerate() {
                let att = frag.attachments();
                let admissible: Vec<usize> = (0..self.faces.len())
                    .filter(|&f| att.iter().all(|a| self.faces[f].contains(a)))
                    .collect();
                match admissible.len() {
                    0 => return false,
                    1 => {
                        choice = Some((fi, admissible[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((fi, admissible[0]));
                        }
                    }
                }
            }
            let (fi, face) = choice.expect("at least one fragment while edges remain");
            let path = self.fragment_path(&frags[fi]);
            self.embed_path(face, &path);
        }
        true
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for u in 0..n {
            if !self.emb_v[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if u < v && self.emb_v[v] && !self.emb_e.contains(&key(u, v)) {
                    out.push(Fragment::Edge(u, v));
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.emb_v[s] || seen[s] {
                continue;
            }
            let mut vertices = vec![];
            let mut attachments = vec![];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                vertices.push(u);
                for &v in &self.adj[u] {
                    if self.emb_v[v] {
                        if !attachments.contains(&v) {
                            attachments.push(v);
                        }
                    } else if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            attachments.sort_unstable();
            out.push(Fragment::Component { vertices, attachments });
        }
        out
    }

    /// Path through the fragment joining two of its attachment vertices.
    fn fragment_path(&self, frag: &Fragment) -> Vec<usize> {
        match frag {
            Fragment::Edge(a, b) => vec![*a, *b],
            Fragment::Component { vertices, attachments } => {
                let a1 = attachments[0];
                let a2 = attachments[1];
                let n = self.adj.len();
                let inside: HashSet<usize> = vertices.iter().copied().collect();
                let mut prev = vec![usize::MAX; n];
                let mut queue = std::collections::VecDeque::new();
                for &c in &self.adj[a1] {
                    if inside.contains(&c) && prev[c] == usize::MAX {
                        prev[c] = a1;
                        queue.push_back(c);
                    }
                }
                while let Some(u) = queue.pop_front() {
                    if self.adj[u].contains(&a2) {
                        let mut path = vec![a2, u];
                        let mut w = u;
                        while prev[w] != a1 {
                            w = prev[w];
                            path.push(w);
                        }
                        path.push(a1);
                        path.reverse();
                        return path;
                    }
                    for &v in &self.adj[u] {
                        if inside.contains(&v) && prev[v] == usize::MAX {
                            prev[v] = u;
                            queue.push_back(v);
                        }
                    }
                }
                unreachable!("fragment of a biconnected block reaches two attachments")
            }
        }
    }

    fn embed_path(&mut self, face_idx: usize, path: &[usize]) {
        let face = std::mem::take(&mut self.faces[face_idx]);
        let len = face.len();
        let a1 = path[0];
        let a2 = *path.last().unwrap();
        let i = face.iter().position(|&v| v == a1).unwrap();
        let j = face.iter().position(|&v| v == a2).unwrap();
        let interior = &path[1..path.len() - 1];

        let mut f1 = Vec::new();
        let mut k = i;
        loop {
            f1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % len;
        }
        f1.extend(interior.iter().rev());

        let mut f2 = Vec::new();
        let mut k = j;
        loop {
            f2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % len;
        }
        f2.extend(interior.iter());

        self.faces[face_idx] = f1;
        self.faces.push(f2);
        for w in path.windows(2) {
            self.emb_e.insert(key(w[0], w[1]));
        }
        for &v in path {
            self.emb_v[v] = true;
        }
    }
}
