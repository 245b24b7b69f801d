//! Planar graph of a finite segment set: nodes are segment endpoints,
//! mutual contact points and requested extra points; edges are the pieces
//! between consecutive nodes along each segment.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::predicates::{point_on_segment, segment_contact, Contact, Point};

pub(crate) struct Arrangement {
    pub nodes: Vec<Point>,
    pub adj: Vec<Vec<usize>>,
    index: HashMap<Point, usize>,
}

impl Arrangement {
    pub fn build(segments: &[(Point, Point)], extra: &[Point]) -> Self {
        let mut arr = Arrangement {
            nodes: Vec::new(),
            adj: Vec::new(),
            index: HashMap::new(),
        };
        let mut edges = BTreeSet::new();
        for (s, (a, b)) in segments.iter().enumerate() {
            if a == b {
                continue;
            }
            // collinear points sort along the segment in lexicographic order
            let mut cuts: BTreeSet<Point> = [a.clone(), b.clone()].into();
            for (t, (c, d)) in segments.iter().enumerate() {
                if t == s || c == d {
                    continue;
                }
                match segment_contact(a, b, c, d) {
                    Contact::None => {}
                    Contact::Point(x) => {
                        cuts.insert(x);
                    }
                    Contact::Overlap(x, y) => {
                        cuts.insert(x);
                        cuts.insert(y);
                    }
                }
            }
            for p in extra {
                if point_on_segment(p, a, b) {
                    cuts.insert(p.clone());
                }
            }
            let ids: Vec<usize> = cuts.into_iter().map(|p| arr.intern(p)).collect();
            for w in ids.windows(2) {
                edges.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        for p in extra {
            arr.intern(p.clone());
        }
        for (u, v) in edges {
            arr.adj[u].push(v);
            arr.adj[v].push(u);
        }
        arr
    }

    fn intern(&mut self, p: Point) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(p.clone(), i);
        self.nodes.push(p);
        self.adj.push(Vec::new());
        i
    }

    pub fn node(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Breadth-first parents from `root` (`usize::MAX` when unreachable,
    /// `root` for the root itself). Ties go to the smaller node id.
    pub fn bfs_parents(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let mut next = self.adj[u].clone();
            next.sort_unstable();
            for v in next {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// Node sequence from `root` to `target` along the BFS parents.
    pub fn path(parent: &[usize], target: usize) -> Option<Vec<usize>> {
        if parent[target] == usize::MAX {
            return None;
        }
        let mut path = vec![target];
        let mut u = target;
        while parent[u] != u {
            u = parent[u];
            path.push(u);
        }
        path.reverse();
        Some(path)
    }
}
