use super::{Graph, VertexPartition};
use crate::error::{Error, Result};

pub const CTS_MAX_VERTICES: usize = 20;

/// Partition `V(g)` into `s` cliques followed by `t - s` independent sets
/// (all parts possibly empty), or report that none exists.
///
/// Exact backtracking for graphs with at most [`CTS_MAX_VERTICES`] vertices.
/// The returned partition always has exactly `t` parts in that order.
pub fn membership_cts(g: &Graph, t: usize, s: usize) -> Result<Option<VertexPartition>> {
    if s > t {
        return Err(Error::InvalidParameter(format!("need s <= t, got s={s}, t={t}")));
    }
    let n = g.vertex_count();
    if n > CTS_MAX_VERTICES {
        return Err(Error::EnvelopeExceeded {
            op: "membership_cts",
            detail: format!("{n} vertices, limit {CTS_MAX_VERTICES}"),
        });
    }
    if n == 0 {
        return Ok(Some(VertexPartition::new(0, vec![Vec::new(); t])?));
    }
    if t == 0 {
        return Ok(None);
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let mut parts = vec![0u64; t];
    let mut assign = vec![usize::MAX; n];
    if place(&rows, &order, 0, s, &mut parts, &mut assign) {
        return Ok(Some(VertexPartition::from_labels(&assign, t)?));
    }
    Ok(None)
}

fn place(rows: &[u64], order: &[usize], depth: usize, cliques: usize, parts: &mut [u64], assign: &mut [usize]) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    let bit = 1u64 << v;
    let mut tried_empty_clique = false;
    let mut tried_empty_indep = false;
    for p in 0..parts.len() {
        let is_clique = p < cliques;
        let members = parts[p];
        if members == 0 {
            let flag = if is_clique {
                &mut tried_empty_clique
            } else {
                &mut tried_empty_indep
            };
            if *flag {
                continue;
            }
            *flag = true;
        }
        let ok = if is_clique {
            rows[v] & members == members
        } else {
            rows[v] & members == 0
        };
        if !ok {
            continue;
        }
        parts[p] |= bit;
        assign[v] = p;
        if place(rows, order, depth + 1, cliques, parts, assign) {
            return true;
        }
        parts[p] &= !bit;
        assign[v] = usize::MAX;
    }
    false
}
