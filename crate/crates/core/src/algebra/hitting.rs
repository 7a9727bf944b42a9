use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Vertex;

/// Greedy hitting set: repeatedly takes the vertex lying on the most paths
/// not yet hit (ties to the smaller id). Returns the chosen set ascending.
///
/// With every list holding at least `len` distinct vertices, the result has at
/// most `(n/len) * (1 + ln #paths)` vertices, which is asserted.
pub fn greedy_hitting_set(paths: &[Vec<Vertex>], n: usize) -> Vec<Vertex> {
    if paths.is_empty() {
        return Vec::new();
    }
    let mut on = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for (idx, p) in paths.iter().enumerate() {
        let mut vs = p.clone();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            on[v].push(idx);
            count[v] += 1;
        }
    }
    let mut hit = vec![false; paths.len()];
    let mut chosen = Vec::new();
    loop {
        let (best, &c) = count
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("n > 0 when paths exist");
        if c == 0 {
            break;
        }
        chosen.push(best);
        for &idx in &on[best] {
            if hit[idx] {
                continue;
            }
            hit[idx] = true;
            let mut vs = paths[idx].clone();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                count[v] -= 1;
            }
        }
    }
    chosen.sort_unstable();

    let min_len = paths
        .iter()
        .map(|p| {
            let mut vs = p.clone();
            vs.sort_unstable();
            vs.dedup();
            vs.len()
        })
        .min()
        .unwrap_or(1)
        .max(1);
    let bound = (n as f64 / min_len as f64) * (1.0 + libm::log(paths.len() as f64));
    assert!(chosen.len() as f64 <= bound + 1e-9, "greedy hitting set exceeded its bound");
    chosen
}
