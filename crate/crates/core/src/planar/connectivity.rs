use super::{edge_key, PlaneGraph};

pub fn is_connected(g: &PlaneGraph) -> bool {
    g.vertex_count() == 0 || g.components().len() == 1
}

pub fn is_subcubic(g: &PlaneGraph) -> bool {
    g.max_degree() <= 3
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_two_connected(g: &PlaneGraph) -> bool {
    g.vertex_count() >= 3 && is_connected(g) && cut_vertices(g).is_empty()
}

/// Edge blocks: every edge gets a block id. Returns `(block_of_edge, count)`
/// where `block_of_edge` is indexed like [`PlaneGraph::edges`].
pub fn biconnected_components(g: &PlaneGraph) -> (Vec<usize>, usize) {
    let edges = g.edges();
    let edge_index: std::collections::HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut block = vec![usize::MAX; edges.len()];
    let mut blocks = 0;
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent, pos) = stack[top];
            let rot = g.neighbors(v);
            if pos < rot.len() {
                let u = rot[pos];
                stack[top].2 += 1;
                if u == parent {
                    continue;
                }
                let e = edge_index[&edge_key(u, v)];
                if disc[u] == usize::MAX {
                    edge_stack.push(e);
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let stop = edge_index[&edge_key(v, parent)];
                        while let Some(e) = edge_stack.pop() {
                            block[e] = blocks;
                            if e == stop {
                                break;
                            }
                        }
                        blocks += 1;
                    }
                }
            }
        }
    }
    (block, blocks)
}

/// Vertices whose removal increases the number of components, ascending.
pub fn cut_vertices(g: &PlaneGraph) -> Vec<usize> {
    let edges = g.edges();
    let (block, _) = biconnected_components(g);
    let mut first_block = vec![usize::MAX; g.vertex_count()];
    let mut is_cut = vec![false; g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        for x in [u, v] {
            if first_block[x] == usize::MAX {
                first_block[x] = block[i];
            } else if first_block[x] != block[i] {
                is_cut[x] = true;
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| is_cut[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::build_embedding;

    fn graph(n: usize, edges: &[(usize, usize)]) -> PlaneGraph {
        build_embedding(n, edges, None).unwrap()
    }

    #[test]
    fn triangle_is_two_connected_and_subcubic() {
        let g = PlaneGraph::cycle(3);
        assert!(is_two_connected(&g));
        assert!(is_subcubic(&g));
    }

    #[test]
    fn path_is_not_two_connected() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(!is_two_connected(&g));
        assert_eq!(cut_vertices(&g), vec![1]);
    }

    #[test]
    fn k2_is_not_two_connected() {
        assert!(!is_two_connected(&graph(2, &[(0, 1)])));
    }

    #[test]
    fn subcubic_k4_not_k5() {
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_subcubic(&k4));
        let mut rot = vec![vec![]; 5];
        for (u, r) in rot.iter_mut().enumerate() {
            *r = (0..5).filter(|&v| v != u).collect();
        }
        let k5 = PlaneGraph::from_rotation(rot).unwrap();
        assert!(!is_subcubic(&k5));
    }

    #[test]
    fn bowtie_blocks() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let (_, count) = biconnected_components(&g);
        assert_eq!(count, 2);
        assert_eq!(cut_vertices(&g), vec![2]);
    }
}
