//! Brute-force oracles, deliberately naive and independent of the library's
//! solvers. Only the `Graph` accessors are shared.
#![allow(dead_code)]

use ramsey_goodness::{Graph, TwoColoring};

pub fn adj(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Longest cycle length (0 if acyclic) by Held–Karp over subsets, `n ≤ 14`.
pub fn circumference(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 14);
    let a = adj(g);
    let mut best = 0;
    for s in 0..n {
        // paths starting at s through vertices > s
        let m = n - s;
        let mut dp = vec![0u16; 1 << m]; // dp[mask] = set of end vertices (relative)
        dp[1] = 1;
        for mask in 1usize..(1 << m) {
            if mask & 1 == 0 || dp[mask] == 0 {
                continue;
            }
            for e in 0..m {
                if dp[mask] >> e & 1 == 0 {
                    continue;
                }
                let len = mask.count_ones() as usize;
                if len >= 3 && a[s + e][s] {
                    best = best.max(len);
                }
                for x in 0..m {
                    if mask >> x & 1 == 0 && a[s + e][s + x] {
                        dp[mask | 1 << x] |= 1 << x;
                    }
                }
            }
        }
    }
    best
}

/// Most vertices on a path, by subset DP, `n ≤ 14`.
pub fn longest_path(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 14);
    if n == 0 {
        return 0;
    }
    let a = adj(g);
    let mut dp = vec![0u16; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1usize..(1 << n) {
        if dp[mask] == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        for e in 0..n {
            if dp[mask] >> e & 1 == 1 {
                for x in 0..n {
                    if mask >> x & 1 == 0 && a[e][x] {
                        dp[mask | 1 << x] |= 1 << x;
                    }
                }
            }
        }
    }
    best
}

/// Independence number by subset enumeration.
pub fn alpha(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 20);
    let a = adj(g);
    (0usize..1 << n)
        .filter(|&m| (0..n).all(|u| m >> u & 1 == 0 || (u + 1..n).all(|v| m >> v & 1 == 0 || !a[u][v])))
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `(χ, σ)` from every partition of the vertices into independent sets
/// (restricted growth strings), `n ≤ 9`.
pub fn chi_sigma(g: &Graph) -> (usize, usize) {
    let n = g.order();
    assert!(n <= 9);
    if n == 0 {
        return (0, 0);
    }
    let a = adj(g);
    let mut best = (usize::MAX, usize::MAX);
    let mut col = vec![0usize; n];
    fn go(v: usize, used: usize, col: &mut Vec<usize>, a: &[Vec<bool>], best: &mut (usize, usize)) {
        let n = col.len();
        if v == n {
            let mut sizes = vec![0; used];
            col.iter().for_each(|&c| sizes[c] += 1);
            let cand = (used, *sizes.iter().min().unwrap());
            if cand < *best {
                *best = cand;
            }
            return;
        }
        for c in 0..=used {
            if (0..v).all(|u| !a[u][v] || col[u] != c) {
                col[v] = c;
                go(v + 1, used.max(c + 1), col, a, best);
            }
        }
    }
    go(0, 0, &mut col, &a, &mut best);
    best
}

/// Bandwidth over all orderings, `n ≤ 8`.
pub fn bandwidth(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 8);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut perm, 0, &mut |p| {
        let w = edges.iter().map(|&(u, v)| p[u].abs_diff(p[v])).max().unwrap_or(0);
        best = best.min(w);
    });
    if n == 0 {
        0
    } else {
        best
    }
}

pub fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Pattern ⊆ host by trying every injective map.
pub fn contains(host: &Graph, pattern: &Graph) -> bool {
    let (n, m) = (host.order(), pattern.order());
    if m > n {
        return false;
    }
    let h = adj(host);
    let edges: Vec<(usize, usize)> = pattern.edges().collect();
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; n];
    fn go(i: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, h: &[Vec<bool>], edges: &[(usize, usize)]) -> bool {
        if i == map.len() {
            return true;
        }
        for x in 0..h.len() {
            if used[x] {
                continue;
            }
            map[i] = x;
            let ok = edges
                .iter()
                .filter(|&&(u, v)| u.max(v) == i)
                .all(|&(u, v)| h[map[u]][map[v]]);
            if ok {
                used[x] = true;
                if go(i + 1, map, used, h, edges) {
                    return true;
                }
                used[x] = false;
            }
        }
        map[i] = usize::MAX;
        false
    }
    go(0, &mut map, &mut used, &h, &edges)
}

/// Whether `K_n → (F, G)`, by enumerating all `2^(n choose 2)` colorings.
pub fn arrows(n: usize, f: &Graph, g: &Graph) -> bool {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    assert!(pairs.len() <= 21);
    (0u32..1 << pairs.len()).all(|mask| {
        let red = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
            .unwrap();
        let col = TwoColoring::from_red(red);
        contains(col.red(), f) || contains(&col.blue_graph(), g)
    })
}

/// Is `seq` a cycle of `g` (distinct vertices, consecutive pairs adjacent)?
pub fn is_cycle(g: &Graph, seq: &[usize]) -> bool {
    let mut s = seq.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == seq.len() && seq.len() >= 3 && (0..seq.len()).all(|i| g.has_edge(seq[i], seq[(i + 1) % seq.len()]))
}
