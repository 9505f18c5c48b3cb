//! Independent checks used by the test suites and `verify`: brute-force chain counting in the
//! face poset and Betti numbers over GF(2).

use crate::complex::SimplicialComplex;

/// Number of chains of length `k+1` in the face poset, for each `k`. Only uses pairwise
/// containment tests, nothing from the subdivision module.
pub fn chain_counts(c: &SimplicialComplex) -> Vec<usize> {
    let s = c.simplices();
    let n = s.len();
    let mut ending_at: Vec<u64> = vec![1; n];
    let mut totals = Vec::new();
    while ending_at.iter().any(|&x| x > 0) {
        totals.push(ending_at.iter().sum::<u64>() as usize);
        let next: Vec<u64> = (0..n)
            .map(|t| {
                (0..n)
                    .filter(|&f| s[f].dim() < s[t].dim() && s[f].is_face_of(&s[t]))
                    .map(|f| ending_at[f])
                    .sum()
            })
            .collect();
        ending_at = next;
    }
    totals
}

/// Betti numbers over the two-element field, `b_0 … b_dim`.
pub fn betti_gf2(c: &SimplicialComplex) -> Vec<usize> {
    let Some(dim) = c.dim() else {
        return Vec::new();
    };
    let counts = c.f_vector();
    // rank[k] = rank of ∂_k : C_k → C_{k−1}; rank[0] = 0, rank[dim+1] = 0
    let mut rank = vec![0usize; dim + 2];
    for (k, r) in rank.iter_mut().enumerate().take(dim + 1).skip(1) {
        let offset = c.ids_of_dim(k - 1).next().unwrap().0;
        let words = counts[k - 1].div_ceil(64);
        let columns: Vec<Vec<u64>> = c
            .ids_of_dim(k)
            .map(|id| {
                let mut col = vec![0u64; words];
                for f in c.facet_ids(id) {
                    let row = f.0 - offset;
                    col[row / 64] ^= 1 << (row % 64);
                }
                col
            })
            .collect();
        *r = gf2_rank(columns);
    }
    (0..=dim)
        .map(|k| counts[k] - rank[k] - rank[k + 1])
        .collect()
}

/// Rank of a set of GF(2) vectors packed into words.
pub fn gf2_rank(mut vectors: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = vectors.first().map_or(0, Vec::len);
    for bit in 0..words * 64 {
        let (w, m) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (rank..vectors.len()).find(|&i| vectors[i][w] & m != 0) else {
            continue;
        };
        vectors.swap(rank, p);
        let pivot = vectors[rank].clone();
        for v in vectors.iter_mut().skip(rank + 1) {
            if v[w] & m != 0 {
                for (a, b) in v.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}
