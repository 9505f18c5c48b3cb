//! Built-in test complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{SimplicialComplex, VertexId};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub maximal: Vec<Vec<VertexId>>,
    /// Betti numbers over GF(2), where known in advance.
    pub betti: Option<Vec<usize>>,
}

impl CorpusEntry {
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.maximal.iter().cloned()).expect("corpus entries are valid")
    }
}

pub fn full_simplex(n: usize) -> CorpusEntry {
    let mut betti = vec![0; n + 1];
    betti[0] = 1;
    CorpusEntry {
        name: format!("simplex-{n}"),
        maximal: vec![(1..=n as VertexId + 1).collect()],
        betti: Some(betti),
    }
}

/// Boundary of the `n`-simplex, a sphere of dimension `n − 1`.
pub fn simplex_boundary(n: usize) -> CorpusEntry {
    assert!(n >= 1);
    let all: Vec<VertexId> = (1..=n as VertexId + 1).collect();
    let maximal = (0..all.len())
        .map(|skip| {
            all.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| *v)
                .collect()
        })
        .collect();
    let mut betti = vec![0; n];
    if n == 1 {
        betti[0] = 2;
    } else {
        betti[0] = 1;
        betti[n - 1] = 1;
    }
    CorpusEntry {
        name: format!("sphere-{}", n - 1),
        maximal,
        betti: Some(betti),
    }
}

pub fn hollow_triangle() -> CorpusEntry {
    CorpusEntry {
        name: "hollow-triangle".into(),
        maximal: vec![vec![1, 2], vec![2, 3], vec![1, 3]],
        betti: Some(vec![1, 1]),
    }
}

/// Six-vertex projective plane.
pub fn projective_plane() -> CorpusEntry {
    CorpusEntry {
        name: "rp2-6".into(),
        maximal: vec![
            vec![1, 2, 3],
            vec![1, 3, 4],
            vec![1, 4, 5],
            vec![1, 5, 6],
            vec![1, 2, 6],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![2, 4, 5],
            vec![3, 5, 6],
            vec![2, 4, 6],
        ],
        betti: Some(vec![1, 1, 1]),
    }
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> CorpusEntry {
    let maximal = (0..7u32)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    CorpusEntry {
        name: "torus-7".into(),
        maximal,
        betti: Some(vec![1, 2, 1]),
    }
}

/// A random 2-complex on `vertices` vertices: each triangle kept with probability 1/4, each
/// edge with probability 1/5.
pub fn random_2_complex(vertices: VertexId, seed: u64) -> CorpusEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maximal = Vec::new();
    for a in 0..vertices {
        maximal.push(vec![a]);
        for b in a + 1..vertices {
            if rng.gen_bool(0.2) {
                maximal.push(vec![a, b]);
            }
            for c in b + 1..vertices {
                if rng.gen_bool(0.25) {
                    maximal.push(vec![a, b, c]);
                }
            }
        }
    }
    CorpusEntry {
        name: format!("random-2-v{vertices}-s{seed}"),
        maximal,
        betti: None,
    }
}

/// Full simplices up to dimension 4, their boundaries, the hollow triangle, the projective
/// plane, the torus and three random 2-complexes.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = (0..=4).map(full_simplex).collect();
    out.extend([1, 3, 4].into_iter().map(simplex_boundary));
    out.push(hollow_triangle());
    out.push(projective_plane());
    out.push(torus());
    out.extend((1..=3).map(|s| random_2_complex(6, s)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::betti_gf2;

    #[test]
    fn known_betti_numbers_match_oracle() {
        for e in standard_corpus() {
            let c = e.complex();
            if let Some(b) = &e.betti {
                assert_eq!(&betti_gf2(&c), b, "{}", e.name);
            }
        }
    }

    #[test]
    fn surfaces_have_expected_shape() {
        let t = torus().complex();
        assert_eq!(t.f_vector(), vec![7, 21, 14]);
        let p = projective_plane().complex();
        assert_eq!(p.f_vector(), vec![6, 15, 10]);
    }

    #[test]
    fn random_complexes_reproducible() {
        assert_eq!(random_2_complex(6, 9).maximal, random_2_complex(6, 9).maximal);
    }
}
