use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::Weight;

/// Finite Cartan type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn from_char(c: char) -> Result<Self> {
        Ok(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            other => {
                return Err(Error::InvalidCartanType {
                    kind: other,
                    rank: 0,
                    reason: "unknown type letter",
                })
            }
        })
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Root datum of a finite irreducible root system.
///
/// Weights are stored in fundamental-weight coordinates, so the pairing of a
/// weight with the simple coroot `α_i∨` is its `i`-th coordinate. The Cartan
/// matrix is `cartan[i][j] = ⟨α_i, α_j∨⟩`; row `i` is therefore the simple
/// root `α_i` written in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Symmetrized form `(α_i, α_j)` on simple roots, integer-scaled.
    gram: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lexicographically.
    positive_simple_coords: Vec<Vec<i64>>,
}

pub const MAX_RANK: usize = 8;

impl RootSystem {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidCartanType {
            kind: cartan_type.letter(),
            rank,
            reason,
        };
        if rank == 0 {
            return Err(invalid("rank must be positive"));
        }
        if rank > MAX_RANK {
            return Err(invalid("rank above 8 is not supported"));
        }
        let gram = match cartan_type {
            CartanType::A => chain_gram(rank, 2),
            CartanType::B => {
                if rank < 2 {
                    return Err(invalid("type B needs rank >= 2"));
                }
                // Long roots have square length 2, the last (short) root 1.
                let mut g = chain_gram(rank, 2);
                g[rank - 1][rank - 1] = 1;
                g
            }
            CartanType::C => {
                if rank < 2 {
                    return Err(invalid("type C needs rank >= 2"));
                }
                let mut g = chain_gram(rank, 2);
                g[rank - 1][rank - 1] = 4;
                g[rank - 1][rank - 2] = -2;
                g[rank - 2][rank - 1] = -2;
                g
            }
            CartanType::D => {
                if rank < 4 {
                    return Err(invalid("type D needs rank >= 4"));
                }
                let mut g = chain_gram(rank - 1, 2);
                for row in g.iter_mut() {
                    row.push(0);
                }
                g.push(vec![0; rank]);
                g[rank - 1][rank - 1] = 2;
                // α_{n-1} and α_n both attach to α_{n-2}.
                g[rank - 2][rank - 3] = -1;
                g[rank - 3][rank - 2] = -1;
                g[rank - 1][rank - 3] = -1;
                g[rank - 3][rank - 1] = -1;
                g[rank - 2][rank - 1] = 0;
                g[rank - 1][rank - 2] = 0;
                g
            }
            CartanType::E => {
                if !(6..=8).contains(&rank) {
                    return Err(invalid("type E needs rank 6, 7 or 8"));
                }
                // Bourbaki labelling: 1-3-4-5-...-n chain with 2 attached to 4.
                let mut g = vec![vec![0; rank]; rank];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
                let mut link = |a: usize, b: usize| {
                    g[a - 1][b - 1] = -1;
                    g[b - 1][a - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                link(3, 4);
                for k in 4..rank {
                    link(k, k + 1);
                }
                g
            }
            CartanType::F => {
                if rank != 4 {
                    return Err(invalid("type F needs rank 4"));
                }
                vec![
                    vec![4, -2, 0, 0],
                    vec![-2, 4, -2, 0],
                    vec![0, -2, 2, -1],
                    vec![0, 0, -1, 2],
                ]
            }
            CartanType::G => {
                if rank != 2 {
                    return Err(invalid("type G needs rank 2"));
                }
                vec![vec![2, -3], vec![-3, 6]]
            }
        };
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let positive_simple_coords = reflection_closure(&cartan);
        Ok(Self {
            cartan_type,
            rank,
            cartan,
            gram,
            positive_simple_coords,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan[i])
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank).map(|i| self.simple_root(i)).collect()
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_simple_coords
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots(&self) -> Vec<Weight> {
        self.positive_simple_coords
            .iter()
            .map(|c| Weight::from_ints(&self.simple_to_fundamental(c)))
            .collect()
    }

    pub fn simple_to_fundamental(&self, c: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|i| c[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// `ρ`, the sum of the fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank])
    }

    pub fn check_rank(&self, got: usize) -> Result<()> {
        if got != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got,
            });
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }
}

fn chain_gram(rank: usize, diag: i64) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; rank]; rank];
    for i in 0..rank {
        g[i][i] = diag;
        if i + 1 < rank {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    g
}

/// Positive roots as the closure of the simple roots under simple reflections
/// (each `s_i` permutes the positive roots other than `α_i`).
fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..rank {
        let mut e = vec![0; rank];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(c) = queue.pop_front() {
        for j in 0..rank {
            let pairing: i64 = (0..rank).map(|i| c[i] * cartan[i][j]).sum();
            let mut next = c.clone();
            next[j] -= pairing;
            if next.iter().all(|&x| x >= 0)
                && next.iter().any(|&x| x > 0)
                && seen.insert(next.clone())
            {
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(t: char, r: usize) -> usize {
        RootSystem::new(CartanType::from_char(t).unwrap(), r)
            .unwrap()
            .positive_roots()
            .len()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(count('A', 1), 1);
        assert_eq!(count('A', 2), 3);
        assert_eq!(count('A', 3), 6);
        assert_eq!(count('B', 2), 4);
        assert_eq!(count('B', 3), 9);
        assert_eq!(count('C', 3), 9);
        assert_eq!(count('D', 4), 12);
        assert_eq!(count('G', 2), 6);
        assert_eq!(count('F', 4), 24);
        assert_eq!(count('E', 6), 36);
        assert_eq!(count('E', 7), 63);
        assert_eq!(count('E', 8), 120);
    }

    #[test]
    fn a2_roots_in_fundamental_coordinates() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let roots = rs.positive_roots();
        assert_eq!(
            roots,
            vec![
                Weight::from_ints(&[2, -1]),
                Weight::from_ints(&[-1, 2]),
                Weight::from_ints(&[1, 1])
            ]
        );
        assert_eq!(rs.cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn cartan_matrix_shape() {
        for (t, r) in [
            ('A', 4),
            ('B', 3),
            ('C', 4),
            ('D', 5),
            ('E', 6),
            ('F', 4),
            ('G', 2),
        ] {
            let rs = RootSystem::new(CartanType::from_char(t).unwrap(), r).unwrap();
            let c = rs.cartan_matrix();
            for i in 0..r {
                assert_eq!(c[i][i], 2);
                for j in 0..r {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::E, 5).is_err());
        assert!(RootSystem::new(CartanType::G, 3).is_err());
        assert!(RootSystem::new(CartanType::A, 9).is_err());
        assert!(RootSystem::new(CartanType::A, 0).is_err());
        assert!(CartanType::from_char('Q').is_err());
    }
}
