use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::rational::{q, Rational};

/// Integer matrix acting on fundamental-weight coordinates (column vectors).
pub type IntMatrix = Vec<Vec<i64>>;

/// Hard cap on Weyl group enumeration.
pub const WEYL_ENUMERATION_CAP: usize = 1_000_000;

/// Weyl group element, identified by its integer matrix; carries a reduced word.
#[derive(Debug, Clone)]
pub struct WeylElement {
    reduced_word: Vec<usize>,
    matrix: IntMatrix,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reduced_word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .reduced_word
            .iter()
            .map(|i| format!("s{}", i + 1))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

fn identity(rank: usize) -> IntMatrix {
    (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Matrix of `s_i`: `λ ↦ λ - ⟨λ, α_i∨⟩ α_i`.
pub fn simple_reflection_matrix(rs: &RootSystem, i: usize) -> IntMatrix {
    let c = rs.cartan_matrix();
    let mut m = identity(rs.rank());
    for (j, row) in m.iter_mut().enumerate() {
        row[i] -= c[i][j];
    }
    m
}

fn apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        Self {
            reduced_word: Vec::new(),
            matrix: identity(rank),
        }
    }

    /// Element of an arbitrary (possibly non-reduced) word; the stored word is reduced.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut m = identity(rs.rank());
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::InvalidReflection {
                    index: i + 1,
                    rank: rs.rank(),
                });
            }
            m = matmul(&m, &simple_reflection_matrix(rs, i));
        }
        Ok(Self::from_matrix(rs, m))
    }

    /// Recovers a reduced word by peeling left descents: `ℓ(s_i w) < ℓ(w)`
    /// exactly when `⟨wρ, α_i∨⟩ < 0`.
    pub fn from_matrix(rs: &RootSystem, matrix: IntMatrix) -> Self {
        let rho = vec![1; rs.rank()];
        let mut current = matrix.clone();
        let mut word = Vec::new();
        loop {
            let image = apply(&current, &rho);
            let Some(i) = image.iter().position(|&x| x < 0) else {
                break;
            };
            word.push(i);
            current = matmul(&simple_reflection_matrix(rs, i), &current);
        }
        Self {
            reduced_word: word,
            matrix,
        }
    }

    pub fn reduced_word(&self) -> &[usize] {
        &self.reduced_word
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn length(&self) -> usize {
        self.reduced_word.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self) -> bool {
        self.reduced_word.is_empty()
    }

    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        Self::from_matrix(rs, matmul(&self.matrix, &other.matrix))
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.reduced_word.iter().rev().copied().collect();
        let mut m = identity(rs.rank());
        for &i in &word {
            m = matmul(&m, &simple_reflection_matrix(rs, i));
        }
        Self {
            reduced_word: word,
            matrix: m,
        }
    }

    /// The one-line permutation of a type-A element: `w(ε_j) = ε_{perm[j]}`.
    pub fn permutation(&self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        // w = s_{i1} ... s_{ik}; apply rightmost first.
        for &i in self.reduced_word.iter().rev() {
            for p in perm.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        perm
    }

    /// Type-A element with the given one-line permutation.
    pub fn from_permutation(rs: &RootSystem, perm: &[usize]) -> Result<Self> {
        let n = rs.rank() + 1;
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        // Bubble sort `perm` to the identity by right multiplications,
        // recording transpositions.
        let mut p = perm.to_vec();
        let mut word = Vec::new();
        while let Some(j) = (0..n - 1).find(|&j| p[j] > p[j + 1]) {
            // p ∘ s_j swaps positions j and j+1.
            p.swap(j, j + 1);
            word.push(j);
        }
        word.reverse();
        Self::from_word(rs, &word)
    }
}

/// `w · λ`.
pub fn weyl_act(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Result<Weight> {
    rs.check_rank(lambda.rank())?;
    rs.check_rank(w.rank())?;
    Ok(Weight(
        w.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(lambda.coords())
                    .map(|(a, x)| q(*a) * x)
                    .sum::<Rational>()
            })
            .collect(),
    ))
}

/// All elements of `W` in breadth-first (length) order, identity first.
pub fn weyl_elements(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::new(rs)?.elements)
}

/// Enumerated Weyl group with a matrix index.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let gens: Vec<IntMatrix> = (0..rs.rank())
            .map(|i| simple_reflection_matrix(rs, i))
            .collect();
        let e = WeylElement::identity(rs.rank());
        let mut index = HashMap::new();
        index.insert(e.matrix.clone(), 0);
        let mut elements = vec![e];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = matmul(&elements[k].matrix, g);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= WEYL_ENUMERATION_CAP {
                    return Err(Error::SizeCap {
                        what: "Weyl group",
                        cap: WEYL_ENUMERATION_CAP,
                    });
                }
                let mut word = elements[k].reduced_word.clone();
                word.push(i);
                index.insert(m.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement {
                    reduced_word: word,
                    matrix: m,
                });
            }
        }
        Ok(Self { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).copied()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("group is nonempty")
    }
}

/// Bruhat interval `[e, w]` via the subword property: the elements obtained
/// as products of subwords of a fixed reduced word of `w`.
///
/// New elements are discovered only as `u·s_i` with `ℓ(u s_i) = ℓ(u) + 1`, so
/// every recorded word is reduced.
pub fn bruhat_interval(rs: &RootSystem, w: &WeylElement) -> Result<Vec<WeylElement>> {
    rs.check_rank(w.rank())?;
    let e = WeylElement::identity(rs.rank());
    let mut seen: HashSet<IntMatrix> = HashSet::from([e.matrix.clone()]);
    let mut out = vec![e];
    for &i in w.reduced_word() {
        let s = simple_reflection_matrix(rs, i);
        let mut fresh = Vec::new();
        for u in &out {
            let m = matmul(&u.matrix, &s);
            if seen.insert(m.clone()) {
                let mut word = u.reduced_word.clone();
                word.push(i);
                fresh.push(WeylElement {
                    reduced_word: word,
                    matrix: m,
                });
            }
        }
        out.extend(fresh);
    }
    out.sort_by(|a, b| {
        a.length()
            .cmp(&b.length())
            .then_with(|| a.reduced_word.cmp(&b.reduced_word))
    });
    Ok(out)
}

pub fn bruhat_leq(rs: &RootSystem, v: &WeylElement, w: &WeylElement) -> Result<bool> {
    rs.check_rank(v.rank())?;
    if v.length() > w.length() {
        return Ok(false);
    }
    Ok(bruhat_interval(rs, w)?.iter().any(|u| u == v))
}
