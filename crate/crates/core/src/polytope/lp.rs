//! Exact two-phase simplex with Bland's rule.

use num::{One, Signed, Zero};

use crate::rational::{QVec, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: QVec, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn point(&self) -> Option<&QVec> {
        match self {
            Self::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

/// Linear program `max c·x` subject to `a_le x ≤ b_le`, `a_eq x = b_eq`,
/// with `x ≥ 0` when `nonneg` is set and `x` free otherwise.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub nvars: usize,
    pub objective: QVec,
    pub a_le: Vec<QVec>,
    pub b_le: QVec,
    pub a_eq: Vec<QVec>,
    pub b_eq: QVec,
    pub nonneg: bool,
}

impl LinearProgram {
    pub fn feasibility(nvars: usize) -> Self {
        Self {
            nvars,
            objective: vec![Rational::zero(); nvars],
            ..Default::default()
        }
    }

    pub fn le(mut self, row: QVec, rhs: Rational) -> Self {
        self.a_le.push(row);
        self.b_le.push(rhs);
        self
    }

    pub fn eq(mut self, row: QVec, rhs: Rational) -> Self {
        self.a_eq.push(row);
        self.b_eq.push(rhs);
        self
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.nvars;
        // Standard-form columns: free variables split as u - v.
        let split = if self.nonneg { 1 } else { 2 };
        let m_le = self.a_le.len();
        let m_eq = self.a_eq.len();
        let m = m_le + m_eq;
        let nstruct = n * split;
        let ncols = nstruct + m_le;
        let mut rows: Vec<QVec> = Vec::with_capacity(m);
        let mut rhs: QVec = Vec::with_capacity(m);
        let expand = |row: &QVec| -> QVec {
            let mut out = Vec::with_capacity(ncols);
            out.extend(row.iter().cloned());
            if split == 2 {
                out.extend(row.iter().map(|x| -x));
            }
            out
        };
        for (k, (row, b)) in self.a_le.iter().zip(&self.b_le).enumerate() {
            let mut r = expand(row);
            r.extend((0..m_le).map(|j| {
                if j == k {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            rows.push(r);
            rhs.push(b.clone());
        }
        for (row, b) in self.a_eq.iter().zip(&self.b_eq) {
            let mut r = expand(row);
            r.extend(std::iter::repeat_n(Rational::zero(), m_le));
            rows.push(r);
            rhs.push(b.clone());
        }
        let mut c = expand(&self.objective);
        c.extend(std::iter::repeat_n(Rational::zero(), m_le));

        match standard_form_max(&rows, &rhs, &c, ncols) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Unbounded => LpOutcome::Unbounded,
            StdOutcome::Optimal(y, value) => {
                let x = (0..n)
                    .map(|i| {
                        if split == 2 {
                            &y[i] - &y[n + i]
                        } else {
                            y[i].clone()
                        }
                    })
                    .collect();
                LpOutcome::Optimal { x, value }
            }
        }
    }
}

enum StdOutcome {
    Optimal(QVec, Rational),
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Constraint rows, each of length `ncols + 1` (last entry is the rhs).
    rows: Vec<QVec>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · y` over the columns in `allowed`. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            // Reduced cost of column j: cost_j - Σ_i cost_{basis_i} row_i[j].
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut red = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !cost[b].is_zero() && !row[j].is_zero() {
                        red -= &cost[b] * &row[j];
                    }
                }
                red.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[self.ncols] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

fn standard_form_max(rows: &[QVec], rhs: &[Rational], c: &[Rational], ncols: usize) -> StdOutcome {
    let m = rows.len();
    let total = ncols + m;
    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        ncols: total,
    };
    for (i, (row, b)) in rows.iter().zip(rhs).enumerate() {
        let flip = b.is_negative();
        let mut r: QVec = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        r.extend((0..m).map(|j| {
            if j == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -b } else { b.clone() });
        t.rows.push(r);
        t.basis.push(ncols + i);
    }
    // Phase 1: maximize -Σ artificials.
    let mut phase1 = vec![Rational::zero(); total];
    for x in phase1.iter_mut().skip(ncols) {
        *x = -Rational::one();
    }
    let all = vec![true; total];
    t.optimize(&phase1, &all);
    let infeas: Rational = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &b)| b >= ncols)
        .map(|(row, _)| row[total].clone())
        .sum();
    if infeas.is_positive() {
        return StdOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= ncols {
            if let Some(c) = (0..ncols).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(Rational::zero(), m));
    let mut allowed = vec![true; total];
    for a in allowed.iter_mut().skip(ncols) {
        *a = false;
    }
    if !t.optimize(&cost, &allowed) {
        return StdOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); ncols];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < ncols {
            y[b] = row[total].clone();
        }
    }
    let value = y.iter().zip(c).map(|(a, b)| a * b).sum();
    StdOutcome::Optimal(y, value)
}

/// Exact convex-combination coefficients expressing `target` in terms of `points`.
pub fn convex_combination(points: &[QVec], target: &[Rational]) -> Option<QVec> {
    let k = points.len();
    if k == 0 {
        return None;
    }
    let mut lp = LinearProgram::feasibility(k);
    lp.nonneg = true;
    for d in 0..target.len() {
        lp = lp.eq(
            points.iter().map(|p| p[d].clone()).collect(),
            target[d].clone(),
        );
    }
    lp = lp.eq(vec![Rational::one(); k], Rational::one());
    lp.solve().point().cloned()
}
