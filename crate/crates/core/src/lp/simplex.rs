//! Exact phase-one simplex for `E·x = f` with per-variable lower bounds.
//!
//! The solver answers feasibility only. A feasible answer carries a witness
//! `x`; an infeasible answer carries a Farkas vector `y` over the equality
//! rows with
//!
//! * `yᵀE_j = 0` for every free variable,
//! * `yᵀE_j ≤ 0` for every bounded variable, and
//! * `yᵀf > Σ_j l_j · yᵀE_j` over the bounded variables.
//!
//! Any feasible `x` would give `yᵀf = Σ_j yᵀE_j x_j ≤ Σ_j yᵀE_j l_j`, so the
//! three conditions prove emptiness by arithmetic alone. Both kinds of answer
//! are re-checked before they are returned.

use crate::error::{Error, Result};
use crate::lp::RationalMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Free,
    AtLeast(Rational),
}

impl Bound {
    pub fn nonneg() -> Self {
        Bound::AtLeast(Rational::zero())
    }

    pub fn at_least(v: i64) -> Self {
        Bound::AtLeast(Rational::from_integer(v))
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityProblem {
    pub eq_matrix: RationalMatrix,
    pub eq_rhs: Vec<Rational>,
    pub lower_bounds: Vec<Bound>,
}

impl FeasibilityProblem {
    pub fn new(eq_matrix: RationalMatrix, eq_rhs: Vec<Rational>, lower_bounds: Vec<Bound>) -> Result<Self> {
        let p = FeasibilityProblem {
            eq_matrix,
            eq_rhs,
            lower_bounds,
        };
        p.check_dims()?;
        Ok(p)
    }

    fn check_dims(&self) -> Result<()> {
        if self.eq_rhs.len() != self.eq_matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} equality rows but {} right-hand sides",
                self.eq_matrix.rows(),
                self.eq_rhs.len()
            )));
        }
        if self.lower_bounds.len() != self.eq_matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} variables but {} bounds",
                self.eq_matrix.cols(),
                self.lower_bounds.len()
            )));
        }
        Ok(())
    }

    pub fn verify_witness(&self, x: &[Rational]) -> bool {
        if x.len() != self.eq_matrix.cols() {
            return false;
        }
        let bounds_ok = x.iter().zip(&self.lower_bounds).all(|(v, b)| match b {
            Bound::Free => true,
            Bound::AtLeast(l) => v >= l,
        });
        bounds_ok && self.eq_matrix.mul_vec(x) == self.eq_rhs
    }

    pub fn verify_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.eq_matrix.rows() {
            return false;
        }
        let ye = self.eq_matrix.left_mul_vec(y);
        let mut bound_side = Rational::zero();
        for (v, b) in ye.iter().zip(&self.lower_bounds) {
            match b {
                Bound::Free if !v.is_zero() => return false,
                Bound::Free => {}
                Bound::AtLeast(_) if v.is_positive() => return false,
                Bound::AtLeast(l) => bound_side += &(l * v),
            }
        }
        let yf: Rational = y.iter().zip(&self.eq_rhs).map(|(a, b)| a * b).sum();
        yf > bound_side
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible { witness: Vec<Rational> },
    Infeasible { certificate: Vec<Rational> },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Feasible { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Infeasible { certificate } => Some(certificate),
            _ => None,
        }
    }
}

/// Where a transformed column comes from.
#[derive(Clone, Copy)]
enum Origin {
    /// `x_j = l_j + x'`.
    Shifted(usize),
    /// `x_j = x⁺ - x⁻`; this column is `x⁺` (`true`) or `x⁻`.
    Split(usize, bool),
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    reduced: Vec<Rational>,
    basis: Vec<usize>,
    structural: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let nz: Vec<usize> = self.rows[r]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for &j in &nz {
                row[j] = &row[j] - &(&f * &prow[j]);
            }
            if !prhs.is_zero() {
                self.rhs[i] = &self.rhs[i] - &(&f * &prhs);
            }
        }
        if !self.reduced[c].is_zero() {
            let f = self.reduced[c].clone();
            for &j in &nz {
                self.reduced[j] = &self.reduced[j] - &(&f * &prow[j]);
            }
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, lowest-index leaving
    /// variable among ratio ties.
    fn run(&mut self) {
        loop {
            let Some(c) = (0..self.structural).find(|&j| self.reduced[j].is_negative()) else {
                return;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.expect("phase-one objective is bounded below");
            self.pivot(r, c);
        }
    }
}

/// Decides `{x : E·x = f, x_j ≥ l_j}` exactly.
pub fn solve_feasibility(p: &FeasibilityProblem) -> Result<FeasibilityResult> {
    p.check_dims()?;
    let m = p.eq_matrix.rows();
    let nvars = p.eq_matrix.cols();

    let mut origins = Vec::new();
    for (j, b) in p.lower_bounds.iter().enumerate() {
        match b {
            Bound::AtLeast(_) => origins.push(Origin::Shifted(j)),
            Bound::Free => {
                origins.push(Origin::Split(j, true));
                origins.push(Origin::Split(j, false));
            }
        }
    }
    let structural = origins.len();

    // f' = f - Σ l_j E_j
    let mut rhs = p.eq_rhs.clone();
    for (j, b) in p.lower_bounds.iter().enumerate() {
        if let Bound::AtLeast(l) = b {
            if l.is_zero() {
                continue;
            }
            for (i, r) in rhs.iter_mut().enumerate() {
                let e = p.eq_matrix.get(i, j);
                if !e.is_zero() {
                    *r = &*r - &(l * e);
                }
            }
        }
    }

    let mut signs = vec![1i64; m];
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = rhs[i].is_negative();
        if neg {
            signs[i] = -1;
            rhs[i] = -&rhs[i];
        }
        let mut row = vec![Rational::zero(); structural + m];
        for (c, o) in origins.iter().enumerate() {
            let (j, flip) = match *o {
                Origin::Shifted(j) => (j, false),
                Origin::Split(j, pos) => (j, !pos),
            };
            let e = p.eq_matrix.get(i, j);
            if e.is_zero() {
                continue;
            }
            row[c] = if flip != neg { -e } else { e.clone() };
        }
        row[structural + i] = Rational::one();
        rows.push(row);
    }

    let mut reduced = vec![Rational::zero(); structural + m];
    for row in &rows {
        for (d, v) in reduced.iter_mut().zip(&row[..structural]) {
            if !v.is_zero() {
                *d = &*d - v;
            }
        }
    }

    let mut t = Tableau {
        rows,
        rhs,
        reduced,
        basis: (structural..structural + m).collect(),
        structural,
    };
    t.run();

    let infeasibility: Rational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&b, _)| b >= structural)
        .map(|(_, v)| v.clone())
        .sum();

    if infeasibility.is_positive() {
        let certificate: Vec<Rational> = (0..m)
            .map(|i| {
                let y = &Rational::one() - &t.reduced[structural + i];
                if signs[i] < 0 {
                    -y
                } else {
                    y
                }
            })
            .collect();
        if !p.verify_certificate(&certificate) {
            return Err(Error::Internal("Farkas certificate failed re-verification".into()));
        }
        return Ok(FeasibilityResult::Infeasible { certificate });
    }

    let mut values = vec![Rational::zero(); structural];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < structural {
            values[b] = t.rhs[i].clone();
        }
    }
    let mut witness = vec![Rational::zero(); nvars];
    for (c, o) in origins.iter().enumerate() {
        match *o {
            Origin::Shifted(j) => {
                let Bound::AtLeast(l) = &p.lower_bounds[j] else { unreachable!() };
                witness[j] = l + &values[c];
            }
            Origin::Split(j, true) => witness[j] += &values[c],
            Origin::Split(j, false) => witness[j] -= &values[c],
        }
    }
    if !p.verify_witness(&witness) {
        return Err(Error::Internal("feasibility witness failed re-verification".into()));
    }
    Ok(FeasibilityResult::Feasible { witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn trivial_zero_system() {
        let p = FeasibilityProblem::new(RationalMatrix::zeros(2, 3), vec![q(0), q(0)], vec![Bound::nonneg(); 3]).unwrap();
        let r = solve_feasibility(&p).unwrap();
        assert_eq!(r.witness().unwrap(), &[q(0), q(0), q(0)]);
    }

    #[test]
    fn simple_infeasible() {
        // x + y = -1, x, y >= 0
        let p = FeasibilityProblem::new(
            RationalMatrix::from_i64_rows(&[vec![1, 1]]),
            vec![q(-1)],
            vec![Bound::nonneg(); 2],
        )
        .unwrap();
        let r = solve_feasibility(&p).unwrap();
        let y = r.certificate().unwrap();
        assert!(p.verify_certificate(y));
        assert!(!p.verify_certificate(&[q(1)]));
    }

    #[test]
    fn free_variables_and_shifted_bounds() {
        // x - y = 3, y >= 2, x free  -> feasible
        let p = FeasibilityProblem::new(
            RationalMatrix::from_i64_rows(&[vec![1, -1]]),
            vec![q(3)],
            vec![Bound::Free, Bound::at_least(2)],
        )
        .unwrap();
        let r = solve_feasibility(&p).unwrap();
        assert!(p.verify_witness(r.witness().unwrap()));

        // x = y, x + y = 0 with x >= 1 -> infeasible, y free
        let p = FeasibilityProblem::new(
            RationalMatrix::from_i64_rows(&[vec![1, -1], vec![1, 1]]),
            vec![q(0), q(0)],
            vec![Bound::at_least(1), Bound::Free],
        )
        .unwrap();
        assert!(!solve_feasibility(&p).unwrap().is_feasible());
    }

    #[test]
    fn dimension_mismatch() {
        let r = FeasibilityProblem::new(RationalMatrix::zeros(2, 2), vec![q(0)], vec![Bound::Free; 2]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn degenerate_cycling_instance_terminates() {
        // Beale's classic cycling example, rewritten as an equality system with
        // slacks; the origin is degenerate and textbook pivoting cycles on it.
        let e = RationalMatrix::from_rows(
            7,
            vec![
                vec![Rational::new(1, 4), q(-60), Rational::new(-1, 25), q(9), q(1), q(0), q(0)],
                vec![Rational::new(1, 2), q(-90), Rational::new(-1, 50), q(3), q(0), q(1), q(0)],
                vec![q(0), q(0), q(1), q(0), q(0), q(0), q(1)],
                // force positive progress along the cycling direction
                vec![Rational::new(3, 4), q(-150), Rational::new(1, 50), q(-6), q(0), q(0), q(0)],
            ],
        )
        .unwrap();
        let p = FeasibilityProblem::new(e, vec![q(0), q(0), q(1), Rational::new(1, 20)], vec![Bound::nonneg(); 7]).unwrap();
        let r = solve_feasibility(&p).unwrap();
        match &r {
            FeasibilityResult::Feasible { witness } => assert!(p.verify_witness(witness)),
            FeasibilityResult::Infeasible { certificate } => assert!(p.verify_certificate(certificate)),
        }
    }

    proptest::proptest! {
        #[test]
        fn answers_always_reverify(
            data in proptest::collection::vec(-3i64..4, 12),
            rhs in proptest::collection::vec(-3i64..4, 3),
            bounded in proptest::collection::vec(proptest::bool::ANY, 4),
        ) {
            let rows: Vec<Vec<i64>> = data.chunks(4).map(|c| c.to_vec()).collect();
            let e = RationalMatrix::from_i64_rows(&rows);
            let bounds = bounded.iter().map(|&b| if b { Bound::at_least(1) } else { Bound::Free }).collect();
            let p = FeasibilityProblem::new(e, rhs.into_iter().map(q).collect(), bounds).unwrap();
            match solve_feasibility(&p).unwrap() {
                FeasibilityResult::Feasible { witness } => proptest::prop_assert!(p.verify_witness(&witness)),
                FeasibilityResult::Infeasible { certificate } => proptest::prop_assert!(p.verify_certificate(&certificate)),
            }
        }
    }
}
