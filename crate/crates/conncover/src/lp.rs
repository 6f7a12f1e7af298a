//! Linear-program representation and solver.
//!
//! Used for the multicommodity flow relaxation, the hitting-set relaxation,
//! and fractional Steiner value reporting. The representation is a plain
//! minimization LP with sparse constraint rows and per-variable bounds; the
//! solve is delegated to a deterministic sparse simplex backend and every
//! optimal solution is re-validated against the documented tolerances.

use thiserror::Error;

/// Feasibility tolerance: every constraint of an optimal solution must hold
/// within this slack.
pub const FEASIBILITY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn symbol(&self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// One constraint row: sparse coefficients, relation, right-hand side.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A minimization LP over `num_vars` variables with box bounds.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub values: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("coefficient for variable {var} in row {row} is not finite")]
    NonFiniteCoefficient { row: usize, var: usize },
    #[error("variable index {var} out of range in row {row}")]
    VarOutOfRange { row: usize, var: usize },
    #[error("bounds for variable {var} are inverted or NaN")]
    BadBounds { var: usize },
    #[error("solver failure: {0}")]
    Backend(String),
    #[error("optimal solution violates feasibility tolerance on row {row} by {violation}")]
    ToleranceViolated { row: usize, violation: f64 },
}

impl LinearProgram {
    /// New LP with zero objective and default bounds [0, +inf).
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            objective: vec![0.0; num_vars],
            rows: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_objective(&mut self, var: usize, coeff: f64) {
        self.objective[var] = coeff;
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) {
        self.bounds[var] = (lo, hi);
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.rows.push(Row { coeffs, relation, rhs });
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        for (var, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(LpError::BadBounds { var });
            }
        }
        for (r, row) in self.rows.iter().enumerate() {
            for &(var, c) in &row.coeffs {
                if var >= n {
                    return Err(LpError::VarOutOfRange { row: r, var });
                }
                if !c.is_finite() {
                    return Err(LpError::NonFiniteCoefficient { row: r, var });
                }
            }
        }
        Ok(())
    }

    /// Signed violation of row `r` at point `x` (positive means violated).
    fn row_violation(&self, r: usize, x: &[f64]) -> f64 {
        let row = &self.rows[r];
        let lhs: f64 = row.coeffs.iter().map(|&(v, c)| c * x[v]).sum();
        match row.relation {
            Relation::Le => lhs - row.rhs,
            Relation::Ge => row.rhs - lhs,
            Relation::Eq => (lhs - row.rhs).abs(),
        }
    }

    /// Solve to optimality. Infeasible and unbounded are ordinary statuses,
    /// never errors; `Err` is reserved for malformed input or backend
    /// failures.
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        self.validate()?;
        if self.rows.is_empty() {
            return self.solve_unconstrained();
        }

        let mut problem = microlp::Problem::new(microlp::OptimizationDirection::Minimize);
        let vars: Vec<microlp::Variable> = (0..self.num_vars())
            .map(|i| problem.add_var(self.objective[i], self.bounds[i]))
            .collect();
        for row in &self.rows {
            let expr: Vec<(microlp::Variable, f64)> =
                row.coeffs.iter().map(|&(v, c)| (vars[v], c)).collect();
            let op = match row.relation {
                Relation::Le => microlp::ComparisonOp::Le,
                Relation::Ge => microlp::ComparisonOp::Ge,
                Relation::Eq => microlp::ComparisonOp::Eq,
            };
            problem.add_constraint(expr, op, row.rhs);
        }
        match problem.solve() {
            Ok(sol) => {
                let values: Vec<f64> = vars.iter().map(|&v| *sol.var_value(v)).collect();
                for r in 0..self.rows.len() {
                    let viol = self.row_violation(r, &values);
                    if viol > FEASIBILITY_TOL {
                        return Err(LpError::ToleranceViolated { row: r, violation: viol });
                    }
                }
                Ok(LpSolution {
                    status: LpStatus::Optimal,
                    objective: sol.objective(),
                    values,
                })
            }
            Err(microlp::Error::Infeasible) => Ok(LpSolution {
                status: LpStatus::Infeasible,
                objective: f64::NAN,
                values: Vec::new(),
            }),
            Err(microlp::Error::Unbounded) => Ok(LpSolution {
                status: LpStatus::Unbounded,
                objective: f64::NEG_INFINITY,
                values: Vec::new(),
            }),
            Err(e) => Err(LpError::Backend(e.to_string())),
        }
    }

    /// With no rows the optimum is attained independently per variable.
    fn solve_unconstrained(&self) -> Result<LpSolution, LpError> {
        let mut values = Vec::with_capacity(self.num_vars());
        let mut objective = 0.0;
        for i in 0..self.num_vars() {
            let (lo, hi) = self.bounds[i];
            let c = self.objective[i];
            let x = if c > 0.0 {
                if lo.is_infinite() {
                    return Ok(LpSolution {
                        status: LpStatus::Unbounded,
                        objective: f64::NEG_INFINITY,
                        values: Vec::new(),
                    });
                }
                lo
            } else if c < 0.0 {
                if hi.is_infinite() {
                    return Ok(LpSolution {
                        status: LpStatus::Unbounded,
                        objective: f64::NEG_INFINITY,
                        values: Vec::new(),
                    });
                }
                hi
            } else if lo.is_finite() {
                lo
            } else if hi.is_finite() {
                hi
            } else {
                0.0
            };
            objective += c * x;
            values.push(x);
        }
        Ok(LpSolution { status: LpStatus::Optimal, objective, values })
    }

    /// Plain-text dump (objective row, bounds, constraint rows) for
    /// external cross-checking.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "minimize");
        for c in &self.objective {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            let _ = writeln!(s, "var x{i} in [{lo}, {hi}]");
        }
        for row in &self.rows {
            let terms: Vec<String> =
                row.coeffs.iter().map(|&(v, c)| format!("{c}*x{v}")).collect();
            let _ = writeln!(s, "{} {} {}", terms.join(" + "), row.relation.symbol(), row.rhs);
        }
        s
    }
}
