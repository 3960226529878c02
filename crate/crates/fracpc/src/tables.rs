//! Reference maximum-error tables for the benchmark harness: every
//! (method, α, Δt) cell the harness reruns, together with the published
//! reference value it is compared against.

use crate::error::Result;
use crate::model::{DerivativeKind, SchemeId, SolverConfig, UniformGrid};
use crate::problems::{builtin, max_abs_error, ProblemParams};
use crate::schemes::solve;

/// One benchmark cell: a method on a grid, with its reference error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCell {
    pub table: u8,
    /// Row label; `ppc-frac` is the power-law corrector run at α = 1.
    pub method: &'static str,
    pub scheme: SchemeId,
    pub kind: DerivativeKind,
    pub alpha: f64,
    /// Δt = 1/dt_denom.
    pub dt_denom: u32,
    /// Published maximum absolute error for this cell.
    pub paper_value: f64,
}

impl TableCell {
    pub fn dt(&self) -> f64 {
        1.0 / self.dt_denom as f64
    }

    /// Problem id exercised by the table.
    pub fn problem_id(&self) -> &'static str {
        match self.table {
            1 => "exp-linear",
            2 => "cos-riccati",
            3 => "power-rhs",
            _ => "poly-manufactured",
        }
    }

    /// Integer time span of the reference experiment.
    pub fn span(&self) -> u32 {
        match self.table {
            2 => 30,
            3 => 3,
            _ => 1,
        }
    }
}

/// Result of rerunning one cell.
#[derive(Debug, Clone, Copy)]
pub struct CellResult {
    pub cell: TableCell,
    pub max_abs_error: f64,
    /// max_abs_error / paper_value.
    pub ratio: f64,
}

const T1_DENOMS: [u32; 4] = [16, 64, 200, 1024];
const T2_DENOMS: [u32; 4] = [16, 64, 200, 700];

struct ClassicalRow {
    method: &'static str,
    scheme: SchemeId,
    kind: DerivativeKind,
    values: [f64; 4],
}

fn classical_rows(table: u8) -> Vec<ClassicalRow> {
    use DerivativeKind::{Caputo, Classical};
    use SchemeId::{ClassicalAs, ProposedPc, TwoStepAb};
    match table {
        1 => vec![
            ClassicalRow {
                method: "ppc-frac",
                scheme: ProposedPc,
                kind: Caputo,
                values: [2.6019e-3, 7.8442e-5, 2.9104e-6, 2.2690e-8],
            },
            ClassicalRow {
                method: "ppc",
                scheme: ProposedPc,
                kind: Classical,
                values: [4.7391e-3, 9.6052e-5, 3.3246e-6, 2.5281e-8],
            },
            ClassicalRow {
                method: "as",
                scheme: ClassicalAs,
                kind: Classical,
                values: [2.0657e-2, 3.9611e-4, 1.3570e-5, 1.0281e-7],
            },
            ClassicalRow {
                method: "ab2",
                scheme: TwoStepAb,
                kind: Classical,
                values: [2.0503e-1, 1.4503e-2, 1.5223e-3, 5.8597e-5],
            },
        ],
        2 => vec![
            ClassicalRow {
                method: "ppc-frac",
                scheme: ProposedPc,
                kind: Caputo,
                values: [8.3152e-3, 2.2772e-5, 6.5114e-7, 2.6151e-8],
            },
            ClassicalRow {
                method: "ppc",
                scheme: ProposedPc,
                kind: Classical,
                values: [8.9834e-3, 1.0474e-4, 3.1725e-6, 7.1930e-8],
            },
            ClassicalRow {
                method: "as",
                scheme: ClassicalAs,
                kind: Classical,
                values: [2.2712e-2, 3.4369e-4, 1.1236e-5, 2.6193e-7],
            },
            ClassicalRow {
                method: "ab2",
                scheme: TwoStepAb,
                kind: Classical,
                values: [2.1387e-2, 1.3589e-3, 1.3984e-4, 1.1436e-5],
            },
        ],
        _ => Vec::new(),
    }
}

/// (α, Δt denominator, reference ppc error, reference ias error).
fn fractional_cells(table: u8) -> Vec<(f64, u32, f64, f64)> {
    match table {
        3 => vec![
            (0.25, 100, 6.8792e-5, 3.9492e-4),
            (0.25, 800, 6.2948e-6, 3.6137e-5),
            (0.56, 100, 2.8000e-5, 8.4439e-5),
            (0.56, 400, 3.6996e-6, 1.1157e-5),
            (0.87, 100, 7.6132e-6, 1.9429e-5),
            (0.87, 200, 4.4095e-7, 1.1253e-6),
        ],
        4 => vec![
            (0.4, 64, 7.6806e-4, 5.7442e-3),
            (0.4, 512, 6.4455e-5, 7.0486e-4),
            (0.65, 64, 3.1549e-3, 8.8970e-3),
            (0.65, 512, 4.5513e-4, 1.1129e-3),
            (0.9, 64, 6.4490e-3, 1.2365e-2),
            (0.9, 512, 8.2593e-4, 1.5685e-3),
        ],
        _ => Vec::new(),
    }
}

/// Every cell of the requested table, in the fixed emission order.
pub fn table_cells(table: u8) -> Result<Vec<TableCell>> {
    if !(1..=4).contains(&table) {
        return Err(crate::error::Error::Usage(format!(
            "table must be 1..=4, got {table}"
        )));
    }
    let mut out = Vec::new();
    if table <= 2 {
        for row in classical_rows(table) {
            let denoms = if table == 1 { T1_DENOMS } else { T2_DENOMS };
            for (d, v) in denoms.iter().zip(row.values.iter()) {
                out.push(TableCell {
                    table,
                    method: row.method,
                    scheme: row.scheme,
                    kind: row.kind,
                    alpha: 1.0,
                    dt_denom: *d,
                    paper_value: *v,
                });
            }
        }
    } else {
        for (alpha, denom, ppc, ias) in fractional_cells(table) {
            out.push(TableCell {
                table,
                method: "ppc",
                scheme: SchemeId::ProposedPc,
                kind: DerivativeKind::Caputo,
                alpha,
                dt_denom: denom,
                paper_value: ppc,
            });
            out.push(TableCell {
                table,
                method: "ias",
                scheme: SchemeId::ImprovedAs,
                kind: DerivativeKind::Caputo,
                alpha,
                dt_denom: denom,
                paper_value: ias,
            });
        }
    }
    Ok(out)
}

/// Rerun one cell: solve the table's problem on the cell's grid and measure
/// the maximum absolute error against the exact solution.
pub fn run_cell(cell: &TableCell) -> Result<CellResult> {
    let problem = builtin(cell.problem_id())?;
    let params = ProblemParams::default();
    let ivp = problem.ivp(&params, cell.kind, cell.alpha)?;
    let grid = UniformGrid::with_steps(cell.dt(), (cell.span() * cell.dt_denom) as usize)?;
    let config = SolverConfig::new(cell.scheme);
    let traj = solve(&ivp, &config, &grid)?;
    let alpha = cell.alpha;
    let err = max_abs_error(&traj, |t| problem.exact(t, alpha, &params).unwrap());
    Ok(CellResult {
        cell: *cell,
        max_abs_error: err,
        ratio: err / cell.paper_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_enumeration() {
        assert_eq!(table_cells(1).unwrap().len(), 16);
        assert_eq!(table_cells(2).unwrap().len(), 16);
        assert_eq!(table_cells(3).unwrap().len(), 12);
        assert_eq!(table_cells(4).unwrap().len(), 12);
        assert!(table_cells(5).is_err());
        assert!(table_cells(0).is_err());
    }

    #[test]
    fn cells_know_their_grids() {
        let cells = table_cells(2).unwrap();
        assert!(cells.iter().all(|c| c.problem_id() == "cos-riccati"));
        let c = &cells[3];
        assert_eq!(c.dt_denom, 700);
        assert_eq!(c.span(), 30);
    }
}
