//! Parallel benchmark runner: independent table cells run on a bounded
//! worker pool, and the results are reassembled in cell order so output is
//! deterministic regardless of scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use fracpc::tables::{run_cell, table_cells, CellResult};

use crate::CliError;

fn worker_count(n_cells: usize) -> Result<usize, CliError> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cap = match std::env::var("FRACPC_THREADS") {
        Err(_) => available,
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "FRACPC_THREADS must be a positive integer, got '{raw}'"
                ))
            })?,
    };
    Ok(cap.min(n_cells).max(1))
}

/// Rerun every cell of a table. Cells are claimed off a shared counter and
/// results are sorted back into enumeration order before returning.
pub fn run_table(table: u8) -> Result<Vec<CellResult>, CliError> {
    let cells = table_cells(table).map_err(|e| CliError::Usage(e.to_string()))?;
    let workers = worker_count(cells.len())?;
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<CellResult, fracpc::Error>)>();

    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let cells = &cells;
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let _ = tx.send((i, run_cell(&cells[i])));
            });
        }
    });
    drop(tx);

    let mut slots: Vec<Option<CellResult>> = vec![None; cells.len()];
    for (i, result) in rx {
        slots[i] = Some(result.map_err(CliError::from)?);
    }
    Ok(slots.into_iter().map(Option::unwrap).collect())
}
