//! Parallel versions of the exhaustive scans, split by the input applied first.

use pia2::ainf::{stasheff_partial, Report, TransferredCategory, Violation};
use pia2::transfer::{scan_from, Backend, OperationTable, TableMeta, TransferError};
use rayon::prelude::*;

/// Caps the global pool at `PIA2_THREADS` threads when that is set to a
/// positive integer; otherwise rayon uses every core. Only the first call
/// has an effect.
pub fn init_threads() {
    let n = std::env::var("PIA2_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0);
    if let Some(n) = n {
        // fails only if the pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Same result as `compute_operation_table`, one task per first input.
pub fn par_table<B>(b: &B, symbols: &[B::Sym], meta: TableMeta, cap: usize) -> Result<OperationTable<B::Sym>, TransferError>
where
    B: Backend + Sync,
    B::Sym: Send + Sync,
{
    let arity = meta.arity_max;
    let found: Vec<_> = symbols.par_iter().map(|f| scan_from(b, symbols, f, arity, cap)).collect::<Result<_, _>>()?;
    let mut table = OperationTable::new(meta);
    for (k, v) in found.into_iter().flatten() {
        table.insert(k, v);
    }
    Ok(table)
}

/// The relation check on every identity-free tuple of arity `3..=d_max`
/// from `symbols`, each worker with its own memo.
pub fn par_stasheff<B>(b: &B, symbols: &[B::Sym], d_max: usize, degree_max: i64) -> Result<Report, pia2::ainf::AInfError>
where
    B: Backend + Sync,
    B::Sym: Send + Sync,
{
    let parts: Vec<(usize, Vec<Violation>)> = symbols
        .par_iter()
        .map_init(
            || TransferredCategory::new("model", b, symbols.to_vec()),
            |cat, f| stasheff_partial(cat, std::slice::from_ref(f), d_max, degree_max),
        )
        .collect::<Result<_, _>>()?;
    let examined = parts.iter().map(|p| p.0).sum();
    let bad = parts.into_iter().flat_map(|p| p.1).collect();
    Ok(Report::new("stasheff", examined, bad))
}
