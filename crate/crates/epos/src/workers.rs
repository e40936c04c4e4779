use epos_core::{Executor, Sequential};
use rayon::prelude::*;

use crate::CliError;

/// Either the sequential executor or a dedicated rayon pool.
///
/// Both preserve input order, so the choice never changes output bytes.
pub enum Workers {
    Sequential,
    Pool(rayon::ThreadPool),
}

impl Workers {
    /// `None` means one thread per available core; `Some(1)` runs inline.
    pub fn new(count: Option<usize>) -> Result<Self, CliError> {
        match count {
            Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
            Some(1) => Ok(Workers::Sequential),
            _ => {
                let mut builder = rayon::ThreadPoolBuilder::new();
                if let Some(n) = count {
                    builder = builder.num_threads(n);
                }
                builder
                    .build()
                    .map(Workers::Pool)
                    .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
            }
        }
    }

    pub fn threads(&self) -> usize {
        match self {
            Workers::Sequential => 1,
            Workers::Pool(p) => p.current_num_threads(),
        }
    }
}

impl Executor for Workers {
    fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Workers::Sequential => Sequential.map(items, f),
            Workers::Pool(pool) => pool.install(|| items.par_iter().map(f).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let pool = Workers::new(Some(4)).unwrap();
        assert_eq!(pool.threads(), 4);
        assert_eq!(pool.map(&items, |x| x * x), Sequential.map(&items, |x| x * x));
        assert!(Workers::new(Some(0)).is_err());
        assert_eq!(Workers::new(Some(1)).unwrap().threads(), 1);
    }
}
