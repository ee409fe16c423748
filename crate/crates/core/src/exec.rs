#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How shard-level work is scheduled.
///
/// Both variants split work into the same shards and return shard results in
/// shard order, so every reduction built on top is independent of the choice.
/// Without the `parallel` feature `Parallel` runs sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Evaluates `f` on every shard index in `0..n`, returning results in index order.
    pub fn map_shards<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Maps fixed-size chunks of `items`; chunk boundaries do not depend on the thread count.
    pub fn map_chunks<I, T, F>(self, items: &[I], chunk: usize, f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&[I]) -> T + Sync + Send,
    {
        let chunk = chunk.max(1);
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_chunks(chunk).map(f).collect(),
            _ => items.chunks(chunk).map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shards_come_back_in_order() {
        let seq = Execution::Sequential.map_shards(1000, |i| i * i);
        let par = Execution::Parallel.map_shards(1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn chunk_partials_match() {
        let xs: Vec<f64> = (0..10_001).map(|i| (i as f64).sqrt()).collect();
        let a: Vec<f64> = Execution::Sequential.map_chunks(&xs, 64, |c| c.iter().sum());
        let b: Vec<f64> = Execution::Parallel.map_chunks(&xs, 64, |c| c.iter().sum());
        assert_eq!(a, b);
    }
}
