//! Ordered data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature, `jobs == 0` uses the global rayon pool,
//! `jobs == 1` runs sequentially and any other value runs on a dedicated
//! pool of that many threads. Without the feature every call is sequential.
//! Results always come back in input order.

#[cfg(feature = "parallel")]
mod imp {
    use std::collections::HashMap;
    use std::sync::{Arc, Mutex, OnceLock};

    use rayon::prelude::*;

    fn pool(threads: usize) -> Arc<rayon::ThreadPool> {
        static POOLS: OnceLock<Mutex<HashMap<usize, Arc<rayon::ThreadPool>>>> = OnceLock::new();
        let mut pools = POOLS.get_or_init(Default::default).lock().expect("pool registry");
        pools
            .entry(threads)
            .or_insert_with(|| {
                Arc::new(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(threads)
                        .build()
                        .expect("thread pool"),
                )
            })
            .clone()
    }

    pub fn map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match jobs {
            1 => items.iter().map(f).collect(),
            0 => items.par_iter().map(f).collect(),
            n => pool(n).install(|| items.par_iter().map(f).collect()),
        }
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map<T, R, F>(_jobs: usize, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        items.iter().map(f).collect()
    }
}

pub use imp::map;

/// Like [`map`], stopping at the first error in input order.
pub fn try_map<T, R, E, F>(jobs: usize, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(jobs, items, f).into_iter().collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_for_every_job_count() {
        let items: Vec<u64> = (0..500).collect();
        let expected: Vec<u64> = items.iter().map(|x| x * x).collect();
        for jobs in [0, 1, 2, 3] {
            assert_eq!(map(jobs, &items, |x| x * x), expected);
        }
        let err: Result<Vec<u64>, u64> =
            try_map(2, &items, |&x| if x % 100 == 37 { Err(x) } else { Ok(x) });
        assert_eq!(err, Err(37));
    }
}
