//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper here is deterministic by construction: work is split into
//! slots that depend only on the input length, never on the thread count,
//! and results are written to pre-assigned positions. A run with
//! `threads = 1` is bit-identical to a run with any other thread count.
//!
//! With the `parallel` feature disabled the same entry points compile to
//! plain sequential loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `body` inside a thread pool of the given size. `None` keeps the
/// ambient pool. With the `parallel` feature off, `body` runs inline.
pub fn with_threads<T: Send>(threads: Option<usize>, body: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        match threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool")
                .install(body),
            None => body(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        body()
    }
}

/// Maps `f` over `0..n`, collecting results in index order.
pub fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Parallel iteration over mutable chunks with the chunk index.
/// Chunk boundaries depend only on `chunk` and the slice length.
pub fn for_each_chunk_mut<T: Send>(
    data: &mut [T],
    chunk: usize,
    f: impl Fn(usize, &mut [T]) + Sync + Send,
) {
    #[cfg(feature = "parallel")]
    {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
}

/// Sums `f(i)` for `i in 0..n` with a fixed reduction shape: fixed-size
/// blocks are summed sequentially, block results are combined pairwise.
/// The result does not depend on the thread count.
pub fn sum_blocked<T, F>(n: usize, block: usize, f: F) -> T
where
    T: Send + Copy + std::ops::Add<Output = T> + Default,
    F: Fn(usize) -> T + Sync + Send,
{
    let block = block.max(1);
    let nb = n.div_ceil(block);
    let partials = map_indexed(nb, |b| {
        let lo = b * block;
        let hi = (lo + block).min(n);
        let mut acc = T::default();
        for i in lo..hi {
            acc = acc + f(i);
        }
        acc
    });
    crate::num::pairwise(&partials)
}
