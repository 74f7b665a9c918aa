//! Deterministic fan-out of independent grid evaluations across threads.
//!
//! Grid cells are pure functions of their index, so the only thing
//! parallelism may never change is *where* each result lands. Every worker
//! owns one contiguous slice of the output and writes results by index;
//! the assembled vector — and with it every serialized artifact — is
//! byte-identical for any worker count.

use crate::error::{CliError, Result};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "PHONON_THERMO_THREADS";

/// Worker count: the environment override if present, otherwise the
/// machine's available parallelism (1 if that cannot be determined).
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => parse_thread_count(&raw),
        Err(std::env::VarError::NotPresent) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer"
        ))),
    }
}

fn parse_thread_count(raw: &str) -> Result<usize> {
    match raw.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(CliError::Config(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))),
    }
}

/// Evaluates `f` at every index in `0..n` using up to `threads` workers and
/// returns the results in index order.
pub fn map_indexed<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let mut out: Vec<Option<T>> = Vec::with_capacity(n);
    out.resize_with(n, || None);
    let workers = threads.clamp(1, n.max(1));
    if workers == 1 {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = Some(f(i));
        }
    } else {
        let chunk = n.div_ceil(workers);
        std::thread::scope(|scope| {
            for (w, slots) in out.chunks_mut(chunk).enumerate() {
                let f = &f;
                let offset = w * chunk;
                scope.spawn(move || {
                    for (i, slot) in slots.iter_mut().enumerate() {
                        *slot = Some(f(offset + i));
                    }
                });
            }
        });
    }
    out.into_iter()
        .map(|slot| slot.expect("every index is covered by exactly one worker"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_string_parsing_accepts_only_positive_integers() {
        assert_eq!(parse_thread_count("1").unwrap(), 1);
        assert_eq!(parse_thread_count(" 8 ").unwrap(), 8);
        assert!(parse_thread_count("0").is_err());
        assert!(parse_thread_count("-2").is_err());
        assert!(parse_thread_count("two").is_err());
        assert!(parse_thread_count("1.5").is_err());
        assert!(parse_thread_count("").is_err());
        assert_eq!(parse_thread_count("0").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn parallel_map_matches_serial_map_in_order() {
        let serial: Vec<u64> = (0..1000).map(|i| (i as u64).wrapping_mul(2654435761)).collect();
        for threads in [1, 2, 3, 8, 64] {
            let parallel = map_indexed(1000, threads, |i| (i as u64).wrapping_mul(2654435761));
            assert_eq!(parallel, serial, "threads = {threads}");
        }
    }

    #[test]
    fn degenerate_sizes_are_handled() {
        assert!(map_indexed(0, 4, |i| i).is_empty());
        assert_eq!(map_indexed(1, 4, |i| i), vec![0]);
        assert_eq!(map_indexed(3, 16, |i| i), vec![0, 1, 2]);
    }
}
