//! Splitting enumeration over `b` across scoped threads. Results are merged
//! in range order, so they do not depend on the worker count.

use std::ops::Range;
use std::thread;

use walshcode_core::code::CodeInstance;
use walshcode_core::enumerators::{tally_range, BruteForce, Tally};

/// `range` split into at most `workers` contiguous, nonempty ranges.
pub fn split(range: Range<u64>, workers: usize) -> Vec<Range<u64>> {
    let len = range.end.saturating_sub(range.start);
    let parts = (workers.max(1) as u64).min(len.max(1));
    let (chunk, extra) = (len / parts, len % parts);
    let mut start = range.start;
    (0..parts)
        .map(|i| {
            let end = start + chunk + u64::from(i < extra);
            let r = start..end;
            start = end;
            r
        })
        .collect()
}

/// `f` applied to every `b` in `range`, in order.
pub fn map_ordered<T, F>(range: Range<u64>, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let parts = split(range, workers);
    if parts.len() <= 1 {
        return parts.into_iter().flatten().map(&f).collect();
    }
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = parts
            .into_iter()
            .map(|r| s.spawn(move || r.map(f).collect::<Vec<T>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn tally(inst: &CodeInstance, workers: usize) -> Tally {
    let parts = split(0..inst.order(), workers);
    let partials: Vec<Tally> = thread::scope(|s| {
        let handles: Vec<_> = parts.into_iter().map(|r| s.spawn(move || tally_range(inst, r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    partials.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.merge(t);
        acc
    })
}

pub fn bruteforce(inst: &CodeInstance, workers: usize) -> BruteForce {
    BruteForce::from_tally(inst, tally(inst, workers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use walshcode_core::enumerators;
    use walshcode_core::{BooleanFunction, Field};

    #[test]
    fn split_covers_range() {
        for workers in [1, 2, 3, 8, 100] {
            let parts = split(5..42, workers);
            assert_eq!(parts.first().unwrap().start, 5);
            assert_eq!(parts.last().unwrap().end, 42);
            assert!(parts.windows(2).all(|w| w[0].end == w[1].start));
            assert!(parts.iter().all(|r| !r.is_empty()));
        }
        assert_eq!(split(0..0, 4), vec![0..0]);
    }

    #[test]
    fn tally_is_worker_independent() {
        let field = Arc::new(Field::new(8, None).unwrap());
        let f = BooleanFunction::monomial(field, 51, 1).unwrap();
        let inst = CodeInstance::new(f, 4).unwrap();
        let serial = enumerators::bruteforce(&inst);
        for workers in [1, 2, 3, 8] {
            assert_eq!(bruteforce(&inst, workers), serial);
        }
        assert_eq!(map_ordered(0..10, 3, |b| b * b), (0..10).map(|b| b * b).collect::<Vec<_>>());
    }
}
