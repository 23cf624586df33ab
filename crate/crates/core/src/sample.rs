//! Uniform fixed-size sampling without replacement.

use rand::Rng;

use crate::error::{Error, Result};

/// Draws a uniformly random `s`-subset of `0..n` in `O(n)` time using
/// reservoir sampling (Algorithm R). The result is in reservoir order, not
/// sorted.
pub fn uniform_sample<R: Rng + ?Sized>(n: usize, s: usize, rng: &mut R) -> Result<Vec<usize>> {
    if s > n {
        return Err(Error::InvalidParameter(format!("sample size {s} exceeds universe size {n}")));
    }
    Ok(reservoir(0..n, s, rng))
}

/// Uniform `s`-subset of `items` (`s` is clamped to `items.len()`).
pub fn sample_from<R: Rng + ?Sized>(items: &[usize], s: usize, rng: &mut R) -> Vec<usize> {
    reservoir(items.iter().copied(), s.min(items.len()), rng)
}

fn reservoir<I, R>(iter: I, s: usize, rng: &mut R) -> Vec<usize>
where
    I: Iterator<Item = usize>,
    R: Rng + ?Sized,
{
    let mut out = Vec::with_capacity(s);
    for (i, x) in iter.enumerate() {
        if i < s {
            out.push(x);
        } else {
            let j = rng.random_range(0..=i);
            if j < s {
                out[j] = x;
            }
        }
    }
    out
}
