//! Sequence acceleration.

use alloc::vec::Vec;
use num_complex::Complex64;

/// Wynn epsilon algorithm on a sequence of partial sums; returns the deepest
/// trustworthy even-column extrapolation.
///
/// Used to resum slowly convergent (or on-boundary divergent) power series
/// partial sums; odd columns are auxiliary reciprocal-difference rows and are
/// never returned.  Once a consecutive difference falls to relative machine
/// noise the neighboring entries agree to full precision and deeper columns
/// would divide pure rounding noise, so the table stops there.
pub fn wynn_epsilon(seq: &[Complex64]) -> Complex64 {
    assert!(!seq.is_empty(), "wynn_epsilon needs at least one partial sum");
    let zero = Complex64::new(0.0, 0.0);
    let mut prev: Vec<Complex64> = alloc::vec![zero; seq.len() + 1];
    let mut curr: Vec<Complex64> = seq.to_vec();
    let mut best = *seq.last().expect("nonempty");
    let mut col = 1usize;
    while curr.len() >= 2 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for i in 0..curr.len() - 1 {
            let d = curr[i + 1] - curr[i];
            if d.norm() <= 1e-15 * (curr[i].norm() + curr[i + 1].norm()) {
                return best;
            }
            next.push(prev[i + 1] + d.finv());
        }
        prev = curr;
        curr = next;
        col += 1;
        if col % 2 == 1 {
            if let Some(&last) = curr.last() {
                best = last;
            }
        }
    }
    best
}
