use alloc::vec::Vec;

const WINDOW: usize = 40;

/// Wynn's epsilon algorithm over a running sequence of partial sums.
///
/// Each [`push`](EpsilonTable::push) rebuilds the table over the most recent
/// partial sums and returns the even-column entry whose last change is
/// smallest, together with an error estimate.
#[derive(Debug, Clone, Default)]
pub struct EpsilonTable {
    sums: Vec<f64>,
    previous: Option<f64>,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of partial sums seen so far.
    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Adds a partial sum; returns `(estimate, error)` once three sums exist.
    pub fn push(&mut self, s: f64) -> Option<(f64, f64)> {
        if self.sums.len() == WINDOW {
            self.sums.remove(0);
        }
        self.sums.push(s);
        if self.sums.len() < 3 {
            return None;
        }
        let (estimate, change) = self.best();
        let drift = self.previous.map_or(change, |p| (estimate - p).abs());
        self.previous = Some(estimate);
        Some((estimate, change.max(drift)))
    }

    fn best(&self) -> (f64, f64) {
        let n = self.sums.len();
        let scale = self.sums.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut prev: Vec<f64> = alloc::vec![0.0; n + 1];
        let mut cur: Vec<f64> = self.sums.clone();
        let mut best = (cur[n - 1], (cur[n - 1] - cur[n - 2]).abs());
        let mut column = 0usize;
        while cur.len() >= 2 {
            let mut next = Vec::with_capacity(cur.len() - 1);
            let mut broke = false;
            for jj in 0..cur.len() - 1 {
                let diff = cur[jj + 1] - cur[jj];
                if diff.abs() <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
                    broke = true;
                    break;
                }
                next.push(prev[jj + 1] + 1.0 / diff);
            }
            if broke {
                if column % 2 == 0 {
                    // the column has converged to working precision
                    let last = cur[cur.len() - 1];
                    if (last - best.0).abs() <= best.1 + 1e-15 * scale {
                        best = (last, 1e-15 * scale);
                    }
                }
                break;
            }
            column += 1;
            prev = cur;
            cur = next;
            if column % 2 == 0 && cur.len() >= 2 {
                let m = cur.len();
                let change = (cur[m - 1] - cur[m - 2]).abs();
                if change.is_finite() && change <= best.1 {
                    best = (cur[m - 1], change);
                }
            }
        }
        best
    }
}
