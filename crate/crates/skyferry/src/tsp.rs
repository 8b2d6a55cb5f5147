//! Tour construction over the site centers: exact dynamic programming
//! for small instances, nearest-neighbour plus 2-opt for larger ones.
//! The start point is a fixed depot in the cycle.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;

/// Site counts up to this bound are solved exactly; the subset table is
/// ~N * 2^N entries.
pub const EXACT_LIMIT: usize = 15;

/// Length ties within this band are broken lexicographically.
const TIE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TspError {
    #[error("{n} sites exceed the exact solver's limit of {max}; use solve_heuristic")]
    TooManySites { n: usize, max: usize },
}

/// A closed tour: depot -> sites in `order` -> depot.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    /// Permutation of `0..sites.len()`.
    pub order: Vec<usize>,
    /// Total cycle length (km).
    pub length: f64,
}

/// Cycle length of `start -> sites[order[0]] -> ... -> start`.
pub fn tour_length(start: Point, sites: &[Point], order: &[usize]) -> f64 {
    let mut len = 0.0;
    let mut prev = start;
    for &idx in order {
        len += prev.dist(sites[idx]);
        prev = sites[idx];
    }
    len + prev.dist(start)
}

/// Minimum-length closed tour by dynamic programming over site subsets.
/// Among equal-length optima the lexicographically smallest order wins.
pub fn solve_exact(start: Point, sites: &[Point]) -> Result<Tour, TspError> {
    let n = sites.len();
    assert!(n >= 1, "need at least one site");
    if n > EXACT_LIMIT {
        return Err(TspError::TooManySites {
            n,
            max: EXACT_LIMIT,
        });
    }

    let d0: Vec<f64> = sites.iter().map(|s| start.dist(*s)).collect();
    let dist: Vec<Vec<f64>> = sites
        .iter()
        .map(|a| sites.iter().map(|b| a.dist(*b)).collect())
        .collect();

    // best[mask][j]: shortest path depot -> (visit exactly mask) -> j,
    // j in mask.
    let full = (1usize << n) - 1;
    let mut best = vec![f64::INFINITY; (full + 1) * n];
    for j in 0..n {
        best[(1 << j) * n + j] = d0[j];
    }
    for mask in 1..=full {
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let cur = best[mask * n + j];
            if !cur.is_finite() {
                continue;
            }
            let rest = full & !mask;
            let mut next_bits = rest;
            while next_bits != 0 {
                let k = next_bits.trailing_zeros() as usize;
                next_bits &= next_bits - 1;
                let cand = cur + dist[j][k];
                let slot = &mut best[(mask | (1 << k)) * n + k];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }

    let optimum = (0..n)
        .map(|j| best[full * n + j] + d0[j])
        .fold(f64::INFINITY, f64::min);

    // Cost of finishing from `j` through the sites in `rem` and home.
    // By symmetry this equals the best depot -> rem -> (edge to j) path.
    let completion = |j: usize, rem: usize| -> f64 {
        if rem == 0 {
            return d0[j];
        }
        let mut bits = rem;
        let mut acc = f64::INFINITY;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc = acc.min(best[rem * n + k] + dist[k][j]);
        }
        acc
    };

    // Rebuild the lexicographically smallest optimal order greedily:
    // at each position take the smallest site index that still permits
    // an optimal completion.
    let mut order = Vec::with_capacity(n);
    let mut rem = full;
    let mut prefix = 0.0;
    let mut prev: Option<usize> = None;
    for _ in 0..n {
        let mut bits = rem;
        let mut chosen = None;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let step = match prev {
                None => d0[j],
                Some(p) => dist[p][j],
            };
            if prefix + step + completion(j, rem & !(1 << j)) <= optimum + TIE_EPS {
                chosen = Some((j, step));
                break;
            }
        }
        let (j, step) = chosen.expect("optimal completion must exist");
        order.push(j);
        prefix += step;
        prev = Some(j);
        rem &= !(1 << j);
    }

    let length = tour_length(start, sites, &order);
    Ok(Tour { order, length })
}

/// Nearest-neighbour construction plus 2-opt descent, with a few seeded
/// random restarts. Deterministic for a given seed.
pub fn solve_heuristic(start: Point, sites: &[Point], seed: u64) -> Tour {
    let n = sites.len();
    assert!(n >= 1, "need at least one site");

    let mut best_order = nearest_neighbor_order(start, sites);
    two_opt(start, sites, &mut best_order);
    let mut best_len = tour_length(start, sites, &best_order);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        two_opt(start, sites, &mut order);
        let len = tour_length(start, sites, &order);
        if len < best_len - TIE_EPS || ((len - best_len).abs() <= TIE_EPS && order < best_order) {
            best_order = order;
            best_len = len;
        }
    }

    Tour {
        length: tour_length(start, sites, &best_order),
        order: best_order,
    }
}

/// Exact solve when the instance is small enough, heuristic otherwise.
pub fn solve_auto(start: Point, sites: &[Point], seed: u64) -> Tour {
    if sites.len() <= EXACT_LIMIT {
        solve_exact(start, sites).expect("within exact limit")
    } else {
        solve_heuristic(start, sites, seed)
    }
}

fn nearest_neighbor_order(start: Point, sites: &[Point]) -> Vec<usize> {
    let n = sites.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut pos = start;
    while !remaining.is_empty() {
        let (slot, &idx) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                pos.dist(sites[**a])
                    .partial_cmp(&pos.dist(sites[**b]))
                    .unwrap()
            })
            .unwrap();
        order.push(idx);
        pos = sites[idx];
        remaining.swap_remove(slot);
    }
    order
}

/// Best-improvement 2-opt until no exchange shortens the cycle. The
/// depot stays fixed; a move reverses `order[i..=j]`.
fn two_opt(start: Point, sites: &[Point], order: &mut [usize]) {
    let n = order.len();
    if n < 2 {
        return;
    }
    loop {
        let mut best_delta = -1e-12;
        let mut best_move = None;
        for i in 0..n - 1 {
            let before_i = if i == 0 { start } else { sites[order[i - 1]] };
            for j in i + 1..n {
                let after_j = if j == n - 1 {
                    start
                } else {
                    sites[order[j + 1]]
                };
                let removed = before_i.dist(sites[order[i]]) + sites[order[j]].dist(after_j);
                let added = before_i.dist(sites[order[j]]) + sites[order[i]].dist(after_j);
                let delta = added - removed;
                if delta < best_delta {
                    best_delta = delta;
                    best_move = Some((i, j));
                }
            }
        }
        match best_move {
            Some((i, j)) => order[i..=j].reverse(),
            None => break,
        }
    }
}
