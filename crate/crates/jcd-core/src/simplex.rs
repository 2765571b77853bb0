//! Lattice discretizations of the probability simplex.

use crate::dist::FiniteDistribution;
use crate::scalar::Scalar;

/// Visit every composition of `total` into `dim` non-negative parts,
/// in lexicographic order of the count vector.
pub fn for_each_composition(dim: usize, total: usize, mut visit: impl FnMut(&[usize])) {
    assert!(dim >= 1);
    let mut counts = vec![0usize; dim];
    descend(&mut counts, 0, total, &mut visit);
}

fn descend(counts: &mut [usize], pos: usize, remaining: usize, visit: &mut impl FnMut(&[usize])) {
    if pos == counts.len() - 1 {
        counts[pos] = remaining;
        visit(counts);
        return;
    }
    for k in 0..=remaining {
        counts[pos] = k;
        descend(counts, pos + 1, remaining - k, visit);
    }
}

/// All compositions of `resolution` into `dim` non-negative parts, i.e.
/// every lattice distribution with entries `k / resolution`. The count is
/// `C(resolution + dim - 1, dim - 1)`, so keep `dim` small or the
/// resolution modest.
pub fn simplex_lattice<S: Scalar>(dim: usize, resolution: usize) -> Vec<FiniteDistribution<S>> {
    assert!(resolution >= 1);
    let denom = S::from_usize(resolution).expect("resolution fits in scalar");
    let mut out = Vec::new();
    for_each_composition(dim, resolution, |counts| {
        let probs = counts
            .iter()
            .map(|&k| S::from_usize(k).expect("count fits in scalar") / denom)
            .collect();
        // The division can leave the float sum a few ulps off one;
        // construction renormalizes.
        out.push(FiniteDistribution::new(probs).expect("lattice point is a distribution"));
    });
    out
}

/// Number of lattice points `simplex_lattice(dim, resolution)` yields.
pub fn lattice_size(dim: usize, resolution: usize) -> u128 {
    // C(resolution + dim - 1, dim - 1)
    let n = (resolution + dim - 1) as u128;
    let k = (dim - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Largest-remainder (Hamilton) apportionment of `n` units proportional
/// to `weights`: floor the scaled weights, then hand the leftover units
/// to the largest fractional remainders, ties to the lower index.
pub fn largest_remainder_counts<S: Scalar>(weights: &[S], n: usize) -> Vec<usize> {
    let n_s = S::from_usize(n).expect("n fits in scalar");
    let scaled: Vec<S> = weights.iter().map(|&w| w * n_s).collect();
    let mut counts: Vec<usize> = scaled
        .iter()
        .map(|&v| v.floor().to_usize().unwrap_or(0))
        .collect();
    let assigned: usize = counts.iter().sum();
    let mut leftover = n.saturating_sub(assigned);
    if leftover > 0 {
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = scaled[a] - scaled[a].floor();
            let rb = scaled[b] - scaled[b].floor();
            rb.partial_cmp(&ra)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        for &i in &order {
            if leftover == 0 {
                break;
            }
            counts[i] += 1;
            leftover -= 1;
        }
    }
    counts
}

/// Default px-lattice resolution by input alphabet size. Binary inputs
/// afford a fine grid; larger alphabets get coarser ones to keep the
/// lattice size manageable.
pub fn default_px_resolution(in_size: usize) -> usize {
    match in_size {
        0 | 1 => 1,
        2 => 100,
        3 => 30,
        _ => 12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_lattice_is_complete() {
        let points = simplex_lattice::<f64>(2, 4);
        assert_eq!(points.len(), 5);
        assert_eq!(points.len() as u128, lattice_size(2, 4));
        let first: Vec<f64> = points.iter().map(|p| p.prob(1)).collect();
        assert_eq!(first, vec![1.0, 0.75, 0.5, 0.25, 0.0]);
    }

    #[test]
    fn ternary_lattice_count() {
        let points = simplex_lattice::<f64>(3, 6);
        assert_eq!(points.len() as u128, lattice_size(3, 6));
        assert_eq!(points.len(), 28);
        for p in &points {
            let sum: f64 = p.probs().iter().sum();
            assert!((sum - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn largest_remainder_examples() {
        assert_eq!(largest_remainder_counts(&[0.5f64, 0.5], 10), vec![5, 5]);
        assert_eq!(largest_remainder_counts(&[1.0f64, 0.0], 7), vec![7, 0]);
        // 0.3 * 7 = 2.1 -> 2, 0.7 * 7 = 4.9 -> 5
        assert_eq!(largest_remainder_counts(&[0.3f64, 0.7], 7), vec![2, 5]);
    }

    #[test]
    fn largest_remainder_total_is_n() {
        let weights = [0.21f64, 0.33, 0.17, 0.29];
        for n in [1usize, 5, 13, 100] {
            let counts = largest_remainder_counts(&weights, n);
            assert_eq!(counts.iter().sum::<usize>(), n);
        }
    }
}
