//! Compositions, partitions, dominance order, motifs and their energies.
//!
//! Conventions used throughout:
//! - a *composition* is an arbitrary integer vector `(lambda_1, ..., lambda_N)`;
//! - a *partition* is weakly decreasing;
//! - a *motif* for a chain of `N` sites and `rank` colours is a strictly
//!   increasing tuple with entries in `1..N` containing no `rank` consecutive
//!   integers.

use crate::{rat, ratio, Error, Rat};
use num_traits::Zero;
use std::cmp::Ordering;

/// Outcome of comparing two compositions in the (refined) dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Sum of the entries.
pub fn weight(parts: &[i64]) -> i64 {
    parts.iter().sum()
}

/// Entries rearranged weakly decreasing.
pub fn sorted_desc(parts: &[i64]) -> Vec<i64> {
    let mut v = parts.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// True if weakly decreasing.
pub fn is_partition(parts: &[i64]) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1])
}

/// True if strictly decreasing.
pub fn is_strict_partition(parts: &[i64]) -> bool {
    parts.windows(2).all(|w| w[0] > w[1])
}

/// The staircase partition `(N-1, N-2, ..., 1, 0)`.
pub fn staircase(n: usize) -> Vec<i64> {
    (0..n).map(|j| (n - 1 - j) as i64).collect()
}

/// Shift every entry by `l`.
pub fn boost(parts: &[i64], l: i64) -> Vec<i64> {
    parts.iter().map(|&p| p + l).collect()
}

/// Conjugate (transpose) of a partition with nonnegative parts.
pub fn conjugate(parts: &[i64]) -> Vec<i64> {
    assert!(is_partition(parts), "conjugate requires a partition");
    assert!(
        parts.last().map_or(true, |&p| p >= 0),
        "conjugate requires nonnegative parts"
    );
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|row| parts.iter().filter(|&&p| p >= row).count() as i64)
        .collect()
}

/// Compare equal-length integer vectors by partial sums: `Greater` means every
/// prefix sum of `a` is >= that of `b` (with at least one strict).
fn partial_sum_compare(a: &[i64], b: &[i64]) -> Dominance {
    let mut sa = 0i64;
    let mut sb = 0i64;
    let mut le = true; // a <= b so far
    let mut ge = true; // a >= b so far
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        match sa.cmp(&sb) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (ge, le) {
        (true, true) => Dominance::Equal,
        (true, false) => Dominance::Greater,
        (false, true) => Dominance::Less,
        (false, false) => Dominance::Incomparable,
    }
}

/// Refined dominance order on compositions of equal length.
///
/// First the decreasing rearrangements are compared in the usual dominance
/// (partial-sum) order; compositions whose rearrangements coincide are
/// tie-broken by comparing partial sums of the compositions themselves.
pub fn dominance_compare(a: &[i64], b: &[i64]) -> Result<Dominance, Error> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let ap = sorted_desc(a);
    let bp = sorted_desc(b);
    match partial_sum_compare(&ap, &bp) {
        Dominance::Equal => Ok(partial_sum_compare(a, b)),
        other => Ok(other),
    }
}

/// Rank of entry `i` (1-based) inside the composition: the position the entry
/// would take after stably sorting into weakly decreasing order, counting
/// earlier equal entries as larger.
pub fn sigma_rank(lambda: &[i64], i: usize) -> usize {
    assert!(1 <= i && i <= lambda.len(), "index out of range");
    let li = lambda[i - 1];
    let before = lambda[..i - 1].iter().filter(|&&x| x >= li).count();
    let after = lambda[i..].iter().filter(|&&x| x > li).count();
    before + 1 + after
}

/// Eigenvalue of the `i`-th Cherednik-Dunkl operator on the nonsymmetric Jack
/// polynomial labelled by `lambda`: `alpha * lambda_i + (N - 2 sigma(i) + 1)/2`.
pub fn dunkl_eigenvalue(lambda: &[i64], i: usize, alpha: &Rat) -> Rat {
    let n = lambda.len() as i64;
    let s = sigma_rank(lambda, i) as i64;
    alpha * rat(lambda[i - 1]) + ratio(n - 2 * s + 1, 2)
}

/// Ground-state constant `N (N^2 - 1) / 12` of the effective scalar model;
/// also the total coupling `sum_{i<j} 2 V(i-j)` of the spin chain.
pub fn ground_energy(n: usize) -> Rat {
    let n = n as i64;
    ratio(n * (n * n - 1), 12)
}

/// A motif: strictly increasing entries in `1..n`, no `rank` consecutive
/// integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Motif {
    entries: Vec<usize>,
    n: usize,
    rank: usize,
}

impl Motif {
    /// Validate and build a motif for `n` sites and `rank` colours.
    pub fn new(entries: Vec<usize>, n: usize, rank: usize) -> Result<Self, Error> {
        if rank < 2 {
            return Err(Error::InvalidMotif(format!("rank must be >= 2, got {rank}")));
        }
        if n == 0 {
            return Err(Error::InvalidMotif("chain length must be positive".into()));
        }
        for w in entries.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidMotif(format!(
                    "entries must be strictly increasing: {entries:?}"
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (entries.first(), entries.last()) {
            if first == 0 || last >= n {
                return Err(Error::InvalidMotif(format!(
                    "entries must lie strictly between 0 and {n}: {entries:?}"
                )));
            }
        }
        // No `rank` consecutive integers: every run of step-1 entries must be
        // shorter than `rank`.
        let mut run = 1usize;
        for w in entries.windows(2) {
            if w[1] == w[0] + 1 {
                run += 1;
                if run >= rank {
                    return Err(Error::InvalidMotif(format!(
                        "{rank} consecutive entries in {entries:?}"
                    )));
                }
            } else {
                run = 1;
            }
        }
        Ok(Motif { entries, n, rank })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the entries; the lattice momentum is this mod `n`.
    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Lattice momentum index `weight mod n`.
    pub fn momentum(&self) -> usize {
        self.weight() % self.n
    }
}

/// All motifs for `n` sites and `rank` colours, in lexicographic order on the
/// increasing tuples (the empty motif first).
pub fn enumerate_motifs(n: usize, rank: usize) -> Vec<Motif> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn extend(current: &mut Vec<usize>, n: usize, rank: usize, out: &mut Vec<Motif>) {
        out.push(Motif {
            entries: current.clone(),
            n,
            rank,
        });
        let start = current.last().map_or(1, |&e| e + 1);
        for next in start..n {
            // Length of the step-1 run that `next` would extend.
            let mut run = 1usize;
            let mut expect = next.wrapping_sub(1);
            for &e in current.iter().rev() {
                if e == expect {
                    run += 1;
                    expect = expect.wrapping_sub(1);
                } else {
                    break;
                }
            }
            if run >= rank {
                continue;
            }
            current.push(next);
            extend(current, n, rank, out);
            current.pop();
        }
    }
    extend(&mut current, n, rank, &mut out);
    out
}

/// Degeneracy of the motif's energy level in the rank-2 chain spectrum.
///
/// The empty motif carries the `(n+1)`-fold ferromagnetic multiplet; otherwise
/// the count is `mu_1 * (n - mu_M) * prod (mu_{m+1} - mu_m - 1)`.
pub fn degeneracy(motif: &Motif) -> u64 {
    if motif.rank != 2 {
        unimplemented!("degeneracy counting is implemented for rank 2 only");
    }
    let n = motif.n as u64;
    let mu = &motif.entries;
    if mu.is_empty() {
        return n + 1;
    }
    let mut d = mu[0] as u64 * (n - *mu.last().unwrap() as u64);
    for w in mu.windows(2) {
        d *= (w[1] - w[0] - 1) as u64;
    }
    d
}

/// Magnon-side energy `E(mu) = (1/2) sum_m mu_m (n - mu_m)` of the motif.
///
/// This is the eigenvalue of `sum_{i<j} V(i-j) (1 - P_ij)`; the eigenvalue of
/// `sum_{i<j} V(i-j) (1 + P_ij)` is `ground_energy(n)` minus this.
pub fn hs_motif_energy(motif: &Motif) -> Rat {
    let n = motif.n as i64;
    let mut e = Rat::zero();
    for &m in &motif.entries {
        let m = m as i64;
        e += ratio(m * (n - m), 2);
    }
    e
}

/// Antiferromagnetic-side energy `ground_energy(n) - hs_motif_energy(motif)`.
pub fn hs_motif_energy_minus(motif: &Motif) -> Rat {
    ground_energy(motif.n) - hs_motif_energy(motif)
}

/// Read a motif off a weakly decreasing momentum vector `kbar` of length `n`:
/// the entries are the positions of adjacent repeats counted from the right,
/// `{ n - j : kbar_j = kbar_{j+1} }`.
pub fn motif_from_kbar(kbar: &[i64], rank: usize) -> Result<Motif, Error> {
    let n = kbar.len();
    if !is_partition(kbar) {
        return Err(Error::InvalidInput(format!(
            "kbar must be weakly decreasing: {kbar:?}"
        )));
    }
    // Per-colour strictness: no value may repeat more than `rank` times.
    let mut run = 1usize;
    for w in kbar.windows(2) {
        if w[0] == w[1] {
            run += 1;
            if run > rank {
                return Err(Error::InvalidInput(format!(
                    "value {} repeats more than {rank} times in {kbar:?}",
                    w[0]
                )));
            }
        } else {
            run = 1;
        }
    }
    let mut entries: Vec<usize> = (1..n)
        .filter(|&j| kbar[j - 1] == kbar[j])
        .map(|j| n - j)
        .collect();
    entries.sort_unstable();
    Motif::new(entries, n, rank)
}

/// The tightest weakly decreasing momentum vector (minimum entry 0) whose
/// adjacent repeats sit at the motif's positions: inverse of
/// [`motif_from_kbar`] on boost-normalised input.
pub fn kbar_from_motif(motif: &Motif) -> Vec<i64> {
    let n = motif.n;
    let mut kbar = vec![0i64; n];
    for j in (1..n).rev() {
        let repeat = motif.entries.contains(&(n - j));
        kbar[j - 1] = kbar[j] + if repeat { 0 } else { 1 };
    }
    kbar
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_worked_examples() {
        // (3,0,0) strictly dominates (0,3,0): same rearrangement, prefix sums win.
        assert_eq!(
            dominance_compare(&[3, 0, 0], &[0, 3, 0]).unwrap(),
            Dominance::Greater
        );
        assert_eq!(
            dominance_compare(&[0, 3, 0], &[3, 0, 0]).unwrap(),
            Dominance::Less
        );
        // (2,0,1) and (1,2,0) are incomparable: rearrangements (2,1,0) vs (2,1,0)
        // tie, and the composition prefix sums cross.
        assert_eq!(
            dominance_compare(&[2, 0, 1], &[1, 2, 0]).unwrap(),
            Dominance::Incomparable
        );
        // Plain partition dominance.
        assert_eq!(
            dominance_compare(&[2, 2, 0], &[2, 1, 1]).unwrap(),
            Dominance::Greater
        );
        assert_eq!(
            dominance_compare(&[1, 1, 1], &[3, 0, 0]).unwrap(),
            Dominance::Less
        );
        assert_eq!(
            dominance_compare(&[2, 0, 1], &[2, 0, 1]).unwrap(),
            Dominance::Equal
        );
        assert!(dominance_compare(&[1, 0], &[1, 0, 0]).is_err());
    }

    #[test]
    fn dominance_is_antisymmetric_and_transitive_on_sample() {
        // Exhaustive check over all compositions of 4 into 3 nonnegative parts.
        let mut comps = Vec::new();
        for a in 0..=4i64 {
            for b in 0..=4 - a {
                comps.push(vec![a, b, 4 - a - b]);
            }
        }
        for x in &comps {
            for y in &comps {
                let xy = dominance_compare(x, y).unwrap();
                let yx = dominance_compare(y, x).unwrap();
                match xy {
                    Dominance::Equal => assert_eq!(x, y),
                    Dominance::Greater => assert_eq!(yx, Dominance::Less),
                    Dominance::Less => assert_eq!(yx, Dominance::Greater),
                    Dominance::Incomparable => assert_eq!(yx, Dominance::Incomparable),
                }
                for z in &comps {
                    let yz = dominance_compare(y, z).unwrap();
                    if xy == Dominance::Greater && yz == Dominance::Greater {
                        assert_eq!(dominance_compare(x, z).unwrap(), Dominance::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_rank_examples() {
        // Partition: rank is just the position.
        let lam = [3, 2, 2, 0];
        for i in 1..=4 {
            assert_eq!(sigma_rank(&lam, i), i);
        }
        // Earlier equal entries count as larger.
        let lam = [1, 2, 1];
        assert_eq!(sigma_rank(&lam, 1), 2);
        assert_eq!(sigma_rank(&lam, 2), 1);
        assert_eq!(sigma_rank(&lam, 3), 3);
        // sigma is always a permutation of 1..=N.
        let lam = [0, 5, 2, 5, 0];
        let mut ranks: Vec<usize> = (1..=5).map(|i| sigma_rank(&lam, i)).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn dunkl_eigenvalues_separate_compositions() {
        // For fixed weight, distinct compositions get distinct eigenvalue tuples.
        let alpha = ratio(1, 2);
        let mut comps = Vec::new();
        for a in 0..=3i64 {
            for b in 0..=3 - a {
                comps.push(vec![a, b, 3 - a - b]);
            }
        }
        let tuples: Vec<Vec<Rat>> = comps
            .iter()
            .map(|c| (1..=3).map(|i| dunkl_eigenvalue(c, i, &alpha)).collect())
            .collect();
        for i in 0..tuples.len() {
            for j in i + 1..tuples.len() {
                assert_ne!(tuples[i], tuples[j], "{:?} vs {:?}", comps[i], comps[j]);
            }
        }
    }

    #[test]
    fn motif_enumeration_rank2() {
        let motifs = enumerate_motifs(4, 2);
        let entries: Vec<Vec<usize>> = motifs.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![vec![], vec![1], vec![1, 3], vec![2], vec![3]]
        );
        // Counts follow the Fibonacci-like recursion; total degeneracy is 2^n.
        for n in 2..=10 {
            let motifs = enumerate_motifs(n, 2);
            let total: u64 = motifs.iter().map(degeneracy).sum();
            assert_eq!(total, 1u64 << n, "degeneracy sum for n = {n}");
        }
    }

    #[test]
    fn motif_enumeration_higher_rank() {
        // Rank 3, n = 4: subsets of {1,2,3} without 3 consecutive entries.
        let motifs = enumerate_motifs(4, 3);
        let entries: Vec<Vec<usize>> = motifs.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![
                vec![],
                vec![1],
                vec![1, 2],
                vec![1, 3],
                vec![2],
                vec![2, 3],
                vec![3]
            ]
        );
        assert!(Motif::new(vec![1, 2, 3], 5, 3).is_err());
        assert!(Motif::new(vec![1, 2, 3], 5, 4).is_ok());
    }

    #[test]
    fn motif_energies_n4() {
        let m = |e: Vec<usize>| Motif::new(e, 4, 2).unwrap();
        assert_eq!(hs_motif_energy(&m(vec![])), rat(0));
        assert_eq!(hs_motif_energy(&m(vec![1])), ratio(3, 2));
        assert_eq!(hs_motif_energy(&m(vec![2])), rat(2));
        assert_eq!(hs_motif_energy(&m(vec![3])), ratio(3, 2));
        assert_eq!(hs_motif_energy(&m(vec![1, 3])), rat(3));
        assert_eq!(ground_energy(4), rat(5));
        assert_eq!(hs_motif_energy_minus(&m(vec![1, 3])), rat(2));
        // Ferromagnetic multiplet sits at the top of the + chain.
        assert_eq!(hs_motif_energy_minus(&m(vec![])), rat(5));
    }

    #[test]
    fn degeneracies_n4() {
        let m = |e: Vec<usize>| Motif::new(e, 4, 2).unwrap();
        assert_eq!(degeneracy(&m(vec![])), 5);
        assert_eq!(degeneracy(&m(vec![1])), 3);
        assert_eq!(degeneracy(&m(vec![2])), 4);
        assert_eq!(degeneracy(&m(vec![3])), 3);
        assert_eq!(degeneracy(&m(vec![1, 3])), 1);
    }

    #[test]
    fn kbar_motif_round_trip() {
        // The five rank-2 levels at n = 4.
        let rows: Vec<(Vec<i64>, Vec<usize>)> = vec![
            (vec![3, 2, 1, 0], vec![]),
            (vec![2, 2, 1, 0], vec![3]),
            (vec![2, 1, 1, 0], vec![2]),
            (vec![2, 1, 0, 0], vec![1]),
            (vec![1, 1, 0, 0], vec![1, 3]),
        ];
        for (kbar, mu) in rows {
            let motif = motif_from_kbar(&kbar, 2).unwrap();
            assert_eq!(motif.entries(), &mu[..], "kbar {kbar:?}");
            assert_eq!(kbar_from_motif(&motif), kbar, "motif {mu:?}");
        }
        // Round trip from the motif side for several (n, rank).
        for n in 2..=8 {
            for rank in 2..=3 {
                for motif in enumerate_motifs(n, rank) {
                    let kbar = kbar_from_motif(&motif);
                    let back = motif_from_kbar(&kbar, rank).unwrap();
                    assert_eq!(back, motif);
                    // Boosting kbar does not change the motif.
                    let boosted = boost(&kbar, 3);
                    assert_eq!(motif_from_kbar(&boosted, rank).unwrap(), motif);
                }
            }
        }
        // kbar_from_motif agrees with the step-function formula
        // kbar_j = n - j - #{m : mu_m <= n - j} at rank 2.
        for n in 2..=8 {
            for motif in enumerate_motifs(n, 2) {
                let kbar = kbar_from_motif(&motif);
                for j in 1..=n {
                    let expect = (n - j) as i64
                        - motif
                            .entries()
                            .iter()
                            .filter(|&&m| n as i64 - j as i64 - m as i64 >= 0)
                            .count() as i64;
                    assert_eq!(kbar[j - 1], expect);
                }
            }
        }
    }

    #[test]
    fn kbar_strictness_rejected() {
        // A value repeated 3 times is not a valid rank-2 momentum vector.
        assert!(motif_from_kbar(&[1, 1, 1, 0], 2).is_err());
        assert!(motif_from_kbar(&[1, 1, 1, 0], 3).is_ok());
        assert!(motif_from_kbar(&[0, 1], 2).is_err());
    }

    #[test]
    fn partition_helpers() {
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(conjugate(&conjugate(&[4, 2, 2, 1])), vec![4, 2, 2, 1]);
        assert_eq!(staircase(4), vec![3, 2, 1, 0]);
        assert_eq!(sorted_desc(&[0, 3, -1]), vec![3, 0, -1]);
        assert_eq!(weight(&[2, -1, 4]), 5);
        assert!(is_strict_partition(&[3, 1, 0]));
        assert!(!is_strict_partition(&[3, 3, 0]));
    }
}
