//! Freezing: evaluating wedge states at roots of unity to obtain the
//! Haldane-Shastry spin chain.
//!
//! This module builds the explicit Haldane-Shastry eigenvectors labelled by
//! motifs, evaluates individual wedges into spin-chain vectors (both through a
//! closed assembly formula and directly from the coordinate expansion), and
//! provides exact consistency checks: a suite of root-of-unity evaluation
//! identities, the reduction of the linearised effective hamiltonian on
//! wedges with a fully packed colour-0 block to a scalar operator on the
//! remaining orbital momenta, and a degree probe for descendant wedges.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{conjugate, ground_energy, hs_motif_energy, hs_motif_energy_minus, staircase, Motif};
use crate::dunkl::{apply_effective_hamiltonian, sym_jack, DunklConfig};
use crate::polyring::{
    alternant, root_of_unity, schur, vandermonde, vandermonde_eval, LaurentPoly,
};
use crate::spinchain::{coupling, hs_apply, symmetry_apply, translation, HsSign, SpinVector, SymmetryOp};
use crate::wedge::{apply_linearized, apply_spin_eff_hamiltonian, normalize, wedge_to_coordinate, Wedge, WedgeVector};
use crate::{rat, ratio, Error, Rat};

/// All increasing `m`-element subsets of `{1, ..., n}`, in lexicographic order.
fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=m).collect();
    loop {
        out.push(cur.clone());
        // Next combination.
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != n - m + i + 1 {
                break;
            }
        }
        if m == 0 {
            return out;
        }
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Evaluation points `(omega^{i})_{i in subset}` on the `n`-site lattice.
fn roots_at(subset: &[usize], n: usize) -> Vec<Complex64> {
    subset.iter().map(|&i| root_of_unity(n, i as i64)).collect()
}

/// Schur polynomial evaluated at the roots `(omega^{i})_{i in subset}` via
/// the bialternant formula with the matrix powers reduced modulo `n` before
/// any floating-point work, which keeps every entry accurate to a few ulps.
fn schur_at_roots(lambda: &[i64], subset: &[usize], n: usize) -> Complex64 {
    let m = subset.len();
    let mut lam: Vec<i64> = lambda.to_vec();
    while lam.last() == Some(&0) {
        lam.pop();
    }
    if lam.len() > m {
        return Complex64::zero();
    }
    lam.resize(m, 0);
    if m == 0 {
        return Complex64::one();
    }
    let num = nalgebra::DMatrix::from_fn(m, m, |i, j| {
        let exp = lam[j] + (m - 1 - j) as i64;
        root_of_unity(n, (subset[i] as i64 * exp).rem_euclid(n as i64))
    });
    num.determinant() / vandermonde_eval(&roots_at(subset, n))
}

/// An explicit Haldane-Shastry eigenvector labelled by a motif (rank 2).
///
/// The vector is determined by a symmetric polynomial wave function in
/// `M = motif.len()` variables: the component on the basis state with spins
/// lowered at sites `i_1 < ... < i_M` is the wave function evaluated at
/// `(omega^{i_1}, ..., omega^{i_M})`.
pub struct HsEigenvector {
    motif: Motif,
    wavefn: LaurentPoly,
    vector: SpinVector,
    energy: Rat,
    energy_minus: Rat,
}

impl HsEigenvector {
    /// The motif labelling this eigenvector.
    pub fn motif(&self) -> &Motif {
        &self.motif
    }

    /// The symmetric wave function in `motif.len()` variables.
    pub fn wavefn(&self) -> &LaurentPoly {
        &self.wavefn
    }

    /// The assembled spin-chain vector.
    pub fn vector(&self) -> &SpinVector {
        &self.vector
    }

    /// Eigenvalue under `sum_{i<j} V(i-j) (1 - P_ij)`.
    pub fn energy(&self) -> &Rat {
        &self.energy
    }

    /// Eigenvalue under `sum_{i<j} V(i-j) (1 + P_ij)`.
    pub fn energy_minus(&self) -> &Rat {
        &self.energy_minus
    }

    /// Expected lattice momentum index (eigenvalue `omega^index` under the
    /// one-site translation).
    pub fn momentum_index(&self) -> usize {
        self.motif.momentum()
    }
}

/// Build the explicit eigenvector for a rank-2 motif.
///
/// With the motif entries `mu_1 < ... < mu_M` set `nu_m = mu_{M-m+1} - 2(M-m)`;
/// the wave function is the squared Vandermonde times the symmetric Jack
/// polynomial `P_nu` at `alpha = 1/2` in `M` variables. Its energy under
/// `sum V (1 - P)` is `1/2 sum_m mu_m (n - mu_m)`.
pub fn hs_eigenvector(motif: &Motif) -> Result<HsEigenvector, Error> {
    if motif.rank() != 2 {
        return Err(Error::InvalidInput(
            "explicit eigenvectors are implemented for rank 2".into(),
        ));
    }
    let n = motif.n();
    let m = motif.len();
    let nu: Vec<i64> = (1..=m)
        .map(|i| motif.entries()[m - i] as i64 - 2 * (m - i) as i64)
        .collect();
    let wavefn = if m == 0 {
        LaurentPoly::one(0)
    } else {
        let vars: Vec<usize> = (1..=m).collect();
        let cfg = DunklConfig::new(m, ratio(1, 2))?;
        let jack = sym_jack(&cfg, &nu)?;
        &vandermonde(m, &vars).pow(2) * &jack
    };
    let mut vector = SpinVector::zero(n, 2);
    for subset in subsets(n, m) {
        let value = wavefn.eval_points(&roots_at(&subset, n));
        let mut word = vec![0u8; n];
        for &i in &subset {
            word[i - 1] = 1;
        }
        vector.set(&word, value);
    }
    Ok(HsEigenvector {
        motif: motif.clone(),
        wavefn,
        vector,
        energy: hs_motif_energy(motif),
        energy_minus: hs_motif_energy_minus(motif),
    })
}

/// Numerical residuals certifying an explicit eigenvector.
///
/// All residuals are relative to the vector norm; for a valid motif every
/// field should vanish to machine precision.
pub struct EigenReport {
    /// Norm of the assembled vector (must be nonzero).
    pub norm: f64,
    /// `||H_+ v - E v|| / ||v||` for the `(1 - P)` hamiltonian.
    pub energy_residual: f64,
    /// `||H_- v - E_- v|| / ||v||` for the `(1 + P)` hamiltonian.
    pub energy_minus_residual: f64,
    /// `||S^+ v|| / ||v||`: the vector is a spin highest-weight state.
    pub raising_residual: f64,
    /// `||Q^+ v|| / ||v||`: the vector is annihilated by the raising
    /// generator of the frozen long-range symmetry.
    pub highest_weight_residual: f64,
    /// `||T v - omega^p v|| / ||v||` for the expected momentum index `p`.
    pub momentum_residual: f64,
    /// Whether the wave function vanishes exactly at `z_m = 0` for every
    /// variable (trivially true for the empty motif).
    pub vanishes_at_zero: bool,
}

/// Check an explicit eigenvector against the spin-chain operators.
pub fn verify_eigenvector(ev: &HsEigenvector) -> Result<EigenReport, Error> {
    let v = ev.vector();
    let norm = v.norm();
    if norm < 1e-12 {
        return Err(Error::InvalidInput(
            "eigenvector has vanishing norm".into(),
        ));
    }
    let residual_of = |mut image: SpinVector, scalar: Complex64| -> f64 {
        image.add_assign(v, -scalar);
        image.norm() / norm
    };
    let e_plus = ev.energy().to_f64().expect("rational fits in f64");
    let e_minus = ev.energy_minus().to_f64().expect("rational fits in f64");
    let energy_residual = residual_of(hs_apply(v, HsSign::Plus), Complex64::new(e_plus, 0.0));
    let energy_minus_residual =
        residual_of(hs_apply(v, HsSign::Minus), Complex64::new(e_minus, 0.0));
    let raising_residual = symmetry_apply(SymmetryOp::SPlus, v)?.norm() / norm;
    let highest_weight_residual = symmetry_apply(SymmetryOp::QPlus, v)?.norm() / norm;
    let phase = root_of_unity(ev.motif.n(), ev.momentum_index() as i64);
    let momentum_residual = residual_of(translation(v), phase);
    let m = ev.motif.len();
    let vanishes_at_zero = m == 0 || (1..=m).all(|i| ev.wavefn.min_exponent(i) >= 1);
    Ok(EigenReport {
        norm,
        energy_residual,
        energy_minus_residual,
        raising_residual,
        highest_weight_residual,
        momentum_residual,
        vanishes_at_zero,
    })
}

/// Evaluate a rank-2 wedge at roots of unity through the closed assembly
/// formula: the component at the down-spin subset `I` is
/// `Delta(z_I)^2 e_M(z_I) s_{lambda_down}(z_I) s_{lambda_up'}(z_I)` evaluated
/// at `z_i = omega^i`, where the two partitions are read off from the orbital
/// momenta of the down and up entries.
///
/// The result agrees with [`frozen_wedge_direct`] up to a single global
/// constant. Requires both partitions to have nonnegative parts (boost the
/// wedge into range first) and the up partition to satisfy
/// `lambda_1 + (number of nonzero parts) <= n`, which keeps every power sum
/// entering its Schur polynomial below degree `n`.
pub fn frozen_wedge(w: &Wedge) -> Result<SpinVector, Error> {
    if w.rank() != 2 {
        return Err(Error::InvalidInput(
            "the assembly formula is implemented for rank 2".into(),
        ));
    }
    let n = w.n();
    let split = w.split_colours();
    let (kup, kdown) = (&split[0], &split[1]);
    let m = kdown.len();
    let lam_down: Vec<i64> = (1..=m).map(|i| kdown[i - 1] - (m - i) as i64).collect();
    let lam_up: Vec<i64> = (1..=n - m)
        .map(|j| kup[j - 1] - (n - m - j) as i64)
        .collect();
    if lam_down.last().map_or(false, |&x| x < 0) || lam_up.last().map_or(false, |&x| x < 0) {
        return Err(Error::InvalidInput(
            "wedge out of range: boost it so both partitions are nonnegative".into(),
        ));
    }
    let up_rows = lam_up.iter().filter(|&&x| x > 0).count() as i64;
    if lam_up.first().map_or(false, |&x| x + up_rows > n as i64) {
        return Err(Error::InvalidInput(
            "up partition too wide for the conjugation identity".into(),
        ));
    }
    let mut vector = SpinVector::zero(n, 2);
    if lam_up.first().map_or(false, |&x| x > m as i64) {
        // The conjugate partition has more parts than magnon variables: the
        // frozen wedge vanishes identically.
        return Ok(vector);
    }
    let poly = if m == 0 {
        LaurentPoly::one(0)
    } else {
        let vars: Vec<usize> = (1..=m).collect();
        let mut p = vandermonde(m, &vars).pow(2);
        p = &p * &LaurentPoly::monomial(vec![1; m], Rat::one());
        p = &p * &schur(m, &vars, &lam_down);
        let lam_up_nonzero: Vec<i64> = lam_up.iter().cloned().filter(|&x| x > 0).collect();
        if !lam_up_nonzero.is_empty() {
            p = &p * &schur(m, &vars, &conjugate(&lam_up_nonzero));
        }
        p
    };
    for subset in subsets(n, m) {
        let value = poly.eval_points(&roots_at(&subset, n));
        let mut word = vec![0u8; n];
        for &i in &subset {
            word[i - 1] = 1;
        }
        vector.set(&word, value);
    }
    Ok(vector)
}

/// Evaluate a wedge (any rank) at roots of unity directly from its coordinate
/// expansion over colour words.
pub fn frozen_wedge_direct(w: &Wedge) -> SpinVector {
    let state = wedge_to_coordinate(&WedgeVector::from_wedge(w));
    let mut out = SpinVector::zero(w.n(), w.rank());
    for (word, poly) in state.components() {
        out.set(word, poly.eval_roots(w.n()));
    }
    out
}

/// A named numerical identity check with its relative residual.
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: f64,
}

/// Minimal deterministic generator for sampling subsets and partitions.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        // SplitMix64.
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n.max(1) as u64) as usize
    }

    /// A uniformly random increasing `m`-subset of `{1, ..., n}`.
    fn subset(&mut self, n: usize, m: usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (1..=n).collect();
        for i in 0..m {
            let j = i + self.below(n - i);
            pool.swap(i, j);
        }
        let mut out = pool[..m].to_vec();
        out.sort_unstable();
        out
    }
}

/// Run the suite of root-of-unity evaluation identities on `n` lattice sites.
///
/// Each check reports a relative residual that should vanish to machine
/// precision. Randomised checks (Vandermonde splitting, Schur conjugation)
/// draw subsets and partitions from the given seed.
pub fn evaluation_identity_suite(n: usize, seed: u64) -> Vec<IdentityCheck> {
    assert!(n >= 2, "need at least two sites");
    let mut rng = Rng(seed);
    let mut checks = Vec::new();
    let omega: Vec<Complex64> = (1..=n).map(|j| root_of_unity(n, j as i64)).collect();
    let z = |i: usize| omega[i - 1];
    let rel = |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / rhs.norm().max(1.0);

    // sum_{d=1}^{n-1} V(d) = (n^2 - 1)/12.
    let vsum: f64 = (1..n as i64).map(|d| coupling(n, d)).sum();
    checks.push(IdentityCheck {
        name: "pair_potential_sum",
        residual: rel(
            Complex64::new(vsum, 0.0),
            Complex64::new((n * n - 1) as f64 / 12.0, 0.0),
        ),
    });

    // sum_{i<j} z_i z_j / (z_ij z_ji) = n (n^2 - 1)/24 at roots of unity.
    let mut pair_sum = Complex64::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            pair_sum += z(i) * z(j) / ((z(i) - z(j)) * (z(j) - z(i)));
        }
    }
    checks.push(IdentityCheck {
        name: "classical_equilibrium",
        residual: rel(
            pair_sum,
            Complex64::new((n * (n * n - 1)) as f64 / 24.0, 0.0),
        ),
    });

    // sum_{j != i} z_i / (z_i - z_j) = (n - 1)/2, for every i.
    let mut worst = 0f64;
    for i in 1..=n {
        let s: Complex64 = (1..=n)
            .filter(|&j| j != i)
            .map(|j| z(i) / (z(i) - z(j)))
            .sum();
        worst = worst.max(rel(s, Complex64::new((n - 1) as f64 / 2.0, 0.0)));
    }
    checks.push(IdentityCheck {
        name: "half_sum",
        residual: worst,
    });

    // sum_{j != j' (both != i)} z_i^2 / ((z_i - z_j)(z_i - z_j')) = (n-1)(n-2)/3.
    let mut worst = 0f64;
    for i in 1..=n {
        let mut s = Complex64::zero();
        for j in 1..=n {
            if j == i {
                continue;
            }
            for jp in 1..=n {
                if jp == i || jp == j {
                    continue;
                }
                s += z(i) * z(i) / ((z(i) - z(j)) * (z(i) - z(jp)));
            }
        }
        worst = worst.max(rel(
            s,
            Complex64::new(((n - 1) * (n - 2)) as f64 / 3.0, 0.0),
        ));
    }
    checks.push(IdentityCheck {
        name: "double_sum",
        residual: worst,
    });

    // Power sums: p_k evaluates to n when n | k and to zero otherwise.
    let mut worst = 0f64;
    for k in 1..=2 * n {
        let s: Complex64 = (1..=n).map(|j| z(j).powu(k as u32)).sum();
        let expect = if k % n == 0 { n as f64 } else { 0.0 };
        worst = worst.max((s - Complex64::new(expect, 0.0)).norm() / n as f64);
    }
    checks.push(IdentityCheck {
        name: "power_sums",
        residual: worst,
    });

    // Elementary symmetric polynomials: e_0 = 1, e_n = (-1)^{n-1}, rest zero.
    // Coefficients of prod_j (1 + t omega^j), accumulated in a Leja ordering
    // of the roots so the intermediate coefficients stay O(1) and the final
    // cancellations do not amplify rounding error.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (1..=n).collect();
    while let Some(pos) = remaining
        .iter()
        .enumerate()
        .max_by(|(_, &a), (_, &b)| {
            let logdist = |j: usize| -> f64 {
                order.iter().map(|&i| (z(j) - z(i)).norm().ln()).sum()
            };
            logdist(a).partial_cmp(&logdist(b)).expect("finite")
        })
        .map(|(pos, _)| pos)
    {
        order.push(remaining.swap_remove(pos));
    }
    let mut coeffs = vec![Complex64::zero(); n + 1];
    coeffs[0] = Complex64::one();
    for (step, &j) in order.iter().enumerate() {
        for k in (1..=step + 1).rev() {
            let lower = coeffs[k - 1];
            coeffs[k] += lower * z(j);
        }
    }
    let mut worst = 0f64;
    for (k, &c) in coeffs.iter().enumerate() {
        let expect = if k == 0 {
            Complex64::one()
        } else if k == n {
            Complex64::new(if n % 2 == 0 { -1.0 } else { 1.0 }, 0.0)
        } else {
            Complex64::zero()
        };
        worst = worst.max((c - expect).norm());
    }
    checks.push(IdentityCheck {
        name: "elementary_evaluations",
        residual: worst,
    });

    // The full Vandermonde evaluates to (-1)^{(n+2)(n-1)/4} n^{n/2}.
    let ev_delta = vandermonde_eval(&omega);
    let phase_exp = ((n + 2) * (n - 1)) as f64 / 4.0;
    let closed = Complex64::new(0.0, std::f64::consts::PI * phase_exp).exp()
        * (n as f64).powf(n as f64 / 2.0);
    checks.push(IdentityCheck {
        name: "vandermonde_value",
        residual: rel(ev_delta, closed),
    });

    // Splitting the Vandermonde over a subset I and its complement:
    // ev Delta(z_{I^c}) = closed/n^M * (-1)^{|I| - M} ev Delta(z_I) e_M(z_I).
    let mut worst = 0f64;
    for m in 0..=n {
        for _ in 0..3 {
            let subset = rng.subset(n, m);
            let complement: Vec<usize> = (1..=n).filter(|i| !subset.contains(i)).collect();
            let lhs = vandermonde_eval(&roots_at(&complement, n));
            let weight: usize = subset.iter().sum();
            let sign = if (weight + m) % 2 == 0 { 1.0 } else { -1.0 };
            let prod: Complex64 = subset
                .iter()
                .map(|&i| z(i))
                .product();
            let rhs = closed / (n as f64).powi(m as i32)
                * sign
                * vandermonde_eval(&roots_at(&subset, n))
                * prod;
            worst = worst.max(rel(lhs, rhs));
        }
    }
    checks.push(IdentityCheck {
        name: "vandermonde_split",
        residual: worst,
    });

    // Schur conjugation across a subset and its complement:
    // ev s_lambda(z_{I^c}) = (-1)^{|lambda|} ev s_{lambda'}(z_I). The identity
    // needs every power sum entering s_lambda to have degree below n, so we
    // sample partitions with lambda_1 + (number of parts) <= n.
    let mut worst = 0f64;
    for m in 1..n {
        for _ in 0..3 {
            let subset = rng.subset(n, m);
            let complement: Vec<usize> = (1..=n).filter(|i| !subset.contains(i)).collect();
            let parts = 1 + rng.below((n - m).min(n - 1));
            let mut lambda: Vec<i64> =
                (0..parts).map(|_| 1 + rng.below(n - parts) as i64).collect();
            lambda.sort_unstable_by(|a, b| b.cmp(a));
            let lhs = schur_at_roots(&lambda, &complement, n);
            let weight: i64 = lambda.iter().sum();
            let sign = if weight % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = sign * schur_at_roots(&conjugate(&lambda), &subset, n);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            worst = worst.max((lhs - rhs).norm() / scale);
        }
    }
    checks.push(IdentityCheck {
        name: "schur_conjugation",
        residual: worst,
    });

    checks
}

/// Report for the reduction of the linearised hamiltonian to a scalar
/// operator on magnon momenta (rank 2).
///
/// For every strict `m`-subset `kappa` of `{0, ..., n-m-1}` the check acts
/// with the linearised hamiltonian on the wedge whose down entries carry the
/// orbital momenta `kappa` and whose up entries fill the staircase, and
/// compares the result with the effective hamiltonian at coupling 1 acting on
/// the alternant with exponents `kappa`, minus `(n-m-1)/2` times the total
/// momentum. The two agree exactly off the diagonal; on the diagonal they
/// differ by a constant independent of `kappa`.
pub struct ReducedCheck {
    pub n: usize,
    pub m: usize,
    /// Number of wedges compared.
    pub cases: usize,
    /// Whether every off-diagonal coefficient matched exactly.
    pub offdiag_exact: bool,
    /// The diagonal offset (meaningful when `constant_consistent`).
    pub constant: Rat,
    /// Whether the diagonal offset was the same for every wedge.
    pub constant_consistent: bool,
    /// Whether the offset equals `n(n^2-1)/12 - m(m+1)(3n-2m-1)/12`.
    pub matches_closed_form: bool,
}

/// Compare the linearised hamiltonian on packed rank-2 wedges with the
/// `m`-variable scalar effective hamiltonian at coupling 1.
pub fn reduced_hamiltonian_check(n: usize, m: usize) -> Result<ReducedCheck, Error> {
    if m == 0 || 2 * m > n {
        return Err(Error::InvalidInput(
            "need 1 <= m <= n/2 so the down momenta fit inside the staircase".into(),
        ));
    }
    let up = staircase(n - m);
    let vars: Vec<usize> = (1..=m).collect();
    let mut cases = 0usize;
    let mut offdiag_exact = true;
    let mut constant: Option<Rat> = None;
    let mut constant_consistent = true;
    for subset in subsets(n - m, m) {
        // Down momenta, strictly decreasing in {0, ..., n-m-1}.
        let kappa: Vec<i64> = subset.iter().rev().map(|&x| (x - 1) as i64).collect();
        let tuple: Vec<i64> = kappa
            .iter()
            .map(|&x| 2 * x + 1)
            .chain(up.iter().map(|&x| 2 * x))
            .collect();
        let (s0, w0) = normalize(&tuple, 2).expect("entries are distinct");
        let lhs = apply_linearized(&WedgeVector::from_wedge(&w0)).scale(&rat(s0));
        let mut lhs_map: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (w, c) in lhs.terms() {
            let split = w.split_colours();
            if split[0] != up {
                // Leakage out of the packed sector would break the reduction.
                offdiag_exact = false;
                continue;
            }
            let kap = split[1].clone();
            let t: Vec<i64> = kap
                .iter()
                .map(|&x| 2 * x + 1)
                .chain(up.iter().map(|&x| 2 * x))
                .collect();
            let (s1, w1) = normalize(&t, 2).expect("entries are distinct");
            debug_assert_eq!(w1.k(), w.k());
            let entry = lhs_map.entry(kap).or_insert_with(Rat::zero);
            *entry += c.clone() * rat(s1);
        }
        let a = alternant(m, &vars, &kappa);
        let ham = apply_effective_hamiltonian(&a, &Rat::one());
        let shift = a.total_momentum().scale(&ratio((n - m - 1) as i64, 2));
        let b = &ham - &shift;
        let mut rhs_map: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in b.terms() {
            if e.windows(2).all(|p| p[0] > p[1]) {
                rhs_map.insert(e.clone(), c.clone());
            }
        }
        let diag_l = lhs_map.remove(&kappa).unwrap_or_else(Rat::zero);
        let diag_r = rhs_map.remove(&kappa).unwrap_or_else(Rat::zero);
        let cst = diag_l - diag_r;
        match &constant {
            None => constant = Some(cst),
            Some(c0) => {
                if *c0 != cst {
                    constant_consistent = false;
                }
            }
        }
        if lhs_map != rhs_map {
            offdiag_exact = false;
        }
        cases += 1;
    }
    let constant = constant.unwrap_or_else(Rat::zero);
    let closed = ground_energy(n)
        - ratio((m * (m + 1)) as i64 * (3 * n as i64 - 2 * m as i64 - 1), 12);
    let matches_closed_form = constant_consistent && constant == closed;
    Ok(ReducedCheck {
        n,
        m,
        cases,
        offdiag_exact,
        constant,
        constant_consistent,
        matches_closed_form,
    })
}

/// Report for the higher-rank reduction: the linearised hamiltonian on
/// rank-`r` wedges whose colour-0 block is fully packed embeds the effective
/// hamiltonian at coupling 1 for rank `r - 1`, shifted by a multiple of the
/// total momentum and a constant.
pub struct RankReducedCheck {
    pub n: usize,
    pub rank: usize,
    /// Size of the packed colour-0 block.
    pub m0: usize,
    /// Number of wedges compared.
    pub cases: usize,
    /// Whether the off-diagonal action matched the reduced model exactly.
    pub embeds_exactly: bool,
    /// The diagonal offset (meaningful when `constant_consistent`).
    pub constant: Rat,
    /// Whether the diagonal offset was the same for every wedge.
    pub constant_consistent: bool,
    /// Whether the offset matches the rank-2 closed form with `m = n - m0`.
    pub matches_closed_form: bool,
}

/// Compare the linearised hamiltonian on rank-`rank` wedges with a packed
/// colour-0 block against the rank-`rank - 1` effective hamiltonian at
/// coupling 1, shifted by `-(m0 - 1)/2` times the total momentum.
pub fn reduced_rank_check(n: usize, rank: usize, m0: usize) -> Result<RankReducedCheck, Error> {
    if rank < 2 {
        return Err(Error::InvalidInput("need rank at least 2".into()));
    }
    if m0 == 0 || m0 >= n {
        return Err(Error::InvalidInput("need 0 < m0 < n".into()));
    }
    let nstar = n - m0;
    // Available single-particle states for the non-zero colours: orbital
    // momentum in {0, ..., m0 - 1} and colour in {1, ..., rank - 1}.
    let options: Vec<(i64, u8)> = (0..m0 as i64)
        .flat_map(|kb| (1..rank as u8).map(move |a| (kb, a)))
        .collect();
    if options.len() < nstar {
        return Err(Error::InvalidInput(
            "not enough in-range states for the non-zero colours".into(),
        ));
    }
    let r = rank as i64;
    // Map a reduced (rank - 1) entry to its full-rank entry.
    let lift = |k: i64| -> i64 {
        let kb = k.div_euclid(r - 1);
        let a = k.rem_euclid(r - 1);
        r * kb + a + 1
    };
    let packed: Vec<i64> = (0..m0 as i64).map(|t| r * t).collect();
    let embed = |wr: &Wedge| -> (i64, Wedge) {
        let tuple: Vec<i64> = wr
            .k()
            .iter()
            .map(|&k| lift(k))
            .chain(packed.iter().cloned())
            .collect();
        normalize(&tuple, rank).expect("lifted entries never collide with the packed block")
    };
    let mut cases = 0usize;
    let mut embeds_exactly = true;
    let mut constant: Option<Rat> = None;
    let mut constant_consistent = true;
    let closed = ground_energy(n)
        - ratio(
            (nstar * (nstar + 1)) as i64 * (3 * n as i64 - 2 * nstar as i64 - 1),
            12,
        );
    for subset in subsets(options.len(), nstar) {
        // Reduced wedge over rank - 1 colours.
        let reduced_tuple: Vec<i64> = subset
            .iter()
            .map(|&idx| {
                let (kb, a) = options[idx - 1];
                (r - 1) * kb + (a - 1) as i64
            })
            .collect();
        let (_, wr0) = match normalize(&reduced_tuple, rank - 1) {
            Some(x) => x,
            None => unreachable!("options are distinct"),
        };
        let (se0, w0) = embed(&wr0);
        // Left side: the full linearised hamiltonian on the embedded wedge.
        let lhs = apply_linearized(&WedgeVector::from_wedge(&w0)).scale(&rat(se0));
        // Right side: the reduced effective hamiltonian at coupling 1 with the
        // momentum shift, embedded back into the full space.
        let mut red = apply_spin_eff_hamiltonian(&WedgeVector::from_wedge(&wr0), &Rat::one());
        let shift = ratio(m0 as i64 - 1, 2) * rat(wr0.momentum());
        red.add_wedge(&wr0, -shift);
        let mut rhs = WedgeVector::zero(n, rank);
        for (w, c) in red.terms() {
            let (se, wf) = embed(&w);
            rhs.add_wedge(&wf, c.clone() * rat(se));
        }
        // The difference must be a constant multiple of the input wedge.
        let diff = lhs.add(&rhs.scale(&rat(-1)));
        let mut cst: Option<Rat> = None;
        let mut clean = true;
        for (w, c) in diff.terms() {
            if w.k() == w0.k() {
                cst = Some(c.clone() * rat(se0));
            } else if !c.is_zero() {
                clean = false;
            }
        }
        if !clean {
            embeds_exactly = false;
        }
        let cst = cst.unwrap_or_else(Rat::zero);
        match &constant {
            None => constant = Some(cst),
            Some(c0) => {
                if *c0 != cst {
                    constant_consistent = false;
                }
            }
        }
        cases += 1;
    }
    let constant = constant.unwrap_or_else(Rat::zero);
    let matches_closed_form = constant_consistent && constant == closed;
    Ok(RankReducedCheck {
        n,
        rank,
        m0,
        cases,
        embeds_exactly,
        constant,
        constant_consistent,
        matches_closed_form,
    })
}

/// Result of the descendant degree probe.
pub struct DescendantProbe {
    /// Maximal per-variable degree of the frozen polynomial for each valid
    /// starting configuration.
    pub degrees: Vec<i64>,
    /// The number of lattice sites, for comparison against the degrees.
    pub site_count: i64,
}

/// Probe the per-variable degree of frozen descendant wedges.
///
/// Start from a rank-2 wedge with down momenta inside the staircase of the
/// `n - m` up entries, then flip the up entry with orbital momentum
/// `n - m - j` to a down spin, inserting it at position `pos` (1-based) of the
/// decreasing down momenta. The probe reports, for every valid starting
/// configuration, the maximal per-variable degree
/// `2m + 1 + (j - 1) + lambda_1` of the resulting frozen polynomial. The
/// degree equals `n` exactly when `pos = 1` and exceeds `n` otherwise, so
/// only descendants created at the top survive the evaluation as honest
/// polynomial data.
pub fn descendant_degree_probe(
    n: usize,
    m: usize,
    j: usize,
    pos: usize,
) -> Result<DescendantProbe, Error> {
    if m + 1 > n || j == 0 || j > n - m || pos == 0 || pos > m + 1 {
        return Err(Error::InvalidInput(
            "need m + 1 <= n, 1 <= j <= n - m and 1 <= pos <= m + 1".into(),
        ));
    }
    let v = (n - m - j) as i64;
    let mut degrees = Vec::new();
    for subset in subsets(n - m, m) {
        let kappa: Vec<i64> = subset.iter().rev().map(|&x| (x - 1) as i64).collect();
        if kappa.contains(&v) {
            continue;
        }
        // The flipped momentum must land at the requested position.
        let above_ok = pos == 1 || kappa[pos - 2] > v;
        let below_ok = pos == m + 1 || v > kappa[pos - 1];
        if !above_ok || !below_ok {
            continue;
        }
        let mut knew = kappa.clone();
        knew.insert(pos - 1, v);
        let lambda_1 = knew[0] - m as i64;
        degrees.push(2 * m as i64 + 1 + (j as i64 - 1) + lambda_1);
    }
    Ok(DescendantProbe {
        degrees,
        site_count: n as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_motifs;
    use crate::polyring::monomial_sym;

    /// Check that two spin vectors are proportional by one complex constant.
    fn proportional(a: &SpinVector, b: &SpinVector) -> bool {
        let (na, nb) = (a.norm(), b.norm());
        if na < 1e-12 || nb < 1e-12 {
            return na < 1e-12 && nb < 1e-12;
        }
        // <a, b> b / |b|^2 should reproduce a.
        let factor = b.inner(a) / Complex64::new(nb * nb, 0.0);
        let mut diff = a.clone();
        diff.add_assign(b, -factor);
        diff.norm() / na < 1e-9
    }

    #[test]
    fn wavefn_simple_motifs() {
        // Single magnon: motif (2) at n = 4 has wave function z^2.
        let motif = Motif::new(vec![2], 4, 2).unwrap();
        let ev = hs_eigenvector(&motif).unwrap();
        assert_eq!(ev.wavefn(), &LaurentPoly::monomial(vec![2], Rat::one()));
        // Two magnons: motif (1,3) at n = 4 gives (z1 - z2)^2 z1 z2.
        let motif = Motif::new(vec![1, 3], 4, 2).unwrap();
        let ev = hs_eigenvector(&motif).unwrap();
        let vars = [1, 2];
        let expect = &vandermonde(2, &vars).pow(2) * &monomial_sym(2, &vars, &[1, 1]);
        assert_eq!(ev.wavefn(), &expect);
        // Leading monomial of the wave function matches the motif.
        let lead = ev.wavefn().leading_term().unwrap().0.clone();
        assert_eq!(lead, vec![3, 1]);
    }

    #[test]
    fn eigenvector_residuals_small() {
        for n in 2..=6 {
            for motif in enumerate_motifs(n, 2) {
                let ev = hs_eigenvector(&motif).unwrap();
                let report = verify_eigenvector(&ev).unwrap();
                assert!(report.norm > 1e-6, "motif {:?}", motif.entries());
                for (what, r) in [
                    ("energy", report.energy_residual),
                    ("energy_minus", report.energy_minus_residual),
                    ("raising", report.raising_residual),
                    ("highest_weight", report.highest_weight_residual),
                    ("momentum", report.momentum_residual),
                ] {
                    assert!(
                        r < 1e-9,
                        "motif {:?} at n = {}: {} residual {}",
                        motif.entries(),
                        n,
                        what,
                        r
                    );
                }
                assert!(report.vanishes_at_zero);
            }
        }
    }

    #[test]
    fn frozen_wedge_matches_direct() {
        // A handful of rank-2 wedges at n = 4, including one with a
        // nontrivial up partition.
        for k in [
            vec![7, 4, 2, 0],
            vec![6, 5, 2, 1],
            vec![5, 4, 2, 0],
            vec![6, 4, 2, 0],
            vec![9, 5, 4, 2],
        ] {
            let w = Wedge::new(k.clone(), 2).unwrap();
            let assembled = frozen_wedge(&w).unwrap();
            let direct = frozen_wedge_direct(&w);
            assert!(
                proportional(&assembled, &direct),
                "wedge {:?}: assembly and direct evaluation disagree",
                k
            );
        }
    }

    #[test]
    fn frozen_highest_weight_wedge_is_eigenvector() {
        // Wedges whose down Schur factor is a single monomial or e_M freeze
        // directly onto motif eigenvectors.
        // n = 4: down momenta (1,0) inside the staircase (1,0) -> motif (1,3).
        let w = Wedge::new(vec![3, 2, 1, 0], 2).unwrap();
        let frozen = frozen_wedge(&w).unwrap();
        let motif = Motif::new(vec![1, 3], 4, 2).unwrap();
        let ev = hs_eigenvector(&motif).unwrap();
        assert!(proportional(&frozen, ev.vector()));
        // n = 5: single magnon with orbital momentum 2 -> motif (3).
        let w = Wedge::new(vec![6, 5, 4, 2, 0], 2).unwrap();
        let frozen = frozen_wedge(&w).unwrap();
        let motif = Motif::new(vec![3], 5, 2).unwrap();
        let ev = hs_eigenvector(&motif).unwrap();
        assert!(proportional(&frozen, ev.vector()));
    }

    #[test]
    fn identity_suite_small_lattices() {
        for n in 2..=9 {
            for check in evaluation_identity_suite(n, 7) {
                assert!(
                    check.residual < 1e-10,
                    "identity {} fails at n = {}: residual {}",
                    check.name,
                    n,
                    check.residual
                );
            }
        }
    }

    #[test]
    fn reduced_hamiltonian_rank_two() {
        for (n, m) in [(4, 1), (4, 2), (5, 2), (6, 2), (6, 3)] {
            let report = reduced_hamiltonian_check(n, m).unwrap();
            assert!(report.cases > 0);
            assert!(report.offdiag_exact, "n = {}, m = {}", n, m);
            assert!(report.constant_consistent, "n = {}, m = {}", n, m);
            assert!(report.matches_closed_form, "n = {}, m = {}", n, m);
        }
    }

    #[test]
    fn reduced_hamiltonian_higher_rank() {
        for (n, rank, m0) in [(4, 3, 2), (5, 3, 2), (5, 3, 3), (4, 4, 2)] {
            let report = reduced_rank_check(n, rank, m0).unwrap();
            assert!(report.cases > 0);
            assert!(
                report.embeds_exactly,
                "n = {}, rank = {}, m0 = {}",
                n, rank, m0
            );
            assert!(report.constant_consistent);
            assert!(report.matches_closed_form);
        }
    }

    #[test]
    fn rank_two_reduction_agrees_between_routes() {
        // The wedge-algebra route at rank 2 must find the same constant as
        // the polynomial route.
        let poly = reduced_hamiltonian_check(6, 2).unwrap();
        let wedge = reduced_rank_check(6, 2, 4).unwrap();
        assert_eq!(poly.constant, wedge.constant);
    }

    #[test]
    fn descendant_degrees() {
        for (n, m, j) in [(8, 2, 1), (8, 2, 3), (9, 3, 2)] {
            let top = descendant_degree_probe(n, m, j, 1).unwrap();
            assert!(!top.degrees.is_empty());
            assert!(top.degrees.iter().all(|&d| d == top.site_count));
            for pos in 2..=m + 1 {
                let probe = descendant_degree_probe(n, m, j, pos).unwrap();
                assert!(probe.degrees.iter().all(|&d| d > probe.site_count));
            }
        }
    }
}
