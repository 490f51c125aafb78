//! Cherednik-Dunkl operators, nonsymmetric / symmetric / antisymmetric Jack
//! polynomials, and the effective Calogero-Sutherland Hamiltonians acting on
//! Laurent polynomials, all in exact rational arithmetic.
//!
//! The coupling enters either as `alpha` (the Jack parameter) or as
//! `beta = 1/alpha` (the physical coupling); both are rationals.

use crate::combinatorics::{
    dominance_compare, dunkl_eigenvalue, is_partition, is_strict_partition, sigma_rank,
    sorted_desc, weight, Dominance,
};
use crate::polyring::{symmetrize, LaurentPoly};
use crate::{rat, ratio, Error, Rat};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Parameters for the Dunkl/Jack layer: number of variables and `alpha > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DunklConfig {
    nvars: usize,
    alpha: Rat,
}

impl DunklConfig {
    pub fn new(nvars: usize, alpha: Rat) -> Result<Self, Error> {
        if nvars == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        if alpha <= Rat::zero() {
            return Err(Error::InvalidInput(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(DunklConfig { nvars, alpha })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// Physical coupling `beta = 1/alpha`.
    pub fn beta(&self) -> Rat {
        Rat::one() / &self.alpha
    }
}

/// `(1 - s_ij) z^e / (z_i - z_j)` for a single monomial, as a list of
/// (exponent vector, +-1) terms. Valid for negative exponents as well.
fn divided_diff_monomial(e: &[i64], i: usize, j: usize) -> Vec<(Vec<i64>, i64)> {
    let p = e[i - 1];
    let q = e[j - 1];
    if p == q {
        return Vec::new();
    }
    let (lo, d, sgn) = if p > q { (q, p - q, 1) } else { (p, q - p, -1) };
    (0..d)
        .map(|t| {
            let mut e2 = e.to_vec();
            e2[i - 1] = lo + t;
            e2[j - 1] = lo + d - 1 - t;
            (e2, sgn)
        })
        .collect()
}

/// Apply the `j`-th Dunkl operator (1-based) to `f`:
/// `alpha z_j d_j - z_j sum_{i<j} (1-s_ij)/(z_i-z_j)
///  + sum_{k>j} z_k (1-s_jk)/(z_j-z_k) + (N-2j+1)/2`.
pub fn apply_dunkl(cfg: &DunklConfig, j: usize, f: &LaurentPoly) -> LaurentPoly {
    let n = cfg.nvars;
    assert!(1 <= j && j <= n, "operator index out of range");
    assert_eq!(f.nvars(), n);
    let mut out = f.z_deriv(j).scale(&cfg.alpha);
    let half = ratio(n as i64 - 2 * j as i64 + 1, 2);
    for (e, c) in f.terms() {
        out.add_term(e.clone(), c * &half);
        for i in 1..j {
            for (mut e2, sgn) in divided_diff_monomial(e, i, j) {
                e2[j - 1] += 1;
                out.add_term(e2, c * rat(-sgn));
            }
        }
        for k in j + 1..=n {
            for (mut e2, sgn) in divided_diff_monomial(e, j, k) {
                e2[k - 1] += 1;
                out.add_term(e2, c * rat(sgn));
            }
        }
    }
    out
}

/// Coefficients of the exchange relation
/// `s_i E_lambda = a E_lambda + b E_{s_i lambda}` for the adjacent
/// transposition `s_i = s_{i,i+1}`:
/// `a = 1/(delta_i - delta_{i+1})`, and `b = 1 - a^2`, `0`, or `1` according
/// to whether `lambda_i` is greater, equal, or smaller than `lambda_{i+1}`.
pub fn exchange_coeffs(cfg: &DunklConfig, lambda: &[i64], i: usize) -> (Rat, Rat) {
    assert!(1 <= i && i < lambda.len());
    let di = dunkl_eigenvalue(lambda, i, &cfg.alpha);
    let dj = dunkl_eigenvalue(lambda, i + 1, &cfg.alpha);
    let a = Rat::one() / (di - dj);
    let b = match lambda[i - 1].cmp(&lambda[i]) {
        std::cmp::Ordering::Greater => Rat::one() - &a * &a,
        std::cmp::Ordering::Equal => Rat::zero(),
        std::cmp::Ordering::Less => Rat::one(),
    };
    (a, b)
}

/// All compositions weakly below `lambda` in the refined dominance order
/// (including `lambda` itself), i.e. the monomial support allowed for the
/// nonsymmetric Jack polynomial.
fn dominance_lower_span(lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = lambda.len();
    let lam_sorted = sorted_desc(lambda);
    let w = weight(lambda);
    let hi = lam_sorted[0];
    let lo = lam_sorted[n - 1];
    // Enumerate partitions dominated by lam_sorted.
    let mut partitions: Vec<Vec<i64>> = Vec::new();
    let mut cur: Vec<i64> = Vec::with_capacity(n);
    fn rec(
        cur: &mut Vec<i64>,
        n: usize,
        hi: i64,
        lo: i64,
        w: i64,
        lam_prefix: &[i64],
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = cur.len();
        if k == n {
            if cur.iter().sum::<i64>() == w {
                out.push(cur.clone());
            }
            return;
        }
        let sum: i64 = cur.iter().sum();
        let cap = cur.last().copied().unwrap_or(hi).min(lam_prefix[k] - sum);
        for next in (lo..=cap).rev() {
            // Remaining entries are at most `next` and at least `lo`.
            let rest = (n - k - 1) as i64;
            if sum + next + rest * next < w || sum + next + rest * lo > w {
                continue;
            }
            cur.push(next);
            rec(cur, n, hi, lo, w, lam_prefix, out);
            cur.pop();
        }
    }
    // Prefix sums of lam_sorted bound the prefix sums of any dominated partition.
    let mut lam_prefix = Vec::with_capacity(n);
    let mut acc = 0i64;
    for &x in &lam_sorted {
        acc += x;
        lam_prefix.push(acc);
    }
    rec(&mut cur, n, hi, lo, w, &lam_prefix, &mut partitions);

    let mut span = Vec::new();
    for part in partitions {
        for arr in multiset_permutations(&part) {
            if part == lam_sorted {
                // Tie-broken by composition dominance.
                match dominance_compare(&arr, lambda).expect("equal lengths") {
                    Dominance::Less | Dominance::Equal => span.push(arr),
                    _ => {}
                }
            } else {
                span.push(arr);
            }
        }
    }
    span
}

/// All distinct rearrangements of `parts`.
fn multiset_permutations(parts: &[i64]) -> Vec<Vec<i64>> {
    let mut items = parts.to_vec();
    items.sort_unstable();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    let mut used = vec![false; parts.len()];
    fn rec(
        items: &[i64],
        used: &mut [bool],
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if cur.len() == items.len() {
            out.push(cur.clone());
            return;
        }
        let mut prev: Option<i64> = None;
        for i in 0..items.len() {
            if used[i] || prev == Some(items[i]) {
                continue;
            }
            prev = Some(items[i]);
            used[i] = true;
            cur.push(items[i]);
            rec(items, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&items, &mut used, &mut cur, &mut out);
    out
}

/// Nonsymmetric Jack polynomial `E_lambda`: the unique simultaneous Dunkl
/// eigenfunction of the form `z^lambda + (dominance-lower terms)`.
///
/// Built by a triangular solve over the dominance-lower monomial span and
/// certified afterwards against the full eigenvalue equations.
pub fn nonsym_jack(cfg: &DunklConfig, lambda: &[i64]) -> Result<LaurentPoly, Error> {
    let n = cfg.nvars;
    if lambda.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: lambda.len(),
        });
    }
    let mut span = dominance_lower_span(lambda);
    // Linear extension of refined dominance: sort descending by (prefix sums
    // of the decreasing rearrangement, prefix sums of the composition).
    let key = |c: &[i64]| -> (Vec<i64>, Vec<i64>) {
        let prefix = |v: &[i64]| {
            let mut acc = 0;
            v.iter().map(|x| {
                acc += x;
                acc
            }).collect::<Vec<i64>>()
        };
        (prefix(&sorted_desc(c)), prefix(c))
    };
    span.sort_by(|a, b| key(b).cmp(&key(a)));
    debug_assert_eq!(span[0], lambda);

    let target: Vec<Rat> = (1..=n)
        .map(|i| dunkl_eigenvalue(lambda, i, &cfg.alpha))
        .collect();
    let mut result = LaurentPoly::monomial(lambda.to_vec(), Rat::one());
    // Running images G_i = d_i applied to the part of E built so far.
    let mut images: Vec<LaurentPoly> =
        (1..=n).map(|i| apply_dunkl(cfg, i, &result)).collect();
    for mu in span.iter().skip(1) {
        let mut coeff: Option<Rat> = None;
        for i in 1..=n {
            let d_mu = dunkl_eigenvalue(mu, i, &cfg.alpha);
            if d_mu != target[i - 1] {
                coeff = Some(images[i - 1].coeff(mu) / (&target[i - 1] - &d_mu));
                break;
            }
        }
        let c = coeff.ok_or_else(|| {
            Error::SingularSystem(format!(
                "eigenvalues do not separate {mu:?} from {lambda:?} at alpha = {}",
                cfg.alpha
            ))
        })?;
        if c.is_zero() {
            continue;
        }
        let mono = LaurentPoly::monomial(mu.clone(), c);
        for i in 1..=n {
            images[i - 1] = &images[i - 1] + &apply_dunkl(cfg, i, &mono);
        }
        result = &result + &mono;
    }
    // Certify the full joint eigenvalue equations.
    for i in 1..=n {
        if images[i - 1] != result.scale(&target[i - 1]) {
            return Err(Error::SingularSystem(format!(
                "joint eigenvalue certification failed for operator {i} at lambda = {lambda:?}"
            )));
        }
    }
    Ok(result)
}

/// Symmetric Jack polynomial `P_lambda`, normalised monic on the dominant
/// monomial (coefficient of `m_lambda` is 1).
pub fn sym_jack(cfg: &DunklConfig, lambda: &[i64]) -> Result<LaurentPoly, Error> {
    if !is_partition(lambda) {
        return Err(Error::InvalidInput(format!(
            "symmetric Jack label must be a partition: {lambda:?}"
        )));
    }
    let e = nonsym_jack(cfg, lambda)?;
    let sym = symmetrize(&e, &[cfg.nvars], false);
    let lead = sym.coeff(lambda);
    if lead.is_zero() {
        return Err(Error::SingularSystem(format!(
            "symmetrisation annihilated E_{lambda:?}"
        )));
    }
    Ok(sym.scale(&(Rat::one() / lead)))
}

/// Antisymmetric Jack polynomial, normalised so the coefficient of
/// `z^k` is 1; `k` must be a strict partition.
pub fn antisym_jack(cfg: &DunklConfig, k: &[i64]) -> Result<LaurentPoly, Error> {
    if !is_strict_partition(k) {
        return Err(Error::InvalidInput(format!(
            "antisymmetric Jack label must be a strict partition: {k:?}"
        )));
    }
    let e = nonsym_jack(cfg, k)?;
    let anti = symmetrize(&e, &[cfg.nvars], true);
    let lead = anti.coeff(k);
    if lead.is_zero() {
        return Err(Error::SingularSystem(format!(
            "antisymmetrisation annihilated E_{k:?}"
        )));
    }
    Ok(anti.scale(&(Rat::one() / lead)))
}

/// Memoising table for nonsymmetric Jack polynomials at a fixed configuration.
pub struct JackCache {
    cfg: DunklConfig,
    nonsym: HashMap<Vec<i64>, LaurentPoly>,
}

impl JackCache {
    pub fn new(cfg: DunklConfig) -> Self {
        JackCache {
            cfg,
            nonsym: HashMap::new(),
        }
    }

    pub fn cfg(&self) -> &DunklConfig {
        &self.cfg
    }

    pub fn nonsym(&mut self, lambda: &[i64]) -> Result<LaurentPoly, Error> {
        if let Some(p) = self.nonsym.get(lambda) {
            return Ok(p.clone());
        }
        let p = nonsym_jack(&self.cfg, lambda)?;
        self.nonsym.insert(lambda.to_vec(), p.clone());
        Ok(p)
    }

    /// Insert a precomputed polynomial (e.g. read from a file cache).
    pub fn insert_nonsym(&mut self, lambda: Vec<i64>, poly: LaurentPoly) {
        self.nonsym.insert(lambda, poly);
    }

    pub fn contains(&self, lambda: &[i64]) -> bool {
        self.nonsym.contains_key(lambda)
    }
}

/// Particle statistics of the scalar effective Hamiltonian's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

/// Apply the gauged effective Calogero-Sutherland Hamiltonian
/// `(1/2) sum (z_i d_i)^2
///  + (beta/2) sum_{i<j} (z_i+z_j)/(z_i-z_j) (z_i d_i - z_j d_j)
///  + beta sum_{i<j} z_i z_j / ((z_i-z_j)(z_j-z_i)) (1 - s_ij)`
/// to an arbitrary Laurent polynomial. Each pair term is evaluated exactly by
/// splitting `f` into its symmetric and antisymmetric parts in `z_i, z_j`;
/// the apparent poles cancel pairwise.
pub fn apply_effective_hamiltonian(f: &LaurentPoly, beta: &Rat) -> LaurentPoly {
    let n = f.nvars();
    let mut out = LaurentPoly::zero(n);
    for i in 1..=n {
        out = &out + &f.z_deriv(i).z_deriv(i).scale(&ratio(1, 2));
    }
    let halfbeta = beta * ratio(1, 2);
    for i in 1..=n {
        for j in i + 1..=n {
            let swapped = f.swap_vars(i, j);
            let fs = (f + &swapped).scale(&ratio(1, 2));
            let fa = (f - &swapped).scale(&ratio(1, 2));
            let zi = LaurentPoly::var(n, i);
            let zj = LaurentPoly::var(n, j);
            let diff = &zi - &zj;
            let sum = &zi + &zj;
            if !fs.is_zero() {
                // (z_i+z_j)/(z_i-z_j) (z_i d_i - z_j d_j) on the symmetric part:
                // the derivative is antisymmetric in i,j, hence divisible.
                let g = &fs.z_deriv(i) - &fs.z_deriv(j);
                if !g.is_zero() {
                    let h = g
                        .divide_exact(&diff)
                        .expect("antisymmetric pair derivative must divide");
                    out = &out + &(&sum * &h).scale(&halfbeta);
                }
            }
            if !fa.is_zero() {
                // Write f_a = (z_i - z_j) h; then the pair term collapses to
                // (beta/2) [ (z_i - z_j) h + (z_i+z_j)(z_i d_i - z_j d_j) h ].
                let h = fa
                    .divide_exact(&diff)
                    .expect("antisymmetric part must divide by z_i - z_j");
                let dh = &h.z_deriv(i) - &h.z_deriv(j);
                let term = &(&diff * &h) + &(&sum * &dh);
                out = &out + &term.scale(&halfbeta);
            }
        }
    }
    out
}

/// Check that `f` lies in the requested symmetry sector (adjacent
/// transpositions suffice), then apply the effective Hamiltonian.
pub fn scalar_eff_hamiltonian(
    f: &LaurentPoly,
    beta: &Rat,
    stat: Statistics,
) -> Result<LaurentPoly, Error> {
    let n = f.nvars();
    for i in 1..n {
        let swapped = f.swap_vars(i, i + 1);
        let ok = match stat {
            Statistics::Bosonic => swapped == *f,
            Statistics::Fermionic => swapped == -f,
        };
        if !ok {
            return Err(Error::WrongSector(format!(
                "input is not {} in z_{i}, z_{}",
                match stat {
                    Statistics::Bosonic => "symmetric",
                    Statistics::Fermionic => "antisymmetric",
                },
                i + 1
            )));
        }
    }
    Ok(apply_effective_hamiltonian(f, beta))
}

/// Eigenvalue of the effective scalar Hamiltonian on the Jack polynomial
/// labelled by the composition `lambda`:
/// `(1/2) sum lambda_i^2 + (beta/2) sum (N - 2 sigma(i) + 1) lambda_i`.
///
/// Polynomial in `beta`, so also valid at `beta = 0`.
pub fn scalar_energy(lambda: &[i64], beta: &Rat) -> Rat {
    let n = lambda.len() as i64;
    let mut quad = Rat::zero();
    let mut lin = Rat::zero();
    for (idx, &l) in lambda.iter().enumerate() {
        quad += ratio(l * l, 2);
        let s = sigma_rank(lambda, idx + 1) as i64;
        lin += rat((n - 2 * s + 1) * l);
    }
    quad + beta * ratio(1, 2) * lin
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ground_energy;
    use crate::polyring::{schur, vandermonde};

    fn cfg(n: usize, num: i64, den: i64) -> DunklConfig {
        DunklConfig::new(n, ratio(num, den)).unwrap()
    }

    #[test]
    fn dunkl_on_linear_monomials() {
        // N = 2, alpha = a: d_1 z_1 = (a + 1/2) z_1 + z_2 and d_1 z_2 = -z_2/2.
        let c = cfg(2, 3, 7);
        let z1 = LaurentPoly::var(2, 1);
        let z2 = LaurentPoly::var(2, 2);
        let expect = &z1.scale(&(c.alpha().clone() + ratio(1, 2))) + &z2;
        assert_eq!(apply_dunkl(&c, 1, &z1), expect);
        assert_eq!(apply_dunkl(&c, 1, &z2), z2.scale(&ratio(-1, 2)));
    }

    #[test]
    fn dunkl_operators_commute() {
        // [d_i, d_j] = 0 on a spanning sample of monomials, N = 3 and 4.
        for n in [3usize, 4] {
            let c = cfg(n, 2, 3);
            let samples: Vec<Vec<i64>> = match n {
                3 => vec![vec![2, 0, 1], vec![0, 3, 1], vec![-1, 2, 0]],
                _ => vec![vec![1, 0, 2, 0], vec![0, 0, 3, 1]],
            };
            for e in samples {
                let f = LaurentPoly::monomial(e.clone(), Rat::one());
                for i in 1..=n {
                    for j in i + 1..=n {
                        let a = apply_dunkl(&c, i, &apply_dunkl(&c, j, &f));
                        let b = apply_dunkl(&c, j, &apply_dunkl(&c, i, &f));
                        assert_eq!(a, b, "[d_{i}, d_{j}] on {e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn dunkl_degenerate_affine_relations() {
        // d_i s_i = s_i d_{i+1} + 1 and d_i s_jk = s_jk d_i for i not in {j,k}.
        let n = 3;
        let c = cfg(n, 5, 2);
        let samples = vec![vec![2, 1, 0], vec![0, 0, 2], vec![1, 3, -1]];
        for e in samples {
            let f = LaurentPoly::monomial(e.clone(), ratio(2, 5));
            for i in 1..n {
                let lhs = apply_dunkl(&c, i, &f.swap_vars(i, i + 1));
                let rhs = &apply_dunkl(&c, i + 1, &f).swap_vars(i, i + 1) + &f;
                assert_eq!(lhs, rhs, "affine relation at i = {i} on {e:?}");
            }
            // d_3 commutes with s_12.
            let lhs = apply_dunkl(&c, 3, &f.swap_vars(1, 2));
            let rhs = apply_dunkl(&c, 3, &f).swap_vars(1, 2);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn nonsym_jack_first_cases() {
        // E_(1,0) = z1 + z2/(1+alpha).
        let c = cfg(2, 1, 2);
        let e = nonsym_jack(&c, &[1, 0]).unwrap();
        let mut expect = LaurentPoly::var(2, 1);
        expect.add_term(vec![0, 1], Rat::one() / (Rat::one() + c.alpha()));
        assert_eq!(e, expect);
        // E_(0,1) = z2 (already antidominant).
        assert_eq!(nonsym_jack(&c, &[0, 1]).unwrap(), LaurentPoly::var(2, 2));
        // Stability: E_(2,1) = z1 z2 E_(1,0).
        let shifted = nonsym_jack(&c, &[2, 1]).unwrap();
        let z12 = LaurentPoly::monomial(vec![1, 1], Rat::one());
        assert_eq!(shifted, &z12 * &e);
        // Stability with negative entries.
        let down = nonsym_jack(&c, &[0, -1]).unwrap();
        let inv = LaurentPoly::monomial(vec![-1, -1], Rat::one());
        assert_eq!(down, &inv * &e);
    }

    #[test]
    fn nonsym_jack_eigen_certified_n3() {
        let c = cfg(3, 3, 4);
        for lam in [vec![2, 0, 1], vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]] {
            let e = nonsym_jack(&c, &lam).unwrap();
            for i in 1..=3 {
                let img = apply_dunkl(&c, i, &e);
                let ev = dunkl_eigenvalue(&lam, i, c.alpha());
                assert_eq!(img, e.scale(&ev), "d_{i} E_{lam:?}");
            }
            // Leading coefficient is 1.
            assert_eq!(e.coeff(&lam), Rat::one());
        }
    }

    #[test]
    fn exchange_relation() {
        let c = cfg(3, 2, 5);
        for lam in [vec![2, 0, 1], vec![1, 3, 0]] {
            for i in 1..3usize {
                let e = nonsym_jack(&c, &lam).unwrap();
                let (a, b) = exchange_coeffs(&c, &lam, i);
                let mut swapped_label = lam.clone();
                swapped_label.swap(i - 1, i);
                let lhs = e.swap_vars(i, i + 1);
                let rhs = if b.is_zero() {
                    e.scale(&a)
                } else {
                    let e2 = nonsym_jack(&c, &swapped_label).unwrap();
                    &e.scale(&a) + &e2.scale(&b)
                };
                assert_eq!(lhs, rhs, "exchange at i = {i}, lambda = {lam:?}");
            }
        }
    }

    #[test]
    fn sym_jack_special_parameter_values() {
        let vars = [1usize, 2, 3];
        for lam in [vec![2, 1, 0], vec![3, 1, 0], vec![2, 2, 0]] {
            // alpha = 1 gives the Schur polynomial.
            let c = cfg(3, 1, 1);
            assert_eq!(sym_jack(&c, &lam).unwrap(), schur(3, &vars, &lam));
            // Generic alpha: monic on the dominant monomial and fully symmetric.
            let c2 = cfg(3, 7, 3);
            let p = sym_jack(&c2, &lam).unwrap();
            assert_eq!(p.coeff(&lam), Rat::one());
            // Symmetric in all variables.
            assert_eq!(p.swap_vars(1, 3), p);
        }
    }

    #[test]
    fn sym_jack_energy() {
        // Effective bosonic Hamiltonian eigenvalue on P_lambda.
        for (num, den) in [(1i64, 1i64), (1, 2), (3, 7)] {
            let c = cfg(3, num, den);
            let beta = c.beta();
            for lam in [vec![2, 0, 0], vec![2, 1, 0], vec![1, 1, 1]] {
                let p = sym_jack(&c, &lam).unwrap();
                let hp = scalar_eff_hamiltonian(&p, &beta, Statistics::Bosonic).unwrap();
                assert_eq!(hp, p.scale(&scalar_energy(&lam, &beta)), "lambda = {lam:?}");
            }
        }
        // N = 2, lambda = (2,0): E = 2 + beta.
        let c = cfg(2, 1, 2);
        assert_eq!(scalar_energy(&[2, 0], &c.beta()), rat(2) + c.beta());
    }

    #[test]
    fn antisym_jack_energy_and_shift() {
        let c = cfg(3, 1, 2); // alpha = 1/2, beta = 2
        let beta = c.beta();
        let k = [3i64, 1, 0];
        let a = antisym_jack(&c, &k).unwrap();
        assert_eq!(a.swap_vars(1, 2), -&a);
        let ha = scalar_eff_hamiltonian(&a, &beta, Statistics::Fermionic).unwrap();
        assert_eq!(ha, a.scale(&scalar_energy(&k, &beta)));
        // Parameter shift: antisym at alpha relates to sym at alpha' = alpha/(1+alpha)
        // via division by the Vandermonde, with label k - staircase.
        let lam: Vec<i64> = vec![3 - 2, 1 - 1, 0]; // k minus (2,1,0)
        let alpha2 = c.alpha() / (Rat::one() + c.alpha());
        let c2 = DunklConfig::new(3, alpha2).unwrap();
        let p = sym_jack(&c2, &lam).unwrap();
        let quotient = a.divide_exact(&vandermonde(3, &[1, 2, 3])).unwrap();
        assert_eq!(quotient, p);
    }

    #[test]
    fn effective_hamiltonian_ground_constant() {
        // On the Vandermonde (fermionic ground state) the eigenvalue equals
        // scalar_energy(staircase).
        let n = 4;
        let d = vandermonde(n, &[1, 2, 3, 4]);
        let beta = ratio(2, 3);
        let hd = scalar_eff_hamiltonian(&d, &beta, Statistics::Fermionic).unwrap();
        let stair = [3i64, 2, 1, 0];
        assert_eq!(hd, d.scale(&scalar_energy(&stair, &beta)));
        // scalar_energy(staircase, beta): quadratic part n(n-1)(2n-1)/12 plus
        // beta times the ground constant.
        for n in 2..=6usize {
            let stair: Vec<i64> = (0..n).map(|j| (n - 1 - j) as i64).collect();
            let m = n as i64;
            assert_eq!(
                scalar_energy(&stair, &beta),
                ratio(m * (m - 1) * (2 * m - 1), 12) + &beta * ground_energy(n)
            );
        }
    }

    #[test]
    fn wrong_sector_rejected() {
        let f = LaurentPoly::var(2, 1);
        assert!(scalar_eff_hamiltonian(&f, &rat(1), Statistics::Bosonic).is_err());
        assert!(scalar_eff_hamiltonian(&f, &rat(1), Statistics::Fermionic).is_err());
    }

    #[test]
    fn jack_cache_round_trip() {
        let mut cache = JackCache::new(cfg(2, 1, 2));
        let a = cache.nonsym(&[1, 0]).unwrap();
        assert!(cache.contains(&[1, 0]));
        let b = cache.nonsym(&[1, 0]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn alpha_must_be_positive() {
        assert!(DunklConfig::new(2, rat(0)).is_err());
        assert!(DunklConfig::new(2, rat(-1)).is_err());
        assert!(DunklConfig::new(0, rat(1)).is_err());
    }
}
