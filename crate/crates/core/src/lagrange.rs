//! On-shell identities at roots of unity.
//!
//! On the space of polynomials of per-variable degree below the lattice size,
//! Euler derivatives evaluated at roots of unity can be replaced by weighted
//! sums of variable substitutions (Lagrange interpolation on the lattice).
//! This module implements both routes for the first and second derivative,
//! the resulting M-particle difference equation for spin-chain wave
//! functions, and the operator route that identifies its energy with a scalar
//! Calogero-Sutherland eigenvalue.

use num_complex::Complex64;
use num_traits::Zero;

use crate::polyring::{root_of_unity, LaurentPoly};
use crate::spinchain::coupling;
use crate::{Error, Rat};

/// Whether every variable of `f` appears with exponents in `0..n` only; the
/// replacement identities hold exactly on this space.
pub fn degree_in_range(f: &LaurentPoly, n: usize) -> bool {
    (1..=f.nvars()).all(|i| f.min_exponent(i) >= 0 && f.max_exponent(i) < n as i64)
}

/// Evaluation points `omega^1, ..., omega^n` for `f.nvars() == n`.
fn lattice_points(n: usize) -> Vec<Complex64> {
    (1..=n).map(|j| root_of_unity(n, j as i64)).collect()
}

/// Evaluate `z_i d/dz_i f` at roots of unity two ways: directly, and through
/// the replacement identity
/// `z_i d_i = sum_{j != i} z_j/(z_i - z_j) r_ij + (n - 1)/2`
/// where `r_ij` substitutes `z_i := z_j` before evaluation. The two agree
/// exactly when `f` has per-variable degree in `0..n` (see
/// [`degree_in_range`]); outside that space the routes disagree.
pub fn onshell_derivative(f: &LaurentPoly, i: usize, n: usize) -> (Complex64, Complex64) {
    assert_eq!(f.nvars(), n, "f must live in the n-variable lattice ring");
    let pts = lattice_points(n);
    let direct = f.z_deriv(i).eval_points(&pts);
    let mut replaced = f.eval_points(&pts) * ((n - 1) as f64 / 2.0);
    for j in 1..=n {
        if j == i {
            continue;
        }
        let weight = pts[j - 1] / (pts[i - 1] - pts[j - 1]);
        replaced += weight * f.replace_var(i, j).eval_points(&pts);
    }
    (direct, replaced)
}

/// Evaluate `(z_i d/dz_i)^2 f` at roots of unity two ways: directly, and via
/// `(z_i d_i)^2 = 2 sum_{j != i} z_i z_j/(z_ij z_ji) r_ij + n z_i d_i - (n^2 - 1)/6`
/// with the inner Euler derivative also taken through its replacement form.
pub fn onshell_second_derivative(f: &LaurentPoly, i: usize, n: usize) -> (Complex64, Complex64) {
    assert_eq!(f.nvars(), n, "f must live in the n-variable lattice ring");
    let pts = lattice_points(n);
    let direct = f.z_deriv(i).z_deriv(i).eval_points(&pts);
    let (_, euler) = onshell_derivative(f, i, n);
    let mut replaced = euler * n as f64 - f.eval_points(&pts) * ((n * n - 1) as f64 / 6.0);
    for j in 1..=n {
        if j == i {
            continue;
        }
        let zij = pts[i - 1] - pts[j - 1];
        let weight = pts[i - 1] * pts[j - 1] / (zij * (-zij));
        replaced += 2.0 * weight * f.replace_var(i, j).eval_points(&pts);
    }
    (direct, replaced)
}

/// Residual report for the M-particle difference equation.
pub struct DifferenceReport {
    /// Number of position tuples checked.
    pub tuples: usize,
    /// Largest wave-function magnitude encountered (used as the scale).
    pub scale: f64,
    /// Maximal residual of the difference equation, relative to the scale.
    pub max_residual: f64,
}

/// Check the M-particle difference equation for a symmetric wave function.
///
/// `psi` is a symmetric polynomial in `M = psi.nvars()` variables that
/// vanishes whenever two arguments coincide; the wave function on the
/// `n`-site chain is `Psi(i_1, ..., i_M) = psi(omega^{i_1}, ..., omega^{i_M})`.
/// For every increasing tuple the check compares
/// `sum_m sum_{j not in i} V(i_m - j) Psi(i with i_m := j)` against
/// `(energy + M (n^2 - 1)/12 - sum_{m != m'} V(i_m - i_m')) Psi(i)`,
/// where `V(d) = 1/(4 sin^2(pi d / n))`. With `mu` the motif of the state,
/// the equation holds for `energy = -1/2 sum_m mu_m (n - mu_m)`.
pub fn difference_equation_residual(
    psi: &LaurentPoly,
    energy: f64,
    n: usize,
) -> Result<DifferenceReport, Error> {
    let m = psi.nvars();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(
            "need 1 <= psi.nvars() <= n".into(),
        ));
    }
    for i in 1..m {
        if &psi.swap_vars(i, i + 1) != psi {
            return Err(Error::WrongSector(
                "wave function must be symmetric".into(),
            ));
        }
    }
    let point = |site: usize| root_of_unity(n, site as i64);
    let vsum: f64 = (1..n as i64).map(|d| coupling(n, d)).sum();
    let mut tuples = 0usize;
    let mut scale = 0f64;
    let mut worst = 0f64;
    let mut sites: Vec<usize> = (1..=m).collect();
    loop {
        let pts: Vec<Complex64> = sites.iter().map(|&s| point(s)).collect();
        let value = psi.eval_points(&pts);
        scale = scale.max(value.norm());
        let mut lhs = Complex64::zero();
        for slot in 0..m {
            for j in 1..=n {
                if sites.contains(&j) {
                    continue;
                }
                let mut moved = pts.clone();
                moved[slot] = point(j);
                lhs += coupling(n, sites[slot] as i64 - j as i64) * psi.eval_points(&moved);
            }
        }
        let mut pair = 0f64;
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    pair += coupling(n, sites[a] as i64 - sites[b] as i64);
                }
            }
        }
        let rhs = (energy + m as f64 * vsum - pair) * value;
        worst = worst.max((lhs - rhs).norm());
        tuples += 1;
        // Next increasing tuple.
        let mut i = m;
        loop {
            if i == 0 {
                let max_residual = worst / scale.max(1.0);
                return Ok(DifferenceReport {
                    tuples,
                    scale,
                    max_residual,
                });
            }
            i -= 1;
            if sites[i] != n - m + i + 1 {
                break;
            }
        }
        sites[i] += 1;
        for j in i + 1..m {
            sites[j] = sites[j - 1] + 1;
        }
    }
}

/// Result of the operator route for the difference-equation energy.
pub struct ConnectionReport {
    /// The common eigenvalue extracted from the operator route.
    pub energy: f64,
    /// Maximal deviation of the per-tuple ratio from the common eigenvalue.
    pub max_deviation: f64,
}

/// Identify the difference-equation energy through the scalar operator
/// `1/2 sum_m (z_m d_m)^2 - 2 sum_{m<m'} z_m z_m' / (z_m - z_m')^2 - n/2 sum_m z_m d_m`
/// acting on `psi` (an M-variable symmetric polynomial divisible by the
/// squared Vandermonde). The pair terms are exact polynomial divisions, and
/// the image is evaluated on increasing site tuples; for an eigenfunction the
/// ratio to `psi` is the same constant on every tuple where `psi` does not
/// vanish, and equals the energy of the difference equation.
pub fn cs_connection_check(psi: &LaurentPoly, n: usize) -> Result<ConnectionReport, Error> {
    let m = psi.nvars();
    if m == 0 || m > n {
        return Err(Error::InvalidInput(
            "need 1 <= psi.nvars() <= n".into(),
        ));
    }
    let half = crate::ratio(1, 2);
    let mut image = LaurentPoly::zero(m);
    for i in 1..=m {
        image = &image + &psi.z_deriv(i).z_deriv(i).scale(&half);
    }
    image = &image - &psi.total_momentum().scale(&crate::ratio(n as i64, 2));
    for a in 1..=m {
        for b in a + 1..=m {
            let diff = &LaurentPoly::var(m, a) - &LaurentPoly::var(m, b);
            let quotient = psi.divide_exact(&(&diff * &diff))?;
            let mut exps = vec![0i64; m];
            exps[a - 1] = 1;
            exps[b - 1] = 1;
            let zz = LaurentPoly::monomial(exps, Rat::from_integer((-2).into()));
            image = &image + &(&zz * &quotient);
        }
    }
    let point = |site: usize| root_of_unity(n, site as i64);
    let mut ratios: Vec<Complex64> = Vec::new();
    let mut sites: Vec<usize> = (1..=m).collect();
    loop {
        let pts: Vec<Complex64> = sites.iter().map(|&s| point(s)).collect();
        let value = psi.eval_points(&pts);
        if value.norm() > 1e-8 {
            ratios.push(image.eval_points(&pts) / value);
        }
        let mut i = m;
        let mut done = false;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if sites[i] != n - m + i + 1 {
                break;
            }
        }
        if done {
            break;
        }
        sites[i] += 1;
        for j in i + 1..m {
            sites[j] = sites[j - 1] + 1;
        }
    }
    if ratios.is_empty() {
        return Err(Error::InvalidInput(
            "wave function vanishes on every site tuple".into(),
        ));
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let max_deviation = ratios
        .iter()
        .map(|r| (r - mean).norm())
        .fold(0f64, f64::max);
    Ok(ConnectionReport {
        energy: mean.re,
        max_deviation: max_deviation.max(mean.im.abs()),
    })
}
