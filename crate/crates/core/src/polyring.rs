//! Sparse Laurent polynomials in `N` variables with exact rational
//! coefficients, plus the symmetric-function constructors (Vandermonde,
//! alternants, Schur, elementary/power sums) and numeric evaluation at
//! complex points, in particular at roots of unity.
//!
//! Variables are 1-based in the public interface (`z_1, ..., z_N`) to match
//! the lattice-site labelling used everywhere else in the crate.

use crate::{rat, Error, Rat};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
///
/// The `BTreeMap` keeps terms in lexicographic exponent order, which makes
/// serialisation and leading-term extraction deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable `z_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(1 <= i && i <= nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, Rat::one())
    }

    /// Single term `c * z^exps`.
    pub fn monomial(exps: Vec<i64>, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    /// Coefficient of `z^exps` (zero if absent).
    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Add `c * z^exps` in place.
    pub fn add_term(&mut self, exps: Vec<i64>, c: Rat) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Leading term in lexicographic order, if any.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Smallest exponent of `z_i` over all terms (0 for the zero polynomial).
    pub fn min_exponent(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e[i - 1]).min().unwrap_or(0)
    }

    /// Largest exponent of `z_i` over all terms (0 for the zero polynomial).
    pub fn max_exponent(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e[i - 1]).max().unwrap_or(0)
    }

    /// Total degree of each term must be the same; returns it (None if zero
    /// polynomial or inhomogeneous).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Swap variables `z_i <-> z_j` (1-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(i - 1, j - 1);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitute `z_i := z_j` (1-based, i != j).
    pub fn replace_var(&self, i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[j - 1] += e2[i - 1];
            e2[i - 1] = 0;
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Relabel variables by `perm`: the result is `f(z_{perm(1)}, ..., z_{perm(N)})`
    /// where `perm` is a 0-based permutation vector of length `nvars`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0i64; self.nvars];
            for (pos, &target) in perm.iter().enumerate() {
                e2[target] = e[pos];
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Euler operator `z_i d/dz_i` (1-based).
    pub fn z_deriv(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * rat(e[i - 1]));
        }
        out
    }

    /// Sum of all Euler operators: the degree (momentum) operator.
    pub fn total_momentum(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * rat(e.iter().sum::<i64>()));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    /// Exact division: returns `q` with `self = q * g`, or an error carrying
    /// the size of the nonzero remainder. Works in the Laurent ring: both
    /// operands are first shifted into the polynomial ring, divided there in
    /// lexicographic order, and the quotient is shifted back.
    pub fn divide_exact(&self, g: &LaurentPoly) -> Result<LaurentPoly, Error> {
        assert_eq!(self.nvars, g.nvars, "variable count mismatch");
        if g.is_zero() {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let shift_f: Vec<i64> = (1..=self.nvars).map(|i| self.min_exponent(i)).collect();
        let shift_g: Vec<i64> = (1..=self.nvars).map(|i| g.min_exponent(i)).collect();
        let unshift = |p: &LaurentPoly, s: &[i64]| {
            let mut out = Self::zero(p.nvars);
            for (e, c) in &p.terms {
                out.add_term(e.iter().zip(s).map(|(x, m)| x - m).collect(), c.clone());
            }
            out
        };
        let mut r = unshift(self, &shift_f);
        let gg = unshift(g, &shift_g);
        let (glead, gcoef) = gg.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = Self::zero(self.nvars);
        let mut remainder_terms = 0usize;
        // Classical single-divisor reduction in lex order; terms whose leading
        // monomial is not divisible go to the remainder. A singleton divisor
        // set is complete, so a zero remainder certifies exact divisibility.
        while let Some((rlead, rcoef)) = r.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if rlead.iter().zip(&glead).all(|(a, b)| a >= b) {
                let t: Vec<i64> = rlead.iter().zip(&glead).map(|(a, b)| a - b).collect();
                let tc = &rcoef / &gcoef;
                for (e, c) in &gg.terms {
                    r.add_term(
                        e.iter().zip(&t).map(|(a, b)| a + b).collect(),
                        -(c * &tc),
                    );
                }
                q.add_term(t, tc);
            } else {
                r.terms.remove(&rlead);
                remainder_terms += 1;
            }
        }
        if remainder_terms > 0 {
            return Err(Error::InexactDivision { remainder_terms });
        }
        // Shift the quotient back into the Laurent ring.
        let s: Vec<i64> = shift_f.iter().zip(&shift_g).map(|(a, b)| a - b).collect();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &q.terms {
            out.add_term(e.iter().zip(&s).map(|(x, m)| x + m).collect(), c.clone());
        }
        Ok(out)
    }

    /// Evaluate at the given complex points (`points.len() == nvars`).
    pub fn eval_points(&self, points: &[Complex64]) -> Complex64 {
        assert_eq!(points.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().expect("rational out of f64 range"), 0.0);
            for (z, &k) in points.iter().zip(e) {
                t *= z.powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Evaluate at the root-of-unity configuration `z_j = omega^j`,
    /// `omega = exp(2 pi i / n_lattice)`; `nvars <= n_lattice` is not required
    /// but is the usual situation.
    pub fn eval_roots(&self, n_lattice: usize) -> Complex64 {
        let points: Vec<Complex64> = (1..=self.nvars)
            .map(|j| root_of_unity(n_lattice, j as i64))
            .collect();
        self.eval_points(&points)
    }

    /// One line per term: `num/den : e1 e2 ... eN`, lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (e, c) in &self.terms {
            s.push_str(&format!(
                "{}/{} :",
                c.numer(),
                c.denom()
            ));
            for x in e {
                s.push_str(&format!(" {x}"));
            }
            s.push('\n');
        }
        s
    }

    /// Inverse of [`to_text`]; `nvars` is needed because the zero polynomial
    /// serialises to the empty string.
    pub fn from_text(s: &str, nvars: usize) -> Result<Self, Error> {
        let mut p = Self::zero(nvars);
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (coef, exps) = line
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("bad term line: {line:?}")))?;
            let c = crate::parse_rat(coef)?;
            let e: Vec<i64> = exps
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent: {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if e.len() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: Self) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: Self) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: Self) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
                if !is_const {
                    write!(f, " ")?;
                }
            }
            let mut firstvar = true;
            for (idx, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !firstvar {
                    write!(f, " ")?;
                }
                firstvar = false;
                if x == 1 {
                    write!(f, "z{}", idx + 1)?;
                } else {
                    write!(f, "z{}^{}", idx + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `omega^j` with `omega = exp(2 pi i / n)`.
pub fn root_of_unity(n: usize, j: i64) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// All permutations of `0..m` together with their signs.
pub fn permutations_with_parity(m: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i8, out: &mut Vec<(Vec<usize>, i8)>) {
        if k <= 1 {
            out.push((perm.clone(), *sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, out);
            if i < k - 1 {
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1i8;
    heap(m, &mut perm, &mut sign, &mut out);
    out
}

/// Vandermonde determinant `prod_{a<b} (z_{vars[a]} - z_{vars[b]})` over the
/// listed (1-based) variables inside an `nvars`-variable ring.
pub fn vandermonde(nvars: usize, vars: &[usize]) -> LaurentPoly {
    let mut p = LaurentPoly::one(nvars);
    for a in 0..vars.len() {
        for b in a + 1..vars.len() {
            let diff = &LaurentPoly::var(nvars, vars[a]) - &LaurentPoly::var(nvars, vars[b]);
            p = &p * &diff;
        }
    }
    p
}

/// Alternant `sum_sigma sgn(sigma) prod_a z_{vars[a]}^{exps[sigma(a)]}`;
/// zero when the exponents repeat.
pub fn alternant(nvars: usize, vars: &[usize], exps: &[i64]) -> LaurentPoly {
    assert_eq!(vars.len(), exps.len());
    let mut p = LaurentPoly::zero(nvars);
    for (perm, sign) in permutations_with_parity(vars.len()) {
        let mut e = vec![0i64; nvars];
        for (a, &v) in vars.iter().enumerate() {
            e[v - 1] += exps[perm[a]];
        }
        p.add_term(e, rat(sign as i64));
    }
    p
}

/// Schur polynomial `s_lambda` in the listed variables, via the bialternant
/// formula with exact division. `lambda` may have fewer parts than variables;
/// more (nonzero) parts than variables gives zero.
pub fn schur(nvars: usize, vars: &[usize], lambda: &[i64]) -> LaurentPoly {
    let m = vars.len();
    let mut lam = lambda.to_vec();
    while lam.last() == Some(&0) {
        lam.pop();
    }
    if lam.len() > m {
        return LaurentPoly::zero(nvars);
    }
    lam.resize(m, 0);
    let exps: Vec<i64> = lam
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (m - 1 - i) as i64)
        .collect();
    let num = alternant(nvars, vars, &exps);
    let den = vandermonde(nvars, vars);
    num.divide_exact(&den)
        .expect("alternant is always divisible by the Vandermonde")
}

/// Elementary symmetric polynomial `e_k` of the listed variables.
pub fn elementary(nvars: usize, vars: &[usize], k: usize) -> LaurentPoly {
    let m = vars.len();
    if k > m {
        return LaurentPoly::zero(nvars);
    }
    let mut p = LaurentPoly::zero(nvars);
    // Iterate k-subsets of vars.
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut e = vec![0i64; nvars];
        for &a in &idx {
            e[vars[a] - 1] += 1;
        }
        p.add_term(e, Rat::one());
        // Next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return p;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
        }
        if k == 0 {
            return p;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Power sum `p_k = sum z_{vars[a]}^k` (k may be negative).
pub fn powersum(nvars: usize, vars: &[usize], k: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero(nvars);
    for &v in vars {
        let mut e = vec![0i64; nvars];
        e[v - 1] = k;
        p.add_term(e, Rat::one());
    }
    p
}

/// Monomial symmetric polynomial `m_lambda` of the listed variables: the sum
/// of all distinct rearrangements of `lambda` (padded with zeros).
pub fn monomial_sym(nvars: usize, vars: &[usize], lambda: &[i64]) -> LaurentPoly {
    let m = vars.len();
    assert!(lambda.len() <= m, "too many parts for the variable set");
    let mut padded = lambda.to_vec();
    padded.resize(m, 0);
    padded.sort_unstable_by(|a, b| b.cmp(a));
    let mut rearrangements = std::collections::BTreeSet::new();
    for (perm, _) in permutations_with_parity(m) {
        let arr: Vec<i64> = (0..m).map(|i| padded[perm[i]]).collect();
        rearrangements.insert(arr);
    }
    let mut p = LaurentPoly::zero(nvars);
    for arr in rearrangements {
        let mut e = vec![0i64; nvars];
        for (a, &v) in vars.iter().enumerate() {
            e[v - 1] += arr[a];
        }
        p.add_term(e, Rat::one());
    }
    p
}

/// (Anti)symmetrise over consecutive variable blocks: `blocks` partitions
/// `1..=nvars` in order, and the sum runs over the product of the symmetric
/// groups of the blocks. With `signed = true` each permutation carries its
/// sign.
pub fn symmetrize(f: &LaurentPoly, blocks: &[usize], signed: bool) -> LaurentPoly {
    let n = f.nvars();
    assert_eq!(blocks.iter().sum::<usize>(), n, "blocks must partition the variables");
    // Build block-wise permutation list as (global perm, sign) pairs.
    let mut perms: Vec<(Vec<usize>, i8)> = vec![((0..n).collect(), 1)];
    let mut offset = 0usize;
    for &b in blocks {
        let local = permutations_with_parity(b);
        let mut next = Vec::with_capacity(perms.len() * local.len());
        for (gp, gs) in &perms {
            for (lp, ls) in &local {
                let mut p = gp.clone();
                for (i, &t) in lp.iter().enumerate() {
                    p[offset + i] = gp[offset + t];
                }
                next.push((p, gs * ls));
            }
        }
        perms = next;
        offset += b;
    }
    let mut out = LaurentPoly::zero(n);
    for (perm, sign) in &perms {
        let g = f.permute_vars(perm);
        let g = if signed && *sign < 0 { -&g } else { g };
        out = &out + &g;
    }
    out
}

/// Numeric Vandermonde `prod_{a<b} (points[a] - points[b])`.
pub fn vandermonde_eval(points: &[Complex64]) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            p *= points[a] - points[b];
        }
    }
    p
}

/// Numeric Schur polynomial at the given points via the bialternant
/// determinant ratio (requires pairwise distinct points).
pub fn schur_eval(lambda: &[i64], points: &[Complex64]) -> Complex64 {
    let m = points.len();
    let mut lam = lambda.to_vec();
    while lam.last() == Some(&0) {
        lam.pop();
    }
    if lam.len() > m {
        return Complex64::new(0.0, 0.0);
    }
    lam.resize(m, 0);
    if m == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let num = nalgebra::DMatrix::from_fn(m, m, |i, j| {
        points[i].powi((lam[j] + (m - 1 - j) as i64) as i32)
    });
    num.determinant() / vandermonde_eval(points)
}
