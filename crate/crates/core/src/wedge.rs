//! Fermionic wedge basis for the spin Calogero-Sutherland model.
//!
//! A rank-`r` wedge is labelled by a strictly decreasing integer tuple
//! `k = (k_1 > k_2 > ... > k_N)`; each entry decomposes as
//! `k_j = kbar_j * r + colour_j` with `0 <= colour_j < r` (colour 0 plays the
//! role of "spin up" at rank 2). The effective Hamiltonian acts triangularly:
//! a diagonal energy read off `kbar` plus "squeezing" moves that push pairs of
//! momenta together. The coordinate representation (spin wave functions with
//! Laurent-polynomial amplitudes) is kept alongside as an independent oracle.

use crate::dunkl::apply_effective_hamiltonian;
use crate::polyring::{permutations_with_parity, LaurentPoly};
use crate::{rat, ratio, Error, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A single wedge: strictly decreasing momenta and the colour rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wedge {
    k: Vec<i64>,
    rank: usize,
}

impl Wedge {
    pub fn new(k: Vec<i64>, rank: usize) -> Result<Self, Error> {
        if rank < 1 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if !crate::combinatorics::is_strict_partition(&k) {
            return Err(Error::InvalidInput(format!(
                "wedge labels must be strictly decreasing: {k:?}"
            )));
        }
        Ok(Wedge { k, rank })
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// Orbital momenta `floor(k_j / rank)`, weakly decreasing.
    pub fn kbar(&self) -> Vec<i64> {
        self.k.iter().map(|&x| x.div_euclid(self.rank as i64)).collect()
    }

    /// Colour of each factor, `k_j mod rank`.
    pub fn colours(&self) -> Vec<u8> {
        self.k
            .iter()
            .map(|&x| x.rem_euclid(self.rank as i64) as u8)
            .collect()
    }

    /// Orbital momenta per colour, each weakly (in fact strictly) decreasing.
    pub fn split_colours(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new(); self.rank];
        for &x in &self.k {
            out[x.rem_euclid(self.rank as i64) as usize].push(x.div_euclid(self.rank as i64));
        }
        out
    }

    /// Shift every orbital momentum by `l` (i.e. `k -> k + rank * l`).
    pub fn boost(&self, l: i64) -> Wedge {
        Wedge {
            k: self.k.iter().map(|&x| x + self.rank as i64 * l).collect(),
            rank: self.rank,
        }
    }

    /// Total orbital momentum `sum kbar_j`.
    pub fn momentum(&self) -> i64 {
        self.kbar().iter().sum()
    }
}

/// Sort a tuple into a wedge: returns the sorting sign and the sorted wedge,
/// or `None` when an entry repeats (the wedge vanishes).
pub fn normalize(tuple: &[i64], rank: usize) -> Option<(i64, Wedge)> {
    let mut k = tuple.to_vec();
    let mut sign = 1i64;
    // Insertion sort, counting transpositions.
    for i in 1..k.len() {
        let mut j = i;
        while j > 0 && k[j - 1] < k[j] {
            k.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && k[j - 1] == k[j] {
            return None;
        }
    }
    Some((sign, Wedge { k, rank }))
}

/// Finite linear combination of same-shape wedges with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeVector {
    n: usize,
    rank: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl WedgeVector {
    pub fn zero(n: usize, rank: usize) -> Self {
        WedgeVector {
            n,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_wedge(w: &Wedge) -> Self {
        let mut v = Self::zero(w.n(), w.rank());
        v.add_wedge(w, Rat::one());
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Wedge, &Rat)> {
        self.terms.iter().map(|(k, c)| {
            (
                Wedge {
                    k: k.clone(),
                    rank: self.rank,
                },
                c,
            )
        })
    }

    pub fn coeff(&self, w: &Wedge) -> Rat {
        self.terms.get(w.k()).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_wedge(&mut self, w: &Wedge, c: Rat) {
        assert_eq!(w.n(), self.n);
        assert_eq!(w.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.k().to_vec()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(w.k());
        }
    }

    /// Add an unsorted tuple, folding in the sorting sign; repeated entries
    /// contribute nothing.
    pub fn add_tuple(&mut self, tuple: &[i64], c: Rat) {
        if let Some((sign, w)) = normalize(tuple, self.rank) {
            self.add_wedge(&w, c * rat(sign));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.rank), (other.n, other.rank));
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let w = Wedge {
                k: k.clone(),
                rank: self.rank,
            };
            out.add_wedge(&w, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.rank);
        }
        WedgeVector {
            n: self.n,
            rank: self.rank,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }
}

/// Diagonal energy of the effective Hamiltonian on a wedge with orbital
/// momenta `kbar` (weakly decreasing):
/// `(1/2) sum kbar_i^2 + (beta/2) sum (N - 2i + 1) kbar_i`.
pub fn cs_energy_kbar(kbar: &[i64], beta: &Rat) -> Rat {
    let n = kbar.len() as i64;
    let mut quad = 0i64;
    let mut lin = 0i64;
    for (idx, &x) in kbar.iter().enumerate() {
        quad += x * x;
        lin += (n - 2 * (idx as i64 + 1) + 1) * x;
    }
    ratio(quad, 2) + beta * ratio(lin, 2)
}

/// Linear-in-beta part of [`cs_energy_kbar`]; this is the spin-chain energy
/// that survives freezing.
pub fn hs_energy_kbar(kbar: &[i64]) -> Rat {
    let n = kbar.len() as i64;
    let lin: i64 = kbar
        .iter()
        .enumerate()
        .map(|(idx, &x)| (n - 2 * (idx as i64 + 1) + 1) * x)
        .sum();
    ratio(lin, 2)
}

/// Squeezing move on the pair of positions `i < j` (1-based):
/// `sum_{p=1}^{kbar_i - kbar_j - 1} (kbar_i - kbar_j - p) *
///  wedge(k - rank * p * (e_i - e_j))`.
pub fn squeeze(w: &Wedge, i: usize, j: usize) -> WedgeVector {
    assert!(1 <= i && i < j && j <= w.n());
    let r = w.rank as i64;
    let kbar = w.kbar();
    let gap = kbar[i - 1] - kbar[j - 1];
    let mut out = WedgeVector::zero(w.n(), w.rank);
    for p in 1..gap {
        let mut t = w.k.clone();
        t[i - 1] -= r * p;
        t[j - 1] += r * p;
        out.add_tuple(&t, rat(gap - p));
    }
    out
}

/// Apply the effective spin Hamiltonian in the wedge representation:
/// diagonal `cs_energy_kbar` plus `beta` times the sum of all squeezing moves.
///
/// The off-diagonal prefactor (one unit of `beta` per squeezing term,
/// independent of the rank) is pinned down by the coordinate-representation
/// oracle [`apply_spin_eff_coordinate`]; see the acceptance tests.
pub fn apply_spin_eff_hamiltonian(v: &WedgeVector, beta: &Rat) -> WedgeVector {
    let mut out = WedgeVector::zero(v.n(), v.rank());
    for (w, c) in v.terms() {
        out.add_wedge(&w, c * cs_energy_kbar(&w.kbar(), beta));
        for i in 1..=w.n() {
            for j in i + 1..=w.n() {
                out = out.add(&squeeze(&w, i, j).scale(&(c * beta)));
            }
        }
    }
    out
}

/// The coefficient of `beta` in [`apply_spin_eff_hamiltonian`]: diagonal
/// [`hs_energy_kbar`] plus all squeezing moves. This is the operator whose
/// frozen restriction becomes the spin-chain Hamiltonian.
pub fn apply_linearized(v: &WedgeVector) -> WedgeVector {
    let mut out = WedgeVector::zero(v.n(), v.rank());
    for (w, c) in v.terms() {
        out.add_wedge(&w, c * hs_energy_kbar(&w.kbar()));
        for i in 1..=w.n() {
            for j in i + 1..=w.n() {
                out = out.add(&squeeze(&w, i, j).scale(c));
            }
        }
    }
    out
}

/// Eigenvector of the effective spin Hamiltonian with leading wedge `w`,
/// built by closing `w` under squeezing and solving the triangular system.
/// Fails when the coupling makes two coupled levels degenerate.
pub fn uglov_eigenvector(w: &Wedge, beta: &Rat) -> Result<WedgeVector, Error> {
    // Breadth-first closure under squeezing.
    let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
    let mut queue = vec![w.clone()];
    seen.insert(w.k().to_vec(), ());
    while let Some(u) = queue.pop() {
        for i in 1..=u.n() {
            for j in i + 1..=u.n() {
                for (t, _) in squeeze(&u, i, j).terms() {
                    if !seen.contains_key(t.k()) {
                        seen.insert(t.k().to_vec(), ());
                        queue.push(t);
                    }
                }
            }
        }
    }
    // Linear extension of dominance on kbar: descending prefix sums.
    let mut order: Vec<Wedge> = seen
        .keys()
        .map(|k| Wedge {
            k: k.clone(),
            rank: w.rank(),
        })
        .collect();
    let prefix_key = |u: &Wedge| {
        let mut acc = 0i64;
        u.kbar()
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect::<Vec<i64>>()
    };
    order.sort_by(|a, b| prefix_key(b).cmp(&prefix_key(a)));
    debug_assert_eq!(order[0].k(), w.k());

    let e0 = cs_energy_kbar(&w.kbar(), beta);
    let mut result = WedgeVector::from_wedge(w);
    let mut incoming: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for u in &order {
        let c = if u.k() == w.k() {
            Rat::one()
        } else {
            let numer = incoming.get(u.k()).cloned().unwrap_or_else(Rat::zero);
            if numer.is_zero() {
                continue;
            }
            let e = cs_energy_kbar(&u.kbar(), beta);
            if e == e0 {
                return Err(Error::NonGenericCoupling(format!(
                    "levels {:?} and {:?} collide at beta = {beta}",
                    w.k(),
                    u.k()
                )));
            }
            let c = numer * beta / (&e0 - &e);
            result.add_wedge(u, c.clone());
            c
        };
        for i in 1..=u.n() {
            for j in i + 1..=u.n() {
                for (t, a) in squeeze(u, i, j).terms() {
                    let entry = incoming.entry(t.k().to_vec()).or_insert_with(Rat::zero);
                    *entry += &c * a;
                }
            }
        }
    }
    Ok(result)
}

/// Spin wave function with Laurent-polynomial amplitudes: colour word
/// (one colour per site) -> coefficient polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateState {
    n: usize,
    rank: usize,
    components: BTreeMap<Vec<u8>, LaurentPoly>,
}

impl CoordinateState {
    pub fn zero(n: usize, rank: usize) -> Self {
        CoordinateState {
            n,
            rank,
            components: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &LaurentPoly)> {
        self.components.iter()
    }

    pub fn component(&self, word: &[u8]) -> LaurentPoly {
        self.components
            .get(word)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.n))
    }

    pub fn add_component(&mut self, word: Vec<u8>, poly: &LaurentPoly) {
        assert_eq!(word.len(), self.n);
        if poly.is_zero() {
            return;
        }
        match self.components.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + poly;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(poly.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.n, self.rank), (other.n, other.rank));
        let mut out = self.clone();
        for (w, p) in &other.components {
            out.add_component(w.clone(), p);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.rank);
        }
        CoordinateState {
            n: self.n,
            rank: self.rank,
            components: self
                .components
                .iter()
                .map(|(w, p)| (w.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Multiply every amplitude by a fixed symmetric polynomial.
    pub fn mul_poly(&self, g: &LaurentPoly) -> Self {
        CoordinateState {
            n: self.n,
            rank: self.rank,
            components: self
                .components
                .iter()
                .map(|(w, p)| (w.clone(), p * g))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }
}

/// Expand a wedge vector in the coordinate representation:
/// `sum_sigma sgn(sigma) prod_j z_j^{kbar_{sigma(j)}} |colour_{sigma(1)} ... colour_{sigma(N)}>`.
pub fn wedge_to_coordinate(v: &WedgeVector) -> CoordinateState {
    let n = v.n();
    let mut out = CoordinateState::zero(n, v.rank());
    let perms = permutations_with_parity(n);
    for (w, c) in v.terms() {
        let kbar = w.kbar();
        let colours = w.colours();
        for (perm, sign) in &perms {
            let word: Vec<u8> = perm.iter().map(|&a| colours[a]).collect();
            let exps: Vec<i64> = perm.iter().map(|&a| kbar[a]).collect();
            let mono = LaurentPoly::monomial(exps, c * rat(*sign as i64));
            out.add_component(word, &mono);
        }
    }
    out
}

/// Oracle: apply the effective spin Hamiltonian directly in the coordinate
/// representation,
/// `(1/2) sum (z_i d_i)^2
///  + (beta/2) sum_{i<j} (z_i+z_j)/(z_i-z_j) (z_i d_i - z_j d_j)
///  + beta sum_{i<j} z_i z_j / ((z_i-z_j)(z_j-z_i)) (1 + P_ij)`,
/// where `P_ij` permutes colours only. Per component this equals the scalar
/// effective Hamiltonian plus a correction proportional to
/// `s_ij f_w + f_{w with colours i,j swapped}`, which vanishes identically on
/// fermionic states but is kept (as an exact division) so the operator is
/// faithful on its whole domain. Fails if an apparent pole does not cancel.
pub fn apply_spin_eff_coordinate(
    state: &CoordinateState,
    beta: &Rat,
) -> Result<CoordinateState, Error> {
    let n = state.n();
    let mut out = CoordinateState::zero(n, state.rank());
    for (word, f) in state.components() {
        // Scalar part (kinetic + pair terms with the coordinate exchange s_ij).
        out.add_component(word.clone(), &apply_effective_hamiltonian(f, beta));
        // Spin correction per pair.
        for i in 1..=n {
            for j in i + 1..=n {
                let mut swapped_word = word.clone();
                swapped_word.swap(i - 1, j - 1);
                let g = &f.swap_vars(i, j) + &state.component(&swapped_word);
                if g.is_zero() {
                    continue;
                }
                let zi = LaurentPoly::var(n, i);
                let zj = LaurentPoly::var(n, j);
                let diff = &zi - &zj;
                let h = g.divide_exact(&diff)?.divide_exact(&diff)?;
                // z_i z_j / ((z_i-z_j)(z_j-z_i)) = - z_i z_j / (z_i-z_j)^2.
                let term = (&(&zi * &zj) * &h).scale(&-beta.clone());
                out.add_component(word.clone(), &term);
            }
        }
    }
    Ok(out)
}
