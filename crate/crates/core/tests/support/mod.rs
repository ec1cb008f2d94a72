//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. None of them reuse the algorithm they are checking.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parahoric_core::affweyl::{AffineElt, AffineWeylGroup, Facet};
use parahoric_core::bernstein::BernsteinCoords;
use parahoric_core::hecke::{HeckeAlgebra, HeckeElt};
use parahoric_core::lattice;
use parahoric_core::{repthy, Coweight, LaurentPoly, RootDatum, StandardLevi};

/// Presets of the acceptance sweep.
pub fn sweep_presets() -> Vec<RootDatum> {
    use parahoric_core::Preset::*;
    let list = [(GL, 1), (GL, 2), (GL, 3), (GL, 4), (SL, 2), (SL, 3), (SL, 4), (PGL, 2), (PGL, 3), (Sp, 4), (GSp, 4)];
    list.iter().map(|&(f, n)| RootDatum::preset(f, n).unwrap()).collect()
}

/// Dominant `mu` with `<2 rho, mu> <= 4` and coordinates in `[-2, 2]`.
pub fn sweep_weights(rd: &RootDatum) -> Vec<Coweight> {
    rd.dominant_coweights(4, 2)
}

// ---------------------------------------------------------------------------
// Kostant alternating sum

/// Number of ways to write `gamma` (simple-coroot coordinates) as a sum of
/// positive coroots (also in simple-coroot coordinates).
fn partition_count(
    gamma: &[i64],
    roots: &[Vec<i64>],
    memo: &mut HashMap<(Vec<i64>, usize), BigInt>,
    from: usize,
) -> BigInt {
    if gamma.iter().any(|x| *x < 0) {
        return BigInt::zero();
    }
    if gamma.iter().all(|x| *x == 0) {
        return BigInt::one();
    }
    if from == roots.len() {
        return BigInt::zero();
    }
    let key = (gamma.to_vec(), from);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // either skip roots[from] entirely or use it once more
    let mut total = partition_count(gamma, roots, memo, from + 1);
    let rest: Vec<i64> = gamma.iter().zip(&roots[from]).map(|(a, b)| a - b).collect();
    total += partition_count(&rest, roots, memo, from);
    memo.insert(key, total.clone());
    total
}

/// `m_mu(lambda) = sum_w det(w) P(w(mu + rho) - (lambda + rho))`.
pub fn kostant_multiplicity(rd: &RootDatum, mu: &Coweight, lambda: &Coweight) -> i64 {
    let coroots_in_simple: Vec<Vec<i64>> = rd
        .positive_coroots()
        .iter()
        .map(|c| lattice::integer_coefficients(rd.simple_coroots(), c).expect("coroot in coroot lattice"))
        .collect();
    let shifted_mu = lattice::add(&lattice::scale(mu.coords(), 2), rd.two_rho_check());
    let shifted_lambda = lattice::add(&lattice::scale(lambda.coords(), 2), rd.two_rho_check());
    let mut memo = HashMap::new();
    let mut total = BigInt::zero();
    for w in rd.weyl_elements() {
        let m = rd.weyl_matrix(w);
        let diff = lattice::sub(&lattice::mat_vec(m, &shifted_mu), &shifted_lambda);
        if diff.iter().any(|x| x % 2 != 0) {
            continue;
        }
        let half: Vec<i64> = diff.iter().map(|x| x / 2).collect();
        let Some(gamma) = lattice::integer_coefficients(rd.simple_coroots(), &half) else {
            continue;
        };
        let p = partition_count(&gamma, &coroots_in_simple, &mut memo, 0);
        if lattice::determinant(m) > 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    i64::try_from(total).unwrap()
}

/// All dominant `lambda` with nonzero Kostant multiplicity in `V_mu`,
/// found by scanning `mu - sum c_i alpha_i^vee` with bounded `c_i`.
pub fn kostant_dominant_weights(rd: &RootDatum, mu: &Coweight) -> BTreeMap<Coweight, i64> {
    let k = rd.semisimple_rank();
    let bound = (rd.two_rho_pairing(mu) / 2 + 1).max(1);
    let mut out = BTreeMap::new();
    let mut c = vec![0i64; k];
    loop {
        let mut lam = mu.coords().to_vec();
        for (i, ci) in c.iter().enumerate() {
            lam = lattice::sub(&lam, &lattice::scale(&rd.simple_coroots()[i], *ci));
        }
        let lam = Coweight(lam);
        if rd.is_dominant(&lam) {
            let m = kostant_multiplicity(rd, mu, &lam);
            if m != 0 {
                out.insert(lam, m);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Elements of small length

/// Every element of `W_aff * omega` with length at most `max_len`.
pub fn elements_up_to(w: &AffineWeylGroup, omega: &AffineElt, max_len: usize) -> Vec<AffineElt> {
    let mut seen = BTreeSet::new();
    seen.insert(omega.clone());
    let mut frontier = vec![omega.clone()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &frontier {
            for s in 0..w.num_nodes() {
                let y = w.left_mul_node(s, x);
                if w.length(&y) <= max_len && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Whether `x^{-1} y` is an affine reflection `t_{k beta^vee} s_beta`.
pub fn is_reflection(w: &AffineWeylGroup, x: &AffineElt, y: &AffineElt) -> bool {
    let d = w.mul(&w.inverse(x), y);
    let rd = w.datum();
    (0..rd.positive_roots().len()).any(|r| {
        if rd.root_reflection(r) != d.finite {
            return false;
        }
        let beta = &rd.positive_coroots()[r];
        // translation must be an integer multiple of beta^vee
        let k = lattice::dot(&rd.positive_roots()[r], d.translation.coords());
        k % 2 == 0 && lattice::scale(beta, k / 2) == d.translation.coords()
    })
}

/// Bruhat order on `elems` (assumed downward closed) as the transitive
/// closure of covering relations `x < x r`, `l(x r) = l(x) + 1`.
pub fn covering_closure(w: &AffineWeylGroup, elems: &[AffineElt]) -> BTreeSet<(usize, usize)> {
    let lens: Vec<usize> = elems.iter().map(|x| w.length(x)).collect();
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); elems.len()];
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| lens[i]);
    for &j in &order {
        below[j].insert(j);
        for &i in &order {
            if lens[i] + 1 == lens[j] && is_reflection(w, &elems[i], &elems[j]) {
                let add: Vec<usize> = below[i].iter().copied().collect();
                below[j].extend(add);
            }
        }
    }
    let mut out = BTreeSet::new();
    for (j, set) in below.iter().enumerate() {
        for &i in set {
            out.insert((i, j));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Double cosets by exhaustive products

/// Number of distinct `W_f x W_f` among `xs`, by comparing full cosets.
pub fn count_double_cosets(w: &AffineWeylGroup, xs: &[AffineElt], f: &Facet) -> usize {
    let wf = w.facet_elements(f, 10_000).unwrap();
    let mut classes: Vec<BTreeSet<AffineElt>> = Vec::new();
    for x in xs {
        if classes.iter().any(|c| c.contains(x)) {
            continue;
        }
        let mut c = BTreeSet::new();
        for u in &wf {
            for v in &wf {
                c.insert(w.mul(&w.mul(u, x), v));
            }
        }
        classes.push(c);
    }
    classes.len()
}

// ---------------------------------------------------------------------------
// Center of the Hecke algebra by linear algebra at a numeric point

fn eval(p: &LaurentPoly, v: i64) -> BigRational {
    let v = BigRational::from_integer(v.into());
    p.eval(&(&v * &v), &v).unwrap()
}

/// Rank of a rational matrix.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let d = &m[r][k] * &f;
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Commutator conditions `[x, T_g] = 0` for the generators, on unknowns
/// indexed by `basis`, at `v = v0`. Rows are equations.
pub fn commutator_system(alg: &HeckeAlgebra, basis: &[AffineElt], v0: i64) -> Vec<Vec<BigRational>> {
    let w = alg.group();
    type Commutator<'a> = Box<dyn Fn(&HeckeElt) -> HeckeElt + 'a>;
    let mut gens: Vec<Commutator<'_>> = Vec::new();
    for s in 0..w.num_nodes() {
        gens.push(Box::new(move |h| alg.right_mul_node(h, s).sub(&alg.left_mul_node(s, h))));
    }
    for om in w.omega_generators() {
        gens.push(Box::new(move |h| alg.right_mul_omega(h, om).sub(&alg.left_mul_omega(om, h))));
    }
    let mut rows: BTreeMap<(usize, AffineElt), Vec<BigRational>> = BTreeMap::new();
    for (j, b) in basis.iter().enumerate() {
        for (g, op) in gens.iter().enumerate() {
            let image = op(&HeckeElt::basis(b.clone()));
            for (x, c) in image.terms() {
                let row = rows.entry((g, x.clone())).or_insert_with(|| vec![BigRational::zero(); basis.len()]);
                row[j] += eval(c, v0);
            }
        }
    }
    rows.into_values().collect()
}

/// Dimension of the space of central elements supported on `basis`.
pub fn center_dimension(alg: &HeckeAlgebra, basis: &[AffineElt], v0: i64) -> usize {
    let sys = commutator_system(alg, basis, v0);
    basis.len() - rank(sys)
}

/// Whether `h` (specialized) satisfies every commutator equation.
pub fn in_kernel(alg: &HeckeAlgebra, basis: &[AffineElt], h: &HeckeElt, v0: i64) -> bool {
    if h.support().any(|x| !basis.contains(x)) {
        return false;
    }
    let sys = commutator_system(alg, basis, v0);
    let vec: Vec<BigRational> = basis.iter().map(|b| eval(&h.coeff(b), v0)).collect();
    sys.iter().all(|row| row.iter().zip(&vec).fold(BigRational::zero(), |acc, (a, b)| acc + a * b).is_zero())
}

// ---------------------------------------------------------------------------
// Branching and constant terms from Kostant multiplicities

/// Every weight of `V_mu` with its multiplicity, from Kostant's formula.
pub fn kostant_character(rd: &RootDatum, mu: &Coweight) -> BTreeMap<Coweight, i64> {
    let mut out = BTreeMap::new();
    for (l, m) in kostant_dominant_weights(rd, mu) {
        for x in rd.weyl_orbit(&l) {
            out.insert(x, m);
        }
    }
    out
}

/// Multiplicities of `M`-constituents of `V_mu`, by peeling Kostant
/// characters of `M` off the Kostant character of `G`.
pub fn kostant_branching(rd: &RootDatum, mu: &Coweight, m: &StandardLevi) -> BTreeMap<Coweight, u64> {
    let md = rd.levi_datum(m).unwrap();
    let rho_m = md.two_rho().to_vec();
    let mut rest = kostant_character(rd, mu);
    let mut out = BTreeMap::new();
    while let Some(top) = rest.keys().max_by_key(|x| (lattice::dot(&rho_m, x.coords()), (*x).clone())).cloned() {
        let k = rest[&top];
        assert!(k > 0 && md.is_dominant(&top));
        for (x, c) in kostant_character(&md, &top) {
            let e = rest.entry(x.clone()).or_insert(0);
            *e -= k * c;
            assert!(*e >= 0);
            if *e == 0 {
                rest.remove(&x);
            }
        }
        out.insert(top, k as u64);
    }
    out
}

/// `sum_W sign_W m_W coords(z_{M,W})`, where `sign_W` is `(-1)^{d_V + d_W}`
/// when `signed` and `1` otherwise.
pub fn expected_constant_term(
    rd: &Arc<RootDatum>,
    mu: &Coweight,
    m: &StandardLevi,
    branching: &BTreeMap<Coweight, u64>,
    signed: bool,
) -> BernsteinCoords {
    let md = rd.levi_datum(m).unwrap();
    let d_v = rd.two_rho_pairing(mu);
    let mut out = BernsteinCoords::new(rd.clone(), m.clone());
    for (w, k) in branching {
        let d_w = md.two_rho_pairing(w);
        let sign = if signed && (d_v + d_w) % 2 != 0 { -1 } else { 1 };
        for (l, c) in repthy::freudenthal(&md, w).unwrap().mults {
            out.add(&l, &LaurentPoly::from_int(sign * (*k as i64) * c as i64));
        }
    }
    out
}
