//! Root system `R = 2·BC_q`, the multiplicities `k_μ`, the hyperoctahedral
//! Weyl group and the convex hull `co(W·ρ)`.
//!
//! Coordinates: positive roots are `2e_i` (multiplicity `k₁`), `4e_i` (`k₂`)
//! and `2(e_i ± e_j)` (`k₃`). Dominant weights are indexed by partitions
//! `ν₁ ≥ … ≥ ν_q ≥ 0`; the corresponding spectral parameter is `2ν + ρ`.

use crate::error::{Error, Result};
use crate::fieldalg::{FieldTag, MAX_RANK};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;

/// Orbits are materialized only up to this rank.
pub const MAX_ORBIT_RANK: usize = 4;

/// Slack used for points on the boundary of `co(W·ρ)`.
pub const HULL_SLACK: f64 = 1e-9;

/// `(𝔽, q, μ)` together with the derived constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BCParams {
    pub field: FieldTag,
    pub q: usize,
    pub mu: f64,
    /// `(k₁, k₂, k₃) = (μ − dq/2, (d−1)/2, d/2)`.
    pub k: [f64; 3],
    /// `γ = d(q − ½) + 1`.
    pub gamma: f64,
    pub rho: Vec<f64>,
}

/// Validate `μ > γ − 1` and compute `k_μ`, `γ` and `ρ`.
pub fn derive_params(field: FieldTag, q: usize, mu: f64) -> Result<BCParams> {
    if q == 0 || q > MAX_RANK {
        return Err(Error::domain(format!("rank {q} outside 1..={MAX_RANK}")));
    }
    let d = field.d();
    let qf = q as f64;
    let gamma = d * (qf - 0.5) + 1.0;
    if !mu.is_finite() || mu <= gamma - 1.0 {
        return Err(Error::domain(format!(
            "mu = {mu} must exceed gamma - 1 = {} for (field {field}, q = {q})",
            gamma - 1.0
        )));
    }
    let k = [mu - d * qf / 2.0, (d - 1.0) / 2.0, d / 2.0];
    let rho = (1..=q)
        .map(|i| (mu - d * qf / 2.0 + d - 1.0) + d * (q - i) as f64)
        .collect();
    Ok(BCParams {
        field,
        q,
        mu,
        k,
        gamma,
        rho,
    })
}

impl BCParams {
    pub fn new(field: FieldTag, q: usize, mu: f64) -> Result<Self> {
        derive_params(field, q, mu)
    }

    pub fn d(&self) -> f64 {
        self.field.d()
    }

    /// Exponent `μ − γ` of the ball density.
    pub fn ball_exponent(&self) -> f64 {
        self.mu - self.gamma
    }

    /// Rank-one Jacobi parameters `(α, β) = (μ − 1, d/2 − 1)`.
    pub fn jacobi_alpha_beta(&self) -> (f64, f64) {
        (self.mu - 1.0, self.d() / 2.0 - 1.0)
    }

    /// `⟨ρ, ρ⟩`.
    pub fn rho_norm_sqr(&self) -> f64 {
        self.rho.iter().map(|r| r * r).sum()
    }

    /// `ρ` as a complex spectral vector.
    pub fn rho_complex(&self) -> Vec<Complex64> {
        self.rho.iter().map(|&r| Complex64::new(r, 0.0)).collect()
    }

    /// Spectral parameter `2ν + ρ` attached to a dominant weight.
    pub fn weight_to_spectral(&self, nu: &[usize]) -> Vec<Complex64> {
        nu.iter()
            .zip(&self.rho)
            .map(|(&n, &r)| Complex64::new(2.0 * n as f64 + r, 0.0))
            .collect()
    }
}

/// The three orbits of positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// `2e_i`, multiplicity `k₁`.
    Short,
    /// `4e_i`, multiplicity `k₂`.
    Long,
    /// `2(e_i ± e_j)`, multiplicity `k₃`.
    Middle,
}

impl RootKind {
    pub fn multiplicity(self, k: &[f64; 3]) -> f64 {
        match self {
            RootKind::Short => k[0],
            RootKind::Long => k[1],
            RootKind::Middle => k[2],
        }
    }

    /// Multiplicity of `α/2`, zero when `α/2` is not a root.
    pub fn half_multiplicity(self, k: &[f64; 3]) -> f64 {
        match self {
            RootKind::Long => k[0],
            _ => 0.0,
        }
    }
}

/// Positive roots of `2·BC_q` with their kinds.
pub fn positive_roots(q: usize) -> Vec<(Vec<f64>, RootKind)> {
    let mut out = Vec::new();
    let unit = |i: usize, s: f64| {
        let mut v = vec![0.0; q];
        v[i] = s;
        v
    };
    for i in 0..q {
        out.push((unit(i, 2.0), RootKind::Short));
        out.push((unit(i, 4.0), RootKind::Long));
    }
    for i in 0..q {
        for j in i + 1..q {
            for sign in [1.0, -1.0] {
                let mut v = vec![0.0; q];
                v[i] = 2.0;
                v[j] = 2.0 * sign;
                out.push((v, RootKind::Middle));
            }
        }
    }
    out
}

/// `ρ(k) = ½ Σ_{α∈R₊} k(α) α`, computed from the root list.
pub fn rho_from_roots(q: usize, k: &[f64; 3]) -> Vec<f64> {
    let mut rho = vec![0.0; q];
    for (alpha, kind) in positive_roots(q) {
        let m = kind.multiplicity(k);
        for (r, a) in rho.iter_mut().zip(&alpha) {
            *r += 0.5 * m * a;
        }
    }
    rho
}

/// A point of `ℂ^q`, compared modulo the Weyl group.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParam(pub Vec<Complex64>);

impl SpectralParam {
    pub fn real(x: &[f64]) -> Self {
        SpectralParam(x.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn re(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.im).collect()
    }

    pub fn conj(&self) -> Self {
        SpectralParam(self.0.iter().map(|z| z.conj()).collect())
    }

    /// `iλ`, the argument of `F` in `φ_λ = F(iλ, k; ·)`.
    pub fn times_i(&self) -> Vec<Complex64> {
        self.0.iter().map(|z| z * Complex64::i()).collect()
    }

    /// Parse coordinates separated by `;` or `,`, each of the form `a`, `bi`
    /// or `a±bi`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split([';', ','])
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(parse_complex)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Usage("empty spectral parameter".into()));
        }
        Ok(SpectralParam(coords))
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| format_complex(*z)).collect();
        f.write_str(&parts.join(";"))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Parse `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi` (also `1e-3+2e-1i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Usage(format!("cannot parse complex number '{s}'"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx];
        if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(idx) => {
            let re = body[..idx].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, imag(&body[idx..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// A signed permutation `x ↦ (s_i x_{π(i)})_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(q: usize) -> Self {
        SignedPerm {
            perm: (0..q).collect(),
            signs: vec![1; q],
        }
    }

    pub fn apply<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Copy + std::ops::Neg<Output = T>,
    {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| if s < 0 { -x[p] } else { x[p] })
            .collect()
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let q = self.perm.len();
        let mut perm = vec![0; q];
        let mut signs = vec![1; q];
        for i in 0..q {
            let p = self.perm[i];
            perm[i] = other.perm[p];
            signs[i] = self.signs[i] * other.signs[p];
        }
        SignedPerm { perm, signs }
    }
}

/// The hyperoctahedral group of signed permutations of `q` coordinates.
#[derive(Debug, Clone, Copy)]
pub struct WeylGroupBC {
    pub q: usize,
}

impl WeylGroupBC {
    pub fn new(q: usize) -> Self {
        WeylGroupBC { q }
    }

    /// `2^q · q!`.
    pub fn order(&self) -> usize {
        (1..=self.q).product::<usize>() << self.q
    }

    /// Element number `idx` (factorial-base permutation, sign bits).
    pub fn element(&self, idx: usize) -> SignedPerm {
        let q = self.q;
        let signs = (0..q).map(|i| if (idx >> i) & 1 == 1 { -1 } else { 1 }).collect();
        let mut code = idx >> q;
        let mut pool: Vec<usize> = (0..q).collect();
        let mut perm = Vec::with_capacity(q);
        for r in (1..=q).rev() {
            let fact: usize = (1..r).product();
            let pick = code / fact;
            code %= fact;
            perm.push(pool.remove(pick));
        }
        SignedPerm { perm, signs }
    }

    /// Lazily enumerate all elements.
    pub fn iter(&self) -> impl Iterator<Item = SignedPerm> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }
}

/// All distinct images of `x` under `W`, deduplicated at `1e-12`.
pub fn weyl_orbit(x: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let q = x.len();
    if q > MAX_ORBIT_RANK {
        return Err(Error::Capacity(format!(
            "orbit materialization is limited to rank {MAX_ORBIT_RANK}"
        )));
    }
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for w in WeylGroupBC::new(q).iter() {
        let y = w.apply(x);
        if !out.iter().any(|z| max_dist(z, &y) <= 1e-12) {
            out.push(y);
        }
    }
    Ok(out)
}

fn max_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `min_m (ρ₁+…+ρ_m − (m largest |x_i|))`; non-negative exactly on `co(W·ρ)`.
pub fn hull_slack(x: &[f64], rho: &[f64]) -> f64 {
    let mut a: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    a.sort_by(|p, q| q.total_cmp(p));
    let mut sx = 0.0;
    let mut sr = 0.0;
    let mut slack = f64::INFINITY;
    for (xi, ri) in a.iter().zip(rho) {
        sx += xi;
        sr += ri;
        slack = slack.min(sr - sx);
    }
    slack
}

/// `x ∈ co(W·ρ)` by weak absolute majorization; boundary points within
/// `HULL_SLACK` count as members.
pub fn co_hull_member(x: &[f64], rho: &[f64]) -> bool {
    hull_slack(x, rho) >= -HULL_SLACK
}

/// Brute-force version: `⟨wx, u_m⟩ ≤ ⟨ρ, u_m⟩` for every `w ∈ W` and every
/// `u_m = e₁+…+e_m`.
pub fn co_hull_member_brute(x: &[f64], rho: &[f64]) -> bool {
    let q = x.len();
    let bounds: Vec<f64> = rho
        .iter()
        .scan(0.0, |acc, r| {
            *acc += r;
            Some(*acc)
        })
        .collect();
    WeylGroupBC::new(q).iter().all(|w| {
        let y = w.apply(x);
        let mut s = 0.0;
        (0..q).all(|m| {
            s += y[m];
            s <= bounds[m] + HULL_SLACK
        })
    })
}

/// `conj λ ∈ W·λ` (tolerance `1e-10`) and `Im λ ∈ co(W·ρ)`.
pub fn in_dual(lambda: &SpectralParam, params: &BCParams) -> bool {
    conj_in_orbit(lambda) && co_hull_member(&lambda.im(), &params.rho)
}

pub(crate) fn conj_in_orbit(lambda: &SpectralParam) -> bool {
    let target = lambda.conj().0;
    WeylGroupBC::new(lambda.rank())
        .iter()
        .any(|w| max_dist(&w.apply(&lambda.0), &target) <= 1e-10)
}

/// Dominance order on partitions: `η ≤ ν` iff every partial sum of `ν − η`
/// is non-negative.
pub fn dominated_by(eta: &[usize], nu: &[usize]) -> bool {
    let mut diff: i64 = 0;
    for (e, n) in eta.iter().zip(nu) {
        diff += *n as i64 - *e as i64;
        if diff < 0 {
            return false;
        }
    }
    true
}

/// Partitions with at most `q` parts and `|η| ≤ max_size`.
pub fn partitions_up_to(q: usize, max_size: usize) -> Vec<Vec<usize>> {
    fn rec(q: usize, bound: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for v in (0..=bound.min(left)).rev() {
            cur.push(v);
            rec(q, v, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(q, max_size, max_size, &mut Vec::new(), &mut out);
    out
}

/// All dominant `η ≤ ν`, listed in an order compatible with dominance
/// (smaller first), ending with `ν`.
pub fn dominated_weights(nu: &[usize]) -> Vec<Vec<usize>> {
    let size: usize = nu.iter().sum();
    let mut v: Vec<Vec<usize>> = partitions_up_to(nu.len(), size)
        .into_iter()
        .filter(|eta| dominated_by(eta, nu))
        .collect();
    // partial sums increase along the order, so lexicographic on prefix sums works
    v.sort_by_key(|eta| {
        eta.iter()
            .scan(0usize, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect::<Vec<_>>()
    });
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parameter_examples() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        assert_eq!(p.k, [1.0, 0.0, 0.5]);
        assert_eq!(p.rho, vec![2.0, 1.0]);
        assert_eq!(derive_params(FieldTag::C, 1, 5.0).unwrap().gamma, 2.0);
        assert!(matches!(derive_params(FieldTag::R, 2, 1.0), Err(Error::Domain(_))));
        assert!(derive_params(FieldTag::R, 2, 1.5).is_err());
    }

    #[test]
    fn group_multiplicities_match_geometric_case() {
        // p = 4, d = 1, q = 2: (d(p-q)/2, (d-1)/2, d/2)
        let p = derive_params(FieldTag::R, 2, 4.0 * 1.0 / 2.0).unwrap();
        assert_eq!(p.k, [(4.0 - 2.0) / 2.0, 0.0, 0.5]);
    }

    #[test]
    fn rho_agrees_with_root_sum() {
        for f in FieldTag::ALL {
            for q in 1..=4 {
                let p = derive_params(f, q, f.d() * q as f64 + 0.37).unwrap();
                let r = rho_from_roots(q, &p.k);
                for (a, b) in r.iter().zip(&p.rho) {
                    assert!((a - b).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn weyl_group_is_closed_and_isometric() {
        let g = WeylGroupBC::new(3);
        assert_eq!(g.order(), 48);
        let all: Vec<SignedPerm> = g.iter().collect();
        for i in 0..all.len() {
            assert!(!all[..i].contains(&all[i]));
        }
        let x = [0.3, -1.2, 2.5];
        for (a, b) in [(3, 17), (40, 5), (22, 22)] {
            let ab = all[a].compose(&all[b]);
            assert!(all.contains(&ab));
            assert_eq!(ab.apply(&x), all[a].apply(&all[b].apply(&x)));
            let n: f64 = all[a].apply(&x).iter().map(|v| v * v).sum();
            assert!((n - x.iter().map(|v| v * v).sum::<f64>()).abs() < 1e-14);
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(weyl_orbit(&[c(2.0, 0.0)]).unwrap().len(), 2);
        assert_eq!(weyl_orbit(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap().len(), 4);
        assert_eq!(weyl_orbit(&[c(2.0, 0.0), c(1.0, 0.0)]).unwrap().len(), 8);
        assert_eq!(weyl_orbit(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap().len(), 1);
        assert!(matches!(weyl_orbit(&[c(1.0, 0.0); 5]), Err(Error::Capacity(_))));
    }

    #[test]
    fn hull_examples() {
        let rho = [2.0, 1.0];
        assert!(co_hull_member(&[0.0, 0.0], &rho));
        assert!(co_hull_member(&rho, &rho));
        assert!(!co_hull_member(&[3.0, 1.0], &rho));
        assert!(!co_hull_member_brute(&[3.0, 1.0], &rho));
        assert!(co_hull_member(&[-1.0, 2.0], &rho));
        assert!(!co_hull_member(&[1.6, 1.6], &rho));
    }

    #[test]
    fn dual_examples() {
        let p = derive_params(FieldTag::R, 2, 2.0).unwrap();
        assert!(in_dual(&SpectralParam::real(&[1.3, 0.2]), &p));
        let irho = SpectralParam(p.rho.iter().map(|&r| c(0.0, r)).collect());
        assert!(in_dual(&irho, &p));
        let p1 = derive_params(FieldTag::R, 1, 2.0).unwrap();
        assert!(!in_dual(&SpectralParam(vec![c(1.0, 1.0)]), &p1));
        // (1+i, 1-i) is mapped to its conjugate by swapping coordinates
        assert!(in_dual(&SpectralParam(vec![c(1.0, 0.5), c(1.0, -0.5)]), &p));
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1.7").unwrap(), c(1.7, 0.0));
        assert_eq!(parse_complex("1.7+0.6i").unwrap(), c(1.7, 0.6));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), c(1e-3, -25.0));
        assert!(parse_complex("abc").is_err());
        let l = SpectralParam::parse("1,0.5i").unwrap();
        assert_eq!(l.0, vec![c(1.0, 0.0), c(0.0, 0.5)]);
    }

    #[test]
    fn dominance() {
        let w = dominated_weights(&[2, 0]);
        assert_eq!(w, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0]]);
        let w = dominated_weights(&[1, 1]);
        assert_eq!(w, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert!(!dominated_by(&[2, 0], &[1, 1]));
        assert_eq!(partitions_up_to(2, 2).len(), 4);
        assert_eq!(partitions_up_to(3, 2).len(), 4);
    }
}
