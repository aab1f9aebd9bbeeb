//! Boundary combinatorics of the wonderful compactification.
//!
//! The `G×G`-orbits `X(τ)` are indexed by types `τ ⊆ Δ`. Inside the toric
//! slice `Z = Spec k[⟨Φ⁻⟩]` the orbit `X(τ)` cuts out `Z(τ)`: the negative
//! roots of the opposite unipotent radical vanish, the negative Levi roots do
//! not. In valuation coordinates a point of `Z` is a [`BoundaryPoint`] and
//! vanishing means `+∞`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::apartment::{ApartmentPoint, BoundaryPoint};
use crate::bigcell::{Monomial, Seminorm};
use crate::error::{Error, Result};
use crate::rootsys::{LeviDecomposition, ParabolicType, RootSystem, WeylElement};
use crate::valued::Val;
use crate::Q;

/// The parabolic `P = c·P_τ·c⁻¹ ⊇ T` of a stratum, with its root data moved
/// into the chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumDescriptor {
    pub tau: ParabolicType,
    /// Minimal-length representative of `c·W_τ`.
    pub chart: WeylElement,
    /// `Φ(L)`, `Φ(R_u(P))`, `Φ(L)⁺`, `Φ(L)⁻` as root indices, transported by
    /// the chart and sorted.
    pub roots: LeviDecomposition,
}

impl StratumDescriptor {
    pub fn new(rs: &RootSystem, chart: &WeylElement, tau: ParabolicType) -> StratumDescriptor {
        let chart = rs.min_coset_rep(chart, tau);
        let perm = rs.root_permutation(&chart);
        let std = rs.levi_and_radical_roots(tau);
        let mv = |v: &[usize]| {
            let mut out: Vec<usize> = v.iter().map(|&k| perm[k]).collect();
            out.sort_unstable();
            out
        };
        let roots = LeviDecomposition {
            levi: mv(&std.levi),
            radical: mv(&std.radical),
            levi_positive: mv(&std.levi_positive),
            levi_negative: mv(&std.levi_negative),
        };
        StratumDescriptor { tau, chart, roots }
    }

    pub fn is_closed_orbit(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn is_open(&self, rank: usize) -> bool {
        self.tau == ParabolicType::full(rank)
    }

    /// Root indices of `-Φ(R_u(P))`, the coordinates vanishing on `Z(τ)`.
    pub fn vanishing_roots(&self, rs: &RootSystem) -> Vec<usize> {
        let mut v: Vec<usize> = self.roots.radical.iter().map(|&k| rs.negate(k)).collect();
        v.sort_unstable();
        v
    }

    pub fn report(&self, rs: &RootSystem) -> String {
        let n = rs.rank();
        alloc::format!(
            "tau={} chart={} levi={} radical={} closed={} open={}",
            self.tau.bitstring(n),
            self.chart,
            self.roots.levi.len(),
            self.roots.radical.len(),
            self.is_closed_orbit(),
            self.is_open(n)
        )
    }
}

/// Chart coordinates of a point of the flag variety `Par_τ(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    pub chart: WeylElement,
    pub tau: ParabolicType,
    /// `(α, val |ξ_α|)` for `α ∈ Φ(R_u(P))`, sorted by root index.
    pub coords: Vec<(usize, Q)>,
}

impl fmt::Display for FlagPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{{", self.chart)?;
        for (i, (k, v)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// `e_{(T,B),τ}`: coordinate `0` on `τ`, `+∞` off `τ`.
pub fn base_point(rs: &RootSystem, tau: ParabolicType) -> BoundaryPoint {
    BoundaryPoint::standard((0..rs.rank()).map(|i| if tau.contains(i) { Val::zero() } else { Val::Inf }).collect())
}

/// `λ_τ`: pairing `0` with the simple roots in `τ` and `1` with the others.
pub fn lambda_tau(rs: &RootSystem, tau: ParabolicType) -> Vec<i64> {
    (0..rs.rank()).map(|i| if tau.contains(i) { 0 } else { 1 }).collect()
}

/// Limit `t → 0` of the one-parameter subgroup with pairings
/// `⟨λ, α_i⟩ = lambda[i]`. Along `val(t) = n`, the coordinate `val(-α_i)` is
/// `n·⟨λ,α_i⟩`, which tends to `+∞`, stays `0`, or diverges to `-∞` (no
/// limit in `Z`).
pub fn one_ps_limit(rs: &RootSystem, lambda: &[i64]) -> Result<BoundaryPoint> {
    if lambda.len() != rs.rank() {
        return Err(Error::DimensionMismatch { expected: rs.rank(), found: lambda.len() });
    }
    if let Some(i) = lambda.iter().position(|&p| p < 0) {
        return Err(Error::LimitDoesNotExist(i));
    }
    Ok(BoundaryPoint::standard(lambda.iter().map(|&p| if p > 0 { Val::Inf } else { Val::zero() }).collect()))
}

/// Point of the curve `λ(t)` at `val(t) = n`.
pub fn one_ps_point(lambda: &[i64], n: i64) -> BoundaryPoint {
    BoundaryPoint::standard(lambda.iter().map(|&p| Val::int(p * n)).collect())
}

/// The closure order on strata, computed two ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePoset {
    pub rank: usize,
    pub types: Vec<ParabolicType>,
    /// `(τ', τ)` with `X(τ') ⊆ X̄(τ)` by the type-subset union formula.
    pub by_subsets: Vec<(ParabolicType, ParabolicType)>,
    /// `(τ', τ)` with `e_τ'` in every boundary divisor `D_i`, `i ∉ τ`.
    pub by_divisors: Vec<(ParabolicType, ParabolicType)>,
    /// Covering relations of the order.
    pub covers: Vec<(ParabolicType, ParabolicType)>,
}

impl ClosurePoset {
    pub fn certified(&self) -> bool {
        self.by_subsets == self.by_divisors
    }

    pub fn in_closure(&self, inner: ParabolicType, outer: ParabolicType) -> bool {
        self.by_subsets.binary_search(&(inner, outer)).is_ok()
    }

    /// The boundary divisors `D_i`, named by their open orbit `Δ ∖ {i}`.
    pub fn divisors(&self) -> Vec<ParabolicType> {
        let full = ParabolicType::full(self.rank);
        (0..self.rank).map(|i| full.remove(i)).collect()
    }
}

/// Vanishing set of a torus point: the simple roots `i` whose coordinate is
/// `+∞`, i.e. the divisors `D_i` containing it.
fn divisors_containing(y: &BoundaryPoint) -> ParabolicType {
    ParabolicType::from_indices(y.coords().iter().enumerate().filter(|(_, v)| v.is_inf()).map(|(i, _)| i))
}

pub fn closure_poset(rs: &RootSystem) -> ClosurePoset {
    let poset = rs.type_poset();
    let n = rs.rank();
    let mut by_subsets = Vec::new();
    let mut by_divisors = Vec::new();
    for &outer in &poset.types {
        // X̄(τ) = ⋂_{i ∈ Δ∖τ} D_i
        let required = outer.complement(n);
        for &inner in &poset.types {
            if poset.leq(inner, outer) {
                by_subsets.push((inner, outer));
            }
            if required.is_subset(divisors_containing(&base_point(rs, inner))) {
                by_divisors.push((inner, outer));
            }
        }
    }
    by_subsets.sort_unstable();
    by_divisors.sort_unstable();
    ClosurePoset { rank: n, types: poset.types.clone(), by_subsets, by_divisors, covers: poset.covers() }
}

/// `π_τ ∘ Θ̄`: the parabolic of `y`'s stratum together with the flag-variety
/// chart coordinates `val |ξ_α| = val_x(α)`, `α ∈ Φ(R_u(P))`.
pub fn project_pi_tau(
    rs: &RootSystem,
    x: &ApartmentPoint,
    y: &BoundaryPoint,
) -> Result<(StratumDescriptor, FlagPoint)> {
    let tau = y.classify_stratum();
    if tau == ParabolicType::full(rs.rank()) {
        return Err(Error::InteriorPoint);
    }
    let desc = StratumDescriptor::new(rs, y.chart(), tau);
    let s = Seminorm::new(rs, x.clone(), y.clone())?;
    let n = rs.rank();
    let coords = desc
        .roots
        .radical
        .iter()
        .map(|&k| match s.monomial_value(&Monomial::xi(n, k))? {
            Val::Fin(q) => Ok((k, q)),
            Val::Inf => Err(Error::PatternMismatch {
                tau: tau.bitstring(n),
                detail: alloc::format!("radical coordinate ξ_{k} vanishes"),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    let flag = FlagPoint { chart: desc.chart.clone(), tau, coords };
    Ok((desc, flag))
}

/// Evaluates `Θ̄(x,y)` on every coordinate `χ_α` (`α ∈ cΦ⁻`) and `ξ_α`
/// (`α ∈ Φ`) and checks the value table of the stratum `X(τ) ∩ Ḡ₀`:
///
/// - `|α| = ⟨y,α⟩⟨x,α⟩⁻¹` vanishes iff `α ∈ -Φ(R_u(P))`;
/// - `|ξ_α|` is `0` on `-Φ(R_u(P))`, `⟨y,α⟩` on `Φ(L)⁻` and `⟨x,α⟩` on
///   `Φ(L)⁺ ∪ Φ(R_u(P))`, the Levi signs taken for the Borel of `y`'s chart.
pub fn stratum_membership(rs: &RootSystem, x: &ApartmentPoint, y: &BoundaryPoint) -> Result<StratumDescriptor> {
    let n = rs.rank();
    let tau = y.classify_stratum();
    let desc = StratumDescriptor::new(rs, y.chart(), tau);
    let s = Seminorm::new(rs, x.clone(), y.clone())?;
    let vanishing = desc.vanishing_roots(rs);
    let mismatch = |detail: String| Error::PatternMismatch { tau: tau.bitstring(n), detail };

    let perm = rs.root_permutation(y.chart());
    for k in rs.negative_roots().map(|k| perm[k]) {
        let alpha = rs.root(k);
        let v = s.monomial_value(&Monomial::character(alpha.to_vec()))?;
        let expect = y.value_at(rs, alpha)? - &x.pair(alpha);
        if v != expect {
            return Err(mismatch(alloc::format!("|χ_{k}| = {v}, expected {expect}")));
        }
        if v.is_inf() != vanishing.binary_search(&k).is_ok() {
            return Err(mismatch(alloc::format!("vanishing of χ_{k}")));
        }
    }
    let chart_inv = y.chart().inverse(rs);
    let chart_negative = |k: usize| chart_inv.apply(rs.root(k)).iter().all(|&c| c <= 0);
    for k in 0..rs.num_roots() {
        let v = s.monomial_value(&Monomial::xi(n, k))?;
        let in_levi = desc.roots.levi.binary_search(&k).is_ok();
        let expect = if vanishing.binary_search(&k).is_ok() {
            Val::Inf
        } else if in_levi && chart_negative(k) {
            y.value_at(rs, rs.root(k))?
        } else if in_levi || desc.roots.radical.binary_search(&k).is_ok() {
            x.pair_val(rs.root(k))
        } else {
            return Err(mismatch(alloc::format!("root {k} is in no part of the decomposition")));
        };
        if v != expect {
            return Err(mismatch(alloc::format!("|ξ_{k}| = {v}, expected {expect}")));
        }
    }
    Ok(desc)
}

/// Types of the strata met by the closure of `Z(τ)` in `Z`, found by running
/// through every `0/+∞` pattern that vanishes off `τ`.
pub fn closure_types(rs: &RootSystem, tau: ParabolicType) -> Vec<ParabolicType> {
    let n = rs.rank();
    let mut out: Vec<ParabolicType> = Vec::new();
    for bits in 0..1u64 << n {
        let coords: Vec<Val> =
            (0..n).map(|i| if tau.contains(i) && bits >> i & 1 == 1 { Val::zero() } else { Val::Inf }).collect();
        let t = BoundaryPoint::standard(coords).classify_stratum();
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out.sort_by_key(|t| (t.len(), t.0));
    out
}

/// `{a1,a3}`-style name of a type.
pub fn tau_label(tau: ParabolicType) -> String {
    if tau.is_empty() {
        return "{}".to_string();
    }
    let names: Vec<String> = tau.iter().map(|i| alloc::format!("a{}", i + 1)).collect();
    alloc::format!("{{{}}}", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn base_points_of_a2() {
        let a2 = rs("A2");
        let t1 = ParabolicType::from_indices([0]);
        assert_eq!(base_point(&a2, t1).coords(), &[Val::zero(), Val::Inf]);
        assert_eq!(base_point(&a2, ParabolicType::full(2)).coords(), &[Val::zero(), Val::zero()]);
        assert_eq!(base_point(&a2, ParabolicType::EMPTY).coords(), &[Val::Inf, Val::Inf]);
    }

    #[test]
    fn one_ps_limits() {
        let a2 = rs("A2");
        let t1 = ParabolicType::from_indices([0]);
        assert_eq!(one_ps_limit(&a2, &lambda_tau(&a2, t1)).unwrap(), base_point(&a2, t1));
        assert_eq!(one_ps_limit(&a2, &[0, 0]).unwrap(), BoundaryPoint::standard(vec![Val::zero(); 2]));
        assert_eq!(one_ps_limit(&a2, &[2, 1]).unwrap(), base_point(&a2, ParabolicType::EMPTY));
        assert_eq!(one_ps_limit(&a2, &[1, -1]), Err(Error::LimitDoesNotExist(1)));
    }

    #[test]
    fn a2_closures() {
        let a2 = rs("A2");
        let p = closure_poset(&a2);
        assert!(p.certified());
        let t1 = ParabolicType::from_indices([0]);
        let inside: Vec<ParabolicType> = p.types.iter().copied().filter(|&t| p.in_closure(t, t1)).collect();
        assert_eq!(inside, vec![ParabolicType::EMPTY, t1]);
        for &t in &p.types {
            assert!(p.in_closure(ParabolicType::EMPTY, t));
        }
        assert_eq!(p.divisors().len(), 2);
    }

    #[test]
    fn pi_tau_at_base_point() {
        let a2 = rs("A2");
        let t1 = ParabolicType::from_indices([0]);
        let y = base_point(&a2, t1);
        let (desc, flag) = project_pi_tau(&a2, &ApartmentPoint::origin(2), &y).unwrap();
        assert_eq!(desc.tau, t1);
        assert!(desc.chart.is_identity());
        let zero = Q::from_integer(0.into());
        assert_eq!(flag.coords, vec![(1, zero.clone()), (2, zero)]);
        let x = ApartmentPoint::new(vec![Q::from_integer(1.into()), Q::from_integer(1.into())]);
        let (_, flag) = project_pi_tau(&a2, &x, &y).unwrap();
        assert_eq!(flag.coords, vec![(1, Q::from_integer(1.into())), (2, Q::from_integer(2.into()))]);
        assert_eq!(project_pi_tau(&a2, &x, &base_point(&a2, ParabolicType::full(2))), Err(Error::InteriorPoint));
    }

    #[test]
    fn membership_patterns() {
        let a2 = rs("A2");
        let x = ApartmentPoint::new(vec![Q::new(3.into(), 2.into()), Q::from_integer((-2).into())]);
        let d = stratum_membership(&a2, &x, &base_point(&a2, ParabolicType::full(2))).unwrap();
        assert!(d.vanishing_roots(&a2).is_empty());
        let d = stratum_membership(&a2, &x, &base_point(&a2, ParabolicType::EMPTY)).unwrap();
        assert_eq!(d.vanishing_roots(&a2), vec![3, 4, 5]);
        let d = stratum_membership(&a2, &x, &base_point(&a2, ParabolicType::from_indices([0]))).unwrap();
        let vanishing: Vec<&[i64]> = d.vanishing_roots(&a2).into_iter().map(|k| a2.root(k)).collect();
        assert_eq!(vanishing, vec![&[0, -1][..], &[-1, -1][..]]);
    }

    #[test]
    fn closure_types_are_subsets() {
        let b2a1 = rs("B2xA1");
        let tau = ParabolicType::from_indices([0, 2]);
        let got = closure_types(&b2a1, tau);
        let expect: Vec<ParabolicType> = b2a1.type_poset().types.into_iter().filter(|t| t.is_subset(tau)).collect();
        assert_eq!(got, expect);
    }
}
