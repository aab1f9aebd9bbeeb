//! Points of the apartment, of its partial compactifications, and the
//! Weyl-fan gluing.
//!
//! An [`ApartmentPoint`] `x` is stored through `val_x(α_i)` for the simple
//! roots, so `⟨x,χ⟩ = b^(-val_x(χ))` with `val_x` extended linearly.
//!
//! A [`BoundaryPoint`] `y` lives in a chart: a Weyl element `c` naming the
//! Borel `cBc⁻¹`. Its coordinate `i` is `val_y(c(-α_i))`, possibly `+∞`, and
//! `val_y` is extended ℕ-linearly to the monoid spanned by the negative roots
//! of the chart.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{ParabolicType, RootSystem, WeylElement};
use crate::valued::Val;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApartmentPoint {
    vals: Vec<Q>,
}

impl ApartmentPoint {
    pub fn new(vals: Vec<Q>) -> ApartmentPoint {
        ApartmentPoint { vals }
    }

    /// The special point `x₀`.
    pub fn origin(rank: usize) -> ApartmentPoint {
        ApartmentPoint { vals: vec![Q::zero(); rank] }
    }

    pub fn vals(&self) -> &[Q] {
        &self.vals
    }

    pub fn rank(&self) -> usize {
        self.vals.len()
    }

    /// `val_x(χ)` for `χ ∈ ℤΔ`.
    pub fn pair(&self, chi: &[i64]) -> Q {
        self.vals
            .iter()
            .zip(chi)
            .filter(|(_, &c)| c != 0)
            .fold(Q::zero(), |acc, (v, &c)| acc + v * Q::from_integer(c.into()))
    }

    pub fn pair_val(&self, chi: &[i64]) -> Val {
        Val::Fin(self.pair(chi))
    }

    /// `w·x`, defined by `val_{w·x}(χ) = val_x(w⁻¹χ)`.
    pub fn weyl_act(&self, rs: &RootSystem, w: &WeylElement) -> ApartmentPoint {
        let winv = w.inverse(rs);
        ApartmentPoint { vals: (0..rs.rank()).map(|i| self.pair(winv.image_of_simple(i))).collect() }
    }

    /// Translation by a torus element with valuations `shift` on the simple
    /// roots.
    pub fn shifted(&self, shift: &[Q]) -> ApartmentPoint {
        ApartmentPoint { vals: self.vals.iter().zip(shift).map(|(a, b)| a + b).collect() }
    }

    /// Recovers `x` from its values on the chart's positive simple roots
    /// `c(α_i)`.
    pub fn from_chart_values(rs: &RootSystem, chart: &WeylElement, values: &[Q]) -> ApartmentPoint {
        let cinv = chart.inverse(rs);
        let vals = (0..rs.rank())
            .map(|j| {
                cinv.image_of_simple(j)
                    .iter()
                    .zip(values)
                    .fold(Q::zero(), |acc, (&k, v)| acc + v * Q::from_integer(k.into()))
            })
            .collect();
        ApartmentPoint { vals }
    }

    /// Values on the chart's positive simple roots `c(α_i)`.
    pub fn chart_values(&self, chart: &WeylElement) -> Vec<Q> {
        (0..chart.rank()).map(|i| self.pair(chart.image_of_simple(i))).collect()
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Point of `Ā^B` for the Borel `B` of its chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    chart: WeylElement,
    coords: Vec<Val>,
}

impl BoundaryPoint {
    pub fn new(chart: WeylElement, coords: Vec<Val>) -> Result<BoundaryPoint> {
        if chart.rank() != coords.len() {
            return Err(Error::DimensionMismatch { expected: chart.rank(), found: coords.len() });
        }
        Ok(BoundaryPoint { chart, coords })
    }

    /// Boundary point in the standard chart.
    pub fn standard(coords: Vec<Val>) -> BoundaryPoint {
        let rank = coords.len();
        BoundaryPoint { chart: WeylElement::identity(rank), coords }
    }

    /// The interior point `x` seen in `chart`.
    pub fn from_interior(x: &ApartmentPoint, chart: WeylElement) -> BoundaryPoint {
        let coords = (0..x.rank()).map(|i| Val::Fin(-x.pair(chart.image_of_simple(i)))).collect();
        BoundaryPoint { chart, coords }
    }

    pub fn chart(&self) -> &WeylElement {
        &self.chart
    }

    pub fn coords(&self) -> &[Val] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|v| !v.is_inf())
    }

    /// The interior point with these coordinates, if no coordinate is `+∞`.
    pub fn to_interior(&self, rs: &RootSystem) -> Option<ApartmentPoint> {
        let positive: Option<Vec<Q>> = self.coords.iter().map(|v| v.finite().map(|q| -q)).collect();
        Some(ApartmentPoint::from_chart_values(rs, &self.chart, &positive?))
    }

    /// `val_y(χ)` for `χ = Σ mults_i · c(-α_i)` with natural multiplicities.
    pub fn boundary_pair(&self, mults: &[i64]) -> Result<Val> {
        if mults.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: mults.len() });
        }
        if mults.iter().any(|&m| m < 0) {
            return Err(Error::NegativeMultiplicity);
        }
        Ok(self.combine(mults))
    }

    /// Multiplicities of `χ ∈ ℤΔ` over the chart's negative simple roots.
    pub fn multiplicities(&self, rs: &RootSystem, chi: &[i64]) -> Vec<i64> {
        chart_multiplicities(rs, &self.chart, chi)
    }

    /// `val_y(χ)` for `χ ∈ ℤΔ`. Characters outside the chart's monoid are
    /// allowed only where the coordinates they need with negative multiplicity
    /// are finite.
    pub fn value_at(&self, rs: &RootSystem, chi: &[i64]) -> Result<Val> {
        let m = self.multiplicities(rs, chi);
        if m.iter().zip(&self.coords).any(|(&k, v)| k < 0 && v.is_inf()) {
            return Err(Error::NotInMonoid);
        }
        Ok(self.combine(&m))
    }

    fn combine(&self, mults: &[i64]) -> Val {
        let mut acc = Q::zero();
        for (&k, v) in mults.iter().zip(&self.coords) {
            if k == 0 {
                continue;
            }
            match v {
                Val::Inf => return Val::Inf,
                Val::Fin(q) => acc += q * Q::from_integer(k.into()),
            }
        }
        Val::Fin(acc)
    }

    /// Type of the stratum: the simple roots whose coordinate is finite.
    pub fn classify_stratum(&self) -> ParabolicType {
        ParabolicType::from_indices(self.coords.iter().enumerate().filter(|(_, v)| !v.is_inf()).map(|(i, _)| i))
    }

    /// `w·y`: same coordinates, chart `w·c`.
    pub fn weyl_act(&self, rs: &RootSystem, w: &WeylElement) -> BoundaryPoint {
        BoundaryPoint { chart: w.compose(rs, &self.chart), coords: self.coords.clone() }
    }

    /// Translation by a torus element with valuations `shift` on the simple
    /// roots; `+∞` coordinates stay at `+∞`.
    pub fn shifted(&self, shift: &[Q]) -> BoundaryPoint {
        let s = ApartmentPoint::new(shift.to_vec());
        let coords =
            self.coords.iter().enumerate().map(|(i, v)| v.clone() - &s.pair(self.chart.image_of_simple(i))).collect();
        BoundaryPoint { chart: self.chart.clone(), coords }
    }

    /// Canonical form in `Ā`: the parabolic of the stratum as (minimal coset
    /// representative, type) and the residual values on the Levi's simple
    /// roots `c'(α_i)`, `i ∈ τ`.
    pub fn canonical(&self, rs: &RootSystem) -> (WeylElement, ParabolicType, Vec<Q>) {
        let tau = self.classify_stratum();
        let rep = rs.min_coset_rep(&self.chart, tau);
        let residual = tau
            .iter()
            .map(|i| {
                let v = self.value_at(rs, rep.image_of_simple(i)).expect("Levi roots avoid vanishing coordinates");
                v.finite().cloned().expect("Levi roots have finite values")
            })
            .collect();
        (rep, tau, residual)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.chart)?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `m` with `χ = Σ m_i c(-α_i)`, i.e. `m = -c⁻¹χ`.
pub fn chart_multiplicities(rs: &RootSystem, chart: &WeylElement, chi: &[i64]) -> Vec<i64> {
    if chart.is_identity() {
        return chi.iter().map(|c| -c).collect();
    }
    chart.inverse(rs).apply(chi).into_iter().map(|c| -c).collect()
}

/// True when the two chart-wise points name the same point of the compactified
/// apartment `Ā`.
pub fn glue_equal(rs: &RootSystem, p: &BoundaryPoint, q: &BoundaryPoint) -> bool {
    p.canonical(rs) == q.canonical(rs)
}

/// Cone `𝔠(P)` of the Weyl fan for the parabolic `P = c·P_τ·c⁻¹ ⊇ T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub chart: WeylElement,
    pub tau: ParabolicType,
}

impl FanCone {
    pub fn new(rs: &RootSystem, chart: &WeylElement, tau: ParabolicType) -> FanCone {
        FanCone { chart: rs.min_coset_rep(chart, tau), tau }
    }

    /// Root indices `α ∈ -Φ(T,P)`; the cone is `{x : val_x(α) ≥ 0}` over them.
    pub fn inequalities(&self, rs: &RootSystem) -> Vec<usize> {
        let perm = rs.root_permutation(&self.chart);
        let mut out: Vec<usize> = (0..rs.num_roots())
            .filter(|&k| !rs.is_positive(k) || RootSystem::support(rs.root(k)).is_subset(self.tau))
            .map(|k| perm[k])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains(&self, rs: &RootSystem, x: &ApartmentPoint) -> bool {
        self.inequalities(rs).into_iter().all(|k| !x.pair(rs.root(k)).is_negative())
    }

    /// Every cone of the fan, one per parabolic containing `T`.
    pub fn all(rs: &RootSystem, weyl: &[WeylElement]) -> Vec<FanCone> {
        let mut out: Vec<FanCone> = Vec::new();
        for tau in rs.type_poset().types {
            for w in weyl {
                let cone = FanCone::new(rs, w, tau);
                if !out.contains(&cone) {
                    out.push(cone);
                }
            }
        }
        out
    }
}

/// Whether `values` converges to `target` as far as the first `horizon` terms
/// show.
///
/// Only the tail (second half of the inspected prefix) is used. A finite
/// target needs non-increasing distances ending within `1/horizon`; the
/// target `+∞` needs a non-decreasing tail that either is already `+∞` or
/// strictly grows.
pub fn val_sequence_converges(values: &[Val], target: &Val, horizon: usize) -> bool {
    let h = horizon.min(values.len());
    if h < 2 {
        return false;
    }
    let tail = &values[h / 2..h];
    match target {
        Val::Fin(t) => {
            let dist: Vec<Option<Q>> = tail.iter().map(|v| v.finite().map(|q| (q - t).abs())).collect();
            if dist.iter().any(Option::is_none) {
                return false;
            }
            let dist: Vec<Q> = dist.into_iter().flatten().collect();
            let monotone = dist.windows(2).all(|w| w[1] <= w[0]);
            let tol = Q::new(1.into(), (horizon as i64).into());
            monotone && dist.last().is_some_and(|d| *d <= tol)
        }
        Val::Inf => {
            let monotone = tail.windows(2).all(|w| w[1] >= w[0]);
            let last = tail.last().expect("nonempty tail");
            monotone && (last.is_inf() || *last > tail[0])
        }
    }
}

/// Coordinatewise convergence of a sequence of boundary points in one chart.
pub fn converges(seq: &[BoundaryPoint], y: &BoundaryPoint, horizon: usize) -> Result<bool> {
    if seq.iter().any(|p| p.chart != y.chart) {
        return Err(Error::ChartMismatch);
    }
    Ok((0..y.rank()).all(|i| {
        let coord: Vec<Val> = seq.iter().map(|p| p.coords[i].clone()).collect();
        val_sequence_converges(&coord, &y.coords[i], horizon)
    }))
}
