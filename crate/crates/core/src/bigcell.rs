//! Polynomials on the big cell and on its partial compactification, and the
//! seminorms `Θ(x,y)` / `Θ̄(x,y)` evaluated on them.
//!
//! A polynomial is a finite sum `Σ a_{χ,ν} χ ξ^ν`. Characters `χ` are stored
//! in root-lattice coordinates and `ν` as multiplicities on root indices.
//! In valuation coordinates the seminorm of a pair `(x, y)` in the chart `c`
//! reads
//!
//! ```text
//! min over terms of  val(a) + val_y(χ) - val_x(χ)
//!                    + Σ_{α ∈ cΦ⁻} ν(α)·val_y(α) + Σ_{α ∈ cΦ⁺} ν(α)·val_x(α)
//! ```

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::apartment::{chart_multiplicities, ApartmentPoint, BoundaryPoint};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, WeylElement};
use crate::valued::{Val, ValuedField};
use crate::Q;

/// Which coordinate ring a polynomial belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ring {
    /// `k[X*(T)][(ξ_α)]`, the big cell.
    Laurent,
    /// `k[⟨cΦ⁻⟩][(ξ_α)]` for the chart `c`.
    Monoid(WeylElement),
}

/// Exponent data `(χ, ν)` of a term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub chi: Vec<i64>,
    /// `(root index, multiplicity)`, sorted, no zero multiplicities.
    pub nu: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn new(chi: Vec<i64>, nu: impl IntoIterator<Item = (usize, u32)>) -> Monomial {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (k, m) in nu {
            *map.entry(k).or_default() += m;
        }
        Monomial { chi, nu: map.into_iter().filter(|&(_, m)| m > 0).collect() }
    }

    pub fn one(rank: usize) -> Monomial {
        Monomial { chi: vec![0; rank], nu: Vec::new() }
    }

    pub fn character(chi: Vec<i64>) -> Monomial {
        Monomial { chi, nu: Vec::new() }
    }

    pub fn xi(rank: usize, root: usize) -> Monomial {
        Monomial { chi: vec![0; rank], nu: vec![(root, 1)] }
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let chi = self.chi.iter().zip(&o.chi).map(|(a, b)| a + b).collect();
        Monomial::new(chi, self.nu.iter().chain(&o.nu).copied())
    }

    /// `χ ↦ w(χ)`, `ξ_α ↦ ξ_{w(α)}`.
    pub fn transported(&self, w: &WeylElement, perm: &[usize]) -> Monomial {
        Monomial::new(w.apply(&self.chi), self.nu.iter().map(|&(k, m)| (perm[k], m)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(")?;
        for (i, c) in self.chi.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")?;
        for (k, m) in &self.nu {
            write!(f, "*xi{k}^{m}")?;
        }
        Ok(())
    }
}

/// Element of `k[X*(T)][(ξ_α)]` or `k[⟨cΦ⁻⟩][(ξ_α)]` with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPolynomial<C> {
    ring: Ring,
    rank: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: crate::valued::Coefficient> CellPolynomial<C> {
    pub fn zero(ring: Ring, rank: usize) -> CellPolynomial<C> {
        CellPolynomial { ring, rank, terms: BTreeMap::new() }
    }

    pub fn monomial(rs: &RootSystem, ring: Ring, m: Monomial, c: C) -> Result<CellPolynomial<C>> {
        CellPolynomial::from_terms(rs, ring, [(m, c)])
    }

    pub fn one(ring: Ring, rank: usize) -> CellPolynomial<C> {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(rank), C::one());
        CellPolynomial { ring, rank, terms }
    }

    /// Collects terms, merging equal exponents and dropping zero coefficients.
    pub fn from_terms(
        rs: &RootSystem,
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<CellPolynomial<C>> {
        let rank = rs.rank();
        let mut out = CellPolynomial::zero(ring, rank);
        for (m, c) in terms {
            if m.chi.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: m.chi.len() });
            }
            if let Some(&(k, _)) = m.nu.iter().find(|&&(k, _)| k >= rs.num_roots()) {
                return Err(Error::BadRootIndex(k));
            }
            out.validate_chi(rs, &m.chi)?;
            out.accumulate(m, c);
        }
        Ok(out)
    }

    fn validate_chi(&self, rs: &RootSystem, chi: &[i64]) -> Result<()> {
        if let Ring::Monoid(chart) = &self.ring {
            if chart_multiplicities(rs, chart, chi).iter().any(|&m| m < 0) {
                return Err(Error::NotInMonoid);
            }
        }
        Ok(())
    }

    fn accumulate(&mut self, m: Monomial, c: C) {
        if let Some(slot) = self.terms.get_mut(&m) {
            let sum = slot.clone() + c;
            if sum.is_zero() {
                self.terms.remove(&m);
            } else {
                *slot = sum;
            }
        } else if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ring(&self, o: &CellPolynomial<C>) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::RingMismatch("operands live in different coordinate rings"));
        }
        Ok(())
    }

    pub fn add(&self, o: &CellPolynomial<C>) -> Result<CellPolynomial<C>> {
        self.same_ring(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.accumulate(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> CellPolynomial<C> {
        CellPolynomial {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, o: &CellPolynomial<C>) -> Result<CellPolynomial<C>> {
        self.add(&o.neg())
    }

    /// Convolution product.
    pub fn mul(&self, o: &CellPolynomial<C>) -> Result<CellPolynomial<C>> {
        self.same_ring(o)?;
        let mut out = CellPolynomial::zero(self.ring.clone(), self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.accumulate(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Re-expresses `f` through `w`: `χ ↦ w(χ)` and `ξ_α ↦ ξ_{w(α)}`; a monoid
    /// polynomial of chart `c` lands in the chart `w·c`.
    pub fn weyl_transport(&self, rs: &RootSystem, w: &WeylElement) -> Result<CellPolynomial<C>> {
        let perm = rs.root_permutation(w);
        let ring = match &self.ring {
            Ring::Laurent => Ring::Laurent,
            Ring::Monoid(c) => Ring::Monoid(w.compose(rs, c)),
        };
        CellPolynomial::from_terms(rs, ring, self.terms.iter().map(|(m, c)| (m.transported(w, &perm), c.clone())))
    }
}

impl<C: fmt::Display> fmt::Display for CellPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]*{m}")?;
        }
        Ok(())
    }
}

/// The seminorm attached to `(x, y)`, with `y` carrying the chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seminorm<'a> {
    rs: &'a RootSystem,
    pub x: ApartmentPoint,
    pub y: BoundaryPoint,
}

impl<'a> Seminorm<'a> {
    pub fn new(rs: &'a RootSystem, x: ApartmentPoint, y: BoundaryPoint) -> Result<Seminorm<'a>> {
        let n = rs.rank();
        if x.rank() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.rank() });
        }
        if y.rank() != n {
            return Err(Error::DimensionMismatch { expected: n, found: y.rank() });
        }
        Ok(Seminorm { rs, x, y })
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn chart(&self) -> &WeylElement {
        self.y.chart()
    }

    fn check_ring(&self, ring: &Ring) -> Result<()> {
        match ring {
            Ring::Laurent if !self.y.is_interior() => Err(Error::LaurentAtBoundary),
            Ring::Monoid(c) if c != self.y.chart() => Err(Error::ChartMismatch),
            _ => Ok(()),
        }
    }

    /// Value of the monomial `χ ξ^ν` (coefficient 1).
    pub fn monomial_value(&self, m: &Monomial) -> Result<Val> {
        let rs = self.rs;
        let mut v = self.y.value_at(rs, &m.chi)? - &self.x.pair(&m.chi);
        let chart_inv = if self.chart().is_identity() { None } else { Some(self.chart().inverse(rs)) };
        for &(k, mult) in &m.nu {
            let alpha = rs.root(k);
            let negative_in_chart = match &chart_inv {
                None => !rs.is_positive(k),
                Some(ci) => ci.apply(alpha).iter().all(|&c| c <= 0),
            };
            let factor = if negative_in_chart { self.y.value_at(rs, alpha)? } else { self.x.pair_val(alpha) };
            v = v + factor.times(mult as u64);
        }
        Ok(v)
    }

    /// Value of every term, in term order.
    pub fn term_values<F: ValuedField>(&self, field: &F, f: &CellPolynomial<F::Elem>) -> Result<Vec<Val>> {
        self.check_ring(&f.ring)?;
        f.terms.iter().map(|(m, c)| Ok(field.val(c) + self.monomial_value(m)?)).collect()
    }

    /// `val` of `|f|(Θ̄(x,y))`; `+∞` for the zero polynomial.
    pub fn eval<F: ValuedField>(&self, field: &F, f: &CellPolynomial<F::Elem>) -> Result<Val> {
        Ok(self.term_values(field, f)?.into_iter().min().unwrap_or(Val::Inf))
    }

    /// Recovers `(x, y)` from the values at the coordinates `ξ_α`.
    pub fn reconstruct(&self) -> (ApartmentPoint, BoundaryPoint) {
        reconstruct_with(self.rs, self.chart(), |m| self.monomial_value(m)).expect("monomials ξ_α always evaluate")
    }

    /// Seminorm of the pair translated by torus elements `s` (acting on `y`)
    /// and `t` (acting on `x`). The shifts are the valuations of `s` and `t`
    /// on the negative simple roots `-α_i`, the frame boundary coordinates are
    /// written in: in the standard chart `y`'s coordinates move by exactly
    /// `sval`.
    pub fn translate(&self, sval: &[Q], tval: &[Q]) -> Seminorm<'a> {
        Seminorm { rs: self.rs, x: self.x.shifted(&negated(tval)), y: self.y.shifted(&negated(sval)) }
    }

    /// The pair `(w·x, w·y)`, read in the chart `w·c`.
    pub fn weyl_act(&self, w: &WeylElement) -> Seminorm<'a> {
        Seminorm { rs: self.rs, x: self.x.weyl_act(self.rs, w), y: self.y.weyl_act(self.rs, w) }
    }
}

/// Decodes `(x, y)` from a seminorm given only as an evaluator on monomials in
/// the chart `c`: `val_x(cα_i)` is the value at `ξ_{cα_i}` and
/// `val_y(c(-α_i))` the value at `ξ_{c(-α_i)}`.
pub fn reconstruct_with(
    rs: &RootSystem,
    chart: &WeylElement,
    mut eval: impl FnMut(&Monomial) -> Result<Val>,
) -> Result<(ApartmentPoint, BoundaryPoint)> {
    let n = rs.rank();
    let perm = rs.root_permutation(chart);
    let mut x_chart = Vec::with_capacity(n);
    let mut y_coords = Vec::with_capacity(n);
    for i in 0..n {
        let pos = perm[i];
        let neg = perm[rs.negate(i)];
        match eval(&Monomial::xi(n, pos))? {
            Val::Fin(q) => x_chart.push(q),
            Val::Inf => {
                return Err(Error::PatternMismatch {
                    tau: alloc::string::String::new(),
                    detail: alloc::format!("positive coordinate ξ_{pos} vanishes"),
                })
            }
        }
        y_coords.push(eval(&Monomial::xi(n, neg))?);
    }
    let x = ApartmentPoint::from_chart_values(rs, chart, &x_chart);
    let y = BoundaryPoint::new(chart.clone(), y_coords)?;
    Ok((x, y))
}

/// Valuation of the per-term multiplier `χ(s)χ(t)⁻¹ Π_{cΦ⁻} α(s)^ν Π_{cΦ⁺} α(t)^ν`
/// picked up by `χ ξ^ν` under the translation of [`Seminorm::translate`].
pub fn torus_multiplier(rs: &RootSystem, chart: &WeylElement, m: &Monomial, sval: &[Q], tval: &[Q]) -> Q {
    let s = ApartmentPoint::new(negated(sval));
    let t = ApartmentPoint::new(negated(tval));
    let ci = chart.inverse(rs);
    let mut acc = s.pair(&m.chi) - t.pair(&m.chi);
    for &(k, mult) in &m.nu {
        let alpha = rs.root(k);
        let neg = ci.apply(alpha).iter().all(|&c| c <= 0);
        let v = if neg { s.pair(alpha) } else { t.pair(alpha) };
        acc += v * Q::from_integer(mult.into());
    }
    acc
}

fn negated(v: &[Q]) -> Vec<Q> {
    v.iter().map(|q| -q).collect()
}

/// Gauss norm of `f`: the minimum coefficient valuation.
pub fn gauss_norm<F: ValuedField>(field: &F, f: &CellPolynomial<F::Elem>) -> Val {
    f.terms().map(|(_, c)| field.val(c)).min().unwrap_or(Val::Inf)
}

/// Convenience constructor for the monoid ring of the standard chart.
pub fn standard_monoid(rank: usize) -> Ring {
    Ring::Monoid(WeylElement::identity(rank))
}
