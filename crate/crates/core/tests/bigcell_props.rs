use bt_wonder_core::bigcell::gauss_norm;
use bt_wonder_core::{
    ApartmentPoint, BoundaryPoint, CellPolynomial, Monomial, PAdic, Ring, RootSystem, Seminorm, Val, ValuedField,
    WeylElement, Q,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const SYSTEMS: &[&str] = &["A1", "A2", "B2", "G2"];

fn rational() -> impl Strategy<Value = Q> {
    (-64i64..=64, 1i64..=8).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn coeff() -> impl Strategy<Value = Q> {
    (-2i32..=2, 1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(k, u, v, neg)| {
        let pk = Q::from_integer(2.into()).pow(k);
        Q::new((if neg { -u } else { u }).into(), v.into()) * pk
    })
}

/// Raw term: multiplicities over the chart's `-Δ`, `ν` entries, coefficient.
type RawTerm = (Vec<i64>, Vec<(usize, u32)>, Q);

#[derive(Debug, Clone)]
struct Case {
    system: usize,
    chart: usize,
    x: Vec<Q>,
    y: Vec<Option<Q>>,
    f: Vec<RawTerm>,
    g: Vec<RawTerm>,
}

fn raw_terms() -> impl Strategy<Value = Vec<RawTerm>> {
    proptest::collection::vec(
        (proptest::collection::vec(0i64..=2, 2), proptest::collection::vec((0usize..12, 1u32..=2), 0..=2), coeff()),
        1..=6,
    )
}

fn case() -> impl Strategy<Value = Case> {
    (
        0..SYSTEMS.len(),
        0usize..12,
        proptest::collection::vec(rational(), 2),
        proptest::collection::vec(prop_oneof![1 => Just(None), 2 => rational().prop_map(Some)], 2),
        raw_terms(),
        raw_terms(),
    )
        .prop_map(|(system, chart, x, y, f, g)| Case { system, chart, x, y, f, g })
}

struct Built {
    rs: RootSystem,
    chart: WeylElement,
    x: ApartmentPoint,
    y: BoundaryPoint,
    f: CellPolynomial<Q>,
    g: CellPolynomial<Q>,
}

fn build(c: &Case) -> Built {
    let rs: RootSystem = SYSTEMS[c.system].parse().unwrap();
    let n = rs.rank();
    let w = rs.weyl_group(100).unwrap();
    let chart = w.elements[c.chart % w.order()].clone();
    let x = ApartmentPoint::new(c.x[..n].to_vec());
    let y = BoundaryPoint::new(chart.clone(), c.y[..n].iter().map(|v| v.clone().map_or(Val::Inf, Val::Fin)).collect())
        .unwrap();
    let poly = |raw: &[RawTerm]| {
        let terms = raw.iter().map(|(m, nu, a)| {
            let chi: Vec<i64> = chart.apply(&m[..n]).into_iter().map(|v| -v).collect();
            let nu: Vec<(usize, u32)> = nu.iter().map(|&(k, e)| (k % rs.num_roots(), e)).collect();
            (Monomial::new(chi, nu), a.clone())
        });
        CellPolynomial::from_terms(&rs, Ring::Monoid(chart.clone()), terms).unwrap()
    };
    let (f, g) = (poly(&c.f), poly(&c.g));
    Built { rs, chart, x, y, f, g }
}

/// Direct formula at an interior point, using only root pairings.
fn interior_monomial(rs: &RootSystem, chart: &WeylElement, x: &ApartmentPoint, z: &ApartmentPoint, m: &Monomial) -> Q {
    let inv = chart.inverse(rs);
    let mut v = z.pair(&m.chi) - x.pair(&m.chi);
    for &(k, e) in &m.nu {
        let a = rs.root(k);
        let chart_negative = inv.apply(a).iter().all(|&c| c <= 0);
        let p = if chart_negative { z.pair(a) } else { x.pair(a) };
        v += p * Q::from_integer(e.into());
    }
    v
}

/// Value at `y` as the limit along interior points replacing `+∞` by `t`;
/// the value is affine in `t`.
fn limit_oracle(b: &Built, f: &CellPolynomial<Q>) -> Val {
    let field = PAdic::new(2).unwrap();
    let approx = |t: i64| {
        let coords = b.y.coords().iter().map(|v| if v.is_inf() { Val::int(t) } else { v.clone() }).collect();
        BoundaryPoint::new(b.chart.clone(), coords).unwrap().to_interior(&b.rs).unwrap()
    };
    let (z1, z2) = (approx(1_000), approx(2_000));
    f.terms()
        .map(|(m, a)| {
            let v1 = interior_monomial(&b.rs, &b.chart, &b.x, &z1, m);
            let v2 = interior_monomial(&b.rs, &b.chart, &b.x, &z2, m);
            match (&v2 - &v1).signum() {
                s if s.is_zero() => field.val(a) + &v1,
                s if s.is_positive() => Val::Inf,
                _ => panic!("monoid monomial diverges to -∞"),
            }
        })
        .min()
        .unwrap_or(Val::Inf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn eval_matches_limit_oracle(c in case()) {
        let b = build(&c);
        let field = PAdic::new(2).unwrap();
        let s = Seminorm::new(&b.rs, b.x.clone(), b.y.clone()).unwrap();
        prop_assert_eq!(s.eval(&field, &b.f).unwrap(), limit_oracle(&b, &b.f));
    }

    #[test]
    fn multiplicative_and_ultrametric(c in case()) {
        let b = build(&c);
        let field = PAdic::new(2).unwrap();
        let s = Seminorm::new(&b.rs, b.x.clone(), b.y.clone()).unwrap();
        let (vf, vg) = (s.eval(&field, &b.f).unwrap(), s.eval(&field, &b.g).unwrap());
        prop_assert_eq!(s.eval(&field, &b.f.mul(&b.g).unwrap()).unwrap(), vf.clone() + vg.clone());
        let vs = s.eval(&field, &b.f.add(&b.g).unwrap()).unwrap();
        let m = vf.clone().min(vg.clone());
        prop_assert!(vs >= m);
        if vf != vg {
            prop_assert_eq!(vs, m);
        }
        if b.y.is_interior() && !b.f.is_zero() {
            prop_assert!(!vf.is_inf());
        }
    }

    #[test]
    fn reconstruction_round_trip(c in case()) {
        let b = build(&c);
        let s = Seminorm::new(&b.rs, b.x.clone(), b.y.clone()).unwrap();
        prop_assert_eq!(s.reconstruct(), (b.x.clone(), b.y.clone()));
    }

    #[test]
    fn gauss_point(c in case()) {
        let b = build(&c);
        let field = PAdic::new(2).unwrap();
        let origin = ApartmentPoint::origin(b.rs.rank());
        let y0 = BoundaryPoint::from_interior(&origin, b.chart.clone());
        let s = Seminorm::new(&b.rs, origin, y0).unwrap();
        prop_assert_eq!(s.eval(&field, &b.f).unwrap(), gauss_norm(&field, &b.f));
    }

    #[test]
    fn weyl_covariance(c in case(), w in 0usize..12) {
        let b = build(&c);
        let field = PAdic::new(2).unwrap();
        let g = b.rs.weyl_group(100).unwrap();
        let w = &g.elements[w % g.order()];
        let s = Seminorm::new(&b.rs, b.x.clone(), b.y.clone()).unwrap();
        let moved = s.weyl_act(w);
        let fw = b.f.weyl_transport(&b.rs, w).unwrap();
        prop_assert_eq!(moved.eval(&field, &fw).unwrap(), s.eval(&field, &b.f).unwrap());
    }
}
