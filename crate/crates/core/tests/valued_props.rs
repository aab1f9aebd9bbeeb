use bt_wonder_core::valued::tropical_min_plus;
use bt_wonder_core::{PAdic, RatFn, TAdic, Val, ValuedField, Q};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-64i64..=64, 1i64..=8).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn val() -> impl Strategy<Value = Val> {
    prop_oneof![1 => Just(Val::Inf), 3 => rational().prop_map(Val::Fin)]
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (1i64..=5000, 1i64..=5000, any::<bool>())
        .prop_map(|(n, d, neg)| Q::new((if neg { -n } else { n }).into(), d.into()))
}

/// `t^k (a + b t + c t²)` over a small denominator.
fn ratfn() -> impl Strategy<Value = RatFn> {
    (-3i32..=3, 1i64..=5, -5i64..=5, -5i64..=5, 1i64..=4, -3i64..=3).prop_map(|(k, a, b, c, d, e)| {
        let t = RatFn::t;
        let cst = |v: i64| RatFn::constant(Q::from_integer(v.into()));
        let num = cst(a) + cst(b) * t() + cst(c) * t().pow(2);
        let den = cst(d) + cst(e) * t();
        let tk = if k >= 0 { t().pow(k as u32) } else { t().pow((-k) as u32).inv().unwrap() };
        tk * num * den.inv().unwrap()
    })
}

/// Reference `p`-adic order by repeated division on machine integers.
fn ord_p(mut n: i64, p: i64) -> i64 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

proptest! {
    #[test]
    fn tropical_semiring_laws(a in val(), b in val(), c in val()) {
        // ⊕ = min, ⊗ = +
        prop_assert_eq!(a.clone().min(b.clone()), b.clone().min(a.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone().min(b.clone()).min(c.clone()), a.clone().min(b.clone().min(c.clone())));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() + b.clone().min(c.clone()), (a.clone() + b.clone()).min(a.clone() + c.clone()));
        prop_assert_eq!(a.clone().min(Val::Inf), a.clone());
        prop_assert_eq!(a.clone() + Val::zero(), a.clone());
        prop_assert_eq!(a.clone() + Val::Inf, Val::Inf);
        prop_assert_eq!(a.clone().min(a.clone()), a.clone());
    }

    #[test]
    fn tropical_min_plus_is_min(vs in proptest::collection::vec(val(), 1..8)) {
        let want = vs.iter().cloned().min().unwrap();
        prop_assert_eq!(tropical_min_plus(vs), Ok(want));
    }

    #[test]
    fn val_text_round_trip(a in val()) {
        prop_assert_eq!(a.to_string().parse::<Val>().unwrap(), a);
    }

    #[test]
    fn padic_matches_reference(n in 1i64..100_000, d in 1i64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let field = PAdic::new(p).unwrap();
        let want = ord_p(n, p as i64) - ord_p(d, p as i64);
        prop_assert_eq!(field.val(&Q::new(n.into(), d.into())), Val::int(want));
    }

    #[test]
    fn padic_homomorphism_and_ultrametric(a in nonzero_rational(), b in nonzero_rational(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = PAdic::new(p).unwrap();
        prop_assert_eq!(f.val(&(&a * &b)), f.val(&a) + f.val(&b));
        let s = &a + &b;
        let m = f.val(&a).min(f.val(&b));
        prop_assert!(f.val(&s) >= m);
        if f.val(&a) != f.val(&b) {
            prop_assert_eq!(f.val(&s), m);
        }
        prop_assert_eq!(f.val(&Q::zero()), Val::Inf);
    }

    #[test]
    fn tadic_homomorphism_and_ultrametric(a in ratfn(), b in ratfn()) {
        let f = TAdic;
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(f.val(&(a.clone() * b.clone())), f.val(&a) + f.val(&b));
        let s = a.clone() + b.clone();
        let m = f.val(&a).min(f.val(&b));
        prop_assert!(f.val(&s) >= m);
        if f.val(&a) != f.val(&b) {
            prop_assert_eq!(f.val(&s), m);
        }
    }

    #[test]
    fn ratfn_text_round_trip(a in ratfn()) {
        let back: RatFn = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
