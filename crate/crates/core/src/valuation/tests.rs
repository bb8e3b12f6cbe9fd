use proptest::prelude::*;

use super::*;
use crate::residue::FqPoly;

fn b(p: u64) -> PBase {
    PBase::new(p).unwrap()
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn q(n: i64, d: i64) -> Val {
    Val::frac(n, d)
}

fn w0(pr: u64, a: i64, n: i64, d: i64) -> InductiveVal {
    InductiveVal::depth_zero(b(pr), Rat::from_int(a), q(n, d)).unwrap()
}

// x^2 + x + 1
fn c3() -> Poly {
    p(&[1, 1, 1])
}

fn mu1() -> InductiveVal {
    InductiveVal::gauss(b(2)).augment(&c3(), q(1, 2)).unwrap()
}

// depth-zero value straight from the Taylor coefficients at the center
fn taylor_oracle(base: PBase, a: &Rat, delta: &Rat, f: &Poly) -> Val {
    f.taylor_coeffs()
        .iter()
        .enumerate()
        .map(|(s, c)| vp(&c.eval(a), base).plus(&(delta * &Rat::from_int(s as i64))))
        .min()
        .unwrap_or(Val::PosInf)
}

#[test]
fn depth_zero_examples() {
    assert_eq!(InductiveVal::gauss(b(3)).value(&p(&[12, 6, 3])), Val::int(1));
    assert_eq!(w0(2, 0, 1, 2).value(&p(&[-2, 0, 1])), Val::int(1));
    assert_eq!(w0(2, 1, 2, 1).value(&p(&[1, 1])), Val::int(1));
    assert_eq!(taylor_oracle(b(2), &Rat::from_int(1), &Rat::from_int(2), &p(&[1, 1])), Val::int(1));
}

#[test]
fn augmented_values() {
    let m = mu1();
    assert_eq!(m.value(&c3()), q(1, 2));
    let f = &c3().pow(2) - &p(&[2]);
    assert_eq!(m.value(&f), Val::int(1));
    assert_eq!(m.value(&Poly::x()), Val::zero());
    assert_eq!(m.value(&Poly::zero()), Val::PosInf);
}

#[test]
fn invariants_examples() {
    assert_eq!(w0(2, 0, 1, 2).node_invariants().unwrap(), (1, q(1, 2), q(1, 2)));
    assert_eq!(mu1().node_invariants().unwrap(), (2, q(1, 2), q(1, 4)));
    let root = InductiveVal::root(b(2));
    assert_eq!(root.wt(), Val::NegInf);
    let leaf = w0(2, 0, 1, 2).augment(&p(&[-2, 0, 1]), Val::PosInf).unwrap();
    assert!(leaf.is_leaf());
    assert!(leaf.node_invariants().is_err());
    assert_eq!(leaf.value(&p(&[-2, 0, 1])), Val::PosInf);
    assert_eq!(leaf.value(&p(&[-2, 0, 1]).pow(2)), Val::PosInf);
    assert_eq!(leaf.value(&Poly::x()), q(1, 2));
}

#[test]
fn augment_errors() {
    let g = InductiveVal::gauss(b(2));
    assert!(matches!(g.augment(&c3(), Val::zero()), Err(Error::InvalidAugmentation(_))));
    assert!(matches!(g.augment(&p(&[1, 0, 1]), q(1, 2)), Err(Error::InvalidAugmentation(_))));
    assert_eq!(mu1().degree(), 2);
}

#[test]
fn minimality_examples() {
    let m = w0(2, 0, 1, 2);
    assert!(m.is_minimal(&p(&[-2, 0, 1])));
    assert!(!m.is_minimal(&p(&[0, 1, 1])));
    assert_eq!(m.value(&p(&[0, 1, 1])), q(1, 2));
    assert!(m.is_minimal(&Poly::x()));
}

#[test]
fn equivalence_examples() {
    let g = InductiveVal::gauss(b(2));
    let sq = c3().pow(2);
    assert!(g.in_equiv(&(&sq - &p(&[2])), &sq));
    assert!(!g.in_equiv(&Poly::x(), &p(&[1, 1])));
    assert!(g.in_equiv(&sq, &sq));
}

#[test]
fn newton_polygon_examples() {
    let g = InductiveVal::gauss(b(2));
    let np = g.newton_polygon(&Poly::x(), &p(&[-2, 0, 1])).unwrap();
    assert_eq!(np.points, vec![(0, Val::int(1)), (2, Val::zero())]);
    assert_eq!(np.sides.len(), 1);
    assert_eq!(np.sides[0].slope, Rat::frac(-1, 2));
    let f = &c3().pow(2) - &p(&[2]);
    let np = g.newton_polygon(&c3(), &f).unwrap();
    assert_eq!(np.points, vec![(0, Val::int(1)), (2, Val::zero())]);
    assert!(np.one_sided(&Rat::frac(-1, 2)));
    let np = g.newton_polygon(&Poly::x(), &p(&[-1, 0, 1])).unwrap();
    assert!(np.one_sided(&Rat::zero()));
    assert!(np.principal_part(&Val::zero()).is_empty());
}

#[test]
fn residual_examples() {
    let g = InductiveVal::gauss(b(2));
    let r = g.residual_polynomial(&c3()).unwrap();
    assert_eq!(r, FqPoly::from_u64s(g.residue_field(), &[1, 1, 1]));
    let r = g.side_residual(&Poly::x(), &Rat::frac(1, 2), &p(&[-2, 0, 1])).unwrap();
    assert_eq!(r.deg(), 1);
    assert_eq!(r.ctx().degree(), 1);
    let f = &c3().pow(2) - &p(&[2]);
    let r = g.side_residual(&c3(), &Rat::frac(1, 2), &f).unwrap();
    assert_eq!(r.deg(), 1);
    assert_eq!(r.ctx().degree(), 2);
}

#[test]
fn key_examples() {
    let g = InductiveVal::gauss(b(2));
    assert!(g.is_key(&c3()));
    assert!(!g.is_key(&p(&[1, 0, 1])));
    assert!(w0(2, 0, 1, 2).is_key(&p(&[-2, 0, 1])));
    // not minimal
    assert!(!w0(2, 0, 1, 2).is_key(&p(&[0, 1, 1])));
}

#[test]
fn key_lift_examples() {
    let g = InductiveVal::gauss(b(2));
    let f = p(&[-2, 0, 1]);
    let nu = w0(2, 0, 1, 2);
    let r = nu.residual_polynomial(&f).unwrap();
    let lift = nu.key_lift(&r).unwrap();
    assert_eq!(lift.deg(), 2);
    assert!(nu.in_equiv(&lift, &f));
    assert_eq!(nu.residual_polynomial(&lift).unwrap(), r);

    let r = g.residual_polynomial(&c3()).unwrap();
    assert_eq!(g.key_lift(&r).unwrap(), c3());

    // a different tangent direction of the same degree
    let r = g.residual_polynomial(&p(&[1, 1])).unwrap();
    let lift = g.key_lift(&r).unwrap();
    assert_eq!(lift.deg(), 1);
    assert_eq!(g.value(&(&lift - &Poly::x())), g.value(&Poly::x()));
    assert!(!g.in_equiv(&lift, &Poly::x()));
}

#[test]
fn depth_two_residue_field() {
    // [ω_{0,0}; x^2+x+1, 1/2] then the residual of (x^2+x+1)^2 - 2 is linear over F_4
    let m = mu1();
    assert_eq!(m.residue_field().degree(), 2);
    let f = &c3().pow(2) - &p(&[2]);
    let r = m.residual_polynomial(&f).unwrap();
    assert_eq!(r.deg(), 1);
    let lift = m.key_lift(&r).unwrap();
    assert_eq!(lift.deg(), 4);
    assert!(m.in_equiv(&lift, &f));
    assert!(m.is_key(&lift));
    let leaf = m.augment(&f, Val::PosInf).unwrap();
    assert!(leaf.is_leaf());
}

#[test]
fn residual_roundtrip_on_f4_tower() {
    // over p = 2, every irreducible ψ over F_4 of degree ≤ 2 lifts to a key
    // whose residual polynomial is ψ again
    let m = mu1();
    let k = m.residue_field().clone();
    for deg in 1..=2usize {
        let total = 4u128.pow(deg as u32);
        for idx in 0..total {
            let mut c = Vec::new();
            let mut n = idx;
            for _ in 0..deg {
                c.push(k.element(n % 4));
                n /= 4;
            }
            c.push(k.one());
            let psi = FqPoly::new(&k, c);
            if psi.coeff(0).is_zero() || !psi.is_irreducible().unwrap() {
                continue;
            }
            let lift = m.key_lift(&psi).unwrap();
            assert_eq!(lift.deg(), 2 * 2 * deg);
            assert!(m.is_key(&lift), "{lift}");
            assert_eq!(m.residual_polynomial(&lift).unwrap(), psi);
        }
    }
}

// exhaustive ball comparison for depth-zero valuations at p = 2
#[test]
fn depth_zero_comparability() {
    let base = b(2);
    let deltas = [q(0, 1), q(1, 2), q(1, 1), q(2, 1)];
    let sample: Vec<Poly> = (0..8)
        .flat_map(|c| vec![Poly::linear(&Rat::from_int(c)), &Poly::linear(&Rat::from_int(c)) * &p(&[1, 0, 1])])
        .chain([p(&[3, 1, 1]), p(&[-2, 0, 1]), p(&[5, 0, 0, 1])])
        .collect();
    for a in 0..8i64 {
        for bb in 0..8i64 {
            for d in &deltas {
                for e in &deltas {
                    let mu = InductiveVal::depth_zero(base, Rat::from_int(a), d.clone()).unwrap();
                    let nu = InductiveVal::depth_zero(base, Rat::from_int(bb), e.clone()).unwrap();
                    let le = sample.iter().all(|f| mu.value(f) <= nu.value(f));
                    let ball = *d <= vp(&Rat::from_int(bb - a), base).min(e.clone());
                    assert_eq!(le, ball, "a={a} b={bb} δ={d} ε={e}");
                }
            }
        }
    }
}

fn nodes() -> Vec<InductiveVal> {
    let g2 = InductiveVal::gauss(b(2));
    let g3 = InductiveVal::gauss(b(3));
    vec![
        g2.clone(),
        w0(2, 0, 1, 2),
        w0(3, 1, 2, 3),
        mu1(),
        mu1().augment(&(&c3().pow(2) - &p(&[2])), q(5, 4)).unwrap(),
        g3.augment(&p(&[1, 0, 1]), q(1, 3)).unwrap(),
        w0(5, 2, 1, 1),
    ]
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-100i64..=100, 1..=9).prop_map(|c| Poly::from_ints(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn valuation_axioms(i in 0usize..7, f in arb_poly(), g in arb_poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let mu = &nodes()[i];
        let (vf, vg) = (mu.value(&f), mu.value(&g));
        prop_assert_eq!(mu.value(&(&f * &g)), vf.add(&vg).unwrap());
        let vs = mu.value(&(&f + &g));
        prop_assert!(vs >= vf.clone().min(vg.clone()));
        if vf != vg {
            prop_assert_eq!(vs, vf.min(vg));
        }
    }

    #[test]
    fn integer_path_matches_rational(i in 0usize..7, c in prop::collection::vec(-(1i64 << 40)..(1i64 << 40), 0..12)) {
        let mu = &nodes()[i];
        let f = Poly::from_ints(&c);
        let mut ints: IntPoly = c.iter().map(|&x| x as i128).collect();
        trim(&mut ints);
        let top = mu.len() as isize - 1;
        if let Some(v) = mu.value_ints(top, &ints) {
            prop_assert_eq!(v, mu.value_at(top, &f));
        }
    }

    #[test]
    fn monotone_and_weight_bound(f in arb_poly()) {
        prop_assume!(!f.is_zero());
        let chain = [InductiveVal::gauss(b(2)), mu1(), nodes()[4].clone()];
        for w in chain.windows(2) {
            prop_assert!(w[0].value(&f) <= w[1].value(&f));
        }
        if f.deg() > 0 {
            let m = f.monic();
            for mu in &chain {
                prop_assert!(mu.weighted_value(&m) <= mu.wt());
            }
        }
    }

    #[test]
    fn depth_zero_matches_taylor(a in -20i64..20, dn in 0i64..6, dd in 1i64..4, f in arb_poly()) {
        let delta = Rat::frac(dn, dd);
        let mu = InductiveVal::depth_zero(b(3), Rat::from_int(a), Val::Finite(delta.clone())).unwrap();
        prop_assert_eq!(mu.value(&f), taylor_oracle(b(3), &Rat::from_int(a), &delta, &f));
    }

    #[test]
    fn truncation_agrees_for_minimal(i in 0usize..7, f in arb_poly()) {
        let mu = &nodes()[i];
        for g in mu.keys() {
            if mu.is_minimal(&g) {
                prop_assert_eq!(mu.truncation_value(&g, &f).unwrap(), mu.value(&f));
            }
        }
    }
}

#[test]
fn truncation_witness_for_non_minimal() {
    // for every non-minimal monic g of degree ≤ 2 some small f separates μ_g from μ
    let sample: Vec<Poly> = (0..3i64.pow(4))
        .map(|n| Poly::from_ints(&[n % 3 - 1, n / 3 % 3 - 1, n / 9 % 3 - 1, n / 27 % 3 - 1]))
        .filter(|f| !f.is_zero())
        .chain((0..121i64).map(|n| &p(&[n % 11 - 5, 1]) * &p(&[n / 11 - 5, 1])))
        .collect();
    for mu in nodes() {
        for n in 0..25i64 {
            for g in [p(&[n % 5 - 2, 1]), p(&[n % 5 - 2, n / 5 - 2, 1])] {
                if mu.is_minimal(&g) {
                    continue;
                }
                let found =
                    sample.iter().chain(mu.keys().iter()).any(|f| mu.truncation_value(&g, f).unwrap() != mu.value(f));
                assert!(found, "{mu:?} {g}");
            }
        }
    }
}
