use std::sync::OnceLock;

use num_traits::Zero;
use proptest::prelude::*;

use drds::certify::objective::{build_objective, ContractionObjective};
use drds::certify::rigorous::{prove_positive_rigorous, RigorousProof, DEFAULT_BOX_BUDGET};
use drds::certify::{replay, Positivity};
use drds::dynsys::random::{random_equation, RandomSpec};
use drds::dynsys::DifferenceEquation;
use drds::invariants::{boundedness_certificate, find_invariant, verify_invariant, Invariant};
use drds::periodic::norm::{residual_norm, ResidualKind};
use drds::periodic::manifold;
use drds::poly::interval::Interval;
use drds::poly::parse::parse_rational_in;
use drds::poly::scalar::{from_f64, int, ratio, to_f64};
use drds::poly::{Polynomial, Scalar};

fn positive() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (1i64..400, 1i64..60).prop_map(|(p, q)| ratio(p, q))
}

fn random_eq(seed: u64, k: usize) -> DifferenceEquation {
    random_eq_deg(seed, k, 2)
}

fn random_eq_deg(seed: u64, k: usize, d: u32) -> DifferenceEquation {
    random_equation(&RandomSpec { k, d, a: 5, seed }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn interval_evaluation_encloses_exact(seed in 0u64..10_000, x in proptest::collection::vec(-50.0f64..50.0, 2), w in 0.0f64..1.0) {
        let p = random_eq(seed, 2).rhs().num().clone();
        let q: Vec<Scalar> = x.iter().map(|&v| from_f64(v)).collect();
        let exact = p.eval::<Scalar>(&q);
        let boxed: Vec<Interval> = x.iter().map(|&v| Interval::new(v - w, v + w)).collect();
        let iv = p.eval::<Interval>(&boxed);
        prop_assert!(from_f64(iv.lo) <= exact && exact <= from_f64(iv.hi));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivative_matches_finite_difference(seed in 0u64..10_000, x in proptest::collection::vec(positive(), 2), i in 0usize..2) {
        let f = random_eq(seed, 2).rhs().clone();
        let df = f.differentiate(i);
        let h = 1e-6 * x[i].max(1.0);
        let mut up = x.clone();
        let mut dn = x.clone();
        up[i] += h;
        dn[i] -= h;
        let fd = (f.eval::<f64>(&up).unwrap() - f.eval::<f64>(&dn).unwrap()) / (2.0 * h);
        let d = df.eval::<f64>(&x).unwrap();
        prop_assert!((fd - d).abs() <= 1e-5 * d.abs().max(1e-3), "fd {fd} vs {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn exact_and_float_orbits_agree(seed in 0u64..10_000, k in 1usize..4, init in proptest::collection::vec(small_rational(), 3), n in 1usize..12) {
        // exact heights grow geometrically with n; keep orbits short
        let eq = random_eq_deg(seed, k, 1);
        let init = &init[..k];
        let exact = eq.orbit_exact(init, n).unwrap().sequence.unwrap();
        let float = eq.sequence_float(&init.iter().map(to_f64).collect::<Vec<_>>(), n).unwrap();
        prop_assert_eq!(exact.len(), n + k);
        prop_assert_eq!(float.len(), n + k);
        for (a, b) in exact.iter().zip(&float) {
            let a = to_f64(a);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
        }
    }
}

/// A rigorous proof for the averaging equation, found once.
fn averaging_proof() -> &'static (ContractionObjective, RigorousProof) {
    static CELL: OnceLock<(ContractionObjective, RigorousProof)> = OnceLock::new();
    CELL.get_or_init(|| {
        let map = DifferenceEquation::parse("x[n+1] = (1+x[n]+x[n-1])/3", None).unwrap().targem();
        for r in 1..=4 {
            let obj = build_objective(&map, &[int(1), int(1)], true, r, &ratio(101, 100)).unwrap();
            if let Positivity::Proved(p) = prove_positive_rigorous(&obj, DEFAULT_BOX_BUDGET) {
                return (obj, p);
            }
        }
        panic!("no rigorous proof with r <= 4");
    })
}

#[test]
fn certificate_replays() {
    let (obj, proof) = averaging_proof();
    assert_eq!(replay(&obj.numerator, proof), Ok(()));
}

#[test]
fn replay_rejects_moved_center() {
    let (obj, proof) = averaging_proof();
    let mut bad = proof.clone();
    bad.ball.center[0] += ratio(1, 1000);
    assert!(replay(&obj.numerator, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn replay_rejects_a_missing_leaf(pick in any::<prop::sample::Index>()) {
        let (obj, proof) = averaging_proof();
        prop_assume!(!proof.leaves.is_empty());
        let mut bad = proof.clone();
        bad.leaves.remove(pick.index(bad.leaves.len()));
        prop_assert!(replay(&obj.numerator, &bad).is_err());
    }

    #[test]
    fn certified_numerator_is_nonnegative(x in proptest::collection::vec(small_rational(), 2)) {
        let (obj, _) = averaging_proof();
        prop_assert!(obj.numerator.eval::<Scalar>(&x) >= Scalar::zero());
    }
}

fn dist2_to_line(p: &[f64]) -> f64 {
    // line (t, 1-t, t)
    let d = [p[0], p[1] - 1.0, p[2]];
    let along = (d[0] - d[1] + d[2]) / 3f64.sqrt();
    d.iter().map(|v| v * v).sum::<f64>() - along * along
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euclidean_norm_is_scaled_squared_distance(x in proptest::collection::vec(positive(), 3)) {
        let n = residual_norm(1, ResidualKind::Euclidean).unwrap();
        let v = n.eval_f64(0, &x).unwrap();
        let want = 1.5 * dist2_to_line(&x);
        prop_assert!((v - want).abs() <= 1e-9 * want.max(1.0));
    }

    #[test]
    fn residual_norms_vanish_on_their_cycles(id in 1usize..5, phi in positive(), psi in positive(), phase in 0usize..6) {
        let m = manifold(id).unwrap();
        let params: Vec<f64> = [phi, psi][..m.params.len()].to_vec();
        prop_assume!(m.constraint_holds(&params));
        let n = residual_norm(id, ResidualKind::FixedPointResidual).unwrap();
        let Some(x) = m.state(&params, phase % m.period, 3) else { return Ok(()) };
        let scale: f64 = x.iter().map(|v| v.abs()).fold(1.0, f64::max);
        for part in 0..n.part_count() {
            let v = n.eval_f64(part, &x).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert!(v <= 1e-10 * scale.powi(2), "v = {v} at {x:?}");
        }
    }

    #[test]
    fn residual_norms_are_nonnegative(id in 1usize..5, x in proptest::collection::vec(positive(), 3)) {
        let n = residual_norm(id, ResidualKind::FixedPointResidual).unwrap();
        for part in 0..n.part_count() {
            prop_assert!(n.eval_f64(part, &x).unwrap() >= 0.0);
        }
    }
}

fn third_order() -> (&'static DifferenceEquation, &'static [Invariant]) {
    static CELL: OnceLock<(DifferenceEquation, Vec<Invariant>)> = OnceLock::new();
    let (eq, found) = CELL.get_or_init(|| {
        let eq = DifferenceEquation::parse("x[n+1] = (p+x[n]+x[n-1])/x[n-2]", None).unwrap();
        let found = find_invariant(&eq, 4).unwrap();
        (eq, found)
    });
    (eq, found)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn combinations_of_invariants_are_invariant(a in -20i64..20, b in 1i64..20, c in -20i64..20) {
        let (eq, found) = third_order();
        prop_assert!(found.len() >= 2);
        let ctx = eq.rhs().vars().clone();
        let mut p = Polynomial::zero(&ctx);
        for (inv, w) in found.iter().zip([ratio(a, b), ratio(c, b)]) {
            p = &p + &inv.numerator.scale(&w);
        }
        prop_assume!(!p.is_zero());
        let combined = Invariant::new(eq, p, 4).unwrap();
        prop_assert!(verify_invariant(eq, &combined));
    }

    #[test]
    fn lyness_orbits_stay_in_their_box(init in proptest::collection::vec(positive(), 2), p in 1i64..5) {
        let eq = DifferenceEquation::parse("x[n+1] = (p+x[n])/x[n-1]", None).unwrap();
        let ctx = eq.rhs().vars().clone();
        let num = parse_rational_in(&ctx, "(p+x[n]+x[n-1])*(x[n]+1)*(x[n-1]+1)").unwrap().as_polynomial().unwrap();
        let inv = Invariant::new(&eq, num, 3).unwrap();
        let vals = [("p", int(p))];
        let b = boundedness_certificate(&inv, &vals, &init).unwrap();
        let (lo, hi) = (b.sequence_lower.unwrap(), b.sequence_upper.unwrap());
        let seq = eq.instantiate(&vals).unwrap().sequence_float(&init, 2000).unwrap();
        for x in seq {
            prop_assert!(x >= lo * (1.0 - 1e-9) && x <= hi * (1.0 + 1e-9), "{x} outside [{lo}, {hi}]");
        }
    }
}
