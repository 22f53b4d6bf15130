mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabent::circuit::{random_clifford, random_clifford_t, random_clifford_on, Circuit};
use stabent::estimator::{bounds_from_exact_group, estimate_from_state, guaranteed_gap};
use stabent::*;

fn wide_vec(n: usize) -> impl Strategy<Value = SympVec> {
    proptest::collection::vec(any::<bool>(), 2 * n).prop_map(move |bits| {
        let mut v = SympVec::zero(n);
        for (i, b) in bits.into_iter().enumerate() {
            v.set_bit(i, b);
        }
        v
    })
}

proptest! {
    #[test]
    fn product_is_bilinear_and_alternating(
        (x, y, z) in (1usize..100).prop_flat_map(|n| (wide_vec(n), wide_vec(n), wide_vec(n)))
    ) {
        prop_assert_eq!((&x + &y).symplectic(&z), x.symplectic(&z) ^ y.symplectic(&z));
        prop_assert!(!x.symplectic(&x));
        prop_assert_eq!(x.symplectic(&y), y.symplectic(&x));
        prop_assert_eq!(x.symplectic(&y), naive_product(&x, &y));
    }

    #[test]
    fn pauli_string_round_trip(v in (1usize..40).prop_flat_map(wide_vec)) {
        let back: SympVec = v.to_string().parse().unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn complement_dimension_and_involution(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_subspace(n, &mut rng);
        let perp = t.symplectic_complement();
        prop_assert_eq!(t.dim() + perp.dim(), 2 * n);
        prop_assert_eq!(perp.symplectic_complement(), t.clone());
        for x in t.basis() {
            for y in perp.basis() {
                prop_assert!(!x.symplectic(y));
            }
        }
    }

    #[test]
    fn span_is_order_independent(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = random_generators(n, &mut rng);
        let a = span(n, &gens).unwrap();
        gens.reverse();
        let b = span(n, &gens).unwrap();
        prop_assert_eq!(&a, &b);
        for g in &gens {
            prop_assert!(a.contains(g));
        }
    }

    #[test]
    fn restriction_matches_enumeration(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_subspace(n, &mut rng);
        let side: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let restricted = restrict_to_cut(&s, &side).unwrap();
        let brute: Vec<SympVec> = closure(n, s.basis())
            .into_iter()
            .filter(|v| v.is_supported_on(&side))
            .collect();
        prop_assert_eq!(&restricted, &span(n, &brute).unwrap());
        prop_assert!(restricted.is_subspace_of(&s));
    }

    #[test]
    fn extraction_postconditions(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_subspace(n, &mut rng);
        let split = extract_symplectic_subspace(&s);
        for (i, (ei, fi)) in split.pairs.iter().enumerate() {
            for (j, (ej, fj)) in split.pairs.iter().enumerate() {
                prop_assert_eq!(ei.symplectic(fj), i == j);
                prop_assert!(!ei.symplectic(ej));
                prop_assert!(!fi.symplectic(fj));
            }
            for r in split.residual.basis() {
                prop_assert!(!ei.symplectic(r) && !fi.symplectic(r));
            }
        }
        prop_assert!(split.residual.is_isotropic());
        prop_assert_eq!(2 * split.pairs.len() + split.residual.dim(), s.dim());
        prop_assert_eq!(split.symplectic_part().join(&split.residual).unwrap(), s);
    }

    #[test]
    fn weyl_commutation_and_involution(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(n, &mut rng);
        let v = random_vector(n, &mut rng);
        let u = random_vector(n, &mut rng);
        let vu = apply_weyl(&v, &apply_weyl(&u, &psi).unwrap()).unwrap();
        let uv = apply_weyl(&u, &apply_weyl(&v, &psi).unwrap()).unwrap();
        let sign = if v.symplectic(&u) { -1.0 } else { 1.0 };
        for (a, b) in vu.amplitudes().iter().zip(uv.amplitudes()) {
            prop_assert!((a - b * sign).norm() < 1e-12);
        }
        let vv = apply_weyl(&v, &apply_weyl(&v, &psi).unwrap()).unwrap();
        for (a, b) in vv.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        // Hermitian: the expectation is real for arbitrary states
        prop_assert!(weyl_expectation(&v, &psi).is_ok());
    }

    #[test]
    fn characteristic_distribution_sums_to_one(seed in any::<u64>(), n in 1usize..6, t in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = simulate_circuit(&random_clifford_t(n, 6 * n, t, &mut rng)).unwrap();
        let p = characteristic_distribution(&psi).unwrap();
        prop_assert!((p.total() - 1.0).abs() < 1e-9);
        prop_assert!(p.probabilities().iter().all(|&x| x >= 0.0));
        let r = characteristic_distribution(&random_state(n, &mut rng)).unwrap();
        prop_assert!((r.total() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn entropy_symmetric_across_cut(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(n, &mut rng);
        let a: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let cut = Cut::new(n, &a).unwrap();
        let ab = entanglement_entropy_oracle(&psi, &cut).unwrap();
        let ba = entanglement_entropy_oracle(&psi, &cut.swapped()).unwrap();
        prop_assert!((ab - ba).abs() < 1e-9);
        prop_assert!(ab <= a.len().min(n - a.len()) as f64 + 1e-9);
    }

    #[test]
    fn entropy_invariant_under_local_cliffords(seed in any::<u64>(), n in 2usize..7, t in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_clifford_t(n, 8 * n, t, &mut rng);
        let cut = Cut::half(n);
        let before = entanglement_entropy_oracle(&simulate_circuit(&base).unwrap(), &cut).unwrap();
        let mut dressed = base.clone();
        dressed.extend(&random_clifford_on(n, cut.a(), 20, &mut rng)).unwrap();
        dressed.extend(&random_clifford_on(n, cut.b(), 20, &mut rng)).unwrap();
        let after = entanglement_entropy_oracle(&simulate_circuit(&dressed).unwrap(), &cut).unwrap();
        prop_assert!((before - after).abs() < 1e-9);
    }

    #[test]
    fn weyl_oracle_is_isotropic_subspace(seed in any::<u64>(), n in 1usize..6, t in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_clifford_t(n, 8 * n, t, &mut rng);
        let g = weyl_group_oracle(&simulate_circuit(&c).unwrap()).unwrap();
        prop_assert!(g.group().is_isotropic());
        prop_assert!(g.dim() + 2 * t >= n);
        // every member really is a ± stabilizer, so closure under addition holds
        let psi = simulate_circuit(&c).unwrap();
        for x in closure(n, g.group().basis()) {
            prop_assert!((weyl_expectation(&x, &psi).unwrap().abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn tableau_matches_dense_oracle(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_clifford_circuit(n, &mut rng);
        let from_tableau = weyl_group_from_tableau(&simulate_clifford(&c));
        let from_dense = weyl_group_oracle(&simulate_circuit(c.circuit()).unwrap()).unwrap();
        prop_assert_eq!(from_tableau.group(), from_dense.group());
        prop_assert_eq!(from_tableau.dim(), n);
    }

    #[test]
    fn tableau_signs_match_dense_expectations(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_clifford_circuit(n, &mut rng);
        let tab = simulate_clifford(&c);
        let psi = simulate_circuit(c.circuit()).unwrap();
        // tableau rows use the Y convention, which coincides with W_x's i^{a'·b'} phase
        for (row, &neg) in tab.rows().iter().zip(tab.signs()) {
            let e = weyl_expectation(row, &psi).unwrap();
            let want = if neg { -1.0 } else { 1.0 };
            prop_assert!((e - want).abs() < 1e-9);
        }
    }

    #[test]
    fn bounds_monotone_in_group(seed in any::<u64>(), n in 2usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, rows) = random_isotropic(n, n, &mut rng);
        let a: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        let cut = Cut::new(n, &a).unwrap();
        let mut prev = (0.0, f64::INFINITY);
        for m in 0..=n {
            let g = StabilizerGroupEstimate::new(
                span(n, &rows[..m]).unwrap(),
                GroupProvenance::ExactOracle,
            );
            let (lo, up) = entropy_bounds_from_group(&g, &cut).unwrap();
            prop_assert!(lo >= prev.0 && up <= prev.1);
            prop_assert!(lo <= up);
            prev = (lo, up);
        }
    }

    #[test]
    fn conjugation_preserves_form(seed in any::<u64>(), n in 1usize..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c: CliffordCircuit = random_clifford(n, 5 * n, &mut rng).try_into().unwrap();
        let x = random_vector(n, &mut rng);
        let y = random_vector(n, &mut rng);
        let cx = conjugate_vector(&c, &x).unwrap();
        let cy = conjugate_vector(&c, &y).unwrap();
        prop_assert_eq!(cx.symplectic(&cy), x.symplectic(&y));
        prop_assert_eq!(conjugate_vector(&c, &(&x + &y)).unwrap(), &cx + &cy);
    }

    #[test]
    fn samples_lie_in_complement_of_group(seed in any::<u64>(), n in 1usize..5, t in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = simulate_circuit(&random_clifford_t(n, 8 * n, t, &mut rng)).unwrap();
        let group = weyl_group_oracle(&psi).unwrap();
        let p = characteristic_distribution(&psi).unwrap();
        for s in bell_difference_sample(&p, &mut rng, 200) {
            for g in group.group().basis() {
                prop_assert!(!s.symplectic(g));
            }
        }
    }
}

#[test]
fn stabilizer_exactness_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in 2..=6 {
        for _ in 0..20 {
            let c = random_clifford_circuit(n, &mut rng);
            let g = weyl_group_from_tableau(&simulate_clifford(&c));
            let psi = simulate_circuit(c.circuit()).unwrap();
            let a: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            let cut = Cut::new(n, &a).unwrap();
            let rep = bounds_from_exact_group(&g, &cut).unwrap();
            let exact = entanglement_entropy_oracle(&psi, &cut).unwrap();
            assert_eq!(rep.lower, rep.upper);
            assert!((rep.upper - exact).abs() < 1e-9);
        }
    }
}

#[test]
fn fifty_qubit_tableau_bounds_are_exact_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let c: CliffordCircuit = random_clifford(50, 1500, &mut rng).try_into().unwrap();
    let g = weyl_group_from_tableau(&simulate_clifford(&c));
    for a in [vec![0], (0..25).collect(), (10..37).collect::<Vec<_>>()] {
        let rep = bounds_from_exact_group(&g, &Cut::new(50, &a).unwrap()).unwrap();
        assert_eq!(rep.lower, rep.upper);
        assert_eq!(rep.lower.fract(), 0.0);
        assert_eq!(rep.r, 0.0);
    }
}

#[test]
fn sampled_runs_on_clifford_plus_one_t() {
    // n = 4, one T gate, k = 2, ε = 1/32: gap within k + max{0, 2(εn + H(ε)) - 1}
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let delta = 0.125;
    let trials = 200;
    let mut misses = 0;
    for trial in 0..trials {
        let c = random_clifford_t(4, 40, 1, &mut rng);
        let psi = simulate_circuit(&c).unwrap();
        let cut = Cut::new(4, &[0, 1]).unwrap();
        let params = EstimatorParams::new(1.0 / 32.0, delta, 2, trial).unwrap();
        let rep = estimate_from_state(&psi, &cut, &params).unwrap();
        assert!(!rep.promise_violated);
        assert!(rep.lower <= rep.upper);
        assert!(rep.width() <= guaranteed_gap(4, 2, 1.0 / 32.0) + 1e-12);
        assert!(rep.width() <= 2.0 + 1e-12);
        let exact = entanglement_entropy_oracle(&psi, &cut).unwrap();
        if !rep.contains(exact, 1e-9) {
            misses += 1;
        }
        assert!((rep.estimate - exact).abs() <= rep.width() / 2.0 + 1e-9 || !rep.contains(exact, 1e-9));
    }
    assert!(misses as f64 <= delta * trials as f64, "{misses} misses");
}

#[test]
fn binary_entropy_grid_bound() {
    for i in 1..1000 {
        let p = i as f64 / 1000.0;
        assert!(binary_entropy(p).unwrap() <= std::f64::consts::E * p.powf(0.72));
    }
}

#[test]
fn circuit_text_round_trip_through_display() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.random_range(1..20);
        let c = random_clifford_t(n, 40, rng.random_range(0..4), &mut rng);
        let printed = c.to_string();
        let back: Circuit = printed.parse().unwrap();
        assert_eq!(back.gates(), c.gates());
    }
}
