use cluster_core::{ExMat, Move, Perm};
use quantum_torus::{build_matrix_model, verify_relation_numeric, QuantumError};

fn exmat(rows: Vec<Vec<i64>>) -> ExMat {
    ExMat::new(rows).unwrap()
}

fn rank2(eta: i64) -> ExMat {
    exmat(vec![vec![0, eta], vec![-eta, 0]])
}

fn torus3() -> ExMat {
    exmat(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]])
}

#[test]
fn rank_two_model_satisfies_the_commutation_relation() {
    let e = rank2(1);
    let model = build_matrix_model(&e, 5).unwrap();
    assert_eq!(model.dim(), 25);
    assert_eq!(model.n_order(), 5);
    assert!(model.residual() <= 1e-12, "residual {}", model.residual());
    let w1 = model.generator(0).unwrap();
    let w2 = model.generator(1).unwrap();
    let lhs = w1 * w2;
    let rhs = (w2 * w1) * model.omega_pow(2);
    assert!((lhs - rhs).norm() <= 1e-12);
}

#[test]
fn zero_exchange_matrix_gives_commuting_diagonal_generators() {
    let e = exmat(vec![vec![0, 0], vec![0, 0]]);
    let model = build_matrix_model(&e, 4).unwrap();
    assert!(model.residual() == 0.0 || model.residual() <= 1e-15);
    for i in 0..2 {
        let w = model.generator(i).unwrap();
        for r in 0..model.dim() {
            for c in 0..model.dim() {
                if r != c {
                    assert_eq!(w[(r, c)].norm(), 0.0, "generator {i} off-diagonal");
                }
            }
        }
    }
}

#[test]
fn rank_three_torus_model_stays_tight_at_order_seven() {
    let model = build_matrix_model(&torus3(), 7).unwrap();
    assert_eq!(model.dim(), 343);
    assert!(model.residual() <= 1e-10, "residual {}", model.residual());
}

#[test]
fn order_and_size_guards_fire() {
    assert!(matches!(
        build_matrix_model(&rank2(1), 1),
        Err(QuantumError::ModelOrderTooSmall(1))
    ));
    assert!(matches!(
        build_matrix_model(&torus3(), 13),
        Err(QuantumError::ModelTooLarge { .. })
    ));
}

#[test]
fn involution_closes_in_the_models() {
    let moves = [Move::Mutate(0), Move::Mutate(0)];
    let report = verify_relation_numeric(&rank2(1), &moves, &[5, 7, 9], 1e-8).unwrap();
    assert!(report.pass, "max deviation {}", report.max_deviation);
    assert_eq!(report.checks.len(), 3);
    for c in &report.checks {
        assert_eq!(c.n_used, c.n_requested);
        assert!(c.retried.is_empty());
    }
    let report = verify_relation_numeric(&torus3(), &moves, &[5, 7], 1e-8).unwrap();
    assert!(report.pass, "max deviation {}", report.max_deviation);
}

#[test]
fn quadrilateral_closes_for_commuting_indices() {
    let e = exmat(vec![vec![0, 0, 1], vec![0, 0, 1], vec![-1, -1, 0]]);
    let moves = [
        Move::Mutate(0),
        Move::Mutate(1),
        Move::Mutate(0),
        Move::Mutate(1),
    ];
    let report = verify_relation_numeric(&e, &moves, &[7], 1e-10).unwrap();
    assert!(report.pass, "max deviation {}", report.max_deviation);
}

#[test]
fn pentagon_closes_for_unit_exchange_entries() {
    let swap = Perm::transposition(2, 0, 1).unwrap();
    for eta in [1i64, -1] {
        let moves = [
            Move::Mutate(0),
            Move::Mutate(1),
            Move::Mutate(0),
            Move::Mutate(1),
            Move::Mutate(0),
            Move::Permute(swap.clone()),
        ];
        let report = verify_relation_numeric(&rank2(eta), &moves, &[5, 7, 11], 1e-8).unwrap();
        assert!(
            report.pass,
            "eta {eta} max deviation {}",
            report.max_deviation
        );
    }
}

#[test]
fn permutation_moves_compose_and_cancel() {
    let e = exmat(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
    let s1 = Perm::transposition(3, 0, 1).unwrap();
    let s2 = Perm::transposition(3, 1, 2).unwrap();
    let s21 = s2.compose_after(&s1).unwrap();
    let moves = [
        Move::Permute(s1),
        Move::Permute(s2),
        Move::Permute(s21.inverse()),
    ];
    let report = verify_relation_numeric(&e, &moves, &[5], 1e-12).unwrap();
    assert!(report.pass, "max deviation {}", report.max_deviation);
}

#[test]
fn mutation_commutes_with_relabeling() {
    let e = torus3();
    let sigma = Perm::from_cycles(3, "(0 1 2)").unwrap();
    let k = 0usize;
    let moves = [
        Move::Mutate(k),
        Move::Permute(sigma.clone()),
        Move::Mutate(sigma.apply(k)),
        Move::Permute(sigma.inverse()),
    ];
    let report = verify_relation_numeric(&e, &moves, &[5, 7], 1e-8).unwrap();
    assert!(report.pass, "max deviation {}", report.max_deviation);
}

#[test]
fn even_orders_are_bumped_to_odd_ones() {
    let moves = [Move::Mutate(0), Move::Mutate(0)];
    let report = verify_relation_numeric(&rank2(1), &moves, &[4], 1e-8).unwrap();
    assert!(report.pass);
    assert_eq!(report.checks[0].n_requested, 4);
    assert_eq!(report.checks[0].n_used, 5);
    assert_eq!(report.checks[0].retried, vec![4]);
}

#[test]
fn open_paths_are_rejected() {
    for e in [rank2(1), torus3()] {
        let moves = [Move::Mutate(0)];
        assert!(matches!(
            verify_relation_numeric(&e, &moves, &[5], 1e-8),
            Err(QuantumError::RelationNotClosed)
        ));
    }
}

#[test]
fn a_closed_but_nontrivial_loop_fails_loudly() {
    let moves = [
        Move::Mutate(0),
        Move::Mutate(1),
        Move::Mutate(0),
        Move::Mutate(1),
    ];
    let report = verify_relation_numeric(&rank2(1), &moves, &[7], 1e-8).unwrap();
    assert!(!report.pass);
    assert!(report.max_deviation >= 1e-1, "deviation {}", report.max_deviation);
}
