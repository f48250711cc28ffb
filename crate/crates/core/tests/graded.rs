mod common;

use common::{brute_force_piece_dim, dense, Dense};
use gradus_core::degrees::main_example::{delta, delta1, delta2};
use gradus_core::degrees::DegreeFunction;
use gradus_core::graded::{
    graded_piece, intersection_check, new_generator_counts, ColumnOrder, PieceEngine,
    TruncationParams,
};

fn shifts() -> (Dense, Dense) {
    (
        dense(&[(&[5, 0], 1), (&[-2, 0], 1)]),
        dense(&[(&[5, 0], -1), (&[-2, 0], 1)]),
    )
}

fn d1() -> DegreeFunction {
    DegreeFunction::Substituted(delta1())
}

fn dmax() -> DegreeFunction {
    DegreeFunction::Max(delta())
}

#[test]
fn piece_dimensions_match_dense_elimination() {
    let (s1, s2) = shifts();
    for n in [3, 6, 9] {
        for d in [-2, 0, 1, 4, 7] {
            let want1 = brute_force_piece_dim(&[(s1.clone(), 1, 3)], d, n);
            let want = brute_force_piece_dim(&[(s1.clone(), 1, 3), (s2.clone(), 1, 3)], d, n);
            assert_eq!(graded_piece(&d1(), d, n as u32).unwrap().dim(), want1, "d1 d={d} N={n}");
            assert_eq!(graded_piece(&dmax(), d, n as u32).unwrap().dim(), want, "max d={d} N={n}");
        }
    }
}

#[test]
fn huge_degree_gives_the_whole_space() {
    for n in [0u32, 3, 7] {
        let full = ((n + 1) * (n + 2) / 2) as usize;
        assert_eq!(graded_piece(&dmax(), 10 * n as i64 + 10, n).unwrap().dim(), full);
    }
}

#[test]
fn pieces_grow_in_both_directions() {
    let engine = PieceEngine::new(&dmax(), ColumnOrder::canonical(16)).unwrap();
    let pieces: Vec<_> = (0..8).map(|d| engine.piece(d)).collect();
    for n in 0..=16 {
        for d in 1..8 {
            assert!(pieces[d].dim_at(n) >= pieces[d - 1].dim_at(n));
        }
        for p in &pieces {
            if n > 0 {
                assert!(p.dim_at(n) >= p.dim_at(n - 1));
            }
        }
    }
}

#[test]
fn returned_bases_pass_re_evaluation() {
    for d in [0, 3, 5] {
        let p = graded_piece(&dmax(), d, 14).unwrap();
        assert!(p.verify(&dmax()).unwrap());
        let p = graded_piece(&d1(), d, 10).unwrap();
        assert!(p.verify(&d1()).unwrap());
    }
}

#[test]
fn max_piece_is_the_intersection() {
    for d in 0..8 {
        let c = intersection_check(&dmax(), d, 16).unwrap();
        assert_eq!(c.dim_max, c.dim_intersection, "d = {d}");
    }
    assert!(intersection_check(&DegreeFunction::Substituted(delta2()), 1, 4).is_err());
}

#[test]
fn counts_do_not_depend_on_the_basis() {
    let t = TruncationParams::new(8, 16, 4).unwrap();
    for f in [d1(), dmax()] {
        let a = new_generator_counts(&f, t, None).unwrap();
        for seed in [1, 99] {
            let b = new_generator_counts(&f, t, Some(seed)).unwrap();
            assert_eq!(a.rows, b.rows);
        }
    }
}

#[test]
fn table_invariants() {
    let t = TruncationParams::new(8, 14, 6).unwrap();
    let table = new_generator_counts(&dmax(), t, None).unwrap();
    for r in &table.rows {
        assert!(r.product_span_dim <= r.dim);
        assert_eq!(r.new_generators, r.dim - r.product_span_dim);
        assert_eq!(r.stable_flag, r.new_generators == r.new_generators_next);
    }
    assert_eq!(table.rows[0].new_generators, table.rows[0].dim - 1);
    let json = serde_json::to_value(&table).unwrap();
    assert_eq!(json["metadata"]["n"], 14);
    assert_eq!(json["metadata"]["deltaN"], 6);
    assert!(json["rows"][0].get("productSpanDim").is_some());
    assert!(TruncationParams::new(0, 5, 1).is_err());
}
