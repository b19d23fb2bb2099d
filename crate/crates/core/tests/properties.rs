use forge_core::apps::ooc::fold_cell;
use forge_core::direct::{direct_family, schgdd_n_1_4_from_starter, FamilyId};
use forge_core::search::cdm;
use forge_core::verify::{johnson_bound, schgdd_developed_check, schgdd_profile_check, verify_cdm, verify_schgdd};
use forge_core::{BaseBlock, Design, GridPoint};
use proptest::prelude::*;

fn design(choice: u32, size: u32) -> Design {
    match choice % 4 {
        0 => direct_family(FamilyId::FourTwo, 4, 2, 4 + 2 * (size % 5)).unwrap(),
        1 => direct_family(FamilyId::FiveThree, 5, 3, 4 + 2 * (size % 4)).unwrap(),
        2 => direct_family(FamilyId::ThreeFour, 5 + 6 * (size % 3), 3, 4).unwrap(),
        _ => schgdd_n_1_4_from_starter(7 + 2 * (size % 12)).unwrap(),
    }
}

fn mutated(d: &Design, block: usize, point: usize, shift: u32) -> Design {
    let l = d.params.modulus.unwrap();
    let mut out = d.clone();
    let b = block % out.base_blocks.len();
    let mut pts: Vec<GridPoint> = out.base_blocks[b].points().to_vec();
    let p = point % pts.len();
    pts[p].coord = (pts[p].coord + 1 + shift % (l - 1)) % l;
    out.base_blocks[b] = BaseBlock::new(pts);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_and_developed_checks_agree(choice in 0u32..4, size in 0u32..12, block in 0usize..100, point in 0usize..3, shift in 0u32..1000, mutate in any::<bool>()) {
        let d = design(choice, size);
        let d = if mutate { mutated(&d, block, point, shift) } else { d };
        prop_assert_eq!(schgdd_profile_check(&d).valid, schgdd_developed_check(&d).valid);
    }

    #[test]
    fn single_coordinate_mutations_are_rejected(choice in 0u32..4, size in 0u32..12, block in 0usize..100, point in 0usize..3, shift in 0u32..1000) {
        let d = design(choice, size);
        prop_assert!(verify_schgdd(&d).valid);
        prop_assert!(!verify_schgdd(&mutated(&d, block, point, shift)).valid);
    }

    #[test]
    fn json_round_trip(choice in 0u32..4, size in 0u32..12) {
        let d = design(choice, size);
        let back = Design::from_json(&d.to_json().unwrap()).unwrap();
        prop_assert_eq!(back.canonical(), d.canonical());
    }

    #[test]
    fn johnson_bound_is_monotone(u in 1u64..40, v in 1u64..40) {
        let j = |u, v| johnson_bound(u, v, 3, 1).unwrap();
        prop_assert!(j(u, v) <= j(u + 1, v));
        prop_assert!(j(u, v) <= j(u, v + 1));
    }

    #[test]
    fn fold_commutes_with_column_shifts(n in 1u32..10, m1 in 1u32..6, m2 in 1u32..8, i in 0u32..10, j in 0u32..48, r in 0u32..8) {
        let (i, j, m) = (i % n, j % (m1 * m2), m1 * m2);
        let (row, col) = fold_cell((i, j), n, m1);
        prop_assert_eq!((row, (col + r) % m2), fold_cell((i, (j + m1 * r) % m), n, m1));
    }

    #[test]
    fn translates_return_after_one_orbit(coords in proptest::collection::btree_set(0u32..24, 1..5), l in prop::sample::select(vec![6u32, 8, 12, 24])) {
        let b = BaseBlock::new(coords.iter().enumerate().map(|(g, &c)| GridPoint::new(g as u32 % 2, c % l)).collect());
        let len = b.orbit_length(l);
        prop_assert_eq!(l % len, 0);
        prop_assert_eq!(b.translate(len, l), b.clone());
        prop_assert_eq!(b.orbit_representative(l), b.translate(3, l).orbit_representative(l));
    }
}

#[test]
fn difference_matrices_for_odd_orders() {
    for m in (1..100).step_by(2) {
        assert!(verify_cdm(&cdm(3, m).unwrap(), m).valid, "m = {m}");
    }
}

#[test]
fn no_three_row_difference_matrix_of_order_two() {
    let rows: Vec<Vec<u32>> = (0..4).map(|x: u32| vec![x & 1, x >> 1]).collect();
    for a in &rows {
        for b in &rows {
            for c in &rows {
                assert!(!verify_cdm(&[a.clone(), b.clone(), c.clone()], 2).valid);
            }
        }
    }
    assert!(cdm(3, 2).is_err());
}
