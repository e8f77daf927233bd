use std::collections::BTreeSet;

use proptest::prelude::*;

use crossgraph::bitgraph::{crossword_multigraph, reconstruct_grid, strip_isolated, validate_bit_multigraph};
use crossgraph::conditions::check_all;
use crossgraph::enumeration::mask_is_valid;
use crossgraph::grid::{answers, fundamental_region, fundamental_region_size, rotate180, Orientation, Rule};
use crossgraph::voiding::{edge_for_cell, voided_from_cells};
use crossgraph::{
    build_licn, canonicalize, equivalent, fundamental_graph, parse_grid, serialize_grid, unvoided_graph, validate,
    void_edge, voided_from_grid, Coord, Grid, Part, VoidMask,
};

fn mask_strategy(max_n: usize) -> impl Strategy<Value = VoidMask> {
    (1..=max_n, any::<u128>(), 0u32..4).prop_map(|(n, bits, thin)| {
        let len = fundamental_region_size(n);
        // `thin` extra ANDs bias towards sparse masks, which give valid grids more often
        let mut b = bits;
        for k in 0..thin {
            b &= bits.rotate_left(17 * (k + 1));
        }
        VoidMask::new(n, b & ((1u128 << len) - 1)).unwrap()
    })
}

fn grid_strategy(max_n: usize) -> impl Strategy<Value = Grid> {
    mask_strategy(max_n).prop_map(|m| m.to_grid())
}

/// Any subset of the fundamental region in a random order.
fn void_sequence(max_n: usize) -> impl Strategy<Value = (usize, Vec<Coord>)> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::sample::subsequence(fundamental_region(n), 0..=fundamental_region_size(n)),
            )
        })
        .prop_flat_map(|(n, cells)| (Just(n), Just(cells).prop_shuffle()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn text_roundtrip(g in grid_strategy(7)) {
        let text = serialize_grid(&g);
        let back = parse_grid(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(answers(&back), answers(&g));
    }

    #[test]
    fn answers_cover_cells_once_per_orientation(g in grid_strategy(6)) {
        let all = answers(&g);
        for o in [Orientation::Across, Orientation::Down] {
            let covered: Vec<Coord> = all.iter().filter(|a| a.orientation == o).flat_map(|a| a.coords.clone()).collect();
            let distinct: BTreeSet<Coord> = covered.iter().copied().collect();
            prop_assert_eq!(covered.len(), g.cell_count());
            prop_assert_eq!(distinct.len(), g.cell_count());
        }
    }

    #[test]
    fn answers_closed_under_rotation(g in grid_strategy(6)) {
        let all: BTreeSet<_> = answers(&g).into_iter().map(|a| (a.orientation, a.line_number, a.coords)).collect();
        for (o, line, coords) in &all {
            let mut image: Vec<Coord> = coords.iter().map(|&c| rotate180(c)).collect();
            image.reverse();
            prop_assert!(all.contains(&(*o, -line, image)));
        }
    }

    #[test]
    fn mirrored_voids_are_symmetric(g in grid_strategy(7)) {
        prop_assert!(validate(&g).verdict(Rule::RotationalSymmetry).passed);
    }

    #[test]
    fn bitboard_validity_matches_rules(m in mask_strategy(7)) {
        prop_assert_eq!(mask_is_valid(m), validate(&m.to_grid()).is_valid());
    }

    #[test]
    fn licn_rotation_is_an_automorphism(g in grid_strategy(6)) {
        let l = build_licn(&g).unwrap();
        for (v, a) in l.across.iter().chain(&l.down) {
            let map = if a.orientation == Orientation::Across { &l.across } else { &l.down };
            prop_assert_eq!(map.get(&v.negate()), Some(&a.rotated()));
        }
        let edges: BTreeSet<_> = l.edges.iter().map(|e| (e.across.clone(), e.down.clone(), e.label)).collect();
        for e in &l.edges {
            prop_assert!(edges.contains(&(e.across.negate(), e.down.negate(), e.label)));
            prop_assert!(l.across.contains_key(&e.across) && l.down.contains_key(&e.down));
        }
        for (v, a) in &l.across {
            prop_assert_eq!(l.across_degree(v), a.len());
        }
        for (v, a) in &l.down {
            prop_assert_eq!(l.down_degree(v), a.len());
        }
        if g.cell_count() > 0 {
            prop_assert_eq!(l.is_connected(), validate(&g).verdict(Rule::Connectivity).passed);
        }
    }

    #[test]
    fn voiding_matches_direct_construction(g in grid_strategy(5)) {
        let direct = crossword_multigraph(&fundamental_graph(&build_licn(&g).unwrap()));
        let voided = voided_from_grid(&g).unwrap();
        prop_assert!(equivalent(&voided, &direct, true));
        prop_assert_eq!(strip_isolated(&voided).edges().len(), direct.edges().len());
    }

    #[test]
    fn every_void_keeps_a_bit_multigraph((n, cells) in void_sequence(5)) {
        let mut g = unvoided_graph(n);
        for (k, &c) in cells.iter().enumerate() {
            let e = edge_for_cell(&g, c).unwrap().clone();
            g = void_edge(&g, &e).unwrap();
            prop_assert!(validate_bit_multigraph(&g).is_valid(), "after {} voids", k + 1);
            prop_assert_eq!(g.part(Part::A).len(), n + 1 + k + 1);
            prop_assert_eq!(g.part(Part::B).len(), n + 1 + k + 1);
            prop_assert_eq!(g.edge_count(), 2 * n * n + 2 * n + 1 - (k + 1));
        }
    }

    #[test]
    fn canonical_form_is_idempotent((n, cells) in void_sequence(5)) {
        let g = voided_from_cells(n, cells).unwrap();
        let c = canonicalize(&g);
        prop_assert_eq!(&canonicalize(&c), &c);
        prop_assert!(equivalent(&g, &c, false));
        prop_assert!(equivalent(&c, &g, false));
        // witnesses name vertices, which reindexing renames; verdicts must agree
        let pattern = |r: crossgraph::ConditionReport| r.verdicts.values().map(|v| v.label()).collect::<Vec<_>>();
        prop_assert_eq!(pattern(check_all(&g)), pattern(check_all(&c)));
    }

    #[test]
    fn roundtrip_on_valid_multigraphs(g in grid_strategy(5)) {
        let m = crossword_multigraph(&fundamental_graph(&build_licn(&g).unwrap()));
        if validate(&g).is_valid() {
            prop_assert_eq!(reconstruct_grid(&m).unwrap(), g);
        }
    }

    #[test]
    fn edge_vertex_count_identity(g in grid_strategy(5)) {
        let count = check_all(&voided_from_grid(&g).unwrap()).edge_vertex_count.unwrap();
        let n = g.n();
        prop_assert_eq!(count.target, 2 * n * n + 3 * n + 2);
        prop_assert_eq!(count.target, (2 * n + 1) * (2 * n + 2) / 2 + 1);
        prop_assert_eq!(count.sum, count.target);
    }
}
