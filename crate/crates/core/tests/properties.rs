mod common;

use common::*;
use hypertrans_core::geometry::{null_space_ray, rank_of_vectors, sign_vector, Sign};
use hypertrans_core::io::{parse_instance, serialize_instance};
use hypertrans_core::matroid::{closure_mask, enumerate_low_rank_flats, full_mask, mask_indices, Mask};
use hypertrans_core::transversal::covectors::subfamily_of_cell;
use hypertrans_core::transversal::enumerate_covectors;
use hypertrans_core::{check_star, lift_instance, Instance, Limits, Matroid, Point, RankFunction};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn arb_matroid() -> impl Strategy<Value = Matroid> {
    (1usize..=6, any::<u64>()).prop_map(|(n, seed)| {
        let mut r = rng(seed);
        match seed % 3 {
            0 => Matroid::uniform(labels(n), 1 + (seed as usize / 3) % n).unwrap(),
            1 => {
                let classes = (0..n).map(|i| (seed as usize >> i) % 3).collect();
                Matroid::partition(labels(n), classes).unwrap()
            }
            _ => Matroid::linear(labels(n), (0..n).map(|_| random_nonzero(&mut r, 3, 2)).collect()).unwrap(),
        }
    })
}

fn doubled(base: &Matroid) -> Matroid {
    let n = base.ground().len();
    let mut ground = labels(n);
    ground.extend(labels(n).into_iter().map(|l| format!("-{l}")));
    Matroid::doubled(base.clone(), ground, (0..2 * n).map(|i| i % n).collect()).unwrap()
}

/// Brute-force flats: subsets equal to their own closure.
fn brute_flats(m: &Matroid, r: usize) -> Vec<Mask> {
    let n = m.ground().len();
    let mut out: Vec<Mask> = (0..=full_mask(n))
        .filter(|&s| closure_mask(m, s) == s && m.rank_mask(s) <= r)
        .collect();
    out.sort_by_key(|&s| (s.count_ones(), mask_indices(s).collect::<Vec<_>>()));
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independence_is_hereditary(m in arb_matroid()) {
        let n = m.ground().len();
        for s in 0..=full_mask(n) {
            if m.is_independent_mask(s) {
                for i in mask_indices(s) {
                    prop_assert!(m.is_independent_mask(s & !(1 << i)));
                }
            }
        }
    }

    #[test]
    fn doubled_rank_is_symmetric_and_folds(m in arb_matroid()) {
        let n = m.ground().len();
        let d = doubled(&m);
        for g in 0..=full_mask(2 * n) {
            let swapped = mask_indices(g).fold(0u64, |acc, i| acc | 1 << ((i + n) % (2 * n)));
            let folded = mask_indices(g).fold(0u64, |acc, i| acc | 1 << (i % n));
            prop_assert_eq!(d.rank_mask(g), d.rank_mask(swapped));
            prop_assert_eq!(d.rank_mask(g), m.rank_mask(folded));
        }
    }

    #[test]
    fn closure_is_idempotent_and_rank_preserving(m in arb_matroid()) {
        let n = m.ground().len();
        for s in 0..=full_mask(n) {
            let c = closure_mask(&m, s);
            prop_assert_eq!(c & s, s);
            prop_assert_eq!(closure_mask(&m, c), c);
            prop_assert_eq!(m.rank_mask(c), m.rank_mask(s));
        }
    }

    #[test]
    fn flat_enumeration_matches_brute_force(m in arb_matroid(), r in 0usize..4) {
        let found: Vec<Mask> = enumerate_low_rank_flats(&m, r).into_iter().map(|(f, _)| f).collect();
        prop_assert_eq!(found, brute_flats(&m, r));
    }

    #[test]
    fn null_space_ray_is_orthogonal(seed in any::<u64>(), n in 2usize..=4, count in 0usize..4) {
        let mut r = rng(seed);
        let vs: Vec<Point> = (0..count).map(|_| random_nonzero(&mut r, n, 3)).collect();
        let rank = rank_of_vectors(&vs, n).unwrap();
        match null_space_ray(&vs, n).unwrap() {
            Some(a) => {
                prop_assert_eq!(rank, n - 1);
                prop_assert!(vs.iter().all(|v| v.dot(&a) == zero()));
                prop_assert_eq!(a.canonical_ray(), Some(a.clone()));
            }
            None => prop_assert_ne!(rank, n - 1),
        }
    }

    #[test]
    fn lifting_is_equivariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 2, 1, 3, 3);
        let l = lift_instance(&inst).unwrap();
        let m = inst.len();
        prop_assert_eq!(l.members.len(), 2 * m);
        for i in 0..m {
            prop_assert_eq!(l.phi[i].coords().last().cloned(), Some(hypertrans_core::geometry::int(1)));
            prop_assert_eq!(&l.phi[i + m], &-&l.phi[i]);
            let originals = &inst.family[i].vertices;
            prop_assert_eq!(l.members[i].vertices.len(), originals.len());
            for ((v, w), o) in l.members[i].vertices.iter().zip(&l.members[i + m].vertices).zip(originals) {
                prop_assert_eq!(v, &-w);
                prop_assert_eq!(&v.truncated(), o);
                prop_assert_eq!(v.coords().last().cloned(), Some(hypertrans_core::geometry::int(1)));
            }
        }
        prop_assert_eq!(l.rank(l.full()), inst.rank(inst.full()));
    }

    #[test]
    fn hypothesis_ignores_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 2, 1, 4, 2);
        let ids: Vec<String> = inst.ids().map(|id| format!("z{id}")).collect();
        let family = inst.family.iter().zip(&ids).map(|(p, id)| hypertrans_core::Polytope::new(id.clone(), p.vertices.clone()).unwrap()).collect();
        let renamed = Instance::new(inst.d, inst.k, family, inst.matroid.relabeled(ids).unwrap(), inst.phi.clone()).unwrap();
        let a = check_star(&inst, &Limits::default()).unwrap().passed();
        let b = check_star(&renamed, &Limits::default()).unwrap().passed();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn generic_central_arrangements_have_the_expected_chambers(seed in any::<u64>(), n in 2usize..=3, m in 1usize..=6) {
        let mut r = rng(seed);
        let pool: Vec<Point> = (0..m).map(|_| random_nonzero(&mut r, n, 5)).collect();
        // Generic: every n-subset (or fewer) is independent.
        let generic = (1..=n.min(m)).all(|size| {
            (0..=full_mask(m)).filter(|s| s.count_ones() as usize == size).all(|s| {
                let sub: Vec<Point> = mask_indices(s).map(|i| pool[i].clone()).collect();
                rank_of_vectors(&sub, n).unwrap() == size
            })
        });
        prop_assume!(generic);
        let cells = enumerate_covectors(&pool, n, &Limits::default()).unwrap();
        let chambers = cells.covectors.iter().filter(|c| c.signs.0.iter().all(|&s| s != Sign::Zero)).count();
        let expected = 2 * (0..n).map(|i| binomial(m - 1, i)).sum::<usize>();
        prop_assert_eq!(chambers, expected);
    }

    #[test]
    fn subfamilies_are_monotone_and_well_defined(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 1 + (seed % 2) as usize, 0, 2, 2);
        let l = lift_instance(&inst).unwrap();
        let cells = enumerate_covectors(&l.pool, l.n(), &Limits::default()).unwrap();
        for (i, c) in cells.covectors.iter().enumerate() {
            let f = subfamily_of_cell(&cells, &c.signs, &l).unwrap();
            // A second witness of the same cell: a positive multiple.
            let other = c.witness.scale(&hypertrans_core::geometry::int(3));
            prop_assert_eq!(sign_vector(&other, &l.pool).unwrap(), c.signs.clone());
            for j in 0..cells.len() {
                if cells.is_face(i, j) {
                    let g = subfamily_of_cell(&cells, &cells.covectors[j].signs, &l).unwrap();
                    prop_assert_eq!(f & !g, 0);
                }
            }
        }
    }

    #[test]
    fn instance_files_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 3, 2, 3, 3);
        let bytes = serialize_instance(&inst, None).unwrap();
        let back = parse_instance(bytes.as_bytes()).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back, None).unwrap(), bytes);
    }
}
