mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{analysis, random_deficits, random_rects};
use tmesh_dim::rational::frac;
use tmesh_dim::segments::{contribution_generators, h0_ideal_upper_plain};
use tmesh_dim::{
    build_profile, build_smoothness, build_tmesh, contribution_sets, dim_d_contribution, dim_m, dim_power_sum_in,
    dim_shift, h0_ideal_upper, order_segments, segment_weight, Analysis, Bidegree, LevelSel, OrderingStrategy,
    Orientation, Override, PowerGen, Rect, TMesh,
};

fn random_analysis(seed: u64, max_faces: usize) -> Analysis {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rects = random_rects(&mut rng, max_faces);
    let defs = random_deficits(&mut rng, rects.len());
    analysis(&rects, &defs, rng.gen_range(1..=2)).unwrap()
}

type EdgeKey = (Orientation, String, String, String);

fn cells(mesh: &TMesh) -> (BTreeSet<EdgeKey>, BTreeSet<(String, String)>) {
    let edges =
        mesh.edges.iter().map(|e| (e.orientation, e.line.to_string(), e.lo.to_string(), e.hi.to_string())).collect();
    let verts = mesh.vertices.iter().map(|v| (v.point.x.to_string(), v.point.y.to_string())).collect();
    (edges, verts)
}

/// Faces grouped into vertex-connected components; returns how many avoid the domain boundary.
fn islands(a: &Analysis, faces: &[usize]) -> i64 {
    let mesh = &a.mesh;
    let mut comp: Vec<usize> = (0..faces.len()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    let verts_of =
        |f: usize| -> BTreeSet<usize> { mesh.face_edges[f].iter().flat_map(|&(e, _)| mesh.edges[e].ends).collect() };
    let vs: Vec<BTreeSet<usize>> = faces.iter().map(|&f| verts_of(f)).collect();
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if !vs[i].is_disjoint(&vs[j]) {
                let (x, y) = (find(&mut comp, i), find(&mut comp, j));
                comp[x] = y;
            }
        }
    }
    let mut touching = BTreeSet::new();
    let mut roots = BTreeSet::new();
    for (i, v) in vs.iter().enumerate() {
        let r = find(&mut comp, i);
        roots.insert(r);
        if v.iter().any(|&v| mesh.vertices[v].on_boundary()) {
            touching.insert(r);
        }
    }
    (roots.len() - touching.len()) as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mesh_counts_and_incidence(seed in any::<u64>()) {
        let a = random_analysis(seed, 12);
        let m = &a.mesh;
        prop_assert_eq!(m.vertices.len() as i64 - m.edges.len() as i64 + m.faces.len() as i64, 1);
        for e in &m.edges {
            prop_assert_eq!(e.faces.len(), if e.boundary { 1 } else { 2 });
        }
        let s = m.stats();
        prop_assert_eq!(s.interior_edges + m.edges.iter().filter(|e| e.boundary).count(), s.edges);
    }

    #[test]
    fn mesh_is_permutation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rects = random_rects(&mut rng, 12);
        let before = cells(&build_tmesh(&rects).unwrap());
        rects.shuffle(&mut rng);
        prop_assert_eq!(before, cells(&build_tmesh(&rects).unwrap()));
    }

    #[test]
    fn deficits_are_monotone_and_levels_valid(seed in any::<u64>()) {
        let a = random_analysis(seed, 12);
        let p = &a.profile;
        for (e, edge) in a.mesh.edges.iter().enumerate() {
            for &v in &edge.ends {
                prop_assert!(p.vertex_deficit[v].le(p.edge_deficit[e]));
            }
        }
        prop_assert_eq!(p.levels[0], Bidegree::ZERO);
        for w in p.levels.windows(2) {
            let d = w[1] - w[0];
            prop_assert!([Bidegree(1, 0), Bidegree(0, 1), Bidegree(1, 1)].contains(&d));
        }
        for d in &p.deficit_set {
            prop_assert!(p.levels.contains(d));
        }
    }

    #[test]
    fn levels_nest_and_count_islands(seed in any::<u64>()) {
        let a = random_analysis(seed, 12);
        for w in a.levels.windows(2) {
            for (lo, hi) in [(&w[0].faces, &w[1].faces), (&w[0].edges, &w[1].edges), (&w[0].vertices, &w[1].vertices)] {
                prop_assert!(lo.iter().all(|x| hi.binary_search(x).is_ok()));
            }
        }
        for l in &a.levels {
            prop_assert_eq!(l.c, islands(&a, &l.faces));
        }
    }

    #[test]
    fn level_quotients_telescope(m0 in 0i64..8, m1 in 0i64..8, b0 in 0i64..4, b1 in 0i64..4, steps in prop::collection::vec(0usize..3, 0..3)) {
        let all = [Bidegree(1, 0), Bidegree(0, 1), Bidegree(1, 1)];
        let mut lv = vec![Bidegree::ZERO];
        for s in steps {
            lv.push(*lv.last().unwrap() + all[s]);
        }
        let (m, b) = (Bidegree(m0, m1), Bidegree(b0, b1));
        let parts: Vec<i64> = (1..=lv.len()).map(|i| dim_m(&lv, i, b, m).unwrap()).collect();
        prop_assert!(parts.iter().all(|&x| x >= 0));
        prop_assert_eq!(parts.iter().sum::<i64>(), dim_shift(m, b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn segment_bounds_are_consistent(seed in any::<u64>(), m0 in 1i64..6, m1 in 1i64..6) {
        let a = random_analysis(seed, 10);
        prop_assume!(a.assumptions().ok());
        let m = Bidegree(m0, m1);
        for ctx in &a.contexts {
            for (i, s) in ctx.segments.iter().enumerate() {
                for t in &ctx.segments[i + 1..] {
                    if s.orientation == t.orientation && s.line == t.line {
                        prop_assert!(s.hi < t.lo || t.hi < s.lo, "collinear segments overlap");
                    }
                }
            }
            for strategy in [OrderingStrategy::Input, OrderingStrategy::Greedy] {
                let ord = order_segments(ctx, m, strategy).unwrap();
                let improved = h0_ideal_upper(ctx, &ord, m).unwrap();
                prop_assert!(improved <= h0_ideal_upper_plain(ctx, &ord, m));
                prop_assert!(improved >= ctx.c * dim_m(&ctx.levels, ctx.index, Bidegree::ZERO, m).unwrap());
                let sets = contribution_sets(ctx, &ord, m);
                for &k in &ctx.interior {
                    if segment_weight(ctx, k, &sets, m) >= ctx.weight_threshold(k, m) {
                        let powers: Vec<PowerGen> = contribution_generators(ctx, k, &sets)
                            .iter()
                            .map(|&(o, x)| ctx.segments[o].power(x))
                            .collect();
                        let direct = dim_power_sum_in(&ctx.levels, LevelSel::Pair(ctx.index), &powers, ctx.segments[k].e, m).unwrap();
                        prop_assert_eq!(direct, ctx.dim_m_rho(k, m));
                        prop_assert_eq!(dim_d_contribution(ctx, k, &sets, m), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_is_affine_invariant(seed in any::<u64>(), a in 1i64..5, c in 1i64..5, b in -3i64..3, d in -3i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rects = random_rects(&mut rng, 8);
        let defs = random_deficits(&mut rng, rects.len());
        let r = rng.gen_range(1..=2u32);
        let an = analysis(&rects, &defs, r).unwrap();
        let m = Bidegree(3, 3);
        let mesh = an.mesh.map_affine(&frac(a, 2), &frac(b, 3), &frac(c, 3), &frac(d, 5)).unwrap();
        let profile = build_profile(&mesh, &an.profile.face_deficit, Some(&an.profile.levels)).unwrap();
        let smooth = build_smoothness(&mesh, r, &[]).unwrap();
        let moved = Analysis::new(mesh, profile, smooth);
        prop_assert_eq!(an.oracle(m), moved.oracle(m));
    }

    #[test]
    fn oracle_ignores_seamless_splits(seed in any::<u64>(), pick in any::<prop::sample::Index>(), vertical in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rects = random_rects(&mut rng, 8);
        let defs = random_deficits(&mut rng, rects.len());
        let r = rng.gen_range(1..=2u32);
        let base = analysis(&rects, &defs, r).unwrap();
        let m = Bidegree(3, 3);
        let k = pick.index(rects.len());
        let f = rects[k].clone();
        let half = |lo: &tmesh_dim::Rational, hi: &tmesh_dim::Rational| (lo + hi) / frac(2, 1);
        let (p, q, ov) = if vertical {
            let x = half(&f.x0, &f.x1);
            (
                Rect::new(f.x0.clone(), f.y0.clone(), x.clone(), f.y1.clone()),
                Rect::new(x.clone(), f.y0.clone(), f.x1.clone(), f.y1.clone()),
                Override { orientation: Orientation::Vertical, line: x, span: (f.y0.clone(), f.y1.clone()), r: 9 },
            )
        } else {
            let y = half(&f.y0, &f.y1);
            (
                Rect::new(f.x0.clone(), f.y0.clone(), f.x1.clone(), y.clone()),
                Rect::new(f.x0.clone(), y.clone(), f.x1.clone(), f.y1.clone()),
                Override { orientation: Orientation::Horizontal, line: y, span: (f.x0.clone(), f.x1.clone()), r: 9 },
            )
        };
        let mut split = rects.clone();
        split[k] = p;
        split.push(q);
        let mut sdefs = defs.clone();
        sdefs.push(defs[k]);
        let mesh = build_tmesh(&split).unwrap();
        let profile = build_profile(&mesh, &sdefs, Some(&base.profile.levels)).unwrap();
        let smooth = build_smoothness(&mesh, r, &[ov]);
        prop_assume!(smooth.is_ok());
        let refined = Analysis::new(mesh, profile, smooth.unwrap());
        prop_assert_eq!(base.oracle(m), refined.oracle(m));
    }

    #[test]
    fn more_smoothness_never_adds_splines(seed in any::<u64>(), m0 in 2i64..5, m1 in 2i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rects = random_rects(&mut rng, 8);
        let defs = random_deficits(&mut rng, rects.len());
        let m = Bidegree(m0, m1);
        let dims: Vec<i64> = (0..=3).map(|r| analysis(&rects, &defs, r).unwrap().oracle(m)).collect();
        prop_assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{:?}", dims);
    }

    #[test]
    fn lowering_a_deficit_never_lowers_the_dimension(seed in any::<u64>(), m0 in 1i64..5, m1 in 1i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rects = random_rects(&mut rng, 8);
        let defs = random_deficits(&mut rng, rects.len());
        let r = rng.gen_range(1..=2u32);
        let m = Bidegree(m0, m1);
        let a = analysis(&rects, &defs, r).unwrap();
        let before = a.oracle(m);
        let cert = |a: &Analysis| a.assumptions().ok() && a.report(m, OrderingStrategy::Auto).unwrap().certified;
        for k in (0..defs.len()).filter(|&k| !defs[k].is_zero()) {
            let mut lowered = defs.clone();
            lowered[k] = Bidegree::ZERO;
            let b = analysis(&rects, &lowered, r).unwrap();
            prop_assert!(b.oracle(m) >= before, "face {} lowered", k);
            // chi alone is not monotone; it is once both sides are certified exact
            if cert(&a) && cert(&b) {
                prop_assert!(b.euler_pair(m).0 >= a.euler_pair(m).0);
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let a = random_analysis(7, 12);
    let degrees: Vec<Bidegree> = (1..=5).flat_map(|b| (1..=5).map(move |a| Bidegree(a, b))).collect();
    let one = a.sweep(&degrees, OrderingStrategy::Auto, false).unwrap();
    let two = a.sweep(&degrees, OrderingStrategy::Auto, false).unwrap();
    assert_eq!(tmesh_dim::io::serialize_reports(&one), tmesh_dim::io::serialize_reports(&two));
}
