mod common;

use std::collections::BTreeSet;

use common::{bigon_pair, builder_suite, cube_corner, cycle, small_suite, star};
use cubecat_core::*;
use proptest::prelude::*;

/// Brute force: every 8-vertex set whose induced subgraph is cubic and
/// bipartite (hence a 3-cube graph) with all six 4-cycles declared squares.
fn brute_force_three_cubes(c: &CubeComplex) -> BTreeSet<Vec<usize>> {
    let n = c.vertex_count();
    let mut out = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::new();
    fn rec(c: &CubeComplex, start: usize, subset: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if subset.len() == 8 {
            if is_filled_q3(c, subset) {
                out.insert(subset.clone());
            }
            return;
        }
        for v in start..c.vertex_count() {
            subset.push(v);
            rec(c, v + 1, subset, out);
            subset.pop();
        }
    }
    if n >= 8 {
        rec(c, 0, &mut subset, &mut out);
    }
    out
}

fn is_filled_q3(c: &CubeComplex, s: &[usize]) -> bool {
    let adj = |a: usize, b: usize| c.has_edge(a, b);
    if !s.iter().all(|&u| s.iter().filter(|&&v| adj(u, v)).count() == 3) {
        return false;
    }
    // 2-colour the induced graph
    let mut colour = vec![None; s.len()];
    colour[0] = Some(false);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if adj(s[i], s[j]) {
                let want = !colour[i].unwrap();
                match colour[j] {
                    None => {
                        colour[j] = Some(want);
                        stack.push(j);
                    }
                    Some(got) if got != want => return false,
                    _ => {}
                }
            }
        }
    }
    if colour.iter().any(Option::is_none) {
        return false;
    }
    let mut four_cycles = 0;
    for a in 0..8 {
        for b in 0..8 {
            for cc in 0..8 {
                for d in 0..8 {
                    let q = [s[a], s[b], s[cc], s[d]];
                    let distinct = q.iter().collect::<BTreeSet<_>>().len() == 4;
                    if distinct
                        && a == *[a, b, cc, d].iter().min().unwrap()
                        && b < d
                        && adj(q[0], q[1])
                        && adj(q[1], q[2])
                        && adj(q[2], q[3])
                        && adj(q[3], q[0])
                    {
                        if c.square_on(q).is_none() {
                            return false;
                        }
                        four_cycles += 1;
                    }
                }
            }
        }
    }
    four_cycles == 6
}

fn derived_three_cubes(c: &CubeComplex) -> BTreeSet<Vec<usize>> {
    c.cubes()
        .iter()
        .filter(|k| k.dim() == 3)
        .map(|k| k.vertex_set().to_vec())
        .collect()
}

#[test]
fn flag_completion_matches_brute_force_enumeration() {
    let mut hollow = build_hypercube(3).unwrap().description();
    hollow.squares.pop();
    let cases = [
        build_hypercube(3).unwrap(),
        build_hypercube(4).unwrap(),
        build_grid(&[2, 1, 1]).unwrap(),
        build_product(&star(3), &build_hypercube(2).unwrap()).unwrap(),
        CubeComplex::build(&hollow).unwrap(),
        cube_corner(),
    ];
    for c in &cases {
        assert_eq!(derived_three_cubes(c), brute_force_three_cubes(c));
    }
    assert_eq!(derived_three_cubes(&cases[0]).len(), 1);
    assert_eq!(derived_three_cubes(&cases[1]).len(), 8);
    assert_eq!(derived_three_cubes(&cases[2]).len(), 2);
    assert!(derived_three_cubes(&cases[4]).is_empty());
}

#[test]
fn flag_completion_is_idempotent() {
    for inst in small_suite() {
        let again = CubeComplex::build(&inst.complex.description()).unwrap();
        assert_eq!(again, inst.complex);
        assert_eq!(again.cubes(), inst.complex.cubes(), "{}", inst.name);
        assert_eq!(again.dimension(), inst.complex.dimension());
    }
}

/// Gromov's conditions at the link of every edge, computed directly from the
/// cube lists: two squares through an edge lie in at most one common 3-cube,
/// and three squares pairwise in 3-cubes lie in a common 4-cube.
fn edge_links_ok(c: &CubeComplex) -> bool {
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|v| big.binary_search(v).is_ok());
    let of_dim = |k: usize| {
        c.cubes()
            .iter()
            .filter(move |q| q.dim() == k)
            .map(|q| q.vertex_set())
    };
    for &(u, v) in c.edges() {
        let e = [u, v];
        let squares: Vec<&[usize]> = of_dim(2).filter(|s| contains(s, &e)).collect();
        let cubes: Vec<&[usize]> = of_dim(3).filter(|s| contains(s, &e)).collect();
        let tesseracts: Vec<&[usize]> = of_dim(4).filter(|s| contains(s, &e)).collect();
        let joined =
            |a: &[usize], b: &[usize]| cubes.iter().filter(|q| contains(q, a) && contains(q, b)).count();
        for (i, a) in squares.iter().enumerate() {
            for (j, b) in squares.iter().enumerate().skip(i + 1) {
                if joined(a, b) > 1 {
                    return false;
                }
                for cc in squares.iter().skip(j + 1) {
                    if joined(a, b) == 1
                        && joined(b, cc) == 1
                        && joined(a, cc) == 1
                        && !tesseracts
                            .iter()
                            .any(|t| contains(t, a) && contains(t, b) && contains(t, cc))
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn vertex_link_check_agrees_with_brute_force_edge_links() {
    let mut corpus: Vec<CubeComplex> = small_suite().into_iter().map(|i| i.complex).collect();
    corpus.push(build_hypercube(5).unwrap());
    corpus.push(build_grid(&[2, 2, 2]).unwrap());
    corpus.push(bigon_pair());
    corpus.push(cube_corner());
    for c in &corpus {
        if npc_check(c).passed() {
            assert!(edge_links_ok(c));
        }
    }
}

#[test]
fn metric_oracles_agree_and_d_is_a_metric() {
    for inst in small_suite() {
        let c = &inst.complex;
        let names = c.names();
        let n = names.len();
        let mut dist = vec![vec![0u32; n]; n];
        for u in 0..n {
            for v in 0..n {
                let bfs = edge_distance(c, names[u].as_str(), names[v].as_str()).unwrap();
                let walls = wall_distance(c, names[u].as_str(), names[v].as_str()).unwrap();
                assert_eq!(bfs, walls, "{} {} {}", inst.name, names[u], names[v]);
                assert_eq!(
                    separating_walls(c, names[u].as_str(), names[v].as_str())
                        .unwrap()
                        .len() as u32,
                    walls
                );
                dist[u][v] = bfs;
            }
        }
        for u in 0..n {
            for v in 0..n {
                assert_eq!(dist[u][v], dist[v][u]);
                assert_eq!(dist[u][v] == 0, u == v);
                for w in 0..n {
                    assert!(dist[u][w] <= dist[u][v] + dist[v][w]);
                }
            }
        }
    }
}

#[test]
fn each_edge_crosses_exactly_its_own_wall() {
    for inst in small_suite() {
        let c = &inst.complex;
        let all = walls(c).unwrap();
        for &(u, v) in c.edges() {
            let sep = separating_walls(c, c.name(u).as_str(), c.name(v).as_str()).unwrap();
            assert_eq!(sep.len(), 1);
            assert!(sep[0].edges.contains(&(c.name(u).clone(), c.name(v).clone())));
            assert_eq!(all[sep[0].id], sep[0]);
        }
    }
}

#[test]
fn medians_are_symmetric_and_absorbing() {
    for inst in small_suite() {
        let c = &inst.complex;
        let names: Vec<&str> = c.names().iter().map(VertexId::as_str).collect();
        for &u in &names {
            for &v in &names {
                assert_eq!(median(c, u, u, v).unwrap().as_str(), u);
                for &w in &names {
                    let m = median(c, u, v, w).unwrap();
                    assert_eq!(median(c, v, w, u).unwrap(), m);
                    assert_eq!(median(c, w, v, u).unwrap(), m);
                }
            }
        }
    }
}

#[test]
fn cat0_pass_implies_npc_pass_and_reports_are_deterministic() {
    let mut corpus: Vec<CubeComplex> = builder_suite().into_iter().map(|i| i.complex).collect();
    corpus.extend([bigon_pair(), cube_corner(), cycle(4), cycle(6), cycle(5)]);
    for c in &corpus {
        if cat0_check(c).passed() {
            assert!(npc_check(c).passed());
        }
        let fresh = CubeComplex::build(&c.description()).unwrap();
        assert_eq!(cat0_check(&fresh), cat0_check(c));
    }
}

#[test]
fn product_of_paths_is_the_grid() {
    let prod = build_product(&build_path(2).unwrap(), &build_path(3).unwrap()).unwrap();
    let mut renamed = prod.description();
    let fix = |s: &String| s.replace('|', "_");
    renamed.vertices = renamed.vertices.iter().map(fix).collect();
    renamed.edges = renamed.edges.iter().map(|(a, b)| (fix(a), fix(b))).collect();
    renamed.squares = renamed
        .squares
        .iter()
        .map(|q| q.clone().map(|s| fix(&s)))
        .collect();
    assert_eq!(
        CubeComplex::build(&renamed).unwrap(),
        build_grid(&[2, 3]).unwrap()
    );
}

#[test]
fn product_distance_is_additive() {
    let x = star(3);
    let y = build_hypercube(2).unwrap();
    let p = build_product(&x, &y).unwrap();
    assert_eq!(p.dimension(), x.dimension() + y.dimension());
    for a in x.names() {
        for b in y.names() {
            for a2 in x.names() {
                for b2 in y.names() {
                    let lhs = wall_distance(&p, &format!("{a}|{b}"), &format!("{a2}|{b2}")).unwrap();
                    let rhs = edge_distance(&x, a.as_str(), a2.as_str()).unwrap()
                        + edge_distance(&y, b.as_str(), b2.as_str()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn serialization_round_trips_on_every_builder() {
    for inst in builder_suite() {
        let text = serialize_complex(&inst.complex);
        assert_eq!(parse_complex(&text).unwrap(), inst.complex, "{}", inst.name);
        assert_eq!(serialize_complex(&parse_complex(&text).unwrap()), text);
    }
}

#[test]
fn sample_graph_bound_refines_and_stays_below_d() {
    for c in [
        build_grid(&[2, 2]).unwrap(),
        build_hypercube(3).unwrap(),
        build_grid(&[1, 2, 1]).unwrap(),
    ] {
        let mut previous: Option<Vec<MetricReport>> = None;
        for k in [1, 2, 4] {
            let reports = metric_comparison(&c, k).unwrap();
            for (i, r) in reports.iter().enumerate() {
                assert!(r.bounds_ok);
                assert!(r.d_upper <= f64::from(r.wall_distance) + TOLERANCE);
                if let Some(prev) = &previous {
                    assert!(r.d_upper <= prev[i].d_upper + TOLERANCE);
                }
            }
            previous = Some(reports);
        }
    }
}

#[test]
fn trees_have_exact_sample_distances() {
    let t = common::random_tree(12, 9);
    for k in [1, 2, 3, 4] {
        for r in metric_comparison(&t, k).unwrap() {
            assert!((r.d_upper - f64::from(r.wall_distance)).abs() <= TOLERANCE);
        }
    }
}

#[test]
fn distance_kernels_have_no_violations() {
    for inst in small_suite() {
        let k = distance_kernel(&inst.complex).unwrap();
        assert_eq!(
            cnd_check(&k, 200, 11).status,
            KernelStatus::NoViolationFound,
            "{}",
            inst.name
        );
    }
}

/// Signed coordinate permutation of the n-cube with bit-string vertex names.
fn cube_symmetry(c: &CubeComplex, perm: &[usize], flips: &[bool]) -> Automorphism {
    let map: Vec<(String, String)> = c
        .names()
        .iter()
        .map(|v| {
            let bits: Vec<char> = v.as_str().chars().collect();
            let mut image = vec!['0'; bits.len()];
            for (i, &b) in bits.iter().enumerate() {
                let flipped = (b == '1') != flips[i];
                image[perm[i]] = if flipped { '1' } else { '0' };
            }
            (v.to_string(), image.into_iter().collect())
        })
        .collect();
    validate_automorphism(c, map).unwrap()
}

fn arb_symmetry(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>)> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), n),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cube_symmetries_are_isometries_that_permute_walls(
        (n, gens) in (2usize..=4).prop_flat_map(|n| (Just(n), proptest::collection::vec(arb_symmetry(n), 0..3)))
    ) {
        let c = build_hypercube(n).unwrap();
        let ws = walls(&c).unwrap();
        let wall_sets: BTreeSet<BTreeSet<(usize, usize)>> = ws
            .iter()
            .map(|w| w.edges.iter().map(|(a, b)| (c.index_of(a.as_str()).unwrap(), c.index_of(b.as_str()).unwrap())).collect())
            .collect();
        let generators: Vec<(String, Automorphism)> = gens
            .iter()
            .enumerate()
            .map(|(i, (p, f))| (format!("g{i}"), cube_symmetry(&c, p, f)))
            .collect();

        for (_, g) in &generators {
            for u in 0..c.vertex_count() {
                for v in 0..c.vertex_count() {
                    let d = edge_distance(&c, c.name(u).as_str(), c.name(v).as_str()).unwrap();
                    let dg = edge_distance(&c, c.name(g.apply(u)).as_str(), c.name(g.apply(v)).as_str()).unwrap();
                    prop_assert_eq!(d, dg);
                }
            }
            for w in &wall_sets {
                let image: BTreeSet<(usize, usize)> = w
                    .iter()
                    .map(|&(a, b)| { let (x, y) = (g.apply(a), g.apply(b)); (x.min(y), x.max(y)) })
                    .collect();
                prop_assert!(wall_sets.contains(&image));
            }
        }

        let action = GroupAction::new(&c, generators, DEFAULT_CLOSURE_CAP).unwrap();
        let fixed = fixed_cube(&action).unwrap();
        let set: Vec<usize> = fixed.cube.iter().map(|v| c.index_of(v.as_str()).unwrap()).collect();
        for g in action.elements() {
            prop_assert_eq!(g.image_of_set(&set), set.clone());
        }
        let kernel = invariant_kernel(&action, c.name(0).as_str()).unwrap();
        prop_assert!(kernel.left_invariant);
        prop_assert_eq!(cnd_check(&kernel.matrix, 20, 5).status, KernelStatus::NoViolationFound);
    }

    #[test]
    fn quadratic_form_is_permutation_invariant_and_quadratic(
        (size, entries, weights, perm, scale) in (2usize..7).prop_flat_map(|m| (
            Just(m),
            proptest::collection::vec(-5i64..6, m * m),
            proptest::collection::vec(-4i64..5, m - 1),
            Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
            -3i64..4,
        ))
    ) {
        let mut rows = vec![vec![0i64; size]; size];
        for i in 0..size {
            for j in 0..i {
                rows[i][j] = entries[i * size + j];
                rows[j][i] = entries[i * size + j];
            }
        }
        let kernel = KernelMatrix::new((0..size).map(|i| i.to_string()).collect(), rows).unwrap();
        let mut w = weights.clone();
        w.push(-weights.iter().sum::<i64>());
        let probe = KernelProbe::new((0..size).collect(), w.clone()).unwrap();
        let value = quadratic_form(&kernel, &probe).unwrap();

        let permuted = KernelProbe::new(perm.clone(), perm.iter().map(|&i| w[i]).collect()).unwrap();
        prop_assert_eq!(quadratic_form(&kernel, &permuted).unwrap(), value);
        prop_assert_eq!(quadratic_form(&kernel, &probe.scaled(scale)).unwrap(), value * scale * scale);
    }

    #[test]
    fn wall_identity_holds_for_random_probes(seed in any::<u64>(), which in 0usize..4) {
        let c = match which {
            0 => build_grid(&[2, 3]).unwrap(),
            1 => build_hypercube(3).unwrap(),
            2 => common::random_tree(15, seed % 7),
            _ => build_product(&star(2), &build_path(2).unwrap()).unwrap(),
        };
        for probe in seeded_probes(&c, 10, seed) {
            let id = wall_identity_check(&c, &probe).unwrap();
            prop_assert!(id.equal);
            prop_assert!(id.lhs <= 0);
        }
    }

    #[test]
    fn grid_reflections_fix_a_cube(k in 1usize..5, flip_x in any::<bool>(), flip_y in any::<bool>(), swap in any::<bool>()) {
        let c = build_grid(&[k, k]).unwrap();
        let map: Vec<(String, String)> = (0..=k)
            .flat_map(|x| (0..=k).map(move |y| (x, y)))
            .map(|(x, y)| {
                let (mut a, mut b) = (if flip_x { k - x } else { x }, if flip_y { k - y } else { y });
                if swap { std::mem::swap(&mut a, &mut b); }
                (format!("{x}_{y}"), format!("{a}_{b}"))
            })
            .collect();
        let g = validate_automorphism(&c, map).unwrap();
        let action = GroupAction::new(&c, vec![("g".into(), g)], 100).unwrap();
        let fixed = fixed_cube(&action).unwrap();
        let set: Vec<usize> = fixed.cube.iter().map(|v| c.index_of(v.as_str()).unwrap()).collect();
        for h in action.elements() {
            prop_assert_eq!(h.image_of_set(&set), set.clone());
        }
    }
}
