mod common;

use common::{cycle, k4, load, path, random_graph, rng};
use plgraph::corpus::plane_graphs;
use plgraph::decomposition::{carving_width_exact, ExactOptions};
use plgraph::embedded_relations::{embedded_immersion_with, replay, Engine, SearchOptions};
use plgraph::gridlib::*;
use plgraph::{Error, PlaneGraph};
use proptest::prelude::*;
use std::collections::{HashMap, HashSet};

fn realizes(got: &PlaneGraph, want: &PlaneGraph) -> bool {
    match want.outer_face() {
        Some(_) => got.equivalent(want),
        None => got.to_sphere().equivalent(want),
    }
}

fn face_degrees(g: &PlaneGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g.faces().iter().map(|f| f.darts.len()).collect();
    d.sort_unstable();
    d
}

/// The outer face is the unique face of largest degree.
fn outer_is_unique_max(g: &PlaneGraph) -> bool {
    let degs = face_degrees(g);
    let max = *degs.last().unwrap();
    degs.iter().filter(|&&d| d == max).count() == 1 && g.faces()[g.outer_face().unwrap()].darts.len() == max
}

fn euler_ok(g: &PlaneGraph) -> bool {
    g.num_vertices() as i64 - g.num_edges() as i64 + g.faces().len() as i64 == 2
}

#[test]
fn small_grids() {
    let g2 = grid(2).unwrap();
    assert!(g2.to_sphere().equivalent(&cycle(4)));
    assert_eq!(face_degrees(&g2), vec![4, 4]);
    let g3 = grid(3).unwrap();
    assert_eq!((g3.num_vertices(), g3.num_edges()), (9, 12));
    assert_eq!(face_degrees(&g3), vec![4, 4, 4, 4, 8]);
    assert!(outer_is_unique_max(&g3));
    let g1 = grid(1).unwrap();
    assert_eq!((g1.num_vertices(), g1.num_edges(), g1.outer_face()), (1, 0, Some(0)));
    assert_eq!(grid(0).unwrap_err(), Error::BadSize("grid side must be at least 1".into()));
    for n in 3..8 {
        let g = grid(n).unwrap();
        assert!(euler_ok(&g) && outer_is_unique_max(&g));
        let c = GridCoords::new(n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let v = c.vertex(i, j).unwrap();
                assert_eq!(c.position(v), Some((i, j)));
                let want: HashSet<(usize, usize)> = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                    .into_iter()
                    .filter(|&(a, b)| (1..=n).contains(&a) && (1..=n).contains(&b))
                    .collect();
                let got: HashSet<(usize, usize)> = g.neighbors(v).into_iter().map(|u| c.position(u).unwrap()).collect();
                assert_eq!(got, want);
            }
        }
    }
}

#[test]
fn walls() {
    for h in [2, 4, 6] {
        let w = wall(h).unwrap();
        assert_eq!(w.num_vertices(), (h + 1) * (2 * h + 2) - 2);
        assert!(euler_ok(&w) && outer_is_unique_max(&w));
        let outer: HashSet<usize> = w.face_vertices(w.outer_face().unwrap()).into_iter().collect();
        for v in 0..w.num_vertices() {
            assert!(w.degree(v) == 3 || (w.degree(v) == 2 && outer.contains(&v)));
        }
        // every inner face is a brick: a 6-cycle
        let f = w.outer_face().unwrap();
        assert!((0..w.faces().len()).filter(|&g| g != f).all(|g| w.faces()[g].darts.len() == 6));
    }
    let w2 = wall(2).unwrap();
    assert_eq!((w2.num_vertices(), w2.num_edges()), (16, 19));
    for bad in [0, 1, 3] {
        assert!(matches!(wall(bad), Err(Error::BadSize(_))));
    }
}

#[test]
fn embedding_census() {
    let c1 = unique_embedding_census(1).unwrap();
    assert_eq!((c1.rotation_systems, c1.planar, c1.classes), (1, 1, 1));
    let c2 = unique_embedding_census(2).unwrap();
    assert_eq!((c2.rotation_systems, c2.classes, c2.classes_up_to_reflection), (1, 1, 1));
    let c3 = unique_embedding_census(3).unwrap();
    // corners have one cyclic order, sides two, the center six
    assert_eq!(c3.rotation_systems, 16 * 6);
    assert_eq!((c3.classes, c3.classes_up_to_reflection), (1, 1));
    // the embedding and its mirror image
    assert_eq!(c3.planar, 2);
    assert!(matches!(unique_embedding_census(5), Err(Error::TooLarge(_))));
}

#[test]
fn census_four() {
    let c = unique_embedding_census(4).unwrap();
    assert_eq!(c.rotation_systems, 256 * 1296);
    assert_eq!((c.planar, c.classes, c.classes_up_to_reflection), (2, 1, 1));
}

/// A triangle is separating exactly when deleting its corners disconnects
/// the rest of the triangulation.
fn separating_by_deletion(g: &PlaneGraph) -> Vec<[usize; 3]> {
    let n = g.num_vertices();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !(adj[a].contains(&b) && adj[b].contains(&c) && adj[a].contains(&c)) {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|&v| v != a && v != b && v != c).collect();
                if rest.is_empty() {
                    continue;
                }
                let mut seen = HashSet::from([rest[0]]);
                let mut stack = vec![rest[0]];
                while let Some(v) = stack.pop() {
                    for &w in &adj[v] {
                        if w != a && w != b && w != c && seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
                if seen.len() < rest.len() {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn stacked_k4() -> PlaneGraph {
    // K4 drawn as a triangle with a center, plus a vertex stacked into one face
    let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5), (2.0, 0.5)];
    let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (3, 4)];
    plgraph::corpus::straight_line(&pts, &edges).unwrap()
}

fn check_prepared(h: &PlaneGraph, p: &Prepared) {
    let g = &p.graph;
    let n = g.num_vertices();
    let mut pairs = HashSet::new();
    for (a, b) in g.edge_list() {
        assert!(a != b && pairs.insert((a.min(b), a.max(b))), "not simple");
    }
    if n >= 3 {
        assert!(g.faces().iter().all(|f| f.darts.len() == 3));
    }
    assert!(separating_by_deletion(g).is_empty());
    let mut order = p.cycle.clone();
    assert_eq!(order.len(), n);
    for k in 0..n {
        if n > 1 {
            assert!(g.neighbors(order[k]).contains(&order[(k + 1) % n]));
        }
    }
    order.sort_unstable();
    order.dedup();
    assert_eq!(order.len(), n);
    assert!(realizes(&replay(g, &p.back_map).unwrap(), h));
}

#[test]
fn preparation_examples() {
    let p = prepare_hamiltonian(&cycle(4)).unwrap();
    assert_eq!((p.graph.num_vertices(), p.graph.num_edges(), p.separating_removed), (4, 6, 0));
    check_prepared(&cycle(4), &p);
    let p = prepare_hamiltonian(&k4()).unwrap();
    assert_eq!((p.separating_removed, p.back_map.len()), (0, 0));
    let s = stacked_k4();
    assert_eq!(separating_triangles(&s), separating_by_deletion(&s));
    assert_eq!(separating_triangles(&s).len(), 1);
    let p = prepare_hamiltonian(&s).unwrap();
    assert_eq!(p.separating_removed, 1);
    assert_eq!(p.graph.num_vertices(), 6);
    check_prepared(&s, &p);
    let two = PlaneGraph::parse_plg("vertex a : x.0\nvertex b : x.1\nvertex c : y.0\nvertex d : y.1\nedge x : x.0 x.1\nedge y : y.0 y.1")
        .unwrap();
    assert_eq!(prepare_hamiltonian(&two).unwrap_err(), Error::Disconnected);
}

#[test]
fn preparation_on_corpus() {
    for h in plane_graphs(5, 9, true).iter().chain(&plane_graphs(3, 4, false)) {
        let p = prepare_hamiltonian(h).unwrap();
        check_prepared(h, &p);
        assert_eq!(separating_triangles(&p.graph), separating_by_deletion(&p.graph));
    }
}

fn check_data(d: &HamiltonianData) {
    let mut owner = HashMap::new();
    for (k, s) in d.sets.iter().enumerate() {
        assert!(s.contains(&(k, k)));
        for &c in s {
            assert!(owner.insert(c, k).is_none(), "branch sets overlap");
        }
    }
    for &(a, b) in &d.connectors {
        assert_eq!(a.0.abs_diff(b.0) + a.1.abs_diff(b.1), 1);
        assert_ne!(owner[&a], owner[&b]);
    }
}

#[test]
fn grid_embedding_examples() {
    let edge = path(2);
    let ge = grid_embed(&edge).unwrap();
    assert_eq!(ge.n, 3);
    assert!(realizes(&ge.replay().unwrap(), &edge));
    let ge = grid_embed(&cycle(3)).unwrap();
    assert_eq!(ge.n, 3);
    assert!(realizes(&ge.replay().unwrap(), &cycle(3)));
    check_data(ge.data.as_ref().unwrap());
    let text = ge.to_string();
    assert!(text.starts_with("target grid 3\n"));
    let g = load("fig1_g.plg");
    let ge = grid_embed(&g).unwrap();
    let got = ge.replay().unwrap();
    assert!(realizes(&got, &g));
    // the embedding is kept, not merely the abstract graph
    assert!(!realizes(&got, &load("fig1_gprime.plg")));
    let single = grid(1).unwrap().to_sphere();
    assert_eq!(grid_embed(&single).unwrap().n, 1);
}

#[test]
fn grid_embedding_on_corpus() {
    for h in plane_graphs(5, 9, true).iter().chain(&plane_graphs(4, 4, false)) {
        let ge = grid_embed(h).unwrap();
        assert!(realizes(&ge.replay().unwrap(), h), "{}", h.to_plg());
        if let Some(d) = &ge.data {
            check_data(d);
            assert_eq!(ge.n, d.sets.len());
        }
    }
}

#[test]
fn grid_embedding_keeps_the_outer_face() {
    for h in plane_graphs(4, 5, true) {
        for f in 0..h.faces().len() {
            let m = h.with_outer_face(f);
            let ge = grid_embed(&m).unwrap();
            let got = ge.replay().unwrap();
            assert!(got.equivalent(&m), "{}", m.to_plg());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn grid_embedding_of_random_graphs(seed in 0u64..1_000_000) {
        let h = random_graph(&mut rng(seed), 6);
        let ge = grid_embed(&h).unwrap();
        prop_assert!(realizes(&ge.replay().unwrap(), &h));
    }
}

fn identity_witness(h: usize) -> WallWitness {
    let w = wall(h).unwrap();
    WallWitness { h, vertices: (0..w.num_vertices()).collect(), paths: (0..w.num_edges()).map(|e| vec![e]).collect() }
}

fn subdivided_wall(h: usize) -> PlaneGraph {
    let mut g = wall(h).unwrap();
    let names: Vec<String> = (0..g.num_edges()).map(|e| g.edge_name(e).to_string()).collect();
    for (k, e) in names.iter().enumerate() {
        g = g.subdivide(g.edge_by_name(e).unwrap(), &format!("sub{k}")).unwrap();
    }
    g
}

#[test]
fn wall_search() {
    let w = wall(2).unwrap();
    let wit = find_subdivided_wall(&w, 2).unwrap().expect("a wall contains itself");
    assert!(wit.paths.iter().all(|p| p.len() == 1));
    let mut seen = wit.vertices.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..w.num_vertices()).collect::<Vec<_>>());
    let s = subdivided_wall(2);
    let wit = find_subdivided_wall(&s, 2).unwrap().unwrap();
    assert!(wit.paths.iter().all(|p| p.len() == 2));
    assert_eq!(find_subdivided_wall(&cycle(6), 2).unwrap(), None);
    assert_eq!(find_subdivided_wall(&grid(3).unwrap(), 2).unwrap(), None);
}

#[test]
fn wall_extraction() {
    let w = wall(2).unwrap();
    let wit = find_subdivided_wall(&w, 2).unwrap().unwrap();
    let s = wall_to_grid(&w, &wit, 1).unwrap();
    assert!(replay(&w, &s).unwrap().equivalent(&grid(1).unwrap()));
    let sw = subdivided_wall(2);
    let wit = find_subdivided_wall(&sw, 2).unwrap().unwrap();
    assert!(replay(&sw, &wall_to_grid(&sw, &wit, 1).unwrap()).unwrap().equivalent(&grid(1).unwrap()));
    let w4 = wall(4).unwrap();
    let id = identity_witness(4);
    assert!(replay(&w4, &wall_to_grid(&w4, &id, 2).unwrap()).unwrap().equivalent(&grid(2).unwrap()));
    assert!(matches!(wall_to_grid(&w4, &id, 1), Err(Error::BadWitness(_))));
    let mut broken = id.clone();
    broken.paths.swap(0, 5);
    assert!(matches!(wall_to_grid(&w4, &broken, 2), Err(Error::BadWitness(_))));
    let mut repeated = id;
    repeated.vertices[1] = repeated.vertices[0];
    assert!(matches!(wall_to_grid(&w4, &repeated, 2), Err(Error::BadWitness(_))));
}

#[test]
fn wall_extraction_moves_the_outer_face() {
    for h in [4, 6] {
        let w = wall(h).unwrap();
        let id = identity_witness(h);
        let target = grid(h / 2).unwrap();
        for f in 0..w.faces().len() {
            let m = w.with_outer_face(f);
            let got = replay(&m, &wall_to_grid(&m, &id, h / 2).unwrap()).unwrap();
            assert!(got.equivalent(&target), "outer face {f} of wall({h})");
        }
        let sphere = w.to_sphere();
        let got = replay(&sphere, &wall_to_grid(&sphere, &id, h / 2).unwrap()).unwrap();
        assert!(got.equivalent(&target.to_sphere()));
    }
}

#[test]
fn sphere_marker() {
    let g = grid(3).unwrap();
    let m = add_sphere_marker(&g).unwrap();
    assert_eq!(m.num_components(), 2);
    assert_eq!(m.num_vertices(), 13);
    let outer = m.outer_face().unwrap();
    let region = m.face_region(outer);
    let comps: HashSet<usize> = m.regions()[region].iter().map(|&f| m.face_component(f)).collect();
    assert_eq!(comps.len(), 2);
    assert_eq!(add_sphere_marker(&g.to_sphere()).unwrap_err(), Error::NoOuterFace);
    assert!(carving_width_exact(&k4(), &ExactOptions::default()).unwrap().0 >= 2);
}

#[test]
fn marker_immersion_respects_outer_faces() {
    let opts = SearchOptions { max_darts: 60, ..SearchOptions::default() };
    let mut marked = Vec::new();
    for g in plane_graphs(3, 3, true) {
        for f in 0..g.faces().len() {
            marked.push(g.with_outer_face(f));
        }
    }
    let mut related = 0;
    for h in &marked {
        for g in &marked {
            let (mh, mg) = (add_sphere_marker(h).unwrap(), add_sphere_marker(g).unwrap());
            let with = embedded_immersion_with(&mh, &mg, false, Engine::Ordered, &opts).unwrap().is_some();
            if with {
                related += 1;
                assert!(embedded_immersion_with(h, g, false, Engine::Ordered, &opts).unwrap().is_some());
            }
        }
    }
    assert!(related >= marked.len());
}
