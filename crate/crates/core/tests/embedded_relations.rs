mod common;

use common::{cycle, family_records, k4, load, path, rng, theta, Theta};
use plgraph::corpus::{plane_graphs, random_orientation, straight_line};
use plgraph::decomposition::{certify_disc, leaving_graph, make_disc, LeavingGraph};
use plgraph::embedded_relations::{
    abstract_minor, classify_family, embedded_immersion_with, embedded_minor, embedded_minor_with, format_word,
    leq_leaving, leq_leaving_aligned, leq_leaving_with, make_tangent, parse_word, reduce_word, replay, transverse_vertices, Engine, Letter,
    OpScript, PathFamily, SearchOptions, Tangency,
};
use plgraph::plane_graph::EmbeddedOp;
use plgraph::{Error, PlaneGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use std::time::Instant;

fn big() -> SearchOptions {
    SearchOptions { max_darts: 40, ..SearchOptions::default() }
}

fn connected(max_v: usize, max_e: usize, simple: bool) -> Vec<PlaneGraph> {
    plane_graphs(max_v, max_e, simple).into_iter().filter(|g| g.is_connected()).collect()
}

/// Dart of edge `e` at its endpoint `v`.
fn dart_at(g: &PlaneGraph, e: usize, v: usize) -> usize {
    g.edge_darts(e).into_iter().find(|&d| g.dart_vertex(d) == v).unwrap()
}

/// Centre 0 with leaves east, north, west and south.
fn star() -> PlaneGraph {
    straight_line(
        &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)],
        &[(0, 1), (0, 2), (0, 3), (0, 4)],
    )
    .unwrap()
}

/// Walk from leaf `a` through the centre to leaf `b` of [`star`].
fn through(g: &PlaneGraph, a: usize, b: usize) -> Vec<usize> {
    vec![dart_at(g, a - 1, a), dart_at(g, b - 1, 0)]
}

fn ends(g: &PlaneGraph, f: &PathFamily) -> Vec<usize> {
    let mut out: Vec<usize> = f
        .walks
        .iter()
        .flat_map(|w| [g.dart_vertex(w[0]), g.dart_vertex(g.twin(*w.last().unwrap()))])
        .collect();
    out.sort_unstable();
    out
}

#[test]
fn figure_one_triple() {
    let (g, gp, h) = (load("fig1_g.plg"), load("fig1_gprime.plg"), load("fig1_h.plg"));
    let t = Instant::now();
    let s = embedded_minor(&h, &g).unwrap().expect("H is an embedded minor of G");
    assert!(replay(&g, &s).unwrap().equivalent(&h));
    assert_eq!(embedded_minor(&h, &gp).unwrap(), None);
    assert!(abstract_minor(&h, &gp).unwrap());
    assert!(t.elapsed().as_secs() < 10);
}

#[test]
fn minor_examples() {
    assert_eq!(embedded_minor(&k4(), &cycle(4)).unwrap(), None);
    let s = embedded_minor(&cycle(3), &k4()).unwrap().unwrap();
    assert!(replay(&k4(), &s).unwrap().equivalent(&cycle(3)));
    let s = embedded_minor(&k4(), &k4()).unwrap().unwrap();
    assert!(s.is_empty());
    assert!(embedded_minor(&path(3), &cycle(3)).unwrap().is_some());
}

#[test]
fn replay_rejects_unknown_names() {
    let s = OpScript::new(vec![EmbeddedOp::DeleteEdge("nope".into())]);
    assert!(matches!(replay(&k4(), &s), Err(Error::BadAddress(_) | Error::UnknownEdge(_))));
    let s = OpScript::new(vec![EmbeddedOp::DeleteVertex("nope".into())]);
    assert!(matches!(replay(&k4(), &s), Err(Error::BadAddress(_) | Error::UnknownVertex(_))));
}

#[test]
fn script_text_round_trip() {
    let s = embedded_minor(&cycle(3), &k4()).unwrap().unwrap();
    assert_eq!(OpScript::parse(&s.to_string()).unwrap(), s);
}

#[test]
fn minors_are_transitive() {
    let gs = connected(4, 4, true);
    let mut rel = vec![vec![false; gs.len()]; gs.len()];
    for (i, h) in gs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            rel[i][j] = embedded_minor_with(h, g, &big()).unwrap().is_some();
        }
    }
    let mut chains = 0;
    for i in 0..gs.len() {
        assert!(rel[i][i]);
        for j in 0..gs.len() {
            for k in 0..gs.len() {
                if rel[i][j] && rel[j][k] {
                    assert!(rel[i][k]);
                    chains += 1;
                }
            }
        }
    }
    assert!(chains > gs.len());
}

#[test]
fn deleting_an_edge_keeps_a_minor() {
    for g in connected(4, 5, true) {
        for e in 0..g.num_edges() {
            let h = g.delete_edge(e).unwrap();
            let s = embedded_minor_with(&h, &g, &big()).unwrap().expect("edge deletion is a minor");
            assert!(replay(&g, &s).unwrap().to_sphere().equivalent(&h.to_sphere()));
        }
    }
}

/// Engines (a) and (b) decide the same pairs, and every witness replays to
/// the pattern.
#[test]
fn immersion_engines_agree_on_corpus() {
    let gs = plane_graphs(5, 6, false);
    let (mut n, mut found) = (0, 0);
    for h in &gs {
        for g in &gs {
            if h.num_darts() + g.num_darts() > 12 {
                continue;
            }
            let a = embedded_immersion_with(h, g, false, Engine::Ordered, &big()).unwrap();
            let b = embedded_immersion_with(h, g, false, Engine::Search, &big()).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "\n{}---\n{}", h.to_plg(), g.to_plg());
            for s in a.iter().chain(&b) {
                assert!(replay(g, s).unwrap().to_sphere().equivalent(&h.to_sphere()));
            }
            n += 1;
            found += b.is_some() as usize;
        }
    }
    assert_eq!((n, found), (6909, 3238));
}

#[test]
fn directed_engines_agree_on_random_orientations() {
    let mut r = rng(11);
    let gs: Vec<PlaneGraph> =
        plane_graphs(4, 5, false).iter().map(|g| random_orientation(g, &mut || r.gen_bool(0.5))).collect();
    let mut n = 0;
    for h in &gs {
        for g in &gs {
            if h.num_darts() + g.num_darts() > 12 {
                continue;
            }
            let a = embedded_immersion_with(h, g, true, Engine::Ordered, &big()).unwrap();
            let b = embedded_immersion_with(h, g, true, Engine::Search, &big()).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "\n{}---\n{}", h.to_plg(), g.to_plg());
            n += 1;
        }
    }
    assert!(n > 1000);
}

fn leaving_graphs_of(gs: &[PlaneGraph]) -> Vec<(PlaneGraph, Vec<(usize, usize)>, Vec<LeavingGraph>)> {
    let mut out = Vec::new();
    for g in gs {
        let (t, _) = make_disc(g).unwrap();
        let r = t.rooted();
        let certs = certify_disc(g, &r).unwrap();
        let es = r.edges();
        let ls: Vec<LeavingGraph> = es.iter().map(|&e| leaving_graph(g, &r, &certs, e).unwrap()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in es.iter().enumerate() {
            for (j, &b) in es.iter().enumerate() {
                if a != b && r.ancestor(g, a, b).unwrap() {
                    pairs.push((i, j));
                }
            }
        }
        out.push((g.clone(), pairs, ls));
    }
    out
}

/// A descendant's leaving graph is an immersion of its ancestor's.
#[test]
fn ancestors_dominate_descendants() {
    let opts = SearchOptions { max_darts: 200, ..SearchOptions::default() };
    let mut pairs = 0;
    for (g, ps, ls) in leaving_graphs_of(&connected(6, 9, true)) {
        for (a, b) in ps {
            assert!(leq_leaving_with(&ls[b], &ls[a], false, Engine::Ordered, &opts).unwrap(), "{}", g.to_plg());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 1029);
}

#[test]
fn leaving_order_engines_agree() {
    let opts = SearchOptions { max_darts: 200, ..SearchOptions::default() };
    let ls: Vec<LeavingGraph> = leaving_graphs_of(&connected(4, 5, true)).into_iter().flat_map(|x| x.2).collect();
    let (mut n, mut yes) = (0, 0);
    for a in &ls {
        assert!(leq_leaving_with(a, a, false, Engine::Ordered, &opts).unwrap());
        for b in &ls {
            if a.stubs().len() != b.stubs().len() {
                assert!(!leq_leaving(a, b, false).unwrap());
                continue;
            }
            if a.graph.num_darts() + b.graph.num_darts() > 22 {
                continue;
            }
            let x = leq_leaving_with(a, b, false, Engine::Ordered, &opts).unwrap();
            assert_eq!(x, leq_leaving_with(a, b, false, Engine::Search, &opts).unwrap());
            n += 1;
            yes += x as usize;
        }
    }
    assert_eq!((ls.len(), n, yes), (49, 707, 464));
}

#[test]
fn classify_examples() {
    let g = star();
    let cross = PathFamily::new(vec![through(&g, 1, 3), through(&g, 2, 4)], false);
    assert_eq!(classify_family(&g, &cross).unwrap(), Tangency::Transverse(0));
    assert_eq!(transverse_vertices(&g, &cross).unwrap(), vec![0]);
    let nested = PathFamily::new(vec![through(&g, 1, 2), through(&g, 3, 4)], false);
    assert_eq!(classify_family(&g, &nested).unwrap(), Tangency::Tangent);
    let single = PathFamily::new(vec![through(&g, 1, 3)], false);
    assert_eq!(classify_family(&g, &single).unwrap(), Tangency::Tangent);
    let reuse = PathFamily::new(vec![through(&g, 1, 3), through(&g, 2, 1)], false);
    assert_eq!(classify_family(&g, &reuse), Err(Error::NotEdgeDisjoint));
    // a walk ending at the centre while another passes through it
    let ending = PathFamily::new(vec![through(&g, 1, 3), vec![dart_at(&g, 1, 2)]], false);
    assert_eq!(classify_family(&g, &ending).unwrap(), Tangency::Transverse(0));
}

#[test]
fn make_tangent_examples() {
    let g = star();
    let cross = PathFamily::new(vec![through(&g, 1, 3), through(&g, 2, 4)], false);
    let out = make_tangent(&g, &cross, 0).unwrap();
    assert_eq!(classify_family(&g, &out).unwrap(), Tangency::Tangent);
    assert_eq!(ends(&g, &out), ends(&g, &cross));
    let nested = PathFamily::new(vec![through(&g, 1, 2), through(&g, 3, 4)], false);
    assert_eq!(make_tangent(&g, &nested, 0).unwrap(), nested);
    let single = PathFamily::new(vec![through(&g, 1, 3)], false);
    assert_eq!(make_tangent(&g, &single, 0).unwrap(), single);
}

#[test]
fn figure_thirteen_word() {
    let w = parse_word("1 4^-1 3 2 2^-1 1^-1 4 3^-1").unwrap();
    let trace = reduce_word(&w).unwrap();
    assert_eq!(format_word(&trace[1]), "1 1^-1 3 2 2^-1 3^-1 4 4^-1");
    assert!(trace.last().unwrap().is_empty());
    assert!(parse_word("1 x").is_err());
    assert!(reduce_word(&parse_word("1 1").unwrap()).is_err());
}

#[test]
fn random_words_reduce_to_empty() {
    let mut r = rng(13);
    for _ in 0..1000 {
        let k = r.gen_range(1..=10);
        let mut w: Vec<Letter> = (1..=k).flat_map(|i| [Letter::inc(i), Letter::out(i)]).collect();
        w.shuffle(&mut r);
        let trace = reduce_word(&w).unwrap();
        assert!(trace.last().unwrap().is_empty(), "{}", format_word(&w));
        assert!(trace.windows(2).all(|p| p[1].len() <= p[0].len()));
        assert!(trace.len() <= w.len() * w.len() + 1);
    }
}

fn compose_counts(gs: &[PlaneGraph], aligned: bool) -> (usize, usize, usize) {
    let opts = SearchOptions { max_darts: 400, ..SearchOptions::default() };
    let recs = family_records(gs);
    let ts: Vec<[Option<Theta>; 2]> = recs.iter().map(|x| [theta(&x[0], &x[1], &x[2]), theta(&x[0], &x[2], &x[1])]).collect();
    let (mut matched, mut bad) = (0, 0);
    for (i, tx) in ts.iter().enumerate() {
        let Some(x) = &tx[0] else { continue };
        for (j, ty) in ts.iter().enumerate() {
            for y in ty.iter().flatten().filter(|_| i != j) {
                if !x.sizes_match(y) {
                    continue;
                }
                let le = |k: usize| match aligned {
                    true => leq_leaving_aligned(&x.graphs[k], &y.graphs[k], false, x.offset(y, k), &opts).unwrap(),
                    false => leq_leaving_with(&x.graphs[k], &y.graphs[k], false, Engine::Ordered, &opts).unwrap(),
                };
                if le(1) && le(2) {
                    matched += 1;
                    bad += !le(0) as usize;
                }
            }
        }
    }
    (ts.iter().filter(|t| t[0].is_none()).count(), matched, bad)
}

/// Childwise immersions that agree on the theta curve glue into one for
/// the parents.
#[test]
fn aligned_child_immersions_compose() {
    assert_eq!(compose_counts(&connected(5, 9, true), true), (72, 849, 0));
}

/// Without the alignment, equal cut sizes and childwise immersions do not
/// force the parents to compare.
#[test]
fn unaligned_child_immersions_need_not_compose() {
    let (_, matched, bad) = compose_counts(&connected(5, 9, true), false);
    assert!(bad > 0 && matched > bad);
}

#[test]
fn aligned_order_refines_leaving_order() {
    let opts = SearchOptions { max_darts: 200, ..SearchOptions::default() };
    let ls: Vec<LeavingGraph> = leaving_graphs_of(&connected(4, 5, true)).into_iter().flat_map(|x| x.2).collect();
    let (mut n, mut offsets) = (0, 0);
    for a in &ls {
        for b in &ls {
            let k = a.stubs().len();
            if k != b.stubs().len() || a.graph.num_darts() + b.graph.num_darts() > 22 {
                continue;
            }
            let c = (0..k.max(1)).filter(|&o| leq_leaving_aligned(a, b, false, o, &opts).unwrap()).count();
            assert_eq!(leq_leaving_with(a, b, false, Engine::Ordered, &opts).unwrap(), c > 0);
            n += 1;
            offsets += c;
        }
    }
    assert_eq!((n, offsets), (707, 801));
}
